//! Bit-string inputs and their hexadecimal rendering.
//!
//! Inputs are plain bit strings `x[0..K)`. Pair-indexed inputs put `(i, j)` at
//! `i·k + j`; weight vectors are stored entry after entry, each entry a fixed
//! number of bits, most significant bit first. The hexadecimal form reads the
//! string as a binary numeral with `x[0]` as its most significant bit, so with
//! `K = 4` the string `1000` is `0x8`.

use super::FamilyError;

pub fn bits_from_str(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parses `0x...` (prefix optional) into exactly `len` bits. Surplus leading
/// digits must be zero.
pub fn bits_from_hex(s: &str, len: usize) -> Result<Vec<bool>, FamilyError> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    if digits.is_empty() {
        return Err(FamilyError::Hex(s.to_owned()));
    }
    let mut raw = Vec::with_capacity(digits.len() * 4);
    for c in digits.chars() {
        let d = c.to_digit(16).ok_or_else(|| FamilyError::Hex(s.to_owned()))?;
        for shift in (0..4).rev() {
            raw.push((d >> shift) & 1 == 1);
        }
    }
    if raw.len() >= len {
        let (surplus, rest) = raw.split_at(raw.len() - len);
        if surplus.iter().any(|&b| b) {
            return Err(FamilyError::HexTooWide {
                value: s.to_owned(),
                len,
            });
        }
        Ok(rest.to_vec())
    } else {
        let mut out = vec![false; len - raw.len()];
        out.extend(raw);
        Ok(out)
    }
}

/// Minimal-width hexadecimal with `0x` prefix, left-padded to whole digits.
pub fn bits_to_hex(bits: &[bool]) -> String {
    let pad = (4 - bits.len() % 4) % 4;
    let padded: Vec<bool> = std::iter::repeat_n(false, pad).chain(bits.iter().copied()).collect();
    let mut s = String::from("0x");
    if padded.is_empty() {
        s.push('0');
    }
    for chunk in padded.chunks(4) {
        let d = chunk.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
        s.push(char::from_digit(d, 16).expect("nibble"));
    }
    s
}

/// Splits a bit string into fixed-width unsigned entries, MSB first.
pub fn weights_from_bits(bits: &[bool], width: u32) -> Vec<u64> {
    assert!(width > 0 && width <= 63, "entry width out of range");
    bits.chunks(width as usize)
        .map(|c| c.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
        .collect()
}

/// Inverse of [`weights_from_bits`]; panics if an entry does not fit.
pub fn bits_from_weights(values: &[u64], width: u32) -> Vec<bool> {
    assert!(width > 0 && width <= 63, "entry width out of range");
    let mut out = Vec::with_capacity(values.len() * width as usize);
    for &v in values {
        assert!(v >> width == 0, "weight {v} does not fit in {width} bits");
        for shift in (0..width).rev() {
            out.push((v >> shift) & 1 == 1);
        }
    }
    out
}

/// Bit string of length `len` holding the binary expansion of `value`, MSB first.
pub fn bits_from_index(value: u64, len: usize) -> Vec<bool> {
    (0..len)
        .map(|i| {
            let shift = len - 1 - i;
            shift < 64 && (value >> shift) & 1 == 1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_examples() {
        assert_eq!(bits_from_hex("0x8", 4).unwrap(), bits_from_str("1000").unwrap());
        assert_eq!(bits_from_hex("0x9", 4).unwrap(), bits_from_str("1001").unwrap());
        assert_eq!(bits_from_hex("1", 6).unwrap(), bits_from_str("000001").unwrap());
        assert_eq!(bits_to_hex(&bits_from_str("000001").unwrap()), "0x01");
        assert!(matches!(bits_from_hex("0x10", 4), Err(FamilyError::HexTooWide { .. })));
        assert!(matches!(bits_from_hex("0xg", 4), Err(FamilyError::Hex(_))));
    }

    #[test]
    fn weight_packing() {
        let bits = bits_from_weights(&[5, 7, 2], 3);
        assert_eq!(bits_to_string(&bits), "101111010");
        assert_eq!(weights_from_bits(&bits, 3), vec![5, 7, 2]);
    }

    proptest! {
        #[test]
        fn hex_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..80)) {
            let hex = bits_to_hex(&bits);
            prop_assert_eq!(bits_from_hex(&hex, bits.len()).unwrap(), bits);
        }

        #[test]
        fn index_matches_hex(v in 0u64..1 << 20) {
            let bits = bits_from_index(v, 20);
            prop_assert_eq!(bits_from_hex(&format!("{v:x}"), 20).unwrap(), bits);
        }
    }
}
