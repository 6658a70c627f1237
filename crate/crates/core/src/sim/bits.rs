use bitvec::prelude::*;

/// A message body: an arbitrary-length bit string.
pub type Payload = BitVec<u8, Msb0>;

/// Appends the low `width` bits of `value`, most significant first.
pub fn push_bits(buf: &mut Payload, value: u64, width: u32) {
    debug_assert!(width == 64 || value >> width == 0, "{value} does not fit in {width} bits");
    for i in (0..width).rev() {
        buf.push(value >> i & 1 == 1);
    }
}

/// Number of bits needed to write every value in `0..=max`.
pub fn bits_for(max: u64) -> u32 {
    (u64::BITS - max.leading_zeros()).max(1)
}

/// Lowercase hex of the bits, zero-padded to whole bytes.
pub fn payload_hex(bits: &BitSlice<u8, Msb0>) -> String {
    bits.chunks(8)
        .map(|c| {
            let mut byte = 0u8;
            for (i, b) in c.iter().enumerate() {
                if *b {
                    byte |= 0x80 >> i;
                }
            }
            format!("{byte:02x}")
        })
        .collect()
}

/// Sequential reader over a bit string.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a BitSlice<u8, Msb0>,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitSlice<u8, Msb0>) -> BitReader<'a> {
        BitReader { bits, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn read(&mut self, width: u32) -> Option<u64> {
        if self.remaining() < width as usize {
            return None;
        }
        let mut v = 0u64;
        for b in &self.bits[self.pos..self.pos + width as usize] {
            v = v << 1 | *b as u64;
        }
        self.pos += width as usize;
        Some(v)
    }

    pub fn read_bool(&mut self) -> Option<bool> {
        self.read(1).map(|b| b == 1)
    }
}
