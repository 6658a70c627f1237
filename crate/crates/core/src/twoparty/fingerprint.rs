use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{first_primes, BitLedger, TwoPartyError};
use crate::sim::bits_for;

/// Outcome of one run of the fingerprint protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub equal: bool,
    pub prime: u64,
    pub pool_size: usize,
    pub ledger: BitLedger,
}

/// `value(bits) mod p`, reading `bits` most significant first.
fn residue(bits: &[bool], p: u64) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc * 2 + b as u64) % p)
}

/// Randomized equality: Alice draws `p` from the first `K²` primes with a
/// generator seeded by `seed` and sends `p` and `x̄ mod p`, each in
/// `⌈log₂ p_max⌉` bits; Bob replies with the one-bit verdict.
pub fn eq_fingerprint(x: &[bool], y: &[bool], seed: u64) -> Result<Fingerprint, TwoPartyError> {
    let k = check(x, y)?;
    let index = ChaCha8Rng::seed_from_u64(seed).gen_range(0..k * k);
    eq_fingerprint_with_prime(x, y, index)
}

/// The protocol with Alice's draw fixed to pool index `index`.
pub fn eq_fingerprint_with_prime(
    x: &[bool],
    y: &[bool],
    index: usize,
) -> Result<Fingerprint, TwoPartyError> {
    let k = check(x, y)?;
    let pool = first_primes(k * k)?;
    let p = *pool.get(index).ok_or(TwoPartyError::PrimeIndex {
        index,
        pool: pool.len(),
    })?;
    let width = bits_for(*pool.last().expect("nonempty")) as u64;
    let equal = residue(x, p) == residue(y, p);
    let mut ledger = BitLedger::default();
    ledger.charge(2 * width, 0);
    ledger.charge(0, 1);
    Ok(Fingerprint {
        equal,
        prime: p,
        pool_size: pool.len(),
        ledger,
    })
}

fn check(x: &[bool], y: &[bool]) -> Result<usize, TwoPartyError> {
    if x.len() != y.len() {
        return Err(TwoPartyError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(TwoPartyError::Empty);
    }
    Ok(x.len())
}
