//! Alice/Bob protocols over a partition cut, with exact bit accounting.
//!
//! [`cut_simulate`] replays a CONGEST program as a two-party protocol in
//! which each player advances only its own side and the players exchange the
//! messages that cross the cut. [`apsp_protocol`] computes all weighted
//! distances by exchanging cut-node distance vectors, and [`eq_fingerprint`]
//! decides equality with a random prime fingerprint.

mod apsp;
mod cutsim;
mod fingerprint;
mod random;

pub use apsp::{apsp_protocol, distance_bits, ApspOutcome};
pub use cutsim::{cut_simulate, CutOutcome};
pub use fingerprint::{eq_fingerprint, eq_fingerprint_with_prime, Fingerprint};
pub use random::random_partitioned;

use crate::graph::{IdEdge, NodeId, PartitionedGraph, Side};
use crate::sim::SimError;

/// Largest prime pool [`first_primes`] will build.
pub const PRIME_POOL_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwoPartyError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("not a lower-bound graph: {0}")]
    LowerBound(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("inputs have different lengths ({left} and {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty input")]
    Empty,
    #[error("prime pool of {0} primes exceeds the limit of {PRIME_POOL_LIMIT}")]
    PoolTooLarge(usize),
    #[error("prime index {index} outside a pool of {pool}")]
    PrimeIndex { index: usize, pool: usize },
}

/// The first `m` primes in ascending order.
pub fn first_primes(m: usize) -> Result<Vec<u64>, TwoPartyError> {
    if m == 0 || m > PRIME_POOL_LIMIT {
        return Err(TwoPartyError::PoolTooLarge(m));
    }
    // p_m < m (ln m + ln ln m) for m >= 6.
    let mf = m.max(6) as f64;
    let limit = (mf * (mf.ln() + mf.ln().ln())).ceil() as usize + 1;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(m);
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if primes.len() == m {
            break;
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    debug_assert_eq!(primes.len(), m);
    Ok(primes)
}

/// Bits exchanged by the players, overall and per round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitLedger {
    pub bits_alice_to_bob: u64,
    pub bits_bob_to_alice: u64,
    /// `(alice_to_bob, bob_to_alice)` for each round, starting at round 1.
    pub per_round: Vec<(u64, u64)>,
}

impl BitLedger {
    pub fn charge(&mut self, alice_to_bob: u64, bob_to_alice: u64) {
        self.bits_alice_to_bob += alice_to_bob;
        self.bits_bob_to_alice += bob_to_alice;
        self.per_round.push((alice_to_bob, bob_to_alice));
    }

    pub fn total(&self) -> u64 {
        self.bits_alice_to_bob + self.bits_bob_to_alice
    }

    pub fn is_consistent(&self) -> bool {
        let (a, b) = self
            .per_round
            .iter()
            .fold((0, 0), |(a, b), &(x, y)| (a + x, b + y));
        a == self.bits_alice_to_bob && b == self.bits_bob_to_alice
    }
}

/// What one player knows of a partitioned graph: its own side, the cut
/// edges with their weights, and the far endpoints of the cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutView {
    pub side: Side,
    pub n: usize,
    pub nodes: Vec<NodeId>,
    /// Edges with both endpoints on this side.
    pub internal: Vec<IdEdge>,
    pub cut: Vec<IdEdge>,
    /// `C_B` for Alice, `C_A` for Bob.
    pub far: Vec<NodeId>,
    /// This side's cut nodes (`C_A` for Alice).
    pub near: Vec<NodeId>,
}

impl CutView {
    pub fn of(pg: &PartitionedGraph, side: Side) -> CutView {
        let g = pg.graph();
        CutView {
            side,
            n: g.node_count(),
            nodes: pg.nodes_on(side).collect(),
            internal: g
                .id_edges()
                .iter()
                .filter(|e| pg.side(e.u) == side && pg.side(e.v) == side)
                .copied()
                .collect(),
            cut: pg.cut().to_vec(),
            far: pg.cut_nodes(side.other()),
            near: pg.cut_nodes(side),
        }
    }
}
