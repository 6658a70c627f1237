//! Randomized detection of identical subgraphs in `O(D)` rounds.
//!
//! The subgraph on `{a^i}` is encoded as a `K`-bit number `x̄`: for each pair
//! `i < j` in lexicographic order there is a block of `weight_bits + 1` bits,
//! an existence bit followed by the weight, and earlier pairs are more
//! significant. `ȳ` encodes `{b^i}` the same way.
//!
//! `a^0` floods a BFS tree and, in the same messages, a prime `p` drawn from
//! the first `K²` primes. Each `a^i` contributes its pairs `(i, j > i)` to
//! `x̄ mod p` and each `b^i` to `ȳ mod p`; the two residues are summed up the
//! tree (the `ȳ` sum one round behind), `a^0` compares them and broadcasts
//! the verdict. With `e = e(a^0)` a run takes at most `3e + 4` rounds, which
//! is the documented constant [`C_IMPL`]` = 4` in `rounds <= C_IMPL·(D + 1)`.

use std::sync::Arc;

use rand::Rng;

use super::bits::{bits_for, push_bits, BitReader, Payload};
use super::tree::{message, Kind, TreeLink};
use super::{NodeContext, NodeProgram, SimError};
use crate::families::upper_pairs;
use crate::graph::{Graph, NodeLabel, Role, SetTag};
use crate::twoparty::first_primes;
use crate::graph::NodeId;

/// Round constant: every run finishes within `C_IMPL·(D + 1)` rounds.
pub const C_IMPL: u64 = 4;

/// Length `K = C(k,2)·(weight_bits + 1)` of the detector's encoding.
pub fn detector_input_len(k: usize, weight_bits: u32) -> usize {
    k * (k - 1) / 2 * (weight_bits as usize + 1)
}

fn block_shift(e: usize, pairs: usize, weight_bits: u32) -> u64 {
    ((pairs - 1 - e) as u64) * (weight_bits as u64 + 1)
}

/// The numeral `x̄` (for `set = A`) or `ȳ` (for `set = B`) of a labelled graph.
/// Needs `K <= 127`.
pub fn detector_numeral(g: &Graph, set: SetTag, k: usize, weight_bits: u32) -> u128 {
    assert!(detector_input_len(k, weight_bits) <= 127, "numeral exceeds 127 bits");
    let pairs = upper_pairs(k);
    let mut value = 0u128;
    for (e, &(i, j)) in pairs.iter().enumerate() {
        let a = g.id_of(&NodeLabel::member(set, i as u32));
        let b = g.id_of(&NodeLabel::member(set, j as u32));
        let block = match (a, b) {
            (Some(a), Some(b)) => g
                .edge_between(a, b)
                .map_or(0, |e| 1u128 << weight_bits | e.weight.unwrap_or(0) as u128),
            _ => 0,
        };
        value |= block << block_shift(e, pairs.len(), weight_bits);
    }
    value
}

/// Primes of the pool on which `x̄ ≡ ȳ (mod p)`.
pub fn failing_primes(x: u128, y: u128, pool: &[u64]) -> Vec<u64> {
    pool.iter()
        .copied()
        .filter(|&p| x % p as u128 == y % p as u128)
        .collect()
}

fn pow2_mod(exp: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (2 % p, exp, 1 % p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Global parameters of the detector, shared by every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdenticalParams {
    pub k: usize,
    pub weight_bits: u32,
    /// The first `K²` primes.
    pub pool: Arc<Vec<u64>>,
    pub prime_bits: u32,
    /// Replaces the random draw at `a^0` with this pool index.
    pub forced: Option<usize>,
}

impl IdenticalParams {
    /// Fails when a message carrying a prime or residue would exceed `bandwidth`.
    pub fn new(
        k: usize,
        weight_bits: u32,
        bandwidth: usize,
        forced: Option<usize>,
    ) -> Result<IdenticalParams, SimError> {
        let big_k = detector_input_len(k, weight_bits);
        if big_k == 0 {
            return Err(SimError::Program("identical detection needs k >= 2".into()));
        }
        let pool = first_primes(big_k * big_k).map_err(|e| SimError::Program(e.to_string()))?;
        let prime_bits = bits_for(*pool.last().expect("nonempty pool"));
        let needed = 3 + prime_bits as usize;
        if needed > bandwidth {
            return Err(SimError::Program(format!(
                "bandwidth {bandwidth} cannot carry a {prime_bits}-bit prime with framing ({needed} bits)"
            )));
        }
        if let Some(i) = forced {
            if i >= pool.len() {
                return Err(SimError::Program(format!(
                    "prime index {i} outside a pool of {}",
                    pool.len()
                )));
            }
        }
        Ok(IdenticalParams {
            k,
            weight_bits,
            pool: Arc::new(pool),
            prime_bits,
            forced,
        })
    }

    pub fn input_len(&self) -> usize {
        detector_input_len(self.k, self.weight_bits)
    }

    pub fn with_forced(&self, index: usize) -> IdenticalParams {
        IdenticalParams {
            forced: Some(index),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct IdenticalDetect {
    params: IdenticalParams,
    link: TreeLink,
    ctx_label: NodeLabel,
    neighbors: Vec<(NodeLabel, Option<u64>)>,
    draw: usize,
    prime: Option<u64>,
    /// Children's residues: `(child, x sum, y sum)`.
    reports: Vec<(NodeId, Option<u64>, Option<u64>)>,
    x_sent: bool,
    y_sent: bool,
    result: Option<bool>,
    sent_down: bool,
}

impl IdenticalDetect {
    pub fn new(mut ctx: NodeContext, params: &IdenticalParams) -> IdenticalDetect {
        let is_root = ctx.label == NodeLabel::member(SetTag::A, 0);
        let draw = match params.forced {
            Some(i) => i,
            None => ctx.rng.gen_range(0..params.pool.len()),
        };
        IdenticalDetect {
            params: params.clone(),
            link: TreeLink::new(&ctx, is_root),
            ctx_label: ctx.label,
            neighbors: ctx.neighbors.iter().map(|n| (n.1, n.2)).collect(),
            draw,
            prime: None,
            reports: Vec::new(),
            x_sent: false,
            y_sent: false,
            result: None,
            sent_down: false,
        }
    }

    /// This node's share of `x̄ mod p` or `ȳ mod p`; zero for other nodes.
    fn local(&self, set: SetTag, p: u64) -> u64 {
        let me = self.ctx_label;
        if me.role != Role::Set || me.set != set {
            return 0;
        }
        let pairs = upper_pairs(self.params.k);
        let wb = self.params.weight_bits;
        let mut sum = 0u64;
        for &(l, w) in &self.neighbors {
            if l.role != Role::Set || l.set != set || l.index <= me.index {
                continue;
            }
            let e = pairs
                .binary_search(&(me.index as usize, l.index as usize))
                .expect("member indices are below k");
            let block = (1u64 << wb | w.unwrap_or(0)) % p;
            let term = block * pow2_mod(block_shift(e, pairs.len(), wb), p) % p;
            sum = (sum + term) % p;
        }
        sum
    }

    fn totals(&self, p: u64) -> (Option<u64>, Option<u64>) {
        let mut x = self.local(SetTag::A, p);
        let mut y = self.local(SetTag::B, p);
        let (mut x_ok, mut y_ok) = (true, true);
        for &c in &self.link.children {
            match self.reports.iter().find(|r| r.0 == c) {
                Some(&(_, rx, ry)) => {
                    match rx {
                        Some(v) => x = (x + v) % p,
                        None => x_ok = false,
                    }
                    match ry {
                        Some(v) => y = (y + v) % p,
                        None => y_ok = false,
                    }
                }
                None => {
                    x_ok = false;
                    y_ok = false;
                }
            }
        }
        (x_ok.then_some(x), y_ok.then_some(y))
    }

    fn up(&self, which: bool, value: u64) -> Payload {
        let mut body = Payload::new();
        body.push(which);
        push_bits(&mut body, value, self.params.prime_bits);
        message(Kind::Up, &body)
    }
}

impl NodeProgram for IdenticalDetect {
    type Output = bool;

    fn on_round(&mut self, round: u64, inbox: &[(NodeId, Payload)]) -> Vec<(NodeId, Payload)> {
        let (joined, rest) = self.link.absorb(round, inbox);
        let mut out = Vec::new();
        if let Some(body) = joined {
            let p = if self.link.is_root {
                self.params.pool[self.draw]
            } else {
                BitReader::new(&body).read(self.params.prime_bits).unwrap_or(2)
            };
            self.prime = Some(p);
            let mut carry = Payload::new();
            push_bits(&mut carry, p, self.params.prime_bits);
            out = self.link.announce(&carry);
        }
        for (from, kind, body) in rest {
            match kind {
                Kind::Up => {
                    let mut r = BitReader::new(&body);
                    let (Some(which), Some(v)) = (r.read_bool(), r.read(self.params.prime_bits)) else {
                        continue;
                    };
                    let idx = match self.reports.iter().position(|x| x.0 == from) {
                        Some(i) => i,
                        None => {
                            self.reports.push((from, None, None));
                            self.reports.len() - 1
                        }
                    };
                    if which {
                        self.reports[idx].2 = Some(v);
                    } else {
                        self.reports[idx].1 = Some(v);
                    }
                }
                Kind::Down if Some(from) == self.link.parent => {
                    self.result = body.first().map(|b| *b);
                }
                _ => {}
            }
        }
        if let Some(p) = self.prime.filter(|_| self.link.children_known(round)) {
            let (x, y) = self.totals(p);
            if self.link.is_root {
                if let (Some(x), Some(y), None) = (x, y, self.result) {
                    self.result = Some(x == y);
                }
            } else if self.link.can_send_up(round) {
                let parent = self.link.parent.expect("joined");
                if let (false, Some(x)) = (self.x_sent, x) {
                    self.x_sent = true;
                    out.push((parent, self.up(false, x)));
                } else if let (true, false, Some(y)) = (self.x_sent, self.y_sent, y) {
                    self.y_sent = true;
                    out.push((parent, self.up(true, y)));
                }
            }
        }
        if let (Some(r), false) = (self.result, self.sent_down) {
            self.sent_down = true;
            let mut body = Payload::new();
            body.push(r);
            for &c in &self.link.children {
                out.push((c, message(Kind::Down, &body)));
            }
        }
        out
    }

    fn output(&self) -> Option<bool> {
        self.result
    }
}
