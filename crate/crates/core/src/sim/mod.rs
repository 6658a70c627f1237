//! Round-synchronous CONGEST simulator.
//!
//! Every node runs its own [`NodeProgram`]. In round `r` a node sees exactly
//! the messages its neighbours sent in round `r - 1` and returns at most one
//! message per incident edge. Payloads longer than the bandwidth `B` abort the
//! run. A run ends after the first round in which every node has an output
//! and nothing was sent.
//!
//! The engine is split into [`Cluster`]s so that the two-party harness can
//! advance Alice's and Bob's nodes separately and see exactly which messages
//! cross the cut.

mod bits;
mod bfs;
mod collect;
mod identical;
mod transcript;
mod tree;

pub use bits::{bits_for, payload_hex, push_bits, BitReader, Payload};
pub use bfs::{BfsInfo, BfsTree};
pub use collect::{collect_all, collect_for_instance, CollectAll, Evaluator};
pub use identical::{
    detector_input_len, detector_numeral, failing_primes, IdenticalDetect, IdenticalParams,
    C_IMPL,
};
pub use transcript::{parse_transcript, write_transcript, MessageRecord, Transcript, TranscriptError};

use std::fmt::Debug;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId, NodeLabel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("round {round}: node {from} sent {bits} bits to {to}, bandwidth is {limit}")]
    Oversize {
        round: u64,
        from: NodeLabel,
        to: NodeLabel,
        bits: usize,
        limit: usize,
    },
    #[error("round {round}: node {from} addressed {to}, which is not a neighbour")]
    NotNeighbor {
        round: u64,
        from: NodeLabel,
        to: NodeLabel,
    },
    #[error("round {round}: node {from} sent two messages to {to}")]
    Duplicate {
        round: u64,
        from: NodeLabel,
        to: NodeLabel,
    },
    #[error("no termination within {0} rounds")]
    NoTermination(u64),
    #[error("bandwidth {bandwidth} is below log2 n = {needed} bits")]
    BandwidthTooSmall { bandwidth: usize, needed: usize },
    #[error("{0}")]
    Program(String),
    #[error("graph is not connected")]
    Disconnected,
}

/// Parameters of one simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub bandwidth_bits: usize,
    pub max_rounds: u64,
    pub seed: u64,
}

impl SimConfig {
    pub const DEFAULT_MAX_ROUNDS: u64 = 100_000;

    /// `B = 8·⌈log2 n⌉` bits.
    pub fn for_nodes(n: usize) -> SimConfig {
        SimConfig {
            bandwidth_bits: 8 * ceil_log2(n).max(1),
            max_rounds: Self::DEFAULT_MAX_ROUNDS,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> SimConfig {
        self.seed = seed;
        self
    }

    pub fn with_bandwidth(mut self, bits: usize) -> SimConfig {
        self.bandwidth_bits = bits;
        self
    }

    pub fn with_max_rounds(mut self, rounds: u64) -> SimConfig {
        self.max_rounds = rounds;
        self
    }

    /// Messages must at least hold one node id.
    pub fn validate(&self, n: usize) -> Result<(), SimError> {
        let needed = ceil_log2(n);
        if self.bandwidth_bits < needed.max(1) {
            return Err(SimError::BandwidthTooSmall {
                bandwidth: self.bandwidth_bits,
                needed,
            });
        }
        Ok(())
    }
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// What a node knows when it starts: its identity, its incident edges, the
/// global parameters `n` and `B`, and its private random tape. Neighbour
/// labels are included because node identifiers are labels here.
#[derive(Debug, Clone)]
pub struct NodeContext {
    pub id: NodeId,
    pub label: NodeLabel,
    pub n: usize,
    pub bandwidth_bits: usize,
    /// `(neighbour, its label, edge weight)` in neighbour-id order.
    pub neighbors: Vec<(NodeId, NodeLabel, Option<u64>)>,
    pub rng: ChaCha8Rng,
}

impl NodeContext {
    pub fn neighbor_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.neighbors.iter().map(|n| n.0)
    }
}

/// Per-node tape seed: splitmix64 applied to `seed + congest_id · φ`.
pub fn tape_seed(seed: u64, id: NodeId) -> u64 {
    let mut z = seed.wrapping_add((id.congest_id() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn node_context(g: &Graph, id: NodeId, config: &SimConfig) -> NodeContext {
    NodeContext {
        id,
        label: g.label(id),
        n: g.node_count(),
        bandwidth_bits: config.bandwidth_bits,
        neighbors: g
            .neighbors(id)
            .iter()
            .map(|&(v, _)| {
                let w = g.edge_between(id, v).and_then(|e| e.weight);
                (v, g.label(v), w)
            })
            .collect(),
        rng: ChaCha8Rng::seed_from_u64(tape_seed(config.seed, id)),
    }
}

/// The per-node state machine. Programs only ever see their own context and
/// delivered messages.
pub trait NodeProgram {
    type Output: Clone + Debug + PartialEq;

    /// One round: `inbox` holds the messages sent to this node in the
    /// previous round, sorted by sender. Returns at most one payload per neighbour.
    fn on_round(&mut self, round: u64, inbox: &[(NodeId, Payload)]) -> Vec<(NodeId, Payload)>;

    fn output(&self) -> Option<Self::Output>;
}

/// A message in flight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub round: u64,
    pub from: NodeId,
    pub to: NodeId,
    pub payload: Payload,
}

/// A set of nodes advanced together over one view of the graph.
pub struct Cluster<'g, P> {
    g: &'g Graph,
    bandwidth: usize,
    programs: Vec<Option<P>>,
    pending: Vec<Envelope>,
}

/// What one cluster did in one round.
#[derive(Debug, Clone)]
pub struct Step {
    /// Every message sent by the cluster's nodes, in (sender, receiver) order.
    pub sent: Vec<Envelope>,
    /// The subset of `sent` addressed to nodes outside the cluster.
    pub external: Vec<Envelope>,
    /// Whether every node of the cluster has an output.
    pub all_output: bool,
}

impl<'g, P: NodeProgram> Cluster<'g, P> {
    /// Instantiates `factory` on every node for which `owns` holds.
    pub fn new(
        g: &'g Graph,
        config: &SimConfig,
        owns: impl Fn(NodeId) -> bool,
        mut factory: impl FnMut(NodeContext) -> P,
    ) -> Cluster<'g, P> {
        let programs = g
            .ids()
            .map(|id| owns(id).then(|| factory(node_context(g, id, config))))
            .collect();
        Cluster {
            g,
            bandwidth: config.bandwidth_bits,
            programs,
            pending: Vec::new(),
        }
    }

    pub fn owns(&self, id: NodeId) -> bool {
        self.programs[id.0].is_some()
    }

    /// Runs round `round`. `incoming` are messages from outside the cluster
    /// that were sent in the previous round.
    pub fn step(&mut self, round: u64, incoming: Vec<Envelope>) -> Result<Step, SimError> {
        let mut inbox: Vec<Vec<(NodeId, Payload)>> = vec![Vec::new(); self.programs.len()];
        for env in std::mem::take(&mut self.pending).into_iter().chain(incoming) {
            debug_assert!(self.owns(env.to));
            inbox[env.to.0].push((env.from, env.payload));
        }
        let mut sent = Vec::new();
        for (i, slot) in self.programs.iter_mut().enumerate() {
            let Some(program) = slot else { continue };
            let from = NodeId(i);
            let mut msgs = std::mem::take(&mut inbox[i]);
            msgs.sort_by_key(|m| m.0);
            let mut out = program.on_round(round, &msgs);
            out.sort_by_key(|m| m.0);
            for w in out.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(SimError::Duplicate {
                        round,
                        from: self.g.label(from),
                        to: self.g.label(w[0].0),
                    });
                }
            }
            for (to, payload) in out {
                if to.0 >= self.g.node_count() {
                    return Err(SimError::Program(format!(
                        "round {round}: node {} addressed unknown id {}",
                        self.g.label(from),
                        to.congest_id()
                    )));
                }
                if !self.g.has_edge(from, to) {
                    return Err(SimError::NotNeighbor {
                        round,
                        from: self.g.label(from),
                        to: self.g.label(to),
                    });
                }
                if payload.len() > self.bandwidth {
                    return Err(SimError::Oversize {
                        round,
                        from: self.g.label(from),
                        to: self.g.label(to),
                        bits: payload.len(),
                        limit: self.bandwidth,
                    });
                }
                sent.push(Envelope {
                    round,
                    from,
                    to,
                    payload,
                });
            }
        }
        let mut external = Vec::new();
        for env in &sent {
            if self.owns(env.to) {
                self.pending.push(env.clone());
            } else {
                external.push(env.clone());
            }
        }
        let all_output = self
            .programs
            .iter()
            .flatten()
            .all(|p| p.output().is_some());
        Ok(Step {
            sent,
            external,
            all_output,
        })
    }

    /// Outputs of the owned nodes, indexed by node id.
    pub fn outputs(&self) -> Vec<Option<P::Output>> {
        self.programs
            .iter()
            .map(|p| p.as_ref().and_then(|p| p.output()))
            .collect()
    }
}

/// Result of a whole-graph run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome<O> {
    pub outputs: Vec<O>,
    pub rounds: u64,
    pub transcript: Transcript,
}

/// Runs `factory`'s program on every node of `g` until quiescence.
pub fn run<P: NodeProgram>(
    g: &Graph,
    config: &SimConfig,
    factory: impl FnMut(NodeContext) -> P,
) -> Result<SimOutcome<P::Output>, SimError> {
    config.validate(g.node_count())?;
    if !g.is_connected().unwrap_or(false) {
        return Err(SimError::Disconnected);
    }
    let mut cluster = Cluster::new(g, config, |_| true, factory);
    let mut transcript = Transcript::new(g.node_count(), config.bandwidth_bits);
    for round in 1..=config.max_rounds {
        let step = cluster.step(round, Vec::new())?;
        transcript.record(round, &step.sent);
        if step.all_output && step.sent.is_empty() {
            transcript.rounds = round;
            let outputs = cluster
                .outputs()
                .into_iter()
                .map(|o| o.expect("all nodes have output"))
                .collect();
            return Ok(SimOutcome {
                outputs,
                rounds: round,
                transcript,
            });
        }
    }
    Err(SimError::NoTermination(config.max_rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphBuilder, SetTag};

    fn l(i: u32) -> NodeLabel {
        NodeLabel::member(SetTag::A, i)
    }

    pub(crate) fn path(n: u32) -> Graph {
        let mut b = GraphBuilder::unweighted();
        for i in 0..n {
            b.add_node(l(i));
        }
        for i in 1..n {
            b.link(l(i - 1), l(i)).unwrap();
        }
        b.build().unwrap()
    }

    /// Sends `width` one-bits to every neighbour in round 1, then outputs.
    struct Echo {
        ctx: NodeContext,
        width: usize,
        done: bool,
    }

    impl NodeProgram for Echo {
        type Output = usize;

        fn on_round(&mut self, round: u64, inbox: &[(NodeId, Payload)]) -> Vec<(NodeId, Payload)> {
            if round == 1 {
                return self
                    .ctx
                    .neighbor_ids()
                    .map(|v| {
                        let mut p = Payload::new();
                        p.resize(self.width, true);
                        (v, p)
                    })
                    .collect();
            }
            self.done = true;
            let _ = inbox;
            Vec::new()
        }

        fn output(&self) -> Option<usize> {
            self.done.then_some(self.ctx.neighbors.len())
        }
    }

    #[test]
    fn echo_on_two_nodes() {
        let g = path(2);
        let cfg = SimConfig::for_nodes(2);
        let out = run(&g, &cfg, |ctx| Echo { ctx, width: 3, done: false }).unwrap();
        assert_eq!(out.rounds, 2);
        assert_eq!(out.transcript.messages.len(), 2);
        assert!(out.transcript.messages.iter().all(|m| m.bits == 3));
    }

    #[test]
    fn oversize_message_aborts() {
        let g = path(2);
        let cfg = SimConfig::for_nodes(2).with_bandwidth(4);
        let err = run(&g, &cfg, |ctx| Echo { ctx, width: 5, done: false }).unwrap_err();
        match err {
            SimError::Oversize { round, bits, limit, .. } => {
                assert_eq!((round, bits, limit), (1, 5, 4));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn default_bandwidth() {
        assert_eq!(SimConfig::for_nodes(20).bandwidth_bits, 40);
        assert_eq!(SimConfig::for_nodes(2).bandwidth_bits, 8);
        assert!(SimConfig::for_nodes(20).with_bandwidth(4).validate(20).is_err());
    }

    #[test]
    fn tapes_differ_per_node_and_seed() {
        let a = tape_seed(7, NodeId(0));
        assert_ne!(a, tape_seed(7, NodeId(1)));
        assert_ne!(a, tape_seed(8, NodeId(0)));
        assert_eq!(a, tape_seed(7, NodeId(0)));
    }

    struct Silent;

    impl NodeProgram for Silent {
        type Output = ();
        fn on_round(&mut self, _: u64, _: &[(NodeId, Payload)]) -> Vec<(NodeId, Payload)> {
            Vec::new()
        }
        fn output(&self) -> Option<()> {
            None
        }
    }

    #[test]
    fn never_outputting_hits_round_limit() {
        let g = path(3);
        let cfg = SimConfig::for_nodes(3).with_max_rounds(10);
        assert_eq!(run(&g, &cfg, |_| Silent).unwrap_err(), SimError::NoTermination(10));
    }
}
