//! Semi-streaming passes with memory accounting, and the reduction that
//! turns a streaming algorithm into a two-party protocol.
//!
//! A program sees edges one at a time, may make several passes, and is
//! charged for its serialized state at every pass boundary. In the
//! reduction, Alice streams `E_A` (her internal edges and the cut), hands the
//! serialized state to Bob, who streams `E_B` and hands it back for the next
//! pass.

mod format;
mod programs;

pub use format::{parse_edge_stream, write_edge_stream, EdgeStream, StreamParseError};
pub use programs::{store_all_for_instance, Connectivity, StoreAll};

use std::fmt::Debug;

use crate::families::FamilyInstance;
use crate::graph::{Graph, IdEdge, NodeLabel, Side};
use crate::sim::Payload;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StreamError {
    #[error("edge order is not a permutation of the graph's edges")]
    NotPermutation,
    #[error("state of {bits} bits exceeds the memory cap of {cap} bits (pass {pass})")]
    OverCap { bits: usize, cap: usize, pass: usize },
    #[error("at least one pass is required")]
    NoPasses,
    #[error("program produced no output")]
    NoOutput,
    #[error("corrupt state: {0}")]
    State(String),
    #[error("not a lower-bound graph: {0}")]
    LowerBound(String),
}

/// Public facts a streaming program starts from: the node set and the memory cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamSetup {
    pub labels: Vec<NodeLabel>,
    pub memory_cap: usize,
    pub weighted: bool,
    pub w_max: u64,
}

impl StreamSetup {
    pub fn for_graph(g: &Graph, memory_cap: usize) -> StreamSetup {
        StreamSetup {
            labels: g.labels().to_vec(),
            memory_cap,
            weighted: g.is_weighted(),
            w_max: g.w_max(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }
}

pub trait StreamingProgram {
    type Output: Clone + Debug + PartialEq;

    fn process_edge(&mut self, e: &IdEdge);

    fn end_pass(&mut self);

    fn serialize_state(&self) -> Payload;

    /// Replaces the state with one produced by `serialize_state`.
    fn restore_state(&mut self, state: &Payload) -> Result<(), StreamError>;

    fn output(&self) -> Option<Self::Output>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct StreamOutcome<O> {
    pub output: O,
    /// Largest serialized state at a pass boundary.
    pub max_state_bits: usize,
}

fn canonical(mut edges: Vec<IdEdge>) -> Vec<IdEdge> {
    edges.sort();
    edges
}

/// Streams `order` through `program` `passes` times.
pub fn run_stream<P: StreamingProgram>(
    g: &Graph,
    order: &[IdEdge],
    mut program: P,
    passes: usize,
    memory_cap: usize,
) -> Result<StreamOutcome<P::Output>, StreamError> {
    if passes == 0 {
        return Err(StreamError::NoPasses);
    }
    if canonical(order.to_vec()) != canonical(g.id_edges().to_vec()) {
        return Err(StreamError::NotPermutation);
    }
    let mut max_state_bits = 0;
    for pass in 1..=passes {
        for e in order {
            program.process_edge(e);
        }
        program.end_pass();
        let bits = program.serialize_state().len();
        if bits > memory_cap {
            return Err(StreamError::OverCap {
                bits,
                cap: memory_cap,
                pass,
            });
        }
        max_state_bits = max_state_bits.max(bits);
    }
    Ok(StreamOutcome {
        output: program.output().ok_or(StreamError::NoOutput)?,
        max_state_bits,
    })
}

/// `E = E_A ∪ E_B` for the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    /// Alice-internal and cut edges, canonical order.
    pub alice: Vec<IdEdge>,
    /// Bob-internal edges, canonical order.
    pub bob: Vec<IdEdge>,
}

/// Alice's part comes from the graph built with her input alone and Bob's
/// from the graph built with his input alone.
pub fn to_edge_partition(inst: &FamilyInstance) -> Result<EdgePartition, StreamError> {
    inst.check_lower_bound_property()
        .map_err(StreamError::LowerBound)?;
    let side = |id: crate::graph::NodeId| inst.pg.side(id);
    let (alice_view, _) = inst.spec.construct(&inst.x, None);
    let zeros = vec![false; inst.x.len()];
    let (bob_view, _) = inst.spec.construct(&zeros, inst.y.as_deref());
    let alice = alice_view
        .id_edges()
        .iter()
        .filter(|e| side(e.u) == Side::Alice || side(e.v) == Side::Alice)
        .copied()
        .collect();
    let bob = bob_view
        .id_edges()
        .iter()
        .filter(|e| side(e.u) == Side::Bob && side(e.v) == Side::Bob)
        .copied()
        .collect();
    Ok(EdgePartition {
        alice: canonical(alice),
        bob: canonical(bob),
    })
}

/// Result of the two-party reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamCutOutcome<O> {
    pub output: O,
    pub passes: usize,
    /// Sizes of Alice's handoffs, one per pass.
    pub alice_to_bob: Vec<usize>,
    /// Sizes of Bob's handoffs, one per pass except the last.
    pub bob_to_alice: Vec<usize>,
    /// Largest handoff in either direction.
    pub max_state_bits: usize,
    pub memory_cap: usize,
}

impl<O> StreamCutOutcome<O> {
    pub fn total_bits(&self) -> u64 {
        self.alice_to_bob
            .iter()
            .chain(&self.bob_to_alice)
            .map(|&b| b as u64)
            .sum()
    }

    /// `R(2M − 1)` for a given `M`.
    pub fn bound_for(&self, m: usize) -> u64 {
        (self.passes as u64) * (2 * m as u64).saturating_sub(1)
    }
}

/// Runs `factory`'s program as the two-party protocol: each pass Alice
/// streams `E_A` and sends her state, Bob resumes from it, streams `E_B`,
/// ends the pass, and sends his state back unless it was the last pass.
/// Every handoff is checked against `memory_cap`.
pub fn stream_cut_simulate<P: StreamingProgram>(
    inst: &FamilyInstance,
    mut factory: impl FnMut() -> P,
    passes: usize,
    memory_cap: usize,
) -> Result<StreamCutOutcome<P::Output>, StreamError> {
    if passes == 0 {
        return Err(StreamError::NoPasses);
    }
    let part = to_edge_partition(inst)?;
    let mut alice_to_bob = Vec::new();
    let mut bob_to_alice = Vec::new();
    let check = |bits: usize, pass: usize| {
        if bits > memory_cap {
            Err(StreamError::OverCap {
                bits,
                cap: memory_cap,
                pass,
            })
        } else {
            Ok(bits)
        }
    };
    let mut from_bob: Option<Payload> = None;
    let mut bob = factory();
    for pass in 1..=passes {
        let mut alice = factory();
        if let Some(state) = &from_bob {
            alice.restore_state(state)?;
        }
        for e in &part.alice {
            alice.process_edge(e);
        }
        let handoff = alice.serialize_state();
        alice_to_bob.push(check(handoff.len(), pass)?);
        bob = factory();
        bob.restore_state(&handoff)?;
        for e in &part.bob {
            bob.process_edge(e);
        }
        bob.end_pass();
        if pass < passes {
            let back = bob.serialize_state();
            bob_to_alice.push(check(back.len(), pass)?);
            from_bob = Some(back);
        }
    }
    let max_state_bits = alice_to_bob.iter().chain(&bob_to_alice).copied().max().unwrap_or(0);
    Ok(StreamCutOutcome {
        output: bob.output().ok_or(StreamError::NoOutput)?,
        passes,
        alice_to_bob,
        bob_to_alice,
        max_state_bits,
        memory_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_diameter, build_identical, build_mvc, FamilySpec};

    #[test]
    fn identical_partition() {
        let inst = build_identical(3, 2, &[1, 2, 3], &[3, 2, 1], false).unwrap();
        let part = to_edge_partition(&inst).unwrap();
        let g = inst.graph();
        let lab = |e: &IdEdge| (g.label(e.u), g.label(e.v));
        assert_eq!(part.alice.len(), 4);
        assert_eq!(part.bob.len(), 3);
        assert_eq!(part.alice.iter().filter(|e| inst.pg.side(e.u) != inst.pg.side(e.v)).count(), 1);
        assert!(part.bob.iter().all(|e| lab(e).0.set == crate::graph::SetTag::B));
    }

    #[test]
    fn partition_covers_edges() {
        let inst = build_diameter(2, &[true, false], &[true, true]).unwrap();
        let part = to_edge_partition(&inst).unwrap();
        let mut all = part.alice.clone();
        all.extend(&part.bob);
        assert_eq!(canonical(all), canonical(inst.graph().id_edges().to_vec()));
    }

    #[test]
    fn mvc_input_edges_follow_owner() {
        let spec = FamilySpec::Mvc { k: 2 };
        let inst = build_mvc(2, &[true, false, true, true], &[false, true, true, false]).unwrap();
        let part = to_edge_partition(&inst).unwrap();
        let g = inst.graph();
        for (owner, list) in [(Side::Alice, &part.alice), (Side::Bob, &part.bob)] {
            for e in inst.input_edges(owner) {
                let (u, v) = (g.id_of(&e.u).unwrap(), g.id_of(&e.v).unwrap());
                assert!(list.iter().any(|x| (x.u, x.v) == (u.min(v), u.max(v))));
            }
        }
        assert_eq!(spec.input_len(), 4);
    }

    #[test]
    fn handoff_bound_arithmetic() {
        let out = StreamCutOutcome {
            output: true,
            passes: 2,
            alice_to_bob: vec![100, 100],
            bob_to_alice: vec![100],
            max_state_bits: 100,
            memory_cap: 100,
        };
        assert_eq!(out.bound_for(100), 398);
        assert!(out.total_bits() <= out.bound_for(100));
    }
}
