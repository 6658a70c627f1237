use std::collections::BTreeSet;

use super::{StreamError, StreamSetup, StreamingProgram};
use crate::families::FamilyInstance;
use crate::graph::{Graph, GraphBuilder, IdEdge, NodeId};
use crate::oracles::evaluate_on;
use crate::sim::{bits_for, push_bits, BitReader, Evaluator, Payload};

/// Stores every distinct edge and evaluates a predicate on the stored graph.
/// Each edge costs `2·⌈log₂ n⌉ + weight_bits` bits of state.
#[derive(Clone)]
pub struct StoreAll {
    setup: StreamSetup,
    evaluator: Evaluator,
    edges: BTreeSet<IdEdge>,
    id_width: u32,
    weight_width: u32,
}

impl std::fmt::Debug for StoreAll {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StoreAll").field("edges", &self.edges.len()).finish()
    }
}

impl StoreAll {
    pub fn new(setup: StreamSetup, evaluator: Evaluator) -> StoreAll {
        let id_width = bits_for(setup.n().saturating_sub(1) as u64);
        let weight_width = if setup.weighted { bits_for(setup.w_max) } else { 0 };
        StoreAll {
            setup,
            evaluator,
            edges: BTreeSet::new(),
            id_width,
            weight_width,
        }
    }

    pub fn edge_bits(&self) -> usize {
        (2 * self.id_width + self.weight_width) as usize
    }

    pub fn graph(&self) -> Graph {
        let mut b = GraphBuilder::new(self.setup.weighted, self.setup.w_max);
        for &l in &self.setup.labels {
            b.add_node(l);
        }
        for e in &self.edges {
            b.add_edge(self.setup.labels[e.u.0], self.setup.labels[e.v.0], e.weight)
                .expect("stored edges form a simple graph");
        }
        b.build().expect("stored edges form a valid graph")
    }
}

impl StreamingProgram for StoreAll {
    type Output = bool;

    fn process_edge(&mut self, e: &IdEdge) {
        self.edges.insert(*e);
    }

    fn end_pass(&mut self) {}

    fn serialize_state(&self) -> Payload {
        let mut p = Payload::new();
        for e in &self.edges {
            push_bits(&mut p, e.u.0 as u64, self.id_width);
            push_bits(&mut p, e.v.0 as u64, self.id_width);
            push_bits(&mut p, e.weight.unwrap_or(0), self.weight_width);
        }
        p
    }

    fn restore_state(&mut self, state: &Payload) -> Result<(), StreamError> {
        let per = self.edge_bits();
        if !state.len().is_multiple_of(per) {
            return Err(StreamError::State(format!(
                "{} bits is not a whole number of {per}-bit edges",
                state.len()
            )));
        }
        let mut r = BitReader::new(state);
        self.edges.clear();
        while r.remaining() > 0 {
            let u = r.read(self.id_width).expect("length checked") as usize;
            let v = r.read(self.id_width).expect("length checked") as usize;
            let w = r.read(self.weight_width).expect("length checked");
            if u >= v || v >= self.setup.n() {
                return Err(StreamError::State(format!("bad edge ({u}, {v})")));
            }
            self.edges.insert(IdEdge {
                u: NodeId(u),
                v: NodeId(v),
                weight: self.setup.weighted.then_some(w),
            });
        }
        Ok(())
    }

    fn output(&self) -> Option<bool> {
        Some((self.evaluator)(&self.graph()))
    }
}

/// Store-all programs deciding the instance's predicate, one per call.
pub fn store_all_for_instance(inst: &FamilyInstance, memory_cap: usize) -> impl FnMut() -> StoreAll {
    let setup = StreamSetup::for_graph(inst.graph(), memory_cap);
    let predicate = inst.predicate;
    let star = inst.x_weights();
    let evaluator: Evaluator = std::sync::Arc::new(move |g: &Graph| {
        evaluate_on(&predicate, g, star.as_deref())
            .ok()
            .flatten()
            .unwrap_or(false)
    });
    move || StoreAll::new(setup.clone(), evaluator.clone())
}

/// Union-find connectivity in `n·⌈log₂ n⌉` bits of state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    parent: Vec<usize>,
    id_width: u32,
}

impl Connectivity {
    pub fn new(n: usize) -> Connectivity {
        Connectivity {
            parent: (0..n).collect(),
            id_width: bits_for(n.saturating_sub(1) as u64),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }
}

impl StreamingProgram for Connectivity {
    type Output = bool;

    fn process_edge(&mut self, e: &IdEdge) {
        let (a, b) = (self.find(e.u.0), self.find(e.v.0));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    fn end_pass(&mut self) {}

    fn serialize_state(&self) -> Payload {
        let mut p = Payload::new();
        for &v in &self.parent {
            push_bits(&mut p, v as u64, self.id_width);
        }
        p
    }

    fn restore_state(&mut self, state: &Payload) -> Result<(), StreamError> {
        let n = self.parent.len();
        if state.len() != n * self.id_width as usize {
            return Err(StreamError::State(format!("expected {} bits", n * self.id_width as usize)));
        }
        let mut r = BitReader::new(state);
        for i in 0..n {
            let p = r.read(self.id_width).expect("length checked") as usize;
            if p >= n {
                return Err(StreamError::State(format!("parent {p} out of range")));
            }
            self.parent[i] = p;
        }
        Ok(())
    }

    fn output(&self) -> Option<bool> {
        let n = self.parent.len();
        let mut me = self.clone();
        Some((0..n).all(|v| me.find(v) == me.find(0)))
    }
}
