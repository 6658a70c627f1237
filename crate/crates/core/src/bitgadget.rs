//! The bit-gadget: `k` set-nodes per side attached to `2 log k` bit-nodes that
//! spell out their index in binary, with bit-nodes of opposite sides joined so
//! that `a^i` and `b^j` are close exactly when `i != j`.

use crate::graph::{GraphBuilder, NodeLabel, PartitionedGraph, SetTag, Side};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("k must be a power of 2 with k >= 2, got {0}")]
    BadK(usize),
    #[error("gadget copies must be 1 or 2, got {0}")]
    BadCopies(u8),
    #[error("index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetParams {
    k: usize,
    copies: u8,
}

impl GadgetParams {
    pub fn new(k: usize, copies: u8) -> Result<GadgetParams, GadgetError> {
        check_k(k)?;
        if !(1..=2).contains(&copies) {
            return Err(GadgetError::BadCopies(copies));
        }
        Ok(GadgetParams { k, copies })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn copies(&self) -> u8 {
        self.copies
    }

    pub fn log_k(&self) -> u32 {
        self.k.trailing_zeros()
    }

    /// `(alice set, bob set)` for each copy.
    pub fn set_pairs(&self) -> Vec<(SetTag, SetTag)> {
        match self.copies {
            1 => vec![(SetTag::A, SetTag::B)],
            _ => vec![(SetTag::A1, SetTag::B1), (SetTag::A2, SetTag::B2)],
        }
    }
}

pub fn check_k(k: usize) -> Result<(), GadgetError> {
    if k < 2 || !k.is_power_of_two() {
        return Err(GadgetError::BadK(k));
    }
    Ok(())
}

/// Bit-nodes attached to `s^i`: `f_S^h` where bit `h` of `i` is 0, `t_S^h` where it is 1.
pub fn bin_nodes(set: SetTag, i: usize, k: usize) -> Result<Vec<NodeLabel>, GadgetError> {
    check_k(k)?;
    if i >= k {
        return Err(GadgetError::IndexOutOfRange { index: i, k });
    }
    Ok(bin_unchecked(set, i, k.trailing_zeros()))
}

pub(crate) fn bin_unchecked(set: SetTag, i: usize, log_k: u32) -> Vec<NodeLabel> {
    (0..log_k)
        .map(|h| {
            if (i >> h) & 1 == 1 {
                NodeLabel::bit_t(set, h)
            } else {
                NodeLabel::bit_f(set, h)
            }
        })
        .collect()
}

/// Adds one gadget copy (set-nodes, bit-nodes, membership and cross edges).
/// Edges are unweighted, or carry `weight` when building a weighted graph.
pub(crate) fn add_copy(
    b: &mut GraphBuilder,
    alice: SetTag,
    bob: SetTag,
    k: usize,
    weight: Option<u64>,
) {
    let log_k = k.trailing_zeros();
    for set in [alice, bob] {
        for h in 0..log_k {
            b.add_node(NodeLabel::bit_f(set, h));
            b.add_node(NodeLabel::bit_t(set, h));
        }
        for i in 0..k {
            let s = NodeLabel::member(set, i as u32);
            b.add_node(s);
            for bit in bin_unchecked(set, i, log_k) {
                b.add_edge(s, bit, weight).expect("fresh gadget edge");
            }
        }
    }
    for h in 0..log_k {
        b.add_edge(NodeLabel::bit_f(alice, h), NodeLabel::bit_t(bob, h), weight)
            .expect("fresh gadget edge");
        b.add_edge(NodeLabel::bit_t(alice, h), NodeLabel::bit_f(bob, h), weight)
            .expect("fresh gadget edge");
    }
}

/// Side assignment shared by every construction in this crate: the set tag decides.
pub fn side_of(label: &NodeLabel) -> Side {
    if label.set.is_alice() {
        Side::Alice
    } else {
        Side::Bob
    }
}

/// The bare gadget, `2k + 4 log k` nodes per copy; `V_A = A ∪ F_A ∪ T_A`.
pub fn build_gadget(params: GadgetParams) -> PartitionedGraph {
    let mut b = GraphBuilder::unweighted();
    for (alice, bob) in params.set_pairs() {
        add_copy(&mut b, alice, bob, params.k, None);
    }
    let g = b.build().expect("gadget construction is well-formed");
    PartitionedGraph::new(g, side_of).expect("both sides are populated")
}
