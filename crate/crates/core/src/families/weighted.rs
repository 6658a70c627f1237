//! Weighted families: the 8-cycle family, identical subgraphs, and the APSP star.

use super::input::weights_from_bits;
use super::{pair_index, upper_pairs, Draft, FamilySpec, InputSlot};
use crate::graph::{Graph, GraphBuilder, NodeLabel, SetTag, Side};

pub(super) fn cycle8(k: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    let spec = FamilySpec::Cycle8 { k };
    let mut d = Draft::new(GraphBuilder::weighted(spec.w_max()));
    for set in [SetTag::A1, SetTag::A2, SetTag::B1, SetTag::B2] {
        let hub = NodeLabel::center(set);
        d.node(hub);
        for i in 0..k as u32 {
            d.node(NodeLabel::member(set, i));
            d.weighted_edge(hub, NodeLabel::member(set, i), 0);
        }
    }
    d.weighted_edge(NodeLabel::center(SetTag::A1), NodeLabel::center(SetTag::B1), 0);
    d.weighted_edge(NodeLabel::center(SetTag::A2), NodeLabel::center(SetTag::B2), 0);
    let k3 = (k as u64).pow(3);
    for i in 0..k {
        for j in 0..k {
            let p = pair_index(i, j, k);
            let offset = (k * i + j) as u64;
            d.slot(
                Side::Alice,
                NodeLabel::member(SetTag::A1, i as u32),
                NodeLabel::member(SetTag::A2, j as u32),
                x[p],
                Some(k3 + offset),
            );
            d.slot(
                Side::Bob,
                NodeLabel::member(SetTag::B1, i as u32),
                NodeLabel::member(SetTag::B2, j as u32),
                y[p],
                Some(k3 - offset),
            );
        }
    }
    d.finish()
}

/// Pair weights of one side, with the index-0 pairs zeroed in the hourglass variant.
pub(super) fn identical_weights(bits: &[bool], k: usize, weight_bits: u32, hourglass: bool) -> Vec<u64> {
    let mut w = weights_from_bits(bits, weight_bits);
    if hourglass {
        for (e, (i, _)) in upper_pairs(k).into_iter().enumerate() {
            if i == 0 {
                w[e] = 0;
            }
        }
    }
    w
}

pub(super) fn identical(
    k: usize,
    weight_bits: u32,
    hourglass: bool,
    x: &[bool],
    y: &[bool],
) -> (Graph, Vec<InputSlot>) {
    let w_max = (1u64 << weight_bits) - 1;
    let mut d = Draft::new(GraphBuilder::weighted(w_max));
    for set in [SetTag::A, SetTag::B] {
        for i in 0..k as u32 {
            d.node(NodeLabel::member(set, i));
        }
    }
    d.weighted_edge(NodeLabel::member(SetTag::A, 0), NodeLabel::member(SetTag::B, 0), 0);
    for (side, set, input) in [(Side::Alice, SetTag::A, x), (Side::Bob, SetTag::B, y)] {
        let weights = identical_weights(input, k, weight_bits, hourglass);
        for ((i, j), w) in upper_pairs(k).into_iter().zip(weights) {
            d.slot(
                side,
                NodeLabel::member(set, i as u32),
                NodeLabel::member(set, j as u32),
                true,
                Some(w),
            );
        }
    }
    d.finish()
}

/// Leaves `a_i` (members of `A`) hang off the hub `a` (center of `A`) with
/// weight `x[i]`; `a - b` has weight 0 and `b` (center of `B`) is Bob's only node.
pub(super) fn apsp_star(n: usize, weight_bits: u32, x: &[bool]) -> (Graph, Vec<InputSlot>) {
    let w_max = (1u64 << weight_bits) - 1;
    let mut d = Draft::new(GraphBuilder::weighted(w_max));
    let a = NodeLabel::center(SetTag::A);
    let b = NodeLabel::center(SetTag::B);
    d.node(a);
    d.node(b);
    d.weighted_edge(a, b, 0);
    for (i, w) in weights_from_bits(x, weight_bits).into_iter().enumerate().take(n - 2) {
        let leaf = NodeLabel::member(SetTag::A, i as u32);
        d.node(leaf);
        d.slot(Side::Alice, leaf, a, true, Some(w));
    }
    d.finish()
}
