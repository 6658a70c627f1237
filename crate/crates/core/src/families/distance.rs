//! Diameter, stretched-diameter and radius families (single bit-gadget).

use super::{Draft, InputSlot};
use crate::bitgadget::{add_copy, side_of};
use crate::graph::{Graph, GraphBuilder, NodeLabel, Role, SetTag, Side};

const SIDES: [(SetTag, Side); 2] = [(SetTag::A, Side::Alice), (SetTag::B, Side::Bob)];

/// The fixed diameter graph: gadget, `c_S` joined to `S`, `cbar_S` joined to
/// the bit-nodes of `S`, `c_S - cbar_S`, and `cbar_A - cbar_B`.
fn diameter_fixed(d: &mut Draft, k: usize) {
    add_copy(&mut d.b, SetTag::A, SetTag::B, k, None);
    let log_k = k.trailing_zeros();
    for (set, _) in SIDES {
        let c = NodeLabel::center(set);
        let cb = NodeLabel::bar_center(set);
        d.node(c);
        d.node(cb);
        for i in 0..k as u32 {
            d.edge(NodeLabel::member(set, i), c);
        }
        for h in 0..log_k {
            d.edge(NodeLabel::bit_f(set, h), cb);
            d.edge(NodeLabel::bit_t(set, h), cb);
        }
        d.edge(c, cb);
    }
    d.edge(NodeLabel::bar_center(SetTag::A), NodeLabel::bar_center(SetTag::B));
}

/// `s^i - cbar_S` present when the input bit equals `when`.
fn member_slots(d: &mut Draft, k: usize, x: &[bool], y: &[bool], when: bool) {
    for ((set, side), input) in SIDES.into_iter().zip([x, y]) {
        for (i, &bit) in input.iter().enumerate().take(k) {
            d.slot(
                side,
                NodeLabel::member(set, i as u32),
                NodeLabel::bar_center(set),
                bit == when,
                None,
            );
        }
    }
}

pub(super) fn diameter(k: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    let mut d = Draft::new(GraphBuilder::unweighted());
    diameter_fixed(&mut d, k);
    member_slots(&mut d, k, x, y, false);
    d.finish()
}

/// Every edge inside a side becomes a path of length `q` (interior nodes are
/// `Path` labels carrying the edge ordinal and the position along the path);
/// cut edges and input edges keep length 1. Pendant nodes `abar^i`, `bbar^i`
/// hang off `a^i`, `b^i` by `q`-paths.
pub(super) fn approx_diameter(k: usize, q: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    let mut fixed = Draft::new(GraphBuilder::unweighted());
    diameter_fixed(&mut fixed, k);
    for (set, _) in SIDES {
        for i in 0..k as u32 {
            let bar = NodeLabel::new(Role::Bar, set, i);
            fixed.node(bar);
            fixed.edge(NodeLabel::member(set, i), bar);
        }
    }
    let (base, _) = fixed.finish();

    let mut d = Draft::new(GraphBuilder::unweighted());
    for &l in base.labels() {
        d.node(l);
    }
    for (ordinal, e) in base.edges().enumerate() {
        if side_of(&e.u) != side_of(&e.v) {
            d.edge(e.u, e.v);
            continue;
        }
        let tag = if side_of(&e.u) == Side::Alice {
            SetTag::A
        } else {
            SetTag::B
        };
        let mut prev = e.u;
        for pos in 1..q {
            let p = NodeLabel::new(Role::Path, tag, ordinal as u32).with_bit(pos as u32);
            d.node(p);
            d.edge(prev, p);
            prev = p;
        }
        d.edge(prev, e.v);
    }
    member_slots(&mut d, k, x, y, false);
    d.finish()
}

/// Diameter graph plus `f_A^h - t_A^h` and the pendant path `w^0 - w^1 - w^2`
/// with `w^0` joined to every `a^i`; input edges appear on 1 bits.
pub(super) fn radius(k: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    let mut d = Draft::new(GraphBuilder::unweighted());
    diameter_fixed(&mut d, k);
    for h in 0..k.trailing_zeros() {
        d.edge(NodeLabel::bit_f(SetTag::A, h), NodeLabel::bit_t(SetTag::A, h));
    }
    let w: Vec<NodeLabel> = (0..3).map(|i| NodeLabel::new(Role::W, SetTag::A, i)).collect();
    for &l in &w {
        d.node(l);
    }
    d.edge(w[0], w[1]);
    d.edge(w[1], w[2]);
    for i in 0..k as u32 {
        d.edge(w[0], NodeLabel::member(SetTag::A, i));
    }
    member_slots(&mut d, k, x, y, true);
    d.finish()
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::graph::{NodeId, NodeLabel, Role, SetTag, Side};

    fn bits(s: &str) -> Vec<bool> {
        bits_from_str(s).unwrap()
    }

    #[test]
    fn diameter_counts() {
        let inst = build_diameter(4, &bits("1001"), &bits("0110")).unwrap();
        assert_eq!(inst.graph().node_count(), 20);
        assert_eq!(inst.pg.cut().len(), 5);
        // x has two zeros, y has two zeros.
        assert_eq!(inst.input_edges(Side::Alice).len(), 2);
        assert_eq!(inst.input_edges(Side::Bob).len(), 2);
        assert!(inst.graph().is_connected().unwrap());
        inst.check_lower_bound_property().unwrap();
    }

    #[test]
    fn approx_with_q1_is_diameter_plus_pendants() {
        let x = bits("0110");
        let y = bits("1010");
        let plain = build_diameter(4, &x, &y).unwrap();
        let stretched = build_approx_diameter(4, 1, &x, &y).unwrap();
        let g = stretched.graph();
        let non_bar: Vec<NodeLabel> = g
            .labels()
            .iter()
            .copied()
            .filter(|l| l.role != Role::Bar)
            .collect();
        assert_eq!(non_bar, plain.graph().labels());
        let keep = |id: NodeId| g.label(id).role != Role::Bar;
        assert_eq!(g.induced(keep), *plain.graph());
        for set in [SetTag::A, SetTag::B] {
            for i in 0..4 {
                let bar = g.id_of(&NodeLabel::new(Role::Bar, set, i)).unwrap();
                let s = g.id_of(&NodeLabel::member(set, i)).unwrap();
                assert_eq!(g.neighbors(bar), &[(s, 1)]);
            }
        }
    }

    #[test]
    fn approx_path_lengths() {
        let inst = build_approx_diameter(4, 3, &bits("0000"), &bits("1111")).unwrap();
        // 17 internal fixed edges plus 4 pendants per side, each gaining q - 1 nodes.
        assert_eq!(inst.graph().node_count(), 20 + 8 + 2 * 21 * 2);
        assert_eq!(inst.pg.cut().len(), 5);
        inst.check_lower_bound_property().unwrap();
    }

    #[test]
    fn radius_structure() {
        let inst = build_radius(4, &bits("1010"), &bits("0101")).unwrap();
        assert_eq!(inst.graph().node_count(), 23);
        assert_eq!(inst.pg.cut().len(), 5);
        assert_eq!(inst.input_edges(Side::Alice).len(), 2);
        assert!(inst.expected);
        inst.check_lower_bound_property().unwrap();
    }

}
