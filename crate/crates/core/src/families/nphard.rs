//! Vertex cover and coloring families (double bit-gadget).

use super::{pair_index, Draft, InputSlot};
use crate::bitgadget::{add_copy, side_of};
use crate::graph::{Graph, GraphBuilder, NodeLabel, Role, SetTag, Side};

const SETS: [SetTag; 4] = [SetTag::A1, SetTag::A2, SetTag::B1, SetTag::B2];

fn double_gadget_with_squares(d: &mut Draft, k: usize) {
    add_copy(&mut d.b, SetTag::A1, SetTag::B1, k, None);
    add_copy(&mut d.b, SetTag::A2, SetTag::B2, k, None);
    // Completes each cross pair of the gadget into the 4-cycle (f_A, t_A, f_B, t_B).
    for set in SETS {
        for h in 0..k.trailing_zeros() {
            d.edge(NodeLabel::bit_f(set, h), NodeLabel::bit_t(set, h));
        }
    }
}

/// `s_1^i - s_2^j` present where the pair bit is 0.
fn pair_slots(d: &mut Draft, k: usize, x: &[bool], y: &[bool]) {
    for (side, (s1, s2), input) in [
        (Side::Alice, (SetTag::A1, SetTag::A2), x),
        (Side::Bob, (SetTag::B1, SetTag::B2), y),
    ] {
        for i in 0..k {
            for j in 0..k {
                d.slot(
                    side,
                    NodeLabel::member(s1, i as u32),
                    NodeLabel::member(s2, j as u32),
                    !input[pair_index(i, j, k)],
                    None,
                );
            }
        }
    }
}

pub(super) fn mvc(k: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    let mut d = Draft::new(GraphBuilder::unweighted());
    double_gadget_with_squares(&mut d, k);
    for set in SETS {
        for i in 0..k as u32 {
            for j in i + 1..k as u32 {
                d.edge(NodeLabel::member(set, i), NodeLabel::member(set, j));
            }
        }
    }
    pair_slots(&mut d, k, x, y);
    d.finish()
}

pub(super) fn coloring3_node_count(k: usize) -> usize {
    4 * (3 * k + 2 * k.trailing_zeros() as usize) + 6
}

fn coloring3_draft(k: usize, x: &[bool], y: &[bool]) -> Draft {
    let mut d = Draft::new(GraphBuilder::unweighted());
    double_gadget_with_squares(&mut d, k);
    let ca = |i| NodeLabel::color(SetTag::A, i);
    let cb = |i| NodeLabel::color(SetTag::B, i);
    for i in 0..3 {
        d.node(ca(i));
        d.node(cb(i));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            d.edge(ca(i), ca(j));
            d.edge(cb(i), cb(j));
        }
        for j in 0..3 {
            if i != j {
                d.edge(ca(i), cb(j));
            }
        }
    }
    let k32 = k as u32;
    for set in SETS {
        let bar = |i| NodeLabel::new(Role::Bar, set, i);
        let dbar = |i| NodeLabel::new(Role::DoubleBar, set, i);
        for i in 0..k32 {
            d.node(bar(i));
            d.node(dbar(i));
            d.edge(NodeLabel::member(set, i), bar(i));
            d.edge(bar(i), dbar(i));
        }
        for i in 0..k32 - 1 {
            d.edge(dbar(i), bar(i + 1));
        }
        // Copy 1 uses (bits, members, double bars) = (c^1, c^2, c^1); copy 2 swaps 1 and 2.
        let (bits_c, main, other) = match set {
            SetTag::A1 | SetTag::B1 => (1, 2, 1),
            _ => (2, 1, 2),
        };
        let hub = |i| NodeLabel::color(if set.is_alice() { SetTag::A } else { SetTag::B }, i);
        for h in 0..k.trailing_zeros() {
            d.edge(hub(bits_c), NodeLabel::bit_f(set, h));
            d.edge(hub(bits_c), NodeLabel::bit_t(set, h));
        }
        for i in 0..k32 {
            d.edge(hub(main), NodeLabel::member(set, i));
            d.edge(hub(other), dbar(i));
        }
        d.edge(hub(main), bar(0));
        d.edge(hub(main), dbar(k32 - 1));
    }
    pair_slots(&mut d, k, x, y);
    d
}

pub(super) fn coloring3(k: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    coloring3_draft(k, x, y).finish()
}

/// Adds `c_a^3..c_a^{c-1}` joined to all of `V_A` and `c_b^3..c_b^{c-1}`
/// joined to all of `V_B` and to `c_a^0, c_a^1, c_a^2`. Each group also forms
/// a clique, since later nodes are joined to all of their side including the
/// earlier ones.
pub(super) fn coloring_c(k: usize, c: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    let (base, slots) = coloring3(k, x, y);
    let mut d = Draft::new(GraphBuilder::unweighted());
    d.slots = slots;
    for &l in base.labels() {
        d.node(l);
    }
    for e in base.edges() {
        d.edge(e.u, e.v);
    }
    for (set, side) in [(SetTag::A, Side::Alice), (SetTag::B, Side::Bob)] {
        let originals: Vec<NodeLabel> = base
            .labels()
            .iter()
            .copied()
            .filter(|l| side_of(l) == side)
            .collect();
        for i in 3..c as u32 {
            let extra = NodeLabel::color(set, i);
            d.node(extra);
            for &l in &originals {
                d.edge(extra, l);
            }
            for j in 3..i {
                d.edge(extra, NodeLabel::color(set, j));
            }
            if side == Side::Bob {
                for j in 0..3 {
                    d.edge(extra, NodeLabel::color(SetTag::A, j));
                }
            }
        }
    }
    d.finish()
}

/// `c` copies of the 3-coloring graph (copy index in the label), with all of
/// `V_A(i)` joined to all of `V_A(j)` and likewise on Bob's side.
pub(super) fn coloring_gap(k: usize, c: usize, x: &[bool], y: &[bool]) -> (Graph, Vec<InputSlot>) {
    let (base, slots) = coloring3(k, x, y);
    let mut d = Draft::new(GraphBuilder::unweighted());
    for copy in 0..c as u16 {
        for &l in base.labels() {
            d.node(l.with_copy(copy));
        }
        for e in base.edges() {
            if !slots.iter().any(|s| (s.u, s.v) == (e.u, e.v) || (s.v, s.u) == (e.u, e.v)) {
                d.edge(e.u.with_copy(copy), e.v.with_copy(copy));
            }
        }
        for s in &slots {
            let present = base
                .id_of(&s.u)
                .zip(base.id_of(&s.v))
                .is_some_and(|(u, v)| base.has_edge(u, v));
            d.slot(s.owner, s.u.with_copy(copy), s.v.with_copy(copy), present, None);
        }
    }
    for side in [Side::Alice, Side::Bob] {
        let part: Vec<NodeLabel> = base
            .labels()
            .iter()
            .copied()
            .filter(|l| side_of(l) == side)
            .collect();
        for ci in 0..c as u16 {
            for cj in ci + 1..c as u16 {
                for &u in &part {
                    for &v in &part {
                        d.edge(u.with_copy(ci), v.with_copy(cj));
                    }
                }
            }
        }
    }
    d.finish()
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::graph::{NodeLabel, SetTag, Side};

    fn zeros(n: usize) -> Vec<bool> {
        vec![false; n]
    }

    #[test]
    fn mvc_shape() {
        let mut x = zeros(16);
        let mut y = zeros(16);
        x[pair_index(1, 2, 4)] = true;
        y[pair_index(1, 2, 4)] = true;
        let inst = build_mvc(4, &x, &y).unwrap();
        assert_eq!(inst.graph().node_count(), 32);
        assert_eq!(inst.pg.cut().len(), 8);
        assert_eq!(inst.input_edges(Side::Alice).len(), 15);
        assert_eq!(inst.predicate, Predicate::VertexCoverAtMost(20));
        assert!(inst.expected);
        inst.check_lower_bound_property().unwrap();
    }

    #[test]
    fn coloring3_shape() {
        let inst = build_coloring3(4, &zeros(16), &zeros(16)).unwrap();
        assert_eq!(inst.graph().node_count(), super::coloring3_node_count(4));
        assert_eq!(inst.pg.cut().len(), 14);
        let g = inst.graph();
        for i in 0..3 {
            for j in i + 1..3 {
                let a = g.id_of(&NodeLabel::color(SetTag::A, i)).unwrap();
                let b = g.id_of(&NodeLabel::color(SetTag::A, j)).unwrap();
                assert!(g.has_edge(a, b));
            }
        }
        inst.check_lower_bound_property().unwrap();
    }

    #[test]
    fn coloring_c3_equals_coloring3() {
        let x = vec![true, false, true, true];
        let y = vec![false, true, true, false];
        let a = build_coloring3(2, &x, &y).unwrap();
        let b = build_coloring_c(2, 3, &x, &y).unwrap();
        assert_eq!(a.pg, b.pg);
        assert_eq!(a.slots, b.slots);
    }

    #[test]
    fn coloring_c_cut_growth() {
        let inst = build_coloring_c(2, 5, &zeros(4), &zeros(4)).unwrap();
        assert_eq!(inst.pg.cut().len(), 4 + 6 + 3 * 2);
        inst.check_lower_bound_property().unwrap();
    }

    #[test]
    fn gap_single_copy_equals_coloring3() {
        let x = vec![true, true, false, false];
        let y = vec![false, true, false, true];
        let a = build_coloring3(2, &x, &y).unwrap();
        let b = build_coloring_gap(2, 1, &x, &y).unwrap();
        assert_eq!(a.pg, b.pg);
    }

    #[test]
    fn gap_two_copies() {
        let x = vec![true, false, false, true];
        let inst = build_coloring_gap(2, 2, &x, &x).unwrap();
        assert_eq!(inst.graph().node_count(), 76);
        assert_eq!(inst.pg.cut().len(), 20);
        assert_eq!(inst.input_edges(Side::Alice).len(), 4);
        inst.check_lower_bound_property().unwrap();
    }
}
