use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::graph::{Graph, NodeId};

/// Distance-table entry for pairs with no connecting path.
pub const UNREACHABLE: u64 = u64::MAX;

/// All-pairs distances with eccentricities, diameter and radius. On a
/// disconnected graph the affected entries (and the diameter) are [`UNREACHABLE`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSummary {
    n: usize,
    dist: Vec<u64>,
    pub eccentricity: Vec<u64>,
    pub diameter: u64,
    pub radius: u64,
}

impl DistanceSummary {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: NodeId, v: NodeId) -> u64 {
        self.dist[u.0 * self.n + v.0]
    }

    pub fn row(&self, u: NodeId) -> &[u64] {
        &self.dist[u.0 * self.n..(u.0 + 1) * self.n]
    }
}

/// Hop distances on unweighted graphs, weighted distances otherwise.
pub fn single_source(g: &Graph, s: NodeId) -> Vec<u64> {
    if g.is_weighted() {
        dijkstra(g, s)
    } else {
        bfs(g, s)
    }
}

fn bfs(g: &Graph, s: NodeId) -> Vec<u64> {
    let mut dist = vec![UNREACHABLE; g.node_count()];
    let mut queue = VecDeque::new();
    dist[s.0] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if dist[v.0] == UNREACHABLE {
                dist[v.0] = dist[u.0] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn dijkstra(g: &Graph, s: NodeId) -> Vec<u64> {
    let mut dist = vec![UNREACHABLE; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[s.0] = 0;
    heap.push(Reverse((0u64, s.0)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.neighbors(NodeId(u)) {
            let nd = d + w;
            if nd < dist[v.0] {
                dist[v.0] = nd;
                heap.push(Reverse((nd, v.0)));
            }
        }
    }
    dist
}

/// Largest hop distance, ignoring weights; the `D` of round bounds.
pub fn hop_diameter(g: &Graph) -> u64 {
    g.ids()
        .map(|s| bfs(g, s).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

pub fn distance_summary(g: &Graph) -> DistanceSummary {
    let n = g.node_count();
    let mut dist = Vec::with_capacity(n * n);
    let mut eccentricity = Vec::with_capacity(n);
    for s in g.ids() {
        let row = single_source(g, s);
        eccentricity.push(row.iter().copied().max().unwrap_or(0));
        dist.extend(row);
    }
    DistanceSummary {
        n,
        diameter: eccentricity.iter().copied().max().unwrap_or(0),
        radius: eccentricity.iter().copied().min().unwrap_or(0),
        dist,
        eccentricity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitgadget::{build_gadget, GadgetParams};
    use crate::graph::{GraphBuilder, NodeLabel, SetTag};
    use proptest::prelude::*;

    fn l(i: u32) -> NodeLabel {
        NodeLabel::member(SetTag::A, i)
    }

    /// Independent reference: Floyd-Warshall over edge lengths.
    fn floyd_warshall(g: &Graph) -> Vec<u64> {
        let n = g.node_count();
        let mut d = vec![UNREACHABLE; n * n];
        for i in 0..n {
            d[i * n + i] = 0;
        }
        for e in g.id_edges() {
            let w = e.length();
            d[e.u.0 * n + e.v.0] = d[e.u.0 * n + e.v.0].min(w);
            d[e.v.0 * n + e.u.0] = d[e.v.0 * n + e.u.0].min(w);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (d[i * n + k], d[k * n + j]);
                    if a != UNREACHABLE && b != UNREACHABLE && a + b < d[i * n + j] {
                        d[i * n + j] = a + b;
                    }
                }
            }
        }
        d
    }

    #[test]
    fn path_of_three() {
        let mut b = GraphBuilder::unweighted();
        for i in 0..3 {
            b.add_node(l(i));
        }
        b.link(l(0), l(1)).unwrap();
        b.link(l(1), l(2)).unwrap();
        let s = distance_summary(&b.build().unwrap());
        assert_eq!((s.diameter, s.radius), (2, 1));
    }

    #[test]
    fn weighted_triangle_shortcut() {
        let mut b = GraphBuilder::weighted(10);
        for i in 0..3 {
            b.add_node(l(i));
        }
        b.add_edge(l(0), l(1), Some(1)).unwrap();
        b.add_edge(l(1), l(2), Some(2)).unwrap();
        b.add_edge(l(0), l(2), Some(4)).unwrap();
        let g = b.build().unwrap();
        let s = distance_summary(&g);
        assert_eq!(s.dist(NodeId(0), NodeId(2)), 3);
    }

    #[test]
    fn gadget_distances() {
        for k in [4usize, 8] {
            let pg = build_gadget(GadgetParams::new(k, 1).unwrap());
            let g = pg.graph();
            let s = distance_summary(g);
            for i in 0..k as u32 {
                for j in 0..k as u32 {
                    let a = g.id_of(&NodeLabel::member(SetTag::A, i)).unwrap();
                    let b = g.id_of(&NodeLabel::member(SetTag::B, j)).unwrap();
                    assert_eq!(s.dist(a, b), if i == j { 5 } else { 3 }, "k={k} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn gadget_k2_splits_in_two() {
        // With a single bit, a^i only reaches b^(1-i).
        let pg = build_gadget(GadgetParams::new(2, 1).unwrap());
        let g = pg.graph();
        let s = distance_summary(g);
        for i in 0..2u32 {
            let a = g.id_of(&NodeLabel::member(SetTag::A, i)).unwrap();
            let same = g.id_of(&NodeLabel::member(SetTag::B, i)).unwrap();
            let other = g.id_of(&NodeLabel::member(SetTag::B, 1 - i)).unwrap();
            assert_eq!(s.dist(a, same), UNREACHABLE);
            assert_eq!(s.dist(a, other), 3);
        }
        assert!(!g.is_connected().unwrap());
    }

    #[test]
    fn disconnected_uses_sentinel() {
        let mut b = GraphBuilder::unweighted();
        b.add_node(l(0)).add_node(l(1));
        let s = distance_summary(&b.build().unwrap());
        assert_eq!(s.dist(NodeId(0), NodeId(1)), UNREACHABLE);
        assert_eq!(s.diameter, UNREACHABLE);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..24, proptest::bool::ANY).prop_flat_map(|(n, weighted)| {
            let pairs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|i| (i + 1..n as u32).map(move |j| (i, j)))
                .collect();
            let m = pairs.len();
            (
                Just(n),
                Just(weighted),
                Just(pairs),
                proptest::collection::vec((proptest::bool::weighted(0.25), 0u64..20), m),
            )
                .prop_map(|(n, weighted, pairs, picks)| {
                    let mut b = if weighted {
                        GraphBuilder::weighted(20)
                    } else {
                        GraphBuilder::unweighted()
                    };
                    for i in 0..n as u32 {
                        b.add_node(l(i));
                    }
                    for ((i, j), (on, w)) in pairs.into_iter().zip(picks) {
                        if on {
                            b.add_edge(l(i), l(j), weighted.then_some(w)).unwrap();
                        }
                    }
                    b.build().unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn matches_floyd_warshall(g in arb_graph()) {
            let s = distance_summary(&g);
            let fw = floyd_warshall(&g);
            let n = g.node_count();
            for u in 0..n {
                prop_assert_eq!(s.row(NodeId(u)), &fw[u * n..(u + 1) * n]);
            }
            prop_assert_eq!(s.diameter, s.eccentricity.iter().copied().max().unwrap());
            prop_assert_eq!(s.radius, s.eccentricity.iter().copied().min().unwrap());
            for u in 0..n {
                for v in 0..n {
                    prop_assert_eq!(s.dist(NodeId(u), NodeId(v)), s.dist(NodeId(v), NodeId(u)));
                }
            }
        }
    }
}
