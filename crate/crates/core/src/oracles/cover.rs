use super::OracleError;
use crate::graph::{Graph, NodeId};

/// Largest graph the vertex-cover search accepts.
pub const VC_NODE_LIMIT: usize = 60;
/// Largest graph the clique search (and hence the independent-set search) accepts.
pub const CLIQUE_NODE_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    pub minimum: usize,
    /// Whether a cover of size at most the requested budget exists.
    pub within_budget: bool,
    /// A minimum cover.
    pub witness: Vec<NodeId>,
}

fn guard(g: &Graph, what: &'static str, limit: usize) -> Result<(), OracleError> {
    if g.node_count() > limit {
        return Err(OracleError::Guard {
            what,
            nodes: g.node_count(),
            limit,
        });
    }
    Ok(())
}

fn ids(mask: u128) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(NodeId(v));
        m &= m - 1;
    }
    out
}

pub(crate) fn adjacency(g: &Graph) -> Vec<u128> {
    let mut adj = vec![0u128; g.node_count()];
    for e in g.id_edges() {
        adj[e.u.0] |= 1 << e.v.0;
        adj[e.v.0] |= 1 << e.u.0;
    }
    adj
}

pub fn is_vertex_cover(g: &Graph, cover: &[NodeId]) -> bool {
    let mut inside = vec![false; g.node_count()];
    for v in cover {
        inside[v.0] = true;
    }
    g.id_edges().iter().all(|e| inside[e.u.0] || inside[e.v.0])
}

pub fn is_independent_set(g: &Graph, set: &[NodeId]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

struct CoverSearch<'a> {
    adj: &'a [u128],
    best: usize,
    best_set: Option<u128>,
}

impl CoverSearch<'_> {
    /// Greedy clique partition of the live graph; each clique of size `s`
    /// contributes `s - 1` to any cover.
    fn clique_bound(&self, alive: u128) -> usize {
        let mut cliques: Vec<u128> = Vec::new();
        let mut m = alive;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            match cliques.iter_mut().find(|c| **c & !self.adj[v] == 0) {
                Some(c) => *c |= 1 << v,
                None => cliques.push(1 << v),
            }
        }
        alive.count_ones() as usize - cliques.len()
    }

    fn search(&mut self, mut alive: u128, mut cover: u128, mut size: usize) {
        loop {
            if size >= self.best {
                return;
            }
            let mut changed = false;
            let mut m = alive;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if alive >> v & 1 == 0 {
                    continue;
                }
                let nb = self.adj[v] & alive;
                let d = nb.count_ones() as usize;
                if d == 0 {
                    alive &= !(1 << v);
                    changed = true;
                } else if d == 1 {
                    cover |= nb;
                    size += 1;
                    alive &= !(nb | 1 << v);
                    changed = true;
                } else if size + d >= self.best {
                    // Leaving v out would force all d neighbours in.
                    cover |= 1 << v;
                    size += 1;
                    alive &= !(1 << v);
                    changed = true;
                }
                if size >= self.best {
                    return;
                }
            }
            if !changed {
                break;
            }
        }
        if alive == 0 {
            self.best = size;
            self.best_set = Some(cover);
            return;
        }
        if size + self.clique_bound(alive) >= self.best {
            return;
        }
        let mut pick = 0;
        let mut pick_deg = 0;
        let mut m = alive;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (self.adj[v] & alive).count_ones();
            if d > pick_deg {
                pick = v;
                pick_deg = d;
            }
        }
        let nb = self.adj[pick] & alive;
        self.search(alive & !(1 << pick), cover | 1 << pick, size + 1);
        self.search(alive & !(nb | 1 << pick), cover | nb, size + nb.count_ones() as usize);
    }
}

/// Smallest cover of size `< bound`, if any.
fn cover_below(g: &Graph, bound: usize) -> Option<Vec<NodeId>> {
    let adj = adjacency(g);
    let n = g.node_count();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut s = CoverSearch {
        adj: &adj,
        best: bound,
        best_set: None,
    };
    s.search(all, 0, 0);
    let witness = ids(s.best_set?);
    assert!(is_vertex_cover(g, &witness), "vertex cover witness failed verification");
    Some(witness)
}

/// Decides whether a cover of size at most `budget` exists and returns one.
pub fn vertex_cover_at_most(g: &Graph, budget: usize) -> Result<Option<Vec<NodeId>>, OracleError> {
    guard(g, "vertex cover", VC_NODE_LIMIT)?;
    Ok(cover_below(g, budget + 1))
}

/// Exact minimum vertex cover, plus whether it fits in `budget`.
pub fn min_vertex_cover(g: &Graph, budget: usize) -> Result<VertexCover, OracleError> {
    guard(g, "vertex cover", VC_NODE_LIMIT)?;
    let witness = cover_below(g, g.node_count() + 1).expect("all nodes form a cover");
    Ok(VertexCover {
        minimum: witness.len(),
        within_budget: witness.len() <= budget,
        witness,
    })
}

struct CliqueSearch<'a> {
    adj: &'a [u128],
    best: u128,
    best_size: u32,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: u128, rsize: u32, mut p: u128) {
        if p == 0 {
            if rsize > self.best_size {
                self.best_size = rsize;
                self.best = r;
            }
            return;
        }
        // Greedy colouring of the candidates bounds the clique size they can add.
        let mut order = Vec::with_capacity(p.count_ones() as usize);
        let mut uncolored = p;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut avail = uncolored;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v) & !self.adj[v];
                uncolored &= !(1 << v);
                order.push((v, color));
            }
        }
        for &(v, c) in order.iter().rev() {
            if rsize + c <= self.best_size {
                return;
            }
            self.expand(r | 1 << v, rsize + 1, p & self.adj[v]);
            p &= !(1 << v);
        }
    }
}

fn max_clique_rows(adj: &[u128]) -> u128 {
    let n = adj.len();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut s = CliqueSearch {
        adj,
        best: 0,
        best_size: 0,
    };
    s.expand(0, 0, all);
    s.best
}

pub fn max_clique(g: &Graph) -> Result<Vec<NodeId>, OracleError> {
    guard(g, "max clique", CLIQUE_NODE_LIMIT)?;
    let clique = ids(max_clique_rows(&adjacency(g)));
    for (i, &u) in clique.iter().enumerate() {
        assert!(
            clique[i + 1..].iter().all(|&v| g.has_edge(u, v)),
            "clique witness failed verification"
        );
    }
    Ok(clique)
}

/// Maximum independent set, found as a maximum clique of the complement.
pub fn max_independent_set(g: &Graph) -> Result<Vec<NodeId>, OracleError> {
    guard(g, "independent set", CLIQUE_NODE_LIMIT)?;
    let n = g.node_count();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let comp: Vec<u128> = adjacency(g)
        .iter()
        .enumerate()
        .map(|(v, row)| !row & all & !(1 << v))
        .collect();
    let set = ids(max_clique_rows(&comp));
    assert!(is_independent_set(g, &set), "independent set witness failed verification");
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphBuilder, NodeLabel, SetTag};
    use proptest::prelude::*;

    fn l(i: u32) -> NodeLabel {
        NodeLabel::member(SetTag::A, i)
    }

    fn graph(n: u32, edges: &[(u32, u32)]) -> Graph {
        let mut b = GraphBuilder::unweighted();
        for i in 0..n {
            b.add_node(l(i));
        }
        for &(u, v) in edges {
            b.link(l(u), l(v)).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn four_cycle() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let vc = min_vertex_cover(&g, 2).unwrap();
        assert_eq!(vc.minimum, 2);
        assert!(vc.within_budget);
        assert!(vertex_cover_at_most(&g, 1).unwrap().is_none());
        assert_eq!(max_independent_set(&g).unwrap().len(), 2);
    }

    #[test]
    fn petersen() {
        let outer: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<(u32, u32)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<(u32, u32)> = (0..5).map(|i| (i, i + 5)).collect();
        let g = graph(10, &[outer, inner, spokes].concat());
        assert_eq!(min_vertex_cover(&g, 0).unwrap().minimum, 6);
        assert_eq!(max_independent_set(&g).unwrap().len(), 4);
        assert_eq!(max_clique(&g).unwrap().len(), 2);
    }

    #[test]
    fn guard_trips() {
        let g = graph(61, &[]);
        assert!(matches!(min_vertex_cover(&g, 0), Err(OracleError::Guard { .. })));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1u32..28).prop_flat_map(|n| {
            let pairs: Vec<(u32, u32)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let m = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(proptest::bool::weighted(0.3), m))
                .prop_map(|(n, pairs, on)| {
                    let edges: Vec<(u32, u32)> =
                        pairs.into_iter().zip(on).filter(|(_, b)| *b).map(|(p, _)| p).collect();
                    graph(n, &edges)
                })
        })
    }

    /// Exhaustive reference over all subsets, for tiny graphs.
    fn brute_cover(g: &Graph) -> usize {
        let n = g.node_count();
        (0u32..1 << n)
            .filter(|&m| g.id_edges().iter().all(|e| m >> e.u.0 & 1 == 1 || m >> e.v.0 & 1 == 1))
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    proptest! {
        #[test]
        fn cover_and_independent_set_complement(g in arb_graph()) {
            let vc = min_vertex_cover(&g, 0).unwrap();
            let mis = max_independent_set(&g).unwrap();
            prop_assert_eq!(vc.minimum + mis.len(), g.node_count());
            prop_assert!(is_vertex_cover(&g, &vc.witness));
        }

        #[test]
        fn cover_matches_brute_force(g in arb_graph().prop_filter("small", |g| g.node_count() <= 14)) {
            prop_assert_eq!(min_vertex_cover(&g, 0).unwrap().minimum, brute_cover(&g));
        }
    }
}
