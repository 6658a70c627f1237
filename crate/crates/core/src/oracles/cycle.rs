use crate::graph::{Graph, NodeId};

const LEN: usize = 8;

/// Independent check that `cycle` is a simple 8-cycle of total weight `w`.
pub fn is_cycle8_of_weight(g: &Graph, cycle: &[NodeId], w: u64) -> bool {
    if cycle.len() != LEN {
        return false;
    }
    let mut seen = cycle.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != LEN {
        return false;
    }
    let mut total = 0u64;
    for i in 0..LEN {
        match g.edge_between(cycle[i], cycle[(i + 1) % LEN]) {
            Some(e) => total += e.length(),
            None => return false,
        }
    }
    total == w
}

struct Enum<'a> {
    g: &'a Graph,
    target: u64,
    path: Vec<NodeId>,
    on_path: Vec<bool>,
    found: Vec<Vec<NodeId>>,
    limit: usize,
}

impl Enum<'_> {
    fn extend(&mut self, weight: u64) {
        if self.found.len() >= self.limit {
            return;
        }
        let start = self.path[0];
        let last = *self.path.last().expect("nonempty path");
        if self.path.len() == LEN {
            // Count each cycle once: smallest node first, then the smaller neighbour second.
            if self.path[1] < self.path[LEN - 1] {
                if let Some(e) = self.g.edge_between(last, start) {
                    if weight + e.length() == self.target {
                        self.found.push(self.path.clone());
                    }
                }
            }
            return;
        }
        for &(v, w) in self.g.neighbors(last) {
            if v <= start || self.on_path[v.0] || weight + w > self.target {
                continue;
            }
            self.path.push(v);
            self.on_path[v.0] = true;
            self.extend(weight + w);
            self.on_path[v.0] = false;
            self.path.pop();
        }
    }
}

/// Every simple 8-cycle of total weight `w` (edge lengths as in the distance
/// oracle), each listed once starting from its smallest node, up to `limit` cycles.
pub fn cycles8_of_weight(g: &Graph, w: u64, limit: usize) -> Vec<Vec<NodeId>> {
    let mut e = Enum {
        g,
        target: w,
        path: Vec::with_capacity(LEN),
        on_path: vec![false; g.node_count()],
        found: Vec::new(),
        limit,
    };
    for s in g.ids() {
        e.path.push(s);
        e.on_path[s.0] = true;
        e.extend(0);
        e.on_path[s.0] = false;
        e.path.pop();
    }
    for c in &e.found {
        assert!(is_cycle8_of_weight(g, c, w), "cycle witness failed verification");
    }
    e.found
}

/// One simple 8-cycle of weight `w`, if any exists.
pub fn cycle8_of_weight(g: &Graph, w: u64) -> Option<Vec<NodeId>> {
    cycles8_of_weight(g, w, 1).into_iter().next()
}
