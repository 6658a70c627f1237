use std::collections::BTreeMap;
use std::collections::VecDeque;

use super::label::NodeLabel;
use super::GraphError;

/// Position of a node in the canonical (sorted-label) order of its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    /// The 1-based identifier a CONGEST node would be given.
    pub fn congest_id(self) -> usize {
        self.0 + 1
    }
}

/// An undirected edge in label space. `u < v` for edges coming out of a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: NodeLabel,
    pub v: NodeLabel,
    pub weight: Option<u64>,
}

/// Edge in id space; `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: Option<u64>,
}

impl IdEdge {
    /// Weight used by distance computations: hop count on unweighted graphs.
    pub fn length(&self) -> u64 {
        self.weight.unwrap_or(1)
    }

    pub fn other(&self, end: NodeId) -> NodeId {
        if end == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable undirected simple graph with optional nonnegative integer weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<NodeLabel>,
    edges: Vec<IdEdge>,
    adj: Vec<Vec<(NodeId, u64)>>,
    weighted: bool,
    w_max: u64,
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn w_max(&self) -> u64 {
        self.w_max
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn label(&self, id: NodeId) -> NodeLabel {
        self.labels[id.0]
    }

    pub fn id_of(&self, label: &NodeLabel) -> Option<NodeId> {
        self.labels.binary_search(label).ok().map(NodeId)
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.labels.len()).map(NodeId)
    }

    /// Edges in canonical order (by `(u, v)` ids).
    pub fn id_edges(&self) -> &[IdEdge] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|e| self.to_label_edge(e))
    }

    pub fn to_label_edge(&self, e: &IdEdge) -> Edge {
        Edge {
            u: self.labels[e.u.0],
            v: self.labels[e.v.0],
            weight: e.weight,
        }
    }

    /// Neighbors with edge lengths (1 on unweighted graphs), sorted by id.
    pub fn neighbors(&self, id: NodeId) -> &[(NodeId, u64)] {
        &self.adj[id.0]
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.adj[id.0].len()
    }

    pub fn edge_between(&self, a: NodeId, b: NodeId) -> Option<IdEdge> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(u, v)))
            .ok()
            .map(|i| self.edges[i])
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj[a.0].binary_search_by_key(&b, |&(n, _)| n).is_ok()
    }

    /// True iff the graph has exactly one connected component.
    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.labels.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = vec![false; self.labels.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adj[u] {
                if !seen[v.0] {
                    seen[v.0] = true;
                    reached += 1;
                    queue.push_back(v.0);
                }
            }
        }
        Ok(reached == self.labels.len())
    }

    /// Subgraph induced by `keep`, preserving weights, flag and `W_max`.
    pub fn induced(&self, keep: impl Fn(NodeId) -> bool) -> Graph {
        let mut b = GraphBuilder::new(self.weighted, self.w_max);
        for id in self.ids().filter(|&id| keep(id)) {
            b.add_node(self.label(id));
        }
        for e in self.edges.iter().filter(|e| keep(e.u) && keep(e.v)) {
            b.add_edge(self.labels[e.u.0], self.labels[e.v.0], e.weight)
                .expect("edges of a valid graph stay valid in an induced subgraph");
        }
        b.build().expect("induced subgraph of a valid graph")
    }
}

/// Collects nodes and edges, then canonicalizes them into a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    weighted: bool,
    w_max: u64,
    nodes: BTreeMap<NodeLabel, ()>,
    edges: BTreeMap<(NodeLabel, NodeLabel), Option<u64>>,
}

impl GraphBuilder {
    pub fn new(weighted: bool, w_max: u64) -> GraphBuilder {
        GraphBuilder {
            weighted,
            w_max,
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn unweighted() -> GraphBuilder {
        GraphBuilder::new(false, 0)
    }

    pub fn weighted(w_max: u64) -> GraphBuilder {
        GraphBuilder::new(true, w_max)
    }

    /// Adds a node; re-adding an existing label is a no-op.
    pub fn add_node(&mut self, label: NodeLabel) -> &mut Self {
        self.nodes.insert(label, ());
        self
    }

    pub fn contains(&self, label: &NodeLabel) -> bool {
        self.nodes.contains_key(label)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn add_edge(
        &mut self,
        a: NodeLabel,
        b: NodeLabel,
        weight: Option<u64>,
    ) -> Result<&mut Self, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        for l in [a, b] {
            if !self.nodes.contains_key(&l) {
                return Err(GraphError::UnknownNode(l));
            }
        }
        match (self.weighted, weight) {
            (true, None) => return Err(GraphError::MissingWeight(a, b)),
            (false, Some(_)) => return Err(GraphError::UnexpectedWeight(a, b)),
            (true, Some(w)) if w > self.w_max => {
                return Err(GraphError::WeightTooLarge {
                    u: a,
                    v: b,
                    weight: w,
                    w_max: self.w_max,
                })
            }
            _ => {}
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if self.edges.insert(key, weight).is_some() {
            return Err(GraphError::ParallelEdge(key.0, key.1));
        }
        Ok(self)
    }

    /// Unweighted convenience wrapper that also accepts the pair in any order.
    pub fn link(&mut self, a: NodeLabel, b: NodeLabel) -> Result<&mut Self, GraphError> {
        self.add_edge(a, b, None)
    }

    pub fn has_edge(&self, a: NodeLabel, b: NodeLabel) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.contains_key(&key)
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let labels: Vec<NodeLabel> = self.nodes.into_keys().collect();
        let id = |l: &NodeLabel| NodeId(labels.binary_search(l).expect("endpoint registered"));
        let mut adj = vec![Vec::new(); labels.len()];
        let mut edges = Vec::with_capacity(self.edges.len());
        for ((a, b), weight) in self.edges {
            let (u, v) = (id(&a), id(&b));
            let e = IdEdge { u, v, weight };
            adj[u.0].push((v, e.length()));
            adj[v.0].push((u, e.length()));
            edges.push(e);
        }
        // label order equals id order, so the BTreeMap order is already canonical
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            labels,
            edges,
            adj,
            weighted: self.weighted,
            w_max: self.w_max,
        })
    }
}

/// One of the two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Alice,
    Bob,
}

impl Side {
    pub fn token(self) -> &'static str {
        match self {
            Side::Alice => "A",
            Side::Bob => "B",
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Alice => Side::Bob,
            Side::Bob => Side::Alice,
        }
    }
}

/// A graph together with an Alice/Bob assignment of its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    graph: Graph,
    sides: Vec<Side>,
    cut: Vec<IdEdge>,
}

impl PartitionedGraph {
    pub fn new(graph: Graph, side_of: impl Fn(&NodeLabel) -> Side) -> Result<Self, GraphError> {
        let sides = graph.labels().iter().map(side_of).collect();
        PartitionedGraph::from_sides(graph, sides)
    }

    pub fn from_sides(graph: Graph, sides: Vec<Side>) -> Result<Self, GraphError> {
        if sides.len() != graph.node_count() {
            return Err(GraphError::PartitionSize {
                nodes: graph.node_count(),
                sides: sides.len(),
            });
        }
        for side in [Side::Alice, Side::Bob] {
            if !sides.contains(&side) {
                return Err(GraphError::EmptySide(side));
            }
        }
        let cut = compute_cut(&graph, &sides);
        Ok(PartitionedGraph { graph, sides, cut })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn side(&self, id: NodeId) -> Side {
        self.sides[id.0]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn side_of_label(&self, label: &NodeLabel) -> Option<Side> {
        self.graph.id_of(label).map(|id| self.sides[id.0])
    }

    pub fn nodes_on(&self, side: Side) -> impl Iterator<Item = NodeId> + '_ {
        self.graph.ids().filter(move |&id| self.sides[id.0] == side)
    }

    /// Stored cut edges, in canonical order.
    pub fn cut(&self) -> &[IdEdge] {
        &self.cut
    }

    /// All edges crossing the side map, sorted canonically.
    pub fn cut_edges(&self) -> Vec<Edge> {
        self.cut.iter().map(|e| self.graph.to_label_edge(e)).collect()
    }

    /// Recomputes the cut from the side map (used to audit the stored list).
    pub fn recompute_cut(&self) -> Vec<IdEdge> {
        compute_cut(&self.graph, &self.sides)
    }

    /// Nodes touching the cut on `side` (`C_A` or `C_B`).
    pub fn cut_nodes(&self, side: Side) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self
            .cut
            .iter()
            .flat_map(|e| [e.u, e.v])
            .filter(|&id| self.sides[id.0] == side)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Subgraph induced by one side (`G_A` or `G_B`).
    pub fn side_graph(&self, side: Side) -> Graph {
        self.graph.induced(|id| self.sides[id.0] == side)
    }
}

/// Edges crossing an arbitrary side map, including degenerate one-sided maps.
pub fn crossing_edges(graph: &Graph, sides: &[Side]) -> Vec<Edge> {
    compute_cut(graph, sides)
        .iter()
        .map(|e| graph.to_label_edge(e))
        .collect()
}

fn compute_cut(graph: &Graph, sides: &[Side]) -> Vec<IdEdge> {
    graph
        .id_edges()
        .iter()
        .filter(|e| sides[e.u.0] != sides[e.v.0])
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SetTag;

    fn a(i: u32) -> NodeLabel {
        NodeLabel::member(SetTag::A, i)
    }

    fn b(i: u32) -> NodeLabel {
        NodeLabel::member(SetTag::B, i)
    }

    #[test]
    fn builder_rejects_self_loops_and_parallel_edges() {
        let mut g = GraphBuilder::unweighted();
        g.add_node(a(0)).add_node(a(1));
        assert!(matches!(g.link(a(0), a(0)), Err(GraphError::SelfLoop(_))));
        g.link(a(1), a(0)).unwrap();
        assert!(matches!(g.link(a(0), a(1)), Err(GraphError::ParallelEdge(..))));
        assert!(matches!(g.link(a(0), b(0)), Err(GraphError::UnknownNode(_))));
    }

    #[test]
    fn weights_are_checked_against_w_max() {
        let mut g = GraphBuilder::weighted(5);
        g.add_node(a(0)).add_node(a(1));
        assert!(matches!(
            g.add_edge(a(0), a(1), Some(6)),
            Err(GraphError::WeightTooLarge { .. })
        ));
        assert!(matches!(g.add_edge(a(0), a(1), None), Err(GraphError::MissingWeight(..))));
        g.add_edge(a(0), a(1), Some(0)).unwrap();
    }

    #[test]
    fn connectivity() {
        let mut g = GraphBuilder::unweighted();
        g.add_node(a(0));
        assert!(g.clone().build().unwrap().is_connected().unwrap());
        g.add_node(a(1));
        assert!(!g.clone().build().unwrap().is_connected().unwrap());
        g.link(a(0), a(1)).unwrap();
        assert!(g.build().unwrap().is_connected().unwrap());
        let empty = GraphBuilder::unweighted().build().unwrap();
        assert!(matches!(empty.is_connected(), Err(GraphError::Empty)));
    }

    #[test]
    fn cut_and_sides() {
        let mut g = GraphBuilder::unweighted();
        for l in [a(0), a(1), b(0), b(1)] {
            g.add_node(l);
        }
        g.link(a(0), a(1)).unwrap().link(a(1), b(0)).unwrap().link(b(0), b(1)).unwrap();
        let g = g.build().unwrap();
        let pg = PartitionedGraph::new(g.clone(), |l| {
            if l.set == SetTag::A {
                Side::Alice
            } else {
                Side::Bob
            }
        })
        .unwrap();
        assert_eq!(pg.cut_edges().len(), 1);
        assert_eq!(pg.cut(), pg.recompute_cut().as_slice());
        assert_eq!(pg.cut_nodes(Side::Alice), vec![g.id_of(&a(1)).unwrap()]);
        assert!(matches!(
            PartitionedGraph::new(g, |_| Side::Alice),
            Err(GraphError::EmptySide(Side::Bob))
        ));
    }
}
