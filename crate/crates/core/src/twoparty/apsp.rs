use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{BitLedger, CutView, TwoPartyError};
use crate::graph::{NodeId, PartitionedGraph, Side};
use crate::oracles::UNREACHABLE;
use crate::sim::{ceil_log2, push_bits, BitReader, Payload};

/// Distance tables of both players after the exchange.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApspOutcome {
    /// `(u, dist(u, ·))` for every Alice node `u`, rows indexed by node id.
    pub alice: Vec<(NodeId, Vec<u64>)>,
    /// The same for Bob's nodes.
    pub bob: Vec<(NodeId, Vec<u64>)>,
    pub ledger: BitLedger,
    /// Bits per transmitted distance.
    pub d_bits: usize,
    /// `|V(C)|`, the number of nodes touching the cut.
    pub cut_nodes: usize,
}

impl ApspOutcome {
    /// `|V(C)|·n·d_bits`.
    pub fn bound(&self) -> u64 {
        let n = self.alice.len() + self.bob.len();
        (self.cut_nodes * n * self.d_bits) as u64
    }
}

/// `⌈log₂(n·W_max + 1)⌉ + 1`: the value width plus an unreachable flag.
pub fn distance_bits(n: usize, w_max: u64) -> usize {
    ceil_log2(n * w_max.max(1) as usize + 1) + 1
}

/// Two-party weighted APSP. Each player sends, for every one of its cut
/// nodes `c` and every node `v` on its side, `dist_{G_side}(c, v)`. Alice
/// then runs Dijkstra on `G'_A = (V_A ∪ C_B, E_A ∪ C ∪ C_B×C_B)` with the
/// `C_B×C_B` pairs weighted by Bob's distances, and extends to `v ∈ V_B`
/// through `min_{x ∈ C_B} dist_{G'_A}(u, x) + dist_{G_B}(x, v)`. Bob does the
/// same with the roles swapped. The cut edges and their weights are shared
/// input and are not charged.
pub fn apsp_protocol(pg: &PartitionedGraph) -> Result<ApspOutcome, TwoPartyError> {
    let g = pg.graph();
    if !g.is_connected().unwrap_or(false) {
        return Err(TwoPartyError::Disconnected);
    }
    let w_max = g.id_edges().iter().map(|e| e.length()).max().unwrap_or(1);
    let d_bits = distance_bits(g.node_count(), w_max);
    let alice = CutView::of(pg, Side::Alice);
    let bob = CutView::of(pg, Side::Bob);
    let to_bob = side_message(&alice, d_bits);
    let to_alice = side_message(&bob, d_bits);
    let mut ledger = BitLedger::default();
    ledger.charge(to_bob.len() as u64, to_alice.len() as u64);
    Ok(ApspOutcome {
        alice: player_table(&alice, &to_alice, d_bits),
        bob: player_table(&bob, &to_bob, d_bits),
        ledger,
        d_bits,
        cut_nodes: alice.near.len() + bob.near.len(),
    })
}

fn dijkstra(adj: &[Vec<(usize, u64)>], src: usize) -> Vec<u64> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0;
    heap.push(Reverse((0u64, src)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

fn internal_adjacency(view: &CutView) -> Vec<Vec<(usize, u64)>> {
    let mut adj = vec![Vec::new(); view.n];
    for e in &view.internal {
        adj[e.u.0].push((e.v.0, e.length()));
        adj[e.v.0].push((e.u.0, e.length()));
    }
    adj
}

/// Distances inside this side from each of its cut nodes to each of its nodes.
fn side_message(view: &CutView, d_bits: usize) -> Payload {
    let adj = internal_adjacency(view);
    let width = (d_bits - 1) as u32;
    let mut msg = Payload::new();
    for &c in &view.near {
        let dist = dijkstra(&adj, c.0);
        for &v in &view.nodes {
            let d = dist[v.0];
            msg.push(d == UNREACHABLE);
            push_bits(&mut msg, if d == UNREACHABLE { 0 } else { d }, width);
        }
    }
    msg
}

fn decode_far(view: &CutView, msg: &Payload, d_bits: usize) -> Vec<Vec<u64>> {
    let far_nodes: Vec<NodeId> = (0..view.n)
        .map(NodeId)
        .filter(|v| view.nodes.binary_search(v).is_err())
        .collect();
    let mut r = BitReader::new(msg);
    let mut table = vec![vec![UNREACHABLE; view.n]; view.n];
    for &c in &view.far {
        for &v in &far_nodes {
            let unreachable = r.read_bool().expect("message length");
            let d = r.read((d_bits - 1) as u32).expect("message length");
            table[c.0][v.0] = if unreachable { UNREACHABLE } else { d };
        }
    }
    table
}

/// Distances in `G'_A` from `u`, for every node of `V'_A`.
fn augmented(view: &CutView, far: &[Vec<u64>]) -> Vec<Vec<(usize, u64)>> {
    let mut adj = internal_adjacency(view);
    for e in &view.cut {
        adj[e.u.0].push((e.v.0, e.length()));
        adj[e.v.0].push((e.u.0, e.length()));
    }
    for &x in &view.far {
        for &y in &view.far {
            if x != y && far[x.0][y.0] != UNREACHABLE {
                adj[x.0].push((y.0, far[x.0][y.0]));
            }
        }
    }
    adj
}

fn player_table(view: &CutView, msg: &Payload, d_bits: usize) -> Vec<(NodeId, Vec<u64>)> {
    let far = decode_far(view, msg, d_bits);
    let adj = augmented(view, &far);
    view.nodes
        .iter()
        .map(|&u| {
            let local = dijkstra(&adj, u.0);
            let row = (0..view.n)
                .map(|v| {
                    if view.nodes.binary_search(&NodeId(v)).is_ok() {
                        return local[v];
                    }
                    view.far
                        .iter()
                        .filter(|x| local[x.0] != UNREACHABLE && far[x.0][v] != UNREACHABLE)
                        .map(|x| local[x.0] + far[x.0][v])
                        .min()
                        .unwrap_or(UNREACHABLE)
                })
                .collect();
            (u, row)
        })
        .collect()
}
