use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{GraphBuilder, NodeLabel, PartitionedGraph, SetTag, Side};

/// A random connected graph on `n >= 2` nodes with weights in `1..=w_max`,
/// split into a nonempty Alice side `a^i` and a nonempty Bob side `b^i`.
/// A random spanning tree is extended with each other pair independently
/// with probability `3/n`.
pub fn random_partitioned(rng: &mut impl Rng, n: usize, w_max: u64) -> PartitionedGraph {
    assert!(n >= 2 && w_max >= 1);
    let alice = rng.gen_range(1..n);
    let labels: Vec<NodeLabel> = (0..n)
        .map(|i| {
            if i < alice {
                NodeLabel::member(SetTag::A, i as u32)
            } else {
                NodeLabel::member(SetTag::B, (i - alice) as u32)
            }
        })
        .collect();
    let mut b = GraphBuilder::weighted(w_max);
    for &l in &labels {
        b.add_node(l);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        b.add_edge(labels[order[i]], labels[order[j]], Some(rng.gen_range(1..=w_max)))
            .expect("tree edges are new");
    }
    let p = (3.0 / n as f64).min(1.0);
    for u in 0..n {
        for v in u + 1..n {
            if !b.has_edge(labels[u], labels[v]) && rng.gen_bool(p) {
                b.add_edge(labels[u], labels[v], Some(rng.gen_range(1..=w_max)))
                    .expect("checked absent");
            }
        }
    }
    let g = b.build().expect("valid random graph");
    PartitionedGraph::new(g, |l| if l.set == SetTag::A { Side::Alice } else { Side::Bob })
        .expect("both sides nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_and_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..30 {
            let pg = random_partitioned(&mut rng, n, 9);
            assert!(pg.graph().is_connected().unwrap());
            assert_eq!(pg.graph().node_count(), n);
            assert!(pg.graph().id_edges().iter().all(|e| (1..=9).contains(&e.weight.unwrap())));
        }
    }
}
