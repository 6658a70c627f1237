//! Exact reference algorithms for every predicate the families use.
//!
//! These are exponential-time where they have to be and guard their input
//! size instead of falling back to heuristics. Every witness (cover,
//! coloring, cycle) is checked independently before it is returned.

mod coloring;
mod cover;
mod cycle;
mod distance;

pub use coloring::{chromatic, color_with, is_proper, Coloring, COLORING_NODE_LIMIT, MAX_COLORS};
pub use cover::{
    is_independent_set, is_vertex_cover, max_clique, max_independent_set, min_vertex_cover,
    vertex_cover_at_most, VertexCover, CLIQUE_NODE_LIMIT, VC_NODE_LIMIT,
};
pub use cycle::{cycle8_of_weight, cycles8_of_weight, is_cycle8_of_weight};
pub use distance::{distance_summary, hop_diameter, single_source, DistanceSummary, UNREACHABLE};

use crate::families::{FamilyInstance, Predicate};
use crate::graph::{Graph, NodeLabel, Role, SetTag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} oracle is limited to {limit} nodes, graph has {nodes}")]
    Guard {
        what: &'static str,
        nodes: usize,
        limit: usize,
    },
    #[error("coloring oracle supports at most {MAX_COLORS} colors, asked for {0}")]
    TooManyColors(usize),
    #[error("inputs have different lengths ({left} and {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("not an identical-subgraphs instance: {0}")]
    Unbalanced(String),
}

/// Set-disjointness: true iff no index has `x[i] = y[i] = 1`.
pub fn disj(x: &[bool], y: &[bool]) -> Result<bool, OracleError> {
    same_len(x, y)?;
    Ok(!x.iter().zip(y).any(|(&a, &b)| a && b))
}

/// Equality: true iff `x = y`.
pub fn eq(x: &[bool], y: &[bool]) -> Result<bool, OracleError> {
    same_len(x, y)?;
    Ok(x == y)
}

fn same_len(x: &[bool], y: &[bool]) -> Result<(), OracleError> {
    if x.len() != y.len() {
        return Err(OracleError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// Whether the subgraphs on `{a^i}` and `{b^i}` agree on every pair: an edge
/// `(a^i, a^j)` exists iff `(b^i, b^j)` does, with equal weights.
pub fn subgraphs_identical(g: &Graph) -> Result<bool, OracleError> {
    let members = |set| -> Vec<NodeLabel> {
        g.labels()
            .iter()
            .copied()
            .filter(|l| l.role == Role::Set && l.set == set)
            .collect()
    };
    let (a, b) = (members(SetTag::A), members(SetTag::B));
    if a.is_empty() || a.len() != b.len() {
        return Err(OracleError::Unbalanced(format!(
            "{} nodes labelled a^i and {} labelled b^i",
            a.len(),
            b.len()
        )));
    }
    for (i, (la, lb)) in a.iter().zip(&b).enumerate() {
        if la.index != i as u32 || lb.index != i as u32 {
            return Err(OracleError::Unbalanced("member indices are not 0..k-1".into()));
        }
    }
    let id = |l: &NodeLabel| g.id_of(l).expect("label taken from the graph");
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let ea = g.edge_between(id(&a[i]), id(&a[j])).map(|e| e.weight);
            let eb = g.edge_between(id(&b[i]), id(&b[j])).map(|e| e.weight);
            if ea != eb {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evaluates the predicate of an instance on its graph. `None` means the
/// graph falls in the undefined band of a gap predicate.
pub fn evaluate(inst: &FamilyInstance) -> Result<Option<bool>, OracleError> {
    evaluate_on(&inst.predicate, inst.graph(), inst.x_weights().as_deref())
}

/// Predicate evaluation on an arbitrary graph; `star_weights` is needed only
/// for [`Predicate::StarDistancesMatchInput`].
pub fn evaluate_on(
    predicate: &Predicate,
    g: &Graph,
    star_weights: Option<&[u64]>,
) -> Result<Option<bool>, OracleError> {
    Ok(match *predicate {
        Predicate::DiameterAtLeast(t) => Some(distance_summary(g).diameter >= t),
        Predicate::DiameterGap { at_least, at_most } => {
            let d = distance_summary(g).diameter;
            if d >= at_least {
                Some(true)
            } else if d <= at_most {
                Some(false)
            } else {
                None
            }
        }
        Predicate::RadiusAtLeast(t) => Some(distance_summary(g).radius >= t),
        Predicate::VertexCoverAtMost(m) => Some(vertex_cover_at_most(g, m)?.is_some()),
        Predicate::ChromaticAtMost(c) => Some(color_with(g, c)?.is_some()),
        Predicate::ChromaticGap { at_most, at_least } => {
            if color_with(g, at_most)?.is_some() {
                Some(true)
            } else if color_with(g, at_least - 1)?.is_none() {
                Some(false)
            } else {
                None
            }
        }
        Predicate::Cycle8OfWeight(w) => Some(cycle8_of_weight(g, w).is_some()),
        Predicate::IdenticalSubgraphs => Some(subgraphs_identical(g)?),
        Predicate::StarDistancesMatchInput => {
            let weights = star_weights.unwrap_or(&[]);
            let b = g
                .id_of(&NodeLabel::center(SetTag::B))
                .ok_or_else(|| OracleError::Unbalanced("star has no node b".into()))?;
            let dist = single_source(g, b);
            Some(weights.iter().enumerate().all(|(i, &w)| {
                g.id_of(&NodeLabel::member(SetTag::A, i as u32))
                    .is_some_and(|a| dist[a.0] == w)
            }))
        }
    })
}
