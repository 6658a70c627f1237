use varisat::{ExtendFormula, Lit, Solver};

use super::cover::max_clique;
use super::OracleError;
use crate::graph::{Graph, NodeId};

pub const COLORING_NODE_LIMIT: usize = 128;
pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Whether `χ <= c` for the requested `c`.
    pub colorable: bool,
    pub chromatic: usize,
    /// A proper coloring with `chromatic` colors, indexed by node id.
    pub witness: Vec<usize>,
}

pub fn is_proper(g: &Graph, colors: &[usize], palette: usize) -> bool {
    colors.len() == g.node_count()
        && colors.iter().all(|&c| c < palette)
        && g.id_edges().iter().all(|e| colors[e.u.0] != colors[e.v.0])
}

fn guard(g: &Graph) -> Result<(), OracleError> {
    if g.node_count() > COLORING_NODE_LIMIT {
        return Err(OracleError::Guard {
            what: "coloring",
            nodes: g.node_count(),
            limit: COLORING_NODE_LIMIT,
        });
    }
    Ok(())
}

/// Decides `palette`-colorability with a CDCL solver. Variable `(v, c)` means
/// node `v` takes color `c`; the clique is pinned to colors `0..clique.len()`,
/// which every coloring can be permuted into.
fn search(g: &Graph, palette: usize, clique: &[NodeId]) -> Option<Vec<usize>> {
    let n = g.node_count();
    if n == 0 {
        return Some(Vec::new());
    }
    if palette == 0 || clique.len() > palette {
        return None;
    }
    let mut solver = Solver::new();
    let var: Vec<Vec<Lit>> = (0..n)
        .map(|_| (0..palette).map(|_| solver.new_lit()).collect())
        .collect();
    for row in &var {
        solver.add_clause(row);
    }
    for e in g.id_edges() {
        for (&a, &b) in var[e.u.0].iter().zip(&var[e.v.0]) {
            solver.add_clause(&[!a, !b]);
        }
    }
    for (c, v) in clique.iter().enumerate() {
        solver.add_clause(&[var[v.0][c]]);
    }
    if !solver.solve().expect("solver runs without proof output") {
        return None;
    }
    let model = solver.model().expect("satisfiable formula has a model");
    let truth: std::collections::HashSet<Lit> = model.into_iter().collect();
    let colors: Vec<usize> = var
        .iter()
        .map(|row| {
            row.iter()
                .position(|l| truth.contains(l))
                .expect("every node has a color")
        })
        .collect();
    assert!(is_proper(g, &colors, palette), "coloring witness failed verification");
    Some(colors)
}

/// A proper coloring with at most `c` colors, if one exists.
pub fn color_with(g: &Graph, c: usize) -> Result<Option<Vec<usize>>, OracleError> {
    guard(g)?;
    if c > MAX_COLORS {
        return Err(OracleError::TooManyColors(c));
    }
    let clique = max_clique(g)?;
    Ok(search(g, c, &clique))
}

/// Exact chromatic number, searched upward from the maximum clique size.
pub fn chromatic(g: &Graph, c: usize) -> Result<Coloring, OracleError> {
    guard(g)?;
    if g.node_count() == 0 {
        return Ok(Coloring {
            colorable: true,
            chromatic: 0,
            witness: Vec::new(),
        });
    }
    let clique = max_clique(g)?;
    for palette in clique.len()..=MAX_COLORS.min(g.node_count()) {
        if let Some(witness) = search(g, palette, &clique) {
            return Ok(Coloring {
                colorable: palette <= c,
                chromatic: palette,
                witness,
            });
        }
    }
    Err(OracleError::TooManyColors(g.node_count()))
}
