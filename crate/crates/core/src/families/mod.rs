//! Lower-bound graph families `G_{x,y}`.
//!
//! Every family is described by a [`FamilySpec`] (its name and parameters).
//! Building it with inputs `x`, `y` yields a [`FamilyInstance`]: the
//! partitioned graph, the predicate it is meant to decide, and the value the
//! two-party function takes on `(x, y)`. The predicate evaluated on the graph
//! should always equal that value; the verify module checks this with the
//! exact oracles.

mod distance;
pub mod input;
mod nphard;
mod weighted;

use std::fmt;
use std::str::FromStr;

use crate::bitgadget::{self, GadgetError};
use crate::graph::{
    Document, Edge, Graph, GraphBuilder, GraphError, NodeLabel, PartitionedGraph, Side,
};
use crate::oracles::disj;

pub use input::{bits_from_hex, bits_from_str, bits_to_hex, bits_to_string};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("{family}: {message}")]
    Param {
        family: &'static str,
        message: String,
    },
    #[error("{which} has {got} bits, expected {expected}")]
    Length {
        which: char,
        expected: usize,
        got: usize,
    },
    #[error("all-zero {0}: cycle8 needs at least one 1 per side to stay connected")]
    AllZero(char),
    #[error("{0} takes a single input x; y must be absent")]
    UnexpectedY(&'static str),
    #[error("{0} needs both x and y")]
    MissingY(&'static str),
    #[error("invalid hexadecimal input `{0}`")]
    Hex(String),
    #[error("hexadecimal input `{value}` does not fit in {len} bits")]
    HexTooWide { value: String, len: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("instance metadata: {0}")]
    Meta(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Diameter,
    ApproxDiameter,
    Radius,
    Mvc,
    Coloring3,
    ColoringC,
    ColoringGap,
    Cycle8,
    IdenticalSubgraphs,
    ApspStar,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Diameter,
        Family::ApproxDiameter,
        Family::Radius,
        Family::Mvc,
        Family::Coloring3,
        Family::ColoringC,
        Family::ColoringGap,
        Family::Cycle8,
        Family::IdenticalSubgraphs,
        Family::ApspStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Diameter => "diameter",
            Family::ApproxDiameter => "approx-diameter",
            Family::Radius => "radius",
            Family::Mvc => "mvc",
            Family::Coloring3 => "coloring3",
            Family::ColoringC => "coloring-c",
            Family::ColoringGap => "coloring-gap",
            Family::Cycle8 => "cycle8",
            Family::IdenticalSubgraphs => "identical",
            Family::ApspStar => "apsp-star",
        }
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Family, FamilyError> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_owned()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Diameter { k: usize },
    ApproxDiameter { k: usize, q: usize },
    Radius { k: usize },
    Mvc { k: usize },
    Coloring3 { k: usize },
    ColoringC { k: usize, c: usize },
    ColoringGap { k: usize, c: usize },
    Cycle8 { k: usize },
    /// Weights are `weight_bits`-bit numbers, so `W_max = 2^weight_bits - 1`.
    IdenticalSubgraphs {
        k: usize,
        weight_bits: u32,
        hourglass: bool,
    },
    ApspStar { n: usize, weight_bits: u32 },
}

/// The property of `G_{x,y}` that mirrors the two-party function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    DiameterAtLeast(u64),
    /// True when the diameter is at least `at_least`, false when it is at
    /// most `at_most`, undefined in between.
    DiameterGap { at_least: u64, at_most: u64 },
    RadiusAtLeast(u64),
    VertexCoverAtMost(usize),
    ChromaticAtMost(usize),
    /// True when `χ <= at_most`, false when `χ >= at_least`, undefined in between.
    ChromaticGap { at_most: usize, at_least: usize },
    Cycle8OfWeight(u64),
    IdenticalSubgraphs,
    /// `dist(b, a_i) = x[i]` for every leaf `a_i` of the weighted star.
    StarDistancesMatchInput,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::DiameterAtLeast(t) => write!(f, "diameter >= {t}"),
            Predicate::DiameterGap { at_least, at_most } => {
                write!(f, "diameter >= {at_least} | diameter <= {at_most}")
            }
            Predicate::RadiusAtLeast(t) => write!(f, "radius >= {t}"),
            Predicate::VertexCoverAtMost(m) => write!(f, "min_vertex_cover <= {m}"),
            Predicate::ChromaticAtMost(c) => write!(f, "chromatic <= {c}"),
            Predicate::ChromaticGap { at_most, at_least } => {
                write!(f, "chromatic <= {at_most} | chromatic >= {at_least}")
            }
            Predicate::Cycle8OfWeight(w) => write!(f, "cycle8_weight == {w}"),
            Predicate::IdenticalSubgraphs => f.write_str("identical_subgraphs"),
            Predicate::StarDistancesMatchInput => f.write_str("star_distances == x"),
        }
    }
}

impl FromStr for Predicate {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Predicate, FamilyError> {
        let bad = || FamilyError::Meta(format!("unrecognized predicate `{s}`"));
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        Ok(match tokens.as_slice() {
            ["diameter", ">=", t] => Predicate::DiameterAtLeast(num(t)?),
            ["diameter", ">=", a, "|", "diameter", "<=", b] => Predicate::DiameterGap {
                at_least: num(a)?,
                at_most: num(b)?,
            },
            ["radius", ">=", t] => Predicate::RadiusAtLeast(num(t)?),
            ["min_vertex_cover", "<=", m] => Predicate::VertexCoverAtMost(num(m)? as usize),
            ["chromatic", "<=", c] => Predicate::ChromaticAtMost(num(c)? as usize),
            ["chromatic", "<=", a, "|", "chromatic", ">=", b] => Predicate::ChromaticGap {
                at_most: num(a)? as usize,
                at_least: num(b)? as usize,
            },
            ["cycle8_weight", "==", w] => Predicate::Cycle8OfWeight(num(w)?),
            ["identical_subgraphs"] => Predicate::IdenticalSubgraphs,
            ["star_distances", "==", "x"] => Predicate::StarDistancesMatchInput,
            _ => return Err(bad()),
        })
    }
}

/// A potential edge whose presence or weight is controlled by one player's input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputSlot {
    pub u: NodeLabel,
    pub v: NodeLabel,
    pub owner: Side,
}

/// A generated member `G_{x,y}` of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub pg: PartitionedGraph,
    pub x: Vec<bool>,
    /// Absent for the single-input APSP star.
    pub y: Option<Vec<bool>>,
    pub predicate: Predicate,
    /// The two-party function value; the predicate on `pg` should equal it.
    pub expected: bool,
    /// All input-controlled edge slots, independent of the actual input.
    pub slots: Vec<InputSlot>,
}

/// Builder state shared by the family constructors.
pub(crate) struct Draft {
    pub b: GraphBuilder,
    pub slots: Vec<InputSlot>,
}

impl Draft {
    pub fn new(b: GraphBuilder) -> Draft {
        Draft {
            b,
            slots: Vec::new(),
        }
    }

    pub fn node(&mut self, l: NodeLabel) {
        self.b.add_node(l);
    }

    pub fn edge(&mut self, u: NodeLabel, v: NodeLabel) {
        self.b.add_edge(u, v, None).expect("fixed edge is well-formed");
    }

    pub fn weighted_edge(&mut self, u: NodeLabel, v: NodeLabel, w: u64) {
        self.b.add_edge(u, v, Some(w)).expect("fixed edge is well-formed");
    }

    /// Registers an input slot and adds the edge when `present`.
    pub fn slot(&mut self, owner: Side, u: NodeLabel, v: NodeLabel, present: bool, w: Option<u64>) {
        self.slots.push(InputSlot { u, v, owner });
        if present {
            self.b.add_edge(u, v, w).expect("input edge is well-formed");
        }
    }

    pub fn finish(self) -> (Graph, Vec<InputSlot>) {
        let g = self.b.build().expect("family construction is well-formed");
        let mut slots = self.slots;
        slots.sort();
        (g, slots)
    }
}

fn param(family: Family, message: impl Into<String>) -> FamilyError {
    FamilyError::Param {
        family: family.name(),
        message: message.into(),
    }
}

fn log2(k: usize) -> usize {
    k.trailing_zeros() as usize
}

/// Flat position of pair `(i, j)` in a `k·k` input.
pub fn pair_index(i: usize, j: usize, k: usize) -> usize {
    i * k + j
}

/// Pairs `i < j` in lexicographic order; entry `e` of a weight vector belongs to `pairs[e]`.
pub fn upper_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect()
}

impl FamilySpec {
    pub fn family(&self) -> Family {
        match self {
            FamilySpec::Diameter { .. } => Family::Diameter,
            FamilySpec::ApproxDiameter { .. } => Family::ApproxDiameter,
            FamilySpec::Radius { .. } => Family::Radius,
            FamilySpec::Mvc { .. } => Family::Mvc,
            FamilySpec::Coloring3 { .. } => Family::Coloring3,
            FamilySpec::ColoringC { .. } => Family::ColoringC,
            FamilySpec::ColoringGap { .. } => Family::ColoringGap,
            FamilySpec::Cycle8 { .. } => Family::Cycle8,
            FamilySpec::IdenticalSubgraphs { .. } => Family::IdenticalSubgraphs,
            FamilySpec::ApspStar { .. } => Family::ApspStar,
        }
    }

    /// The size parameter `k` (or `n` for the APSP star).
    pub fn k(&self) -> usize {
        match *self {
            FamilySpec::Diameter { k }
            | FamilySpec::ApproxDiameter { k, .. }
            | FamilySpec::Radius { k }
            | FamilySpec::Mvc { k }
            | FamilySpec::Coloring3 { k }
            | FamilySpec::ColoringC { k, .. }
            | FamilySpec::ColoringGap { k, .. }
            | FamilySpec::Cycle8 { k }
            | FamilySpec::IdenticalSubgraphs { k, .. } => k,
            FamilySpec::ApspStar { n, .. } => n,
        }
    }

    pub fn has_y(&self) -> bool {
        !matches!(self, FamilySpec::ApspStar { .. })
    }

    /// Input length `K` per player.
    pub fn input_len(&self) -> usize {
        match *self {
            FamilySpec::Diameter { k }
            | FamilySpec::ApproxDiameter { k, .. }
            | FamilySpec::Radius { k } => k,
            FamilySpec::Mvc { k }
            | FamilySpec::Coloring3 { k }
            | FamilySpec::ColoringC { k, .. }
            | FamilySpec::ColoringGap { k, .. }
            | FamilySpec::Cycle8 { k } => k * k,
            FamilySpec::IdenticalSubgraphs { k, weight_bits, .. } => {
                k * (k - 1) / 2 * weight_bits as usize
            }
            FamilySpec::ApspStar { n, weight_bits } => (n - 2) * weight_bits as usize,
        }
    }

    /// The vertex cover budget `M = 4(k-1) + 4 log k` of the vertex-cover family.
    pub fn mvc_budget(k: usize) -> usize {
        4 * (k - 1) + 4 * log2(k)
    }

    /// The cycle weight `W = 2k^3` of the 8-cycle family.
    pub fn cycle8_target(k: usize) -> u64 {
        2 * (k as u64).pow(3)
    }

    pub fn predicate(&self) -> Predicate {
        match *self {
            FamilySpec::Diameter { .. } => Predicate::DiameterAtLeast(5),
            FamilySpec::ApproxDiameter { q, .. } => Predicate::DiameterGap {
                at_least: 6 * q as u64 + 1,
                at_most: 4 * q as u64 + 2,
            },
            FamilySpec::Radius { .. } => Predicate::RadiusAtLeast(4),
            FamilySpec::Mvc { k } => Predicate::VertexCoverAtMost(FamilySpec::mvc_budget(k)),
            FamilySpec::Coloring3 { .. } => Predicate::ChromaticAtMost(3),
            FamilySpec::ColoringC { c, .. } => Predicate::ChromaticAtMost(c),
            FamilySpec::ColoringGap { c, .. } => Predicate::ChromaticGap {
                at_most: 3 * c,
                at_least: 4 * c,
            },
            FamilySpec::Cycle8 { k } => Predicate::Cycle8OfWeight(FamilySpec::cycle8_target(k)),
            FamilySpec::IdenticalSubgraphs { .. } => Predicate::IdenticalSubgraphs,
            FamilySpec::ApspStar { .. } => Predicate::StarDistancesMatchInput,
        }
    }

    /// Closed-form cut size of every instance of the family.
    pub fn cut_size(&self) -> usize {
        match *self {
            FamilySpec::Diameter { k }
            | FamilySpec::ApproxDiameter { k, .. }
            | FamilySpec::Radius { k } => 2 * log2(k) + 1,
            FamilySpec::Mvc { k } => 4 * log2(k),
            FamilySpec::Coloring3 { k } => 4 * log2(k) + 6,
            FamilySpec::ColoringC { k, c } => 4 * log2(k) + 6 + 3 * (c - 3),
            FamilySpec::ColoringGap { k, c } => c * (4 * log2(k) + 6),
            FamilySpec::Cycle8 { .. } => 2,
            FamilySpec::IdenticalSubgraphs { .. } | FamilySpec::ApspStar { .. } => 1,
        }
    }

    /// Largest edge weight the family can produce (0 for unweighted families).
    pub fn w_max(&self) -> u64 {
        match *self {
            FamilySpec::Cycle8 { k } => {
                let k = k as u64;
                k * k * k + k * k
            }
            FamilySpec::IdenticalSubgraphs { weight_bits, .. }
            | FamilySpec::ApspStar { weight_bits, .. } => (1u64 << weight_bits) - 1,
            _ => 0,
        }
    }

    /// Checks the parameters alone.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let fam = self.family();
        match *self {
            FamilySpec::Diameter { k }
            | FamilySpec::Radius { k }
            | FamilySpec::Mvc { k }
            | FamilySpec::Coloring3 { k } => gadget_k(k),
            FamilySpec::ApproxDiameter { k, q } => {
                gadget_k(k)?;
                if q == 0 {
                    return Err(param(fam, "q must be at least 1"));
                }
                Ok(())
            }
            FamilySpec::ColoringC { k, c } => {
                gadget_k(k)?;
                let n = nphard::coloring3_node_count(k) + 2 * c.saturating_sub(3);
                if c < 3 || c >= n {
                    return Err(param(fam, format!("c must satisfy 3 <= c < n, got c = {c}")));
                }
                Ok(())
            }
            FamilySpec::ColoringGap { k, c } => {
                gadget_k(k)?;
                if c == 0 || c > u16::MAX as usize {
                    return Err(param(fam, format!("c must be at least 1, got {c}")));
                }
                Ok(())
            }
            FamilySpec::Cycle8 { k } => {
                if !(3..=1 << 16).contains(&k) {
                    return Err(param(fam, format!("k must satisfy k >= 3, got {k}")));
                }
                Ok(())
            }
            FamilySpec::IdenticalSubgraphs { k, weight_bits, .. } => {
                if !(2..=1 << 16).contains(&k) {
                    return Err(param(fam, format!("k must satisfy k >= 2, got {k}")));
                }
                weight_width(fam, weight_bits)
            }
            FamilySpec::ApspStar { n, weight_bits } => {
                if !(3..=1 << 24).contains(&n) {
                    return Err(param(fam, format!("n must satisfy n >= 3, got {n}")));
                }
                weight_width(fam, weight_bits)
            }
        }
    }

    /// Accepts exactly the declared input domain of the family.
    pub fn validate_inputs(&self, x: &[bool], y: Option<&[bool]>) -> Result<(), FamilyError> {
        self.validate()?;
        let len = self.input_len();
        if x.len() != len {
            return Err(FamilyError::Length {
                which: 'x',
                expected: len,
                got: x.len(),
            });
        }
        match (self.has_y(), y) {
            (true, None) => return Err(FamilyError::MissingY(self.family().name())),
            (false, Some(_)) => return Err(FamilyError::UnexpectedY(self.family().name())),
            (true, Some(y)) if y.len() != len => {
                return Err(FamilyError::Length {
                    which: 'y',
                    expected: len,
                    got: y.len(),
                })
            }
            _ => {}
        }
        if let FamilySpec::Cycle8 { .. } = self {
            if !x.iter().any(|&b| b) {
                return Err(FamilyError::AllZero('x'));
            }
            if !y.expect("checked above").iter().any(|&b| b) {
                return Err(FamilyError::AllZero('y'));
            }
        }
        Ok(())
    }

    /// The two-party function value `f(x, y)` the predicate mirrors.
    pub fn expected(&self, x: &[bool], y: Option<&[bool]>) -> bool {
        match *self {
            FamilySpec::Radius { .. } => disj(x, y.expect("y")).expect("equal lengths"),
            FamilySpec::IdenticalSubgraphs {
                k,
                weight_bits,
                hourglass,
            } => {
                let xs = weighted::identical_weights(x, k, weight_bits, hourglass);
                let ys = weighted::identical_weights(y.expect("y"), k, weight_bits, hourglass);
                xs == ys
            }
            FamilySpec::ApspStar { .. } => true,
            _ => !disj(x, y.expect("y")).expect("equal lengths"),
        }
    }

    /// Builds `G_{x,y}` after validating the inputs.
    pub fn build(&self, x: &[bool], y: Option<&[bool]>) -> Result<FamilyInstance, FamilyError> {
        self.validate_inputs(x, y)?;
        let (graph, slots) = self.construct(x, y);
        let pg = PartitionedGraph::new(graph, bitgadget::side_of)?;
        Ok(FamilyInstance {
            spec: *self,
            pg,
            x: x.to_vec(),
            y: y.map(<[bool]>::to_vec),
            predicate: self.predicate(),
            expected: self.expected(x, y),
            slots,
        })
    }

    /// Builds the graph for inputs that are only length-checked. Used when a
    /// player substitutes a placeholder for the input it cannot see.
    pub(crate) fn construct(&self, x: &[bool], y: Option<&[bool]>) -> (Graph, Vec<InputSlot>) {
        let zeros;
        let y = match y {
            Some(y) => y,
            None => {
                zeros = vec![false; x.len()];
                &zeros
            }
        };
        match *self {
            FamilySpec::Diameter { k } => distance::diameter(k, x, y),
            FamilySpec::ApproxDiameter { k, q } => distance::approx_diameter(k, q, x, y),
            FamilySpec::Radius { k } => distance::radius(k, x, y),
            FamilySpec::Mvc { k } => nphard::mvc(k, x, y),
            FamilySpec::Coloring3 { k } => nphard::coloring3(k, x, y),
            FamilySpec::ColoringC { k, c } => nphard::coloring_c(k, c, x, y),
            FamilySpec::ColoringGap { k, c } => nphard::coloring_gap(k, c, x, y),
            FamilySpec::Cycle8 { k } => weighted::cycle8(k, x, y),
            FamilySpec::IdenticalSubgraphs {
                k,
                weight_bits,
                hourglass,
            } => weighted::identical(k, weight_bits, hourglass, x, y),
            FamilySpec::ApspStar { n, weight_bits } => weighted::apsp_star(n, weight_bits, x),
        }
    }

    /// Parameter string such as `k=4 q=2`.
    pub fn params_string(&self) -> String {
        match *self {
            FamilySpec::Diameter { k }
            | FamilySpec::Radius { k }
            | FamilySpec::Mvc { k }
            | FamilySpec::Coloring3 { k }
            | FamilySpec::Cycle8 { k } => format!("k={k}"),
            FamilySpec::ApproxDiameter { k, q } => format!("k={k} q={q}"),
            FamilySpec::ColoringC { k, c } | FamilySpec::ColoringGap { k, c } => {
                format!("k={k} c={c}")
            }
            FamilySpec::IdenticalSubgraphs {
                k,
                weight_bits,
                hourglass,
            } => format!("k={k} weight_bits={weight_bits} hourglass={}", hourglass as u8),
            FamilySpec::ApspStar { n, weight_bits } => format!("n={n} weight_bits={weight_bits}"),
        }
    }

    /// Parses a family name and a `key=value` list (space or comma separated).
    /// Missing `q`, `c`, `weight_bits` and `hourglass` default to 2, 3, 4 and off.
    pub fn parse(family: &str, params: &str) -> Result<FamilySpec, FamilyError> {
        let fam: Family = family.parse()?;
        let mut k = None;
        let mut n = None;
        let mut q = 2usize;
        let mut c = None;
        let mut weight_bits = 4u32;
        let mut hourglass = false;
        for item in params.split([' ', ',']).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| param(fam, format!("expected key=value, got `{item}`")))?;
            let num = || {
                value
                    .parse::<usize>()
                    .map_err(|_| param(fam, format!("`{key}` needs an integer, got `{value}`")))
            };
            match key {
                "k" => k = Some(num()?),
                "n" => n = Some(num()?),
                "q" => q = num()?,
                "c" => c = Some(num()?),
                "weight_bits" => {
                    weight_bits = u32::try_from(num()?).map_err(|_| param(fam, "weight_bits too large"))?
                }
                "hourglass" => hourglass = num()? != 0,
                _ => return Err(param(fam, format!("unknown parameter `{key}`"))),
            }
        }
        let need_k = || k.ok_or_else(|| param(fam, "missing parameter k"));
        let spec = match fam {
            Family::Diameter => FamilySpec::Diameter { k: need_k()? },
            Family::ApproxDiameter => FamilySpec::ApproxDiameter { k: need_k()?, q },
            Family::Radius => FamilySpec::Radius { k: need_k()? },
            Family::Mvc => FamilySpec::Mvc { k: need_k()? },
            Family::Coloring3 => FamilySpec::Coloring3 { k: need_k()? },
            Family::ColoringC => FamilySpec::ColoringC {
                k: need_k()?,
                c: c.unwrap_or(3),
            },
            Family::ColoringGap => FamilySpec::ColoringGap {
                k: need_k()?,
                c: c.unwrap_or(1),
            },
            Family::Cycle8 => FamilySpec::Cycle8 { k: need_k()? },
            Family::IdenticalSubgraphs => FamilySpec::IdenticalSubgraphs {
                k: need_k()?,
                weight_bits,
                hourglass,
            },
            Family::ApspStar => FamilySpec::ApspStar {
                n: n.or(k).ok_or_else(|| param(fam, "missing parameter n"))?,
                weight_bits,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn gadget_k(k: usize) -> Result<(), FamilyError> {
    bitgadget::check_k(k)?;
    if k > 1 << 16 {
        return Err(FamilyError::Gadget(GadgetError::BadK(k)));
    }
    Ok(())
}

fn weight_width(fam: Family, weight_bits: u32) -> Result<(), FamilyError> {
    if !(1..=62).contains(&weight_bits) {
        return Err(param(
            fam,
            format!("weight_bits must be in 1..=62, got {weight_bits}"),
        ));
    }
    Ok(())
}

/// Checks the domain of `(x, y)` for a family; the diagnostic names the violated constraint.
pub fn validate_inputs(spec: &FamilySpec, x: &[bool], y: Option<&[bool]>) -> Result<(), FamilyError> {
    spec.validate_inputs(x, y)
}

pub fn build_diameter(k: usize, x: &[bool], y: &[bool]) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::Diameter { k }.build(x, Some(y))
}

pub fn build_approx_diameter(
    k: usize,
    q: usize,
    x: &[bool],
    y: &[bool],
) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::ApproxDiameter { k, q }.build(x, Some(y))
}

pub fn build_radius(k: usize, x: &[bool], y: &[bool]) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::Radius { k }.build(x, Some(y))
}

pub fn build_mvc(k: usize, x: &[bool], y: &[bool]) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::Mvc { k }.build(x, Some(y))
}

pub fn build_coloring3(k: usize, x: &[bool], y: &[bool]) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::Coloring3 { k }.build(x, Some(y))
}

pub fn build_coloring_c(
    k: usize,
    c: usize,
    x: &[bool],
    y: &[bool],
) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::ColoringC { k, c }.build(x, Some(y))
}

pub fn build_coloring_gap(
    k: usize,
    c: usize,
    x: &[bool],
    y: &[bool],
) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::ColoringGap { k, c }.build(x, Some(y))
}

pub fn build_cycle8(k: usize, x: &[bool], y: &[bool]) -> Result<FamilyInstance, FamilyError> {
    FamilySpec::Cycle8 { k }.build(x, Some(y))
}

/// `x` and `y` hold one `weight_bits`-bit entry per pair `i < j`.
pub fn build_identical(
    k: usize,
    weight_bits: u32,
    x: &[u64],
    y: &[u64],
    hourglass: bool,
) -> Result<FamilyInstance, FamilyError> {
    let spec = FamilySpec::IdenticalSubgraphs {
        k,
        weight_bits,
        hourglass,
    };
    spec.validate()?;
    let xb = pack_weights(spec.family(), x, weight_bits)?;
    let yb = pack_weights(spec.family(), y, weight_bits)?;
    spec.build(&xb, Some(&yb))
}

/// `x` holds the `n - 2` leaf weights.
pub fn build_apsp_star(n: usize, weight_bits: u32, x: &[u64]) -> Result<FamilyInstance, FamilyError> {
    let spec = FamilySpec::ApspStar { n, weight_bits };
    spec.validate()?;
    let xb = pack_weights(spec.family(), x, weight_bits)?;
    spec.build(&xb, None)
}

fn pack_weights(fam: Family, values: &[u64], width: u32) -> Result<Vec<bool>, FamilyError> {
    if let Some(&w) = values.iter().find(|&&w| w >> width != 0) {
        return Err(param(
            fam,
            format!("weight {w} exceeds W_max = {}", (1u64 << width) - 1),
        ));
    }
    Ok(input::bits_from_weights(values, width))
}

impl FamilyInstance {
    pub fn graph(&self) -> &Graph {
        self.pg.graph()
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    pub fn input_len(&self) -> usize {
        self.spec.input_len()
    }

    /// Input entries as numbers, for the weighted families.
    pub fn x_weights(&self) -> Option<Vec<u64>> {
        match self.spec {
            FamilySpec::IdenticalSubgraphs { weight_bits, .. }
            | FamilySpec::ApspStar { weight_bits, .. } => {
                Some(input::weights_from_bits(&self.x, weight_bits))
            }
            _ => None,
        }
    }

    /// Edges whose presence or weight depends on the input of `owner`.
    pub fn input_edges(&self, owner: Side) -> Vec<Edge> {
        let g = self.pg.graph();
        self.slots
            .iter()
            .filter(|s| s.owner == owner)
            .filter_map(|s| {
                let (u, v) = (g.id_of(&s.u)?, g.id_of(&s.v)?);
                g.edge_between(u, v).map(|e| g.to_label_edge(&e))
            })
            .collect()
    }

    /// The lower-bound-graph conditions: input-controlled slots lie inside
    /// their owner's side, and all other edges are identical for every input.
    pub fn check_lower_bound_property(&self) -> Result<(), String> {
        for s in &self.slots {
            for l in [s.u, s.v] {
                match self.pg.side_of_label(&l) {
                    Some(side) if side == s.owner => {}
                    Some(_) => {
                        return Err(format!(
                            "slot ({}, {}) owned by {:?} leaves that side",
                            s.u, s.v, s.owner
                        ))
                    }
                    None => return Err(format!("slot endpoint {l} is not a node")),
                }
            }
        }
        let fixed = |inst: &FamilyInstance| -> Vec<Edge> {
            inst.graph()
                .edges()
                .filter(|e| {
                    !inst
                        .slots
                        .iter()
                        .any(|s| (s.u, s.v) == (e.u, e.v) || (s.v, s.u) == (e.u, e.v))
                })
                .collect()
        };
        let mine = fixed(self);
        let (gx, gy) = self.construct_with(
            &vec![false; self.x.len()],
            self.y.as_ref().map(|y| vec![false; y.len()]).as_deref(),
        );
        let other = FamilyInstance {
            pg: PartitionedGraph::new(gx, bitgadget::side_of).map_err(|e| e.to_string())?,
            slots: gy,
            ..self.clone()
        };
        if other.graph().labels() != self.graph().labels() {
            return Err("node set depends on the input".into());
        }
        if fixed(&other) != mine {
            return Err("an edge outside the input slots depends on the input".into());
        }
        if other.slots != self.slots {
            return Err("the slot layout depends on the input".into());
        }
        Ok(())
    }

    fn construct_with(&self, x: &[bool], y: Option<&[bool]>) -> (Graph, Vec<InputSlot>) {
        self.spec.construct(x, y)
    }

    /// Serializable form carrying the family metadata block.
    pub fn to_document(&self) -> Document {
        let mut doc = Document::from_partitioned(&self.pg);
        let mut meta = vec![
            ("family".to_owned(), self.family().name().to_owned()),
            ("params".to_owned(), self.spec.params_string()),
            ("K".to_owned(), self.input_len().to_string()),
            ("x".to_owned(), bits_to_hex(&self.x)),
        ];
        if let Some(y) = &self.y {
            meta.push(("y".to_owned(), bits_to_hex(y)));
        }
        meta.push(("predicate".to_owned(), self.predicate.to_string()));
        meta.push(("expected".to_owned(), (self.expected as u8).to_string()));
        doc.meta = meta;
        doc
    }

    /// Rebuilds an instance from its metadata and checks it matches the stored graph.
    pub fn from_document(doc: &Document) -> Result<FamilyInstance, FamilyError> {
        let get = |key: &str| {
            doc.meta(key)
                .ok_or_else(|| FamilyError::Meta(format!("missing key `{key}`")))
        };
        let spec = FamilySpec::parse(get("family")?, get("params")?)?;
        let len = spec.input_len();
        let x = bits_from_hex(get("x")?, len)?;
        let y = match doc.meta("y") {
            Some(h) => Some(bits_from_hex(h, len)?),
            None => None,
        };
        let inst = spec.build(&x, y.as_deref())?;
        let stored = doc
            .partitioned()
            .ok_or_else(|| FamilyError::Meta("document has no partition section".into()))?;
        if stored != inst.pg {
            return Err(FamilyError::Meta(
                "stored graph differs from the one the metadata describes".into(),
            ));
        }
        if get("predicate")?.parse::<Predicate>()? != inst.predicate {
            return Err(FamilyError::Meta("predicate does not match the family".into()));
        }
        if get("expected")? != (inst.expected as u8).to_string() {
            return Err(FamilyError::Meta("expected value does not match the inputs".into()));
        }
        Ok(inst)
    }
}

/// Every `(x, y)` pair for families with `2K <= max_bits`, enumerated as two
/// `K`-bit counters.
pub fn all_input_pairs(spec: &FamilySpec) -> Vec<(Vec<bool>, Vec<bool>)> {
    let len = spec.input_len();
    assert!(2 * len <= 30, "exhaustive enumeration is limited to 2K <= 30");
    let mut out = Vec::with_capacity(1 << (2 * len));
    for xv in 0..1u64 << len {
        for yv in 0..1u64 << len {
            out.push((
                input::bits_from_index(xv, len),
                input::bits_from_index(yv, len),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        bits_from_str(s).unwrap()
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn predicate_descriptors_round_trip() {
        for spec in [
            FamilySpec::Diameter { k: 4 },
            FamilySpec::ApproxDiameter { k: 4, q: 2 },
            FamilySpec::Radius { k: 4 },
            FamilySpec::Mvc { k: 4 },
            FamilySpec::ColoringC { k: 2, c: 4 },
            FamilySpec::ColoringGap { k: 2, c: 2 },
            FamilySpec::Cycle8 { k: 4 },
            FamilySpec::IdenticalSubgraphs {
                k: 3,
                weight_bits: 3,
                hourglass: false,
            },
            FamilySpec::ApspStar { n: 5, weight_bits: 3 },
        ] {
            let p = spec.predicate();
            assert_eq!(p.to_string().parse::<Predicate>().unwrap(), p);
            let again = FamilySpec::parse(spec.family().name(), &spec.params_string()).unwrap();
            assert_eq!(again, spec);
        }
    }

    #[test]
    fn input_lengths() {
        assert_eq!(FamilySpec::Diameter { k: 4 }.input_len(), 4);
        assert_eq!(FamilySpec::Mvc { k: 4 }.input_len(), 16);
        let id = FamilySpec::IdenticalSubgraphs {
            k: 4,
            weight_bits: 3,
            hourglass: false,
        };
        assert_eq!(id.input_len(), 18);
        assert_eq!(FamilySpec::ApspStar { n: 5, weight_bits: 3 }.input_len(), 9);
    }

    #[test]
    fn validation_diagnostics() {
        let c8 = FamilySpec::Cycle8 { k: 4 };
        let err = c8
            .validate_inputs(&[false; 16], Some(&bits("1000000000000000")))
            .unwrap_err();
        assert!(err.to_string().contains("all-zero x"), "{err}");
        assert!(FamilySpec::Diameter { k: 4 }
            .validate_inputs(&bits("0000"), Some(&bits("0000")))
            .is_ok());
        let err = FamilySpec::Mvc { k: 3 }.validate().unwrap_err();
        assert!(err.to_string().contains("k must be a power of 2"), "{err}");
        let err = FamilySpec::Diameter { k: 4 }
            .validate_inputs(&bits("000"), Some(&bits("0000")))
            .unwrap_err();
        assert_eq!(
            err,
            FamilyError::Length {
                which: 'x',
                expected: 4,
                got: 3
            }
        );
        assert!(matches!(
            FamilySpec::Diameter { k: 4 }.validate_inputs(&bits("0000"), None),
            Err(FamilyError::MissingY(_))
        ));
        assert!(FamilySpec::ColoringC { k: 2, c: 2 }.validate().is_err());
        assert!(FamilySpec::ApproxDiameter { k: 4, q: 0 }.validate().is_err());
    }

    #[test]
    fn expected_values() {
        let d = FamilySpec::Diameter { k: 4 };
        assert!(d.expected(&bits("1000"), Some(&bits("1000"))));
        assert!(!d.expected(&bits("1001"), Some(&bits("0110"))));
        let r = FamilySpec::Radius { k: 4 };
        assert!(r.expected(&bits("1010"), Some(&bits("0101"))));
    }

    #[test]
    fn weight_entry_bounds() {
        assert!(build_identical(3, 3, &[5, 7, 8], &[5, 7, 2], false).is_err());
        assert!(build_apsp_star(5, 2, &[3, 1, 4]).is_err());
    }

    #[test]
    fn document_round_trip() {
        use crate::graph::{parse_document, write_document};
        let inst = build_diameter(4, &bits("1001"), &bits("0110")).unwrap();
        let text = write_document(&inst.to_document());
        let doc = parse_document(&text).unwrap();
        assert_eq!(FamilyInstance::from_document(&doc).unwrap(), inst);
        assert_eq!(write_document(&doc), text);
        let tampered = text.replacen("meta x 0x9", "meta x 0x8", 1);
        assert_ne!(tampered, text);
        let doc = parse_document(&tampered).unwrap();
        assert!(FamilyInstance::from_document(&doc).is_err());
    }

    #[test]
    fn exhaustive_pair_count() {
        assert_eq!(all_input_pairs(&FamilySpec::Diameter { k: 2 }).len(), 16);
    }
}
