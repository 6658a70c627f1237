//! Sweeps a family over many `(x, y)` pairs and checks each instance's
//! predicate against the two-party function with the exact oracles.
//!
//! Reports serialize to a line-oriented document:
//!
//! ```text
//! lbreport 1
//! version 0.1.0
//! family diameter
//! params k=2
//! mode exhaustive
//! seed 0
//! pairs 16
//! cut_observed 3
//! cut_formula 3
//! wall_ms 4
//! violations 1
//! pass 0
//! v 0x2 0x1 predicate false, expected true
//! ```
//!
//! Each `v` line holds `x` and `y` in hexadecimal (`-` for a missing `y`)
//! and a free-text reason running to the end of the line.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::families::input::bits_from_index;
use crate::families::{bits_from_hex, bits_to_hex, Family, FamilyError, FamilyInstance, FamilySpec};
use crate::graph::{NodeId, Side};
use crate::oracles::{color_with, cycles8_of_weight, evaluate, vertex_cover_at_most, OracleError};

/// Exhaustive sweeps are limited to `2K <= EXHAUSTIVE_LIMIT` input bits.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Witness cycles inspected per cycle8 instance.
const CYCLE_WITNESS_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("exhaustive sweep needs 2K <= {EXHAUSTIVE_LIMIT} input bits, family has K = {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("report line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    /// Structured corners plus this many uniform draws.
    Sampled(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: Vec<bool>,
    pub y: Option<Vec<bool>>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub spec: FamilySpec,
    pub mode: SweepMode,
    pub seed: u64,
    pub pairs_tested: usize,
    pub violations: Vec<Violation>,
    pub cut_observed: usize,
    pub cut_formula: usize,
    pub wall_time: Duration,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An `x` and, for two-input families, a `y`.
pub type InputPair = (Vec<bool>, Option<Vec<bool>>);

/// Every valid pair; invalid ones (all-zero cycle8 inputs) are skipped.
pub fn exhaustive_pairs(spec: &FamilySpec) -> Result<Vec<InputPair>, VerifyError> {
    let k = spec.input_len();
    let players = if spec.has_y() { 2 } else { 1 };
    if players * k > EXHAUSTIVE_LIMIT {
        return Err(VerifyError::TooLarge(k));
    }
    let ys: Vec<Option<Vec<bool>>> = if spec.has_y() {
        (0..1u64 << k).map(|v| Some(bits_from_index(v, k))).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for xv in 0..1u64 << k {
        let x = bits_from_index(xv, k);
        for y in &ys {
            if spec.validate_inputs(&x, y.as_deref()).is_ok() {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// Corners (all-zeros, all-ones, single intersections, complements) that are
/// valid, followed by `count` uniform valid draws.
pub fn sampled_pairs(spec: &FamilySpec, count: usize, seed: u64) -> Vec<InputPair> {
    let k = spec.input_len();
    let zeros = vec![false; k];
    let ones = vec![true; k];
    let unit = |i: usize| (0..k).map(|j| j == i).collect::<Vec<bool>>();
    let mut candidates = vec![
        (zeros.clone(), zeros.clone()),
        (ones.clone(), ones.clone()),
        (ones.clone(), zeros.clone()),
        (zeros.clone(), ones.clone()),
    ];
    for i in 0..k.min(16) {
        candidates.push((unit(i), unit(i)));
        let rest: Vec<bool> = unit(i).iter().map(|b| !b).collect();
        candidates.push((unit(i), rest.clone()));
        let mut both = rest;
        both[i] = true;
        candidates.push((unit(i), both));
    }
    let mut out: Vec<InputPair> = Vec::new();
    for (x, y) in candidates {
        let y = spec.has_y().then_some(y);
        if spec.validate_inputs(&x, y.as_deref()).is_ok() && !out.contains(&(x.clone(), y.clone())) {
            out.push((x, y));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    let mut attempts = 0usize;
    while drawn < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let x: Vec<bool> = (0..k).map(|_| rng.gen()).collect();
        let y = spec.has_y().then(|| (0..k).map(|_| rng.gen()).collect::<Vec<bool>>());
        if spec.validate_inputs(&x, y.as_deref()).is_ok() {
            out.push((x, y));
            drawn += 1;
        }
    }
    out
}

fn guard_reason(e: OracleError) -> String {
    format!("skipped: {e}")
}

/// Checks one instance. Returns the reason for a violation, if any.
pub fn check_instance(inst: &FamilyInstance) -> Option<String> {
    if inst.pg.cut().len() != inst.spec.cut_size() {
        return Some(format!(
            "cut has {} edges, formula gives {}",
            inst.pg.cut().len(),
            inst.spec.cut_size()
        ));
    }
    let observed = match evaluate(inst) {
        Ok(Some(v)) => v,
        Ok(None) => return Some("predicate falls inside the gap".into()),
        Err(e) => return Some(guard_reason(e)),
    };
    if observed != inst.expected {
        return Some(format!("predicate {observed}, expected {}", inst.expected));
    }
    match inst.spec {
        FamilySpec::Mvc { k } => {
            let floor = FamilySpec::mvc_budget(k);
            match vertex_cover_at_most(inst.graph(), floor - 1) {
                Ok(Some(c)) => return Some(format!("vertex cover of size {} is below {floor}", c.len())),
                Ok(None) => {}
                Err(e) => return Some(guard_reason(e)),
            }
        }
        FamilySpec::ColoringGap { c, .. } if inst.expected => match color_with(inst.graph(), 3 * c - 1) {
            Ok(Some(_)) => return Some(format!("colorable with fewer than {} colors", 3 * c)),
            Ok(None) => {}
            Err(e) => return Some(guard_reason(e)),
        },
        FamilySpec::Cycle8 { k } if inst.expected => {
            if let Some(r) = cycle_witness_violation(inst, FamilySpec::cycle8_target(k)) {
                return Some(r);
            }
        }
        _ => {}
    }
    None
}

/// Every 8-cycle of the target weight must use exactly one present input
/// edge of each player.
fn cycle_witness_violation(inst: &FamilyInstance, target: u64) -> Option<String> {
    let g = inst.graph();
    let ids = |side: Side| -> Vec<(NodeId, NodeId)> {
        inst.input_edges(side)
            .iter()
            .map(|e| {
                let (u, v) = (g.id_of(&e.u).unwrap(), g.id_of(&e.v).unwrap());
                (u.min(v), u.max(v))
            })
            .collect()
    };
    let (alice, bob) = (ids(Side::Alice), ids(Side::Bob));
    for cycle in cycles8_of_weight(g, target, CYCLE_WITNESS_LIMIT) {
        let hops: Vec<(NodeId, NodeId)> = (0..cycle.len())
            .map(|i| {
                let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                (u.min(v), u.max(v))
            })
            .collect();
        let a = hops.iter().filter(|h| alice.contains(h)).count();
        let b = hops.iter().filter(|h| bob.contains(h)).count();
        if (a, b) != (1, 1) {
            return Some(format!("witness cycle uses {a} Alice and {b} Bob input edges"));
        }
    }
    None
}

/// Runs a sweep on `workers` threads (0 picks the default).
pub fn verify_family(
    spec: &FamilySpec,
    mode: SweepMode,
    seed: u64,
    workers: usize,
) -> Result<VerifyReport, VerifyError> {
    spec.validate()?;
    let start = Instant::now();
    let pairs = match mode {
        SweepMode::Exhaustive => exhaustive_pairs(spec)?,
        SweepMode::Sampled(count) => sampled_pairs(spec, count, seed),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let results: Vec<Result<(usize, Option<Violation>), FamilyError>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|(x, y)| {
                let inst = spec.build(x, y.as_deref())?;
                let violation = check_instance(&inst).map(|reason| Violation {
                    x: x.clone(),
                    y: y.clone(),
                    reason,
                });
                Ok((inst.pg.cut().len(), violation))
            })
            .collect()
    });
    let mut violations = Vec::new();
    let mut cut_observed = spec.cut_size();
    for (i, r) in results.into_iter().enumerate() {
        let (cut, v) = r?;
        if i == 0 || cut != spec.cut_size() {
            cut_observed = cut;
        }
        violations.extend(v);
    }
    Ok(VerifyReport {
        spec: *spec,
        mode,
        seed,
        pairs_tested: pairs.len(),
        violations,
        cut_observed,
        cut_formula: spec.cut_size(),
        wall_time: start.elapsed(),
    })
}

pub fn write_report(r: &VerifyReport) -> String {
    let mode = match r.mode {
        SweepMode::Exhaustive => "exhaustive".to_owned(),
        SweepMode::Sampled(n) => format!("sampled {n}"),
    };
    let mut out = format!(
        "lbreport 1\nversion {}\nfamily {}\nparams {}\nmode {mode}\nseed {}\npairs {}\ncut_observed {}\ncut_formula {}\nwall_ms {}\nviolations {}\npass {}\n",
        env!("CARGO_PKG_VERSION"),
        r.spec.family(),
        r.spec.params_string(),
        r.seed,
        r.pairs_tested,
        r.cut_observed,
        r.cut_formula,
        r.wall_time.as_millis(),
        r.violations.len(),
        r.pass() as u8,
    );
    for v in &r.violations {
        let y = v.y.as_deref().map_or("-".to_owned(), bits_to_hex);
        out.push_str(&format!("v {} {y} {}\n", bits_to_hex(&v.x), v.reason.replace('\n', " ")));
    }
    out
}

pub fn parse_report(text: &str) -> Result<VerifyReport, VerifyError> {
    let err = |line: usize, message: &str| VerifyError::Parse {
        line,
        message: message.to_owned(),
    };
    let lines: Vec<&str> = text.lines().collect();
    let field = |i: usize, key: &str| -> Result<&str, VerifyError> {
        lines
            .get(i)
            .and_then(|l| l.strip_prefix(key))
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| err(i + 1, &format!("expected `{key} <value>`")))
    };
    let num = |i: usize, key: &str| -> Result<u64, VerifyError> {
        field(i, key)?.parse().map_err(|_| err(i + 1, "bad number"))
    };
    if num(0, "lbreport")? != 1 {
        return Err(err(1, "unsupported report version"));
    }
    field(1, "version")?;
    let spec = FamilySpec::parse(field(2, "family")?, field(3, "params")?)?;
    let mode = match field(4, "mode")? {
        "exhaustive" => SweepMode::Exhaustive,
        m => SweepMode::Sampled(
            m.strip_prefix("sampled ")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| err(5, "bad mode"))?,
        ),
    };
    let seed = num(5, "seed")?;
    let pairs_tested = num(6, "pairs")? as usize;
    let cut_observed = num(7, "cut_observed")? as usize;
    let cut_formula = num(8, "cut_formula")? as usize;
    let wall_time = Duration::from_millis(num(9, "wall_ms")?);
    let count = num(10, "violations")? as usize;
    let pass = num(11, "pass")?;
    let k = spec.input_len();
    let mut violations = Vec::new();
    for (i, l) in lines.iter().enumerate().skip(12) {
        if l.is_empty() {
            continue;
        }
        let mut parts = l.splitn(4, ' ');
        let (Some("v"), Some(x), Some(y), Some(reason)) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(err(i + 1, "expected `v x y reason`"));
        };
        let x = bits_from_hex(x, k)?;
        let y = if y == "-" { None } else { Some(bits_from_hex(y, k)?) };
        violations.push(Violation {
            x,
            y,
            reason: reason.to_owned(),
        });
    }
    if violations.len() != count {
        return Err(err(11, "violation count does not match the records"));
    }
    if (pass == 1) != violations.is_empty() {
        return Err(err(12, "pass flag disagrees with the violations"));
    }
    Ok(VerifyReport {
        spec,
        mode,
        seed,
        pairs_tested,
        violations,
        cut_observed,
        cut_formula,
        wall_time,
    })
}

/// Parameterizations exercised by default for a family.
pub fn default_spec(family: Family) -> FamilySpec {
    match family {
        Family::Diameter => FamilySpec::Diameter { k: 4 },
        Family::ApproxDiameter => FamilySpec::ApproxDiameter { k: 4, q: 2 },
        Family::Radius => FamilySpec::Radius { k: 2 },
        Family::Mvc => FamilySpec::Mvc { k: 2 },
        Family::Coloring3 => FamilySpec::Coloring3 { k: 2 },
        Family::ColoringC => FamilySpec::ColoringC { k: 2, c: 4 },
        Family::ColoringGap => FamilySpec::ColoringGap { k: 2, c: 2 },
        Family::Cycle8 => FamilySpec::Cycle8 { k: 3 },
        Family::IdenticalSubgraphs => FamilySpec::IdenticalSubgraphs {
            k: 3,
            weight_bits: 2,
            hourglass: false,
        },
        Family::ApspStar => FamilySpec::ApspStar { n: 6, weight_bits: 3 },
    }
}
