//! Structural verification suites over a range of levels.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::algebra::PisotField;
use crate::error::Result;
use crate::golden;
use crate::levels::{check_matrix_consistency, CheckFailure, Fault, Level};
use crate::measure::{basic_interval_measures, cylinder_bounds, prefix_measures};
use crate::prob::ProbabilityPair;

/// Deepest cylinder level used by the oracle suite.
pub const ORACLE_DEPTH_CAP: u32 = 14;

/// Corruption applied to the deepest level before the suites run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjectedFault {
    Gap,
    Label,
}

impl std::str::FromStr for InjectedFault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gap" => Ok(InjectedFault::Gap),
            "label" => Ok(InjectedFault::Label),
            _ => Err(format!("unknown fault '{s}', expected gap or label")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, failure location otherwise.
    pub detail: String,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn outcome(name: &'static str, r: Result<String, CheckFailure>) -> SuiteOutcome {
    match r {
        Ok(detail) => SuiteOutcome {
            name,
            passed: true,
            detail,
        },
        Err(f) => SuiteOutcome {
            name,
            passed: false,
            detail: f.to_string(),
        },
    }
}

fn each_level(
    levels: &[Level],
    check: impl Fn(&Level) -> Result<(), CheckFailure>,
) -> Result<String, CheckFailure> {
    for level in levels {
        check(level)?;
    }
    Ok(format!("{} levels", levels.len()))
}

/// Basic-interval measures sum to one and split exactly under refinement.
pub fn check_measure_conservation(levels: &[Level]) -> Result<String, CheckFailure> {
    let mut parent: Option<(&Level, Vec<BigRational>)> = None;
    for level in levels {
        let mu = basic_interval_measures(level);
        let total: BigRational = mu.iter().sum();
        if !total.is_one() {
            return Err(CheckFailure {
                n: level.rank(),
                index: 0,
                detail: format!("basic interval measures sum to {total}"),
            });
        }
        if let Some((up, up_mu)) = &parent {
            let mut bounds = up.child_indices();
            bounds.push(level.num_points() - 1);
            for (j, expected) in up_mu.iter().enumerate() {
                let split: BigRational = mu[bounds[j]..bounds[j + 1]].iter().sum();
                if &split != expected {
                    return Err(CheckFailure {
                        n: level.rank(),
                        index: bounds[j],
                        detail: format!(
                            "children of interval {j} carry {split}, parent has {expected}"
                        ),
                    });
                }
            }
        }
        parent = Some((level, mu));
    }
    Ok(format!("{} levels", levels.len()))
}

fn matrix_suite(levels: &[Level]) -> Result<String, CheckFailure> {
    let mut checked = 0;
    for pair in levels.windows(2) {
        checked += check_matrix_consistency(&pair[0], &pair[1])?;
    }
    Ok(format!("{checked} transitions"))
}

fn oracle_suite(
    field: &PisotField,
    p: &ProbabilityPair,
    depth: u32,
) -> Result<String, CheckFailure> {
    let m = field.degree();
    let c = prefix_measures(m, p);
    let alphabet = field.gap_alphabet();
    let zero = field.zero();
    let depth = depth.min(ORACLE_DEPTH_CAP);
    for i in 1..=m {
        let bracket =
            cylinder_bounds(field, p, &zero, alphabet.get(i), depth).map_err(|e| CheckFailure {
                n: depth,
                index: i,
                detail: e.to_string(),
            })?;
        if !bracket.contains(c.get(i)) {
            return Err(CheckFailure {
                n: depth,
                index: i,
                detail: format!(
                    "c_{i} = {} outside [{}, {}]",
                    c.get(i),
                    bracket.lower,
                    bracket.upper
                ),
            });
        }
    }
    Ok(format!("c_1..c_{m} inside depth-{depth} brackets"))
}

fn golden_suite(p: &ProbabilityPair, depth: u32) -> Result<String, CheckFailure> {
    let table: BTreeSet<_> = golden::TABULATED_EDGES.into_iter().collect();
    if golden::derived_edges() != table {
        return Err(CheckFailure {
            n: 0,
            index: 0,
            detail: "derived offspring edges differ from the matrix table".into(),
        });
    }
    let mut visited = 0usize;
    golden::walk_paths(p, depth.max(2), |_| {
        visited += 1;
        Ok(())
    })?;
    Ok(format!("11 edges, {visited} path triples"))
}

fn inject(level: &mut Level, fault: InjectedFault) {
    let mid = level.num_points() / 2;
    match fault {
        InjectedFault::Gap => level.inject_fault(Fault::WidenGap(mid)),
        InjectedFault::Label => {
            let j = (mid..level.num_points() - 2)
                .chain(0..mid)
                .find(|&j| level.label(j) != level.label(j + 1))
                .expect("a level of rank >= 2 has two distinct adjacent labels");
            level.inject_fault(Fault::SwapLabels(j));
        }
    }
}

/// Runs every suite on `X_1 .. X_depth`.
pub fn run_suites(
    m: usize,
    p: &ProbabilityPair,
    depth: u32,
    fault: Option<InjectedFault>,
) -> Result<Vec<SuiteOutcome>> {
    let field = PisotField::new(m)?;
    let mut levels = Level::sequence(&field, p, depth.max(2))?;
    if let Some(fault) = fault {
        inject(levels.last_mut().expect("nonempty"), fault);
    }
    let mut out = vec![
        outcome(
            "gap lemma",
            each_level(&levels, |l| {
                l.check_points_ordered()?;
                l.check_gap_lemma()
            }),
        ),
        outcome(
            "label correspondence",
            each_level(&levels, Level::check_label_correspondence),
        ),
        outcome(
            "two-interval cover",
            each_level(&levels, Level::check_cover_lemma),
        ),
        outcome(
            "weight conservation",
            each_level(&levels, Level::check_weights)
                .and_then(|_| check_measure_conservation(&levels)),
        ),
        outcome("matrix consistency", matrix_suite(&levels)),
        outcome("oracle containment", oracle_suite(&field, p, depth)),
    ];
    if m == 2 {
        out.push(outcome("golden edge set", golden_suite(p, depth)));
    }
    Ok(out)
}

/// `true` when every suite passed.
pub fn all_passed(outcomes: &[SuiteOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}
