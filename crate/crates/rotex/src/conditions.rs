//! Degree-sum condition checkers.
//!
//! The pattern-restricted checks test d(x) + d(y) against a threshold only
//! for nonadjacent pairs that sit inside an induced occurrence of one of
//! the five 4-vertex patterns: threshold n for the cycle condition,
//! n - k + 1 for the k-leaf spanning tree condition. The classical
//! baselines (minimum-degree, unrestricted pair sums) use the same report
//! shape so restriction relationships can be compared pair by pair.
//!
//! Failed structural preconditions are reported, never thrown: a report
//! with precondition failures simply cannot be `satisfied`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::patterns::{constrained_pair_occurrences, PatternFamily, PatternOccurrence};

/// Structural requirements a condition needs before pair sums mean anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Precondition {
    #[serde(rename = "TOO_FEW_VERTICES")]
    TooFewVertices,
    #[serde(rename = "NO_DEGREE_TWO_VERTEX")]
    NoDegreeTwoVertex,
    #[serde(rename = "DISCONNECTED")]
    Disconnected,
}

impl Precondition {
    pub fn label(self) -> &'static str {
        match self {
            Precondition::TooFewVertices => "TOO_FEW_VERTICES",
            Precondition::NoDegreeTwoVertex => "NO_DEGREE_TWO_VERTEX",
            Precondition::Disconnected => "DISCONNECTED",
        }
    }
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One failing pair: nonadjacent, with degree sum below the threshold.
/// `occurrence` backs pattern-restricted checks; classical checks carry none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: (usize, usize),
    pub degree_sum: usize,
    pub occurrence: Option<PatternOccurrence>,
}

/// Outcome of a condition check. `satisfied` holds exactly when both the
/// violation list and the precondition-failure list are empty; `vacuous`
/// flags that no constrained pair existed at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub satisfied: bool,
    pub threshold: i64,
    pub vacuous: bool,
    pub violations: Vec<Violation>,
    pub precondition_failures: Vec<Precondition>,
}

impl ConditionReport {
    fn assemble(
        threshold: i64,
        vacuous: bool,
        violations: Vec<Violation>,
        precondition_failures: Vec<Precondition>,
    ) -> ConditionReport {
        ConditionReport {
            satisfied: violations.is_empty() && precondition_failures.is_empty(),
            threshold,
            vacuous,
            violations,
            precondition_failures,
        }
    }

    /// Violation pairs in report order.
    pub fn violation_pairs(&self) -> Vec<(usize, usize)> {
        self.violations.iter().map(|v| v.pair).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("tree conditions need k >= 2, got {0}")]
    KTooSmall(usize),
}

fn pattern_violations(
    g: &Graph,
    family: PatternFamily,
    threshold: i64,
) -> (bool, Vec<Violation>) {
    let occurrences = constrained_pair_occurrences(g, family);
    let vacuous = occurrences.is_empty();
    let violations = occurrences
        .into_iter()
        .filter(|((x, y), _)| ((g.degree(*x) + g.degree(*y)) as i64) < threshold)
        .map(|((x, y), occ)| Violation {
            pair: (x, y),
            degree_sum: g.degree(x) + g.degree(y),
            occurrence: Some(occ),
        })
        .collect();
    (vacuous, violations)
}

/// Pattern-restricted cycle condition: every constrained pair must reach
/// degree sum n. Preconditions: n >= 4 and some vertex of degree >= 2.
pub fn check_hamilton_condition(g: &Graph, family: PatternFamily) -> ConditionReport {
    let n = g.vertex_count();
    let threshold = n as i64;
    let mut failures = Vec::new();
    if n < 4 {
        failures.push(Precondition::TooFewVertices);
    }
    if g.max_degree() <= 1 {
        failures.push(Precondition::NoDegreeTwoVertex);
    }
    let (vacuous, violations) = pattern_violations(g, family, threshold);
    ConditionReport::assemble(threshold, vacuous, violations, failures)
}

/// Pattern-restricted k-leaf tree condition: every constrained pair must
/// reach degree sum n - k + 1. Precondition: connected (and nonempty).
pub fn check_tree_condition(
    g: &Graph,
    k: usize,
    family: PatternFamily,
) -> Result<ConditionReport, ConditionError> {
    if k < 2 {
        return Err(ConditionError::KTooSmall(k));
    }
    let n = g.vertex_count();
    let threshold = n as i64 - k as i64 + 1;
    let mut failures = Vec::new();
    if n == 0 {
        failures.push(Precondition::TooFewVertices);
    }
    if !g.is_connected() {
        failures.push(Precondition::Disconnected);
    }
    let (vacuous, violations) = pattern_violations(g, family, threshold);
    Ok(ConditionReport::assemble(
        threshold, vacuous, violations, failures,
    ))
}

/// The unrestricted baselines the pattern checks relax.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classical {
    /// 2·δ(G) >= n. Violations are recorded as degenerate (v, v) pairs
    /// with degree sum 2·d(v), which is the pair reading of the
    /// minimum-degree bound.
    Dirac,
    /// d(x) + d(y) >= n over all nonadjacent pairs.
    Ore,
    /// d(x) + d(y) >= n - k + 1 over all nonadjacent pairs, for connected
    /// graphs. Requires k >= 2.
    OreTree { k: usize },
}

impl fmt::Display for Classical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classical::Dirac => write!(f, "dirac"),
            Classical::Ore => write!(f, "ore"),
            Classical::OreTree { k } => write!(f, "ore-tree(k={k})"),
        }
    }
}

/// Checks one of the classical conditions. Panics if `OreTree` is given
/// k < 2; that is a caller contract, matching [`check_tree_condition`].
pub fn check_classical(g: &Graph, kind: Classical) -> ConditionReport {
    let n = g.vertex_count();
    match kind {
        Classical::Dirac => {
            let threshold = n as i64;
            let violations = (0..n)
                .filter(|&v| ((2 * g.degree(v)) as i64) < threshold)
                .map(|v| Violation {
                    pair: (v, v),
                    degree_sum: 2 * g.degree(v),
                    occurrence: None,
                })
                .collect();
            ConditionReport::assemble(threshold, n == 0, violations, Vec::new())
        }
        Classical::Ore => {
            let threshold = n as i64;
            let (vacuous, violations) = all_nonadjacent_violations(g, threshold);
            ConditionReport::assemble(threshold, vacuous, violations, Vec::new())
        }
        Classical::OreTree { k } => {
            assert!(k >= 2, "tree conditions need k >= 2, got {k}");
            let threshold = n as i64 - k as i64 + 1;
            let mut failures = Vec::new();
            if n == 0 {
                failures.push(Precondition::TooFewVertices);
            }
            if !g.is_connected() {
                failures.push(Precondition::Disconnected);
            }
            let (vacuous, violations) = all_nonadjacent_violations(g, threshold);
            ConditionReport::assemble(threshold, vacuous, violations, failures)
        }
    }
}

fn all_nonadjacent_violations(g: &Graph, threshold: i64) -> (bool, Vec<Violation>) {
    let n = g.vertex_count();
    let mut vacuous = true;
    let mut violations = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            vacuous = false;
            let degree_sum = g.degree(x) + g.degree(y);
            if (degree_sum as i64) < threshold {
                violations.push(Violation {
                    pair: (x, y),
                    degree_sum,
                    occurrence: None,
                });
            }
        }
    }
    (vacuous, violations)
}
