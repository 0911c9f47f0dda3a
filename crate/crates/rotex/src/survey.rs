//! Batch verification: run every checker, oracle, and constructor over a
//! stream of graphs and cross-check them against each other.
//!
//! Each row records the checker verdicts, the exact oracle facts, the
//! constructor outcome, and consistency flags that tie them together: a
//! satisfied cycle condition must come with a real spanning cycle, a
//! satisfied tree condition with a real low-leaf spanning tree, and every
//! constructor outcome must validate. The counterexample list collects
//! rows where any flag fails; a clean report has none.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{self, Write};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::codec::{write_graph6, CodecError};
use crate::conditions::{check_classical, check_hamilton_condition, check_tree_condition, Classical};
use crate::construct::{
    build_k_ended_tree, find_hamilton_cycle, ConstructError, CycleOutcome, TreeOutcome,
    ViolationWitness,
};
use crate::enumerate::{canonical_form, MAX_CANONICAL_VERTICES};
use crate::graph::Graph;
use crate::oracle::{hamiltonian_exact, min_leaf_spanning_tree_exact, OracleError};
use crate::patterns::PatternFamily;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("survey requires every k >= 2, got {0}")]
    KTooSmall(usize),
    #[error("graph cannot be keyed for the report: {0}")]
    Codec(#[from] CodecError),
    #[error("constructor failed: {0}")]
    Construct(#[from] ConstructError),
}

/// What the cycle constructor produced, collapsed for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleOutcomeKind {
    Cycle,
    SmallCycle,
    SmallNone,
    WitnessPatternPair,
    WitnessDisconnectedPattern,
    WitnessPrecondition,
}

impl CycleOutcomeKind {
    pub fn label(self) -> &'static str {
        match self {
            CycleOutcomeKind::Cycle => "cycle",
            CycleOutcomeKind::SmallCycle => "small_cycle",
            CycleOutcomeKind::SmallNone => "small_none",
            CycleOutcomeKind::WitnessPatternPair => "witness_pattern_pair",
            CycleOutcomeKind::WitnessDisconnectedPattern => "witness_disconnected_pattern",
            CycleOutcomeKind::WitnessPrecondition => "witness_precondition",
        }
    }
}

/// What the tree constructor produced, collapsed for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeOutcomeKind {
    Tree { leaf_count: usize },
    WitnessPatternPair,
    WitnessPrecondition,
}

impl TreeOutcomeKind {
    pub fn label(self) -> String {
        match self {
            TreeOutcomeKind::Tree { leaf_count } => format!("tree:{leaf_count}"),
            TreeOutcomeKind::WitnessPatternPair => "witness_pattern_pair".to_string(),
            TreeOutcomeKind::WitnessPrecondition => "witness_precondition".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurveyOptions {
    /// Leaf budgets to check the tree condition and builder against.
    pub ks: Vec<usize>,
    /// Drop disconnected graphs from the stream before surveying.
    pub connected_only: bool,
    /// Count distinct isomorphism classes (all orders must be <= 8).
    pub dedupe_isomorphic: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            ks: vec![2, 3, 4],
            connected_only: false,
            dedupe_isomorphic: false,
        }
    }
}

/// One surveyed graph: verdicts, oracle facts, constructor outcomes, and
/// the consistency flags tying them together.
#[derive(Debug, Clone)]
pub struct SurveyRow {
    pub graph6: String,
    pub n: usize,
    pub connected: bool,
    pub dirac: bool,
    pub ore: bool,
    pub thm1_five: bool,
    pub thm1_corollary: bool,
    /// Classical whole-graph tree condition verdict per requested k.
    pub ore_tree: Vec<(usize, bool)>,
    /// Pattern-restricted tree condition verdict per requested k.
    pub thm2_five: Vec<(usize, bool)>,
    /// Exact spanning-cycle existence; `None` when the oracle was skipped.
    pub hamiltonian: Option<bool>,
    /// Exact minimum leaf count over spanning trees; `None` when skipped
    /// or when no spanning tree exists.
    pub min_leaf_count: Option<usize>,
    pub cycle_outcome: CycleOutcomeKind,
    pub tree_outcomes: Vec<(usize, TreeOutcomeKind)>,
    /// Satisfied cycle condition came with a certified spanning cycle.
    pub ok_thm1: bool,
    /// Satisfied tree condition came with a certified low-leaf tree.
    pub ok_thm2: Vec<(usize, bool)>,
    /// Every constructor outcome validated and agreed with the oracle.
    pub ok_construct: bool,
    /// An oracle budget was breached; oracle facts are partial.
    pub skipped: bool,
}

impl SurveyRow {
    pub fn all_flags_ok(&self) -> bool {
        self.ok_thm1 && self.ok_construct && self.ok_thm2.iter().all(|&(_, ok)| ok)
    }

    fn verdict_key(&self) -> String {
        let b = |v: bool| if v { '1' } else { '0' };
        let mut key = format!(
            "dirac={} ore={} thm1_five={} thm1_corollary={}",
            b(self.dirac),
            b(self.ore),
            b(self.thm1_five),
            b(self.thm1_corollary)
        );
        for &(k, v) in &self.ore_tree {
            key.push_str(&format!(" ore_tree(k={k})={}", b(v)));
        }
        for &(k, v) in &self.thm2_five {
            key.push_str(&format!(" thm2_five(k={k})={}", b(v)));
        }
        key
    }
}

/// A row that failed a consistency flag, with the reason.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub graph6: String,
    pub flag: String,
    pub detail: String,
}

/// Aggregated survey results. [`SurveyReport::is_clean`] is the headline:
/// it holds exactly when every consistency flag on every row passed.
#[derive(Debug)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    pub ks: Vec<usize>,
    pub total: usize,
    pub connected_count: usize,
    pub skipped_count: usize,
    pub verdict_combination_counts: BTreeMap<String, usize>,
    pub thm1_satisfied_count: usize,
    /// Graphs the restricted cycle condition accepts but classical Ore
    /// rejects — the comparison headline; all must be spanning-cycle
    /// positive for the report to be clean.
    pub thm1_satisfied_ore_violated_count: usize,
    pub distinct_isomorphism_classes: Option<usize>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl SurveyReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Writes the rows as CSV: header first, LF endings, empty cells for
    /// unknown oracle facts.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let mut header = String::from("graph6,n,connected,dirac,ore,thm1_five,thm1_corollary");
        for k in &self.ks {
            header.push_str(&format!(",ore_tree_k{k}"));
        }
        for k in &self.ks {
            header.push_str(&format!(",thm2_five_k{k}"));
        }
        header.push_str(",hamiltonian,min_leaf_count,cycle_outcome");
        for k in &self.ks {
            header.push_str(&format!(",tree_outcome_k{k}"));
        }
        header.push_str(",ok_thm1");
        for k in &self.ks {
            header.push_str(&format!(",ok_thm2_k{k}"));
        }
        header.push_str(",ok_construct,status");
        writeln!(out, "{header}")?;
        for row in &self.rows {
            let mut line = format!(
                "{},{},{},{},{},{},{}",
                row.graph6, row.n, row.connected, row.dirac, row.ore, row.thm1_five,
                row.thm1_corollary
            );
            for &(_, v) in &row.ore_tree {
                line.push_str(&format!(",{v}"));
            }
            for &(_, v) in &row.thm2_five {
                line.push_str(&format!(",{v}"));
            }
            match row.hamiltonian {
                Some(h) => line.push_str(&format!(",{h}")),
                None => line.push(','),
            }
            match row.min_leaf_count {
                Some(m) => line.push_str(&format!(",{m}")),
                None => line.push(','),
            }
            line.push_str(&format!(",{}", row.cycle_outcome.label()));
            for &(_, kind) in &row.tree_outcomes {
                line.push_str(&format!(",{}", kind.label()));
            }
            line.push_str(&format!(",{}", row.ok_thm1));
            for &(_, ok) in &row.ok_thm2 {
                line.push_str(&format!(",{ok}"));
            }
            line.push_str(&format!(",{}", row.ok_construct));
            line.push_str(if row.skipped { ",skipped" } else { ",ok" });
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

type OracleFacts = (Option<bool>, Option<usize>, bool);

/// Runs the oracles, tolerating budget breaches: unknowns come back as
/// `None` and the flag marks the row skipped.
fn oracle_facts(
    g: &Graph,
    want_min_leaf: bool,
    cache: &mut HashMap<(usize, Vec<u8>), OracleFacts>,
) -> OracleFacts {
    let key = if g.vertex_count() <= MAX_CANONICAL_VERTICES {
        canonical_form(g)
            .ok()
            .map(|form| (g.vertex_count(), form))
    } else {
        None
    };
    if let Some(k) = &key {
        if let Some(hit) = cache.get(k) {
            return *hit;
        }
    }
    let mut skipped = false;
    let hamiltonian = match hamiltonian_exact(g) {
        Ok(cycle) => Some(cycle.is_some()),
        Err(OracleError::BudgetExceeded { .. }) => {
            skipped = true;
            None
        }
    };
    let min_leaf = if want_min_leaf {
        match min_leaf_spanning_tree_exact(g) {
            Ok(tree) => tree.map(|t| t.leaf_count()),
            Err(OracleError::BudgetExceeded { .. }) => {
                skipped = true;
                None
            }
        }
    } else {
        None
    };
    let facts = (hamiltonian, min_leaf, skipped);
    if let Some(k) = key {
        cache.insert(k, facts);
    }
    facts
}

fn witness_threshold_matches(w: &ViolationWitness, expected: i64) -> bool {
    w.threshold() == expected
}

/// Surveys every graph in `source` in order. Deterministic given a
/// deterministic source.
pub fn survey<I>(source: I, options: &SurveyOptions) -> Result<SurveyReport, SurveyError>
where
    I: IntoIterator<Item = Graph>,
{
    let started = Instant::now();
    let ks = options.ks.clone();
    if let Some(&bad) = ks.iter().find(|&&k| k < 2) {
        return Err(SurveyError::KTooSmall(bad));
    }
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    let mut verdict_combination_counts = BTreeMap::new();
    let mut oracle_cache: HashMap<(usize, Vec<u8>), OracleFacts> = HashMap::new();
    let mut iso_classes: Option<HashSet<Vec<u8>>> = options.dedupe_isomorphic.then(HashSet::new);
    let mut connected_count = 0usize;
    let mut skipped_count = 0usize;
    let mut thm1_satisfied_count = 0usize;
    let mut thm1_satisfied_ore_violated_count = 0usize;

    for g in source {
        let connected = g.is_connected();
        if options.connected_only && !connected {
            continue;
        }
        let graph6 = write_graph6(&g)?;
        let n = g.vertex_count();
        if connected {
            connected_count += 1;
        }
        if let Some(classes) = &mut iso_classes {
            match canonical_form(&g) {
                Ok(form) => {
                    classes.insert(form);
                }
                // Too large to canonicalize: the deduped count is off the
                // table for this report.
                Err(_) => iso_classes = None,
            }
        }

        let dirac = check_classical(&g, Classical::Dirac).satisfied;
        let ore = check_classical(&g, Classical::Ore).satisfied;
        let thm1_five = check_hamilton_condition(&g, PatternFamily::Five).satisfied;
        let thm1_corollary = check_hamilton_condition(&g, PatternFamily::Corollary).satisfied;
        let ore_tree: Vec<(usize, bool)> = ks
            .iter()
            .map(|&k| (k, check_classical(&g, Classical::OreTree { k }).satisfied))
            .collect();
        let thm2_five: Vec<(usize, bool)> = ks
            .iter()
            .map(|&k| {
                let verdict = check_tree_condition(&g, k, PatternFamily::Five)
                    .expect("ks validated above")
                    .satisfied;
                (k, verdict)
            })
            .collect();

        let (hamiltonian, min_leaf_count, skipped) =
            oracle_facts(&g, !ks.is_empty(), &mut oracle_cache);
        if skipped {
            skipped_count += 1;
        }

        let cycle = find_hamilton_cycle(&g)?;
        let mut cycle_cert_valid = false;
        let mut construct_ok = true;
        let mut construct_detail = String::new();
        let cycle_outcome = match &cycle {
            CycleOutcome::Cycle(cert) => {
                match cert.validate(&g) {
                    Ok(()) => cycle_cert_valid = true,
                    Err(e) => {
                        construct_ok = false;
                        construct_detail = format!("cycle certificate invalid: {e}");
                    }
                }
                CycleOutcomeKind::Cycle
            }
            CycleOutcome::Witness(w) => {
                if let Err(e) = w.validate(&g) {
                    construct_ok = false;
                    construct_detail = format!("cycle witness invalid: {e}");
                } else if !witness_threshold_matches(w, n as i64) {
                    construct_ok = false;
                    construct_detail = format!(
                        "cycle witness carries threshold {}, expected {n}",
                        w.threshold()
                    );
                }
                match w {
                    ViolationWitness::PatternPair(_) => CycleOutcomeKind::WitnessPatternPair,
                    ViolationWitness::DisconnectedPattern(_) => {
                        CycleOutcomeKind::WitnessDisconnectedPattern
                    }
                    ViolationWitness::Precondition { .. } => CycleOutcomeKind::WitnessPrecondition,
                }
            }
            CycleOutcome::Small(v) => match &v.cycle {
                Some(cert) => {
                    match cert.validate(&g) {
                        Ok(()) => cycle_cert_valid = true,
                        Err(e) => {
                            construct_ok = false;
                            construct_detail = format!("small cycle certificate invalid: {e}");
                        }
                    }
                    CycleOutcomeKind::SmallCycle
                }
                None => CycleOutcomeKind::SmallNone,
            },
        };
        // Constructor certificates and the oracle must agree when both
        // speak: a valid certificate with a negative oracle (or a small
        // "no cycle" verdict with a positive one) indicts one of them.
        if let Some(h) = hamiltonian {
            if cycle_cert_valid && !h {
                construct_ok = false;
                construct_detail =
                    "constructor certified a spanning cycle the solver says cannot exist".into();
            }
            if matches!(cycle_outcome, CycleOutcomeKind::SmallNone) && h {
                construct_ok = false;
                construct_detail =
                    "small verdict found no cycle but the solver says one exists".into();
            }
        }

        let mut tree_outcomes = Vec::with_capacity(ks.len());
        let mut tree_ok_per_k = Vec::with_capacity(ks.len());
        for &k in &ks {
            let expected_threshold = n as i64 - k as i64 + 1;
            let outcome = build_k_ended_tree(&g, k)?;
            let mut tree_valid_leaves: Option<usize> = None;
            let kind = match &outcome {
                TreeOutcome::Tree(cert) => {
                    match cert.validate(&g, k) {
                        Ok(()) => tree_valid_leaves = Some(cert.leaf_count()),
                        Err(e) => {
                            construct_ok = false;
                            construct_detail = format!("tree certificate invalid (k={k}): {e}");
                        }
                    }
                    TreeOutcomeKind::Tree {
                        leaf_count: cert.leaf_count(),
                    }
                }
                TreeOutcome::Witness(w) => {
                    if let Err(e) = w.validate(&g) {
                        construct_ok = false;
                        construct_detail = format!("tree witness invalid (k={k}): {e}");
                    } else if !witness_threshold_matches(w, expected_threshold) {
                        construct_ok = false;
                        construct_detail = format!(
                            "tree witness carries threshold {}, expected {expected_threshold} (k={k})",
                            w.threshold()
                        );
                    }
                    match w {
                        ViolationWitness::Precondition { .. } => {
                            TreeOutcomeKind::WitnessPrecondition
                        }
                        _ => TreeOutcomeKind::WitnessPatternPair,
                    }
                }
            };
            // A valid k-leaf tree bounds the true minimum.
            if let (Some(leaves), Some(min)) = (tree_valid_leaves, min_leaf_count) {
                if leaves < min {
                    construct_ok = false;
                    construct_detail = format!(
                        "tree certificate has {leaves} leaves, below the exact minimum {min}"
                    );
                }
            }
            tree_outcomes.push((k, kind));
            tree_ok_per_k.push(tree_valid_leaves);
        }

        // The executable statement of the two guarantees: a satisfied
        // condition must come with its object.
        let ok_thm1 = !thm1_five || (cycle_cert_valid && hamiltonian != Some(false));
        // A valid certified tree proves the bound even when the exact
        // solver was skipped; when the solver did run, it must agree.
        let ok_thm2: Vec<(usize, bool)> = ks
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let sat = thm2_five[i].1;
                let certified = tree_ok_per_k[i].is_some_and(|leaves| leaves <= k);
                let oracle_agrees = match min_leaf_count {
                    Some(m) => m <= k,
                    None => skipped,
                };
                (k, !sat || (certified && oracle_agrees))
            })
            .collect();

        if thm1_five {
            thm1_satisfied_count += 1;
            if !ore {
                thm1_satisfied_ore_violated_count += 1;
            }
        }

        let row = SurveyRow {
            graph6,
            n,
            connected,
            dirac,
            ore,
            thm1_five,
            thm1_corollary,
            ore_tree,
            thm2_five,
            hamiltonian,
            min_leaf_count,
            cycle_outcome,
            tree_outcomes,
            ok_thm1,
            ok_thm2,
            ok_construct: construct_ok,
            skipped,
        };
        *verdict_combination_counts
            .entry(row.verdict_key())
            .or_insert(0) += 1;
        if !row.ok_thm1 {
            counterexamples.push(Counterexample {
                graph6: row.graph6.clone(),
                flag: "ok_thm1".into(),
                detail: format!(
                    "cycle condition satisfied but outcome {} / oracle {:?}",
                    row.cycle_outcome.label(),
                    row.hamiltonian
                ),
            });
        }
        for &(k, ok) in &row.ok_thm2 {
            if !ok {
                counterexamples.push(Counterexample {
                    graph6: row.graph6.clone(),
                    flag: format!("ok_thm2_k{k}"),
                    detail: format!(
                        "tree condition satisfied at k={k} but min_leaf {:?}",
                        row.min_leaf_count
                    ),
                });
            }
        }
        if !row.ok_construct {
            counterexamples.push(Counterexample {
                graph6: row.graph6.clone(),
                flag: "ok_construct".into(),
                detail: construct_detail,
            });
        }
        rows.push(row);
    }

    let total = rows.len();
    Ok(SurveyReport {
        rows,
        ks,
        total,
        connected_count,
        skipped_count,
        verdict_combination_counts,
        thm1_satisfied_count,
        thm1_satisfied_ore_violated_count,
        distinct_isomorphism_classes: iso_classes.map(|s| s.len()),
        counterexamples,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_labeled_graphs;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap()
    }

    #[test]
    fn labeled_four_vertex_survey_is_clean() {
        let opts = SurveyOptions {
            ks: vec![2, 3],
            ..SurveyOptions::default()
        };
        let report = survey(all_labeled_graphs(4).unwrap(), &opts).unwrap();
        assert_eq!(report.total, 64);
        assert!(report.is_clean(), "{:?}", report.counterexamples);
        assert_eq!(report.skipped_count, 0);
    }

    #[test]
    fn petersen_row_shape() {
        let opts = SurveyOptions {
            ks: vec![2],
            ..SurveyOptions::default()
        };
        let report = survey([petersen()], &opts).unwrap();
        assert!(report.is_clean(), "{:?}", report.counterexamples);
        let row = &report.rows[0];
        assert!(!row.thm1_five);
        assert_eq!(row.hamiltonian, Some(false));
        assert_eq!(row.min_leaf_count, Some(2));
        assert_eq!(row.cycle_outcome, CycleOutcomeKind::WitnessPatternPair);
        assert!(!row.skipped);
    }

    #[test]
    fn k4_row_satisfies_every_cycle_checker() {
        let report = survey([complete(4)], &SurveyOptions::default()).unwrap();
        let row = &report.rows[0];
        assert!(row.dirac && row.ore && row.thm1_five && row.thm1_corollary);
        assert_eq!(row.hamiltonian, Some(true));
        assert_eq!(row.cycle_outcome, CycleOutcomeKind::Cycle);
        assert_eq!(report.thm1_satisfied_count, 1);
        assert!(report.is_clean());
    }

    #[test]
    fn connected_only_filters_the_stream() {
        let opts = SurveyOptions {
            ks: vec![2],
            connected_only: true,
            dedupe_isomorphic: true,
        };
        let report = survey(all_labeled_graphs(3).unwrap(), &opts).unwrap();
        // Connected labeled graphs on 3 vertices: 3 paths + 1 triangle.
        assert_eq!(report.total, 4);
        assert_eq!(report.connected_count, 4);
        // Up to isomorphism: the path and the triangle.
        assert_eq!(report.distinct_isomorphism_classes, Some(2));
    }

    #[test]
    fn csv_has_the_fixed_header_and_one_line_per_row() {
        let opts = SurveyOptions {
            ks: vec![2, 3],
            ..SurveyOptions::default()
        };
        let report = survey([complete(4), petersen()], &opts).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "graph6,n,connected,dirac,ore,thm1_five,thm1_corollary,\
             ore_tree_k2,ore_tree_k3,thm2_five_k2,thm2_five_k3,\
             hamiltonian,min_leaf_count,cycle_outcome,\
             tree_outcome_k2,tree_outcome_k3,\
             ok_thm1,ok_thm2_k2,ok_thm2_k3,ok_construct,status"
        );
        assert_eq!(lines.count(), 2);
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));
        let k4_line = text.lines().nth(1).unwrap();
        assert!(k4_line.starts_with("C~,4,true,true,true,true,true,"));
        assert!(k4_line.ends_with(",ok"));
    }

    #[test]
    fn small_k_is_rejected() {
        let opts = SurveyOptions {
            ks: vec![1],
            ..SurveyOptions::default()
        };
        assert!(matches!(
            survey([complete(4)], &opts),
            Err(SurveyError::KTooSmall(1))
        ));
    }

    #[test]
    fn verdict_combinations_partition_the_rows() {
        let opts = SurveyOptions {
            ks: vec![2],
            ..SurveyOptions::default()
        };
        let report = survey(all_labeled_graphs(4).unwrap(), &opts).unwrap();
        let counted: usize = report.verdict_combination_counts.values().sum();
        assert_eq!(counted, report.total);
    }
}
