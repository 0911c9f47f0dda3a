//! Command-line front end: condition checkers, constructive searches,
//! exact oracles, and the batch survey.
//!
//! Exit codes: 0 = satisfied / certificate produced; 1 = violated /
//! witness produced / oracle answered in the negative; 2 = usage or
//! input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rotex::codec::{parse_edge_list, parse_graph6};
use rotex::conditions::{check_hamilton_condition, check_tree_condition, ConditionReport};
use rotex::construct::{build_k_ended_tree, find_hamilton_cycle, CycleOutcome, TreeOutcome, ViolationWitness};
use rotex::enumerate::all_labeled_graphs;
use rotex::graph::Graph;
use rotex::oracle::{hamiltonian_exact, longest_path_exact, min_leaf_spanning_tree_exact};
use rotex::patterns::PatternFamily;
use rotex::survey::{survey, SurveyOptions, SurveyReport};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "rotex",
    version,
    about = "Pattern-restricted degree-sum conditions with constructive cycle and tree search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Five,
    Corollary,
}

impl From<FamilyArg> for PatternFamily {
    fn from(f: FamilyArg) -> PatternFamily {
        match f {
            FamilyArg::Five => PatternFamily::Five,
            FamilyArg::Corollary => PatternFamily::Corollary,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Hamilton,
    Minleaf,
    Longestpath,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Force graph6 input.
    #[arg(long, conflicts_with = "edges")]
    g6: bool,
    /// Force edge-list input ("n m" header, then "u v" lines).
    #[arg(long)]
    edges: bool,
    /// Input path, or "-" for stdin (default).
    input: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a degree-sum condition and report violations.
    Check {
        /// 1 = spanning-cycle condition; 2 = k-leaf spanning-tree condition.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        /// Leaf budget; required by (and only valid with) --theorem 2.
        #[arg(long)]
        k: Option<usize>,
        /// Pattern family scoping the condition.
        #[arg(long, value_enum, default_value = "five")]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Search for a spanning cycle; print a certificate or a witness.
    Hamilton {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Search for a spanning tree with at most k leaves.
    Tree {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Query an exact small-graph solver.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Survey a graph corpus: checkers, oracles, constructors, flags.
    Survey {
        /// Survey all labeled graphs of this order (n <= 6).
        #[arg(long, conflicts_with = "input")]
        n: Option<usize>,
        /// graph6 file, one graph per line ("-" for stdin).
        #[arg(long)]
        input: Option<String>,
        /// Leaf budgets, comma separated.
        #[arg(long = "k", value_delimiter = ',', default_values_t = vec![2, 3, 4])]
        ks: Vec<usize>,
        /// Drop disconnected graphs before surveying.
        #[arg(long)]
        connected_only: bool,
        /// Also count distinct isomorphism classes (orders must be <= 8).
        #[arg(long)]
        dedupe: bool,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A usage or input problem: message printed to stderr, exit 2.
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_source(path: &Option<String>) -> Result<String, UsageError> {
    match path.as_deref() {
        None | Some("-") => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| UsageError(format!("reading stdin: {e}")))?;
            Ok(text)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| UsageError(format!("reading {p}: {e}"))),
    }
}

/// A lone space-free line whose first byte is in the graph6 range is
/// graph6; anything else is an edge list. Explicit flags override.
fn parse_graph(text: &str, args: &InputArgs) -> Result<Graph, UsageError> {
    let first_line = text
        .lines()
        .map(str::trim_end)
        .find(|l| !l.is_empty())
        .ok_or_else(|| UsageError("empty input".to_string()))?;
    let looks_graph6 = !first_line.contains(' ')
        && first_line
            .as_bytes()
            .first()
            .is_some_and(|b| (63..=126).contains(b));
    let as_graph6 = args.g6 || (!args.edges && looks_graph6);
    if as_graph6 {
        parse_graph6(first_line).map_err(|e| UsageError(format!("graph6 input: {e}")))
    } else {
        parse_edge_list(text).map_err(|e| UsageError(format!("edge list input: {e}")))
    }
}

fn render_condition_text(report: &ConditionReport, label: &str) {
    println!("condition: {label}, threshold {}", report.threshold);
    if report.satisfied {
        if report.vacuous {
            println!("verdict: satisfied (vacuous)");
        } else {
            println!("verdict: satisfied");
        }
        return;
    }
    println!("verdict: violated");
    for failure in &report.precondition_failures {
        println!("precondition failed: {}", failure.label());
    }
    for v in &report.violations {
        let (x, y) = v.pair;
        match &v.occurrence {
            Some(occ) => println!(
                "violation: pair ({x}, {y}), degree sum {} < {}, pattern {} on {}",
                v.degree_sum,
                report.threshold,
                occ.pattern.name(),
                occ.subset
            ),
            None => println!(
                "violation: pair ({x}, {y}), degree sum {} < {}",
                v.degree_sum, report.threshold
            ),
        }
    }
}

fn cmd_check(
    theorem: u8,
    k: Option<usize>,
    family: FamilyArg,
    format: FormatArg,
    input: &InputArgs,
) -> Result<bool, UsageError> {
    let g = parse_graph(&read_source(&input.input)?, input)?;
    let (report, label) = match (theorem, k) {
        (1, None) => {
            let fam: PatternFamily = family.into();
            (
                check_hamilton_condition(&g, fam),
                format!("theorem 1 ({fam} patterns)"),
            )
        }
        (1, Some(_)) => return Err(UsageError("--k only applies to --theorem 2".to_string())),
        (2, Some(k)) => {
            let fam: PatternFamily = family.into();
            (
                check_tree_condition(&g, k, fam).map_err(|e| UsageError(e.to_string()))?,
                format!("theorem 2, k = {k} ({fam} patterns)"),
            )
        }
        (2, None) => return Err(UsageError("--theorem 2 requires --k".to_string())),
        _ => unreachable!("clap bounds the range"),
    };
    match format {
        FormatArg::Text => render_condition_text(&report, &label),
        FormatArg::Json => {
            let doc = json!({
                "command": "check",
                "theorem": theorem,
                "k": k,
                "family": PatternFamily::from(family).to_string(),
                "report": report,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(report.satisfied)
}

fn render_witness_text(w: &ViolationWitness) {
    match w.pattern_witness() {
        Some(pw) => {
            let (x, y) = pw.pair;
            println!(
                "witness: pattern {} on {}, pair ({x}, {y}), degree sum {} < {}",
                pw.pattern.name(),
                pw.subset,
                pw.degree_sum,
                pw.threshold
            );
        }
        None => {
            if let ViolationWitness::Precondition { label, threshold } = w {
                println!(
                    "witness: precondition {} fails, threshold {threshold}",
                    label.label()
                );
            }
        }
    }
}

fn cmd_hamilton(format: FormatArg, input: &InputArgs) -> Result<bool, UsageError> {
    let g = parse_graph(&read_source(&input.input)?, input)?;
    let outcome = find_hamilton_cycle(&g).map_err(|e| UsageError(e.to_string()))?;
    let positive = match &outcome {
        CycleOutcome::Cycle(_) => true,
        CycleOutcome::Small(v) => v.cycle.is_some(),
        CycleOutcome::Witness(_) => false,
    };
    match format {
        FormatArg::Text => match &outcome {
            CycleOutcome::Cycle(cert) => println!(
                "cycle: {}",
                cert.vertices()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            CycleOutcome::Small(v) => match &v.cycle {
                Some(cert) => println!(
                    "cycle: {} (order {})",
                    cert.vertices()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    cert.order()
                ),
                None => println!("no spanning cycle (order <= 3, settled exhaustively)"),
            },
            CycleOutcome::Witness(w) => render_witness_text(w),
        },
        FormatArg::Json => {
            let doc = match &outcome {
                CycleOutcome::Cycle(cert) => json!({
                    "command": "hamilton",
                    "outcome": "cycle",
                    "cycle": cert,
                }),
                CycleOutcome::Small(v) => json!({
                    "command": "hamilton",
                    "outcome": if v.cycle.is_some() { "cycle" } else { "none" },
                    "cycle": v.cycle,
                }),
                CycleOutcome::Witness(w) => json!({
                    "command": "hamilton",
                    "outcome": "witness",
                    "witness": w,
                }),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(positive)
}

fn cmd_tree(k: usize, format: FormatArg, input: &InputArgs) -> Result<bool, UsageError> {
    let g = parse_graph(&read_source(&input.input)?, input)?;
    let outcome = build_k_ended_tree(&g, k).map_err(|e| UsageError(e.to_string()))?;
    match format {
        FormatArg::Text => match &outcome {
            TreeOutcome::Tree(cert) => {
                println!(
                    "tree: {} leaves (budget {k}), {} edges",
                    cert.leaf_count(),
                    cert.edges().len()
                );
                for (u, v) in cert.edges() {
                    println!("edge: {u} {v}");
                }
            }
            TreeOutcome::Witness(w) => render_witness_text(w),
        },
        FormatArg::Json => {
            let doc = match &outcome {
                TreeOutcome::Tree(cert) => json!({
                    "command": "tree",
                    "k": k,
                    "outcome": "tree",
                    "tree": cert,
                }),
                TreeOutcome::Witness(w) => json!({
                    "command": "tree",
                    "k": k,
                    "outcome": "witness",
                    "witness": w,
                }),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(matches!(outcome, TreeOutcome::Tree(_)))
}

fn cmd_oracle(kind: OracleKind, input: &InputArgs) -> Result<bool, UsageError> {
    let g = parse_graph(&read_source(&input.input)?, input)?;
    match kind {
        OracleKind::Hamilton => match hamiltonian_exact(&g)? {
            Some(cycle) => {
                println!(
                    "cycle: {}",
                    cycle
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                Ok(true)
            }
            None => {
                println!("none");
                Ok(false)
            }
        },
        OracleKind::Minleaf => match min_leaf_spanning_tree_exact(&g)? {
            Some(cert) => {
                println!("{}", cert.leaf_count());
                Ok(true)
            }
            None => {
                println!("none");
                Ok(false)
            }
        },
        OracleKind::Longestpath => {
            let path = longest_path_exact(&g)?;
            println!(
                "order {}: {}",
                path.order(),
                path.vertices()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Ok(true)
        }
    }
}

fn survey_summary(report: &SurveyReport) -> String {
    let mut s = format!(
        "rows {} (connected {}, skipped {}); condition satisfied {}; satisfied-but-ore-violated {}; counterexamples {}",
        report.total,
        report.connected_count,
        report.skipped_count,
        report.thm1_satisfied_count,
        report.thm1_satisfied_ore_violated_count,
        report.counterexamples.len()
    );
    if let Some(classes) = report.distinct_isomorphism_classes {
        s.push_str(&format!("; isomorphism classes {classes}"));
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_survey(
    n: Option<usize>,
    input: Option<String>,
    ks: Vec<usize>,
    connected_only: bool,
    dedupe: bool,
    out: Option<PathBuf>,
) -> Result<bool, UsageError> {
    let graphs: Vec<Graph> = match (n, &input) {
        (Some(n), None) => {
            if n > 6 {
                return Err(UsageError(format!(
                    "--n {n} is past the built-in enumeration limit of 6; supply --input instead"
                )));
            }
            all_labeled_graphs(n)?.collect()
        }
        (None, Some(_)) => {
            let text = read_source(&input)?;
            let mut graphs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim_end();
                if line.is_empty() {
                    continue;
                }
                let g = parse_graph6(line)
                    .map_err(|e| UsageError(format!("graph6 line {}: {e}", i + 1)))?;
                graphs.push(g);
            }
            graphs
        }
        (None, None) => {
            return Err(UsageError(
                "survey needs a source: --n for built-in enumeration or --input for graph6".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap marks the flags as conflicting"),
    };
    let options = SurveyOptions {
        ks,
        connected_only,
        dedupe_isomorphic: dedupe,
    };
    let report = survey(graphs, &options)?;
    match &out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| UsageError(format!("creating {}: {e}", path.display())))?;
            report
                .write_csv(&mut file)
                .map_err(|e| UsageError(format!("writing {}: {e}", path.display())))?;
            println!("{}", survey_summary(&report));
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report
                .write_csv(&mut lock)
                .map_err(|e| UsageError(format!("writing csv: {e}")))?;
            lock.flush().ok();
            eprintln!("{}", survey_summary(&report));
        }
    }
    Ok(report.is_clean())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            theorem,
            k,
            family,
            format,
            input,
        } => cmd_check(theorem, k, family, format, &input),
        Command::Hamilton { format, input } => cmd_hamilton(format, &input),
        Command::Tree { k, format, input } => cmd_tree(k, format, &input),
        Command::Oracle { kind, input } => cmd_oracle(kind, &input),
        Command::Survey {
            n,
            input,
            ks,
            connected_only,
            dedupe,
            out,
        } => cmd_survey(n, input, ks, connected_only, dedupe, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
