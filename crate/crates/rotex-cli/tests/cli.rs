//! End-to-end tests of the `rotex` binary: every documented example, the
//! exit-code contract, input autodetection, and JSON rendering.

use std::io::Write as _;
use std::process::{Command, Stdio};

use serde_json::Value;

const K4_EDGES: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const C5_EDGES: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";
const C6_EDGES: &str = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
const STAR3_EDGES: &str = "4 3\n0 1\n0 2\n0 3\n";
const STAR5_EDGES: &str = "6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n";
const PETERSEN_G6: &str = "IsP@OkWHG";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn rotex(args: &[&str], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rotex"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    if let Some(text) = stdin {
        // A child that rejects its arguments exits without reading stdin;
        // the resulting broken pipe is not a failure of the test.
        match child
            .stdin
            .as_mut()
            .expect("stdin piped")
            .write_all(text.as_bytes())
        {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            Err(e) => panic!("stdin write failed: {e}"),
        }
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("binary exits");
    Run {
        code: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    }
}

fn parse_single_json(stdout: &str) -> Value {
    serde_json::from_str(stdout.trim()).expect("stdout parses as one JSON document")
}

// --- check ---------------------------------------------------------------

#[test]
fn check_theorem_1_on_k4_is_vacuously_satisfied() {
    let run = rotex(&["check", "--theorem", "1"], Some(K4_EDGES));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("satisfied (vacuous)"), "{}", run.stdout);
}

#[test]
fn check_theorem_2_k3_on_star_is_satisfied() {
    let run = rotex(&["check", "--theorem", "2", "--k", "3"], Some(STAR3_EDGES));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("verdict: satisfied"), "{}", run.stdout);
    assert!(!run.stdout.contains("vacuous"), "{}", run.stdout);
}

#[test]
fn check_theorem_1_on_c5_reports_the_0_2_violation() {
    let run = rotex(&["check", "--theorem", "1"], Some(C5_EDGES));
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("verdict: violated"), "{}", run.stdout);
    assert!(
        run.stdout.contains("pair (0, 2), degree sum 4 < 5"),
        "{}",
        run.stdout
    );
}

#[test]
fn check_rejects_k_with_theorem_1() {
    let run = rotex(&["check", "--theorem", "1", "--k", "2"], Some(K4_EDGES));
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("--theorem 2"), "{}", run.stderr);
}

#[test]
fn check_requires_k_with_theorem_2() {
    let run = rotex(&["check", "--theorem", "2"], Some(K4_EDGES));
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("--k"), "{}", run.stderr);
}

#[test]
fn check_rejects_theorem_numbers_outside_the_range() {
    let run = rotex(&["check", "--theorem", "3"], Some(K4_EDGES));
    assert_eq!(run.code, 2);
}

#[test]
fn check_corollary_family_agrees_with_five_on_c5() {
    let five = rotex(&["check", "--theorem", "1"], Some(C5_EDGES));
    let corollary = rotex(
        &["check", "--theorem", "1", "--family", "corollary"],
        Some(C5_EDGES),
    );
    assert_eq!(five.code, corollary.code);
    let strip = |s: &str| {
        s.lines()
            .filter(|l| l.starts_with("violation:"))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&five.stdout), strip(&corollary.stdout));
}

#[test]
fn check_json_is_one_document_with_every_text_field() {
    let run = rotex(
        &["check", "--theorem", "1", "--format", "json"],
        Some(C5_EDGES),
    );
    assert_eq!(run.code, 1);
    let doc = parse_single_json(&run.stdout);
    assert_eq!(doc["command"], "check");
    assert_eq!(doc["theorem"], 1);
    assert_eq!(doc["family"], "five");
    let report = &doc["report"];
    assert_eq!(report["satisfied"], false);
    assert_eq!(report["threshold"], 5);
    assert_eq!(report["vacuous"], false);
    let violations = report["violations"].as_array().expect("violation array");
    assert!(!violations.is_empty());
    let first = &violations[0];
    assert_eq!(first["pair"], serde_json::json!([0, 2]));
    assert_eq!(first["degree_sum"], 4);
    let occurrence = &first["occurrence"];
    assert_eq!(occurrence["pattern"], "P_4");
    assert!(occurrence["subset"].is_array());
    assert!(report["precondition_failures"].as_array().is_some());
}

#[test]
fn check_json_on_a_satisfied_graph_reports_vacuity() {
    let run = rotex(
        &["check", "--theorem", "2", "--k", "3", "--format", "json"],
        Some(STAR3_EDGES),
    );
    assert_eq!(run.code, 0);
    let doc = parse_single_json(&run.stdout);
    assert_eq!(doc["k"], 3);
    assert_eq!(doc["report"]["satisfied"], true);
    assert_eq!(doc["report"]["vacuous"], false);
    assert_eq!(doc["report"]["threshold"], 2);
}

// --- hamilton ------------------------------------------------------------

#[test]
fn hamilton_on_c6_prints_a_spanning_cycle() {
    let run = rotex(&["hamilton"], Some(C6_EDGES));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout.trim(), "cycle: 0 1 2 3 4 5");
}

#[test]
fn hamilton_on_petersen_graph6_prints_a_witness() {
    let run = rotex(&["hamilton"], Some(PETERSEN_G6));
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("witness: pattern"), "{}", run.stdout);
    assert!(run.stdout.contains("degree sum 6 < 10"), "{}", run.stdout);
}

#[test]
fn hamilton_witness_json_carries_every_text_field() {
    let run = rotex(&["hamilton", "--format", "json"], Some(PETERSEN_G6));
    assert_eq!(run.code, 1);
    let doc = parse_single_json(&run.stdout);
    assert_eq!(doc["command"], "hamilton");
    assert_eq!(doc["outcome"], "witness");
    let witness = &doc["witness"];
    assert_eq!(witness["kind"], "PATTERN_PAIR");
    assert!(witness["pattern"].is_string());
    assert!(witness["subset"].is_array());
    assert!(witness["pair"].is_array());
    assert_eq!(witness["threshold"], 10);
    assert!(witness["degree_sum"].as_u64().expect("degree sum") < 10);
}

#[test]
fn hamilton_cycle_json_lists_the_vertex_sequence() {
    let run = rotex(&["hamilton", "--format", "json"], Some(C6_EDGES));
    assert_eq!(run.code, 0);
    let doc = parse_single_json(&run.stdout);
    assert_eq!(doc["outcome"], "cycle");
    assert_eq!(doc["cycle"]["vertices"], serde_json::json!([0, 1, 2, 3, 4, 5]));
}

#[test]
fn hamilton_settles_degenerate_orders_exhaustively() {
    let one = rotex(&["hamilton"], Some("@"));
    assert_eq!(one.code, 0);
    assert!(one.stdout.contains("cycle: 0 (order 1)"), "{}", one.stdout);

    let edge = rotex(&["hamilton"], Some("A_"));
    assert_eq!(edge.code, 0);
    assert!(edge.stdout.contains("cycle: 0 1 (order 2)"), "{}", edge.stdout);

    let bare = rotex(&["hamilton"], Some("A?"));
    assert_eq!(bare.code, 1);
    assert!(bare.stdout.contains("no spanning cycle"), "{}", bare.stdout);
}

// --- tree ----------------------------------------------------------------

#[test]
fn tree_k5_on_star5_prints_a_five_leaf_tree() {
    let run = rotex(&["tree", "--k", "5"], Some(STAR5_EDGES));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("tree: 5 leaves (budget 5)"), "{}", run.stdout);
    assert_eq!(
        run.stdout.lines().filter(|l| l.starts_with("edge: ")).count(),
        5
    );
}

#[test]
fn tree_k2_on_star5_prints_a_witness() {
    let run = rotex(&["tree", "--k", "2"], Some(STAR5_EDGES));
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("witness: pattern"), "{}", run.stdout);
    assert!(run.stdout.contains("< 5"), "{}", run.stdout);
}

#[test]
fn tree_json_carries_edges_and_leaf_count() {
    let run = rotex(&["tree", "--k", "5", "--format", "json"], Some(STAR5_EDGES));
    assert_eq!(run.code, 0);
    let doc = parse_single_json(&run.stdout);
    assert_eq!(doc["command"], "tree");
    assert_eq!(doc["k"], 5);
    assert_eq!(doc["outcome"], "tree");
    assert_eq!(doc["tree"]["leaf_count"], 5);
    assert_eq!(doc["tree"]["edges"].as_array().expect("edge array").len(), 5);
}

#[test]
fn tree_rejects_leaf_budgets_below_two() {
    let run = rotex(&["tree", "--k", "1"], Some(STAR5_EDGES));
    assert_eq!(run.code, 2);
}

// --- oracle --------------------------------------------------------------

#[test]
fn oracle_hamilton_on_petersen_answers_none() {
    let run = rotex(&["oracle", "hamilton"], Some(PETERSEN_G6));
    assert_eq!(run.code, 1);
    assert_eq!(run.stdout.trim(), "none");
}

#[test]
fn oracle_minleaf_on_a_claw_answers_three() {
    let run = rotex(&["oracle", "minleaf"], Some(STAR3_EDGES));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout.trim(), "3");
}

#[test]
fn oracle_longestpath_on_c6_covers_all_six_vertices() {
    let run = rotex(&["oracle", "longestpath"], Some(C6_EDGES));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.starts_with("order 6:"), "{}", run.stdout);
}

#[test]
fn oracle_budget_breach_is_a_usage_error() {
    let big = format!("M{}", "?".repeat(16)); // 14 vertices, no edges
    let run = rotex(&["oracle", "minleaf"], Some(&big));
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("budget"), "{}", run.stderr);
}

// --- survey --------------------------------------------------------------

#[test]
fn survey_n4_writes_sixty_four_rows() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = dir.path().join("n4.csv");
    let run = rotex(
        &["survey", "--n", "4", "--k", "2,3", "--out", out.to_str().expect("utf-8 path")],
        None,
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let csv = std::fs::read_to_string(&out).expect("csv written");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 65, "header plus one row per labeled graph");
    assert!(lines[0].starts_with("graph6,n,connected,"), "{}", lines[0]);
    assert!(!csv.contains('\r'), "LF line endings only");
}

#[test]
fn survey_rejects_built_in_enumeration_above_six() {
    let run = rotex(&["survey", "--n", "9"], None);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("--input"), "{}", run.stderr);
}

#[test]
fn survey_accepts_a_graph6_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let g6 = dir.path().join("petersen.g6");
    std::fs::write(&g6, format!("{PETERSEN_G6}\n")).expect("fixture written");
    let out = dir.path().join("petersen.csv");
    let run = rotex(
        &[
            "survey",
            "--input",
            g6.to_str().expect("utf-8 path"),
            "--k",
            "2",
            "--out",
            out.to_str().expect("utf-8 path"),
        ],
        None,
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let csv = std::fs::read_to_string(&out).expect("csv written");
    assert_eq!(csv.lines().count(), 2);
    let row = csv.lines().nth(1).expect("data row");
    assert!(row.starts_with("IsP@OkWHG,10,true,"), "{}", row);
    assert!(row.ends_with(",ok"), "{}", row);
}

#[test]
fn survey_refuses_both_sources_at_once() {
    let run = rotex(&["survey", "--n", "4", "--input", "x.g6"], None);
    assert_eq!(run.code, 2);
}

#[test]
fn survey_needs_some_source() {
    let run = rotex(&["survey"], None);
    assert_eq!(run.code, 2);
}

#[test]
fn survey_csv_goes_to_stdout_without_out_flag() {
    let run = rotex(&["survey", "--n", "2"], None);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout.lines().count(), 3, "header plus two rows");
    assert!(run.stderr.contains("rows 2"), "{}", run.stderr);
}

// --- input handling ------------------------------------------------------

#[test]
fn dash_reads_stdin_explicitly() {
    let run = rotex(&["hamilton", "-"], Some(C6_EDGES));
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout.trim(), "cycle: 0 1 2 3 4 5");
}

#[test]
fn file_paths_are_read_directly() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("c6.txt");
    std::fs::write(&path, C6_EDGES).expect("fixture written");
    let run = rotex(&["hamilton", path.to_str().expect("utf-8 path")], None);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout.trim(), "cycle: 0 1 2 3 4 5");
}

#[test]
fn autodetection_separates_graph6_from_edge_lists() {
    // A space-free line in the printable range parses as graph6 (K4)…
    let g6 = rotex(&["check", "--theorem", "1"], Some("C~"));
    assert_eq!(g6.code, 0);
    assert!(g6.stdout.contains("vacuous"));
    // …whereas a header line with a space parses as an edge list.
    let edges = rotex(&["check", "--theorem", "1"], Some(K4_EDGES));
    assert_eq!(edges.code, 0);
}

#[test]
fn explicit_format_flags_override_autodetection() {
    // "1 0" autodetects as an edge list; --g6 forces the other reading,
    // which must fail because ' ' is outside the graph6 alphabet.
    let forced = rotex(&["hamilton", "--g6"], Some("1 0\n"));
    assert_eq!(forced.code, 2);
    // A graph6-looking token forced through the edge-list parser also fails.
    let forced = rotex(&["hamilton", "--edges"], Some("C~"));
    assert_eq!(forced.code, 2);
}

#[test]
fn format_flags_conflict_with_each_other() {
    let run = rotex(&["hamilton", "--g6", "--edges"], Some("C~"));
    assert_eq!(run.code, 2);
}

#[test]
fn unreadable_paths_and_empty_input_are_usage_errors() {
    let missing = rotex(&["hamilton", "/nonexistent/input.g6"], None);
    assert_eq!(missing.code, 2);
    let empty = rotex(&["hamilton"], Some(""));
    assert_eq!(empty.code, 2);
    assert!(empty.stderr.contains("empty input"), "{}", empty.stderr);
}

#[test]
fn malformed_graph6_reports_an_input_error() {
    let run = rotex(&["oracle", "hamilton"], Some("C~~~~"));
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("graph6"), "{}", run.stderr);
}
