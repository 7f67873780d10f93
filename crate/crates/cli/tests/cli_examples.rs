use std::collections::BTreeSet;
use std::process::{Command, Output};

use hopfsieve_cli::report::Report;
use hopfsieve_cli::{EXIT_EXHAUSTED, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use hopfsieve_core::fusion::EliminationVerdict;

fn hopfsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfsieve"))
        .args(args)
        .env_remove("HOPFSIEVE_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str], code: i32) -> Report {
    let out = hopfsieve(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn counts(r: &Report) -> Vec<Vec<(u64, u64)>> {
    r.types.iter().map(|t| t.solution.counts.iter().map(|(&d, &n)| (d, n)).collect()).collect()
}

#[test]
fn enumerate_examples() {
    let r = report(&["enumerate", "--p", "2", "--q", "5", "--g", "2", "--pin", "a=0"], EXIT_OK);
    assert_eq!(counts(&r), vec![vec![(2, 0), (4, 3), (5, 2)]]);
    let r = report(&["enumerate", "--p", "2", "--q", "5", "--g", "100"], EXIT_OK);
    assert_eq!(counts(&r), vec![vec![(2, 0), (4, 0), (5, 0)]]);
    let r = report(&["enumerate", "--p", "2", "--q", "7", "--g", "14", "--pin", "a=0"], EXIT_OK);
    assert!(r.types.is_empty());
}

#[test]
fn eliminate_examples() {
    let r = report(&["eliminate", "--type", "(1,2;4,3;5,2)", "--dim", "100"], EXIT_OK);
    assert_eq!(r.eliminations[0].elimination.verdict, EliminationVerdict::Infeasible);
    let r = report(&["eliminate", "--type", "(1,4;2,1)", "--dim", "8"], EXIT_OK);
    assert_eq!(r.eliminations[0].elimination.verdict, EliminationVerdict::Feasible);
    let r = report(&["eliminate", "--type", "(1,2;4,21;13,2)", "--dim", "676"], EXIT_OK);
    assert_eq!(r.eliminations[0].elimination.verdict, EliminationVerdict::Infeasible);
    assert_eq!(r.eliminations[0].elimination.total_nodes(), 0);
    let r = report(&["eliminate", "--type", "(1,2;4,15;11,2)", "--budget", "10"], EXIT_EXHAUSTED);
    assert_eq!(r.eliminations[0].elimination.verdict, EliminationVerdict::BudgetExceeded);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "--p", "3", "--q", "79"][..],
        &["classify", "--p", "4", "--q", "79"],
        &["eliminate", "--type", "(1,2;4,3;5,3)", "--dim", "100"],
        &["eliminate", "--type", "(4,3;1,2)"],
        &["eliminate", "--type", "(1,2;4,3;5,2)", "--budget", "0"],
        &["enumerate", "--p", "2", "--q", "5", "--g", "3"],
        &["enumerate", "--p", "2", "--q", "5", "--g", "2", "--pin", "z=1"],
        &["frobnicate"],
    ] {
        let out = hopfsieve(args);
        assert_eq!(out.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn classify_examples() {
    let r = report(&["classify", "--p", "2", "--q", "11"], EXIT_OK);
    assert_eq!(r.cases.len(), 9);
    assert!(r.findings.is_empty());
    let r = report(&["classify", "--p", "2", "--q", "3"], EXIT_OK);
    assert_eq!(r.cases.len(), 1);
    assert_eq!(r.cases[0].verdict.g_order, None);
    let r = report(&["classify", "--p", "3", "--q", "83"], EXIT_OK);
    assert_eq!(r.cases.len(), 9);
}

#[test]
fn json_reports_round_trip() {
    for args in [
        &["classify", "--p", "2", "--q", "7"][..],
        &["enumerate", "--p", "2", "--q", "13", "--g", "2"],
        &["eliminate", "--type", "(1,2;4,3;5,2)"],
    ] {
        let out = hopfsieve(args);
        let r: Report = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(r.to_json().as_bytes(), &out.stdout[..], "{args:?}");
    }
}

#[test]
fn markdown_and_json_carry_the_same_verdicts() {
    for q in ["5", "13", "17"] {
        let json = report(&["classify", "--p", "2", "--q", q, "--no-timings"], EXIT_OK);
        let out = hopfsieve(&["classify", "--p", "2", "--q", q, "--no-timings", "--format", "markdown"]);
        let md = String::from_utf8(out.stdout).unwrap();
        let from_json: BTreeSet<(String, String)> = json
            .cases
            .iter()
            .map(|c| (c.verdict.g_order.map_or("any".into(), |g| g.to_string()), c.verdict.outcome.to_string()))
            .collect();
        let from_md: BTreeSet<(String, String)> = md
            .lines()
            .skip_while(|l| !l.starts_with("| group-like order"))
            .skip(2)
            .take_while(|l| l.starts_with('|'))
            .map(|l| {
                let cells: Vec<&str> = l.split('|').map(str::trim).collect();
                (cells[1].to_string(), cells[2].to_string())
            })
            .collect();
        assert_eq!(from_json, from_md, "q = {q}");
    }
}

#[test]
fn output_destinations() {
    let dir = std::env::temp_dir().join(format!("hopfsieve-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hopfsieve"))
        .args(["classify", "--p", "2", "--q", "5", "--format", "markdown"])
        .env("HOPFSIEVE_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(dir.join("classify.md")).unwrap().contains("## Summary"));
    let file = dir.join("explicit.json");
    let out = hopfsieve(&["classify", "--p", "2", "--q", "5", "--output", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(r.cases.len(), 9);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_paper_with_a_tiny_budget_fails() {
    let r = report(&["verify-paper", "--budget", "10", "--no-timings"], EXIT_FAILURE);
    let failed: Vec<u32> = r.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.contains(&5), "{failed:?}");
    assert!(r.criteria.iter().any(|c| c.detail.contains("budget")));
}
