//! Acceptance criteria 1 to 11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use etarho::verify::{run_suite, SuiteResult, SUITES};

const CIRCLE_BUDGET: Duration = Duration::from_secs(30);

fn line(id: u8, name: &str, passed: bool, note: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} [{status}] {name}: {note}");
}

fn summarize(r: &SuiteResult, elapsed: Duration) -> String {
    let mut note = format!("{}/{} checks in {:.2}s", r.checks - r.failed_checks, r.checks, elapsed.as_secs_f64());
    if let Some(first) = r.failures.first() {
        note.push_str(&format!("; first failure: {first}"));
    }
    note
}

fn to_json(r: &SuiteResult) -> String {
    serde_json::to_string(r).expect("suite result serializes")
}

fn main() -> ExitCode {
    let mut all = true;
    let mut first_run = Vec::new();
    for (id, name) in SUITES {
        let start = Instant::now();
        let r = run_suite(id);
        let elapsed = start.elapsed();
        let mut passed = r.passed;
        let mut note = summarize(&r, elapsed);
        if id == 1 && elapsed >= CIRCLE_BUDGET {
            passed = false;
            note.push_str(&format!("; over the {}s budget", CIRCLE_BUDGET.as_secs()));
        }
        line(id, name, passed, &note);
        all &= passed;
        first_run.push(r);
    }

    let start = Instant::now();
    let rerun: Vec<SuiteResult> = SUITES.iter().map(|&(id, _)| run_suite(id)).collect();
    let first_json: Vec<String> = first_run.iter().map(to_json).collect();
    let rerun_json: Vec<String> = rerun.iter().map(to_json).collect();
    let differing: Vec<u8> = first_json
        .iter()
        .zip(&rerun_json)
        .zip(&rerun)
        .filter(|((a, b), _)| a != b)
        .map(|(_, r)| r.id)
        .collect();
    let deterministic = differing.is_empty();
    let bytes: usize = rerun_json.iter().map(String::len).sum();
    let mut note = format!("rerun of suites 1-10 matches byte for byte ({bytes} bytes) in {:.2}s", start.elapsed().as_secs_f64());
    if !deterministic {
        note = format!("suites {differing:?} changed between runs");
    }
    line(11, "determinism", deterministic, &note);
    all &= deterministic;

    if all {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("some acceptance criteria failed");
        ExitCode::FAILURE
    }
}
