//! Prints one line per acceptance criterion with its pinned tolerance and
//! residuals, then exits non-zero if any criterion fails.

use std::process::ExitCode;

use minimorph::suite::{acceptance_checks, RunConfig, Verdict};

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let checks = acceptance_checks(&cfg);
    assert_eq!(checks.len(), 10);
    println!("acceptance (seed {})", cfg.seed);
    for c in &checks {
        let mark = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        };
        println!("{mark} {}", c.line());
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.verdict == Verdict::Fail)
        .map(|c| c.name.as_str())
        .collect();
    println!(
        "acceptance: {} of {} criteria pass",
        checks.len() - failed.len(),
        checks.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
