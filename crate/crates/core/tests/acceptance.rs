//! Acceptance suite: one line per numbered criterion, nonzero exit status if
//! any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use fibered_torsion::verify::{run, CheckResult, VerifyOptions};

const CRITERIA: [(u8, &str); 11] = [
    (1, "trefoil constancy"),
    (2, "trefoil eigenvalues"),
    (3, "torus cross-check"),
    (4, "figure-eight formula"),
    (5, "holonomy value"),
    (6, "epsilon0 values"),
    (7, "cohomology dimensions"),
    (8, "torsion core properties"),
    (9, "Wang identities"),
    (10, "dual-oracle agreement"),
    (11, "conjugation invariance"),
];

fn main() -> ExitCode {
    let results = run(&VerifyOptions::default());
    let mut by_criterion: BTreeMap<u8, Vec<&CheckResult>> = BTreeMap::new();
    for r in &results {
        if let Some(c) = r.criterion {
            by_criterion.entry(c).or_default().push(r);
        }
    }
    let mut failed = 0;
    for (n, name) in CRITERIA {
        let checks = by_criterion.get(&n).map(Vec::as_slice).unwrap_or_default();
        let passed = !checks.is_empty() && checks.iter().all(|r| r.passed);
        if !passed {
            failed += 1;
        }
        let detail: Vec<String> = checks
            .iter()
            .map(|r| format!("{}: {}", r.id, r.detail))
            .collect();
        println!(
            "criterion {n:>2} {:<4} {name} | {}",
            if passed { "PASS" } else { "FAIL" },
            detail.join(" | ")
        );
    }
    for r in results.iter().filter(|r| r.criterion.is_none()) {
        println!(
            "extra        {:<4} {} | {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed.min(CRITERIA.len()),
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
