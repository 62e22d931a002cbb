//! Acceptance run: one line per criterion. Thresholds live in
//! `quaddyn::verify` as named constants.
//!
//! The rational classification criterion asks for every Γ₀ label at least
//! five times among c of height ≤ 100. That is false at this height: the
//! smallest-height c with portrait 6(3) is −301/144, and 6(1,1), 6(2) and
//! 8(2,1,1) occur fewer than five times. The row is run unchanged and reported
//! as FAIL; the run only aborts if it fails in any other way.

use std::process::ExitCode;

use quaddyn::verify::{run_check, CheckRow};
use quaddyn::Catalog;

const CRITERIA: [&str; 10] = [
    "dynatomic-exact",
    "portrait-oracle",
    "rational-classification",
    "curve-realizations",
    "congruences",
    "density",
    "point-counts",
    "jacobian",
    "enumeration",
    "inequalities",
];

/// Known failure: the labels short of five hits at height 100.
const KNOWN_SHORT: &str = "below 5: [6(1,1), 6(2), 6(3), 8(2,1,1)]";

fn expected_failure(row: &CheckRow) -> bool {
    row.id == "rational-classification"
        && row.detail.contains("twelve-graph list holds")
        && row.detail.ends_with(KNOWN_SHORT)
}

fn main() -> ExitCode {
    let catalog = Catalog::load().expect("catalog loads");
    let mut unexpected = Vec::new();
    for (i, id) in CRITERIA.iter().enumerate() {
        let row = run_check(id, &catalog).expect("known check id");
        let status = if row.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {} ({} ms): {}",
            i + 1,
            row.id,
            row.elapsed_ms,
            row.detail
        );
        if !row.passed && !expected_failure(&row) {
            unexpected.push(row.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria behave as recorded");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        ExitCode::FAILURE
    }
}
