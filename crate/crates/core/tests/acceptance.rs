//! Runs every acceptance criterion and prints one line per criterion.
//!
//! Built without the libtest harness so the lines are always shown. Optional
//! numeric arguments select criteria: `cargo test --test acceptance -- 4 9`.
//! The process fails on any failed check except the documented printed-value
//! discrepancies, which are still reported as FAIL.

use std::process::ExitCode;

use multmoments::acceptance::{CRITERIA, KNOWN_DISCREPANCIES};

fn main() -> ExitCode {
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    let mut failed = 0;
    for criterion in CRITERIA.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        let report = criterion.run();
        println!("{}", report.line());
        if !report.passed {
            failed += 1;
        }
        for check in report.unexpected_failures() {
            eprintln!("unexpected failure in criterion {}: {}", report.id, check.name);
            unexpected += 1;
        }
    }
    println!("{failed} criteria failed; known printed-value discrepancies: {KNOWN_DISCREPANCIES:?}");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
