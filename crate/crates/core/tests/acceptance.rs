//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;

use rhospace::properties::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let results = run_all(DEFAULT_SEED);
    assert_eq!(results.len(), 12, "the suite has twelve criteria");
    for r in &results {
        println!("{}  [{:.3} s]", r.line(), r.elapsed.as_secs_f64());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {} failed", results.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
