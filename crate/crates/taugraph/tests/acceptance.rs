//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Built without the libtest harness so the lines always reach stdout.

use std::process::ExitCode;

use taugraph::verify::{run_criterion, SUITES};

const SEED: u64 = 0;

fn main() -> ExitCode {
    let mut failures = 0;
    for id in 1..=SUITES.len() as u8 {
        match run_criterion(id, SEED) {
            Ok(r) => {
                println!("{}", r.line());
                println!("    {}", serde_json::to_string(&r.measured).expect("measured values serialise"));
                if !r.passed {
                    failures += 1;
                }
            }
            Err(e) => {
                println!("FAIL criterion {id}: {} (error: {e})", SUITES[id as usize - 1]);
                failures += 1;
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", SUITES.len() - failures, SUITES.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
