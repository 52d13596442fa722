use std::process::ExitCode;
use std::time::Instant;

use qonkit::acceptance::{run_criterion, DEFAULT_SEED};

/// Runtime budget for the braid criterion.
const BRAID_SECONDS: f64 = 10.0;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=10u8 {
        let start = Instant::now();
        let report = run_criterion(id, DEFAULT_SEED).expect("criteria 1..=10 exist");
        let secs = start.elapsed().as_secs_f64();
        let mut passed = report.passed;
        println!("{}", report.summary_line());
        if id == 1 {
            let ok = secs < BRAID_SECONDS;
            println!(
                "       runtime {secs:.2} s (budget {BRAID_SECONDS} s): {}",
                if ok { "ok" } else { "over budget" }
            );
            passed &= ok;
        }
        for c in report.checks.iter().filter(|c| !c.passed) {
            println!("       failed: {} = {:e} > {:e}", c.label, c.value, c.tol);
        }
        for n in &report.notes {
            println!("       note: {n}");
        }
        if !passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
