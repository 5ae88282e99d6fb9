//! Full acceptance corpus: one line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use exactsign::suites::{run_criterion, run_suite, CheckResult, Suite, SuiteConfig};

fn main() -> ExitCode {
    let config = SuiteConfig::default();
    let start = Instant::now();
    let mut checks: Vec<CheckResult> = Vec::new();
    for criterion in 1..=11u8 {
        match criterion {
            6 => match run_suite(Suite::Planar76, &config) {
                Ok(report) => checks.extend(report.checks),
                Err(e) => {
                    println!("FAIL [ 6] planar suite aborted: {e}");
                    println!("FAIL [ 7] planar suite aborted: {e}");
                }
            },
            7 => {}
            c => match run_criterion(c, &config) {
                Ok(check) => checks.push(check),
                Err(e) => println!("FAIL [{c:>2}] aborted: {e}"),
            },
        }
        for check in checks.iter().filter(|c| c.criterion == criterion) {
            println!("{}", check.line());
            if !check.summary.is_null() {
                println!("       {}", check.summary);
            }
            for f in &check.failures {
                println!("       {f}");
            }
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    println!("acceptance: {passed}/11 criteria passed in {:.1} s", start.elapsed().as_secs_f64());
    if passed == 11 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
