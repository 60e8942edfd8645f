//! Runs the acceptance suite and prints one line per criterion. Built
//! without the test harness so the lines always appear; exits nonzero if
//! any criterion fails.

use std::process::ExitCode;

use psun_core::acceptance::run_all;

fn main() -> ExitCode {
    let reports = run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", reports.len() - failed.len(), reports.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
