use std::process::ExitCode;

use lsmult::acceptance::{run_acceptance, AcceptanceConfig};

fn main() -> ExitCode {
    let report = run_acceptance(&AcceptanceConfig::default()).expect("default config is valid");
    for r in &report.results {
        println!(
            "{} criterion {:>2} ({}) [{} ms]: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed_ms,
            r.detail
        );
    }
    let failed: Vec<u8> = report.results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", report.results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
