//! One pass/fail line per acceptance criterion. Sub-checks listed in
//! `suite::KNOWN_UNATTAINABLE` are reported but do not fail the test.

use siegel_core::suite::{self, CriterionResult, DEFAULT_SEED};

fn main() {
    let results: Vec<CriterionResult> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=10).map(|id| s.spawn(move || suite::run_criterion(id, DEFAULT_SEED))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut unexpected = Vec::new();
    for r in &results {
        println!("{}", r.line());
        for f in r.failures() {
            if suite::is_known_unattainable(f) {
                println!("    known unattainable: {f}");
            } else {
                println!("    FAILED: {f}");
                unexpected.push(format!("criterion {}: {f}", r.id));
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:#?}");
        std::process::exit(1);
    }
}
