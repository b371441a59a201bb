//! Randomized property checks, including the negative control.

use diffmod::cli::selftest::{selftest, selftest_with, SelftestOptions};

fn main() {
    let report = selftest(0, 25);
    for p in &report.properties {
        println!("{:<24} {} failures in {} cases", p.name, p.failures, p.cases);
    }
    println!("passed: {}", report.passed);

    let broken = selftest_with(&SelftestOptions {
        seed: 0,
        count: 5,
        corrupt_derivation: true,
    });
    for p in broken.properties.iter().filter(|p| p.failures > 0) {
        println!("broken rule caught by {}: {}", p.name, p.witness.as_deref().unwrap_or(""));
    }
}
