//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! A failing criterion listed in `KNOWN_UNATTAINABLE` is reported as FAIL
//! with its analysis but does not fail the run; any other failure does.

use cubeword::cli::suite::{run_suite, KNOWN_UNATTAINABLE};

fn main() {
    println!("running acceptance criteria");
    let results = run_suite(&mut |r| println!("{}", r.line()));
    let passed = results.iter().filter(|r| r.passed).count();
    let known: Vec<u8> = results.iter().filter(|r| !r.passed && r.known_blocker().is_some()).map(|r| r.id).collect();
    let unexpected: Vec<u8> =
        results.iter().filter(|r| !r.passed && r.known_blocker().is_none()).map(|r| r.id).collect();
    println!(
        "acceptance: {passed}/{} passed; known unattainable failing {known:?} (listed {:?}); unexpected failures {unexpected:?}",
        results.len(),
        KNOWN_UNATTAINABLE.iter().map(|(id, _)| *id).collect::<Vec<_>>()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
