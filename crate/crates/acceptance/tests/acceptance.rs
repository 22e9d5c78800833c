//! One PASS/FAIL line per acceptance criterion. Seed 7 and 100 000 samples
//! per sampling criterion; tolerances are the ones fixed in `dyck_shift::verify`.

use std::process::ExitCode;
use std::time::Instant;

use dyck_shift::verify::{Session, VerifyOptions};

fn main() -> ExitCode {
    let options = VerifyOptions::default();
    println!(
        "acceptance: seed {}, {} samples per sampling criterion",
        options.seed, options.samples
    );
    let mut session = Session::new(options);
    let start = Instant::now();
    let mut passed = 0;
    for id in 1..=10u8 {
        let r = session.run(id);
        let sigma = r
            .sigma
            .map(|s| format!(" max {s:.2}σ;"))
            .unwrap_or_default();
        println!(
            "{} criterion {:>2} {}:{} observed {}; required {} ({:.1}s)",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            sigma,
            r.observed,
            r.expected,
            r.elapsed.as_secs_f64()
        );
        for d in &r.details {
            println!("      {d}");
        }
        passed += usize::from(r.passed);
    }
    println!(
        "acceptance: {passed}/10 passed in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if passed == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
