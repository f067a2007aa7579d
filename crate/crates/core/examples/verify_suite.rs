//! Run the oracle suite from the library and inspect individual reports.
//!
//! ```bash
//! cargo run -p scmub --example verify_suite           # smoke
//! cargo run -p scmub --example verify_suite -- full   # full depth
//! ```

use scmub::verify::{hemisphere_form_check, zero_discord_usefulness_check};
use scmub::{full_suite, BellDiagonalState, Level};

fn main() {
    let level = match std::env::args().nth(1).as_deref() {
        Some("full") => Level::Full,
        _ => Level::Smoke,
    };

    // single checks are plain functions returning structured reports
    let single = hemisphere_form_check(&BellDiagonalState::new(0.7, -0.2, 0.4), 64);
    println!(
        "{}: observed {:.12}, expected {:.12}, passed {}",
        single.name, single.observed[0], single.expected[0], single.passed
    );
    let single = zero_discord_usefulness_check(0.8);
    println!("{}: {}\n", single.name, single.note);

    // the full suite runs everything in parallel and sorts by name
    let suite = full_suite(42, level);
    let mut failed = 0;
    for check in &suite.checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        if !check.passed {
            failed += 1;
        }
        println!("[{tag}] {:<34} ({:.2}s)", check.name, check.runtime_s);
    }
    println!(
        "\n{}/{} checks passed at level {}",
        suite.checks.len() - failed,
        suite.checks.len(),
        suite.level
    );
    std::process::exit(i32::from(failed > 0));
}
