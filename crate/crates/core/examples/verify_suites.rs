//! Runs every randomized verification suite at a small size.

use bcz::cli::{verify, Suite};

fn main() {
    let report = verify(Suite::All, 10, 1);
    for r in &report.results {
        println!("{:<16} cases {:>4} checks {:>6} failures {}", r.suite, r.cases, r.checks, r.failures.len());
    }
    println!("pass: {}", report.pass);
}
