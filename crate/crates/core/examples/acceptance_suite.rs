// Running the acceptance battery and reading its summary.

use fincat::suite::{run_suite, Scope};
use fincat::SearchOptions;

pub fn run_example() -> fincat::Result<()> {
    let report = run_suite(Scope::Fast, SearchOptions::default().workers(2))?;
    for line in report.summary_lines() {
        println!("{line}");
    }
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
