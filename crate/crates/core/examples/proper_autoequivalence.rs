// Deciding whether a category has a proper autoequivalence, with the
// class-size criterion and the brute-force oracle side by side.

use fincat::equivalence::{has_proper_autoequivalence, uniform_class_check, Mode};
use fincat::{catalog, SearchOptions};

pub fn run_example() -> fincat::Result<()> {
    for name in ["p4", "e3", "isopair", "discrete:3", "finset:1,2,2"] {
        let c = catalog::catalog(name)?.category();
        let analysis = has_proper_autoequivalence(&c, Mode::Both, SearchOptions::default())?;
        println!(
            "{name:>12}: {:<9} criterion={:?} oracle={:?} uniform={}",
            analysis.verdict.as_str(),
            analysis.criterion.map(|v| v.as_str()),
            analysis.oracle.map(|v| v.as_str()),
            uniform_class_check(&c)
        );
        if let Some(w) = &analysis.witness {
            println!("{:>14}witness {}", "", w.describe_objects());
            for o in &analysis.obstructions {
                println!("{:>14}obstruction {o}", "");
            }
        }
        assert_eq!(analysis.agreement(), Some(true));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
