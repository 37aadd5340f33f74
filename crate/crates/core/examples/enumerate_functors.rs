// Exhaustive functor enumeration with a node budget.

use std::sync::Arc;

use fincat::search::{enumerate_autoequivalences, enumerate_automorphisms, enumerate_functors};
use fincat::{catalog, Error, SearchOptions};

pub fn run_example() -> fincat::Result<()> {
    let p4 = Arc::new(catalog::p4());
    let opts = SearchOptions::default();
    let endo = enumerate_functors(&p4, &p4, opts)?;
    let equiv = enumerate_autoequivalences(&p4, opts)?;
    let auts = enumerate_automorphisms(&p4, opts)?;
    println!(
        "P4: {} endofunctors, {} autoequivalences, {} automorphisms ({} nodes)",
        endo.functors.len(),
        equiv.functors.len(),
        auts.functors.len(),
        endo.nodes_visited
    );
    for f in &auts.functors {
        println!("  automorphism {}", f.describe_objects());
    }

    // Parallel search returns the same list in the same order.
    let parallel = enumerate_functors(&p4, &p4, opts.workers(4))?;
    assert_eq!(parallel.functors, endo.functors);

    match enumerate_functors(&p4, &p4, SearchOptions::with_budget(5)) {
        Err(Error::BudgetExceeded { budget, visited }) => {
            println!("budget {budget} exceeded after {visited} nodes")
        }
        other => panic!("expected a budget error, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
