// Natural transformations between functors and the search for a natural
// isomorphism.

use std::sync::Arc;

use fincat::natural::{enumerate_nat_trans, find_natural_isomorphism};
use fincat::search::enumerate_endofunctors;
use fincat::{catalog, FinFunctor, SearchOptions};

pub fn run_example() -> fincat::Result<()> {
    let c = Arc::new(catalog::isopair());
    let id = FinFunctor::identity(c.clone());
    let endo = enumerate_endofunctors(&c, SearchOptions::default())?;
    for f in &endo.functors {
        let all = enumerate_nat_trans(&id, f)?;
        let iso = find_natural_isomorphism(&id, f)?;
        println!(
            "{}: {} transformations from Id, naturally isomorphic: {}",
            f.describe_objects(),
            all.len(),
            iso.is_some()
        );
        if let Some(tau) = iso {
            let back = tau.inverse().expect("components are isomorphisms");
            let round = tau.then(&back)?;
            assert_eq!(round.components(), fincat::NatTransformation::identity(&id).components());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
