// Promoting an equivalence to an isomorphism naturally isomorphic to it.

use std::sync::Arc;

use fincat::equivalence::{promote_to_isomorphism, PromotionResult};
use fincat::search::enumerate_autoequivalences;
use fincat::{catalog, FinFunctor, SearchOptions};

pub fn run_example() -> fincat::Result<()> {
    // Collapsing x and y onto x is an equivalence; classes have equal sizes.
    let pair = Arc::new(catalog::isopair());
    let collapse = FinFunctor::from_object_map(pair.clone(), pair.clone(), vec![0, 0])?;
    match promote_to_isomorphism(&collapse)? {
        PromotionResult::Promoted { phi, tau } => {
            println!("isopair collapse promoted to {}", phi.describe_objects());
            println!("  comparison {}", serde_json::to_string(&tau.to_json()).expect("json"));
        }
        PromotionResult::Obstructed(o) => panic!("unexpected obstruction {o:?}"),
    }

    // In E3 every equivalence swapping the classes is obstructed.
    let e3 = Arc::new(catalog::e3());
    for pi in enumerate_autoequivalences(&e3, SearchOptions::default())?.functors {
        let outcome = promote_to_isomorphism(&pi)?;
        let obstructions: Vec<String> = outcome.obstructions().iter().map(|o| o.to_string()).collect();
        println!("E3 {}: {:?}", pi.describe_objects(), obstructions);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
