// Endomorphism monoids of single objects and monoid isomorphism search.

use fincat::catalog;
use fincat::monoid::{end_monoid_of_object, is_monoid_isomorphism, monoids_isomorphic, DEFAULT_MONOID_CAP};

pub fn run_example() -> fincat::Result<()> {
    let k = catalog::finset(&[1, 2, 2])?;
    let c = k.cat();
    let monoids: Vec<_> = (0..c.object_count()).map(|o| end_monoid_of_object(c, o)).collect();
    for (o, m) in monoids.iter().enumerate() {
        println!("END({}) has order {}", c.object_name(o), m.order());
    }
    let map = monoids_isomorphic(&monoids[1], &monoids[2], DEFAULT_MONOID_CAP)?
        .expect("two-element sets have isomorphic END monoids");
    assert!(is_monoid_isomorphism(&monoids[1], &monoids[2], &map));
    for (x, &y) in map.iter().enumerate() {
        println!("  {} -> {}", monoids[1].elements()[x], monoids[2].elements()[y]);
    }
    assert_eq!(monoids_isomorphic(&monoids[0], &monoids[1], DEFAULT_MONOID_CAP)?, None);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
