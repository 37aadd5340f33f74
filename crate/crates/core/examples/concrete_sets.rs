// Concrete categories: condition (*), a representing object for the
// underlying-set functor, and transport of autoequivalences to automorphisms
// that fix every underlying set.

use fincat::concrete::{
    automorphism_via_representation, check_star_condition, find_representation, DEFAULT_SIZE_CAP,
};
use fincat::search::enumerate_autoequivalences;
use fincat::{catalog, SearchOptions};

pub fn run_example() -> fincat::Result<()> {
    let k = catalog::finset(&[1, 2, 2])?;
    let c = k.cat().clone();
    println!("finset:1,2,2 has {} morphisms", c.morphism_count());

    let failures = check_star_condition(&k, DEFAULT_SIZE_CAP)?;
    println!("condition (*) holds: {}", failures.is_empty());

    let singleton = c.object_index("s0").expect("s0");
    let rep = find_representation(&k, singleton, DEFAULT_SIZE_CAP)?.expect("Hom(1, -) represents Q");
    println!("Q is represented by {}", c.object_name(rep.witness_object));

    let autos = enumerate_autoequivalences(&c, SearchOptions::default())?;
    for pi in &autos.functors {
        let (_, built) = automorphism_via_representation(&k, pi, singleton, DEFAULT_SIZE_CAP)?;
        println!("  {} ~ {}", pi.describe_objects(), built.functor.describe_objects());
        for a in 0..c.object_count() {
            assert_eq!(k.underlying(built.functor.obj(a)), k.underlying(a));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
