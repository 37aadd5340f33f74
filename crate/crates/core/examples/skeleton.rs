// The skeleton, the chosen isomorphisms u_A and the retraction ν.

use std::sync::Arc;

use fincat::catalog;
use fincat::natural::are_naturally_isomorphic;
use fincat::skeleton::compute_skeleton;
use fincat::FinFunctor;

pub fn run_example() -> fincat::Result<()> {
    let c = Arc::new(catalog::p4());
    let sk = compute_skeleton(&c)?;
    let reps: Vec<&str> = sk.representatives().iter().map(|&o| c.object_name(o)).collect();
    println!("representatives {reps:?}");
    for a in 0..c.object_count() {
        println!("  u_{} = {}", c.object_name(a), c.morphism_name(sk.u(a)));
    }
    println!("ν: {}", sk.nu().describe_objects());

    let witness = sk.verify_nu_inner()?;
    assert!(witness.is_natural_isomorphism());
    assert!(are_naturally_isomorphic(&FinFunctor::identity(c.clone()), sk.nu())?);
    println!("{}", serde_json::to_string_pretty(&sk.to_json()).expect("json"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
