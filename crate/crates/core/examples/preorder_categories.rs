// Preorders as thin categories, and the catalog of named examples.

use fincat::category::from_preorder;
use fincat::catalog;

pub fn run_example() -> fincat::Result<()> {
    let elements: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let le = vec![("x".to_string(), "y".to_string()), ("y".to_string(), "z".to_string())];
    let closed = from_preorder(&elements, &le, true)?;
    // Reflexive and transitive pairs are added: x<=z appears.
    assert!(closed.morphism_index("x->z").is_some());
    println!("closed chain has {} morphisms", closed.morphism_count());

    // Without closure the missing pairs are an error.
    let err = from_preorder(&elements, &le, false).unwrap_err();
    println!("unclosed: {err}");

    let p4 = catalog::p4();
    let classes = p4.iso_classes();
    for class in &classes.classes {
        let names: Vec<&str> = class.iter().map(|&o| p4.object_name(o)).collect();
        println!("P4 class {names:?}");
    }
    assert_eq!(p4.morphism_count(), 9);
    assert_eq!(catalog::preorders(3).len(), 29);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
