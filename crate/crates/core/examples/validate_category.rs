// Build a category from explicit data and inspect validation failures.

use fincat::category::{RawCategory, Violation};
use fincat::FinCat;

pub fn run_example() -> fincat::Result<()> {
    // a -> b -> c with the composite given.
    let chain = RawCategory::new()
        .object("a")
        .object("b")
        .object("c")
        .morphism("f", "a", "b")
        .morphism("g", "b", "c")
        .morphism("h", "a", "c")
        .composite("f", "g", "h")
        .validate()?;
    println!(
        "chain: {} objects, {} morphisms (identities included)",
        chain.object_count(),
        chain.morphism_count()
    );
    assert_eq!(chain.morphism_count(), 6);
    assert_eq!(chain.then(&[0, 3, 4]), 5);

    // Leaving out the composite is reported, not silently repaired.
    let raw = RawCategory::new()
        .object("a")
        .object("b")
        .object("c")
        .morphism("f", "a", "b")
        .morphism("g", "b", "c");
    match FinCat::validate(&raw) {
        Err(report) => {
            for v in &report.violations {
                println!("violation: {v}");
            }
            assert!(matches!(report.violations[0], Violation::MissingComposite { .. }));
        }
        Ok(_) => panic!("expected a violation report"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
