// Reading and writing the JSON category file format.

use fincat::catalog;
use fincat::io::{canonical_text, load_str, CategoryFile};

pub fn run_example() -> fincat::Result<()> {
    let text = r#"{
        "format_version": 1,
        "preorder": {"elements": ["e", "f", "a"], "le": [["e", "a"], ["a", "e"]]}
    }"#;
    let loaded = load_str(text)?;
    assert_eq!(loaded.category.as_ref(), &catalog::e3());

    // The canonical form is explicit and survives a round trip byte for byte.
    let canonical = canonical_text(&loaded);
    assert_eq!(canonical_text(&load_str(&canonical)?), canonical);
    print!("{canonical}");

    let k = catalog::finset(&[1, 2])?;
    let file = CategoryFile::from_category(k.cat(), Some(&k));
    let reloaded = load_str(&file.to_canonical_string())?;
    assert_eq!(reloaded.concrete.as_ref(), Some(&k));
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
