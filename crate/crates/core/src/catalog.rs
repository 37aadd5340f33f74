//! Named example categories.
//!
//! | name            | category                                                      |
//! |-----------------|---------------------------------------------------------------|
//! | `p4`            | preorder on a,b,c,d generated by a→b, a→c, c⇄d                |
//! | `e3`            | elements e, f, a with a ≅ e (e, f incomparable)               |
//! | `discrete:n`    | n objects, identities only                                    |
//! | `terminal`      | `discrete:1`                                                  |
//! | `empty`         | `discrete:0`                                                  |
//! | `isopair`       | x ⇄ y, mutually inverse                                       |
//! | `isopairs:k`    | k disjoint copies of `isopair`                                |
//! | `finset:n1,n2…` | concrete full category of finite sets of the given sizes     |

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{from_preorder, identity_id, FinCat, RawCategory};
use crate::concrete::ConcreteFinCat;
use crate::error::{Error, Result};

pub const DEFAULT_FINSET_MORPHISM_CAP: usize = 2048;

#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Plain(FinCat),
    Concrete(ConcreteFinCat),
}

impl CatalogEntry {
    pub fn category(&self) -> Arc<FinCat> {
        match self {
            CatalogEntry::Plain(c) => Arc::new(c.clone()),
            CatalogEntry::Concrete(k) => k.cat().clone(),
        }
    }

    pub fn concrete(&self) -> Option<&ConcreteFinCat> {
        match self {
            CatalogEntry::Plain(_) => None,
            CatalogEntry::Concrete(k) => Some(k),
        }
    }
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
    items
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect()
}

pub fn p4() -> FinCat {
    from_preorder(
        &strings(&["a", "b", "c", "d"]),
        &pairs(&[("a", "b"), ("a", "c"), ("c", "d"), ("d", "c")]),
        true,
    )
    .expect("P4 is a preorder")
}

pub fn e3() -> FinCat {
    from_preorder(
        &strings(&["e", "f", "a"]),
        &pairs(&[("e", "a"), ("a", "e")]),
        true,
    )
    .expect("E3 is a preorder")
}

pub fn discrete(n: usize) -> FinCat {
    let raw = RawCategory {
        objects: (0..n).map(|i| format!("o{i}")).collect(),
        ..RawCategory::default()
    };
    FinCat::validate(&raw).expect("discrete categories are valid")
}

pub fn isopair() -> FinCat {
    isopairs(1)
}

/// `k` disjoint copies of x ⇄ y. A single copy uses the names `x`, `y`;
/// otherwise copies are suffixed `x0`, `y0`, `x1`, ...
pub fn isopairs(k: usize) -> FinCat {
    let mut raw = RawCategory::default();
    for i in 0..k {
        let suffix = if k == 1 { String::new() } else { i.to_string() };
        let (x, y) = (format!("x{suffix}"), format!("y{suffix}"));
        let (xy, yx) = (format!("{x}->{y}"), format!("{y}->{x}"));
        raw.objects.push(x.clone());
        raw.objects.push(y.clone());
        raw = raw
            .morphism(xy.clone(), x.clone(), y.clone())
            .morphism(yx.clone(), y.clone(), x.clone())
            .composite(xy.clone(), yx.clone(), identity_id(&x))
            .composite(yx, xy, identity_id(&y));
    }
    FinCat::validate(&raw).expect("isopairs are valid")
}

fn map_id(dom: &str, cod: &str, images: &[usize]) -> String {
    let body: Vec<String> = images.iter().map(|i| i.to_string()).collect();
    format!("{dom}->{cod}:{}", body.join(","))
}

/// Full concrete category of finite sets with the given sizes: objects `s0`,
/// `s1`, ... with elements `s0:0`, `s0:1`, ..., and every function between
/// them as a morphism. The identity function is the identity morphism.
pub fn finset(sizes: &[usize]) -> Result<ConcreteFinCat> {
    finset_with_cap(sizes, DEFAULT_FINSET_MORPHISM_CAP)
}

pub fn finset_with_cap(sizes: &[usize], cap: usize) -> Result<ConcreteFinCat> {
    let mut total: usize = 0;
    for &a in sizes {
        for &b in sizes {
            let count = (b as u128).checked_pow(a as u32).unwrap_or(u128::MAX);
            total = total.saturating_add(usize::try_from(count).unwrap_or(usize::MAX));
        }
    }
    if total > cap {
        return Err(Error::CapExceeded {
            what: "finset morphism count".into(),
            actual: total,
            cap,
        });
    }

    let names: Vec<String> = (0..sizes.len()).map(|i| format!("s{i}")).collect();
    let all_maps = |a: usize, b: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..a {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..b).map(move |y| {
                        let mut next = prefix.clone();
                        next.push(y);
                        next
                    })
                })
                .collect();
        }
        out
    };
    let id_of = |i: usize, j: usize, images: &[usize]| {
        if i == j && images.iter().enumerate().all(|(x, &y)| x == y) {
            identity_id(&names[i])
        } else {
            map_id(&names[i], &names[j], images)
        }
    };

    let mut raw = RawCategory {
        objects: names.clone(),
        ..RawCategory::default()
    };
    let mut fn_of: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    let label = |i: usize, x: usize| format!("{}:{x}", names[i]);
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for i in 0..sizes.len() {
        for j in 0..sizes.len() {
            for images in all_maps(sizes[i], sizes[j]) {
                let id = id_of(i, j, &images);
                if !id.starts_with("id:") {
                    raw.morphisms.push(crate::category::RawMorphism {
                        id: id.clone(),
                        dom: names[i].clone(),
                        cod: names[j].clone(),
                    });
                    fn_of.insert(
                        id,
                        images
                            .iter()
                            .enumerate()
                            .map(|(x, &y)| (label(i, x), label(j, y)))
                            .collect(),
                    );
                }
                maps.push((i, j, images));
            }
        }
    }
    for (i, j, f) in &maps {
        for (j2, k, g) in &maps {
            if j != j2 {
                continue;
            }
            let (fid, gid) = (id_of(*i, *j, f), id_of(*j, *k, g));
            if fid.starts_with("id:") || gid.starts_with("id:") {
                continue;
            }
            let h: Vec<usize> = f.iter().map(|&y| g[y]).collect();
            raw.compose.push([fid, gid, id_of(*i, *k, &h)]);
        }
    }
    let cat = Arc::new(FinCat::validate(&raw)?);
    let underlying: BTreeMap<String, Vec<String>> = (0..sizes.len())
        .map(|i| (names[i].clone(), (0..sizes[i]).map(|x| label(i, x)).collect()))
        .collect();
    ConcreteFinCat::new(cat, &underlying, &fn_of)
}

/// Every preorder on `n` labeled elements (`a`, `b`, `c`, ...), one thin
/// category each. Off-diagonal relations are enumerated as bitmasks in
/// increasing order; non-transitive ones are skipped.
pub fn preorders(n: usize) -> Vec<FinCat> {
    let elements: Vec<String> = (0..n)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (bit, &(i, j)) in off.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(rel[i * n + j] && rel[j * n + k]) || rel[i * n + k]))
        });
        if !transitive {
            continue;
        }
        let pairs: Vec<(String, String)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| rel[i * n + j])
            .map(|(i, j)| (elements[i].clone(), elements[j].clone()))
            .collect();
        out.push(from_preorder(&elements, &pairs, false).expect("transitive and reflexive"));
    }
    out
}

/// Parses a catalog name such as `p4`, `discrete:3` or `finset:1,2,2`
/// (`finset:[1,2,2]` is accepted too).
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    let lower = name.trim().to_ascii_lowercase();
    let (head, arg) = match lower.split_once(':') {
        Some((h, a)) => (h, Some(a.trim())),
        None => (lower.as_str(), None),
    };
    let count = |a: Option<&str>| -> Result<usize> { a.ok_or_else(unknown)?.parse().map_err(|_| unknown()) };
    Ok(match (head, arg) {
        ("p4", None) => CatalogEntry::Plain(p4()),
        ("e3", None) => CatalogEntry::Plain(e3()),
        ("terminal", None) => CatalogEntry::Plain(discrete(1)),
        ("empty", None) => CatalogEntry::Plain(discrete(0)),
        ("isopair", None) => CatalogEntry::Plain(isopair()),
        ("discrete", a) => CatalogEntry::Plain(discrete(count(a)?)),
        ("isopairs", a) => CatalogEntry::Plain(isopairs(count(a)?)),
        ("finset", Some(list)) => {
            let list = list.trim_start_matches('[').trim_end_matches(']');
            let sizes = list
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| unknown()))
                .collect::<Result<Vec<_>>>()?;
            CatalogEntry::Concrete(finset(&sizes)?)
        }
        _ => return Err(unknown()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(discrete(2).morphism_count(), 2);
        assert_eq!(e3().object_count(), 3);
        assert_eq!(e3().morphism_count(), 5);
        assert_eq!(isopair().morphism_count(), 4);
        assert_eq!(isopairs(2).object_count(), 4);
    }

    #[test]
    fn e3_classes() {
        let c = e3();
        let p = c.iso_classes();
        let names: Vec<Vec<&str>> = p
            .classes
            .iter()
            .map(|cl| cl.iter().map(|&o| c.object_name(o)).collect())
            .collect();
        assert_eq!(names, vec![vec!["e", "a"], vec!["f"]]);
    }

    #[test]
    fn names_parse() {
        assert_eq!(catalog("P4").unwrap().category().morphism_count(), 9);
        assert_eq!(catalog("discrete:2").unwrap().category().object_count(), 2);
        assert!(catalog("finset:[1,2,2]").unwrap().concrete().is_some());
        assert!(matches!(catalog("q7"), Err(Error::UnknownCatalogEntry(_))));
        assert!(matches!(catalog("discrete:x"), Err(Error::UnknownCatalogEntry(_))));
    }

    #[test]
    fn finset_cap() {
        assert!(matches!(
            finset_with_cap(&[3, 3], 20),
            Err(Error::CapExceeded { actual: 108, .. })
        ));
    }

    #[test]
    fn finset_identities_are_identity_maps() {
        let k = finset(&[2]).unwrap();
        let c = k.cat();
        assert_eq!(c.morphism_count(), 4);
        assert!(c.morphism_index("s0->s0:1,0").is_some());
        assert!(c.morphism_index("s0->s0:0,1").is_none());
    }
}
