// Derived values checked against the brute-force references in `common`.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use fincat::equivalence::{has_proper_autoequivalence, Mode, Verdict};
use fincat::monoid::end_monoid_of_object;
use fincat::natural::are_naturally_isomorphic;
use fincat::quotient::{build_quotient, QuotientOptions};
use fincat::search::{
    enumerate_autoequivalences, enumerate_automorphisms, enumerate_endofunctors, enumerate_functors,
};
use fincat::{catalog, FinCat, SearchOptions};

fn small_catalog() -> Vec<(&'static str, Arc<FinCat>)> {
    ["empty", "terminal", "discrete:2", "discrete:3", "isopair", "isopairs:2", "p4", "e3", "finset:1,2"]
        .iter()
        .map(|n| (*n, catalog::catalog(n).unwrap().category()))
        .collect()
}

fn thin_corpus() -> Vec<(String, Arc<FinCat>)> {
    let mut out: Vec<(String, Arc<FinCat>)> =
        small_catalog().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    for (i, c) in catalog::preorders(3).into_iter().enumerate() {
        out.push((format!("preorder #{i}"), Arc::new(c)));
    }
    out
}

fn as_set(list: Vec<Maps>) -> BTreeSet<Maps> {
    list.into_iter().collect()
}

#[test]
fn functor_lists_match_naive_enumeration() {
    for (name, c) in small_catalog() {
        let found = enumerate_endofunctors(&c, SearchOptions::default()).unwrap();
        let got: Vec<Maps> = found.functors.iter().map(maps).collect();
        let naive = naive_functors(&c, &c);
        assert_eq!(got.len(), naive.len(), "{name}");
        assert_eq!(as_set(got), as_set(naive), "{name}");
        assert!(
            found.functors.windows(2).all(|w| w[0].sort_key() < w[1].sort_key()),
            "{name}: not in lexicographic order"
        );
    }
}

#[test]
fn functors_between_different_categories() {
    let cats = small_catalog();
    for (n1, c) in &cats {
        for (n2, d) in &cats {
            if c.morphism_count() * d.morphism_count() > 60 {
                continue;
            }
            let found = enumerate_functors(c, d, SearchOptions::default()).unwrap();
            assert_eq!(found.functors.len(), naive_functors(c, d).len(), "{n1} -> {n2}");
        }
    }
}

#[test]
fn pinned_functor_counts() {
    let count = |name: &str| {
        let c = catalog::catalog(name).unwrap().category();
        enumerate_endofunctors(&c, SearchOptions::default()).unwrap().functors.len()
    };
    assert_eq!(count("discrete:2"), 4);
    // Pinned by the oracle: each object map admits exactly one morphism map.
    assert_eq!(count("isopair"), 4);
    assert_eq!(naive_functors(&catalog::isopair(), &catalog::isopair()).len(), 4);
    assert_eq!(count("p4"), 41);
    assert_eq!(naive_functors(&catalog::p4(), &catalog::p4()).len(), 41);
}

#[test]
fn automorphism_and_autoequivalence_counts() {
    for (name, c) in small_catalog() {
        let naive = naive_functors(&c, &c);
        let eq = naive.iter().filter(|f| naive_is_equivalence(&c, &c, f)).count();
        let iso = naive.iter().filter(|f| naive_is_isomorphism(&c, &c, f)).count();
        let opts = SearchOptions::default();
        assert_eq!(enumerate_autoequivalences(&c, opts).unwrap().functors.len(), eq, "{name}");
        assert_eq!(enumerate_automorphisms(&c, opts).unwrap().functors.len(), iso, "{name}");
    }
    let d2 = Arc::new(catalog::discrete(2));
    assert_eq!(enumerate_automorphisms(&d2, SearchOptions::default()).unwrap().functors.len(), 2);
    assert_eq!(enumerate_autoequivalences(&d2, SearchOptions::default()).unwrap().functors.len(), 2);
    // Identity and the c-d swap.
    let p4 = Arc::new(catalog::p4());
    assert_eq!(enumerate_automorphisms(&p4, SearchOptions::default()).unwrap().functors.len(), 2);
}

#[test]
fn classify_matches_naive_flags() {
    for (name, c) in small_catalog() {
        for f in enumerate_endofunctors(&c, SearchOptions::default()).unwrap().functors {
            let flags = f.classify();
            let m = maps(&f);
            assert_eq!(flags.equivalence, naive_is_equivalence(&c, &c, &m), "{name}");
            assert_eq!(flags.isomorphism, naive_is_isomorphism(&c, &c, &m), "{name}");
        }
    }
}

#[test]
fn iso_classes_match_inverse_search() {
    for (name, c) in thin_corpus() {
        assert_eq!(c.iso_classes().classes, naive_iso_classes(&c), "{name}");
    }
    let k = catalog::finset(&[1, 2, 2]).unwrap();
    assert_eq!(k.cat().iso_classes().classes, naive_iso_classes(k.cat()));
}

#[test]
fn twenty_nine_preorders_on_three_points() {
    let naive = naive_preorder_relations(3);
    assert_eq!(naive.len(), 29);
    let ours: BTreeSet<Vec<Vec<bool>>> = catalog::preorders(3)
        .iter()
        .map(|c| (0..3).map(|i| (0..3).map(|j| !c.hom(i, j).is_empty()).collect()).collect())
        .collect();
    assert_eq!(ours, naive.into_iter().collect());
}

#[test]
fn natural_isomorphism_matches_component_search() {
    for name in ["isopair", "e3", "p4", "discrete:2"] {
        let c = catalog::catalog(name).unwrap().category();
        let endo = enumerate_endofunctors(&c, SearchOptions::default()).unwrap().functors;
        for f in &endo {
            for g in &endo {
                let ours = are_naturally_isomorphic(f, g).unwrap();
                let naive = naive_nat_iso(&c, &c, &maps(f), &maps(g)).is_some();
                assert_eq!(ours, naive, "{name}: {} vs {}", f.describe_objects(), g.describe_objects());
            }
        }
    }
}

#[test]
fn proper_verdicts_match_naive_search() {
    for (name, c) in thin_corpus() {
        let naive = naive_has_proper(&c);
        for mode in [Mode::Criterion, Mode::Oracle] {
            let v = has_proper_autoequivalence(&c, mode, SearchOptions::default()).unwrap().verdict;
            assert_eq!(v == Verdict::Proper, naive, "{name} {mode:?}");
        }
    }
}

/// Number of classes of endofunctors under naive natural isomorphism, and
/// how many of them contain an equivalence.
fn naive_quotient_sizes(c: &FinCat) -> (usize, usize) {
    let endo = naive_functors(c, c);
    let mut reps: Vec<&Maps> = Vec::new();
    for f in &endo {
        if !reps.iter().any(|r| naive_nat_iso(c, c, r, f).is_some()) {
            reps.push(f);
        }
    }
    let invertible = reps.iter().filter(|r| naive_is_equivalence(c, c, r)).count();
    (reps.len(), invertible)
}

#[test]
fn quotient_sizes_match_naive_partition() {
    for name in ["discrete:2", "isopair", "p4", "e3", "terminal"] {
        let c = catalog::catalog(name).unwrap().category();
        let q = build_quotient(&c, QuotientOptions::default()).unwrap();
        let (end0, aut0) = naive_quotient_sizes(&c);
        assert_eq!((q.end0_size(), q.aut0_size()), (end0, aut0), "{name}");
    }
    let d2 = Arc::new(catalog::discrete(2));
    let q = build_quotient(&d2, QuotientOptions::default()).unwrap();
    assert_eq!((q.endofunctors().len(), q.end0_size(), q.aut0_size()), (4, 4, 2));
    // Pinned by the oracle.
    let p4 = Arc::new(catalog::p4());
    let q = build_quotient(&p4, QuotientOptions::default()).unwrap();
    assert_eq!((q.endofunctors().len(), q.end0_size(), q.aut0_size(), q.aut_image().len()), (41, 11, 2, 1));
}

#[test]
fn finset_counts() {
    for sizes in [vec![1, 2, 2], vec![2], vec![1, 3], vec![0, 1]] {
        let k = catalog::finset(&sizes).unwrap();
        let expected: usize = sizes
            .iter()
            .flat_map(|&a| sizes.iter().map(move |&b| b.pow(a as u32)))
            .sum();
        assert_eq!(k.cat().morphism_count(), expected, "{sizes:?}");
    }
    assert_eq!(catalog::finset(&[1, 2, 2]).unwrap().cat().morphism_count(), 23);
}

#[test]
fn end_monoid_orders_are_self_map_counts() {
    let k = catalog::finset(&[1, 2, 2]).unwrap();
    let c = k.cat();
    for o in 0..c.object_count() {
        let n = k.underlying(o).len();
        assert_eq!(end_monoid_of_object(c, o).order(), n.pow(n as u32));
    }
    let p4 = catalog::p4();
    assert_eq!(end_monoid_of_object(&p4, p4.object_index("c").unwrap()).order(), 1);
}
