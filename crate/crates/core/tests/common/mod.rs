// Brute-force reference implementations. They only read the composition
// table and hom-sets of a category; none of the library's search, pruning or
// certification code is used.

#![allow(dead_code)]

use fincat::{FinCat, FinFunctor};

/// Object map and morphism map of a functor.
pub type Maps = (Vec<usize>, Vec<usize>);

fn odometer(radices: &[usize]) -> Vec<Vec<usize>> {
    if radices.contains(&0) {
        return Vec::new();
    }
    let mut out = vec![vec![0; radices.len()]];
    loop {
        let mut next = out.last().unwrap().clone();
        let mut i = 0;
        while i < radices.len() {
            next[i] += 1;
            if next[i] < radices[i] {
                break;
            }
            next[i] = 0;
            i += 1;
        }
        if i == radices.len() {
            return out;
        }
        out.push(next);
    }
}

/// Every functor `c -> d`: all object maps, then every choice of morphism
/// images inside the right hom-sets, filtered by the functor laws.
pub fn naive_functors(c: &FinCat, d: &FinCat) -> Vec<Maps> {
    let mut out = Vec::new();
    let n = c.object_count();
    for obj in odometer(&vec![d.object_count(); n]) {
        let choices: Vec<&[usize]> = (0..c.morphism_count())
            .map(|f| d.hom(obj[c.dom(f)], obj[c.cod(f)]))
            .collect();
        let radices: Vec<usize> = choices.iter().map(|h| h.len()).collect();
        for pick in odometer(&radices) {
            let mor: Vec<usize> = pick.iter().enumerate().map(|(f, &i)| choices[f][i]).collect();
            let ids = (0..n).all(|a| mor[c.identity(a)] == d.identity(obj[a]));
            let comp = (0..c.morphism_count()).all(|f| {
                (0..c.morphism_count()).all(|g| match c.compose(f, g) {
                    Some(h) => d.compose(mor[f], mor[g]) == Some(mor[h]),
                    None => true,
                })
            });
            if ids && comp {
                out.push((obj.clone(), mor));
            }
        }
    }
    out
}

pub fn naive_inverse(c: &FinCat, f: usize) -> Option<usize> {
    c.hom(c.cod(f), c.dom(f)).iter().copied().find(|&g| {
        c.compose(f, g) == Some(c.identity(c.dom(f))) && c.compose(g, f) == Some(c.identity(c.cod(f)))
    })
}

pub fn naive_isomorphic(c: &FinCat, a: usize, b: usize) -> bool {
    c.hom(a, b).iter().any(|&f| naive_inverse(c, f).is_some())
}

/// Iso classes as sorted lists, ordered by first member.
pub fn naive_iso_classes(c: &FinCat) -> Vec<Vec<usize>> {
    let mut seen = vec![false; c.object_count()];
    let mut out = Vec::new();
    for a in 0..c.object_count() {
        if seen[a] {
            continue;
        }
        let class: Vec<usize> = (0..c.object_count()).filter(|&b| naive_isomorphic(c, a, b)).collect();
        for &b in &class {
            seen[b] = true;
        }
        out.push(class);
    }
    out
}

/// Some natural isomorphism between two functors given as maps.
pub fn naive_nat_iso(c: &FinCat, d: &FinCat, f: &Maps, g: &Maps) -> Option<Vec<usize>> {
    let choices: Vec<Vec<usize>> = (0..c.object_count())
        .map(|a| {
            d.hom(f.0[a], g.0[a])
                .iter()
                .copied()
                .filter(|&m| naive_inverse(d, m).is_some())
                .collect()
        })
        .collect();
    let radices: Vec<usize> = choices.iter().map(Vec::len).collect();
    odometer(&radices).into_iter().find_map(|pick| {
        let comps: Vec<usize> = pick.iter().enumerate().map(|(a, &i)| choices[a][i]).collect();
        let natural = (0..c.morphism_count()).all(|m| {
            let (a, b) = (c.dom(m), c.cod(m));
            d.compose(f.1[m], comps[b]) == d.compose(comps[a], g.1[m])
        });
        natural.then_some(comps)
    })
}

pub fn naive_is_equivalence(c: &FinCat, d: &FinCat, f: &Maps) -> bool {
    let faithful_full = (0..c.object_count()).all(|a| {
        (0..c.object_count()).all(|b| {
            let mut images: Vec<usize> = c.hom(a, b).iter().map(|&m| f.1[m]).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == c.hom(a, b).len() && images.len() == d.hom(f.0[a], f.0[b]).len()
        })
    });
    let ess_surj = (0..d.object_count()).all(|y| (0..c.object_count()).any(|a| naive_isomorphic(d, f.0[a], y)));
    faithful_full && ess_surj
}

pub fn naive_is_isomorphism(c: &FinCat, d: &FinCat, f: &Maps) -> bool {
    assert_eq!(f.0.len(), c.object_count());
    let bijective = |map: &[usize], size: usize| {
        let mut v = map.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len() == map.len() && map.len() == size
    };
    bijective(&f.0, d.object_count()) && bijective(&f.1, d.morphism_count())
}

/// Some autoequivalence naturally isomorphic to no automorphism.
pub fn naive_has_proper(c: &FinCat) -> bool {
    let endo = naive_functors(c, c);
    let equivalences: Vec<&Maps> = endo.iter().filter(|f| naive_is_equivalence(c, c, f)).collect();
    let automorphisms: Vec<&Maps> = equivalences
        .iter()
        .copied()
        .filter(|f| naive_is_isomorphism(c, c, f))
        .collect();
    equivalences
        .iter()
        .any(|pi| automorphisms.iter().all(|aut| naive_nat_iso(c, c, aut, pi).is_none()))
}

pub fn maps(f: &FinFunctor) -> Maps {
    (f.obj_map().to_vec(), f.mor_map().to_vec())
}

/// Every reflexive transitive relation on `n` points, as adjacency matrices.
pub fn naive_preorder_relations(n: usize) -> Vec<Vec<Vec<bool>>> {
    let mut out = Vec::new();
    for bits in 0u32..(1 << (n * n)) {
        let rel: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect())
            .collect();
        let reflexive = (0..n).all(|i| rel[i][i]);
        let transitive = (0..n)
            .all(|i| (0..n).all(|j| (0..n).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k])));
        if reflexive && transitive {
            out.push(rel);
        }
    }
    out
}

pub fn names(c: &FinCat, objects: &[usize]) -> Vec<String> {
    objects.iter().map(|&o| c.object_name(o).to_string()).collect()
}
