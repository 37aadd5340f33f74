//! Exhaustive functor enumeration by backtracking.
//!
//! Object maps are chosen first, in source object order, and pruned by hom-set
//! feasibility. Each surviving object map is extended morphism by morphism in
//! source order; every composition constraint is checked as soon as its last
//! member is assigned. Results come out lexicographically ordered on
//! `(obj_map, mor_map)`.
//!
//! The search space is split on the image of the first source object. With
//! several workers the parts run in parallel and are concatenated in part
//! order, so the output never depends on the worker count.

use std::sync::Arc;

use rayon::prelude::*;

use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::functor::FinFunctor;

pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes (one per tentative assignment).
    pub budget: u64,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions {
            budget,
            ..Self::default()
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub functors: Vec<FinFunctor>,
    pub nodes_visited: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Any,
    /// Bijective on every hom-set.
    FullyFaithful,
}

pub fn enumerate_functors(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    opts: SearchOptions,
) -> Result<Enumeration> {
    search(source, target, Shape::Any, opts)
}

pub fn enumerate_endofunctors(category: &Arc<FinCat>, opts: SearchOptions) -> Result<Enumeration> {
    search(category, category, Shape::Any, opts)
}

/// All fully faithful functors `source -> target`.
pub fn enumerate_fully_faithful(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    opts: SearchOptions,
) -> Result<Enumeration> {
    search(source, target, Shape::FullyFaithful, opts)
}

/// All equivalences `source -> target`.
pub fn enumerate_equivalences(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    opts: SearchOptions,
) -> Result<Enumeration> {
    let mut e = search(source, target, Shape::FullyFaithful, opts)?;
    e.functors.retain(|f| f.classify().essentially_surjective);
    Ok(e)
}

/// All isomorphisms `source -> target`.
pub fn enumerate_isomorphisms(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    opts: SearchOptions,
) -> Result<Enumeration> {
    let mut e = search(source, target, Shape::FullyFaithful, opts)?;
    e.functors.retain(|f| f.classify().isomorphism);
    Ok(e)
}

pub fn enumerate_autoequivalences(category: &Arc<FinCat>, opts: SearchOptions) -> Result<Enumeration> {
    enumerate_equivalences(category, category, opts)
}

pub fn enumerate_automorphisms(category: &Arc<FinCat>, opts: SearchOptions) -> Result<Enumeration> {
    enumerate_isomorphisms(category, category, opts)
}

type RawFunctor = (Vec<usize>, Vec<usize>);

struct Part {
    found: Vec<RawFunctor>,
    nodes: u64,
    exhausted: bool,
}

fn search(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    shape: Shape,
    opts: SearchOptions,
) -> Result<Enumeration> {
    let plan = Plan::new(source, target, shape);
    let parts: Vec<Option<usize>> = if source.object_count() == 0 {
        vec![None]
    } else {
        (0..target.object_count()).map(Some).collect()
    };
    let run = |first: &Option<usize>| plan.run_part(*first, opts.budget);
    let results: Vec<Part> = if opts.workers > 1 && parts.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::Verification(format!("thread pool: {e}")))?;
        pool.install(|| parts.par_iter().map(run).collect())
    } else {
        let mut out = Vec::with_capacity(parts.len());
        let mut spent = 0u64;
        for p in &parts {
            let part = plan.run_part(*p, opts.budget.saturating_sub(spent));
            spent = spent.saturating_add(part.nodes);
            let stop = part.exhausted;
            out.push(part);
            if stop {
                break;
            }
        }
        out
    };

    let nodes: u64 = results.iter().map(|p| p.nodes).sum();
    if nodes > opts.budget || results.iter().any(|p| p.exhausted) {
        return Err(Error::BudgetExceeded {
            budget: opts.budget,
            visited: nodes,
        });
    }
    let functors = results
        .into_iter()
        .flat_map(|p| p.found)
        .map(|(o, m)| FinFunctor::new_trusted(source.clone(), target.clone(), o, m))
        .collect();
    Ok(Enumeration {
        functors,
        nodes_visited: nodes,
    })
}

struct Plan<'a> {
    src: &'a FinCat,
    tgt: &'a FinCat,
    shape: Shape,
    /// Non-identity source morphisms in assignment order.
    order: Vec<usize>,
    /// `checks[k]`: composites `(f, g, h)` whose last non-identity member is
    /// `order[k]`.
    checks: Vec<Vec<(usize, usize, usize)>>,
    /// `siblings[k]`: earlier positions in the same source hom-set.
    siblings: Vec<Vec<usize>>,
}

impl<'a> Plan<'a> {
    fn new(src: &'a FinCat, tgt: &'a FinCat, shape: Shape) -> Self {
        let n_obj = src.object_count();
        let order: Vec<usize> = (n_obj..src.morphism_count()).collect();
        let position = |f: usize| f.checked_sub(n_obj);
        let mut checks = vec![Vec::new(); order.len()];
        for (f, g, h) in src.nontrivial_composites() {
            let last = [position(f), position(g), position(h)]
                .into_iter()
                .flatten()
                .max()
                .expect("f and g are non-identities");
            checks[last].push((f, g, h));
        }
        let siblings = order
            .iter()
            .enumerate()
            .map(|(k, &f)| {
                (0..k)
                    .filter(|&j| {
                        src.dom(order[j]) == src.dom(f) && src.cod(order[j]) == src.cod(f)
                    })
                    .collect()
            })
            .collect();
        Plan {
            src,
            tgt,
            shape,
            order,
            checks,
            siblings,
        }
    }

    fn run_part(&self, first: Option<usize>, budget: u64) -> Part {
        let mut state = State {
            plan: self,
            budget,
            nodes: 0,
            exhausted: false,
            obj_map: vec![usize::MAX; self.src.object_count()],
            mor_map: vec![usize::MAX; self.src.morphism_count()],
            found: Vec::new(),
        };
        match first {
            None => state.objects(0),
            Some(b) => state.try_object(0, b),
        }
        Part {
            found: state.found,
            nodes: state.nodes,
            exhausted: state.exhausted,
        }
    }
}

struct State<'p, 'a> {
    plan: &'p Plan<'a>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
    found: Vec<RawFunctor>,
}

impl State<'_, '_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn hom_ok(&self, a: usize, b: usize) -> bool {
        let p = self.plan;
        let here = p.src.hom(a, b).len();
        let there = p.tgt.hom(self.obj_map[a], self.obj_map[b]).len();
        match p.shape {
            Shape::Any => here == 0 || there > 0,
            Shape::FullyFaithful => here == there,
        }
    }

    fn try_object(&mut self, a: usize, image: usize) {
        if !self.tick() {
            return;
        }
        self.obj_map[a] = image;
        if (0..=a).all(|b| self.hom_ok(a, b) && self.hom_ok(b, a)) {
            self.objects(a + 1);
        }
        self.obj_map[a] = usize::MAX;
    }

    fn objects(&mut self, a: usize) {
        if self.exhausted {
            return;
        }
        let p = self.plan;
        if a == p.src.object_count() {
            for o in 0..a {
                self.mor_map[p.src.identity(o)] = p.tgt.identity(self.obj_map[o]);
            }
            self.morphisms(0);
            return;
        }
        for image in 0..p.tgt.object_count() {
            self.try_object(a, image);
            if self.exhausted {
                return;
            }
        }
    }

    fn morphisms(&mut self, k: usize) {
        let p = self.plan;
        if k == p.order.len() {
            self.found.push((self.obj_map.clone(), self.mor_map.clone()));
            return;
        }
        let f = p.order[k];
        let (a, b) = (self.obj_map[p.src.dom(f)], self.obj_map[p.src.cod(f)]);
        for &candidate in p.tgt.hom(a, b) {
            if !self.tick() {
                return;
            }
            if p.shape == Shape::FullyFaithful
                && p.siblings[k]
                    .iter()
                    .any(|&j| self.mor_map[p.order[j]] == candidate)
            {
                continue;
            }
            self.mor_map[f] = candidate;
            let consistent = p.checks[k].iter().all(|&(g, h, gh)| {
                p.tgt.compose(self.mor_map[g], self.mor_map[h]) == Some(self.mor_map[gh])
            });
            if consistent {
                self.morphisms(k + 1);
                if self.exhausted {
                    return;
                }
            }
        }
        self.mor_map[f] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn count(c: FinCat) -> usize {
        let c = Arc::new(c);
        enumerate_endofunctors(&c, SearchOptions::default())
            .unwrap()
            .functors
            .len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(catalog::discrete(1)), 1);
        assert_eq!(count(catalog::discrete(2)), 4);
        assert_eq!(count(FinCat::empty()), 1);
    }

    #[test]
    fn ordering_is_lexicographic_and_duplicate_free() {
        let c = Arc::new(catalog::p4());
        let e = enumerate_endofunctors(&c, SearchOptions::default()).unwrap();
        for w in e.functors.windows(2) {
            assert!(w[0].sort_key() < w[1].sort_key());
        }
    }

    #[test]
    fn budget_is_reported_not_truncated() {
        let c = Arc::new(catalog::p4());
        let err = enumerate_endofunctors(&c, SearchOptions::with_budget(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
        let par = enumerate_endofunctors(&c, SearchOptions::with_budget(10).workers(4)).unwrap_err();
        assert!(matches!(par, Error::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let c = Arc::new(catalog::finset(&[1, 2, 2]).unwrap().cat().as_ref().clone());
        let one = enumerate_autoequivalences(&c, SearchOptions::default()).unwrap();
        let four = enumerate_autoequivalences(&c, SearchOptions::default().workers(4)).unwrap();
        assert_eq!(one.functors, four.functors);
        assert_eq!(one.nodes_visited, four.nodes_visited);
    }

    #[test]
    fn automorphisms_of_discrete_two() {
        let c = Arc::new(catalog::discrete(2));
        let auts = enumerate_automorphisms(&c, SearchOptions::default()).unwrap();
        let eqs = enumerate_autoequivalences(&c, SearchOptions::default()).unwrap();
        assert_eq!(auts.functors.len(), 2);
        assert_eq!(eqs.functors, auts.functors);
    }
}
