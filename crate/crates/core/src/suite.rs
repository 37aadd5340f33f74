//! The acceptance battery.
//!
//! Each criterion runs over a corpus chosen by [`Scope`] and returns a
//! [`CriterionResult`]. Corpus items are processed independently, in parallel
//! when more than one worker is requested; results are gathered in corpus
//! order so the summary does not depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog;
use crate::category::FinCat;
use crate::concrete::{
    automorphism_via_representation, check_commuting_family, ConcreteFinCat, DEFAULT_SIZE_CAP,
};
use crate::equivalence::{
    fiber_criterion, has_proper_autoequivalence, isomorphism_naturally_isomorphic_to,
    promote_to_isomorphism, proper_witness_from_skeleton_aut, uniform_class_check, Mode,
    Obstruction, PromotionResult, Verdict,
};
use crate::error::{Error, Result};
use crate::functor::FinFunctor;
use crate::monoid::{end_monoid_of_object, is_monoid_isomorphism, monoids_isomorphic, DEFAULT_MONOID_CAP};
use crate::natural::{are_naturally_isomorphic, find_natural_isomorphism, NatTransformation};
use crate::quotient::{verify_eta_iff_no_proper, QuotientOptions};
use crate::search::{enumerate_autoequivalences, SearchOptions};
use crate::skeleton::compute_skeleton;

/// Catalog names in the fast corpus.
pub const CATALOG_CORPUS: &[&str] = &[
    "empty",
    "terminal",
    "discrete:2",
    "discrete:3",
    "isopair",
    "isopairs:2",
    "p4",
    "e3",
    "finset:1,2",
    "finset:2,2",
    "finset:1,2,2",
];

/// Largest object count for which the completeness oracle is exercised.
pub const ORACLE_OBJECT_LIMIT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Catalog items only.
    Fast,
    /// The 29 preorder categories on three labeled elements.
    Exhaustive3,
    /// Both of the above.
    Full,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Fast => "fast",
            Scope::Exhaustive3 => "exhaustive-3",
            Scope::Full => "full",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Scope::Fast),
            "exhaustive-3" => Ok(Scope::Exhaustive3),
            "full" => Ok(Scope::Full),
            other => Err(Error::Format(format!("unknown suite scope `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: String,
    pub category: Arc<FinCat>,
}

/// Names a preorder category by its strict relations, e.g. `preorder:a<b,b<a`.
fn preorder_name(c: &FinCat) -> String {
    let strict: Vec<String> = (0..c.morphism_count())
        .filter(|&f| !c.is_identity(f))
        .map(|f| format!("{}<{}", c.object_name(c.dom(f)), c.object_name(c.cod(f))))
        .collect();
    format!("preorder:{}", strict.join(","))
}

pub fn corpus(scope: Scope) -> Vec<CorpusItem> {
    let mut items = Vec::new();
    if matches!(scope, Scope::Fast | Scope::Full) {
        for name in CATALOG_CORPUS {
            let category = catalog::catalog(name)
                .expect("corpus names are catalog names")
                .category();
            items.push(CorpusItem {
                name: name.to_string(),
                category,
            });
        }
    }
    if matches!(scope, Scope::Exhaustive3 | Scope::Full) {
        for c in catalog::preorders(3) {
            items.push(CorpusItem {
                name: preorder_name(&c),
                category: Arc::new(c),
            });
        }
    }
    items
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    /// Number of individual assertions made.
    pub checks: u64,
    /// One line per failed assertion.
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records an error from a construction that should have succeeded.
    fn ok<T>(&mut self, r: Result<T>, what: &str) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_budget() => Err(e),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                Ok(None)
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    fn finish(self, id: u32, title: &str) -> CriterionResult {
        CriterionResult {
            id,
            title: title.to_string(),
            passed: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub scope: Scope,
    pub corpus: Vec<String>,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scope": self.scope,
            "corpus_size": self.corpus.len(),
            "corpus": self.corpus,
            "criteria": self.criteria,
            "passed": self.passed(),
        })
    }

    /// One `PASS`/`FAIL` line per criterion.
    pub fn summary_lines(&self) -> Vec<String> {
        self.criteria
            .iter()
            .map(|c| {
                format!(
                    "{} criterion {:>2}: {} ({} checks)",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.title,
                    c.checks
                )
            })
            .collect()
    }
}

fn per_item<F>(items: &[CorpusItem], opts: SearchOptions, f: F) -> Result<Tally>
where
    F: Fn(&CorpusItem, SearchOptions) -> Result<Tally> + Sync,
{
    // Items already run in parallel; searches inside them stay sequential.
    let inner = SearchOptions { workers: 1, ..opts };
    let tallies: Vec<Result<Tally>> = if opts.workers > 1 {
        items.par_iter().map(|item| f(item, inner)).collect()
    } else {
        items.iter().map(|item| f(item, inner)).collect()
    };
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t?);
    }
    Ok(total)
}

/// Equivalences to promote on `item`: every autoequivalence and the
/// retraction onto the skeleton.
fn promotion_inputs(item: &CorpusItem, opts: SearchOptions) -> Result<Vec<FinFunctor>> {
    let mut inputs = enumerate_autoequivalences(&item.category, opts)?.functors;
    inputs.push(compute_skeleton(&item.category)?.retraction().clone());
    Ok(inputs)
}

fn skeleton_is_inner(item: &CorpusItem, _: SearchOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let name = &item.name;
    let Some(sk) = t.ok(compute_skeleton(&item.category), name)? else {
        return Ok(t);
    };
    t.check(sk.nu().classify().equivalence, || format!("{name}: ν is not an equivalence"));
    if let Some(w) = t.ok(sk.verify_nu_inner(), name)? {
        t.check(w.components() == sk.u_family(), || {
            format!("{name}: witness components differ from the u family")
        });
        // Re-certify from scratch rather than trusting the returned value.
        let again = NatTransformation::new(w.from().clone(), w.to().clone(), w.components().to_vec());
        t.check(
            again.map(|a| a.is_natural_isomorphism()).unwrap_or(false),
            || format!("{name}: u family fails re-verification"),
        );
    }
    let id = FinFunctor::identity(item.category.clone());
    let related = t.ok(are_naturally_isomorphic(&id, sk.nu()), name)?;
    t.check(related == Some(true), || format!("{name}: Id and ν are not naturally isomorphic"));
    Ok(t)
}

fn p4_example() -> Result<Tally> {
    let mut t = Tally::default();
    let c = Arc::new(catalog::p4());
    let sk = compute_skeleton(&c)?;
    let sk_cat = sk.sk_cat().clone();
    let names: Vec<&str> = (0..sk_cat.object_count()).map(|o| sk_cat.object_name(o)).collect();
    t.check(names == ["a", "b", "c"], || format!("P4 skeleton objects {names:?}"));
    let swap: Vec<usize> = ["a", "c", "b"]
        .iter()
        .map(|n| sk_cat.object_index(n).expect("skeleton object"))
        .collect();
    let psi = FinFunctor::from_object_map(sk_cat.clone(), sk_cat, swap)?;
    let (pi, proper) = proper_witness_from_skeleton_aut(&sk, &psi)?;
    t.check(proper, || "P4: lifted swap is not proper".into());
    let obstructions = fiber_criterion(&pi)?;
    t.check(obstructions.first() == Some(&Obstruction::new("b", "c", 1, 2)), || {
        format!("P4: first obstruction is {:?}", obstructions.first())
    });
    let analysis = has_proper_autoequivalence(&c, Mode::Both, SearchOptions::default())?;
    t.check(analysis.criterion == Some(Verdict::Proper), || "P4: criterion mode says no-proper".into());
    t.check(analysis.oracle == Some(Verdict::Proper), || "P4: oracle mode says no-proper".into());
    t.check(analysis.verdict == Verdict::Proper, || "P4: verdict is not proper".into());
    Ok(t)
}

fn e3_example() -> Result<Tally> {
    let mut t = Tally::default();
    let c = Arc::new(catalog::e3());
    let map: Vec<usize> = ["f", "e", "f"]
        .iter()
        .map(|n| c.object_index(n).expect("E3 object"))
        .collect();
    let phi = FinFunctor::from_object_map(c.clone(), c.clone(), map)?;
    let flags = phi.classify();
    t.check(flags.equivalence, || "E3: φ′ is not an equivalence".into());
    t.check(!flags.isomorphism, || "E3: φ′ is an isomorphism".into());
    let obstructions = fiber_criterion(&phi)?;
    t.check(obstructions.contains(&Obstruction::new("e", "f", 2, 1)), || {
        format!("E3: obstructions {obstructions:?}")
    });
    let promoted = promote_to_isomorphism(&phi)?;
    t.check(!promoted.is_promoted(), || "E3: φ′ was promoted".into());
    let analysis = has_proper_autoequivalence(&c, Mode::Both, SearchOptions::default())?;
    t.check(analysis.criterion == Some(Verdict::Proper), || "E3: criterion mode says no-proper".into());
    t.check(analysis.oracle == Some(Verdict::Proper), || "E3: oracle mode says no-proper".into());
    Ok(t)
}

fn promotion_sound(item: &CorpusItem, opts: SearchOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let name = &item.name;
    for (i, pi) in promotion_inputs(item, opts)?.iter().enumerate() {
        let Some(result) = t.ok(promote_to_isomorphism(pi), name)? else {
            continue;
        };
        let PromotionResult::Promoted { phi, tau } = result else {
            continue;
        };
        t.check(phi.classify().isomorphism, || format!("{name}#{i}: φ is not an isomorphism"));
        t.check(tau.from() == &phi && tau.to() == pi, || {
            format!("{name}#{i}: τ does not run from φ to π")
        });
        let again = NatTransformation::new(phi.clone(), pi.clone(), tau.components().to_vec());
        t.check(
            again.map(|a| a.is_natural_isomorphism()).unwrap_or(false),
            || format!("{name}#{i}: τ fails a naturality square or is not invertible"),
        );
    }
    Ok(t)
}

fn promotion_complete(item: &CorpusItem, opts: SearchOptions) -> Result<Tally> {
    let mut t = Tally::default();
    if item.category.object_count() > ORACLE_OBJECT_LIMIT {
        return Ok(t);
    }
    let name = &item.name;
    for (i, pi) in promotion_inputs(item, opts)?.iter().enumerate() {
        let obstructed = !promote_to_isomorphism(pi)?.is_promoted();
        let (found, _) = isomorphism_naturally_isomorphic_to(pi, opts)?;
        t.check(obstructed == found.is_none(), || {
            format!(
                "{name}#{i}: promotion {} but brute force {} an isomorphism",
                if obstructed { "obstructed" } else { "succeeded" },
                if found.is_some() { "found" } else { "found no" }
            )
        });
    }
    Ok(t)
}

fn modes_agree(item: &CorpusItem, opts: SearchOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let name = &item.name;
    let analysis = has_proper_autoequivalence(&item.category, Mode::Both, opts)?;
    t.check(analysis.agreement() == Some(true), || {
        format!(
            "{name}: criterion {:?} vs oracle {:?}",
            analysis.criterion, analysis.oracle
        )
    });
    if uniform_class_check(&item.category) {
        t.check(analysis.verdict == Verdict::NoProper, || {
            format!("{name}: uniform class sizes but verdict proper")
        });
    }
    Ok(t)
}

fn eta_agrees(item: &CorpusItem, opts: SearchOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let name = &item.name;
    let agreement = verify_eta_iff_no_proper(&item.category, QuotientOptions::unlimited(opts))?;
    t.check(agreement.agrees(), || {
        format!(
            "{name}: finding: η* surjective = {} but verdict {}",
            agreement.eta_star_surjective,
            agreement.verdict.as_str()
        )
    });
    Ok(t)
}

fn finset_122() -> ConcreteFinCat {
    catalog::finset(&[1, 2, 2]).expect("finset:1,2,2 fits the default cap")
}

fn set_autoequivalences_inner(opts: SearchOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let k = finset_122();
    let c = k.cat().clone();
    let id = FinFunctor::identity(c.clone());
    let autos = enumerate_autoequivalences(&c, opts)?.functors;
    t.check(!autos.is_empty(), || "finset: no autoequivalences enumerated".into());
    for (i, pi) in autos.iter().enumerate() {
        let tau = find_natural_isomorphism(&id, pi)?;
        t.check(tau.is_some(), || format!("finset#{i}: not naturally isomorphic to Id"));
    }
    Ok(t)
}

fn transport_pipeline(opts: SearchOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let k = finset_122();
    let c = k.cat().clone();
    let witness = c.object_index("s0").expect("singleton object");
    for (i, pi) in enumerate_autoequivalences(&c, opts)?.functors.iter().enumerate() {
        let Some((u, built)) = t.ok(
            automorphism_via_representation(&k, pi, witness, DEFAULT_SIZE_CAP),
            &format!("finset#{i}"),
        )?
        else {
            continue;
        };
        t.check(check_commuting_family(&k, pi, &u).is_ok(), || {
            format!("finset#{i}: bijections fail a square")
        });
        let f = &built.functor;
        t.check(f.classify().isomorphism, || format!("finset#{i}: F is not an automorphism"));
        for a in 0..c.object_count() {
            t.check(k.underlying(f.obj(a)) == k.underlying(a), || {
                format!("finset#{i}: Q(F({})) != Q({})", c.object_name(a), c.object_name(a))
            });
        }
        let again = NatTransformation::new(f.clone(), pi.clone(), built.comparison.components().to_vec());
        t.check(
            again.map(|a| a.is_natural_isomorphism()).unwrap_or(false),
            || format!("finset#{i}: F is not naturally isomorphic to π"),
        );
    }
    Ok(t)
}

fn end_monoids() -> Result<Tally> {
    let mut t = Tally::default();
    let k = finset_122();
    let c = k.cat();
    let index = |n: &str| c.object_index(n).expect("finset object");
    let m1 = end_monoid_of_object(c, index("s1"));
    let m2 = end_monoid_of_object(c, index("s2"));
    let m0 = end_monoid_of_object(c, index("s0"));
    t.check(m1.order() == 4 && m2.order() == 4, || {
        format!("END orders {} and {}", m1.order(), m2.order())
    });
    t.check(m0.order() == 1, || format!("END of the singleton has order {}", m0.order()));
    match monoids_isomorphic(&m1, &m2, DEFAULT_MONOID_CAP)? {
        Some(map) => t.check(is_monoid_isomorphism(&m1, &m2, &map), || {
            "END witness is not a monoid isomorphism".into()
        }),
        None => t.check(false, || "END(s1) and END(s2) reported non-isomorphic".into()),
    }
    Ok(t)
}

const TITLES: [&str; 11] = [
    "skeleton retraction is an equivalence naturally isomorphic to Id",
    "P4 swap has obstruction (b,c,1,2) and P4 is proper in both modes",
    "E3 φ′ is an equivalence with obstruction (e,f,2,1) and E3 is proper",
    "every promoted isomorphism and comparison is certified",
    "promotion is obstructed exactly when no isomorphism is naturally isomorphic",
    "criterion and oracle modes agree; uniform classes imply no-proper",
    "η* surjective exactly when there is no proper autoequivalence",
    "every autoequivalence of finset:1,2,2 is naturally isomorphic to Id",
    "transported bijections commute and build a verified automorphism",
    "END monoids of the 2-element sets are isomorphic of order 4; singleton trivial",
    "reports are byte-identical across runs and worker counts",
];

/// Runs criteria 1 to 10 on the corpus of `scope`.
pub fn run_criteria(scope: Scope, opts: SearchOptions) -> Result<Vec<CriterionResult>> {
    let items = corpus(scope);
    let run = |id: u32, t: Tally| t.finish(id, TITLES[id as usize - 1]);
    Ok(vec![
        run(1, per_item(&items, opts, skeleton_is_inner)?),
        run(2, p4_example()?),
        run(3, e3_example()?),
        run(4, per_item(&items, opts, promotion_sound)?),
        run(5, per_item(&items, opts, promotion_complete)?),
        run(6, per_item(&items, opts, modes_agree)?),
        run(7, per_item(&items, opts, eta_agrees)?),
        run(8, set_autoequivalences_inner(opts)?),
        run(9, transport_pipeline(opts)?),
        run(10, end_monoids()?),
    ])
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Runs the battery, then repeats it sequentially and with several workers
/// and checks that the serialized results are identical (criterion 11).
pub fn run_suite(scope: Scope, opts: SearchOptions) -> Result<SuiteReport> {
    let primary = with_pool(opts.workers, || run_criteria(scope, opts))?;
    let serialize = |c: &[CriterionResult]| serde_json::to_string(c).expect("results serialize");
    let reference = serialize(&primary);
    let mut t = Tally::default();
    for workers in [opts.workers, 1, opts.workers.max(4)] {
        let rerun = with_pool(workers, || run_criteria(scope, opts.workers(workers)))?;
        t.check(serialize(&rerun) == reference, || {
            format!("results differ with {workers} worker(s)")
        });
    }
    let mut criteria = primary;
    criteria.push(t.finish(11, TITLES[10]));
    Ok(SuiteReport {
        scope,
        corpus: corpus(scope).into_iter().map(|i| i.name).collect(),
        criteria,
    })
}
