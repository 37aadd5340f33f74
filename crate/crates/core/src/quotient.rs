//! The monoid of endofunctors modulo natural isomorphism.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::category::FinCat;
use crate::equivalence::{has_proper_autoequivalence, Mode, Verdict};
use crate::error::{Error, Result};
use crate::functor::{compose_functors, FinFunctor};
use crate::natural::find_natural_isomorphism;
use crate::search::{enumerate_endofunctors, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    pub search: SearchOptions,
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            search: SearchOptions::default(),
            max_objects: 5,
            max_morphisms: 16,
        }
    }
}

impl QuotientOptions {
    pub fn unlimited(search: SearchOptions) -> Self {
        QuotientOptions {
            search,
            max_objects: usize::MAX,
            max_morphisms: usize::MAX,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EndoMonoidQuotient {
    base: Arc<FinCat>,
    endofunctors: Vec<FinFunctor>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    mult: Vec<Vec<usize>>,
    identity_class: usize,
    aut_image: Vec<usize>,
    invertible_classes: Vec<usize>,
    nodes_visited: u64,
}

/// Enumerates `End C`, partitions it by natural isomorphism and checks that
/// composition descends to the classes.
pub fn build_quotient(base: &Arc<FinCat>, opts: QuotientOptions) -> Result<EndoMonoidQuotient> {
    if base.object_count() > opts.max_objects {
        return Err(Error::CapExceeded {
            what: "object count".into(),
            actual: base.object_count(),
            cap: opts.max_objects,
        });
    }
    if base.morphism_count() > opts.max_morphisms {
        return Err(Error::CapExceeded {
            what: "morphism count".into(),
            actual: base.morphism_count(),
            cap: opts.max_morphisms,
        });
    }
    let enumeration = enumerate_endofunctors(base, opts.search)?;
    let endofunctors = enumeration.functors;
    let index: HashMap<(&[usize], &[usize]), usize> = endofunctors
        .iter()
        .enumerate()
        .map(|(i, f)| (f.sort_key(), i))
        .collect();

    // Enumeration order is lexicographic, so each class's first member is
    // its least element.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; endofunctors.len()];
    for (i, f) in endofunctors.iter().enumerate() {
        let mut found = None;
        for (k, class) in classes.iter().enumerate() {
            if find_natural_isomorphism(&endofunctors[class[0]], f)?.is_some() {
                found = Some(k);
                break;
            }
        }
        let k = found.unwrap_or_else(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(i);
        class_of[i] = k;
    }

    let lookup = |f: &FinFunctor| -> Result<usize> {
        index.get(&f.sort_key()).copied().ok_or_else(|| {
            Error::Verification("composite of endofunctors missing from enumeration".into())
        })
    };

    let n = classes.len();
    let mut mult = vec![vec![usize::MAX; n]; n];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let comp = compose_functors(&endofunctors[ci[0]], &endofunctors[cj[0]])?;
            mult[i][j] = class_of[lookup(&comp)?];
        }
    }
    // Composition must not depend on the chosen representatives.
    for (a, f) in endofunctors.iter().enumerate() {
        for (b, g) in endofunctors.iter().enumerate() {
            let comp = compose_functors(f, g)?;
            let got = class_of[lookup(&comp)?];
            if got != mult[class_of[a]][class_of[b]] {
                return Err(Error::Verification(
                    "natural isomorphism is not a congruence on the enumerated endofunctors"
                        .into(),
                ));
            }
        }
    }

    let id = FinFunctor::identity(base.clone());
    let identity_class = class_of[lookup(&id)?];
    let mut aut_image: Vec<usize> = endofunctors
        .iter()
        .enumerate()
        .filter(|(_, f)| f.classify().isomorphism)
        .map(|(i, _)| class_of[i])
        .collect();
    aut_image.sort_unstable();
    aut_image.dedup();
    let invertible_classes: Vec<usize> = (0..n)
        .filter(|&i| (0..n).any(|j| mult[i][j] == identity_class && mult[j][i] == identity_class))
        .collect();
    if aut_image.iter().any(|k| invertible_classes.binary_search(k).is_err()) {
        return Err(Error::Verification(
            "an automorphism class is not invertible".into(),
        ));
    }

    Ok(EndoMonoidQuotient {
        base: base.clone(),
        endofunctors,
        class_of,
        classes,
        mult,
        identity_class,
        aut_image,
        invertible_classes,
        nodes_visited: enumeration.nodes_visited,
    })
}

impl EndoMonoidQuotient {
    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn endofunctors(&self) -> &[FinFunctor] {
        &self.endofunctors
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The quotient map on enumerated endofunctors.
    pub fn eta(&self, endofunctor: usize) -> usize {
        self.class_of[endofunctor]
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn aut_image(&self) -> &[usize] {
        &self.aut_image
    }

    pub fn invertible_classes(&self) -> &[usize] {
        &self.invertible_classes
    }

    pub fn end0_size(&self) -> usize {
        self.classes.len()
    }

    pub fn aut0_size(&self) -> usize {
        self.invertible_classes.len()
    }

    pub fn nodes_visited(&self) -> u64 {
        self.nodes_visited
    }

    /// Least member of each class.
    pub fn class_representative(&self, class: usize) -> &FinFunctor {
        &self.endofunctors[self.classes[class][0]]
    }

    pub fn eta_star_surjective(&self) -> bool {
        self.aut_image == self.invertible_classes
    }

    pub fn to_json(&self) -> Value {
        let reps: Vec<Value> = (0..self.classes.len())
            .map(|k| self.class_representative(k).to_json())
            .collect();
        json!({
            "end_size": self.endofunctors.len(),
            "end0_size": self.end0_size(),
            "aut0_size": self.aut0_size(),
            "aut_image_size": self.aut_image.len(),
            "eta_star_surjective": self.eta_star_surjective(),
            "class_reps": reps,
        })
    }
}

pub fn eta_star_surjective(quotient: &EndoMonoidQuotient) -> bool {
    quotient.eta_star_surjective()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaAgreement {
    pub eta_star_surjective: bool,
    pub verdict: Verdict,
    pub nodes_visited: u64,
}

impl EtaAgreement {
    /// Surjectivity of η* should coincide with the absence of proper
    /// autoequivalences.
    pub fn agrees(&self) -> bool {
        self.eta_star_surjective == (self.verdict == Verdict::NoProper)
    }
}

pub fn verify_eta_iff_no_proper(base: &Arc<FinCat>, opts: QuotientOptions) -> Result<EtaAgreement> {
    let q = build_quotient(base, opts)?;
    let proper = has_proper_autoequivalence(base, Mode::Oracle, opts.search)?;
    Ok(EtaAgreement {
        eta_star_surjective: q.eta_star_surjective(),
        verdict: proper.verdict,
        nodes_visited: q.nodes_visited + proper.nodes_visited,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn quotient(c: FinCat) -> EndoMonoidQuotient {
        build_quotient(&Arc::new(c), QuotientOptions::default()).unwrap()
    }

    #[test]
    fn terminal() {
        let q = quotient(catalog::discrete(1));
        assert_eq!((q.endofunctors().len(), q.end0_size(), q.aut0_size()), (1, 1, 1));
        assert!(q.eta_star_surjective());
    }

    #[test]
    fn discrete_two() {
        let q = quotient(catalog::discrete(2));
        assert_eq!(q.endofunctors().len(), 4);
        assert_eq!(q.end0_size(), 4);
        assert_eq!(q.aut0_size(), 2);
        assert!(q.eta_star_surjective());
    }

    #[test]
    fn p4_is_not_surjective() {
        let q = quotient(catalog::p4());
        assert!(q.invertible_classes().len() > q.aut_image().len());
        assert!(!q.eta_star_surjective());
    }

    #[test]
    fn e3_is_not_surjective() {
        assert!(!quotient(catalog::e3()).eta_star_surjective());
    }

    #[test]
    fn size_cap() {
        let c = Arc::new(catalog::discrete(6));
        assert!(matches!(
            build_quotient(&c, QuotientOptions::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn agreement_on_small_cases() {
        for c in [catalog::discrete(1), catalog::p4(), catalog::e3(), FinCat::empty()] {
            let a = verify_eta_iff_no_proper(&Arc::new(c), QuotientOptions::default()).unwrap();
            assert!(a.agrees());
        }
    }
}
