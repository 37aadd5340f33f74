//! When is an equivalence naturally isomorphic to an isomorphism?
//!
//! An equivalence `π: C -> D` is isomorphic to an isomorphism exactly when every
//! iso-class `[X]` of `C` has the same size as the class `[π(X)]` of `D`. When
//! the sizes agree, [`promote_to_isomorphism`] builds such an isomorphism
//! together with the natural isomorphism to `π`. A category has a proper
//! autoequivalence exactly when some automorphism of its skeleton moves an
//! object to one whose class has a different size.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::functor::{compose_functors, FinFunctor};
use crate::natural::{find_natural_isomorphism, NatTransformation};
use crate::search::{self, SearchOptions};
use crate::skeleton::{compute_skeleton, SkeletonData};

/// A class-size mismatch `|[source]| != |[target]|` with `target = π(source)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub source: String,
    pub target: String,
    pub source_class_size: usize,
    pub target_class_size: usize,
}

impl Obstruction {
    pub fn new(source: &str, target: &str, source_class_size: usize, target_class_size: usize) -> Self {
        Obstruction {
            source: source.into(),
            target: target.into(),
            source_class_size,
            target_class_size,
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.source, self.target, self.source_class_size, self.target_class_size
        )
    }
}

/// Checks class sizes along `pi`, one entry per source class (represented by
/// its first member). Returns every mismatch; empty means the criterion holds.
pub fn fiber_criterion(pi: &FinFunctor) -> Result<Vec<Obstruction>> {
    if !pi.classify().equivalence {
        return Err(Error::NotAnEquivalence);
    }
    Ok(class_mismatches(pi))
}

fn class_mismatches(pi: &FinFunctor) -> Vec<Obstruction> {
    let src = pi.source();
    let tgt = pi.target();
    let src_classes = src.iso_classes();
    let tgt_classes = tgt.iso_classes();
    src_classes
        .classes
        .iter()
        .filter_map(|class| {
            let x = class[0];
            let y = pi.obj(x);
            let (sx, sy) = (class.len(), tgt_classes.class_size(y));
            (sx != sy).then(|| {
                Obstruction::new(src.object_name(x), tgt.object_name(y), sx, sy)
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub enum PromotionResult {
    /// `phi` is an isomorphism of categories and `tau: phi => pi` is a natural
    /// isomorphism.
    Promoted {
        phi: FinFunctor,
        tau: NatTransformation,
    },
    Obstructed(Vec<Obstruction>),
}

impl PromotionResult {
    pub fn is_promoted(&self) -> bool {
        matches!(self, PromotionResult::Promoted { .. })
    }

    pub fn obstructions(&self) -> &[Obstruction] {
        match self {
            PromotionResult::Promoted { .. } => &[],
            PromotionResult::Obstructed(o) => o,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PromotionResult::Promoted { phi, tau } => json!({
                "outcome": "promoted",
                "phi": phi.to_json(),
                "tau": tau.to_json(),
            }),
            PromotionResult::Obstructed(o) => json!({
                "outcome": "obstructed",
                "obstructions": o,
            }),
        }
    }
}

/// Promotes an equivalence to an isomorphism naturally isomorphic to it.
///
/// Works on `α = π then ν`, where `ν` retracts `D` onto its skeleton. For
/// each representative `Y` the fiber `α⁻¹(Y)` is matched bijectively with the
/// class `[Y]`: objects go to their `π`-image when it is still free, the rest
/// are paired in input order. Morphisms are transported along the chosen
/// isomorphisms, `φ(f) = u_{φA} then α(f) then u_{φB}⁻¹`, and the comparison
/// `τ_A = u_{φA} then u_{πA}⁻¹` is natural from `φ` to `π`.
pub fn promote_to_isomorphism(pi: &FinFunctor) -> Result<PromotionResult> {
    let obstructions = fiber_criterion(pi)?;
    if !obstructions.is_empty() {
        return Ok(PromotionResult::Obstructed(obstructions));
    }
    let src = pi.source().clone();
    let tgt = pi.target().clone();
    let sk = compute_skeleton(&tgt)?;
    let alpha = compose_functors(pi, sk.nu())?;

    let mut phi_obj = vec![usize::MAX; src.object_count()];
    let classes = sk.classes();
    for (class_index, &rep) in sk.representatives().iter().enumerate() {
        let fiber: Vec<usize> = (0..src.object_count())
            .filter(|&a| alpha.obj(a) == rep)
            .collect();
        let class = &classes.classes[class_index];
        if fiber.len() != class.len() {
            return Err(Error::Verification(format!(
                "fiber over `{}` has {} objects but its class has {}",
                tgt.object_name(rep),
                fiber.len(),
                class.len()
            )));
        }
        let mut taken = vec![false; tgt.object_count()];
        let mut pending = Vec::new();
        for &a in &fiber {
            let image = pi.obj(a);
            if !taken[image] {
                taken[image] = true;
                phi_obj[a] = image;
            } else {
                pending.push(a);
            }
        }
        let mut free = class.iter().copied().filter(|&b| !taken[b]);
        for a in pending {
            phi_obj[a] = free.next().expect("fiber and class have equal size");
        }
    }

    let u = |b: usize| sk.u(b);
    let u_inv = |b: usize| tgt.inverse(sk.u(b)).expect("u is an isomorphism");
    let phi_mor: Vec<usize> = src
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, m)| tgt.then(&[u(phi_obj[m.dom]), alpha.mor(f), u_inv(phi_obj[m.cod])]))
        .collect();
    let phi = FinFunctor::new(src.clone(), tgt.clone(), phi_obj, phi_mor)
        .map_err(|e| Error::Verification(format!("promoted map is not a functor: {e}")))?;
    if !phi.classify().isomorphism {
        return Err(Error::Verification(
            "promoted functor is not an isomorphism".into(),
        ));
    }
    let tau_components = (0..src.object_count())
        .map(|a| tgt.then(&[u(phi.obj(a)), u_inv(pi.obj(a))]))
        .collect();
    let tau = NatTransformation::new(phi.clone(), pi.clone(), tau_components)
        .map_err(|e| Error::Verification(format!("comparison is not natural: {e}")))?;
    if !tau.is_natural_isomorphism() {
        return Err(Error::Verification(
            "comparison has a non-invertible component".into(),
        ));
    }
    Ok(PromotionResult::Promoted { phi, tau })
}

/// Exhaustive check: some isomorphism `C -> D` naturally isomorphic to `pi`.
pub fn isomorphism_naturally_isomorphic_to(
    pi: &FinFunctor,
    opts: SearchOptions,
) -> Result<(Option<(FinFunctor, NatTransformation)>, u64)> {
    let isos = search::enumerate_isomorphisms(pi.source(), pi.target(), opts)?;
    for phi in isos.functors {
        if let Some(tau) = find_natural_isomorphism(&phi, pi)? {
            return Ok((Some((phi, tau)), isos.nodes_visited));
        }
    }
    Ok((None, isos.nodes_visited))
}

/// "ν then ψ" for an automorphism `psi` of the skeleton, with its properness
/// decided by the class-size criterion.
pub fn proper_witness_from_skeleton_aut(
    skeleton: &SkeletonData,
    psi: &FinFunctor,
) -> Result<(FinFunctor, bool)> {
    let lifted = skeleton.lift_skeleton_automorphism(psi)?;
    let proper = !fiber_criterion(&lifted)?.is_empty();
    Ok((lifted, proper))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Proper,
    NoProper,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Proper => "proper",
            Verdict::NoProper => "no-proper",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Criterion,
    Oracle,
    Both,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "criterion" => Ok(Mode::Criterion),
            "oracle" => Ok(Mode::Oracle),
            "both" => Ok(Mode::Both),
            other => Err(Error::Format(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProperAnalysis {
    pub verdict: Verdict,
    pub witness: Option<FinFunctor>,
    pub obstructions: Vec<Obstruction>,
    pub criterion: Option<Verdict>,
    pub oracle: Option<Verdict>,
    pub nodes_visited: u64,
}

impl ProperAnalysis {
    /// `Some(false)` when both modes ran and disagree.
    pub fn agreement(&self) -> Option<bool> {
        Some(self.criterion? == self.oracle?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.as_str(),
            "witness": self.witness.as_ref().map(FinFunctor::to_json),
            "obstructions": self.obstructions,
            "criterion": self.criterion.map(Verdict::as_str),
            "oracle": self.oracle.map(Verdict::as_str),
            "agreement": self.agreement(),
        })
    }
}

struct ModeResult {
    verdict: Verdict,
    witness: Option<FinFunctor>,
    nodes: u64,
}

fn criterion_mode(category: &Arc<FinCat>, opts: SearchOptions) -> Result<ModeResult> {
    let sk = compute_skeleton(category)?;
    let classes = sk.classes();
    let auts = search::enumerate_automorphisms(sk.sk_cat(), opts)?;
    let sk_cat = sk.sk_cat();
    let base_index = |x: usize| {
        category
            .object_index(sk_cat.object_name(x))
            .expect("skeleton shares ids")
    };
    for gamma in &auts.functors {
        let moves_class_size = (0..sk_cat.object_count()).any(|x| {
            classes.class_size(base_index(x)) != classes.class_size(base_index(gamma.obj(x)))
        });
        if moves_class_size {
            let (witness, _) = proper_witness_from_skeleton_aut(&sk, gamma)?;
            return Ok(ModeResult {
                verdict: Verdict::Proper,
                witness: Some(witness),
                nodes: auts.nodes_visited,
            });
        }
    }
    Ok(ModeResult {
        verdict: Verdict::NoProper,
        witness: None,
        nodes: auts.nodes_visited,
    })
}

fn oracle_mode(category: &Arc<FinCat>, opts: SearchOptions) -> Result<ModeResult> {
    let equivalences = search::enumerate_autoequivalences(category, opts)?;
    let automorphisms: Vec<&FinFunctor> = equivalences
        .functors
        .iter()
        .filter(|f| f.classify().isomorphism)
        .collect();
    for pi in &equivalences.functors {
        let mut inner = false;
        for aut in &automorphisms {
            if find_natural_isomorphism(aut, pi)?.is_some() {
                inner = true;
                break;
            }
        }
        if !inner {
            return Ok(ModeResult {
                verdict: Verdict::Proper,
                witness: Some(pi.clone()),
                nodes: equivalences.nodes_visited,
            });
        }
    }
    Ok(ModeResult {
        verdict: Verdict::NoProper,
        witness: None,
        nodes: equivalences.nodes_visited,
    })
}

/// Decides whether `category` has an autoequivalence naturally isomorphic to
/// no automorphism.
///
/// `Criterion` inspects automorphisms of the skeleton only; `Oracle` compares
/// every autoequivalence with every automorphism. `Both` runs the two and
/// records their verdicts; when they disagree the oracle's verdict is reported
/// and [`ProperAnalysis::agreement`] is `Some(false)`.
pub fn has_proper_autoequivalence(
    category: &Arc<FinCat>,
    mode: Mode,
    opts: SearchOptions,
) -> Result<ProperAnalysis> {
    let criterion = match mode {
        Mode::Criterion | Mode::Both => Some(criterion_mode(category, opts)?),
        Mode::Oracle => None,
    };
    let oracle = match mode {
        Mode::Oracle | Mode::Both => Some(oracle_mode(category, opts)?),
        Mode::Criterion => None,
    };
    let nodes_visited = criterion.as_ref().map_or(0, |r| r.nodes) + oracle.as_ref().map_or(0, |r| r.nodes);
    let criterion_verdict = criterion.as_ref().map(|r| r.verdict);
    let oracle_verdict = oracle.as_ref().map(|r| r.verdict);
    let chosen = match (criterion, oracle) {
        (Some(c), Some(o)) if c.verdict == o.verdict => c,
        (_, Some(o)) => o,
        (Some(c), None) => c,
        (None, None) => unreachable!("at least one mode runs"),
    };
    let obstructions = match &chosen.witness {
        Some(w) => fiber_criterion(w)?,
        None => Vec::new(),
    };
    Ok(ProperAnalysis {
        verdict: chosen.verdict,
        witness: chosen.witness,
        obstructions,
        criterion: criterion_verdict,
        oracle: oracle_verdict,
        nodes_visited,
    })
}

/// True when all iso-classes have the same size. Such a category has no
/// proper autoequivalence.
pub fn uniform_class_check(category: &FinCat) -> bool {
    let classes = category.iso_classes().classes;
    classes.windows(2).all(|w| w[0].len() == w[1].len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn named(c: &FinCat, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| c.object_index(n).unwrap()).collect()
    }

    fn p4_proper() -> FinFunctor {
        let c = Arc::new(catalog::p4());
        let sk = compute_skeleton(&c).unwrap();
        let sk_cat = sk.sk_cat().clone();
        let psi = FinFunctor::from_object_map(sk_cat.clone(), sk_cat, vec![0, 2, 1]).unwrap();
        let (w, proper) = proper_witness_from_skeleton_aut(&sk, &psi).unwrap();
        assert!(proper);
        w
    }

    #[test]
    fn p4_witness_object_map() {
        let w = p4_proper();
        let c = w.source().clone();
        assert_eq!(w.obj_map(), named(&c, &["a", "c", "b", "b"]).as_slice());
        assert!(w.classify().equivalence);
        assert!(!w.classify().isomorphism);
    }

    #[test]
    fn p4_obstruction() {
        let obs = fiber_criterion(&p4_proper()).unwrap();
        assert_eq!(obs[0], Obstruction::new("b", "c", 1, 2));
        assert_eq!(obs, vec![Obstruction::new("b", "c", 1, 2), Obstruction::new("c", "b", 2, 1)]);
        let r = promote_to_isomorphism(&p4_proper()).unwrap();
        assert_eq!(r.obstructions(), obs.as_slice());
    }

    #[test]
    fn identity_promotes_to_itself() {
        let c = Arc::new(catalog::p4());
        let id = FinFunctor::identity(c.clone());
        assert!(fiber_criterion(&id).unwrap().is_empty());
        match promote_to_isomorphism(&id).unwrap() {
            PromotionResult::Promoted { phi, tau } => {
                assert_eq!(phi, id);
                assert_eq!(tau, NatTransformation::identity(&id));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isopair_collapse_promotes() {
        let c = Arc::new(catalog::isopair());
        let collapse = FinFunctor::from_object_map(c.clone(), c.clone(), vec![0, 0]).unwrap();
        assert!(collapse.classify().equivalence);
        match promote_to_isomorphism(&collapse).unwrap() {
            PromotionResult::Promoted { phi, tau } => {
                assert!(phi.classify().isomorphism);
                assert_eq!(tau.to(), &collapse);
                assert!(tau.is_natural_isomorphism());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_equivalence_rejected() {
        let c = Arc::new(catalog::p4());
        let konst = FinFunctor::from_object_map(c.clone(), c, vec![0; 4]).unwrap();
        assert!(matches!(fiber_criterion(&konst), Err(Error::NotAnEquivalence)));
        assert!(matches!(promote_to_isomorphism(&konst), Err(Error::NotAnEquivalence)));
    }

    #[test]
    fn verdicts_on_catalog() {
        let opts = SearchOptions::default();
        for (c, expected) in [
            (catalog::p4(), Verdict::Proper),
            (catalog::e3(), Verdict::Proper),
            (catalog::discrete(3), Verdict::NoProper),
            (catalog::isopair(), Verdict::NoProper),
            (FinCat::empty(), Verdict::NoProper),
        ] {
            let c = Arc::new(c);
            let a = has_proper_autoequivalence(&c, Mode::Both, opts).unwrap();
            assert_eq!(a.verdict, expected);
            assert_eq!(a.agreement(), Some(true));
        }
    }

    #[test]
    fn uniform_classes() {
        assert!(uniform_class_check(&catalog::isopairs(2)));
        assert!(!uniform_class_check(&catalog::p4()));
        assert!(uniform_class_check(&catalog::discrete(4)));
        assert!(uniform_class_check(&FinCat::empty()));
    }
}
