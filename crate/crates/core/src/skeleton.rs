//! Skeleton extraction and the retraction onto it.
//!
//! Each isomorphism class is represented by its member with the smallest input
//! index. For every object `A` the chosen isomorphism `u_A: A -> Ā` is the first
//! isomorphism in morphism order (the identity when `A` is the representative).
//! The retraction `ν` sends `f: A -> B` to `u_A⁻¹ then f then u_B`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::category::{FinCat, IsoPartition};
use crate::error::{Error, Result};
use crate::functor::{compose_functors, same_category, FinFunctor};
use crate::natural::NatTransformation;

#[derive(Clone, Debug)]
pub struct SkeletonData {
    base: Arc<FinCat>,
    classes: IsoPartition,
    representatives: Vec<usize>,
    sk_cat: Arc<FinCat>,
    u: Vec<usize>,
    nu: FinFunctor,
    retraction: FinFunctor,
    inclusion: FinFunctor,
}

pub fn compute_skeleton(base: &Arc<FinCat>) -> Result<SkeletonData> {
    let classes = base.iso_classes();
    let representatives: Vec<usize> = classes.classes.iter().map(|c| c[0]).collect();
    let rep_of = |a: usize| representatives[classes.class_of[a]];
    let u: Vec<usize> = (0..base.object_count())
        .map(|a| {
            base.first_iso(a, rep_of(a))
                .expect("objects in one class are isomorphic")
        })
        .collect();

    let nu_obj: Vec<usize> = (0..base.object_count()).map(rep_of).collect();
    let nu_mor: Vec<usize> = base
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, m)| {
            let back = base.inverse(u[m.dom]).expect("u_A is an isomorphism");
            base.then(&[back, f, u[m.cod]])
        })
        .collect();
    let nu = FinFunctor::new(base.clone(), base.clone(), nu_obj, nu_mor)
        .map_err(|e| Error::Verification(format!("skeleton retraction is not a functor: {e}")))?;

    let sk_cat = Arc::new(base.full_subcategory(&representatives));
    let sk_obj = |a: usize| {
        sk_cat
            .object_index(base.object_name(a))
            .expect("representative is in the skeleton")
    };
    let sk_mor = |f: usize| {
        sk_cat
            .morphism_index(base.morphism_name(f))
            .expect("morphism between representatives is in the skeleton")
    };
    let retraction = FinFunctor::new(
        base.clone(),
        sk_cat.clone(),
        nu.obj_map().iter().map(|&r| sk_obj(r)).collect(),
        nu.mor_map().iter().map(|&g| sk_mor(g)).collect(),
    )?;
    let inclusion = FinFunctor::new(
        sk_cat.clone(),
        base.clone(),
        sk_cat
            .objects()
            .iter()
            .map(|o| base.object_index(o).expect("shared ids"))
            .collect(),
        sk_cat
            .morphisms()
            .iter()
            .map(|m| base.morphism_index(&m.id).expect("shared ids"))
            .collect(),
    )?;

    Ok(SkeletonData {
        base: base.clone(),
        classes,
        representatives,
        sk_cat,
        u,
        nu,
        retraction,
        inclusion,
    })
}

impl SkeletonData {
    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn classes(&self) -> &IsoPartition {
        &self.classes
    }

    /// Representative of each class, in class order (base indices).
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative_of(&self, object: usize) -> usize {
        self.representatives[self.classes.class_of[object]]
    }

    pub fn sk_cat(&self) -> &Arc<FinCat> {
        &self.sk_cat
    }

    /// `u_A: A -> Ā` for every base object.
    pub fn u(&self, object: usize) -> usize {
        self.u[object]
    }

    pub fn u_family(&self) -> &[usize] {
        &self.u
    }

    /// The retraction as an endofunctor of the base category.
    pub fn nu(&self) -> &FinFunctor {
        &self.nu
    }

    /// The retraction corestricted to the skeleton.
    pub fn retraction(&self) -> &FinFunctor {
        &self.retraction
    }

    pub fn inclusion(&self) -> &FinFunctor {
        &self.inclusion
    }

    /// The natural isomorphism `Id => ν` with components `u_A`, checked square
    /// by square.
    pub fn verify_nu_inner(&self) -> Result<NatTransformation> {
        let id = FinFunctor::identity(self.base.clone());
        let witness = NatTransformation::new(id, self.nu.clone(), self.u.clone())
            .map_err(|e| Error::Verification(format!("u family is not natural: {e}")))?;
        if !witness.is_natural_isomorphism() {
            return Err(Error::Verification("some u_A is not an isomorphism".into()));
        }
        if !self.nu.classify().equivalence {
            return Err(Error::Verification(
                "skeleton retraction is not an equivalence".into(),
            ));
        }
        Ok(witness)
    }

    /// Lifts an automorphism `psi` of the skeleton to the endofunctor
    /// "ν then ψ" of the base category.
    pub fn lift_skeleton_automorphism(&self, psi: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(psi.source(), &self.sk_cat)
            || !same_category(psi.target(), &self.sk_cat)
            || !psi.classify().isomorphism
        {
            return Err(Error::NotAnAutomorphism("the skeleton".into()));
        }
        let through = compose_functors(&self.retraction, psi)?;
        compose_functors(&through, &self.inclusion)
    }

    pub fn to_json(&self) -> Value {
        let u: std::collections::BTreeMap<&str, &str> = self
            .u
            .iter()
            .enumerate()
            .map(|(a, &f)| (self.base.object_name(a), self.base.morphism_name(f)))
            .collect();
        let reps: Vec<&str> = self
            .representatives
            .iter()
            .map(|&r| self.base.object_name(r))
            .collect();
        json!({
            "representatives": reps,
            "u": u,
            "nu": self.nu.to_json(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn p4_retraction() {
        let c = Arc::new(catalog::p4());
        let s = compute_skeleton(&c).unwrap();
        let names: Vec<&str> = s.representatives().iter().map(|&r| c.object_name(r)).collect();
        assert_eq!(names, ["a", "b", "c"]);
        let d = c.object_index("d").unwrap();
        assert_eq!(c.morphism_name(s.u(d)), "d->c");
        assert_eq!(c.object_name(s.nu().obj(d)), "c");
        let ad = c.morphism_index("a->d").unwrap();
        assert_eq!(c.morphism_name(s.nu().mor(ad)), "a->c");
        assert_eq!(s.sk_cat().object_count(), 3);
        assert!(!s.nu().classify().isomorphism);
    }

    #[test]
    fn p4_inner_witness() {
        let c = Arc::new(catalog::p4());
        let w = compute_skeleton(&c).unwrap().verify_nu_inner().unwrap();
        let comps: Vec<&str> = w.components().iter().map(|&f| c.morphism_name(f)).collect();
        assert_eq!(comps, ["id:a", "id:b", "id:c", "d->c"]);
    }

    #[test]
    fn skeletal_category_retracts_to_identity() {
        let c = Arc::new(catalog::discrete(3));
        let s = compute_skeleton(&c).unwrap();
        assert_eq!(s.nu(), &FinFunctor::identity(c.clone()));
    }

    #[test]
    fn e3_retraction() {
        let c = Arc::new(catalog::e3());
        let s = compute_skeleton(&c).unwrap();
        let a = c.object_index("a").unwrap();
        assert_eq!(c.object_name(s.nu().obj(a)), "e");
        let w = s.verify_nu_inner().unwrap();
        assert_eq!(c.morphism_name(w.component(a)), "a->e");
    }

    #[test]
    fn lifting_identity_gives_nu() {
        let c = Arc::new(catalog::p4());
        let s = compute_skeleton(&c).unwrap();
        let id = FinFunctor::identity(s.sk_cat().clone());
        assert_eq!(&s.lift_skeleton_automorphism(&id).unwrap(), s.nu());
    }

    #[test]
    fn lifting_rejects_non_automorphism() {
        let c = Arc::new(catalog::p4());
        let s = compute_skeleton(&c).unwrap();
        let sk = s.sk_cat().clone();
        let konst = FinFunctor::from_object_map(sk.clone(), sk, vec![0, 0, 0]).unwrap();
        assert!(matches!(
            s.lift_skeleton_automorphism(&konst),
            Err(Error::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn terminal_and_empty() {
        let t = Arc::new(catalog::discrete(1));
        let w = compute_skeleton(&t).unwrap().verify_nu_inner().unwrap();
        assert_eq!(w, NatTransformation::identity(&FinFunctor::identity(t)));
        let e = Arc::new(FinCat::empty());
        let s = compute_skeleton(&e).unwrap();
        assert!(s.representatives().is_empty());
        s.verify_nu_inner().unwrap();
    }
}
