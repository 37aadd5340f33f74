//! Natural transformations between parallel functors.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functor::{same_category, FinFunctor};

/// A certified natural transformation `from => to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    from: FinFunctor,
    to: FinFunctor,
    components: Vec<usize>,
}

fn check_parallel(from: &FinFunctor, to: &FinFunctor) -> Result<()> {
    if same_category(from.source(), to.source()) && same_category(from.target(), to.target()) {
        Ok(())
    } else {
        Err(Error::CategoryMismatch("functors are not parallel".into()))
    }
}

impl NatTransformation {
    /// Certifies a component family: each component has the right type and
    /// every naturality square `F(f) then c_B = c_A then G(f)` commutes.
    pub fn new(from: FinFunctor, to: FinFunctor, components: Vec<usize>) -> Result<Self> {
        check_parallel(&from, &to)?;
        let src = from.source().clone();
        let tgt = from.target().clone();
        if components.len() != src.object_count() {
            return Err(Error::Verification(format!(
                "{} components for {} objects",
                components.len(),
                src.object_count()
            )));
        }
        for (a, &c) in components.iter().enumerate() {
            if c >= tgt.morphism_count()
                || tgt.dom(c) != from.obj(a)
                || tgt.cod(c) != to.obj(a)
            {
                return Err(Error::Verification(format!(
                    "component at `{}` has the wrong type",
                    src.object_name(a)
                )));
            }
        }
        for (f, m) in src.morphisms().iter().enumerate() {
            let left = tgt.compose(from.mor(f), components[m.cod]);
            let right = tgt.compose(components[m.dom], to.mor(f));
            if left != right {
                return Err(Error::Verification(format!(
                    "naturality square at `{}` does not commute",
                    m.id
                )));
            }
        }
        Ok(NatTransformation {
            from,
            to,
            components,
        })
    }

    pub fn identity(functor: &FinFunctor) -> Self {
        let tgt = functor.target();
        let components = functor
            .obj_map()
            .iter()
            .map(|&b| tgt.identity(b))
            .collect();
        NatTransformation {
            from: functor.clone(),
            to: functor.clone(),
            components,
        }
    }

    pub fn from(&self) -> &FinFunctor {
        &self.from
    }

    pub fn to(&self) -> &FinFunctor {
        &self.to
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component(&self, object: usize) -> usize {
        self.components[object]
    }

    pub fn is_natural_isomorphism(&self) -> bool {
        let tgt = self.from.target();
        self.components.iter().all(|&c| tgt.is_iso(c))
    }

    /// Componentwise inverse of a natural isomorphism.
    pub fn inverse(&self) -> Option<NatTransformation> {
        let tgt = self.from.target();
        let components = self
            .components
            .iter()
            .map(|&c| tgt.inverse(c))
            .collect::<Option<Vec<_>>>()?;
        Some(NatTransformation {
            from: self.to.clone(),
            to: self.from.clone(),
            components,
        })
    }

    /// Vertical composite `self` then `next`.
    pub fn then(&self, next: &NatTransformation) -> Result<NatTransformation> {
        if self.to != next.from {
            return Err(Error::CategoryMismatch(
                "transformations are not vertically composable".into(),
            ));
        }
        let tgt = self.from.target();
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(&c, &d)| tgt.then(&[c, d]))
            .collect();
        NatTransformation::new(self.from.clone(), next.to.clone(), components)
    }

    pub fn to_json(&self) -> Value {
        let src = self.from.source();
        let tgt = self.from.target();
        let components: std::collections::BTreeMap<&str, &str> = self
            .components
            .iter()
            .enumerate()
            .map(|(a, &c)| (src.object_name(a), tgt.morphism_name(c)))
            .collect();
        json!({ "components": components })
    }
}

/// Every natural transformation `from => to`, ordered lexicographically by
/// component indices in object order.
pub fn enumerate_nat_trans(from: &FinFunctor, to: &FinFunctor) -> Result<Vec<NatTransformation>> {
    let mut out = Vec::new();
    component_search(from, to, false, &mut |c| {
        out.push(c.to_vec());
        true
    })?;
    Ok(out
        .into_iter()
        .map(|components| NatTransformation {
            from: from.clone(),
            to: to.clone(),
            components,
        })
        .collect())
}

/// First natural isomorphism `from => to` in enumeration order, if any.
pub fn find_natural_isomorphism(
    from: &FinFunctor,
    to: &FinFunctor,
) -> Result<Option<NatTransformation>> {
    check_parallel(from, to)?;
    let tgt = from.target();
    if (0..from.source().object_count()).any(|a| !tgt.isomorphic(from.obj(a), to.obj(a))) {
        return Ok(None);
    }
    let mut hit = None;
    component_search(from, to, true, &mut |c| {
        hit = Some(c.to_vec());
        false
    })?;
    Ok(hit.map(|components| NatTransformation {
        from: from.clone(),
        to: to.clone(),
        components,
    }))
}

pub fn are_naturally_isomorphic(from: &FinFunctor, to: &FinFunctor) -> Result<bool> {
    Ok(find_natural_isomorphism(from, to)?.is_some())
}

/// Backtracks over components in object order; `visit` returns whether to
/// continue.
fn component_search(
    from: &FinFunctor,
    to: &FinFunctor,
    iso_only: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    check_parallel(from, to)?;
    let src = from.source();
    let n = src.object_count();
    // Squares to check once both endpoints have components.
    let mut squares: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (f, m) in src.morphisms().iter().enumerate() {
        if !src.is_identity(f) {
            squares[m.dom.max(m.cod)].push(f);
        }
    }
    let mut comps = vec![usize::MAX; n];

    fn go(
        a: usize,
        from: &FinFunctor,
        to: &FinFunctor,
        iso_only: bool,
        squares: &[Vec<usize>],
        comps: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let src = from.source();
        let tgt = from.target();
        if a == src.object_count() {
            return visit(comps);
        }
        for &c in tgt.hom(from.obj(a), to.obj(a)) {
            if iso_only && !tgt.is_iso(c) {
                continue;
            }
            comps[a] = c;
            let natural = squares[a].iter().all(|&f| {
                let (d, e) = (src.dom(f), src.cod(f));
                tgt.compose(from.mor(f), comps[e]) == tgt.compose(comps[d], to.mor(f))
            });
            if natural && !go(a + 1, from, to, iso_only, squares, comps, visit) {
                return false;
            }
        }
        comps[a] = usize::MAX;
        true
    }

    go(0, from, to, iso_only, &squares, &mut comps, visit);
    Ok(())
}
