//! Concrete finite categories: each object carries a finite set of labels and
//! each morphism a total function between them, faithfully.
//!
//! Condition (*) asks that every bijection `u: Q(A) -> Q(B)` be realized by an
//! isomorphism `u*: C -> B` out of exactly one object `C` with `Q(C) = Q(A)`.
//! Under it, any autoequivalence whose components can be chosen as a commuting
//! family of bijections `Q(A) -> Q(π(A))` is isomorphic to an automorphism that
//! fixes every underlying set. If `Q` is representable by `W` and `π(W) ≅ W`,
//! such a family comes from transporting `Hom(W, -)` along `π`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::functor::{same_category, FinFunctor};
use crate::natural::NatTransformation;

pub const DEFAULT_SIZE_CAP: usize = 6;

/// A category with a faithful functor `Q` into finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteFinCat {
    cat: Arc<FinCat>,
    underlying: Vec<Vec<String>>,
    /// `mor_fn[f][i]` is the index in `Q(cod f)` of the image of the `i`-th
    /// element of `Q(dom f)`.
    mor_fn: Vec<Vec<usize>>,
}

impl ConcreteFinCat {
    /// Builds from label-level data. Identity functions may be omitted from
    /// `mor_fn`.
    pub fn new(
        cat: Arc<FinCat>,
        underlying: &BTreeMap<String, Vec<String>>,
        mor_fn: &BTreeMap<String, BTreeMap<String, String>>,
    ) -> Result<Self> {
        for o in underlying.keys() {
            cat.object_index(o)
                .ok_or_else(|| Error::InvalidConcrete(format!("underlying set for unknown object `{o}`")))?;
        }
        for m in mor_fn.keys() {
            cat.morphism_index(m)
                .ok_or_else(|| Error::InvalidConcrete(format!("function for unknown morphism `{m}`")))?;
        }
        let sets: Vec<Vec<String>> = cat
            .objects()
            .iter()
            .map(|o| {
                let set = underlying
                    .get(o)
                    .ok_or_else(|| Error::InvalidConcrete(format!("object `{o}` has no underlying set")))?;
                let distinct: BTreeSet<&String> = set.iter().collect();
                if distinct.len() != set.len() {
                    return Err(Error::InvalidConcrete(format!(
                        "underlying set of `{o}` repeats a label"
                    )));
                }
                Ok(set.clone())
            })
            .collect::<Result<_>>()?;
        let mut fns = Vec::with_capacity(cat.morphism_count());
        for (f, m) in cat.morphisms().iter().enumerate() {
            let (dom, cod) = (&sets[m.dom], &sets[m.cod]);
            let func = match mor_fn.get(&m.id) {
                None if cat.is_identity(f) => (0..dom.len()).collect(),
                None => {
                    return Err(Error::InvalidConcrete(format!(
                        "morphism `{}` has no function",
                        m.id
                    )))
                }
                Some(map) => {
                    if map.len() != dom.len() || dom.iter().any(|x| !map.contains_key(x)) {
                        return Err(Error::InvalidConcrete(format!(
                            "function of `{}` is not total on its domain",
                            m.id
                        )));
                    }
                    dom.iter()
                        .map(|x| {
                            cod.iter().position(|y| *y == map[x]).ok_or_else(|| {
                                Error::InvalidConcrete(format!(
                                    "function of `{}` leaves its codomain at `{x}`",
                                    m.id
                                ))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?
                }
            };
            fns.push(func);
        }
        Self::from_indices(cat, sets, fns)
    }

    /// Index-level constructor; checks functoriality and faithfulness.
    pub fn from_indices(
        cat: Arc<FinCat>,
        underlying: Vec<Vec<String>>,
        mor_fn: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let k = ConcreteFinCat {
            cat,
            underlying,
            mor_fn,
        };
        let c = &k.cat;
        for (f, m) in c.morphisms().iter().enumerate() {
            let func = &k.mor_fn[f];
            if func.len() != k.underlying[m.dom].len()
                || func.iter().any(|&y| y >= k.underlying[m.cod].len())
            {
                return Err(Error::InvalidConcrete(format!(
                    "function of `{}` has the wrong shape",
                    m.id
                )));
            }
        }
        for a in 0..c.object_count() {
            if !k.mor_fn[c.identity(a)].iter().enumerate().all(|(i, &j)| i == j) {
                return Err(Error::InvalidConcrete(format!(
                    "identity of `{}` is not the identity function",
                    c.object_name(a)
                )));
            }
        }
        for (f, g, h) in c.nontrivial_composites() {
            let composed: Vec<usize> = k.mor_fn[f].iter().map(|&x| k.mor_fn[g][x]).collect();
            if composed != k.mor_fn[h] {
                return Err(Error::InvalidConcrete(format!(
                    "functions do not respect `{}` then `{}`",
                    c.morphism_name(f),
                    c.morphism_name(g)
                )));
            }
        }
        for a in 0..c.object_count() {
            for b in 0..c.object_count() {
                let hom = c.hom(a, b);
                let distinct: BTreeSet<&Vec<usize>> = hom.iter().map(|&f| &k.mor_fn[f]).collect();
                if distinct.len() != hom.len() {
                    return Err(Error::InvalidConcrete(format!(
                        "the underlying-set functor is not faithful on Hom({}, {})",
                        c.object_name(a),
                        c.object_name(b)
                    )));
                }
            }
        }
        Ok(k)
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn underlying(&self, object: usize) -> &[String] {
        &self.underlying[object]
    }

    pub fn function(&self, morphism: usize) -> &[usize] {
        &self.mor_fn[morphism]
    }

    pub fn max_set_size(&self) -> usize {
        self.underlying.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn label_set(&self, object: usize) -> BTreeSet<&str> {
        self.underlying[object].iter().map(String::as_str).collect()
    }

    /// The morphism `dom -> cod` whose function sends the `i`-th label of
    /// `dom` to the label `targets[i]` of `cod`, if any.
    fn morphism_with_labels(&self, dom: usize, cod: usize, targets: &[&str]) -> Option<usize> {
        let cod_set = &self.underlying[cod];
        self.cat.hom(dom, cod).iter().copied().find(|&f| {
            self.mor_fn[f]
                .iter()
                .zip(targets)
                .all(|(&y, t)| cod_set[y] == *t)
        })
    }

    /// Label-level form of `mor_fn`, identities omitted.
    pub fn label_functions(&self) -> BTreeMap<String, BTreeMap<String, String>> {
        let c = &self.cat;
        c.morphisms()
            .iter()
            .enumerate()
            .filter(|(f, _)| !c.is_identity(*f))
            .map(|(f, m)| {
                let map = self.mor_fn[f]
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| {
                        (
                            self.underlying[m.dom][i].clone(),
                            self.underlying[m.cod][j].clone(),
                        )
                    })
                    .collect();
                (m.id.clone(), map)
            })
            .collect()
    }

    pub fn underlying_map(&self) -> BTreeMap<String, Vec<String>> {
        self.cat
            .objects()
            .iter()
            .cloned()
            .zip(self.underlying.iter().cloned())
            .collect()
    }
}

fn check_size_cap(k: &ConcreteFinCat, cap: usize) -> Result<()> {
    let m = k.max_set_size();
    if m > cap {
        return Err(Error::CapExceeded {
            what: "underlying set size".into(),
            actual: m,
            cap,
        });
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                go(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

/// A bijection `Q(A) -> Q(B)` for which condition (*) fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFailure {
    pub from: String,
    pub to: String,
    /// Label pairs `(x, u(x))` in the order of `Q(from)`.
    pub bijection: Vec<(String, String)>,
    /// Objects `C` with `Q(C) = Q(from)` carrying an isomorphism over the
    /// bijection; condition (*) needs exactly one.
    pub realizers: Vec<String>,
}

impl StarFailure {
    pub fn to_json(&self) -> Value {
        json!({
            "from": self.from,
            "to": self.to,
            "bijection": self.bijection,
            "realizers": self.realizers,
        })
    }
}

/// Checks condition (*) for every ordered pair of objects with equinumerous
/// underlying sets and every bijection between them. Returns every failure in
/// (pair, bijection) order; an empty list means (*) holds.
pub fn check_star_condition(k: &ConcreteFinCat, size_cap: usize) -> Result<Vec<StarFailure>> {
    check_size_cap(k, size_cap)?;
    let c = &k.cat;
    let mut failures = Vec::new();
    let mut perms: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for a in 0..c.object_count() {
        let same_labels: Vec<usize> = (0..c.object_count())
            .filter(|&x| k.label_set(x) == k.label_set(a))
            .collect();
        for b in 0..c.object_count() {
            let n = k.underlying[a].len();
            if k.underlying[b].len() != n {
                continue;
            }
            let all = perms.entry(n).or_insert_with(|| permutations(n));
            for perm in all.iter() {
                // u(x_i) = y_perm[i], with x in Q(A) order.
                let image: BTreeMap<&str, &str> = k.underlying[a]
                    .iter()
                    .zip(perm)
                    .map(|(x, &j)| (x.as_str(), k.underlying[b][j].as_str()))
                    .collect();
                let realizers: Vec<usize> = same_labels
                    .iter()
                    .copied()
                    .filter(|&cand| {
                        let targets: Vec<&str> = k.underlying[cand]
                            .iter()
                            .map(|x| image[x.as_str()])
                            .collect();
                        k.morphism_with_labels(cand, b, &targets)
                            .is_some_and(|f| c.is_iso(f))
                    })
                    .collect();
                if realizers.len() != 1 {
                    failures.push(StarFailure {
                        from: c.object_name(a).into(),
                        to: c.object_name(b).into(),
                        bijection: k.underlying[a]
                            .iter()
                            .map(|x| (x.clone(), image[x.as_str()].to_string()))
                            .collect(),
                        realizers: realizers
                            .iter()
                            .map(|&r| c.object_name(r).to_string())
                            .collect(),
                    });
                }
            }
        }
    }
    Ok(failures)
}

/// A natural isomorphism `Q ≅ Hom(W, -)`: `g[A][i]` is the morphism `W -> A`
/// matched with the `i`-th element of `Q(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub witness_object: usize,
    pub g: Vec<Vec<usize>>,
}

impl Representation {
    /// Element of `Q(A)` matched with `h: W -> A`.
    pub fn element_of(&self, object: usize, h: usize) -> Option<usize> {
        self.g[object].iter().position(|&x| x == h)
    }

    pub fn to_json(&self, k: &ConcreteFinCat) -> Value {
        let c = k.cat();
        let g: BTreeMap<&str, BTreeMap<&str, &str>> = (0..c.object_count())
            .map(|a| {
                (
                    c.object_name(a),
                    k.underlying(a)
                        .iter()
                        .zip(&self.g[a])
                        .map(|(x, &h)| (x.as_str(), c.morphism_name(h)))
                        .collect(),
                )
            })
            .collect();
        json!({ "witness_object": c.object_name(self.witness_object), "g": g })
    }
}

/// Certifies a representation: every `g_A` is a bijection and
/// `g_B(Q(f)(x)) = g_A(x) then f` for every `f: A -> B` and `x` in `Q(A)`.
pub fn verify_representation(k: &ConcreteFinCat, rep: &Representation) -> Result<()> {
    let c = &k.cat;
    let w = rep.witness_object;
    for a in 0..c.object_count() {
        let mut images = rep.g[a].clone();
        images.sort_unstable();
        let mut hom = c.hom(w, a).to_vec();
        hom.sort_unstable();
        if images != hom {
            return Err(Error::Verification(format!(
                "g at `{}` is not a bijection onto Hom",
                c.object_name(a)
            )));
        }
    }
    for (f, m) in c.morphisms().iter().enumerate() {
        for (x, &y) in k.mor_fn[f].iter().enumerate() {
            if rep.g[m.cod][y] != c.then(&[rep.g[m.dom][x], f]) {
                return Err(Error::Verification(format!(
                    "representation is not natural at `{}`",
                    m.id
                )));
            }
        }
    }
    Ok(())
}

/// Looks for a natural isomorphism `Q ≅ Hom(W, -)`.
///
/// Any such isomorphism is determined by the element `w` of `Q(W)` matched
/// with the identity of `W`: its inverse sends `h: W -> A` to `Q(h)(w)`. The
/// search tries each `w` in order, so a `None` is exhaustive.
pub fn find_representation(
    k: &ConcreteFinCat,
    witness: usize,
    size_cap: usize,
) -> Result<Option<Representation>> {
    check_size_cap(k, size_cap)?;
    let c = &k.cat;
    'points: for w in 0..k.underlying[witness].len() {
        let mut g = Vec::with_capacity(c.object_count());
        for a in 0..c.object_count() {
            let mut row = vec![usize::MAX; k.underlying[a].len()];
            let hom = c.hom(witness, a);
            if hom.len() != row.len() {
                continue 'points;
            }
            for &h in hom {
                let x = k.mor_fn[h][w];
                if row[x] != usize::MAX {
                    continue 'points;
                }
                row[x] = h;
            }
            g.push(row);
        }
        let rep = Representation {
            witness_object: witness,
            g,
        };
        verify_representation(k, &rep)?;
        return Ok(Some(rep));
    }
    Ok(None)
}

/// Per-object bijections `u_A: Q(A) -> Q(π(A))`, as index maps.
pub type BijectionFamily = Vec<Vec<usize>>;

fn require_concrete_autoequivalence(k: &ConcreteFinCat, pi: &FinFunctor) -> Result<()> {
    if !same_category(pi.source(), &k.cat) || !same_category(pi.target(), &k.cat) {
        return Err(Error::CategoryMismatch(
            "functor is not an endofunctor of the concrete category".into(),
        ));
    }
    if !pi.classify().equivalence {
        return Err(Error::NotAnEquivalence);
    }
    Ok(())
}

/// Checks `Q(f) then u_B = u_A then Q(π(f))` for every `f: A -> B`, and that
/// every `u_A` is a bijection.
pub fn check_commuting_family(k: &ConcreteFinCat, pi: &FinFunctor, u: &BijectionFamily) -> Result<()> {
    let c = &k.cat;
    if u.len() != c.object_count() {
        return Err(Error::Precondition("one bijection per object is required".into()));
    }
    for a in 0..c.object_count() {
        let n = k.underlying[a].len();
        let mut seen = vec![false; n];
        let ok = u[a].len() == n
            && k.underlying[pi.obj(a)].len() == n
            && u[a].iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true));
        if !ok {
            return Err(Error::Precondition(format!(
                "u at `{}` is not a bijection onto Q(π({}))",
                c.object_name(a),
                c.object_name(a)
            )));
        }
    }
    for (f, m) in c.morphisms().iter().enumerate() {
        let pf = pi.mor(f);
        for x in 0..k.underlying[m.dom].len() {
            if u[m.cod][k.mor_fn[f][x]] != k.mor_fn[pf][u[m.dom][x]] {
                return Err(Error::Precondition(format!(
                    "square at `{}` does not commute",
                    m.id
                )));
            }
        }
    }
    Ok(())
}

/// `u_A = g_A then π|Hom(W, A) then h⁻¹_{π(A)}`, where `g` represents `Q` at
/// `W` and `h` at `π(W)`. The resulting family is checked square by square.
pub fn saferepr_bijections(
    k: &ConcreteFinCat,
    pi: &FinFunctor,
    g: &Representation,
    h: &Representation,
) -> Result<BijectionFamily> {
    require_concrete_autoequivalence(k, pi)?;
    let c = &k.cat;
    let w = g.witness_object;
    if h.witness_object != pi.obj(w) {
        return Err(Error::Precondition(
            "second representation must sit at the image of the first witness".into(),
        ));
    }
    if !c.isomorphic(w, pi.obj(w)) {
        return Err(Error::Precondition(format!(
            "`{}` is not isomorphic to its image `{}`",
            c.object_name(w),
            c.object_name(pi.obj(w))
        )));
    }
    verify_representation(k, g)?;
    verify_representation(k, h)?;
    let u: BijectionFamily = (0..c.object_count())
        .map(|a| {
            g.g[a]
                .iter()
                .map(|&arrow| {
                    h.element_of(pi.obj(a), pi.mor(arrow))
                        .expect("π maps Hom(W, A) into Hom(π(W), π(A))")
                })
                .collect()
        })
        .collect();
    check_commuting_family(k, pi, &u)
        .map_err(|e| Error::Verification(format!("transported bijections: {e}")))?;
    Ok(u)
}

/// The automorphism `F` with `Q(F(A)) = Q(A)` that is naturally isomorphic to
/// `pi`, built by transporting structure along `u`.
#[derive(Clone, Debug)]
pub struct BuiltAutomorphism {
    pub functor: FinFunctor,
    /// Components `u*_A: F(A) -> π(A)`.
    pub comparison: NatTransformation,
}

pub fn genercond_build_automorphism(
    k: &ConcreteFinCat,
    pi: &FinFunctor,
    u: &BijectionFamily,
    size_cap: usize,
) -> Result<BuiltAutomorphism> {
    require_concrete_autoequivalence(k, pi)?;
    check_commuting_family(k, pi, u)?;
    if let Some(failure) = check_star_condition(k, size_cap)?.first() {
        return Err(Error::Precondition(format!(
            "condition (*) fails for {} -> {} along {:?}",
            failure.from, failure.to, failure.bijection
        )));
    }
    let c = &k.cat;
    let mut f_obj = Vec::with_capacity(c.object_count());
    let mut star = Vec::with_capacity(c.object_count());
    for a in 0..c.object_count() {
        let b = pi.obj(a);
        let image: BTreeMap<&str, &str> = k.underlying[a]
            .iter()
            .zip(&u[a])
            .map(|(x, &j)| (x.as_str(), k.underlying[b][j].as_str()))
            .collect();
        let labels = k.label_set(a);
        let found = (0..c.object_count())
            .filter(|&cand| k.label_set(cand) == labels)
            .find_map(|cand| {
                let targets: Vec<&str> = k.underlying[cand]
                    .iter()
                    .map(|x| image[x.as_str()])
                    .collect();
                k.morphism_with_labels(cand, b, &targets)
                    .filter(|&f| c.is_iso(f))
                    .map(|f| (cand, f))
            })
            .ok_or_else(|| Error::Verification("condition (*) held but no transport found".into()))?;
        f_obj.push(found.0);
        star.push(found.1);
    }
    let f_mor: Vec<usize> = c
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, m)| {
            let back = c.inverse(star[m.cod]).expect("transport is an isomorphism");
            c.then(&[star[m.dom], pi.mor(f), back])
        })
        .collect();
    let functor = FinFunctor::new(c.clone(), c.clone(), f_obj, f_mor)
        .map_err(|e| Error::Verification(format!("transported functor: {e}")))?;
    if !functor.classify().isomorphism {
        return Err(Error::Verification("transported functor is not an automorphism".into()));
    }
    for a in 0..c.object_count() {
        if k.label_set(functor.obj(a)) != k.label_set(a) {
            return Err(Error::Verification("transport changed an underlying set".into()));
        }
    }
    let comparison = NatTransformation::new(functor.clone(), pi.clone(), star)
        .map_err(|e| Error::Verification(format!("transport comparison: {e}")))?;
    if !comparison.is_natural_isomorphism() {
        return Err(Error::Verification("transport comparison is not invertible".into()));
    }
    Ok(BuiltAutomorphism {
        functor,
        comparison,
    })
}

/// Runs the representable pipeline for `pi`: represent `Q` at `witness` and at
/// `π(witness)`, transport the bijections, and build the automorphism.
pub fn automorphism_via_representation(
    k: &ConcreteFinCat,
    pi: &FinFunctor,
    witness: usize,
    size_cap: usize,
) -> Result<(BijectionFamily, BuiltAutomorphism)> {
    let g = find_representation(k, witness, size_cap)?.ok_or_else(|| {
        Error::Precondition(format!(
            "Q is not represented by `{}`",
            k.cat.object_name(witness)
        ))
    })?;
    let h = find_representation(k, pi.obj(witness), size_cap)?.ok_or_else(|| {
        Error::Precondition(format!(
            "Q is not represented by `{}`",
            k.cat.object_name(pi.obj(witness))
        ))
    })?;
    let u = saferepr_bijections(k, pi, &g, &h)?;
    let built = genercond_build_automorphism(k, pi, &u, size_cap)?;
    Ok((u, built))
}

pub fn bijections_to_json(k: &ConcreteFinCat, pi: &FinFunctor, u: &BijectionFamily) -> Value {
    let c = k.cat();
    let m: BTreeMap<&str, BTreeMap<&str, &str>> = (0..c.object_count())
        .map(|a| {
            (
                c.object_name(a),
                k.underlying(a)
                    .iter()
                    .zip(&u[a])
                    .map(|(x, &j)| (x.as_str(), k.underlying(pi.obj(a))[j].as_str()))
                    .collect(),
            )
        })
        .collect();
    json!(m)
}
