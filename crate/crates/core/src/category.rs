//! Finite categories given by an explicit composition table.
//!
//! Composition is written in diagrammatic order throughout the crate:
//! `compose(f, g)` is "f then g" and is defined exactly when `cod(f) = dom(g)`.
//! Identities are never listed in input; every object `A` receives an identity
//! with the reserved id `id:A`. Internally the identities come first (in object
//! order), followed by the remaining morphisms in input order.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Prefix reserved for generated identity morphisms.
pub const IDENTITY_PREFIX: &str = "id:";

pub fn identity_id(object: &str) -> String {
    format!("{IDENTITY_PREFIX}{object}")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RawMorphism {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// An unvalidated category description, as read from a file or a builder.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    /// `[f, g, h]` meaning "f then g equals h".
    pub compose: Vec<[String; 3]>,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, id: impl Into<String>) -> Self {
        self.objects.push(id.into());
        self
    }

    pub fn morphism(
        mut self,
        id: impl Into<String>,
        dom: impl Into<String>,
        cod: impl Into<String>,
    ) -> Self {
        self.morphisms.push(RawMorphism {
            id: id.into(),
            dom: dom.into(),
            cod: cod.into(),
        });
        self
    }

    pub fn composite(
        mut self,
        first: impl Into<String>,
        second: impl Into<String>,
        result: impl Into<String>,
    ) -> Self {
        self.compose
            .push([first.into(), second.into(), result.into()]);
        self
    }

    pub fn validate(&self) -> Result<FinCat, ValidationReport> {
        FinCat::validate(self)
    }
}

/// One violated law or structural defect of a category candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    DuplicateObject {
        object: String,
    },
    DuplicateMorphism {
        morphism: String,
    },
    ReservedMorphismId {
        morphism: String,
    },
    DanglingEndpoint {
        morphism: String,
        object: String,
    },
    UnknownMorphismInComposition {
        morphism: String,
        triple: [String; 3],
    },
    NotComposable {
        first: String,
        second: String,
    },
    CompositeTypeMismatch {
        first: String,
        second: String,
        composite: String,
        expected_dom: String,
        expected_cod: String,
    },
    ConflictingComposite {
        first: String,
        second: String,
        composite: String,
        previous: String,
    },
    MissingComposite {
        first: String,
        second: String,
    },
    IdentityLaw {
        first: String,
        second: String,
        composite: String,
        expected: String,
    },
    Associativity {
        first: String,
        second: String,
        third: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateObject { object } => write!(f, "duplicate object `{object}`"),
            Violation::DuplicateMorphism { morphism } => {
                write!(f, "duplicate morphism `{morphism}`")
            }
            Violation::ReservedMorphismId { morphism } => write!(
                f,
                "morphism id `{morphism}` uses the reserved prefix `{IDENTITY_PREFIX}`"
            ),
            Violation::DanglingEndpoint { morphism, object } => {
                write!(f, "morphism `{morphism}` refers to unknown object `{object}`")
            }
            Violation::UnknownMorphismInComposition { morphism, triple } => write!(
                f,
                "composition {triple:?} refers to unknown morphism `{morphism}`"
            ),
            Violation::NotComposable { first, second } => {
                write!(f, "`{first}` then `{second}` is not composable")
            }
            Violation::CompositeTypeMismatch {
                first,
                second,
                composite,
                expected_dom,
                expected_cod,
            } => write!(
                f,
                "`{first}` then `{second}` = `{composite}` but the composite must be \
                 {expected_dom} -> {expected_cod}"
            ),
            Violation::ConflictingComposite {
                first,
                second,
                composite,
                previous,
            } => write!(
                f,
                "`{first}` then `{second}` given as both `{previous}` and `{composite}`"
            ),
            Violation::MissingComposite { first, second } => {
                write!(f, "no composite given for `{first}` then `{second}`")
            }
            Violation::IdentityLaw {
                first,
                second,
                composite,
                expected,
            } => write!(
                f,
                "`{first}` then `{second}` = `{composite}` violates the identity law \
                 (expected `{expected}`)"
            ),
            Violation::Associativity {
                first,
                second,
                third,
                left,
                right,
            } => write!(
                f,
                "associativity fails on (`{first}`, `{second}`, `{third}`): \
                 `{left}` != `{right}`"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub dom: usize,
    pub cod: usize,
}

/// A validated finite category. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    /// Row-major `morphisms.len()` squared table; `None` off composable pairs.
    table: Vec<Option<usize>>,
    /// `hom[a * n + b]` lists morphisms a -> b in internal order.
    hom: Vec<Vec<usize>>,
    inverse: Vec<Option<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

/// Partition of the objects into isomorphism classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoPartition {
    /// Classes ordered by their smallest member; members in object order.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl IsoPartition {
    pub fn class_size(&self, object: usize) -> usize {
        self.classes[self.class_of[object]].len()
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

impl FinCat {
    /// Checks every structural requirement and category law, collecting all
    /// violations rather than stopping at the first one.
    pub fn validate(raw: &RawCategory) -> Result<FinCat, ValidationReport> {
        let mut violations = Vec::new();

        let mut object_index = HashMap::new();
        let mut objects = Vec::new();
        for o in &raw.objects {
            if object_index.contains_key(o) {
                violations.push(Violation::DuplicateObject { object: o.clone() });
                continue;
            }
            object_index.insert(o.clone(), objects.len());
            objects.push(o.clone());
        }

        let mut morphisms: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism {
                id: identity_id(o),
                dom: i,
                cod: i,
            })
            .collect();
        let mut morphism_index: HashMap<String, usize> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), i))
            .collect();

        for m in &raw.morphisms {
            if m.id.starts_with(IDENTITY_PREFIX) {
                violations.push(Violation::ReservedMorphismId {
                    morphism: m.id.clone(),
                });
                continue;
            }
            if morphism_index.contains_key(&m.id) {
                violations.push(Violation::DuplicateMorphism {
                    morphism: m.id.clone(),
                });
                continue;
            }
            let mut endpoint = |o: &String| match object_index.get(o) {
                Some(&i) => Some(i),
                None => {
                    violations.push(Violation::DanglingEndpoint {
                        morphism: m.id.clone(),
                        object: o.clone(),
                    });
                    None
                }
            };
            let dom = endpoint(&m.dom);
            let cod = endpoint(&m.cod);
            if let (Some(dom), Some(cod)) = (dom, cod) {
                morphism_index.insert(m.id.clone(), morphisms.len());
                morphisms.push(Morphism {
                    id: m.id.clone(),
                    dom,
                    cod,
                });
            }
        }

        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        let n_obj = objects.len();
        let n_mor = morphisms.len();
        let identity: Vec<usize> = (0..n_obj).collect();
        let mut table: Vec<Option<usize>> = vec![None; n_mor * n_mor];
        for (f, m) in morphisms.iter().enumerate() {
            table[identity[m.dom] * n_mor + f] = Some(f);
            table[f * n_mor + identity[m.cod]] = Some(f);
        }

        let name = |i: usize| morphisms[i].id.clone();
        for triple in &raw.compose {
            let mut idx = [0usize; 3];
            let mut known = true;
            for (slot, id) in idx.iter_mut().zip(triple.iter()) {
                match morphism_index.get(id) {
                    Some(&i) => *slot = i,
                    None => {
                        violations.push(Violation::UnknownMorphismInComposition {
                            morphism: id.clone(),
                            triple: triple.clone(),
                        });
                        known = false;
                    }
                }
            }
            if !known {
                continue;
            }
            let [f, g, h] = idx;
            let (mf, mg, mh) = (&morphisms[f], &morphisms[g], &morphisms[h]);
            if mf.cod != mg.dom {
                violations.push(Violation::NotComposable {
                    first: name(f),
                    second: name(g),
                });
                continue;
            }
            if mh.dom != mf.dom || mh.cod != mg.cod {
                violations.push(Violation::CompositeTypeMismatch {
                    first: name(f),
                    second: name(g),
                    composite: name(h),
                    expected_dom: objects[mf.dom].clone(),
                    expected_cod: objects[mg.cod].clone(),
                });
                continue;
            }
            let f_is_id = f < n_obj;
            let g_is_id = g < n_obj;
            if f_is_id || g_is_id {
                let expected = if f_is_id { g } else { f };
                if h != expected {
                    violations.push(Violation::IdentityLaw {
                        first: name(f),
                        second: name(g),
                        composite: name(h),
                        expected: name(expected),
                    });
                }
                continue;
            }
            let slot = &mut table[f * n_mor + g];
            match *slot {
                Some(prev) if prev != h => violations.push(Violation::ConflictingComposite {
                    first: name(f),
                    second: name(g),
                    composite: name(h),
                    previous: name(prev),
                }),
                _ => *slot = Some(h),
            }
        }

        for f in 0..n_mor {
            for g in 0..n_mor {
                if morphisms[f].cod == morphisms[g].dom && table[f * n_mor + g].is_none() {
                    violations.push(Violation::MissingComposite {
                        first: name(f),
                        second: name(g),
                    });
                }
            }
        }

        for f in 0..n_mor {
            for g in 0..n_mor {
                let Some(fg) = table[f * n_mor + g] else {
                    continue;
                };
                for h in 0..n_mor {
                    let (Some(left), Some(gh)) = (table[fg * n_mor + h], table[g * n_mor + h])
                    else {
                        continue;
                    };
                    let Some(right) = table[f * n_mor + gh] else {
                        continue;
                    };
                    if left != right {
                        violations.push(Violation::Associativity {
                            first: name(f),
                            second: name(g),
                            third: name(h),
                            left: name(left),
                            right: name(right),
                        });
                    }
                }
            }
        }

        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.dom * n_obj + m.cod].push(i);
        }
        let inverse = (0..n_mor)
            .map(|f| {
                let m = &morphisms[f];
                hom[m.cod * n_obj + m.dom].iter().copied().find(|&g| {
                    table[f * n_mor + g] == Some(identity[m.dom])
                        && table[g * n_mor + f] == Some(identity[m.cod])
                })
            })
            .collect();

        Ok(FinCat {
            objects,
            morphisms,
            identity,
            table,
            hom,
            inverse,
            object_index,
            morphism_index,
        })
    }

    pub fn empty() -> FinCat {
        FinCat::validate(&RawCategory::default()).expect("empty category is valid")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, object: usize) -> &str {
        &self.objects[object]
    }

    pub fn morphism_name(&self, morphism: usize) -> &str {
        &self.morphisms[morphism].id
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    pub fn require_object(&self, id: &str) -> Result<usize> {
        self.object_index(id)
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn require_morphism(&self, id: &str) -> Result<usize> {
        self.morphism_index(id)
            .ok_or_else(|| Error::UnknownMorphism(id.to_string()))
    }

    pub fn dom(&self, morphism: usize) -> usize {
        self.morphisms[morphism].dom
    }

    pub fn cod(&self, morphism: usize) -> usize {
        self.morphisms[morphism].cod
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    pub fn is_identity(&self, morphism: usize) -> bool {
        morphism < self.objects.len()
    }

    /// "`f` then `g`", or `None` when `cod(f) != dom(g)`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.morphisms.len() + g]
    }

    /// Composes a composable path of morphisms in diagrammatic order.
    ///
    /// Panics when the path is not composable; callers build paths from
    /// morphisms whose endpoints they have already matched.
    pub fn then(&self, path: &[usize]) -> usize {
        let (&first, rest) = path.split_first().expect("non-empty path");
        rest.iter().fold(first, |acc, &g| {
            self.compose(acc, g).unwrap_or_else(|| {
                panic!(
                    "`{}` then `{}` is not composable",
                    self.morphism_name(acc),
                    self.morphism_name(g)
                )
            })
        })
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.objects.len() + b]
    }

    /// Two-sided inverse of `f`, when it exists. Inverses are unique.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    /// Looks up a morphism by id and returns its inverse id, if it is an
    /// isomorphism.
    pub fn inverse_of(&self, morphism: &str) -> Result<Option<&str>> {
        let f = self.require_morphism(morphism)?;
        Ok(self.inverse[f].map(|g| self.morphism_name(g)))
    }

    /// First isomorphism `a -> b` in morphism order.
    pub fn first_iso(&self, a: usize, b: usize) -> Option<usize> {
        self.hom(a, b).iter().copied().find(|&f| self.is_iso(f))
    }

    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        self.first_iso(a, b).is_some()
    }

    pub fn iso_classes(&self) -> IsoPartition {
        let n = self.objects.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (a..n).filter(|&b| self.isomorphic(a, b)).collect();
            for &b in &members {
                class_of[b] = classes.len();
            }
            classes.push(members);
        }
        IsoPartition { classes, class_of }
    }

    /// Every composable pair `(f, g)` with both members non-identity, together
    /// with their composite.
    pub fn nontrivial_composites(&self) -> Vec<(usize, usize, usize)> {
        let n_obj = self.objects.len();
        let mut out = Vec::new();
        for f in n_obj..self.morphisms.len() {
            let b = self.cod(f);
            for g in n_obj..self.morphisms.len() {
                if self.dom(g) == b {
                    out.push((f, g, self.compose(f, g).expect("validated")));
                }
            }
        }
        out
    }

    /// Canonical raw description: identities and identity composites omitted.
    pub fn to_raw(&self) -> RawCategory {
        let n_obj = self.objects.len();
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms[n_obj..]
                .iter()
                .map(|m| RawMorphism {
                    id: m.id.clone(),
                    dom: self.objects[m.dom].clone(),
                    cod: self.objects[m.cod].clone(),
                })
                .collect(),
            compose: self
                .nontrivial_composites()
                .into_iter()
                .map(|(f, g, h)| {
                    [
                        self.morphism_name(f).to_string(),
                        self.morphism_name(g).to_string(),
                        self.morphism_name(h).to_string(),
                    ]
                })
                .collect(),
        }
    }

    /// Full subcategory on `objects` (given in any order; the result keeps this
    /// category's order). Object and morphism ids are preserved.
    pub fn full_subcategory(&self, objects: &[usize]) -> FinCat {
        let mut keep = vec![false; self.objects.len()];
        for &o in objects {
            keep[o] = true;
        }
        let inside = |f: usize| keep[self.dom(f)] && keep[self.cod(f)];
        let mut raw = self.to_raw();
        raw.objects.retain(|o| keep[self.object_index[o]]);
        raw.morphisms.retain(|m| inside(self.morphism_index[&m.id]));
        raw.compose
            .retain(|[f, g, _]| inside(self.morphism_index[f]) && inside(self.morphism_index[g]));
        FinCat::validate(&raw).expect("full subcategory of a valid category is valid")
    }
}

/// Builds the thin category of a preorder: one morphism `x->y` for each related
/// pair, identities `id:x` for the reflexive pairs.
///
/// With `close` the reflexive-transitive closure of `pairs` is taken first.
/// Without it, `pairs` must already contain every reflexive pair and be
/// transitive. Non-identity morphisms are ordered by `(x, y)` element index.
pub fn from_preorder(elements: &[String], pairs: &[(String, String)], close: bool) -> Result<FinCat> {
    let n = elements.len();
    let index: HashMap<&str, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    let mut rel = vec![false; n * n];
    for (x, y) in pairs {
        let xi = *index
            .get(x.as_str())
            .ok_or_else(|| Error::UnknownElement(x.clone()))?;
        let yi = *index
            .get(y.as_str())
            .ok_or_else(|| Error::UnknownElement(y.clone()))?;
        rel[xi * n + yi] = true;
    }

    if close {
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
    } else {
        let mut missing = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let needed = if i == j {
                    true
                } else {
                    (0..n).any(|k| rel[i * n + k] && rel[k * n + j])
                };
                if needed && !rel[i * n + j] {
                    missing.push((elements[i].clone(), elements[j].clone()));
                }
            }
        }
        if !missing.is_empty() {
            return Err(Error::NotAPreorder { missing });
        }
    }

    let arrow = |i: usize, j: usize| {
        if i == j {
            identity_id(&elements[i])
        } else {
            format!("{}->{}", elements[i], elements[j])
        }
    };
    let mut raw = RawCategory {
        objects: elements.to_vec(),
        ..RawCategory::default()
    };
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i * n + j] {
                raw.morphisms.push(RawMorphism {
                    id: arrow(i, j),
                    dom: elements[i].clone(),
                    cod: elements[j].clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && rel[i * n + j] && rel[j * n + k] {
                    raw.compose.push([arrow(i, j), arrow(j, k), arrow(i, k)]);
                }
            }
        }
    }
    Ok(FinCat::validate(&raw)?)
}
