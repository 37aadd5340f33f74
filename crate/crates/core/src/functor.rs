//! Functors between finite categories.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category::FinCat;
use crate::error::{Error, Result};

/// A certified functor. Construct through [`FinFunctor::new`] or the search
/// routines; both guarantee the functor laws.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Eq for FinFunctor {}

pub(crate) fn same_category(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FunctorViolation {
    WrongLength { what: String, expected: usize, actual: usize },
    DanglingObject { object: String, image: usize },
    DanglingMorphism { morphism: String, image: usize },
    TypeMismatch {
        morphism: String,
        image: String,
        expected_dom: String,
        expected_cod: String,
    },
    IdentityNotPreserved { object: String, image: String },
    CompositionNotPreserved {
        first: String,
        second: String,
        image_of_composite: String,
        composite_of_images: String,
    },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::WrongLength {
                what,
                expected,
                actual,
            } => write!(f, "{what} has {actual} entries, expected {expected}"),
            FunctorViolation::DanglingObject { object, image } => {
                write!(f, "object `{object}` maps to nonexistent index {image}")
            }
            FunctorViolation::DanglingMorphism { morphism, image } => {
                write!(f, "morphism `{morphism}` maps to nonexistent index {image}")
            }
            FunctorViolation::TypeMismatch {
                morphism,
                image,
                expected_dom,
                expected_cod,
            } => write!(
                f,
                "`{morphism}` maps to `{image}`, which is not {expected_dom} -> {expected_cod}"
            ),
            FunctorViolation::IdentityNotPreserved { object, image } => {
                write!(f, "identity of `{object}` maps to non-identity `{image}`")
            }
            FunctorViolation::CompositionNotPreserved {
                first,
                second,
                image_of_composite,
                composite_of_images,
            } => write!(
                f,
                "`{first}` then `{second}`: image of composite `{image_of_composite}` != \
                 composite of images `{composite_of_images}`"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorViolations {
    pub violations: Vec<FunctorViolation>,
}

impl fmt::Display for FunctorViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for FunctorViolations {}

/// Name-based functor description, the serialized form
/// `{"obj_map": {...}, "mor_map": {...}}`. A morphism may be omitted from
/// `mor_map` when its image is forced: identities, and any morphism whose
/// target hom-set has a single element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorCandidate {
    pub obj_map: BTreeMap<String, String>,
    #[serde(default)]
    pub mor_map: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorFlags {
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
    pub equivalence: bool,
    pub isomorphism: bool,
}

impl FinFunctor {
    /// Certifies index-level maps as a functor, reporting every violated law.
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<FinFunctor> {
        let mut v = Vec::new();
        if obj_map.len() != source.object_count() {
            v.push(FunctorViolation::WrongLength {
                what: "obj_map".into(),
                expected: source.object_count(),
                actual: obj_map.len(),
            });
        }
        if mor_map.len() != source.morphism_count() {
            v.push(FunctorViolation::WrongLength {
                what: "mor_map".into(),
                expected: source.morphism_count(),
                actual: mor_map.len(),
            });
        }
        if !v.is_empty() {
            return Err(FunctorViolations { violations: v }.into());
        }
        for (a, &img) in obj_map.iter().enumerate() {
            if img >= target.object_count() {
                v.push(FunctorViolation::DanglingObject {
                    object: source.object_name(a).into(),
                    image: img,
                });
            }
        }
        for (f, &img) in mor_map.iter().enumerate() {
            if img >= target.morphism_count() {
                v.push(FunctorViolation::DanglingMorphism {
                    morphism: source.morphism_name(f).into(),
                    image: img,
                });
            }
        }
        if !v.is_empty() {
            return Err(FunctorViolations { violations: v }.into());
        }

        for (f, &img) in mor_map.iter().enumerate() {
            let (a, b) = (obj_map[source.dom(f)], obj_map[source.cod(f)]);
            if target.dom(img) != a || target.cod(img) != b {
                v.push(FunctorViolation::TypeMismatch {
                    morphism: source.morphism_name(f).into(),
                    image: target.morphism_name(img).into(),
                    expected_dom: target.object_name(a).into(),
                    expected_cod: target.object_name(b).into(),
                });
            }
        }
        for a in 0..source.object_count() {
            let img = mor_map[source.identity(a)];
            if img != target.identity(obj_map[a]) {
                v.push(FunctorViolation::IdentityNotPreserved {
                    object: source.object_name(a).into(),
                    image: target.morphism_name(img).into(),
                });
            }
        }
        if v.is_empty() {
            for (f, g, h) in source.nontrivial_composites() {
                let images = target.compose(mor_map[f], mor_map[g]);
                if images != Some(mor_map[h]) {
                    v.push(FunctorViolation::CompositionNotPreserved {
                        first: source.morphism_name(f).into(),
                        second: source.morphism_name(g).into(),
                        image_of_composite: target.morphism_name(mor_map[h]).into(),
                        composite_of_images: images
                            .map(|i| target.morphism_name(i).to_string())
                            .unwrap_or_else(|| "<undefined>".into()),
                    });
                }
            }
        }
        if !v.is_empty() {
            return Err(FunctorViolations { violations: v }.into());
        }
        Ok(FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    /// Skips certification. Only for search routines that build functors law
    /// by law; debug builds still re-check.
    pub(crate) fn new_trusted(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> FinFunctor {
        if cfg!(debug_assertions) {
            return FinFunctor::new(source, target, obj_map, mor_map)
                .expect("search produced an invalid functor");
        }
        FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    /// Resolves a name-based candidate, filling in forced images.
    pub fn from_candidate(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        candidate: &FunctorCandidate,
    ) -> Result<FinFunctor> {
        for key in candidate.obj_map.keys() {
            source.require_object(key)?;
        }
        for key in candidate.mor_map.keys() {
            source.require_morphism(key)?;
        }
        let obj_map = source
            .objects()
            .iter()
            .map(|o| {
                let img = candidate
                    .obj_map
                    .get(o)
                    .ok_or_else(|| Error::Format(format!("obj_map has no entry for `{o}`")))?;
                target.require_object(img)
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = source
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| match candidate.mor_map.get(&m.id) {
                Some(img) => target.require_morphism(img),
                None if source.is_identity(f) => Ok(target.identity(obj_map[m.dom])),
                None if target.hom(obj_map[m.dom], obj_map[m.cod]).len() == 1 => {
                    Ok(target.hom(obj_map[m.dom], obj_map[m.cod])[0])
                }
                None => Err(Error::Format(format!(
                    "mor_map has no entry for `{}`",
                    m.id
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        FinFunctor::new(source, target, obj_map, mor_map)
    }

    /// For thin targets (at most one morphism per hom-set) an object map
    /// determines the functor, if any.
    pub fn from_object_map(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<usize>,
    ) -> Result<FinFunctor> {
        let mut mor_map = Vec::with_capacity(source.morphism_count());
        for m in source.morphisms() {
            let (a, b) = (obj_map[m.dom], obj_map[m.cod]);
            match target.hom(a, b) {
                [only] => mor_map.push(*only),
                hom => {
                    return Err(Error::Precondition(format!(
                        "Hom({}, {}) has {} morphisms; the image of `{}` is not determined",
                        target.object_name(a),
                        target.object_name(b),
                        hom.len(),
                        m.id
                    )))
                }
            }
        }
        FinFunctor::new(source, target, obj_map, mor_map)
    }

    pub fn identity(category: Arc<FinCat>) -> FinFunctor {
        let obj_map = (0..category.object_count()).collect();
        let mor_map = (0..category.morphism_count()).collect();
        FinFunctor {
            source: category.clone(),
            target: category,
            obj_map,
            mor_map,
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, object: usize) -> usize {
        self.obj_map[object]
    }

    pub fn mor(&self, morphism: usize) -> usize {
        self.mor_map[morphism]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    pub fn is_endofunctor(&self) -> bool {
        same_category(&self.source, &self.target)
    }

    /// "`self` then `next`": first apply `self`, then `next`.
    pub fn then(&self, next: &FinFunctor) -> Result<FinFunctor> {
        compose_functors(self, next)
    }

    /// Lexicographic key (object map, then morphism map).
    pub fn sort_key(&self) -> (&[usize], &[usize]) {
        (&self.obj_map, &self.mor_map)
    }

    pub fn classify(&self) -> FunctorFlags {
        classify_functor(self)
    }

    pub fn to_candidate(&self) -> FunctorCandidate {
        FunctorCandidate {
            obj_map: self
                .obj_map
                .iter()
                .enumerate()
                .map(|(a, &b)| {
                    (
                        self.source.object_name(a).to_string(),
                        self.target.object_name(b).to_string(),
                    )
                })
                .collect(),
            mor_map: self
                .mor_map
                .iter()
                .enumerate()
                .map(|(f, &g)| {
                    (
                        self.source.morphism_name(f).to_string(),
                        self.target.morphism_name(g).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let c = self.to_candidate();
        json!({ "obj_map": c.obj_map, "mor_map": c.mor_map })
    }

    /// Object map as `source -> target` names, in source object order.
    pub fn describe_objects(&self) -> String {
        self.obj_map
            .iter()
            .enumerate()
            .map(|(a, &b)| {
                format!(
                    "{}↦{}",
                    self.source.object_name(a),
                    self.target.object_name(b)
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Pointwise composite "`first` then `second`".
pub fn compose_functors(first: &FinFunctor, second: &FinFunctor) -> Result<FinFunctor> {
    if !same_category(&first.target, &second.source) {
        return Err(Error::CategoryMismatch(
            "target of the first functor is not the source of the second".into(),
        ));
    }
    Ok(FinFunctor::new_trusted(
        first.source.clone(),
        second.target.clone(),
        first.obj_map.iter().map(|&b| second.obj_map[b]).collect(),
        first.mor_map.iter().map(|&g| second.mor_map[g]).collect(),
    ))
}

pub fn classify_functor(functor: &FinFunctor) -> FunctorFlags {
    let src = &functor.source;
    let tgt = &functor.target;
    let mut faithful = true;
    let mut full = true;
    for a in 0..src.object_count() {
        for b in 0..src.object_count() {
            let hom = src.hom(a, b);
            let mut images: Vec<usize> = hom.iter().map(|&f| functor.mor(f)).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != hom.len() {
                faithful = false;
            }
            if images.len() != tgt.hom(functor.obj(a), functor.obj(b)).len() {
                full = false;
            }
        }
    }
    let classes = tgt.iso_classes();
    let mut hit = vec![false; classes.classes.len()];
    for &b in &functor.obj_map {
        hit[classes.class_of[b]] = true;
    }
    let essentially_surjective = hit.iter().all(|&h| h);
    let bijective = |map: &[usize], n: usize| {
        let mut seen = vec![false; n];
        map.len() == n && map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    };
    let isomorphism = bijective(&functor.obj_map, tgt.object_count())
        && bijective(&functor.mor_map, tgt.morphism_count());
    FunctorFlags {
        faithful,
        full,
        essentially_surjective,
        equivalence: faithful && full && essentially_surjective,
        isomorphism,
    }
}
