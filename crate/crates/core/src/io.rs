//! The JSON category file format.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "objects": ["a", "b"],
//!   "morphisms": [{"id": "f", "dom": "a", "cod": "b"}],
//!   "compose": [["f", "g", "h"]]
//! }
//! ```
//!
//! Instead of `objects`/`morphisms`/`compose` a file may give
//! `"preorder": {"elements": [...], "le": [[x, y], ...], "close": true}`.
//! Concrete categories add `"underlying": {"<obj>": ["e1", ...]}` and
//! `"mor_fn": {"<mor>": {"e1": "x", ...}}`; identity functions are implied.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{from_preorder, FinCat, RawCategory, RawMorphism};
use crate::concrete::ConcreteFinCat;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismRecord {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreorderBlock {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<[String; 2]>,
    #[serde(default = "default_close")]
    pub close: bool,
}

fn default_close() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub format_version: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<Vec<MorphismRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preorder: Option<PreorderBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub underlying: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mor_fn: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

/// A loaded category file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub category: Arc<FinCat>,
    pub concrete: Option<ConcreteFinCat>,
}

impl CategoryFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: CategoryFile = serde_json::from_str(text)?;
        match file.format_version {
            Some(FORMAT_VERSION) => Ok(file),
            Some(v) => Err(Error::Format(format!("unsupported format_version {v}"))),
            None => Err(Error::Format("missing format_version".into())),
        }
    }

    pub fn to_raw(&self) -> Result<RawCategory> {
        let explicit = self.objects.is_some() || self.morphisms.is_some() || self.compose.is_some();
        match (&self.preorder, explicit) {
            (Some(_), true) => Err(Error::Format(
                "give either objects/morphisms/compose or preorder, not both".into(),
            )),
            (Some(p), false) => {
                let pairs: Vec<(String, String)> =
                    p.le.iter().map(|[x, y]| (x.clone(), y.clone())).collect();
                Ok(from_preorder(&p.elements, &pairs, p.close)?.to_raw())
            }
            (None, _) => Ok(RawCategory {
                objects: self.objects.clone().unwrap_or_default(),
                morphisms: self
                    .morphisms
                    .iter()
                    .flatten()
                    .map(|m| RawMorphism {
                        id: m.id.clone(),
                        dom: m.dom.clone(),
                        cod: m.cod.clone(),
                    })
                    .collect(),
                compose: self.compose.clone().unwrap_or_default(),
            }),
        }
    }

    pub fn load(&self) -> Result<Loaded> {
        let category = Arc::new(FinCat::validate(&self.to_raw()?)?);
        let concrete = match (&self.underlying, &self.mor_fn) {
            (None, None) => None,
            (Some(u), fns) => Some(ConcreteFinCat::new(
                category.clone(),
                u,
                fns.as_ref().unwrap_or(&BTreeMap::new()),
            )?),
            (None, Some(_)) => {
                return Err(Error::Format("mor_fn given without underlying".into()))
            }
        };
        Ok(Loaded { category, concrete })
    }

    /// Canonical explicit form of a category.
    pub fn from_category(category: &FinCat, concrete: Option<&ConcreteFinCat>) -> Self {
        let raw = category.to_raw();
        CategoryFile {
            format_version: Some(FORMAT_VERSION),
            objects: Some(raw.objects),
            morphisms: Some(
                raw.morphisms
                    .into_iter()
                    .map(|m| MorphismRecord {
                        id: m.id,
                        dom: m.dom,
                        cod: m.cod,
                    })
                    .collect(),
            ),
            compose: Some(raw.compose),
            preorder: None,
            underlying: concrete.map(ConcreteFinCat::underlying_map),
            mor_fn: concrete.map(ConcreteFinCat::label_functions),
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let value = serde_json::to_value(self).expect("category files serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn load_str(text: &str) -> Result<Loaded> {
    CategoryFile::parse(text)?.load()
}

/// Canonical file text for a loaded category.
pub fn canonical_text(loaded: &Loaded) -> String {
    CategoryFile::from_category(&loaded.category, loaded.concrete.as_ref()).to_canonical_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn preorder_file() {
        let text = r#"{"format_version":1,"preorder":{"elements":["a","b","c","d"],
            "le":[["a","b"],["a","c"],["c","d"],["d","c"]],"close":true}}"#;
        let loaded = load_str(text).unwrap();
        assert_eq!(loaded.category.as_ref(), &catalog::p4());
        assert!(loaded.concrete.is_none());
    }

    #[test]
    fn version_is_mandatory() {
        assert!(matches!(load_str(r#"{"objects":["a"]}"#), Err(Error::Format(_))));
        assert!(matches!(
            load_str(r#"{"format_version":2,"objects":["a"]}"#),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(load_str(r#"{"format_version":1,"objets":["a"]}"#).is_err());
    }

    #[test]
    fn mixed_forms_rejected() {
        let text = r#"{"format_version":1,"objects":["a"],"preorder":{"elements":["a"]}}"#;
        assert!(matches!(load_str(text), Err(Error::Format(_))));
    }

    #[test]
    fn canonical_round_trip_is_byte_identical() {
        let k = catalog::finset(&[1, 2]).unwrap();
        let text = CategoryFile::from_category(k.cat(), Some(&k)).to_canonical_string();
        let again = canonical_text(&load_str(&text).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn empty_category_file() {
        let loaded = load_str(r#"{"format_version":1,"objects":[]}"#).unwrap();
        assert_eq!(loaded.category.object_count(), 0);
    }
}
