//! JSON schema for category files.
//!
//! ```json
//! {"objects": ["a", "b"],
//!  "arrows": [{"name": "f", "src": "a", "tgt": "b"}],
//!  "compose": [{"g": "...", "f": "...", "gf": "..."}]}
//! ```
//!
//! Identities are implicit and named `id_<object>`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::category::{ArrId, CategoryBuilder, FinCategory, ObjId};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeEntry {
    pub g: String,
    pub f: String,
    pub gf: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowEntry>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
}

/// Name lookups produced while parsing; used by callers that resolve further names.
#[derive(Clone, Debug, Default)]
pub struct NameIndex {
    pub objects: HashMap<String, ObjId>,
    pub arrows: HashMap<String, ArrId>,
}

impl NameIndex {
    pub fn object(&self, name: &str) -> Result<ObjId> {
        self.objects.get(name).copied().ok_or_else(|| Error::UnknownName {
            kind: "object",
            name: name.to_string(),
        })
    }

    pub fn arrow(&self, name: &str) -> Result<ArrId> {
        self.arrows.get(name).copied().ok_or_else(|| Error::UnknownName {
            kind: "arrow",
            name: name.to_string(),
        })
    }
}

impl CategoryFile {
    /// Builds the category table. Missing composites are left empty so that
    /// validation, not parsing, reports them.
    pub fn build(&self) -> Result<(FinCategory, NameIndex)> {
        let mut b = CategoryBuilder::new();
        let mut index = NameIndex::default();
        for name in &self.objects {
            if index.objects.contains_key(name) {
                return Err(Error::Schema(format!("duplicate object name `{name}`")));
            }
            let c = b.add_object(name.clone());
            index.objects.insert(name.clone(), c);
            let id_name = format!("id_{name}");
            if index.arrows.insert(id_name.clone(), b.identity(c)).is_some() {
                return Err(Error::Schema(format!("duplicate arrow name `{id_name}`")));
            }
        }
        for a in &self.arrows {
            let src = index.object(&a.src)?;
            let tgt = index.object(&a.tgt)?;
            if index.arrows.contains_key(&a.name) {
                return Err(Error::Schema(format!("duplicate arrow name `{}`", a.name)));
            }
            let id = b.add_arrow(a.name.clone(), src, tgt);
            index.arrows.insert(a.name.clone(), id);
        }
        for e in &self.compose {
            let (g, f, gf) = (index.arrow(&e.g)?, index.arrow(&e.f)?, index.arrow(&e.gf)?);
            if b.arrow(f).tgt != b.arrow(g).src {
                return Err(Error::Schema(format!(
                    "compose entry {} ∘ {}: arrows are not composable",
                    e.g, e.f
                )));
            }
            if let Some(prev) = b.composite(g, f) {
                if prev != gf {
                    return Err(Error::Schema(format!(
                        "conflicting compose entries for {} ∘ {}",
                        e.g, e.f
                    )));
                }
            }
            b.set_composite(g, f, gf);
        }
        Ok((b.build(), index))
    }

    pub fn from_category(c: &FinCategory) -> CategoryFile {
        CategoryFile {
            objects: c.object_names().to_vec(),
            arrows: c
                .non_identity_arrows()
                .map(|f| ArrowEntry {
                    name: c.arrow_name(f).to_string(),
                    src: c.object_name(c.src(f)).to_string(),
                    tgt: c.object_name(c.tgt(f)).to_string(),
                })
                .collect(),
            compose: c
                .composable_pairs()
                .filter(|&(g, f)| !c.is_identity(g) && !c.is_identity(f))
                .filter_map(|(g, f)| {
                    Some(ComposeEntry {
                        g: c.arrow_name(g).to_string(),
                        f: c.arrow_name(f).to_string(),
                        gf: file_arrow_name(c, c.try_compose(g, f)?),
                    })
                })
                .collect(),
        }
    }
}

/// Identities are written under their implicit file name `id_<object>`.
fn file_arrow_name(c: &FinCategory, f: ArrId) -> String {
    if c.is_identity(f) {
        format!("id_{}", c.object_name(c.src(f)))
    } else {
        c.arrow_name(f).to_string()
    }
}

pub fn parse_category(text: &str) -> Result<(FinCategory, NameIndex)> {
    let file: CategoryFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    file.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{cyclic_group, fence, ordinal};
    use crate::report::Axiom;

    #[test]
    fn round_trip() {
        for c in [ordinal(2), cyclic_group(3), fence()] {
            let file = CategoryFile::from_category(&c);
            let text = serde_json::to_string(&file).unwrap();
            let (back, _) = parse_category(&text).unwrap();
            assert!(back.validate().is_empty());
            assert_eq!(back.num_arrows(), c.num_arrows());
            assert_eq!(CategoryFile::from_category(&back), file);
        }
    }

    #[test]
    fn rejects_unknown_and_duplicate_names() {
        let unknown = r#"{"objects":["a"],"arrows":[{"name":"f","src":"a","tgt":"b"}]}"#;
        assert!(matches!(
            parse_category(unknown),
            Err(Error::UnknownName { kind: "object", .. })
        ));
        let dup = r#"{"objects":["a"],"arrows":[
            {"name":"f","src":"a","tgt":"a"},{"name":"f","src":"a","tgt":"a"}]}"#;
        assert!(matches!(parse_category(dup), Err(Error::Schema(_))));
        let bad_compose = r#"{"objects":["a"],"arrows":[{"name":"f","src":"a","tgt":"a"}],
            "compose":[{"g":"f","f":"h","gf":"f"}]}"#;
        assert!(matches!(
            parse_category(bad_compose),
            Err(Error::UnknownName { kind: "arrow", .. })
        ));
    }

    #[test]
    fn missing_composite_surfaces_in_validation() {
        let text = r#"{"objects":["a"],"arrows":[{"name":"e","src":"a","tgt":"a"}]}"#;
        let (c, _) = parse_category(text).unwrap();
        assert!(c.validate().has(Axiom::Totality));
    }
}
