//! JSON schema for 2-category files.
//!
//! ```json
//! {"objects": ["0", "1"],
//!  "homs": {"0,1": {"objects": ["f", "g"],
//!                   "arrows": [{"name": "alpha", "src": "f", "tgt": "g"}],
//!                   "compose": []}},
//!  "hcompose1": [{"g": "...", "f": "...", "gf": "..."}],
//!  "hcompose2": [{"beta": "...", "alpha": "...", "comp": "..."}],
//!  "identities": {"0": "id_0"}}
//! ```
//!
//! Each hom entry uses the category schema with 1-cells as objects, 2-cells as
//! arrows and vertical composition as `compose`. Identity 2-cells are implicit
//! and named `id_<1-cell>`. An object without an `identities` entry receives an
//! identity 1-cell named `id_<object>`. Composites involving identity 1-cells,
//! unit 2-cells and pairs of identity 2-cells are implicit; every other
//! horizontal composite, including whiskerings `id_g ∘ α`, must be listed.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::twocategory::Fin2Category;
use crate::catcore::json::{ArrowEntry, CategoryFile, ComposeEntry};
use crate::catcore::{Arrow, CategoryBuilder, FinCategory};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HComposeEntry {
    pub beta: String,
    pub alpha: String,
    pub comp: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoCategoryFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: BTreeMap<String, CategoryFile>,
    #[serde(default)]
    pub hcompose1: Vec<ComposeEntry>,
    #[serde(default)]
    pub hcompose2: Vec<HComposeEntry>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
}

fn schema(msg: String) -> Error {
    Error::Schema(msg)
}

fn lookup(map: &HashMap<String, usize>, kind: &'static str, name: &str) -> Result<usize> {
    map.get(name).copied().ok_or_else(|| Error::UnknownName {
        kind,
        name: name.to_string(),
    })
}

impl TwoCategoryFile {
    pub fn build(&self) -> Result<Fin2Category> {
        let mut objects = HashMap::new();
        for (i, name) in self.objects.iter().enumerate() {
            if objects.insert(name.clone(), i).is_some() {
                return Err(schema(format!("duplicate object name `{name}`")));
            }
        }
        for key in self.identities.keys() {
            lookup(&objects, "object", key)?;
        }
        let mut homs: BTreeMap<(usize, usize), &CategoryFile> = BTreeMap::new();
        for (key, file) in &self.homs {
            let (s, t) = key
                .split_once(',')
                .ok_or_else(|| schema(format!("hom key `{key}` is not of the form `src,tgt`")))?;
            let (s, t) = (
                lookup(&objects, "object", s.trim())?,
                lookup(&objects, "object", t.trim())?,
            );
            if homs.insert((s, t), file).is_some() {
                return Err(schema(format!("hom `{key}` listed twice")));
            }
        }

        // 1-cells, hom by hom
        let mut one_cells: Vec<Arrow> = Vec::new();
        let mut one_index: HashMap<String, usize> = HashMap::new();
        let mut add_one = |name: &str, s: usize, t: usize, id: bool| -> Result<usize> {
            if one_index.contains_key(name) {
                return Err(schema(format!("duplicate 1-cell name `{name}`")));
            }
            one_index.insert(name.to_string(), one_cells.len());
            one_cells.push(Arrow {
                name: name.to_string(),
                src: s,
                tgt: t,
                is_identity: id,
            });
            Ok(one_cells.len() - 1)
        };
        let n = self.objects.len();
        let mut identity_of = vec![usize::MAX; n];
        for s in 0..n {
            for t in 0..n {
                let declared = (s == t).then(|| self.identities.get(&self.objects[s])).flatten();
                let file = homs.get(&(s, t));
                let names: &[String] = file.map(|f| f.objects.as_slice()).unwrap_or(&[]);
                if s == t {
                    match declared {
                        Some(id) if !names.contains(id) => {
                            return Err(schema(format!(
                                "identity `{id}` of `{}` is not a 1-cell of its hom",
                                self.objects[s]
                            )))
                        }
                        Some(_) => {}
                        None => {
                            identity_of[s] = add_one(&format!("id_{}", self.objects[s]), s, t, true)?;
                        }
                    }
                }
                for name in names {
                    let is_id = declared == Some(name);
                    let k = add_one(name, s, t, is_id)?;
                    if is_id {
                        identity_of[s] = k;
                    }
                }
            }
        }
        let one_index = one_index;

        // vertical category: objects are the 1-cells in global order
        let mut vb = CategoryBuilder::new();
        let mut cell_index: HashMap<String, usize> = HashMap::new();
        for a in &one_cells {
            let id_name = format!("id_{}", a.name);
            let f = vb.add_object_with_identity(a.name.clone(), id_name.clone());
            if cell_index.insert(id_name.clone(), vb.identity(f)).is_some() {
                return Err(schema(format!("duplicate 2-cell name `{id_name}`")));
            }
        }
        for (&(s, t), file) in &homs {
            for ArrowEntry { name, src, tgt } in &file.arrows {
                let (f, g) = (lookup(&one_index, "1-cell", src)?, lookup(&one_index, "1-cell", tgt)?);
                for x in [f, g] {
                    if (one_cells[x].src, one_cells[x].tgt) != (s, t) {
                        return Err(schema(format!(
                            "2-cell `{name}` uses 1-cell `{}` from another hom",
                            one_cells[x].name
                        )));
                    }
                }
                if cell_index.contains_key(name) {
                    return Err(schema(format!("duplicate 2-cell name `{name}`")));
                }
                cell_index.insert(name.clone(), vb.add_arrow(name.clone(), f, g));
            }
        }
        for file in homs.values() {
            for e in &file.compose {
                let (g, f, gf) = (
                    lookup(&cell_index, "2-cell", &e.g)?,
                    lookup(&cell_index, "2-cell", &e.f)?,
                    lookup(&cell_index, "2-cell", &e.gf)?,
                );
                if vb.arrow(f).tgt != vb.arrow(g).src {
                    return Err(schema(format!(
                        "vertical compose entry {} • {}: cells are not composable",
                        e.g, e.f
                    )));
                }
                vb.set_composite(g, f, gf);
            }
        }
        let vertical = vb.build();

        // underlying category
        let mut pairs = HashMap::new();
        for e in &self.hcompose1 {
            let (g, f, gf) = (
                lookup(&one_index, "1-cell", &e.g)?,
                lookup(&one_index, "1-cell", &e.f)?,
                lookup(&one_index, "1-cell", &e.gf)?,
            );
            if one_cells[f].tgt != one_cells[g].src {
                return Err(schema(format!(
                    "hcompose1 entry {} ∘ {}: 1-cells are not composable",
                    e.g, e.f
                )));
            }
            if pairs.insert((g, f), gf).is_some_and(|prev| prev != gf) {
                return Err(schema(format!("conflicting hcompose1 entries for {} ∘ {}", e.g, e.f)));
            }
        }
        let ids: Vec<bool> = one_cells.iter().map(|a| a.is_identity).collect();
        let underlying = FinCategory::assemble(self.objects.clone(), one_cells, |g, f| {
            if ids[g] {
                Some(f)
            } else if ids[f] {
                Some(g)
            } else {
                pairs.get(&(g, f)).copied()
            }
        });

        let mut hpairs = HashMap::new();
        for e in &self.hcompose2 {
            let (b, a, x) = (
                lookup(&cell_index, "2-cell", &e.beta)?,
                lookup(&cell_index, "2-cell", &e.alpha)?,
                lookup(&cell_index, "2-cell", &e.comp)?,
            );
            if hpairs.insert((b, a), x).is_some_and(|prev| prev != x) {
                return Err(schema(format!(
                    "conflicting hcompose2 entries for {} ∘ {}",
                    e.beta, e.alpha
                )));
            }
        }
        Fin2Category::from_parts(underlying, vertical, |b, a| hpairs.get(&(b, a)).copied())
    }

    pub fn from_two_category(c: &Fin2Category) -> TwoCategoryFile {
        let under = c.underlying();
        let mut homs = BTreeMap::new();
        for s in c.objects() {
            for t in c.objects() {
                let hom = c.hom(s, t);
                if hom.one_cells.is_empty() {
                    continue;
                }
                let file = CategoryFile::from_category(&hom.category);
                homs.insert(format!("{},{}", c.object_name(s), c.object_name(t)), file);
            }
        }
        let identities = c
            .objects()
            .map(|x| (c.object_name(x).to_string(), c.one_cell_name(c.id1(x)).to_string()))
            .collect();
        let mut hcompose1: Vec<ComposeEntry> = under
            .composable_pairs()
            .filter(|&(g, f)| !under.is_identity(g) && !under.is_identity(f))
            .map(|(g, f)| ComposeEntry {
                g: c.one_cell_name(g).to_string(),
                f: c.one_cell_name(f).to_string(),
                gf: c.one_cell_name(c.compose1(g, f)).to_string(),
            })
            .collect();
        hcompose1.sort_by(|x, y| (&x.g, &x.f).cmp(&(&y.g, &y.f)));
        let mut hcompose2: Vec<HComposeEntry> = c
            .horizontal_pairs()
            .filter(|&(b, a)| !(c.is_identity_cell(a) && c.is_identity_cell(b)))
            .filter(|&(b, a)| {
                let unit = |x: usize| c.is_identity_cell(x) && under.is_identity(c.cell_src(x));
                !unit(a) && !unit(b)
            })
            .map(|(b, a)| HComposeEntry {
                beta: file_cell_name(c, b),
                alpha: file_cell_name(c, a),
                comp: file_cell_name(c, c.hcomp(b, a)),
            })
            .collect();
        hcompose2.sort_by(|x, y| (&x.beta, &x.alpha).cmp(&(&y.beta, &y.alpha)));
        TwoCategoryFile {
            objects: under.object_names().to_vec(),
            homs,
            hcompose1,
            hcompose2,
            identities,
        }
    }
}

/// Identity 2-cells are written under their implicit file name `id_<1-cell>`.
fn file_cell_name(c: &Fin2Category, a: usize) -> String {
    if c.is_identity_cell(a) {
        format!("id_{}", c.one_cell_name(c.cell_src(a)))
    } else {
        c.cell_name(a).to_string()
    }
}

pub fn parse_two_category(text: &str) -> Result<Fin2Category> {
    let file: TwoCategoryFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    file.build()
}
