use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catcore::search::{left_adjoint, right_adjoint};
use crate::catcore::{CatFunctor, FinCategory, ObjId};
use crate::simplicial::{geometric_nerve, homology, nerve, pi1, GroupOrder, HomologySummary, Pi1Report};
use crate::twocat::{from_monoidal, Fin2Category, MonoidalCategory, Representable};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Isomorphism,
    /// The functor is a right adjoint.
    HasLeftAdjoint,
    /// The functor is a left adjoint.
    HasRightAdjoint,
}

/// A computed invariant on which source and target disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    ComponentCount {
        source: usize,
        target: usize,
    },
    /// Counts agree but the induced map on components is not a bijection.
    ComponentMap {
        images: Vec<usize>,
    },
    Homology {
        degree: usize,
        source: String,
        target: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ComponentCount { source, target } => write!(f, "π₀ {source} vs {target}"),
            Witness::ComponentMap { images } => {
                let images: Vec<String> = images.iter().map(|i| i.to_string()).collect();
                write!(f, "π₀ map [{}] not bijective", images.join(","))
            }
            Witness::Homology { degree, source, target } => {
                write!(f, "H_{degree} {source} vs {target}")
            }
        }
    }
}

/// Three-valued weak-equivalence verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    Certified {
        certificate: Certificate,
    },
    Fails {
        witness: Witness,
    },
    /// Every computed invariant agrees but no certificate was found.
    Heuristic,
}

impl Verdict {
    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }
}

fn homology_line(h: &HomologySummary, k: usize) -> String {
    let d = &h.degrees[k];
    let mut parts: Vec<String> = Vec::new();
    if d.betti > 0 {
        parts.push(if d.betti == 1 {
            "Z".into()
        } else {
            format!("Z^{}", d.betti)
        });
    }
    parts.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Classifies `f` as a weak equivalence: an isomorphism or an adjoint is a
/// certificate, a mismatch of `π₀` or of homology in degrees `≤ k_max` a failure.
pub fn classify(f: &CatFunctor, k_max: usize) -> Result<Verdict> {
    if f.is_bijective() {
        return Ok(Verdict::Certified {
            certificate: Certificate::Isomorphism,
        });
    }
    if left_adjoint(f).is_ok() {
        return Ok(Verdict::Certified {
            certificate: Certificate::HasLeftAdjoint,
        });
    }
    if right_adjoint(f).is_ok() {
        return Ok(Verdict::Certified {
            certificate: Certificate::HasRightAdjoint,
        });
    }
    let (ns, comp_s) = f.source.connected_components();
    let (nt, comp_t) = f.target.connected_components();
    if ns != nt {
        return Ok(Verdict::Fails {
            witness: Witness::ComponentCount { source: ns, target: nt },
        });
    }
    let mut images = vec![usize::MAX; ns];
    for x in f.source.objects() {
        images[comp_s[x]] = comp_t[f.obj(x)];
    }
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != nt {
        return Ok(Verdict::Fails {
            witness: Witness::ComponentMap { images },
        });
    }
    let hs = homology(&nerve(&f.source, k_max + 1), k_max)?;
    let ht = homology(&nerve(&f.target, k_max + 1), k_max)?;
    for k in 0..=k_max {
        if hs.degrees[k] != ht.degrees[k] {
            return Ok(Verdict::Fails {
                witness: Witness::Homology {
                    degree: k,
                    source: homology_line(&hs, k),
                    target: homology_line(&ht, k),
                },
            });
        }
    }
    Ok(Verdict::Heuristic)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowVerdict {
    pub arrow: String,
    pub source: String,
    pub target: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    Certified,
    Fails,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionQReport {
    pub basepoint: String,
    pub k_max: usize,
    /// One entry per non-identity 1-cell `f: c′ → c″`, for `f^*: C(c″, c) → C(c′, c)`.
    pub arrows: Vec<ArrowVerdict>,
    pub overall: Overall,
}

impl ConditionQReport {
    pub fn first_failure(&self) -> Option<&ArrowVerdict> {
        self.arrows.iter().find(|a| a.verdict.fails())
    }
}

impl fmt::Display for ConditionQReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.arrows {
            let v = match &a.verdict {
                Verdict::Certified { certificate } => format!("certified ({certificate:?})"),
                Verdict::Fails { witness } => format!("fails ({witness})"),
                Verdict::Heuristic => "heuristic (invariants agree)".into(),
            };
            writeln!(f, "{}: {} -> {}: {}", a.arrow, a.source, a.target, v)?;
        }
        match (self.first_failure(), &self.overall) {
            (Some(a), _) => {
                let Verdict::Fails { witness } = &a.verdict else {
                    unreachable!()
                };
                write!(f, "FAILS at arrow {} ({})", a.arrow, witness)
            }
            (None, Overall::Certified) => write!(f, "HOLDS (certified, basepoint {})", self.basepoint),
            (None, _) => write!(
                f,
                "HOLDS heuristically (invariants agree through degree {}, basepoint {})",
                self.k_max, self.basepoint
            ),
        }
    }
}

/// Classifies `f^*: C(c″, c) → C(c′, c)` for every non-identity 1-cell `f`.
pub fn condition_q(c: &Arc<Fin2Category>, basepoint: ObjId, k_max: usize) -> Result<ConditionQReport> {
    let rep = Representable::new(c.clone(), basepoint);
    let under = c.underlying();
    let mut arrows = Vec::new();
    for f in under.non_identity_arrows() {
        let verdict = classify(&rep.on_one_cell(f), k_max)?;
        arrows.push(ArrowVerdict {
            arrow: under.arrow_name(f).to_string(),
            source: c.object_name(under.src(f)).to_string(),
            target: c.object_name(under.tgt(f)).to_string(),
            verdict,
        });
    }
    let overall = if arrows.iter().any(|a| a.verdict.fails()) {
        Overall::Fails
    } else if arrows.iter().all(|a| matches!(a.verdict, Verdict::Certified { .. })) {
        Overall::Certified
    } else {
        Overall::Heuristic
    };
    Ok(ConditionQReport {
        basepoint: c.object_name(basepoint).to_string(),
        k_max,
        arrows,
        overall,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub left: String,
    pub right: String,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopVerdict {
    Consistent,
    /// A comparison failed although condition Q was not refuted.
    Inconsistent,
    /// A comparison failed and condition Q fails, so nothing is predicted.
    OutsideHypothesis,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopReport {
    pub basepoint: String,
    pub truncation: usize,
    pub end_components: usize,
    pub end_homology: HomologySummary,
    pub pi1: Pi1Report,
    pub condition_q: ConditionQReport,
    pub comparisons: Vec<Comparison>,
    pub verdict: LoopVerdict,
}

impl fmt::Display for LoopReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = match self.pi1.order {
            GroupOrder::Finite(n) => n.to_string(),
            GroupOrder::Infinite => "infinite".into(),
            GroupOrder::Unknown => "undetermined".into(),
        };
        let verdict = match self.verdict {
            LoopVerdict::Consistent => "CONSISTENT",
            LoopVerdict::Inconsistent => "INCONSISTENT",
            LoopVerdict::OutsideHypothesis => "NOT PREDICTED (condition Q fails)",
            LoopVerdict::Undetermined => "UNDETERMINED",
        };
        writeln!(f, "π₀(End)={}, π₁ order={}, {}", self.end_components, order, verdict)?;
        for c in &self.comparisons {
            writeln!(f, "  {}: {} vs {} [{:?}]", c.name, c.left, c.right, c.status)?;
        }
        write!(
            f,
            "  condition Q: {:?}; truncation {}",
            self.condition_q.overall, self.truncation
        )
    }
}

/// Decidable consequences of `B(C(c,c)) ≃ Ω_c B₂C` at a truncation `bound ≥ 2`.
pub fn loop_consistency(
    c: &Arc<Fin2Category>,
    basepoint: ObjId,
    bound: usize,
    coset_budget: usize,
) -> Result<LoopReport> {
    c.require_connected()?;
    let end: &Arc<FinCategory> = &c.hom(basepoint, basepoint).category;
    let k_max = bound.max(2) - 1;
    let end_components = end.connected_components().0;
    let end_homology = homology(&nerve(end, k_max + 1), k_max)?;
    let pi1 = pi1(&geometric_nerve(c, bound.max(2)), basepoint, coset_budget)?;
    let q = condition_q(c, basepoint, k_max)?;

    let mut comparisons = Vec::new();
    let (right, status) = match pi1.order {
        GroupOrder::Finite(n) if n as usize == end_components => (n.to_string(), Status::Passed),
        GroupOrder::Finite(n) => (n.to_string(), Status::Failed),
        GroupOrder::Infinite => ("infinite".into(), Status::Failed),
        GroupOrder::Unknown => ("undetermined".into(), Status::Undetermined),
    };
    comparisons.push(Comparison {
        name: "|π₀ B(C(c,c))| = |π₁(B₂C, c)|".into(),
        left: end_components.to_string(),
        right,
        status,
    });
    let h0 = end_homology.degrees[0].betti;
    comparisons.push(Comparison {
        name: "rank H₀ B(C(c,c)) = |π₀|".into(),
        left: h0.to_string(),
        right: end_components.to_string(),
        status: if h0 == end_components {
            Status::Passed
        } else {
            Status::Failed
        },
    });

    let failed = comparisons.iter().any(|c| c.status == Status::Failed);
    let verdict = if failed && q.overall == Overall::Fails {
        LoopVerdict::OutsideHypothesis
    } else if failed {
        LoopVerdict::Inconsistent
    } else if comparisons.iter().any(|c| c.status == Status::Undetermined) {
        LoopVerdict::Undetermined
    } else {
        LoopVerdict::Consistent
    };
    Ok(LoopReport {
        basepoint: c.object_name(basepoint).to_string(),
        truncation: bound.max(2),
        end_components,
        end_homology,
        pi1,
        condition_q: q,
        comparisons,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationVerdict {
    pub object: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeloopReport {
    /// Component index of every object.
    pub components: Vec<usize>,
    /// `[x] ⊗ [y]` on components.
    pub pi0_table: Vec<Vec<usize>>,
    /// Condition d), decided exactly.
    pub pi0_is_group: bool,
    /// Condition b): `r_x = − ⊗ x`.
    pub right_translations: Vec<TranslationVerdict>,
    /// Condition c): `l_x = x ⊗ −`.
    pub left_translations: Vec<TranslationVerdict>,
    /// `loop_consistency` on the one-object 2-category, when d) holds.
    pub delooping: Option<LoopReport>,
}

impl fmt::Display for DeloopReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "d) π₀ is a group: {} ({} components)",
            self.pi0_is_group,
            self.pi0_table.len()
        )?;
        for (label, list) in [("b) r", &self.right_translations), ("c) l", &self.left_translations)] {
            for t in list {
                let v = match &t.verdict {
                    Verdict::Certified { certificate } => format!("certified ({certificate:?})"),
                    Verdict::Fails { witness } => format!("fails ({witness})"),
                    Verdict::Heuristic => "heuristic".into(),
                };
                writeln!(f, "{label}_{}: {v}", t.object)?;
            }
        }
        writeln!(f, "b), c) and d) are equivalent; each makes BM deloopable")?;
        match &self.delooping {
            Some(r) => write!(f, "delooping check: {}", r.to_string().lines().next().unwrap_or("")),
            None => write!(f, "delooping check: skipped (d fails)"),
        }
    }
}

/// `y ↦ y ⊗ x` (`right = true`) or `y ↦ x ⊗ y`.
fn translation(m: &MonoidalCategory, x: ObjId, right: bool) -> CatFunctor {
    let cat = &m.category;
    let id_x = cat.identity(x);
    let obj_map = cat
        .objects()
        .map(|y| if right { m.tensor_obj[y][x] } else { m.tensor_obj[x][y] })
        .collect();
    let arr_map = (0..cat.num_arrows())
        .map(|b| {
            if right {
                m.tensor_arr[b][id_x]
            } else {
                m.tensor_arr[id_x][b]
            }
        })
        .collect();
    CatFunctor::new(cat.clone(), cat.clone(), obj_map, arr_map)
}

pub fn deloop_check(m: &MonoidalCategory, k_max: usize, coset_budget: usize) -> Result<DeloopReport> {
    let report = m.validate();
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    let cat = &m.category;
    let (n, components) = cat.connected_components();
    let mut pi0_table = vec![vec![usize::MAX; n]; n];
    for x in cat.objects() {
        for y in cat.objects() {
            pi0_table[components[x]][components[y]] = components[m.tensor_obj[x][y]];
        }
    }
    let one = components[m.unit];
    let pi0_is_group = (0..n).all(|a| (0..n).any(|b| pi0_table[a][b] == one && pi0_table[b][a] == one));
    let verdicts = |right: bool| -> Result<Vec<TranslationVerdict>> {
        cat.objects()
            .map(|x| {
                Ok(TranslationVerdict {
                    object: cat.object_name(x).to_string(),
                    verdict: classify(&translation(m, x, right), k_max)?,
                })
            })
            .collect()
    };
    let right_translations = verdicts(true)?;
    let left_translations = verdicts(false)?;
    let delooping = if pi0_is_group {
        let two = Arc::new(from_monoidal(m)?);
        Some(loop_consistency(&two, 0, k_max + 1, coset_budget)?)
    } else {
        None
    };
    Ok(DeloopReport {
        components,
        pi0_table,
        pi0_is_group,
        right_translations,
        left_translations,
        delooping,
    })
}
