//! The 2-category `C̃` of chains, the lax unit `η: C ⇝ C̃`, the projection
//! `π: C̃ → C`, and the universal property of `η` as an executable check.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catcore::search::is_initial;
use crate::catcore::{ArrId, Arrow, FinCategory, ObjId, OrdinalMap};
use crate::subdivision::{chains, ChainSimplex};
use crate::twocat::{
    enumerate_lax_functors, enumerate_two_functors, CellId, Fin2Category, NormalLaxFunctor, TwoFunctor,
};
use crate::Result;

/// `(a ◁ b)(i) = a(i)` for `i ≤ p`, `b(i − p) + p′` beyond: the last value of
/// `a` is kept and the first value of `b` dropped.
pub fn triangle(a: &OrdinalMap, b: &OrdinalMap) -> OrdinalMap {
    let (p, p2) = (a.dom(), a.cod());
    let mut values = a.values().to_vec();
    values.extend(b.values()[1..].iter().map(|v| v + p2));
    OrdinalMap::new(p2 + b.cod(), values).unwrap_or_else(|| panic!("{a} ◁ {b} is not monotone (p = {p})"))
}

/// `C̃` together with the chain behind every 1-cell and the map behind every 2-cell.
#[derive(Clone, Debug)]
pub struct Tilde {
    pub category: Arc<Fin2Category>,
    pub base: Arc<FinCategory>,
    /// Indexed by 1-cell; the identity of `c` is the 0-simplex at `c`.
    pub chains: Vec<ChainSimplex>,
    /// Indexed by 2-cell: the injective, endpoint-preserving representative.
    pub cells: Vec<OrdinalMap>,
    /// The base category seen as a 2-category, source of `η`.
    pub base2: Arc<Fin2Category>,
    chain_index: HashMap<(ObjId, Vec<ArrId>), ArrId>,
}

fn chain_name(c: &FinCategory, x: &ChainSimplex) -> String {
    if x.dim() == 0 {
        format!("id_{}", c.object_name(x.first()))
    } else {
        x.label(c)
    }
}

fn juxtapose(c: &FinCategory, x: &ChainSimplex, y: &ChainSimplex) -> ChainSimplex {
    let mut arrows = x.arrows.clone();
    arrows.extend(&y.arrows);
    ChainSimplex::new(c, x.first(), arrows)
}

/// Builds `C̃` for a loop-free category.
pub fn tilde(c: &Arc<FinCategory>) -> Result<Tilde> {
    c.require_loop_free()?;
    // identity-free chains from c to c′; with no loops the only chain from c to c is the 0-simplex
    let mut all: Vec<ChainSimplex> = chains(c, 0, true);
    for n in 1..c.num_objects() {
        all.extend(chains(c, n, true));
    }
    let chain_index: HashMap<(ObjId, Vec<ArrId>), ArrId> = all
        .iter()
        .enumerate()
        .map(|(k, x)| ((x.first(), x.arrows.clone()), k))
        .collect();

    let one_cells: Vec<Arrow> = all
        .iter()
        .map(|x| Arrow {
            name: chain_name(c, x),
            src: x.first(),
            tgt: x.last(),
            is_identity: x.dim() == 0,
        })
        .collect();
    let underlying = FinCategory::assemble(c.object_names().to_vec(), one_cells, |g, f| {
        let xy = juxtapose(c, &all[f], &all[g]);
        chain_index.get(&(xy.first(), xy.arrows)).copied()
    });

    let mut cells = Vec::new();
    let mut cell_arrows = Vec::new();
    let mut cell_index: HashMap<(ArrId, ArrId, OrdinalMap), CellId> = HashMap::new();
    for (s, x) in all.iter().enumerate() {
        for (t, y) in all.iter().enumerate() {
            if (x.first(), x.last()) != (y.first(), y.last()) {
                continue;
            }
            for a in OrdinalMap::all(x.dim(), y.dim()) {
                if a.apply(0) != 0 || a.apply(x.dim()) != y.dim() || !y.admits(x, &a) {
                    continue;
                }
                let is_identity = s == t && a.is_identity();
                let name = if is_identity {
                    format!("id_{}", one_name(c, x))
                } else {
                    format!("{a}:{}=>{}", one_name(c, x), one_name(c, y))
                };
                cell_index.insert((s, t, a.clone()), cells.len());
                cell_arrows.push(Arrow {
                    name,
                    src: s,
                    tgt: t,
                    is_identity,
                });
                cells.push(a);
            }
        }
    }
    let ends: Vec<(ArrId, ArrId)> = cell_arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let names: Vec<String> = all.iter().map(|x| chain_name(c, x)).collect();
    let vertical = FinCategory::assemble(names, cell_arrows, |g, f| {
        cell_index
            .get(&(ends[f].0, ends[g].1, cells[g].compose(&cells[f])))
            .copied()
    });
    let under = underlying.clone();
    let category = Fin2Category::from_parts(underlying, vertical, |beta, alpha| {
        // α: x ⇒ x′ runs first along the chain, β: y ⇒ y′ after it
        let src = under.try_compose(ends[beta].0, ends[alpha].0)?;
        let tgt = under.try_compose(ends[beta].1, ends[alpha].1)?;
        cell_index
            .get(&(src, tgt, triangle(&cells[alpha], &cells[beta])))
            .copied()
    })?;
    Ok(Tilde {
        category: Arc::new(category),
        base: c.clone(),
        chains: all,
        cells,
        base2: Arc::new(Fin2Category::from_category(c)),
        chain_index,
    })
}

fn one_name(c: &FinCategory, x: &ChainSimplex) -> String {
    chain_name(c, x)
}

impl Tilde {
    /// The 1-cell for the chain `start, arrows`.
    pub fn one_cell(&self, start: ObjId, arrows: &[ArrId]) -> Option<ArrId> {
        self.chain_index.get(&(start, arrows.to_vec())).copied()
    }

    /// `η`: identity on objects, `f ↦` its 1-simplex, structural cells
    /// `η_{g,f}: (gf) ⇒ (f, g)` given by `(0, 2): [1] → [2]`.
    pub fn eta(&self) -> NormalLaxFunctor {
        let c = &*self.base;
        let t = &*self.category;
        let one_map: Vec<ArrId> = (0..c.num_arrows())
            .map(|f| {
                if c.is_identity(f) {
                    t.id1(c.src(f))
                } else {
                    self.one_cell(c.src(f), &[f]).expect("1-simplices are 1-cells")
                }
            })
            .collect();
        let two_map = one_map.iter().map(|&f| t.id2(f)).collect();
        let edge = OrdinalMap::new(2, vec![0, 2]).unwrap();
        let structural = c
            .composable_pairs()
            .map(|(g, f)| {
                if c.is_identity(g) || c.is_identity(f) {
                    return t.id2(one_map[c.compose(g, f)]);
                }
                let from = one_map[c.compose(g, f)];
                let to = self.one_cell(c.src(f), &[f, g]).expect("2-chains are 1-cells");
                t.cells_between(from, to)
                    .find(|&a| self.cells[a] == edge)
                    .expect("the elementary cell exists")
            })
            .collect();
        NormalLaxFunctor {
            source: self.base2.clone(),
            target: self.category.clone(),
            obj_map: c.objects().collect(),
            one_map,
            two_map,
            structural,
        }
    }

    /// `π`: a chain goes to its total composite, every cell to an identity.
    pub fn pi(&self) -> TwoFunctor {
        let one_map: Vec<ArrId> = self.chains.iter().map(|x| x.between(0, x.dim())).collect();
        let two_map = (0..self.category.num_cells())
            .map(|a| one_map[self.category.cell_src(a)])
            .collect();
        TwoFunctor {
            source: self.category.clone(),
            target: self.base2.clone(),
            obj_map: self.base.objects().collect(),
            one_map,
            two_map,
        }
    }

    /// The 2-functor `u: C̃ → D` with `u ∘ η = v`, built as in the proof of
    /// the universal property.
    pub fn factor(&self, v: &NormalLaxFunctor) -> TwoFunctor {
        let c = &*self.base;
        let d = &*v.target;
        // v(g_k ⋯ g_1) ⇒ v(g_k) ⋯ v(g_1)
        let induced = |gs: &[ArrId]| -> CellId {
            let mut composite = gs[0];
            let mut cell = d.id2(v.one_map[gs[0]]);
            for &g in &gs[1..] {
                let step = v.structural_cell(g, composite);
                cell = d.vcomp(d.whisker_left(v.one_map[g], cell), step);
                composite = c.compose(g, composite);
            }
            cell
        };
        let one_map: Vec<ArrId> = self
            .chains
            .iter()
            .map(|x| {
                x.arrows
                    .iter()
                    .fold(d.id1(v.obj_map[x.first()]), |acc, &f| d.compose1(v.one_map[f], acc))
            })
            .collect();
        let two_map = (0..self.category.num_cells())
            .map(|a| {
                let (s, t) = (self.category.cell_src(a), self.category.cell_tgt(a));
                let (x, y) = (&self.chains[s], &self.chains[t]);
                let map = &self.cells[a];
                (1..=x.dim()).fold(d.id2(one_map[self.category.id1(x.first())]), |acc, i| {
                    let segment = &y.arrows[map.apply(i - 1)..map.apply(i)];
                    d.hcomp(induced(segment), acc)
                })
            })
            .collect();
        TwoFunctor {
            source: self.category.clone(),
            target: v.target.clone(),
            obj_map: v.obj_map.clone(),
            one_map,
            two_map,
        }
    }

    /// Whether every connected component of every hom-category has an initial object.
    pub fn components_have_initial_objects(&self) -> bool {
        let t = &*self.category;
        t.objects().all(|x| {
            t.objects().all(|y| {
                let hom = &t.hom(x, y).category;
                let (n, comp) = hom.connected_components();
                (0..n).all(|k| {
                    let members: Vec<ObjId> = hom.objects().filter(|&o| comp[o] == k).collect();
                    let (sub, _) = hom.full_subcategory(&members);
                    sub.objects().any(|o| is_initial(&sub, o))
                })
            })
        })
    }
}

/// `u ∘ v` for a lax `v` followed by a strict `u`.
pub fn lax_then_strict(v: &NormalLaxFunctor, u: &TwoFunctor) -> NormalLaxFunctor {
    NormalLaxFunctor {
        source: v.source.clone(),
        target: u.target.clone(),
        obj_map: v.obj_map.iter().map(|&x| u.obj_map[x]).collect(),
        one_map: v.one_map.iter().map(|&f| u.one_map[f]).collect(),
        two_map: v.two_map.iter().map(|&a| u.two_map[a]).collect(),
        structural: v.structural.iter().map(|&a| u.two_map[a]).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalPropertyReport {
    pub two_functors: usize,
    pub lax_functors: usize,
    /// Distinct 2-functors give distinct composites with `η`.
    pub injective: bool,
    /// Every lax functor is `u ∘ η` for the constructed `u`.
    pub surjective: bool,
    pub bijection: bool,
    pub failures: Vec<String>,
}

type LaxKey = (Vec<ObjId>, Vec<ArrId>, Vec<CellId>, Vec<CellId>);

fn key(v: &NormalLaxFunctor) -> LaxKey {
    (
        v.obj_map.clone(),
        v.one_map.clone(),
        v.two_map.clone(),
        v.structural.clone(),
    )
}

/// Checks that `u ↦ u ∘ η` is a bijection `2Cat(C̃, D) → Lax(C, D)` by enumerating both sides.
pub fn universal_property_check(
    c: &Arc<FinCategory>,
    d: &Arc<Fin2Category>,
    budget: u128,
) -> Result<UniversalPropertyReport> {
    let t = tilde(c)?;
    let eta = t.eta();
    let strict = enumerate_two_functors(&t.category, d, budget)?;
    let lax = enumerate_lax_functors(c, d, budget)?;
    let mut failures = Vec::new();

    let lax_keys: HashSet<LaxKey> = lax.iter().map(key).collect();
    let mut images = HashSet::new();
    let mut injective = true;
    for u in &strict {
        let k = key(&lax_then_strict(&eta, u));
        if !lax_keys.contains(&k) {
            failures.push(format!(
                "u∘η is missing from the lax enumeration for u = {:?}",
                u.one_map
            ));
        }
        if !images.insert(k) {
            injective = false;
            failures.push(format!("two 2-functors share u∘η, one is {:?}", u.one_map));
        }
    }
    let strict_keys: HashSet<(Vec<ObjId>, Vec<ArrId>, Vec<CellId>)> = strict
        .iter()
        .map(|u| (u.obj_map.clone(), u.one_map.clone(), u.two_map.clone()))
        .collect();
    let mut surjective = true;
    for v in &lax {
        let u = t.factor(v);
        let report = u.validate();
        let ok = report.is_empty()
            && key(&lax_then_strict(&eta, &u)) == key(v)
            && strict_keys.contains(&(u.obj_map.clone(), u.one_map.clone(), u.two_map.clone()));
        if !ok {
            surjective = false;
            failures.push(format!("no factorization for v = {:?}: {report}", v.one_map));
        }
    }
    Ok(UniversalPropertyReport {
        two_functors: strict.len(),
        lax_functors: lax.len(),
        injective,
        surjective,
        bijection: injective && surjective && strict.len() == lax.len(),
        failures,
    })
}
