//! The category of simplices `Δ/C`, the relation `∼` on its arrows, the
//! subdivision `sd(C)` and the augmentations `ε`, `ε′`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catcore::{ArrId, Arrow, CatFunctor, FinCategory, ObjId, OrdinalMap};
use crate::{Error, Result};

/// A functor `x: [n] → C`, stored by its objects and consecutive arrows, with
/// the composites `x(p → q)` precomputed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainSimplex {
    pub objects: Vec<ObjId>,
    pub arrows: Vec<ArrId>,
    span: Vec<Vec<ArrId>>,
}

impl ChainSimplex {
    pub fn new(c: &FinCategory, start: ObjId, arrows: Vec<ArrId>) -> ChainSimplex {
        let mut objects = vec![start];
        objects.extend(arrows.iter().map(|&f| c.tgt(f)));
        let n = arrows.len();
        let mut span = vec![vec![usize::MAX; n + 1]; n + 1];
        for p in 0..=n {
            span[p][p] = c.identity(objects[p]);
            for q in p + 1..=n {
                span[p][q] = c.compose(arrows[q - 1], span[p][q - 1]);
            }
        }
        ChainSimplex { objects, arrows, span }
    }

    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    pub fn first(&self) -> ObjId {
        self.objects[0]
    }

    pub fn last(&self) -> ObjId {
        *self.objects.last().unwrap()
    }

    /// The composite `x(p → q)` for `p ≤ q`.
    pub fn between(&self, p: usize, q: usize) -> ArrId {
        self.span[p][q]
    }

    pub fn is_degenerate(&self, c: &FinCategory) -> bool {
        self.arrows.iter().any(|&f| c.is_identity(f))
    }

    pub fn label(&self, c: &FinCategory) -> String {
        if self.arrows.is_empty() {
            format!("[{}]", c.object_name(self.objects[0]))
        } else {
            let names: Vec<&str> = self.arrows.iter().map(|&f| c.arrow_name(f)).collect();
            format!("({})", names.join(","))
        }
    }

    /// Whether `a: [n] → [n′]` satisfies `x′ · a = x`, with `self = x′`.
    pub fn admits(&self, x: &ChainSimplex, a: &OrdinalMap) -> bool {
        a.dom() == x.dim()
            && a.cod() == self.dim()
            && (0..=x.dim()).all(|i| self.objects[a.apply(i)] == x.objects[i])
            && (1..=x.dim()).all(|i| self.between(a.apply(i - 1), a.apply(i)) == x.arrows[i - 1])
    }
}

/// Every chain of dimension `n`, degenerate ones included, in lexicographic order.
pub fn chains(c: &FinCategory, n: usize, nondegenerate_only: bool) -> Vec<ChainSimplex> {
    fn grow(
        c: &FinCategory,
        start: ObjId,
        at: ObjId,
        left: usize,
        skip_ids: bool,
        stack: &mut Vec<ArrId>,
        out: &mut Vec<ChainSimplex>,
    ) {
        if left == 0 {
            out.push(ChainSimplex::new(c, start, stack.clone()));
            return;
        }
        for &f in c.outgoing(at) {
            if skip_ids && c.is_identity(f) {
                continue;
            }
            stack.push(f);
            grow(c, start, c.tgt(f), left - 1, skip_ids, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    for x in c.objects() {
        grow(c, x, x, n, nondegenerate_only, &mut Vec::new(), &mut out);
    }
    out
}

/// Definition of `∼`: `x′(min(a(i), b(i)) → max(a(i), b(i)))` is an identity for every `i`.
pub fn sim_related(c: &FinCategory, target: &ChainSimplex, a: &OrdinalMap, b: &OrdinalMap) -> Result<bool> {
    if a.dom() != b.dom() || a.cod() != b.cod() || a.cod() != target.dim() {
        return Err(Error::NotParallel {
            detail: format!("{a} and {b} into a {}-simplex", target.dim()),
        });
    }
    Ok((0..=a.dom()).all(|i| {
        let (u, v) = (a.apply(i), b.apply(i));
        c.is_identity(target.between(u.min(v), u.max(v)))
    }))
}

/// One step of the elementary relation `≈`: the maps differ in exactly one
/// coordinate and `x′` is an identity between the two values.
pub fn elementary_related(c: &FinCategory, target: &ChainSimplex, a: &OrdinalMap, b: &OrdinalMap) -> bool {
    let diffs: Vec<usize> = (0..=a.dom()).filter(|&i| a.apply(i) != b.apply(i)).collect();
    match diffs.as_slice() {
        [i] => {
            let (u, v) = (a.apply(*i), b.apply(*i));
            c.is_identity(target.between(u.min(v), u.max(v)))
        }
        _ => false,
    }
}

fn pointwise_min(a: &OrdinalMap, b: &OrdinalMap) -> OrdinalMap {
    let values = a.values().iter().zip(b.values()).map(|(&u, &v)| u.min(v)).collect();
    OrdinalMap::new(a.cod(), values).expect("pointwise minimum of monotone maps is monotone")
}

/// `Δ/C` truncated at dimension `N`, with the chain and ordinal map behind
/// each object and arrow.
#[derive(Clone, Debug)]
pub struct DeltaOver {
    pub category: Arc<FinCategory>,
    pub base: Arc<FinCategory>,
    pub bound: usize,
    pub chains: Vec<ChainSimplex>,
    pub maps: Vec<OrdinalMap>,
}

impl DeltaOver {
    /// `sup`: a chain goes to its last object, `a_*: x → x′` to `x′(a(n) → n′)`.
    pub fn sup(&self) -> CatFunctor {
        let obj_map = self.chains.iter().map(ChainSimplex::last).collect();
        let arr_map = (0..self.category.num_arrows())
            .map(|f| {
                let a = &self.maps[f];
                let target = &self.chains[self.category.tgt(f)];
                target.between(a.apply(a.dom()), target.dim())
            })
            .collect();
        CatFunctor::new(self.category.clone(), self.base.clone(), obj_map, arr_map)
    }
}

/// Builds a category whose objects are `chains` and whose arrows are the
/// simplex maps chosen by `maps_between` (each flagged when it stands for an
/// identity). A composite of ordinal maps is sent to an arrow by `reduce`,
/// which sees the arrows with the same ends.
fn simplex_category_over(
    base: &FinCategory,
    chains: &[ChainSimplex],
    maps_between: impl Fn(&ChainSimplex, &ChainSimplex) -> Vec<(OrdinalMap, bool)>,
    reduce: impl Fn(&ChainSimplex, &OrdinalMap, &[(OrdinalMap, ArrId)]) -> ArrId,
) -> (FinCategory, Vec<OrdinalMap>) {
    let names: Vec<String> = chains.iter().map(|x| x.label(base)).collect();
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    let mut by_ends: HashMap<(ObjId, ObjId), Vec<(OrdinalMap, ArrId)>> = HashMap::new();
    for (s, x) in chains.iter().enumerate() {
        for (t, y) in chains.iter().enumerate() {
            for (a, is_identity) in maps_between(x, y) {
                by_ends.entry((s, t)).or_default().push((a.clone(), arrows.len()));
                let name = if is_identity {
                    format!("id_{}", names[s])
                } else {
                    format!("{}:{}->{}", a_values(&a), names[s], names[t])
                };
                arrows.push(Arrow {
                    name,
                    src: s,
                    tgt: t,
                    is_identity,
                });
                maps.push(a);
            }
        }
    }
    let ends: Vec<(ObjId, ObjId)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let cat = FinCategory::assemble(names, arrows, |g, f| {
        let (s, t) = (ends[f].0, ends[g].1);
        let composite = maps[g].compose(&maps[f]);
        Some(reduce(&chains[t], &composite, &by_ends[&(s, t)]))
    });
    (cat, maps)
}

fn a_values(a: &OrdinalMap) -> String {
    let v: Vec<String> = a.values().iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

/// `Δ/C` with all chains of dimension `≤ bound`, degenerate ones included.
pub fn delta_over(c: &Arc<FinCategory>, bound: usize) -> DeltaOver {
    let chains: Vec<ChainSimplex> = (0..=bound).flat_map(|n| chains(c, n, false)).collect();
    let (category, maps) = simplex_category_over(
        c,
        &chains,
        |x, y| {
            OrdinalMap::all(x.dim(), y.dim())
                .filter(|a| y.admits(x, a))
                .map(|a| {
                    let id = x == y && a.is_identity();
                    (a, id)
                })
                .collect()
        },
        |_, a, candidates| {
            candidates
                .iter()
                .find(|(b, _)| b == a)
                .expect("closed under composition")
                .1
        },
    );
    DeltaOver {
        category: Arc::new(category),
        base: c.clone(),
        bound,
        chains,
        maps,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCounterexample {
    pub source: String,
    pub target: String,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub sim: bool,
    pub closure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCheck {
    pub agrees: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<ClosureCounterexample>,
}

/// Compares the equivalence relation generated by `≈` with `∼` on every
/// parallel pair of arrows of `Δ/C` up to dimension `bound`.
pub fn elementary_closure_equals_sim(c: &Arc<FinCategory>, bound: usize, budget: u128) -> Result<ClosureCheck> {
    let all: Vec<ChainSimplex> = (0..=bound).flat_map(|n| chains(c, n, false)).collect();
    let estimate = (all.len() as u128).pow(2) * (1u128 << (2 * bound + 1));
    if estimate > budget {
        return Err(Error::BudgetExceeded {
            what: "elementary closure check".into(),
            estimate,
            budget,
        });
    }
    let mut pairs_checked = 0;
    for x in &all {
        for y in &all {
            let maps: Vec<OrdinalMap> = OrdinalMap::all(x.dim(), y.dim()).filter(|a| y.admits(x, a)).collect();
            let k = maps.len();
            // union-find over ≈
            let mut parent: Vec<usize> = (0..k).collect();
            fn find(p: &mut [usize], mut a: usize) -> usize {
                while p[a] != a {
                    p[a] = p[p[a]];
                    a = p[a];
                }
                a
            }
            for i in 0..k {
                for j in i + 1..k {
                    if elementary_related(c, y, &maps[i], &maps[j]) {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri] = rj;
                    }
                }
            }
            for i in 0..k {
                for j in i..k {
                    pairs_checked += 1;
                    let sim = sim_related(c, y, &maps[i], &maps[j])?;
                    let closure = find(&mut parent, i) == find(&mut parent, j);
                    if sim != closure {
                        return Ok(ClosureCheck {
                            agrees: false,
                            pairs_checked,
                            counterexample: Some(ClosureCounterexample {
                                source: x.label(c),
                                target: y.label(c),
                                a: maps[i].values().to_vec(),
                                b: maps[j].values().to_vec(),
                                sim,
                                closure,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(ClosureCheck {
        agrees: true,
        pairs_checked,
        counterexample: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubdivisionMode {
    /// All nondegenerate simplices; requires a loop-free category.
    Exact,
    /// Nondegenerate simplices of dimension at most the bound.
    Truncated(usize),
}

/// `sd(C)`: nondegenerate chains and `∼`-classes of simplex maps, each class
/// stored by its pointwise-minimal member.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub category: Arc<FinCategory>,
    pub base: Arc<FinCategory>,
    pub mode: SubdivisionMode,
    pub chains: Vec<ChainSimplex>,
    /// Canonical representative of each arrow's class.
    pub representatives: Vec<OrdinalMap>,
}

/// The classes of simplex maps `x → y`, each as (minimal representative, members).
pub fn sim_classes(c: &FinCategory, x: &ChainSimplex, y: &ChainSimplex) -> Vec<(OrdinalMap, Vec<OrdinalMap>)> {
    let mut classes: Vec<Vec<OrdinalMap>> = Vec::new();
    for a in OrdinalMap::all(x.dim(), y.dim()).filter(|a| y.admits(x, a)) {
        match classes
            .iter_mut()
            .find(|cl| sim_related(c, y, &cl[0], &a).expect("parallel by construction"))
        {
            Some(cl) => cl.push(a),
            None => classes.push(vec![a]),
        }
    }
    classes
        .into_iter()
        .map(|cl| {
            let min = cl.iter().skip(1).fold(cl[0].clone(), |m, a| pointwise_min(&m, a));
            (min, cl)
        })
        .collect()
}

pub fn subdivide(c: &Arc<FinCategory>, mode: SubdivisionMode) -> Result<Subdivision> {
    let bound = match mode {
        SubdivisionMode::Exact => {
            c.require_loop_free()?;
            c.num_objects().saturating_sub(1)
        }
        SubdivisionMode::Truncated(n) => n,
    };
    let chains: Vec<ChainSimplex> = (0..=bound).flat_map(|n| chains(c, n, true)).collect();
    let (category, representatives) = simplex_category_over(
        c,
        &chains,
        |x, y| {
            sim_classes(c, x, y)
                .into_iter()
                .map(|(m, members)| {
                    let id = x == y && members.iter().any(OrdinalMap::is_identity);
                    (m, id)
                })
                .collect()
        },
        |target, a, candidates| {
            candidates
                .iter()
                .find(|(rep, _)| sim_related(c, target, rep, a).expect("parallel"))
                .expect("composite lies in some class")
                .1
        },
    );
    Ok(Subdivision {
        category: Arc::new(category),
        base: c.clone(),
        mode,
        chains,
        representatives,
    })
}

impl Subdivision {
    /// `ε: sd(C) → C`, last objects.
    pub fn eps(&self) -> CatFunctor {
        let sd = &*self.category;
        let obj_map = self.chains.iter().map(ChainSimplex::last).collect();
        let arr_map = (0..sd.num_arrows())
            .map(|f| {
                let a = &self.representatives[f];
                let y = &self.chains[sd.tgt(f)];
                y.between(a.apply(a.dom()), y.dim())
            })
            .collect();
        CatFunctor::new(self.category.clone(), self.base.clone(), obj_map, arr_map)
    }

    /// `ε′: sd(C) → C^op`, first objects.
    pub fn eps_prime(&self) -> CatFunctor {
        let sd = &*self.category;
        let obj_map = self.chains.iter().map(ChainSimplex::first).collect();
        let arr_map = (0..sd.num_arrows())
            .map(|f| {
                let a = &self.representatives[f];
                self.chains[sd.tgt(f)].between(0, a.apply(0))
            })
            .collect();
        CatFunctor::new(self.category.clone(), Arc::new(self.base.opposite()), obj_map, arr_map)
    }
}

/// Whether `sd(sd(C))` is a poset.
pub fn sd2_is_poset(c: &Arc<FinCategory>) -> Result<bool> {
    let sd = subdivide(c, SubdivisionMode::Exact)?;
    let sd2 = subdivide(&sd.category, SubdivisionMode::Exact)?;
    Ok(sd2.category.is_poset())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{cyclic_group, fence, find_isomorphism, ordinal, DEFAULT_BUDGET};

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    #[test]
    fn delta_over_small_cases() {
        let d = delta_over(&arc(ordinal(0)), 2);
        assert_eq!(d.category.num_objects(), 3);
        assert!(d.category.validate().is_empty());
        let d = delta_over(&arc(ordinal(1)), 1);
        // [1] → ⟨1⟩: (0,0), (0,1), (1,1); plus the two vertices
        assert_eq!(d.category.num_objects(), 5);
        assert!(d.category.validate().is_empty());
        assert!(d.sup().validate().is_empty());
    }

    #[test]
    fn sim_examples() {
        // x′ = (c → c′ = c′): a = (0,1), b = (0,2) are related
        let c = ordinal(1);
        let f = c.hom(0, 1).next().unwrap();
        let x2 = ChainSimplex::new(&c, 0, vec![f, c.identity(1)]);
        let x = ChainSimplex::new(&c, 0, vec![f]);
        let a = OrdinalMap::new(2, vec![0, 1]).unwrap();
        let b = OrdinalMap::new(2, vec![0, 2]).unwrap();
        assert!(x2.admits(&x, &a) && x2.admits(&x, &b));
        assert!(sim_related(&c, &x2, &a, &b).unwrap());
        assert!(sim_related(&c, &x2, &a, &a).unwrap());
        // no identities: distinct maps are unrelated
        let o = ordinal(2);
        let y = ChainSimplex::new(&o, 0, vec![o.hom(0, 1).next().unwrap(), o.hom(1, 2).next().unwrap()]);
        let a = OrdinalMap::new(2, vec![0]).unwrap();
        let b = OrdinalMap::new(2, vec![1]).unwrap();
        assert!(!sim_related(&o, &y, &a, &b).unwrap());
        let short = OrdinalMap::new(1, vec![0]).unwrap();
        assert!(sim_related(&o, &y, &a, &short).is_err());
    }

    #[test]
    fn closure_matches_sim() {
        for c in [ordinal(1), ordinal(2), fence(), cyclic_group(2)] {
            let r = elementary_closure_equals_sim(&arc(c), 2, DEFAULT_BUDGET).unwrap();
            assert!(r.agrees, "{:?}", r.counterexample);
        }
    }

    #[test]
    fn subdivision_of_interval_is_fence() {
        let sd = subdivide(&arc(ordinal(1)), SubdivisionMode::Exact).unwrap();
        assert!(sd.category.validate().is_empty());
        assert_eq!(sd.category.num_objects(), 3);
        assert!(find_isomorphism(&sd.category, &arc(fence().opposite()), DEFAULT_BUDGET)
            .unwrap()
            .is_some());
        let eps = sd.eps();
        assert!(eps.validate().is_empty());
        assert_eq!(eps.obj_map, vec![0, 1, 1]);
        assert!(sd.eps_prime().validate().is_empty());
        let pt = subdivide(&arc(ordinal(0)), SubdivisionMode::Exact).unwrap();
        assert_eq!(pt.category.num_arrows(), 1);
    }

    #[test]
    fn loops_need_truncation() {
        let z2 = arc(cyclic_group(2));
        assert!(matches!(
            subdivide(&z2, SubdivisionMode::Exact),
            Err(Error::NotLoopFree { .. })
        ));
        let sd = subdivide(&z2, SubdivisionMode::Truncated(2)).unwrap();
        assert!(sd.category.validate().is_empty());
        assert!(sd.eps().validate().is_empty());
    }

    #[test]
    fn classes_have_attained_minimum() {
        let c = cyclic_group(2);
        let all: Vec<ChainSimplex> = (0..=2).flat_map(|n| chains(&c, n, false)).collect();
        for x in &all {
            for y in &all {
                for (min, members) in sim_classes(&c, x, y) {
                    assert!(members.contains(&min));
                    assert!(members
                        .iter()
                        .all(|m| min.values().iter().zip(m.values()).all(|(u, v)| u <= v)));
                }
            }
        }
    }

    #[test]
    fn sd2_posets() {
        for c in [ordinal(1), ordinal(2), fence()] {
            assert!(sd2_is_poset(&arc(c)).unwrap());
        }
    }
}
