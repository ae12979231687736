//! Exhaustive searches over finite categories: functor enumeration,
//! isomorphism search, universal objects and adjoints.

use std::sync::Arc;

use super::category::{ArrId, FinCategory, ObjId};
use super::functor::{CatFunctor, NatTransf};
use crate::{Error, Result};

/// Default bound on estimated search-space sizes.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Upper bound on the number of leaves of the functor search tree:
/// `|D₀|^|C₀| · (max |D(x,y)|)^(non-identity arrows of C)`.
pub fn functor_search_estimate(c: &FinCategory, d: &FinCategory) -> u128 {
    let max_hom = d
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| d.hom(x, y).count())
        .max()
        .unwrap_or(0) as u128;
    let mut est: u128 = 1;
    for _ in c.objects() {
        est = est.saturating_mul(d.num_objects() as u128);
    }
    for _ in c.non_identity_arrows() {
        est = est.saturating_mul(max_hom);
    }
    est
}

/// Backtracking over object images, then non-identity arrow images in id
/// order; every composition constraint is checked as soon as all three of
/// its arrows have images.
struct FunctorSearch<'a> {
    c: &'a FinCategory,
    d: &'a FinCategory,
    order: Vec<ArrId>,
    /// `checks[k]`: constraints `(g, f, gf)` decided once `order[k]` is assigned.
    checks: Vec<Vec<(ArrId, ArrId, ArrId)>>,
    bijective: bool,
    obj_map: Vec<ObjId>,
    arr_map: Vec<ArrId>,
    used_obj: Vec<bool>,
    used_arr: Vec<bool>,
    nodes: u128,
    node_budget: u128,
}

impl<'a> FunctorSearch<'a> {
    fn new(c: &'a FinCategory, d: &'a FinCategory, bijective: bool, node_budget: u128) -> Self {
        let order: Vec<ArrId> = c.non_identity_arrows().collect();
        let mut pos = vec![usize::MAX; c.num_arrows()];
        for (k, &f) in order.iter().enumerate() {
            pos[f] = k;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (g, f) in c.composable_pairs() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            let gf = c.compose(g, f);
            let mut last = pos[g].max(pos[f]);
            if !c.is_identity(gf) {
                last = last.max(pos[gf]);
            }
            checks[last].push((g, f, gf));
        }
        FunctorSearch {
            c,
            d,
            order,
            checks,
            bijective,
            obj_map: vec![usize::MAX; c.num_objects()],
            arr_map: vec![usize::MAX; c.num_arrows()],
            used_obj: vec![false; d.num_objects()],
            used_arr: vec![false; d.num_arrows()],
            nodes: 0,
            node_budget,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::BudgetExceeded {
                what: "functor search".into(),
                estimate: self.nodes,
                budget: self.node_budget,
            });
        }
        Ok(())
    }

    fn objects(&mut self, i: usize, emit: &mut dyn FnMut(&Self) -> bool) -> Result<bool> {
        self.tick()?;
        if i == self.c.num_objects() {
            for x in self.c.objects() {
                self.arr_map[self.c.identity(x)] = self.d.identity(self.obj_map[x]);
            }
            return self.arrows(0, emit);
        }
        for y in self.d.objects() {
            if self.bijective {
                if self.used_obj[y] {
                    continue;
                }
                let consistent = (0..i).chain(std::iter::once(i)).all(|j| {
                    let yj = if j == i { y } else { self.obj_map[j] };
                    self.c.hom(i, j).count() == self.d.hom(y, yj).count()
                        && self.c.hom(j, i).count() == self.d.hom(yj, y).count()
                });
                if !consistent {
                    continue;
                }
                self.used_obj[y] = true;
            }
            self.obj_map[i] = y;
            let stop = self.objects(i + 1, emit)?;
            if self.bijective {
                self.used_obj[y] = false;
            }
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn image(&self, f: ArrId) -> ArrId {
        self.arr_map[f]
    }

    fn arrows(&mut self, k: usize, emit: &mut dyn FnMut(&Self) -> bool) -> Result<bool> {
        self.tick()?;
        if k == self.order.len() {
            return Ok(emit(self));
        }
        let f = self.order[k];
        let (s, t) = (self.obj_map[self.c.src(f)], self.obj_map[self.c.tgt(f)]);
        let candidates: Vec<ArrId> = self.d.hom(s, t).collect();
        for a in candidates {
            if self.bijective && (self.used_arr[a] || self.d.is_identity(a)) {
                continue;
            }
            self.arr_map[f] = a;
            let ok = self.checks[k]
                .iter()
                .all(|&(g, h, gh)| self.d.compose(self.image(g), self.image(h)) == self.image(gh));
            if ok {
                if self.bijective {
                    self.used_arr[a] = true;
                }
                let stop = self.arrows(k + 1, emit)?;
                if self.bijective {
                    self.used_arr[a] = false;
                }
                if stop {
                    return Ok(true);
                }
            }
        }
        self.arr_map[f] = usize::MAX;
        Ok(false)
    }
}

/// All functors `C → D`, lexicographic in (object images, arrow images).
pub fn enumerate_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>, budget: u128) -> Result<Vec<CatFunctor>> {
    let estimate = functor_search_estimate(c, d);
    if estimate > budget {
        return Err(Error::BudgetExceeded {
            what: "functor enumeration".into(),
            estimate,
            budget,
        });
    }
    let mut out = Vec::new();
    let mut search = FunctorSearch::new(c, d, false, u128::MAX);
    search.objects(0, &mut |s| {
        out.push(CatFunctor::new(
            c.clone(),
            d.clone(),
            s.obj_map.clone(),
            s.arr_map.clone(),
        ));
        false
    })?;
    Ok(out)
}

fn hom_profile(c: &FinCategory) -> Vec<usize> {
    let mut sizes: Vec<usize> = c
        .objects()
        .flat_map(|x| c.objects().map(move |y| (x, y)))
        .map(|(x, y)| c.hom(x, y).count())
        .collect();
    sizes.sort_unstable();
    sizes
}

/// Searches for an isomorphism `C → D`, visiting at most `node_budget` search nodes.
pub fn find_isomorphism(c: &Arc<FinCategory>, d: &Arc<FinCategory>, node_budget: u128) -> Result<Option<CatFunctor>> {
    if c.num_objects() != d.num_objects() || c.num_arrows() != d.num_arrows() || hom_profile(c) != hom_profile(d) {
        return Ok(None);
    }
    let mut found = None;
    let mut search = FunctorSearch::new(c, d, true, node_budget);
    search.objects(0, &mut |s| {
        found = Some(CatFunctor::new(
            c.clone(),
            d.clone(),
            s.obj_map.clone(),
            s.arr_map.clone(),
        ));
        true
    })?;
    Ok(found)
}

/// Depth-first assignment of `n` variables. `domain(k, prefix)` lists the
/// candidates for variable `k` given the values of variables `0..k`;
/// `accept(k, prefix)` checks the constraints decided once variable `k` is set
/// (`prefix` then has length `k + 1`); `emit` returns `true` to stop early.
pub(crate) fn backtrack(
    n: usize,
    domain: &mut dyn FnMut(usize, &[usize]) -> Vec<usize>,
    accept: &mut dyn FnMut(usize, &[usize]) -> bool,
    emit: &mut dyn FnMut(&[usize]) -> bool,
    what: &str,
    node_budget: u128,
) -> Result<()> {
    let mut prefix = Vec::with_capacity(n);
    let mut stack: Vec<std::vec::IntoIter<usize>> = Vec::with_capacity(n);
    let mut nodes: u128 = 0;
    if n == 0 {
        emit(&prefix);
        return Ok(());
    }
    stack.push(domain(0, &prefix).into_iter());
    while let Some(top) = stack.last_mut() {
        let Some(v) = top.next() else {
            stack.pop();
            prefix.pop();
            continue;
        };
        nodes += 1;
        if nodes > node_budget {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                estimate: nodes,
                budget: node_budget,
            });
        }
        let k = stack.len() - 1;
        prefix.truncate(k);
        prefix.push(v);
        if !accept(k, &prefix) {
            continue;
        }
        if k + 1 == n {
            if emit(&prefix) {
                return Ok(());
            }
        } else {
            stack.push(domain(k + 1, &prefix).into_iter());
        }
    }
    Ok(())
}

pub fn is_initial(c: &FinCategory, x: ObjId) -> bool {
    c.objects().all(|y| c.hom(x, y).count() == 1)
}

pub fn is_terminal(c: &FinCategory, x: ObjId) -> bool {
    c.objects().all(|y| c.hom(y, x).count() == 1)
}

pub fn initial_object(c: &FinCategory) -> Option<ObjId> {
    c.objects().find(|&x| is_initial(c, x))
}

pub fn terminal_object(c: &FinCategory) -> Option<ObjId> {
    c.objects().find(|&x| is_terminal(c, x))
}

#[derive(Clone, Debug)]
pub struct Adjunction {
    pub left: CatFunctor,
    pub right: CatFunctor,
    /// `id ⇒ right ∘ left`.
    pub unit: NatTransf,
    /// `left ∘ right ⇒ id`.
    pub counit: NatTransf,
}

impl Adjunction {
    /// Both triangle identities, checked componentwise.
    pub fn triangles_hold(&self) -> bool {
        let c = &self.left.source;
        let d = &self.left.target;
        let first = c.objects().all(|x| {
            let lx = self.left.obj(x);
            d.compose(self.counit.components[lx], self.left.arr(self.unit.components[x])) == d.identity(lx)
        });
        let second = d.objects().all(|y| {
            let gy = self.right.obj(y);
            c.compose(self.right.arr(self.counit.components[y]), self.unit.components[gy]) == c.identity(gy)
        });
        first && second
    }
}

/// The unique `k ∈ D(from, to)` with `G(k) ∘ eta = h`, if exactly one exists.
fn unique_factor(g: &CatFunctor, from: ObjId, to: ObjId, eta: ArrId, h: ArrId) -> Option<ArrId> {
    let c = &g.target;
    let mut hits = g.source.hom(from, to).filter(|&k| c.compose(g.arr(k), eta) == h);
    let k = hits.next()?;
    hits.next().is_none().then_some(k)
}

/// A universal arrow `η: c → G(d)`: every `h: c → G(d′)` factors uniquely through it.
pub fn universal_arrow(g: &CatFunctor, c: ObjId) -> Option<(ObjId, ArrId)> {
    let (dcat, ccat) = (&g.source, &g.target);
    for d in dcat.objects() {
        for eta in ccat.hom(c, g.obj(d)) {
            let universal = dcat.objects().all(|d2| {
                ccat.hom(c, g.obj(d2))
                    .all(|h| unique_factor(g, d, d2, eta, h).is_some())
            });
            if universal {
                return Some((d, eta));
            }
        }
    }
    None
}

/// Left adjoint of `g: D → C` found by exhaustive search for universal arrows,
/// or the first object of `C` without one.
pub fn left_adjoint(g: &CatFunctor) -> std::result::Result<Adjunction, ObjId> {
    let (dcat, ccat) = (&g.source, &g.target);
    let mut obj_map = Vec::with_capacity(ccat.num_objects());
    let mut unit = Vec::with_capacity(ccat.num_objects());
    for c in ccat.objects() {
        let (d, eta) = universal_arrow(g, c).ok_or(c)?;
        obj_map.push(d);
        unit.push(eta);
    }
    let arr_map = (0..ccat.num_arrows())
        .map(|f| {
            let (x, y) = (ccat.src(f), ccat.tgt(f));
            let h = ccat.compose(unit[y], f);
            unique_factor(g, obj_map[x], obj_map[y], unit[x], h).expect("universal arrow")
        })
        .collect();
    let left = CatFunctor::new(ccat.clone(), dcat.clone(), obj_map, arr_map);
    let counit = dcat
        .objects()
        .map(|d| {
            let gd = g.obj(d);
            unique_factor(g, left.obj(gd), d, unit[gd], ccat.identity(gd)).expect("universal arrow")
        })
        .collect();
    let id_c = CatFunctor::identity(ccat.clone());
    let id_d = CatFunctor::identity(dcat.clone());
    Ok(Adjunction {
        unit: NatTransf {
            source: id_c,
            target: left.then(g),
            components: unit,
        },
        counit: NatTransf {
            source: g.then(&left),
            target: id_d,
            components: counit,
        },
        left,
        right: g.clone(),
    })
}

/// Right adjoint of `f: C → D`, obtained from a left adjoint of `f^op`.
pub fn right_adjoint(f: &CatFunctor) -> std::result::Result<Adjunction, ObjId> {
    let op = f.opposite();
    let adj = left_adjoint(&op)?;
    let right = CatFunctor::new(f.target.clone(), f.source.clone(), adj.left.obj_map, adj.left.arr_map);
    let unit = NatTransf {
        source: CatFunctor::identity(f.source.clone()),
        target: f.then(&right),
        components: adj.counit.components,
    };
    let counit = NatTransf {
        source: right.then(f),
        target: CatFunctor::identity(f.target.clone()),
        components: adj.unit.components,
    };
    Ok(Adjunction {
        left: f.clone(),
        right,
        unit,
        counit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{cyclic_group, discrete, fence, ordinal};

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    /// Brute force over all object and arrow assignments, then validation.
    fn brute_force_count(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> usize {
        let n0 = c.num_objects();
        let n1 = c.num_arrows();
        let mut count = 0;
        let mut objs = vec![0; n0];
        loop {
            let mut arrs = vec![0; n1];
            loop {
                let f = CatFunctor::new(c.clone(), d.clone(), objs.clone(), arrs.clone());
                if f.validate().is_empty() {
                    count += 1;
                }
                if !bump(&mut arrs, d.num_arrows()) {
                    break;
                }
            }
            if !bump(&mut objs, d.num_objects()) {
                break;
            }
        }
        count
    }

    fn bump(v: &mut [usize], base: usize) -> bool {
        for x in v.iter_mut() {
            *x += 1;
            if *x < base {
                return true;
            }
            *x = 0;
        }
        false
    }

    #[test]
    fn functor_counts() {
        let o0 = arc(ordinal(0));
        let o1 = arc(ordinal(1));
        let z2 = arc(cyclic_group(2));
        assert_eq!(enumerate_functors(&o1, &o1, DEFAULT_BUDGET).unwrap().len(), 3);
        assert_eq!(enumerate_functors(&z2, &o0, DEFAULT_BUDGET).unwrap().len(), 1);
        for d in [o0.clone(), o1.clone(), z2.clone(), arc(fence())] {
            assert_eq!(
                enumerate_functors(&o0, &d, DEFAULT_BUDGET).unwrap().len(),
                d.num_objects()
            );
        }
        // ℤ/2 → ℤ/2: trivial and identity
        assert_eq!(enumerate_functors(&z2, &z2, DEFAULT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn functor_enumeration_matches_brute_force() {
        let cats = [
            arc(ordinal(1)),
            arc(ordinal(2)),
            arc(cyclic_group(2)),
            arc(fence()),
            arc(discrete(["a", "b"])),
        ];
        for c in &cats {
            for d in &cats {
                if c.num_arrows() > 4 {
                    continue;
                }
                let fast = enumerate_functors(c, d, DEFAULT_BUDGET).unwrap();
                assert_eq!(fast.len(), brute_force_count(c, d));
                for f in &fast {
                    assert!(f.validate().is_empty());
                }
                for w in fast.windows(2) {
                    assert!((&w[0].obj_map, &w[0].arr_map) < (&w[1].obj_map, &w[1].arr_map));
                }
            }
        }
    }

    #[test]
    fn backtrack_enumerates_increasing_sequences() {
        let mut out = Vec::new();
        backtrack(
            3,
            &mut |_, _| (0..4).collect(),
            &mut |k, p| k == 0 || p[k - 1] < p[k],
            &mut |p| {
                out.push(p.to_vec());
                false
            },
            "test",
            u128::MAX,
        )
        .unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(out[0], vec![0, 1, 2]);
        assert_eq!(out[3], vec![1, 2, 3]);
    }

    #[test]
    fn budget_is_enforced() {
        let c = arc(ordinal(4));
        let d = arc(ordinal(4));
        match enumerate_functors(&c, &d, 10) {
            Err(Error::BudgetExceeded { estimate, .. }) => assert!(estimate > 10),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn group_is_isomorphic_to_its_opposite() {
        let g = arc(cyclic_group(3));
        let op = arc(g.opposite());
        let iso = find_isomorphism(&g, &op, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(iso.validate().is_empty());
        assert!(iso.is_bijective());
        let o = arc(ordinal(1));
        assert!(find_isomorphism(&o, &g, DEFAULT_BUDGET).unwrap().is_none());
        let f = arc(fence());
        let fop = arc(f.opposite());
        assert!(find_isomorphism(&f, &fop, DEFAULT_BUDGET).unwrap().is_none());
    }

    #[test]
    fn adjoints_to_terminal() {
        // D → 1 has a left adjoint iff D has an initial object
        let o2 = arc(ordinal(2));
        let pt = arc(ordinal(0));
        let bang = CatFunctor::constant(o2.clone(), pt.clone(), 0);
        let adj = left_adjoint(&bang).unwrap();
        assert_eq!(adj.left.obj(0), 0);
        assert!(adj.triangles_hold());
        assert!(adj.unit.validate().is_empty());
        assert!(adj.counit.validate().is_empty());
        let radj = right_adjoint(&bang).unwrap();
        assert_eq!(radj.right.obj(0), 2);
        assert!(radj.triangles_hold());
        // the fence has an initial object but no terminal one
        let f = arc(fence());
        let bang = CatFunctor::constant(f.clone(), pt.clone(), 0);
        assert_eq!(left_adjoint(&bang).unwrap().left.obj(0), 1);
        assert!(right_adjoint(&bang).is_err());
        let two = arc(discrete(["a", "b"]));
        let bang = CatFunctor::constant(two, pt, 0);
        assert_eq!(left_adjoint(&bang).unwrap_err(), 0);
    }
}
