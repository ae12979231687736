use std::sync::Arc;

use super::category::{ArrId, FinCategory, ObjId};
use crate::report::{Axiom, ValidationReport};

#[derive(Clone, Debug)]
pub struct CatFunctor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub obj_map: Vec<ObjId>,
    pub arr_map: Vec<ArrId>,
}

/// Functors compare by their maps only; source and target are assumed shared.
impl PartialEq for CatFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map && self.arr_map == other.arr_map
    }
}

impl Eq for CatFunctor {}

impl CatFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        arr_map: Vec<ArrId>,
    ) -> CatFunctor {
        CatFunctor {
            source,
            target,
            obj_map,
            arr_map,
        }
    }

    pub fn identity(c: Arc<FinCategory>) -> CatFunctor {
        let obj_map = c.objects().collect();
        let arr_map = (0..c.num_arrows()).collect();
        CatFunctor::new(c.clone(), c, obj_map, arr_map)
    }

    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, d: ObjId) -> CatFunctor {
        let id = target.identity(d);
        let obj_map = vec![d; source.num_objects()];
        let arr_map = vec![id; source.num_arrows()];
        CatFunctor::new(source, target, obj_map, arr_map)
    }

    pub fn obj(&self, c: ObjId) -> ObjId {
        self.obj_map[c]
    }

    pub fn arr(&self, f: ArrId) -> ArrId {
        self.arr_map[f]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CatFunctor) -> CatFunctor {
        CatFunctor::new(
            self.source.clone(),
            next.target.clone(),
            self.obj_map.iter().map(|&c| next.obj_map[c]).collect(),
            self.arr_map.iter().map(|&f| next.arr_map[f]).collect(),
        )
    }

    /// The same maps viewed between opposite categories.
    pub fn opposite(&self) -> CatFunctor {
        CatFunctor::new(
            Arc::new(self.source.opposite()),
            Arc::new(self.target.opposite()),
            self.obj_map.clone(),
            self.arr_map.clone(),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let (c, d) = (&*self.source, &*self.target);
        let mut report = ValidationReport::new();
        if self.obj_map.len() != c.num_objects() || self.arr_map.len() != c.num_arrows() {
            report.push(Axiom::Typing, vec![], "object or arrow map has the wrong length");
            return report;
        }
        if self.obj_map.iter().any(|&x| x >= d.num_objects()) || self.arr_map.iter().any(|&x| x >= d.num_arrows()) {
            report.push(Axiom::Typing, vec![], "map value out of range");
            return report;
        }
        for f in 0..c.num_arrows() {
            let uf = self.arr_map[f];
            if d.src(uf) != self.obj_map[c.src(f)] || d.tgt(uf) != self.obj_map[c.tgt(f)] {
                report.push(
                    Axiom::FunctorPreservation,
                    vec![c.arrow_name(f).to_string()],
                    "source or target not preserved",
                );
            }
        }
        if !report.is_empty() {
            return report;
        }
        for x in c.objects() {
            if self.arr_map[c.identity(x)] != d.identity(self.obj_map[x]) {
                report.push(
                    Axiom::FunctorPreservation,
                    vec![c.object_name(x).to_string()],
                    "identity not preserved",
                );
            }
        }
        for (g, f) in c.composable_pairs() {
            let gf = c.compose(g, f);
            if d.compose(self.arr_map[g], self.arr_map[f]) != self.arr_map[gf] {
                report.push(
                    Axiom::FunctorPreservation,
                    vec![c.arrow_name(g).to_string(), c.arrow_name(f).to_string()],
                    "composition not preserved",
                );
            }
        }
        report
    }

    pub fn is_bijective(&self) -> bool {
        is_permutation(&self.obj_map, self.target.num_objects())
            && is_permutation(&self.arr_map, self.target.num_arrows())
    }

    /// Inverse of a bijective functor.
    pub fn inverse(&self) -> Option<CatFunctor> {
        if !self.is_bijective() {
            return None;
        }
        let mut obj_map = vec![0; self.obj_map.len()];
        for (c, &d) in self.obj_map.iter().enumerate() {
            obj_map[d] = c;
        }
        let mut arr_map = vec![0; self.arr_map.len()];
        for (f, &g) in self.arr_map.iter().enumerate() {
            arr_map[g] = f;
        }
        Some(CatFunctor::new(
            self.target.clone(),
            self.source.clone(),
            obj_map,
            arr_map,
        ))
    }
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// A natural transformation `source ⇒ target` between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransf {
    pub source: CatFunctor,
    pub target: CatFunctor,
    pub components: Vec<ArrId>,
}

impl NatTransf {
    pub fn identity(f: &CatFunctor) -> NatTransf {
        let components = f.obj_map.iter().map(|&d| f.target.identity(d)).collect();
        NatTransf {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn is_identity(&self) -> bool {
        let d = &self.source.target;
        self.components.iter().all(|&a| d.is_identity(a))
    }

    /// `other • self`.
    pub fn then(&self, other: &NatTransf) -> NatTransf {
        let d = &self.source.target;
        NatTransf {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| d.compose(b, a))
                .collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.source.validate().scoped("source functor");
        report.extend(self.target.validate().scoped("target functor"));
        if !report.is_empty() {
            return report;
        }
        let (c, d) = (&*self.source.source, &*self.source.target);
        if self.components.len() != c.num_objects() {
            report.push(Axiom::Typing, vec![], "wrong number of components");
            return report;
        }
        for x in c.objects() {
            let a = self.components[x];
            if a >= d.num_arrows() || d.src(a) != self.source.obj(x) || d.tgt(a) != self.target.obj(x) {
                report.push(
                    Axiom::Typing,
                    vec![c.object_name(x).to_string()],
                    "component has the wrong source or target",
                );
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in 0..c.num_arrows() {
            let lhs = d.compose(self.target.arr(f), self.components[c.src(f)]);
            let rhs = d.compose(self.components[c.tgt(f)], self.source.arr(f));
            if lhs != rhs {
                report.push(
                    Axiom::Naturality,
                    vec![c.arrow_name(f).to_string()],
                    "naturality square does not commute",
                );
            }
        }
        report
    }
}
