use std::sync::Arc;

use super::twocategory::{CellId, Fin2Category};
use crate::catcore::{ArrId, ObjId};
use crate::report::{Axiom, ValidationReport};

/// A strict 2-functor.
#[derive(Clone, Debug)]
pub struct TwoFunctor {
    pub source: Arc<Fin2Category>,
    pub target: Arc<Fin2Category>,
    pub obj_map: Vec<ObjId>,
    pub one_map: Vec<ArrId>,
    pub two_map: Vec<CellId>,
}

impl PartialEq for TwoFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map && self.one_map == other.one_map && self.two_map == other.two_map
    }
}

impl Eq for TwoFunctor {}

/// A normal lax functor. `structural[k]` is the cell `u_{g,f}: u(gf) ⇒ u(g)u(f)`
/// for the composable pair of 1-cells with dense index `k` in the source's
/// underlying category.
#[derive(Clone, Debug)]
pub struct NormalLaxFunctor {
    pub source: Arc<Fin2Category>,
    pub target: Arc<Fin2Category>,
    pub obj_map: Vec<ObjId>,
    pub one_map: Vec<ArrId>,
    pub two_map: Vec<CellId>,
    pub structural: Vec<CellId>,
}

impl PartialEq for NormalLaxFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.one_map == other.one_map
            && self.two_map == other.two_map
            && self.structural == other.structural
    }
}

impl Eq for NormalLaxFunctor {}

impl TwoFunctor {
    pub fn identity(c: Arc<Fin2Category>) -> TwoFunctor {
        TwoFunctor {
            obj_map: c.objects().collect(),
            one_map: (0..c.num_one_cells()).collect(),
            two_map: (0..c.num_cells()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// The same functor with identity structural cells.
    pub fn to_lax(&self) -> NormalLaxFunctor {
        let s = self.source.underlying();
        let structural = s
            .composable_pairs()
            .map(|(g, f)| self.target.id2(self.one_map[s.compose(g, f)]))
            .collect();
        NormalLaxFunctor {
            source: self.source.clone(),
            target: self.target.clone(),
            obj_map: self.obj_map.clone(),
            one_map: self.one_map.clone(),
            two_map: self.two_map.clone(),
            structural,
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &TwoFunctor) -> TwoFunctor {
        TwoFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            obj_map: self.obj_map.iter().map(|&c| next.obj_map[c]).collect(),
            one_map: self.one_map.iter().map(|&f| next.one_map[f]).collect(),
            two_map: self.two_map.iter().map(|&a| next.two_map[a]).collect(),
        }
    }

    /// Strict preservation of all structure.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.to_lax().validate();
        let (s, t) = (&self.source, &self.target);
        if !report.is_empty() {
            return report;
        }
        for (g, f) in s.underlying().composable_pairs() {
            if self.one_map[s.compose1(g, f)] != t.compose1(self.one_map[g], self.one_map[f]) {
                report.push(
                    Axiom::FunctorPreservation,
                    vec![s.one_cell_name(g).to_string(), s.one_cell_name(f).to_string()],
                    "horizontal composition of 1-cells not preserved",
                );
            }
        }
        for (b, a) in s.horizontal_pairs() {
            if self.two_map[s.hcomp(b, a)] != t.hcomp(self.two_map[b], self.two_map[a]) {
                report.push(
                    Axiom::FunctorPreservation,
                    vec![s.cell_name(b).to_string(), s.cell_name(a).to_string()],
                    "horizontal composition of 2-cells not preserved",
                );
            }
        }
        report
    }
}

impl NormalLaxFunctor {
    pub fn structural_cell(&self, g: ArrId, f: ArrId) -> CellId {
        let k = self
            .source
            .underlying()
            .pair_index(g, f)
            .expect("1-cells are composable");
        self.structural[k]
    }

    pub fn has_identity_structure(&self) -> bool {
        self.structural.iter().all(|&a| self.target.is_identity_cell(a))
    }

    /// The strict 2-functor with the same maps, when every structural cell is an identity.
    pub fn to_two_functor(&self) -> Option<TwoFunctor> {
        self.has_identity_structure().then(|| TwoFunctor {
            source: self.source.clone(),
            target: self.target.clone(),
            obj_map: self.obj_map.clone(),
            one_map: self.one_map.clone(),
            two_map: self.two_map.clone(),
        })
    }

    /// Typing, functoriality on hom-categories, and axioms i) normality,
    /// ii) naturality of the structural cells, iii) coherence.
    pub fn validate(&self) -> ValidationReport {
        let (s, t) = (&*self.source, &*self.target);
        let su = s.underlying();
        let mut report = ValidationReport::new();
        if self.obj_map.len() != s.num_objects()
            || self.one_map.len() != s.num_one_cells()
            || self.two_map.len() != s.num_cells()
            || self.structural.len() != su.num_pairs()
        {
            report.push(Axiom::Typing, vec![], "map has the wrong length");
            return report;
        }
        if self.obj_map.iter().any(|&x| x >= t.num_objects())
            || self.one_map.iter().any(|&x| x >= t.num_one_cells())
            || self.two_map.iter().any(|&x| x >= t.num_cells())
            || self.structural.iter().any(|&x| x >= t.num_cells())
        {
            report.push(Axiom::Typing, vec![], "map value out of range");
            return report;
        }
        let one = |f: ArrId| s.one_cell_name(f).to_string();
        let cell = |a: CellId| s.cell_name(a).to_string();
        for f in 0..s.num_one_cells() {
            let uf = t.one_cell(self.one_map[f]);
            let a = s.one_cell(f);
            if uf.src != self.obj_map[a.src] || uf.tgt != self.obj_map[a.tgt] {
                report.push(Axiom::Typing, vec![one(f)], "1-cell image has wrong ends");
            }
        }
        if !report.is_empty() {
            return report;
        }
        for a in 0..s.num_cells() {
            let ua = self.two_map[a];
            if t.cell_src(ua) != self.one_map[s.cell_src(a)] || t.cell_tgt(ua) != self.one_map[s.cell_tgt(a)] {
                report.push(Axiom::Typing, vec![cell(a)], "2-cell image has wrong ends");
            }
        }
        for (k, (g, f)) in su.composable_pairs().enumerate() {
            let x = self.structural[k];
            if t.cell_src(x) != self.one_map[s.compose1(g, f)]
                || t.cell_tgt(x) != t.compose1(self.one_map[g], self.one_map[f])
            {
                report.push(
                    Axiom::Typing,
                    vec![one(g), one(f)],
                    "structural cell is not u(gf) ⇒ u(g)u(f)",
                );
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in 0..s.num_one_cells() {
            if self.two_map[s.id2(f)] != t.id2(self.one_map[f]) {
                report.push(
                    Axiom::FunctorPreservation,
                    vec![one(f)],
                    "identity 2-cell not preserved",
                );
            }
        }
        for (b, a) in s.vertical().composable_pairs() {
            if self.two_map[s.vcomp(b, a)] != t.vcomp(self.two_map[b], self.two_map[a]) {
                report.push(
                    Axiom::FunctorPreservation,
                    vec![cell(b), cell(a)],
                    "vertical composition not preserved",
                );
            }
        }
        // i)
        for c in s.objects() {
            if self.one_map[s.id1(c)] != t.id1(self.obj_map[c]) {
                report.push(
                    Axiom::Normality,
                    vec![s.object_name(c).to_string()],
                    "u(id_c) ≠ id_u(c)",
                );
            }
        }
        for (k, (g, f)) in su.composable_pairs().enumerate() {
            if (su.is_identity(g) || su.is_identity(f)) && !t.is_identity_cell(self.structural[k]) {
                report.push(
                    Axiom::Normality,
                    vec![one(g), one(f)],
                    "structural cell at an identity is not an identity",
                );
            }
        }
        // ii)
        for (b, a) in s.horizontal_pairs() {
            let (f, f2) = (s.cell_src(a), s.cell_tgt(a));
            let (g, g2) = (s.cell_src(b), s.cell_tgt(b));
            let lhs = t.vcomp(t.hcomp(self.two_map[b], self.two_map[a]), self.structural_cell(g, f));
            let rhs = t.vcomp(self.structural_cell(g2, f2), self.two_map[s.hcomp(b, a)]);
            if lhs != rhs {
                report.push(
                    Axiom::LaxNaturality,
                    vec![cell(b), cell(a)],
                    "(u(b)∘u(a))•u_{g,f} ≠ u_{g′,f′}•u(b∘a)",
                );
            }
        }
        // iii)
        for (g, f) in su.composable_pairs() {
            let gf = s.compose1(g, f);
            for &h in su.outgoing(su.tgt(g)) {
                let hg = s.compose1(h, g);
                let lhs = t.vcomp(
                    t.whisker_right(self.structural_cell(h, g), self.one_map[f]),
                    self.structural_cell(hg, f),
                );
                let rhs = t.vcomp(
                    t.whisker_left(self.one_map[h], self.structural_cell(g, f)),
                    self.structural_cell(h, gf),
                );
                if lhs != rhs {
                    report.push(
                        Axiom::LaxCoherence,
                        vec![one(f), one(g), one(h)],
                        "(u_{h,g}∘u(f))•u_{hg,f} ≠ (u(h)∘u_{g,f})•u_{h,gf}",
                    );
                }
            }
        }
        report
    }
}

/// Validation of a normal lax functor (axioms i–iii and typing).
pub fn validate_lax(u: &NormalLaxFunctor) -> ValidationReport {
    u.validate()
}
