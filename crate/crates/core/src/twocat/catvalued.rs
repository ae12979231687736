use std::sync::Arc;

use super::twocategory::{CellId, Fin2Category};
use crate::catcore::{ArrId, CatFunctor, FinCategory, NatTransf, ObjId};
use crate::report::{Axiom, ValidationReport};

/// A normal lax functor `F: B ⇝ cat` on a 1-category `B`.
///
/// `structural[k]` lists, for the composable pair `(g, f)` of `B` with dense
/// index `k`, the components `F_{g,f}(x): F(gf)x → F(g)F(f)x` for every
/// object `x` of `F(src f)`.
#[derive(Clone, Debug)]
pub struct CatValuedLaxFunctor {
    pub base: Arc<FinCategory>,
    pub values: Vec<Arc<FinCategory>>,
    pub actions: Vec<CatFunctor>,
    pub structural: Vec<Vec<ArrId>>,
}

impl CatValuedLaxFunctor {
    /// A strict functor: every structural component is an identity.
    pub fn strict(
        base: Arc<FinCategory>,
        values: Vec<Arc<FinCategory>>,
        actions: Vec<CatFunctor>,
    ) -> CatValuedLaxFunctor {
        let structural = base
            .composable_pairs()
            .map(|(g, f)| {
                let gf = base.compose(g, f);
                let target = &values[base.tgt(g)];
                values[base.src(f)]
                    .objects()
                    .map(|x| target.identity(actions[gf].obj(x)))
                    .collect()
            })
            .collect();
        CatValuedLaxFunctor {
            base,
            values,
            actions,
            structural,
        }
    }

    /// The constant functor at `value`.
    pub fn constant(base: Arc<FinCategory>, value: Arc<FinCategory>) -> CatValuedLaxFunctor {
        let values = vec![value.clone(); base.num_objects()];
        let actions = vec![CatFunctor::identity(value); base.num_arrows()];
        CatValuedLaxFunctor::strict(base, values, actions)
    }

    pub fn structural_component(&self, g: ArrId, f: ArrId, x: ObjId) -> ArrId {
        let k = self.base.pair_index(g, f).expect("composable");
        self.structural[k][x]
    }

    /// Typing and functoriality of every action, and the lax axioms
    /// i) normality, naturality of the structural cells, iii) coherence.
    pub fn validate(&self) -> ValidationReport {
        let b = &*self.base;
        let mut report = ValidationReport::new();
        if self.values.len() != b.num_objects()
            || self.actions.len() != b.num_arrows()
            || self.structural.len() != b.num_pairs()
        {
            report.push(Axiom::Typing, vec![], "wrong number of values, actions or cells");
            return report;
        }
        for (x, v) in self.values.iter().enumerate() {
            report.extend(v.validate().scoped(&format!("value at {}", b.object_name(x))));
        }
        for (a, act) in self.actions.iter().enumerate() {
            let name = b.arrow_name(a).to_string();
            if *act.source != *self.values[b.src(a)] || *act.target != *self.values[b.tgt(a)] {
                report.push(Axiom::Typing, vec![name], "action between the wrong categories");
                continue;
            }
            report.extend(act.validate().scoped(&format!("action of {name}")));
        }
        if !report.is_empty() {
            return report;
        }
        for c in b.objects() {
            let act = &self.actions[b.identity(c)];
            if *act != CatFunctor::identity(self.values[c].clone()) {
                report.push(
                    Axiom::Normality,
                    vec![b.object_name(c).to_string()],
                    "F(id) is not the identity functor",
                );
            }
        }
        for (k, (g, f)) in b.composable_pairs().enumerate() {
            let names = vec![b.arrow_name(g).to_string(), b.arrow_name(f).to_string()];
            let src = &self.values[b.src(f)];
            let tgt = &self.values[b.tgt(g)];
            let comps = &self.structural[k];
            let (fg, ff, fgf) = (&self.actions[g], &self.actions[f], &self.actions[b.compose(g, f)]);
            if comps.len() != src.num_objects() {
                report.push(Axiom::Typing, names, "wrong number of components");
                continue;
            }
            let typed = src.objects().all(|x| {
                let a = comps[x];
                a < tgt.num_arrows() && tgt.src(a) == fgf.obj(x) && tgt.tgt(a) == fg.obj(ff.obj(x))
            });
            if !typed {
                report.push(Axiom::Typing, names, "structural component is not F(gf)x → F(g)F(f)x");
                continue;
            }
            if (b.is_identity(g) || b.is_identity(f)) && comps.iter().any(|&a| !tgt.is_identity(a)) {
                report.push(
                    Axiom::Normality,
                    names.clone(),
                    "structural cell at an identity is not an identity",
                );
            }
            for h in 0..src.num_arrows() {
                let lhs = tgt.compose(fg.arr(ff.arr(h)), comps[src.src(h)]);
                let rhs = tgt.compose(comps[src.tgt(h)], fgf.arr(h));
                if lhs != rhs {
                    let mut w = names.clone();
                    w.push(src.arrow_name(h).to_string());
                    report.push(Axiom::Naturality, w, "structural cell is not natural");
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        for (g, f) in b.composable_pairs() {
            let gf = b.compose(g, f);
            for &h in b.outgoing(b.tgt(g)) {
                let hg = b.compose(h, g);
                let tgt = &self.values[b.tgt(h)];
                for x in self.values[b.src(f)].objects() {
                    let fx = self.actions[f].obj(x);
                    let lhs = tgt.compose(self.structural_component(h, g, fx), self.structural_component(hg, f, x));
                    let rhs = tgt.compose(
                        self.actions[h].arr(self.structural_component(g, f, x)),
                        self.structural_component(h, gf, x),
                    );
                    if lhs != rhs {
                        report.push(
                            Axiom::LaxCoherence,
                            vec![
                                b.arrow_name(f).to_string(),
                                b.arrow_name(g).to_string(),
                                b.arrow_name(h).to_string(),
                                self.values[b.src(f)].object_name(x).to_string(),
                            ],
                            "(F_{h,g}∘F(f))•F_{hg,f} ≠ (F(h)∘F_{g,f})•F_{h,gf}",
                        );
                    }
                }
            }
        }
        report
    }
}

/// The representable `h^c: C^op → cat`, `h^c(c′) = C(c′, c)`, acting by
/// precomposition: a 1-cell `α: c″ → c′` of `C` sends `β` to `β ∘ α`.
#[derive(Clone, Debug)]
pub struct Representable {
    pub category: Arc<Fin2Category>,
    pub target: ObjId,
}

impl Representable {
    pub fn new(category: Arc<Fin2Category>, target: ObjId) -> Representable {
        Representable { category, target }
    }

    pub fn value(&self, x: ObjId) -> Arc<FinCategory> {
        self.category.hom(x, self.target).category.clone()
    }

    /// `h^c(α) = − ∘ α : C(c′, c) → C(c″, c)` for `α: c″ → c′`.
    pub fn on_one_cell(&self, alpha: ArrId) -> CatFunctor {
        let c = &*self.category;
        let a = c.one_cell(alpha);
        let from = c.hom(a.tgt, self.target);
        let to = c.hom(a.src, self.target);
        let obj_map = from
            .one_cells
            .iter()
            .map(|&beta| c.local_one_cell(c.compose1(beta, alpha)))
            .collect();
        let id_alpha = c.id2(alpha);
        let arr_map = from
            .cells
            .iter()
            .map(|&theta| c.local_cell(c.hcomp(theta, id_alpha)))
            .collect();
        CatFunctor::new(from.category.clone(), to.category.clone(), obj_map, arr_map)
    }

    /// `h^c(γ)` for a 2-cell `γ: α ⇒ α′`: components `id_β ∘ γ`.
    pub fn on_two_cell(&self, gamma: CellId) -> NatTransf {
        let c = &*self.category;
        let (alpha, alpha2) = (c.cell_src(gamma), c.cell_tgt(gamma));
        let source = self.on_one_cell(alpha);
        let target = self.on_one_cell(alpha2);
        let from = c.hom(c.one_cell(alpha).tgt, self.target);
        let components = from
            .one_cells
            .iter()
            .map(|&beta| c.local_cell(c.whisker_left(beta, gamma)))
            .collect();
        NatTransf {
            source,
            target,
            components,
        }
    }

    /// The underlying Cat-valued functor on the 1-category underlying `C^op`.
    pub fn lax(&self) -> CatValuedLaxFunctor {
        let c = &*self.category;
        let base = Arc::new(c.underlying().opposite());
        let values = c.objects().map(|x| self.value(x)).collect();
        let actions = (0..c.num_one_cells()).map(|a| self.on_one_cell(a)).collect();
        CatValuedLaxFunctor::strict(base, values, actions)
    }
}

pub fn representable(c: &Arc<Fin2Category>, target: ObjId) -> CatValuedLaxFunctor {
    Representable::new(c.clone(), target).lax()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{fence, ordinal};
    use crate::twocat::samples;

    #[test]
    fn representables_validate() {
        for s in samples::suite() {
            let c = Arc::new(s.category);
            for x in c.objects() {
                let h = representable(&c, x);
                assert!(h.validate().is_empty(), "{} at {x}: {}", s.name, h.validate());
                let r = Representable::new(c.clone(), x);
                // h^c(c) contains id_c
                assert!(r.value(x).object_by_name(c.one_cell_name(c.id1(x))).is_some());
                for gamma in 0..c.num_cells() {
                    assert!(r.on_two_cell(gamma).validate().is_empty());
                }
            }
        }
    }

    #[test]
    fn interval_representable() {
        let c = Arc::new(Fin2Category::from_category(&ordinal(1)));
        let h = representable(&c, 1);
        for v in &h.values {
            assert_eq!(v.num_objects(), 1);
            assert!(v.is_discrete());
        }
    }

    #[test]
    fn fence_representable_at_c() {
        let c = Arc::new(Fin2Category::from_category(&fence()));
        let h = representable(&c, 0);
        let by_name = |n: &str| c.underlying().object_by_name(n).unwrap();
        assert_eq!(h.values[by_name("c''")].num_objects(), 0);
        assert_eq!(h.values[by_name("c'")].num_objects(), 1);
        assert_eq!(h.values[by_name("c")].num_objects(), 1);
    }

    #[test]
    fn incoherent_structure_is_reported() {
        // constant at a two-object discrete category, with one structural
        // component replaced by a non-identity arrow of the group ℤ/2
        let base = Arc::new(ordinal(3));
        let value = Arc::new(crate::catcore::cyclic_group(2));
        let mut f = CatValuedLaxFunctor::constant(base.clone(), value);
        assert!(f.validate().is_empty());
        let a = |i: usize, j: usize| base.hom(i, j).next().unwrap();
        let k = base.pair_index(a(1, 2), a(0, 1)).unwrap();
        f.structural[k][0] = 1;
        let r = f.validate();
        assert_eq!(r.len(), 1, "{r}");
        assert_eq!(r.violations[0].axiom, Axiom::LaxCoherence);
    }
}
