use std::sync::Arc;

use super::twocategory::Fin2Category;
use crate::catcore::{ArrId, Arrow, CategoryBuilder, FinCategory, ObjId};
use crate::report::{Axiom, ValidationReport};
use crate::{Error, Result};

/// A strict monoidal structure on a finite category, given by full tables
/// `tensor_obj[x][y] = x ⊗ y` and `tensor_arr[b][a] = b ⊗ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalCategory {
    pub category: Arc<FinCategory>,
    pub tensor_obj: Vec<Vec<ObjId>>,
    pub tensor_arr: Vec<Vec<ArrId>>,
    pub unit: ObjId,
}

impl MonoidalCategory {
    /// A monoid (given by its multiplication table) as a discrete monoidal category.
    pub fn discrete_monoid<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        table: Vec<Vec<usize>>,
        unit: usize,
    ) -> MonoidalCategory {
        let mut b = CategoryBuilder::new();
        for name in names {
            b.add_object(name);
        }
        let category = b.build();
        // in a discrete category the identity of object k is arrow k
        let tensor_arr = table.clone();
        MonoidalCategory {
            category: Arc::new(category),
            tensor_obj: table,
            tensor_arr,
            unit,
        }
    }

    /// Reads the monoidal structure off a one-object 2-category; `x ⊗ y` is
    /// the horizontal composite `x ∘ y`.
    pub fn from_one_object(c: &Fin2Category) -> Result<MonoidalCategory> {
        if c.num_objects() != 1 {
            return Err(Error::Schema(format!(
                "expected a one-object 2-category, found {} objects",
                c.num_objects()
            )));
        }
        let category = c.vertical().clone();
        let n = category.num_objects();
        let m = category.num_arrows();
        let tensor_obj = (0..n).map(|x| (0..n).map(|y| c.compose1(x, y)).collect()).collect();
        let tensor_arr = (0..m).map(|b| (0..m).map(|a| c.hcomp(b, a)).collect()).collect();
        Ok(MonoidalCategory {
            category,
            tensor_obj,
            tensor_arr,
            unit: c.id1(0),
        })
    }

    fn obj(&self, x: ObjId, y: ObjId) -> ObjId {
        self.tensor_obj[x][y]
    }

    fn arr(&self, b: ArrId, a: ArrId) -> ArrId {
        self.tensor_arr[b][a]
    }

    /// Functoriality of ⊗, strict associativity and strict unitality.
    pub fn validate(&self) -> ValidationReport {
        let m = &*self.category;
        let mut report = m.validate().scoped("underlying category");
        if !report.is_empty() {
            return report;
        }
        let (n0, n1) = (m.num_objects(), m.num_arrows());
        let square = |t: &Vec<Vec<usize>>, n: usize, bound: usize| {
            t.len() == n && t.iter().all(|row| row.len() == n && row.iter().all(|&v| v < bound))
        };
        if !square(&self.tensor_obj, n0, n0) || !square(&self.tensor_arr, n1, n1) || self.unit >= n0 {
            report.push(Axiom::Monoidal, vec![], "tensor tables have the wrong shape");
            return report;
        }
        let on = |x: ObjId| m.object_name(x).to_string();
        let an = |a: ArrId| m.arrow_name(a).to_string();
        for b in 0..n1 {
            for a in 0..n1 {
                let t = self.arr(b, a);
                if m.src(t) != self.obj(m.src(b), m.src(a)) || m.tgt(t) != self.obj(m.tgt(b), m.tgt(a)) {
                    report.push(
                        Axiom::Monoidal,
                        vec![an(b), an(a)],
                        "tensor of arrows has wrong source or target",
                    );
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        for y in 0..n0 {
            for x in 0..n0 {
                if self.arr(m.identity(y), m.identity(x)) != m.identity(self.obj(y, x)) {
                    report.push(
                        Axiom::Monoidal,
                        vec![on(y), on(x)],
                        "tensor does not preserve identities",
                    );
                }
            }
        }
        for (b2, b) in m.composable_pairs() {
            for (a2, a) in m.composable_pairs() {
                let lhs = self.arr(m.compose(b2, b), m.compose(a2, a));
                let rhs = m.compose(self.arr(b2, a2), self.arr(b, a));
                if lhs != rhs {
                    report.push(
                        Axiom::Monoidal,
                        vec![an(b2), an(b), an(a2), an(a)],
                        "tensor does not preserve composition",
                    );
                }
            }
        }
        for x in 0..n0 {
            for y in 0..n0 {
                for z in 0..n0 {
                    if self.obj(self.obj(x, y), z) != self.obj(x, self.obj(y, z)) {
                        report.push(Axiom::Monoidal, vec![on(x), on(y), on(z)], "(x⊗y)⊗z ≠ x⊗(y⊗z)");
                    }
                }
            }
        }
        for a in 0..n1 {
            for b in 0..n1 {
                for c in 0..n1 {
                    if self.arr(self.arr(a, b), c) != self.arr(a, self.arr(b, c)) {
                        report.push(Axiom::Monoidal, vec![an(a), an(b), an(c)], "(a⊗b)⊗c ≠ a⊗(b⊗c)");
                    }
                }
            }
        }
        let iu = m.identity(self.unit);
        for x in 0..n0 {
            if self.obj(self.unit, x) != x || self.obj(x, self.unit) != x {
                report.push(Axiom::Monoidal, vec![on(x)], "unit law fails on objects");
            }
        }
        for a in 0..n1 {
            if self.arr(iu, a) != a || self.arr(a, iu) != a {
                report.push(Axiom::Monoidal, vec![an(a)], "unit law fails on arrows");
            }
        }
        report
    }

    /// The one-object 2-category with 1-cells the objects of `M`, 2-cells
    /// the arrows, and both horizontal compositions given by ⊗
    /// (`g ∘ f := g ⊗ f`).
    pub fn to_two_category(&self) -> Result<Fin2Category> {
        self.validate().into_result()?;
        let m = &*self.category;
        let arrows = m
            .object_names()
            .iter()
            .enumerate()
            .map(|(x, name)| Arrow {
                name: name.clone(),
                src: 0,
                tgt: 0,
                is_identity: x == self.unit,
            })
            .collect();
        let underlying = FinCategory::assemble(vec!["*".to_string()], arrows, |g, f| Some(self.obj(g, f)));
        Fin2Category::from_parts(underlying, m.clone(), |b, a| Some(self.arr(b, a)))
    }
}

pub fn from_monoidal(m: &MonoidalCategory) -> Result<Fin2Category> {
    m.to_two_category()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> MonoidalCategory {
        MonoidalCategory::discrete_monoid(["1", "x"], vec![vec![0, 1], vec![1, 0]], 0)
    }

    fn idempotent() -> MonoidalCategory {
        MonoidalCategory::discrete_monoid(["1", "a"], vec![vec![0, 1], vec![1, 1]], 0)
    }

    #[test]
    fn discrete_z2() {
        let c = from_monoidal(&z2()).unwrap();
        assert!(c.validate().is_empty());
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_one_cells(), 2);
        assert!(c.is_locally_discrete());
        assert_eq!(c.compose1(1, 1), 0);
    }

    #[test]
    fn idempotent_monoid() {
        let m = idempotent();
        let c = from_monoidal(&m).unwrap();
        assert!(c.validate().is_empty());
        assert_eq!(c.compose1(1, 1), 1);
        // the 1-cell composition table reproduces ⊗
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(c.compose1(x, y), m.tensor_obj[x][y]);
            }
        }
        assert_eq!(MonoidalCategory::from_one_object(&c).unwrap().tensor_obj, m.tensor_obj);
    }

    #[test]
    fn non_associative_tensor_names_the_triple() {
        // a magma on {1, a, b}: a⊗a = b, a⊗b = 1, b⊗a = a, b⊗b = b
        let m =
            MonoidalCategory::discrete_monoid(["1", "a", "b"], vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 2]], 0);
        let err = from_monoidal(&m).unwrap_err();
        let Error::Invalid(report) = err else {
            panic!("expected a validation error")
        };
        assert!(report.has(Axiom::Monoidal));
        let first = &report.violations[0];
        assert_eq!(first.witness.len(), 3);
        let idx: Vec<usize> = first
            .witness
            .iter()
            .map(|w| ["1", "a", "b"].iter().position(|n| n == w).unwrap())
            .collect();
        let t = &m.tensor_obj;
        assert_ne!(t[t[idx[0]][idx[1]]][idx[2]], t[idx[0]][t[idx[1]][idx[2]]]);
    }
}
