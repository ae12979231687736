//! A fixed suite of small 2-categories: 1-categories, monoidal categories and
//! hand-built examples with non-identity 2-cells.

use super::json::parse_two_category;
use super::monoidal::MonoidalCategory;
use super::twocategory::Fin2Category;
use crate::catcore::{cyclic_group, fence, ordinal, ObjId};

#[derive(Clone, Debug)]
pub struct Sample {
    pub name: &'static str,
    pub category: Fin2Category,
    /// A natural basepoint: the object other objects map to where possible.
    pub basepoint: ObjId,
}

fn corpus(text: &str) -> Fin2Category {
    parse_two_category(text).expect("bundled corpus file parses")
}

pub fn monoidal_z2() -> MonoidalCategory {
    MonoidalCategory::discrete_monoid(["1", "x"], vec![vec![0, 1], vec![1, 0]], 0)
}

pub fn idempotent_monoid() -> MonoidalCategory {
    MonoidalCategory::discrete_monoid(["1", "a"], vec![vec![0, 1], vec![1, 1]], 0)
}

/// Objects `1, a` with `a ⊗ a = a` and one arrow `t: 1 → a`.
pub fn monoid_arrow() -> Fin2Category {
    corpus(include_str!("../../corpus/monoid-arrow.json"))
}

/// Two parallel 1-cells `f, g: 0 → 1` and one 2-cell `f ⇒ g`.
pub fn walking_two_cell() -> Fin2Category {
    corpus(include_str!("../../corpus/walking-2cell.json"))
}

pub fn invertible_two_cell() -> Fin2Category {
    corpus(include_str!("../../corpus/invertible-2cell.json"))
}

/// `f: 0 → 1`, `g: 1 → 2`, and a 2-cell from a second arrow `h: 0 → 2` to `gf`.
pub fn lax_triangle() -> Fin2Category {
    corpus(include_str!("../../corpus/lax-triangle.json"))
}

/// A 2-cell `β: g ⇒ k` on `1 → 2` and its whiskering with `f: 0 → 1`.
pub fn whiskered_two_cell() -> Fin2Category {
    corpus(include_str!("../../corpus/whiskered-2cell.json"))
}

/// One object, one 1-cell, and 2-cells forming the group ℤ/2.
pub fn two_cell_z2() -> Fin2Category {
    MonoidalCategory {
        category: std::sync::Arc::new(cyclic_group(2)),
        tensor_obj: vec![vec![0]],
        tensor_arr: vec![vec![0, 1], vec![1, 0]],
        unit: 0,
    }
    .to_two_category()
    .unwrap()
}

pub fn suite() -> Vec<Sample> {
    let s = |name, category, basepoint| Sample {
        name,
        category,
        basepoint,
    };
    vec![
        s("ord0", Fin2Category::from_category(&ordinal(0)), 0),
        s("ord1", Fin2Category::from_category(&ordinal(1)), 1),
        s("ord2", Fin2Category::from_category(&ordinal(2)), 2),
        s("fence", Fin2Category::from_category(&fence()), 0),
        s("z2-groupoid", Fin2Category::from_category(&cyclic_group(2)), 0),
        s("monoidal-z2", monoidal_z2().to_two_category().unwrap(), 0),
        s("idempotent-monoid", idempotent_monoid().to_two_category().unwrap(), 0),
        s("monoid-arrow", monoid_arrow(), 0),
        s("walking-2cell", walking_two_cell(), 1),
        s("invertible-2cell", invertible_two_cell(), 1),
        s("lax-triangle", lax_triangle(), 2),
        s("whiskered-2cell", whiskered_two_cell(), 2),
        s("two-cell-z2", two_cell_z2(), 0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twocat::json::parse_two_category;

    #[test]
    fn suite_members_validate() {
        let suite = suite();
        assert!(suite.len() >= 10);
        for s in &suite {
            assert!(
                s.category.validate().is_empty(),
                "{}: {}",
                s.name,
                s.category.validate()
            );
        }
        assert!(suite.iter().filter(|s| !s.category.is_locally_discrete()).count() >= 4);
    }

    #[test]
    fn corpus_monoids_match_constructed_ones() {
        let z2 = parse_two_category(include_str!("../../corpus/monoidal-z2.json")).unwrap();
        assert!(z2.same_tables(&monoidal_z2().to_two_category().unwrap()));
        let idem = parse_two_category(include_str!("../../corpus/idempotent-monoid.json")).unwrap();
        assert!(idem.same_tables(&idempotent_monoid().to_two_category().unwrap()));
    }

    #[test]
    fn whiskering_table() {
        let w = whiskered_two_cell();
        let beta = w.vertical().arrow_by_name("beta").unwrap();
        let betaf = w.vertical().arrow_by_name("betaf").unwrap();
        let f = w.underlying().arrow_by_name("f").unwrap();
        assert_eq!(w.whisker_right(beta, f), betaf);
    }
}
