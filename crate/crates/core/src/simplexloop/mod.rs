//! The category of simplices `Δ//C` of a 2-category with its lax `sup` and
//! `inf`, the path functor and total category `E`, condition Q, loop-space
//! consistency checks and the delooping criterion for monoidal categories.

mod delta;
mod loops;
mod path;

pub use delta::{delta2, inf_lax, reversal, sup_homology_check, sup_lax, Delta2};
pub use loops::{
    classify, condition_q, deloop_check, loop_consistency, ArrowVerdict, Certificate, Comparison, ConditionQReport,
    DeloopReport, LoopReport, LoopVerdict, Overall, Status, TranslationVerdict, Verdict, Witness,
};
pub use path::{path_total, PathTotal};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catcore::{
        cyclic_group, fence, find_isomorphism, ordinal, walking_isomorphism, FinCategory, DEFAULT_BUDGET,
    };
    use crate::simplicial::GroupOrder;
    use crate::subdivision::delta_over;
    use crate::twocat::{from_monoidal, samples, validate_lax, Fin2Category, MonoidalCategory};

    fn two(c: FinCategory) -> Arc<Fin2Category> {
        Arc::new(Fin2Category::from_category(&c))
    }

    #[test]
    fn delta2_of_a_category_is_the_category_of_simplices() {
        for c in [ordinal(1), fence(), cyclic_group(2)] {
            let d = delta2(&two(c.clone()), 2);
            assert!(d.category.validate().is_empty());
            let classic = delta_over(&Arc::new(c), 2);
            assert!(find_isomorphism(&d.category, &classic.category, DEFAULT_BUDGET)
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn delta2_enumeration() {
        let z2 = Arc::new(from_monoidal(&samples::monoidal_z2()).unwrap());
        let d = delta2(&z2, 1);
        assert_eq!(d.category.num_objects(), 3);
        for s in samples::suite() {
            let c = Arc::new(s.category);
            let d = delta2(&c, 2);
            assert!(d.category.validate().is_empty(), "{}", s.name);
            // every admissible cell tuple appears exactly once
            let mut count = 0;
            for x in &d.objects {
                for y in &d.objects {
                    for a in crate::catcore::OrdinalMap::all(x.dim(), y.dim())
                        .filter(|a| (0..=x.dim()).all(|i| y.objects[a.apply(i)] == x.objects[i]))
                    {
                        count += (1..=x.dim())
                            .map(|i| {
                                (0..c.num_cells())
                                    .filter(|&k| {
                                        c.cell_src(k) == y.between(a.apply(i - 1), a.apply(i))
                                            && c.cell_tgt(k) == x.arrows[i - 1]
                                    })
                                    .count()
                            })
                            .product::<usize>();
                    }
                }
            }
            assert_eq!(d.category.num_arrows(), count, "{}", s.name);
        }
    }

    #[test]
    fn sup_is_lax() {
        for s in samples::suite() {
            let d = delta2(&Arc::new(s.category), 2);
            let sup = sup_lax(&d);
            assert!(validate_lax(&sup).is_empty(), "{}: {}", s.name, validate_lax(&sup));
            for x in d.category.objects() {
                let id = d.category.identity(x);
                for &f in d.category.incoming(x) {
                    assert!(sup.target.is_identity_cell(sup.structural_cell(id, f)));
                }
            }
        }
        let d = delta2(&two(fence()), 2);
        let sup = sup_lax(&d);
        assert!(sup.has_identity_structure());
        let classic = delta_over(&Arc::new(fence()), 2);
        assert_eq!(sup.obj_map, d.objects.iter().map(|x| x.last()).collect::<Vec<_>>());
        assert_eq!(classic.sup().obj_map.len(), d.category.num_objects());
    }

    /// `x″(b(n′) → n″) ∘ β_{n′} ∘ ⋯ ∘ β_{a(n)+1}`, folded from the other end.
    fn hand_expansion(d: &Delta2, second: usize, first: usize) -> usize {
        let c = &*d.base;
        let (a, _) = &d.arrows[first];
        let (b, beta) = &d.arrows[second];
        let z = &d.objects[d.category.tgt(second)];
        let n1 = d.objects[d.category.tgt(first)].dim();
        let tail = z.between(b.apply(n1), z.dim());
        let mut cell = c.id2(tail);
        for j in (a.apply(a.dom()) + 1..=n1).rev() {
            cell = c.hcomp(cell, beta[j - 1]);
        }
        if a.apply(a.dom()) == n1 {
            cell = c.whisker_right(cell, c.id1(z.objects[b.apply(n1)]));
        }
        cell
    }

    #[test]
    fn structural_cells_match_hand_expansion() {
        let z2 = Arc::new(from_monoidal(&samples::monoidal_z2()).unwrap());
        for c in [
            z2,
            Arc::new(samples::two_cell_z2()),
            Arc::new(samples::whiskered_two_cell()),
        ] {
            let d = delta2(&c, 2);
            let sup = sup_lax(&d);
            let mut nontrivial = 0;
            for (second, first) in d.category.composable_pairs() {
                let cell = sup.structural_cell(second, first);
                assert_eq!(cell, hand_expansion(&d, second, first));
                nontrivial += usize::from(!c.is_identity_cell(cell));
            }
            if c.is_locally_discrete() {
                assert_eq!(nontrivial, 0);
            } else {
                assert!(nontrivial > 0);
            }
        }
    }

    #[test]
    fn inf_is_sup_of_the_opposite() {
        for s in samples::suite() {
            let c = Arc::new(s.category);
            let d = delta2(&c, 2);
            let dual = delta2(&Arc::new(c.op2()), 2);
            let r = reversal(&d, &dual);
            assert!(r.validate().is_empty() && r.is_bijective(), "{}", s.name);
            let back = reversal(&dual, &delta2(&Arc::new(dual.base.op2()), 2));
            assert_eq!(r.then(&back).obj_map, (0..d.category.num_objects()).collect::<Vec<_>>());
            assert_eq!(r.then(&back).arr_map, (0..d.category.num_arrows()).collect::<Vec<_>>());
            let inf = inf_lax(&d);
            assert!(validate_lax(&inf).is_empty(), "{}", s.name);
            // first-object formula: inf(a, α) = x′(0 → a(0)), read in C^op
            for k in 0..d.category.num_arrows() {
                let (a, _) = &d.arrows[k];
                let y = &d.objects[d.category.tgt(k)];
                assert_eq!(inf.one_map[k], y.between(0, a.apply(0)));
            }
            assert_eq!(inf.obj_map, d.objects.iter().map(|x| x.first()).collect::<Vec<_>>());
            for (second, first) in d.category.composable_pairs() {
                let (a, _) = &d.arrows[first];
                let (b, beta) = &d.arrows[second];
                let z = &d.objects[d.category.tgt(second)];
                let head = z.between(0, b.apply(0));
                let mut h = c.id2(c.id1(z.objects[b.apply(0)]));
                for j in 1..=a.apply(0) {
                    h = c.hcomp(beta[j - 1], h);
                }
                assert_eq!(
                    inf.structural_cell(second, first),
                    c.whisker_right(h, head),
                    "{}",
                    s.name
                );
            }
        }
    }

    #[test]
    fn path_total_plumbing() {
        let pt = path_total(&delta2(&two(ordinal(0)), 2), 0).unwrap();
        assert!(pt.path_functor.validate().is_empty());
        assert!(find_isomorphism(&pt.total, &pt.delta.category, DEFAULT_BUDGET)
            .unwrap()
            .is_some());

        let z2 = two(cyclic_group(2));
        let pt = path_total(&delta2(&z2, 2), 0).unwrap();
        let vertex = pt.delta.object(0, &[]).unwrap();
        let fib = pt.fiber_identification(vertex).unwrap();
        assert_eq!(fib.source.num_objects(), 2);
        assert_eq!(fib.source.non_identity_arrows().count(), 0);

        for c in [
            z2,
            two(fence()),
            Arc::new(samples::lax_triangle()),
            Arc::new(samples::two_cell_z2()),
        ] {
            for b in c.objects() {
                let pt = path_total(&delta2(&c, 1), b).unwrap();
                assert!(pt.path_functor.validate().is_empty());
                assert!(pt.total.validate().is_empty());
                for x in pt.delta.category.objects() {
                    assert!(pt.fiber_identification(x).is_some());
                }
                assert!(pt.base_change_mismatches().is_empty());
                let (hf, iso) = pt.homotopy_fiber_identification().unwrap();
                assert!(hf.category.validate().is_empty());
                assert!(iso.is_some());
                let i = pt.embedding(&delta2(&c, 2)).unwrap();
                assert!(i.validate().is_empty());
                let mut objs = i.obj_map.clone();
                objs.sort_unstable();
                objs.dedup();
                let mut arrs = i.arr_map.clone();
                arrs.sort_unstable();
                arrs.dedup();
                assert_eq!(objs.len(), i.obj_map.len());
                assert_eq!(arrs.len(), i.arr_map.len());
            }
        }
        let disconnected = two(crate::catcore::discrete(["a", "b"]));
        assert!(matches!(
            path_total(&delta2(&disconnected, 1), 0),
            Err(crate::Error::Disconnected { .. })
        ));
    }

    #[test]
    fn condition_q_examples() {
        let f = two(fence());
        let q = condition_q(&f, 0, 2).unwrap();
        assert_eq!(q.overall, Overall::Fails);
        let fail = q.first_failure().unwrap();
        assert_eq!(fail.arrow, "f");
        assert_eq!(
            fail.verdict,
            Verdict::Fails {
                witness: Witness::ComponentCount { source: 0, target: 1 }
            }
        );
        assert!(q.to_string().ends_with("FAILS at arrow f (π₀ 0 vs 1)"));
        for c in [cyclic_group(2), cyclic_group(3), walking_isomorphism(), ordinal(0)] {
            let c = two(c);
            for b in c.objects() {
                assert_eq!(condition_q(&c, b, 2).unwrap().overall, Overall::Certified);
            }
        }
    }

    #[test]
    fn loop_space_examples() {
        let r = loop_consistency(&two(cyclic_group(2)), 0, 4, 1000).unwrap();
        assert_eq!(r.end_components, 2);
        assert_eq!(r.pi1.order, GroupOrder::Finite(2));
        assert_eq!(r.verdict, LoopVerdict::Consistent);
        assert!(r.to_string().starts_with("π₀(End)=2, π₁ order=2, CONSISTENT"));

        let r = loop_consistency(&two(fence()), 0, 3, 1000).unwrap();
        assert_eq!(r.condition_q.overall, Overall::Fails);
        assert_eq!((r.end_components, r.pi1.order.clone()), (1, GroupOrder::Finite(1)));
        assert_eq!(r.verdict, LoopVerdict::Consistent);

        let r = loop_consistency(&two(ordinal(0)), 0, 2, 10).unwrap();
        assert_eq!(r.verdict, LoopVerdict::Consistent);
    }

    #[test]
    fn delooping() {
        let r = deloop_check(&samples::monoidal_z2(), 2, 1000).unwrap();
        assert!(r.pi0_is_group);
        assert!(r
            .right_translations
            .iter()
            .chain(&r.left_translations)
            .all(|t| matches!(t.verdict, Verdict::Certified { .. })));
        assert_eq!(r.delooping.unwrap().verdict, LoopVerdict::Consistent);

        let r = deloop_check(&samples::idempotent_monoid(), 2, 1000).unwrap();
        assert!(!r.pi0_is_group);
        assert!(r.right_translations.iter().any(|t| t.verdict.fails()));

        // every object isomorphic to the unit: ℤ/2 acting on one object
        let g = Arc::new(cyclic_group(2));
        let m = MonoidalCategory {
            category: g,
            tensor_obj: vec![vec![0]],
            tensor_arr: vec![vec![0, 1], vec![1, 0]],
            unit: 0,
        };
        let r = deloop_check(&m, 2, 1000).unwrap();
        assert!(r.pi0_is_group);
        assert_eq!(r.pi0_table, vec![vec![0]]);
    }

    #[test]
    fn sup_preserves_homology() {
        for c in [two(ordinal(1)), two(fence()), Arc::new(samples::lax_triangle())] {
            let cmp = sup_homology_check(&delta2(&c, 2), 1).unwrap();
            assert!(cmp.equal, "{} vs {}", cmp.left, cmp.right);
        }
    }
}
