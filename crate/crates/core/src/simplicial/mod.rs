//! Truncated simplicial and bisimplicial sets, the nerve, 2-nerve and
//! geometric nerve, integral homology and π₁ presentations.

mod bisimplicial;
mod homology;
mod nerves;
mod pi1;
pub mod smith;
mod sset;

pub use bisimplicial::{
    diagonal, two_nerve, Bisimplex, Bisimplicial, Column, TruncatedBisimplicialSet, TwoNerveCarrier,
};
pub use homology::{
    homology, homology_equal, homology_mod, ChainComplex, Coefficients, DegreeHomology, HomologyComparison,
    HomologySummary,
};
pub use nerves::{geometric_nerve, nerve, Chain, GeometricNerveCarrier, LaxSimplex, NerveCarrier};
pub use pi1::{
    abelianization, coset_enumeration, pi1, presentation, Abelianization, GroupOrder, Pi1Presentation, Pi1Report,
};
pub use sset::{normalize_word, Face, Simplicial, TruncatedSimplicialSet};

/// Number of connected components of a simplicial set (from its 1-skeleton).
pub fn components(x: &TruncatedSimplicialSet) -> usize {
    let n = x.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mut count = n;
    if x.bound >= 1 {
        for e in 0..x.count(1) {
            let a = find(&mut parent, x.face(1, e, 0).simplex);
            let b = find(&mut parent, x.face(1, e, 1).simplex);
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::catcore::{cyclic_group, fence, ordinal, FinCategory};
    use crate::twocat::{samples, Fin2Category};

    fn torsion(h: &HomologySummary, k: usize) -> Vec<u64> {
        h.degrees[k].torsion.iter().map(|t| t.try_into().unwrap()).collect()
    }

    fn is_point(h: &HomologySummary) -> bool {
        h.degrees
            .iter()
            .all(|d| d.torsion.is_empty() && d.betti == usize::from(d.degree == 0))
    }

    #[test]
    fn nerve_counts() {
        assert_eq!(nerve(&ordinal(0), 3).counts(), vec![1, 0, 0, 0]);
        assert_eq!(nerve(&cyclic_group(2), 3).counts(), vec![1, 1, 1, 1]);
        assert_eq!(nerve(&fence(), 2).counts(), vec![3, 2, 0]);
        assert_eq!(nerve(&ordinal(2), 3).counts(), vec![3, 3, 1, 0]);
    }

    #[test]
    fn z2_homology() {
        let h = homology(&nerve(&cyclic_group(2), 4), 3).unwrap();
        let betti: Vec<usize> = h.degrees.iter().map(|d| d.betti).collect();
        assert_eq!(betti, vec![1, 0, 0, 0]);
        assert_eq!(torsion(&h, 1), vec![2]);
        assert!(torsion(&h, 2).is_empty());
        assert_eq!(torsion(&h, 3), vec![2]);
        assert_eq!(h.reliable_bound, 3);
        let h2 = homology_mod(&nerve(&cyclic_group(2), 4), 3, 2).unwrap();
        assert!(h2.degrees.iter().all(|d| d.betti == 1));
    }

    #[test]
    fn contractible_examples() {
        assert!(is_point(&homology(&nerve(&ordinal(2), 3), 2).unwrap()));
        assert!(is_point(&homology(&nerve(&fence(), 3), 2).unwrap()));
    }

    #[test]
    fn degree_bound_is_enforced() {
        assert!(matches!(
            homology(&nerve(&ordinal(1), 2), 2),
            Err(crate::Error::DegreeBound { .. })
        ));
    }

    #[test]
    fn opposite_has_same_homology() {
        for c in [ordinal(2), fence(), cyclic_group(3)] {
            let cmp = homology_equal(&nerve(&c, 4), &nerve(&c.opposite(), 4), 3).unwrap();
            assert!(cmp.equal);
        }
        let pt = nerve(&ordinal(0), 2);
        let z2 = nerve(&cyclic_group(2), 2);
        assert_eq!(homology_equal(&pt, &z2, 1).unwrap().first_difference, Some(1));
    }

    #[test]
    fn identities_and_boundaries() {
        for s in samples::suite() {
            let c = &s.category;
            for x in [geometric_nerve(c, 3), diagonal(&two_nerve(c, 3))] {
                assert_eq!(x.check_identities(), None, "{}", s.name);
                assert_eq!(ChainComplex::normalized(&x).check_square_zero(), None, "{}", s.name);
            }
            assert_eq!(two_nerve(c, 2).check_identities(), None, "{}", s.name);
        }
        let x = nerve(&cyclic_group(3), 4);
        assert_eq!(x.check_identities(), None);
    }

    #[test]
    fn geometric_nerve_of_category_is_nerve() {
        for c in [ordinal(2), fence(), cyclic_group(2)] {
            let g = geometric_nerve(&Fin2Category::from_category(&c), 3);
            let n = nerve(&c, 3);
            assert_eq!(g.counts(), n.counts());
            assert!(homology_equal(&g, &n, 2).unwrap().equal);
        }
    }

    #[test]
    fn bar_construction_counts() {
        // every simplex of the geometric nerve of a discrete group, degenerate included
        let c = samples::monoidal_z2().to_two_category().unwrap();
        let carrier = GeometricNerveCarrier::new(&c, 3);
        let counts: Vec<usize> = (0..=3).map(|n| carrier.all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 8]);
    }

    #[test]
    fn geometric_two_simplices_are_triangles() {
        let c = samples::lax_triangle();
        let carrier = GeometricNerveCarrier::new(&c, 2);
        for x in carrier.all(2) {
            // α_{012}: f_{02} ⇒ f_{12} ∘ f_{01}
            let a = x.cells[0];
            assert_eq!(c.cell_src(a), x.one_cells[1]);
            assert_eq!(c.cell_tgt(a), c.compose1(x.one_cells[2], x.one_cells[0]));
        }
    }

    #[test]
    fn two_nerve_shapes() {
        let c = samples::monoidal_z2().to_two_category().unwrap();
        let b = two_nerve(&c, 3);
        for q in 0..=3 {
            assert_eq!(b.count(0, q), 1 << q);
        }
        for s in samples::suite() {
            let b = two_nerve(&s.category, 2);
            for p in 0..=2 {
                assert_eq!(b.count(p, 0), s.category.num_objects());
            }
        }
    }

    #[test]
    fn diagonal_of_category_two_nerve_is_nerve() {
        for c in [ordinal(2), fence(), cyclic_group(2)] {
            let d = diagonal(&two_nerve(&Fin2Category::from_category(&c), 3));
            let n = nerve(&c, 3);
            assert_eq!(d.counts(), n.counts());
            assert!(homology_equal(&d, &n, 2).unwrap().equal);
        }
    }

    /// The nerve of a category placed in the horizontal direction, constant vertically.
    struct Constant<'a>(NerveCarrier<'a>);

    impl Bisimplicial for Constant<'_> {
        type Simplex = Chain;

        fn all(&self, _p: usize, q: usize) -> Vec<Chain> {
            let c = self.0 .0;
            let mut out: Vec<Chain> = c
                .objects()
                .map(|x| Chain {
                    start: x,
                    arrows: vec![],
                })
                .collect();
            for _ in 0..q {
                out = out
                    .into_iter()
                    .flat_map(|ch| {
                        let end = *ch.objects(c).last().unwrap();
                        c.outgoing(end)
                            .iter()
                            .map(|&f| {
                                let mut next = ch.clone();
                                next.arrows.push(f);
                                next
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            out
        }
        fn hface(&self, x: &Chain, _p: usize, q: usize, i: usize) -> Chain {
            self.0.face(x, q, i)
        }
        fn vface(&self, x: &Chain, _p: usize, _q: usize, _i: usize) -> Chain {
            x.clone()
        }
        fn hdegeneracy(&self, x: &Chain, _p: usize, q: usize, j: usize) -> Chain {
            self.0.degeneracy(x, q, j)
        }
        fn vdegeneracy(&self, x: &Chain, _p: usize, _q: usize, _j: usize) -> Chain {
            x.clone()
        }
        fn label(&self, x: &Chain, _p: usize, q: usize) -> String {
            self.0.label(x, q)
        }
    }

    #[test]
    fn diagonal_of_constant_direction() {
        let c: FinCategory = fence();
        let b = TruncatedBisimplicialSet::build(&Constant(NerveCarrier(&c)), 3);
        assert_eq!(b.check_identities(), None);
        let d = diagonal(&b);
        assert_eq!(d.counts(), nerve(&c, 3).counts());
    }

    #[test]
    fn fundamental_groups() {
        let r = pi1(&nerve(&ordinal(2), 3), 0, 1000).unwrap();
        assert_eq!(r.order, GroupOrder::Finite(1));
        let z2 = samples::monoidal_z2().to_two_category().unwrap();
        let r = pi1(&geometric_nerve(&z2, 3), 0, 1000).unwrap();
        assert_eq!(r.order, GroupOrder::Finite(2));
        let r = pi1(&nerve(&cyclic_group(3), 3), 0, 1000).unwrap();
        assert_eq!(r.order, GroupOrder::Finite(3));
        assert_eq!(r.abelianization.torsion, vec![BigUint::from(3u32)]);
        // a loop of arrows with no 2-simplex filling it
        let mut b = crate::catcore::CategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        b.add_arrow("f", x, y);
        b.add_arrow("g", x, y);
        let circle = b.build();
        let r = pi1(&nerve(&circle, 3), 0, 1000).unwrap();
        assert_eq!(r.order, GroupOrder::Infinite);
        let disconnected = crate::catcore::discrete(["a", "b"]);
        assert!(pi1(&nerve(&disconnected, 2), 0, 10).is_err());
    }

    #[test]
    fn abelianization_matches_first_homology() {
        for s in samples::suite() {
            let x = geometric_nerve(&s.category, 3);
            if components(&x) != 1 {
                continue;
            }
            let ab = pi1(&x, 0, 1000).unwrap().abelianization;
            let h = homology(&x, 1).unwrap();
            assert_eq!(ab.free_rank, h.degrees[1].betti, "{}", s.name);
            assert_eq!(ab.torsion, h.degrees[1].torsion, "{}", s.name);
        }
    }

    #[test]
    fn face_list_export() {
        let text = nerve(&ordinal(1), 2).to_face_list();
        assert_eq!(text, "0 0 0\n0 1 1\n1 0 0->1 : 1 0\n");
        let x = nerve(&cyclic_group(2), 2).to_face_list();
        assert!(x.contains("2 0 g^1|g^1 : 0 s0(0) 0"));
    }

    #[test]
    fn two_nerve_and_geometric_nerve_agree() {
        for s in samples::suite() {
            let c = &s.category;
            let g = geometric_nerve(c, 3);
            let cmp = homology_equal(&diagonal(&two_nerve(c, 3)), &g, 2).unwrap();
            assert!(cmp.equal, "{}: {} vs {}", s.name, cmp.left, cmp.right);
            for other in [c.op2(), c.prime()] {
                assert!(
                    homology_equal(&g, &geometric_nerve(&other, 3), 2).unwrap().equal,
                    "{}",
                    s.name
                );
            }
        }
    }
}
