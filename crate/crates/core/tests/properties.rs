//! Randomized invariants.

use std::sync::Arc;

use proptest::prelude::*;

use loopcat::catcore::json::{parse_category, CategoryFile};
use loopcat::catcore::{cyclic_group, CategoryBuilder, FinCategory, OrdinalMap};
use loopcat::simplicial::{homology, homology_equal, nerve, ChainComplex};
use loopcat::subdivision::{subdivide, SubdivisionMode};
use loopcat::tilde::triangle;
use loopcat::twocat::json::{parse_two_category, TwoCategoryFile};
use loopcat::twocat::Fin2Category;

fn ordinal_map(max: usize) -> impl Strategy<Value = OrdinalMap> {
    (0..=max, 0..=max).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..=m, n + 1).prop_map(move |mut v| {
            v.sort_unstable();
            OrdinalMap::new(m, v).unwrap()
        })
    })
}

/// `f: [n] → [m]` together with `g: [m] → [k]`.
fn composable(max: usize) -> impl Strategy<Value = (OrdinalMap, OrdinalMap)> {
    ordinal_map(max).prop_flat_map(move |f| {
        let m = f.cod();
        (0..=max)
            .prop_flat_map(move |k| {
                prop::collection::vec(0..=k, m + 1).prop_map(move |mut v| {
                    v.sort_unstable();
                    OrdinalMap::new(k, v).unwrap()
                })
            })
            .prop_map(move |g| (f.clone(), g))
    })
}

/// A loop-free category on objects 0 < 1 < 2 with random hom sizes and a
/// random composition `hom(1,2) × hom(0,1) → hom(0,2)`.
fn three_object_category() -> impl Strategy<Value = FinCategory> {
    (0..=3usize, 1..=3usize, 0..=3usize).prop_flat_map(|(h01, h02, h12)| {
        prop::collection::vec(0..h02, h01 * h12).prop_map(move |table| {
            let mut b = CategoryBuilder::new();
            let o: Vec<_> = (0..3).map(|i| b.add_object(i.to_string())).collect();
            let f: Vec<_> = (0..h01).map(|k| b.add_arrow(format!("f{k}"), o[0], o[1])).collect();
            let h: Vec<_> = (0..h02).map(|k| b.add_arrow(format!("h{k}"), o[0], o[2])).collect();
            let g: Vec<_> = (0..h12).map(|k| b.add_arrow(format!("g{k}"), o[1], o[2])).collect();
            for (i, &gi) in g.iter().enumerate() {
                for (j, &fj) in f.iter().enumerate() {
                    b.set_composite(gi, fj, h[table[i * h01 + j]]);
                }
            }
            b.build()
        })
    })
}

proptest! {
    #[test]
    fn epi_mono_factorization(f in ordinal_map(6)) {
        let (epi, mono) = f.epi_mono();
        prop_assert!(epi.is_surjective());
        prop_assert!(mono.is_injective());
        prop_assert_eq!(mono.compose(&epi), f);
    }

    #[test]
    fn composition_is_associative(((f, g), h) in composable(4).prop_flat_map(|(f, g)| {
        let k = g.cod();
        (Just((f, g)), prop::collection::vec(0..=4usize, k + 1).prop_map(|mut v| {
            v.sort_unstable();
            OrdinalMap::new(4, v).unwrap()
        }))
    })) {
        prop_assert_eq!(h.compose(&g).compose(&f), h.compose(&g.compose(&f)));
    }

    #[test]
    fn triangle_is_associative(a in ordinal_map(5), b in ordinal_map(5), c in ordinal_map(5)) {
        prop_assert_eq!(triangle(&triangle(&a, &b), &c), triangle(&a, &triangle(&b, &c)));
    }

    #[test]
    fn triangle_interchange((a, a2) in composable(5), (b, b2) in composable(5)) {
        prop_assume!((1..=b.dom()).all(|i| b.apply(i) > 0));
        prop_assert_eq!(
            triangle(&a2, &b2).compose(&triangle(&a, &b)),
            triangle(&a2.compose(&a), &b2.compose(&b))
        );
    }

    #[test]
    fn random_categories_are_valid(c in three_object_category()) {
        prop_assert!(c.validate().is_empty());
        prop_assert!(c.is_loop_free());
    }

    #[test]
    fn nerve_is_simplicial(c in three_object_category()) {
        let x = nerve(&c, 3);
        prop_assert_eq!(x.check_identities(), None);
        prop_assert_eq!(ChainComplex::normalized(&x).check_square_zero(), None);
    }

    #[test]
    fn opposite_has_the_same_homology(c in three_object_category()) {
        let cmp = homology_equal(&nerve(&c, 3), &nerve(&c.opposite(), 3), 2).unwrap();
        prop_assert!(cmp.equal);
    }

    #[test]
    fn subdivision_has_the_same_homology(c in three_object_category()) {
        let c = Arc::new(c);
        let sd = subdivide(&c, SubdivisionMode::Exact).unwrap();
        prop_assert!(sd.eps().validate().is_empty());
        let cmp = homology_equal(&nerve(&sd.category, 4), &nerve(&c, 4), 3).unwrap();
        prop_assert!(cmp.equal);
    }

    #[test]
    fn category_json_round_trip(c in three_object_category()) {
        let file = CategoryFile::from_category(&c);
        let text = serde_json::to_string(&file).unwrap();
        let (back, _) = parse_category(&text).unwrap();
        prop_assert_eq!(CategoryFile::from_category(&back), file);
        prop_assert_eq!(back.num_arrows(), c.num_arrows());
    }

    #[test]
    fn two_category_json_round_trip(c in three_object_category()) {
        // ids are renumbered on parsing, so the file is the fixpoint
        let file = TwoCategoryFile::from_two_category(&Fin2Category::from_category(&c));
        let back = parse_two_category(&serde_json::to_string(&file).unwrap()).unwrap();
        prop_assert!(back.validate().is_empty());
        prop_assert_eq!(TwoCategoryFile::from_two_category(&back), file);
    }

    #[test]
    fn cyclic_group_homology(n in 1..7usize) {
        // H_1 = H_3 = Z/n and H_2 = 0 for n > 1
        let h = homology(&nerve(&cyclic_group(n), 4), 3).unwrap();
        let torsion: Vec<Vec<String>> = h
            .degrees
            .iter()
            .map(|d| d.torsion.iter().map(|t| t.to_string()).collect())
            .collect();
        let tn = if n > 1 { vec![n.to_string()] } else { vec![] };
        prop_assert_eq!(torsion, vec![vec![], tn.clone(), vec![], tn]);
        prop_assert!(h.degrees.iter().skip(1).all(|d| d.betti == 0));
        let two = Fin2Category::from_category(&cyclic_group(n));
        prop_assert!(two.validate().is_empty());
    }
}
