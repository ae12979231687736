//! The end-to-end acceptance suite. Each criterion runs under a time limit
//! and prints one PASS/FAIL line; the test fails if any criterion does.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{cli, cli_json, corpus, loop_free_family};
use loopcat::catcore::{fence, find_isomorphism, ordinal, CatFunctor, FinCategory, OrdinalMap, DEFAULT_BUDGET};
use loopcat::cli::Report;
use loopcat::fibers::{fiber, homotopy_fiber_2functor, homotopy_fiber_lax};
use loopcat::simplexloop::{delta2, path_total, sup_lax, Delta2};
use loopcat::simplicial::{
    diagonal, geometric_nerve, homology, homology_equal, nerve, two_nerve, GroupOrder, HomologySummary,
};
use loopcat::subdivision::{elementary_closure_equals_sim, sd2_is_poset, subdivide, SubdivisionMode};
use loopcat::tilde::{tilde, triangle, universal_property_check};
use loopcat::twocat::{from_monoidal, samples, validate_lax, Fin2Category, TwoFunctor};

struct Outcome {
    number: usize,
    name: &'static str,
    passed: bool,
    elapsed: Duration,
    note: String,
}

fn criterion(number: usize, name: &'static str, limit_secs: u64, check: impl FnOnce()) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(check));
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let note = match &result {
        Err(e) => e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()),
        Ok(()) if elapsed > limit => format!("over the {limit_secs} s limit"),
        Ok(()) => String::new(),
    };
    let passed = result.is_ok() && elapsed <= limit;
    println!(
        "criterion {number:>2} {}: {name} ({:.2} s){}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if note.is_empty() {
            String::new()
        } else {
            format!(" -- {note}")
        }
    );
    Outcome {
        number,
        name,
        passed,
        elapsed,
        note,
    }
}

/// `(betti, torsion)` per degree.
fn groups(h: &HomologySummary) -> Vec<(usize, Vec<u64>)> {
    h.degrees
        .iter()
        .map(|d| {
            let torsion = d.torsion.iter().map(|t| t.to_string().parse().unwrap()).collect();
            (d.betti, torsion)
        })
        .collect()
}

fn point(k_max: usize) -> Vec<(usize, Vec<u64>)> {
    (0..=k_max).map(|k| (usize::from(k == 0), vec![])).collect()
}

fn minimal_example() {
    let file = corpus("fence3.json");
    let (code, out) = cli(&["condq", &file, "--basepoint", "c"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim_end().lines().last(), Some("FAILS at arrow f (π₀ 0 vs 1)"));
    let Report::Condq(q) = cli_json(&["condq", &file, "--basepoint", "c"]) else {
        panic!("wrong report kind")
    };
    let fail = q.first_failure().expect("a failing arrow");
    assert_eq!(fail.arrow, "f");
    let Report::Homology(h) = cli_json(&["homology", &file, "--max-dim", "3", "--kmax", "2"]) else {
        panic!("wrong report kind")
    };
    assert_eq!(groups(&h.summary), point(2));
}

fn z2_groupoid() {
    let file = corpus("z2-groupoid.json");
    let Report::Homology(h) = cli_json(&["homology", &file, "--max-dim", "4"]) else {
        panic!("wrong report kind")
    };
    assert_eq!(h.summary.truncation, 4);
    assert_eq!(
        groups(&h.summary),
        vec![(1, vec![]), (0, vec![2]), (0, vec![]), (0, vec![2])]
    );
    let (code, out) = cli(&["loopcheck", &file, "--basepoint", "c", "--max-dim", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("π₀(End)=2, π₁ order=2, CONSISTENT"));
    let Report::Loopcheck(r) = cli_json(&["loopcheck", &file, "--basepoint", "c", "--max-dim", "4"]) else {
        panic!("wrong report kind")
    };
    assert_eq!(r.end_components, 2);
    assert_eq!(r.pi1.order, GroupOrder::Finite(2));
}

fn diagonal_vs_geometric() {
    for s in samples::suite() {
        let d = diagonal(&two_nerve(&s.category, 3));
        let g = geometric_nerve(&s.category, 3);
        let cmp = homology_equal(&d, &g, 2).unwrap();
        assert!(cmp.equal, "{}: {} vs {}", s.name, cmp.left, cmp.right);
    }
}

fn duals_agree() {
    for s in samples::suite() {
        let c = &s.category;
        let h = |x: &Fin2Category| groups(&homology(&geometric_nerve(x, 3), 2).unwrap());
        let base = h(c);
        assert_eq!(h(&c.op2()), base, "{}: op2", s.name);
        assert_eq!(h(&c.prime()), base, "{}: prime", s.name);
    }
}

fn closure_equals_sim(family: &[Arc<FinCategory>]) {
    for c in family {
        let check = elementary_closure_equals_sim(c, 3, u128::MAX).unwrap();
        assert!(check.agrees, "{:?}", check.counterexample);
    }
}

fn sd2_posets(family: &[Arc<FinCategory>]) {
    for c in family {
        assert!(sd2_is_poset(c).unwrap(), "{:?}", c.object_names());
    }
}

fn sd_homology(family: &[Arc<FinCategory>]) {
    for c in family {
        let sd = subdivide(c, SubdivisionMode::Exact).unwrap();
        let cmp = homology_equal(&nerve(&sd.category, 4), &nerve(c, 4), 3).unwrap();
        assert!(cmp.equal, "{} vs {}", cmp.left, cmp.right);
    }
}

fn universal_property() {
    let targets = [
        Fin2Category::from_category(&ordinal(1)),
        Fin2Category::from_category(&loopcat::catcore::cyclic_group(2)),
        samples::walking_two_cell(),
        samples::invertible_two_cell(),
    ];
    assert!(targets.iter().any(|d| !d.is_locally_discrete()));
    for c in [ordinal(1), ordinal(2), fence()] {
        let c = Arc::new(c);
        for d in &targets {
            let r = universal_property_check(&c, &Arc::new(d.clone()), DEFAULT_BUDGET).unwrap();
            assert!(r.bijection, "{:?}", r.failures);
        }
    }
}

/// Every monotone map between ordinals with at most `size` elements.
fn small_maps(size: usize) -> Vec<OrdinalMap> {
    (0..size)
        .flat_map(|n| (0..size).flat_map(move |m| OrdinalMap::all(n, m)))
        .collect()
}

fn triangle_properties() {
    let maps = small_maps(4);
    let id = OrdinalMap::identity;
    // a) id_p ◁ id_q = id_{p+q}
    for p in 0..4 {
        for q in 0..4 {
            assert_eq!(triangle(&id(p), &id(q)), id(p + q));
        }
    }
    // b) (a′ ◁ b′)(a ◁ b) = a′a ◁ b′b whenever b(i) > 0 for i > 0
    let index = |m: &OrdinalMap| {
        maps.iter()
            .position(|x| x == m)
            .expect("small maps are closed under composition")
    };
    let table: Vec<Vec<OrdinalMap>> = maps
        .iter()
        .map(|a| maps.iter().map(|b| triangle(a, b)).collect())
        .collect();
    let maps = &maps;
    let pairs: Vec<(usize, usize, usize)> = (0..maps.len())
        .flat_map(|a| {
            (0..maps.len())
                .filter(move |&a2| maps[a2].dom() == maps[a].cod())
                .map(move |a2| (a, a2))
        })
        .map(|(a, a2)| (a, a2, index(&maps[a2].compose(&maps[a]))))
        .collect();
    let right: Vec<&(usize, usize, usize)> = pairs
        .iter()
        .filter(|&&(b, _, _)| (1..=maps[b].dom()).all(|i| maps[b].apply(i) > 0))
        .collect();
    let mut checked = 0usize;
    for &&(b, b2, bb) in &right {
        for &(a, a2, aa) in &pairs {
            let (first, second, whole) = (&table[a][b], &table[a2][b2], &table[aa][bb]);
            let agrees = second.cod() == whole.cod()
                && (0..=first.dom()).all(|i| second.apply(first.apply(i)) == whole.apply(i));
            assert!(agrees, "a={} a′={} b={} b′={}", maps[a], maps[a2], maps[b], maps[b2]);
            checked += 1;
        }
    }
    assert!(checked > 1_000_000);
    // c) associativity
    for a in maps {
        for b in maps {
            let ab = triangle(a, b);
            for c in maps {
                assert_eq!(triangle(&ab, c), triangle(a, &triangle(b, c)));
            }
        }
    }
    // d) a ◁ id_0 = a, and id_0 ◁ a = a when a(0) = 0
    for a in maps {
        assert_eq!(&triangle(a, &id(0)), a);
        if a.apply(0) == 0 {
            assert_eq!(&triangle(&id(0), a), a);
        }
    }
}

/// `x″(b(n′) → n″) ∘ β_{n′} ∘ ⋯ ∘ β_{a(n)+1}`, built one factor at a time.
fn hand_expansion(d: &Delta2, second: usize, first: usize) -> usize {
    let c = &*d.base;
    let (a, _) = &d.arrows[first];
    let (b, beta) = &d.arrows[second];
    let z = &d.objects[d.category.tgt(second)];
    let n1 = d.objects[d.category.tgt(first)].dim();
    let mut cell = c.id2(z.between(b.apply(n1), z.dim()));
    for j in (a.apply(a.dom()) + 1..=n1).rev() {
        cell = c.hcomp(cell, beta[j - 1]);
    }
    if a.apply(a.dom()) == n1 {
        cell = c.whisker_right(cell, c.id1(z.objects[b.apply(n1)]));
    }
    cell
}

fn sup_is_lax() {
    for s in samples::suite() {
        let d = delta2(&Arc::new(s.category), 3);
        let report = validate_lax(&sup_lax(&d));
        assert!(report.is_empty(), "{}: {report}", s.name);
    }
    let z2 = Arc::new(from_monoidal(&samples::monoidal_z2()).unwrap());
    let d = delta2(&z2, 3);
    let sup = sup_lax(&d);
    for (second, first) in d.category.composable_pairs() {
        assert_eq!(sup.structural_cell(second, first), hand_expansion(&d, second, first));
    }
}

fn homotopy_fibers() {
    for s in samples::suite() {
        let c = Arc::new(s.category);
        let id = TwoFunctor::identity(c.clone());
        for x in c.objects() {
            let strict = homotopy_fiber_2functor(&id, x).unwrap();
            let lax = homotopy_fiber_lax(&id.to_lax(), x).unwrap();
            assert!(strict.category.validate().is_empty(), "{}", s.name);
            assert!(lax.category.same_tables(&strict.category), "{}", s.name);
        }
        let sup = sup_lax(&delta2(&c, 1));
        for x in c.objects() {
            let hf = homotopy_fiber_lax(&sup, x).unwrap();
            assert!(hf.category.validate().is_empty(), "{}: sup//{x}", s.name);
        }
    }
    for c in [ordinal(1), ordinal(2), fence()] {
        let t = tilde(&Arc::new(c)).unwrap();
        let pi = t.pi();
        let eta = t.eta();
        for x in t.base2.objects() {
            let strict = homotopy_fiber_2functor(&pi, x).unwrap();
            let lax = homotopy_fiber_lax(&pi.to_lax(), x).unwrap();
            assert!(lax.category.same_tables(&strict.category));
            assert!(homotopy_fiber_lax(&eta, x).unwrap().category.validate().is_empty());
        }
    }
}

fn path_fibration() {
    for s in samples::suite() {
        let c = Arc::new(s.category);
        let d = delta2(&c, 2);
        for b in c.objects() {
            let pt = path_total(&d, b).unwrap();
            for x in d.category.objects() {
                let fib = fiber(&pt.projection, x);
                let expected = Arc::new(c.hom(d.objects[x].last(), b).category.opposite());
                assert!(
                    find_isomorphism(&fib.category, &expected, DEFAULT_BUDGET)
                        .unwrap()
                        .is_some(),
                    "{}: fiber over {}",
                    s.name,
                    d.category.object_name(x)
                );
                assert!(pt.fiber_identification(x).is_some());
            }
            assert_eq!(pt.base_change_mismatches(), Vec::<usize>::new(), "{}", s.name);
            let actions: Vec<&CatFunctor> = pt.path_functor.actions.iter().collect();
            assert_eq!(actions.len(), d.category.num_arrows());
        }
    }
}

fn delooping() {
    let Report::Deloop(r) = cli_json(&["deloop", &corpus("monoidal-z2.json")]) else {
        panic!("wrong report kind")
    };
    assert!(r.pi0_is_group);
    let Report::Deloop(r) = cli_json(&["deloop", &corpus("idempotent-monoid.json")]) else {
        panic!("wrong report kind")
    };
    assert!(!r.pi0_is_group);
}

fn main() {
    let family = loop_free_family();
    println!("loop-free family: {} categories", family.len());
    let outcomes = vec![
        criterion(
            1,
            "minimal example: condition Q fails at f, nerve is a point",
            1,
            minimal_example,
        ),
        criterion(2, "Z/2 groupoid: homology and loop consistency", 5, z2_groupoid),
        criterion(
            3,
            "diagonal of the 2-nerve vs geometric nerve",
            30,
            diagonal_vs_geometric,
        ),
        criterion(4, "geometric nerve homology of C, op2(C), prime(C)", 30, duals_agree),
        criterion(5, "elementary closure equals sim on the loop-free family", 60, || {
            closure_equals_sim(&family)
        }),
        criterion(6, "sd² is a poset on the loop-free family", 60, || sd2_posets(&family)),
        criterion(7, "sd(C) and C have the same homology on the family", 60, || {
            sd_homology(&family)
        }),
        criterion(8, "universal property of the lax unit", 120, universal_property),
        criterion(
            9,
            "triangle operation properties (a)-(d), exhaustive",
            10,
            triangle_properties,
        ),
        criterion(
            10,
            "sup is a normal lax functor; structural cells by hand",
            30,
            sup_is_lax,
        ),
        criterion(
            11,
            "homotopy fibers are 2-categories; lax = strict",
            30,
            homotopy_fibers,
        ),
        criterion(12, "path fibration fibers and base change", 30, path_fibration),
        criterion(
            13,
            "delooping criterion d) on Z/2 and the idempotent monoid",
            1,
            delooping,
        ),
    ];
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| {
            format!(
                "{} ({}, {:.2} s): {}",
                o.number,
                o.name,
                o.elapsed.as_secs_f64(),
                o.note
            )
        })
        .collect();
    if !failed.is_empty() {
        eprintln!("failing criteria:\n{}", failed.join("\n"));
        std::process::exit(1);
    }
    println!("all {} criteria passed", outcomes.len());
}
