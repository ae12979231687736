//! Exhaustive enumeration of normal lax functors and strict 2-functors.

use std::sync::Arc;

use super::lax::{NormalLaxFunctor, TwoFunctor};
use super::twocategory::Fin2Category;
use crate::catcore::search::backtrack;
use crate::catcore::FinCategory;
use crate::{Error, Result};

fn max_hom_size(c: &FinCategory) -> u128 {
    c.objects()
        .flat_map(|x| c.objects().map(move |y| (x, y)))
        .map(|(x, y)| c.hom(x, y).count())
        .max()
        .unwrap_or(0) as u128
}

fn estimate(factors: &[(u128, usize)]) -> u128 {
    factors.iter().fold(1u128, |acc, &(base, exp)| {
        (0..exp).fold(acc, |a, _| a.saturating_mul(base))
    })
}

fn check_budget(what: &str, est: u128, budget: u128) -> Result<()> {
    if est > budget {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            estimate: est,
            budget,
        });
    }
    Ok(())
}

/// Every normal lax functor from the 1-category `c` (with identity 2-cells)
/// to `d`, lexicographic in (object map, 1-cell map, structural cells).
pub fn enumerate_lax_functors(
    c: &Arc<FinCategory>,
    d: &Arc<Fin2Category>,
    budget: u128,
) -> Result<Vec<NormalLaxFunctor>> {
    let source = Arc::new(Fin2Category::from_category(c));
    let n0 = c.num_objects();
    let ones: Vec<usize> = c.non_identity_arrows().collect();
    let pairs: Vec<(usize, usize)> = c
        .composable_pairs()
        .filter(|&(g, f)| !c.is_identity(g) && !c.is_identity(f))
        .collect();
    let est = estimate(&[
        (d.num_objects() as u128, n0),
        (max_hom_size(d.underlying()), ones.len()),
        (max_hom_size(d.vertical()), pairs.len()),
    ]);
    check_budget("lax functor enumeration", est, budget)?;

    let n1 = ones.len();
    let total = n0 + n1 + pairs.len();
    let mut one_pos = vec![usize::MAX; c.num_arrows()];
    for (k, &f) in ones.iter().enumerate() {
        one_pos[f] = n0 + k;
    }
    let mut pair_pos = vec![usize::MAX; c.num_pairs()];
    for (k, &(g, f)) in pairs.iter().enumerate() {
        pair_pos[c.pair_index(g, f).unwrap()] = n0 + n1 + k;
    }
    // coherence constraints: chains f, g, h of non-identity arrows, decided at the
    // largest position among the non-identity pairs they mention
    let mut coherence: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); total];
    for &(g, f) in &pairs {
        for &h in c.outgoing(c.tgt(g)) {
            if c.is_identity(h) {
                continue;
            }
            let (hg, gf) = (c.compose(h, g), c.compose(g, f));
            let last = [(h, g), (hg, f), (g, f), (h, gf)]
                .iter()
                .filter_map(|&(y, x)| c.pair_index(y, x).map(|k| pair_pos[k]))
                .filter(|&p| p != usize::MAX)
                .max()
                .expect("(g, f) is a non-identity pair");
            coherence[last].push((f, g, h));
        }
    }

    let obj_of = |p: &[usize], x: usize| p[x];
    let one_of = |p: &[usize], f: usize| -> usize {
        if c.is_identity(f) {
            d.id1(p[c.src(f)])
        } else {
            p[one_pos[f]]
        }
    };
    let cell_of = |p: &[usize], g: usize, f: usize| -> usize {
        let k = c.pair_index(g, f).unwrap();
        if pair_pos[k] == usize::MAX {
            d.id2(one_of(p, c.compose(g, f)))
        } else {
            p[pair_pos[k]]
        }
    };

    let mut out = Vec::new();
    backtrack(
        total,
        &mut |k, p| {
            if k < n0 {
                d.objects().collect()
            } else if k < n0 + n1 {
                let f = ones[k - n0];
                d.underlying().hom(obj_of(p, c.src(f)), obj_of(p, c.tgt(f))).collect()
            } else {
                let (g, f) = pairs[k - n0 - n1];
                let from = one_of(p, c.compose(g, f));
                let to = d.compose1(one_of(p, g), one_of(p, f));
                d.cells_between(from, to).collect()
            }
        },
        &mut |k, p| {
            coherence[k].iter().all(|&(f, g, h)| {
                let (hg, gf) = (c.compose(h, g), c.compose(g, f));
                let lhs = d.vcomp(d.whisker_right(cell_of(p, h, g), one_of(p, f)), cell_of(p, hg, f));
                let rhs = d.vcomp(d.whisker_left(one_of(p, h), cell_of(p, g, f)), cell_of(p, h, gf));
                lhs == rhs
            })
        },
        &mut |p| {
            let one_map: Vec<usize> = (0..c.num_arrows()).map(|f| one_of(p, f)).collect();
            out.push(NormalLaxFunctor {
                source: source.clone(),
                target: d.clone(),
                obj_map: p[..n0].to_vec(),
                two_map: one_map.iter().map(|&f| d.id2(f)).collect(),
                structural: c.composable_pairs().map(|(g, f)| cell_of(p, g, f)).collect(),
                one_map,
            });
            false
        },
        "lax functor enumeration",
        u128::MAX,
    )?;
    Ok(out)
}

/// Every strict 2-functor `c → d`, lexicographic in (object map, 1-cell map, 2-cell map).
pub fn enumerate_two_functors(c: &Arc<Fin2Category>, d: &Arc<Fin2Category>, budget: u128) -> Result<Vec<TwoFunctor>> {
    let cu = c.underlying();
    let cv = c.vertical();
    let n0 = c.num_objects();
    let ones: Vec<usize> = cu.non_identity_arrows().collect();
    let cells: Vec<usize> = cv.non_identity_arrows().collect();
    let est = estimate(&[
        (d.num_objects() as u128, n0),
        (max_hom_size(d.underlying()), ones.len()),
        (max_hom_size(d.vertical()), cells.len()),
    ]);
    check_budget("2-functor enumeration", est, budget)?;

    let n1 = ones.len();
    let total = n0 + n1 + cells.len();
    let mut one_pos = vec![usize::MAX; cu.num_arrows()];
    for (k, &f) in ones.iter().enumerate() {
        one_pos[f] = n0 + k;
    }
    let mut cell_pos = vec![usize::MAX; cv.num_arrows()];
    for (k, &a) in cells.iter().enumerate() {
        cell_pos[a] = n0 + n1 + k;
    }
    enum Check {
        One(usize, usize, usize),
        Vertical(usize, usize, usize),
        Horizontal(usize, usize, usize),
    }
    let mut checks: Vec<Vec<Check>> = (0..total).map(|_| Vec::new()).collect();
    let last_of = |positions: &[usize]| positions.iter().copied().filter(|&p| p != usize::MAX).max();
    for (g, f) in cu.composable_pairs() {
        if let Some(k) = last_of(&[one_pos[g], one_pos[f], one_pos[cu.compose(g, f)]]) {
            checks[k].push(Check::One(g, f, cu.compose(g, f)));
        }
    }
    for (b, a) in cv.composable_pairs() {
        let x = cv.compose(b, a);
        if let Some(k) = last_of(&[cell_pos[b], cell_pos[a], cell_pos[x]]) {
            checks[k].push(Check::Vertical(b, a, x));
        }
    }
    for (b, a) in c.horizontal_pairs() {
        let x = c.hcomp(b, a);
        if let Some(k) = last_of(&[cell_pos[b], cell_pos[a], cell_pos[x]]) {
            checks[k].push(Check::Horizontal(b, a, x));
        }
    }

    let one_of = |p: &[usize], f: usize| -> usize {
        if cu.is_identity(f) {
            d.id1(p[cu.src(f)])
        } else {
            p[one_pos[f]]
        }
    };
    let cell_of = |p: &[usize], a: usize| -> usize {
        if cv.is_identity(a) {
            d.id2(one_of(p, cv.src(a)))
        } else {
            p[cell_pos[a]]
        }
    };

    let mut out = Vec::new();
    backtrack(
        total,
        &mut |k, p| {
            if k < n0 {
                d.objects().collect()
            } else if k < n0 + n1 {
                let f = ones[k - n0];
                d.underlying().hom(p[cu.src(f)], p[cu.tgt(f)]).collect()
            } else {
                let a = cells[k - n0 - n1];
                d.cells_between(one_of(p, cv.src(a)), one_of(p, cv.tgt(a))).collect()
            }
        },
        &mut |k, p| {
            checks[k].iter().all(|chk| match *chk {
                Check::One(g, f, gf) => d.compose1(one_of(p, g), one_of(p, f)) == one_of(p, gf),
                Check::Vertical(b, a, x) => d.vcomp(cell_of(p, b), cell_of(p, a)) == cell_of(p, x),
                Check::Horizontal(b, a, x) => d.hcomp(cell_of(p, b), cell_of(p, a)) == cell_of(p, x),
            })
        },
        &mut |p| {
            out.push(TwoFunctor {
                source: c.clone(),
                target: d.clone(),
                obj_map: p[..n0].to_vec(),
                one_map: (0..cu.num_arrows()).map(|f| one_of(p, f)).collect(),
                two_map: (0..cv.num_arrows()).map(|a| cell_of(p, a)).collect(),
            });
            false
        },
        "2-functor enumeration",
        u128::MAX,
    )?;
    Ok(out)
}
