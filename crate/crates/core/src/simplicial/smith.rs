//! Rank and invariant factors of integer matrices.
//!
//! Sparse elimination on unit pivots runs in checked `i64`; anything left
//! over (or any overflow) is finished by a dense Smith normal form over
//! `BigInt`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A matrix stored by columns: `columns[c]` lists `(row, value)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> SparseMatrix {
        SparseMatrix { rows, columns }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// `self · other`, as needed for the `∂∂ = 0` check.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, v) in col {
                    for &(r, w) in &self.columns[k] {
                        *acc.entry(r).or_insert(0) += v * w;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }
}

/// Rank and the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

pub fn smith(m: &SparseMatrix) -> SmithSummary {
    match unit_elimination(m) {
        Some((rank, rest)) => {
            let (r, torsion) = dense_smith(rest);
            SmithSummary {
                rank: rank + r,
                torsion,
            }
        }
        None => {
            let dense = to_dense(m);
            let (rank, torsion) = dense_smith(dense);
            SmithSummary { rank, torsion }
        }
    }
}

fn to_dense(m: &SparseMatrix) -> Vec<Vec<BigInt>> {
    let mut d = vec![vec![BigInt::zero(); m.cols()]; m.rows];
    for (c, col) in m.columns.iter().enumerate() {
        for &(r, v) in col {
            d[r][c] += v;
        }
    }
    d
}

/// Eliminates ±1 pivots, returning their number and the remaining
/// submatrix; `None` on `i64` overflow.
fn unit_elimination(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut cols: Vec<BTreeMap<usize, i64>> = m
        .columns
        .iter()
        .map(|c| {
            let mut map = BTreeMap::new();
            for &(r, v) in c {
                *map.entry(r).or_insert(0i64) += v;
            }
            map.retain(|_, v| *v != 0);
            map
        })
        .collect();
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            rows[r].insert(c);
        }
    }
    let mut rank = 0;
    loop {
        let mut progress = false;
        for c in 0..cols.len() {
            let pivot = cols[c]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(&r, _)| rows[r].len())
                .map(|(&r, &v)| (r, v));
            let Some((r, v)) = pivot else { continue };
            let others: Vec<usize> = rows[r].iter().copied().filter(|&o| o != c).collect();
            let pivot_col: Vec<(usize, i64)> = cols[c].iter().map(|(&k, &w)| (k, w)).collect();
            for o in others {
                let factor = cols[o][&r].checked_mul(v)?;
                for &(k, w) in &pivot_col {
                    let entry = cols[o].entry(k).or_insert(0);
                    *entry = entry.checked_sub(factor.checked_mul(w)?)?;
                    if *entry == 0 {
                        cols[o].remove(&k);
                        rows[k].remove(&o);
                    } else {
                        rows[k].insert(o);
                    }
                }
            }
            for &(k, _) in &pivot_col {
                rows[k].remove(&c);
            }
            cols[c].clear();
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut rest = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (j, &c) in live_cols.iter().enumerate() {
        for (&r, &v) in &cols[c] {
            rest[row_pos[&r]][j] = BigInt::from(v);
        }
    }
    Some((rank, rest))
}

/// Diagonalizes `a` and returns (rank, invariant factors > 1).
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> (usize, Vec<BigUint>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag: Vec<BigInt> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = a[t][t].clone();
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for i in t..rows {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if !a[i][t].is_zero() && best.is_none_or(|(x, y)| a[i][t].abs() < a[x][y].abs()) {
                    best = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && best.is_none_or(|(x, y)| a[t][j].abs() < a[x][y].abs()) {
                    best = Some((t, j));
                }
            }
            match best {
                None => break,
                Some((i, j)) if j == t => a.swap(t, i),
                Some((_, j)) => {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    let rank = diag.len();
    (rank, invariant_factors(diag))
}

/// Turns a list of diagonal entries into invariant factors `d_1 | d_2 | ⋯`,
/// dropping units.
pub fn invariant_factors(diag: Vec<BigInt>) -> Vec<BigUint> {
    let mut d: Vec<BigInt> = diag.into_iter().filter(|x| !x.abs().is_one()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter()
        .filter(|x| !x.is_one())
        .map(|x| x.magnitude().clone())
        .collect()
}

/// Rank over the prime field `F_p`.
pub fn rank_mod(m: &SparseMatrix, p: u64) -> usize {
    let mut cols: Vec<BTreeMap<usize, u64>> = m
        .columns
        .iter()
        .map(|c| {
            let mut map = BTreeMap::new();
            for &(r, v) in c {
                let e = map.entry(r).or_insert(0u64);
                *e = (*e + v.rem_euclid(p as i64) as u64) % p;
            }
            map.retain(|_, v| *v != 0);
            map
        })
        .collect();
    // column echelon form keyed by leading (smallest) row
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    let mut rank = 0;
    for col in cols.iter_mut() {
        let mut col = std::mem::take(col);
        while let Some((&lead, &v)) = col.iter().next() {
            match pivots.get(&lead) {
                Some(pcol) => {
                    let pv = pcol[&lead];
                    let factor = v * inverse_mod(pv, p) % p;
                    for (&k, &w) in pcol {
                        let e = col.entry(k).or_insert(0);
                        *e = (*e + p - factor * w % p) % p;
                        if *e == 0 {
                            col.remove(&k);
                        }
                    }
                }
                None => {
                    pivots.insert(lead, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut result, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}
