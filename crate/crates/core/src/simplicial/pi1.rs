use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::smith::{smith, SparseMatrix};
use super::sset::TruncatedSimplicialSet;
use crate::{Error, Result};

/// Letters are signed: generator `k` is `k + 1`, its inverse `−(k + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Presentation {
    pub basepoint: usize,
    /// Names of the nondegenerate 1-simplices off the spanning tree.
    pub generators: Vec<String>,
    /// One relator per nondegenerate 2-simplex, freely reduced.
    pub relators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
    /// Coset enumeration ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Report {
    pub presentation: Pi1Presentation,
    pub order: GroupOrder,
    pub abelianization: Abelianization,
}

fn free_reduce(word: Vec<i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Edge-path presentation at `basepoint` from a BFS spanning tree.
pub fn presentation(x: &TruncatedSimplicialSet, basepoint: usize) -> Result<Pi1Presentation> {
    if x.bound < 2 {
        return Err(Error::DegreeBound {
            requested: 1,
            reliable: x.bound.saturating_sub(1),
            truncation: x.bound,
        });
    }
    let nv = x.count(0);
    if basepoint >= nv {
        return Err(Error::Schema(format!("basepoint {basepoint} is not a vertex")));
    }
    let ends = |e: usize| (x.face(1, e, 1).simplex, x.face(1, e, 0).simplex);
    let mut adjacent = vec![Vec::new(); nv];
    for e in 0..x.count(1) {
        let (s, t) = ends(e);
        adjacent[s].push((e, t));
        adjacent[t].push((e, s));
    }
    let mut seen = vec![false; nv];
    let mut in_tree = vec![false; x.count(1)];
    let mut queue = VecDeque::from([basepoint]);
    seen[basepoint] = true;
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adjacent[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Disconnected {
            detail: format!(
                "vertex {} is not linked to the basepoint {}",
                x.labels[0][v], x.labels[0][basepoint]
            ),
        });
    }
    let mut generator_of = vec![None; x.count(1)];
    let mut generators = Vec::new();
    for e in 0..x.count(1) {
        if !in_tree[e] {
            generator_of[e] = Some(generators.len() as i64 + 1);
            generators.push(x.labels[1][e].clone());
        }
    }
    let edge_word = |f: &super::sset::Face| -> Vec<i64> {
        if f.is_degenerate() {
            vec![]
        } else {
            generator_of[f.simplex].into_iter().collect()
        }
    };
    let relators = (0..x.count(2))
        .map(|s| {
            let d0 = edge_word(x.face(2, s, 0));
            let d1 = edge_word(x.face(2, s, 1));
            let d2 = edge_word(x.face(2, s, 2));
            // e01 · e12 · e02⁻¹
            let mut w = d2;
            w.extend(d0);
            w.extend(d1.iter().rev().map(|l| -l));
            free_reduce(w)
        })
        .collect();
    Ok(Pi1Presentation {
        basepoint,
        generators,
        relators,
    })
}

pub fn abelianization(p: &Pi1Presentation) -> Abelianization {
    let g = p.generators.len();
    let columns = p
        .relators
        .iter()
        .map(|r| {
            let mut sums = vec![0i64; g];
            for &l in r {
                sums[l.unsigned_abs() as usize - 1] += l.signum();
            }
            sums.into_iter().enumerate().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    let m = SparseMatrix::new(g, columns);
    let s = smith(&m);
    Abelianization {
        free_rank: g - s.rank,
        torsion: s.torsion,
    }
}

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup, with at
/// most `budget` cosets ever defined.
pub fn coset_enumeration(p: &Pi1Presentation, budget: usize) -> Option<u64> {
    let ngens = p.generators.len();
    if ngens == 0 {
        return Some(1);
    }
    let col = |l: i64| -> usize {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    };
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&l| col(l)).collect())
        .collect();
    let mut table = CosetTable::new(2 * ngens);
    let mut c = 0;
    while c < table.rows.len() {
        if table.alive(c) {
            for r in &relators {
                if !table.alive(c) {
                    break;
                }
                table.scan_and_fill(c, r, budget)?;
            }
            for x in 0..2 * ngens {
                if !table.alive(c) {
                    break;
                }
                if table.rows[c][x] == NONE {
                    table.define(c, x, budget)?;
                }
            }
        }
        c += 1;
    }
    Some((0..table.rows.len()).filter(|&k| table.alive(k)).count() as u64)
}

const NONE: usize = usize::MAX;

struct CosetTable {
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    width: usize,
}

impl CosetTable {
    fn new(width: usize) -> CosetTable {
        CosetTable {
            rows: vec![vec![NONE; width]],
            parent: vec![0],
            width,
        }
    }

    fn inv(x: usize) -> usize {
        x ^ 1
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize, budget: usize) -> Option<usize> {
        if self.rows.len() >= budget {
            return None;
        }
        let d = self.rows.len();
        self.rows.push(vec![NONE; self.width]);
        self.parent.push(d);
        self.rows[c][x] = d;
        self.rows[d][Self::inv(x)] = c;
        Some(d)
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize], budget: usize) -> Option<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.rows[f][w[i]] != NONE {
                f = self.rows[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Some(());
            }
            while j >= i as isize && self.rows[b][Self::inv(w[j as usize])] != NONE {
                b = self.rows[b][Self::inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Some(());
            }
            if j == i as isize {
                self.rows[f][w[i]] = b;
                self.rows[b][Self::inv(w[i])] = f;
                return Some(());
            }
            self.define(f, w[i], budget)?;
        }
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, lose) = (a.min(b), a.max(b));
        self.parent[lose] = keep;
        queue.push_back(lose);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(g) = queue.pop_front() {
            for x in 0..self.width {
                let d = self.rows[g][x];
                if d == NONE {
                    continue;
                }
                if self.rows[d][Self::inv(x)] == g {
                    self.rows[d][Self::inv(x)] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.rows[mu][x] != NONE {
                    let t = self.rows[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.rows[nu][Self::inv(x)] != NONE {
                    let t = self.rows[nu][Self::inv(x)];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][Self::inv(x)] = mu;
                }
            }
        }
    }
}

/// π₁ at `basepoint`: presentation, exact abelianization, and an order
/// attempt (infinite when the abelianization has a free part).
pub fn pi1(x: &TruncatedSimplicialSet, basepoint: usize, coset_budget: usize) -> Result<Pi1Report> {
    let presentation = presentation(x, basepoint)?;
    let abelianization = abelianization(&presentation);
    let order = if abelianization.free_rank > 0 {
        GroupOrder::Infinite
    } else {
        match coset_enumeration(&presentation, coset_budget) {
            Some(n) => GroupOrder::Finite(n),
            None => GroupOrder::Unknown,
        }
    };
    Ok(Pi1Report {
        presentation,
        order,
        abelianization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: usize, relators: Vec<Vec<i64>>) -> Pi1Presentation {
        Pi1Presentation {
            basepoint: 0,
            generators: (0..gens).map(|g| format!("x{g}")).collect(),
            relators,
        }
    }

    #[test]
    fn small_groups() {
        assert_eq!(coset_enumeration(&pres(1, vec![vec![1, 1]]), 100), Some(2));
        assert_eq!(coset_enumeration(&pres(1, vec![vec![1; 5]]), 100), Some(5));
        // S3 = ⟨a, b | a², b³, (ab)²⟩
        let s3 = pres(2, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]]);
        assert_eq!(coset_enumeration(&s3, 1000), Some(6));
        // Q8 = ⟨a, b | a⁴, a²b⁻², abab⁻¹⟩
        let q8 = pres(2, vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![1, 2, 1, -2]]);
        assert_eq!(coset_enumeration(&q8, 1000), Some(8));
        // trivial group given by a non-obvious presentation
        let t = pres(2, vec![vec![1, 2, -1, -2, -2], vec![2, 1, -2, -1, -1]]);
        assert_eq!(coset_enumeration(&t, 10_000), Some(1));
    }

    #[test]
    fn budget_exhaustion_is_not_an_error() {
        let z = pres(1, vec![]);
        assert_eq!(coset_enumeration(&z, 50), None);
    }

    #[test]
    fn abelianization_of_s3() {
        let s3 = pres(2, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]]);
        let a = abelianization(&s3);
        assert_eq!(a.free_rank, 0);
        assert_eq!(a.torsion, vec![BigUint::from(2u32)]);
    }
}
