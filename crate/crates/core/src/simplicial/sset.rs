use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

/// A simplicial object given by explicit representatives of every simplex.
///
/// Implementors must make `face` and `degeneracy` satisfy the simplicial
/// identities; `TruncatedSimplicialSet::check_identities` verifies this on
/// the stored data.
pub trait Simplicial {
    type Simplex: Clone + Eq + Hash;

    fn face(&self, x: &Self::Simplex, dim: usize, i: usize) -> Self::Simplex;

    fn degeneracy(&self, x: &Self::Simplex, dim: usize, j: usize) -> Self::Simplex;

    /// The nondegenerate simplices of dimension `n`, in a deterministic order.
    fn nondegenerate(&self, n: usize) -> Vec<Self::Simplex>;

    fn label(&self, x: &Self::Simplex, dim: usize) -> String;

    /// Eilenberg–Zilber decomposition `x = s_{j1}⋯s_{jk} y` with `j1 > ⋯ > jk`
    /// and `y` nondegenerate. Returns `y` and the word `[j1, …, jk]`.
    fn decompose(&self, x: &Self::Simplex, dim: usize) -> (Self::Simplex, Vec<usize>) {
        let mut word = Vec::new();
        let mut y = x.clone();
        let mut d = dim;
        'peel: while d > 0 {
            for j in (0..d).rev() {
                let f = self.face(&y, d, j);
                if self.degeneracy(&f, d - 1, j) == y {
                    word.push(j);
                    y = f;
                    d -= 1;
                    continue 'peel;
                }
            }
            break;
        }
        (y, word)
    }

    fn is_degenerate(&self, x: &Self::Simplex, dim: usize) -> bool {
        (0..dim).any(|j| self.degeneracy(&self.face(x, dim, j), dim - 1, j) == *x)
    }
}

/// A possibly degenerate simplex `s_{j1}⋯s_{jk} y` in normal form
/// (`j1 > ⋯ > jk`) over a stored nondegenerate simplex `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub simplex: usize,
    pub degeneracies: Vec<usize>,
}

impl Face {
    pub fn nondegenerate(simplex: usize) -> Face {
        Face {
            simplex,
            degeneracies: Vec::new(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracies.is_empty()
    }
}

/// Puts `s_j ∘ s_{w}` into normal form, `w` already normal.
fn push_degeneracy(j: usize, word: &[usize]) -> Vec<usize> {
    match word.split_first() {
        None => vec![j],
        Some((&w1, rest)) if j > w1 => {
            let mut out = vec![j, w1];
            out.extend_from_slice(rest);
            out
        }
        Some((&w1, rest)) => {
            // s_j s_{w1} = s_{w1+1} s_j for j ≤ w1
            let mut out = vec![w1 + 1];
            out.extend(push_degeneracy(j, rest));
            out
        }
    }
}

/// Normal form of an arbitrary degeneracy word (outermost first).
pub fn normalize_word(word: &[usize]) -> Vec<usize> {
    word.iter().rev().fold(Vec::new(), |acc, &j| push_degeneracy(j, &acc))
}

/// Nondegenerate simplices up to a bound `N` with their faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSimplicialSet {
    pub bound: usize,
    /// `labels[n][k]` names the k-th nondegenerate n-simplex.
    pub labels: Vec<Vec<String>>,
    /// `faces[n][k][i] = d_i` of the k-th nondegenerate n-simplex (`n ≥ 1`).
    pub faces: Vec<Vec<Vec<Face>>>,
}

impl TruncatedSimplicialSet {
    pub fn build<S: Simplicial>(carrier: &S, bound: usize) -> TruncatedSimplicialSet {
        let mut labels = Vec::with_capacity(bound + 1);
        let mut faces = Vec::with_capacity(bound + 1);
        let mut prev_index: Vec<HashMap<S::Simplex, usize>> = Vec::new();
        for n in 0..=bound {
            let simplices = carrier.nondegenerate(n);
            labels.push(simplices.iter().map(|x| carrier.label(x, n)).collect());
            let mut level_faces = Vec::new();
            if n > 0 {
                for x in &simplices {
                    let row = (0..=n)
                        .map(|i| {
                            let f = carrier.face(x, n, i);
                            let (y, word) = carrier.decompose(&f, n - 1);
                            let dim = n - 1 - word.len();
                            let simplex = *prev_index[dim]
                                .get(&y)
                                .expect("face decomposes to a listed nondegenerate simplex");
                            Face {
                                simplex,
                                degeneracies: word,
                            }
                        })
                        .collect();
                    level_faces.push(row);
                }
            }
            faces.push(level_faces);
            prev_index.push(simplices.into_iter().enumerate().map(|(k, x)| (x, k)).collect());
        }
        TruncatedSimplicialSet { bound, labels, faces }
    }

    pub fn count(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// `d_i` of the nondegenerate simplex `k` of dimension `n`.
    pub fn face(&self, n: usize, k: usize, i: usize) -> &Face {
        &self.faces[n][k][i]
    }

    /// `d_i` of a possibly degenerate simplex of dimension `dim`.
    pub fn face_of(&self, x: &Face, dim: usize, i: usize) -> Face {
        let mut prefix = Vec::new();
        let mut i = i;
        for (pos, &j) in x.degeneracies.iter().enumerate() {
            if i < j {
                prefix.push(j - 1);
            } else if i == j || i == j + 1 {
                prefix.extend_from_slice(&x.degeneracies[pos + 1..]);
                return Face {
                    simplex: x.simplex,
                    degeneracies: normalize_word(&prefix),
                };
            } else {
                prefix.push(j);
                i -= 1;
            }
        }
        let base_dim = dim - x.degeneracies.len();
        let f = &self.faces[base_dim][x.simplex][i];
        prefix.extend_from_slice(&f.degeneracies);
        Face {
            simplex: f.simplex,
            degeneracies: normalize_word(&prefix),
        }
    }

    /// Checks `d_i d_j = d_{j−1} d_i` for `i < j` on every stored simplex of
    /// dimension ≥ 2; returns the first failure as `(n, k, i, j)`.
    pub fn check_identities(&self) -> Option<(usize, usize, usize, usize)> {
        for n in 2..=self.bound {
            for k in 0..self.count(n) {
                let x = Face::nondegenerate(k);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face_of(&self.face_of(&x, n, j), n - 1, i);
                        let rhs = self.face_of(&self.face_of(&x, n, i), n - 1, j - 1);
                        if lhs != rhs {
                            return Some((n, k, i, j));
                        }
                    }
                }
            }
        }
        None
    }

    /// Plain-text face list: one simplex per line, `dim id label : faces`,
    /// a face written as `id` or `s2s0(id)` for a degenerate one.
    pub fn to_face_list(&self) -> String {
        let mut out = String::new();
        for (n, level) in self.labels.iter().enumerate() {
            for (k, label) in level.iter().enumerate() {
                write!(out, "{n} {k} {label}").unwrap();
                if n > 0 {
                    out.push_str(" :");
                    for f in &self.faces[n][k] {
                        out.push(' ');
                        if f.degeneracies.is_empty() {
                            write!(out, "{}", f.simplex).unwrap();
                        } else {
                            for j in &f.degeneracies {
                                write!(out, "s{j}").unwrap();
                            }
                            write!(out, "({})", f.simplex).unwrap();
                        }
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_normal_form() {
        assert_eq!(normalize_word(&[0, 0]), vec![1, 0]);
        assert_eq!(normalize_word(&[2, 0]), vec![2, 0]);
        assert_eq!(normalize_word(&[0, 1]), vec![2, 0]);
        assert_eq!(normalize_word(&[1, 1, 1]), vec![3, 2, 1]);
    }
}
