use std::fmt;

use serde::{Deserialize, Serialize};

use super::category::{Arrow, FinCategory};

/// A monotone map `[n] → [n′]`, stored as its value list `a(0), …, a(n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrdinalMap {
    cod: usize,
    values: Vec<usize>,
}

impl OrdinalMap {
    /// `values` lists `a(0..=n)`; `cod` is `n′`. Returns `None` unless monotone and in range.
    pub fn new(cod: usize, values: Vec<usize>) -> Option<OrdinalMap> {
        if values.is_empty() || values.iter().any(|&v| v > cod) || values.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        Some(OrdinalMap { cod, values })
    }

    pub fn identity(n: usize) -> OrdinalMap {
        OrdinalMap {
            cod: n,
            values: (0..=n).collect(),
        }
    }

    /// Coface `δ_i: [n−1] → [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> OrdinalMap {
        assert!(n >= 1 && i <= n);
        OrdinalMap {
            cod: n,
            values: (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
        }
    }

    /// Codegeneracy `σ_j: [n+1] → [n]` hitting `j` twice.
    pub fn degeneracy(n: usize, j: usize) -> OrdinalMap {
        assert!(j <= n);
        OrdinalMap {
            cod: n,
            values: (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect(),
        }
    }

    /// Constant map `[n] → [m]` with value `v`.
    pub fn constant(n: usize, m: usize, v: usize) -> OrdinalMap {
        assert!(v <= m);
        OrdinalMap {
            cod: m,
            values: vec![v; n + 1],
        }
    }

    pub fn dom(&self) -> usize {
        self.values.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OrdinalMap) -> OrdinalMap {
        assert_eq!(other.cod, self.dom(), "ordinal maps not composable");
        OrdinalMap {
            cod: self.cod,
            values: other.values.iter().map(|&i| self.values[i]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.is_injective()
    }

    /// Factors `self = mono ∘ epi` with `epi` surjective and `mono` injective.
    pub fn epi_mono(&self) -> (OrdinalMap, OrdinalMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let k = image.len() - 1;
        let epi = OrdinalMap {
            cod: k,
            values: self.values.iter().map(|v| image.binary_search(v).unwrap()).collect(),
        };
        let mono = OrdinalMap {
            cod: self.cod,
            values: image,
        };
        (epi, mono)
    }

    /// Every monotone map `[n] → [m]`, in lexicographic order of value lists.
    pub fn all(n: usize, m: usize) -> impl Iterator<Item = OrdinalMap> {
        let mut next = Some(vec![0usize; n + 1]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            // advance: rightmost position that can increase, reset suffix to it
            let mut succ = cur.clone();
            let mut pos = n + 1;
            while pos > 0 {
                pos -= 1;
                if succ[pos] < m {
                    let v = succ[pos] + 1;
                    for s in &mut succ[pos..] {
                        *s = v;
                    }
                    next = Some(succ);
                    break;
                }
            }
            Some(OrdinalMap { cod: m, values: cur })
        })
    }
}

impl fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "):[{}]->[{}]", self.dom(), self.cod)
    }
}

/// The poset `0 → 1 → ⋯ → n` as a category; arrow `i→j` is named `"i->j"`.
pub fn ordinal(n: usize) -> FinCategory {
    let mut index = vec![vec![usize::MAX; n + 1]; n + 1];
    let mut arrows = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            index[i][j] = arrows.len();
            arrows.push(Arrow {
                name: format!("{i}->{j}"),
                src: i,
                tgt: j,
                is_identity: i == j,
            });
        }
    }
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
    FinCategory::assemble((0..=n).map(|i| i.to_string()).collect(), arrows, |g, f| {
        Some(index[ends[f].0][ends[g].1])
    })
}

/// The simplex category truncated to `[0], …, [n]`, with the ordinal map behind each arrow.
pub fn simplex_category(n: usize) -> (FinCategory, Vec<OrdinalMap>) {
    let mut maps = Vec::new();
    let mut arrows = Vec::new();
    let mut lookup = std::collections::HashMap::new();
    for p in 0..=n {
        for q in 0..=n {
            for a in OrdinalMap::all(p, q) {
                lookup.insert(a.clone(), arrows.len());
                arrows.push(Arrow {
                    name: a.to_string(),
                    src: p,
                    tgt: q,
                    is_identity: a.is_identity(),
                });
                maps.push(a);
            }
        }
    }
    let cat = FinCategory::assemble((0..=n).map(|i| format!("[{i}]")).collect(), arrows, |g, f| {
        lookup.get(&maps[g].compose(&maps[f])).copied()
    });
    (cat, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_monotone_maps() {
        for n in 0..4 {
            for m in 0..4 {
                // multisets of size n+1 from m+1 values
                assert_eq!(OrdinalMap::all(n, m).count(), binom(n + m + 1, n + 1));
            }
        }
    }

    #[test]
    fn ordinal_arrow_counts() {
        for n in 0..6 {
            let c = ordinal(n);
            assert_eq!(c.num_arrows(), (n + 1) * (n + 2) / 2);
            assert!(c.validate().is_empty());
        }
        assert_eq!(ordinal(0).num_arrows(), 1);
        assert_eq!(ordinal(1).num_arrows(), 3);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..5 {
            for i in 0..=n {
                for j in (i + 1)..=n {
                    // δ_j δ_i = δ_i δ_{j−1} for i < j
                    let lhs = OrdinalMap::face(n, j).compose(&OrdinalMap::face(n - 1, i));
                    let rhs = OrdinalMap::face(n, i).compose(&OrdinalMap::face(n - 1, j - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn epi_mono_factorization() {
        for a in OrdinalMap::all(3, 3) {
            let (e, m) = a.epi_mono();
            assert!(e.is_surjective());
            assert!(m.is_injective());
            assert_eq!(m.compose(&e), a);
        }
    }

    #[test]
    fn simplex_category_is_valid() {
        let (d, maps) = simplex_category(2);
        assert!(d.validate().is_empty());
        assert_eq!(maps.len(), d.num_arrows());
    }
}
