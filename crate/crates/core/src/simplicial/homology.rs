use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::smith::{rank_mod, smith, SparseMatrix};
use super::sset::TruncatedSimplicialSet;
use crate::{Error, Result};

/// Normalized chains: free on nondegenerate simplices, `∂ = Σ (−1)^i d_i`
/// with degenerate faces dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[n]: C_n → C_{n−1}`; `boundaries[0]` is the zero map to 0.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn normalized(x: &TruncatedSimplicialSet) -> ChainComplex {
        let ranks = x.counts();
        let mut boundaries = vec![SparseMatrix::new(0, vec![vec![]; ranks[0]])];
        for n in 1..=x.bound {
            let columns = x.faces[n]
                .iter()
                .map(|faces| {
                    let mut col: Vec<(usize, i64)> = Vec::new();
                    for (i, f) in faces.iter().enumerate() {
                        if f.is_degenerate() {
                            continue;
                        }
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        match col.iter_mut().find(|(r, _)| *r == f.simplex) {
                            Some(e) => e.1 += sign,
                            None => col.push((f.simplex, sign)),
                        }
                    }
                    col.retain(|&(_, v)| v != 0);
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(SparseMatrix::new(ranks[n - 1], columns));
        }
        ChainComplex { ranks, boundaries }
    }

    /// The first `n` with `∂_{n−1} ∂_n ≠ 0`, if any.
    pub fn check_square_zero(&self) -> Option<usize> {
        (2..self.boundaries.len()).find(|&n| !self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
    }
}

mod torsion_serde {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Coef {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| match x.to_u64() {
                Some(small) => Coef::Small(small),
                None => Coef::Big(x.to_string()),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Coef>::deserialize(d)?
            .into_iter()
            .map(|c| match c {
                Coef::Small(x) => Ok(BigUint::from(x)),
                Coef::Big(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<BigUint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Integers,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub coefficients: Coefficients,
    pub truncation: usize,
    /// Degrees `≤ reliable_bound` are certified by the truncation.
    pub reliable_bound: usize,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologySummary {
    /// `(betti, torsion)` per degree, for equality checks.
    fn key(&self, k: usize) -> (usize, &[BigUint]) {
        let d = &self.degrees[k];
        (d.betti, &d.torsion)
    }
}

impl std::fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ring = match self.coefficients {
            Coefficients::Integers => "Z".to_string(),
            Coefficients::Prime(p) => format!("Z/{p}"),
        };
        for d in &self.degrees {
            let mut parts: Vec<String> = Vec::new();
            if d.betti > 0 {
                parts.push(if d.betti == 1 {
                    ring.clone()
                } else {
                    format!("{ring}^{}", d.betti)
                });
            }
            parts.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
            let group = if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            };
            writeln!(f, "H_{} = {}", d.degree, group)?;
        }
        write!(
            f,
            "(truncation {}, reliable through degree {})",
            self.truncation, self.reliable_bound
        )
    }
}

fn check_degree(x: &TruncatedSimplicialSet, k_max: usize) -> Result<()> {
    if x.bound == 0 || k_max > x.bound - 1 {
        return Err(Error::DegreeBound {
            requested: k_max,
            reliable: x.bound.saturating_sub(1),
            truncation: x.bound,
        });
    }
    Ok(())
}

/// Integral homology of the normalized chains in degrees `0..=k_max`.
pub fn homology(x: &TruncatedSimplicialSet, k_max: usize) -> Result<HomologySummary> {
    check_degree(x, k_max)?;
    let chains = ChainComplex::normalized(x);
    let snf: Vec<_> = (0..=k_max + 1).map(|n| smith(&chains.boundaries[n])).collect();
    let degrees = (0..=k_max)
        .map(|k| DegreeHomology {
            degree: k,
            betti: chains.ranks[k] - snf[k].rank - snf[k + 1].rank,
            torsion: snf[k + 1].torsion.clone(),
        })
        .collect();
    Ok(HomologySummary {
        coefficients: Coefficients::Integers,
        truncation: x.bound,
        reliable_bound: x.bound - 1,
        degrees,
    })
}

/// Homology with coefficients in `F_p`; a cheap pre-check for the integral computation.
pub fn homology_mod(x: &TruncatedSimplicialSet, k_max: usize, p: u64) -> Result<HomologySummary> {
    check_degree(x, k_max)?;
    if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::Schema(format!("coefficient modulus {p} is not a prime")));
    }
    let chains = ChainComplex::normalized(x);
    let ranks: Vec<usize> = (0..=k_max + 1).map(|n| rank_mod(&chains.boundaries[n], p)).collect();
    let degrees = (0..=k_max)
        .map(|k| DegreeHomology {
            degree: k,
            betti: chains.ranks[k] - ranks[k] - ranks[k + 1],
            torsion: vec![],
        })
        .collect();
    Ok(HomologySummary {
        coefficients: Coefficients::Prime(p),
        truncation: x.bound,
        reliable_bound: x.bound - 1,
        degrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyComparison {
    pub equal: bool,
    pub first_difference: Option<usize>,
    pub left: HomologySummary,
    pub right: HomologySummary,
}

pub fn homology_equal(
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
    k_max: usize,
) -> Result<HomologyComparison> {
    let left = homology(x, k_max)?;
    let right = homology(y, k_max)?;
    let first_difference = (0..=k_max).find(|&k| left.key(k) != right.key(k));
    Ok(HomologyComparison {
        equal: first_difference.is_none(),
        first_difference,
        left,
        right,
    })
}
