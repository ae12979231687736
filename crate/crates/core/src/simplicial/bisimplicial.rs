use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::catcore::{ArrId, ObjId};
use crate::twocat::{CellId, Fin2Category};

use super::sset::{Simplicial, TruncatedSimplicialSet};

/// A bisimplicial object given by explicit representatives. `p` is the
/// vertical degree and `q` the horizontal one.
pub trait Bisimplicial {
    type Simplex: Clone + Eq + Hash;

    /// Every `(p, q)`-simplex, degenerate ones included.
    fn all(&self, p: usize, q: usize) -> Vec<Self::Simplex>;
    fn hface(&self, x: &Self::Simplex, p: usize, q: usize, i: usize) -> Self::Simplex;
    fn vface(&self, x: &Self::Simplex, p: usize, q: usize, i: usize) -> Self::Simplex;
    fn hdegeneracy(&self, x: &Self::Simplex, p: usize, q: usize, j: usize) -> Self::Simplex;
    fn vdegeneracy(&self, x: &Self::Simplex, p: usize, q: usize, j: usize) -> Self::Simplex;
    fn label(&self, x: &Self::Simplex, p: usize, q: usize) -> String;
}

/// All `(p, q)`-simplices for `p, q ≤ bound` with face and degeneracy tables
/// as indices into the neighbouring entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedBisimplicialSet {
    pub bound: usize,
    /// `labels[p][q][k]`.
    pub labels: Vec<Vec<Vec<String>>>,
    /// `hfaces[p][q][k][i]`: index in `(p, q − 1)`.
    pub hfaces: Vec<Vec<Vec<Vec<usize>>>>,
    /// `vfaces[p][q][k][i]`: index in `(p − 1, q)`.
    pub vfaces: Vec<Vec<Vec<Vec<usize>>>>,
    /// `hdegeneracies[p][q][k][j]`: index in `(p, q + 1)`, present while `q < bound`.
    pub hdegeneracies: Vec<Vec<Vec<Vec<usize>>>>,
    /// `vdegeneracies[p][q][k][j]`: index in `(p + 1, q)`, present while `p < bound`.
    pub vdegeneracies: Vec<Vec<Vec<Vec<usize>>>>,
}

impl TruncatedBisimplicialSet {
    pub fn build<B: Bisimplicial>(carrier: &B, bound: usize) -> TruncatedBisimplicialSet {
        let n = bound + 1;
        let entries: Vec<Vec<Vec<B::Simplex>>> = (0..n).map(|p| (0..n).map(|q| carrier.all(p, q)).collect()).collect();
        let index: Vec<Vec<HashMap<&B::Simplex, usize>>> = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|xs| xs.iter().enumerate().map(|(k, x)| (x, k)).collect())
                    .collect()
            })
            .collect();
        let grid = |f: &dyn Fn(usize, usize, &B::Simplex) -> Vec<usize>| {
            (0..n)
                .map(|p| {
                    (0..n)
                        .map(|q| entries[p][q].iter().map(|x| f(p, q, x)).collect())
                        .collect()
                })
                .collect::<Vec<Vec<Vec<Vec<usize>>>>>()
        };
        let look = |p: usize, q: usize, x: &B::Simplex| -> usize {
            *index[p][q]
                .get(x)
                .expect("bisimplicial operator lands in a listed simplex")
        };
        let hfaces = grid(&|p, q, x| {
            if q == 0 {
                return vec![];
            }
            (0..=q).map(|i| look(p, q - 1, &carrier.hface(x, p, q, i))).collect()
        });
        let vfaces = grid(&|p, q, x| {
            if p == 0 {
                return vec![];
            }
            (0..=p).map(|i| look(p - 1, q, &carrier.vface(x, p, q, i))).collect()
        });
        let hdegeneracies = grid(&|p, q, x| {
            if q == bound {
                return vec![];
            }
            (0..=q)
                .map(|j| look(p, q + 1, &carrier.hdegeneracy(x, p, q, j)))
                .collect()
        });
        let vdegeneracies = grid(&|p, q, x| {
            if p == bound {
                return vec![];
            }
            (0..=p)
                .map(|j| look(p + 1, q, &carrier.vdegeneracy(x, p, q, j)))
                .collect()
        });
        let labels = entries
            .iter()
            .enumerate()
            .map(|(p, row)| {
                row.iter()
                    .enumerate()
                    .map(|(q, xs)| xs.iter().map(|x| carrier.label(x, p, q)).collect())
                    .collect()
            })
            .collect();
        TruncatedBisimplicialSet {
            bound,
            labels,
            hfaces,
            vfaces,
            hdegeneracies,
            vdegeneracies,
        }
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.labels[p][q].len()
    }

    /// Horizontal and vertical face identities and commutation of the two
    /// directions; returns the first failing `(p, q, k)`.
    pub fn check_identities(&self) -> Option<(usize, usize, usize)> {
        let b = self.bound;
        for p in 0..=b {
            for q in 0..=b {
                for k in 0..self.count(p, q) {
                    if q >= 2 {
                        for j in 1..=q {
                            for i in 0..j {
                                let lhs = self.hfaces[p][q - 1][self.hfaces[p][q][k][j]][i];
                                let rhs = self.hfaces[p][q - 1][self.hfaces[p][q][k][i]][j - 1];
                                if lhs != rhs {
                                    return Some((p, q, k));
                                }
                            }
                        }
                    }
                    if p >= 2 {
                        for j in 1..=p {
                            for i in 0..j {
                                let lhs = self.vfaces[p - 1][q][self.vfaces[p][q][k][j]][i];
                                let rhs = self.vfaces[p - 1][q][self.vfaces[p][q][k][i]][j - 1];
                                if lhs != rhs {
                                    return Some((p, q, k));
                                }
                            }
                        }
                    }
                    if p >= 1 && q >= 1 {
                        for i in 0..=q {
                            for j in 0..=p {
                                let hv = self.hfaces[p - 1][q][self.vfaces[p][q][k][j]][i];
                                let vh = self.vfaces[p][q - 1][self.hfaces[p][q][k][i]][j];
                                if hv != vh {
                                    return Some((p, q, k));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

struct DiagonalCarrier<'a>(&'a TruncatedBisimplicialSet);

impl Simplicial for DiagonalCarrier<'_> {
    type Simplex = usize;

    fn face(&self, x: &usize, n: usize, i: usize) -> usize {
        let b = self.0;
        let v = b.vfaces[n][n][*x][i];
        b.hfaces[n - 1][n][v][i]
    }

    fn degeneracy(&self, x: &usize, n: usize, j: usize) -> usize {
        let b = self.0;
        let v = b.vdegeneracies[n][n][*x][j];
        b.hdegeneracies[n + 1][n][v][j]
    }

    fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.0.count(n, n))
            .filter(|x| n == 0 || !self.is_degenerate(x, n))
            .collect()
    }

    fn label(&self, x: &usize, n: usize) -> String {
        self.0.labels[n][n][*x].clone()
    }
}

/// `diag(B)_n = B_{n,n}` with `d_i = d_i^h d_i^v`.
pub fn diagonal(b: &TruncatedBisimplicialSet) -> TruncatedSimplicialSet {
    TruncatedSimplicialSet::build(&DiagonalCarrier(b), b.bound)
}

/// A `p`-simplex of the nerve of a hom-category, as the `p + 1` 1-cells it
/// passes through and the `p` vertical 2-cells between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    pub one_cells: Vec<ArrId>,
    pub cells: Vec<CellId>,
}

/// A `(p, q)`-simplex of the 2-nerve: `q` columns over the object chain `c_0, …, c_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bisimplex {
    pub objects: Vec<ObjId>,
    pub columns: Vec<Column>,
}

pub struct TwoNerveCarrier<'a>(pub &'a Fin2Category);

impl TwoNerveCarrier<'_> {
    fn columns(&self, a: ObjId, b: ObjId, p: usize) -> Vec<Column> {
        let c = self.0;
        let v = c.vertical();
        let mut out = Vec::new();
        for &f in &c.hom(a, b).one_cells {
            let mut stack = Column {
                one_cells: vec![f],
                cells: vec![],
            };
            grow(v, p, &mut stack, &mut out);
        }
        out
    }

    fn identity_column(&self, x: ObjId, p: usize) -> Column {
        let c = self.0;
        let id = c.id1(x);
        Column {
            one_cells: vec![id; p + 1],
            cells: vec![c.id2(id); p],
        }
    }
}

fn grow(v: &crate::catcore::FinCategory, left: usize, col: &mut Column, out: &mut Vec<Column>) {
    if left == 0 {
        out.push(col.clone());
        return;
    }
    let at = *col.one_cells.last().unwrap();
    for &a in v.outgoing(at) {
        col.cells.push(a);
        col.one_cells.push(v.tgt(a));
        grow(v, left - 1, col, out);
        col.cells.pop();
        col.one_cells.pop();
    }
}

impl Bisimplicial for TwoNerveCarrier<'_> {
    type Simplex = Bisimplex;

    fn all(&self, p: usize, q: usize) -> Vec<Bisimplex> {
        let c = self.0;
        let mut out = Vec::new();
        let mut objects = Vec::new();
        for x in c.objects() {
            objects.push(x);
            let mut columns = Vec::new();
            self.fill(p, q, &mut objects, &mut columns, &mut out);
            objects.pop();
        }
        out
    }

    fn hface(&self, x: &Bisimplex, _p: usize, q: usize, i: usize) -> Bisimplex {
        let c = self.0;
        let mut y = x.clone();
        if i == 0 {
            y.objects.remove(0);
            y.columns.remove(0);
        } else if i == q {
            y.objects.pop();
            y.columns.pop();
        } else {
            let right = y.columns.remove(i);
            let left = &mut y.columns[i - 1];
            for (f, &g) in left.one_cells.iter_mut().zip(&right.one_cells) {
                *f = c.compose1(g, *f);
            }
            for (a, &b) in left.cells.iter_mut().zip(&right.cells) {
                *a = c.hcomp(b, *a);
            }
            y.objects.remove(i);
        }
        y
    }

    fn vface(&self, x: &Bisimplex, p: usize, _q: usize, i: usize) -> Bisimplex {
        let c = self.0;
        let mut y = x.clone();
        for col in &mut y.columns {
            if i == 0 {
                col.one_cells.remove(0);
                col.cells.remove(0);
            } else if i == p {
                col.one_cells.pop();
                col.cells.pop();
            } else {
                let b = col.cells.remove(i);
                col.cells[i - 1] = c.vcomp(b, col.cells[i - 1]);
                col.one_cells.remove(i);
            }
        }
        y
    }

    fn hdegeneracy(&self, x: &Bisimplex, p: usize, _q: usize, j: usize) -> Bisimplex {
        let mut y = x.clone();
        let obj = y.objects[j];
        y.objects.insert(j, obj);
        y.columns.insert(j, self.identity_column(obj, p));
        y
    }

    fn vdegeneracy(&self, x: &Bisimplex, _p: usize, _q: usize, j: usize) -> Bisimplex {
        let c = self.0;
        let mut y = x.clone();
        for col in &mut y.columns {
            let f = col.one_cells[j];
            col.one_cells.insert(j, f);
            col.cells.insert(j, c.id2(f));
        }
        y
    }

    fn label(&self, x: &Bisimplex, p: usize, q: usize) -> String {
        let c = self.0;
        if q == 0 {
            return c.object_name(x.objects[0]).to_string();
        }
        x.columns
            .iter()
            .map(|col| {
                if p == 0 {
                    c.one_cell_name(col.one_cells[0]).to_string()
                } else {
                    col.cells.iter().map(|&a| c.cell_name(a)).collect::<Vec<_>>().join(";")
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl TwoNerveCarrier<'_> {
    fn fill(&self, p: usize, q: usize, objects: &mut Vec<ObjId>, columns: &mut Vec<Column>, out: &mut Vec<Bisimplex>) {
        if columns.len() == q {
            out.push(Bisimplex {
                objects: objects.clone(),
                columns: columns.clone(),
            });
            return;
        }
        let a = *objects.last().unwrap();
        for b in self.0.objects() {
            let cols = self.columns(a, b, p);
            if cols.is_empty() {
                continue;
            }
            objects.push(b);
            for col in cols {
                columns.push(col);
                self.fill(p, q, objects, columns, out);
                columns.pop();
            }
            objects.pop();
        }
    }
}

/// The 2-nerve: the nerve of each hom-category applied levelwise to the
/// simplicial category of chains of 1-cells.
pub fn two_nerve(c: &Fin2Category, bound: usize) -> TruncatedBisimplicialSet {
    TruncatedBisimplicialSet::build(&TwoNerveCarrier(c), bound)
}
