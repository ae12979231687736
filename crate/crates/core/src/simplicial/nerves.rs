use crate::catcore::{ArrId, FinCategory, ObjId};
use crate::twocat::{CellId, Fin2Category};

use super::sset::{Simplicial, TruncatedSimplicialSet};

/// An n-simplex of the nerve: a chain of `n` composable arrows starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub start: ObjId,
    pub arrows: Vec<ArrId>,
}

pub struct NerveCarrier<'a>(pub &'a FinCategory);

impl Chain {
    pub fn objects(&self, c: &FinCategory) -> Vec<ObjId> {
        std::iter::once(self.start)
            .chain(self.arrows.iter().map(|&f| c.tgt(f)))
            .collect()
    }
}

impl Simplicial for NerveCarrier<'_> {
    type Simplex = Chain;

    fn face(&self, x: &Chain, dim: usize, i: usize) -> Chain {
        let c = self.0;
        let mut arrows = x.arrows.clone();
        if i == 0 {
            let f = arrows.remove(0);
            Chain {
                start: c.tgt(f),
                arrows,
            }
        } else if i == dim {
            arrows.pop();
            Chain { start: x.start, arrows }
        } else {
            let g = arrows.remove(i);
            arrows[i - 1] = c.compose(g, arrows[i - 1]);
            Chain { start: x.start, arrows }
        }
    }

    fn degeneracy(&self, x: &Chain, _dim: usize, j: usize) -> Chain {
        let c = self.0;
        let obj = x.objects(c)[j];
        let mut arrows = x.arrows.clone();
        arrows.insert(j, c.identity(obj));
        Chain { start: x.start, arrows }
    }

    fn nondegenerate(&self, n: usize) -> Vec<Chain> {
        let c = self.0;
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in c.objects() {
            extend_chains(c, start, start, n, &mut stack, &mut out);
        }
        out
    }

    fn label(&self, x: &Chain, _dim: usize) -> String {
        if x.arrows.is_empty() {
            self.0.object_name(x.start).to_string()
        } else {
            x.arrows
                .iter()
                .map(|&f| self.0.arrow_name(f))
                .collect::<Vec<_>>()
                .join("|")
        }
    }

    fn decompose(&self, x: &Chain, _dim: usize) -> (Chain, Vec<usize>) {
        let c = self.0;
        let word = (0..x.arrows.len())
            .rev()
            .filter(|&p| c.is_identity(x.arrows[p]))
            .collect();
        let arrows = x.arrows.iter().copied().filter(|&f| !c.is_identity(f)).collect();
        (Chain { start: x.start, arrows }, word)
    }
}

fn extend_chains(c: &FinCategory, start: ObjId, at: ObjId, left: usize, stack: &mut Vec<ArrId>, out: &mut Vec<Chain>) {
    if left == 0 {
        out.push(Chain {
            start,
            arrows: stack.clone(),
        });
        return;
    }
    for &f in c.outgoing(at) {
        if c.is_identity(f) {
            continue;
        }
        stack.push(f);
        extend_chains(c, start, c.tgt(f), left - 1, stack, out);
        stack.pop();
    }
}

/// The nerve of `c` truncated at dimension `bound`.
pub fn nerve(c: &FinCategory, bound: usize) -> TruncatedSimplicialSet {
    TruncatedSimplicialSet::build(&NerveCarrier(c), bound)
}

/// A normal lax functor `⟨n⟩ ⇝ C`: objects `x_i`, 1-cells `f_{ij}` for
/// `i < j` and 2-cells `α_{ijk}: f_{ik} ⇒ f_{jk} ∘ f_{ij}` for `i < j < k`,
/// each list in lexicographic order of its indices. For `i < j < k < l` the
/// cells satisfy `(α_{jkl} ∘ f_{ij}) • α_{ikl} = (f_{kl} ∘ α_{ijk}) • α_{ijl}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaxSimplex {
    pub objects: Vec<ObjId>,
    pub one_cells: Vec<ArrId>,
    pub cells: Vec<CellId>,
}

struct Indexing {
    pairs: Vec<Vec<usize>>,
    triples: Vec<Vec<Vec<usize>>>,
}

impl Indexing {
    fn new(n: usize) -> Indexing {
        let mut pairs = vec![vec![usize::MAX; n + 1]; n + 1];
        let mut k = 0;
        for i in 0..=n {
            for j in i + 1..=n {
                pairs[i][j] = k;
                k += 1;
            }
        }
        let mut triples = vec![vec![vec![usize::MAX; n + 1]; n + 1]; n + 1];
        let mut k = 0;
        for i in 0..=n {
            for j in i + 1..=n {
                for l in j + 1..=n {
                    triples[i][j][l] = k;
                    k += 1;
                }
            }
        }
        Indexing { pairs, triples }
    }
}

pub struct GeometricNerveCarrier<'a> {
    pub category: &'a Fin2Category,
    index: Vec<Indexing>,
}

impl<'a> GeometricNerveCarrier<'a> {
    pub fn new(category: &'a Fin2Category, bound: usize) -> Self {
        GeometricNerveCarrier {
            category,
            index: (0..=bound + 1).map(Indexing::new).collect(),
        }
    }

    fn one(&self, x: &LaxSimplex, n: usize, i: usize, j: usize) -> ArrId {
        if i == j {
            self.category.id1(x.objects[i])
        } else {
            x.one_cells[self.index[n].pairs[i][j]]
        }
    }

    fn cell(&self, x: &LaxSimplex, n: usize, i: usize, j: usize, k: usize) -> CellId {
        if i == j || j == k {
            self.category.id2(self.one(x, n, i, k))
        } else {
            x.cells[self.index[n].triples[i][j][k]]
        }
    }

    /// Precomposition with the monotone map `a: [m] → [n]`.
    fn reindex(&self, x: &LaxSimplex, n: usize, m: usize, a: &[usize]) -> LaxSimplex {
        let objects = a.iter().map(|&v| x.objects[v]).collect();
        let mut one_cells = Vec::new();
        let mut cells = Vec::new();
        for i in 0..=m {
            for j in i + 1..=m {
                one_cells.push(self.one(x, n, a[i], a[j]));
                for k in j + 1..=m {
                    cells.push(self.cell(x, n, a[i], a[j], a[k]));
                }
            }
        }
        // cells were pushed in (i, j, k) order with k innermost: lexicographic
        LaxSimplex {
            objects,
            one_cells,
            cells,
        }
    }

    /// Every n-simplex, degenerate ones included.
    pub fn all(&self, n: usize) -> Vec<LaxSimplex> {
        let c = self.category;
        if n == 0 {
            return c
                .objects()
                .map(|x| LaxSimplex {
                    objects: vec![x],
                    one_cells: vec![],
                    cells: vec![],
                })
                .collect();
        }
        let mut out = Vec::new();
        for base in self.all(n - 1) {
            self.extend(&base, n, &mut out);
        }
        out
    }

    /// All n-simplices whose face `d_n` is `base`, by choosing `x_n`, the
    /// 1-cells `f_{in}` and the 2-cells `α_{ijn}` subject to the cocycle condition.
    fn extend(&self, base: &LaxSimplex, n: usize, out: &mut Vec<LaxSimplex>) {
        let c = self.category;
        let prev = n - 1;
        for xn in c.objects() {
            let mut fs = vec![0; n];
            self.choose_ones(base, n, prev, xn, 0, &mut fs, out);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_ones(
        &self,
        base: &LaxSimplex,
        n: usize,
        prev: usize,
        xn: ObjId,
        i: usize,
        fs: &mut Vec<ArrId>,
        out: &mut Vec<LaxSimplex>,
    ) {
        let c = self.category;
        if i == n {
            // new 2-cells α_{ijn}, i < j < n, in lexicographic order
            let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut alphas = vec![0; slots.len()];
            self.choose_cells(base, n, prev, xn, fs, &slots, 0, &mut alphas, out);
            return;
        }
        for f in c.underlying().hom(base.objects[i], xn) {
            fs[i] = f;
            self.choose_ones(base, n, prev, xn, i + 1, fs, out);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_cells(
        &self,
        base: &LaxSimplex,
        n: usize,
        prev: usize,
        xn: ObjId,
        fs: &[ArrId],
        slots: &[(usize, usize)],
        k: usize,
        alphas: &mut Vec<CellId>,
        out: &mut Vec<LaxSimplex>,
    ) {
        let c = self.category;
        if k == slots.len() {
            let x = self.assemble(base, n, prev, xn, fs, slots, alphas);
            out.push(x);
            return;
        }
        let (i, j) = slots[k];
        let from = fs[i];
        let to = c.compose1(fs[j], self.one(base, prev, i, j));
        for a in c.cells_between(from, to) {
            alphas[k] = a;
            // cocycle for (h, i, j, n) with h < i: slot (h, i) and (h, j) are
            // decided earlier, as is (i, j) here; check chains h < i < j < n
            // whose largest new slot is (i, j)
            if self.cocycles_hold(base, prev, fs, slots, &alphas[..=k], i, j) {
                self.choose_cells(base, n, prev, xn, fs, slots, k + 1, alphas, out);
            }
        }
    }

    /// Cocycle conditions for `h < i < j < n` where `(i, j)` was just chosen
    /// and `(h, i)`, `(h, j)` precede it.
    #[allow(clippy::too_many_arguments)]
    fn cocycles_hold(
        &self,
        base: &LaxSimplex,
        prev: usize,
        fs: &[ArrId],
        slots: &[(usize, usize)],
        alphas: &[CellId],
        i: usize,
        j: usize,
    ) -> bool {
        let c = self.category;
        let new = |a: usize, b: usize| alphas[slots.iter().position(|&s| s == (a, b)).unwrap()];
        (0..i).all(|h| {
            // (α_{ijn} ∘ f_{hi}) • α_{hin} = (f_{jn} ∘ α_{hij}) • α_{hjn}
            let lhs = c.vcomp(c.whisker_right(new(i, j), self.one(base, prev, h, i)), new(h, i));
            let rhs = c.vcomp(c.whisker_left(fs[j], self.cell(base, prev, h, i, j)), new(h, j));
            lhs == rhs
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        &self,
        base: &LaxSimplex,
        n: usize,
        prev: usize,
        xn: ObjId,
        fs: &[ArrId],
        slots: &[(usize, usize)],
        alphas: &[CellId],
    ) -> LaxSimplex {
        let mut objects = base.objects.clone();
        objects.push(xn);
        let mut one_cells = Vec::new();
        let mut cells = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                one_cells.push(if j == n { fs[i] } else { self.one(base, prev, i, j) });
                for k in j + 1..=n {
                    cells.push(if k == n {
                        alphas[slots.iter().position(|&s| s == (i, j)).unwrap()]
                    } else {
                        self.cell(base, prev, i, j, k)
                    });
                }
            }
        }
        LaxSimplex {
            objects,
            one_cells,
            cells,
        }
    }
}

impl Simplicial for GeometricNerveCarrier<'_> {
    type Simplex = LaxSimplex;

    fn face(&self, x: &LaxSimplex, dim: usize, i: usize) -> LaxSimplex {
        let a: Vec<usize> = (0..=dim).filter(|&v| v != i).collect();
        self.reindex(x, dim, dim - 1, &a)
    }

    fn degeneracy(&self, x: &LaxSimplex, dim: usize, j: usize) -> LaxSimplex {
        let a: Vec<usize> = (0..=dim + 1).map(|v| if v <= j { v } else { v - 1 }).collect();
        self.reindex(x, dim, dim + 1, &a)
    }

    fn nondegenerate(&self, n: usize) -> Vec<LaxSimplex> {
        self.all(n)
            .into_iter()
            .filter(|x| n == 0 || !self.is_degenerate(x, n))
            .collect()
    }

    fn label(&self, x: &LaxSimplex, dim: usize) -> String {
        let c = self.category;
        match dim {
            0 => c.object_name(x.objects[0]).to_string(),
            1 => c.one_cell_name(x.one_cells[0]).to_string(),
            _ => {
                let ones: Vec<&str> = x.one_cells.iter().map(|&f| c.one_cell_name(f)).collect();
                let cells: Vec<&str> = x.cells.iter().map(|&a| c.cell_name(a)).collect();
                format!("{}|{}", ones.join(","), cells.join(","))
            }
        }
    }
}

/// The geometric nerve: n-simplices are the normal lax functors `⟨n⟩ ⇝ C`.
pub fn geometric_nerve(c: &Fin2Category, bound: usize) -> TruncatedSimplicialSet {
    TruncatedSimplicialSet::build(&GeometricNerveCarrier::new(c, bound), bound)
}
