use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::{ArrId, Arrow, CatFunctor, FinCategory, ObjId, OrdinalMap};
use crate::simplicial::{geometric_nerve, homology_equal, nerve, HomologyComparison};
use crate::subdivision::{chains, ChainSimplex};
use crate::twocat::{CellId, Fin2Category, NormalLaxFunctor};
use crate::Result;

/// `Δ//C` truncated to simplices of dimension `≤ bound`.
#[derive(Clone, Debug)]
pub struct Delta2 {
    pub category: Arc<FinCategory>,
    pub base: Arc<Fin2Category>,
    pub bound: usize,
    /// Chains of 1-cells, degenerate ones included.
    pub objects: Vec<ChainSimplex>,
    /// `(a, α)` with `α_i: x′(a(i−1) → a(i)) ⇒ x(i−1 → i)`.
    pub arrows: Vec<(OrdinalMap, Vec<CellId>)>,
    object_index: HashMap<(ObjId, Vec<ArrId>), ObjId>,
    arrow_index: HashMap<(ObjId, ObjId, Vec<usize>, Vec<CellId>), ArrId>,
}

impl Delta2 {
    pub fn object(&self, start: ObjId, arrows: &[ArrId]) -> Option<ObjId> {
        self.object_index.get(&(start, arrows.to_vec())).copied()
    }

    pub fn arrow(&self, from: ObjId, to: ObjId, a: &OrdinalMap, cells: &[CellId]) -> Option<ArrId> {
        self.arrow_index
            .get(&(from, to, a.values().to_vec(), cells.to_vec()))
            .copied()
    }

    /// The source as a locally discrete 2-category.
    pub fn as_two_category(&self) -> Arc<Fin2Category> {
        Arc::new(Fin2Category::from_category(&self.category))
    }
}

/// Horizontal composite of `cells[from..to]` (source first); the identity of
/// `id_at` when the range is empty.
fn segment(c: &Fin2Category, cells: &[CellId], from: usize, to: usize, id_at: ObjId) -> CellId {
    cells[from..to]
        .iter()
        .copied()
        .reduce(|acc, b| c.hcomp(b, acc))
        .unwrap_or_else(|| c.id2(c.id1(id_at)))
}

/// Every choice of one element from each list.
fn product<T: Copy>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![vec![]], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

/// The opposite of the Grothendieck construction over the nerve `Δ^op → cat`,
/// restricted to dimensions `≤ bound`.
pub fn delta2(c: &Arc<Fin2Category>, bound: usize) -> Delta2 {
    let under = c.underlying();
    let objects: Vec<ChainSimplex> = (0..=bound).flat_map(|n| chains(under, n, false)).collect();
    let object_index: HashMap<(ObjId, Vec<ArrId>), ObjId> = objects
        .iter()
        .enumerate()
        .map(|(k, x)| ((x.first(), x.arrows.clone()), k))
        .collect();
    let names: Vec<String> = objects.iter().map(|x| x.label(under)).collect();

    let mut arrows = Vec::new();
    let mut data = Vec::new();
    let mut arrow_index = HashMap::new();
    for (s, x) in objects.iter().enumerate() {
        for (t, y) in objects.iter().enumerate() {
            // only the vertices must agree: x′(a(i)) = x(i)
            let lands = |a: &OrdinalMap| (0..=x.dim()).all(|i| y.objects[a.apply(i)] == x.objects[i]);
            for a in OrdinalMap::all(x.dim(), y.dim()).filter(lands) {
                let options: Vec<Vec<CellId>> = (1..=x.dim())
                    .map(|i| {
                        c.cells_between(y.between(a.apply(i - 1), a.apply(i)), x.arrows[i - 1])
                            .collect()
                    })
                    .collect();
                for cells in product(&options) {
                    let is_identity = s == t && a.is_identity() && cells.iter().all(|&k| c.is_identity_cell(k));
                    let name = if is_identity {
                        format!("id_{}", names[s])
                    } else {
                        let values: Vec<String> = a.values().iter().map(|v| v.to_string()).collect();
                        let cell_names: Vec<&str> = cells.iter().map(|&k| c.cell_name(k)).collect();
                        format!(
                            "({})[{}]:{}->{}",
                            values.join(","),
                            cell_names.join(","),
                            names[s],
                            names[t]
                        )
                    };
                    arrow_index.insert((s, t, a.values().to_vec(), cells.clone()), arrows.len());
                    arrows.push(Arrow {
                        name,
                        src: s,
                        tgt: t,
                        is_identity,
                    });
                    data.push((a.clone(), cells));
                }
            }
        }
    }

    let ends: Vec<(ObjId, ObjId)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let category = FinCategory::assemble(names, arrows, |second, first| {
        let (a, alpha) = &data[first];
        let (b, beta) = &data[second];
        let (s, u) = (ends[first].0, ends[second].1);
        let z = &objects[u];
        let ba = b.compose(a);
        // γ_i = α_i • (β_{a(i−1)+1} ⋯ β_{a(i)})
        let gamma: Vec<CellId> = (1..=a.dom())
            .map(|i| {
                let h = segment(c, beta, a.apply(i - 1), a.apply(i), z.objects[ba.apply(i)]);
                c.vcomp(alpha[i - 1], h)
            })
            .collect();
        arrow_index.get(&(s, u, ba.values().to_vec(), gamma)).copied()
    });
    Delta2 {
        category: Arc::new(category),
        base: c.clone(),
        bound,
        objects,
        arrows: data,
        object_index,
        arrow_index,
    }
}

/// `sup(n, x) = x_n`, `sup(a, α) = x′(a(n) → n′)`, with structural cells
/// `x″(b(n′) → n″) ∘ β_{n′} ∘ ⋯ ∘ β_{a(n)+1}`.
pub fn sup_lax(delta: &Delta2) -> NormalLaxFunctor {
    let c = &*delta.base;
    let source = delta.as_two_category();
    let d = &*delta.category;
    let one_map: Vec<ArrId> = (0..d.num_arrows())
        .map(|k| {
            let (a, _) = &delta.arrows[k];
            let y = &delta.objects[d.tgt(k)];
            y.between(a.apply(a.dom()), y.dim())
        })
        .collect();
    let structural = d
        .composable_pairs()
        .map(|(second, first)| {
            let (a, _) = &delta.arrows[first];
            let (b, beta) = &delta.arrows[second];
            let mid = &delta.objects[d.tgt(first)];
            let z = &delta.objects[d.tgt(second)];
            let n1 = mid.dim();
            let tail = z.between(b.apply(n1), z.dim());
            let h = segment(c, beta, a.apply(a.dom()), n1, z.objects[b.apply(n1)]);
            c.whisker_left(tail, h)
        })
        .collect();
    let two_map = (0..source.num_cells())
        .map(|k| c.id2(one_map[source.cell_src(k)]))
        .collect();
    NormalLaxFunctor {
        source,
        target: delta.base.clone(),
        obj_map: delta.objects.iter().map(|x| x.last()).collect(),
        one_map,
        two_map,
        structural,
    }
}

/// The isomorphism `Δ//C ≅ Δ//(C^op)` reversing every chain; `dual` must be
/// `delta2(op2(C), bound)`.
pub fn reversal(delta: &Delta2, dual: &Delta2) -> CatFunctor {
    let reversed = |x: &ChainSimplex| -> ObjId {
        let arrows: Vec<ArrId> = x.arrows.iter().rev().copied().collect();
        dual.object(x.last(), &arrows).expect("reversed chain exists")
    };
    let obj_map: Vec<ObjId> = delta.objects.iter().map(reversed).collect();
    let d = &*delta.category;
    let arr_map = (0..d.num_arrows())
        .map(|k| {
            let (a, alpha) = &delta.arrows[k];
            let (n, n1) = (a.dom(), a.cod());
            let values = (0..=n).map(|i| n1 - a.apply(n - i)).collect();
            let a_rev = OrdinalMap::new(n1, values).expect("monotone");
            let cells: Vec<CellId> = alpha.iter().rev().copied().collect();
            dual.arrow(obj_map[d.src(k)], obj_map[d.tgt(k)], &a_rev, &cells)
                .expect("reversed arrow exists")
        })
        .collect();
    CatFunctor::new(delta.category.clone(), dual.category.clone(), obj_map, arr_map)
}

/// `u ∘ f` for a strict functor `f` between locally discrete sources.
fn precompose(u: &NormalLaxFunctor, f: &CatFunctor) -> NormalLaxFunctor {
    let source = Arc::new(Fin2Category::from_category(&f.source));
    let t = &*u.target;
    let one_map: Vec<ArrId> = f.arr_map.iter().map(|&k| u.one_map[k]).collect();
    let structural = f
        .source
        .composable_pairs()
        .map(|(g, h)| u.structural_cell(f.arr(g), f.arr(h)))
        .collect();
    let two_map = (0..source.num_cells())
        .map(|k| t.id2(one_map[source.cell_src(k)]))
        .collect();
    NormalLaxFunctor {
        source,
        target: u.target.clone(),
        obj_map: f.obj_map.iter().map(|&x| u.obj_map[x]).collect(),
        one_map,
        two_map,
        structural,
    }
}

/// `inf_C = sup_{C^op} ∘ reversal: Δ//C ⇝ C^op`.
pub fn inf_lax(delta: &Delta2) -> NormalLaxFunctor {
    let dual = delta2(&Arc::new(delta.base.op2()), delta.bound);
    precompose(&sup_lax(&dual), &reversal(delta, &dual))
}

/// Homology of `N(Δ//C)` against the geometric nerve of `C` in degrees `≤ k_max`.
pub fn sup_homology_check(delta: &Delta2, k_max: usize) -> Result<HomologyComparison> {
    homology_equal(
        &nerve(&delta.category, k_max + 1),
        &geometric_nerve(&delta.base, k_max + 1),
        k_max,
    )
}
