use std::collections::HashMap;
use std::sync::Arc;

use super::comma::{comma, fiber, fiber_inclusion, Cleavage};
use crate::catcore::{Adjunction, ArrId, Arrow, CatFunctor, FinCategory, NatTransf, ObjId};
use crate::twocat::CatValuedLaxFunctor;

/// `F ⋊ B` with its projection to `B`.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: Arc<FinCategory>,
    pub projection: CatFunctor,
    /// `(b, x)` with `x` an object of `F(b)`.
    pub objects: Vec<(ObjId, ObjId)>,
    /// `(α, f)` with `α: b → b′` and `f: F(α)x → x′` in `F(b′)`.
    pub arrows: Vec<(ArrId, ArrId)>,
    object_index: HashMap<(ObjId, ObjId), ObjId>,
    arrow_index: HashMap<(ObjId, ObjId, ArrId, ArrId), ArrId>,
}

impl Grothendieck {
    pub fn object(&self, b: ObjId, x: ObjId) -> ObjId {
        self.object_index[&(b, x)]
    }

    pub fn arrow(&self, from: ObjId, to: ObjId, alpha: ArrId, f: ArrId) -> Option<ArrId> {
        self.arrow_index.get(&(from, to, alpha, f)).copied()
    }
}

/// Pairs `(x, b)`; `(f′, α′) ∘ (f, α) = (f′ · F(α′)(f) · F^x_{α′,α}, α′α)`.
pub fn grothendieck(f: &CatValuedLaxFunctor) -> Grothendieck {
    let b = &*f.base;
    let objects: Vec<(ObjId, ObjId)> = b
        .objects()
        .flat_map(|c| f.values[c].objects().map(move |x| (c, x)))
        .collect();
    let object_index: HashMap<(ObjId, ObjId), ObjId> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
    let names: Vec<String> = objects
        .iter()
        .map(|&(c, x)| format!("({},{})", f.values[c].object_name(x), b.object_name(c)))
        .collect();
    let mut arrows = Vec::new();
    let mut pairs = Vec::new();
    let mut arrow_index = HashMap::new();
    for (s, &(c, x)) in objects.iter().enumerate() {
        for &alpha in b.outgoing(c) {
            let c2 = b.tgt(alpha);
            let moved = f.actions[alpha].obj(x);
            let value = &f.values[c2];
            for &g in value.outgoing(moved) {
                let t = object_index[&(c2, value.tgt(g))];
                arrow_index.insert((s, t, alpha, g), arrows.len());
                let is_identity = b.is_identity(alpha) && value.is_identity(g);
                arrows.push(Arrow {
                    name: if is_identity {
                        format!("id_{}", names[s])
                    } else {
                        format!("({},{})", value.arrow_name(g), b.arrow_name(alpha))
                    },
                    src: s,
                    tgt: t,
                    is_identity,
                });
                pairs.push((alpha, g));
            }
        }
    }
    let ends: Vec<(ObjId, ObjId)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let category = FinCategory::assemble(names, arrows, |second, first| {
        let (a2, g2) = pairs[second];
        let (a1, g1) = pairs[first];
        let (s, t) = (ends[first].0, ends[second].1);
        let (_, x) = objects[s];
        let value = &f.values[b.tgt(a2)];
        let structural = f.structural_component(a2, a1, x);
        let g = value.compose(g2, value.compose(f.actions[a2].arr(g1), structural));
        arrow_index.get(&(s, t, b.compose(a2, a1), g)).copied()
    });
    let category = Arc::new(category);
    let projection = CatFunctor::new(
        category.clone(),
        f.base.clone(),
        objects.iter().map(|&(c, _)| c).collect(),
        pairs.iter().map(|&(alpha, _)| alpha).collect(),
    );
    Grothendieck {
        category,
        projection,
        objects,
        arrows: pairs,
        object_index,
        arrow_index,
    }
}

/// The cleavage sending `((x, b₀), φ: b₀ → b)` to `(F(φ)x, b)`.
pub fn canonical_cleavage(f: &CatValuedLaxFunctor, g: &Grothendieck) -> Cleavage {
    let p = &g.projection;
    let base = &*f.base;
    let mut fibers = Vec::new();
    let mut slices = Vec::new();
    let mut adjunctions = Vec::new();
    for b in base.objects() {
        let fib = fiber(p, b);
        let slice = comma(p, b);
        let incl = fiber_inclusion(p, b, &fib, &slice);
        let value = &f.values[b];
        let id_b = base.identity(b);
        let lower = |e: ObjId, phi: ArrId| -> ObjId {
            let (_, x) = g.objects[e];
            fib.local_object(g.object(b, f.actions[phi].obj(x)))
                .expect("lies over b")
        };
        let obj_map: Vec<ObjId> = slice.objects.iter().map(|&(e, phi)| lower(e, phi)).collect();
        let arr_map = (0..slice.category.num_arrows())
            .map(|k| {
                let a = slice.category.arrow(k);
                let (e, phi) = slice.objects[a.src];
                let (e2, phi2) = slice.objects[a.tgt];
                let (alpha, h) = g.arrows[slice.arrows[k]];
                let (_, x) = g.objects[e];
                let component = value.compose(f.actions[phi2].arr(h), f.structural_component(phi2, alpha, x));
                let total = g
                    .arrow(
                        fib.objects[lower(e, phi)],
                        fib.objects[lower(e2, phi2)],
                        id_b,
                        component,
                    )
                    .expect("lowered arrow exists");
                fib.local_arrow(total).expect("lies over id_b")
            })
            .collect();
        let left = CatFunctor::new(slice.category.clone(), fib.category.clone(), obj_map, arr_map);
        let unit = slice
            .objects
            .iter()
            .enumerate()
            .map(|(o, &(e, phi))| {
                let target = fib.objects[lower(e, phi)];
                let moved = g.objects[target].1;
                let k = g.arrow(e, target, phi, value.identity(moved)).expect("cartesian lift");
                slice.arrow(o, incl.obj(left.obj(o)), k).expect("triangle commutes")
            })
            .collect();
        let counit = fib.category.objects().map(|y| fib.category.identity(y)).collect();
        adjunctions.push(Adjunction {
            unit: NatTransf {
                source: CatFunctor::identity(slice.category.clone()),
                target: left.then(&incl),
                components: unit,
            },
            counit: NatTransf {
                source: incl.then(&left),
                target: CatFunctor::identity(fib.category.clone()),
                components: counit,
            },
            left,
            right: incl,
        });
        fibers.push(fib);
        slices.push(slice);
    }
    Cleavage {
        fibers,
        slices,
        adjunctions,
    }
}
