use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::search::left_adjoint;
use crate::catcore::{Adjunction, ArrId, Arrow, CatFunctor, FinCategory, ObjId};

/// The comma category `u/d` of pairs `(c, φ: u(c) → d)`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: Arc<FinCategory>,
    /// `(c, φ)` per object.
    pub objects: Vec<(ObjId, ArrId)>,
    /// The arrow of the source category behind each arrow.
    pub arrows: Vec<ArrId>,
    index: HashMap<(ObjId, ObjId, ArrId), ArrId>,
    object_index: HashMap<(ObjId, ArrId), ObjId>,
}

impl CommaCategory {
    /// `(c, φ) ↦ c`.
    pub fn projection(&self, source: &Arc<FinCategory>) -> CatFunctor {
        CatFunctor::new(
            self.category.clone(),
            source.clone(),
            self.objects.iter().map(|&(c, _)| c).collect(),
            self.arrows.clone(),
        )
    }

    pub fn object(&self, c: ObjId, phi: ArrId) -> Option<ObjId> {
        self.object_index.get(&(c, phi)).copied()
    }

    /// The arrow `(c, φ) → (c′, φ′)` given by `f`, if the triangle commutes.
    pub fn arrow(&self, from: ObjId, to: ObjId, f: ArrId) -> Option<ArrId> {
        self.index.get(&(from, to, f)).copied()
    }
}

pub fn comma(u: &CatFunctor, d: ObjId) -> CommaCategory {
    let (c, t) = (&*u.source, &*u.target);
    let objects: Vec<(ObjId, ArrId)> = c
        .objects()
        .flat_map(|x| t.hom(u.obj(x), d).map(move |phi| (x, phi)))
        .collect();
    let names = objects
        .iter()
        .map(|&(x, phi)| format!("({},{})", c.object_name(x), t.arrow_name(phi)))
        .collect::<Vec<_>>();
    let mut arrows = Vec::new();
    let mut under = Vec::new();
    let mut index = HashMap::new();
    for (s, &(x, phi)) in objects.iter().enumerate() {
        for (r, &(y, psi)) in objects.iter().enumerate() {
            for f in c.hom(x, y) {
                if t.compose(psi, u.arr(f)) != phi {
                    continue;
                }
                index.insert((s, r, f), arrows.len());
                let is_identity = c.is_identity(f) && s == r;
                arrows.push(Arrow {
                    name: if is_identity {
                        format!("id_{}", names[s])
                    } else {
                        format!("{}:{}->{}", c.arrow_name(f), names[s], names[r])
                    },
                    src: s,
                    tgt: r,
                    is_identity,
                });
                under.push(f);
            }
        }
    }
    let ends: Vec<(ObjId, ObjId)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let category = FinCategory::assemble(names, arrows, |g, f| {
        index
            .get(&(ends[f].0, ends[g].1, c.compose(under[g], under[f])))
            .copied()
    });
    let object_index = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
    CommaCategory {
        category: Arc::new(category),
        objects,
        arrows: under,
        index,
        object_index,
    }
}

/// The actual fiber `p⁻¹(b)`: objects over `b` and arrows sent to `id_b`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub category: Arc<FinCategory>,
    pub objects: Vec<ObjId>,
    pub arrows: Vec<ArrId>,
    local: HashMap<ObjId, ObjId>,
    local_arrow: HashMap<ArrId, ArrId>,
}

impl Fiber {
    /// Position of an object of the total category inside the fiber.
    pub fn local_object(&self, e: ObjId) -> Option<ObjId> {
        self.local.get(&e).copied()
    }

    pub fn local_arrow(&self, k: ArrId) -> Option<ArrId> {
        self.local_arrow.get(&k).copied()
    }
}

pub fn fiber(p: &CatFunctor, b: ObjId) -> Fiber {
    let e = &*p.source;
    let base = &*p.target;
    let objects: Vec<ObjId> = e.objects().filter(|&x| p.obj(x) == b).collect();
    let local: HashMap<ObjId, ObjId> = objects.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let id_b = base.identity(b);
    let mut arrows = Vec::new();
    let mut embed = Vec::new();
    for &x in &objects {
        for &k in e.outgoing(x) {
            if p.arr(k) == id_b {
                let a = e.arrow(k);
                embed.push(k);
                arrows.push(Arrow {
                    name: a.name.clone(),
                    src: local[&a.src],
                    tgt: local[&a.tgt],
                    is_identity: a.is_identity,
                });
            }
        }
    }
    let local_arrow: HashMap<ArrId, ArrId> = embed.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let names = objects.iter().map(|&x| e.object_name(x).to_string()).collect();
    let category = FinCategory::assemble(names, arrows, |g, f| {
        local_arrow.get(&e.compose(embed[g], embed[f])).copied()
    });
    Fiber {
        category: Arc::new(category),
        objects,
        arrows: embed,
        local,
        local_arrow,
    }
}

/// The inclusion `p⁻¹(b) → p/b`, `e ↦ (e, id_b)`.
pub fn fiber_inclusion(p: &CatFunctor, b: ObjId, fib: &Fiber, slice: &CommaCategory) -> CatFunctor {
    let id_b = p.target.identity(b);
    let obj_map: Vec<ObjId> = fib
        .objects
        .iter()
        .map(|&e| slice.object(e, id_b).expect("fiber objects lie over b"))
        .collect();
    let arr_map = fib
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let f = fib.category.arrow(k);
            slice
                .arrow(obj_map[f.src], obj_map[f.tgt], a)
                .expect("fiber arrows lie over id_b")
        })
        .collect();
    CatFunctor::new(fib.category.clone(), slice.category.clone(), obj_map, arr_map)
}

/// For every base object `b`, a left adjoint to the inclusion `p⁻¹(b) → p/b`.
#[derive(Clone, Debug)]
pub struct Cleavage {
    pub fibers: Vec<Fiber>,
    pub slices: Vec<CommaCategory>,
    /// `adjunctions[b].left: p/b → p⁻¹(b)`, `.right` the inclusion.
    pub adjunctions: Vec<Adjunction>,
}

#[derive(Clone, Debug)]
pub enum PrefibrationCheck {
    Cleavage(Cleavage),
    /// No left adjoint over `base`: the object of `p/base` without a universal arrow.
    Fails {
        base: String,
        object: String,
    },
}

/// Searches exhaustively for a cleavage of `p`.
pub fn check_prefibration(p: &CatFunctor) -> PrefibrationCheck {
    let base = &*p.target;
    let mut fibers = Vec::new();
    let mut slices = Vec::new();
    let mut adjunctions = Vec::new();
    for b in base.objects() {
        let fib = fiber(p, b);
        let slice = comma(p, b);
        let incl = fiber_inclusion(p, b, &fib, &slice);
        match left_adjoint(&incl) {
            Ok(adj) => adjunctions.push(adj),
            Err(o) => {
                return PrefibrationCheck::Fails {
                    base: base.object_name(b).to_string(),
                    object: slice.category.object_name(o).to_string(),
                }
            }
        }
        fibers.push(fib);
        slices.push(slice);
    }
    PrefibrationCheck::Cleavage(Cleavage {
        fibers,
        slices,
        adjunctions,
    })
}

/// `p⁻¹(b) → p/b → p/b′ → p⁻¹(b′)` for `beta: b → b′`.
pub fn base_change(p: &CatFunctor, cleavage: &Cleavage, beta: ArrId) -> CatFunctor {
    let base = &*p.target;
    let (b, b2) = (base.src(beta), base.tgt(beta));
    let (fib, fib2) = (&cleavage.fibers[b], &cleavage.fibers[b2]);
    let slice2 = &cleavage.slices[b2];
    let left = &cleavage.adjunctions[b2].left;
    let pushed: Vec<ObjId> = fib
        .objects
        .iter()
        .map(|&e| slice2.object(e, beta).expect("p(e) = b"))
        .collect();
    let obj_map = pushed.iter().map(|&o| left.obj(o)).collect();
    let arr_map = (0..fib.category.num_arrows())
        .map(|k| {
            let f = fib.category.arrow(k);
            let a = slice2
                .arrow(pushed[f.src], pushed[f.tgt], fib.arrows[k])
                .expect("arrows over id_b stay over beta");
            left.arr(a)
        })
        .collect();
    CatFunctor::new(fib.category.clone(), fib2.category.clone(), obj_map, arr_map)
}
