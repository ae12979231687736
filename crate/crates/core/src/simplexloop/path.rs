use std::collections::HashMap;
use std::sync::Arc;

use super::delta::{sup_lax, Delta2};
use crate::catcore::{ArrId, CatFunctor, FinCategory, ObjId, OrdinalMap};
use crate::fibers::{
    base_change, canonical_cleavage, fiber, grothendieck, homotopy_fiber_lax, Grothendieck, HomotopyFiber,
};
use crate::twocat::{CatValuedLaxFunctor, NormalLaxFunctor, Representable};
use crate::{Error, Result};

/// The categorical path fibration `C(c,c)^op → E → Δ//C` over a truncation.
#[derive(Clone, Debug)]
pub struct PathTotal {
    pub delta: Delta2,
    pub basepoint: ObjId,
    pub sup: NormalLaxFunctor,
    /// `L = h^c ∘ sup^op` over `(Δ//C)^op`.
    pub path_functor: CatValuedLaxFunctor,
    /// `L ⋊ (Δ//C)^op` with its projection `q`.
    pub grothendieck: Grothendieck,
    /// `E`, the opposite of the Grothendieck construction.
    pub total: Arc<FinCategory>,
    /// `p: E → Δ//C`.
    pub projection: CatFunctor,
}

pub fn path_total(delta: &Delta2, c: ObjId) -> Result<PathTotal> {
    let two = &delta.base;
    two.require_connected()?;
    if c >= two.num_objects() {
        return Err(Error::UnknownName {
            kind: "object",
            name: c.to_string(),
        });
    }
    let sup = sup_lax(delta);
    let rep = Representable::new(two.clone(), c);
    let base = Arc::new(delta.category.opposite());
    let values: Vec<Arc<FinCategory>> = delta.objects.iter().map(|x| rep.value(x.last())).collect();
    let actions = sup.one_map.iter().map(|&f| rep.on_one_cell(f)).collect();
    // a pair (second, first) of (Δ//C)^op composes to first ∘ second in Δ//C
    let structural = base
        .composable_pairs()
        .map(|(second, first)| {
            let cell = sup.structural_cell(first, second);
            let from = two.hom(two.one_cell(sup.one_map[first]).tgt, c);
            from.one_cells
                .iter()
                .map(|&phi| two.local_cell(two.whisker_left(phi, cell)))
                .collect()
        })
        .collect();
    let path_functor = CatValuedLaxFunctor {
        base,
        values,
        actions,
        structural,
    };
    let grothendieck = grothendieck(&path_functor);
    let total = Arc::new(grothendieck.category.opposite());
    let projection = CatFunctor::new(
        total.clone(),
        delta.category.clone(),
        grothendieck.projection.obj_map.clone(),
        grothendieck.projection.arr_map.clone(),
    );
    Ok(PathTotal {
        delta: delta.clone(),
        basepoint: c,
        sup,
        path_functor,
        grothendieck,
        total,
        projection,
    })
}

impl PathTotal {
    /// The explicit isomorphism `p⁻¹(x) → C(x_n, c)^op`, if the tables agree.
    pub fn fiber_identification(&self, x: ObjId) -> Option<CatFunctor> {
        let g = &self.grothendieck;
        let fib = fiber(&self.projection, x);
        let value = Arc::new(self.path_functor.values[x].opposite());
        let obj_map = fib.objects.iter().map(|&e| g.objects[e].1).collect();
        let arr_map = fib.arrows.iter().map(|&k| g.arrows[k].1).collect();
        let iso = CatFunctor::new(fib.category.clone(), value, obj_map, arr_map);
        (iso.validate().is_empty() && iso.is_bijective()).then_some(iso)
    }

    /// Arrows of `Δ//C` whose base change on `q` differs from `L(arrow)`.
    pub fn base_change_mismatches(&self) -> Vec<ArrId> {
        let g = &self.grothendieck;
        let cleavage = canonical_cleavage(&self.path_functor, g);
        (0..self.path_functor.base.num_arrows())
            .filter(|&k| {
                let bc = base_change(&g.projection, &cleavage, k);
                let l = &self.path_functor.actions[k];
                bc.obj_map != l.obj_map || bc.arr_map != l.arr_map
            })
            .collect()
    }

    /// The explicit isomorphism `E → sup//c` on underlying categories.
    pub fn homotopy_fiber_identification(&self) -> Result<(HomotopyFiber, Option<CatFunctor>)> {
        let hf = homotopy_fiber_lax(&self.sup, self.basepoint)?;
        let g = &self.grothendieck;
        let two = &self.sup.target;
        let c = self.basepoint;
        let under = hf.category.underlying();
        let objects: HashMap<(ObjId, ArrId), ObjId> = hf.objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let ones: HashMap<(ObjId, ObjId, ArrId, ArrId), ArrId> = hf
            .one_cells
            .iter()
            .enumerate()
            .map(|(k, &(f, a))| ((under.src(k), under.tgt(k), f, a), k))
            .collect();
        let obj_map: Option<Vec<ObjId>> = g
            .objects
            .iter()
            .map(|&(x, phi)| {
                let global = two.hom(self.sup.obj_map[x], c).one_cells[phi];
                objects.get(&(x, global)).copied()
            })
            .collect();
        let Some(obj_map) = obj_map else {
            return Ok((hf, None));
        };
        let arr_map: Option<Vec<ArrId>> = (0..self.total.num_arrows())
            .map(|k| {
                let (alpha, h) = g.arrows[k];
                let (from, to) = (self.total.src(k), self.total.tgt(k));
                let hom = two.hom(self.sup.obj_map[g.objects[from].0], c);
                ones.get(&(obj_map[from], obj_map[to], alpha, hom.cells[h])).copied()
            })
            .collect();
        let iso = arr_map.and_then(|arr_map| {
            let f = CatFunctor::new(self.total.clone(), under.clone(), obj_map, arr_map);
            (f.validate().is_empty() && f.is_bijective()).then_some(f)
        });
        Ok((hf, iso))
    }

    /// `E → Δ//C` (one dimension higher) sending `(x, φ)` to `x` extended by `φ`.
    pub fn embedding(&self, extended: &Delta2) -> Option<CatFunctor> {
        let g = &self.grothendieck;
        let two = &self.sup.target;
        let c = self.basepoint;
        let chain = |e: ObjId| -> Option<ObjId> {
            let (x, phi) = g.objects[e];
            let x = &self.delta.objects[x];
            let mut arrows = x.arrows.clone();
            arrows.push(two.hom(x.last(), c).one_cells[phi]);
            extended.object(x.first(), &arrows)
        };
        let obj_map: Vec<ObjId> = (0..self.total.num_objects()).map(chain).collect::<Option<_>>()?;
        let arr_map: Vec<ArrId> = (0..self.total.num_arrows())
            .map(|k| {
                let (alpha, h) = g.arrows[k];
                let (a, cells) = &self.delta.arrows[alpha];
                let from = self.total.src(k);
                let hom = two.hom(self.sup.obj_map[g.objects[from].0], c);
                let mut values = a.values().to_vec();
                values.push(a.cod() + 1);
                let a_ext = OrdinalMap::new(a.cod() + 1, values)?;
                let mut cells = cells.clone();
                cells.push(hom.cells[h]);
                extended.arrow(obj_map[from], obj_map[self.total.tgt(k)], &a_ext, &cells)
            })
            .collect::<Option<_>>()?;
        Some(CatFunctor::new(
            self.total.clone(),
            extended.category.clone(),
            obj_map,
            arr_map,
        ))
    }
}
