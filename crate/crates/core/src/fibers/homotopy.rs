use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::{ArrId, Arrow, FinCategory, ObjId};
use crate::twocat::{CellId, Fin2Category, NormalLaxFunctor, TwoFunctor};
use crate::Result;

/// `u//d` with the data behind each object, 1-cell and 2-cell.
#[derive(Clone, Debug)]
pub struct HomotopyFiber {
    pub category: Arc<Fin2Category>,
    /// `(c, φ: u(c) → d)`, or `φ: d → u(c)` for the right fiber.
    pub objects: Vec<(ObjId, ArrId)>,
    /// `(f, α: φ′ u(f) ⇒ φ)`.
    pub one_cells: Vec<(ArrId, CellId)>,
    /// The 2-cell `β: f ⇒ f′` of the source behind each 2-cell.
    pub cells: Vec<CellId>,
}

/// Which composition rule to use for 1-cells, and on which side of `u` the
/// objects sit.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    Strict,
    Lax,
    /// `d//u`, strict.
    Right,
}

/// `(g, β) ∘ (f, α) = (gf, α • (β ∘ u(f)))`.
pub fn homotopy_fiber_2functor(u: &TwoFunctor, d: ObjId) -> Result<HomotopyFiber> {
    build(&u.to_lax(), d, Rule::Strict)
}

/// `(g, β) ∘ (f, α) = (gf, α • (β ∘ u(f)) • (φ″ ∘ u_{g,f}))`.
pub fn homotopy_fiber_lax(u: &NormalLaxFunctor, d: ObjId) -> Result<HomotopyFiber> {
    build(u, d, Rule::Lax)
}

fn build(u: &NormalLaxFunctor, d: ObjId, rule: Rule) -> Result<HomotopyFiber> {
    let (c, t) = (&*u.source, &*u.target);
    let cu = c.underlying();
    let tu = t.underlying();
    let objects: Vec<(ObjId, ArrId)> = c
        .objects()
        .flat_map(|x| {
            let (from, to) = if rule == Rule::Right {
                (d, u.obj_map[x])
            } else {
                (u.obj_map[x], d)
            };
            tu.hom(from, to).map(move |phi| (x, phi))
        })
        .collect();
    let names: Vec<String> = objects
        .iter()
        .map(|&(x, phi)| format!("({},{})", c.object_name(x), t.one_cell_name(phi)))
        .collect();

    let mut one_cells = Vec::new();
    let mut arrows = Vec::new();
    let mut one_index: HashMap<(ObjId, ObjId, ArrId, CellId), ArrId> = HashMap::new();
    for (s, &(x, phi)) in objects.iter().enumerate() {
        for (r, &(y, psi)) in objects.iter().enumerate() {
            for f in cu.hom(x, y) {
                let candidates: Vec<CellId> = if rule == Rule::Right {
                    t.cells_between(psi, t.compose1(u.one_map[f], phi)).collect()
                } else {
                    t.cells_between(t.compose1(psi, u.one_map[f]), phi).collect()
                };
                for alpha in candidates {
                    one_index.insert((s, r, f, alpha), arrows.len());
                    let is_identity = cu.is_identity(f) && t.is_identity_cell(alpha) && s == r;
                    arrows.push(Arrow {
                        name: if is_identity {
                            format!("id_{}", names[s])
                        } else {
                            format!(
                                "({},{}):{}->{}",
                                c.one_cell_name(f),
                                t.cell_name(alpha),
                                names[s],
                                names[r]
                            )
                        },
                        src: s,
                        tgt: r,
                        is_identity,
                    });
                    one_cells.push((f, alpha));
                }
            }
        }
    }
    let ends: Vec<(ObjId, ObjId)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let underlying = FinCategory::assemble(names, arrows.clone(), |second, first| {
        let (g, beta) = one_cells[second];
        let (f, alpha) = one_cells[first];
        let (s, r) = (ends[first].0, ends[second].1);
        let gf = cu.try_compose(g, f)?;
        if rule == Rule::Right {
            // (u(g) ∘ α) • β
            let cell = t.try_vcomp(t.try_hcomp(t.id2(u.one_map[g]), alpha)?, beta)?;
            return one_index.get(&(s, r, gf, cell)).copied();
        }
        let mut cell = t.try_vcomp(alpha, t.try_hcomp(beta, t.id2(u.one_map[f]))?)?;
        if rule == Rule::Lax {
            let phi2 = objects[r].1;
            cell = t.try_vcomp(cell, t.try_hcomp(t.id2(phi2), u.structural_cell(g, f))?)?;
        }
        one_index.get(&(s, r, gf, cell)).copied()
    });

    // 2-cells β: (f, α) ⇒ (f′, α′) with α′ • (φ′ ∘ u(β)) = α, or (u(β) ∘ φ) • α = α′ on the right
    let mut cells = Vec::new();
    let mut cell_arrows = Vec::new();
    let mut cell_index: HashMap<(ArrId, ArrId, CellId), CellId> = HashMap::new();
    for (i, &(f, alpha)) in one_cells.iter().enumerate() {
        for (j, &(f2, alpha2)) in one_cells.iter().enumerate() {
            if ends[i] != ends[j] {
                continue;
            }
            let psi = objects[ends[i].1].1;
            let phi = objects[ends[i].0].1;
            for beta in c.cells_between(f, f2) {
                let holds = if rule == Rule::Right {
                    t.try_hcomp(u.two_map[beta], t.id2(phi))
                        .and_then(|w| t.try_vcomp(w, alpha))
                        == Some(alpha2)
                } else {
                    t.try_hcomp(t.id2(psi), u.two_map[beta])
                        .and_then(|w| t.try_vcomp(alpha2, w))
                        == Some(alpha)
                };
                if !holds {
                    continue;
                }
                let is_identity = i == j && c.is_identity_cell(beta);
                cell_index.insert((i, j, beta), cells.len());
                cell_arrows.push(Arrow {
                    name: if is_identity {
                        format!("id_{}", arrows[i].name)
                    } else {
                        format!("{}:{}=>{}", c.cell_name(beta), arrows[i].name, arrows[j].name)
                    },
                    src: i,
                    tgt: j,
                    is_identity,
                });
                cells.push(beta);
            }
        }
    }
    let cell_ends: Vec<(ArrId, ArrId)> = cell_arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let vertical_names = arrows.iter().map(|a| a.name.clone()).collect();
    let vertical = FinCategory::assemble(vertical_names, cell_arrows, |second, first| {
        let beta = c.try_vcomp(cells[second], cells[first])?;
        cell_index
            .get(&(cell_ends[first].0, cell_ends[second].1, beta))
            .copied()
    });
    let under = underlying.clone();
    let category = Fin2Category::from_parts(underlying, vertical, |second, first| {
        let src = under.try_compose(cell_ends[second].0, cell_ends[first].0)?;
        let tgt = under.try_compose(cell_ends[second].1, cell_ends[first].1)?;
        let beta = c.try_hcomp(cells[second], cells[first])?;
        cell_index.get(&(src, tgt, beta)).copied()
    })?;
    Ok(HomotopyFiber {
        category: Arc::new(category),
        objects,
        one_cells,
        cells,
    })
}

/// The right fiber `d//u`: objects `(c, φ: d → u(c))`, 1-cells
/// `(f, α: φ′ ⇒ u(f)φ)` composed as `(g, β) ∘ (f, α) = (gf, (u(g) ∘ α) • β)`,
/// 2-cells `β: f ⇒ f′` with `(u(β) ∘ φ) • α = α′`.
pub fn right_homotopy_fiber(u: &TwoFunctor, d: ObjId) -> Result<HomotopyFiber> {
    build(&u.to_lax(), d, Rule::Right)
}
