use std::sync::Arc;

use crate::catcore::{ArrId, Arrow, FinCategory, ObjId};
use crate::report::{Axiom, ValidationReport};
use crate::{Error, Result};

/// Identifier of a 2-cell (an arrow of the vertical category).
pub type CellId = usize;

const NONE: u32 = u32::MAX;

/// One hom-category `C(c, c′)` as a standalone [`FinCategory`] with the
/// embeddings of its objects (1-cells) and arrows (2-cells).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCategory {
    pub category: Arc<FinCategory>,
    pub one_cells: Vec<ArrId>,
    pub cells: Vec<CellId>,
}

/// A finite strict 2-category.
///
/// The 1-cells are the arrows of the `underlying` category, whose composition
/// is the horizontal composition of 1-cells. The 2-cells are the arrows of the
/// `vertical` category, whose objects are the 1-cells (same identifiers) and
/// whose composition is `•`. Horizontal composition of 2-cells is a dense table
/// laid out like the composition table of a category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fin2Category {
    underlying: Arc<FinCategory>,
    vertical: Arc<FinCategory>,
    /// For a cell between 1-cells `c → c′`: (c, c′).
    cell_ends: Vec<(ObjId, ObjId)>,
    /// Cells whose 1-cells end at the object, and their positions there.
    cells_into: Vec<Vec<CellId>>,
    into_pos: Vec<u32>,
    h_offset: Vec<usize>,
    hcomp: Vec<u32>,
    homs: Vec<HomCategory>,
    local_one: Vec<usize>,
    local_cell: Vec<usize>,
}

impl Fin2Category {
    /// Assembles a 2-category from its underlying and vertical categories;
    /// `hcomp(β, α)` is asked for every horizontally composable pair of cells
    /// except those involving identity cells of identity 1-cells and pairs
    /// of identity cells, which are filled in as units and as identities.
    pub fn from_parts(
        underlying: FinCategory,
        vertical: FinCategory,
        mut hcomp: impl FnMut(CellId, CellId) -> Option<CellId>,
    ) -> Result<Fin2Category> {
        let mut report = ValidationReport::new();
        if vertical.num_objects() != underlying.num_arrows() {
            report.push(
                Axiom::Alignment,
                vec![],
                format!(
                    "{} vertical objects for {} 1-cells",
                    vertical.num_objects(),
                    underlying.num_arrows()
                ),
            );
        } else {
            for (a, cell) in vertical.arrows().iter().enumerate() {
                let (f, g) = (underlying.arrow(cell.src), underlying.arrow(cell.tgt));
                if (f.src, f.tgt) != (g.src, g.tgt) {
                    report.push(
                        Axiom::Alignment,
                        vec![vertical.arrow_name(a).to_string()],
                        "2-cell between 1-cells that are not parallel",
                    );
                }
            }
        }
        report.into_result()?;

        let n = underlying.num_objects();
        let cell_ends: Vec<(ObjId, ObjId)> = vertical
            .arrows()
            .iter()
            .map(|a| {
                let f = underlying.arrow(a.src);
                (f.src, f.tgt)
            })
            .collect();
        let mut cells_into = vec![Vec::new(); n];
        let mut into_pos = vec![0u32; cell_ends.len()];
        for (a, &(_, t)) in cell_ends.iter().enumerate() {
            into_pos[a] = cells_into[t].len() as u32;
            cells_into[t].push(a);
        }
        let mut h_offset = Vec::with_capacity(cell_ends.len());
        let mut total = 0;
        for &(s, _) in &cell_ends {
            h_offset.push(total);
            total += cells_into[s].len();
        }
        let mut table = vec![NONE; total];
        for (beta, &(s, _)) in cell_ends.iter().enumerate() {
            for (k, &alpha) in cells_into[s].iter().enumerate() {
                let value = unit_or_identity(&underlying, &vertical, beta, alpha).or_else(|| hcomp(beta, alpha));
                if let Some(v) = value {
                    table[h_offset[beta] + k] = v as u32;
                }
            }
        }

        let mut homs = Vec::with_capacity(n * n);
        let mut local_one = vec![0; underlying.num_arrows()];
        let mut local_cell = vec![0; vertical.num_arrows()];
        for c in 0..n {
            for d in 0..n {
                let ones: Vec<ArrId> = underlying.hom(c, d).collect();
                let (cat, cells) = vertical.full_subcategory(&ones);
                for (i, &f) in ones.iter().enumerate() {
                    local_one[f] = i;
                }
                for (i, &a) in cells.iter().enumerate() {
                    local_cell[a] = i;
                }
                homs.push(HomCategory {
                    category: Arc::new(cat),
                    one_cells: ones,
                    cells,
                });
            }
        }
        Ok(Fin2Category {
            underlying: Arc::new(underlying),
            vertical: Arc::new(vertical),
            cell_ends,
            cells_into,
            into_pos,
            h_offset,
            hcomp: table,
            homs,
            local_one,
            local_cell,
        })
    }

    /// A category viewed as a 2-category with identity 2-cells only.
    pub fn from_category(c: &FinCategory) -> Fin2Category {
        let vertical = discrete_on_arrows(c);
        let under = c.clone();
        Fin2Category::from_parts(c.clone(), vertical, |beta, alpha| {
            // only identity cells exist; cell id = 1-cell id
            under.try_compose(beta, alpha)
        })
        .expect("discrete vertical structure is aligned")
    }

    pub fn underlying(&self) -> &Arc<FinCategory> {
        &self.underlying
    }

    pub fn vertical(&self) -> &Arc<FinCategory> {
        &self.vertical
    }

    pub fn num_objects(&self) -> usize {
        self.underlying.num_objects()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        self.underlying.objects()
    }

    pub fn object_name(&self, c: ObjId) -> &str {
        self.underlying.object_name(c)
    }

    pub fn num_one_cells(&self) -> usize {
        self.underlying.num_arrows()
    }

    pub fn num_cells(&self) -> usize {
        self.vertical.num_arrows()
    }

    pub fn one_cell(&self, f: ArrId) -> &Arrow {
        self.underlying.arrow(f)
    }

    pub fn one_cell_name(&self, f: ArrId) -> &str {
        self.underlying.arrow_name(f)
    }

    pub fn cell_name(&self, a: CellId) -> &str {
        self.vertical.arrow_name(a)
    }

    pub fn id1(&self, c: ObjId) -> ArrId {
        self.underlying.identity(c)
    }

    pub fn id2(&self, f: ArrId) -> CellId {
        self.vertical.identity(f)
    }

    pub fn is_identity_cell(&self, a: CellId) -> bool {
        self.vertical.is_identity(a)
    }

    /// Source 1-cell of a 2-cell.
    pub fn cell_src(&self, a: CellId) -> ArrId {
        self.vertical.src(a)
    }

    /// Target 1-cell of a 2-cell.
    pub fn cell_tgt(&self, a: CellId) -> ArrId {
        self.vertical.tgt(a)
    }

    /// Objects `(c, c′)` of the hom-category containing the cell.
    pub fn cell_ends(&self, a: CellId) -> (ObjId, ObjId) {
        self.cell_ends[a]
    }

    /// Horizontal composite of 1-cells `g ∘ f`.
    pub fn compose1(&self, g: ArrId, f: ArrId) -> ArrId {
        self.underlying.compose(g, f)
    }

    /// Vertical composite `β • α`.
    pub fn vcomp(&self, beta: CellId, alpha: CellId) -> CellId {
        self.vertical.compose(beta, alpha)
    }

    pub fn try_vcomp(&self, beta: CellId, alpha: CellId) -> Option<CellId> {
        self.vertical.try_compose(beta, alpha)
    }

    /// Index of a horizontally composable pair `(β, α)` in the dense table.
    pub fn hpair_index(&self, beta: CellId, alpha: CellId) -> Option<usize> {
        if self.cell_ends[alpha].1 != self.cell_ends[beta].0 {
            return None;
        }
        Some(self.h_offset[beta] + self.into_pos[alpha] as usize)
    }

    pub fn try_hcomp(&self, beta: CellId, alpha: CellId) -> Option<CellId> {
        let v = self.hcomp[self.hpair_index(beta, alpha)?];
        (v != NONE).then_some(v as usize)
    }

    /// Horizontal composite `β ∘ α`.
    pub fn hcomp(&self, beta: CellId, alpha: CellId) -> CellId {
        match self.try_hcomp(beta, alpha) {
            Some(x) => x,
            None => panic!(
                "no horizontal composite for {} ∘ {}",
                self.cell_name(beta),
                self.cell_name(alpha)
            ),
        }
    }

    /// Whiskering `g ∘ α`.
    pub fn whisker_left(&self, g: ArrId, alpha: CellId) -> CellId {
        self.hcomp(self.id2(g), alpha)
    }

    /// Whiskering `β ∘ f`.
    pub fn whisker_right(&self, beta: CellId, f: ArrId) -> CellId {
        self.hcomp(beta, self.id2(f))
    }

    pub fn horizontal_pairs(&self) -> impl Iterator<Item = (CellId, CellId)> + '_ {
        (0..self.num_cells()).flat_map(move |beta| {
            self.cells_into[self.cell_ends[beta].0]
                .iter()
                .map(move |&alpha| (beta, alpha))
        })
    }

    pub fn hom(&self, c: ObjId, d: ObjId) -> &HomCategory {
        &self.homs[c * self.num_objects() + d]
    }

    /// Position of a 1-cell inside its hom-category.
    pub fn local_one_cell(&self, f: ArrId) -> ObjId {
        self.local_one[f]
    }

    /// Position of a 2-cell inside its hom-category.
    pub fn local_cell(&self, a: CellId) -> ArrId {
        self.local_cell[a]
    }

    /// 2-cells `f ⇒ g`.
    pub fn cells_between(&self, f: ArrId, g: ArrId) -> impl Iterator<Item = CellId> + '_ {
        self.vertical.hom(f, g)
    }

    pub fn is_locally_discrete(&self) -> bool {
        self.vertical.is_discrete()
    }

    /// Checks the underlying and vertical categories, typing and totality of
    /// horizontal composition, its compatibility with identities and vertical
    /// composition (interchange), and its strict associativity and unitality.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.underlying.validate().scoped("1-cells");
        report.extend(self.vertical.validate().scoped("vertical composition"));
        if !report.is_empty() {
            return report;
        }
        let names =
            |cells: &[CellId]| -> Vec<String> { cells.iter().map(|&a| self.cell_name(a).to_string()).collect() };
        let mut typed = true;
        for (beta, alpha) in self.horizontal_pairs() {
            let Some(x) = self.try_hcomp(beta, alpha) else {
                typed = false;
                report.push(
                    Axiom::HorizontalTotality,
                    names(&[beta, alpha]),
                    "missing horizontal composite",
                );
                continue;
            };
            let src = self.compose1(self.cell_src(beta), self.cell_src(alpha));
            let tgt = self.compose1(self.cell_tgt(beta), self.cell_tgt(alpha));
            if self.cell_src(x) != src || self.cell_tgt(x) != tgt {
                typed = false;
                report.push(
                    Axiom::Typing,
                    names(&[beta, alpha, x]),
                    "horizontal composite has wrong source or target",
                );
            }
        }
        if !typed {
            return report;
        }
        for (beta, alpha) in self.horizontal_pairs() {
            let x = self.hcomp(beta, alpha);
            if self.is_identity_cell(beta) && self.is_identity_cell(alpha) && !self.is_identity_cell(x) {
                report.push(
                    Axiom::HorizontalIdentity,
                    names(&[beta, alpha]),
                    "id ∘ id is not an identity",
                );
            }
            // interchange over all continuations α′: f′ ⇒ f″, β′: g′ ⇒ g″
            for &alpha2 in self.vertical.outgoing(self.cell_tgt(alpha)) {
                for &beta2 in self.vertical.outgoing(self.cell_tgt(beta)) {
                    let lhs = self.hcomp(self.vcomp(beta2, beta), self.vcomp(alpha2, alpha));
                    let rhs = self.vcomp(self.hcomp(beta2, alpha2), x);
                    if lhs != rhs {
                        report.push(
                            Axiom::Interchange,
                            names(&[beta2, beta, alpha2, alpha]),
                            "(β′•β)∘(α′•α) ≠ (β′∘α′)•(β∘α)",
                        );
                    }
                }
            }
            // associativity against every γ composable on the left
            let c2 = self.cell_ends[beta].1;
            for gamma in 0..self.num_cells() {
                if self.cell_ends[gamma].0 != c2 {
                    continue;
                }
                let lhs = self.hcomp(self.hcomp(gamma, beta), alpha);
                let rhs = self.hcomp(gamma, x);
                if lhs != rhs {
                    report.push(
                        Axiom::HorizontalAssociativity,
                        names(&[gamma, beta, alpha]),
                        "(γ∘β)∘α ≠ γ∘(β∘α)",
                    );
                }
            }
        }
        for alpha in 0..self.num_cells() {
            let (c, d) = self.cell_ends[alpha];
            let left = self.hcomp(self.id2(self.id1(d)), alpha);
            let right = self.hcomp(alpha, self.id2(self.id1(c)));
            if left != alpha || right != alpha {
                report.push(
                    Axiom::HorizontalUnit,
                    names(&[alpha]),
                    "identity 2-cell of an identity 1-cell is not a unit",
                );
            }
        }
        report
    }

    /// Reverses the 1-cells: `C^op(c, c′) = C(c′, c)`. Identifiers are kept.
    pub fn op2(&self) -> Fin2Category {
        Fin2Category::from_parts(self.underlying.opposite(), (*self.vertical).clone(), |beta, alpha| {
            self.try_hcomp(alpha, beta)
        })
        .expect("opposite of an aligned 2-category is aligned")
    }

    /// Reverses the 2-cells: `C′(c, c′) = C(c, c′)^op`. Identifiers are kept.
    pub fn prime(&self) -> Fin2Category {
        Fin2Category::from_parts((*self.underlying).clone(), self.vertical.opposite(), |beta, alpha| {
            self.try_hcomp(beta, alpha)
        })
        .expect("prime of an aligned 2-category is aligned")
    }

    /// Table equality including the horizontal composition of cells.
    pub fn same_tables(&self, other: &Fin2Category) -> bool {
        self == other
    }

    /// Connectivity of the undirected graph of 1-cells.
    pub fn is_connected(&self) -> bool {
        self.underlying.connected_components().0 <= 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        let (n, comp) = self.underlying.connected_components();
        if n <= 1 {
            return Ok(());
        }
        let stray = comp.iter().position(|&k| k != 0).unwrap_or(0);
        Err(Error::Disconnected {
            detail: format!(
                "objects {} and {} are not linked by a chain of 1-cells",
                self.object_name(0),
                self.object_name(stray)
            ),
        })
    }
}

/// Identity cells of identity 1-cells act as units; pairs of identity cells
/// compose to the identity of the composite 1-cell.
fn unit_or_identity(underlying: &FinCategory, vertical: &FinCategory, beta: CellId, alpha: CellId) -> Option<CellId> {
    let is_unit = |a: CellId| vertical.is_identity(a) && underlying.is_identity(vertical.src(a));
    if is_unit(alpha) {
        Some(beta)
    } else if is_unit(beta) {
        Some(alpha)
    } else if vertical.is_identity(beta) && vertical.is_identity(alpha) {
        let gf = underlying.try_compose(vertical.src(beta), vertical.src(alpha))?;
        Some(vertical.identity(gf))
    } else {
        None
    }
}

/// Discrete category whose objects are the arrows of `c`; identity cell names
/// are `id_<arrow>`. Object `k` and its identity cell both have identifier `k`.
pub(crate) fn discrete_on_arrows(c: &FinCategory) -> FinCategory {
    let objects = c.arrows().iter().map(|a| a.name.clone()).collect();
    let arrows = c
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| Arrow {
            name: format!("id_{}", a.name),
            src: k,
            tgt: k,
            is_identity: true,
        })
        .collect();
    FinCategory::assemble(objects, arrows, |g, _| Some(g))
}
