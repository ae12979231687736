//! File-driven command-line front end.
//!
//! Every subcommand produces a [`Report`] which is printed either as text or
//! as JSON; the JSON form deserializes back into the same `Report`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::catcore::json::{parse_category, CategoryFile};
use crate::catcore::{CatFunctor, FinCategory, ObjId, DEFAULT_BUDGET};
use crate::fibers::{comma, grothendieck, homotopy_fiber_lax};
use crate::report::ValidationReport;
use crate::simplexloop::{
    condition_q, deloop_check, delta2, loop_consistency, sup_lax, ConditionQReport, DeloopReport, LoopReport,
};
use crate::simplicial::{
    components, diagonal, geometric_nerve, homology, homology_mod, nerve, two_nerve, HomologySummary,
    TruncatedSimplicialSet,
};
use crate::subdivision::{sd2_is_poset, subdivide, SubdivisionMode};
use crate::tilde::{tilde, universal_property_check, UniversalPropertyReport};
use crate::twocat::json::{parse_two_category, TwoCategoryFile};
use crate::twocat::{representable, validate_lax, Fin2Category, MonoidalCategory};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "loopcat",
    version,
    about = "Finite (2-)categories, nerves, subdivision and loop-space checks"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation dimension N.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_dim: usize,
    /// Highest homology degree; defaults to N − 1 and may not exceed it.
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Compute homology with coefficients in F_p instead of the integers.
    #[arg(long = "mod", global = true, value_name = "P")]
    pub modulus: Option<u64>,
    /// Enumeration budget for functor searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Coset budget for π₁ order computations.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub coset_budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Basepoint object, by name; the first object when omitted.
    #[arg(long, global = true)]
    pub basepoint: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a category or 2-category file.
    Validate { input: PathBuf },
    /// Nondegenerate simplex counts of the nerve.
    Nerve { input: PathBuf },
    /// Nondegenerate simplex counts of the geometric nerve.
    Gnerve { input: PathBuf },
    /// Bisimplex counts of the 2-nerve and its diagonal.
    Nerve2 { input: PathBuf },
    /// Homology of the nerve (geometric nerve for 2-categories).
    Homology { input: PathBuf },
    /// The subdivision sd(C); exact for loop-free C, truncated at N otherwise.
    Subdivide { input: PathBuf },
    /// Whether sd(sd(C)) is a poset.
    Sd2poset { input: PathBuf },
    /// The 2-category C̃ of a loop-free category.
    Tilde { input: PathBuf },
    /// Lax functors C ⇝ D against 2-functors C̃ → D.
    Univcheck { input: PathBuf, target: PathBuf },
    /// The slice C/d at the basepoint.
    Comma { input: PathBuf },
    /// The Grothendieck construction of the representable at the basepoint.
    Groth { input: PathBuf },
    /// The homotopy fiber sup//c of sup: Δ//C ⇝ C.
    Hofiber { input: PathBuf },
    /// The category of simplices Δ//C truncated at N.
    Simplexcat { input: PathBuf },
    /// Condition Q at the basepoint.
    Condq { input: PathBuf },
    /// π₀ of the endomorphism category against π₁ of the classifying space.
    Loopcheck { input: PathBuf },
    /// The delooping criteria for a one-object 2-category.
    Deloop { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Category,
    TwoCategory,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidateReport {
    pub kind: InputKind,
    pub objects: usize,
    pub one_cells: usize,
    pub cells: usize,
    pub violations: ValidationReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NerveKind {
    Nerve,
    Geometric,
    Diagonal,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NerveReport {
    pub kind: NerveKind,
    pub truncation: usize,
    /// Nondegenerate simplices per dimension.
    pub counts: Vec<usize>,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BisimplicialReport {
    pub truncation: usize,
    /// `counts[p][q]`, degenerate bisimplices included.
    pub counts: Vec<Vec<usize>>,
    pub diagonal: NerveReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyReport {
    pub of: NerveKind,
    pub summary: HomologySummary,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionReport {
    pub mode: SubdivisionMode,
    pub is_poset: bool,
    pub category: CategoryFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sd2PosetReport {
    pub is_poset: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TildeReport {
    pub eta_is_lax: bool,
    pub components_have_initial_objects: bool,
    pub category: TwoCategoryFile,
}

/// A 1-category built by `comma`, `groth` or `simplexcat`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub category: CategoryFile,
    /// Extra checks run on the construction, by name.
    pub checks: Vec<(String, bool)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HofiberReport {
    pub truncation: usize,
    pub basepoint: String,
    pub objects: usize,
    pub one_cells: usize,
    pub cells: usize,
    pub valid: bool,
    pub underlying: CategoryFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", content = "report", rename_all = "snake_case")]
pub enum Report {
    Validate(ValidateReport),
    Nerve(NerveReport),
    Nerve2(BisimplicialReport),
    Homology(HomologyReport),
    Subdivide(SubdivisionReport),
    Sd2poset(Sd2PosetReport),
    Tilde(TildeReport),
    Univcheck(UniversalPropertyReport),
    Construction(ConstructionReport),
    Hofiber(HofiberReport),
    Condq(ConditionQReport),
    Loopcheck(LoopReport),
    Deloop(DeloopReport),
}

impl Report {
    /// Whether the report itself records a validation failure.
    pub fn is_failure(&self) -> bool {
        matches!(self, Report::Validate(r) if !r.violations.is_empty())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_string(),
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize"),
        }
    }
}

fn category_summary(f: &mut fmt::Formatter<'_>, c: &CategoryFile) -> fmt::Result {
    writeln!(f, "{} objects, {} non-identity arrows", c.objects.len(), c.arrows.len())?;
    writeln!(f, "objects: {}", c.objects.join(" "))?;
    for a in &c.arrows {
        writeln!(f, "  {}: {} -> {}", a.name, a.src, a.tgt)?;
    }
    Ok(())
}

impl fmt::Display for NerveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts.iter().map(usize::to_string).collect();
        write!(
            f,
            "{:?} nerve, truncation {}: nondegenerate simplices [{}], {} components",
            self.kind,
            self.truncation,
            counts.join(", "),
            self.components
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Validate(r) => {
                writeln!(
                    f,
                    "{:?}: {} objects, {} 1-cells, {} 2-cells",
                    r.kind, r.objects, r.one_cells, r.cells
                )?;
                if r.violations.is_empty() {
                    write!(f, "valid")
                } else {
                    write!(f, "INVALID\n{}", r.violations)
                }
            }
            Report::Nerve(r) => write!(f, "{r}"),
            Report::Nerve2(r) => {
                writeln!(f, "2-nerve, truncation {}", r.truncation)?;
                for (p, row) in r.counts.iter().enumerate() {
                    let row: Vec<String> = row.iter().map(usize::to_string).collect();
                    writeln!(f, "  p={p}: {}", row.join(" "))?;
                }
                write!(f, "{}", r.diagonal)
            }
            Report::Homology(r) => write!(f, "{:?} nerve\n{}", r.of, r.summary),
            Report::Subdivide(r) => {
                writeln!(f, "sd(C), mode {:?}", r.mode)?;
                category_summary(f, &r.category)?;
                write!(f, "poset: {}", r.is_poset)
            }
            Report::Sd2poset(r) => write!(f, "{}", r.is_poset),
            Report::Tilde(r) => {
                let c = &r.category;
                let one_cells: usize = c.homs.values().map(|h| h.objects.len()).sum();
                let cells: usize = c.homs.values().map(|h| h.arrows.len()).sum();
                writeln!(
                    f,
                    "C̃: {} objects, {one_cells} 1-cells, {cells} non-identity 2-cells",
                    c.objects.len()
                )?;
                writeln!(f, "η is a normal lax functor: {}", r.eta_is_lax)?;
                write!(
                    f,
                    "hom categories have initial objects: {}",
                    r.components_have_initial_objects
                )
            }
            Report::Univcheck(r) => {
                writeln!(
                    f,
                    "{} 2-functors C̃ → D, {} normal lax functors C ⇝ D",
                    r.two_functors, r.lax_functors
                )?;
                writeln!(f, "injective: {}, surjective: {}", r.injective, r.surjective)?;
                for line in &r.failures {
                    writeln!(f, "  {line}")?;
                }
                write!(f, "bijection: {}", r.bijection)
            }
            Report::Construction(r) => {
                writeln!(f, "{}", r.construction)?;
                category_summary(f, &r.category)?;
                let checks: Vec<String> = r.checks.iter().map(|(name, ok)| format!("{name}: {ok}")).collect();
                write!(f, "{}", checks.join("\n"))
            }
            Report::Hofiber(r) => {
                writeln!(f, "sup//{} over Δ//C truncated at {}", r.basepoint, r.truncation)?;
                writeln!(f, "{} objects, {} 1-cells, {} 2-cells", r.objects, r.one_cells, r.cells)?;
                write!(f, "valid: {}", r.valid)
            }
            Report::Condq(r) => write!(f, "{r}"),
            Report::Loopcheck(r) => write!(f, "{r}"),
            Report::Deloop(r) => write!(f, "{r}"),
        }
    }
}

/// A parsed input file, kept in the form it was written in.
pub enum Input {
    Category(FinCategory),
    TwoCategory(Fin2Category),
}

impl Input {
    pub fn load(path: &Path) -> Result<Input> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        let two = ["homs", "hcompose1", "hcompose2", "identities"]
            .iter()
            .any(|k| value.get(k).is_some());
        let parsed = if two {
            parse_two_category(&text).map(Input::TwoCategory)
        } else {
            parse_category(&text).map(|(c, _)| Input::Category(c))
        };
        parsed.map_err(|e| match e {
            Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Input::Category(c) => c.validate(),
            Input::TwoCategory(c) => c.validate(),
        }
    }

    /// The input as a 1-category; 2-categories must be locally discrete.
    pub fn category(&self) -> Result<Arc<FinCategory>> {
        match self {
            Input::Category(c) => Ok(Arc::new(c.clone())),
            Input::TwoCategory(c) if c.is_locally_discrete() => Ok(c.underlying().clone()),
            Input::TwoCategory(_) => Err(Error::Schema(
                "expected a 1-category, found a 2-category with non-identity 2-cells".into(),
            )),
        }
    }

    pub fn two_category(&self) -> Arc<Fin2Category> {
        match self {
            Input::Category(c) => Arc::new(Fin2Category::from_category(c)),
            Input::TwoCategory(c) => Arc::new(c.clone()),
        }
    }

    fn is_locally_discrete(&self) -> bool {
        match self {
            Input::Category(_) => true,
            Input::TwoCategory(c) => c.is_locally_discrete(),
        }
    }
}

/// Exit status for an error: 1 validation, 2 budget, 3 schema.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 2,
        Error::Schema(_) | Error::Json(_) | Error::UnknownName { .. } | Error::Io(_) => 3,
        Error::Invalid(_)
        | Error::NotLoopFree { .. }
        | Error::DegreeBound { .. }
        | Error::Disconnected { .. }
        | Error::NotParallel { .. } => 1,
    }
}

fn load_valid(path: &Path) -> Result<Input> {
    let input = Input::load(path)?;
    let report = input.validate();
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    Ok(input)
}

fn basepoint(config: &RunConfig, c: &Fin2Category) -> Result<ObjId> {
    match &config.basepoint {
        None => Ok(0),
        Some(name) => c.underlying().object_by_name(name).ok_or_else(|| Error::UnknownName {
            kind: "object",
            name: name.clone(),
        }),
    }
}

fn nerve_report(kind: NerveKind, x: &TruncatedSimplicialSet) -> NerveReport {
    NerveReport {
        kind,
        truncation: x.bound,
        counts: x.counts(),
        components: components(x),
    }
}

impl RunConfig {
    fn k_max(&self) -> Result<usize> {
        let reliable = self.max_dim.saturating_sub(1);
        let k = self.kmax.unwrap_or(reliable);
        if self.max_dim == 0 || k > reliable {
            return Err(Error::DegreeBound {
                requested: k,
                reliable,
                truncation: self.max_dim,
            });
        }
        Ok(k)
    }

    fn check_budgets(&self) -> Result<()> {
        if self.budget == 0 || self.coset_budget == 0 {
            return Err(Error::Schema("budgets must be positive".into()));
        }
        Ok(())
    }
}

pub fn run(config: &RunConfig) -> Result<Report> {
    config.check_budgets()?;
    let n = config.max_dim;
    match &config.command {
        Command::Validate { input } => {
            let input = Input::load(input);
            let (kind, counts, violations) = match input {
                Ok(Input::Category(c)) => (InputKind::Category, (c.num_objects(), c.num_arrows(), 0), c.validate()),
                Ok(Input::TwoCategory(c)) => (
                    InputKind::TwoCategory,
                    (c.num_objects(), c.num_one_cells(), c.num_cells()),
                    c.validate(),
                ),
                // assembling a 2-category already checks its tables
                Err(Error::Invalid(report)) => (InputKind::TwoCategory, (0, 0, 0), report),
                Err(e) => return Err(e),
            };
            Ok(Report::Validate(ValidateReport {
                kind,
                objects: counts.0,
                one_cells: counts.1,
                cells: counts.2,
                violations,
            }))
        }
        Command::Nerve { input } => {
            let c = load_valid(input)?.category()?;
            Ok(Report::Nerve(nerve_report(NerveKind::Nerve, &nerve(&c, n))))
        }
        Command::Gnerve { input } => {
            let c = load_valid(input)?.two_category();
            Ok(Report::Nerve(nerve_report(
                NerveKind::Geometric,
                &geometric_nerve(&c, n),
            )))
        }
        Command::Nerve2 { input } => {
            let c = load_valid(input)?.two_category();
            let b = two_nerve(&c, n);
            let counts = (0..=n).map(|p| (0..=n).map(|q| b.count(p, q)).collect()).collect();
            Ok(Report::Nerve2(BisimplicialReport {
                truncation: n,
                counts,
                diagonal: nerve_report(NerveKind::Diagonal, &diagonal(&b)),
            }))
        }
        Command::Homology { input } => {
            let input = load_valid(input)?;
            let k = config.k_max()?;
            let (of, x) = if input.is_locally_discrete() {
                (NerveKind::Nerve, nerve(&*input.category()?, n))
            } else {
                (NerveKind::Geometric, geometric_nerve(&input.two_category(), n))
            };
            let summary = match config.modulus {
                Some(p) => homology_mod(&x, k, p)?,
                None => homology(&x, k)?,
            };
            Ok(Report::Homology(HomologyReport { of, summary }))
        }
        Command::Subdivide { input } => {
            let c = load_valid(input)?.category()?;
            let mode = if c.is_loop_free() {
                SubdivisionMode::Exact
            } else {
                SubdivisionMode::Truncated(n)
            };
            let sd = subdivide(&c, mode)?;
            Ok(Report::Subdivide(SubdivisionReport {
                mode,
                is_poset: sd.category.is_poset(),
                category: CategoryFile::from_category(&sd.category),
            }))
        }
        Command::Sd2poset { input } => {
            let c = load_valid(input)?.category()?;
            Ok(Report::Sd2poset(Sd2PosetReport {
                is_poset: sd2_is_poset(&c)?,
            }))
        }
        Command::Tilde { input } => {
            let c = load_valid(input)?.category()?;
            let t = tilde(&c)?;
            Ok(Report::Tilde(TildeReport {
                eta_is_lax: validate_lax(&t.eta()).is_empty(),
                components_have_initial_objects: t.components_have_initial_objects(),
                category: TwoCategoryFile::from_two_category(&t.category),
            }))
        }
        Command::Univcheck { input, target } => {
            let c = load_valid(input)?.category()?;
            let d = load_valid(target)?.two_category();
            Ok(Report::Univcheck(universal_property_check(&c, &d, config.budget)?))
        }
        Command::Comma { input } => {
            let c = load_valid(input)?.category()?;
            let d = basepoint(config, &Fin2Category::from_category(&c))?;
            let k = comma(&CatFunctor::identity(c.clone()), d);
            let projection = k.projection(&c);
            Ok(Report::Construction(ConstructionReport {
                construction: format!("C/{}", c.object_name(d)),
                category: CategoryFile::from_category(&k.category),
                checks: vec![("projection is a functor".into(), projection.validate().is_empty())],
            }))
        }
        Command::Groth { input } => {
            let c = load_valid(input)?.two_category();
            let b = basepoint(config, &c)?;
            let f = representable(&c, b);
            let g = grothendieck(&f);
            Ok(Report::Construction(ConstructionReport {
                construction: format!("h^{} ⋊ C^op", c.object_name(b)),
                category: CategoryFile::from_category(&g.category),
                checks: vec![
                    ("functor is valid".into(), f.validate().is_empty()),
                    ("projection is a functor".into(), g.projection.validate().is_empty()),
                ],
            }))
        }
        Command::Hofiber { input } => {
            let c = load_valid(input)?.two_category();
            let b = basepoint(config, &c)?;
            let sup = sup_lax(&delta2(&c, n));
            let hf = homotopy_fiber_lax(&sup, b)?;
            Ok(Report::Hofiber(HofiberReport {
                truncation: n,
                basepoint: c.object_name(b).to_string(),
                objects: hf.category.num_objects(),
                one_cells: hf.category.num_one_cells(),
                cells: hf.category.num_cells(),
                valid: hf.category.validate().is_empty(),
                underlying: CategoryFile::from_category(hf.category.underlying()),
            }))
        }
        Command::Simplexcat { input } => {
            let c = load_valid(input)?.two_category();
            let d = delta2(&c, n);
            Ok(Report::Construction(ConstructionReport {
                construction: format!("Δ//C truncated at {n}"),
                category: CategoryFile::from_category(&d.category),
                checks: vec![(
                    "sup is a normal lax functor".into(),
                    validate_lax(&sup_lax(&d)).is_empty(),
                )],
            }))
        }
        Command::Condq { input } => {
            let c = load_valid(input)?.two_category();
            let b = basepoint(config, &c)?;
            Ok(Report::Condq(condition_q(&c, b, config.k_max()?)?))
        }
        Command::Loopcheck { input } => {
            let c = load_valid(input)?.two_category();
            let b = basepoint(config, &c)?;
            Ok(Report::Loopcheck(loop_consistency(&c, b, n, config.coset_budget)?))
        }
        Command::Deloop { input } => {
            let c = load_valid(input)?.two_category();
            let m = MonoidalCategory::from_one_object(&c)?;
            Ok(Report::Deloop(deloop_check(&m, config.k_max()?, config.coset_budget)?))
        }
    }
}
