//! Finite strict 2-categories, normal lax functors and Cat-valued functors.

mod catvalued;
mod enumerate;
pub mod json;
mod lax;
mod monoidal;
pub mod samples;
mod twocategory;

pub use catvalued::{representable, CatValuedLaxFunctor, Representable};
pub use enumerate::{enumerate_lax_functors, enumerate_two_functors};
pub use lax::{validate_lax, NormalLaxFunctor, TwoFunctor};
pub use monoidal::{from_monoidal, MonoidalCategory};
pub use twocategory::{CellId, Fin2Category, HomCategory};
