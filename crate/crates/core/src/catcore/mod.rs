//! Finite categories, functors and natural transformations.

mod category;
mod constructions;
mod functor;
pub mod json;
mod ordinal;
pub mod search;

pub use category::{ArrId, Arrow, CategoryBuilder, FinCategory, ObjId};
pub use constructions::{cyclic_group, discrete, fence, walking_isomorphism};
pub use functor::{CatFunctor, NatTransf};
pub use ordinal::{ordinal, simplex_category, OrdinalMap};
pub use search::{enumerate_functors, find_isomorphism, Adjunction, DEFAULT_BUDGET};
