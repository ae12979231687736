//! Comma categories, prefibrations and cleavages, the Grothendieck
//! construction, and homotopy fibers of 2-functors and lax functors.

mod comma;
mod grothendieck;
mod homotopy;

pub use comma::{
    base_change, check_prefibration, comma, fiber, fiber_inclusion, Cleavage, CommaCategory, Fiber, PrefibrationCheck,
};
pub use grothendieck::{canonical_cleavage, grothendieck, Grothendieck};
pub use homotopy::{homotopy_fiber_2functor, homotopy_fiber_lax, right_homotopy_fiber, HomotopyFiber};
