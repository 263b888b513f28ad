//! The algebra on the PBW basis `E^i Ap^j N^k A^l`, its tensor powers and Hopf maps.

mod algebra;
mod element;
pub mod expr;
mod hopf;

pub use algebra::{Algebra, Preset};
pub use element::{Generator, LinComb, Monomial, PbwElement, TensorElement, TensorKey};
pub use expr::{build, Value};
pub use hopf::HopfStructure;
