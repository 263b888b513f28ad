//! Workbench for the two-parameter deformed Heisenberg Hopf algebra `U_{h,w}(H(4))`.
//!
//! The symbolic layer ([`series`], [`pbw`], [`hopf_verify`], [`classical`], [`rtt`])
//! works over exact rationals truncated in the deformation parameters `h` and `w`.
//! The numeric layer ([`fock`], [`braid`]) evaluates the universal R-matrix in the
//! Fock representations and builds braid-group representations and link invariants.

pub mod braid;
pub mod cli;
pub mod classical;
pub mod fock;
pub mod error;
pub mod hopf_verify;
pub mod pbw;
pub mod rtt;
pub mod series;

pub use error::{Error, Result};
pub use series::{Param, TruncatedSeries, Truncation};
