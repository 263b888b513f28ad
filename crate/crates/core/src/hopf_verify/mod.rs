//! Exact verification of the Hopf, quasitriangular, twist and ribbon identities.
//!
//! Every check expands both sides of an identity at the algebra's truncation and
//! counts the surviving terms of their difference; a check passes when none survive.

mod checks;
pub mod elements;
mod report;

pub use checks::{
    algebra_for, check_casimir, check_hopf_axioms, check_preset_degeneration, check_qybe,
    check_quasitriangular, check_r_twist_form, check_spectral_qybe, check_twist_conditions,
    check_u_ribbon, check_v_element,
};
pub use report::{CheckReport, Recorder, Residual};
