//! Numeric representations: the truncated Fock modules `π_{e,n}` and the undeformed
//! three-dimensional representation, with the universal R-matrix evaluated in them.
//!
//! Two-fold tensor states `|r1⟩⊗|r2⟩` are indexed row-major as `r1 * D + r2`. R-matrix
//! elements `[R]_{r1,r2}^{r1',r2'}` sit at row `(r1', r2')` and column `(r1, r2)`, where the
//! output lives in the flipped space `V_{e2} ⊗ V_{e1}`.

mod export;
mod generators;
mod graded;
mod pi3;
mod ribbon;
mod rmatrix;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use export::{matrix_from_json, matrix_to_csv, matrix_to_json};
pub use generators::{check_rep_relations, rep_generators, Generators};
pub use graded::{rmatrix_oracle_graded, rinv_oracle_graded, WGraded};
pub use pi3::{
    pi3_eval, pi3_generators, pi3_rmatrix_from_universal, pi3_rmatrix_literal,
    pi3_rmatrix_numeric, Pi3, SeriesMatrix,
};
pub use ribbon::{conformal_weight, ribbon_spectrum, theta_inverse_matrix, theta_matrix,
    u_inverse_matrix, u_matrix, RibbonSpectrum};
pub(crate) use rmatrix::degree_preserving_matrix;
pub use rmatrix::{
    check_formula_vs_oracle, f_coefficient, gomez_sierra, gomez_sierra_inverse, phi, phi_bar,
    rinv_formula, rinv_formula_matrix, rinv_oracle, rmatrix_formula, rmatrix_formula_matrix,
    rmatrix_oracle, Reading,
};

pub type C = Complex64;
pub type CMat = DMatrix<C>;

/// Parameters of a truncated Fock module `V_{e,n}` with states `|0⟩ … |D-1⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RepParams {
    pub h: C,
    pub w: C,
    pub e: C,
    pub n: C,
    pub cutoff: usize,
}

impl RepParams {
    pub fn new(h: C, w: C, e: C, n: C, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::InvalidParams(format!("cutoff must be at least 2, got {cutoff}")));
        }
        for (name, v) in [("h", h), ("w", w), ("e", e), ("n", n)] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite")));
            }
        }
        Ok(RepParams { h, w, e, n, cutoff })
    }

    /// Real-valued parameters.
    pub fn real(h: f64, w: f64, e: f64, n: f64, cutoff: usize) -> Result<Self> {
        Self::new(C::from(h), C::from(w), C::from(e), C::from(n), cutoff)
    }

    /// `sinh(h e)/h`, equal to `e` at `h = 0`.
    pub fn sigma(&self) -> C {
        sinhc(self.h, self.e)
    }

    pub fn with_color(&self, e: C, n: C) -> Self {
        RepParams { e, n, ..*self }
    }

    pub fn with_w(&self, w: C) -> Self {
        RepParams { w, ..*self }
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Result<Self> {
        Self::new(self.h, self.w, self.e, self.n, cutoff)
    }

    /// Whether the trace-based braid constructions are in their intended regime.
    pub fn in_trace_regime(&self) -> bool {
        (self.h * self.e).re > 0.0
    }
}

/// `sinh(h x)/h` with the `h → 0` limit.
pub(crate) fn sinhc(h: C, x: C) -> C {
    let z = h * x;
    if z.norm() < 1e-8 {
        // sinh(z)/h = x (1 + z²/6 + ...)
        x * (C::from(1.0) + z * z / 6.0)
    } else {
        z.sinh() / h
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `exp(m)` for a matrix nilpotent on the truncated space, as a finite series.
pub(crate) fn exp_nilpotent(m: &CMat) -> CMat {
    let dim = m.nrows();
    let mut out = CMat::identity(dim, dim);
    let mut term = CMat::identity(dim, dim);
    for k in 1..=dim {
        term = &term * m / C::from(k as f64);
        if term.iter().all(|z| *z == C::from(0.0)) {
            break;
        }
        out += &term;
    }
    out
}

/// Permutation `|r1⟩⊗|r2⟩ ↦ |r2⟩⊗|r1⟩` for two factors of dimension `d`.
pub(crate) fn flip(d: usize) -> CMat {
    let mut p = CMat::zeros(d * d, d * d);
    for r1 in 0..d {
        for r2 in 0..d {
            p[(r2 * d + r1, r1 * d + r2)] = C::from(1.0);
        }
    }
    p
}

/// Largest entry modulus of `a - b` over the selected entries.
pub(crate) fn max_deviation(
    a: &CMat,
    b: &CMat,
    mut keep: impl FnMut(usize, usize) -> bool,
) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut count = 0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if keep(i, j) {
                worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
                count += 1;
            }
        }
    }
    (worst, count)
}
