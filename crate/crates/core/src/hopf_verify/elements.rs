//! Named elements of the algebra and its tensor square, built from expressions.

use crate::error::Result;
use crate::pbw::{build, Algebra, PbwElement, Preset, TensorElement};

pub const TWIST: &str = "(exp (* w (tensor N Ap)))";

/// Standard R-matrix with `Q = (1 - e^{-w Ap})/w` in the second factor.
pub const R_UNTWISTED: &str =
    "(* (exp (* -2 h (tensor E N))) (exp (* 2 h (tensor (* (exp (* h E)) A) Q))))";

pub const R_STANDARD: &str =
    "(* (exp (* -2 h (tensor E N))) (exp (* 2 h (tensor (* (exp (* h E)) A) Ap))))";

pub const R_NONSTANDARD: &str = "(* (exp (* -1 w (tensor Ap N))) (exp (* w (tensor N Ap))))";

pub const CASIMIR_TWO_PARAMETER: &str =
    "(+ (* N (sinhc h E)) (* 1/2 (expm1c w (* -1 Ap)) A) (* A 1/2 (expm1c w (* -1 Ap))))";

pub const CASIMIR_STANDARD: &str = "(- (* N (sinhc h E)) (* 1/2 (+ (* Ap A) (* A Ap))))";

pub const CASIMIR_NONSTANDARD: &str =
    "(+ (* N E) (* 1/2 (expm1c w (* -1 Ap)) A) (* A 1/2 (expm1c w (* -1 Ap))))";

fn tensor(alg: &Algebra, src: &str) -> Result<TensorElement> {
    Ok(build(alg, src)?.into_tensor().expect("tensor-valued expression"))
}

fn pbw(alg: &Algebra, src: &str) -> Result<PbwElement> {
    Ok(build(alg, src)?.into_pbw().expect("PBW-valued expression"))
}

/// Two-parameter R-matrix in product form, with the `A ⊗ Q` exponent scaled by `x`
/// (`x = 1` is the constant R-matrix; other values give the spectral family).
pub fn r_two_parameter_scaled(alg: &Algebra, x: &str) -> Result<TensorElement> {
    tensor(
        alg,
        &format!(
            "(* (exp (* -1 w (tensor Ap N))) (exp (* -2 h (tensor E N))) \
               (exp (* 2 h {x} (tensor (* (exp (* h E)) A) Q))) (exp (* w (tensor N Ap))))"
        ),
    )
}

pub fn twist(alg: &Algebra) -> Result<TensorElement> {
    tensor(alg, TWIST)
}

pub fn r_untwisted(alg: &Algebra) -> Result<TensorElement> {
    tensor(alg, R_UNTWISTED)
}

/// The universal R-matrix of a preset.
pub fn r_matrix(alg: &Algebra, preset: Preset) -> Result<TensorElement> {
    match preset {
        Preset::StandardH => tensor(alg, R_STANDARD),
        Preset::NonstandardW => tensor(alg, R_NONSTANDARD),
        Preset::TwoParameter => r_two_parameter_scaled(alg, "1"),
    }
}

/// Two-parameter R-matrix as the twist `(σ∘F)^{-1} R_untwisted F`.
pub fn r_two_parameter_twisted(alg: &Algebra) -> Result<TensorElement> {
    let f = twist(alg)?;
    let f21_inv = alg.tensor_inverse(&f.flip()?)?;
    alg.tensor_mul_all(&[&f21_inv, &r_untwisted(alg)?, &f])
}

pub fn casimir(alg: &Algebra, preset: Preset) -> Result<PbwElement> {
    match preset {
        Preset::StandardH => pbw(alg, CASIMIR_STANDARD),
        Preset::NonstandardW => pbw(alg, CASIMIR_NONSTANDARD),
        Preset::TwoParameter => pbw(alg, CASIMIR_TWO_PARAMETER),
    }
}

/// `sum_l term(l)` over `l < K_h`; every summand with `l >= K_h` carries `h^l`.
fn sum_h_series(alg: &Algebra, term: impl Fn(u32) -> String) -> Result<PbwElement> {
    let mut acc = alg.zero();
    for l in 0..alg.truncation().kh {
        acc = acc.add(&pbw(alg, &term(l))?)?;
    }
    Ok(acc)
}

/// `sum_l (∓2h)^l/l! e^{∓hlE} X^l A^l e^{±2hEN}` with `X` the raising factor.
fn u_series(alg: &Algebra, raising: &str, inverse: bool) -> Result<PbwElement> {
    let (sign, tail) = if inverse {
        ("", "(exp (* -2 h E N))")
    } else {
        ("-", "(exp (* 2 h E N))")
    };
    sum_h_series(alg, |l| {
        format!(
            "(* (pow (* {sign}2 h) {l}) 1/{fact} (exp (* {sign}{l} h E)) (pow {raising} {l}) (pow A {l}) {tail})",
            fact = (1..=l as u64).product::<u64>()
        )
    })
}

/// Closed form of `u` for the standard structure.
pub fn u_standard(alg: &Algebra) -> Result<PbwElement> {
    u_series(alg, "Ap", false)
}

pub fn u_standard_inverse(alg: &Algebra) -> Result<PbwElement> {
    u_series(alg, "Ap", true)
}

/// Closed form of `u` for the untwisted structure with `Q` in place of `Ap`.
pub fn u_untwisted(alg: &Algebra) -> Result<PbwElement> {
    u_series(alg, "Q", false)
}

/// Closed form of `u` for the two-parameter structure: `e^{w Ap}` times the untwisted one.
pub fn u_two_parameter(alg: &Algebra) -> Result<PbwElement> {
    alg.mul(&pbw(alg, "(exp (* w Ap))")?, &u_untwisted(alg)?)
}

pub fn u_two_parameter_inverse(alg: &Algebra) -> Result<PbwElement> {
    alg.mul(&u_series(alg, "Q", true)?, &pbw(alg, "(exp (* -1 w Ap))")?)
}

/// Ribbon element `e^{-hE}` times the untwisted `u`.
pub fn theta(alg: &Algebra) -> Result<PbwElement> {
    alg.mul(&pbw(alg, "(exp (* -1 h E))")?, &u_untwisted(alg)?)
}

pub fn theta_inverse(alg: &Algebra) -> Result<PbwElement> {
    alg.mul(&pbw(alg, "(exp (* h E))")?, &u_series(alg, "Q", true)?)
}

/// `v = sum_k (-w)^k/k! N^k Ap^k`.
pub fn v_closed(alg: &Algebra) -> Result<PbwElement> {
    let mut acc = alg.zero();
    for k in 0..alg.truncation().kw {
        let fact = (1..=k as u64).product::<u64>();
        acc = acc.add(&pbw(
            alg,
            &format!("(* (pow (* -1 w) {k}) 1/{fact} (pow N {k}) (pow Ap {k}))"),
        )?)?;
    }
    Ok(acc)
}

/// `v^{-1} = sum_k N^k (ln(2 - e^{-w Ap}))^k / k!`.
pub fn v_inverse_closed(alg: &Algebra) -> Result<PbwElement> {
    let mut acc = alg.zero();
    for k in 0..alg.truncation().kw {
        let fact = (1..=k as u64).product::<u64>();
        acc = acc.add(&pbw(
            alg,
            &format!("(* 1/{fact} (pow N {k}) (pow (* w (log1pc w Q)) {k}))"),
        )?)?;
    }
    Ok(acc)
}
