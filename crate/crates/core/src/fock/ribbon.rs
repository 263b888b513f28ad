use serde::Serialize;

use super::{exp_nilpotent, factorial, rep_generators, CMat, RepParams, C};

/// `sum_{l<D} (∓2h)^l/l! e^{∓hlE} Q^l A^l e^{±2hEN}` in `π_{e,n}`.
fn u_standard_part(p: &RepParams, inverse: bool) -> CMat {
    let g = rep_generators(p);
    let d = p.cutoff;
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut sum = CMat::zeros(d, d);
    let mut ql_al = CMat::identity(d, d);
    for l in 0..d {
        if l > 0 {
            // Q^l A^l = Q (Q^{l-1} A^{l-1}) A
            ql_al = &g.q * ql_al * &g.a;
        }
        let c = (p.h * 2.0 * sign).powu(l as u32) / factorial(l)
            * (p.h * p.e * (sign * l as f64)).exp();
        sum += &ql_al * c;
    }
    let tail = CMat::from_fn(d, d, |i, j| {
        if i == j {
            (p.h * p.e * (C::from(i as f64) + p.n) * (-2.0 * sign)).exp()
        } else {
            C::from(0.0)
        }
    });
    sum * tail
}

/// `u = e^{w A+} u_h(Q)`.
pub fn u_matrix(p: &RepParams) -> CMat {
    let g = rep_generators(p);
    exp_nilpotent(&(&g.ap * p.w)) * u_standard_part(p, false)
}

/// `u^{-1} = u_h^{-1}(Q) e^{-w A+}`.
pub fn u_inverse_matrix(p: &RepParams) -> CMat {
    let g = rep_generators(p);
    u_standard_part(p, true) * exp_nilpotent(&(&g.ap * -p.w))
}

/// `θ = e^{-hE} u_h(Q)`.
pub fn theta_matrix(p: &RepParams) -> CMat {
    u_standard_part(p, false) * (-p.h * p.e).exp()
}

pub fn theta_inverse_matrix(p: &RepParams) -> CMat {
    u_standard_part(p, true) * (p.h * p.e).exp()
}

/// Spectrum of the ribbon element on a truncated Fock module.
#[derive(Clone, Debug, Serialize)]
pub struct RibbonSpectrum {
    /// Mean diagonal value of `θ`.
    pub eigenvalue: [f64; 2],
    /// `e^{(2n-1) h e}`.
    pub expected: [f64; 2],
    pub inverse_eigenvalue: [f64; 2],
    /// Largest deviation of `θ` from `expected · 1`.
    pub theta_deviation: f64,
    /// Largest deviation of `θ^{-1}` from `expected^{-1} · 1`.
    pub theta_inverse_deviation: f64,
    /// Largest deviation of `u` and `u^{-1}` from their closed actions on `|r⟩`,
    /// read with `t = e^{he}`.
    pub u_deviation: f64,
    pub u_inverse_deviation: f64,
    pub scalar: bool,
    pub notes: Vec<String>,
}

fn pair(z: C) -> [f64; 2] {
    [z.re, z.im]
}

fn max_dev(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Evaluates `θ`, `θ^{-1}`, `u` and `u^{-1}` and compares them with their predicted actions.
/// Every operator here is exact below the cutoff: lowering factors act before raising ones.
pub fn ribbon_spectrum(p: &RepParams, tol: f64) -> RibbonSpectrum {
    let d = p.cutoff;
    let expected = (p.h * p.e * (p.n * 2.0 - 1.0)).exp();
    let theta = theta_matrix(p);
    let theta_inv = theta_inverse_matrix(p);
    let id = CMat::identity(d, d);
    let theta_deviation = max_dev(&theta, &(&id * expected));
    let theta_inverse_deviation = max_dev(&theta_inv, &(&id / expected));
    let mean = (0..d).map(|i| theta[(i, i)]).sum::<C>() / d as f64;
    let mean_inv = (0..d).map(|i| theta_inv[(i, i)]).sum::<C>() / d as f64;

    // u|r⟩ = e^{2nhe} sum_l w^l ((t - 1/t)/2h)^{l/2} sqrt((r+l)!/r!) |r+l⟩
    let t = (p.h * p.e).exp();
    let root = p.sigma().sqrt();
    let pref = (p.h * p.e * p.n * 2.0).exp();
    let u_closed = CMat::from_fn(d, d, |i, j| {
        if i < j {
            return C::from(0.0);
        }
        let l = i - j;
        pref * p.w.powu(l as u32) * root.powu(l as u32) * (factorial(i) / factorial(j)).sqrt()
    });
    // u^{-1}|r⟩ = e^{-2nhe}|r⟩ - w t^{-2n} σ^{1/2} sqrt(r+1) |r+1⟩
    let u_inv_closed = CMat::from_fn(d, d, |i, j| {
        if i == j {
            C::from(1.0) / pref
        } else if i == j + 1 {
            -p.w * t.powc(-p.n * 2.0) * root * (i as f64).sqrt()
        } else {
            C::from(0.0)
        }
    });
    let u_deviation = max_dev(&u_matrix(p), &u_closed);
    let u_inverse_deviation = max_dev(&u_inverse_matrix(p), &u_inv_closed);
    RibbonSpectrum {
        eigenvalue: pair(mean),
        expected: pair(expected),
        inverse_eigenvalue: pair(mean_inv),
        theta_deviation,
        theta_inverse_deviation,
        u_deviation,
        u_inverse_deviation,
        scalar: theta_deviation < tol && theta_inverse_deviation < tol,
        notes: vec!["u closed forms read with t = e^{he}".to_string()],
    }
}

/// Principal `Δ` with `e^{2πiΔ} = θ`; an interpretation of the eigenvalue, not a derived quantity.
pub fn conformal_weight(theta: C) -> C {
    theta.ln() / (C::i() * 2.0 * std::f64::consts::PI)
}
