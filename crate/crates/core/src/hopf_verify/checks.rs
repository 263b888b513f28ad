use num_rational::BigRational;

use super::elements as el;
use super::report::{CheckReport, Recorder};
use crate::error::Result;
use crate::pbw::{build, Algebra, Generator, HopfStructure, PbwElement, Preset, TensorElement};
use crate::series::{fmt_rational, Truncation};

const TWO: HopfStructure = HopfStructure::TwoParameter;
const UNTWISTED: HopfStructure = HopfStructure::Untwisted;

/// Algebra at the preset's effective truncation.
pub fn algebra_for(preset: Preset, trunc: Truncation) -> Algebra {
    Algebra::new(preset.effective(trunc))
}

fn pbw(alg: &Algebra, src: &str) -> Result<PbwElement> {
    Ok(build(alg, src)?.into_pbw().expect("PBW-valued expression"))
}

fn m_s_id(alg: &Algebra, s: HopfStructure, t: &TensorElement) -> Result<PbwElement> {
    alg.multiply_slots(&alg.antipode_slot(s, t, 0)?)
}

fn m_id_s(alg: &Algebra, s: HopfStructure, t: &TensorElement) -> Result<PbwElement> {
    alg.multiply_slots(&alg.antipode_slot(s, t, 1)?)
}

fn tensor2(x: &PbwElement, y: &PbwElement) -> Result<TensorElement> {
    TensorElement::pure(&[x, y])
}

/// Coassociativity, counit, antipode and homomorphism properties on generators.
pub fn check_hopf_axioms(alg: &Algebra, preset: Preset) -> Result<CheckReport> {
    let mut rec = Recorder::new("hopf_axioms", preset, alg.truncation());
    for g in Generator::ALL {
        let name = g.name();
        let x = alg.gen(g);
        let d = alg.coproduct(TWO, &x)?;
        let left = alg.coproduct_slot(TWO, &d, 0)?;
        let right = alg.coproduct_slot(TWO, &d, 1)?;
        rec.residual(&format!("coassociativity {name}"), &left.sub(&right)?);
        for slot in 0..2 {
            let c = alg.unwrap_arity1(&alg.counit_slot(&d, slot)?)?;
            rec.residual(&format!("counit slot {slot} {name}"), &c.sub(&x)?);
        }
        let unit = PbwElement::scalar(alg.counit(&x));
        rec.residual(&format!("m(S⊗id)Δ {name}"), &m_s_id(alg, TWO, &d)?.sub(&unit)?);
        rec.residual(&format!("m(id⊗S)Δ {name}"), &m_id_s(alg, TWO, &d)?.sub(&unit)?);
    }
    for g1 in Generator::ALL {
        for g2 in Generator::ALL {
            let (x, y) = (alg.gen(g1), alg.gen(g2));
            let xy = alg.mul(&x, &y)?;
            let pair = format!("{}{}", g1.name(), g2.name());
            let lhs = alg.coproduct(TWO, &xy)?;
            let rhs = alg.tensor_mul(&alg.coproduct(TWO, &x)?, &alg.coproduct(TWO, &y)?)?;
            rec.residual(&format!("Δ homomorphism {pair}"), &lhs.sub(&rhs)?);
            let lhs = alg.antipode(TWO, &xy)?;
            let rhs = alg.mul(&alg.antipode(TWO, &y)?, &alg.antipode(TWO, &x)?)?;
            rec.residual(&format!("S anti-homomorphism {pair}"), &lhs.sub(&rhs)?);
            let lhs = alg.counit(&xy);
            let rhs = alg.counit(&x).checked_mul(&alg.counit(&y))?;
            rec.residual(&format!("ε homomorphism {pair}"), &lhs.checked_sub(&rhs)?);
        }
    }
    Ok(rec.finish())
}

/// `R Δ(g) = Δ'(g) R` on generators and the two coproduct splittings of `R`.
pub fn check_quasitriangular(alg: &Algebra, preset: Preset) -> Result<CheckReport> {
    let mut rec = Recorder::new("quasitriangular", preset, alg.truncation());
    let r = el::r_matrix(alg, preset)?;
    for g in Generator::ALL {
        let d = alg.coproduct(TWO, &alg.gen(g))?;
        let lhs = alg.tensor_mul(&r, &d)?;
        let rhs = alg.tensor_mul(&d.flip()?, &r)?;
        rec.residual(&format!("intertwining {}", g.name()), &lhs.sub(&rhs)?);
    }
    let r13 = r.embed(1, 3)?;
    let r23 = r.embed(2, 3)?;
    let r12 = r.embed(1, 2)?;
    let lhs = alg.coproduct_slot(TWO, &r, 0)?;
    rec.residual("(Δ⊗id)R = R13 R23", &lhs.sub(&alg.tensor_mul(&r13, &r23)?)?);
    let lhs = alg.coproduct_slot(TWO, &r, 1)?;
    rec.residual("(id⊗Δ)R = R13 R12", &lhs.sub(&alg.tensor_mul(&r13, &r12)?)?);
    Ok(rec.finish())
}

fn qybe_residual(alg: &Algebra, r12: &TensorElement, r13: &TensorElement, r23: &TensorElement) -> Result<TensorElement> {
    let lhs = alg.tensor_mul_all(&[r12, r13, r23])?;
    let rhs = alg.tensor_mul_all(&[r23, r13, r12])?;
    lhs.sub(&rhs)
}

/// `R12 R13 R23 = R23 R13 R12`.
pub fn check_qybe(alg: &Algebra, preset: Preset) -> Result<CheckReport> {
    let mut rec = Recorder::new("qybe", preset, alg.truncation());
    let r = el::r_matrix(alg, preset)?;
    let res = qybe_residual(alg, &r.embed(1, 2)?, &r.embed(1, 3)?, &r.embed(2, 3)?)?;
    rec.residual("R12 R13 R23 - R23 R13 R12", &res);
    Ok(rec.finish())
}

/// Spectral Yang-Baxter equation with `e^u = x_u`, `e^v = x_v` and `e^{u+v} = x_u x_v`,
/// for the family whose `A ⊗ Q` exponent is scaled by the spectral factor.
pub fn check_spectral_qybe(alg: &Algebra, xu: &BigRational, xv: &BigRational) -> Result<CheckReport> {
    let mut rec = Recorder::new("spectral_qybe", Preset::TwoParameter, alg.truncation());
    let xuv = xu * xv;
    let r = |x: &BigRational| el::r_two_parameter_scaled(alg, &fmt_rational(x));
    let res = qybe_residual(
        alg,
        &r(xu)?.embed(1, 2)?,
        &r(&xuv)?.embed(1, 3)?,
        &r(xv)?.embed(2, 3)?,
    )?;
    rec.residual(
        &format!("spectral YBE at x_u={}, x_v={}", fmt_rational(xu), fmt_rational(xv)),
        &res,
    );
    Ok(rec.finish())
}

/// Cocycle and counit conditions for the twist, and that it conjugates the untwisted
/// coproduct into the two-parameter one.
pub fn check_twist_conditions(alg: &Algebra) -> Result<CheckReport> {
    let mut rec = Recorder::new("twist_conditions", Preset::TwoParameter, alg.truncation());
    let f = el::twist(alg)?;
    let f_inv = alg.tensor_inverse(&f)?;
    rec.residual("F F^{-1} = 1", &alg.tensor_mul(&f, &f_inv)?.sub(&TensorElement::one(2, alg.truncation()))?);

    let lhs = alg.tensor_mul(&alg.coproduct_slot(UNTWISTED, &f, 0)?, &f.embed(1, 2)?)?;
    let rhs = alg.tensor_mul(&alg.coproduct_slot(UNTWISTED, &f, 1)?, &f.embed(2, 3)?)?;
    rec.residual("(Δ⊗id)(F) F12 = (id⊗Δ)(F) F23", &lhs.sub(&rhs)?);

    let lhs = alg.tensor_mul(&alg.tensor_inverse(&f.embed(1, 2)?)?, &alg.coproduct_slot(UNTWISTED, &f_inv, 0)?)?;
    let rhs = alg.tensor_mul(&alg.tensor_inverse(&f.embed(2, 3)?)?, &alg.coproduct_slot(UNTWISTED, &f_inv, 1)?)?;
    rec.residual("F12^{-1} (Δ⊗id)(F^{-1}) = F23^{-1} (id⊗Δ)(F^{-1})", &lhs.sub(&rhs)?);

    for (label, t) in [("F", &f), ("F^{-1}", &f_inv)] {
        let a = alg.unwrap_arity1(&alg.counit_slot(t, 0)?)?;
        let b = alg.unwrap_arity1(&alg.counit_slot(t, 1)?)?;
        rec.residual(&format!("(ε⊗id)({label}) = (id⊗ε)({label})"), &a.sub(&b)?);
        rec.residual(&format!("(ε⊗id)({label}) = 1"), &a.sub(&alg.one())?);
    }

    for g in Generator::ALL {
        let x = alg.gen(g);
        let twisted = alg.tensor_mul_all(&[&f_inv, &alg.coproduct(UNTWISTED, &x)?, &f])?;
        rec.residual(
            &format!("Δ_hw({}) = F^{{-1}} Δ_h F", g.name()),
            &alg.coproduct(TWO, &x)?.sub(&twisted)?,
        );
        rec.residual(
            &format!("ε_hw({}) = ε_h", g.name()),
            &alg.counit(&x).checked_sub(&alg.counit(&x))?,
        );
    }
    Ok(rec.finish())
}

/// The element `v = m(S⊗id)(F)`, its inverse, closed forms and Proposition-1 identities.
pub fn check_v_element(alg: &Algebra) -> Result<CheckReport> {
    let mut rec = Recorder::new("v_element", Preset::TwoParameter, alg.truncation());
    let one = alg.one();
    let f = el::twist(alg)?;
    let f_inv = alg.tensor_inverse(&f)?;
    let v = m_s_id(alg, UNTWISTED, &f)?;
    let v_inv = m_id_s(alg, UNTWISTED, &f_inv)?;
    rec.residual("v v^{-1} = 1", &alg.mul(&v, &v_inv)?.sub(&one)?);
    rec.residual("v^{-1} v = 1", &alg.mul(&v_inv, &v)?.sub(&one)?);
    rec.residual("v closed form", &v.sub(&el::v_closed(alg)?)?);
    rec.residual("v^{-1} closed form", &v_inv.sub(&el::v_inverse_closed(alg)?)?);

    let ewp = pbw(alg, "(exp (* w Ap))")?;
    let g = alg.mul(&v_inv, &alg.antipode(UNTWISTED, &v)?)?;
    rec.residual("v^{-1} S_h(v) = e^{w Ap}", &g.sub(&ewp)?);

    for gen in Generator::ALL {
        let x = alg.gen(gen);
        let rhs = alg.mul_all(&[&v_inv, &alg.antipode(UNTWISTED, &x)?, &v])?;
        rec.residual(
            &format!("S_hw({}) = v^{{-1}} S_h v", gen.name()),
            &alg.antipode(TWO, &x)?.sub(&rhs)?,
        );
    }

    rec.residual("ε(v) = 1", &alg.counit(&v).checked_sub(&alg.counit(&one))?);
    let f21_inv = alg.tensor_inverse(&f.flip()?)?;
    let rhs = alg.tensor_mul_all(&[
        &alg.antipode_both(UNTWISTED, &f21_inv)?,
        &tensor2(&v, &v)?,
        &f_inv,
    ])?;
    rec.residual(
        "Δ(v) = (S⊗S)(F21^{-1}) (v⊗v) F^{-1}",
        &alg.coproduct(UNTWISTED, &v)?.sub(&rhs)?,
    );
    // S_h^2 = id, so (S^2⊗S^2)(F^{-1}) = F^{-1}
    let rhs = alg.tensor_mul_all(&[&f, &tensor2(&g, &g)?, &alg.antipode_both(UNTWISTED, &alg.antipode_both(UNTWISTED, &f_inv)?)?])?;
    rec.residual(
        "Δ(v^{-1}S(v)) = F (g⊗g) (S²⊗S²)(F^{-1})",
        &alg.coproduct(UNTWISTED, &g)?.sub(&rhs)?,
    );
    rec.residual(
        "Δ_hw(v^{-1}S(v)) grouplike",
        &alg.coproduct(TWO, &g)?.sub(&tensor2(&g, &g)?)?,
    );
    Ok(rec.finish())
}

/// `[C, g] = 0` for the preset's Casimir element and every generator.
pub fn check_casimir(alg: &Algebra, preset: Preset) -> Result<CheckReport> {
    let mut rec = Recorder::new("casimir", preset, alg.truncation());
    let c = el::casimir(alg, preset)?;
    for g in Generator::ALL {
        rec.residual(&format!("[C, {}]", g.name()), &alg.commutator(&c, &alg.gen(g))?);
    }
    Ok(rec.finish())
}

/// The twisted form `(σ∘F)^{-1} R_h F` equals the product form of the two-parameter R.
pub fn check_r_twist_form(alg: &Algebra) -> Result<CheckReport> {
    let mut rec = Recorder::new("r_twist_form", Preset::TwoParameter, alg.truncation());
    let product = el::r_matrix(alg, Preset::TwoParameter)?;
    let twisted = el::r_two_parameter_twisted(alg)?;
    rec.residual("(σ∘F)^{-1} R_h F = product form", &product.sub(&twisted)?);
    Ok(rec.finish())
}

/// `u`, its closed form, the squared-antipode property, `Δ(u)`, `S(u)` and the ribbon
/// element `θ` with its axioms.
pub fn check_u_ribbon(alg: &Algebra, preset: Preset) -> Result<CheckReport> {
    let mut rec = Recorder::new("u_ribbon", preset, alg.truncation());
    let one = alg.one();
    let r = el::r_matrix(alg, preset)?;
    let r21 = r.flip()?;
    let u = m_s_id(alg, TWO, &r21)?;
    let (u_closed, u_closed_inv) = match preset {
        Preset::StandardH => (el::u_standard(alg)?, el::u_standard_inverse(alg)?),
        _ => (el::u_two_parameter(alg)?, el::u_two_parameter_inverse(alg)?),
    };
    rec.residual("u = m(S⊗id)(R21) closed form", &u.sub(&u_closed)?);
    rec.residual("u u^{-1} = 1", &alg.mul(&u, &u_closed_inv)?.sub(&one)?);

    for g in Generator::ALL {
        let x = alg.gen(g);
        let s2 = alg.antipode(TWO, &alg.antipode(TWO, &x)?)?;
        rec.residual(
            &format!("S²({0}) u = u {0}", g.name()),
            &alg.mul(&s2, &u)?.sub(&alg.mul(&u, &x)?)?,
        );
    }
    rec.residual("ε(u) = 1", &alg.counit(&u).checked_sub(&alg.counit(&one))?);

    let r21r = alg.tensor_mul(&r21, &r)?;
    let du = alg.coproduct(TWO, &u)?;
    let uu = tensor2(&u, &u)?;
    rec.residual("R21 R Δ(u) = u⊗u", &alg.tensor_mul(&r21r, &du)?.sub(&uu)?);
    rec.residual("Δ(u) R21 R = u⊗u", &alg.tensor_mul(&du, &r21r)?.sub(&uu)?);

    let su = alg.antipode(TWO, &u)?;
    let claimed = alg.mul(&pbw(alg, "(* (exp (* -2 h E)) (exp (* -1 w Ap)))")?, &u)?;
    let n = rec.residual("S(u) = e^{-2hE} e^{-w Ap} u", &su.sub(&claimed)?);
    if n > 0 {
        let alt = alg.mul(&pbw(alg, "(* (exp (* -2 h E)) (exp (* -2 w Ap)))")?, &u)?;
        let holds = su.sub(&alt)?.is_zero();
        rec.note(format!(
            "S(u) = e^{{-2hE}} e^{{-2w Ap}} u {}",
            if holds { "holds" } else { "does not hold either" }
        ));
    }

    if preset == Preset::TwoParameter {
        // twisted u from the untwisted structure
        let r_h = el::r_untwisted(alg)?;
        let u_h = m_s_id(alg, UNTWISTED, &r_h.flip()?)?;
        rec.residual("untwisted u closed form", &u_h.sub(&el::u_untwisted(alg)?)?);
        let f = el::twist(alg)?;
        let v = m_s_id(alg, UNTWISTED, &f)?;
        let v_inv = m_id_s(alg, UNTWISTED, &alg.tensor_inverse(&f)?)?;
        let u_f = alg.mul_all(&[&v_inv, &alg.antipode(UNTWISTED, &v)?, &u_h])?;
        rec.residual("u_F = v^{-1} S(v) u", &u.sub(&u_f)?);
        // S_h is an involution, so S_h^{-1} = S_h
        let second = alg.mul_all(&[&v_inv, &u_h, &alg.antipode(UNTWISTED, &v)?])?;
        let holds = u.sub(&second)?.is_zero();
        rec.note(format!(
            "second form u_F = v^{{-1}} u S^{{-1}}(v) {}",
            if holds { "holds" } else { "does not hold" }
        ));
        let theta_h = alg.mul(&pbw(alg, "(exp (* -1 h E))")?, &u_h)?;
        rec.residual("θ_F = θ", &theta_h.sub(&el::theta(alg)?)?);
    }

    let theta = el::theta(alg)?;
    rec.residual("θ θ^{-1} = 1", &alg.mul(&theta, &el::theta_inverse(alg)?)?.sub(&one)?);
    rec.residual("θ² = u S(u)", &alg.mul(&theta, &theta)?.sub(&alg.mul(&u, &su)?)?);
    rec.residual("S(θ) = θ", &alg.antipode(TWO, &theta)?.sub(&theta)?);
    rec.residual("ε(θ) = 1", &alg.counit(&theta).checked_sub(&alg.counit(&one))?);
    let dt = alg.coproduct(TWO, &theta)?;
    rec.residual(
        "R21 R Δ(θ) = θ⊗θ",
        &alg.tensor_mul(&r21r, &dt)?.sub(&tensor2(&theta, &theta)?)?,
    );
    for g in Generator::ALL {
        rec.residual(&format!("[θ, {}]", g.name()), &alg.commutator(&theta, &alg.gen(g))?);
    }
    Ok(rec.finish())
}

/// The two-parameter data specialize to the one-parameter presets when the other
/// parameter is truncated away.
pub fn check_preset_degeneration(trunc: Truncation) -> Result<CheckReport> {
    let mut rec = Recorder::new("preset_degeneration", Preset::TwoParameter, trunc);
    for preset in [Preset::StandardH, Preset::NonstandardW] {
        let alg = algebra_for(preset, trunc);
        let label = preset.name();
        rec.residual(
            &format!("R two-parameter → {label}"),
            &el::r_matrix(&alg, Preset::TwoParameter)?.sub(&el::r_matrix(&alg, preset)?)?,
        );
        rec.residual(
            &format!("Casimir two-parameter → {label}"),
            &el::casimir(&alg, Preset::TwoParameter)?.sub(&el::casimir(&alg, preset)?)?,
        );
        if preset == Preset::StandardH {
            rec.residual(
                "u two-parameter → standard",
                &el::u_two_parameter(&alg)?.sub(&el::u_standard(&alg)?)?,
            );
            for g in Generator::ALL {
                let x = alg.gen(g);
                rec.residual(
                    &format!("Δ two-parameter → untwisted on {}", g.name()),
                    &alg.coproduct(TWO, &x)?.sub(&alg.coproduct(UNTWISTED, &x)?)?,
                );
                rec.residual(
                    &format!("S two-parameter → untwisted on {}", g.name()),
                    &alg.antipode(TWO, &x)?.sub(&alg.antipode(UNTWISTED, &x)?)?,
                );
            }
        }
    }
    Ok(rec.finish())
}
