use super::algebra::{GroupElement, GroupTensor, Mutation, Relation, Rewriting, Strategy, Sym};
use crate::error::Result;
use crate::fock::{pi3_rmatrix_literal, SeriesMatrix};
use crate::hopf_verify::{CheckReport, Recorder};
use crate::series::{int, TruncatedSeries, Truncation};

/// `T = [[1, α, β], [0, g, δ], [0, 0, 1]]`.
pub fn t_matrix(rw: &Rewriting) -> Vec<Vec<GroupElement>> {
    let (one, zero) = (rw.one(), rw.zero());
    vec![
        vec![one.clone(), rw.sym(Sym::Alpha), rw.sym(Sym::Beta)],
        vec![zero.clone(), rw.sym(Sym::G), rw.sym(Sym::Delta)],
        vec![zero.clone(), zero, one],
    ]
}

/// `T^{-1} = [[1, -ğα, -β + ğαδ], [0, ğ, -ğδ], [0, 0, 1]]`.
pub fn t_inverse_matrix(rw: &Rewriting) -> Result<Vec<Vec<GroupElement>>> {
    let (one, zero) = (rw.one(), rw.zero());
    let minus = TruncatedSeries::constant(int(-1), rw.truncation());
    let gi_alpha = rw.mul(&rw.sym(Sym::Gi), &rw.sym(Sym::Alpha))?;
    let gi_alpha_delta = rw.mul(&gi_alpha, &rw.sym(Sym::Delta))?;
    let gi_delta = rw.mul(&rw.sym(Sym::Gi), &rw.sym(Sym::Delta))?;
    Ok(vec![
        vec![one.clone(), gi_alpha.scale(&minus), gi_alpha_delta.sub(&rw.sym(Sym::Beta))?],
        vec![zero.clone(), rw.sym(Sym::Gi), gi_delta.scale(&minus)],
        vec![zero.clone(), zero, one],
    ])
}

fn mat_mul(rw: &Rewriting, a: &[Vec<GroupElement>], b: &[Vec<GroupElement>]) -> Result<Vec<Vec<GroupElement>>> {
    let n = a.len();
    let mut out = vec![vec![rw.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&rw.mul(&a[i][k], &b[k][j])?)?;
                }
            }
        }
    }
    Ok(out)
}

fn scalar_matrix(rw: &Rewriting, m: &SeriesMatrix) -> Vec<Vec<GroupElement>> {
    m.iter().map(|row| row.iter().map(|c| rw.series(c.clone())).collect()).collect()
}

/// `T_1 = T ⊗ 1` (`first = true`) or `T_2 = 1 ⊗ T` on the index `i * 3 + j`.
fn embed(rw: &Rewriting, t: &[Vec<GroupElement>], first: bool) -> Vec<Vec<GroupElement>> {
    let mut out = vec![vec![rw.zero(); 9]; 9];
    for (i1, i2, j1, j2) in (0..81).map(|k| (k / 27, (k / 9) % 3, (k / 3) % 3, k % 3)) {
        let entry = if first {
            if i2 == j2 {
                t[i1][j1].clone()
            } else {
                continue;
            }
        } else if i1 == j1 {
            t[i2][j2].clone()
        } else {
            continue;
        };
        out[i1 * 3 + i2][j1 * 3 + j2] = entry;
    }
    out
}

/// Entrywise `R T_1 T_2 - T_2 T_1 R`, reduced.
pub fn rtt_residual(rw: &Rewriting, r: &SeriesMatrix) -> Result<Vec<Vec<GroupElement>>> {
    let t = t_matrix(rw);
    let (t1, t2) = (embed(rw, &t, true), embed(rw, &t, false));
    let rm = scalar_matrix(rw, r);
    let lhs = mat_mul(rw, &rm, &mat_mul(rw, &t1, &t2)?)?;
    let rhs = mat_mul(rw, &mat_mul(rw, &t2, &t1)?, &rm)?;
    let mut out = lhs;
    for (row, rrow) in out.iter_mut().zip(&rhs) {
        for (x, y) in row.iter_mut().zip(rrow) {
            *x = x.sub(y)?;
        }
    }
    Ok(out)
}

fn residual_label(rw_mutation: Option<Mutation>) -> String {
    match rw_mutation {
        None => "F_{h,w}".into(),
        Some(Mutation::Drop(r)) => format!("without {}", r.name()),
        Some(Mutation::Undeform(r)) => format!("{} undeformed", r.name()),
        Some(Mutation::DropW) => "without w-terms".into(),
    }
}

/// The RTT relation with the 9×9 R-matrix of π_3, all 81 entries.
pub fn check_rtt(trunc: Truncation) -> Result<CheckReport> {
    check_rtt_with(trunc, None)
}

pub fn check_rtt_with(trunc: Truncation, mutation: Option<Mutation>) -> Result<CheckReport> {
    let rw = Rewriting::with(trunc, mutation, Strategy::Leftmost);
    let mut rec = Recorder::labelled("rtt", &residual_label(mutation), trunc);
    let res = rtt_residual(&rw, &pi3_rmatrix_literal(trunc))?;
    for (i, row) in res.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            rec.residual(&format!("entry ({i},{j})"), x);
        }
    }
    Ok(rec.finish())
}

/// Every single-rule mutation must be detected. Rules free of `ğ` are detected by the RTT
/// residual; `ğ` does not occur in `T`, so the rules that mention it are detected by the Hopf
/// checks (`T S(T) = 1` and the antipode). The report lists mutations that go unnoticed.
pub fn check_mutations(trunc: Truncation) -> Result<CheckReport> {
    let mut rec = Recorder::labelled("rtt_mutations", "F_{h,w}", trunc);
    let mut mutations: Vec<Mutation> = Relation::ALL.into_iter().map(Mutation::Drop).collect();
    mutations.extend(Relation::ALL.into_iter().filter(Relation::is_deformed).map(Mutation::Undeform));
    mutations.push(Mutation::DropW);
    for m in &mutations {
        let via_hopf = matches!(m, Mutation::Drop(r) | Mutation::Undeform(r) if r.involves_inverse());
        let rep = if via_hopf { check_group_hopf_with(trunc, Some(*m))? } else { check_rtt_with(trunc, Some(*m))? };
        let by = if via_hopf { "Hopf" } else { "RTT" };
        rec.condition(&format!("{} detected by {by}", residual_label(Some(*m))), !rep.pass);
    }
    rec.note(format!("{} mutations", mutations.len()));
    Ok(rec.finish())
}

/// `Δ(x)` from `Δ(T) = T ⊗̇ T` on letters.
pub fn coproduct_of(rw: &Rewriting, s: Sym) -> GroupTensor {
    let t = |x: Sym| rw.sym(x);
    let one = rw.one();
    match s {
        Sym::Alpha => rw.tensor(&t(Sym::Alpha), &t(Sym::G)).add(&rw.tensor(&one, &t(Sym::Alpha))),
        Sym::Beta => rw
            .tensor(&t(Sym::Beta), &one)
            .add(&rw.tensor(&one, &t(Sym::Beta)))
            .add(&rw.tensor(&t(Sym::Alpha), &t(Sym::Delta))),
        Sym::G => rw.tensor(&t(Sym::G), &t(Sym::G)),
        Sym::Gi => rw.tensor(&t(Sym::Gi), &t(Sym::Gi)),
        Sym::Delta => rw.tensor(&t(Sym::Delta), &one).add(&rw.tensor(&t(Sym::G), &t(Sym::Delta))),
    }
}

/// `S(x)` on letters, read from `T^{-1}`.
pub fn antipode_of(rw: &Rewriting, s: Sym) -> Result<GroupElement> {
    let inv = t_inverse_matrix(rw)?;
    Ok(match s {
        Sym::Alpha => inv[0][1].clone(),
        Sym::Beta => inv[0][2].clone(),
        Sym::G => inv[1][1].clone(),
        Sym::Gi => rw.sym(Sym::G),
        Sym::Delta => inv[1][2].clone(),
    })
}

/// Hopf structure of the function algebra: coproducts against `T ⊗̇ T`, `T S(T) = S(T) T = 1`,
/// `ε(T) = 1`, and `Δ`, `ε`, `S` compatible with every relation.
pub fn check_group_hopf(trunc: Truncation) -> Result<CheckReport> {
    check_group_hopf_with(trunc, None)
}

pub fn check_group_hopf_with(trunc: Truncation, mutation: Option<Mutation>) -> Result<CheckReport> {
    let rw = Rewriting::with(trunc, mutation, Strategy::Leftmost);
    let mut rec = Recorder::labelled("group_hopf", &residual_label(mutation), trunc);
    let t = t_matrix(&rw);

    // (T ⊗̇ T)_{ik} = Σ_j T_ij ⊗ T_jk
    let dot = |i: usize, k: usize| {
        (0..3).fold(GroupTensor::zero(trunc), |acc, j| acc.add(&rw.tensor(&t[i][j], &t[j][k])))
    };
    for (s, (i, k)) in [(Sym::Alpha, (0, 1)), (Sym::Beta, (0, 2)), (Sym::G, (1, 1)), (Sym::Delta, (1, 2))] {
        rec.residual(&format!("Δ({}) = (T ⊗̇ T)_{i}{k}", s.name()), &coproduct_of(&rw, s).sub(&dot(i, k)));
    }
    for (i, k) in [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)] {
        let expected = rw.tensor(&t[i][k], &t[i][k]);
        let want = if i == k { expected } else { GroupTensor::zero(trunc) };
        rec.residual(&format!("(T ⊗̇ T)_{i}{k}"), &dot(i, k).sub(&want));
    }

    let inv = t_inverse_matrix(&rw)?;
    let id: Vec<Vec<GroupElement>> =
        (0..3).map(|i| (0..3).map(|j| if i == j { rw.one() } else { rw.zero() }).collect()).collect();
    for (what, prod) in [("T S(T) = 1", mat_mul(&rw, &t, &inv)?), ("S(T) T = 1", mat_mul(&rw, &inv, &t)?)] {
        for i in 0..3 {
            for j in 0..3 {
                rec.residual(&format!("{what} at ({i},{j})"), &prod[i][j].sub(&id[i][j])?);
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let e = rw.counit(&t[i][j]);
            let want = TruncatedSeries::constant(int(i64::from(i == j)), trunc);
            rec.residual(&format!("ε(T)_{i}{j}"), &(&e - &want));
        }
    }

    let antipodes: Vec<(Sym, GroupElement)> =
        Sym::ALL.iter().map(|&s| Ok((s, antipode_of(&rw, s)?))).collect::<Result<_>>()?;
    let s_of = |s: Sym| antipodes.iter().find(|(x, _)| *x == s).expect("all letters").1.clone();
    for rel in Relation::ALL {
        let x = rw.relation_element(rel);
        rec.residual(
            &format!("Δ respects the {}", rel.name()),
            &rw.tensor_image(&x, |s| coproduct_of(&rw, s)),
        );
        rec.residual(&format!("ε respects the {}", rel.name()), &rw.counit(&x));
        rec.residual(&format!("S respects the {}", rel.name()), &rw.image(&x, true, s_of));
    }
    Ok(rec.finish())
}

/// One-parameter limits: at `K_h = 1` the `h`-free algebra; at `K_w = 1` with `g ↦ 1` the
/// `w`-free algebra and its Hopf maps.
pub fn check_reductions(trunc: Truncation) -> Result<CheckReport> {
    let mut rec = Recorder::labelled("rtt_reductions", "F_{h,w}", trunc);
    let (a, b, g, d) = (Sym::Alpha, Sym::Beta, Sym::G, Sym::Delta);

    let rw = Rewriting::new(Truncation::new(1, trunc.kw));
    let x = |s| rw.sym(s);
    let w = rw.w();
    let expectations = [
        ("h-limit [α,β] = wα²", rw.commutator(&x(a), &x(b))?, rw.mul_all(&[&w, &x(a), &x(a)])?),
        ("h-limit [α,δ] = wαg", rw.commutator(&x(a), &x(d))?, rw.mul_all(&[&w, &x(a), &x(g)])?),
        (
            "h-limit [β,g] = -wαg",
            rw.commutator(&x(b), &x(g))?,
            rw.mul_all(&[&w, &x(a), &x(g)])?.scale(&TruncatedSeries::constant(int(-1), rw.truncation())),
        ),
        (
            "h-limit [g,δ] = wg(g-1)",
            rw.commutator(&x(g), &x(d))?,
            rw.mul_all(&[&w, &x(g), &x(g)])?.sub(&rw.mul(&w, &x(g))?)?,
        ),
        ("h-limit [α,g] = 0", rw.commutator(&x(a), &x(g))?, rw.zero()),
        ("h-limit [β,δ] = 0", rw.commutator(&x(b), &x(d))?, rw.zero()),
    ];
    for (what, lhs, rhs) in expectations {
        rec.residual(what, &lhs.sub(&rhs)?);
    }

    let rw = Rewriting::new(Truncation::new(trunc.kh, 1));
    let x = |s| rw.sym(s);
    let flat = |e: &GroupElement| rw.set_g_to_one(e);
    let two_h = rw.h().scale(&TruncatedSeries::constant(int(2), rw.truncation()));
    rec.residual("w-limit [α,β] = 2hα", &flat(&rw.commutator(&x(a), &x(b))?).sub(&rw.mul(&two_h, &x(a))?)?);
    rec.residual("w-limit [α,δ] = 0", &flat(&rw.commutator(&x(a), &x(d))?));
    rec.residual("w-limit [β,δ] = 0", &flat(&rw.commutator(&x(b), &x(d))?));
    // g ↦ 1 is an algebra map only if every relation survives it
    for rel in Relation::ALL {
        rec.residual(&format!("g ↦ 1 respects the {}", rel.name()), &flat(&rw.relation_element(rel)));
    }
    let one = rw.one();
    let flat_tensor = |e: &GroupTensor| -> GroupTensor {
        // apply g ↦ 1 on both factors
        let mut out = GroupTensor::zero(rw.truncation());
        for ((l, r), c) in tensor_terms(e) {
            let left = flat(&rw.word(l));
            let right = flat(&rw.word(r));
            out = out.add(&rw.tensor(&left.scale(&c), &right));
        }
        out
    };
    let limits = [
        (a, rw.tensor(&x(a), &one).add(&rw.tensor(&one, &x(a)))),
        (b, rw.tensor(&x(b), &one).add(&rw.tensor(&one, &x(b))).add(&rw.tensor(&x(a), &x(d)))),
        (d, rw.tensor(&x(d), &one).add(&rw.tensor(&one, &x(d)))),
    ];
    for (s, want) in limits {
        rec.residual(&format!("w-limit Δ({})", s.name()), &flat_tensor(&coproduct_of(&rw, s)).sub(&want));
    }
    let minus = TruncatedSeries::constant(int(-1), rw.truncation());
    let s_limits = [
        (a, x(a).scale(&minus)),
        (b, rw.mul(&x(a), &x(d))?.sub(&x(b))?),
        (d, x(d).scale(&minus)),
    ];
    for (s, want) in s_limits {
        rec.residual(&format!("w-limit S({})", s.name()), &flat(&antipode_of(&rw, s)?).sub(&want)?);
    }
    Ok(rec.finish())
}

fn tensor_terms(e: &GroupTensor) -> Vec<((Vec<Sym>, Vec<Sym>), TruncatedSeries)> {
    e.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
}
