use super::{exp_nilpotent, factorial, CMat, RepParams, C};
use crate::hopf_verify::{CheckReport, Recorder};
use crate::series::Truncation;

/// Represented generators of `π_{e,n}` on the truncated Fock module.
#[derive(Clone, Debug)]
pub struct Generators {
    pub a: CMat,
    pub ap: CMat,
    /// `(1 - e^{-w A+})/w`, built from its closed action.
    pub q: CMat,
    pub e: CMat,
    pub n: CMat,
}

pub fn rep_generators(p: &RepParams) -> Generators {
    let d = p.cutoff;
    let root = p.sigma().sqrt();
    let mut a = CMat::zeros(d, d);
    let mut q = CMat::zeros(d, d);
    let mut ap = CMat::zeros(d, d);
    for r in 0..d {
        if r >= 1 {
            a[(r - 1, r)] = root * (r as f64).sqrt();
        }
        if r + 1 < d {
            q[(r + 1, r)] = root * ((r + 1) as f64).sqrt();
        }
        // A+ |r⟩ = sum_k w^k/(k+1) σ^{(k+1)/2} sqrt((r+k+1)!/r!) |r+k+1⟩
        for k in 0..d.saturating_sub(r + 1) {
            let ratio = (factorial(r + k + 1) / factorial(r)).sqrt();
            ap[(r + k + 1, r)] = p.w.powu(k as u32) / (k + 1) as f64 * root.powu(k as u32 + 1) * ratio;
        }
    }
    let e = CMat::from_diagonal_element(d, d, p.e);
    let n = CMat::from_fn(d, d, |i, j| if i == j { C::from(i as f64) + p.n } else { C::from(0.0) });
    Generators { a, ap, q, e, n }
}

/// `(e^{w X} - 1)/w` as the series `sum_k w^{k-1} X^k / k!`.
fn expm1_over_w(x: &CMat, w: C) -> CMat {
    let dim = x.nrows();
    let mut out = CMat::zeros(dim, dim);
    let mut term = CMat::identity(dim, dim);
    for k in 1..=dim {
        term = &term * x / C::from(k as f64);
        if term.iter().all(|z| *z == C::from(0.0)) {
            break;
        }
        out += &term * w.powu(k as u32 - 1);
    }
    out
}

/// The defining relations in `π_{e,n}`, compared on rows below the last one (the only row
/// where a lowering operator applied after a raising one sees the cutoff).
pub fn check_rep_relations(p: &RepParams, tol: f64) -> CheckReport {
    let mut rec = Recorder::labelled("rep_relations", "fock", Truncation::new(1, 1));
    let g = rep_generators(p);
    let d = p.cutoff;
    let interior = |i: usize, _j: usize| i + 1 < d;
    let sigma = p.sigma();
    let exp_wap = exp_nilpotent(&(&g.ap * p.w));

    let mut compare = |what: &str, lhs: &CMat, rhs: &CMat| {
        let mut off = 0;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                if interior(i, j) {
                    let dev = (lhs[(i, j)] - rhs[(i, j)]).norm();
                    worst = worst.max(dev);
                    if dev > tol {
                        off += 1;
                    }
                }
            }
        }
        rec.mismatches(what, off, worst);
    };
    let comm = |x: &CMat, y: &CMat| x * y - y * x;
    compare("[A, A+] = sinh(he)/h e^{w A+}", &comm(&g.a, &g.ap), &(&exp_wap * sigma));
    compare("[N, A+] = (e^{w A+} - 1)/w", &comm(&g.n, &g.ap), &expm1_over_w(&g.ap, p.w));
    compare("[N, A] = -A", &comm(&g.n, &g.a), &(-&g.a));
    compare("[A, Q] = sinh(he)/h", &comm(&g.a, &g.q), &(CMat::identity(d, d) * sigma));
    compare("[N, Q] = Q", &comm(&g.n, &g.q), &g.q);
    // Q and A+ are two views of the same operator
    let q_from_ap = expm1_over_w(&g.ap, -p.w);
    compare("(1 - e^{-w A+})/w = Q", &q_from_ap, &g.q);
    for (name, x) in [("A", &g.a), ("A+", &g.ap), ("N", &g.n)] {
        compare(&format!("[E, {name}] = 0"), &comm(&g.e, x), &CMat::zeros(d, d));
    }
    rec.note(format!("D={d}, tol={tol:e}, interior rows r <= {}", d - 2));
    rec.finish()
}
