use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{exp_nilpotent, factorial, flip, max_deviation, rep_generators, CMat, RepParams, C};
use crate::hopf_verify::{CheckReport, Recorder};
use crate::series::Truncation;

/// How to read the closed-form R-matrix elements.
///
/// `Literal` takes the printed formulas at face value: `f_0^s = 1` for every `s`, and the
/// inverse sum capped at `r2`. `Corrected` uses `f_0^s = δ_{s,0}` (the empty composition)
/// and drops the `r2` cap, which is what the factorized R-matrix produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    Literal,
    Corrected,
}

/// `table[k][s]` = sum over compositions `i_1 + … + i_k = s` of `prod 1/(i_j + 1)`.
fn composition_table(max: usize) -> Vec<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(max + 1);
    rows.push((0..=max).map(|t| if t == 0 { BigRational::one() } else { BigRational::zero() }).collect());
    for k in 1..=max {
        let prev = &rows[k - 1];
        let next = (0..=max)
            .map(|t| {
                (0..=t).fold(BigRational::zero(), |acc, i| {
                    acc + &prev[t - i] / BigRational::from_integer((i as i64 + 1).into())
                })
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// The coefficient `f_k^s` entering `φ` and `φ̄`.
pub fn f_coefficient(k: usize, s: usize, reading: Reading) -> BigRational {
    if k == 0 && reading == Reading::Literal {
        return BigRational::one();
    }
    composition_table(k.max(s)).swap_remove(k).swap_remove(s)
}

/// `f_k^s` for `k, s <= max` as floats, by the same recursion as the exact table.
struct FTable(Vec<Vec<f64>>);

impl FTable {
    fn new(max: usize, reading: Reading) -> Self {
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max + 1);
        rows.push((0..=max).map(|t| if t == 0 { 1.0 } else { 0.0 }).collect());
        for k in 1..=max {
            let prev = &rows[k - 1];
            let next = (0..=max).map(|t| (0..=t).map(|i| prev[t - i] / (i + 1) as f64).sum()).collect();
            rows.push(next);
        }
        if reading == Reading::Literal {
            rows[0].fill(1.0);
        }
        FTable(rows)
    }

    fn phi(&self, m: i64, x: C, sign: f64) -> C {
        if m < 0 {
            return C::from(0.0);
        }
        let m = m as usize;
        let mut acc = C::from(0.0);
        let mut xk = C::from(1.0);
        for k in 0..=m {
            acc += xk * (self.0[k][m - k] / factorial(k));
            xk *= x * sign;
        }
        acc
    }
}

/// `φ_m(r + n1)` and `φ̄_m(r + n2)` for all `r < d`, `m <= 2d`.
struct Phis {
    plus: Vec<Vec<C>>,
    minus: Vec<Vec<C>>,
}

impl Phis {
    fn new(p1: &RepParams, p2: &RepParams, d: usize, reading: Reading) -> Self {
        let f = FTable::new(2 * d + 2, reading);
        let table = |n: C, sign: f64| -> Vec<Vec<C>> {
            (0..d)
                .map(|r| (0..=2 * d as i64 + 2).map(|m| f.phi(m, C::from(r as f64) + n, sign)).collect())
                .collect()
        };
        Phis { plus: table(p1.n, 1.0), minus: table(p2.n, -1.0) }
    }

    fn plus(&self, m: i64, r: usize) -> C {
        if m < 0 {
            C::from(0.0)
        } else {
            self.plus[r][m as usize]
        }
    }

    fn minus(&self, m: i64, r: usize) -> C {
        if m < 0 {
            C::from(0.0)
        } else {
            self.minus[r][m as usize]
        }
    }
}

/// `φ_m(x) = sum_{k<=m} f_k^{m-k} x^k / k!`.
pub fn phi(m: i64, x: C, reading: Reading) -> C {
    FTable::new(m.max(0) as usize, reading).phi(m, x, 1.0)
}

/// `φ̄_m(x) = sum_{k<=m} (-1)^k f_k^{m-k} x^k / k!`.
pub fn phi_bar(m: i64, x: C, reading: Reading) -> C {
    FTable::new(m.max(0) as usize, reading).phi(m, x, -1.0)
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Common prefactor `w^{Δ} σ1^{(r2'-r1)/2} σ2^{(r1'-r2)/2} sqrt(r1'! r2'!/(r1! r2!))`.
fn prefactor(p1: &RepParams, p2: &RepParams, [r1, r2, r1p, r2p]: [usize; 4]) -> C {
    let deg = (r1p + r2p) as i32 - (r1 + r2) as i32;
    let w_pow = if deg == 0 { C::from(1.0) } else { p1.w.powi(deg) };
    let s1 = p1.sigma().sqrt().powi(r2p as i32 - r1 as i32);
    let s2 = p2.sigma().sqrt().powi(r1p as i32 - r2 as i32);
    let fact = (factorial(r1p) * factorial(r2p) / (factorial(r1) * factorial(r2))).sqrt();
    w_pow * s1 * s2 * fact
}

fn forward_entry(p1: &RepParams, p2: &RepParams, idx: [usize; 4], f: &Phis) -> C {
    let [r1, r2, r1p, r2p] = idx;
    if r1p + r2p < r1 + r2 {
        return C::from(0.0);
    }
    let (r1i, r2i, r1pi, r2pi) = (r1 as i64, r2 as i64, r1p as i64, r2p as i64);
    let lo = (r1i - r2pi).max(0);
    let hi = r1i.min(r1pi - r2i);
    if hi < lo {
        return C::from(0.0);
    }
    let h = p1.h;
    let two_sinh = (h * p1.e).sinh() * 2.0;
    let mut sum = C::from(0.0);
    for s in lo..=hi {
        let term = f.plus(r1pi - r2i - s, r1) * f.minus(r2pi - r1i + s, r1p);
        if term == C::from(0.0) {
            continue;
        }
        sum += term
            * binom(r1, s as usize)
            * two_sinh.powi(s as i32)
            * (h * (s as f64 - 2.0 * r1p as f64) * p1.e).exp();
    }
    prefactor(p1, p2, idx) * sum
}

fn inverse_entry(
    p1: &RepParams,
    p2: &RepParams,
    idx: [usize; 4],
    f: &Phis,
    reading: Reading,
) -> C {
    let [r1, r2, r1p, r2p] = idx;
    if r1p + r2p < r1 + r2 {
        return C::from(0.0);
    }
    let (r1i, r2i, r1pi, r2pi) = (r1 as i64, r2 as i64, r1p as i64, r2p as i64);
    let lo = (r2i - r1pi).max(0);
    let hi = match reading {
        Reading::Literal => r2i.min(r2pi - r1i),
        Reading::Corrected => r2pi - r1i,
    };
    if hi < lo {
        return C::from(0.0);
    }
    let h = p1.h;
    let two_sinh = (h * p2.e).sinh() * 2.0;
    let mut sum = C::from(0.0);
    for s in lo..=hi {
        let term = f.plus(r1pi - r2i + s, r1) * f.minus(r2pi - r1i - s, r1p);
        if term == C::from(0.0) {
            continue;
        }
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        sum += term
            * sign
            * binom(r1p + s as usize, s as usize)
            * two_sinh.powi(s as i32)
            * (h * (s as f64 + 2.0 * r1 as f64) * p2.e).exp();
    }
    prefactor(p1, p2, idx) * sum
}


/// `[R]_{r1,r2}^{r1',r2'}(e1, e2)` from the closed form, `idx = [r1, r2, r1', r2']`.
/// `h` and `w` are taken from `p1`.
pub fn rmatrix_formula(p1: &RepParams, p2: &RepParams, idx: [usize; 4], reading: Reading) -> C {
    let d = idx.iter().copied().max().unwrap_or(0) + 1;
    forward_entry(p1, p2, idx, &Phis::new(p1, p2, d, reading))
}

/// `[R^{-1}]_{r1,r2}^{r1',r2'}(e1, e2)`: elements of the inverse of `R(e2, e1)`, a map
/// `V_{e1} ⊗ V_{e2} → V_{e2} ⊗ V_{e1}` like `R(e1, e2)`.
pub fn rinv_formula(p1: &RepParams, p2: &RepParams, idx: [usize; 4], reading: Reading) -> C {
    let d = idx.iter().copied().max().unwrap_or(0) + 1;
    inverse_entry(p1, p2, idx, &Phis::new(p1, p2, d, reading), reading)
}

fn fill(d: usize, entry: impl FnMut([usize; 4]) -> C) -> CMat {
    fill_where(d, |_| true, entry)
}

fn fill_where(d: usize, keep: impl Fn([usize; 4]) -> bool, mut entry: impl FnMut([usize; 4]) -> C) -> CMat {
    let mut m = CMat::zeros(d * d, d * d);
    for r1 in 0..d {
        for r2 in 0..d {
            for r1p in 0..d {
                for r2p in 0..d {
                    if keep([r1, r2, r1p, r2p]) {
                        m[(r1p * d + r2p, r1 * d + r2)] = entry([r1, r2, r1p, r2p]);
                    }
                }
            }
        }
    }
    m
}

/// All elements of `R(e1, e2)` below the cutoff of `p1`.
pub fn rmatrix_formula_matrix(p1: &RepParams, p2: &RepParams, reading: Reading) -> CMat {
    let f = Phis::new(p1, p2, p1.cutoff, reading);
    fill(p1.cutoff, |idx| forward_entry(p1, p2, idx, &f))
}

/// Only the elements preserving total degree, the ones that enter traces; zero elsewhere.
pub(crate) fn degree_preserving_matrix(p1: &RepParams, p2: &RepParams, inverse: bool) -> CMat {
    let f = Phis::new(p1, p2, p1.cutoff, Reading::Corrected);
    let keep = |[r1, r2, r1p, r2p]: [usize; 4]| r1 + r2 == r1p + r2p;
    if inverse {
        fill_where(p1.cutoff, keep, |idx| inverse_entry(p1, p2, idx, &f, Reading::Corrected))
    } else {
        fill_where(p1.cutoff, keep, |idx| forward_entry(p1, p2, idx, &f))
    }
}

pub fn rinv_formula_matrix(p1: &RepParams, p2: &RepParams, reading: Reading) -> CMat {
    let f = Phis::new(p1, p2, p1.cutoff, reading);
    fill(p1.cutoff, |idx| inverse_entry(p1, p2, idx, &f, reading))
}

/// Represented factors of the universal R-matrix on `V_a ⊗ V_b`:
/// `(e^{-w A+⊗N}, e^{-2h E⊗N}, exp(2h e^{hE}A⊗Q), e^{w N⊗A+})`.
fn factors(pa: &RepParams, pb: &RepParams) -> [CMat; 4] {
    let (h, w) = (pa.h, pa.w);
    let ga = rep_generators(pa);
    let gb = rep_generators(&RepParams { h, w, cutoff: pa.cutoff, ..*pb });
    let d = pa.cutoff;
    let x = exp_nilpotent(&(ga.ap.kronecker(&gb.n) * -w));
    let mut y = CMat::zeros(d * d, d * d);
    for r1 in 0..d {
        for r2 in 0..d {
            y[(r1 * d + r2, r1 * d + r2)] = (h * pa.e * (C::from(r2 as f64) + pb.n) * -2.0).exp();
        }
    }
    let z = exp_nilpotent(&(ga.a.kronecker(&gb.q) * (h * (h * pa.e).exp() * 2.0)));
    let wf = exp_nilpotent(&(ga.n.kronecker(&gb.ap) * w));
    [x, y, z, wf]
}

/// `R(e1, e2) = e^{2h e1 n2} σ (π_{e1} ⊗ π_{e2})(R)` from the factorized universal R-matrix.
/// Exact on every element below the cutoff: each factor is monotone in each slot.
pub fn rmatrix_oracle(p1: &RepParams, p2: &RepParams) -> CMat {
    let [x, y, z, w] = factors(p1, p2);
    let pref = (p1.h * p1.e * p2.n * 2.0).exp();
    flip(p1.cutoff) * (x * y * z * w) * pref
}

/// `R(e2, e1)^{-1} = e^{-2h e2 n1} (π_{e2} ⊗ π_{e1})(R^{-1}) σ`, inverting each factor.
/// Exact on outputs of total degree below the cutoff.
pub fn rinv_oracle(p1: &RepParams, p2: &RepParams) -> CMat {
    let p2 = RepParams { h: p1.h, w: p1.w, ..*p2 };
    let [x, y, z, w] = factors(&p2, p1);
    let inv = |m: &CMat| m.clone().try_inverse().expect("unipotent or diagonal factor");
    let r_inv = inv(&w) * inv(&z) * inv(&y) * inv(&x);
    let pref = (-p1.h * p2.e * p1.n * 2.0).exp();
    r_inv * flip(p1.cutoff) * pref
}

/// The `w = 0` elements of `R(e1, e2)` in closed form.
pub fn gomez_sierra(p1: &RepParams, p2: &RepParams, [r1, r2, r1p, r2p]: [usize; 4]) -> C {
    if r1p + r2p != r1 + r2 || r2p > r1 || r2 > r1p {
        return C::from(0.0);
    }
    let h = p1.h;
    let k = (r1p - r2) as i32;
    let root = ((h * p1.e).sinh() * 2.0).sqrt() * ((h * p2.e).sinh() * 2.0).sqrt();
    C::from((binom(r1, r2p) * binom(r1p, r2)).sqrt())
        * (-h * (r1p + r2) as f64 * p1.e).exp()
        * root.powi(k)
}

/// The `w = 0` elements of `R(e2, e1)^{-1}` in closed form.
pub fn gomez_sierra_inverse(p1: &RepParams, p2: &RepParams, [r1, r2, r1p, r2p]: [usize; 4]) -> C {
    if r1p + r2p != r1 + r2 || r1p > r2 || r1 > r2p {
        return C::from(0.0);
    }
    let h = p1.h;
    let k = (r2 - r1p) as i32;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let root = ((h * p1.e).sinh() * 2.0).sqrt() * ((h * p2.e).sinh() * 2.0).sqrt();
    C::from(sign * (binom(r2, r1p) * binom(r2p, r1)).sqrt())
        * (h * (r2p + r1) as f64 * p2.e).exp()
        * root.powi(k)
}

/// Closed forms against the factorized oracle, and `R(e2,e1) R^{-1}(e1,e2) = 1` on
/// low-degree states; at `w = 0` also against the Gomez-Sierra closed forms.
pub fn check_formula_vs_oracle(
    p1: &RepParams,
    p2: &RepParams,
    reading: Reading,
    tol: f64,
) -> CheckReport {
    let mut rec = Recorder::labelled("rmatrix_formula", "fock", Truncation::new(1, 1));
    let d = p1.cutoff;
    let p2 = RepParams { h: p1.h, w: p1.w, cutoff: d, ..*p2 };
    let low = |i: usize| i / d + i % d < d;
    let mut compare = |what: &str, a: &CMat, b: &CMat, interior_only: bool| {
        let (worst, _) = max_deviation(a, b, |i, _| !interior_only || low(i));
        let mut off = 0;
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                if (!interior_only || low(i)) && (a[(i, j)] - b[(i, j)]).norm() > tol {
                    off += 1;
                }
            }
        }
        rec.mismatches(what, off, worst);
    };

    let r = rmatrix_formula_matrix(p1, &p2, reading);
    let r_or = rmatrix_oracle(p1, &p2);
    compare("R formula = oracle", &r, &r_or, false);
    let ri = rinv_formula_matrix(p1, &p2, reading);
    let ri_or = rinv_oracle(p1, &p2);
    compare("R^{-1} formula = oracle", &ri, &ri_or, true);

    // R(e2, e1) undoes R^{-1}(e1, e2) on V_{e1} ⊗ V_{e2}
    let r21 = rmatrix_oracle(&p2, p1);
    let id = CMat::identity(d * d, d * d);
    compare("R(e2,e1) R^{-1}(e1,e2) = 1", &(&r21 * &ri_or), &id, true);

    if p1.w == C::from(0.0) {
        let gs = fill(d, |idx| gomez_sierra(p1, &p2, idx));
        let gsi = fill(d, |idx| gomez_sierra_inverse(p1, &p2, idx));
        compare("R at w=0 = Gomez-Sierra", &r, &gs, false);
        compare("R^{-1} at w=0 = Gomez-Sierra", &ri, &gsi, true);
    }
    rec.note(format!("reading={reading:?}, D={d}, tol={tol:e}"));
    if reading == Reading::Corrected {
        rec.note("f_0^s = δ_{s,0}; inverse sum runs to r2' - r1 without the r2 cap");
    }
    rec.finish()
}
