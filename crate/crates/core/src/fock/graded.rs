//! Matrices polynomial in `w`, used to see how `w` enters the represented R-matrix.

use super::{rep_generators, CMat, RepParams, C};

/// `sum_k w^k coeffs[k]`.
#[derive(Clone, Debug)]
pub struct WGraded {
    pub coeffs: Vec<CMat>,
}

impl WGraded {
    fn zeros(dim: usize, len: usize) -> Self {
        WGraded { coeffs: vec![CMat::zeros(dim, dim); len] }
    }

    fn constant(m: CMat, len: usize) -> Self {
        let mut g = Self::zeros(m.nrows(), len);
        g.coeffs[0] = m;
        g
    }

    pub fn identity(dim: usize, len: usize) -> Self {
        Self::constant(CMat::identity(dim, dim), len)
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].nrows()
    }

    pub fn mul(&self, other: &WGraded) -> WGraded {
        let len = self.coeffs.len();
        let mut out = Self::zeros(self.dim(), len);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    fn scale(&self, c: C) -> WGraded {
        WGraded { coeffs: self.coeffs.iter().map(|m| m * c).collect() }
    }

    /// `exp` of a matrix nilpotent on the truncated space.
    fn exp(&self) -> WGraded {
        let dim = self.dim();
        let mut out = Self::constant(CMat::identity(dim, dim), self.coeffs.len());
        let mut term = out.clone();
        for k in 1..=dim {
            term = term.mul(self).scale(C::from(1.0 / k as f64));
            if term.coeffs.iter().all(|m| m.iter().all(|z| *z == C::from(0.0))) {
                break;
            }
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                *o += t;
            }
        }
        out
    }

    pub fn eval(&self, w: C) -> CMat {
        let mut out = CMat::zeros(self.dim(), self.dim());
        for m in self.coeffs.iter().rev() {
            out = out * w + m;
        }
        out
    }

    /// Same polynomial with room for powers of `w` below `len`.
    pub fn padded(&self, len: usize) -> WGraded {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len.max(coeffs.len()), CMat::zeros(self.dim(), self.dim()));
        WGraded { coeffs }
    }

    /// `1_{left} ⊗ self ⊗ 1_{right}`.
    pub fn embed(&self, left: usize, right: usize) -> WGraded {
        let (l, r) = (CMat::identity(left, left), CMat::identity(right, right));
        WGraded { coeffs: self.coeffs.iter().map(|m| l.kronecker(m).kronecker(&r)).collect() }
    }

    /// Entries where `w^k` appears with `k` different from the change in total degree,
    /// on a two-fold space of per-slot dimension `d`.
    pub fn degree_violations(&self, d: usize, tol: f64) -> usize {
        self.degree_violations_by(|i| i / d + i % d, tol)
    }

    /// As [`WGraded::degree_violations`] with an arbitrary degree of basis states.
    pub fn degree_violations_by(&self, deg: impl Fn(usize) -> usize, tol: f64) -> usize {
        let mut bad = 0;
        for (k, m) in self.coeffs.iter().enumerate() {
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    if m[(i, j)].norm() > tol && deg(i) as i64 - deg(j) as i64 != k as i64 {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Whether every `w^k`, `k > 0`, vanishes on the degree-preserving blocks.
    pub fn diagonal_blocks_w_free(&self, d: usize, tol: f64) -> bool {
        self.diagonal_blocks_w_free_by(|i| i / d + i % d, tol)
    }

    pub fn diagonal_blocks_w_free_by(&self, deg: impl Fn(usize) -> usize, tol: f64) -> bool {
        self.coeffs.iter().skip(1).all(|m| {
            (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| deg(i) != deg(j) || m[(i, j)].norm() <= tol))
        })
    }
}

/// Exponents of the four factors on `V_a ⊗ V_b`; the diagonal factor is returned as its value.
fn graded_factors(pa: &RepParams, pb: &RepParams, sign: f64) -> [WGraded; 4] {
    let d = pa.cutoff;
    let len = 2 * d - 1;
    let h = pa.h;
    let ga = rep_generators(&RepParams { w: C::from(0.0), ..*pa });
    let gb = rep_generators(&RepParams { h, w: C::from(0.0), cutoff: d, ..*pb });
    // A+ = sum_k w^k Q^{k+1}/(k+1)
    let ap = |q: &CMat| {
        let mut g = WGraded::zeros(d, len);
        let mut qk = q.clone();
        for k in 0..d.saturating_sub(1).min(len) {
            g.coeffs[k] = &qk / C::from((k + 1) as f64);
            qk = &qk * q;
        }
        g
    };
    let kron = |g: &WGraded, m: &CMat, left: bool| WGraded {
        coeffs: g.coeffs.iter().map(|c| if left { c.kronecker(m) } else { m.kronecker(c) }).collect(),
    };
    let shift = |g: WGraded| {
        // multiply by w
        let mut coeffs = vec![CMat::zeros(g.dim(), g.dim())];
        coeffs.extend(g.coeffs.into_iter().take(len - 1));
        WGraded { coeffs }
    };
    let x = shift(kron(&ap(&ga.q), &gb.n, true)).scale(C::from(-sign)).exp();
    let y = CMat::from_fn(d * d, d * d, |i, j| {
        if i == j {
            (h * pa.e * (C::from((i % d) as f64) + pb.n) * (-2.0 * sign)).exp()
        } else {
            C::from(0.0)
        }
    });
    let z = WGraded::constant(ga.a.kronecker(&gb.q) * (h * (h * pa.e).exp() * 2.0 * sign), len).exp();
    let wf = shift(kron(&ap(&gb.q), &ga.n, false)).scale(C::from(sign)).exp();
    [x, WGraded::constant(y, len), z, wf]
}

fn flip_graded(g: WGraded, d: usize, left: bool) -> WGraded {
    let f = super::flip(d);
    WGraded { coeffs: g.coeffs.into_iter().map(|m| if left { &f * m } else { m * &f }).collect() }
}

/// `R(e1, e2)` as a polynomial in `w`; agrees with the numeric oracle after evaluation.
pub fn rmatrix_oracle_graded(p1: &RepParams, p2: &RepParams) -> WGraded {
    let [x, y, z, w] = graded_factors(p1, p2, 1.0);
    let pref = (p1.h * p1.e * p2.n * 2.0).exp();
    flip_graded(x.mul(&y).mul(&z).mul(&w).scale(pref), p1.cutoff, true)
}

/// `R(e2, e1)^{-1}` as a polynomial in `w`.
pub fn rinv_oracle_graded(p1: &RepParams, p2: &RepParams) -> WGraded {
    let p2 = RepParams { h: p1.h, ..*p2 };
    let [x, y, z, w] = graded_factors(&p2, p1, -1.0);
    let pref = (-p1.h * p2.e * p1.n * 2.0).exp();
    flip_graded(w.mul(&z).mul(&y).mul(&x).scale(pref), p1.cutoff, false)
}
