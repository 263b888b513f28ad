use num_traits::Zero;

use super::{CMat, C};
use crate::error::Result;
use crate::hopf_verify::elements::r_matrix;
use crate::pbw::{Algebra, Monomial, PbwElement, Preset};
use crate::series::{int, TruncatedSeries, Truncation};

type M3 = [[i64; 3]; 3];

/// The undeformed three-dimensional representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pi3 {
    pub a: M3,
    pub ap: M3,
    pub e: M3,
    pub n: M3,
}

fn unit(i: usize, j: usize) -> M3 {
    let mut m = [[0; 3]; 3];
    m[i][j] = 1;
    m
}

pub fn pi3_generators() -> Pi3 {
    Pi3 { a: unit(0, 1), ap: unit(1, 2), e: unit(0, 2), n: unit(1, 1) }
}

fn mul3(x: &M3, y: &M3) -> M3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

fn pow3(x: &M3, k: u16) -> M3 {
    (0..k).fold([[1, 0, 0], [0, 1, 0], [0, 0, 1]], |acc, _| mul3(&acc, x))
}

fn monomial3(m: &Monomial) -> M3 {
    let g = pi3_generators();
    [pow3(&g.e, m.e), pow3(&g.ap, m.ap), pow3(&g.n, m.n), pow3(&g.a, m.a)]
        .iter()
        .fold([[1, 0, 0], [0, 1, 0], [0, 0, 1]], |acc, x| mul3(&acc, x))
}

/// Square matrix with series entries.
pub type SeriesMatrix = Vec<Vec<TruncatedSeries>>;

fn zeros(n: usize, trunc: Truncation) -> SeriesMatrix {
    vec![vec![TruncatedSeries::zero(trunc); n]; n]
}

/// `π_3(x)` with exact series entries.
pub fn pi3_eval(alg: &Algebra, x: &PbwElement) -> SeriesMatrix {
    let mut out = zeros(3, alg.truncation());
    for (m, c) in x.terms() {
        let mm = monomial3(m);
        for i in 0..3 {
            for j in 0..3 {
                if mm[i][j] != 0 {
                    out[i][j] = &out[i][j] + &c.scale(&int(mm[i][j]));
                }
            }
        }
    }
    out
}

/// `(π_3 ⊗ π_3)(R)` obtained from the universal two-parameter R-matrix.
pub fn pi3_rmatrix_from_universal(alg: &Algebra) -> Result<SeriesMatrix> {
    let r = r_matrix(alg, Preset::TwoParameter)?;
    let mut out = zeros(9, alg.truncation());
    for (key, c) in r.terms() {
        let (m1, m2) = (monomial3(&key.slot(0)), monomial3(&key.slot(1)));
        for (i1, j1, i2, j2) in iproduct4() {
            let v = m1[i1][j1] * m2[i2][j2];
            if v != 0 {
                let cell = &mut out[i1 * 3 + i2][j1 * 3 + j2];
                *cell = &*cell + &c.scale(&int(v));
            }
        }
    }
    Ok(out)
}

fn iproduct4() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..81).map(|k| (k / 27, (k / 9) % 3, (k / 3) % 3, k % 3))
}

/// The 9×9 matrix in 3×3 blocks: `[[I, 2h A+, -2h N], [0, I + w A+, -w N], [0, 0, I]]`,
/// block `(i, j)` multiplying the first-factor unit `E_ij`.
pub fn pi3_rmatrix_literal(trunc: Truncation) -> SeriesMatrix {
    let g = pi3_generators();
    let h = TruncatedSeries::h(trunc);
    let w = TruncatedSeries::w(trunc);
    let one = TruncatedSeries::one(trunc);
    let id: M3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let blocks: Vec<((usize, usize), Vec<(TruncatedSeries, M3)>)> = vec![
        ((0, 0), vec![(one.clone(), id)]),
        ((0, 1), vec![(h.scale(&int(2)), g.ap)]),
        ((0, 2), vec![(h.scale(&int(-2)), g.n)]),
        ((1, 1), vec![(one.clone(), id), (w.clone(), g.ap)]),
        ((1, 2), vec![(w.scale(&int(-1)), g.n)]),
        ((2, 2), vec![(one, id)]),
    ];
    let mut out = zeros(9, trunc);
    for ((bi, bj), parts) in blocks {
        for (c, m) in parts {
            for i in 0..3 {
                for j in 0..3 {
                    if m[i][j] != 0 {
                        let cell = &mut out[bi * 3 + i][bj * 3 + j];
                        *cell = &*cell + &c.scale(&int(m[i][j]));
                    }
                }
            }
        }
    }
    out
}

/// The 9×9 matrix at numeric `h`, `w`.
pub fn pi3_rmatrix_numeric(h: C, w: C) -> CMat {
    let m = pi3_rmatrix_literal(Truncation::new(2, 2));
    CMat::from_fn(9, 9, |i, j| {
        m[i][j].terms().fold(C::zero(), |acc, ((a, b), c)| {
            use num_traits::ToPrimitive;
            acc + h.powu(*a) * w.powu(*b) * c.to_f64().unwrap_or(f64::NAN)
        })
    })
}
