use serde::Serialize;

use super::rep::{letter_matrix, state_degree};
use super::trace::truncated_trace;
use super::word::BraidWord;
use crate::error::{Error, Result};
use crate::fock::{rinv_oracle_graded, rmatrix_oracle_graded, RepParams, WGraded, C};
use crate::hopf_verify::{CheckReport, Recorder};
use crate::series::Truncation;

/// `P(x) = q^{e(m - ζ(x))} Tr ρ_m(x)` with `q = e^h`, truncated at a per-strand cutoff.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantResult {
    pub braid: String,
    pub m: usize,
    pub writhe: i64,
    #[serde(rename = "P")]
    pub value: [f64; 2],
    #[serde(rename = "D")]
    pub cutoff: usize,
    /// `|P_D - P_{D-2}|`.
    pub tail: f64,
    pub converged: bool,
    #[serde(skip)]
    pub w_used: C,
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl InvariantResult {
    pub fn value(&self) -> C {
        C::new(self.value[0], self.value[1])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

/// `q^{e k}` read as `e^{h e k}`, matching `a = e^{he}` in the Turaev data.
fn prefactor(word: &BraidWord, p: &RepParams) -> C {
    (p.h * p.e * (word.strands as i64 - word.writhe()) as f64).exp()
}

/// `P(x)` with the given per-position cutoffs.
pub fn invariant_at(word: &BraidWord, p: &RepParams, cutoffs: &[usize]) -> C {
    prefactor(word, p) * truncated_trace(word, p, cutoffs)
}

/// `P(x)` at cutoff `p.cutoff` on every strand, with the tail `|P_D - P_{D-2}|`.
pub fn link_invariant(word: &BraidWord, p: &RepParams, tol: f64) -> InvariantResult {
    let d = p.cutoff;
    let m = word.strands;
    let value = invariant_at(word, p, &vec![d; m]);
    let tail = if d >= 4 {
        (value - invariant_at(word, p, &vec![d - 2; m])).norm()
    } else {
        f64::INFINITY
    };
    let mut notes = vec!["q = e^h".to_string()];
    if !p.in_trace_regime() {
        notes.push("Re(h e) <= 0: outside the trace regime".into());
    }
    InvariantResult {
        braid: word.to_string(),
        m,
        writhe: word.writhe(),
        value: [value.re, value.im],
        cutoff: d,
        tail,
        converged: tail < tol,
        w_used: p.w,
        notes,
    }
}

/// Turaev data `μ = 1`, `a = e^{he}`, `b = e^{-he}`: the partial traces
/// `Σ_j R_{i,j}^{k,j} = δ_i^k ab` and `Σ_j [R^{-1}]_{i,j}^{k,j} = δ_i^k a^{-1} b` for `i, k < rows`,
/// summed over `j < D`, with tails `|S_D - S_{D-2}|` reported.
pub fn check_turaev(p: &RepParams, rows: usize, tol: f64) -> Result<CheckReport> {
    let d = p.cutoff;
    if rows == 0 || rows > d {
        return Err(Error::InvalidParams(format!("rows must lie in 1..={d}")));
    }
    let mut rec = Recorder::labelled("turaev", "fock", Truncation::new(1, 1));
    rec.condition("μ = 1 commutes with R", true);
    let (a, b) = ((p.h * p.e).exp(), (-p.h * p.e).exp());
    let targets = [("R", false, a * b), ("R^{-1}", true, b / a)];
    let mut worst_tail = 0.0f64;
    for (name, inverse, target) in targets {
        let r = letter_matrix(p, p, inverse);
        let partial = |i: usize, k: usize, upto: usize| -> C {
            (0..upto).map(|j| r[(k * d + j, i * d + j)]).sum()
        };
        let (mut diag_off, mut diag_worst) = (0, 0.0f64);
        let (mut off_off, mut off_worst) = (0, 0.0f64);
        for i in 0..rows {
            for k in 0..rows {
                let want = if i == k { target } else { C::from(0.0) };
                let s = partial(i, k, d);
                if d > 2 {
                    worst_tail = worst_tail.max((s - partial(i, k, d - 2)).norm());
                }
                let dev = (s - want).norm();
                if i == k {
                    diag_worst = diag_worst.max(dev);
                    diag_off += usize::from(dev > tol);
                } else {
                    off_worst = off_worst.max(dev);
                    off_off += usize::from(dev > tol);
                }
            }
        }
        rec.mismatches(&format!("Σ_j {name}_{{i,j}}^{{i,j}} = {}", if inverse { "b/a" } else { "ab" }), diag_off, diag_worst);
        rec.mismatches(&format!("Σ_j {name}_{{i,j}}^{{k,j}} = 0 for i != k"), off_off, off_worst);
    }
    rec.note(format!("D={d}, rows={rows}, tol={tol:e}, worst tail {worst_tail:.3e}"));
    if p.w != C::from(0.0) {
        rec.note("i != k partial traces come from degree-raising entries and do not reach traces of braids");
    }
    Ok(rec.finish())
}

/// Markov moves at matched cutoffs: every cyclic shift of `x`, and `x σ_m^{±1}` with the new
/// strand truncated at `p.cutoff + extra`. Deviations are measured against `tol · max(1, |P|)`;
/// stabilization may also use up its own tail `|P_{D'} - P_{D'-2}|` in the new strand, which must
/// itself stay below `tail_tol · max(1, |P|)`.
pub fn check_markov(word: &BraidWord, p: &RepParams, extra: usize, tol: f64, tail_tol: f64) -> CheckReport {
    let d = p.cutoff;
    let m = word.strands;
    let mut rec = Recorder::labelled("markov", "fock", Truncation::new(1, 1));
    let base = invariant_at(word, p, &vec![d; m]);
    let allowed = tol * base.norm().max(1.0);
    let (mut off, mut worst) = (0, 0.0f64);
    for k in 1..word.len() {
        let dev = (invariant_at(&word.rotate(k), p, &vec![d; m]) - base).norm();
        worst = worst.max(dev);
        off += usize::from(dev > allowed);
    }
    rec.mismatches("P(xy) = P(yx)", off, worst);
    let cutoffs = |last: usize| {
        let mut c = vec![d; m];
        c.push(last);
        c
    };
    for (what, inverse) in [("P(x s_m) = P(x)", false), ("P(x s_m^-1) = P(x)", true)] {
        let stabilized = word.stabilize(inverse);
        let value = invariant_at(&stabilized, p, &cutoffs(d + extra));
        let tail = (value - invariant_at(&stabilized, p, &cutoffs(d + extra - 2))).norm();
        let dev = (value - base).norm();
        rec.mismatches(what, usize::from(dev > allowed + tail), dev);
        let scale = base.norm().max(1.0);
        rec.mismatches(&format!("{what}: new-strand tail"), usize::from(tail > tail_tol * scale), tail);
        rec.note(format!("{what}: deviation {dev:.3e}, new-strand tail {tail:.3e}"));
    }
    rec.note(format!("D={d}, new strand D={}, tol={tol:e} relative to |P|={:.6e}", d + extra, base.norm()));
    rec.finish()
}

/// `P(x)` at each `w` against the first one.
pub fn check_w_independence(word: &BraidWord, p: &RepParams, ws: &[C], tol: f64) -> CheckReport {
    let mut rec = Recorder::labelled("w_independence", "fock", Truncation::new(1, 1));
    let m = word.strands;
    let values: Vec<C> = ws.iter().map(|&w| invariant_at(word, &p.with_w(w), &vec![p.cutoff; m])).collect();
    let (mut off, mut worst) = (0, 0.0f64);
    for v in &values[1..] {
        let dev = (v - values[0]).norm();
        worst = worst.max(dev);
        off += usize::from(dev > tol);
    }
    rec.mismatches("P independent of w", off, worst);
    rec.note(format!("w in {:?}, D={}", ws.iter().map(|w| w.re).collect::<Vec<_>>(), p.cutoff));
    rec.finish()
}

/// `ρ_m(x)` with `w` kept formal: every power `w^k` must raise the total degree by exactly `k`,
/// so the degree-preserving blocks, and with them the trace, carry no `w`.
pub fn check_w_grading(word: &BraidWord, p: &RepParams, tol: f64) -> CheckReport {
    let d = p.cutoff;
    let m = word.strands;
    let mut rec = Recorder::labelled("w_grading", "fock", Truncation::new(1, 1));
    let len = m * (d - 1) + 1;
    let plus = rmatrix_oracle_graded(p, p).padded(len);
    let minus = rinv_oracle_graded(p, p).padded(len);
    let dim = d.pow(m as u32);
    let mut acc = WGraded::identity(dim, len);
    for l in word.letters.iter().rev() {
        let pair = if l.inverse { &minus } else { &plus };
        let left = d.pow(l.index as u32 - 1);
        let right = d.pow((m - l.index - 1) as u32);
        acc = pair.embed(left, right).mul(&acc);
    }
    let deg = |i: usize| state_degree(i, d, m);
    let violations = acc.degree_violations_by(deg, tol);
    rec.mismatches("w^k raises total degree by k", violations, 0.0);
    rec.condition("degree-preserving blocks free of w", acc.diagonal_blocks_w_free_by(deg, tol));
    rec.note(format!("D={d}, m={m}"));
    rec.finish()
}
