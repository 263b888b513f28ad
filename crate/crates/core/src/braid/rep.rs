use std::collections::HashMap;

use super::word::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::fock::{degree_preserving_matrix, rinv_formula_matrix, rmatrix_formula_matrix, CMat, RepParams, Reading};
use crate::hopf_verify::{CheckReport, Recorder};
use crate::series::Truncation;

/// `R(e1, e2)` or `R^{-1}(e1, e2)` on `V_{e1} ⊗ V_{e2} → V_{e2} ⊗ V_{e1}`.
pub fn letter_matrix(p1: &RepParams, p2: &RepParams, inverse: bool) -> CMat {
    let p2 = RepParams { h: p1.h, w: p1.w, cutoff: p1.cutoff, ..*p2 };
    if inverse {
        rinv_formula_matrix(p1, &p2, Reading::Corrected)
    } else {
        rmatrix_formula_matrix(p1, &p2, Reading::Corrected)
    }
}

/// Letter matrices shared across a word, keyed by sign and the colors they act on.
#[derive(Default)]
pub(crate) struct LetterCache {
    entries: HashMap<(bool, [u64; 8]), CMat>,
    diagonal_only: bool,
}

fn color_key(p1: &RepParams, p2: &RepParams) -> [u64; 8] {
    [
        p1.e.re.to_bits(),
        p1.e.im.to_bits(),
        p1.n.re.to_bits(),
        p1.n.im.to_bits(),
        p2.e.re.to_bits(),
        p2.e.im.to_bits(),
        p2.n.re.to_bits(),
        p2.n.im.to_bits(),
    ]
}

impl LetterCache {
    /// Cache that keeps only degree-preserving elements, enough for traces.
    pub(crate) fn for_traces() -> Self {
        LetterCache { entries: HashMap::new(), diagonal_only: true }
    }

    pub(crate) fn get(&mut self, p1: &RepParams, p2: &RepParams, inverse: bool) -> &CMat {
        self.entries
            .entry((inverse, color_key(p1, p2)))
            .or_insert_with(|| {
                if self.diagonal_only {
                    let p2 = RepParams { h: p1.h, w: p1.w, cutoff: p1.cutoff, ..*p2 };
                    degree_preserving_matrix(p1, &p2, inverse)
                } else {
                    letter_matrix(p1, p2, inverse)
                }
            })
    }
}

/// `ρ_m(x)` on the truncated `m`-fold tensor product, with any warnings about the parameters.
#[derive(Clone, Debug)]
pub struct BraidRep {
    pub matrix: CMat,
    pub cutoff: usize,
    pub strands: usize,
    pub warnings: Vec<String>,
}

impl BraidRep {
    /// Total Fock degree of a basis state of the tensor product.
    pub fn degree(&self, index: usize) -> usize {
        state_degree(index, self.cutoff, self.strands)
    }
}

pub(crate) fn state_degree(mut index: usize, d: usize, m: usize) -> usize {
    let mut deg = 0;
    for _ in 0..m {
        deg += index % d;
        index /= d;
    }
    deg
}

/// Checks the strand colors against the word and the shared `h`, `w`, cutoff.
pub(crate) fn validate_colors(word: &BraidWord, colors: &[RepParams]) -> Result<Vec<String>> {
    if colors.len() != word.strands {
        return Err(Error::InvalidParams(format!(
            "{} strand colors given for a braid on {} strands",
            colors.len(),
            word.strands
        )));
    }
    let p0 = colors[0];
    if colors.iter().any(|c| c.h != p0.h || c.w != p0.w || c.cutoff != p0.cutoff) {
        return Err(Error::InvalidParams("strands must share h, w and the cutoff".into()));
    }
    let mut warnings = Vec::new();
    if let Some((i, _)) = colors.iter().enumerate().find(|(_, c)| !c.in_trace_regime()) {
        warnings.push(format!("Re(h e) <= 0 on strand {}; traces need not converge", i + 1));
    }
    Ok(warnings)
}

/// The colored representation `σ_i ↦ 1 ⊗ R^{c_i, c_{i+1}} ⊗ 1`, letters applied right to left.
/// `colors[p]` is the module at position `p` before the word acts; colors travel with strands.
pub fn braid_rep(word: &BraidWord, colors: &[RepParams]) -> Result<BraidRep> {
    let warnings = validate_colors(word, colors)?;
    let d = colors[0].cutoff;
    let m = word.strands;
    let dim = d.pow(m as u32);
    let mut cache = LetterCache::default();
    let mut current = colors.to_vec();
    let mut out = CMat::identity(dim, dim);
    for &Letter { index, inverse } in word.letters.iter().rev() {
        let pair = cache.get(&current[index - 1], &current[index], inverse);
        let left = CMat::identity(d.pow(index as u32 - 1), d.pow(index as u32 - 1));
        let right = CMat::identity(d.pow((m - index - 1) as u32), d.pow((m - index - 1) as u32));
        out = left.kronecker(pair).kronecker(&right) * out;
        current.swap(index - 1, index);
    }
    Ok(BraidRep { matrix: out, cutoff: d, strands: m, warnings })
}

/// Braid relations in `ρ_m`, compared on rows of total degree below the cutoff, where
/// truncated products agree with the untruncated ones. `colors` gives three or more strands;
/// colored relations follow from tracking colors along the strands.
pub fn check_braid_relations(colors: &[RepParams], tol: f64) -> Result<CheckReport> {
    let m = colors.len();
    if m < 3 {
        return Err(Error::InvalidParams("braid relations need at least three strands".into()));
    }
    let colored = colors.iter().any(|c| c.e != colors[0].e || c.n != colors[0].n);
    let label = if colored { "colored" } else { "noncolored" };
    let mut rec = Recorder::labelled("braid_relations", label, Truncation::new(1, 1));
    let d = colors[0].cutoff;
    let s = |i: usize| Letter { index: i, inverse: false };
    let word = |letters: Vec<Letter>| BraidWord::new(m, letters);

    let mut compare = |what: &str, x: BraidWord, y: BraidWord| -> Result<()> {
        let a = braid_rep(&x, colors)?;
        let b = braid_rep(&y, colors)?;
        let (mut off, mut worst) = (0, 0.0f64);
        for i in 0..a.matrix.nrows() {
            if a.degree(i) >= d {
                continue;
            }
            for j in 0..a.matrix.ncols() {
                let dev = (a.matrix[(i, j)] - b.matrix[(i, j)]).norm();
                worst = worst.max(dev);
                if dev > tol {
                    off += 1;
                }
            }
        }
        rec.mismatches(what, off, worst);
        Ok(())
    };
    for i in 1..m - 1 {
        compare(
            &format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1),
            word(vec![s(i), s(i + 1), s(i)])?,
            word(vec![s(i + 1), s(i), s(i + 1)])?,
        )?;
    }
    for i in 1..m {
        compare(&format!("s{i} s{i}^-1 = 1"), word(vec![s(i), s(i).inv()])?, BraidWord::identity(m))?;
        compare(&format!("s{i}^-1 s{i} = 1"), word(vec![s(i).inv(), s(i)])?, BraidWord::identity(m))?;
    }
    for i in 1..m {
        for j in i + 2..m {
            compare(&format!("s{i} s{j} = s{j} s{i}"), word(vec![s(i), s(j)])?, word(vec![s(j), s(i)])?)?;
        }
    }
    rec.note(format!("m={m}, D={d}, tol={tol:e}, rows of total degree < {d}"));
    Ok(rec.finish())
}
