//! Traces of `ρ_m(x)` computed block by block in total Fock degree.
//!
//! Every letter is block upper triangular in total degree, so the diagonal block of a
//! product is the product of diagonal blocks and only those enter the trace. This keeps
//! large cutoffs and extra strands affordable.

use super::rep::LetterCache;
use super::word::BraidWord;
use crate::fock::{CMat, RepParams, C};

/// Basis states grouped by total degree; `slot[flat]` is a state's position in its block.
struct DegreeBlocks {
    blocks: Vec<Vec<Vec<usize>>>,
    slot: Vec<usize>,
    radix: Vec<usize>,
}

impl DegreeBlocks {
    fn new(cutoffs: &[usize]) -> Self {
        let max_deg: usize = cutoffs.iter().map(|d| d - 1).sum();
        let mut blocks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_deg + 1];
        let total: usize = cutoffs.iter().product();
        let mut slot = vec![0; total];
        let mut radix = vec![1; cutoffs.len()];
        for p in (0..cutoffs.len().saturating_sub(1)).rev() {
            radix[p] = radix[p + 1] * cutoffs[p + 1];
        }
        let mut state = vec![0usize; cutoffs.len()];
        for (flat, s) in slot.iter_mut().enumerate() {
            let mut rest = flat;
            for (p, r) in radix.iter().enumerate() {
                state[p] = rest / r;
                rest %= r;
            }
            let b = &mut blocks[state.iter().sum::<usize>()];
            *s = b.len();
            b.push(state.clone());
        }
        DegreeBlocks { blocks, slot, radix }
    }

    fn flat(&self, state: &[usize]) -> usize {
        state.iter().zip(&self.radix).map(|(s, r)| s * r).sum()
    }
}

/// `Tr ρ_m(x)` over states with `r_p < cutoffs[p]` at position `p`; single color `p`.
pub fn truncated_trace(word: &BraidWord, p: &RepParams, cutoffs: &[usize]) -> C {
    assert_eq!(cutoffs.len(), word.strands, "one cutoff per position");
    let dmax = *cutoffs.iter().max().expect("at least one strand");
    let pair_params = RepParams { cutoff: dmax, ..*p };
    let mut cache = LetterCache::for_traces();
    let blocks = DegreeBlocks::new(cutoffs);
    let mut total = C::from(0.0);
    for states in &blocks.blocks {
        let n = states.len();
        // transposed accumulator: column c holds row c of the product
        let mut acc = CMat::identity(n, n);
        for l in word.letters.iter().rev() {
            let pair = cache.get(&pair_params, &pair_params, l.inverse);
            let (a, b) = (l.index - 1, l.index);
            let mut next = CMat::zeros(n, n);
            let mut target = vec![0; cutoffs.len()];
            for (col, s) in states.iter().enumerate() {
                let (r1, r2) = (s[a], s[b]);
                let t = r1 + r2;
                target.copy_from_slice(s);
                for r1p in t.saturating_sub(cutoffs[b] - 1)..=t.min(cutoffs[a] - 1) {
                    let r2p = t - r1p;
                    let v = pair[(r1p * dmax + r2p, r1 * dmax + r2)];
                    if v == C::from(0.0) {
                        continue;
                    }
                    target[a] = r1p;
                    target[b] = r2p;
                    let row = blocks.slot[blocks.flat(&target)];
                    next.column_mut(row).axpy(v, &acc.column(col), C::from(1.0));
                }
            }
            acc = next;
        }
        total += acc.trace();
    }
    total
}
