//! Braid words, the braid-group representations built from the Fock R-matrix, and the
//! Markov-trace link invariant with its Turaev data.

mod invariant;
mod rep;
mod trace;
mod word;

pub use invariant::{
    check_markov, check_turaev, check_w_grading, check_w_independence, invariant_at, link_invariant,
    InvariantResult,
};
pub use rep::{braid_rep, check_braid_relations, letter_matrix, BraidRep};
pub use trace::truncated_trace;
pub use word::{parse_braid, BraidWord, Letter};
