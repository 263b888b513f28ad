//! The dual quantum group: functions on the deformed Heisenberg group generated by the entries
//! of `T = [[1, α, β], [0, e^γ, δ], [0, 0, 1]]`, with `g = e^γ` and `ğ = e^{-γ}` as letters.
//! Words are rewritten to the normal order `α < β < {g, ğ} < δ`.

mod algebra;
mod checks;

pub use algebra::{GroupElement, GroupTensor, Mutation, Relation, Rewriting, Strategy, Sym, Word};
pub use checks::{
    antipode_of, check_group_hopf, check_group_hopf_with, check_mutations, check_reductions, check_rtt, check_rtt_with,
    coproduct_of, rtt_residual, t_inverse_matrix, t_matrix,
};
