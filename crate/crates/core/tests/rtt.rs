use proptest::prelude::*;
use qheis::fock::pi3_rmatrix_literal;
use qheis::rtt::{
    antipode_of, check_group_hopf, check_group_hopf_with, check_mutations, check_reductions, check_rtt, check_rtt_with,
    coproduct_of, rtt_residual, t_matrix, Mutation, Relation, Rewriting, Sym,
};
use qheis::series::int;
use qheis::{TruncatedSeries, Truncation};

fn t(kh: u32, kw: u32) -> Truncation {
    Truncation::new(kh, kw)
}

#[test]
fn alpha_beta_reorders() {
    let rw = Rewriting::new(t(3, 3));
    let ab = rw.mul(&rw.sym(Sym::Alpha), &rw.sym(Sym::Beta)).unwrap();
    assert_eq!(ab.coeff(&[Sym::Alpha, Sym::Beta]), TruncatedSeries::one(t(3, 3)));
    let ba = rw.mul(&rw.sym(Sym::Beta), &rw.sym(Sym::Alpha)).unwrap();
    // βα = αβ - 2hα - wα²
    assert_eq!(ba.coeff(&[Sym::Alpha]), TruncatedSeries::monomial(int(-2), 1, 0, t(3, 3)));
    assert_eq!(ba.coeff(&[Sym::Alpha, Sym::Alpha]), TruncatedSeries::monomial(int(-1), 0, 1, t(3, 3)));
    let comm = rw.commutator(&rw.sym(Sym::Alpha), &rw.sym(Sym::Beta)).unwrap();
    let expected = rw.mul(&rw.h(), &rw.sym(Sym::Alpha)).unwrap().scale(&TruncatedSeries::constant(int(2), t(3, 3)));
    let expected = expected.add(&rw.mul_all(&[&rw.w(), &rw.sym(Sym::Alpha), &rw.sym(Sym::Alpha)]).unwrap()).unwrap();
    assert!(comm.sub(&expected).unwrap().is_zero());
}

#[test]
fn alpha_commutes_with_g() {
    let rw = Rewriting::new(t(3, 3));
    let c = rw.commutator(&rw.sym(Sym::Alpha), &rw.sym(Sym::G)).unwrap();
    assert!(c.is_zero());
}

#[test]
fn delta_g_rule() {
    let rw = Rewriting::new(t(3, 3));
    let dg = rw.mul(&rw.sym(Sym::Delta), &rw.sym(Sym::G)).unwrap();
    let w = |c| TruncatedSeries::monomial(int(c), 0, 1, t(3, 3));
    assert_eq!(dg.coeff(&[Sym::G, Sym::Delta]), TruncatedSeries::one(t(3, 3)));
    assert_eq!(dg.coeff(&[Sym::G, Sym::G]), w(-1));
    assert_eq!(dg.coeff(&[Sym::G]), w(1));
}

#[test]
fn g_and_inverse_cancel() {
    let rw = Rewriting::new(t(2, 2));
    let x = rw.mul_all(&[&rw.sym(Sym::G), &rw.sym(Sym::Gi), &rw.sym(Sym::Gi), &rw.sym(Sym::G)]).unwrap();
    assert!(x.sub(&rw.one()).unwrap().is_zero());
}

#[test]
fn inverse_conjugates_of_relations_vanish() {
    let rw = Rewriting::new(t(3, 3));
    for rel in Relation::ALL {
        let x = rw.relation_element(rel);
        assert!(!x.is_zero());
        assert!(rw.reduce(&x).is_zero(), "{}", rel.name());
        let conj = rw.mul_all(&[&rw.sym(Sym::Gi), &x, &rw.sym(Sym::G)]).unwrap();
        assert!(conj.is_zero());
    }
    // conjugation by g is multiplicative on reduced products
    let conj = |x: &qheis::rtt::GroupElement| rw.mul_all(&[&rw.sym(Sym::Gi), x, &rw.sym(Sym::G)]).unwrap();
    let (b, a) = (rw.sym(Sym::Beta), rw.sym(Sym::Alpha));
    let lhs = conj(&rw.mul(&b, &a).unwrap());
    let rhs = rw.mul(&conj(&b), &conj(&a)).unwrap();
    assert!(lhs.sub(&rhs).unwrap().is_zero());
}

#[test]
fn rtt_residual_vanishes() {
    let rep = check_rtt(t(3, 3)).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert_eq!(rep.residual_terms, 0);
}

#[test]
fn rtt_residual_has_81_zero_entries() {
    let rw = Rewriting::new(t(2, 2));
    let res = rtt_residual(&rw, &pi3_rmatrix_literal(t(2, 2))).unwrap();
    assert_eq!(res.len(), 9);
    assert!(res.iter().all(|row| row.len() == 9 && row.iter().all(|x| x.is_zero())));
}

#[test]
fn undeformed_limit_is_trivial() {
    assert!(check_rtt(t(1, 1)).unwrap().pass);
}

#[test]
fn deleting_w_terms_breaks_rtt() {
    let rep = check_rtt_with(t(3, 3), Some(Mutation::DropW)).unwrap();
    assert!(!rep.pass);
    assert!(rep.residual_terms > 0);
}

#[test]
fn every_mutation_is_detected() {
    let rep = check_mutations(t(3, 3)).unwrap();
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn inverse_rules_are_invisible_to_rtt() {
    // T has no ğ, so its rules must be caught by the Hopf checks instead
    let m = Some(Mutation::Drop(Relation::GiDelta));
    assert!(check_rtt_with(t(3, 3), m).unwrap().pass);
    assert!(!check_group_hopf_with(t(3, 3), m).unwrap().pass);
}

#[test]
fn group_hopf_structure() {
    let rep = check_group_hopf(t(3, 3)).unwrap();
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn coproduct_and_antipode_examples() {
    let rw = Rewriting::new(t(3, 3));
    let x = |s| rw.sym(s);
    let delta = rw.tensor(&x(Sym::Delta), &rw.one()).add(&rw.tensor(&x(Sym::G), &x(Sym::Delta)));
    assert!(coproduct_of(&rw, Sym::Delta).sub(&delta).is_zero());
    let gi_alpha_delta = rw.mul_all(&[&x(Sym::Gi), &x(Sym::Alpha), &x(Sym::Delta)]).unwrap();
    let s_beta = gi_alpha_delta.sub(&x(Sym::Beta)).unwrap();
    assert!(antipode_of(&rw, Sym::Beta).unwrap().sub(&s_beta).unwrap().is_zero());
    let t = t_matrix(&rw);
    for i in 0..3 {
        for j in 0..3 {
            let want = TruncatedSeries::constant(int(i64::from(i == j)), rw.truncation());
            assert_eq!(rw.counit(&t[i][j]), want);
        }
    }
}

#[test]
fn one_parameter_reductions() {
    let rep = check_reductions(t(3, 3)).unwrap();
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn h_limit_commutator() {
    let rw = Rewriting::new(t(1, 3));
    let c = rw.commutator(&rw.sym(Sym::Alpha), &rw.sym(Sym::Beta)).unwrap();
    let want = rw.mul_all(&[&rw.w(), &rw.sym(Sym::Alpha), &rw.sym(Sym::Alpha)]).unwrap();
    assert!(c.sub(&want).unwrap().is_zero());
}

#[test]
fn mismatched_truncations_are_rejected() {
    let a = Rewriting::new(t(2, 2));
    let b = Rewriting::new(t(3, 2));
    assert!(a.mul(&a.sym(Sym::Alpha), &b.sym(Sym::Beta)).is_err());
}

fn letter() -> impl Strategy<Value = Sym> {
    prop::sample::select(Sym::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_confluent(word in prop::collection::vec(letter(), 0..=6)) {
        let trunc = t(3, 3);
        let left = Rewriting::with(trunc, None, qheis::rtt::Strategy::Leftmost);
        let right = Rewriting::with(trunc, None, qheis::rtt::Strategy::Rightmost);
        let a = left.reduce(&left.word(word.clone()));
        let b = right.reduce(&right.word(word));
        prop_assert!(a.is_normal());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn multiplication_is_associative(
        x in prop::collection::vec(letter(), 0..=3),
        y in prop::collection::vec(letter(), 0..=3),
        z in prop::collection::vec(letter(), 0..=3),
    ) {
        let rw = Rewriting::new(t(2, 3));
        let (x, y, z) = (rw.word(x), rw.word(y), rw.word(z));
        let lhs = rw.mul(&rw.mul(&x, &y).unwrap(), &z).unwrap();
        let rhs = rw.mul(&x, &rw.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
