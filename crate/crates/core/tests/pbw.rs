use qheis::pbw::{build, Algebra, Generator, HopfStructure, Monomial, PbwElement, TensorElement};
use qheis::series::rat;
use qheis::{Param, TruncatedSeries, Truncation};

fn alg(kh: u32, kw: u32) -> Algebra {
    Algebra::new(Truncation::new(kh, kw))
}

fn el(a: &Algebra, src: &str) -> PbwElement {
    build(a, src).unwrap().into_pbw().unwrap()
}

fn ten(a: &Algebra, src: &str) -> TensorElement {
    build(a, src).unwrap().into_tensor().unwrap()
}

#[test]
fn a_times_ap_reorders_with_commutator() {
    let a = alg(4, 3);
    let lhs = el(&a, "(* A Ap)");
    let rhs = el(&a, "(+ (* Ap A) (* (sinhc h E) (exp (* w Ap))))");
    assert_eq!(lhs, rhs);
    // explicit low-order terms
    assert_eq!(lhs.coeff(&Monomial::new(1, 0, 0, 0)), TruncatedSeries::one(a.truncation()));
    assert_eq!(
        lhs.coeff(&Monomial::new(3, 0, 0, 0)),
        TruncatedSeries::monomial(rat(1, 6), 2, 0, a.truncation())
    );
    assert_eq!(
        lhs.coeff(&Monomial::new(1, 2, 0, 0)),
        TruncatedSeries::monomial(rat(1, 2), 0, 2, a.truncation())
    );
}

#[test]
fn a_times_n_and_n_times_ap() {
    let a = alg(3, 4);
    assert_eq!(el(&a, "(* A N)"), el(&a, "(+ (* N A) A)"));
    assert_eq!(el(&a, "(* N A)").len(), 1);
    let lhs = el(&a, "(* N Ap)");
    let rhs = el(
        &a,
        "(+ (* Ap N) Ap (* 1/2 w (pow Ap 2)) (* 1/6 w w (pow Ap 3)) (* 1/24 w w w (pow Ap 4)))",
    );
    assert_eq!(lhs, rhs);
}

#[test]
fn e_is_central() {
    let a = alg(3, 3);
    for g in ["A", "Ap", "N", "(* A Ap N)"] {
        let c = a.commutator(&a.gen(Generator::E), &el(&a, g)).unwrap();
        assert!(c.is_zero(), "[E, {g}] = {c}");
    }
}

#[test]
fn standard_limit_relations() {
    let a = alg(4, 1);
    let c = a.commutator(&el(&a, "A"), &el(&a, "Ap")).unwrap();
    assert_eq!(c, el(&a, "(sinhc h E)"));
    let c = a.commutator(&el(&a, "N"), &el(&a, "Ap")).unwrap();
    assert_eq!(c, el(&a, "Ap"));
}

#[test]
fn nonstandard_limit_relations() {
    let a = alg(1, 4);
    let c = a.commutator(&el(&a, "A"), &el(&a, "Ap")).unwrap();
    assert_eq!(c, el(&a, "(* E (exp (* w Ap)))"));
    let c = a.commutator(&el(&a, "N"), &el(&a, "Ap")).unwrap();
    assert_eq!(c, el(&a, "(expm1c w Ap)"));
}

#[test]
fn counit_examples() {
    let a = alg(3, 3);
    assert!(a.counit(&a.gen(Generator::N)).is_zero());
    assert!(a.counit(&el(&a, "(+ 1 (* 3 h A))")).is_one());
    assert!(a.counit(&el(&a, "(* A Ap)")).is_zero());
}

#[test]
fn coproduct_examples() {
    let a = alg(3, 3);
    let s = HopfStructure::TwoParameter;
    assert_eq!(
        a.coproduct(s, &a.gen(Generator::E)).unwrap(),
        ten(&a, "(+ (tensor E 1) (tensor 1 E))")
    );
    assert_eq!(a.coproduct(s, &a.one()).unwrap(), TensorElement::one(2, a.truncation()));
    let da = a.coproduct(s, &a.gen(Generator::A)).unwrap();
    let expected = ten(
        &a,
        "(+ (tensor A (* (exp (* h E)) (exp (* w Ap)))) (tensor (exp (* -1 h E)) A) \
           (* w (tensor (* (exp (* -1 h E)) N) (* (sinhc h E) (exp (* w Ap))))))",
    );
    assert_eq!(da, expected);
}

#[test]
fn antipode_examples() {
    let a = alg(3, 3);
    let s = HopfStructure::TwoParameter;
    assert_eq!(a.antipode(s, &a.gen(Generator::E)).unwrap(), el(&a, "(- E)"));
    assert_eq!(a.antipode(s, &a.one()).unwrap(), a.one());
    assert_eq!(
        a.antipode(s, &a.gen(Generator::A)).unwrap(),
        el(
            &a,
            "(+ (- (* A (exp (* -1 w Ap)))) (* w N (sinhc h E) (exp (* -1 w Ap))))"
        )
    );
}

#[test]
fn tensor_mul_examples() {
    let a = alg(3, 3);
    assert_eq!(
        a.tensor_mul(&ten(&a, "(tensor A 1)"), &ten(&a, "(tensor 1 Ap)")).unwrap(),
        ten(&a, "(tensor A Ap)")
    );
    let x = ten(&a, "(+ (tensor A N) (* h (tensor Ap E)))");
    assert_eq!(a.tensor_mul(&TensorElement::one(2, a.truncation()), &x).unwrap(), x);
    assert_eq!(
        a.tensor_mul(&ten(&a, "(tensor A 1)"), &ten(&a, "(tensor Ap 1)")).unwrap(),
        TensorElement::pure(&[&el(&a, "(* A Ap)"), &a.one()]).unwrap()
    );
}

#[test]
fn embed_examples() {
    let a = alg(2, 2);
    let ab = ten(&a, "(tensor A Ap)");
    assert_eq!(ab.embed(1, 2).unwrap(), ten(&a, "(tensor A Ap 1)"));
    assert_eq!(ab.embed(1, 3).unwrap(), ten(&a, "(tensor A 1 Ap)"));
    assert_eq!(
        TensorElement::one(2, a.truncation()).embed(2, 3).unwrap(),
        TensorElement::one(3, a.truncation())
    );
    assert!(ab.embed(2, 2).is_err());
}

#[test]
fn build_examples() {
    let a = alg(2, 2);
    assert_eq!(ten(&a, "(exp (* w (tensor N Ap)))"), ten(&a, "(+ (tensor 1 1) (* w (tensor N Ap)))"));
    let r = ten(
        &alg(1, 1),
        "(* (exp (* -1 w (tensor Ap N))) (exp (* -2 h (tensor E N))) \
            (exp (* 2 h (tensor (* (exp (* h E)) A) Q))) (exp (* w (tensor N Ap))))",
    );
    assert_eq!(r, TensorElement::one(2, Truncation::new(1, 1)));
    assert!(build(&a, "(exp N)").is_err());
    assert!(build(&a, "(* A").is_err());
    assert!(build(&a, "(frob A)").is_err());
}

#[test]
fn mixed_truncations_are_rejected() {
    let a = alg(3, 3);
    let x = PbwElement::one(Truncation::new(2, 2));
    assert!(a.mul(&x, &a.one()).is_err());
}

#[test]
fn n_from_q_a_up_to_casimir() {
    // Q A = N sinh(hE)/h - C - sinh(hE)/(2h): N is recovered from Q A up to the Casimir
    let a = alg(4, 3);
    let c = el(
        &a,
        "(+ (* N (sinhc h E)) (* (* 1/2 (expm1c w (* -1 Ap))) A) (* A (* 1/2 (expm1c w (* -1 Ap)))))",
    );
    let qa = el(&a, "(* Q A)");
    let rhs = el(&a, "(- (* N (sinhc h E)) (* 1/2 (sinhc h E)))").sub(&c).unwrap();
    assert_eq!(qa, rhs);
}

#[test]
fn hopf_maps_respect_products() {
    let a = alg(3, 3);
    for s in [HopfStructure::TwoParameter, HopfStructure::Untwisted] {
        for g1 in Generator::ALL {
            for g2 in Generator::ALL {
                let x = a.gen(g1);
                let y = a.gen(g2);
                let xy = a.mul(&x, &y).unwrap();
                let lhs = a.coproduct(s, &xy).unwrap();
                let rhs = a
                    .tensor_mul(&a.coproduct(s, &x).unwrap(), &a.coproduct(s, &y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "Δ({g1:?}{g2:?}) under {s:?}");
                let lhs = a.antipode(s, &xy).unwrap();
                let rhs = a
                    .mul(&a.antipode(s, &y).unwrap(), &a.antipode(s, &x).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "S({g1:?}{g2:?}) under {s:?}");
            }
        }
    }
}

#[test]
fn param_atoms() {
    let a = alg(3, 3);
    assert_eq!(el(&a, "h"), a.param(Param::H));
    assert_eq!(el(&a, "(* 2/3 w)"), a.param(Param::W).scaled_by(2, 3));
}

mod associativity {
    use super::*;
    use proptest::prelude::*;

    fn element(a: &Algebra) -> impl Strategy<Value = PbwElement> {
        let trunc = a.truncation();
        prop::collection::vec(((0u16..2, 0u16..3, 0u16..2, 0u16..3), -3i64..=3), 1..3).prop_map(move |terms| {
            terms.into_iter().fold(PbwElement::zero(trunc), |acc, ((e, p, n, l), c)| {
                acc.add(&PbwElement::term(Monomial::new(e, p, n, l), TruncatedSeries::constant(rat(c, 1), trunc)))
                    .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn product_is_associative(
            (x, y, z) in {
                let a = alg(3, 3);
                (element(&a), element(&a), element(&a))
            }
        ) {
            let a = alg(3, 3);
            let lhs = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
            let rhs = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
