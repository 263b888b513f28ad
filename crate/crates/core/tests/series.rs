use proptest::prelude::*;
use qheis::series::rat;
use qheis::{TruncatedSeries, Truncation};

const T: Truncation = Truncation { kh: 3, kw: 3 };

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(((0u32..3, 0u32..3), (-5i64..=5, 1i64..=4)), 0..6).prop_map(|terms| {
        TruncatedSeries::from_terms(terms.into_iter().map(|(k, (n, d))| (k, rat(n, d))), T)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &TruncatedSeries::one(T), a.clone());
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn no_term_exceeds_the_truncation(a in series(), b in series()) {
        let p = &a * &b;
        prop_assert!(p.terms().all(|(&(x, y), _)| x < T.kh && y < T.kw));
    }

    #[test]
    fn inverse_when_constant_term_is_nonzero(a in series()) {
        let x = &a + &TruncatedSeries::one(T).scale(&rat(7, 3));
        if !x.constant_term().eq(&rat(0, 1)) {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }
}
