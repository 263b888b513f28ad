use num_rational::BigRational;
use proptest::prelude::*;
use qheis::classical::*;
use qheis::series::rat;

fn one() -> Poly {
    Poly::constant(rat(1, 1))
}

fn hw(c: BigRational) -> Poly {
    Poly::var(Var::H).mul(&Poly::var(Var::W)).scale(&c)
}

#[test]
fn bracket_table() {
    let b = |x, y| lie_bracket(&LieElement::basis(x), &LieElement::basis(y));
    assert_eq!(b(Basis::A, Basis::Ap), LieElement::basis(Basis::E));
    assert_eq!(b(Basis::N, Basis::Ap), LieElement::basis(Basis::Ap));
    let mut minus_a = LieElement::default();
    minus_a.0[Basis::A as usize] = Poly::constant(rat(-1, 1));
    assert_eq!(b(Basis::N, Basis::A), minus_a);
    for x in Basis::ALL {
        assert!(b(Basis::E, x).is_zero());
        assert!(b(x, x).is_zero());
    }
}

#[test]
fn jacobi_identity() {
    for x in Basis::ALL {
        for y in Basis::ALL {
            for z in Basis::ALL {
                let (x, y, z) = (LieElement::basis(x), LieElement::basis(y), LieElement::basis(z));
                let s = [
                    lie_bracket(&x, &lie_bracket(&y, &z)),
                    lie_bracket(&y, &lie_bracket(&z, &x)),
                    lie_bracket(&z, &lie_bracket(&x, &y)),
                ];
                let sum: [Poly; 4] =
                    std::array::from_fn(|i| s[0].0[i].add(&s[1].0[i]).add(&s[2].0[i]));
                assert!(sum.iter().all(Poly::is_zero));
            }
        }
    }
}

#[test]
fn known_r_matrices_solve_cybe() {
    for (name, r) in [
        ("standard", r_standard()),
        ("symmetric split", r_symmetric_split()),
        ("nonstandard", r_nonstandard()),
        ("mu nu family", r_mu_nu()),
        ("two-parameter", r_two_parameter()),
    ] {
        let res = cybe_residual(&r);
        assert!(res.is_zero(), "{name}: {res}");
    }
}

#[test]
fn parts_of_two_parameter_solve_separately() {
    let h = Poly::var(Var::H).scale(&rat(2, 1));
    assert!(cybe_residual(&r_standard().scale(&h)).is_zero());
    assert!(cybe_residual(&r_nonstandard().scale(&Poly::var(Var::W))).is_zero());
}

#[test]
fn non_solutions_have_residual() {
    // a⊗a is abelian and solves trivially; a⊗n does not
    assert!(cybe_residual(&ClassicalR::zero().with(one(), Basis::A, Basis::A)).is_zero());
    let res = cybe_residual(&ClassicalR::zero().with(one(), Basis::A, Basis::N));
    assert_eq!(res.term_count(), 1);
    assert_eq!(res.get(Basis::A, Basis::A, Basis::N), &Poly::constant(rat(-1, 1)));
}

#[test]
fn spectral_at_unit_is_constant_cybe() {
    assert!(spectral_cybe_residual(&rat(1, 1), &rat(1, 1)).is_zero());
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..20, 1i64..10).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    // Oracle by hand expansion: only the mixed h w terms survive, with
    // 2hw [(x_u x_v - 1) e⊗n⊗a+ - (x_u - 1) e⊗a+⊗n - (x_v - 1) n⊗e⊗a+].
    #[test]
    fn spectral_residual_closed_form(xu in arb_rational(), xv in arb_rational()) {
        let res = spectral_cybe_residual(&xu, &xv);
        let one = rat(1, 1);
        let two = rat(2, 1);
        prop_assert_eq!(res.get(Basis::E, Basis::N, Basis::Ap), &hw(&two * (&xu * &xv - &one)));
        prop_assert_eq!(res.get(Basis::E, Basis::Ap, Basis::N), &hw(-&two * (&xu - &one)));
        prop_assert_eq!(res.get(Basis::N, Basis::E, Basis::Ap), &hw(-&two * (&xv - &one)));
        let listed = [
            res.get(Basis::E, Basis::N, Basis::Ap).len(),
            res.get(Basis::E, Basis::Ap, Basis::N).len(),
            res.get(Basis::N, Basis::E, Basis::Ap).len(),
        ];
        prop_assert_eq!(res.term_count(), listed.iter().sum::<usize>());
    }

    #[test]
    fn residual_is_quadratic(c in arb_rational(), i in 0usize..4, j in 0usize..4, k in 0usize..4, l in 0usize..4) {
        let r = ClassicalR::zero()
            .with(one(), Basis::ALL[i], Basis::ALL[j])
            .with(Poly::constant(rat(3, 1)), Basis::ALL[k], Basis::ALL[l]);
        let lam = Poly::constant(c);
        prop_assert_eq!(cybe_residual(&r.scale(&lam)), cybe_residual(&r).scale(&lam.mul(&lam)));
    }
}
