use bqd_core::bqd::{apply_base_change, apply_rescale, dynkin_flip, full_report, verify_coh, Bqd};
use bqd_core::catalog::{instantiate, CaseId, CaseSpec, CatalogError};
use bqd_core::linalg::{inverse, kernel_basis, rank, Mat};
use bqd_core::scalars::{parse_scalar, Cyc, Field, NumScalar, Poly, RatFunc, Rational, SymScalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn num() -> impl Strategy<Value = NumScalar> {
    (rational(), rational()).prop_map(|(a, b)| Cyc::new(a, b))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..4).prop_map(Poly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn sym() -> impl Strategy<Value = SymScalar> {
    (ratfunc(), ratfunc()).prop_map(|(a, b)| Cyc::new(a, b))
}

fn field_laws<F: Field>(a: &F, b: &F, c: &F) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.sub(a), F::zero());
    prop_assert_eq!(a.add(&a.neg()), F::zero());
    if !a.is_zero() {
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        prop_assert_eq!(b.div(a).unwrap().mul(a), b.clone());
    } else {
        prop_assert!(a.inv().is_err());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field(a in rational(), b in rational(), c in rational()) {
        field_laws(&a, &b, &c)?;
    }

    #[test]
    fn cyclotomic_field(a in num(), b in num(), c in num()) {
        field_laws(&a, &b, &c)?;
        let w = NumScalar::omega();
        prop_assert!(w.mul(&w).add(&w).add(&NumScalar::one()).is_zero());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn rational_function_field(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        field_laws(&a, &b, &c)?;
    }

    #[test]
    fn symbolic_field(a in sym(), b in sym()) {
        field_laws(&a, &b, &SymScalar::omega())?;
    }

    #[test]
    fn literals_round_trip(a in num(), s in sym()) {
        prop_assert_eq!(parse_scalar::<Rational>(&a.to_string()).unwrap(), a);
        prop_assert_eq!(parse_scalar::<RatFunc>(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in rational()) {
        if let (Ok(ea), Ok(eb), Ok(eab)) = (a.eval(&x), b.eval(&x), a.mul(&b).eval(&x)) {
            prop_assert_eq!(eab, ea.mul(&eb));
        }
    }

    #[test]
    fn rank_nullity(data in prop::collection::vec(-3i64..=3, 12), rows in 1usize..=4) {
        let cols = 12 / rows;
        let m = Mat::from_vec(rows, cols, data[..rows * cols].iter().map(|&x| NumScalar::from_int(x)).collect());
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.cols(), cols);
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(data in prop::collection::vec(-3i64..=3, 9)) {
        let m = Mat::from_vec(3, 3, data.into_iter().map(NumScalar::from_int).collect());
        match inverse(&m) {
            Ok(mi) => {
                prop_assert!(m.mul(&mi).is_identity());
                prop_assert!(mi.mul(&m).is_identity());
            }
            Err(_) => prop_assert!(rank(&m) < 3),
        }
    }
}

fn numeric(v: &Rational) -> NumScalar {
    NumScalar::from_rational(v)
}

fn check_instance(case: CaseId, named: &[(&str, NumScalar)]) -> Result<(), TestCaseError> {
    let spec = CaseSpec::with_params(case, named).unwrap();
    match instantiate(&spec) {
        Ok(b) => {
            let r = full_report(&b);
            prop_assert!(r.all_pass(), "{}: {:?}", spec.label(), r.failures().collect::<Vec<_>>());
        }
        Err(CatalogError::CaseConditionViolated { .. }) => {}
        Err(e) => return Err(TestCaseError::fail(format!("{}: {e}", spec.label()))),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_parameters_satisfy_axioms(x in nonzero_rational(), y in nonzero_rational()) {
        check_instance(CaseId::Ie, &[("alpha", numeric(&x))])?;
        check_instance(CaseId::IpA, &[("t", numeric(&x))])?;
        check_instance(CaseId::IIa, &[("q", numeric(&x)), ("beta", numeric(&y))])?;
        check_instance(CaseId::IIpA, &[("q", numeric(&y)), ("beta", numeric(&x))])?;
        check_instance(CaseId::IIb, &[("p", numeric(&x))])?;
        check_instance(CaseId::IIIa, &[("gamma", numeric(&x))])?;
        check_instance(CaseId::IIIc, &[("beta'", numeric(&y))])?;
    }

    #[test]
    fn transforms_preserve_axioms(
        case in prop::sample::select(CaseId::ALL.to_vec()),
        gv in prop::collection::vec(-2i64..=2, 9),
        gw in prop::collection::vec(-2i64..=2, 9),
        mu in nonzero_rational(),
        sigma in nonzero_rational(),
        flip in any::<bool>(),
    ) {
        let b: Bqd<Rational> = instantiate(&CaseSpec::default_for(case)).unwrap();
        let to_mat = |v: &[i64]| Mat::from_vec(3, 3, v.iter().map(|&x| NumScalar::from_int(x)).collect());
        let (gv, gw) = (to_mat(&gv), to_mat(&gw));
        prop_assume!(inverse(&gv).is_ok() && inverse(&gw).is_ok());
        let mut out = apply_base_change(&b, &gv, &gw).unwrap();
        out = apply_rescale(&out, &numeric(&mu), &numeric(&sigma)).unwrap();
        if flip {
            out = dynkin_flip(&out);
        }
        prop_assert!(verify_coh(&out).all_pass());
        prop_assert_eq!(dynkin_flip(&dynkin_flip(&out)), out);
    }
}
