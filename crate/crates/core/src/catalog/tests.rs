use super::*;
use crate::bqd::{full_report, verify_coh};
use crate::linalg::Mat;
use crate::scalars::{NumScalar, RatFunc};

fn n(k: i64) -> NumScalar {
    NumScalar::from_int(k)
}

#[test]
fn every_case_passes_at_defaults() {
    for case in CaseId::ALL {
        let spec = CaseSpec::<Rational>::default_for(case);
        let bqd = instantiate(&spec).unwrap_or_else(|e| panic!("{case}: {e}"));
        let r = full_report(&bqd);
        assert!(r.all_pass(), "{case}: {:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(detect_q_type(&bqd).unwrap().tag, case.qtag(), "{case}");
        assert_eq!(!bqd.omega().is_one(), case.primed(), "{case}");
    }
}

#[test]
fn grids_pass() {
    for case in CaseId::ALL {
        let grid = CaseSpec::<Rational>::grid(case);
        if !case.param_names().is_empty() {
            assert!(grid.len() >= 3, "{case}");
        }
        for spec in grid {
            let bqd = instantiate(&spec).unwrap_or_else(|e| panic!("{}: {e}", spec.label()));
            assert!(verify_coh(&bqd).all_pass(), "{}", spec.label());
        }
    }
}

#[test]
fn symbolic_type_ii() {
    for case in [CaseId::IIa, CaseId::IIb, CaseId::IIpA] {
        let spec = CaseSpec::<RatFunc>::default_for(case);
        let bqd = instantiate(&spec).unwrap();
        assert!(full_report(&bqd).all_pass(), "{case}");
        let t = detect_q_type(&bqd).unwrap();
        assert_eq!(t.tag, QTag::II);
    }
}

#[test]
fn base_tensor_examples() {
    let b = base_tensors::<Rational>(QTag::I, &n(1)).unwrap();
    let q3 = |v: &Mat<NumScalar>| Mat::from_fn(3, 3, |i, j| v.data()[3 * i + j].clone());
    assert_eq!(q3(&b.c).mul(&q3(&b.d_up).transpose()), Mat::identity(3));
    let q = n(2);
    let b = base_tensors::<Rational>(QTag::II, &q).unwrap();
    let half = NumScalar::from_rational(&Rational::new(1, 2).unwrap());
    assert_eq!(b.c.column(0), vec![half, n(0), n(0), n(0), n(1), n(0), n(0), n(0), q.clone()]);
    let b = base_tensors::<Rational>(QTag::IV, &n(1)).unwrap();
    assert_eq!(b.d_up.get(0, 6), &NumScalar::from_rational(&Rational::new(1, 2).unwrap()));
}

#[test]
fn type_ii_q_matrix() {
    let bqd = instantiate(&CaseSpec::<Rational>::default_for(CaseId::IIa)).unwrap();
    let qm = crate::bqd::make_derived(&bqd).unwrap().Q.into_mat();
    let quarter = NumScalar::from_rational(&Rational::new(1, 4).unwrap());
    let expect = Mat::from_fn(3, 3, |i, j| if i != j { n(0) } else { [quarter.clone(), n(1), n(4)][i].clone() });
    assert_eq!(qm, expect);
}

#[test]
fn type_iii_q_matrix() {
    let bqd = instantiate(&CaseSpec::<Rational>::default_for(CaseId::IIIa)).unwrap();
    let qm = crate::bqd::make_derived(&bqd).unwrap().Q.into_mat();
    // Q(x₃) = x₃ + 2x₁, columns are images of basis vectors
    let expect = Mat::from_fn(3, 3, |i, j| if i == j { n(1) } else if (i, j) == (0, 2) { n(2) } else { n(0) });
    assert_eq!(qm, expect);
}

#[test]
fn ii_a_dual_beta() {
    let spec = CaseSpec::<Rational>::with_params(CaseId::IIa, &[("q", n(2)), ("beta", n(3))]).unwrap();
    let (_, big_e) = case_tensors(&spec).unwrap();
    let four_thirds = NumScalar::from_rational(&Rational::new(4, 3).unwrap());
    assert_eq!(big_e.get([1, 3, 2]), &four_thirds.neg());
}

#[test]
fn i_prime_a_condition_value() {
    let spec = CaseSpec::<Rational>::with_params(CaseId::IpA, &[("t", n(3))]).unwrap();
    assert!(check_case_conditions(&spec).all_pass());
    assert!(instantiate(&spec).is_ok());
    let w = NumScalar::omega();
    let bad = CaseSpec::<Rational>::with_params(CaseId::IpA, &[("t", w.neg())]).unwrap();
    assert!(matches!(instantiate(&bad), Err(CatalogError::CaseConditionViolated { .. })));
}

#[test]
fn case_condition_failures() {
    let spec = CaseSpec::<Rational>::with_params(CaseId::Ie, &[("alpha", n(1))]).unwrap();
    let r = check_case_conditions(&spec);
    assert!(!r.all_pass());
    assert!(r.get("alpha != 1").is_some());
    let spec = CaseSpec::<Rational>::with_params(CaseId::IIa, &[("q", n(1))]).unwrap();
    let r = check_case_conditions(&spec);
    assert_eq!(r.get("q admissible").unwrap().status, crate::report::Status::Fail);
    let spec = CaseSpec::<Rational>::with_params(CaseId::IIb, &[("p", n(-1))]).unwrap();
    assert!(matches!(instantiate(&spec), Err(CatalogError::CaseConditionViolated { .. })));
}

#[test]
fn elliptic_conditions() {
    let spec = CaseSpec::<Rational>::default_for(CaseId::Ih);
    assert!(check_case_conditions(&spec).all_pass());
    let bad = CaseSpec::<Rational>::with_params(CaseId::Ih, &[("beta", n(2))]).unwrap();
    let r = check_case_conditions(&bad);
    assert!(!r.all_pass());
    assert!(instantiate(&bad).is_err());
}

#[test]
fn elliptic_violation_is_detected_without_condition_check() {
    let spec = CaseSpec::<Rational>::with_params(CaseId::Ih, &[("beta", n(2))]).unwrap();
    let (e, big_e) = case_tensors(&spec).unwrap();
    let base = base_tensors::<Rational>(QTag::I, &n(1)).unwrap();
    let cand = derive_maps_from_e_e("bad", &n(1), &e, &big_e, &base).unwrap();
    assert!(normalize(cand).is_err());
}

#[test]
fn verbatim_i_d_fails_only_gf_fg() {
    let (s, big_s) = type_id_verbatim::<Rational>();
    let base = base_tensors::<Rational>(QTag::I, &n(1)).unwrap();
    let cand = derive_maps_from_e_e("I.d", &n(1), &s.to_tensor(false), &big_s.to_tensor(true), &base).unwrap();
    match normalize(cand) {
        Err(CatalogError::NormalizationFailed(id)) => assert!(id.starts_with("GF") || id.starts_with("FG"), "{id}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn cubic_spec_round_trip() {
    for case in [CaseId::Ia, CaseId::Ib, CaseId::Ic, CaseId::Id, CaseId::Ie, CaseId::If, CaseId::Ig, CaseId::IeStar] {
        let spec = CaseSpec::<Rational>::default_for(case);
        let (e, big_e) = case_tensors(&spec).unwrap();
        for (t, upper) in [(e, false), (big_e, true)] {
            let cs = CubicSpec::from_tensor(&t, upper).expect("no mixed part");
            assert_eq!(cs.to_tensor(upper), t);
        }
    }
    // coefficient of x₁²x₂ is 3e¹¹², of x₁x₂x₃ it is 3(e¹²³+e¹³²)
    let cs = CubicSpec::<Rational>::new(n(0), vec![([1, 1, 2], n(3)), ([1, 2, 3], n(6))]);
    let t = cs.to_tensor(false);
    assert_eq!(t.get([1, 1, 2]), &n(1));
    assert_eq!(t.get([2, 1, 3]), &n(1));
}

#[test]
fn i_a_is_classical() {
    let bqd = instantiate(&CaseSpec::<Rational>::default_for(CaseId::Ia)).unwrap();
    assert!(bqd.omega().is_one());
    // A is the antisymmetrization, up to the normalization of Aa = 1
    let a = bqd.A();
    assert_eq!(a.get(2, 1), &a.get(2, 3).neg());
    assert!(a.get(0, 0).is_zero());
}

#[test]
fn flip_keeps_type() {
    for case in CaseId::ALL {
        let bqd = instantiate(&CaseSpec::<Rational>::default_for(case)).unwrap();
        let f = crate::bqd::dynkin_flip(&bqd);
        assert_eq!(detect_q_type(&f).unwrap().tag, case.qtag(), "{case}");
    }
}

#[test]
fn parse_ids_and_aliases() {
    for case in CaseId::ALL {
        assert_eq!(case.as_str().parse::<CaseId>().unwrap(), case);
    }
    assert!("I.z".parse::<CaseId>().is_err());
    let s = CaseSpec::<Rational>::with_params(CaseId::IIIc, &[("beta2", n(7))]).unwrap();
    assert_eq!(s.params[0], n(7));
    assert!(CaseSpec::<Rational>::with_params(CaseId::Ia, &[("x", n(1))]).is_err());
    let p = CaseSpec::<Rational>::with_params(CaseId::IIb, &[("p", n(2))]).unwrap();
    assert_eq!(p.q().unwrap(), n(8));
}
