use super::*;
use crate::bqd::dynkin_flip;
use crate::catalog::{instantiate, CaseId, CaseSpec};
use crate::scalars::{q_factorial, Rational};
use crate::shape::expected_dim;

fn bqd(case: CaseId) -> Bqd<Rational> {
    instantiate(&CaseSpec::<Rational>::default_for(case)).unwrap()
}

fn num(n: i64, d: i64) -> K<Rational> {
    K::from_rational(&Rational::new(n, d).unwrap())
}

#[test]
fn operator_shapes() {
    let b = bqd(CaseId::IIa);
    let c = build_context(&b, 1, 1).unwrap();
    assert!(c.r.is_empty() && c.rs.is_empty());
    assert_eq!(crate::linalg::rank(c.x().unwrap()), 1);
    let c = build_context(&b, 2, 0).unwrap();
    assert_eq!((c.r.len(), c.x().is_none()), (1, true));
    let c = build_context(&b, 2, 2).unwrap();
    assert_eq!((c.r.len(), c.rs.len(), c.dim()), (1, 1, 81));
    assert!(matches!(build_context(&b, 3, 3), Err(HeckeError::DegreeBoundExceeded { .. })));
}

#[test]
fn kappa_at_q_two() {
    let b = bqd(CaseId::IIa);
    assert_eq!(b.q(), &num(2, 1));
    let c = build_context(&b, 1, 1).unwrap();
    assert_eq!(c.kappa(), &num(21, 4));
    let x = c.x().unwrap();
    assert_eq!(x.mul(x), x.scale(&num(21, 4)));
}

#[test]
fn relations_at_two_two() {
    for case in CaseId::ALL {
        let b = bqd(case);
        let r = verify_hecke_relations(&build_context(&b, 2, 2).unwrap());
        assert!(r.all_pass(), "{case}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn placement_pins_x_r1_x() {
    let b = bqd(CaseId::IIa);
    let c = build_context(&b, 3, 1).unwrap();
    let x = c.x().unwrap();
    let q3 = b.q().pow(3).unwrap();
    assert_eq!(x.mul(c.r(1)).mul(x), x.scale(&q3));
    assert_ne!(x.mul(c.r(2)).mul(x), x.scale(&q3));
}

#[test]
fn small_symmetrizers() {
    let b = bqd(CaseId::IIa);
    let c = build_context(&b, 2, 0).unwrap();
    let s = c.symmetrizer(Side::V);
    assert_eq!(s, c.identity().add(&c.r(1).scale(b.q())));
    let p = solve_p(&c).unwrap();
    let f = q_factorial(2, &b.q().mul(b.q()));
    assert_eq!(p.p, s.scale(&f.inv().unwrap()));
    assert_eq!(p.rank, 6);
}

#[test]
fn pinned_one_one() {
    for case in [CaseId::Ia, CaseId::IIa, CaseId::IVb] {
        let b = bqd(case);
        let c = build_context(&b, 1, 1).unwrap();
        let res = solve_p(&c).unwrap();
        let ki = c.kappa().inv().unwrap();
        assert_eq!(res.alphas, vec![K::one(), ki.neg()]);
        assert_eq!(res.p, c.identity().sub(&c.x().unwrap().scale(&ki)));
        assert_eq!(res.rank, 8);
        assert!(verify_p_properties(&c, &res).all_pass());
    }
}

#[test]
fn projector_two_one() {
    let b = bqd(CaseId::IIIa);
    let c = build_context(&b, 2, 1).unwrap();
    let res = solve_p(&c).unwrap();
    assert_eq!(res.rank, 15);
    let r = verify_p_properties(&c, &res);
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn contraction_identities_small() {
    let b = bqd(CaseId::IIa);
    for (k, l) in [(2, 1), (2, 2), (1, 2)] {
        let r = verify_contraction_identities(&build_context(&b, k, l).unwrap());
        assert!(r.all_pass(), "({k},{l}): {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn flipped_projector_rank() {
    let b = bqd(CaseId::IIIb);
    let f = dynkin_flip(&b);
    let c = build_context(&f, 1, 2).unwrap();
    assert_eq!(solve_p(&c).unwrap().rank, expected_dim(1, 2));
}

#[test]
fn demo() {
    for case in [CaseId::IIa, CaseId::Ia] {
        let r = symmetrizer_nonvanishing_demo(&bqd(case), 4).unwrap();
        assert!(r.all_pass(), "{case}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn t_out_of_range() {
    let c = build_context(&bqd(CaseId::Ia), 2, 1).unwrap();
    assert!(c.t(1, 0).is_err());
    assert!(c.u(0).is_err());
    assert!(c.u(2).unwrap().is_zero());
}
