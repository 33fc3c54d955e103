//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use bqd_core::bqd::{
    apply_base_change, apply_rescale, dynkin_flip, export_presentation, full_report, make_derived, reversal_invariant,
    verify_decomp_ranks, Bqd, K,
};
use bqd_core::catalog::{check_case_conditions, detect_q_type, instantiate, CaseId, CaseSpec};
use bqd_core::hecke::{build_context, solve_p, verify_contraction_identities, verify_hecke_relations, verify_p_properties};
use bqd_core::linalg::{inverse, Mat};
use bqd_core::scalars::{BaseField, Field, NumScalar, RatFunc, Rational};
use bqd_core::shape::{dim_free_ideal_component, dim_g_component, expected_dim, Sweep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn default<B: BaseField>(case: CaseId) -> Bqd<B> {
    instantiate(&CaseSpec::<B>::default_for(case)).unwrap_or_else(|e| panic!("{case}: {e}"))
}

fn non_elliptic() -> impl Iterator<Item = CaseId> {
    CaseId::ALL.into_iter().filter(|c| !c.is_elliptic())
}

fn bidegrees(max_total: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max_total).flat_map(move |n| (0..=n).map(move |k| (k, n - k)))
}

fn first_failure(r: &bqd_core::report::Report) -> Option<String> {
    r.failures().next().map(|c| format!("{}: {}", r.subject, c.id))
}

fn axiom_suite() -> Outcome {
    let mut n = 0;
    for case in CaseId::ALL {
        for spec in CaseSpec::<Rational>::grid(case) {
            let bqd = instantiate(&spec).map_err(|e| format!("{}: {e}", spec.label()))?;
            if let Some(f) = first_failure(&full_report(&bqd)) {
                return Err(f);
            }
            let t = detect_q_type(&bqd).map_err(|e| format!("{}: {e}", spec.label()))?;
            if t.tag != case.qtag() {
                return Err(format!("{}: detected type {}", spec.label(), t.tag.as_str()));
            }
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn free_ideal() -> Outcome {
    for case in non_elliptic() {
        let bqd = default::<Rational>(case);
        for ((k, l), want) in [((3, 0), 17), ((0, 3), 17), ((2, 1), 66), ((1, 2), 66)] {
            let got = dim_free_ideal_component(&bqd, k, l).map_err(|e| e.to_string())?.ideal_rank;
            if got != want {
                return Err(format!("{case} ({k},{l}): {got} vs {want}"));
            }
        }
    }
    Ok("17 and 66 on every non-elliptic case".into())
}

fn shape_dims() -> Outcome {
    for case in non_elliptic() {
        let bqd = default::<Rational>(case);
        for (name, mut sweep) in [("M", Sweep::m(&bqd)), ("N", Sweep::n(&bqd))] {
            for r in sweep.up_to(6) {
                if r.quotient != expected_dim(r.k, r.l) {
                    return Err(format!("{case} {name}({},{}) = {}", r.k, r.l, r.quotient));
                }
            }
        }
    }
    for case in [CaseId::IIa, CaseId::IIb, CaseId::IIpA] {
        let bqd = default::<RatFunc>(case);
        for (name, mut sweep) in [("M", Sweep::m(&bqd)), ("N", Sweep::n(&bqd))] {
            for r in sweep.up_to(4) {
                if r.quotient != expected_dim(r.k, r.l) {
                    return Err(format!("symbolic {case} {name}({},{}) = {}", r.k, r.l, r.quotient));
                }
            }
        }
    }
    Ok("numeric k+l<=6, symbolic k+l<=4".into())
}

fn g_dims() -> Outcome {
    let mut pinned = None;
    for case in non_elliptic() {
        let bqd = default::<Rational>(case);
        for (k, l) in bidegrees(3) {
            let got = dim_g_component(&bqd, k, l).map_err(|e| format!("{case}: {e}"))?.quotient;
            let d = expected_dim(k, l);
            if got != d * d {
                return Err(format!("{case} G({k},{l}) = {got} vs {}", d * d));
            }
            if (k, l) == (2, 1) {
                pinned = Some(got);
            }
        }
    }
    match pinned {
        Some(225) => Ok("k+l<=3, G(2,1) = 225".into()),
        other => Err(format!("G(2,1) = {other:?}")),
    }
}

fn hecke_suite() -> Outcome {
    let mut checks = 0;
    for case in CaseId::ALL {
        let bqd = default::<Rational>(case);
        for (k, l) in bidegrees(4) {
            let ctx = build_context(&bqd, k, l).map_err(|e| format!("{case} ({k},{l}): {e}"))?;
            for r in [verify_hecke_relations(&ctx), verify_contraction_identities(&ctx)] {
                if let Some(f) = first_failure(&r) {
                    return Err(f);
                }
                checks += r.checks.len();
            }
        }
    }
    let bqd = default::<Rational>(CaseId::IIIa);
    let ctx = build_context(&bqd, 3, 2).map_err(|e| e.to_string())?;
    if let Some(f) = first_failure(&verify_hecke_relations(&ctx)) {
        return Err(f);
    }
    Ok(format!("{checks} identities on every case for k+l<=4, spot check at (3,2)"))
}

fn projector() -> Outcome {
    for case in non_elliptic() {
        let bqd = default::<Rational>(case);
        for (k, l) in bidegrees(4) {
            let ctx = build_context(&bqd, k, l).map_err(|e| format!("{case} ({k},{l}): {e}"))?;
            let res = solve_p(&ctx).map_err(|e| format!("{case} ({k},{l}): {e}"))?;
            if let Some(f) = first_failure(&verify_p_properties(&ctx, &res)) {
                return Err(f);
            }
            if (k, l) == (1, 1) {
                let x = ctx.x().expect("mixed degree");
                let pinned = ctx.identity().sub(&x.scale(&ctx.kappa().inv().unwrap()));
                if res.p != pinned {
                    return Err(format!("{case}: P(1,1) != 1 - X/kappa"));
                }
            }
        }
    }
    Ok("every non-elliptic case for k+l<=4, P(1,1) = 1 - X/kappa".into())
}

fn random_scalar(rng: &mut ChaCha8Rng) -> NumScalar {
    loop {
        let n = rng.gen_range(-4i64..=4);
        let d = rng.gen_range(1i64..=3);
        if n != 0 {
            return NumScalar::from_rational(&Rational::new(n, d).unwrap());
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Mat<NumScalar> {
    loop {
        let data = (0..9).map(|_| NumScalar::from_int(rng.gen_range(-2i64..=2))).collect();
        let m = Mat::from_vec(3, 3, data);
        if inverse(&m).is_ok() {
            return m;
        }
    }
}

fn q_of<B: BaseField>(b: &Bqd<B>) -> Mat<K<B>> {
    make_derived(b).expect("derived maps").Q.into_mat()
}

fn equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5133);
    let mut n = 0;
    for case in CaseId::ALL {
        let bqd = default::<Rational>(case);
        let q = q_of(&bqd);
        for i in 0..20 {
            let at = |what: &str| format!("{case} transform {i}: {what}");
            let (gv, gw) = (random_invertible(&mut rng), random_invertible(&mut rng));
            let moved = apply_base_change(&bqd, &gv, &gw).map_err(|e| at(&e.to_string()))?;
            if q_of(&moved) != gv.mul(&q).mul(&inverse(&gv).unwrap()) {
                return Err(at("Q is not conjugated by the base change"));
            }
            let (mu, sigma) = (random_scalar(&mut rng), random_scalar(&mut rng));
            let scaled = apply_rescale(&moved, &mu, &sigma).map_err(|e| at(&e.to_string()))?;
            if q_of(&scaled) != q_of(&moved) {
                return Err(at("Q changed under rescaling"));
            }
            let out = if rng.gen_bool(0.5) { dynkin_flip(&scaled) } else { scaled };
            if let Some(f) = first_failure(&full_report(&out)) {
                return Err(at(&f));
            }
            if dynkin_flip(&dynkin_flip(&out)) != out {
                return Err(at("flip is not an involution"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} composite transforms, seed 0x5133"))
}

fn elliptic() -> Outcome {
    let spec = CaseSpec::<Rational>::default_for(CaseId::Ih);
    if let Some(f) = first_failure(&check_case_conditions(&spec)) {
        return Err(f);
    }
    let bqd = instantiate(&spec).map_err(|e| e.to_string())?;
    if let Some(f) = first_failure(&full_report(&bqd)) {
        return Err(f);
    }
    let rows = Sweep::m(&bqd).up_to(5);
    let agree = rows.iter().filter(|r| r.quotient == expected_dim(r.k, r.l)).count();
    let dims: Vec<String> = rows.iter().map(|r| format!("({},{})={}", r.k, r.l, r.quotient)).collect();
    Ok(format!("axioms and conditions pass; evidence: {agree}/{} agree with d [{}]", rows.len(), dims.join(" ")))
}

fn classical() -> Outcome {
    let bqd = default::<Rational>(CaseId::Ia);
    if !bqd.q().is_one() {
        return Err("I.a is not at q = 1".into());
    }
    let ranks = verify_decomp_ranks(&bqd);
    for id in ["dim Ker A = 6", "dim Ker C = 8"] {
        let c = ranks.get(id).ok_or_else(|| format!("no check {id}"))?;
        if c.status != bqd_core::report::Status::Pass {
            return Err(format!("{id}: {:?}", c.witness));
        }
    }
    let doc = export_presentation(&bqd).map_err(|e| e.to_string())?;
    if !reversal_invariant(&doc.relations) {
        return Err("exported relations are not reversal invariant".into());
    }
    Ok(format!("Ker A = 6, Ker C = 8, {} relations reversal invariant", doc.relations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("axiom suite on all cases and grids", axiom_suite),
        ("free ideal ranks", free_ideal),
        ("M and N graded dimensions", shape_dims),
        ("G graded dimensions", g_dims),
        ("Hecke relation suite", hecke_suite),
        ("projector", projector),
        ("equivalence transforms", equivalences),
        ("elliptic evidence", elliptic),
        ("classical sanity", classical),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} ({msg}) [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({msg}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
