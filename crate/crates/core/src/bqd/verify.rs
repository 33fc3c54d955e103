use super::{eye, make_derived, Bqd, K};
use crate::linalg::{kernel_basis, rank, Mat};
use crate::report::Report;
use crate::scalars::{derived_constants, BaseField, Field};

const COH: &str = "coherence";
const MIRROR: &str = "mirror coherence";
const RANKS: &str = "decomposition ranks";
const CUBIC: &str = "cubic tensors";
const TRACE: &str = "trace of Q";
const S2: &str = "antipode square";

/// The coherence system on raw matrices `[A, a, B, b, C, c, D, d]`.
fn coh_checks<B: BaseField>(
    r: &mut Report,
    m: &[Mat<K<B>>; 8],
    q: &K<B>,
    om: &K<B>,
    anchor: &str,
    prefix: &str,
) {
    let [a_up, a, b_up, b, c_up, c, d_up, d] = m;
    let i3 = eye::<B>(3);
    let id = |s: &str| format!("{prefix}{s}");
    let (kappa, rho) = match derived_constants(q) {
        Ok(x) => x,
        Err(e) => {
            r.check(id("constants"), anchor, false, || e.to_string());
            return;
        }
    };
    let om2 = om.mul(om);

    r.check_eq(id("(1,C)(c,1)=1"), anchor, &i3.kron(c_up).mul(&c.kron(&i3)), &i3);
    r.check_eq(id("(D,1)(1,d)=1"), anchor, &d_up.kron(&i3).mul(&i3.kron(d)), &i3);
    r.check_eq(id("Aa=1"), anchor, &a_up.mul(a), &i3);
    r.check_eq(
        id("C(A,1)=wD(1,A)"),
        anchor,
        &c_up.mul(&a_up.kron(&i3)),
        &d_up.mul(&i3.kron(a_up)).scale(om),
    );
    r.check_eq(
        id("(1,a)c=w(a,1)d"),
        anchor,
        &i3.kron(a).mul(c),
        &a.kron(&i3).mul(d).scale(om),
    );
    r.check_eq(id("(1,D)(a,1)=B"), anchor, &i3.kron(d_up).mul(&a.kron(&i3)), b_up);
    r.check_eq(id("w^2(1,A)(d,1)=b"), anchor, &i3.kron(a_up).mul(&d.kron(&i3)).scale(&om2), b);
    r.check_eq(id("w(C,1)(1,a)=B"), anchor, &c_up.kron(&i3).mul(&i3.kron(a)).scale(om), b_up);
    r.check_eq(id("(A,1)(1,c)=b"), anchor, &a_up.kron(&i3).mul(&i3.kron(c)), b);
    let kap = Mat::scalar(1, &kappa);
    r.check_eq(id("Dc=kappa"), anchor, &d_up.mul(c), &kap);
    r.check_eq(id("Cd=kappa"), anchor, &c_up.mul(d), &kap);
    let f = a_up.kron(&i3).mul(&i3.kron(a));
    let g = i3.kron(a_up).mul(&a.kron(&i3));
    let i9 = eye::<B>(9);
    r.check_eq(id("GF=rho(1+cD)"), anchor, &g.mul(&f), &i9.add(&c.mul(d_up)).scale(&rho));
    r.check_eq(id("FG=rho(1+dC)"), anchor, &f.mul(&g), &i9.add(&d.mul(c_up)).scale(&rho));
}

/// Every coherence identity, exactly.
pub fn verify_coh<B: BaseField>(bqd: &Bqd<B>) -> Report {
    let mut r = Report::new(format!("{}: coherence", bqd.name()));
    coh_checks(&mut r, &bqd.mats(), bqd.q(), bqd.omega(), COH, "");
    r
}

/// The mirror system, with `V↔W, A↔B, a↔b, C↔D, c↔d` interchanged.
pub fn verify_postcoh<B: BaseField>(bqd: &Bqd<B>) -> Report {
    let [a_up, a, b_up, b, c_up, c, d_up, d] = bqd.mats();
    let flipped = [b_up, b, a_up, a, d_up, d, c_up, c];
    let mut r = Report::new(format!("{}: mirror coherence", bqd.name()));
    coh_checks(&mut r, &flipped, bqd.q(), bqd.omega(), MIRROR, "mirror ");
    r
}

/// Ranks and kernel dimensions behind the tensor decompositions.
pub fn verify_decomp_ranks<B: BaseField>(bqd: &Bqd<B>) -> Report {
    let mut r = Report::new(format!("{}: decomposition ranks", bqd.name()));
    let mut expect = |id: &str, got: usize, want: usize| {
        r.check(id, RANKS, got == want, || format!("got {got}, expected {want}"));
    };
    expect("rank A = 3", rank(bqd.A()), 3);
    expect("rank a = 3", rank(bqd.a()), 3);
    expect("rank B = 3", rank(bqd.B()), 3);
    expect("rank b = 3", rank(bqd.b()), 3);
    expect("dim Ker A = 6", kernel_basis(bqd.A()).cols(), 6);
    expect("dim Ker B = 6", kernel_basis(bqd.B()).cols(), 6);
    expect("dim Ker C = 8", kernel_basis(bqd.C()).cols(), 8);
    expect("dim Ker D = 8", kernel_basis(bqd.D()).cols(), 8);
    r
}

/// The twisted cyclic symmetry of `e` and `E`, their contraction, and the
/// traces of `Q` and `Q⁻¹`.
pub fn verify_qe<B: BaseField>(bqd: &Bqd<B>) -> Report {
    let mut r = Report::new(format!("{}: cubic tensors", bqd.name()));
    let dv = match make_derived(bqd) {
        Ok(d) => d,
        Err(e) => {
            r.check("derived maps", CUBIC, false, || e.to_string());
            return r;
        }
    };
    let q = dv.Q.mat();
    let e = dv.e.mat().data();
    let big_e = dv.E.mat().data();
    let om = bqd.omega();
    let om2 = om.mul(om);
    let ix = |i: usize, j: usize, k: usize| 9 * i + 3 * j + k;

    // e^{lij} = ω² e^{ijk} Q^l_k
    let mut lhs = Vec::with_capacity(27);
    let mut rhs = Vec::with_capacity(27);
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                lhs.push(e[ix(l, i, j)].clone());
                let s = (0..3).fold(K::<B>::zero(), |acc, k| acc.add(&e[ix(i, j, k)].mul(q.get(l, k))));
                rhs.push(s.mul(&om2));
            }
        }
    }
    r.check_eq("e^{lij}=w^2 e^{ijk} Q^l_k", CUBIC, &Mat::column_vector(lhs), &Mat::column_vector(rhs));

    // E_{lij} = ω E_{ijk} Q^k_l
    let mut lhs = Vec::with_capacity(27);
    let mut rhs = Vec::with_capacity(27);
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                lhs.push(big_e[ix(l, i, j)].clone());
                let s = (0..3)
                    .fold(K::<B>::zero(), |acc, k| acc.add(&big_e[ix(i, j, k)].mul(q.get(k, l))));
                rhs.push(s.mul(om));
            }
        }
    }
    r.check_eq("E_{lij}=w E_{ijk} Q^k_l", CUBIC, &Mat::row_vector(lhs), &Mat::row_vector(rhs));

    // e^{ikl} E_{klj} = δ^i_j
    let contraction = Mat::from_fn(3, 3, |i, j| {
        let mut s = K::<B>::zero();
        for k in 0..3 {
            for l in 0..3 {
                s = s.add(&e[ix(i, k, l)].mul(&big_e[ix(k, l, j)]));
            }
        }
        s
    });
    r.check_eq("e^{ikl}E_{klj}=delta", CUBIC, &contraction, &eye::<B>(3));

    let tr = dv.Q.mat().trace();
    r.check("tr Q = kappa", TRACE, tr == dv.kappa, || format!("tr Q = {tr}, kappa = {}", dv.kappa));
    let tri = dv.Qinv.mat().trace();
    r.check("tr Q^-1 = kappa", TRACE, tri == dv.kappa, || format!("tr Q^-1 = {tri}"));
    r
}

/// Consistency of `t ↦ QtQ⁻¹` with the structure tensors.
pub fn verify_s2<B: BaseField>(bqd: &Bqd<B>) -> Report {
    let mut r = Report::new(format!("{}: antipode square", bqd.name()));
    let dv = match make_derived(bqd) {
        Ok(d) => d,
        Err(e) => {
            r.check("derived maps", S2, false, || e.to_string());
            return r;
        }
    };
    let (q, qi, qw, qwi) = (dv.Q.mat(), dv.Qinv.mat(), dv.QW.mat(), dv.QWinv.mat());
    r.check_eq("Q Q^-1 = 1", S2, &q.mul(qi), &eye::<B>(3));
    r.check_eq("Q_W Q_W^-1 = 1", S2, &qw.mul(qwi), &eye::<B>(3));
    r.check_eq("A(Q,Q) = Q_W A", S2, &bqd.A().mul(&q.kron(q)), &qw.mul(bqd.A()));
    r.check_eq("B(Q_W,Q_W) = Q B", S2, &bqd.B().mul(&qw.kron(qw)), &q.mul(bqd.B()));
    r
}

/// Coherence, mirror coherence, ranks, cubic tensors and antipode square.
pub fn full_report<B: BaseField>(bqd: &Bqd<B>) -> Report {
    let mut r = Report::new(bqd.name().to_string());
    r.extend(verify_coh(bqd));
    r.extend(verify_postcoh(bqd));
    r.extend(verify_decomp_ranks(bqd));
    r.extend(verify_qe(bqd));
    r.extend(verify_s2(bqd));
    r
}
