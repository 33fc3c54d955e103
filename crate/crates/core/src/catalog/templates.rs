//! Cubic tensors `e`, `E` for each family.

use super::CaseId;
use crate::bqd::K;
use crate::linalg::Mat;
use crate::scalars::{BaseField, Cyc, Field, Rational};

/// A tensor on `V^{⊗3}` (or its dual), entry `9i+3j+k` for zero-based `ijk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cubic<B: BaseField>(pub Vec<K<B>>);

fn ix(m: [usize; 3]) -> usize {
    9 * (m[0] - 1) + 3 * (m[1] - 1) + (m[2] - 1)
}

impl<B: BaseField> Cubic<B> {
    pub fn zero() -> Self {
        Cubic(vec![K::<B>::zero(); 27])
    }

    /// Entry at a one-based index triple.
    pub fn get(&self, m: [usize; 3]) -> &K<B> {
        &self.0[ix(m)]
    }

    pub fn add(&mut self, m: [usize; 3], v: &K<B>) {
        let i = ix(m);
        self.0[i] = self.0[i].add(v);
    }

    fn add_all(&mut self, terms: &[([usize; 3], K<B>)], s: &K<B>) {
        for (m, v) in terms {
            self.add(*m, &v.mul(s));
        }
    }

    /// As `e : 1 → V⊗V⊗V` (27×1).
    pub fn lower(&self) -> Mat<K<B>> {
        Mat::column_vector(self.0.clone())
    }

    /// As `E : V⊗V⊗V → 1` (1×27).
    pub fn upper(&self) -> Mat<K<B>> {
        Mat::row_vector(self.0.clone())
    }

    pub fn from_slice(v: &[K<B>]) -> Self {
        assert_eq!(v.len(), 27);
        Cubic(v.to_vec())
    }
}

/// Sign of a permutation of `(1,2,3)`, zero for repeated indices.
pub fn levi_civita(m: [usize; 3]) -> i64 {
    let mut s = m;
    s.sort_unstable();
    if s != [1, 2, 3] {
        return 0;
    }
    let inv = (0..3).map(|a| (a + 1..3).filter(|&b| m[a] > m[b]).count()).sum::<usize>();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Distinct rearrangements of a multi-index.
pub fn distinct_perms(m: [usize; 3]) -> Vec<[usize; 3]> {
    const P: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<[usize; 3]> = P.iter().map(|p| [m[p[0]], m[p[1]], m[p[2]]]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The ten cubic monomials `x_i x_j x_k`, `i ≤ j ≤ k`.
pub fn monomials() -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(10);
    for i in 1..=3 {
        for j in i..=3 {
            for k in j..=3 {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Antisymmetric normalization plus a cubic polynomial, for type I.
///
/// Monomials are sorted index triples, so `x₁²x₂` is `[1,1,2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicSpec<B: BaseField> {
    pub lambda123: K<B>,
    pub sym_coeffs: Vec<([usize; 3], K<B>)>,
}

impl<B: BaseField> CubicSpec<B> {
    pub fn new(lambda123: K<B>, sym_coeffs: Vec<([usize; 3], K<B>)>) -> Self {
        CubicSpec { lambda123, sym_coeffs }
    }

    /// The tensor; `upper` selects the dual convention, where the
    /// normalized antisymmetric entry is the one at `321`.
    pub fn to_tensor(&self, upper: bool) -> Cubic<B> {
        let mut t = Cubic::zero();
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    let s = if upper { levi_civita([k, j, i]) } else { levi_civita([i, j, k]) };
                    if s != 0 {
                        t.add([i, j, k], &self.lambda123.mul(&K::<B>::from_int(s)));
                    }
                }
            }
        }
        for (m, c) in &self.sym_coeffs {
            let perms = distinct_perms(*m);
            let share = c.mul(&frac(1, perms.len() as i64));
            for p in perms {
                t.add(p, &share);
            }
        }
        t
    }

    /// Split a tensor into antisymmetric and symmetric parts. Returns `None`
    /// if a mixed-symmetry component is present.
    pub fn from_tensor(t: &Cubic<B>, upper: bool) -> Option<Self> {
        let sixth = frac::<B>(1, 6);
        let anchor = if upper { [3, 2, 1] } else { [1, 2, 3] };
        let lambda = distinct_perms([1, 2, 3]).into_iter().fold(K::<B>::zero(), |acc, p| {
            let s = levi_civita(p) * levi_civita(anchor);
            acc.add(&t.get(p).mul(&K::<B>::from_int(s)))
        });
        let lambda = lambda.mul(&sixth);
        let mut sym = Vec::new();
        for m in monomials() {
            let perms = distinct_perms(m);
            let value = perms.iter().fold(K::<B>::zero(), |acc, p| acc.add(t.get(*p)));
            if !value.is_zero() {
                sym.push((m, value));
            }
        }
        let spec = CubicSpec { lambda123: lambda, sym_coeffs: sym };
        (spec.to_tensor(upper) == *t).then_some(spec)
    }
}

fn k<B: BaseField>(n: i64) -> K<B> {
    K::<B>::from_int(n)
}

fn frac<B: BaseField>(n: i64, d: i64) -> K<B> {
    K::<B>::from_rational(&Rational::new(n, d).unwrap())
}

fn cubic_of<B: BaseField>(terms: &[([usize; 3], K<B>)]) -> Cubic<B> {
    let mut t = Cubic::zero();
    t.add_all(terms, &K::<B>::one());
    t
}

/// The two cubic polynomials of a type I case other than I.h.
pub fn type_i_specs<B: BaseField>(case: CaseId, alpha: Option<&K<B>>) -> (CubicSpec<B>, CubicSpec<B>) {
    let one = K::<B>::one();
    let isq3 = Cyc::<B>::i_sqrt3().mul(&k(6));
    let (lam, s, big_s): (K<B>, Vec<_>, Vec<_>) = match case {
        CaseId::Ia => (one.clone(), vec![], vec![]),
        CaseId::Ib => (one.clone(), vec![([1, 1, 1], one.clone())], vec![]),
        CaseId::Ic => (one.clone(), vec![([1, 1, 1], one.clone())], vec![([3, 3, 3], one.clone())]),
        // S carries a minus sign; with the plus sign (coh g/h) fail
        CaseId::Id => (one.clone(), vec![([1, 1, 2], one.clone())], vec![([2, 3, 3], one.neg())]),
        CaseId::Ie => {
            let a = alpha.expect("alpha").clone();
            (one.clone(), vec![([1, 2, 3], a.clone())], vec![([1, 2, 3], a)])
        }
        CaseId::If => (
            one.clone(),
            vec![([1, 1, 1], isq3.clone()), ([1, 2, 3], isq3.clone())],
            vec![([1, 2, 3], isq3)],
        ),
        CaseId::Ig => (
            one.clone(),
            vec![([1, 1, 1], isq3.clone()), ([1, 2, 3], isq3.clone())],
            vec![([3, 3, 3], isq3.clone()), ([1, 2, 3], isq3)],
        ),
        CaseId::IeStar => (K::<B>::zero(), vec![([1, 2, 3], one.clone())], vec![([1, 2, 3], one)]),
        other => panic!("{other} is not a polynomial type I case"),
    };
    (CubicSpec::new(lam.clone(), s), CubicSpec::new(lam, big_s))
}

/// Case I.d with `S = +x₂x₃²` verbatim; fails (coh g/h).
pub fn type_id_verbatim<B: BaseField>() -> (CubicSpec<B>, CubicSpec<B>) {
    let one = K::<B>::one();
    (
        CubicSpec::new(one.clone(), vec![([1, 1, 2], one.clone())]),
        CubicSpec::new(one.clone(), vec![([2, 3, 3], one)]),
    )
}

/// Case I.h from `(α, β, γ)` and `(α', β', γ')`.
pub fn type_ih<B: BaseField>(p: &[K<B>]) -> (Cubic<B>, Cubic<B>) {
    let build = |x: &K<B>, y: &K<B>, z: &K<B>| {
        let mut t = Cubic::zero();
        for m in [[1, 2, 3], [2, 3, 1], [3, 1, 2]] {
            t.add(m, x);
        }
        for m in [[1, 3, 2], [2, 1, 3], [3, 2, 1]] {
            t.add(m, y);
        }
        for m in [[1, 1, 1], [2, 2, 2], [3, 3, 3]] {
            t.add(m, z);
        }
        t
    };
    (build(&p[0], &p[1], &p[2]), build(&p[3], &p[4], &p[5]))
}

fn z_low<B: BaseField>(i: usize, j: usize, l: usize) -> Vec<([usize; 3], K<B>)> {
    let w = Cyc::<B>::omega();
    vec![([i, j, l], K::<B>::one()), ([j, l, i], w.clone()), ([l, i, j], w.mul(&w))]
}

fn z_up<B: BaseField>(i: usize, j: usize, l: usize) -> Vec<([usize; 3], K<B>)> {
    let w = Cyc::<B>::omega();
    vec![([i, j, l], K::<B>::one()), ([l, i, j], w.clone()), ([j, l, i], w.mul(&w))]
}

/// Parameters `(t₁, t₂, u₁, u₂, u₃, v₁, v₂, v₃)` of a traceless matrix.
pub type SlParams<B> = [K<B>; 8];

/// The dictionary `𝔰𝔩(V) → Γ_ω` for `e` (`upper = false`) or for `E`.
pub fn sl_tensor<B: BaseField>(p: &SlParams<B>, upper: bool) -> Cubic<B> {
    let z = if upper { z_up::<B> } else { z_low::<B> };
    let mut t = Cubic::zero();
    let (t1, t2, u1, u2, u3, v1, v2, v3) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6], &p[7]);
    t.add_all(&z(1, 2, 3), t1);
    t.add_all(&z(2, 1, 3), t1);
    t.add_all(&z(2, 3, 1), t2);
    t.add_all(&z(3, 2, 1), t2);
    let (mu1, mu2, mu3, mv1, mv2, mv3) = if upper {
        ([2, 2, 3], [3, 3, 1], [3, 3, 2], [1, 1, 3], [2, 2, 1], [1, 1, 2])
    } else {
        ([1, 1, 3], [2, 2, 1], [1, 1, 2], [2, 2, 3], [3, 3, 1], [3, 3, 2])
    };
    t.add_all(&z(mu1[0], mu1[1], mu1[2]), &u1.neg());
    t.add_all(&z(mu2[0], mu2[1], mu2[2]), &u2.neg());
    t.add_all(&z(mu3[0], mu3[1], mu3[2]), u3);
    t.add_all(&z(mv1[0], mv1[1], mv1[2]), v1);
    t.add_all(&z(mv2[0], mv2[1], mv2[2]), v2);
    t.add_all(&z(mv3[0], mv3[1], mv3[2]), &v3.neg());
    t
}

fn sl<B: BaseField>(v: [K<B>; 8]) -> SlParams<B> {
    v
}

pub fn type_i_prime<B: BaseField>(case: CaseId, t: Option<&K<B>>) -> (Cubic<B>, Cubic<B>) {
    let z = K::<B>::zero;
    let one = K::<B>::one;
    match case {
        CaseId::IpA => {
            let t = t.expect("t").clone();
            let p = sl([one(), t, z(), z(), z(), z(), z(), z()]);
            (sl_tensor(&p, false), sl_tensor(&p, true))
        }
        CaseId::IpB => {
            let pe = sl([one(), one().neg(), z(), z(), one(), z(), z(), z()]);
            let pu = sl([one(), one().neg(), z(), z(), one().neg(), z(), z(), z()]);
            (sl_tensor(&pe, false), sl_tensor(&pu, true))
        }
        other => panic!("{other} is not type I'"),
    }
}

/// `α(x₁₂₃ + q²x₂₃₁ + q²x₃₁₂) − β(x₁₃₂ + x₂₁₃ + q²x₃₂₁) + γx₂₂₂`.
fn type_ii_tensor<B: BaseField>(q: &K<B>, a: &K<B>, b: &K<B>, g: &K<B>) -> Cubic<B> {
    let q2 = q.mul(q);
    cubic_of(&[
        ([1, 2, 3], a.clone()),
        ([2, 3, 1], a.mul(&q2)),
        ([3, 1, 2], a.mul(&q2)),
        ([1, 3, 2], b.neg()),
        ([2, 1, 3], b.neg()),
        ([3, 2, 1], b.mul(&q2).neg()),
        ([2, 2, 2], g.clone()),
    ])
}

pub fn type_ii<B: BaseField>(case: CaseId, q: &K<B>, beta_or_p: &K<B>) -> Result<(Cubic<B>, Cubic<B>), crate::scalars::ScalarError> {
    let one = K::<B>::one();
    let zero = K::<B>::zero();
    let q2 = q.mul(q);
    Ok(match case {
        CaseId::IIa => {
            let bp = q2.div(beta_or_p)?;
            (type_ii_tensor(q, &one, beta_or_p, &zero), type_ii_tensor(q, &one, &bp, &zero))
        }
        CaseId::IIb => {
            let p = beta_or_p;
            let g = q2.sub(&one);
            (
                type_ii_tensor(q, &p.pow(-2)?, &p.pow(2)?, &g),
                type_ii_tensor(q, &p.inv()?, p, &zero),
            )
        }
        CaseId::IIpA => {
            let w = Cyc::<B>::omega();
            let w2 = w.mul(&w);
            let b = beta_or_p;
            let bp = q2.div(b)?;
            let e = cubic_of(&[
                ([1, 2, 3], one.clone()),
                ([2, 3, 1], w.mul(&q2)),
                ([3, 1, 2], w2.mul(&q2)),
                ([1, 3, 2], b.neg()),
                ([3, 2, 1], b.mul(&w).mul(&q2).neg()),
                ([2, 1, 3], b.mul(&w2).neg()),
            ]);
            let big_e = cubic_of(&[
                ([1, 2, 3], one.clone()),
                ([3, 1, 2], w.mul(&q2)),
                ([2, 3, 1], w2.mul(&q2)),
                ([1, 3, 2], bp.neg()),
                ([2, 1, 3], bp.mul(&w).neg()),
                ([3, 2, 1], bp.mul(&w2).mul(&q2).neg()),
            ]);
            (e, big_e)
        }
        other => panic!("{other} is not type II"),
    })
}

/// `(α, β, γ, δ, ε)` of a type III tensor; `upper` mirrors indices `1 ↔ 3`.
fn type_iii_tensor<B: BaseField>(p: [K<B>; 5], upper: bool) -> Cubic<B> {
    let [a, b, g, d, e] = p;
    let f = |m: [usize; 3]| if upper { m.map(|i| 4 - i) } else { m };
    let mut t = Cubic::zero();
    for (m, s) in [([1, 2, 3], 1), ([2, 3, 1], 1), ([3, 1, 2], 1), ([3, 2, 1], -1), ([2, 1, 3], -1), ([1, 3, 2], -1)] {
        // the dual antisymmetric part is anchored at 321, i.e. the mirror image
        t.add(f(m), &a.mul(&k(s)));
    }
    t.add(f([1, 2, 1]), &a.mul(&k(-2)));
    t.add(f([1, 1, 1]), &b);
    for m in [[1, 1, 2], [1, 2, 1], [2, 1, 1]] {
        t.add(f(m), &g);
    }
    for m in [[1, 2, 2], [2, 1, 2], [2, 2, 1]] {
        t.add(f(m), &d);
    }
    t.add([2, 2, 2], &e);
    t
}

pub fn type_iii<B: BaseField>(case: CaseId, param: Option<&K<B>>) -> (Cubic<B>, Cubic<B>) {
    let z = K::<B>::zero;
    let one = K::<B>::one;
    let (pe, pu) = match case {
        CaseId::IIIa => {
            let g = param.expect("gamma").clone();
            ([one(), z(), g.clone(), z(), z()], [one(), z(), one().sub(&g), z(), z()])
        }
        CaseId::IIIaStar => ([one(), one(), frac(2, 3), z(), z()], [one(), z(), frac(1, 3), z(), z()]),
        CaseId::IIIb => {
            let g = param.expect("gamma").clone();
            ([one(), z(), g.clone(), z(), z()], [one(), z(), k::<B>(2).sub(&g), z(), z()])
        }
        CaseId::IIIbStar => ([one(), one(), frac(2, 3), z(), z()], [one(), z(), frac(4, 3), z(), z()]),
        CaseId::IIIc => {
            let bp = param.expect("beta'").clone();
            ([one(), z(), frac(1, 3), z(), one()], [one(), bp, frac(2, 3), z(), z()])
        }
        CaseId::IIIcStar => ([one(), z(), one(), z(), one()], [one(), z(), one(), z(), z()]),
        other => panic!("{other} is not type III"),
    };
    (type_iii_tensor(pe, false), type_iii_tensor(pu, true))
}

/// `(α, β, γ, δ)` of a type III' tensor.
fn type_iiip_tensor<B: BaseField>(p: [K<B>; 4], upper: bool) -> Cubic<B> {
    let [a, b, g, d] = p;
    let w = Cyc::<B>::omega();
    let w2 = w.mul(&w);
    let one = K::<B>::one();
    let half = frac::<B>(1, 2);
    let mut t = Cubic::zero();
    if !upper {
        for (m, s) in [
            ([1, 2, 3], one.clone()),
            ([2, 3, 1], w.clone()),
            ([3, 1, 2], w2.clone()),
            ([3, 2, 1], one.neg()),
            ([2, 1, 3], w.neg()),
            ([1, 3, 2], w2.neg()),
        ] {
            t.add(m, &a.mul(&s));
        }
        t.add([1, 2, 1], &a.mul(&k(-2)));
        t.add([1, 1, 1], &b);
        let bc = w.sub(&one).mul(&half).mul(&b);
        for (m, s) in [([1, 1, 3], one.clone()), ([1, 3, 1], w.clone()), ([3, 1, 1], w2.clone())] {
            t.add(m, &bc.mul(&s));
        }
        for (m, s) in [([1, 1, 2], one.clone()), ([1, 2, 1], w.clone()), ([2, 1, 1], w2.clone())] {
            t.add(m, &g.mul(&s));
        }
        for (m, s) in [([1, 2, 2], one.clone()), ([2, 2, 1], w.clone()), ([2, 1, 2], w2.clone())] {
            t.add(m, &d.mul(&s));
        }
    } else {
        for (m, s) in [
            ([3, 2, 1], one.clone()),
            ([2, 1, 3], w2.clone()),
            ([1, 3, 2], w.clone()),
            ([1, 2, 3], one.neg()),
            ([2, 3, 1], w2.neg()),
            ([3, 1, 2], w.neg()),
        ] {
            t.add(m, &a.mul(&s));
        }
        t.add([3, 2, 3], &a.mul(&k(-2)));
        t.add([3, 3, 3], &b);
        let bc = w2.sub(&one).mul(&half).mul(&b);
        for (m, s) in [([3, 3, 1], one.clone()), ([3, 1, 3], w2.clone()), ([1, 3, 3], w.clone())] {
            t.add(m, &bc.mul(&s));
        }
        for (m, s) in [([3, 3, 2], one.clone()), ([3, 2, 3], w2.clone()), ([2, 3, 3], w.clone())] {
            t.add(m, &g.mul(&s));
        }
        for (m, s) in [([3, 2, 2], one.clone()), ([2, 2, 3], w2.clone()), ([2, 3, 2], w.clone())] {
            t.add(m, &d.mul(&s));
        }
    }
    t
}

pub fn type_iii_prime<B: BaseField>(case: CaseId, gamma: &K<B>) -> (Cubic<B>, Cubic<B>) {
    let z = K::<B>::zero;
    let one = K::<B>::one;
    let w = Cyc::<B>::omega();
    let w2 = w.mul(&w);
    let gp = match case {
        CaseId::IIIpA => w.sub(&w2.mul(gamma)),
        CaseId::IIIpB => w.mul(&k(2)).sub(&w2.mul(gamma)),
        other => panic!("{other} is not type III'"),
    };
    (
        type_iiip_tensor([one(), z(), gamma.clone(), z()], false),
        type_iiip_tensor([one(), z(), gp, z()], true),
    )
}

/// `(α, β, δ)` of a type IV tensor; `upper` mirrors indices `1 ↔ 3`.
fn type_iv_tensor<B: BaseField>(p: [K<B>; 3], upper: bool) -> Cubic<B> {
    let [a, b, d] = p;
    let f = |m: [usize; 3]| if upper { m.map(|i| 4 - i) } else { m };
    let mut t = Cubic::zero();
    for (m, s) in [([1, 2, 3], 1), ([2, 3, 1], 1), ([3, 1, 2], 1), ([3, 2, 1], -1), ([2, 1, 3], -1), ([1, 3, 2], -1)] {
        t.add(f(m), &a.mul(&k(s)));
    }
    let a2 = a.mul(&k(2));
    t.add(f([1, 1, 2]), &a2);
    t.add(f([2, 1, 1]), &a2.neg());
    t.add(f([1, 1, 3]), &a2.neg());
    t.add(f([3, 1, 1]), &a2.neg());
    t.add(f([2, 1, 2]), &a2);
    t.add(f([1, 1, 1]), &b);
    for m in [[1, 2, 2], [2, 1, 2], [2, 2, 1]] {
        t.add(f(m), &d);
    }
    let d2 = d.mul(&k(2));
    t.add(f([1, 1, 2]), &d2);
    t.add(f([2, 1, 1]), &d2.neg());
    for m in [[1, 1, 3], [1, 3, 1], [3, 1, 1]] {
        t.add(f(m), &d2.neg());
    }
    t
}

pub fn type_iv<B: BaseField>(case: CaseId) -> (Cubic<B>, Cubic<B>) {
    let z = K::<B>::zero;
    let one = K::<B>::one;
    let (pe, pu) = match case {
        CaseId::IVa => ([one(), one().neg(), z()], [one(), one().neg(), z()]),
        CaseId::IVb => ([one(), z(), frac(-1, 3)], [one(), frac(-8, 27), frac(-2, 3)]),
        other => panic!("{other} is not type IV"),
    };
    (type_iv_tensor(pe, false), type_iv_tensor(pu, true))
}
