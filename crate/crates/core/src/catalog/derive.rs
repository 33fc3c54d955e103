use super::{CatalogError, Cubic};
use crate::bqd::{verify_coh, Bqd, K};
use crate::linalg::{inverse, Mat};
use crate::scalars::{BaseField, Cyc, Field, QTag, Rational};

/// The pairings `C, c, D, d` of a Q-type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTensors<B: BaseField> {
    /// `C : W⊗V → 1`, 1×9.
    pub c_up: Mat<K<B>>,
    /// `c : 1 → V⊗W`, 9×1.
    pub c: Mat<K<B>>,
    /// `D : V⊗W → 1`, 1×9.
    pub d_up: Mat<K<B>>,
    /// `d : 1 → W⊗V`, 9×1.
    pub d: Mat<K<B>>,
}

fn vec9<B: BaseField>(entries: &[((usize, usize), K<B>)], column: bool) -> Mat<K<B>> {
    let mut v = vec![K::<B>::zero(); 9];
    for ((a, b), x) in entries {
        let i = 3 * (a - 1) + (b - 1);
        v[i] = v[i].add(x);
    }
    if column {
        Mat::column_vector(v)
    } else {
        Mat::row_vector(v)
    }
}

/// The explicit `C, c, D, d` for each Q-type. Keys are one-based
/// (first factor, second factor).
pub fn base_tensors<B: BaseField>(tag: QTag, q: &K<B>) -> Result<BaseTensors<B>, CatalogError> {
    let one = K::<B>::one();
    let diag = |x: [K<B>; 3]| -> Vec<((usize, usize), K<B>)> {
        x.into_iter().enumerate().map(|(i, v)| ((i + 1, i + 1), v)).collect()
    };
    let with = |extra: &[((usize, usize), K<B>)]| {
        let mut v = diag([one.clone(), one.clone(), one.clone()]);
        v.extend(extra.iter().cloned());
        v
    };
    let half = K::<B>::from_rational(&Rational::new(1, 2).unwrap());
    let m1 = one.neg();
    let (c, c_up, d, d_up) = match tag {
        QTag::I => (with(&[]), with(&[]), with(&[]), with(&[])),
        QTag::II => {
            let qi = q.inv()?;
            (
                diag([qi.clone(), one.clone(), q.clone()]),
                diag([q.clone(), one.clone(), qi.clone()]),
                diag([q.clone(), one.clone(), qi.clone()]),
                diag([qi, one.clone(), q.clone()]),
            )
        }
        QTag::III => (
            with(&[((1, 3), one.clone())]),
            with(&[((1, 3), m1.clone())]),
            with(&[((3, 1), m1.clone())]),
            with(&[((3, 1), one.clone())]),
        ),
        QTag::IV => (
            with(&[((1, 2), one.clone()), ((2, 3), one.clone()), ((1, 3), half.clone())]),
            with(&[((1, 2), m1.clone()), ((2, 3), m1.clone()), ((1, 3), half.clone())]),
            with(&[((2, 1), m1.clone()), ((3, 2), m1.clone()), ((3, 1), half.clone())]),
            with(&[((2, 1), one.clone()), ((3, 2), one.clone()), ((3, 1), half)]),
        ),
    };
    Ok(BaseTensors { c_up: vec9(&c_up, false), c: vec9(&c, true), d_up: vec9(&d_up, false), d: vec9(&d, true) })
}

/// Structure tensors before normalization: `Aa` may be a nonzero multiple
/// of the identity, and `ω` is not yet determined.
#[derive(Clone, Debug)]
pub struct Candidate<B: BaseField> {
    pub name: String,
    pub q: K<B>,
    pub a_up: Mat<K<B>>,
    pub a: Mat<K<B>>,
    pub b_up: Mat<K<B>>,
    pub b: Mat<K<B>>,
    pub base: BaseTensors<B>,
}

fn as3<B: BaseField>(v: &Mat<K<B>>) -> Mat<K<B>> {
    Mat::from_fn(3, 3, |i, j| v.data()[3 * i + j].clone())
}

fn b_maps<B: BaseField>(a_up: &Mat<K<B>>, a: &Mat<K<B>>, base: &BaseTensors<B>) -> (Mat<K<B>>, Mat<K<B>>) {
    let i3 = Mat::<K<B>>::identity(3);
    let b_up = i3.kron(&base.d_up).mul(&a.kron(&i3));
    let b = a_up.kron(&i3).mul(&i3.kron(&base.c));
    (b_up, b)
}

/// `A` from `C(A,1) = E` and `a` from `(1,a)c = e`, then
/// `B = (1,D)(a,1)` and `b = (A,1)(1,c)`.
pub fn derive_maps_from_e_e<B: BaseField>(
    name: &str,
    q: &K<B>,
    e: &Cubic<B>,
    big_e: &Cubic<B>,
    base: &BaseTensors<B>,
) -> Result<Candidate<B>, CatalogError> {
    let cm = inverse(&as3(&base.c)).map_err(|_| CatalogError::DegeneratePairing)?;
    let cc = inverse(&as3(&base.c_up)).map_err(|_| CatalogError::DegeneratePairing)?;
    let er = Mat::from_fn(9, 3, |ij, k| big_e.0[3 * ij + k].clone());
    let a_up = er.mul(&cc).transpose();
    let el = Mat::from_fn(3, 9, |i, jk| e.0[9 * i + jk].clone());
    let a = cm.mul(&el).transpose();
    let (b_up, b) = b_maps(&a_up, &a, base);
    Ok(Candidate { name: name.to_string(), q: q.clone(), a_up, a, b_up, b, base: base.clone() })
}

/// Rescale `A` so that `Aa = 1`, pick `ω`, and verify the full system.
pub fn normalize<B: BaseField>(c: Candidate<B>) -> Result<Bqd<B>, CatalogError> {
    let aa = c.a_up.mul(&c.a);
    let nu = aa.get(0, 0).clone();
    if nu.is_zero() || aa != Mat::scalar(3, &nu) {
        return Err(CatalogError::NormalizationFailed("Aa is not a nonzero multiple of 1".into()));
    }
    let nui = nu.inv()?;
    let a_up = c.a_up.scale(&nui);
    let (b_up, b) = b_maps(&a_up, &c.a, &c.base);
    let i3 = Mat::<K<B>>::identity(3);
    let lhs = c.base.c_up.mul(&a_up.kron(&i3));
    let rhs = c.base.d_up.mul(&i3.kron(&a_up));
    let w = Cyc::<B>::omega();
    let omega = [K::<B>::one(), w.clone(), w.mul(&w)]
        .into_iter()
        .find(|om| lhs == rhs.scale(om))
        .ok_or_else(|| CatalogError::NormalizationFailed("C(A,1)=wD(1,A) for no cube root w".into()))?;
    let BaseTensors { c_up, c: c_low, d_up, d } = c.base;
    let bqd = Bqd::from_mats(c.name, c.q, omega, [a_up, c.a, b_up, b, c_up, c_low, d_up, d])?;
    let first = verify_coh(&bqd).failures().next().map(|f| f.id.clone());
    match first {
        None => Ok(bqd),
        Some(id) => Err(CatalogError::NormalizationFailed(id)),
    }
}
