//! Dense exact linear algebra and maps between tensor powers of `V` and `W`.
//!
//! Basis conventions: a tensor product of spaces is indexed with the first
//! factor major (`V⊗W` basis `x_i⊗y_α` sits at index `3i + α`), and a map
//! `X → Y` is a `dim Y × dim X` matrix, so `(f, g)` is `f.kron(g)`.
//!
//! Duals do not reverse factors: the dual basis of `x_i⊗y_α` is `x^i⊗y^α`
//! at the same index, and the transpose of a map is the plain matrix
//! transpose with every factor dualized in place.

mod elim;
mod mat;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::Field;

pub use elim::{
    column_space_contains, inverse, kernel_basis, rank, row_space_rank, rref, solve, Echelon,
};
pub use mat::{kron_all, Mat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch { expected: Signature, found: Signature },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix shape {found:?} does not match signature dimensions {expected:?}")]
    Shape { expected: (usize, usize), found: (usize, usize) },
}

/// One tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    V,
    W,
    #[serde(rename = "V*")]
    VDual,
    #[serde(rename = "W*")]
    WDual,
    Unit,
}

impl Factor {
    pub fn dim(self) -> usize {
        match self {
            Factor::Unit => 1,
            _ => 3,
        }
    }

    pub fn dual(self) -> Factor {
        match self {
            Factor::V => Factor::VDual,
            Factor::W => Factor::WDual,
            Factor::VDual => Factor::V,
            Factor::WDual => Factor::W,
            Factor::Unit => Factor::Unit,
        }
    }

    /// The factor with `V` and `W` exchanged.
    pub fn swap_vw(self) -> Factor {
        match self {
            Factor::V => Factor::W,
            Factor::W => Factor::V,
            Factor::VDual => Factor::WDual,
            Factor::WDual => Factor::VDual,
            Factor::Unit => Factor::Unit,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::V => "V",
            Factor::W => "W",
            Factor::VDual => "V*",
            Factor::WDual => "W*",
            Factor::Unit => "1",
        })
    }
}

/// An ordered tensor product of factors. The empty product is the unit.
///
/// Unit factors are dropped on construction, so a signature is a canonical
/// word in `V, W, V*, W*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Signature(Vec<Factor>);

impl Signature {
    pub fn new(factors: impl IntoIterator<Item = Factor>) -> Self {
        Signature(factors.into_iter().filter(|f| *f != Factor::Unit).collect())
    }

    pub fn unit() -> Self {
        Signature(Vec::new())
    }

    /// `V^{⊗k} ⊗ W^{⊗l}`.
    pub fn vw(k: usize, l: usize) -> Self {
        Signature::new(std::iter::repeat_n(Factor::V, k).chain(std::iter::repeat_n(Factor::W, l)))
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(|f| f.dim()).product()
    }

    pub fn concat(&self, other: &Signature) -> Signature {
        Signature(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn dual(&self) -> Signature {
        Signature(self.0.iter().map(|f| f.dual()).collect())
    }

    pub fn swap_vw(&self) -> Signature {
        Signature(self.0.iter().map(|f| f.swap_vw()).collect())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("⊗"))
    }
}

/// A linear map between tensor products, with its matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct TMap<F> {
    dom: Signature,
    cod: Signature,
    mat: Mat<F>,
}

impl<F: Field> TMap<F> {
    pub fn new(dom: Signature, cod: Signature, mat: Mat<F>) -> Result<Self, LinalgError> {
        let expected = (cod.dim(), dom.dim());
        if mat.shape() != expected {
            return Err(LinalgError::Shape { expected, found: mat.shape() });
        }
        Ok(TMap { dom, cod, mat })
    }

    pub fn identity(sig: Signature) -> Self {
        let n = sig.dim();
        TMap { dom: sig.clone(), cod: sig, mat: Mat::identity(n) }
    }

    pub fn dom(&self) -> &Signature {
        &self.dom
    }

    pub fn cod(&self) -> &Signature {
        &self.cod
    }

    pub fn mat(&self) -> &Mat<F> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<F> {
        self.mat
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &TMap<F>) -> Result<TMap<F>, LinalgError> {
        if g.cod != self.dom {
            return Err(LinalgError::SignatureMismatch {
                expected: self.dom.clone(),
                found: g.cod.clone(),
            });
        }
        Ok(TMap { dom: g.dom.clone(), cod: self.cod.clone(), mat: self.mat.mul(&g.mat) })
    }

    /// `(self, g)`.
    pub fn tensor(&self, g: &TMap<F>) -> TMap<F> {
        TMap {
            dom: self.dom.concat(&g.dom),
            cod: self.cod.concat(&g.cod),
            mat: self.mat.kron(&g.mat),
        }
    }

    pub fn transpose(&self) -> TMap<F> {
        TMap { dom: self.cod.dual(), cod: self.dom.dual(), mat: self.mat.transpose() }
    }

    pub fn scale(&self, s: &F) -> TMap<F> {
        TMap { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.scale(s) }
    }

    /// Same matrix, relabelled with `V` and `W` swapped.
    pub fn swap_vw(&self) -> TMap<F> {
        TMap { dom: self.dom.swap_vw(), cod: self.cod.swap_vw(), mat: self.mat.clone() }
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> TMap<G> {
        TMap { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.map(f) }
    }
}

impl<F: Field> fmt::Debug for TMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TMap {} -> {} {:?}", self.dom, self.cod, self.mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{NumScalar, Rational};

    fn n(x: i64) -> NumScalar {
        NumScalar::from_int(x)
    }

    fn m(rows: &[&[i64]]) -> Mat<NumScalar> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| n(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_and_tensor() {
        let v = TMap::<NumScalar>::identity(Signature::new([Factor::V]));
        let w = TMap::identity(Signature::new([Factor::W]));
        let vw = v.tensor(&w);
        assert_eq!(vw, TMap::identity(Signature::vw(1, 1)));
        assert_eq!(vw.mat().rows(), 9);
    }

    #[test]
    fn compose_checks_signatures() {
        let v = TMap::<NumScalar>::identity(Signature::new([Factor::V]));
        let w = TMap::identity(Signature::new([Factor::W]));
        assert!(matches!(v.compose(&w), Err(LinalgError::SignatureMismatch { .. })));
        assert_eq!(v.compose(&v).unwrap(), v);
    }

    #[test]
    fn unit_codomain_is_a_covector() {
        let d = TMap::new(Signature::vw(1, 1), Signature::unit(), Mat::row_vector(vec![n(1); 9]));
        let d = d.unwrap();
        let c = TMap::new(Signature::unit(), Signature::vw(1, 1), Mat::column_vector(vec![n(1); 9]));
        assert_eq!(d.compose(&c.unwrap()).unwrap().mat().shape(), (1, 1));
        let t = d.transpose();
        assert_eq!(t.dom(), &Signature::unit());
        assert_eq!(t.cod(), &Signature::new([Factor::VDual, Factor::WDual]));
        assert_eq!(t.transpose(), d);
    }

    #[test]
    fn rank_kernel_solve_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let b = m(&[&[2, 1], &[1, 1]]);
        let bi = inverse(&b).unwrap();
        assert!(b.mul(&bi).is_identity());
        assert_eq!(inverse(&a), Err(LinalgError::Singular));
        let x = solve(&b, &m(&[&[3], &[2]])).unwrap();
        assert_eq!(x, m(&[&[1], &[1]]));
        assert!(solve(&a, &m(&[&[1], &[0], &[0]])).is_none());
    }

    #[test]
    fn rref_is_reduced() {
        let a = m(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]);
        let (r, piv) = rref(&a);
        assert_eq!(piv, vec![0, 1]);
        let minus_one = NumScalar::from_rational(&Rational::new(-1, 1).unwrap());
        assert_eq!(r.get(0, 2), &minus_one);
        assert_eq!(r.get(1, 2), &n(2));
        assert!(r.get(0, 1).is_zero());
    }

    #[test]
    fn embed_matches_kron() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let e = a.embed(2, 3);
        let k = Mat::identity(2).kron(&a).kron(&Mat::identity(3));
        assert_eq!(e, k);
    }
}
