//! The BQD data model, its derived maps, verifiers and equivalence
//! transformations.
//!
//! Matrix layouts (basis `x_i` of `V`, `y_α` of `W`, first factor major):
//!
//! | tensor | map           | shape | entry                      |
//! |--------|---------------|-------|----------------------------|
//! | `A`    | `V⊗V → W`     | 3×9   | `A[α][3i+j]`               |
//! | `a`    | `W → V⊗V`     | 9×3   | `a[3i+j][α]`               |
//! | `B`    | `W⊗W → V`     | 3×9   | `B[i][3α+β]`               |
//! | `b`    | `V → W⊗W`     | 9×3   | `b[3α+β][i]`               |
//! | `C`    | `W⊗V → 1`     | 1×9   | `C[3α+i] = C(y_α⊗x_i)`     |
//! | `c`    | `1 → V⊗W`     | 9×1   | `c[3i+α]`                  |
//! | `D`    | `V⊗W → 1`     | 1×9   | `D[3i+α] = D(x_i⊗y_α)`     |
//! | `d`    | `1 → W⊗V`     | 9×1   | `d[3α+i]`                  |

mod derived;
mod export;
mod transform;
mod verify;

use thiserror::Error;

use crate::linalg::{Factor, LinalgError, Mat, Signature, TMap};
use crate::scalars::{BaseField, Cyc, Field, Mode, RatFunc, Rational, ScalarError};

pub use derived::{make_derived, Derived};
pub use export::{export_presentation, reversal_invariant, Generator, PresentationDoc, Relation, Term};
pub use transform::{apply_base_change, apply_rescale, dynkin_flip};
pub use verify::{
    full_report, verify_coh, verify_decomp_ranks, verify_postcoh, verify_qe, verify_s2,
};

/// Scalars of a BQD over the base field `B`.
pub type K<B> = Cyc<B>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BqdError {
    #[error("tensor {name}: {source}")]
    Shape { name: &'static str, source: LinalgError },
    #[error("omega must be a cube root of unity, got {0}")]
    InvalidOmega(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("base change matrix is singular")]
    SingularMatrix,
    #[error("rescaling factors must be nonzero")]
    ZeroScale,
    #[error("transformed data violates the axioms: {0}")]
    AxiomViolation(String),
}

/// Tensor names in storage order.
pub const TENSOR_NAMES: [&str; 8] = ["A", "a", "B", "b", "C", "c", "D", "d"];

fn sig(fs: &[Factor]) -> Signature {
    Signature::new(fs.iter().copied())
}

/// Domain and codomain of each tensor, in [`TENSOR_NAMES`] order.
pub fn tensor_signatures() -> [(Signature, Signature); 8] {
    use Factor::{V, W};
    [
        (sig(&[V, V]), sig(&[W])),
        (sig(&[W]), sig(&[V, V])),
        (sig(&[W, W]), sig(&[V])),
        (sig(&[V]), sig(&[W, W])),
        (sig(&[W, V]), Signature::unit()),
        (Signature::unit(), sig(&[V, W])),
        (sig(&[V, W]), Signature::unit()),
        (Signature::unit(), sig(&[W, V])),
    ]
}

/// A basic quantum SL(3) datum: eight structure tensors with `q` and `ω`.
///
/// Values are immutable once built; the constructor checks shapes and that
/// `ω³ = 1` and `q ≠ 0`, while the identities themselves are checked by the
/// verifiers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bqd<B: BaseField> {
    name: String,
    q: K<B>,
    omega: K<B>,
    tensors: [TMap<K<B>>; 8],
}

#[allow(non_snake_case)]
impl<B: BaseField> Bqd<B> {
    /// Build from raw matrices in [`TENSOR_NAMES`] order.
    pub fn from_mats(
        name: impl Into<String>,
        q: K<B>,
        omega: K<B>,
        mats: [Mat<K<B>>; 8],
    ) -> Result<Self, BqdError> {
        if q.is_zero() {
            return Err(ScalarError::InvalidQ("q = 0".into()).into());
        }
        if !omega.pow(3)?.is_one() {
            return Err(BqdError::InvalidOmega(omega.to_string()));
        }
        let sigs = tensor_signatures();
        let mut out = Vec::with_capacity(8);
        for ((m, (dom, cod)), name) in mats.into_iter().zip(sigs).zip(TENSOR_NAMES) {
            out.push(TMap::new(dom, cod, m).map_err(|source| BqdError::Shape { name, source })?);
        }
        let tensors: [TMap<K<B>>; 8] = out.try_into().expect("eight tensors");
        Ok(Bqd { name: name.into(), q, omega, tensors })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn mode(&self) -> Mode {
        B::MODE
    }

    pub fn q(&self) -> &K<B> {
        &self.q
    }

    pub fn omega(&self) -> &K<B> {
        &self.omega
    }

    pub fn tensor(&self, i: usize) -> &TMap<K<B>> {
        &self.tensors[i]
    }

    pub fn tensors(&self) -> &[TMap<K<B>>; 8] {
        &self.tensors
    }

    pub fn mats(&self) -> [Mat<K<B>>; 8] {
        self.tensors.clone().map(TMap::into_mat)
    }

    pub fn A(&self) -> &Mat<K<B>> {
        self.tensors[0].mat()
    }
    pub fn a(&self) -> &Mat<K<B>> {
        self.tensors[1].mat()
    }
    pub fn B(&self) -> &Mat<K<B>> {
        self.tensors[2].mat()
    }
    pub fn b(&self) -> &Mat<K<B>> {
        self.tensors[3].mat()
    }
    pub fn C(&self) -> &Mat<K<B>> {
        self.tensors[4].mat()
    }
    pub fn c(&self) -> &Mat<K<B>> {
        self.tensors[5].mat()
    }
    pub fn D(&self) -> &Mat<K<B>> {
        self.tensors[6].mat()
    }
    pub fn d(&self) -> &Mat<K<B>> {
        self.tensors[7].mat()
    }

    /// Replace individual tensors (used to build perturbed test data).
    pub fn with_mat(&self, index: usize, m: Mat<K<B>>) -> Result<Self, BqdError> {
        let mut mats = self.mats();
        mats[index] = m;
        Self::from_mats(self.name.clone(), self.q.clone(), self.omega.clone(), mats)
    }
}

impl Bqd<RatFunc> {
    /// Specialize a symbolic datum at `q = x` (the indeterminate, not
    /// necessarily the datum's `q`).
    pub fn eval(&self, x: &Rational) -> Result<Bqd<Rational>, BqdError> {
        let mats = self.mats();
        let mut out = Vec::with_capacity(8);
        for m in &mats {
            out.push(m.try_map(|s| s.eval(x))?);
        }
        let mats: [Mat<K<Rational>>; 8] = out.try_into().expect("eight tensors");
        Bqd::from_mats(self.name.clone(), self.q.eval(x)?, self.omega.eval(x)?, mats)
    }

    /// View a numeric datum in symbolic mode.
    pub fn lift(num: &Bqd<Rational>) -> Self {
        let mats = num.mats().map(|m| m.map(Cyc::lift));
        Bqd::from_mats(num.name.clone(), Cyc::lift(&num.q), Cyc::lift(&num.omega), mats)
            .expect("lifting preserves shapes")
    }
}

/// `1_n` over `K<B>`.
pub(crate) fn eye<B: BaseField>(n: usize) -> Mat<K<B>> {
    Mat::identity(n)
}

/// Read a 9-vector (either orientation) as a 3×3 matrix `[first][second]`.
pub(crate) fn as3<B: BaseField>(v: &Mat<K<B>>) -> Mat<K<B>> {
    let flat = v.data();
    assert_eq!(flat.len(), 9, "expected a 9-component tensor");
    Mat::from_fn(3, 3, |i, j| flat[3 * i + j].clone())
}
