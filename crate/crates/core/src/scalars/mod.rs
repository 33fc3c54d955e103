//! Exact coefficient fields.
//!
//! Everything in the crate is computed over one of two fields:
//!
//! * `Cyc<Rational>`, i.e. ℚ(ω) with ω a primitive cube root of unity
//!   (numeric mode, `q` a fixed rational), or
//! * `Cyc<RatFunc>`, i.e. ℚ(q)(ω) = ℚ(ω)(q) (symbolic mode, `q` an
//!   indeterminate).
//!
//! ω is adjoined in both modes so the ω = 1 families and the primed
//! families share a single scalar type.

mod cyc;
mod literal;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cyc::Cyc;
pub use literal::parse_scalar;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::Rational;

/// ℚ(ω), numeric mode.
pub type NumScalar = Cyc<Rational>;
/// ℚ(ω)(q), symbolic mode.
pub type SymScalar = Cyc<RatFunc>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid q: {0}")]
    InvalidQ(String),
    #[error("q^2 is a root of unity (q = {0}) but the Q-type requires a generic deformation")]
    RootOfUnityQ(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("literal uses the indeterminate q but the session is numeric")]
    ModeMismatch,
}

/// Numeric vs. symbolic `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Numeric,
    Symbolic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Numeric => "numeric",
            Mode::Symbolic => "symbolic",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "numeric" => Ok(Mode::Numeric),
            "symbolic" => Ok(Mode::Symbolic),
            other => Err(format!("unknown mode `{other}` (expected numeric|symbolic)")),
        }
    }
}

/// A commutative field with exact, canonically normalized elements.
///
/// Equality is structural equality of canonical forms.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;
    fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }
    fn from_rational(r: &Rational) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::integer(n))
    }
    fn pow(&self, exp: i32) -> Result<Self, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

/// Base field of the quadratic extension: ℚ or ℚ(q).
pub trait BaseField: Field {
    const MODE: Mode;

    /// The value as a rational constant, if it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// The indeterminate `q` (symbolic mode only).
    fn indeterminate() -> Option<Self>;

    /// Write the value as a sum of terms in the literal grammar, each term
    /// multiplied by `suffix` (empty or `"w"`). Returns `None` when the value
    /// is not a Laurent polynomial and needs the fraction form.
    fn laurent_terms(&self) -> Option<Vec<(Rational, i32)>>;

    /// Build from a Laurent polynomial `Σ c·q^n`.
    fn from_laurent(terms: &[(Rational, i32)]) -> Result<Self, ScalarError>;

    /// Numerator and denominator as polynomials (denominator monic).
    fn as_fraction(&self) -> (Poly, Poly);
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        Rational::inv(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl BaseField for Rational {
    const MODE: Mode = Mode::Numeric;

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn indeterminate() -> Option<Self> {
        None
    }
    fn laurent_terms(&self) -> Option<Vec<(Rational, i32)>> {
        if self.is_zero() {
            Some(vec![])
        } else {
            Some(vec![(self.clone(), 0)])
        }
    }
    fn from_laurent(terms: &[(Rational, i32)]) -> Result<Self, ScalarError> {
        let mut acc = Rational::zero();
        for (c, e) in terms {
            if *e != 0 && !c.is_zero() {
                return Err(ScalarError::ModeMismatch);
            }
            acc = &acc + c;
        }
        Ok(acc)
    }
    fn as_fraction(&self) -> (Poly, Poly) {
        (Poly::constant(self.clone()), Poly::one())
    }
}

/// The four Jordan types of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QTag {
    I,
    II,
    III,
    IV,
}

impl QTag {
    pub fn as_str(self) -> &'static str {
        match self {
            QTag::I => "I",
            QTag::II => "II",
            QTag::III => "III",
            QTag::IV => "IV",
        }
    }

    /// Whether the type carries a genuine deformation parameter.
    pub fn is_generic_q(self) -> bool {
        self == QTag::II
    }
}

impl fmt::Display for QTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Admissibility of `q` for a datum of the given type.
///
/// A rational `q` is accepted unless it is zero, or `±1` for type II. A
/// non-constant `q` in symbolic mode is accepted unconditionally.
pub fn guard_q<B: BaseField>(q: &Cyc<B>, tag: QTag) -> Result<(), ScalarError> {
    let base = q.in_base().ok_or_else(|| ScalarError::InvalidQ(format!("q = {q} is not in the base field")))?;
    match base.as_rational() {
        None if B::MODE == Mode::Symbolic => Ok(()),
        None => Err(ScalarError::InvalidQ(q.to_string())),
        Some(r) if r.is_zero() => Err(ScalarError::RootOfUnityQ(q.to_string())),
        Some(r) if tag.is_generic_q() && r.abs().is_one() => Err(ScalarError::RootOfUnityQ(q.to_string())),
        Some(_) => Ok(()),
    }
}

/// `[n]_t = 1 + t + … + t^(n-1)`; `[0]_t = 0`.
pub fn q_integer<F: Field>(n: usize, t: &F) -> F {
    let mut acc = F::zero();
    let mut pw = F::one();
    for _ in 0..n {
        acc = acc.add(&pw);
        pw = pw.mul(t);
    }
    acc
}

/// `[n]_t! = [1]_t [2]_t … [n]_t`; `[0]_t! = 1`.
pub fn q_factorial<F: Field>(n: usize, t: &F) -> F {
    (1..=n).fold(F::one(), |acc, i| acc.mul(&q_integer(i, t)))
}

/// `κ = q⁻² + 1 + q²` and `ρ = (q + q⁻¹)⁻²`.
pub fn derived_constants<F: Field>(q: &F) -> Result<(F, F), ScalarError> {
    if q.is_zero() {
        return Err(ScalarError::InvalidQ("q = 0".into()));
    }
    let qi = q.inv()?;
    let kappa = qi.mul(&qi).add(&F::one()).add(&q.mul(q));
    let s = q.add(&qi);
    if s.is_zero() {
        return Err(ScalarError::InvalidQ(format!("q^2 = -1 (q = {q})")));
    }
    let rho = s.mul(&s).inv()?;
    Ok((kappa, rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_q_cases() {
        let n = |k: i64| NumScalar::from_int(k);
        assert!(guard_q(&n(1), QTag::I).is_ok());
        assert!(guard_q(&n(2), QTag::II).is_ok());
        assert!(matches!(guard_q(&n(-1), QTag::II), Err(ScalarError::RootOfUnityQ(_))));
        assert!(matches!(guard_q(&n(1), QTag::II), Err(ScalarError::RootOfUnityQ(_))));
        assert!(matches!(guard_q(&n(0), QTag::III), Err(ScalarError::RootOfUnityQ(_))));
        assert!(guard_q(&NumScalar::omega(), QTag::I).is_err());
        let q = SymScalar::q_indeterminate().unwrap();
        assert!(guard_q(&q, QTag::II).is_ok());
        assert!(guard_q(&SymScalar::from_int(-1), QTag::II).is_err());
    }

    #[test]
    fn constants_at_one_and_two() {
        let (k, r) = derived_constants(&NumScalar::from_int(1)).unwrap();
        assert_eq!(k, NumScalar::from_int(3));
        assert_eq!(r, NumScalar::from_rational(&Rational::new(1, 4).unwrap()));
        let (k, r) = derived_constants(&NumScalar::from_int(2)).unwrap();
        assert_eq!(k, NumScalar::from_rational(&Rational::new(21, 4).unwrap()));
        assert_eq!(r, NumScalar::from_rational(&Rational::new(4, 25).unwrap()));
    }

    #[test]
    fn constants_symbolic_identity() {
        let q = SymScalar::from_base(RatFunc::indeterminate());
        let (k, r) = derived_constants(&q).unwrap();
        // κρ = 1 − ρ
        assert_eq!(k.mul(&r), SymScalar::one().sub(&r));
    }

    #[test]
    fn q_zero_rejected() {
        assert!(matches!(
            derived_constants(&NumScalar::zero()),
            Err(ScalarError::InvalidQ(_))
        ));
    }

    #[test]
    fn q_integers() {
        let four = Rational::integer(4);
        assert_eq!(q_integer(3, &four), Rational::integer(21));
        assert_eq!(q_factorial(3, &four), Rational::integer(105));
        assert_eq!(q_factorial(0, &four), Rational::one());
        assert_eq!(q_integer(0, &four), Rational::zero());
    }
}
