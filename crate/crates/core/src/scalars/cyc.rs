use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BaseField, Field, RatFunc, Rational, ScalarError};

/// `re + om·ω` with `ω² = −1 − ω`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc<B> {
    re: B,
    om: B,
}

impl<B: BaseField> Cyc<B> {
    pub fn new(re: B, om: B) -> Self {
        Cyc { re, om }
    }

    pub fn from_base(re: B) -> Self {
        Cyc { re, om: B::zero() }
    }

    /// The primitive cube root of unity ω.
    pub fn omega() -> Self {
        Cyc { re: B::zero(), om: B::one() }
    }

    /// `i√3 = 2ω + 1`.
    pub fn i_sqrt3() -> Self {
        Cyc { re: B::one(), om: B::from_int(2) }
    }

    pub fn re(&self) -> &B {
        &self.re
    }

    pub fn om(&self) -> &B {
        &self.om
    }

    /// The Galois conjugate, sending ω to ω².
    pub fn conj(&self) -> Self {
        Cyc { re: self.re.sub(&self.om), om: self.om.neg() }
    }

    /// `re² − re·om + om²`.
    pub fn norm(&self) -> B {
        self.re.mul(&self.re).sub(&self.re.mul(&self.om)).add(&self.om.mul(&self.om))
    }

    pub fn in_base(&self) -> Option<&B> {
        self.om.is_zero().then_some(&self.re)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.in_base().and_then(B::as_rational)
    }

    /// The indeterminate, in symbolic mode.
    pub fn q_indeterminate() -> Option<Self> {
        B::indeterminate().map(Self::from_base)
    }
}

impl Cyc<RatFunc> {
    /// Specialize the indeterminate to a rational value.
    pub fn eval(&self, x: &Rational) -> Result<Cyc<Rational>, ScalarError> {
        Ok(Cyc { re: self.re.eval(x)?, om: self.om.eval(x)? })
    }

    /// Lift a numeric value into symbolic mode.
    pub fn lift(x: &Cyc<Rational>) -> Self {
        Cyc { re: RatFunc::constant(x.re.clone()), om: RatFunc::constant(x.om.clone()) }
    }
}

impl<B: BaseField> Field for Cyc<B> {
    fn zero() -> Self {
        Cyc { re: B::zero(), om: B::zero() }
    }
    fn one() -> Self {
        Cyc { re: B::one(), om: B::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }
    fn is_one(&self) -> bool {
        self.om.is_zero() && self.re.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        Cyc { re: self.re.add(&rhs.re), om: self.om.add(&rhs.om) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Cyc { re: self.re.sub(&rhs.re), om: self.om.sub(&rhs.om) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.om.is_zero() && rhs.om.is_zero() {
            return Cyc::from_base(self.re.mul(&rhs.re));
        }
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let ac = self.re.mul(&rhs.re);
        let bd = self.om.mul(&rhs.om);
        let ad = self.re.mul(&rhs.om);
        let bc = self.om.mul(&rhs.re);
        Cyc { re: ac.sub(&bd), om: ad.add(&bc).sub(&bd) }
    }
    fn neg(&self) -> Self {
        Cyc { re: self.re.neg(), om: self.om.neg() }
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.om.is_zero() {
            return Ok(Cyc::from_base(self.re.inv()?));
        }
        let n = self.norm().inv()?;
        let c = self.conj();
        Ok(Cyc { re: c.re.mul(&n), om: c.om.mul(&n) })
    }
    fn from_rational(r: &Rational) -> Self {
        Cyc::from_base(B::from_rational(r))
    }
}

impl<B: BaseField> Add for &Cyc<B> {
    type Output = Cyc<B>;
    fn add(self, rhs: &Cyc<B>) -> Cyc<B> {
        Field::add(self, rhs)
    }
}

impl<B: BaseField> Sub for &Cyc<B> {
    type Output = Cyc<B>;
    fn sub(self, rhs: &Cyc<B>) -> Cyc<B> {
        Field::sub(self, rhs)
    }
}

impl<B: BaseField> Mul for &Cyc<B> {
    type Output = Cyc<B>;
    fn mul(self, rhs: &Cyc<B>) -> Cyc<B> {
        Field::mul(self, rhs)
    }
}

impl<B: BaseField> Neg for &Cyc<B> {
    type Output = Cyc<B>;
    fn neg(self) -> Cyc<B> {
        Field::neg(self)
    }
}

impl<B: BaseField> fmt::Display for Cyc<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::literal::format_cyc(self))
    }
}

impl<B: BaseField> fmt::Debug for Cyc<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::scalars::{Cyc, Field, NumScalar, RatFunc, Rational, ScalarError};

    fn n(x: i64) -> NumScalar {
        NumScalar::from_int(x)
    }

    #[test]
    fn omega_relations() {
        let w = NumScalar::omega();
        assert_eq!(w.pow(3).unwrap(), n(1));
        assert!(w.mul(&w).add(&w).add(&n(1)).is_zero());
        // (1 + ω)(−ω) = 1
        assert_eq!(n(1).add(&w).mul(&w.neg()), n(1));
    }

    #[test]
    fn i_sqrt3_squares_to_minus_three() {
        let s = NumScalar::i_sqrt3();
        assert_eq!(s.mul(&s), n(-3));
    }

    #[test]
    fn inverse_and_zero() {
        let x = NumScalar::new(Rational::integer(3), Rational::new(-2, 5).unwrap());
        assert_eq!(x.mul(&x.inv().unwrap()), n(1));
        assert_eq!(NumScalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn symbolic_eval_commutes() {
        let q = Cyc::<RatFunc>::q_indeterminate().unwrap();
        let x = q.add(&Cyc::omega()).mul(&q.inv().unwrap());
        let at = Rational::integer(2);
        let lhs = x.eval(&at).unwrap();
        let rhs = n(2).add(&NumScalar::omega()).mul(&n(2).inv().unwrap());
        assert_eq!(lhs, rhs);
    }
}
