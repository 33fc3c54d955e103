use std::fmt;

use super::{BaseField, Field, Mode, Poly, Rational, ScalarError};

/// Rational function `num/den` in one indeterminate `q` over ℚ.
///
/// Canonical form: `den` is monic and coprime to `num`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let s = lc.inv().expect("nonzero leading coefficient");
            RatFunc { num: num.scale(&s), den: den.scale(&s) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `q`.
    pub fn indeterminate() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Value at `q = x`; fails at a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        (self.num.eval(x)).checked_div(&d)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&rhs.num));
            }
            return Self::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = rhs.den.exact_div(&g1);
        let n2 = rhs.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        Self::reduce(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

impl BaseField for RatFunc {
    const MODE: Mode = Mode::Symbolic;

    fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn indeterminate() -> Option<Self> {
        Some(RatFunc::indeterminate())
    }

    fn laurent_terms(&self) -> Option<Vec<(Rational, i32)>> {
        if !self.den.is_monic_monomial() {
            return None;
        }
        let shift = self.den.degree().unwrap_or(0) as i32;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), i as i32 - shift))
                .collect(),
        )
    }

    fn from_laurent(terms: &[(Rational, i32)]) -> Result<Self, ScalarError> {
        let lo = terms.iter().map(|t| t.1).min().unwrap_or(0).min(0);
        let mut num = Poly::zero();
        for (c, e) in terms {
            num = num.add(&Poly::monomial(c.clone(), (e - lo) as usize));
        }
        let den = Poly::monomial(Rational::one(), (-lo) as usize);
        Ok(Self::reduce(num, den))
    }

    fn as_fraction(&self) -> (Poly, Poly) {
        (self.num.clone(), self.den.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.laurent_terms() {
            Some(t) => f.write_str(&super::literal::format_terms(&t, false)),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::indeterminate()
    }

    #[test]
    fn rho_has_expected_form() {
        let s = q().add(&q().inv().unwrap());
        let rho = s.mul(&s).inv().unwrap();
        // ρ = q^2 / (q^2 + 1)^2
        let one = Rational::one();
        let num = Poly::monomial(one.clone(), 2);
        let base = Poly::from_coeffs(vec![one.clone(), Rational::zero(), one]);
        assert_eq!(rho.num(), &num);
        assert_eq!(rho.den(), &base.mul(&base));
    }

    #[test]
    fn canonical_after_cancellation() {
        let x = q().sub(&RatFunc::one());
        let y = x.mul(&x).add(&x).inv().unwrap().mul(&x);
        // x / (x^2 + x) = 1 / q
        assert_eq!(y, q().inv().unwrap());
        assert!(y.den().leading().is_one());
    }

    #[test]
    fn laurent_round_trip() {
        let k = q().pow(-2).unwrap().add(&RatFunc::one()).add(&q().pow(2).unwrap());
        let t = k.laurent_terms().unwrap();
        assert_eq!(RatFunc::from_laurent(&t).unwrap(), k);
        assert_eq!(k.to_string(), "q^-2+1+q^2");
    }

    #[test]
    fn eval_and_poles() {
        let f = q().sub(&RatFunc::one()).inv().unwrap();
        assert_eq!(f.eval(&Rational::integer(3)).unwrap(), Rational::new(1, 2).unwrap());
        assert_eq!(f.eval(&Rational::one()), Err(ScalarError::DivisionByZero));
    }
}
