//! Scalar literals: printing and parsing.
//!
//! Printed form is a sum of terms `c`, `c*w`, `c*q^n`, `c*w*q^n` (unit
//! coefficients elided). Values that are not Laurent polynomials in `q` print
//! as `(N)/(D)` with `D` a monic polynomial. The parser accepts a superset:
//! arbitrary `+ - * /`, parentheses and integer powers.

use super::{BaseField, Cyc, Field, Poly, Rational, ScalarError};

fn format_term(c: &Rational, e: i32, w: bool) -> String {
    let mut factor = String::new();
    if w {
        factor.push('w');
    }
    if e != 0 {
        if w {
            factor.push('*');
        }
        if e == 1 {
            factor.push('q');
        } else {
            factor.push_str(&format!("q^{e}"));
        }
    }
    if factor.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        factor
    } else if (-c).is_one() {
        format!("-{factor}")
    } else {
        format!("{c}*{factor}")
    }
}

fn join(terms: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for t in terms {
        if !out.is_empty() && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Format `Σ c·q^e` (times `w` when `w` is set).
pub(crate) fn format_terms(terms: &[(Rational, i32)], w: bool) -> String {
    join(terms.iter().map(|(c, e)| format_term(c, *e, w)))
}

fn poly_terms(p: &Poly) -> Vec<(Rational, i32)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), i as i32))
        .collect()
}

pub(crate) fn format_cyc<B: BaseField>(x: &Cyc<B>) -> String {
    if let (Some(r), Some(o)) = (x.re().laurent_terms(), x.om().laurent_terms()) {
        let re = r.iter().map(|(c, e)| format_term(c, *e, false));
        let om = o.iter().map(|(c, e)| format_term(c, *e, true));
        return join(re.chain(om));
    }
    let (nr, dr) = x.re().as_fraction();
    let (no, d_o) = x.om().as_fraction();
    let g = dr.gcd(&d_o);
    let den = dr.mul(&d_o.exact_div(&g));
    let nr = nr.mul(&den.exact_div(&dr));
    let no = no.mul(&den.exact_div(&d_o));
    let re = poly_terms(&nr).into_iter().map(|(c, e)| format_term(&c, e, false));
    let om = poly_terms(&no).into_iter().map(|(c, e)| format_term(&c, e, true));
    format!("({})/({})", join(re.chain(om)), den)
}

/// Parse a scalar literal in the field `Cyc<B>`.
///
/// In numeric mode any occurrence of `q` is a [`ScalarError::ModeMismatch`].
pub fn parse_scalar<B: BaseField>(text: &str) -> Result<Cyc<B>, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty literal"));
    }
    let v = p.expr::<B>()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr<B: BaseField>(&mut self) -> Result<Cyc<B>, ScalarError> {
        let mut acc = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            Some(b'-') => {
                self.pos += 1;
                self.term::<B>()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<B: BaseField>(&mut self) -> Result<Cyc<B>, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary::<B>()?;
                    if d.is_zero() {
                        return Err(ScalarError::Parse {
                            position: at,
                            message: "division by zero".into(),
                        });
                    }
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<B: BaseField>(&mut self) -> Result<Cyc<B>, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary::<B>()?.neg());
        }
        self.power()
    }

    fn power<B: BaseField>(&mut self) -> Result<Cyc<B>, ScalarError> {
        let base = self.atom::<B>()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        let e: i32 = digits
            .parse()
            .ok()
            .filter(|e: &i32| *e <= 100_000)
            .ok_or(ScalarError::Parse { position: start, message: "expected exponent".into() })?;
        let e = if neg { -e } else { e };
        if base.is_zero() && e < 0 {
            return Err(ScalarError::Parse { position: start, message: "division by zero".into() });
        }
        base.pow(e)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom<B: BaseField>(&mut self) -> Result<Cyc<B>, ScalarError> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let d = self.digits();
                let r: Rational = d.parse()?;
                Ok(Cyc::from_rational(&r))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Cyc::omega())
            }
            Some(b'q') => {
                self.pos += 1;
                Cyc::q_indeterminate().ok_or(ScalarError::ModeMismatch)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{NumScalar, RatFunc, SymScalar};

    fn num(s: &str) -> NumScalar {
        parse_scalar::<Rational>(s).unwrap()
    }

    fn sym(s: &str) -> SymScalar {
        parse_scalar::<RatFunc>(s).unwrap()
    }

    #[test]
    fn numeric_literals() {
        assert_eq!(num("21/4"), NumScalar::from_rational(&Rational::new(21, 4).unwrap()));
        assert_eq!(num("2*w+1"), NumScalar::i_sqrt3());
        assert_eq!(num("-1"), NumScalar::from_int(-1));
        assert_eq!(num("3/2+1/3*w").to_string(), "3/2+1/3*w");
        assert_eq!(num("w*w"), num("-1-w"));
        assert_eq!(num(" ( 1 + w ) * -w "), num("1"));
    }

    #[test]
    fn symbolic_literals() {
        let k = sym("q^-2+1+q^2");
        let q = SymScalar::q_indeterminate().unwrap();
        let expect = q.pow(-2).unwrap().add(&SymScalar::one()).add(&q.pow(2).unwrap());
        assert_eq!(k, expect);
        assert_eq!(k.to_string(), "q^-2+1+q^2");
        let rho = sym("(q+q^-1)^-2");
        assert_eq!(rho.to_string(), "(q^2)/(1+2*q^2+q^4)");
        assert_eq!(sym(&rho.to_string()), rho);
    }

    #[test]
    fn printing_round_trips() {
        for s in ["0", "w", "-w", "-2/3*w*q^-1+q", "(1+w*q)/(1+q)", "5*q^3-w", "(q+w)/(1-q+q^2)"] {
            let v = sym(s);
            assert_eq!(sym(&v.to_string()), v, "{s}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_scalar::<Rational>("q"), Err(ScalarError::ModeMismatch));
        assert!(matches!(
            parse_scalar::<Rational>("1+*2"),
            Err(ScalarError::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_scalar::<Rational>("1/0"),
            Err(ScalarError::Parse { position: 2, .. })
        ));
        assert!(matches!(parse_scalar::<Rational>(""), Err(ScalarError::Parse { .. })));
        assert!(matches!(parse_scalar::<Rational>("2)"), Err(ScalarError::Parse { position: 1, .. })));
    }
}
