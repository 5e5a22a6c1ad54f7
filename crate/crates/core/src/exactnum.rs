//! Exact scalar arithmetic: arbitrary-precision rationals and the field
//! Q(ω), where ω is a primitive cube root of unity (ω² + ω + 1 = 0).
//!
//! Both types have a text form used throughout the scenario assets:
//! integers, fractions `p/q`, and polynomials in `w` (standing for ω),
//! e.g. `-(w+2)` or `1/3*w`.  The parser accepts everything the printer
//! emits, so `parse(print(x)) == x` holds for all values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Error raised by the scalar parsers and by division by zero.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?} at byte {1}")]
    Unexpected(char, usize),
    #[error("trailing input starting at byte {0}")]
    Trailing(usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("ω appears with exponent above 1 outside a product")]
    BadOmegaPower,
}

/// Arbitrary-precision rational number, always in reduced form with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, NumError> {
        let den = den.into();
        if den.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = NumError;
    fn from_str(s: &str) -> Result<Self, NumError> {
        let c = Cyclotomic::from_str(s)?;
        if !c.omega_coeff().is_zero() {
            return Err(NumError::Unexpected('w', 0));
        }
        Ok(c.rational_coeff().clone())
    }
}

/// Element of Q(ω) stored on the basis {1, ω}: the value `a + b·ω`.
///
/// Multiplication reduces via ω² = −1 − ω; conjugation is ω ↦ ω².
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic {
    a: Rational,
    b: Rational,
}

impl Cyclotomic {
    pub fn new(a: Rational, b: Rational) -> Self {
        Cyclotomic { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Cyclotomic { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_int(n))
    }

    pub fn zero() -> Self {
        Cyclotomic::from_int(0)
    }

    pub fn one() -> Self {
        Cyclotomic::from_int(1)
    }

    /// The generator ω itself.
    pub fn omega() -> Self {
        Cyclotomic::new(Rational::zero(), Rational::one())
    }

    /// Coefficient of 1.
    pub fn rational_coeff(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of ω.
    pub fn omega_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if the ω-coefficient vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate: ω ↦ ω² = −1 − ω, so a + bω ↦ (a − b) − bω.
    pub fn conj(&self) -> Self {
        Cyclotomic::new(&self.a - &self.b, -&self.b)
    }

    /// Field norm x·conj(x) = a² − ab + b², a non-negative rational.
    pub fn norm(&self) -> Rational {
        &(&(&self.a * &self.a) - &(&self.a * &self.b)) + &(&self.b * &self.b)
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Cyclotomic::new(&c.a / &n, &c.b / &n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative order, if this is a root of unity (None otherwise).
    pub fn mult_order(&self, cap: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc == Cyclotomic::one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Text form: plain when a single signed term (`5`, `-1/3*w`, `w`),
    /// parenthesised otherwise so the result can embed in polynomial text.
    pub fn to_coeff_text(&self) -> String {
        let plain = self.to_string();
        if self.a.is_zero() || self.b.is_zero() {
            return plain;
        }
        if self.a.is_negative() && self.b.is_negative() {
            format!("-({})", (-self))
        } else {
            format!("({})", plain)
        }
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω², with ω² = −1 − ω.
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let mixed = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Cyclotomic::new(&ac - &bd, &mixed - &bd)
    }
}

impl Div for &Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self * &rhs.inv().expect("division by zero in Q(ω)")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::new(-&self.a, -&self.b)
    }
}

macro_rules! cyclo_owned_ops {
    ($($trait:ident~$method:ident),*) => {$(
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    )*};
}

cyclo_owned_ops!(Add~add, Sub~sub, Mul~mul, Div~div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let omega_part = |f: &mut fmt::Formatter<'_>, b: &Rational, lead: bool| {
            let mag = b.abs();
            let sign = if b.is_negative() {
                "-"
            } else if lead {
                ""
            } else {
                "+"
            };
            if mag == Rational::one() {
                write!(f, "{}w", sign)
            } else {
                write!(f, "{}{}*w", sign, mag)
            }
        };
        if self.a.is_zero() {
            omega_part(f, &self.b, true)
        } else {
            write!(f, "{}", self.a)?;
            omega_part(f, &self.b, false)
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Cyclotomic {
    type Err = NumError;
    fn from_str(s: &str) -> Result<Self, NumError> {
        let mut p = ScalarParser::new(s);
        let v = p.expr()?;
        p.finish()?;
        Ok(v)
    }
}

/// Recursive-descent parser for the scalar text form.
///
/// Grammar: `expr := ['-'] term (('+'|'-') term)*`;
/// `term := factor ('*' factor)*`; `factor := rational | 'w' | '(' expr ')'`.
struct ScalarParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ScalarParser<'a> {
    fn new(s: &'a str) -> Self {
        ScalarParser { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Cyclotomic, NumError> {
        let mut acc = Cyclotomic::zero();
        let mut sign_neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(_) => false,
            None => return Err(NumError::Empty),
        };
        loop {
            let t = self.term()?;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign_neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign_neg = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, NumError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Cyclotomic, NumError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(NumError::Trailing(self.pos));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'w') => {
                self.pos += 1;
                self.maybe_pow(Cyclotomic::omega())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    Ok(Cyclotomic::from_rational(Rational(BigRational::new(
                        num,
                        if den.is_zero() {
                            return Err(NumError::ZeroDenominator);
                        } else {
                            den
                        },
                    ))))
                } else {
                    Ok(Cyclotomic::from_rational(Rational::from_int(num)))
                }
            }
            Some(c) => Err(NumError::Unexpected(c as char, self.pos)),
            None => Err(NumError::Empty),
        }
    }

    fn maybe_pow(&mut self, base: Cyclotomic) -> Result<Cyclotomic, NumError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| NumError::BadOmegaPower)?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt, NumError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return match self.bytes.get(self.pos) {
                Some(&c) => Err(NumError::Unexpected(c as char, self.pos)),
                None => Err(NumError::Empty),
            };
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn finish(&mut self) -> Result<(), NumError> {
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(NumError::Trailing(self.pos));
        }
        Ok(())
    }
}

/// Convenience: parse a rational from text, panicking on malformed input.
/// Intended for literals in tests and scenario builders.
pub fn rat(s: &str) -> Rational {
    s.parse().unwrap_or_else(|e| panic!("bad rational {s:?}: {e}"))
}

/// Convenience: parse a Q(ω) scalar from text, panicking on malformed input.
pub fn cyc(s: &str) -> Cyclotomic {
    s.parse().unwrap_or_else(|e| panic!("bad scalar {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form_and_sign() {
        let r = Rational::new(4, -6).unwrap();
        assert_eq!(r.numerator(), &BigInt::from(-2));
        assert_eq!(r.denominator(), &BigInt::from(3));
        assert_eq!(Rational::new(1, 0), Err(NumError::ZeroDenominator));
    }

    #[test]
    fn omega_square_is_minus_one_minus_omega() {
        let w = Cyclotomic::omega();
        assert_eq!(&w * &w, cyc("-1-w"));
        // ω³ = 1 and 1 + ω + ω² = 0.
        assert_eq!(w.pow(3), Cyclotomic::one());
        assert_eq!(&(&Cyclotomic::one() + &w) + &w.pow(2), Cyclotomic::zero());
    }

    #[test]
    fn product_of_conjugate_units() {
        // (1+ω)(1+ω²) = (1+ω)(−ω) = 1.
        let x = cyc("1+w");
        assert_eq!(&x * &x.conj(), Cyclotomic::one());
    }

    #[test]
    fn sqrt_minus_three() {
        // (2ω+1)² = −3, hence inv(2ω+1) = (2ω+1)/(−3).
        let u = cyc("2*w+1");
        assert_eq!(u.pow(2), Cyclotomic::from_int(-3));
        let inv = u.inv().unwrap();
        assert_eq!(inv, &u * &Cyclotomic::from_rational(rat("-1/3")));
        assert_eq!(&u * &inv, Cyclotomic::one());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(Cyclotomic::zero().inv(), Err(NumError::DivisionByZero));
        assert_eq!(Rational::zero().inv(), Err(NumError::DivisionByZero));
    }

    #[test]
    fn norm_is_rational_and_multiplicative() {
        let x = cyc("2-5*w");
        let y = cyc("1/3+w");
        assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
        assert_eq!(x.norm(), rat("39")); // 4 + 10 + 25
    }

    #[test]
    fn parse_examples_from_the_interface_notes() {
        assert_eq!(cyc("-(w+2)"), cyc("-2-w"));
        assert_eq!(cyc("1/3*w"), Cyclotomic::new(rat("0"), rat("1/3")));
        assert_eq!(rat("-7/2"), Rational::new(-7, 2).unwrap());
    }

    #[test]
    fn printer_parser_round_trip() {
        let samples = [
            "0", "1", "-1", "5/3", "-5/3", "w", "-w", "2*w", "-1/3*w", "1+w", "-2-w", "1/2-3*w",
            "-1+2/7*w",
        ];
        for s in samples {
            let v = cyc(s);
            assert_eq!(cyc(&v.to_string()), v, "round trip failed for {s}");
            assert_eq!(cyc(&v.to_coeff_text()), v, "coeff text failed for {s}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(Cyclotomic::from_str("").is_err());
        assert!(Cyclotomic::from_str("1 + ").is_err());
        assert!(Cyclotomic::from_str("x").is_err());
        assert!(Cyclotomic::from_str("1/0").is_err());
        assert!(Cyclotomic::from_str("(1").is_err());
    }
}
