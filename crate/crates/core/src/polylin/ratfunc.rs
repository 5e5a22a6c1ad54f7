//! Rational functions: quotients of [`MultiPoly`] values.
//!
//! A [`RatFunc`] keeps a numerator and a nonzero denominator over the same
//! variable list.  When numerator and denominator together involve at most
//! one variable the quotient is reduced by their univariate gcd and scaled
//! so the denominator is monic; in that regime reduced forms are canonical.
//! Equality always compares by cross multiplication, so it is reliable in
//! the multivariate regime too.

use super::{univariate_gcd, MultiPoly, PolyError, VarSet};
use crate::exactnum::Cyclotomic;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Quotient of two polynomials with a nonzero denominator.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds `num / den`, reducing where possible; errors if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFunc, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    /// Embeds a polynomial as a rational function with denominator 1.
    pub fn from_poly(num: MultiPoly) -> RatFunc {
        let den = MultiPoly::from_int(num.vars(), 1);
        RatFunc { num, den }
    }

    /// The zero rational function over `vars`.
    pub fn zero(vars: &VarSet) -> RatFunc {
        Self::from_poly(MultiPoly::zero(vars))
    }

    /// The constant 1 over `vars`.
    pub fn one(vars: &VarSet) -> RatFunc {
        Self::from_poly(MultiPoly::from_int(vars, 1))
    }

    /// Numerator of the stored (reduced) form.
    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    /// Denominator of the stored (reduced) form.
    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// Shared variable list.
    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the underlying polynomial when the denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.inv().expect("nonzero denominator")))
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Quotient `self / rhs`; errors if `rhs` is zero.
    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        Ok(self * &rhs.inv()?)
    }

    /// Evaluates at a point where the denominator does not vanish.
    pub fn eval(&self, point: &[Cyclotomic]) -> Result<Cyclotomic, PolyError> {
        let d = self.den.eval(point);
        let n = self.num.eval(point);
        let dinv = d.inv().map_err(|_| PolyError::DivisionByZero)?;
        Ok(&n * &dinv)
    }

    /// Reduces by the univariate gcd when at most one variable appears,
    /// then scales so the denominator's leading coefficient is 1.
    fn reduced(mut num: MultiPoly, mut den: MultiPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero(num.vars());
        }
        if let Some(var) = Self::single_active_var(&num, &den) {
            let nc = num.to_univariate(var).expect("single active variable");
            let dc = den.to_univariate(var).expect("single active variable");
            let g = univariate_gcd(&nc, &dc);
            if g.len() > 1 {
                let gp = Self::from_univariate(num.vars(), var, &g);
                num = num.div_exact(&gp);
                den = den.div_exact(&gp);
            }
        }
        let lead = den.leading().expect("nonzero denominator").1.clone();
        if lead != Cyclotomic::one() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    /// The unique variable appearing in either polynomial, if ≤ 1 appears.
    fn single_active_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
        let n = a.vars().len();
        let mut active = None;
        for v in 0..n {
            let used = a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0;
            if used {
                match active {
                    None => active = Some(v),
                    Some(w) if w == v => {}
                    Some(_) => return None,
                }
            }
        }
        // A shared constant pair still reduces: report variable 0 when present.
        active.or(if n > 0 { Some(0) } else { None })
    }

    fn from_univariate(vars: &VarSet, var: usize, coeffs: &[Cyclotomic]) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exp = vec![0u32; vars.len()];
            exp[var] = i as u32;
            p.add_term(exp, c.clone());
        }
        p
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for RatFunc {}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduced(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::reduced(num, &self.den * &rhs.den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant() == Some(Cyclotomic::one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylin::{parse_poly, varset};

    fn rf(num: &str, den: &str) -> RatFunc {
        let vars = varset(&["t"]);
        RatFunc::new(
            parse_poly(num, &vars).unwrap(),
            parse_poly(den, &vars).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn reduces_common_factor() {
        let q = rf("t^2-1", "t^2+2*t+1");
        assert_eq!(q, rf("t-1", "t+1"));
        assert_eq!(q.num().to_string(), rf("t-1", "t+1").num().to_string());
    }

    #[test]
    fn field_operations() {
        let a = rf("1", "t");
        let b = rf("t", "t+1");
        let sum = &a + &b;
        assert_eq!(sum, rf("t^2+t+1", "t^2+t"));
        let prod = &a * &b;
        assert_eq!(prod, rf("1", "t+1"));
        let diff = &sum - &b;
        assert_eq!(diff, a);
        let quot = prod.div(&b).unwrap();
        assert_eq!(quot, a);
        assert!(a.div(&rf("0", "1")).is_err());
    }

    #[test]
    fn inverse_and_eval() {
        let a = rf("t^2+1", "2*t");
        let ainv = a.inv().unwrap();
        let vars = varset(&["t"]);
        assert_eq!(&a * &ainv, RatFunc::one(&vars));
        let two = crate::exactnum::cyc("2");
        assert_eq!(a.eval(&[two]).unwrap(), crate::exactnum::cyc("5/4"));
    }

    #[test]
    fn monic_denominator_normal_form() {
        let q = rf("3*t", "6*t^2+3");
        assert_eq!(q.den().to_string(), "1/2+t^2");
    }
}
