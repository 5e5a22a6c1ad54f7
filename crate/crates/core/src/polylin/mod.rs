//! Sparse multivariate polynomials over Q(ω) and exact linear algebra.
//!
//! A [`MultiPoly`] is a map from exponent vectors to nonzero coefficients
//! over a fixed, ordered variable list.  The representation is sparse and
//! deterministic (BTreeMap), so printing is stable across runs.
//!
//! Submodules add dense matrices over Q(ω) ([`matrix`]), Sylvester
//! resultants, univariate gcd and the plane-curve smoothness elimination
//! ([`elim`]), and the text-form parser ([`parse`]).

mod elim;
mod matrix;
mod parse;
mod ratfunc;

pub use elim::{
    derivative, plane_quartic_smooth_by_elimination, poly_det, poly_matrix_rank, resultant,
    ternary_forms_have_no_common_zero, univariate_coeffs, univariate_gcd, ElimVerdict,
};
pub use matrix::CycMatrix;
pub use parse::parse_poly;
pub use ratfunc::RatFunc;

use crate::exactnum::{Cyclotomic, Rational};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

/// Shared, ordered variable list for a polynomial ring.
pub type VarSet = Arc<Vec<String>>;

/// Build a variable set from string literals.
pub fn varset(names: &[&str]) -> VarSet {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable {0:?}")]
    UnknownVar(String),
    #[error("parse error in polynomial text: {0}")]
    Parse(String),
    #[error("polynomial is not univariate in {0:?}")]
    NotUnivariate(String),
    #[error("coefficient involves ω where a rational was required")]
    NotRational,
    #[error("expected a polynomial {0} here")]
    Shape(&'static str),
    #[error("resultant requires positive degree in the eliminated variable")]
    ResultantDegree,
    #[error("matrix dimensions mismatch: {0}")]
    Dims(String),
    #[error("division by a zero polynomial")]
    DivisionByZero,
}

/// Sparse multivariate polynomial over Q(ω).
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Vec<u32>, Cyclotomic>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: Cyclotomic) -> Self {
        let mut p = MultiPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn from_rational(vars: &VarSet, r: Rational) -> Self {
        MultiPoly::constant(vars, Cyclotomic::from_rational(r))
    }

    pub fn from_int(vars: &VarSet, n: i64) -> Self {
        MultiPoly::constant(vars, Cyclotomic::from_int(n))
    }

    /// The variable with the given index, as a polynomial.
    pub fn var(vars: &VarSet, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = MultiPoly::zero(vars);
        p.add_term(e, Cyclotomic::one());
        p
    }

    pub fn monomial(vars: &VarSet, expts: Vec<u32>, c: Cyclotomic) -> Self {
        assert_eq!(expts.len(), vars.len(), "exponent vector length mismatch");
        let mut p = MultiPoly::zero(vars);
        p.add_term(expts, c);
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Cyclotomic)> {
        self.terms.iter()
    }

    /// Adds `c` to the coefficient at `expts`, dropping the term if the sum
    /// is zero (the map never stores zero coefficients).
    pub fn add_term(&mut self, expts: Vec<u32>, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(expts) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, expts: &[u32]) -> Cyclotomic {
        self.terms.get(expts).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Cyclotomic {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// The value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.terms.keys().all(|e| e.iter().all(|&x| x == 0)) {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&Cyclotomic::from_rational(r.clone()))
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variable sets: {:?} vs {:?}",
            self.vars, other.vars
        );
    }

    /// Substitute each variable by the corresponding image polynomial.
    /// All images must share one variable set; `images.len()` must equal
    /// the number of variables here.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len(), "one image per variable required");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| Arc::new(Vec::new()));
        for img in images {
            assert_eq!(img.vars, target, "images over different variable sets");
        }
        // Cache powers of each image as they are needed.
        let mut powers: Vec<Vec<MultiPoly>> =
            images.iter().map(|p| vec![MultiPoly::from_int(&target, 1), p.clone()]).collect();
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &ex) in e.iter().enumerate() {
                if ex == 0 {
                    continue;
                }
                while powers[i].len() <= ex as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][ex as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Substitute variables by linear forms: variable `j` maps to the form
    /// with coefficient column `j` of `m`, i.e. `x_j ↦ Σ_i m[i][j]·x_i`.
    /// Composition satisfies `sub(sub(p, M), N) = sub(p, N·M)`.
    pub fn substitute_linear(&self, m: &CycMatrix) -> MultiPoly {
        assert_eq!(m.rows(), self.vars.len(), "matrix rows must match variable count");
        assert_eq!(m.cols(), self.vars.len(), "substitution matrix must be square");
        let images: Vec<MultiPoly> = (0..self.vars.len())
            .map(|j| {
                let mut img = MultiPoly::zero(&self.vars);
                for i in 0..self.vars.len() {
                    let mut e = vec![0; self.vars.len()];
                    e[i] = 1;
                    img.add_term(e, m.get(i, j).clone());
                }
                img
            })
            .collect();
        self.compose(&images)
    }

    /// Pull back along a linear parametrisation of a subspace: `param` has
    /// one row per old variable and one column per new variable (columns
    /// are the images of the new basis vectors), and the old variable `i`
    /// is replaced by `Σ_j param[i][j]·u_j` over the new variable set.
    pub fn restrict_to_subspace(&self, param: &CycMatrix, new_vars: &VarSet) -> MultiPoly {
        assert_eq!(param.rows(), self.vars.len(), "one row per current variable required");
        assert_eq!(param.cols(), new_vars.len(), "one column per new variable required");
        let images: Vec<MultiPoly> = (0..self.vars.len())
            .map(|i| {
                let mut img = MultiPoly::zero(new_vars);
                for j in 0..new_vars.len() {
                    let mut e = vec![0; new_vars.len()];
                    e[j] = 1;
                    img.add_term(e, param.get(i, j).clone());
                }
                img
            })
            .collect();
        self.compose(&images)
    }

    /// Evaluate at a point (one scalar per variable).
    pub fn eval(&self, point: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(point.len(), self.vars.len(), "one value per variable required");
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &ex) in e.iter().enumerate() {
                if ex > 0 {
                    term = &term * &point[i].pow(ex);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Replace a single variable by a polynomial over the same variable set.
    pub fn substitute_var(&self, var: usize, image: &MultiPoly) -> MultiPoly {
        self.check_vars(image);
        let mut images: Vec<MultiPoly> =
            (0..self.vars.len()).map(|i| MultiPoly::var(&self.vars, i)).collect();
        images[var] = image.clone();
        self.compose(&images)
    }

    /// Coefficients with respect to one variable: entry `k` is the
    /// coefficient of `var^k` (a polynomial with that exponent zeroed).
    /// Returns an empty vector for the zero polynomial.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![MultiPoly::zero(&self.vars); deg as usize + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Exact division: panics unless `self` is a polynomial multiple of `d`.
    /// Used by the fraction-free determinant, where divisibility is
    /// guaranteed by construction.
    pub fn div_exact(&self, d: &MultiPoly) -> MultiPoly {
        self.check_vars(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        let (de, dc) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            let qe: Vec<u32> = re
                .iter()
                .zip(&de)
                .map(|(&a, &b)| a.checked_sub(b).expect("exact division failed (monomial)"))
                .collect();
            let qc = &rc * &dc.inv().expect("zero leading coefficient");
            let t = MultiPoly::monomial(&self.vars, qe, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        quot
    }

    /// The univariate coefficient list over Q(ω) if the polynomial only
    /// involves `var`; ascending degree, at least one entry.
    pub fn to_univariate(&self, var: usize) -> Result<Vec<Cyclotomic>, PolyError> {
        for e in self.terms.keys() {
            for (i, &ex) in e.iter().enumerate() {
                if i != var && ex > 0 {
                    return Err(PolyError::NotUnivariate(self.vars[var].clone()));
                }
            }
        }
        let deg = self.degree_in(var).unwrap_or(0);
        let mut out = vec![Cyclotomic::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            out[e[var] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Rational univariate coefficients (ascending), rejecting any ω part.
    pub fn to_univariate_rational(&self, var: usize) -> Result<Vec<Rational>, PolyError> {
        self.to_univariate(var)?
            .into_iter()
            .map(|c| c.as_rational().cloned().ok_or(PolyError::NotRational))
            .collect()
    }

    /// Largest exponent vector (the lex-leading term), if nonzero.
    pub fn leading(&self) -> Option<(&Vec<u32>, &Cyclotomic)> {
        self.terms.iter().next_back()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(&a, &b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c);
        }
        out
    }
}

macro_rules! poly_owned_ops {
    ($($trait:ident~$method:ident),*) => {$(
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

poly_owned_ops!(Add~add, Sub~sub, Mul~mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let has_vars = e.iter().any(|&x| x > 0);
            // A coefficient prints with a leading '-' when both components
            // are non-positive; otherwise it joins with '+'.
            let neg_lead = (c.rational_coeff().is_negative() || c.rational_coeff().is_zero())
                && (c.omega_coeff().is_negative() || c.omega_coeff().is_zero());
            let (sign, mag) = if neg_lead { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", sign)?;
            }
            first = false;
            let coeff_text = mag.to_coeff_text();
            let is_unit = coeff_text == "1";
            if !has_vars {
                write!(f, "{}", coeff_text)?;
            } else {
                let mut lead = true;
                if !is_unit {
                    write!(f, "{}", coeff_text)?;
                    lead = false;
                }
                for (i, &ex) in e.iter().enumerate() {
                    if ex == 0 {
                        continue;
                    }
                    if !lead {
                        write!(f, "*")?;
                    }
                    lead = false;
                    write!(f, "{}", self.vars[i])?;
                    if ex > 1 {
                        write!(f, "^{}", ex)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Outcome of the proportionality test `p = c·q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proportional {
    /// Both polynomials vanish.
    BothZero,
    /// `p` vanishes but `q` does not (so `c = 0` works).
    ZeroLeft,
    /// A unique nonzero scalar `c` with `p = c·q`.
    Factor(Cyclotomic),
    /// Not proportional (including `q = 0 ≠ p`).
    No,
}

/// Decide whether `p = c·q` for a scalar c ∈ Q(ω).
pub fn proportionality(p: &MultiPoly, q: &MultiPoly) -> Proportional {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Proportional::BothZero,
        (true, false) => return Proportional::ZeroLeft,
        (false, true) => return Proportional::No,
        _ => {}
    }
    if p.terms.len() != q.terms.len() {
        return Proportional::No;
    }
    let (e0, qc0) = q.leading().unwrap();
    let pc0 = p.coeff(e0);
    if pc0.is_zero() {
        return Proportional::No;
    }
    let c = &pc0 / qc0;
    for (e, qc) in q.terms() {
        if p.coeff(e) != &c * qc {
            return Proportional::No;
        }
    }
    Proportional::Factor(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyc;

    fn xyz() -> VarSet {
        varset(&["x", "y", "z"])
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &xyz()).unwrap()
    }

    #[test]
    fn arithmetic_and_zero_cleanup() {
        let a = p("x^2+2*x*y+y^2");
        let b = p("x+y");
        assert_eq!(&b * &b, a);
        assert_eq!(&a - &a, MultiPoly::zero(&xyz()));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn compose_is_substitution() {
        let f = p("x^2-y");
        let images = vec![p("y+z"), p("z^2")];
        let g = f.compose(&[images[0].clone(), images[1].clone(), p("z")]);
        assert_eq!(g, p("y^2+2*y*z+z^2-z^2")); // (y+z)² − z²
    }

    #[test]
    fn substitution_composes_contravariantly() {
        // sub(sub(p, M), N) = sub(p, N·M) with columns as variable images.
        let vars = xyz();
        let m = CycMatrix::from_text(&[["0", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]]);
        let n = CycMatrix::from_text(&[["1", "1", "0"], ["0", "1", "0"], ["0", "w", "1"]]);
        let f = parse_poly("x^2*y-3*z^3+w*x*y*z", &vars).unwrap();
        let lhs = f.substitute_linear(&m).substitute_linear(&n);
        let rhs = f.substitute_linear(&(&n * &m));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_pulls_back_along_columns() {
        // Restrict x²+y²+z² to the line (u, 2u, ωu).
        let new = varset(&["u"]);
        let param = CycMatrix::from_text_dims(3, 1, &["1", "2", "w"]);
        let f = p("x^2+y^2+z^2");
        let r = f.restrict_to_subspace(&param, &new);
        // 1 + 4 + ω² = 5 + ω² = 4 − ω.
        assert_eq!(r, parse_poly("(4-w)*u^2", &new).unwrap());
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = p("x^2-y^2");
        let b = p("x-y");
        assert_eq!(a.div_exact(&b), p("x+y"));
    }

    #[test]
    fn proportionality_cases() {
        let f = p("2*x+2*y");
        let g = p("x+y");
        assert_eq!(proportionality(&f, &g), Proportional::Factor(cyc("2")));
        assert_eq!(proportionality(&p("0"), &g), Proportional::ZeroLeft);
        assert_eq!(proportionality(&p("0"), &p("0")), Proportional::BothZero);
        assert_eq!(proportionality(&f, &p("x-y")), Proportional::No);
        assert_eq!(proportionality(&f, &p("0")), Proportional::No);
        let h = p("w*x+w*y");
        assert_eq!(proportionality(&h, &g), Proportional::Factor(cyc("w")));
    }

    #[test]
    fn univariate_extraction() {
        let vars = varset(&["x"]);
        let f = parse_poly("36-18*x^2+4*x^3", &vars).unwrap();
        let coeffs = f.to_univariate_rational(0).unwrap();
        let expect: Vec<Rational> =
            ["36", "0", "-18", "4"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(coeffs, expect);
    }
}
