//! Certificate-checked Zariski decompositions along a divisorial ray,
//! exact volume polynomials, S- and β-invariants, and parametric cone
//! positivity.
//!
//! Nothing here searches for decompositions.  A [`RayCertificate`] states
//! the pseudoeffective threshold and, per interval, the negative part
//! with coefficients affine in the ray parameter x; the checker verifies
//! every consequence it can decide from the ring data — interval
//! structure, nonnegative coefficients, volume continuity, monotone
//! decrease, the boundary values vol(0) = (−K)³ and vol(τ) = 0 — and
//! then integrates the interval volumes exactly.

use thiserror::Error;

use crate::chow::{ChowError, ChowThreefold, DivClass};
use crate::exactnum::{Cyclotomic, Rational};
use crate::polylin::{varset, MultiPoly, VarSet};

#[derive(Debug, Error)]
pub enum ZariskiError {
    #[error("certificate invariant violated: {0}")]
    Invariant(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

/// One negative-part summand: a divisor class with coefficient c0 + c1·x.
#[derive(Clone, Debug)]
pub struct NegEntry {
    pub class: Vec<Rational>,
    pub c0: Rational,
    pub c1: Rational,
}

/// One interval [lo, hi] of the decomposition with its negative part.
#[derive(Clone, Debug)]
pub struct RayInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub neg: Vec<NegEntry>,
}

/// A piecewise Zariski decomposition along L − x·E for x ∈ [0, τ].
#[derive(Clone, Debug)]
pub struct RayCertificate {
    pub l: Vec<Rational>,
    pub e: Vec<Rational>,
    pub tau: Rational,
    pub intervals: Vec<RayInterval>,
    /// Ledger curve names used for nefness evidence (optional).
    pub test_curves: Vec<String>,
}

/// S, the log discrepancy A, and β = A − S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SBetaResult {
    pub s: Rational,
    pub a: Rational,
    pub beta: Rational,
}

fn x_vars() -> VarSet {
    varset(&["x"])
}

impl RayCertificate {
    /// Positive part P(x) = L − x·E − Σ (c0+c1·x)·N on one interval,
    /// as a class with coordinates affine in x.
    pub fn positive_part(&self, interval: usize) -> DivClass {
        let vars = x_vars();
        let x = MultiPoly::var(&vars, 0);
        let l = DivClass::from_rationals(&vars, &self.l);
        let e = DivClass::from_rationals(&vars, &self.e);
        let mut p = l.sub(&e.scale(&x));
        for entry in &self.intervals[interval].neg {
            let coeff = &MultiPoly::from_rational(&vars, entry.c0.clone())
                + &x.scale(&Cyclotomic::from_rational(entry.c1.clone()));
            let n = DivClass::from_rationals(&vars, &entry.class);
            p = p.sub(&n.scale(&coeff));
        }
        p
    }

    /// Exact volume polynomial (cube of the positive part) on an interval.
    pub fn volume_polynomial(&self, ring: &ChowThreefold, interval: usize) -> Result<MultiPoly, ZariskiError> {
        let p = self.positive_part(interval);
        let cube = ring.triple(&p, &p, &p)?;
        if cube.total_degree().unwrap_or(0) > 3 {
            return Err(ZariskiError::Invariant(format!(
                "volume on interval {interval} has degree > 3"
            )));
        }
        Ok(cube)
    }

    /// (−K)³ for this certificate's ray (the cube of L).
    pub fn cube_of_l(&self, ring: &ChowThreefold) -> Result<Rational, ZariskiError> {
        let vars = x_vars();
        let l = DivClass::from_rationals(&vars, &self.l);
        let cube = ring.triple(&l, &l, &l)?;
        as_rational(&cube).ok_or_else(|| ZariskiError::Invariant("L³ is not constant".into()))
    }

    /// Check every decidable invariant, naming the first violation.
    pub fn validate(&self, ring: &ChowThreefold) -> Result<(), ZariskiError> {
        if self.intervals.is_empty() {
            if !self.tau.is_zero() {
                return Err(ZariskiError::Invariant("no intervals but τ > 0".into()));
            }
            return Ok(());
        }
        if !self.intervals[0].lo.is_zero() {
            return Err(ZariskiError::Invariant("first interval must start at 0".into()));
        }
        if self.intervals.last().unwrap().hi != self.tau {
            return Err(ZariskiError::Invariant("last interval must end at τ".into()));
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if iv.hi <= iv.lo {
                return Err(ZariskiError::Invariant(format!("interval {i} is empty or reversed")));
            }
            if i + 1 < self.intervals.len() && self.intervals[i + 1].lo != iv.hi {
                return Err(ZariskiError::Invariant(format!(
                    "intervals {i} and {} do not share an endpoint",
                    i + 1
                )));
            }
            for (k, entry) in iv.neg.iter().enumerate() {
                for t in [&iv.lo, &iv.hi] {
                    let value = &entry.c0 + &(&entry.c1 * t);
                    if value.is_negative() {
                        return Err(ZariskiError::Invariant(format!(
                            "negative-part coefficient {k} on interval {i} is {value} at x={t}"
                        )));
                    }
                }
            }
        }
        let vols: Vec<MultiPoly> = self
            .intervals
            .iter()
            .enumerate()
            .map(|(i, _)| self.volume_polynomial(ring, i))
            .collect::<Result<_, _>>()?;
        let cube_l = self.cube_of_l(ring)?;
        if eval_at(&vols[0], &Rational::zero())? != cube_l {
            return Err(ZariskiError::Invariant("vol(0) ≠ L³".into()));
        }
        if !eval_at(vols.last().unwrap(), &self.tau)?.is_zero() {
            return Err(ZariskiError::Invariant("vol(τ) ≠ 0".into()));
        }
        for i in 0..vols.len() - 1 {
            let t = &self.intervals[i].hi;
            if eval_at(&vols[i], t)? != eval_at(&vols[i + 1], t)? {
                return Err(ZariskiError::Invariant(format!(
                    "volume is discontinuous at x={t}"
                )));
            }
        }
        for (i, vol) in vols.iter().enumerate() {
            let coeffs = vol
                .to_univariate_rational(0)
                .map_err(|_| ZariskiError::Invariant("volume not univariate in x".into()))?;
            let deriv: Vec<Rational> = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * &Rational::from_int(d as i64))
                .collect();
            if !poly_nonpositive_on(&deriv, &self.intervals[i].lo, &self.intervals[i].hi) {
                return Err(ZariskiError::Invariant(format!(
                    "volume is not monotone decreasing on interval {i}"
                )));
            }
        }
        Ok(())
    }

    /// S = (1/L³) ∫₀^τ vol(x) dx, exact.
    pub fn s_value(&self, ring: &ChowThreefold) -> Result<Rational, ZariskiError> {
        self.validate(ring)?;
        if self.intervals.is_empty() {
            return Ok(Rational::zero());
        }
        let mut total = Rational::zero();
        for (i, iv) in self.intervals.iter().enumerate() {
            let vol = self.volume_polynomial(ring, i)?;
            total = &total + &integrate(&vol, &iv.lo, &iv.hi)?;
        }
        Ok(&total / &self.cube_of_l(ring)?)
    }

    /// (1/L³) ∫₀^t vol(x) dx for 0 ≤ t ≤ τ.
    pub fn s_partial(&self, ring: &ChowThreefold, t: &Rational) -> Result<Rational, ZariskiError> {
        self.validate(ring)?;
        if t.is_negative() || t > &self.tau {
            return Err(ZariskiError::OutOfRange(format!("t={t} is outside [0, {}]", self.tau)));
        }
        let mut total = Rational::zero();
        for (i, iv) in self.intervals.iter().enumerate() {
            if t <= &iv.lo {
                break;
            }
            let hi = if t < &iv.hi { t } else { &iv.hi };
            let vol = self.volume_polynomial(ring, i)?;
            total = &total + &integrate(&vol, &iv.lo, hi)?;
        }
        Ok(&total / &self.cube_of_l(ring)?)
    }

    /// β = A − S.
    pub fn beta(&self, ring: &ChowThreefold, a: &Rational) -> Result<SBetaResult, ZariskiError> {
        let s = self.s_value(ring)?;
        Ok(SBetaResult { s: s.clone(), a: a.clone(), beta: a - &s })
    }

    /// Pair the positive part with every listed ledger curve on every
    /// interval; the pairings are affine in x, so endpoint checks are
    /// exact.  Supporting evidence for nefness, not a proof.
    pub fn nef_evidence(&self, ring: &ChowThreefold) -> Result<bool, ZariskiError> {
        for (i, iv) in self.intervals.iter().enumerate() {
            let p = self.positive_part(i);
            for name in &self.test_curves {
                let pairing = ring.curve_pairing(name, &p)?;
                let coeffs = pairing
                    .to_univariate_rational(0)
                    .map_err(|_| ZariskiError::Invariant("curve pairing not univariate".into()))?;
                if coeffs.len() > 2 {
                    return Err(ZariskiError::Invariant(format!(
                        "pairing with {name} is not affine in x"
                    )));
                }
                for t in [&iv.lo, &iv.hi] {
                    let mut value = Rational::zero();
                    for (d, c) in coeffs.iter().enumerate() {
                        value = &value + &(c * &t.pow(d as u32));
                    }
                    if value.is_negative() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn as_rational(p: &MultiPoly) -> Option<Rational> {
    p.as_constant().and_then(|c| c.as_rational().cloned())
}

fn eval_at(p: &MultiPoly, t: &Rational) -> Result<Rational, ZariskiError> {
    let coeffs = p
        .to_univariate_rational(0)
        .map_err(|_| ZariskiError::Invariant("polynomial not univariate in x".into()))?;
    let mut value = Rational::zero();
    for (d, c) in coeffs.iter().enumerate() {
        value = &value + &(c * &t.pow(d as u32));
    }
    Ok(value)
}

/// Exact ∫ over [lo, hi] of a polynomial in x.
fn integrate(p: &MultiPoly, lo: &Rational, hi: &Rational) -> Result<Rational, ZariskiError> {
    let coeffs = p
        .to_univariate_rational(0)
        .map_err(|_| ZariskiError::Invariant("integrand not univariate in x".into()))?;
    let mut total = Rational::zero();
    for (d, c) in coeffs.iter().enumerate() {
        let k = d as u32 + 1;
        let term = &(c / &Rational::from_int(i64::from(k)))
            * &(&hi.pow(k) - &lo.pow(k));
        total = &total + &term;
    }
    Ok(total)
}

/// Exact test q(x) ≤ 0 on [lo, hi] for deg q ≤ 2: endpoints, plus the
/// vertex when the parabola opens downward and the vertex is interior.
fn poly_nonpositive_on(coeffs: &[Rational], lo: &Rational, hi: &Rational) -> bool {
    let eval = |t: &Rational| {
        let mut v = Rational::zero();
        for (d, c) in coeffs.iter().enumerate() {
            v = &v + &(c * &t.pow(d as u32));
        }
        v
    };
    if eval(lo).is_positive() || eval(hi).is_positive() {
        return false;
    }
    if coeffs.len() == 3 && coeffs[2].is_negative() {
        let vertex = &(-&coeffs[1]) / &(&Rational::from_int(2) * &coeffs[2]);
        if &vertex > lo && &vertex < hi && eval(&vertex).is_positive() {
            return false;
        }
    }
    true
}

/// Ratio constraint for [`ConeRegion`]: b/a > r (strict) or b/a ≤ r.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioSense {
    AboveStrict,
    AtOrBelow,
}

/// {a ≥ a_min, b ≥ b_min} with an optional ratio constraint on b/a.
#[derive(Clone, Debug)]
pub struct ConeRegion {
    pub a_min: Rational,
    pub b_min: Rational,
    pub ratio: Option<(Rational, RatioSense)>,
}

impl ConeRegion {
    pub fn quadrant() -> Self {
        ConeRegion { a_min: Rational::one(), b_min: Rational::one(), ratio: None }
    }

    pub fn with_ratio(ratio: Rational, sense: RatioSense) -> Self {
        ConeRegion { ratio: Some((ratio, sense)), ..Self::quadrant() }
    }

    fn closure_contains(&self, a: &Rational, b: &Rational) -> bool {
        if a < &self.a_min || b < &self.b_min {
            return false;
        }
        match &self.ratio {
            None => true,
            Some((r, RatioSense::AboveStrict)) => b >= &(r * a),
            Some((r, RatioSense::AtOrBelow)) => b <= &(r * a),
        }
    }

    fn on_strict_boundary(&self, a: &Rational, b: &Rational) -> bool {
        matches!(&self.ratio, Some((r, RatioSense::AboveStrict)) if b == &(r * a))
    }

    /// Vertices of the closure polyhedron.
    fn vertices(&self) -> Vec<(Rational, Rational)> {
        let mut candidates = vec![(self.a_min.clone(), self.b_min.clone())];
        if let Some((r, _)) = &self.ratio {
            candidates.push((self.a_min.clone(), r * &self.a_min));
            if !r.is_zero() {
                candidates.push((&self.b_min / r, self.b_min.clone()));
            }
        }
        candidates.retain(|(a, b)| self.closure_contains(a, b));
        candidates.dedup();
        candidates
    }

    /// Extreme recession directions of the closure.
    fn rays(&self) -> Vec<(Rational, Rational)> {
        match &self.ratio {
            None => vec![
                (Rational::one(), Rational::zero()),
                (Rational::zero(), Rational::one()),
            ],
            Some((r, RatioSense::AboveStrict)) => {
                vec![(Rational::zero(), Rational::one()), (Rational::one(), r.clone())]
            }
            Some((r, RatioSense::AtOrBelow)) => {
                vec![(Rational::one(), Rational::zero()), (Rational::one(), r.clone())]
            }
        }
    }
}

/// c_a·a + c_b·b + c0.
#[derive(Clone, Debug)]
pub struct ConeForm {
    pub ca: Rational,
    pub cb: Rational,
    pub c0: Rational,
}

impl ConeForm {
    pub fn linear(ca: Rational, cb: Rational) -> Self {
        ConeForm { ca, cb, c0: Rational::zero() }
    }

    fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        &(&(&self.ca * a) + &(&self.cb * b)) + &self.c0
    }

    fn homogeneous(&self, da: &Rational, db: &Rational) -> Rational {
        &(&self.ca * da) + &(&self.cb * db)
    }
}

/// Why a [`cone_positive`] decision came out false.
#[derive(Clone, Debug, PartialEq)]
pub enum ConeDecision {
    Positive,
    NotPositive { witness: (Rational, Rational), value: Rational },
}

impl ConeDecision {
    pub fn is_positive(&self) -> bool {
        matches!(self, ConeDecision::Positive)
    }
}

/// Decide form > 0 on the whole region, exactly, from the closure's
/// vertices and extreme recession rays.  A vertex where the form
/// vanishes is allowed only when it lies on a strict boundary (it is
/// then outside the region itself); a ray along which the homogeneous
/// part is negative yields a witness point.
pub fn cone_positive(form: &ConeForm, region: &ConeRegion) -> ConeDecision {
    let vertices = region.vertices();
    for (a, b) in &vertices {
        let value = form.eval(a, b);
        if value.is_negative() || (value.is_zero() && !region.on_strict_boundary(a, b)) {
            return ConeDecision::NotPositive { witness: (a.clone(), b.clone()), value };
        }
    }
    for (da, db) in region.rays() {
        let h = form.homogeneous(&da, &db);
        if h.is_negative() {
            // Walk far enough along the ray to cross zero.
            let (a0, b0) = vertices[0].clone();
            let start = form.eval(&a0, &b0);
            let steps = &(&start / &(-&h)) + &Rational::one();
            let witness = (&a0 + &(&steps * &da), &b0 + &(&steps * &db));
            let value = form.eval(&witness.0, &witness.1);
            return ConeDecision::NotPositive { witness, value };
        }
        if h.is_zero() {
            for (a, b) in &vertices {
                let along_strict = region.on_strict_boundary(a, b)
                    && region.on_strict_boundary(&(a + &da), &(b + &db));
                if form.eval(a, b).is_zero() && !along_strict {
                    return ConeDecision::NotPositive {
                        witness: (a + &da, b + &db),
                        value: Rational::zero(),
                    };
                }
            }
        }
    }
    ConeDecision::Positive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::polylin::parse_poly;

    fn rats(vals: &[&str]) -> Vec<Rational> {
        vals.iter().map(|v| rat(v)).collect()
    }

    /// Degree-(1,1,1) divisor in P¹×P¹×P², basis (h1, h2, hL).
    fn base_ring() -> ChowThreefold {
        ChowThreefold::product_hypersurface(&[1, 1, 2], &[1, 1, 1]).unwrap()
    }

    /// The same ring after blowing up the intersection curve of the two
    /// contracted surfaces (pairings 1, 1, 2 with the basis).
    fn blowup_ring() -> ChowThreefold {
        let mut ring = base_ring()
            .blowup_curve("E", 0, &rats(&["1", "1", "2"]), &rat("-6"))
            .unwrap();
        // Fiber of E over the blown-up curve: pairs −1 with E only.
        ring.add_curve("ellE", rats(&["0", "0", "0", "-1"]), 0).unwrap();
        ring
    }

    fn r_certificate() -> RayCertificate {
        RayCertificate {
            l: rats(&["1", "1", "2"]),
            e: rats(&["1", "1", "0"]),
            tau: rat("1"),
            intervals: vec![RayInterval { lo: rat("0"), hi: rat("1"), neg: vec![] }],
            test_curves: vec![],
        }
    }

    fn e_certificate() -> RayCertificate {
        let e1_tilde = rats(&["1", "-1", "1", "-1"]);
        let e2_tilde = rats(&["-1", "1", "1", "-1"]);
        let r_tilde = rats(&["1", "1", "0", "-1"]);
        RayCertificate {
            l: rats(&["1", "1", "2", "0"]),
            e: rats(&["0", "0", "0", "1"]),
            tau: rat("3"),
            intervals: vec![
                RayInterval { lo: rat("0"), hi: rat("1"), neg: vec![] },
                RayInterval {
                    lo: rat("1"),
                    hi: rat("2"),
                    neg: vec![
                        NegEntry { class: e1_tilde.clone(), c0: rat("-1/2"), c1: rat("1/2") },
                        NegEntry { class: e2_tilde.clone(), c0: rat("-1/2"), c1: rat("1/2") },
                    ],
                },
                RayInterval {
                    lo: rat("2"),
                    hi: rat("3"),
                    neg: vec![
                        NegEntry { class: e1_tilde, c0: rat("-1/2"), c1: rat("1/2") },
                        NegEntry { class: e2_tilde, c0: rat("-1/2"), c1: rat("1/2") },
                        NegEntry { class: r_tilde, c0: rat("-2"), c1: rat("1") },
                    ],
                },
            ],
            test_curves: vec!["ellE".into()],
        }
    }

    #[test]
    fn r_ray_volume_and_s() {
        let ring = base_ring();
        let cert = r_certificate();
        cert.validate(&ring).unwrap();
        let vars = x_vars();
        let vol = cert.volume_polynomial(&ring, 0).unwrap();
        assert_eq!(vol, parse_poly("36-48*x+12*x^2", &vars).unwrap());
        assert_eq!(cert.s_value(&ring).unwrap(), rat("4/9"));
        let result = cert.beta(&ring, &rat("1")).unwrap();
        assert_eq!(result.beta, rat("5/9"));
    }

    #[test]
    fn e_ray_volume_pieces_match() {
        let ring = blowup_ring();
        let cert = e_certificate();
        cert.validate(&ring).unwrap();
        let vars = x_vars();
        assert_eq!(
            cert.volume_polynomial(&ring, 0).unwrap(),
            parse_poly("36-18*x^2+4*x^3", &vars).unwrap()
        );
        assert_eq!(
            cert.volume_polynomial(&ring, 1).unwrap(),
            parse_poly("52-36*x+6*x^2", &vars).unwrap()
        );
        assert_eq!(
            cert.volume_polynomial(&ring, 2).unwrap(),
            parse_poly("108-108*x+36*x^2-4*x^3", &vars).unwrap()
        );
    }

    #[test]
    fn e_ray_s_beta_and_partials() {
        let ring = blowup_ring();
        let cert = e_certificate();
        assert_eq!(cert.s_value(&ring).unwrap(), rat("11/9"));
        let result = cert.beta(&ring, &rat("2")).unwrap();
        assert_eq!(result.beta, rat("7/9"));
        assert_eq!(cert.s_partial(&ring, &rat("0")).unwrap(), rat("0"));
        assert_eq!(cert.s_partial(&ring, &rat("1")).unwrap(), rat("31/36"));
        // Closed form t − t³/6 + t⁴/36 on [0,1], checked at sample points.
        let vars = x_vars();
        let closed = parse_poly("x-1/6*x^3+1/36*x^4", &vars).unwrap();
        for t in ["1/3", "4/9", "1/2", "9/10"] {
            let t = rat(t);
            let want = eval_at(&closed, &t).unwrap();
            assert_eq!(cert.s_partial(&ring, &t).unwrap(), want);
        }
        assert!(cert.s_partial(&ring, &rat("4/9")).unwrap() < rat("5/9"));
        assert!(cert.s_partial(&ring, &rat("4")).is_err());
    }

    #[test]
    fn zero_length_ray_has_zero_s() {
        let ring = base_ring();
        let cert = RayCertificate {
            l: rats(&["1", "1", "2"]),
            e: rats(&["1", "0", "0"]),
            tau: rat("0"),
            intervals: vec![],
            test_curves: vec![],
        };
        assert_eq!(cert.s_value(&ring).unwrap(), rat("0"));
    }

    #[test]
    fn scaling_the_ray_rescales_s() {
        let ring = base_ring();
        let mut cert = r_certificate();
        cert.e = rats(&["1/2", "1/2", "0"]);
        cert.tau = rat("2");
        cert.intervals[0].hi = rat("2");
        assert_eq!(cert.s_value(&ring).unwrap(), rat("8/9"));
    }

    #[test]
    fn nef_evidence_on_the_exceptional_fiber() {
        let ring = blowup_ring();
        let cert = e_certificate();
        assert!(cert.nef_evidence(&ring).unwrap());
        // Sanity: pairings along the pieces are x, 1, 3−x.
        let p1 = cert.positive_part(1);
        let pairing = ring.curve_pairing("ellE", &p1).unwrap();
        assert_eq!(pairing, parse_poly("1", &x_vars()).unwrap());
    }

    #[test]
    fn broken_certificates_are_named() {
        let ring = base_ring();
        let mut gap = r_certificate();
        gap.intervals[0].hi = rat("1/2");
        assert!(matches!(gap.validate(&ring), Err(ZariskiError::Invariant(_))));
        let mut negative = e_certificate();
        negative.intervals[1].neg[0].c0 = rat("-5");
        assert!(matches!(negative.validate(&blowup_ring()), Err(ZariskiError::Invariant(_))));
        let mut wrong_tau = r_certificate();
        wrong_tau.tau = rat("2");
        wrong_tau.intervals[0].hi = rat("2");
        assert!(matches!(wrong_tau.validate(&ring), Err(ZariskiError::Invariant(_))));
    }

    #[test]
    fn quadratic_sign_test_checks_the_vertex() {
        // −(x−1)² + 1/4 is positive near x=1 though ≤ 0 at 0 and 2.
        let coeffs = [rat("-3/4"), rat("2"), rat("-1")];
        assert!(!poly_nonpositive_on(&coeffs, &rat("0"), &rat("2")));
        let down = [rat("0"), rat("0"), rat("-1")];
        assert!(poly_nonpositive_on(&down, &rat("-1"), &rat("1")));
    }

    #[test]
    fn cone_decisions_match_the_three_regions() {
        let above = ConeRegion::with_ratio(rat("2/7"), RatioSense::AboveStrict);
        let form = ConeForm::linear(rat("-2/9"), rat("7/9"));
        assert!(cone_positive(&form, &above).is_positive());

        let below = ConeRegion::with_ratio(rat("2/7"), RatioSense::AtOrBelow);
        let just_b = ConeForm::linear(rat("0"), rat("1"));
        assert!(cone_positive(&just_b, &below).is_positive());

        let quadrant = ConeRegion::quadrant();
        let sum = ConeForm::linear(rat("5/9"), rat("7/9"));
        assert!(cone_positive(&sum, &quadrant).is_positive());
    }

    #[test]
    fn cone_negatives_produce_witnesses() {
        let above = ConeRegion::with_ratio(rat("2/7"), RatioSense::AboveStrict);
        let wrong = ConeForm::linear(rat("2/9"), rat("-7/9"));
        match cone_positive(&wrong, &above) {
            ConeDecision::NotPositive { witness, value } => {
                assert!(value.is_negative() || value.is_zero());
                assert!(above.closure_contains(&witness.0, &witness.1));
            }
            ConeDecision::Positive => panic!("should not be positive"),
        }
        // a − b vanishes at (1,1), an interior vertex of the quadrant.
        let tie = ConeForm::linear(rat("1"), rat("-1"));
        assert!(!cone_positive(&tie, &ConeRegion::quadrant()).is_positive());
        // Witness must land beyond the zero of the form along the ray.
        let ray_neg = ConeForm { ca: rat("1"), cb: rat("-1"), c0: rat("100") };
        match cone_positive(&ray_neg, &ConeRegion::quadrant()) {
            ConeDecision::NotPositive { value, .. } => assert!(!value.is_positive()),
            ConeDecision::Positive => panic!("negative ray direction missed"),
        }
    }
}
