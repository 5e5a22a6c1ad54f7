//! Numerical intersection rings of smooth threefolds.
//!
//! A ring is a divisor basis, a fully symmetric triple-intersection
//! tensor, the canonical class in that basis, and a ledger of named
//! curves with their pairings against the basis.  Rings are built either
//! from an ample hypersurface in a product of projective spaces
//! (adjunction gives the canonical class) or by blowing up a smooth
//! curve in an existing ring.  Divisor classes may carry formal
//! parameters; triple products are then exact polynomials in those
//! parameters.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactnum::{Cyclotomic, Rational};
use crate::polylin::{MultiPoly, VarSet};

#[derive(Debug, Error)]
pub enum ChowError {
    #[error("factor dimensions {0:?} must sum to 4")]
    DimensionMismatch(Vec<u32>),
    #[error("class has {got} coordinates, ring has {want} basis divisors")]
    BasisMismatch { got: usize, want: usize },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("{0} is not an integer")]
    NonInteger(String),
    #[error("no curve named {0} in the ledger")]
    UnknownCurve(String),
}

/// A named curve class: pairings with every basis divisor, plus genus.
#[derive(Clone, Debug)]
pub struct CurveClass {
    pub pairings: Vec<Rational>,
    pub genus: u32,
}

/// Basis, triple tensor, canonical class and curve ledger of a threefold.
#[derive(Clone, Debug)]
pub struct ChowThreefold {
    basis: Vec<String>,
    tensor: BTreeMap<(usize, usize, usize), Rational>,
    canonical: Vec<Rational>,
    curves: BTreeMap<String, CurveClass>,
}

fn sorted3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut v = [i, j, k];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

impl ChowThreefold {
    /// Ring from explicit tensor entries (missing entries are zero).
    pub fn from_entries(
        basis: &[&str],
        entries: &[((usize, usize, usize), Rational)],
        canonical: Vec<Rational>,
    ) -> Result<Self, ChowError> {
        if canonical.len() != basis.len() {
            return Err(ChowError::BasisMismatch { got: canonical.len(), want: basis.len() });
        }
        let mut tensor = BTreeMap::new();
        for ((i, j, k), v) in entries {
            if *i >= basis.len() || *j >= basis.len() || *k >= basis.len() {
                return Err(ChowError::Inconsistent(format!("index out of range: {i},{j},{k}")));
            }
            let key = sorted3(*i, *j, *k);
            if let Some(old) = tensor.insert(key, v.clone()) {
                if &old != v {
                    return Err(ChowError::Inconsistent(format!(
                        "conflicting tensor entries at {key:?}"
                    )));
                }
            }
        }
        Ok(ChowThreefold {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            tensor,
            canonical,
            curves: BTreeMap::new(),
        })
    }

    /// Smooth threefold cut out by a hypersurface of the given
    /// multidegree in a product of projective spaces.
    pub fn product_hypersurface(factor_dims: &[u32], multidegree: &[i64]) -> Result<Self, ChowError> {
        if factor_dims.iter().sum::<u32>() != 4 || factor_dims.len() != multidegree.len() {
            return Err(ChowError::DimensionMismatch(factor_dims.to_vec()));
        }
        let n = factor_dims.len();
        let basis: Vec<String> = (0..n).map(|i| format!("h{}", i + 1)).collect();
        let mut tensor = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let mut e = vec![0u32; n];
                    e[i] += 1;
                    e[j] += 1;
                    e[k] += 1;
                    // [h_i h_j h_k · Σ d_m h_m] against the point class
                    // Π h_m^{dim_m}: exactly one factor short somewhere.
                    let mut value = Rational::zero();
                    for (m, d) in multidegree.iter().enumerate() {
                        let mut e2 = e.clone();
                        e2[m] += 1;
                        if e2.iter().zip(factor_dims).all(|(a, b)| a == b) {
                            value = &value + &Rational::from_int(*d);
                        }
                    }
                    if !value.is_zero() {
                        tensor.insert((i, j, k), value);
                    }
                }
            }
        }
        let canonical: Vec<Rational> = multidegree
            .iter()
            .zip(factor_dims)
            .map(|(d, dim)| Rational::from_int(d - i64::from(*dim) - 1))
            .collect();
        Ok(ChowThreefold {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            tensor,
            canonical,
            curves: BTreeMap::new(),
        })
    }

    /// Blow up a smooth curve.  Pairings give Z against every current
    /// basis divisor; `k_dot_z` is cross-checked against the canonical
    /// class.  The exceptional divisor is appended under `exc_name`.
    pub fn blowup_curve(
        &self,
        exc_name: &str,
        genus: u32,
        pairings: &[Rational],
        k_dot_z: &Rational,
    ) -> Result<Self, ChowError> {
        if pairings.len() != self.basis.len() {
            return Err(ChowError::BasisMismatch { got: pairings.len(), want: self.basis.len() });
        }
        let from_canonical = self
            .canonical
            .iter()
            .zip(pairings)
            .fold(Rational::zero(), |acc, (c, p)| &acc + &(c * p));
        if &from_canonical != k_dot_z {
            return Err(ChowError::Inconsistent(format!(
                "K·Z given as {k_dot_z} but canonical class pairs to {from_canonical}"
            )));
        }
        if self.basis.iter().any(|b| b == exc_name) {
            return Err(ChowError::Inconsistent(format!("basis already contains {exc_name}")));
        }
        let n = self.basis.len();
        let mut tensor = self.tensor.clone();
        for (i, p) in pairings.iter().enumerate() {
            if !p.is_zero() {
                tensor.insert((i, n, n), -p);
            }
        }
        let e_cube = &Rational::from_int(2 - 2 * i64::from(genus)) + k_dot_z;
        if !e_cube.is_zero() {
            tensor.insert((n, n, n), e_cube);
        }
        let mut basis = self.basis.clone();
        basis.push(exc_name.to_string());
        let mut canonical = self.canonical.clone();
        canonical.push(Rational::one());
        Ok(ChowThreefold { basis, tensor, canonical, curves: BTreeMap::new() })
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn canonical_coords(&self) -> &[Rational] {
        &self.canonical
    }

    pub fn tensor_entry(&self, i: usize, j: usize, k: usize) -> Rational {
        self.tensor.get(&sorted3(i, j, k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Record a named curve with pairings against the current basis.
    pub fn add_curve(&mut self, name: &str, pairings: Vec<Rational>, genus: u32) -> Result<(), ChowError> {
        if pairings.len() != self.basis.len() {
            return Err(ChowError::BasisMismatch { got: pairings.len(), want: self.basis.len() });
        }
        self.curves.insert(name.to_string(), CurveClass { pairings, genus });
        Ok(())
    }

    pub fn curve(&self, name: &str) -> Result<&CurveClass, ChowError> {
        self.curves.get(name).ok_or_else(|| ChowError::UnknownCurve(name.to_string()))
    }

    pub fn curve_names(&self) -> impl Iterator<Item = &str> {
        self.curves.keys().map(|s| s.as_str())
    }

    /// Trilinear expansion of A·B·C against the tensor; exact in any
    /// formal parameters carried by the class coordinates.
    pub fn triple(&self, a: &DivClass, b: &DivClass, c: &DivClass) -> Result<MultiPoly, ChowError> {
        let n = self.basis.len();
        for cls in [a, b, c] {
            if cls.coords.len() != n {
                return Err(ChowError::BasisMismatch { got: cls.coords.len(), want: n });
            }
        }
        let vars = a.coords[0].vars();
        let mut acc = MultiPoly::zero(vars);
        for (&(i, j, k), t) in &self.tensor {
            // Sum A_σ(i) B_σ(j) C_σ(k) over distinct index placements.
            let mut placements: Vec<(usize, usize, usize)> = vec![
                (i, j, k),
                (i, k, j),
                (j, i, k),
                (j, k, i),
                (k, i, j),
                (k, j, i),
            ];
            placements.sort_unstable();
            placements.dedup();
            let mut sum = MultiPoly::zero(vars);
            for (x, y, z) in placements {
                sum = &sum + &(&(&a.coords[x] * &b.coords[y]) * &c.coords[z]);
            }
            acc = &acc + &sum.scale(&Cyclotomic::from_rational(t.clone()));
        }
        Ok(acc)
    }

    /// Pair a divisor class with a ledger curve.
    pub fn curve_pairing(&self, curve_name: &str, class: &DivClass) -> Result<MultiPoly, ChowError> {
        let curve = self.curve(curve_name)?;
        if class.coords.len() != self.basis.len() {
            return Err(ChowError::BasisMismatch {
                got: class.coords.len(),
                want: self.basis.len(),
            });
        }
        let vars = class.coords[0].vars();
        let mut acc = MultiPoly::zero(vars);
        for (coord, p) in class.coords.iter().zip(&curve.pairings) {
            acc = &acc + &coord.scale_rational(p);
        }
        Ok(acc)
    }

    /// The anticanonical class, constant over the given parameter set.
    pub fn anticanonical(&self, vars: &VarSet) -> DivClass {
        DivClass {
            coords: self.canonical.iter().map(|c| MultiPoly::from_rational(vars, -c)).collect(),
        }
    }
}

/// A divisor class: one coordinate per basis divisor, each an exact
/// polynomial in formal parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DivClass {
    pub coords: Vec<MultiPoly>,
}

impl DivClass {
    pub fn from_polys(coords: Vec<MultiPoly>) -> Self {
        DivClass { coords }
    }

    pub fn from_rationals(vars: &VarSet, coords: &[Rational]) -> Self {
        DivClass { coords: coords.iter().map(|c| MultiPoly::from_rational(vars, c.clone())).collect() }
    }

    pub fn zero(vars: &VarSet, n: usize) -> Self {
        DivClass { coords: vec![MultiPoly::zero(vars); n] }
    }

    pub fn add(&self, other: &DivClass) -> DivClass {
        DivClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &DivClass) -> DivClass {
        DivClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: &MultiPoly) -> DivClass {
        DivClass { coords: self.coords.iter().map(|c| c * factor).collect() }
    }
}

/// Log discrepancy of the exceptional divisor of a weighted blow-up of
/// the intersection curve of two divisors: Σ wᵢ·A(Dᵢ).
pub fn weighted_log_discrepancy(wa: u32, wb: u32, aa: &Rational, ab: &Rational) -> Rational {
    &(&Rational::from_int(i64::from(wa)) * aa) + &(&Rational::from_int(i64::from(wb)) * ab)
}

/// h⁰(−K) of a smooth threefold with −K nef and big: (−K)³/2 + 3.
pub fn riemann_roch_anticanonical(minus_k_cube: &Rational) -> Result<i64, ChowError> {
    let value = &(minus_k_cube / &Rational::from_int(2)) + &Rational::from_int(3);
    match value.to_integer() {
        Some(n) => Ok(i64::try_from(&n).map_err(|_| ChowError::NonInteger(value.to_string()))?),
        None => Err(ChowError::NonInteger(value.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::polylin::{parse_poly, varset};

    fn rats(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| Rational::from_int(v)).collect()
    }

    fn no_params() -> VarSet {
        varset(&[])
    }

    fn class(ring: &ChowThreefold, coords: &[i64]) -> DivClass {
        assert_eq!(coords.len(), ring.basis().len());
        DivClass::from_rationals(&no_params(), &rats(coords))
    }

    /// Degree-(1,1,1) divisor in P¹×P¹×P².
    fn flag_ring() -> ChowThreefold {
        ChowThreefold::product_hypersurface(&[1, 1, 2], &[1, 1, 1]).unwrap()
    }

    /// Quartic-del-Pezzo-style base ring: one generator, H³ = 4, K = −2H.
    fn quartic_ring() -> ChowThreefold {
        ChowThreefold::from_entries(&["H"], &[((0, 0, 0), rat("4"))], vec![rat("-2")]).unwrap()
    }

    /// Truncated-polynomial oracle for hypersurface rings: expand the
    /// class product in Z[h₁..h_n], kill powers above the factor
    /// dimensions, read the top coefficient times the multidegree cut.
    fn hypersurface_triple_oracle(
        dims: &[u32],
        multidegree: &[i64],
        a: &[i64],
        b: &[i64],
        c: &[i64],
    ) -> Rational {
        let names: Vec<String> = (0..dims.len()).map(|i| format!("h{i}")).collect();
        let vars = varset(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let lin = |coords: &[i64]| {
            let mut p = MultiPoly::zero(&vars);
            for (i, &v) in coords.iter().enumerate() {
                let mut e = vec![0u32; dims.len()];
                e[i] = 1;
                p = &p + &MultiPoly::monomial(&vars, e, Cyclotomic::from_int(v));
            }
            p
        };
        let product = &(&(&lin(a) * &lin(b)) * &lin(c)) * &lin(multidegree);
        let mut total = Rational::zero();
        for (e, coeff) in product.terms() {
            if e.iter().zip(dims).all(|(x, d)| x == d) {
                total = &total + coeff.as_rational().unwrap();
            }
        }
        total
    }

    #[test]
    fn flag_ring_anticanonical_cube_is_36() {
        let ring = flag_ring();
        assert_eq!(ring.canonical_coords(), &rats(&[-1, -1, -2])[..]);
        let mk = ring.anticanonical(&no_params());
        let cube = ring.triple(&mk, &mk, &mk).unwrap();
        assert_eq!(cube.as_constant(), Some(Cyclotomic::from_int(36)));
        let oracle = hypersurface_triple_oracle(
            &[1, 1, 2],
            &[1, 1, 1],
            &[1, 1, 2],
            &[1, 1, 2],
            &[1, 1, 2],
        );
        assert_eq!(oracle, rat("36"));
    }

    #[test]
    fn bidegree_one_one_divisor_in_p2_x_p2() {
        let ring = ChowThreefold::product_hypersurface(&[2, 2], &[1, 1]).unwrap();
        let mk = ring.anticanonical(&no_params());
        let cube = ring.triple(&mk, &mk, &mk).unwrap();
        assert_eq!(cube.as_constant(), Some(Cyclotomic::from_int(48)));
        let oracle =
            hypersurface_triple_oracle(&[2, 2], &[1, 1], &[2, 2], &[2, 2], &[2, 2]);
        assert_eq!(oracle, rat("48"));
    }

    #[test]
    fn square_of_a_line_factor_vanishes() {
        let ring = flag_ring();
        let h1 = class(&ring, &[1, 0, 0]);
        let any = class(&ring, &[3, -1, 7]);
        assert!(ring.triple(&h1, &h1, &any).unwrap().is_zero());
    }

    #[test]
    fn random_triples_match_the_truncation_oracle() {
        let dims = [1, 1, 2];
        let md = [1, 1, 1];
        let ring = ChowThreefold::product_hypersurface(&dims, &md).unwrap();
        let samples: [[i64; 3]; 4] = [[1, 0, 2], [2, -1, 1], [0, 3, 1], [-1, -1, 4]];
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    let got = ring
                        .triple(&class(&ring, a), &class(&ring, b), &class(&ring, c))
                        .unwrap();
                    let want = hypersurface_triple_oracle(&dims, &md, a, b, c);
                    assert_eq!(got.as_constant().unwrap().as_rational(), Some(&want));
                }
            }
        }
    }

    #[test]
    fn conic_blowup_of_the_quartic_ring() {
        let ring = quartic_ring();
        let up = ring.blowup_curve("E", 0, &rats(&[2]), &rat("-4")).unwrap();
        assert_eq!(up.tensor_entry(1, 1, 1), rat("-2"));
        assert_eq!(up.canonical_coords(), &rats(&[-2, 1])[..]);
        let mk = up.anticanonical(&no_params());
        let cube = up.triple(&mk, &mk, &mk).unwrap();
        assert_eq!(cube.as_constant(), Some(Cyclotomic::from_int(22)));
    }

    #[test]
    fn second_and_third_blowups_track_the_chain() {
        let x1 = quartic_ring().blowup_curve("E", 0, &rats(&[2]), &rat("-4")).unwrap();
        // Z meets H twice and misses E.
        let v = x1.blowup_curve("F", 0, &rats(&[2, 0]), &rat("-4")).unwrap();
        assert_eq!(v.tensor_entry(2, 2, 2), rat("-2"));
        let mkv = v.anticanonical(&no_params());
        assert_eq!(v.triple(&mkv, &mkv, &mkv).unwrap().as_constant(), Some(Cyclotomic::from_int(12)));
        let y = v.blowup_curve("R", 0, &rats(&[2, 0, 0]), &rat("-4")).unwrap();
        let mky = y.anticanonical(&no_params());
        assert_eq!(y.triple(&mky, &mky, &mky).unwrap().as_constant(), Some(Cyclotomic::from_int(2)));
    }

    #[test]
    fn blowup_with_negative_pairing_gives_steeper_cube() {
        let x1 = quartic_ring().blowup_curve("E", 0, &rats(&[2]), &rat("-4")).unwrap();
        let v = x1.blowup_curve("F", 0, &rats(&[2, -2]), &rat("-6")).unwrap();
        assert_eq!(v.tensor_entry(2, 2, 2), rat("-4"));
    }

    #[test]
    fn inconsistent_k_dot_z_is_rejected() {
        let ring = quartic_ring();
        let err = ring.blowup_curve("E", 0, &rats(&[2]), &rat("-3")).unwrap_err();
        assert!(matches!(err, ChowError::Inconsistent(_)));
    }

    #[test]
    fn parametric_triple_in_two_blowup_multiplicities() {
        let x1 = quartic_ring().blowup_curve("E", 0, &rats(&[2]), &rat("-4")).unwrap();
        let v = x1.blowup_curve("F", 0, &rats(&[2, 0]), &rat("-4")).unwrap();
        let y = v.blowup_curve("R", 0, &rats(&[2, 0, 0]), &rat("-4")).unwrap();
        let params = varset(&["m", "mt"]);
        let mk = y.anticanonical(&params);
        let mut d_hat = DivClass::from_rationals(&params, &rats(&[2, -1, 0, 0]));
        d_hat.coords[2] = -&parse_poly("m", &params).unwrap();
        d_hat.coords[3] = -&parse_poly("mt", &params).unwrap();
        let got = y.triple(&mk, &mk, &d_hat).unwrap();
        let want = parse_poly("14-6*m-6*mt", &params).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn projection_formula_on_a_blowup() {
        let base = flag_ring();
        let up = base.blowup_curve("E", 0, &rats(&[1, 1, 2]), &rat("-6")).unwrap();
        let samples: [[i64; 3]; 3] = [[1, 0, 2], [2, -1, 1], [0, 3, 1]];
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    let down = base
                        .triple(&class(&base, a), &class(&base, b), &class(&base, c))
                        .unwrap();
                    let lift = |v: &[i64; 3]| class(&up, &[v[0], v[1], v[2], 0]);
                    let uptriple = up.triple(&lift(a), &lift(b), &lift(c)).unwrap();
                    assert_eq!(down, uptriple);
                }
            }
        }
    }

    #[test]
    fn weighted_discrepancies_match_the_two_families()  {
        assert_eq!(weighted_log_discrepancy(1, 1, &rat("1"), &rat("1")), rat("2"));
        // Weights (b, a) against log discrepancies (2, 1): a + 2b.
        assert_eq!(weighted_log_discrepancy(3, 5, &rat("2"), &rat("1")), rat("11"));
        // Weights (b, a) against log discrepancies (2, 3): 3a + 2b.
        assert_eq!(weighted_log_discrepancy(3, 5, &rat("2"), &rat("3")), rat("21"));
    }

    #[test]
    fn anticanonical_sections_by_riemann_roch() {
        assert_eq!(riemann_roch_anticanonical(&rat("12")).unwrap(), 9);
        assert_eq!(riemann_roch_anticanonical(&rat("22")).unwrap(), 14);
        assert_eq!(riemann_roch_anticanonical(&rat("2")).unwrap(), 4);
        assert!(riemann_roch_anticanonical(&rat("3")).is_err());
    }

    #[test]
    fn dimension_precondition_is_enforced() {
        assert!(ChowThreefold::product_hypersurface(&[2, 1], &[1, 1]).is_err());
        assert!(ChowThreefold::product_hypersurface(&[1, 1, 2], &[1, 1]).is_err());
    }
}
