//! Scenario data files and the parsers that turn them into objects.
//!
//! Every verification scenario ships its input data as a JSON file
//! bundled into the library at compile time.  Setting the `KSTAB_ASSETS`
//! environment variable to a directory makes the loader read
//! `<dir>/<id>.json` instead, which is how experiments with modified
//! inputs are run without rebuilding.
//!
//! The data files store all mathematical objects as text: rationals and
//! ω-rationals in the polynomial grammar, divisor classes as linear
//! expressions in the ring basis, linear maps as lists of image forms,
//! and ray certificates as interval tables.  This module owns those
//! parsers plus the step-by-step Chow-ring recipes.

use crate::chow::{ChowError, ChowThreefold};
use crate::exactnum::{Cyclotomic, NumError, Rational};
use crate::polylin::{parse_poly, varset, CycMatrix, MultiPoly, PolyError, VarSet};
use crate::report::CheckReport;
use crate::ruled::RuledError;
use crate::zariski::{NegEntry, RayCertificate, RayInterval, ZariskiError};
use serde::Deserialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Identifiers of the scenarios this library can verify.
pub fn scenario_ids() -> &'static [&'static str] {
    &["3-17", "2-16"]
}

/// Anything that can go wrong while loading or running a scenario.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("asset file: {0}")]
    Asset(String),
    #[error("asset data: {0}")]
    Data(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Zariski(#[from] ZariskiError),
    #[error(transparent)]
    Ruled(#[from] RuledError),
}

/// Raw JSON text of a scenario's data file.
pub fn asset_text(id: &str) -> Result<String, ScenarioError> {
    if let Ok(dir) = std::env::var("KSTAB_ASSETS") {
        let path = std::path::Path::new(&dir).join(format!("{id}.json"));
        return std::fs::read_to_string(&path)
            .map_err(|e| ScenarioError::Asset(format!("{}: {e}", path.display())));
    }
    match id {
        "3-17" => Ok(include_str!("../assets/3-17.json").to_string()),
        "2-16" => Ok(include_str!("../assets/2-16.json").to_string()),
        other => Err(ScenarioError::UnknownScenario(other.to_string())),
    }
}

/// Deserialize a scenario document, naming the scenario on error.
pub fn load_doc<T: serde::de::DeserializeOwned>(id: &str) -> Result<T, ScenarioError> {
    let text = asset_text(id)?;
    serde_json::from_str(&text).map_err(|e| ScenarioError::Data(format!("{id}.json: {e}")))
}

/// Parse a constant rational written in the polynomial grammar.
pub fn parse_rational(text: &str) -> Result<Rational, ScenarioError> {
    let c = parse_constant(text)?;
    c.as_rational()
        .cloned()
        .ok_or_else(|| ScenarioError::Data(format!("{text:?} is not rational")))
}

/// Parse a constant element of Q(ω).
pub fn parse_constant(text: &str) -> Result<Cyclotomic, ScenarioError> {
    let vars = varset(&[]);
    let p = parse_poly(text, &vars)?;
    p.as_constant()
        .ok_or_else(|| ScenarioError::Data(format!("{text:?} is not a constant")))
}

pub fn parse_rationals(texts: &[String]) -> Result<Vec<Rational>, ScenarioError> {
    texts.iter().map(|t| parse_rational(t)).collect()
}

/// Coordinates of a divisor class text over the ring's basis.
pub fn class_coords(ring: &ChowThreefold, text: &str) -> Result<Vec<Rational>, ScenarioError> {
    let names: Vec<&str> = ring.basis().iter().map(|s| s.as_str()).collect();
    linear_coords(&varset(&names), text)
}

/// Coordinates of a linear expression over an arbitrary variable list;
/// rejects constants, products, and non-rational coefficients.
pub fn linear_coords(vars: &VarSet, text: &str) -> Result<Vec<Rational>, ScenarioError> {
    let p = parse_poly(text, vars)?;
    let mut coords = vec![Rational::zero(); vars.len()];
    for (exp, c) in p.terms() {
        let idx = single_linear_var(exp)
            .ok_or_else(|| ScenarioError::Data(format!("{text:?} is not linear in the basis")))?;
        let r = c
            .as_rational()
            .ok_or_else(|| ScenarioError::Data(format!("{text:?} has a non-rational coefficient")))?;
        coords[idx] = r.clone();
    }
    Ok(coords)
}

/// The one variable of a degree-1 monomial exponent vector, if that is
/// what it is.
fn single_linear_var(exp: &[u32]) -> Option<usize> {
    let mut idx = None;
    for (i, &e) in exp.iter().enumerate() {
        match (e, idx) {
            (0, _) => {}
            (1, None) => idx = Some(i),
            _ => return None,
        }
    }
    idx
}

/// Matrix of a linear substitution given by its list of image forms:
/// entry (i, j) is the coefficient of variable i in the image of
/// variable j, so applying the matrix to a polynomial with
/// `substitute_linear` performs exactly the stated substitution.
pub fn substitution_matrix(images: &[String], vars: &VarSet) -> Result<CycMatrix, ScenarioError> {
    let n = vars.len();
    if images.len() != n {
        return Err(ScenarioError::Data(format!(
            "substitution lists {} images for {n} variables",
            images.len()
        )));
    }
    let mut rows = vec![vec![Cyclotomic::zero(); n]; n];
    for (j, text) in images.iter().enumerate() {
        let p = parse_poly(text, vars)?;
        for (exp, c) in p.terms() {
            let i = single_linear_var(exp).ok_or_else(|| {
                ScenarioError::Data(format!("substitution image {text:?} is not linear"))
            })?;
            rows[i][j] = c.clone();
        }
    }
    Ok(CycMatrix::from_rows(rows))
}

/// One step of a Chow-ring recipe.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingStep {
    /// Hypersurface of the given multidegree in a product of projective
    /// spaces (basis h1, h2, …).
    ProductHypersurface { dims: Vec<u32>, degrees: Vec<i64> },
    /// Explicit basis, triple intersections, and canonical class.
    Raw {
        basis: Vec<String>,
        entries: Vec<RawEntry>,
        canonical: Vec<String>,
    },
    /// Blow up a smooth curve with the given pairings against the basis.
    BlowupCurve {
        name: String,
        genus: u32,
        pairings: Vec<String>,
        #[serde(rename = "kDotZ")]
        k_dot_z: String,
    },
    /// Register a named test curve by its pairings with the basis.
    AddCurve {
        name: String,
        pairings: Vec<String>,
        genus: u32,
    },
}

/// One triple-intersection entry of a raw ring description.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub idx: [usize; 3],
    pub value: String,
}

/// Run a recipe from the first step to a finished ring.
pub fn build_ring(steps: &[RingStep]) -> Result<ChowThreefold, ScenarioError> {
    let mut ring: Option<ChowThreefold> = None;
    for step in steps {
        ring = Some(match step {
            RingStep::ProductHypersurface { dims, degrees } => {
                if ring.is_some() {
                    return Err(ScenarioError::Data("ring recipe restarts mid-way".into()));
                }
                ChowThreefold::product_hypersurface(dims, degrees)?
            }
            RingStep::Raw { basis, entries, canonical } => {
                if ring.is_some() {
                    return Err(ScenarioError::Data("ring recipe restarts mid-way".into()));
                }
                let names: Vec<&str> = basis.iter().map(|s| s.as_str()).collect();
                let parsed: Vec<((usize, usize, usize), Rational)> = entries
                    .iter()
                    .map(|e| {
                        Ok(((e.idx[0], e.idx[1], e.idx[2]), parse_rational(&e.value)?))
                    })
                    .collect::<Result<_, ScenarioError>>()?;
                ChowThreefold::from_entries(&names, &parsed, parse_rationals(canonical)?)?
            }
            RingStep::BlowupCurve { name, genus, pairings, k_dot_z } => {
                let base = ring
                    .take()
                    .ok_or_else(|| ScenarioError::Data("blowup-curve needs a base ring".into()))?;
                base.blowup_curve(name, *genus, &parse_rationals(pairings)?, &parse_rational(k_dot_z)?)?
            }
            RingStep::AddCurve { name, pairings, genus } => {
                let mut base = ring
                    .take()
                    .ok_or_else(|| ScenarioError::Data("add-curve needs a base ring".into()))?;
                base.add_curve(name, parse_rationals(pairings)?, *genus)?;
                base
            }
        });
    }
    ring.ok_or_else(|| ScenarioError::Data("empty ring recipe".into()))
}

/// Stored form of a ray certificate.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CertificateDoc {
    pub name: String,
    /// Key of the ring this certificate lives on.
    pub ring: String,
    pub l: String,
    pub e: String,
    pub tau: String,
    /// Log discrepancy of the ray's divisor.
    pub a: String,
    pub intervals: Vec<IntervalDoc>,
    #[serde(default)]
    pub test_curves: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDoc {
    pub lo: String,
    pub hi: String,
    pub neg: Vec<NegDoc>,
}

/// Negative-part entry: the class is removed with coefficient c0 + c1·x.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegDoc {
    pub class: String,
    pub c0: String,
    pub c1: String,
}

/// Resolve a certificate document against its ring.
pub fn build_certificate(
    doc: &CertificateDoc,
    ring: &ChowThreefold,
) -> Result<RayCertificate, ScenarioError> {
    let mut intervals = Vec::with_capacity(doc.intervals.len());
    for iv in &doc.intervals {
        let neg = iv
            .neg
            .iter()
            .map(|n| {
                Ok(NegEntry {
                    class: class_coords(ring, &n.class)?,
                    c0: parse_rational(&n.c0)?,
                    c1: parse_rational(&n.c1)?,
                })
            })
            .collect::<Result<Vec<_>, ScenarioError>>()?;
        intervals.push(RayInterval {
            lo: parse_rational(&iv.lo)?,
            hi: parse_rational(&iv.hi)?,
            neg,
        });
    }
    Ok(RayCertificate {
        l: class_coords(ring, &doc.l)?,
        e: class_coords(ring, &doc.e)?,
        tau: parse_rational(&doc.tau)?,
        intervals,
        test_curves: doc.test_curves.clone(),
    })
}

/// Tuning knobs shared by all scenarios.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Blow-up chain exploration depth.
    pub depth: u32,
    /// Sample count for grid spot-checks.
    pub grid: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { depth: 10, grid: 20 }
    }
}

/// Check ids of a scenario, in execution order.
pub fn catalog(scenario: &str) -> Result<Vec<&'static str>, ScenarioError> {
    match scenario {
        "3-17" => Ok(crate::scen317::catalog()),
        "2-16" => Ok(crate::scen216::catalog()),
        other => Err(ScenarioError::UnknownScenario(other.into())),
    }
}

/// Run the selected checks of a scenario.  An empty selection runs all.
pub fn run(
    scenario: &str,
    selected: &BTreeSet<String>,
    opts: &RunOptions,
) -> Result<Vec<CheckReport>, ScenarioError> {
    match scenario {
        "3-17" => crate::scen317::run(selected, opts),
        "2-16" => crate::scen216::run(selected, opts),
        other => Err(ScenarioError::UnknownScenario(other.into())),
    }
}

/// True when a check id passes the selection (empty set = everything).
/// Patterns match literally except that `*` matches any run of characters.
pub fn selects(selected: &BTreeSet<String>, id: &str) -> bool {
    selected.is_empty() || selected.iter().any(|p| glob_match(p, id))
}

fn glob_match(pattern: &str, id: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    if parts.len() == 1 {
        return pattern == id;
    }
    let Some(rest) = id.strip_prefix(parts[0]) else {
        return false;
    };
    let mut rest = rest;
    for part in &parts[1..parts.len() - 1] {
        let Some(pos) = rest.find(part) else {
            return false;
        };
        rest = &rest[pos + part.len()..];
    }
    rest.ends_with(parts[parts.len() - 1])
}

/// Parse a polynomial with errors routed through [`ScenarioError`].
pub fn poly(text: &str, vars: &VarSet) -> Result<MultiPoly, ScenarioError> {
    Ok(parse_poly(text, vars)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{cyc, rat};

    #[test]
    fn rational_and_constant_parsing() {
        assert_eq!(parse_rational("4/9").unwrap(), rat("4/9"));
        assert_eq!(parse_rational("-(2-1/2)").unwrap(), rat("-3/2"));
        assert_eq!(parse_constant("w^2+w").unwrap(), cyc("-1"));
        assert!(parse_rational("w").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn linear_coords_rejects_nonlinear_text() {
        let vars = varset(&["h1", "h2"]);
        assert_eq!(
            linear_coords(&vars, "h1-3*h2").unwrap(),
            vec![rat("1"), rat("-3")]
        );
        assert!(linear_coords(&vars, "h1*h2").is_err());
        assert!(linear_coords(&vars, "h1+1").is_err());
    }

    #[test]
    fn substitution_matrix_matches_manual_application() {
        let vars = varset(&["x0", "x1", "x2"]);
        let images = ["x1", "x2", "x0"].map(String::from);
        let m = substitution_matrix(&images, &vars).unwrap();
        let p = parse_poly("x0^2+2*x1", &vars).unwrap();
        let q = p.substitute_linear(&m);
        assert_eq!(q, parse_poly("x1^2+2*x2", &vars).unwrap());
    }

    #[test]
    fn ring_recipe_round_trip() {
        let steps = vec![
            RingStep::ProductHypersurface { dims: vec![1, 1, 2], degrees: vec![1, 1, 1] },
            RingStep::BlowupCurve {
                name: "e".into(),
                genus: 0,
                pairings: vec!["1".into(), "1".into(), "2".into()],
                k_dot_z: "-6".into(),
            },
            RingStep::AddCurve {
                name: "ellE".into(),
                pairings: vec!["0".into(), "0".into(), "0".into(), "-1".into()],
                genus: 0,
            },
        ];
        let ring = build_ring(&steps).unwrap();
        assert_eq!(ring.basis(), ["h1", "h2", "h3", "e"]);
        assert!(ring.curve("ellE").is_ok());
        assert!(build_ring(&steps[1..]).is_err());
        assert!(build_ring(&[]).is_err());
    }

    #[test]
    fn unknown_scenario_is_reported() {
        assert!(matches!(
            asset_text("9-99"),
            Err(ScenarioError::UnknownScenario(_))
        ));
    }
}
