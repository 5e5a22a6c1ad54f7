//! Branch quartics of the four conic-bundle projections: each special
//! plane is projected away from, the fibre conics are written over the
//! image plane, and the locus of degenerate fibres is recovered as a
//! bordered determinant and matched against the recorded quartic.

use super::{fail, scalar_matrix, Context, SCENARIO};
use crate::exactnum::Cyclotomic;
use crate::polylin::{
    derivative, plane_quartic_smooth_by_elimination, poly_det, proportionality,
    ternary_forms_have_no_common_zero, varset, ElimVerdict, MultiPoly, Proportional, VarSet,
};
use crate::report::CheckReport;
use crate::scenario::{poly, RunOptions, ScenarioError};

fn image_varset(ctx: &Context) -> VarSet {
    let names: Vec<&str> = ctx.doc.discriminants.image_vars.iter().map(|s| s.as_str()).collect();
    varset(&names)
}

/// Every term must carry the fibre scale variable.
fn divisible_by_s(p: &MultiPoly) -> bool {
    p.terms().all(|(e, _)| e[0] >= 1)
}

/// Components of a form that is linear in the fibre block `(s, u0, u1, u2)`
/// (variables `0..4`), as polynomials in the image coordinates.
fn fibre_components(p: &MultiPoly) -> Result<[MultiPoly; 4], ScenarioError> {
    let vars = p.vars();
    let mut out = [
        MultiPoly::zero(vars),
        MultiPoly::zero(vars),
        MultiPoly::zero(vars),
        MultiPoly::zero(vars),
    ];
    for (exp, c) in p.terms() {
        let hits: Vec<usize> = (0..4).filter(|&i| exp[i] > 0).collect();
        let degree: u32 = hits.iter().map(|&i| exp[i]).sum();
        let [i] = hits.as_slice() else {
            return Err(ScenarioError::Data(format!("fibre-linear form has a term of degree {degree}")));
        };
        if degree != 1 {
            return Err(ScenarioError::Data(format!("fibre-linear form has a term of degree {degree}")));
        }
        let mut e = exp.clone();
        e[*i] = 0;
        out[*i].add_term(e, c.clone());
    }
    Ok(out)
}

/// Doubled Gram matrix in the fibre block, entries in the image ring.
fn fibre_gram(p: &MultiPoly) -> Result<Vec<Vec<MultiPoly>>, ScenarioError> {
    let vars = p.vars();
    let mut h = vec![vec![MultiPoly::zero(vars); 4]; 4];
    for (exp, c) in p.terms() {
        let hits: Vec<(usize, u32)> = (0..4).filter(|&i| exp[i] > 0).map(|i| (i, exp[i])).collect();
        let degree: u32 = hits.iter().map(|&(_, e)| e).sum();
        if degree != 2 {
            return Err(ScenarioError::Data(format!("fibre form has a term of degree {degree}")));
        }
        let mut a_exp = exp.clone();
        for i in 0..4 {
            a_exp[i] = 0;
        }
        match hits.as_slice() {
            [(i, 2)] => h[*i][*i].add_term(a_exp, c + c),
            [(i, 1), (j, 1)] => {
                h[*i][*j].add_term(a_exp.clone(), c.clone());
                h[*j][*i].add_term(a_exp, c.clone());
            }
            _ => unreachable!("degree two in the fibre block"),
        }
    }
    Ok(h)
}

fn adjugate4(h: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let neg = -&Cyclotomic::one();
    (0..4)
        .map(|al| {
            (0..4)
                .map(|be| {
                    let minor: Vec<Vec<MultiPoly>> = (0..4)
                        .filter(|&r| r != al)
                        .map(|r| {
                            (0..4).filter(|&c| c != be).map(|c| h[r][c].clone()).collect()
                        })
                        .collect();
                    let d = poly_det(minor);
                    if (al + be) % 2 == 1 {
                        d.scale(&neg)
                    } else {
                        d
                    }
                })
                .collect()
        })
        .collect()
}

/// Discriminant quartic of the conic bundle projected away from the given
/// plane, in the image coordinates.
fn branch_quartic(ctx: &Context, index: usize) -> Result<MultiPoly, ScenarioError> {
    let chart = ctx.chart(index)?;
    let plane = ctx.plane(index)?;
    let section = scalar_matrix(&chart.section_basis)?;
    let mut names: Vec<&str> = vec!["s", "u0", "u1", "u2"];
    for v in &ctx.doc.discriminants.image_vars {
        names.push(v.as_str());
    }
    let vars7 = varset(&names);
    // Ambient point of the fibre chart: the section spans the image plane,
    // the projected plane fills out the fibre.
    let images: Vec<MultiPoly> = (0..6)
        .map(|j| {
            let mut acc = MultiPoly::zero(&vars7);
            for k in 0..3 {
                let mut se = vec![0u32; 7];
                se[0] = 1;
                se[4 + k] = 1;
                acc.add_term(se, section.get(k, j).clone());
                let mut ue = vec![0u32; 7];
                ue[1 + k] = 1;
                acc.add_term(ue, plane.basis.get(k, j).clone());
            }
            acc
        })
        .collect();
    let big_f = ctx.f.compose(&images);
    let big_g = ctx.g.compose(&images);
    let f_div = divisible_by_s(&big_f);
    if f_div == divisible_by_s(&big_g) {
        return Err(ScenarioError::Data("exactly one quadric must vanish on the projected plane".into()));
    }
    if f_div != plane.split_is_f {
        return Err(ScenarioError::Data("the quadric vanishing on the plane does not match its split".into()));
    }
    let (split_q, other_q) = if f_div { (&big_f, &big_g) } else { (&big_g, &big_f) };
    let s_var = MultiPoly::var(&vars7, 0);
    let ell = split_q.div_exact(&s_var);
    if &(&ell * &s_var) - split_q != MultiPoly::zero(&vars7) {
        return Err(ScenarioError::Data("split quadric is not divisible by the fibre scale".into()));
    }
    // The fibre over the plane itself is the fixed residual conic.
    let mut at_s_zero = MultiPoly::zero(&ctx.svars);
    for (exp, c) in other_q.terms() {
        if exp[0] > 0 {
            continue;
        }
        if exp[4..].iter().any(|&e| e > 0) {
            return Err(ScenarioError::Data("central fibre depends on the image coordinates".into()));
        }
        at_s_zero.add_term(vec![exp[1], exp[2], exp[3]], c.clone());
    }
    match proportionality(&at_s_zero, &plane.residual) {
        Proportional::Factor(_) => {}
        other => {
            return Err(ScenarioError::Data(format!("central fibre is not the stored conic: {other:?}")));
        }
    }
    // Bordered determinant of the fibre quadric against the linear cut.
    let components = fibre_components(&ell)?;
    let gram = fibre_gram(other_q)?;
    let adj = adjugate4(&gram);
    let mut bordered = MultiPoly::zero(&vars7);
    for al in 0..4 {
        for be in 0..4 {
            bordered = &bordered + &(&(&components[al] * &adj[al][be]) * &components[be]);
        }
    }
    // The result lives purely in the image ring, as a quartic.
    let avars = image_varset(ctx);
    let mut quartic = MultiPoly::zero(&avars);
    for (exp, c) in bordered.terms() {
        if exp[..4].iter().any(|&e| e > 0) {
            return Err(ScenarioError::Data("bordered determinant keeps fibre variables".into()));
        }
        let a_exp: Vec<u32> = exp[4..].to_vec();
        if a_exp.iter().sum::<u32>() != 4 {
            return Err(ScenarioError::Data("bordered determinant is not an image quartic".into()));
        }
        quartic.add_term(a_exp, c.clone());
    }
    if quartic.is_zero() {
        return Err(ScenarioError::Data("bordered determinant vanishes identically".into()));
    }
    Ok(quartic)
}

fn discriminant_check(
    ctx: &Context,
    id: &'static str,
    anchor: &'static str,
    index: usize,
) -> Result<CheckReport, ScenarioError> {
    let chart = ctx.chart(index)?;
    let Some(text) = &chart.printed_quartic else {
        return Ok(fail(id, anchor, format!("chart {index} records no quartic")));
    };
    let avars = image_varset(ctx);
    let printed = poly(text, &avars)?;
    let quartic = branch_quartic(ctx, index)?;
    let factor = match proportionality(&quartic, &printed) {
        Proportional::Factor(c) => c,
        other => {
            return Ok(fail(id, anchor, format!("computed quartic is {quartic}, relation {other:?}")));
        }
    };
    let normalized = quartic.scale(&(&Cyclotomic::one() / &factor));
    let smooth = match plane_quartic_smooth_by_elimination(&normalized, [0, 1, 2])? {
        ElimVerdict::CertifiedSmooth => true,
        ElimVerdict::Inconclusive { .. } => {
            let px = derivative(&normalized, 0);
            let py = derivative(&normalized, 1);
            let pz = derivative(&normalized, 2);
            ternary_forms_have_no_common_zero([&px, &py, &pz], [0, 1, 2])?
        }
    };
    if !smooth {
        return Ok(fail(id, anchor, "branch quartic is singular".into()));
    }
    Ok(CheckReport::check(SCENARIO, id, anchor, printed, normalized))
}

pub(super) fn check_discriminant_1(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    discriminant_check(ctx, "discriminant-1", "branch quartic of the first projection", 1)
}

pub(super) fn check_discriminant_3(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    discriminant_check(ctx, "discriminant-3", "branch quartic of the third projection", 3)
}

pub(super) fn check_tau_transport(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "tau-transport";
    const ANCHOR: &str = "external involution carrying projections onto each other";
    let avars = image_varset(ctx);
    let mut expected_parts = Vec::new();
    let mut computed_parts = Vec::new();
    for chart in &ctx.doc.discriminants.charts {
        let Some(src) = chart.matches_index else {
            continue;
        };
        expected_parts.push(format!("chart{}~chart{src}", chart.index));
        let source = ctx.chart(src)?;
        // The involution carries the source plane onto this chart's plane.
        let plane_here = ctx.plane(chart.index)?;
        let moved = &ctx.plane(src)?.basis * &ctx.tau_sub;
        if plane_here.basis.vstack(&moved)?.rank() != 3 {
            return Ok(fail(ID, ANCHOR, format!("involution misses plane {}", chart.index)));
        }
        // The section bases were chosen as exact images of each other.
        let sec_here = scalar_matrix(&chart.section_basis)?;
        let sec_src = scalar_matrix(&source.section_basis)?;
        if &sec_src * &ctx.tau_sub != sec_here {
            return Ok(fail(ID, ANCHOR, format!("section basis of chart {} is not transported", chart.index)));
        }
        let Some(text) = &source.printed_quartic else {
            return Ok(fail(ID, ANCHOR, format!("chart {src} records no quartic")));
        };
        let printed = poly(text, &avars)?;
        let quartic = branch_quartic(ctx, chart.index)?;
        match proportionality(&quartic, &printed) {
            Proportional::Factor(_) => {}
            other => {
                return Ok(fail(
                    ID,
                    ANCHOR,
                    format!("quartic of chart {} is not the source quartic: {other:?}", chart.index),
                ));
            }
        }
        computed_parts.push(format!("chart{}~chart{src}", chart.index));
    }
    if expected_parts.is_empty() {
        return Ok(fail(ID, ANCHOR, "no transported charts recorded".into()));
    }
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected_parts.join(","), computed_parts.join(",")))
}
