//! Base loci and member multiplicities of the three invariant nets of
//! quadrics, including the printed duplicate among the generators of the
//! third net.

use super::conics::{conic_geom, restrict_to_plane};
use super::localgeom::{bilinear, gram, gram_apply, rf_const, rf_derivative, rf_nullspace, rf_rank};
use super::{fail, Context, NetDoc, SCENARIO};
use crate::exactnum::{rat, Cyclotomic};
use crate::grouprep::monomial_basis;
use crate::polylin::{proportionality, varset, CycMatrix, MultiPoly, Proportional, RatFunc};
use crate::report::CheckReport;
use crate::scenario::{poly, RunOptions, ScenarioError};

fn net_by_name<'a>(ctx: &'a Context, name: &str) -> Result<&'a NetDoc, ScenarioError> {
    ctx.doc
        .nets
        .iter()
        .find(|n| n.name == name)
        .ok_or_else(|| ScenarioError::Data(format!("unknown net {name}")))
}

fn net_generators(ctx: &Context, net: &NetDoc) -> Result<Vec<MultiPoly>, ScenarioError> {
    net.generators.iter().map(|t| poly(t, &ctx.xvars)).collect()
}

fn contains_conic(r: Proportional) -> bool {
    matches!(r, Proportional::ZeroLeft | Proportional::Factor(_))
}

fn base_locus_check(
    ctx: &Context,
    id: &'static str,
    anchor: &'static str,
    name: &str,
) -> Result<CheckReport, ScenarioError> {
    let net = net_by_name(ctx, name)?;
    let gens = net_generators(ctx, net)?;
    let monos = monomial_basis(ctx.xvars.len(), 2);
    let rows: Vec<Vec<Cyclotomic>> =
        gens.iter().map(|q| monos.iter().map(|e| q.coeff(e)).collect()).collect();
    if CycMatrix::from_rows(rows).rank() != gens.len() {
        return Ok(fail(id, anchor, "generators are linearly dependent".into()));
    }
    let mut base = Vec::new();
    let mut excluded = Vec::new();
    for pd in &ctx.doc.planes {
        let plane = ctx.plane(pd.index)?;
        let all = gens.iter().all(|q| {
            contains_conic(proportionality(&restrict_to_plane(q, plane, &ctx.svars), &plane.residual))
        });
        if all {
            base.push(pd.index);
        } else {
            excluded.push(pd.index);
        }
    }
    let fmt = |v: &[usize]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    };
    let mut expected = format!("base={};excluded={}", fmt(&net.base_conics), fmt(&net.excluded_conics));
    let mut computed = format!("base={};excluded={}", fmt(&base), fmt(&excluded));
    // A recorded line family sweeps the rest of the base locus.
    if let Some(family) = &net.line_family {
        let lines = match family.as_str() {
            "ell" => &ctx.doc.lines.ell,
            "ellPrime" => &ctx.doc.lines.ell_prime,
            other => return Err(ScenarioError::Data(format!("unknown line family {other}"))),
        };
        let names: Vec<&str> = ctx.doc.lines.vars.iter().map(|s| s.as_str()).collect();
        let lvars = varset(&names);
        let mut count = 0;
        for entry in lines {
            let images: Result<Vec<MultiPoly>, ScenarioError> =
                entry.iter().map(|t| poly(t, &lvars)).collect();
            let images = images?;
            let span = CycMatrix::from_rows(vec![
                images.iter().map(|p| p.coeff(&[1, 0])).collect(),
                images.iter().map(|p| p.coeff(&[0, 1])).collect(),
            ]);
            if span.rank() != 2 {
                return Ok(fail(id, anchor, "family member is not a line".into()));
            }
            for q in [&ctx.f, &ctx.g].into_iter().chain(gens.iter()) {
                if !q.compose(&images).is_zero() {
                    return Ok(fail(id, anchor, "a family line leaves the base locus".into()));
                }
            }
            count += 1;
        }
        expected.push_str(&format!(";lines={}", lines.len()));
        computed.push_str(&format!(";lines={count}"));
    }
    Ok(CheckReport::check(SCENARIO, id, anchor, expected, computed))
}

pub(super) fn check_base_locus_m(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    base_locus_check(ctx, "nets-base-locus-m", "base locus of the first invariant net", "m")
}

pub(super) fn check_base_locus_mprime_1(
    ctx: &Context,
    _opts: &RunOptions,
) -> Result<CheckReport, ScenarioError> {
    base_locus_check(ctx, "nets-base-locus-mprime-1", "base locus of the second invariant net", "mprime1")
}

pub(super) fn check_base_locus_mprime_3(
    ctx: &Context,
    _opts: &RunOptions,
) -> Result<CheckReport, ScenarioError> {
    base_locus_check(ctx, "nets-base-locus-mprime-3", "base locus of the third invariant net", "mprime3")
}

pub(super) fn check_duplicate_mprime_3(
    ctx: &Context,
    _opts: &RunOptions,
) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "nets-duplicate-mprime-3";
    const ANCHOR: &str = "printed generators of the third net repeat an entry";
    let net = net_by_name(ctx, "mprime3")?;
    let Some(printed) = &net.printed_generators else {
        return Ok(fail(ID, ANCHOR, "no printed generators recorded".into()));
    };
    let printed_polys: Result<Vec<MultiPoly>, ScenarioError> =
        printed.iter().map(|t| poly(t, &ctx.xvars)).collect();
    let printed_polys = printed_polys?;
    let gens = net_generators(ctx, net)?;
    if printed_polys.len() != 3 || gens.len() != 2 {
        return Ok(fail(ID, ANCHOR, "unexpected generator counts".into()));
    }
    if printed_polys[1] != printed_polys[2] {
        return Ok(fail(ID, ANCHOR, "printed generators are pairwise distinct".into()));
    }
    if printed_polys[0] != gens[0] || printed_polys[1] != gens[1] {
        return Ok(fail(ID, ANCHOR, "deduplicated generators do not match the working set".into()));
    }
    let monos = monomial_basis(ctx.xvars.len(), 2);
    let rows: Vec<Vec<Cyclotomic>> =
        printed_polys.iter().map(|q| monos.iter().map(|e| q.coeff(e)).collect()).collect();
    if CycMatrix::from_rows(rows).rank() != 2 {
        return Ok(fail(ID, ANCHOR, "printed span does not collapse to a pencil".into()));
    }
    Ok(CheckReport::flagged(
        SCENARIO,
        ID,
        ANCHOR,
        format!("3 printed generators: {}", printed.join("; ")),
        format!("2 independent generators: {}", net.generators.join("; ")),
    ))
}

/// Local intersection multiplicity of two generic net members along a base
/// conic, read off at the generic point of the conic. The stacked gradient
/// rows of the ambient quadrics and the net generators decide the contact:
/// rank 4 means generic members meet transversally (multiplicity 1), rank 2
/// means every member is singular along the conic, and rank 3 means all
/// members share a tangent plane, where the second-order coefficients
/// `-d·H·d/2` in the shared tangent direction `d` tell whether one blow-up
/// separates generic members (multiplicity 2) or not.
fn multiplicity_check(
    ctx: &Context,
    check_id: &'static str,
    anchor: &'static str,
) -> Result<CheckReport, ScenarioError> {
    let target = ctx
        .doc
        .multiplicity_targets
        .iter()
        .find(|t| t.check_id == check_id)
        .ok_or_else(|| ScenarioError::Data(format!("no multiplicity target for {check_id}")))?;
    let net = net_by_name(ctx, &target.net)?;
    if !net.base_conics.contains(&target.conic) {
        return Ok(fail(check_id, anchor, "target conic is not in the base locus".into()));
    }
    let gens = net_generators(ctx, net)?;
    let geom = conic_geom(ctx, target.conic, 0)?;
    let mut grams = vec![gram(&ctx.f)?, gram(&ctx.g)?];
    for q in &gens {
        grams.push(gram(q)?);
    }
    let rows: Vec<Vec<RatFunc>> = grams.iter().map(|h| gram_apply(h, &geom.p6)).collect();
    if rf_rank(rows[..2].to_vec())? != 2 {
        return Ok(fail(check_id, anchor, "ambient quadrics are tangent along the conic".into()));
    }
    let computed = match rf_rank(rows.clone())? {
        4 => "pairMultiplicity=1".to_string(),
        2 => "pairMultiplicity=3plus".to_string(),
        3 => {
            // All member gradients agree modulo the ambient ones; the kernel
            // holds the conic point, its tangent, and the shared direction.
            let kernel = rf_nullspace(&rows)?;
            if kernel.len() != 3 {
                return Ok(fail(
                    check_id,
                    anchor,
                    format!("tangent kernel has dimension {}", kernel.len()),
                ));
            }
            let dp: Result<Vec<RatFunc>, ScenarioError> =
                geom.p6.iter().map(|r| rf_derivative(r, 0)).collect();
            let dp = dp?;
            let mut dir = None;
            for cand in &kernel {
                if rf_rank(vec![geom.p6.clone(), dp.clone(), cand.clone()])? == 3 {
                    dir = Some(cand.clone());
                    break;
                }
            }
            let Some(dir) = dir else {
                return Ok(fail(check_id, anchor, "tangent kernel collapses onto the conic".into()));
            };
            let half = rf_const(&geom.tvars, &Cyclotomic::from_rational(rat("-1/2")));
            let augmented: Vec<Vec<RatFunc>> = grams
                .iter()
                .zip(&rows)
                .map(|(h, row)| {
                    let mut row = row.clone();
                    row.push(&half * &bilinear(h, &dir, &dir));
                    row
                })
                .collect();
            match rf_rank(augmented)? {
                4 => "pairMultiplicity=2".to_string(),
                3 => "pairMultiplicity=3plus".to_string(),
                r => return Ok(fail(check_id, anchor, format!("augmented tangent stack has rank {r}"))),
            }
        }
        r => return Ok(fail(check_id, anchor, format!("gradient stack has rank {r}"))),
    };
    let expected = format!("pairMultiplicity={}", ctx.doc.expected_multiplicity);
    Ok(CheckReport::check(SCENARIO, check_id, anchor, expected, computed))
}

pub(super) fn check_multiplicity_m_1(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    multiplicity_check(ctx, "net-multiplicity-m-1", "first net along its first base conic")
}

pub(super) fn check_multiplicity_mprime_1(
    ctx: &Context,
    _opts: &RunOptions,
) -> Result<CheckReport, ScenarioError> {
    multiplicity_check(ctx, "net-multiplicity-mprime-1", "second net along its first base conic")
}

pub(super) fn check_multiplicity_m_3(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    multiplicity_check(ctx, "net-multiplicity-m-3", "first net along its third base conic")
}

pub(super) fn check_multiplicity_mprime_3(
    ctx: &Context,
    _opts: &RunOptions,
) -> Result<CheckReport, ScenarioError> {
    multiplicity_check(ctx, "net-multiplicity-mprime-3", "third net along its third base conic")
}
