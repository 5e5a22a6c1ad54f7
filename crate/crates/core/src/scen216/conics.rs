//! The pencil of planes sweeping conics on the threefold: generic
//! restrictions of both defining quadrics, the four parameter values
//! whose planes cut the threefold in a conic, exact rational
//! parametrisations of those conics, and the linear relations tying the
//! semi-invariant forms to the defining quadrics.

use super::localgeom::gram;
use super::{fail, Context, Plane, SCENARIO};
use crate::exactnum::Cyclotomic;
use crate::grouprep::{monomial_basis, semi_invariant_character};
use crate::polylin::{proportionality, varset, CycMatrix, MultiPoly, Proportional, RatFunc, VarSet};
use crate::report::CheckReport;
use crate::scenario::{parse_constant, poly, RunOptions, ScenarioError};

/// A conic cut on the threefold by one of the special planes, with a
/// rational point and the quadratic parametrisation through it.
pub(super) struct ConicGeom {
    pub plane_index: usize,
    /// Doubled Gram matrix of the conic in plane coordinates.
    pub gram3: Vec<Vec<Cyclotomic>>,
    /// The rational point the parametrisation is based at.
    pub point: Vec<Cyclotomic>,
    /// Quadratic parametrisation in plane coordinates.
    pub s_param: Vec<MultiPoly>,
    /// The parametrisation pushed to ambient coordinates, as polynomials.
    pub p6_poly: Vec<MultiPoly>,
    /// The same ambient parametrisation as rational functions.
    pub p6: Vec<RatFunc>,
    /// Parameter of the tangent ray at the rational point, projectively.
    pub base_t: (Cyclotomic, Cyclotomic),
    pub tvars: VarSet,
}

/// Search the candidate scalars for a point on the conic, in candidate
/// order, skipping the first `skip` hits; the leading coordinate must be
/// nonzero so the parametrisation below stays primitive.
fn rational_point(ctx: &Context, q: &MultiPoly, skip: usize) -> Result<Vec<Cyclotomic>, ScenarioError> {
    let cands: Result<Vec<Cyclotomic>, ScenarioError> =
        ctx.doc.conics.point_candidates.iter().map(|t| parse_constant(t)).collect();
    let cands = cands?;
    let mut found = 0;
    for c0 in &cands {
        if c0.is_zero() {
            continue;
        }
        for c1 in &cands {
            for c2 in &cands {
                let pt = vec![c0.clone(), c1.clone(), c2.clone()];
                if q.eval(&pt).is_zero() {
                    if found == skip {
                        return Ok(pt);
                    }
                    found += 1;
                }
            }
        }
    }
    Err(ScenarioError::Data("no rational point on the conic among the candidates".into()))
}

/// Restrict an ambient form to a plane, in the plane coordinates.
pub(super) fn restrict_to_plane(p: &MultiPoly, plane: &Plane, svars: &VarSet) -> MultiPoly {
    p.restrict_to_subspace(&plane.basis.transpose(), svars)
}

pub(super) fn conic_geom(ctx: &Context, plane_index: usize, skip: usize) -> Result<ConicGeom, ScenarioError> {
    let plane = ctx.plane(plane_index)?;
    let q = &plane.residual;
    let h = gram(q)?;
    let v = rational_point(ctx, q, skip)?;
    let tvars = varset(&["t"]);
    let two = Cyclotomic::from_int(2);
    // Chord construction through v: w(t) = (0, 1, t), and
    // s(t) = (wᵀHw)·v − 2(vᵀHw)·w is the second intersection of the
    // chord with the conic.
    let w = [
        MultiPoly::zero(&tvars),
        MultiPoly::from_int(&tvars, 1),
        MultiPoly::var(&tvars, 0),
    ];
    let mut whw = MultiPoly::zero(&tvars);
    let mut vhw = MultiPoly::zero(&tvars);
    for i in 0..3 {
        for j in 0..3 {
            if h[i][j].is_zero() {
                continue;
            }
            whw = &whw + &(&w[i] * &w[j]).scale(&h[i][j]);
            vhw = &vhw + &w[j].scale(&(&v[i] * &h[i][j]));
        }
    }
    let s_param: Vec<MultiPoly> = (0..3)
        .map(|i| &whw.scale(&v[i]) - &(&vhw * &w[i]).scale(&two))
        .collect();
    if q.compose(&s_param).num_terms() != 0 {
        return Err(ScenarioError::Data("parametrisation does not satisfy the conic equation".into()));
    }
    if s_param[0].is_zero() {
        return Err(ScenarioError::Data("parametrisation has a vanishing leading coordinate".into()));
    }
    // Primitivity: the three components share no parameter root.
    let mut gcd = s_param[0].to_univariate(0)?;
    for comp in &s_param[1..] {
        gcd = crate::polylin::univariate_gcd(&gcd, &comp.to_univariate(0)?);
    }
    if gcd.len() != 1 {
        return Err(ScenarioError::Data("parametrisation components share a parameter root".into()));
    }
    let p6_poly: Vec<MultiPoly> = (0..6)
        .map(|j| {
            let mut acc = MultiPoly::zero(&tvars);
            for i in 0..3 {
                acc = &acc + &s_param[i].scale(plane.basis.get(i, j));
            }
            acc
        })
        .collect();
    let p6 = p6_poly.iter().map(|p| RatFunc::from_poly(p.clone())).collect();
    // The tangent ray at v meets the chord line where B(v, w(t)) = 0.
    let hv: Vec<Cyclotomic> = (0..3)
        .map(|i| {
            let mut acc = Cyclotomic::zero();
            for j in 0..3 {
                acc = &acc + &(&h[i][j] * &v[j]);
            }
            acc
        })
        .collect();
    if hv[1].is_zero() && hv[2].is_zero() {
        return Err(ScenarioError::Data("tangent ray at the rational point is degenerate".into()));
    }
    let base_t = (-&hv[1], hv[2].clone());
    Ok(ConicGeom {
        plane_index,
        gram3: h,
        point: v,
        s_param,
        p6_poly,
        p6,
        base_t,
        tvars,
    })
}

/// Exponent of `w` matching a scalar, if the scalar is a power of `w`.
pub(super) fn omega_exponent(c: &Cyclotomic) -> Option<u32> {
    let w = Cyclotomic::omega();
    let mut acc = Cyclotomic::one();
    for k in 0..3 {
        if *c == acc {
            return Some(k);
        }
        acc = &acc * &w;
    }
    None
}

pub(super) fn check_invariant_conics(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "invariant-conics";
    const ANCHOR: &str = "plane pencil cutting conics on the threefold";
    let c = &ctx.doc.conics;
    let names: Vec<&str> = c.param_vars.iter().map(|s| s.as_str()).collect();
    let vars5 = varset(&names);
    if c.param_vars.len() != 5 || c.param_vars[..3] != ["s0", "s1", "s2"] {
        return Ok(fail(ID, ANCHOR, "family parameters are not s0,s1,s2 plus a pencil pair".into()));
    }
    let il = c.param_vars.iter().position(|n| n == "l");
    let im = c.param_vars.iter().position(|n| n == "m");
    let (Some(il), Some(im)) = (il, im) else {
        return Ok(fail(ID, ANCHOR, "parameter variables l, m missing".into()));
    };
    let lv = MultiPoly::var(&vars5, il);
    let mv = MultiPoly::var(&vars5, im);
    // Generic member of the plane family: the first three coordinates are
    // scaled by m, the last three by −l.
    let images: Vec<MultiPoly> = (0..6)
        .map(|k| {
            let s = MultiPoly::var(&vars5, k % 3);
            if k < 3 {
                &mv * &s
            } else {
                &MultiPoly::zero(&vars5) - &(&lv * &s)
            }
        })
        .collect();
    let f_res = ctx.f.compose(&images);
    let g_res = ctx.g.compose(&images);
    if f_res != poly(&c.f_restriction, &vars5)? {
        return Ok(fail(ID, ANCHOR, format!("family restriction of f is {f_res}")));
    }
    if g_res != poly(&c.g_restriction, &vars5)? {
        return Ok(fail(ID, ANCHOR, format!("family restriction of g is {g_res}")));
    }
    let quartic = poly(&c.parameter_quartic, &vars5)?;
    let factors: Result<Vec<MultiPoly>, ScenarioError> =
        c.quartic_factors.iter().map(|t| poly(t, &vars5)).collect();
    let factors = factors?;
    let mut product = MultiPoly::from_int(&vars5, 1);
    for fac in &factors {
        product = &product * fac;
    }
    if product != quartic {
        return Ok(fail(ID, ANCHOR, format!("quartic factors multiply to {product}")));
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if proportionality(&factors[i], &factors[j]) != Proportional::No {
                return Ok(fail(ID, ANCHOR, "parameter quartic has a repeated root".into()));
            }
        }
    }
    // Peel the conic factors off both restrictions.
    let q0_lift = {
        let mut m = MultiPoly::zero(&vars5);
        for k in 0..3u32 {
            let mut e = vec![0u32; 5];
            e[k as usize] = 2;
            m.add_term(e, Cyclotomic::one());
        }
        m
    };
    let factor_f = f_res.div_exact(&q0_lift);
    if &(&factor_f * &q0_lift) - &f_res != MultiPoly::zero(&vars5) {
        return Ok(fail(ID, ANCHOR, "restriction of f does not factor through the round conic".into()));
    }
    let q2_lift = {
        let mut m = MultiPoly::zero(&vars5);
        let w = Cyclotomic::omega();
        let mut coeff = Cyclotomic::one();
        for k in 0..3u32 {
            let mut e = vec![0u32; 5];
            e[k as usize] = 2;
            m.add_term(e, coeff.clone());
            coeff = &coeff * &w;
        }
        m
    };
    let factor_g = g_res.div_exact(&q2_lift);
    if &(&factor_g * &q2_lift) - &g_res != MultiPoly::zero(&vars5) {
        return Ok(fail(ID, ANCHOR, "restriction of g does not factor through the skew conic".into()));
    }
    match proportionality(&(&factor_f * &factor_g), &quartic) {
        Proportional::Factor(_) => {}
        other => {
            return Ok(fail(ID, ANCHOR, format!("parameter factors miss the quartic: {other:?}")));
        }
    }
    // The four special planes.
    if ctx.doc.planes.len() != ctx.doc.expected.plane_count {
        return Ok(fail(ID, ANCHOR, format!("{} planes listed", ctx.doc.planes.len())));
    }
    let mut split_letters = Vec::new();
    let mut observed_gram = 0usize;
    for pd in &ctx.doc.planes {
        let plane = ctx.plane(pd.index)?;
        let pl = parse_constant(&pd.param[0])?;
        let pm = parse_constant(&pd.param[1])?;
        let mut point5 = vec![Cyclotomic::zero(); 5];
        point5[il] = pl.clone();
        point5[im] = pm.clone();
        if !quartic.eval(&point5).is_zero() {
            return Ok(fail(ID, ANCHOR, format!("plane {} parameter misses the quartic", pd.index)));
        }
        let vf = factor_f.eval(&point5);
        let vg = factor_g.eval(&point5);
        let f_splits = vf.is_zero();
        if f_splits == vg.is_zero() {
            return Ok(fail(ID, ANCHOR, format!("plane {} does not split exactly one quadric", pd.index)));
        }
        if f_splits != plane.split_is_f {
            return Ok(fail(ID, ANCHOR, format!("plane {} splits the other quadric", pd.index)));
        }
        split_letters.push(if f_splits { "f" } else { "g" });
        // The recorded basis spans the family plane at this parameter.
        let fam = CycMatrix::from_rows(
            (0..3)
                .map(|k| {
                    let mut row = vec![Cyclotomic::zero(); 6];
                    row[k] = pm.clone();
                    row[3 + k] = -&pl;
                    row
                })
                .collect(),
        );
        let stacked = plane.basis.vstack(&fam)?;
        if stacked.rank() != 3 {
            return Ok(fail(ID, ANCHOR, format!("plane {} basis does not match the family", pd.index)));
        }
        // Split quadric vanishes on the plane; the other cuts the conic.
        let split_poly = if plane.split_is_f { &ctx.f } else { &ctx.g };
        let other_poly = if plane.split_is_f { &ctx.g } else { &ctx.f };
        if !restrict_to_plane(split_poly, plane, &ctx.svars).is_zero() {
            return Ok(fail(ID, ANCHOR, format!("split quadric does not vanish on plane {}", pd.index)));
        }
        match proportionality(&restrict_to_plane(other_poly, plane, &ctx.svars), &plane.residual) {
            Proportional::Factor(_) => {}
            other => {
                return Ok(fail(
                    ID,
                    ANCHOR,
                    format!("plane {} residual mismatch: {other:?}", pd.index),
                ))
            }
        }
        // Symmetry generators preserve the plane.
        for gen in ctx.group.generators() {
            let moved = &plane.basis * gen;
            if plane.basis.vstack(&moved)?.rank() != 3 {
                return Ok(fail(ID, ANCHOR, format!("plane {} is not preserved by the group", pd.index)));
            }
        }
        // The conic has a valid rational parametrisation and full Gram rank.
        let geom = conic_geom(ctx, pd.index, 0)?;
        observed_gram = CycMatrix::from_rows(geom.gram3.clone()).rank();
        if observed_gram != ctx.doc.expected.gram_rank {
            return Ok(fail(
                ID,
                ANCHOR,
                format!("plane {} conic has Gram rank {observed_gram}", pd.index),
            ));
        }
    }
    // The special planes are pairwise disjoint: any two bases span the space.
    let mut disjoint_pairs = 0usize;
    for (i, a) in ctx.doc.planes.iter().enumerate() {
        for b in &ctx.doc.planes[i + 1..] {
            let stacked = ctx.plane(a.index)?.basis.vstack(&ctx.plane(b.index)?.basis)?;
            if stacked.rank() != ctx.doc.expected.pair_rank {
                return Ok(fail(ID, ANCHOR, format!("planes {} and {} meet", a.index, b.index)));
            }
            disjoint_pairs += 1;
        }
    }
    let chi_f = semi_invariant_character(&ctx.f, &ctx.group)
        .and_then(|ch| omega_exponent(ch.value_on_generator(0)));
    let chi_g = semi_invariant_character(&ctx.g, &ctx.group)
        .and_then(|ch| omega_exponent(ch.value_on_generator(0)));
    let expected = format!(
        "planes={};splits=f,f,g,g;chi(f)=w^{};chi(g)=w^{};gram={};disjointPairs={}",
        ctx.doc.expected.plane_count,
        ctx.doc.quadrics.f_chi,
        ctx.doc.quadrics.g_chi,
        ctx.doc.expected.gram_rank,
        ctx.doc.expected.plane_count * (ctx.doc.expected.plane_count - 1) / 2,
    );
    let computed = format!(
        "planes={};splits={};chi(f)={};chi(g)={};gram={};disjointPairs={}",
        split_letters.len(),
        split_letters.join(","),
        chi_f.map_or("none".to_string(), |e| format!("w^{e}")),
        chi_g.map_or("none".to_string(), |e| format!("w^{e}")),
        observed_gram,
        disjoint_pairs,
    );
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected, computed))
}

pub(super) fn check_pencil_relations(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "pencil-relations";
    const ANCHOR: &str = "linear relations among the quadric forms";
    let mut names: Vec<&str> = ctx.doc.forms.iter().map(|fd| fd.name.as_str()).collect();
    names.push("f");
    names.push("g");
    let fvars = varset(&names);
    let mut images: Vec<MultiPoly> = Vec::new();
    for fd in &ctx.doc.forms {
        images.push(ctx.form(&fd.name)?.clone());
    }
    images.push(ctx.f.clone());
    images.push(ctx.g.clone());
    let mut ok = 0;
    for rel in &ctx.doc.pencil_relations {
        let p = poly(&rel.text, &fvars)?;
        if p.num_terms() < 3 {
            return Ok(fail(ID, ANCHOR, format!("relation {} is trivial", rel.name)));
        }
        if !p.compose(&images).is_zero() {
            return Ok(fail(ID, ANCHOR, format!("relation {} does not hold", rel.name)));
        }
        ok += 1;
    }
    // Rank of the 14 quadrics in the space of quadratic forms: the five
    // relations are independent and exhaust the linear dependencies.
    let monos = monomial_basis(ctx.xvars.len(), 2);
    let rows: Vec<Vec<Cyclotomic>> = images
        .iter()
        .map(|q| monos.iter().map(|e| q.coeff(e)).collect())
        .collect();
    let span = CycMatrix::from_rows(rows).rank();
    let expected = format!(
        "relations={};span={}",
        ctx.doc.pencil_relations.len(),
        images.len() - ctx.doc.pencil_relations.len()
    );
    let computed = format!("relations={ok};span={span}");
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected, computed))
}
