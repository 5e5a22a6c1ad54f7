//! Group-theoretic checks: closure and class data of the order-12 matrix
//! group, scaling characters of the twelve quadric forms, the misprint
//! flag on three of them, the binary tetrahedral group attached to the
//! anticanonical space, and the shortest orbit on each invariant conic.

use super::conics::{conic_geom, omega_exponent, restrict_to_plane, ConicGeom};
use super::{fail, group_err, scalar_matrix, Context, SCENARIO};
use crate::exactnum::Cyclotomic;
use crate::grouprep::{
    character_eigenspace_dim, linear_characters, min_orbit_length_on_p1, monomial_basis,
    semi_invariant_character, sym_power_rep, tensor_rep, MatrixGroup,
};
use crate::polylin::{proportionality, CycMatrix, MultiPoly, Proportional, RatFunc};
use crate::report::CheckReport;
use crate::scenario::{poly, RunOptions, ScenarioError};
use std::collections::BTreeMap;

/// Multiplication table of the enumerated group, as element indices.
pub(super) fn mult_table(group: &MatrixGroup) -> Result<Vec<Vec<usize>>, ScenarioError> {
    let els = group.elements();
    let n = els.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = &els[i] * &els[j];
            table[i][j] = group
                .index_of(&prod)
                .ok_or_else(|| ScenarioError::Data("group is not closed under products".into()))?;
        }
    }
    Ok(table)
}

/// Size of the subgroup generated by the seed indices.
pub(super) fn closure_size(table: &[Vec<usize>], seeds: &[usize]) -> usize {
    let n = table.len();
    let mut inset = vec![false; n];
    for &s in seeds {
        inset[s] = true;
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&i| inset[i]).collect();
        let mut changed = false;
        for &a in &members {
            for &b in &members {
                let p = table[a][b];
                if !inset[p] {
                    inset[p] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return members.len();
        }
    }
}

fn identity_index(group: &MatrixGroup) -> Result<usize, ScenarioError> {
    (0..group.order())
        .find(|&i| group.element_order(i) == 1)
        .ok_or_else(|| ScenarioError::Data("group has no identity element".into()))
}

fn inverses(table: &[Vec<usize>], id_idx: usize) -> Result<Vec<usize>, ScenarioError> {
    (0..table.len())
        .map(|i| {
            (0..table.len())
                .find(|&j| table[i][j] == id_idx)
                .ok_or_else(|| ScenarioError::Data("group element has no inverse".into()))
        })
        .collect()
}

fn conjugacy_class_count(table: &[Vec<usize>], inv: &[usize]) -> usize {
    let n = table.len();
    let mut seen = vec![false; n];
    let mut classes = 0;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        classes += 1;
        for g in 0..n {
            seen[table[table[g][i]][inv[g]]] = true;
        }
    }
    classes
}

fn format_histogram(h: &[(u32, usize)]) -> String {
    h.iter().map(|(o, n)| format!("{o}:{n}")).collect::<Vec<_>>().join(",")
}

pub(super) fn check_group_order(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "group-order";
    const ANCHOR: &str = "order and class data of the symmetry group";
    let g = &ctx.group;
    if !g.is_closed_group() {
        return Ok(fail(ID, ANCHOR, "enumerated matrices do not close under inverses".into()));
    }
    let table = mult_table(g)?;
    let id_idx = identity_index(g)?;
    let inv = inverses(&table, id_idx)?;
    let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
    for i in 0..g.order() {
        *hist.entry(g.element_order(i)).or_insert(0) += 1;
    }
    let hist: Vec<(u32, usize)> = hist.into_iter().collect();
    let classes = conjugacy_class_count(&table, &inv);
    let dims = &ctx.doc.group.irreducible_dims;
    let sum_sq: usize = dims.iter().map(|&d| (d as usize) * (d as usize)).sum();
    if sum_sq != g.order() {
        return Ok(fail(ID, ANCHOR, format!("irreducible dimensions square-sum to {sum_sq}")));
    }
    if dims.len() != classes {
        return Ok(fail(
            ID,
            ANCHOR,
            format!("{} irreducible dimensions against {classes} classes", dims.len()),
        ));
    }
    let linear = linear_characters(g).len();
    let ones = dims.iter().filter(|&&d| d == 1).count();
    // The extra involution normalises the group without joining it.
    let tau = &ctx.tau_sub;
    if tau * tau != CycMatrix::identity(tau.rows()) {
        return Ok(fail(ID, ANCHOR, "external symmetry is not an involution".into()));
    }
    if g.index_of(tau).is_some() {
        return Ok(fail(ID, ANCHOR, "external symmetry already lies in the group".into()));
    }
    let tau_normalizes = g.elements().iter().all(|e| g.index_of(&(&(tau * e) * tau)).is_some());
    let expected = format!(
        "order={};orders={};classes={};linear={ones};tauNormalizes=true",
        ctx.doc.group.order,
        format_histogram(&ctx.doc.group.order_histogram),
        ctx.doc.group.conjugacy_class_count
    );
    let computed = format!(
        "order={};orders={};classes={classes};linear={linear};tauNormalizes={tau_normalizes}",
        g.order(),
        format_histogram(&hist)
    );
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected, computed))
}

pub(super) fn check_characters(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "characters";
    const ANCHOR: &str = "scaling characters of the twelve quadric forms";
    let chars = linear_characters(&ctx.group);
    let mut exps = Vec::new();
    for fd in &ctx.doc.forms {
        let form = ctx.form(&fd.name)?;
        let Some(ch) = semi_invariant_character(form, &ctx.group) else {
            return Ok(fail(ID, ANCHOR, format!("{} is not semi-invariant", fd.name)));
        };
        for j in 1..ctx.group.generators().len() {
            if ch.value_on_generator(j) != &Cyclotomic::one() {
                return Ok(fail(ID, ANCHOR, format!("{} scales under an involution generator", fd.name)));
            }
        }
        let Some(e) = omega_exponent(ch.value_on_generator(0)) else {
            return Ok(fail(ID, ANCHOR, format!("{} scales by a value outside the cube roots", fd.name)));
        };
        exps.push(format!("{}:{e}", fd.name));
    }
    let chi_of = |p: &MultiPoly| {
        semi_invariant_character(p, &ctx.group).and_then(|ch| omega_exponent(ch.value_on_generator(0)))
    };
    let Some(ef) = chi_of(&ctx.f) else {
        return Ok(fail(ID, ANCHOR, "first defining quadric is not semi-invariant".into()));
    };
    let Some(eg) = chi_of(&ctx.g) else {
        return Ok(fail(ID, ANCHOR, "second defining quadric is not semi-invariant".into()));
    };
    let mut pairs = 0;
    for pr in &ctx.doc.tau_pairs {
        let a = ctx.form(&pr[0])?;
        let b = ctx.form(&pr[1])?;
        for (src, dst, la, lb) in [(a, b, &pr[0], &pr[1]), (b, a, &pr[1], &pr[0])] {
            match proportionality(&src.substitute_linear(&ctx.tau_sub), dst) {
                Proportional::Factor(_) => {}
                other => {
                    return Ok(fail(ID, ANCHOR, format!("swap does not carry {la} onto {lb}: {other:?}")));
                }
            }
        }
        pairs += 1;
    }
    let expected_exps: Vec<String> =
        ctx.doc.forms.iter().map(|fd| format!("{}:{}", fd.name, fd.chi)).collect();
    let expected = format!(
        "linear={};{};f:{};g:{};swapPairs={}",
        ctx.doc.group.irreducible_dims.iter().filter(|&&d| d == 1).count(),
        expected_exps.join(","),
        ctx.doc.quadrics.f_chi,
        ctx.doc.quadrics.g_chi,
        ctx.doc.tau_pairs.len()
    );
    let computed = format!("linear={};{};f:{ef};g:{eg};swapPairs={pairs}", chars.len(), exps.join(","));
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected, computed))
}

pub(super) fn check_forms_print_discrepancy(
    ctx: &Context,
    _opts: &RunOptions,
) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "forms-print-discrepancy";
    const ANCHOR: &str = "misprinted quadric forms against their symmetric corrections";
    let plane = ctx.plane(1)?;
    let monos = monomial_basis(ctx.xvars.len(), 2);
    let mut printed_out = Vec::new();
    let mut corrected_out = Vec::new();
    for pf in &ctx.doc.printed_forms {
        let printed = poly(&pf.text, &ctx.xvars)?;
        let corrected = ctx.form(&pf.name)?;
        if printed == *corrected {
            return Ok(fail(ID, ANCHOR, format!("{} shows no discrepancy", pf.name)));
        }
        if semi_invariant_character(&printed, &ctx.group).is_some() {
            return Ok(fail(ID, ANCHOR, format!("printed {} is already semi-invariant", pf.name)));
        }
        if semi_invariant_character(corrected, &ctx.group).is_none() {
            return Ok(fail(ID, ANCHOR, format!("corrected {} is not semi-invariant", pf.name)));
        }
        // The error is not absorbed by the defining pencil.
        let delta = &printed - corrected;
        let rows: Vec<Vec<Cyclotomic>> = [&delta, &ctx.f, &ctx.g]
            .iter()
            .map(|q| monos.iter().map(|e| q.coeff(e)).collect())
            .collect();
        if CycMatrix::from_rows(rows).rank() != 3 {
            return Ok(fail(ID, ANCHOR, format!("printed {} differs by a pencil element", pf.name)));
        }
        // Only the corrected form passes through the first conic.
        if proportionality(&restrict_to_plane(corrected, plane, &ctx.svars), &plane.residual)
            == Proportional::No
        {
            return Ok(fail(ID, ANCHOR, format!("corrected {} misses the first conic", pf.name)));
        }
        if proportionality(&restrict_to_plane(&printed, plane, &ctx.svars), &plane.residual)
            != Proportional::No
        {
            return Ok(fail(ID, ANCHOR, format!("printed {} also cuts the first conic", pf.name)));
        }
        printed_out.push(format!("{}={printed}", pf.name));
        corrected_out.push(format!("{}={corrected}", pf.name));
    }
    if printed_out.is_empty() {
        return Ok(fail(ID, ANCHOR, "no printed variants recorded".into()));
    }
    Ok(CheckReport::flagged(SCENARIO, ID, ANCHOR, printed_out.join("; "), corrected_out.join("; ")))
}

fn sl23_group(ctx: &Context) -> Result<(MatrixGroup, Vec<CycMatrix>), ScenarioError> {
    let s = &ctx.doc.sl23;
    let gens = vec![scalar_matrix(&s.gen_i)?, scalar_matrix(&s.gen_j)?, scalar_matrix(&s.gen_c)?];
    for m in &gens {
        if m.det() != Cyclotomic::one() {
            return Err(ScenarioError::Data("special generator has determinant away from one".into()));
        }
    }
    let group = MatrixGroup::enumerate_default("binary-tetrahedral", gens.clone()).map_err(group_err)?;
    Ok((group, gens))
}

pub(super) fn check_sl23_order(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "sl23-order";
    const ANCHOR: &str = "binary tetrahedral matrix group";
    let s = &ctx.doc.sl23;
    let (group, gens) = sl23_group(ctx)?;
    if !group.is_closed_group() {
        return Ok(fail(ID, ANCHOR, "matrices do not close into a group".into()));
    }
    let id2 = CycMatrix::identity(2);
    let minus_id = {
        let mut m = CycMatrix::identity(2);
        let neg = -&Cyclotomic::one();
        for k in 0..2 {
            m.set(k, k, neg.clone());
        }
        m
    };
    let (i, j, c) = (&gens[0], &gens[1], &gens[2]);
    if i * i != minus_id || j * j != minus_id {
        return Ok(fail(ID, ANCHOR, "quaternion generators do not square to minus one".into()));
    }
    if &(c * c) * c != id2 || *c == id2 {
        return Ok(fail(ID, ANCHOR, "rotation generator does not have order three".into()));
    }
    let table = mult_table(&group)?;
    let tors: Vec<usize> = (0..group.order()).filter(|&k| 4 % group.element_order(k) == 0).collect();
    let closed = tors.iter().all(|&a| tors.iter().all(|&b| tors.contains(&table[a][b])));
    if !closed {
        return Ok(fail(ID, ANCHOR, "elements of order dividing four do not close".into()));
    }
    let linear = linear_characters(&group).len();
    let expected = format!(
        "order={};torsion={};linear={}",
        s.order,
        s.torsion_subgroup_order,
        s.one_dim_multiplicities.len()
    );
    let computed = format!("order={};torsion={};linear={linear}", group.order(), tors.len());
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected, computed))
}

pub(super) fn check_rep_summands(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "rep-summands";
    const ANCHOR: &str = "one-dimensional pieces of the cubic-times-linear action";
    let s = &ctx.doc.sl23;
    let (group, gens) = sl23_group(ctx)?;
    let sym3 = sym_power_rep(&gens, 3);
    if sym3.iter().any(|m| m.rows() != 4) {
        return Ok(fail(ID, ANCHOR, "cubic action is not four-dimensional".into()));
    }
    let rep8 = tensor_rep(&sym3, &gens);
    if rep8.iter().any(|m| m.rows() != 8) {
        return Ok(fail(ID, ANCHOR, "tensor action is not eight-dimensional".into()));
    }
    let chars = linear_characters(&group);
    let Some(triv) = chars.iter().find(|c| c.is_trivial()) else {
        return Ok(fail(ID, ANCHOR, "no trivial character found".into()));
    };
    let triv_dim = character_eigenspace_dim(&group, &rep8, triv).map_err(group_err)?;
    let mut rest: Vec<usize> = chars
        .iter()
        .filter(|c| !c.is_trivial())
        .map(|c| character_eigenspace_dim(&group, &rep8, c).map_err(group_err))
        .collect::<Result<_, _>>()?;
    rest.sort_unstable();
    let mut dims = vec![triv_dim];
    dims.extend(rest);
    let join = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
    let expected = format!("oneDim={};summands={}", join(&s.one_dim_multiplicities), s.summands);
    let computed = format!("oneDim={};summands={}", join(&dims), dims.iter().sum::<usize>());
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected, computed))
}

/// Fractional-linear action on the conic parameter, kept projectively.
struct Moebius {
    a: Cyclotomic,
    b: Cyclotomic,
    c: Cyclotomic,
    d: Cyclotomic,
}

impl Moebius {
    fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Coefficients of the binary quadratic whose roots are the fixed
    /// parameters; identically zero exactly for the identity map.
    fn fixed_form(&self) -> [Cyclotomic; 3] {
        [self.c.clone(), &self.d - &self.a, -&self.b]
    }

    fn apply(&self, t: &(Cyclotomic, Cyclotomic)) -> (Cyclotomic, Cyclotomic) {
        (&(&self.a * &t.0) + &(&self.b * &t.1), &(&self.c * &t.0) + &(&self.d * &t.1))
    }
}

fn sub_cols(m: &CycMatrix, cols: &[usize]) -> CycMatrix {
    CycMatrix::from_rows(
        (0..m.rows())
            .map(|r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
            .collect(),
    )
}

/// The 3x3 action induced on plane coordinates by an ambient symmetry
/// preserving the plane: rows of the basis transform through it exactly.
fn induced_plane_action(basis: &CycMatrix, m: &CycMatrix) -> Result<CycMatrix, ScenarioError> {
    let moved = basis * m;
    let cols = basis.cols();
    let mut pick = None;
    'outer: for i in 0..cols {
        for j in i + 1..cols {
            for k in j + 1..cols {
                if sub_cols(basis, &[i, j, k]).is_invertible() {
                    pick = Some([i, j, k]);
                    break 'outer;
                }
            }
        }
    }
    let Some(cols3) = pick else {
        return Err(ScenarioError::Data("plane basis has rank below three".into()));
    };
    let inv = sub_cols(basis, &cols3)
        .inverse()
        .ok_or_else(|| ScenarioError::Data("plane basis block is singular".into()))?;
    let n = &sub_cols(&moved, &cols3) * &inv;
    if &n * basis != moved {
        return Err(ScenarioError::Data("symmetry does not preserve the plane".into()));
    }
    Ok(n)
}

/// Recover the parameter action of a plane symmetry through the chord
/// construction, then certify it against the moved parametrisation.
fn moebius_of(geom: &ConicGeom, n: &CycMatrix) -> Result<Moebius, ScenarioError> {
    let tvars = &geom.tvars;
    let y: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let mut acc = MultiPoly::zero(tvars);
            for j in 0..3 {
                acc = &acc + &geom.s_param[j].scale(n.get(j, i));
            }
            acc
        })
        .collect();
    let v = &geom.point;
    let m2 = &y[0].scale(&v[2]) - &y[2].scale(&v[0]);
    let m3 = &y[0].scale(&v[1]) - &y[1].scale(&v[0]);
    let frac = RatFunc::new(m2, m3)?;
    if frac.num().degree_in(0).unwrap_or(0) > 1 || frac.den().degree_in(0).unwrap_or(0) > 1 {
        return Err(ScenarioError::Data("parameter action is not fractional-linear".into()));
    }
    let psi = Moebius {
        a: frac.num().coeff(&[1]),
        b: frac.num().coeff(&[0]),
        c: frac.den().coeff(&[1]),
        d: frac.den().coeff(&[0]),
    };
    if (&(&psi.a * &psi.d) - &(&psi.b * &psi.c)).is_zero() {
        return Err(ScenarioError::Data("parameter action is degenerate".into()));
    }
    // Homogenised reparametrisation must reproduce the moved curve.
    let t = MultiPoly::var(tvars, 0);
    let lin = |p: &Cyclotomic, q: &Cyclotomic| &t.scale(p) + &MultiPoly::constant(tvars, q.clone());
    let ab = lin(&psi.a, &psi.b);
    let cd = lin(&psi.c, &psi.d);
    let s_new: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let c0 = geom.s_param[i].coeff(&[0]);
            let c1 = geom.s_param[i].coeff(&[1]);
            let c2 = geom.s_param[i].coeff(&[2]);
            &(&(&cd * &cd).scale(&c0) + &(&ab * &cd).scale(&c1)) + &(&ab * &ab).scale(&c2)
        })
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            if !(&(&s_new[i] * &y[j]) - &(&s_new[j] * &y[i])).is_zero() {
                return Err(ScenarioError::Data("parameter action mismatches the moved conic".into()));
            }
        }
    }
    Ok(psi)
}

fn binary_resultant(f: &[Cyclotomic; 3], g: &[Cyclotomic; 3]) -> Cyclotomic {
    let z = Cyclotomic::zero;
    CycMatrix::from_rows(vec![
        vec![f[0].clone(), f[1].clone(), f[2].clone(), z()],
        vec![z(), f[0].clone(), f[1].clone(), f[2].clone()],
        vec![g[0].clone(), g[1].clone(), g[2].clone(), z()],
        vec![z(), g[0].clone(), g[1].clone(), g[2].clone()],
    ])
    .det()
}

pub(super) fn check_orbit_min_length(ctx: &Context, _opts: &RunOptions) -> Result<CheckReport, ScenarioError> {
    const ID: &str = "orbit-min-length";
    const ANCHOR: &str = "shortest group orbit on the invariant conics";
    let group = &ctx.group;
    let n = group.order();
    let table = mult_table(group)?;
    let id_idx = identity_index(group)?;
    let gen_idx: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| {
            group
                .index_of(g)
                .ok_or_else(|| ScenarioError::Data("generator missing from closure".into()))
        })
        .collect::<Result<_, _>>()?;
    if gen_idx.iter().any(|&k| k == id_idx) {
        return Ok(fail(ID, ANCHOR, "a generator is the identity".into()));
    }
    // Stabiliser sizes come from the subgroup lattice: no subgroup of
    // order six (orbit length two)...
    for a in 0..n {
        for b in a..n {
            if closure_size(&table, &[id_idx, a, b]) == 6 {
                return Ok(fail(ID, ANCHOR, "found a subgroup of order six".into()));
            }
        }
    }
    // ...and no cyclic subgroup of order four, so any order-four subgroup
    // holds every involution, in particular both involution generators.
    if (0..n).any(|i| group.element_order(i) == 4) {
        return Ok(fail(ID, ANCHOR, "found an element of order four".into()));
    }
    let involutions = (0..n).filter(|&i| group.element_order(i) == 2).count();
    if involutions != 3 {
        return Ok(fail(ID, ANCHOR, format!("{involutions} involutions present")));
    }
    for k in [1, 2] {
        if group.element_order(gen_idx[k]) != 2 {
            return Ok(fail(ID, ANCHOR, "later generators are not involutions".into()));
        }
    }
    if gen_idx[1] == gen_idx[2] {
        return Ok(fail(ID, ANCHOR, "involution generators coincide".into()));
    }
    let mut lengths = Vec::new();
    for &pi in &ctx.doc.orbits.plane_indices {
        let geom = conic_geom(ctx, pi, 0)?;
        let plane = ctx.plane(pi)?;
        let mut psis = Vec::with_capacity(n);
        for m in group.elements() {
            let act = induced_plane_action(&plane.basis, m)?;
            match proportionality(&plane.residual.substitute_linear(&act), &plane.residual) {
                Proportional::Factor(_) => {}
                other => return Ok(fail(ID, ANCHOR, format!("conic {pi} not preserved: {other:?}"))),
            }
            psis.push(moebius_of(&geom, &act)?);
        }
        let id_count = psis.iter().filter(|p| p.is_identity()).count();
        if id_count != 1 || !psis[id_idx].is_identity() {
            return Ok(fail(ID, ANCHOR, format!("{id_count} parameter maps act as the identity")));
        }
        // Orbit length one or three would force a common fixed parameter
        // for the generator pairs below; both resultants must be nonzero.
        if binary_resultant(&psis[gen_idx[0]].fixed_form(), &psis[gen_idx[1]].fixed_form()).is_zero() {
            return Ok(fail(ID, ANCHOR, "whole group fixes a parameter value".into()));
        }
        if binary_resultant(&psis[gen_idx[1]].fixed_form(), &psis[gen_idx[2]].fixed_form()).is_zero() {
            return Ok(fail(ID, ANCHOR, "both involutions fix a common parameter value".into()));
        }
        // Length four is achieved: orbit of the base parameter.
        let mut orbit: Vec<(Cyclotomic, Cyclotomic)> = Vec::new();
        for psi in &psis {
            let img = psi.apply(&geom.base_t);
            if img.0.is_zero() && img.1.is_zero() {
                return Ok(fail(ID, ANCHOR, "parameter map collapses the base point".into()));
            }
            if !orbit.iter().any(|p| (&(&p.0 * &img.1) - &(&p.1 * &img.0)).is_zero()) {
                orbit.push(img);
            }
        }
        lengths.push(orbit.len().to_string());
    }
    let want = ctx.doc.orbits.min_length;
    let expected = format!(
        "orbits={};bound={want}",
        vec![want.to_string(); ctx.doc.orbits.plane_indices.len()].join(",")
    );
    let computed = format!("orbits={};bound={}", lengths.join(","), min_orbit_length_on_p1(group));
    Ok(CheckReport::check(SCENARIO, ID, ANCHOR, expected, computed))
}
