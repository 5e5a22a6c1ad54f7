//! Exact local geometry along a parametrised curve on the intersection of
//! two quadrics: doubled Gram matrices, Gaussian elimination over the
//! rational-function field of the curve parameter, and third-order jet
//! lifts that separate nodal from cuspidal degenerations.

use crate::exactnum::{rat, Cyclotomic};
use crate::polylin::{derivative, MultiPoly, RatFunc, VarSet};
use crate::scenario::ScenarioError;

/// Doubled Gram matrix of a homogeneous quadric: `q(x) = xᵀHx/2`, so the
/// gradient of `q` at `x` is exactly `Hx`.
pub(super) fn gram(q: &MultiPoly) -> Result<Vec<Vec<Cyclotomic>>, ScenarioError> {
    let n = q.vars().len();
    let mut h = vec![vec![Cyclotomic::zero(); n]; n];
    for (exp, c) in q.terms() {
        let support: Vec<usize> = (0..n).filter(|&i| exp[i] > 0).collect();
        match support.as_slice() {
            [i] if exp[*i] == 2 => {
                h[*i][*i] = &h[*i][*i] + &(c + c);
            }
            [i, j] if exp[*i] == 1 && exp[*j] == 1 => {
                h[*i][*j] = &h[*i][*j] + c;
                h[*j][*i] = &h[*j][*i] + c;
            }
            _ => {
                return Err(ScenarioError::Data(format!(
                    "gram matrix requires a homogeneous quadric, got term {exp:?}"
                )))
            }
        }
    }
    Ok(h)
}

/// Constant rational function on the given variable set.
pub(super) fn rf_const(vars: &VarSet, c: &Cyclotomic) -> RatFunc {
    RatFunc::from_poly(MultiPoly::constant(vars, c.clone()))
}

/// Apply a constant Gram matrix to a vector of rational functions.
pub(super) fn gram_apply(h: &[Vec<Cyclotomic>], v: &[RatFunc]) -> Vec<RatFunc> {
    let vars = v[0].vars().clone();
    (0..h.len())
        .map(|i| {
            let mut acc = RatFunc::zero(&vars);
            for (j, vj) in v.iter().enumerate() {
                if !h[i][j].is_zero() {
                    acc = &acc + &(&rf_const(&vars, &h[i][j]) * vj);
                }
            }
            acc
        })
        .collect()
}

pub(super) fn rf_dot(x: &[RatFunc], y: &[RatFunc]) -> RatFunc {
    let vars = x[0].vars().clone();
    let mut acc = RatFunc::zero(&vars);
    for (a, b) in x.iter().zip(y) {
        acc = &acc + &(a * b);
    }
    acc
}

/// Symmetric bilinear form `xᵀHy` of a doubled Gram matrix.
pub(super) fn bilinear(h: &[Vec<Cyclotomic>], x: &[RatFunc], y: &[RatFunc]) -> RatFunc {
    rf_dot(x, &gram_apply(h, y))
}

/// Rank over the function field, by exact Gaussian elimination.
pub(super) fn rf_rank(mut m: Vec<Vec<RatFunc>>) -> Result<usize, ScenarioError> {
    if m.is_empty() {
        return Ok(0);
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv()?;
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] * &inv;
            for k in c..cols {
                let sub = &factor * &m[rank][k];
                m[r][k] = &m[r][k] - &sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Ok(rank)
}

/// Basis of the right nullspace over the function field.
pub(super) fn rf_nullspace(m: &[Vec<RatFunc>]) -> Result<Vec<Vec<RatFunc>>, ScenarioError> {
    let rows = m.len();
    let cols = m[0].len();
    let vars = m[0][0].vars().clone();
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv()?;
        for k in c..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..cols {
                    let sub = &f * &a[r][k];
                    a[i][k] = &a[i][k] - &sub;
                }
            }
        }
        pivots.push(c);
        if pivots.len() == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for fc in 0..cols {
        if pivots.contains(&fc) {
            continue;
        }
        let mut v = vec![RatFunc::zero(&vars); cols];
        v[fc] = RatFunc::one(&vars);
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[ri][fc];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Derivative of a rational function in the given variable.
pub(super) fn rf_derivative(r: &RatFunc, var: usize) -> Result<RatFunc, ScenarioError> {
    let num = &(&derivative(r.num(), var) * r.den()) - &(r.num() * &derivative(r.den(), var));
    Ok(RatFunc::new(num, r.den() * r.den())?)
}

fn rf_half(x: &RatFunc) -> RatFunc {
    &rf_const(x.vars(), &Cyclotomic::from_rational(rat("1/2"))) * x
}

/// Solve `αa + βb = r1`, `αc + βd = r2` by Cramer's rule.
fn solve_two(
    a: &RatFunc,
    b: &RatFunc,
    c: &RatFunc,
    d: &RatFunc,
    r1: &RatFunc,
    r2: &RatFunc,
) -> Result<(RatFunc, RatFunc), ScenarioError> {
    let det = &(a * d) - &(b * c);
    let inv = det.inv()?;
    let alpha = &(&(r1 * d) - &(r2 * b)) * &inv;
    let beta = &(&(a * r2) - &(c * r1)) * &inv;
    Ok((alpha, beta))
}

/// Behaviour of a quadric `h` along a curve that lies on `{f = g = 0}`:
/// the stacked gradient rank says whether the surface `h` cuts out is
/// smooth along the curve, and for a singular cut the transverse Hessian
/// rank separates a nondegenerate from a degenerate quadratic profile.
#[derive(Debug)]
pub(super) struct CurveProfile {
    pub gradient_rank: usize,
    /// Rank of the transverse Hessian on the tangent space of the
    /// two-quadric intersection; set when `gradient_rank == 2`.
    pub hessian_rank: Option<usize>,
    /// Whether the third-order contact coefficient along a transverse arc
    /// in the degenerate direction is nonzero; set when the Hessian rank
    /// is 1.
    pub cubic_nonzero: Option<bool>,
}

pub(super) fn curve_profile(
    hf: &[Vec<Cyclotomic>],
    hg: &[Vec<Cyclotomic>],
    hh: &[Vec<Cyclotomic>],
    p: &[RatFunc],
    tvar: usize,
) -> Result<CurveProfile, ScenarioError> {
    let n = p.len();
    let vars = p[0].vars().clone();
    let gf = gram_apply(hf, p);
    let gg = gram_apply(hg, p);
    let gh = gram_apply(hh, p);
    let grank = rf_rank(vec![gf.clone(), gg.clone(), gh.clone()])?;
    if grank == 3 {
        return Ok(CurveProfile { gradient_rank: 3, hessian_rank: None, cubic_nonzero: None });
    }
    if grank != 2 || rf_rank(vec![gf.clone(), gg.clone()])? != 2 {
        return Err(ScenarioError::Data(format!(
            "degenerate gradient configuration along the curve (rank {grank})"
        )));
    }
    let mut pivot = None;
    'outer: for j1 in 0..n {
        for j2 in j1 + 1..n {
            let det = &(&gf[j1] * &gg[j2]) - &(&gf[j2] * &gg[j1]);
            if !det.is_zero() {
                pivot = Some((j1, j2, det));
                break 'outer;
            }
        }
    }
    let (j1, j2, big_d) = pivot.ok_or_else(|| ScenarioError::Data("no invertible 2x2 gradient minor".into()))?;
    let (a, b) = (gf[j1].clone(), gf[j2].clone());
    let (c, d) = (gg[j1].clone(), gg[j2].clone());
    let a_pr = &(&gh[j1] * &d) - &(&gh[j2] * &c);
    let b_pr = &(&a * &gh[j2]) - &(&b * &gh[j1]);
    for j in 0..n {
        let lhs = &(&(&a_pr * &gf[j]) + &(&b_pr * &gg[j])) - &(&big_d * &gh[j]);
        if !lhs.is_zero() {
            return Err(ScenarioError::Data("gradient of h is not in the pencil span along the curve".into()));
        }
    }
    // Transverse Hessian D·H_h − A·H_f − B·H_g as rational functions.
    let hess: Vec<Vec<RatFunc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = &rf_const(&vars, &hh[i][j]) * &big_d;
                    if !hf[i][j].is_zero() {
                        e = &e - &(&rf_const(&vars, &hf[i][j]) * &a_pr);
                    }
                    if !hg[i][j].is_zero() {
                        e = &e - &(&rf_const(&vars, &hg[i][j]) * &b_pr);
                    }
                    e
                })
                .collect()
        })
        .collect();
    // Columns spanning the kernel of the stacked gradients of f and g.
    let mut kernel: Vec<Vec<RatFunc>> = Vec::new();
    for j in 0..n {
        if j == j1 || j == j2 {
            continue;
        }
        let (u, v) = (&gf[j], &gg[j]);
        let mut col = vec![RatFunc::zero(&vars); n];
        col[j] = big_d.clone();
        col[j1] = -&(&(u * &d) - &(&b * v));
        col[j2] = -&(&(&a * v) - &(u * &c));
        kernel.push(col);
    }
    let hess_apply = |x: &[RatFunc]| -> Vec<RatFunc> {
        (0..n)
            .map(|i| {
                let mut acc = RatFunc::zero(&vars);
                for j in 0..n {
                    if !x[j].is_zero() {
                        acc = &acc + &(&hess[i][j] * &x[j]);
                    }
                }
                acc
            })
            .collect()
    };
    let m: Vec<Vec<RatFunc>> = kernel
        .iter()
        .map(|kr| {
            let hk = hess_apply(kr);
            kernel.iter().map(|ks| rf_dot(ks, &hk)).collect()
        })
        .collect();
    let hrank = rf_rank(m.clone())?;
    if hrank != 1 {
        return Ok(CurveProfile { gradient_rank: 2, hessian_rank: Some(hrank), cubic_nonzero: None });
    }
    // Corank-one profile: lift a transverse arc in the degenerate
    // direction and read off the cubic contact coefficient.
    let p_dot: Result<Vec<RatFunc>, ScenarioError> = p.iter().map(|c| rf_derivative(c, tvar)).collect();
    let p_dot = p_dot?;
    let null = rf_nullspace(&m)?;
    let mut d1 = None;
    for kappa in &null {
        let cand: Vec<RatFunc> = (0..n)
            .map(|i| {
                let mut acc = RatFunc::zero(&vars);
                for (r, kcol) in kernel.iter().enumerate() {
                    acc = &acc + &(&kappa[r] * &kcol[i]);
                }
                acc
            })
            .collect();
        if rf_rank(vec![p.to_vec(), p_dot.clone(), cand.clone()])? == 3 {
            d1 = Some(cand);
            break;
        }
    }
    let d1 = d1.ok_or_else(|| ScenarioError::Data("no transverse degenerate direction".into()))?;
    let half_f = rf_half(&bilinear(hf, &d1, &d1));
    let half_g = rf_half(&bilinear(hg, &d1, &d1));
    let (alpha, beta) = solve_two(&a, &b, &c, &d, &(-&half_f), &(-&half_g))?;
    let mut d2 = vec![RatFunc::zero(&vars); n];
    d2[j1] = alpha;
    d2[j2] = beta;
    let r1 = -&bilinear(hf, &d1, &d2);
    let r2 = -&bilinear(hg, &d1, &d2);
    let (alpha3, beta3) = solve_two(&a, &b, &c, &d, &r1, &r2)?;
    let mut d3 = vec![RatFunc::zero(&vars); n];
    d3[j1] = alpha3;
    d3[j2] = beta3;
    let c0 = rf_half(&bilinear(hh, p, p));
    let c1 = bilinear(hh, p, &d1);
    let c2 = &rf_half(&bilinear(hh, &d1, &d1)) + &bilinear(hh, p, &d2);
    if !c0.is_zero() || !c1.is_zero() || !c2.is_zero() {
        return Err(ScenarioError::Data("arc contact coefficients below the cubic order do not vanish".into()));
    }
    let c3 = &bilinear(hh, &d1, &d2) + &bilinear(hh, p, &d3);
    Ok(CurveProfile {
        gradient_rank: 2,
        hessian_rank: Some(1),
        cubic_nonzero: Some(!c3.is_zero()),
    })
}
