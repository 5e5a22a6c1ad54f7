//! Hirzebruch-surface intersection arithmetic and the two-curve chain
//! state machine for iterated blow-ups.
//!
//! Classes on Fₙ are written a·s + b·f against the (−n)-section s and
//! the fiber f, so the intersection form is fixed by s² = −n, s·f = 1,
//! f² = 0.  Coefficients may carry formal parameters.
//!
//! The chain machine tracks what happens when the intersection curve of
//! two invariant surfaces is blown up repeatedly: each state is the
//! newest exceptional surface Fₙ together with its two invariant curves,
//! each lying on one older partner surface.  Blowing up a curve with
//! squares (α, β) on its two surfaces produces F_{|α−β|} whose two new
//! curves have squares β−α and α−β, the partners keeping their old
//! squares.  The ±n squares and the partner-sign rule are invariants of
//! every reachable state.

use thiserror::Error;

use crate::exactnum::Rational;
use crate::polylin::{MultiPoly, VarSet};

#[derive(Debug, Error)]
pub enum RuledError {
    #[error("classes live on different ruled surfaces (indices {0} and {1})")]
    MixedIndex(u32, u32),
    #[error("chain invariant violated: {0}")]
    Invariant(String),
}

/// A divisor class a·s + b·f on Fₙ.
#[derive(Clone, Debug, PartialEq)]
pub struct RuledClass {
    pub n: u32,
    pub s: MultiPoly,
    pub f: MultiPoly,
}

impl RuledClass {
    pub fn new(n: u32, s: MultiPoly, f: MultiPoly) -> Self {
        RuledClass { n, s, f }
    }

    pub fn numeric(vars: &VarSet, n: u32, s: i64, f: i64) -> Self {
        RuledClass {
            n,
            s: MultiPoly::from_int(vars, s),
            f: MultiPoly::from_int(vars, f),
        }
    }
}

/// Intersection number a_s·b_f + a_f·b_s − n·a_s·b_s on Fₙ.
pub fn ruled_pair(a: &RuledClass, b: &RuledClass) -> Result<MultiPoly, RuledError> {
    if a.n != b.n {
        return Err(RuledError::MixedIndex(a.n, b.n));
    }
    let n = MultiPoly::from_int(a.s.vars(), i64::from(a.n));
    Ok(&(&(&a.s * &b.f) + &(&a.f * &b.s)) - &(&(&n * &a.s) * &b.s))
}

/// h⁰(Fₙ, a·s + b·f) = Σ_{j=0..a} max(0, b − jn + 1).
pub fn h0(n: u32, a: i64, b: i64) -> Rational {
    if a < 0 {
        return Rational::zero();
    }
    let mut total = 0i64;
    for j in 0..=a {
        total += (b - j * i64::from(n) + 1).max(0);
    }
    Rational::from_int(total)
}

/// One invariant curve of a chain state: its square on the newest
/// exceptional surface and on its (older) partner surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub self_on_f: i64,
    pub partner: String,
    pub self_on_partner: i64,
}

/// Newest exceptional surface Fₙ with its two invariant curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub depth: u32,
    pub n: i64,
    pub curves: [CurveRecord; 2],
}

impl ChainState {
    /// The ±n/sign-rule invariants every reachable state must satisfy.
    pub fn check_invariants(&self) -> Result<(), RuledError> {
        if self.n <= 0 {
            return Err(RuledError::Invariant(format!("index {} not positive", self.n)));
        }
        let squares: Vec<i64> = self.curves.iter().map(|c| c.self_on_f).collect();
        if !(squares.contains(&self.n) && squares.contains(&-self.n)) {
            return Err(RuledError::Invariant(format!(
                "curve squares {squares:?} are not ±{}",
                self.n
            )));
        }
        for c in &self.curves {
            if c.self_on_f == self.n && c.self_on_partner > 0 {
                return Err(RuledError::Invariant(format!(
                    "+n curve has positive partner square {}",
                    c.self_on_partner
                )));
            }
            if c.self_on_f == -self.n && c.self_on_partner <= 0 {
                return Err(RuledError::Invariant(format!(
                    "-n curve has non-positive partner square {}",
                    c.self_on_partner
                )));
            }
        }
        Ok(())
    }
}

/// Blow up the intersection curve of two surfaces on which it has
/// squares α and β: the exceptional surface is F_{|α−β|}, its two
/// invariant curves have squares β−α (partner a) and α−β (partner b).
fn blow_two_surface_curve(
    depth: u32,
    alpha: i64,
    partner_a: &str,
    beta: i64,
    partner_b: &str,
) -> ChainState {
    ChainState {
        depth,
        n: (alpha - beta).abs(),
        curves: [
            CurveRecord {
                self_on_f: beta - alpha,
                partner: partner_a.to_string(),
                self_on_partner: alpha,
            },
            CurveRecord {
                self_on_f: alpha - beta,
                partner: partner_b.to_string(),
                self_on_partner: beta,
            },
        ],
    }
}

/// First blow-up: the curve has the given squares on the two starting
/// surfaces (named for the partner bookkeeping).
pub fn chain_base(square_on_a: i64, name_a: &str, square_on_b: i64, name_b: &str) -> ChainState {
    blow_two_surface_curve(1, square_on_a, name_a, square_on_b, name_b)
}

/// Blow up one of the two invariant curves of the current state.
pub fn chain_step(state: &ChainState, curve_index: usize) -> ChainState {
    let chosen = &state.curves[curve_index];
    blow_two_surface_curve(
        state.depth + 1,
        chosen.self_on_f,
        &format!("F{}", state.depth),
        chosen.self_on_partner,
        &chosen.partner,
    )
}

/// All states reachable from `base` in at most `depth_cap` − base.depth
/// further steps, breadth-first, base included.
pub fn explore(base: &ChainState, depth_cap: u32) -> Vec<ChainState> {
    let mut out = vec![base.clone()];
    let mut head = 0;
    while head < out.len() {
        if out[head].depth < depth_cap {
            let state = out[head].clone();
            out.push(chain_step(&state, 0));
            out.push(chain_step(&state, 1));
        }
        head += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::polylin::{parse_poly, varset};

    #[test]
    fn pairing_examples() {
        let vars = varset(&[]);
        let z = RuledClass::numeric(&vars, 0, 1, 3);
        assert_eq!(ruled_pair(&z, &z).unwrap().as_constant().unwrap().as_rational(), Some(&rat("6")));
        let a = RuledClass::numeric(&vars, 2, 1, 4);
        let b = RuledClass::numeric(&vars, 2, 1, 2);
        assert_eq!(ruled_pair(&a, &b).unwrap().as_constant().unwrap().as_rational(), Some(&rat("4")));
    }

    #[test]
    fn parametric_pairing_on_f8() {
        let vars = varset(&["m"]);
        let omega = RuledClass::new(
            8,
            parse_poly("m", &vars).unwrap(),
            parse_poly("2*m+6", &vars).unwrap(),
        );
        let section = RuledClass::numeric(&vars, 8, 1, 0);
        let got = ruled_pair(&omega, &section).unwrap();
        assert_eq!(got, parse_poly("6-6*m", &vars).unwrap());
    }

    #[test]
    fn mixed_indices_are_rejected() {
        let vars = varset(&[]);
        let a = RuledClass::numeric(&vars, 2, 1, 0);
        let b = RuledClass::numeric(&vars, 4, 1, 0);
        assert!(matches!(ruled_pair(&a, &b), Err(RuledError::MixedIndex(2, 4))));
    }

    #[test]
    fn section_counts_on_ruled_surfaces() {
        assert_eq!(h0(2, 1, 4), rat("8"));
        assert_eq!(h0(0, 1, 3), rat("8"));
        assert_eq!(h0(2, 0, 0), rat("1"));
        assert_eq!(h0(2, 2, 1), rat("2"));
        assert_eq!(h0(3, -1, 5), rat("0"));
    }

    #[test]
    fn base_step_yields_f2_with_the_stated_curves() {
        let base = chain_base(0, "E", 2, "R~");
        assert_eq!(base.n, 2);
        base.check_invariants().unwrap();
        assert_eq!(
            base.curves[0],
            CurveRecord { self_on_f: 2, partner: "E".into(), self_on_partner: 0 }
        );
        assert_eq!(
            base.curves[1],
            CurveRecord { self_on_f: -2, partner: "R~".into(), self_on_partner: 2 }
        );
    }

    #[test]
    fn steps_from_f2_reach_f2_and_f4() {
        let base = chain_base(0, "E", 2, "R~");
        let again = chain_step(&base, 0);
        assert_eq!(again.n, 2);
        again.check_invariants().unwrap();
        let deeper = chain_step(&base, 1);
        assert_eq!(deeper.n, 4);
        deeper.check_invariants().unwrap();
    }

    #[test]
    fn exploration_to_depth_ten_holds_all_invariants() {
        let base = chain_base(0, "E", 2, "R~");
        let states = explore(&base, 10);
        assert_eq!(states.len(), 1023);
        for s in &states {
            s.check_invariants().unwrap();
        }
    }

    #[test]
    fn replaying_a_path_is_deterministic() {
        let base = chain_base(0, "E", 2, "R~");
        let path = [1, 0, 1, 1, 0];
        let run = |()| {
            let mut s = base.clone();
            for &i in &path {
                s = chain_step(&s, i);
            }
            s
        };
        assert_eq!(run(()), run(()));
    }

    #[test]
    fn invariant_checker_rejects_bad_states() {
        let mut s = chain_base(0, "E", 2, "R~");
        s.curves[0].self_on_partner = 1;
        assert!(s.check_invariants().is_err());
        let mut t = chain_base(0, "E", 2, "R~");
        t.curves[1].self_on_f = -3;
        assert!(t.check_invariants().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Step law n' = n + |γ| with the sign bookkeeping of the
            /// two curve orientations.
            #[test]
            fn step_law_holds_symbolically(n in 1i64..1000, gamma in -1000i64..1000, choice in 0usize..2) {
                let state = ChainState {
                    depth: 3,
                    n,
                    curves: [
                        CurveRecord { self_on_f: n, partner: "A".into(), self_on_partner: -gamma.abs() },
                        CurveRecord { self_on_f: -n, partner: "B".into(), self_on_partner: gamma.abs().max(1) },
                    ],
                };
                state.check_invariants().unwrap();
                let next = chain_step(&state, choice);
                let expected = n + next_gamma(&state, choice).abs();
                prop_assert_eq!(next.n, expected);
                next.check_invariants().unwrap();
            }
        }

        fn next_gamma(state: &ChainState, choice: usize) -> i64 {
            state.curves[choice].self_on_partner
        }
    }
}
