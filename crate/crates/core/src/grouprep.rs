//! Finite matrix groups over Q(ω).
//!
//! Groups are given by generator matrices and enumerated once by
//! breadth-first closure; a word table (generator indices per element)
//! is kept so that representations and characters supplied per generator
//! can be verified against the group's own multiplication.  Only linear
//! characters are supported: every one-dimensional representation factors
//! through the abelianization, and the roots of unity available in Q(ω)
//! (±1, ±ω, ±ω²) cover all the orders that occur here.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactnum::Cyclotomic;
use crate::polylin::{proportionality, CycMatrix, MultiPoly, Proportional};

/// Errors from group enumeration and representation checks.
#[derive(Debug, Error)]
pub enum GroupError {
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generators must be square matrices of equal size")]
    SizeMismatch,
    #[error("inconsistent data on the closure: {0}")]
    Inconsistent(String),
}

/// A finite matrix group with its enumerated closure.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    generators: Vec<CycMatrix>,
    elements: Vec<CycMatrix>,
    words: Vec<Vec<usize>>,
    index: HashMap<CycMatrix, usize>,
    name: String,
}

impl MatrixGroup {
    /// Enumerate the closure of the generators (breadth-first, identity
    /// first) up to `cap` elements.
    pub fn enumerate(name: &str, generators: Vec<CycMatrix>, cap: usize) -> Result<Self, GroupError> {
        let Some(first) = generators.first() else {
            return Err(GroupError::SizeMismatch);
        };
        let n = first.rows();
        if generators.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(GroupError::SizeMismatch);
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.is_invertible() {
                return Err(GroupError::NotInvertible(i));
            }
        }
        let identity = CycMatrix::identity(n);
        let mut elements = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut head = 0;
        while head < elements.len() {
            for (j, g) in generators.iter().enumerate() {
                let m = &elements[head] * g;
                if !index.contains_key(&m) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    index.insert(m.clone(), elements.len());
                    let mut w = words[head].clone();
                    w.push(j);
                    elements.push(m);
                    words.push(w);
                }
            }
            head += 1;
        }
        Ok(MatrixGroup { generators, elements, words, index, name: name.into() })
    }

    /// Enumerate with the default cap of 256 elements.
    pub fn enumerate_default(name: &str, generators: Vec<CycMatrix>) -> Result<Self, GroupError> {
        Self::enumerate(name, generators, 256)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    /// Generator word for element `i` (empty for the identity).
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, m: &CycMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Order of the element at index `i`.
    pub fn element_order(&self, i: usize) -> u32 {
        let identity = CycMatrix::identity(self.elements[i].rows());
        let mut acc = self.elements[i].clone();
        let mut k = 1u32;
        while acc != identity {
            acc = &acc * &self.elements[i];
            k += 1;
        }
        k
    }

    pub fn max_element_order(&self) -> u32 {
        (0..self.order()).map(|i| self.element_order(i)).max().unwrap_or(1)
    }

    /// Closure sanity: contains inverses and is closed under products.
    pub fn is_closed_group(&self) -> bool {
        self.elements.iter().all(|e| {
            e.inverse().is_some_and(|inv| self.index.contains_key(&inv))
                && self.generators.iter().all(|g| self.index.contains_key(&(e * g)))
        })
    }

    /// Extend per-generator values (matrices or scalars mapped through
    /// `mul`) along the word table, verifying the homomorphism property
    /// on every (element, generator) product.
    fn extend_by_words<T, F>(&self, gen_values: &[T], identity: T, mul: F) -> Result<Vec<T>, GroupError>
    where
        T: Clone + PartialEq,
        F: Fn(&T, &T) -> T,
    {
        if gen_values.len() != self.generators.len() {
            return Err(GroupError::Inconsistent("one value per generator required".into()));
        }
        let mut values = Vec::with_capacity(self.order());
        for w in &self.words {
            let mut acc = identity.clone();
            for &j in w {
                acc = mul(&acc, &gen_values[j]);
            }
            values.push(acc);
        }
        for (i, e) in self.elements.iter().enumerate() {
            for (j, g) in self.generators.iter().enumerate() {
                let k = self.index[&(e * g)];
                if values[k] != mul(&values[i], &gen_values[j]) {
                    return Err(GroupError::Inconsistent(format!(
                        "value mismatch at element {i} · generator {j}"
                    )));
                }
            }
        }
        Ok(values)
    }
}

/// A linear character, one root of unity per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    values: Vec<Cyclotomic>,
}

impl LinearCharacter {
    /// Build and verify a character from per-generator values.
    pub fn new(group: &MatrixGroup, values: Vec<Cyclotomic>) -> Result<Self, GroupError> {
        group.extend_by_words(&values, Cyclotomic::one(), |a, b| a * b)?;
        Ok(LinearCharacter { values })
    }

    pub fn trivial(group: &MatrixGroup) -> Self {
        LinearCharacter { values: vec![Cyclotomic::one(); group.generators().len()] }
    }

    pub fn value_on_generator(&self, j: usize) -> &Cyclotomic {
        &self.values[j]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v == &Cyclotomic::one())
    }
}

/// All linear characters of the group, in a deterministic order.
///
/// Candidate values per generator are the roots of unity in Q(ω) whose
/// order divides the generator's order; each full assignment is kept when
/// it extends to a homomorphism on the closure.
pub fn linear_characters(group: &MatrixGroup) -> Vec<LinearCharacter> {
    let roots: Vec<(Cyclotomic, u32)> = {
        let w = Cyclotomic::omega();
        let mut out = Vec::new();
        for k in 0..6u32 {
            let v = (-&Cyclotomic::one()).pow(k) * w.pow(k);
            let ord = v.mult_order(6).unwrap();
            if !out.iter().any(|(u, _)| u == &v) {
                out.push((v, ord));
            }
        }
        out.sort_by_key(|(_, ord)| *ord);
        out
    };
    let gen_orders: Vec<u32> = group
        .generators()
        .iter()
        .map(|g| group.element_order(group.index_of(g).unwrap()))
        .collect();
    let candidates: Vec<Vec<Cyclotomic>> = gen_orders
        .iter()
        .map(|&o| roots.iter().filter(|(_, ord)| o % ord == 0).map(|(v, _)| v.clone()).collect())
        .collect();
    let mut out = Vec::new();
    let mut assignment = vec![Cyclotomic::one(); candidates.len()];
    fn go(
        group: &MatrixGroup,
        candidates: &[Vec<Cyclotomic>],
        assignment: &mut Vec<Cyclotomic>,
        depth: usize,
        out: &mut Vec<LinearCharacter>,
    ) {
        if depth == candidates.len() {
            if let Ok(chi) = LinearCharacter::new(group, assignment.clone()) {
                out.push(chi);
            }
            return;
        }
        for v in &candidates[depth] {
            assignment[depth] = v.clone();
            go(group, candidates, assignment, depth + 1, out);
        }
    }
    go(group, &candidates, &mut assignment, 0, &mut out);
    out
}

/// The character χ with p∘g = χ(g)·p for every generator, if one exists.
pub fn semi_invariant_character(p: &MultiPoly, group: &MatrixGroup) -> Option<LinearCharacter> {
    let mut values = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let image = p.substitute_linear(g);
        match proportionality(&image, p) {
            Proportional::Factor(c) => values.push(c),
            _ => return None,
        }
    }
    LinearCharacter::new(group, values).ok()
}

/// Matrices of a representation on the full closure, verified consistent
/// with the group multiplication.
pub fn representation_on_closure(
    group: &MatrixGroup,
    rep_gens: &[CycMatrix],
) -> Result<Vec<CycMatrix>, GroupError> {
    let Some(first) = rep_gens.first() else {
        return Err(GroupError::Inconsistent("empty representation".into()));
    };
    let d = first.rows();
    if rep_gens.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(GroupError::SizeMismatch);
    }
    group.extend_by_words(rep_gens, CycMatrix::identity(d), |a, b| a * b)
}

/// Dimension of {v : ρ(g)·v = χ(g)·v for all generators g}.
pub fn character_eigenspace_dim(
    group: &MatrixGroup,
    rep_gens: &[CycMatrix],
    chi: &LinearCharacter,
) -> Result<usize, GroupError> {
    representation_on_closure(group, rep_gens)?;
    let d = rep_gens[0].rows();
    let mut stacked: Option<CycMatrix> = None;
    for (j, m) in rep_gens.iter().enumerate() {
        let mut shifted = m.clone();
        for i in 0..d {
            let v = shifted.get(i, i) - chi.value_on_generator(j);
            shifted.set(i, i, v);
        }
        stacked = Some(match stacked {
            None => shifted,
            Some(s) => s.vstack(&shifted).expect("equal widths"),
        });
    }
    let stacked = stacked.ok_or_else(|| GroupError::Inconsistent("empty representation".into()))?;
    Ok(stacked.nullspace().len())
}

/// Exponent vectors of total degree `k` in `d` variables, ascending
/// lexicographic order (the monomial basis used by `sym_power_rep`).
pub fn monomial_basis(d: usize, k: u32) -> Vec<Vec<u32>> {
    fn go(d: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if d == 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=k {
            prefix.push(e);
            go(d - 1, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, k, &mut Vec::new(), &mut out);
    out
}

/// Induced action on the monomial basis of Symᵏ (dimension C(d+k−1, k)).
pub fn sym_power_rep(rep_gens: &[CycMatrix], k: u32) -> Vec<CycMatrix> {
    let d = rep_gens[0].rows();
    let basis = monomial_basis(d, k);
    let pos: HashMap<Vec<u32>, usize> =
        basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let names: Vec<String> = (0..d).map(|i| format!("t{i}")).collect();
    let vars = crate::polylin::varset(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    rep_gens
        .iter()
        .map(|m| {
            let mut out = CycMatrix::zeros(basis.len(), basis.len());
            for (col, e) in basis.iter().enumerate() {
                let mono = MultiPoly::monomial(&vars, e.clone(), Cyclotomic::one());
                let image = mono.substitute_linear(m);
                for (f, c) in image.terms() {
                    out.set(pos[f], col, c.clone());
                }
            }
            out
        })
        .collect()
}

/// Kronecker products: the action on the tensor basis e_i ⊗ e_j.
pub fn tensor_rep(a: &[CycMatrix], b: &[CycMatrix]) -> Vec<CycMatrix> {
    a.iter()
        .zip(b)
        .map(|(m, n)| {
            let (da, db) = (m.rows(), n.rows());
            let mut out = CycMatrix::zeros(da * db, da * db);
            for i1 in 0..da {
                for j1 in 0..da {
                    for i2 in 0..db {
                        for j2 in 0..db {
                            out.set(i1 * db + i2, j1 * db + j2, m.get(i1, j1) * n.get(i2, j2));
                        }
                    }
                }
            }
            out
        })
        .collect()
}

/// Shortest orbit on P¹: |G| divided by the maximal element order.
/// Point stabilizers in PGL₂ of a finite group acting on a projective
/// line are cyclic, so the largest stabilizer is the largest cyclic
/// subgroup.
pub fn min_orbit_length_on_p1(group: &MatrixGroup) -> usize {
    group.order() / group.max_element_order() as usize
}

/// Same computation from an abstract order profile.
pub fn min_orbit_length_from_orders(group_order: usize, element_orders: &[u32]) -> usize {
    let max = element_orders.iter().copied().max().unwrap_or(1);
    group_order / max as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyc;

    fn sign_diag(signs: [i64; 6]) -> CycMatrix {
        let mut m = CycMatrix::zeros(6, 6);
        for (i, s) in signs.into_iter().enumerate() {
            m.set(i, i, Cyclotomic::from_int(s));
        }
        m
    }

    /// The two sign involutions and the double 3-cycle generating an
    /// order-12 group on six coordinates.
    fn order_twelve_group() -> MatrixGroup {
        let e1 = sign_diag([1, -1, -1, 1, -1, -1]);
        let e2 = sign_diag([-1, 1, -1, -1, 1, -1]);
        let mut rho = CycMatrix::zeros(6, 6);
        for (i, j) in [(1, 0), (2, 1), (0, 2), (4, 3), (5, 4), (3, 5)] {
            rho.set(i, j, Cyclotomic::one());
        }
        MatrixGroup::enumerate_default("A4-on-P5", vec![e1, e2, rho]).unwrap()
    }

    fn quaternion_i() -> CycMatrix {
        CycMatrix::from_text(&[["0", "-1"], ["1", "0"]])
    }

    fn quaternion_j() -> CycMatrix {
        CycMatrix::from_text(&[["w", "w^2"], ["w^2", "-w"]])
    }

    fn sl23_generators() -> Vec<CycMatrix> {
        let i = quaternion_i();
        let j = quaternion_j();
        let ij = &i * &j;
        let minus_one = CycMatrix::from_text(&[["-1", "0"], ["0", "-1"]]);
        let mut c = CycMatrix::zeros(2, 2);
        for r in 0..2 {
            for s in 0..2 {
                let sum = &(minus_one.get(r, s) + i.get(r, s)) + &(j.get(r, s) + ij.get(r, s));
                c.set(r, s, sum * cyc("1/2"));
            }
        }
        vec![i, j, c]
    }

    #[test]
    fn identity_alone_gives_order_one() {
        let g = MatrixGroup::enumerate_default("1", vec![CycMatrix::identity(3)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_closed_group());
    }

    #[test]
    fn sign_and_cycle_generators_close_to_order_twelve() {
        let g = order_twelve_group();
        assert_eq!(g.order(), 12);
        assert!(g.is_closed_group());
        assert_eq!(g.max_element_order(), 3);
        assert_eq!(min_orbit_length_on_p1(&g), 4);
    }

    #[test]
    fn quaternion_and_triality_close_to_order_24() {
        let gens = sl23_generators();
        let j2 = &gens[1] * &gens[1];
        assert_eq!(j2, CycMatrix::from_text(&[["-1", "0"], ["0", "-1"]]));
        let g = MatrixGroup::enumerate_default("SL(2,3)", gens).unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.is_closed_group());
        assert_eq!(g.max_element_order(), 6);
    }

    #[test]
    fn cap_exceeded_reports_error() {
        let gens = sl23_generators();
        let err = MatrixGroup::enumerate("SL(2,3)", gens, 10).unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded(10)));
    }

    #[test]
    fn order_twelve_group_has_three_linear_characters() {
        let g = order_twelve_group();
        let chars = linear_characters(&g);
        assert_eq!(chars.len(), 3);
        for chi in &chars {
            assert_eq!(chi.value_on_generator(0), &Cyclotomic::one());
            assert_eq!(chi.value_on_generator(1), &Cyclotomic::one());
        }
        let cycle_values: Vec<Cyclotomic> =
            chars.iter().map(|c| c.value_on_generator(2).clone()).collect();
        for v in [cyc("1"), cyc("w"), cyc("w^2")] {
            assert!(cycle_values.contains(&v), "missing cycle value {v}");
        }
    }

    #[test]
    fn sl23_linear_characters_fix_the_quaternions() {
        let g = MatrixGroup::enumerate_default("SL(2,3)", sl23_generators()).unwrap();
        let chars = linear_characters(&g);
        assert_eq!(chars.len(), 3);
        for chi in &chars {
            assert_eq!(chi.value_on_generator(0), &Cyclotomic::one());
            assert_eq!(chi.value_on_generator(1), &Cyclotomic::one());
            assert!(chi.value_on_generator(2).pow(3) == Cyclotomic::one());
        }
    }

    #[test]
    fn semi_invariants_of_the_sign_cycle_group() {
        use crate::polylin::{parse_poly, varset};
        let vars = varset(&["x0", "x1", "x2", "x3", "x4", "x5"]);
        let g = order_twelve_group();
        let f = parse_poly("x0*x3+x1*x4+x2*x5", &vars).unwrap();
        let chi = semi_invariant_character(&f, &g).unwrap();
        assert!(chi.is_trivial());
        let f31 = parse_poly("x0^2+w^2*x1^2+w*x2^2", &vars).unwrap();
        let chi1 = semi_invariant_character(&f31, &g).unwrap();
        assert_eq!(chi1.value_on_generator(2), &cyc("w"));
        let not_semi = parse_poly("x0^2+x1^2", &vars).unwrap();
        assert!(semi_invariant_character(&not_semi, &g).is_none());
    }

    #[test]
    fn sym_cube_of_a_plane_rep_is_four_dimensional() {
        let gens = sl23_generators();
        let sym3 = sym_power_rep(&gens, 3);
        assert_eq!(sym3[0].rows(), 4);
        // Trace at the order-3 generator: eigenvalues ω, ω² give
        // ω³ + ω²·ω² + ω·ω⁴ + ω⁶ = 1 + ω + ω² + 1 = 1.
        let c3 = &sym3[2];
        let trace = (0..4).fold(Cyclotomic::zero(), |acc, i| &acc + c3.get(i, i));
        assert_eq!(trace, cyc("1"));
    }

    #[test]
    fn tensor_of_plane_and_sym_cube_is_eight_dimensional() {
        let gens = sl23_generators();
        let sym3 = sym_power_rep(&gens, 3);
        let t = tensor_rep(&gens, &sym3);
        assert_eq!(t[0].rows(), 8);
    }

    #[test]
    fn tensor_with_sym_cube_has_two_linear_summands() {
        let gens = sl23_generators();
        let g = MatrixGroup::enumerate_default("SL(2,3)", gens.clone()).unwrap();
        let rep = tensor_rep(&gens, &sym_power_rep(&gens, 3));
        let mut total = 0;
        for chi in linear_characters(&g) {
            total += character_eigenspace_dim(&g, &rep, &chi).unwrap();
        }
        assert_eq!(total, 2);
        // The plane representation itself has no 1-dim subrepresentation.
        for chi in linear_characters(&g) {
            assert_eq!(character_eigenspace_dim(&g, &gens, &chi).unwrap(), 0);
        }
    }

    #[test]
    fn eigenspace_dims_are_basis_independent() {
        let gens = sl23_generators();
        let g = MatrixGroup::enumerate_default("SL(2,3)", gens.clone()).unwrap();
        let rep = tensor_rep(&gens, &sym_power_rep(&gens, 3));
        let chars = linear_characters(&g);
        let reference: Vec<usize> =
            chars.iter().map(|chi| character_eigenspace_dim(&g, &rep, chi).unwrap()).collect();
        let conjugators: Vec<CycMatrix> = [1u64, 2]
            .iter()
            .map(|&seed| {
                let entries = conjugator_entries(seed);
                let refs: Vec<&str> = entries.iter().map(|s| s.as_str()).collect();
                CycMatrix::from_text_dims(8, 8, &refs)
            })
            .collect();
        for p in &conjugators {
            let pinv = p.inverse().expect("invertible conjugator");
            let conj: Vec<CycMatrix> = rep.iter().map(|m| &(p * m) * &pinv).collect();
            let dims: Vec<usize> =
                chars.iter().map(|chi| character_eigenspace_dim(&g, &conj, chi).unwrap()).collect();
            assert_eq!(dims, reference);
        }
    }

    fn conjugator_entries(seed: u64) -> Vec<String> {
        // Unit upper-triangular with deterministic small entries.
        let mut out = Vec::new();
        let mut state = seed;
        for r in 0..8 {
            for c in 0..8 {
                if r == c {
                    out.push("1".to_string());
                } else if r < c {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    out.push(((state >> 33) % 5).to_string());
                } else {
                    out.push("0".to_string());
                }
            }
        }
        out
    }

    #[test]
    fn inconsistent_representation_is_rejected() {
        let g = order_twelve_group();
        // Wrong matrices: all identity except a sign on the 3-cycle slot
        // squared inconsistently (order 2 where order 3 is required).
        let bad = vec![
            CycMatrix::identity(2),
            CycMatrix::identity(2),
            CycMatrix::from_text(&[["-1", "0"], ["0", "1"]]),
        ];
        assert!(representation_on_closure(&g, &bad).is_err());
    }

    #[test]
    fn abstract_order_profile_orbit_lengths() {
        assert_eq!(min_orbit_length_from_orders(12, &[1, 2, 3]), 4);
        assert_eq!(min_orbit_length_from_orders(2, &[1, 2]), 1);
        assert_eq!(min_orbit_length_from_orders(24, &[1, 2, 3, 4]), 6);
    }
}
