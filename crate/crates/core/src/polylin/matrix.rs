//! Dense matrices over Q(ω) with exact Gaussian elimination.

use crate::exactnum::Cyclotomic;
use crate::polylin::PolyError;
use std::fmt;
use std::ops::Mul;

/// Dense matrix over Q(ω), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CycMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CycMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Square matrix from text entries (tests and fixtures).
    pub fn from_text<const N: usize>(rows: &[[&str; N]]) -> Self {
        CycMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|s| s.parse().expect("bad matrix entry")).collect())
                .collect(),
        )
    }

    /// Matrix of the given shape from a flat list of text entries.
    pub fn from_text_dims(rows: usize, cols: usize, entries: &[&str]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        CycMatrix {
            rows,
            cols,
            data: entries.iter().map(|s| s.parse().expect("bad matrix entry")).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyclotomic) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut out = CycMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Stack two matrices with equal column counts.
    pub fn vstack(&self, other: &CycMatrix) -> Result<CycMatrix, PolyError> {
        if self.cols != other.cols {
            return Err(PolyError::Dims(format!("{} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(CycMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Cyclotomic::zero();
                for c in 0..self.cols {
                    acc = &acc + &(self.get(r, c) * &v[c]);
                }
                acc
            })
            .collect()
    }

    /// Row echelon form; returns (reduced matrix, pivot columns).
    fn echelon(&self) -> (CycMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).inv().unwrap();
            for c in col..m.cols {
                m.set(row, c, &(m.get(row, c).clone()) * &inv);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &(&factor * m.get(row, c));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right nullspace (kernel of the column action).
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let (m, pivots) = self.echelon();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Cyclotomic::zero(); self.cols];
            v[free] = Cyclotomic::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant (square matrices only), by elimination over the field.
    pub fn det(&self) -> Cyclotomic {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Cyclotomic::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Cyclotomic::zero();
            };
            if p != col {
                det = -&det;
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(col, c, b);
                    m.set(p, c, a);
                }
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().unwrap();
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = &(m.get(r, col).clone()) * &inv;
                for c in col..n {
                    let v = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.det().is_zero()
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<CycMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = CycMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Cyclotomic::one());
        }
        let (m, pivots) = aug.echelon();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut out = CycMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, m.get(r, n + c).clone());
            }
        }
        Some(out)
    }
}

impl Mul for &CycMatrix {
    type Output = CycMatrix;
    fn mul(self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = CycMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Cyclotomic::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * rhs.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        out
    }
}

impl Mul for CycMatrix {
    type Output = CycMatrix;
    fn mul(self, rhs: CycMatrix) -> CycMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyc;

    #[test]
    fn rank_and_nullspace_sum_to_columns() {
        let m = CycMatrix::from_text(&[["1", "2", "3"], ["2", "4", "6"], ["0", "1", "w"]]);
        let rank = m.rank();
        let null = m.nullspace();
        assert_eq!(rank + null.len(), 3);
        assert_eq!(rank, 2);
        for v in &null {
            for entry in m.apply(v) {
                assert!(entry.is_zero());
            }
        }
    }

    #[test]
    fn determinant_with_omega_entries() {
        // det [[ω, 1], [1, ω]] = ω² − 1 = −2 − ω.
        let m = CycMatrix::from_text(&[["w", "1"], ["1", "w"]]);
        assert_eq!(m.det(), cyc("-2-w"));
        assert!(m.is_invertible());
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, CycMatrix::identity(2));
    }

    #[test]
    fn singular_matrix_has_zero_det_and_no_inverse() {
        let m = CycMatrix::from_text(&[["1", "2"], ["2", "4"]]);
        assert!(m.det().is_zero());
        assert!(m.inverse().is_none());
    }
}
