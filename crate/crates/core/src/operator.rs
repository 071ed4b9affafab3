//! Exact integer matrices for quantum multiplication operators.
//!
//! The operator of interest is multiplication by the anticanonical class
//! `c1 = m * h` on the ring specialized at q = 1. In the fixed basis its
//! matrix has `entry(row, col) = m * (coefficient of basis[row] in
//! h * basis[col])`, summed over all q powers. Entries are arbitrary
//! precision integers so characteristic polynomial coefficients stay exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::table::ChevalleyTable;

/// Dense square matrix over the integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl OperatorMatrix {
    pub fn zero(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    /// Build from explicit rows. Rows must form a square matrix.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        OperatorMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor for tests and small literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// True when the column of `col` has no nonzero entry, i.e. `basis[col]`
    /// maps to zero under the operator.
    pub fn column_is_zero(&self, col: usize) -> bool {
        (0..self.dim).all(|row| self.entry(row, col).is_zero())
    }

    pub fn mul(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = OperatorMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] += a * b;
                }
            }
        }
        out
    }

    /// `self + c * I`.
    pub fn add_scalar_diag(&self, c: &BigInt) -> OperatorMatrix {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.entries[i * self.dim + i] += c;
        }
        out
    }

    /// Row-major f64 image of the matrix, for floating point iteration.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(big_to_f64).collect()
    }
}

/// Lossless for the magnitudes used here; the num conversion saturates on
/// astronomically large values rather than panicking.
pub(crate) fn big_to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or_else(|| {
        if v.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Matrix of multiplication by `c1 = m * h` at q = 1, from the unit-scale
/// Chevalley rows. A term `c q^d beta` in the row of `alpha = basis[col]`
/// contributes `m * c` to `entry(index(beta), col)`; powers of q collapse
/// because the specialization sets q = 1.
pub fn build_c1hat(table: &ChevalleyTable) -> OperatorMatrix {
    let n = table.dim();
    let m = BigInt::from(table.c1_multiple);
    let mut out = OperatorMatrix::zero(n);
    for (col, row) in table.rows.iter().enumerate() {
        for term in row {
            let idx = term.target * n + col;
            out.entries[idx] += &m * BigInt::from(term.coefficient);
        }
    }
    out
}

/// True when no entry is negative. The lemma route requires this; it holds
/// for every table with positive coefficients, but the check guards operator
/// matrices built by other means.
pub fn check_nonnegative(matrix: &OperatorMatrix) -> bool {
    matrix.entries.iter().all(|e| !e.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::parse_table;

    #[test]
    fn projective_line_matrix() {
        let t = parse_table(
            "name p1\nfano_index 2\nc1_multiple 2\nbasis one 0\nbasis h 1\nchev one : 1 q0 h\nchev h : 1 q1 one\n",
        )
        .unwrap();
        let m = build_c1hat(&t);
        // Basis order (one, h): column `one` feeds row `h`, column `h` feeds
        // row `one` through the quantum term.
        assert_eq!(m, OperatorMatrix::from_i64_rows(&[&[0, 2], &[2, 0]]));
        assert!(check_nonnegative(&m));
        assert_eq!(m.trace(), BigInt::from(0));
    }

    #[test]
    fn q_powers_collapse_and_coefficients_scale() {
        // Row `h`: 3 q0 a1 + 1 q2 one. With m = 4 the column of h holds
        // 12 at row a1 and 4 at row one.
        let t = parse_table(
            "name t\nfano_index 1\nc1_multiple 4\nbasis one 0\nbasis h 1\nbasis a1 2\nchev h : 3 q0 a1, 1 q2 one\n",
        )
        .unwrap();
        let m = build_c1hat(&t);
        assert_eq!(*m.entry(2, 1), BigInt::from(12));
        assert_eq!(*m.entry(0, 1), BigInt::from(4));
        assert!(m.column_is_zero(0));
        assert!(m.column_is_zero(2));
        assert!(!m.column_is_zero(1));
    }

    #[test]
    fn mul_and_scalar_diag() {
        let a = OperatorMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = OperatorMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.mul(&b),
            OperatorMatrix::from_i64_rows(&[&[2, 1], &[4, 3]])
        );
        assert_eq!(
            a.add_scalar_diag(&BigInt::from(-1)),
            OperatorMatrix::from_i64_rows(&[&[0, 2], &[3, 3]])
        );
        assert_eq!(a.trace(), BigInt::from(5));
    }

    #[test]
    fn negativity_is_detected() {
        let m = OperatorMatrix::from_i64_rows(&[&[1, -2], &[0, 1]]);
        assert!(!check_nonnegative(&m));
    }
}
