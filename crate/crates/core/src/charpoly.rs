//! Exact characteristic polynomials of integer matrices.
//!
//! Faddeev-LeVerrier recurrence over arbitrary precision integers:
//! `M_1 = A`, `c_{n-k} = -tr(M_k) / k`, `M_{k+1} = A (M_k + c_{n-k} I)`.
//! Every division is exact, so the coefficients are exact integers and the
//! floating point root finder starts from uncorrupted data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::operator::{big_to_f64, OperatorMatrix};

/// `p(x) = sum coeffs[i] * x^i`, monic: `coeffs[n] == 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Coefficients in ascending degree order; the last one is 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, power: usize) -> &BigInt {
        &self.coeffs[power]
    }

    /// Constant term `p(0) = (-1)^n det(A)`.
    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            coeffs.last().map(One::is_one).unwrap_or(false),
            "characteristic polynomial must be monic"
        );
        CharPoly { coeffs }
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(big_to_f64).collect()
    }

    /// Coefficients of `p'` in ascending order, exactly.
    pub fn derivative_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    /// `p(x)` for real x, through f64 images of the coefficients.
    pub fn eval_f64(&self, x: f64) -> f64 {
        horner_real(&self.to_f64_coeffs(), x)
    }
}

pub(crate) fn horner_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Exact characteristic polynomial `det(x I - A)` of a square matrix.
pub fn char_poly(matrix: &OperatorMatrix) -> CharPoly {
    let n = matrix.dim();
    assert!(n > 0, "characteristic polynomial needs a nonempty matrix");
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = matrix.clone();
    for k in 1..=n {
        let trace = aux.trace();
        let (q, rem) = trace.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier trace divides exactly");
        let c = -q;
        coeffs[n - k] = c.clone();
        if k < n {
            aux = matrix.mul(&aux.add_scalar_diag(&c));
        } else {
            debug_assert!(
                matrix.mul(&aux.add_scalar_diag(&c)).is_zero(),
                "Cayley-Hamilton closes the recurrence"
            );
        }
    }
    CharPoly { coeffs }
}
