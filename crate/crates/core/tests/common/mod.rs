//! Shared helpers and independent oracles for the integration tests.
//!
//! The oracles here deliberately avoid the library's own code paths: matrix
//! powers, determinants, and walk detection are reimplemented from scratch so
//! a bug in the library cannot hide itself.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use propo_core::{build_c1hat, bundled, parse_table, ChevalleyTable, OperatorMatrix};

/// Parse one of the bundled datasets, panicking on any failure.
pub fn load(name: &str) -> ChevalleyTable {
    let text = bundled(name).unwrap_or_else(|| panic!("no bundled dataset named {name}"));
    parse_table(text).unwrap_or_else(|e| panic!("bundled dataset {name} failed to parse: {e}"))
}

/// Parse a bundled dataset and build its scaled first-Chern operator.
pub fn load_matrix(name: &str) -> OperatorMatrix {
    build_c1hat(&load(name))
}

/// A plain dense integer matrix, independent of `OperatorMatrix`.
#[derive(Clone, PartialEq, Eq)]
pub struct BigMat {
    pub n: usize,
    pub a: Vec<BigInt>,
}

impl BigMat {
    pub fn zero(n: usize) -> Self {
        BigMat {
            n,
            a: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BigMat::zero(n);
        for i in 0..n {
            m.a[i * n + i] = BigInt::from(1);
        }
        m
    }

    pub fn from_operator(op: &OperatorMatrix) -> Self {
        let n = op.dim();
        let mut m = BigMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.a[i * n + j] = op.entry(i, j).clone();
            }
        }
        m
    }

    /// 0/1 adjacency matrix of a digraph given as (source, target) pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut m = BigMat::zero(n);
        for &(u, v) in edges {
            // Entry (row=target, col=source) to match the operator convention;
            // traces are invariant under transposition anyway.
            m.a[v * n + u] = BigInt::from(1);
        }
        m
    }

    pub fn mul(&self, other: &BigMat) -> BigMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = BigMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let aik = &self.a[i * n + k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.a[k * n + j];
                    if !b.is_zero() {
                        out.a[i * n + j] += aik * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        let mut t = BigInt::zero();
        for i in 0..self.n {
            t += &self.a[i * self.n + i];
        }
        t
    }
}

/// Period of a strongly connected nonnegative matrix via the trace test:
/// gcd of all k <= 2n with trace(M^k) > 0.
///
/// Every simple cycle has length <= n and shows up as a positive diagonal of
/// some power, and the gcd of simple-cycle lengths of a strongly connected
/// digraph is exactly its period, so the truncation at 2n is safe.
pub fn trace_gcd_period(m: &BigMat) -> u32 {
    let n = m.n;
    let mut g: u64 = 0;
    let mut p = BigMat::identity(n);
    for k in 1..=(2 * n) {
        p = p.mul(m);
        if p.trace().is_positive() {
            g = gcd_u64(g, k as u64);
        }
    }
    assert!(
        g > 0,
        "no closed walk found up to length 2n; graph not strongly connected?"
    );
    g as u32
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_det(m: &BigMat) -> BigInt {
    let n = m.n;
    let mut a = m.a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k * n + k].is_zero() {
            // Find a row below with a nonzero pivot and swap it up.
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i * n + j] = q;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    let det = a[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Does the digraph contain a closed walk of exactly length `len`?
/// Boolean matrix power, independent of the library's cycle search.
pub fn closed_walk_exists(n: usize, edges: &[(usize, usize)], len: usize) -> bool {
    assert!(len >= 1);
    let mut adj = vec![false; n * n];
    for &(u, v) in edges {
        adj[u * n + v] = true;
    }
    let mut p = adj.clone();
    for _ in 1..len {
        let mut next = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if p[i * n + k] {
                    for j in 0..n {
                        if adj[k * n + j] {
                            next[i * n + j] = true;
                        }
                    }
                }
            }
        }
        p = next;
    }
    (0..n).any(|i| p[i * n + i])
}
