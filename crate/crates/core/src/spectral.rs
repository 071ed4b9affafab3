//! Floating point spectral analysis of the exact characteristic polynomial.
//!
//! Roots come from an Aberth-Ehrlich simultaneous iteration seeded on a
//! circle of radius `1 + max |c_i|` (a Cauchy bound, so the disk contains
//! every root). The dominant eigenvalue is independently recomputed by power
//! iteration on `A + I`; the shift makes the iteration converge even when
//! the spectrum is spread around a circle, which is exactly the situation
//! this crate exists to detect.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::charpoly::{horner_real, CharPoly};
use crate::graph::scc_component_of;
use crate::operator::{big_to_f64, OperatorMatrix};

/// Default relative tolerance for spectral comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Per-root relative step bound that counts as converged.
const STEP_TOL: f64 = 1e-13;
const MAX_ABERTH_ITER: u32 = 500;
const MAX_POWER_ITER: u32 = 100_000;

/// All complex eigenvalues, sorted by modulus descending (ties: real part
/// descending, then imaginary part descending). `residuals[i]` is the
/// backward error `|p(z_i)| / sum_k |c_k| |z_i|^k` of eigenvalue i.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub delta0: f64,
    pub residuals: Vec<f64>,
}

/// Dominant value and Perron vector (unit maximum entry) from power
/// iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    /// The iteration stalled, typically because a root has multiplicity
    /// greater than one and the cluster jitters at the floating point noise
    /// floor. The best available root set is carried along.
    #[error(
        "root finder did not converge after {iterations} iterations \
         (last max relative step {max_step:.3e})"
    )]
    NonConvergence {
        iterations: u32,
        max_step: f64,
        partial: Spectrum,
    },
    #[error(
        "matrix support graph has {components} strongly connected components; \
         power iteration requires an irreducible matrix"
    )]
    Reducible { components: usize },
    #[error("power iteration failed to converge after {iterations} iterations")]
    PowerIterationStalled { iterations: u32 },
    #[error(
        "multiplicity checks disagree: {cluster} eigenvalue(s) cluster at delta0 \
         but |p'(delta0)| = {derivative:.3e} against threshold {threshold:.3e}"
    )]
    MultiplicityInconsistent {
        cluster: usize,
        derivative: f64,
        threshold: f64,
    },
}

fn horner_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * z + c)
}

fn residual_at(coeffs: &[f64], z: Complex64) -> f64 {
    let num = horner_complex(coeffs, z).norm();
    if num == 0.0 {
        return 0.0;
    }
    let r = z.norm();
    let mut scale = 0.0;
    let mut power = 1.0;
    for c in coeffs {
        scale += c.abs() * power;
        power *= r;
    }
    if scale == 0.0 {
        f64::INFINITY
    } else {
        num / scale
    }
}

fn build_spectrum(coeffs: &[f64], roots: Vec<Complex64>) -> Spectrum {
    let mut pairs: Vec<(Complex64, f64)> = roots
        .into_iter()
        .map(|z| (z, residual_at(coeffs, z)))
        .collect();
    pairs.sort_by(|a, b| {
        b.0.norm()
            .total_cmp(&a.0.norm())
            .then(b.0.re.total_cmp(&a.0.re))
            .then(b.0.im.total_cmp(&a.0.im))
    });
    let delta0 = pairs.first().map(|(z, _)| z.norm()).unwrap_or(0.0);
    Spectrum {
        eigenvalues: pairs.iter().map(|(z, _)| *z).collect(),
        residuals: pairs.iter().map(|(_, r)| *r).collect(),
        delta0,
    }
}

/// All roots of the characteristic polynomial by Aberth-Ehrlich iteration
/// with Gauss-Seidel updates. Initial guesses sit on the Cauchy-bound circle
/// with a fixed phase offset so no guess starts on the real axis. Iterates
/// whose evaluation overflows are pulled halfway toward the origin; the
/// bound circle contains every root, so nothing is lost.
pub fn roots(poly: &CharPoly) -> Result<Spectrum, SpectralError> {
    let n = poly.degree();
    assert!(n > 0, "a nonconstant polynomial is required");
    let coeffs = poly.to_f64_coeffs();
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();

    let mut last_max_step = f64::INFINITY;
    for iter in 1..=MAX_ABERTH_ITER {
        let mut max_rel_step = 0.0f64;
        for i in 0..n {
            let zi = z[i];
            let p = horner_complex(&coeffs, zi);
            let dp = horner_complex(&deriv, zi);
            // Complex division goes through norm_sqr(dp), which overflows
            // long before the operands do; treat that as overflow too and
            // pull the iterate inward. Every root lies inside the seed
            // circle, so halving never skips past one.
            if !p.is_finite() || !dp.is_finite() || dp.norm_sqr().is_infinite() {
                z[i] = zi * 0.5;
                max_rel_step = f64::INFINITY;
                continue;
            }
            if p.norm_sqr() == 0.0 {
                continue;
            }
            if dp.norm_sqr() == 0.0 {
                z[i] = zi + Complex64::from_polar((1.0 + zi.norm()) * 1e-6, 0.7);
                max_rel_step = f64::INFINITY;
                continue;
            }
            let newton = p / dp;
            if !newton.is_finite() {
                z[i] = zi * 0.5;
                max_rel_step = f64::INFINITY;
                continue;
            }
            let mut repulsion = Complex64::zero();
            for (j, &zj) in z.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = zi - zj;
                if d.norm_sqr() > 0.0 {
                    repulsion += d.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let mut step = if denom.norm_sqr() == 0.0 {
                newton
            } else {
                newton / denom
            };
            if !step.is_finite() {
                step = newton;
            }
            z[i] = zi - step;
            let rel = step.norm() / (1.0 + z[i].norm());
            max_rel_step = max_rel_step.max(rel);
        }
        last_max_step = max_rel_step;
        if max_rel_step < STEP_TOL {
            return Ok(build_spectrum(&coeffs, z));
        }
        let _ = iter;
    }
    Err(SpectralError::NonConvergence {
        iterations: MAX_ABERTH_ITER,
        max_step: last_max_step,
        partial: build_spectrum(&coeffs, z),
    })
}

/// Dominant eigenvalue of a nonnegative irreducible matrix by power
/// iteration on `A + I`. The shift collapses the spectral circle onto a
/// single dominant point, so periodicity cannot make the iteration cycle.
/// Returns the value (shift removed) and the Perron vector scaled to unit
/// maximum entry.
pub fn power_iteration(matrix: &OperatorMatrix) -> Result<PerronPair, SpectralError> {
    let n = matrix.dim();
    assert!(n > 0, "power iteration needs a nonempty matrix");
    let mut adj = vec![Vec::new(); n];
    for (col, out) in adj.iter_mut().enumerate() {
        for row in 0..n {
            if !matrix.entry(row, col).is_zero() {
                out.push(row);
            }
        }
    }
    let (components, _) = scc_component_of(&adj);
    if components > 1 {
        return Err(SpectralError::Reducible { components });
    }

    let a = matrix.to_f64();
    let mut v = vec![1.0f64; n];
    let mut value = 0.0f64;
    for _ in 1..=MAX_POWER_ITER {
        let mut w = vec![0.0f64; n];
        for (row, slot) in w.iter_mut().enumerate() {
            let mut acc = v[row];
            let base = row * n;
            for (col, &x) in v.iter().enumerate() {
                acc += a[base + col] * x;
            }
            *slot = acc;
        }
        let new_value = w.iter().fold(0.0f64, |m, &x| m.max(x));
        debug_assert!(new_value > 0.0, "positive vectors stay positive");
        for x in &mut w {
            *x /= new_value;
        }
        // Converge only when the whole vector is a fixed point, not just the
        // scaling factor: successive growth factors can coincide by accident
        // long before the iteration has settled (e.g. on near-symmetric
        // starting vectors), and the vector test is immune to that.
        let value_settled = (new_value - value).abs() <= 1e-12 * new_value;
        let vector_settled = v
            .iter()
            .zip(&w)
            .all(|(old, new)| (old - new).abs() <= 1e-13);
        v = w;
        value = new_value;
        if value_settled && vector_settled {
            return Ok(PerronPair {
                value: value - 1.0,
                vector: v,
            });
        }
    }
    Err(SpectralError::PowerIterationStalled {
        iterations: MAX_POWER_ITER,
    })
}

/// Multiplicity of the dominant modulus as a root near `delta0`, by two
/// independent measurements: the number of computed eigenvalues within
/// `tol * delta0` of `delta0`, and the size of `p'(delta0)` relative to the
/// scale of its terms. The two must agree on "simple or not"; a mismatch is
/// reported as an error rather than resolved silently.
///
/// Scales are floored at 1: the operators here are integer matrices, whose
/// dominant value is at least 1 whenever it means anything, so the floor
/// only engages when a degenerate (nilpotent) spectrum collapses to zero
/// and `delta0` is pure rounding noise.
pub fn delta0_multiplicity(
    poly: &CharPoly,
    spectrum: &Spectrum,
    tol: f64,
) -> Result<usize, SpectralError> {
    let d0 = spectrum.delta0;
    let scale = d0.max(1.0);
    let center = Complex64::new(d0, 0.0);
    let cluster = spectrum
        .eigenvalues
        .iter()
        .filter(|z| (**z - center).norm() <= tol * scale)
        .count();

    let dcoeffs: Vec<f64> = poly.derivative_coeffs().iter().map(big_to_f64).collect();
    let derivative = horner_real(&dcoeffs, d0).abs();
    let threshold = tol
        * dcoeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * scale.powi(k as i32))
            .sum::<f64>();
    let simple_by_derivative = derivative > threshold;

    if (cluster == 1) != simple_by_derivative {
        return Err(SpectralError::MultiplicityInconsistent {
            cluster,
            derivative,
            threshold,
        });
    }
    Ok(cluster)
}
