//! Dense Gaussian linear algebra on small covariance matrices.
//!
//! Everything here operates on matrices of dimension at most a few dozen:
//! Gram matrices of evaluation functionals, joint (value, derivative)
//! covariances and their Schur complements. The interesting quantity is
//! [`abs_moment_product`], the expectation of the product of absolute values
//! of a centered Gaussian vector, which has closed forms in dimensions one
//! and two and is estimated by Monte Carlo above that.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Relative tolerance for the symmetry invariant.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Relative tolerance below which an eigenvalue counts as a PSD violation.
pub const PSD_TOL: f64 = 1e-10;
/// Reciprocal condition number below which conditioning refuses to invert.
pub const CONDITIONING_RCOND: f64 = 1e-12;

/// A symmetric positive-semidefinite covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix {
    entries: DMatrix<f64>,
}

impl CovMatrix {
    /// Validates symmetry and positive semidefiniteness, then wraps the
    /// matrix. Tiny asymmetries within tolerance are averaged away.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        assert!(entries.nrows() == entries.ncols() && entries.nrows() > 0);
        let n = entries.nrows();
        let scale = entries.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1e-300);
        for i in 0..n {
            for j in (i + 1)..n {
                let dev = (entries[(i, j)] - entries[(j, i)]).abs();
                if dev > SYMMETRY_TOL * scale {
                    return Err(Error::NotSymmetric { i, j, deviation: dev });
                }
            }
        }
        let sym = 0.5 * (&entries + entries.transpose());
        let eigs = sym.clone().symmetric_eigenvalues();
        let max_eig = eigs.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        if let Some(&min_eig) = eigs
            .iter()
            .filter(|&&v| v < -PSD_TOL * max_eig.max(1e-300))
            .min_by(|a, b| a.partial_cmp(b).unwrap())
        {
            return Err(Error::NotPsd { eigenvalue: min_eig });
        }
        Ok(Self { entries: sym })
    }

    /// Dimension of the matrix.
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    /// Reciprocal condition number from the symmetric eigenvalues.
    pub fn rcond(&self) -> f64 {
        let eigs = self.entries.clone().symmetric_eigenvalues();
        let max = eigs.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        let min = eigs.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
        if max == 0.0 {
            0.0
        } else {
            min / max
        }
    }
}

/// Factorization of a covariance matrix: a square root `L` with
/// `L L^T = cov`, either the Cholesky triangle or an eigen square root for
/// PSD-singular input, together with the log determinant.
#[derive(Debug, Clone)]
pub struct GaussianFactor {
    lower: DMatrix<f64>,
    log_det: f64,
}

impl GaussianFactor {
    pub fn dim(&self) -> usize {
        self.lower.nrows()
    }

    /// The square-root factor `L`.
    pub fn lower(&self) -> &DMatrix<f64> {
        &self.lower
    }

    /// Log determinant; `-inf` when the matrix is singular.
    pub fn log_det(&self) -> f64 {
        self.log_det
    }

    /// `L L^T`, for reconstruction checks.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.lower * self.lower.transpose()
    }
}

/// Factors a covariance matrix. Cholesky on the fast path; symmetric eigen
/// decomposition with clipping of roundoff-negative eigenvalues as the
/// fallback for PSD-singular input.
pub fn factor(cov: &CovMatrix) -> Result<GaussianFactor> {
    let m = cov.entries().clone();
    if let Some(chol) = nalgebra::Cholesky::new(m.clone()) {
        let lower = chol.l();
        let log_det = 2.0 * lower.diagonal().iter().map(|&d| d.ln()).sum::<f64>();
        return Ok(GaussianFactor { lower, log_det });
    }
    let eig = nalgebra::SymmetricEigen::new(m);
    let max_eig = eig.eigenvalues.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let mut log_det = 0.0;
    let mut scaled = eig.eigenvectors.clone();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -PSD_TOL * max_eig.max(1e-300) {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        let clipped = lambda.max(0.0);
        log_det += if clipped > 0.0 { clipped.ln() } else { f64::NEG_INFINITY };
        let s = clipped.sqrt();
        for i in 0..scaled.nrows() {
            scaled[(i, k)] *= s;
        }
    }
    Ok(GaussianFactor { lower: scaled, log_det })
}

/// Draws a mean-zero Gaussian vector with the factored covariance.
/// Deterministic given the stream state.
pub fn sample_vector<R: Rng + ?Sized>(factor: &GaussianFactor, rng: &mut R) -> DVector<f64> {
    let xi = DVector::from_fn(factor.dim(), |_, _| rng.sample(StandardNormal));
    &factor.lower * xi
}

/// Covariance of the `target_idx` block conditioned on the `cond_idx` block
/// being zero: the Schur complement `S_AA - S_AB S_BB^-1 S_BA`.
pub fn condition_on_zero(
    joint: &CovMatrix,
    target_idx: &[usize],
    cond_idx: &[usize],
) -> Result<CovMatrix> {
    let m = joint.entries();
    let a = m.select_rows(target_idx).select_columns(target_idx);
    let b = m.select_rows(target_idx).select_columns(cond_idx);
    let c = m.select_rows(cond_idx).select_columns(cond_idx);

    let c_cov = CovMatrix::new(c.clone())?;
    let rcond = c_cov.rcond();
    if rcond <= CONDITIONING_RCOND {
        return Err(Error::SingularConditioning { rcond });
    }
    let solved = nalgebra::Cholesky::new(c.clone())
        .map(|ch| ch.solve(&b.transpose()))
        .or_else(|| c.lu().solve(&b.transpose()))
        .ok_or(Error::SingularConditioning { rcond })?;
    let schur = &a - &b * solved;
    // Symmetrize and clip the tiny negative eigenvalues that Schur
    // complements of nearly dependent functionals produce.
    let sym = 0.5 * (&schur + schur.transpose());
    let mut eig = nalgebra::SymmetricEigen::new(sym);
    let max_eig = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    for v in eig.eigenvalues.iter_mut() {
        if *v < 0.0 {
            if *v < -PSD_TOL * max_eig.max(1e-300) {
                return Err(Error::NotPsd { eigenvalue: *v });
            }
            *v = 0.0;
        }
    }
    CovMatrix::new(eig.recompose())
}

/// How [`abs_moment_product`] chooses between closed forms and Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum McPolicy {
    /// Closed form in dimensions 1 and 2, Monte Carlo above.
    #[default]
    ClosedFormWhenAvailable,
    /// Monte Carlo in every dimension (used by cross-checks).
    ForceMonteCarlo,
}

/// `E[\prod_i |z_i|]` for a centered Gaussian vector with the given
/// covariance. Returns the estimate and its standard error (zero on the
/// closed-form paths).
///
/// Dimension 1: `sigma * sqrt(2/pi)`. Dimension 2:
/// `(2/pi) * s1 * s2 * (sqrt(1 - rho^2) + rho * asin(rho))`. Dimension >= 3:
/// plain Monte Carlo with `mc_budget` draws.
pub fn abs_moment_product<R: Rng + ?Sized>(
    cov: &CovMatrix,
    mc_budget: usize,
    rng: &mut R,
    policy: McPolicy,
) -> Result<(f64, f64)> {
    let dim = cov.dim();
    if policy == McPolicy::ClosedFormWhenAvailable {
        match dim {
            1 => {
                let sigma = cov.entries()[(0, 0)].max(0.0).sqrt();
                return Ok((sigma * (2.0 / std::f64::consts::PI).sqrt(), 0.0));
            }
            2 => {
                let e = cov.entries();
                let s1 = e[(0, 0)].max(0.0).sqrt();
                let s2 = e[(1, 1)].max(0.0).sqrt();
                if s1 == 0.0 || s2 == 0.0 {
                    return Ok((0.0, 0.0));
                }
                let rho = (e[(0, 1)] / (s1 * s2)).clamp(-1.0, 1.0);
                let value = (2.0 / std::f64::consts::PI)
                    * s1
                    * s2
                    * ((1.0 - rho * rho).max(0.0).sqrt() + rho * rho.asin());
                return Ok((value, 0.0));
            }
            _ => {}
        }
    }
    assert!(mc_budget >= 2, "Monte Carlo path needs a budget of at least 2");
    let f = factor(cov)?;
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut xi = DVector::zeros(dim);
    for _ in 0..mc_budget {
        for x in xi.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let z = f.lower() * &xi;
        let prod = z.iter().fold(1.0f64, |p, &v| p * v.abs());
        sum += prod;
        sum_sq += prod * prod;
    }
    let n = mc_budget as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}
