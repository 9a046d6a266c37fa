//! Simultaneous complex root finding: Aberth-Ehrlich iteration from
//! perturbed-circle initial guesses, with a companion-matrix eigenvalue
//! fallback for real-coefficient inputs.
//!
//! Both the polynomial and its reversal are kept so that every Horner
//! evaluation happens at an argument of modulus at most one; roots far
//! outside the unit circle are handled through `w = 1/z` without overflow.

use num_complex::Complex64;

use crate::{Error, Result};

/// Newton ratio `p(z)/p'(z)` without overflow: for `|z| > 1` uses
/// `p'/p = d/z - w^2 q'(w)/q(w)` with `q` the reversal and `w = 1/z`.
fn newton_ratio(coeffs: &[Complex64], rev: &[Complex64], z: Complex64) -> Complex64 {
    let d = coeffs.len() - 1;
    if z.norm_sqr() <= 1.0 {
        let (p, dp) = horner_both(coeffs, z);
        p / dp
    } else {
        let w = z.inv();
        let (q, dq) = horner_both(rev, w);
        let ratio_inv = Complex64::new(d as f64, 0.0) / z - w * w * dq / q;
        ratio_inv.inv()
    }
}

/// `(p(x), p'(x))` by a fused Horner pass.
fn horner_both(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = *coeffs.last().unwrap();
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev().skip(1) {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Relative backward error `|p(z)| / p~(|z|)` evaluated in the chart where
/// the argument has modulus at most one (the `z^d` factors cancel).
pub fn relative_residual(coeffs: &[Complex64], rev: &[Complex64], z: Complex64) -> f64 {
    let (c, x) = if z.norm_sqr() <= 1.0 {
        (coeffs, z)
    } else {
        (rev, z.inv())
    };
    let ax = x.norm();
    let mut p = *c.last().unwrap();
    let mut mag = p.norm();
    for &ck in c.iter().rev().skip(1) {
        p = p * x + ck;
        mag = mag * ax + ck.norm();
    }
    if mag == 0.0 {
        0.0
    } else {
        p.norm() / mag
    }
}

/// Initial guesses on circles whose radii come from the upper convex hull
/// of `(k, ln |c_k|)`, slightly perturbed so no two guesses coincide.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let logs: Vec<f64> = coeffs
        .iter()
        .map(|c| if c.norm() > 0.0 { c.norm().ln() } else { -1e30 })
        .collect();
    // Upper convex hull by the monotone chain over (k, log|c_k|).
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=d {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b as f64 - a as f64) * (logs[k] - logs[a])
                - (k as f64 - a as f64) * (logs[b] - logs[a]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut guesses = Vec::with_capacity(d);
    let golden = 0.618_033_988_749_894_9;
    for seg in hull.windows(2) {
        let (k1, k2) = (seg[0], seg[1]);
        let span = k2 - k1;
        let radius = ((logs[k1] - logs[k2]) / span as f64).exp().clamp(1e-12, 1e12);
        for i in 0..span {
            let angle = 2.0 * std::f64::consts::PI
                * (i as f64 / span as f64 + golden * (k1 as f64 + 1.0) / (d as f64 + 1.0))
                + 0.37;
            guesses.push(Complex64::from_polar(radius, angle));
        }
    }
    debug_assert_eq!(guesses.len(), d);
    guesses
}

/// All complex roots of the polynomial (constant term first, leading
/// coefficient nonzero). Convergence is declared per root when the Newton
/// step is below `4 eps (1 + |z|)`; after `max_sweeps` the residuals decide.
pub fn aberth_roots(
    coeffs: &[Complex64],
    max_sweeps: usize,
    residual_tol: f64,
) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    assert!(d >= 1);
    assert!(coeffs.last().unwrap().norm() > 0.0, "leading coefficient must be nonzero");
    if d == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }
    let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
    let mut z = initial_guesses(coeffs);
    let mut converged = vec![false; d];

    for _sweep in 0..max_sweeps {
        let mut all_done = true;
        for i in 0..d {
            if converged[i] {
                continue;
            }
            let n = newton_ratio(coeffs, &rev, z[i]);
            if !n.is_finite() {
                converged[i] = true; // sitting on an exact root
                continue;
            }
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    repulsion += (z[i] - zj).inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - n * repulsion;
            let step = if denom.norm() > 1e-300 { n / denom } else { n };
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                converged[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    let ok = z
        .iter()
        .all(|&zi| relative_residual(coeffs, &rev, zi) <= residual_tol);
    if ok {
        Ok(z)
    } else {
        Err(Error::NoConvergence { sweeps: max_sweeps })
    }
}

/// Companion-matrix eigenvalue fallback for real-coefficient polynomials.
pub fn companion_roots_real(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    assert!(d >= 1 && coeffs[d] != 0.0);
    let lead = coeffs[d];
    let mut m = nalgebra::DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -coeffs[i] / lead;
    }
    let eigs = m.complex_eigenvalues();
    Ok(eigs.iter().map(|e| Complex64::new(e.re, e.im)).collect())
}

/// Roots of a real or complex polynomial with the full escalation chain:
/// Aberth, Aberth restarted from companion eigenvalues (real input only),
/// then failure.
pub fn find_roots(coeffs: &[Complex64], residual_tol: f64) -> Result<Vec<Complex64>> {
    match aberth_roots(coeffs, 200, residual_tol) {
        Ok(z) => Ok(z),
        Err(_) => {
            let all_real = coeffs.iter().all(|c| c.im == 0.0);
            if all_real {
                let re: Vec<f64> = coeffs.iter().map(|c| c.re).collect();
                let mut z = companion_roots_real(&re)?;
                // One polishing pass of Newton on each eigenvalue.
                let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
                for zi in z.iter_mut() {
                    for _ in 0..5 {
                        let n = newton_ratio(coeffs, &rev, *zi);
                        if n.is_finite() {
                            *zi -= n;
                        }
                    }
                }
                let ok = z
                    .iter()
                    .all(|&zi| relative_residual(coeffs, &rev, zi) <= residual_tol);
                if ok {
                    Ok(z)
                } else {
                    Err(Error::NoConvergence { sweeps: 200 })
                }
            } else {
                Err(Error::NoConvergence { sweeps: 200 })
            }
        }
    }
}
