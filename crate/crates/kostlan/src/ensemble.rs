//! Sampling and evaluation of random Kostlan sections.
//!
//! A sample is a coefficient vector `a_0..a_d` in the orthonormal-basis
//! convention `{sqrt(C(d,k)) t^k}`, with independent standard (real or
//! complex) Gaussian entries. Evaluation happens through the monomial
//! coefficients `a_k sqrt(C(d,k))`; for `|t| > 1` the projective chart flip
//! `t -> 1/t` keeps everything in the well-conditioned branch.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::kernels::FsGeometry;
use crate::stats::ln_gamma;

/// Which coefficient field a sample lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Real,
    Complex,
}

/// A random Kostlan section: degree, field tag and the coefficient vector in
/// the orthonormal-basis convention. Complex coefficients are stored as
/// `(re, im)` pairs with variance 1/2 per part.
#[derive(Debug, Clone)]
pub struct SectionSample {
    degree: u32,
    field: FieldTag,
    coeffs: Vec<(f64, f64)>,
}

/// Square roots of the binomial coefficients `sqrt(C(d, k))`, computed in
/// the log domain and exponentiated once per degree.
pub fn basis_weights(degree: u32) -> Vec<f64> {
    let d = degree as f64;
    let lg = ln_gamma(d + 1.0);
    (0..=degree)
        .map(|k| {
            let lk = k as f64;
            (0.5 * (lg - ln_gamma(lk + 1.0) - ln_gamma(d - lk + 1.0))).exp()
        })
        .collect()
}

impl SectionSample {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Basis coefficients (imaginary parts are zero for real samples).
    pub fn coefficients(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    /// Builds a real sample from explicit basis coefficients.
    pub fn from_real_coefficients(degree: u32, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1);
        Self {
            degree,
            field: FieldTag::Real,
            coeffs: coeffs.into_iter().map(|c| (c, 0.0)).collect(),
        }
    }

    /// Monomial coefficients `a_k sqrt(C(d,k))` of the real part.
    pub fn monomial_coeffs(&self) -> Vec<f64> {
        let w = basis_weights(self.degree);
        self.coeffs.iter().zip(&w).map(|(&(re, _), &wk)| re * wk).collect()
    }

    /// Monomial coefficients of a complex sample.
    pub fn monomial_coeffs_complex(&self) -> Vec<(f64, f64)> {
        let w = basis_weights(self.degree);
        self.coeffs
            .iter()
            .zip(&w)
            .map(|(&(re, im), &wk)| (re * wk, im * wk))
            .collect()
    }
}

/// Draws a real Kostlan sample: i.i.d. standard Gaussian basis coefficients.
pub fn sample_real<R: Rng + ?Sized>(degree: u32, rng: &mut R) -> SectionSample {
    assert!(degree >= 1);
    let coeffs = (0..=degree)
        .map(|_| (rng.sample::<f64, _>(StandardNormal), 0.0))
        .collect();
    SectionSample { degree, field: FieldTag::Real, coeffs }
}

/// Draws a complex Kostlan sample: independent complex standard Gaussians,
/// i.e. real and imaginary parts of variance 1/2 each.
pub fn sample_complex<R: Rng + ?Sized>(degree: u32, rng: &mut R) -> SectionSample {
    assert!(degree >= 1);
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let coeffs = (0..=degree)
        .map(|_| {
            (
                half * rng.sample::<f64, _>(StandardNormal),
                half * rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    SectionSample { degree, field: FieldTag::Complex, coeffs }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

fn horner_deriv(coeffs: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for k in (1..coeffs.len()).rev() {
        acc = acc * t + coeffs[k] * k as f64;
    }
    acc
}

/// Evaluates `p(t)`. For `|t| > 1` the reversed polynomial is evaluated at
/// `1/t`; values beyond the f64 range saturate to signed infinity.
pub fn evaluate(sample: &SectionSample, t: f64) -> f64 {
    let c = sample.monomial_coeffs();
    if t.abs() <= 1.0 {
        horner(&c, t)
    } else {
        let rev: Vec<f64> = c.iter().rev().copied().collect();
        let q = horner(&rev, 1.0 / t);
        q * t.powi(sample.degree as i32)
    }
}

/// Evaluates `p'(t)` with the same chart-flip strategy:
/// `p'(t) = d t^{d-1} q(1/t) - t^{d-2} q'(1/t)` where `q` is the reversal.
pub fn evaluate_deriv(sample: &SectionSample, t: f64) -> f64 {
    let c = sample.monomial_coeffs();
    if t.abs() <= 1.0 {
        horner_deriv(&c, t)
    } else {
        let rev: Vec<f64> = c.iter().rev().copied().collect();
        let u = 1.0 / t;
        let d = sample.degree as i32;
        (sample.degree as f64) * t.powi(d - 1) * horner(&rev, u)
            - t.powi(d - 2) * horner_deriv(&rev, u)
    }
}

/// Evaluates the unit-variance field at an arc-length coordinate:
/// `p(t) / (1 + t^2)^{d/2}`, computed through whichever chart keeps the
/// normalizer bounded. Shares its sign (and zeros) with `p`.
pub fn evaluate_normalized(sample: &SectionSample, u: f64) -> f64 {
    let theta = FsGeometry::angle_from_arc(u);
    let t = theta.tan();
    let c = sample.monomial_coeffs();
    if t.abs() <= 1.0 {
        let norm = (-0.5 * sample.degree as f64 * (1.0 + t * t).ln()).exp();
        horner(&c, t) * norm
    } else if t.is_infinite() {
        // The point at infinity: only the leading monomial survives.
        *c.last().unwrap()
    } else {
        let rev: Vec<f64> = c.iter().rev().copied().collect();
        let w = 1.0 / t;
        let q = horner(&rev, w);
        let norm = (-0.5 * sample.degree as f64 * (1.0 + w * w).ln()).exp();
        let sign = if t < 0.0 && sample.degree % 2 == 1 { -1.0 } else { 1.0 };
        sign * q * norm
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parallel::substream;
    use approx::assert_relative_eq;

    #[test]
    fn sampling_is_deterministic_per_stream() {
        let a = sample_real(12, &mut substream(9, 4));
        let b = sample_real(12, &mut substream(9, 4));
        assert_eq!(a.coefficients(), b.coefficients());
        let c = sample_real(12, &mut substream(9, 5));
        assert_ne!(a.coefficients(), c.coefficients());
    }

    #[test]
    fn coefficient_covariance_is_identityish() {
        let d = 10u32;
        let n = 100_000usize;
        let mut sum_sq = vec![0.0f64; (d + 1) as usize];
        let mut cross = 0.0f64;
        let mut rng = substream(31, 0);
        for _ in 0..n {
            let s = sample_real(d, &mut rng);
            for (k, &(re, _)) in s.coefficients().iter().enumerate() {
                sum_sq[k] += re * re;
            }
            cross += s.coefficients()[0].0 * s.coefficients()[1].0;
        }
        let se = (2.0 / n as f64).sqrt();
        for &s in &sum_sq {
            assert!((s / n as f64 - 1.0).abs() < 3.0 * se);
        }
        assert!((cross / n as f64).abs() < 3.0 * (1.0 / n as f64).sqrt());
    }

    #[test]
    fn complex_parts_have_half_variance() {
        let d = 8u32;
        let n = 50_000usize;
        let mut rng = substream(77, 0);
        let (mut re_sq, mut im_sq) = (0.0f64, 0.0f64);
        for _ in 0..n {
            let s = sample_complex(d, &mut rng);
            let (re, im) = s.coefficients()[3];
            re_sq += re * re;
            im_sq += im * im;
        }
        let se = 0.5 * (2.0 / n as f64).sqrt();
        assert!((re_sq / n as f64 - 0.5).abs() < 3.0 * se);
        assert!((im_sq / n as f64 - 0.5).abs() < 3.0 * se);
    }

    #[test]
    fn constant_and_leading_monomials() {
        let mut c = vec![0.0; 8];
        c[0] = 1.0;
        let s = SectionSample::from_real_coefficients(7, c);
        for &t in &[-3.0, -0.5, 0.0, 0.2, 10.0] {
            assert_relative_eq!(evaluate(&s, t), 1.0, max_relative = 1e-12);
        }

        let mut c = vec![0.0; 8];
        c[7] = 1.0; // weight sqrt(C(d,d)) = 1
        let s = SectionSample::from_real_coefficients(7, c);
        for &t in &[-1.5, 0.3, 2.0] {
            assert_relative_eq!(evaluate(&s, t), t.powi(7), max_relative = 1e-12);
        }
    }

    #[test]
    fn evaluation_variance_matches_kernel_diagonal() {
        // Var p(t) = (1 + t^2)^d at t = 0.3, d = 50.
        let d = 50u32;
        let t = 0.3f64;
        let n = 100_000usize;
        let mut rng = substream(41, 0);
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let s = sample_real(d, &mut rng);
            let v = evaluate(&s, t);
            sum_sq += v * v;
        }
        let target = (1.0 + t * t).powi(d as i32);
        let est = sum_sq / n as f64;
        let se = target * (2.0 / n as f64).sqrt();
        assert!((est - target).abs() < 3.0 * se, "{est} vs {target}");
    }

    #[test]
    fn normalized_field_shares_signs_and_has_unit_variance() {
        let d = 100u32;
        let mut rng = substream(53, 0);
        let s = sample_real(d, &mut rng);
        for i in 0..100 {
            let u = (i as f64 + 0.3) / 100.0 * FsGeometry::TOTAL_LENGTH;
            let t = FsGeometry::affine_from_arc(u);
            let lhs = evaluate_normalized(&s, u);
            let rhs = evaluate(&s, t);
            if rhs.is_finite() && rhs != 0.0 {
                assert_eq!(lhs.signum(), rhs.signum(), "sign mismatch at u = {u}");
            }
        }
        let n = 50_000usize;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let s = sample_real(d, &mut rng);
            let v = evaluate_normalized(&s, 0.5);
            sum_sq += v * v;
        }
        let est = sum_sq / n as f64;
        assert!((est - 1.0).abs() < 3.0 * (2.0 / n as f64).sqrt(), "variance {est}");
        let z = SectionSample::from_real_coefficients(3, vec![0.0; 4]);
        assert_eq!(evaluate_normalized(&z, 0.7), 0.0);
    }

    #[test]
    fn flip_branch_matches_direct_horner() {
        let s = sample_real(20, &mut substream(8, 0));
        let c = s.monomial_coeffs();
        for &t in &[1.5f64, -2.2, 4.0] {
            let direct = c
                .iter()
                .enumerate()
                .map(|(k, &ck)| ck * t.powi(k as i32))
                .sum::<f64>();
            assert_relative_eq!(evaluate(&s, t), direct, max_relative = 1e-10);
            let h = 1e-6;
            let fd = (evaluate(&s, t + h) - evaluate(&s, t - h)) / (2.0 * h);
            assert_relative_eq!(evaluate_deriv(&s, t), fd, max_relative = 1e-5);
        }
    }

    #[test]
    fn normalized_correlation_matches_kernel() {
        // Links ensemble to kernels: empirical correlation at an angle gap
        // matches cos^d.
        let d = 30u32;
        let dtheta = 0.21f64;
        let u1 = 0.4f64;
        let u2 = u1 + FsGeometry::arc_from_angle(dtheta);
        let n = 60_000usize;
        let mut rng = substream(64, 0);
        let (mut s11, mut s22, mut s12) = (0.0f64, 0.0, 0.0);
        for _ in 0..n {
            let s = sample_real(d, &mut rng);
            let a = evaluate_normalized(&s, u1);
            let b = evaluate_normalized(&s, u2);
            s11 += a * a;
            s22 += b * b;
            s12 += a * b;
        }
        let corr = s12 / (s11 * s22).sqrt();
        let target = dtheta.cos().powi(d as i32);
        let se = (1.0 - target * target) / (n as f64).sqrt();
        assert!((corr - target).abs() < 4.0 * se, "corr {corr} vs {target}");
    }
}
