//! Covariance-kernel oracles with mixed partial derivatives of any order,
//! plus the Fubini-Study geometry of the real projective line in the
//! normalization where its total length is sqrt(pi).
//!
//! Three kernels are provided, all stationary (they depend on coordinates
//! only through the gap `x - y`):
//!
//! - [`KostlanKernel`]: the normalized (unit-variance) degree-d Kostlan
//!   correlation in arc-length coordinates, `cos^d(sqrt(pi) * gap)`;
//! - [`BargmannFockKernel`]: the local model `(1/pi) exp(-(Z-W)^2/2)` in
//!   scaled coordinates;
//! - [`ScaledKostlanKernel`]: the Kostlan kernel rescaled so that it is
//!   pointwise comparable to the Bargmann-Fock kernel,
//!   `(1/pi) cos^d((Z-W)/sqrt(d))`.
//!
//! Derivatives of `cos^d` are evaluated through the spectral form
//! `cos^d t = 2^{-d} sum_j C(d,j) cos((2j-d) t)`, whose weights are computed
//! once per degree in the log domain. Each term is bounded, so the n-th
//! derivative `sum_j w_j (2j-d)^n cos((2j-d) t + n pi/2)` is accurate in the
//! absolute sense at every gap; the exponentially small far-gap values enter
//! all downstream densities only quadratically, which keeps the resulting
//! relative errors negligible.

use crate::stats::ln_gamma;
use crate::{Error, Result};

/// Total Fubini-Study length of the real projective line.
pub const RP1_LENGTH: f64 = 1.772_453_850_905_516; // sqrt(pi)

const SQRT_PI: f64 = RP1_LENGTH;

/// Geometry of the real projective line: conversions between the affine
/// coordinate `t`, the angle `theta = atan t` and the arc-length coordinate
/// `u = theta / sqrt(pi)`, together with circle distances.
#[derive(Debug, Clone, Copy)]
pub struct FsGeometry;

impl FsGeometry {
    /// Total length sqrt(pi).
    pub const TOTAL_LENGTH: f64 = RP1_LENGTH;

    /// Arc length from the affine coordinate, wrapped into [0, sqrt(pi)).
    pub fn arc_from_affine(t: f64) -> f64 {
        Self::wrap(t.atan() / SQRT_PI)
    }

    /// Affine coordinate from arc length; the points `u = sqrt(pi)/2`
    /// (infinity in the chart) map to an infinite value.
    pub fn affine_from_arc(u: f64) -> f64 {
        (SQRT_PI * u).tan()
    }

    /// Angle coordinate `theta` in [0, pi) from arc length.
    pub fn angle_from_arc(u: f64) -> f64 {
        SQRT_PI * u
    }

    pub fn arc_from_angle(theta: f64) -> f64 {
        Self::wrap(theta / SQRT_PI)
    }

    /// Wraps an arc coordinate into the fundamental domain [0, sqrt(pi)).
    pub fn wrap(u: f64) -> f64 {
        let mut v = u % RP1_LENGTH;
        if v < 0.0 {
            v += RP1_LENGTH;
        }
        v
    }

    /// Length element per affine coordinate: `du/dt = 1/(sqrt(pi) (1+t^2))`.
    pub fn length_element_affine(t: f64) -> f64 {
        1.0 / (SQRT_PI * (1.0 + t * t))
    }

    /// Signed shortest displacement from `from` to `to` on the circle,
    /// in (-sqrt(pi)/2, sqrt(pi)/2].
    pub fn circle_delta(from: f64, to: f64) -> f64 {
        let mut d = (to - from) % RP1_LENGTH;
        if d > RP1_LENGTH / 2.0 {
            d -= RP1_LENGTH;
        } else if d <= -RP1_LENGTH / 2.0 {
            d += RP1_LENGTH;
        }
        d
    }
}

/// Geodesic distance between two arc-length coordinates on the circle of
/// length sqrt(pi); at most sqrt(pi)/2.
pub fn geodesic_distance(u1: f64, u2: f64) -> f64 {
    FsGeometry::circle_delta(u1, u2).abs()
}

/// The far-diagonal threshold `log d / (c' sqrt(d))` in arc-length units.
pub fn far_diagonal_threshold(d: u32, c_prime: f64) -> f64 {
    assert!(d >= 1 && c_prime > 0.0);
    (d as f64).ln() / (c_prime * (d as f64).sqrt())
}

/// A stationary covariance kernel with derivatives: `K(x, y) = G(x - y)` and
/// `d^a/dx^a d^b/dy^b K = (-1)^b G^(a+b)(x - y)`.
pub trait KernelOracle: Sync {
    fn description(&self) -> &'static str;

    /// Largest derivative order the oracle can produce per slot pair
    /// (the cap applies to `a + b`).
    fn max_deriv_order(&self) -> usize;

    /// Derivatives `G^(n)(gap)` for `n = 0..=max_order` of the gap function.
    fn gap_table(&self, gap: f64, max_order: usize) -> Result<Vec<f64>>;

    /// Typical growth rate of successive derivatives per coordinate unit;
    /// used to decide between series and tableau divided differences.
    fn deriv_scale(&self) -> f64;

    /// Checks that a coordinate lies inside the oracle's chart.
    fn check_coordinate(&self, _x: f64) -> Result<()> {
        Ok(())
    }

    /// Mixed partial `d^a/dx^a d^b/dy^b K(x, y)`.
    fn eval(&self, x: f64, y: f64, a: usize, b: usize) -> Result<f64> {
        self.check_coordinate(x)?;
        self.check_coordinate(y)?;
        let table = self.gap_table(x - y, a + b)?;
        let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * table[a + b])
    }
}

/// Spectral representation of `cos^d` and its derivatives:
/// weights `w_j = C(d,j)/2^d` and frequencies `m_j = 2j - d`.
#[derive(Debug, Clone)]
struct CosPowerSpectrum {
    degree: u32,
    log_weights: Vec<f64>,
    freqs: Vec<f64>,
    order_cap: usize,
}

impl CosPowerSpectrum {
    fn new(degree: u32) -> Self {
        let d = degree as f64;
        let ln2 = std::f64::consts::LN_2;
        let lg_d1 = ln_gamma(d + 1.0);
        let mut log_weights = Vec::with_capacity(degree as usize + 1);
        let mut freqs = Vec::with_capacity(degree as usize + 1);
        for j in 0..=degree {
            let lj = j as f64;
            log_weights.push(lg_d1 - ln_gamma(lj + 1.0) - ln_gamma(d - lj + 1.0) - d * ln2);
            freqs.push(2.0 * lj - d);
        }
        // Largest n with |w_j m_j^n| representable for every j; the binding
        // term is j = 0 where w = 2^-d and |m| = d.
        let order_cap = if degree >= 2 {
            (((660.0 + d * ln2) / d.ln()).floor() as usize).min(512)
        } else {
            512
        };
        Self { degree, log_weights, freqs, order_cap }
    }

    /// `F^(n)(theta)` for `n = 0..=max_order`, `F = cos^degree`.
    fn derivs(&self, theta: f64, max_order: usize) -> Result<Vec<f64>> {
        if max_order > self.order_cap {
            return Err(Error::DegreeTooLargeForOrder {
                degree: self.degree,
                order: max_order,
            });
        }
        let mut out = vec![0.0f64; max_order + 1];
        for (lw, &m) in self.log_weights.iter().zip(&self.freqs) {
            let phase = m * theta;
            let (s, c) = phase.sin_cos();
            // cos(phase + n pi/2) cycles through c, -s, -c, s.
            let cycle = [c, -s, -c, s];
            let mut w = lw.exp();
            for (n, slot) in out.iter_mut().enumerate() {
                *slot += w * cycle[n % 4];
                w *= m;
            }
        }
        Ok(out)
    }
}

/// Normalized Kostlan kernel in arc-length coordinates:
/// `K(u1, u2) = cos^d(sqrt(pi) (u1 - u2))`, unit variance on the diagonal.
#[derive(Debug, Clone)]
pub struct KostlanKernel {
    spectrum: CosPowerSpectrum,
    max_order: usize,
}

impl KostlanKernel {
    /// Builds the oracle for degree `d` with derivatives up to `max_order`.
    pub fn new(degree: u32, max_order: usize) -> Result<Self> {
        assert!(degree >= 1);
        let spectrum = CosPowerSpectrum::new(degree);
        if max_order > spectrum.order_cap {
            return Err(Error::DegreeTooLargeForOrder { degree, order: max_order });
        }
        Ok(Self { spectrum, max_order })
    }

    pub fn degree(&self) -> u32 {
        self.spectrum.degree
    }

    /// Correlation at an angle gap, evaluated in the log domain. Used as an
    /// independent check of the spectral sum.
    pub fn correlation_at_angle(degree: u32, dtheta: f64) -> f64 {
        let c = dtheta.cos();
        if c == 0.0 {
            return 0.0;
        }
        let sign = if c < 0.0 && degree % 2 == 1 { -1.0 } else { 1.0 };
        sign * ((degree as f64) * c.abs().ln()).exp()
    }
}

impl KernelOracle for KostlanKernel {
    fn description(&self) -> &'static str {
        "kostlan"
    }

    fn max_deriv_order(&self) -> usize {
        self.max_order
    }

    fn gap_table(&self, gap: f64, max_order: usize) -> Result<Vec<f64>> {
        if max_order > self.max_order {
            return Err(Error::InsufficientDerivOrder {
                needed: max_order,
                available: self.max_order,
            });
        }
        // G^(n)(g) = pi^(n/2) F^(n)(sqrt(pi) g).
        let mut table = self.spectrum.derivs(SQRT_PI * gap, max_order)?;
        let mut scale = 1.0;
        for value in table.iter_mut() {
            *value *= scale;
            scale *= SQRT_PI;
        }
        Ok(table)
    }

    fn deriv_scale(&self) -> f64 {
        (std::f64::consts::PI * self.spectrum.degree as f64).sqrt()
    }
}

/// The normalized correlation of the Kostlan ensemble in the affine chart:
/// `(1 + s t)^d / ((1+s^2)(1+t^2))^{d/2}`, evaluated in the log domain.
/// Independent route used to cross-check [`KostlanKernel`].
pub fn kostlan_correlation_affine(degree: u32, s: f64, t: f64) -> f64 {
    let d = degree as f64;
    let num = 1.0 + s * t;
    if num == 0.0 {
        return 0.0;
    }
    let sign = if num < 0.0 && degree % 2 == 1 { -1.0 } else { 1.0 };
    let log_r = d * num.abs().ln()
        - 0.5 * d * ((1.0 + s * s).ln() + (1.0 + t * t).ln());
    sign * log_r.exp()
}

/// Bargmann-Fock kernel `K(Z, W) = (1/pi) exp(-(Z-W)^2 / 2)` with
/// Hermite-polynomial derivatives.
#[derive(Debug, Clone, Default)]
pub struct BargmannFockKernel;

impl BargmannFockKernel {
    pub fn new() -> Self {
        Self
    }
}

impl KernelOracle for BargmannFockKernel {
    fn description(&self) -> &'static str {
        "bargmann-fock"
    }

    fn max_deriv_order(&self) -> usize {
        160
    }

    fn gap_table(&self, gap: f64, max_order: usize) -> Result<Vec<f64>> {
        if max_order > self.max_deriv_order() {
            return Err(Error::InsufficientDerivOrder {
                needed: max_order,
                available: self.max_deriv_order(),
            });
        }
        // d^n/dg^n e^{-g^2/2} = h_n(g) e^{-g^2/2} with
        // h_0 = 1, h_1 = -g, h_{n+1} = -g h_n - n h_{n-1}.
        let envelope = (-0.5 * gap * gap).exp() / std::f64::consts::PI;
        let mut table = Vec::with_capacity(max_order + 1);
        let mut h_prev = 1.0f64;
        table.push(envelope);
        if max_order >= 1 {
            let mut h = -gap;
            table.push(h * envelope);
            for n in 1..max_order {
                let h_next = -gap * h - n as f64 * h_prev;
                h_prev = h;
                h = h_next;
                table.push(h * envelope);
            }
        }
        Ok(table)
    }

    fn deriv_scale(&self) -> f64 {
        1.0
    }
}

/// Scaled Kostlan kernel in scaled normal coordinates, comparable pointwise
/// to the Bargmann-Fock kernel: `K_d(Z, W) = (1/pi) cos^d((Z-W)/sqrt(d))`.
#[derive(Debug, Clone)]
pub struct ScaledKostlanKernel {
    spectrum: CosPowerSpectrum,
    max_order: usize,
}

impl ScaledKostlanKernel {
    pub fn new(degree: u32, max_order: usize) -> Result<Self> {
        assert!(degree >= 4, "the scaled chart needs degree >= 4");
        let spectrum = CosPowerSpectrum::new(degree);
        if max_order > spectrum.order_cap {
            return Err(Error::DegreeTooLargeForOrder { degree, order: max_order });
        }
        Ok(Self { spectrum, max_order })
    }

    pub fn degree(&self) -> u32 {
        self.spectrum.degree
    }

    fn chart_limit(&self) -> f64 {
        std::f64::consts::FRAC_PI_2 * (self.spectrum.degree as f64).sqrt()
    }
}

impl KernelOracle for ScaledKostlanKernel {
    fn description(&self) -> &'static str {
        "scaled-kostlan"
    }

    fn max_deriv_order(&self) -> usize {
        self.max_order
    }

    fn check_coordinate(&self, x: f64) -> Result<()> {
        let limit = self.chart_limit();
        if x.abs() > limit {
            return Err(Error::ChartOverflow { coord: x, limit });
        }
        Ok(())
    }

    fn gap_table(&self, gap: f64, max_order: usize) -> Result<Vec<f64>> {
        if max_order > self.max_order {
            return Err(Error::InsufficientDerivOrder {
                needed: max_order,
                available: self.max_order,
            });
        }
        let sqrt_d = (self.spectrum.degree as f64).sqrt();
        let mut table = self.spectrum.derivs(gap / sqrt_d, max_order)?;
        let mut scale = 1.0 / std::f64::consts::PI;
        for value in table.iter_mut() {
            *value *= scale;
            scale /= sqrt_d;
        }
        Ok(table)
    }

    fn deriv_scale(&self) -> f64 {
        1.0
    }
}

/// Convenience wrapper for a single scaled-kernel value; the Kostlan
/// ensemble is rotation invariant, so the value does not depend on the base
/// point of the chart.
pub fn scaled_kernel_value(degree: u32, z: f64, w: f64) -> Result<f64> {
    let k = ScaledKostlanKernel::new(degree, 0)?;
    k.eval(z, w, 0, 0)
}

/// Sup over a `grid_n x grid_n` grid in `B(0,radius)^2` of the deviation
/// between the scaled Kostlan kernel and the Bargmann-Fock kernel, over all
/// mixed derivatives with `a + b <= deriv_order`.
pub fn bergman_deviation(degree: u32, radius: f64, grid_n: usize, deriv_order: usize) -> Result<f64> {
    assert!(radius >= 0.0);
    assert!(radius <= (degree as f64).ln().max(1.0), "radius must stay within the chart scale");
    let scaled = ScaledKostlanKernel::new(degree, deriv_order)?;
    let bf = BargmannFockKernel::new();
    let points: Vec<f64> = if grid_n <= 1 || radius == 0.0 {
        vec![0.0]
    } else {
        (0..grid_n)
            .map(|i| -radius + 2.0 * radius * i as f64 / (grid_n - 1) as f64)
            .collect()
    };
    let mut sup: f64 = 0.0;
    for &z in &points {
        for &w in &points {
            let ts = scaled.gap_table(z - w, deriv_order)?;
            let tb = bf.gap_table(z - w, deriv_order)?;
            for n in 0..=deriv_order {
                sup = sup.max((ts[n] - tb[n]).abs());
            }
        }
    }
    Ok(sup)
}
