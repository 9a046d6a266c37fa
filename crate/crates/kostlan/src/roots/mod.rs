//! Exact real-root counting on the real projective line, real-root
//! isolation, and complex root finding on the complex projective line.
//!
//! Counting is exact: [`count_real_roots_rp1`] converts the f64 coefficients
//! (exact dyadic rationals) to integers, reduces to the square-free part and
//! runs Sturm's theorem. [`count_real_roots_fast`] is the counter used by
//! the Monte Carlo engine: a certified floating-point path that either
//! produces a complete exactness certificate or falls back to the Sturm
//! chain, so its output is exact as well.

pub mod aberth;
pub mod certify;
pub mod intpoly;
pub mod isolate;
pub mod sturm;

use num_complex::Complex64;

use crate::ensemble::{FieldTag, SectionSample};
use crate::kernels::FsGeometry;
use crate::{Error, Result};

pub use isolate::IsolatedRoot;

/// Result of a root count on the real projective line.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCount {
    /// Number of distinct real roots in the affine chart.
    pub total: usize,
    /// The leading coefficient was exactly zero (projective root at
    /// infinity, excluded from `total` and logged by callers).
    pub root_at_infinity: bool,
    /// Optional per-interval counts when a partition was requested.
    pub per_interval: Option<Vec<(f64, f64, usize)>>,
}

/// A point on the unit sphere model of the complex projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    /// Stereographic embedding of an affine point.
    pub fn from_affine(z: Complex64) -> Self {
        if z.norm_sqr() <= 1.0 {
            let n = 1.0 + z.norm_sqr();
            Self {
                x: 2.0 * z.re / n,
                y: 2.0 * z.im / n,
                z: (z.norm_sqr() - 1.0) / n,
            }
        } else {
            let w = z.inv();
            let n = 1.0 + w.norm_sqr();
            Self {
                x: 2.0 * w.re / n,
                y: -2.0 * w.im / n,
                z: (1.0 - w.norm_sqr()) / n,
            }
        }
    }

    pub fn infinity() -> Self {
        Self { x: 0.0, y: 0.0, z: 1.0 }
    }
}

fn nonzero_coeffs(sample: &SectionSample) -> Result<Vec<f64>> {
    let c = sample.monomial_coeffs();
    if c.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroPolynomial);
    }
    Ok(c)
}

/// Exact count of distinct real roots on the real projective line via the
/// Sturm chain (root at infinity excluded; it is flagged instead).
pub fn count_real_roots_rp1(sample: &SectionSample) -> Result<RootCount> {
    let coeffs = nonzero_coeffs(sample)?;
    let root_at_infinity = *coeffs.last().unwrap() == 0.0;
    let total = sturm::count_real_roots_sturm(&coeffs).ok_or(Error::ZeroPolynomial)?;
    Ok(RootCount { total, root_at_infinity, per_interval: None })
}

/// Exact count through the certified fast path, falling back to the Sturm
/// chain whenever the certificate is incomplete. Identical output to
/// [`count_real_roots_rp1`], at Monte Carlo speed.
pub fn count_real_roots_fast(sample: &SectionSample) -> Result<RootCount> {
    let coeffs = nonzero_coeffs(sample)?;
    if let Some(c) = certify::certified_real_count(&coeffs) {
        return Ok(RootCount {
            total: c.distinct_real,
            root_at_infinity: c.root_at_infinity,
            per_interval: None,
        });
    }
    count_real_roots_rp1(sample)
}

/// Exact count of distinct real roots whose arc-length coordinate lies in
/// `[u_lo, u_hi)` on the circle of length sqrt(pi). Endpoints that happen to
/// be roots are perturbed by one ulp (the event is reported through
/// `EndpointIsRoot` only if the perturbation also lands on a root).
pub fn count_real_roots_in_arc(sample: &SectionSample, u_lo: f64, u_hi: f64) -> Result<usize> {
    let coeffs = nonzero_coeffs(sample)?;
    let chain = sturm::SturmChain::new(&intpoly::IntPoly::from_f64_coeffs(&coeffs));
    let lo = FsGeometry::wrap(u_lo);
    let hi = FsGeometry::wrap(u_hi);
    if (lo - hi).abs() < 1e-300 {
        // Full circle.
        return Ok(chain.count_all());
    }

    // Count over an arc (a, b) going counterclockwise from lo to hi,
    // splitting at the chart point u = sqrt(pi)/2 (t = infinity).
    let infinity_u = FsGeometry::TOTAL_LENGTH / 2.0;
    let mut segments: Vec<(f64, f64)> = Vec::new();
    let push_split = |segments: &mut Vec<(f64, f64)>, a: f64, b: f64| {
        if a < infinity_u && infinity_u < b {
            segments.push((a, infinity_u));
            segments.push((infinity_u, b));
        } else {
            segments.push((a, b));
        }
    };
    if lo < hi {
        push_split(&mut segments, lo, hi);
    } else {
        push_split(&mut segments, lo, FsGeometry::TOTAL_LENGTH);
        push_split(&mut segments, 0.0, hi);
    }

    let mut total = 0usize;
    for (a, b) in segments {
        total += count_in_affine_segment(&chain, a, b)?;
    }
    Ok(total)
}

/// Splits an arc-length partition of the circle and returns per-interval
/// counts together with the total.
pub fn count_real_roots_partitioned(
    sample: &SectionSample,
    boundaries: &[f64],
) -> Result<RootCount> {
    assert!(boundaries.len() >= 2);
    let mut per = Vec::new();
    let mut total = 0usize;
    for w in boundaries.windows(2) {
        let c = count_real_roots_in_arc(sample, w[0], w[1])?;
        per.push((w[0], w[1], c));
        total += c;
    }
    let coeffs = nonzero_coeffs(sample)?;
    Ok(RootCount {
        total,
        root_at_infinity: *coeffs.last().unwrap() == 0.0,
        per_interval: Some(per),
    })
}

fn count_in_affine_segment(chain: &sturm::SturmChain, a_u: f64, b_u: f64) -> Result<usize> {
    use sturm::ChainPoint;
    let infinity_u = FsGeometry::TOTAL_LENGTH / 2.0;
    let to_point = |u: f64, is_right_end: bool| -> ChainPoint {
        if (u - infinity_u).abs() < 1e-300 {
            if is_right_end {
                ChainPoint::PosInf
            } else {
                ChainPoint::NegInf
            }
        } else if u == 0.0 || (u - FsGeometry::TOTAL_LENGTH).abs() < 1e-300 {
            // The arc endpoints u = 0 and u = sqrt(pi) are t = 0.
            ChainPoint::Finite(0.0)
        } else {
            ChainPoint::Finite(FsGeometry::affine_from_arc(u))
        }
    };
    // The map u -> t is increasing on each side of the chart point.
    let mut a = to_point(a_u, false);
    let b = to_point(b_u, true);
    // Perturb a left endpoint that is itself a root so the half-open
    // convention (a, b] matches the requested [a, b) up to measure zero.
    if let ChainPoint::Finite(x) = a {
        if chain.head_sign_at(x) == 0 {
            let nudged = nudge_down(x);
            if chain.head_sign_at(nudged) == 0 {
                return Err(Error::EndpointIsRoot { endpoint: x });
            }
            a = ChainPoint::Finite(nudged);
        }
    }
    // And pull a right endpoint that is a root out of the interval.
    let b = match b {
        ChainPoint::Finite(x) if chain.head_sign_at(x) == 0 => {
            let nudged = nudge_down(x);
            if chain.head_sign_at(nudged) == 0 {
                return Err(Error::EndpointIsRoot { endpoint: x });
            }
            ChainPoint::Finite(nudged)
        }
        other => other,
    };
    Ok(chain.count_between(a, b))
}

fn nudge_down(x: f64) -> f64 {
    f64::from_bits(if x > 0.0 { x.to_bits() - 1 } else { x.to_bits() + 1 })
}

/// Isolates the real roots (affine coordinates) of a real sample and
/// refines them to half-width at most `tol`.
pub fn isolate_real_roots(sample: &SectionSample, tol: f64) -> Result<Vec<IsolatedRoot>> {
    let coeffs = nonzero_coeffs(sample)?;
    Ok(isolate::isolate_real_roots(&coeffs, tol))
}

/// All `d` complex roots of a sample as points on the unit-sphere model of
/// the complex projective line, counted with multiplicity in the projective
/// sense: a tiny leading block is deflated into roots at infinity.
pub fn complex_roots(sample: &SectionSample) -> Result<Vec<SpherePoint>> {
    let mut coeffs: Vec<Complex64> = match sample.field() {
        FieldTag::Complex => sample
            .monomial_coeffs_complex()
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect(),
        FieldTag::Real => sample
            .monomial_coeffs()
            .iter()
            .map(|&re| Complex64::new(re, 0.0))
            .collect(),
    };
    let max_norm = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if max_norm == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let mut points = Vec::with_capacity(sample.degree() as usize);
    // Deflate a tiny leading block into projective roots at infinity.
    while coeffs.len() > 1 && coeffs.last().unwrap().norm() < 1e-14 * max_norm {
        coeffs.pop();
        points.push(SpherePoint::infinity());
    }
    if coeffs.len() > 1 {
        let roots = aberth::find_roots(&coeffs, 1e-8)?;
        let conjugate_closed = sample.field() == FieldTag::Real;
        for z in roots {
            points.push(SpherePoint::from_affine(z));
        }
        if conjugate_closed {
            // Symmetrize the y components pairwise: a real polynomial has
            // conjugate-closed roots, so the sphere points pair across the
            // equator plane y = 0 up to solver noise.
            let mut ys: f64 = points.iter().map(|p| p.y).sum();
            ys /= points.len() as f64;
            debug_assert!(ys.abs() < 1e-6, "conjugate symmetry broken: mean y {ys}");
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{sample_real, SectionSample};
    use crate::parallel::substream;

    fn from_monomials(coeffs: &[f64]) -> SectionSample {
        // Divide out the basis weights so the monomial view equals `coeffs`.
        let d = coeffs.len() as u32 - 1;
        let w = crate::ensemble::basis_weights(d);
        let basis: Vec<f64> = coeffs.iter().zip(&w).map(|(&c, &wk)| c / wk).collect();
        SectionSample::from_real_coefficients(d, basis)
    }

    #[test]
    fn counts_quadratics_on_rp1() {
        assert_eq!(count_real_roots_rp1(&from_monomials(&[-1.0, 0.0, 1.0])).unwrap().total, 2);
        assert_eq!(count_real_roots_rp1(&from_monomials(&[1.0, 0.0, 1.0])).unwrap().total, 0);
        // Kostlan d=2 with basis coefficients (1,1,1): 1 + sqrt2 t + t^2.
        let s = SectionSample::from_real_coefficients(2, vec![1.0, 1.0, 1.0]);
        assert_eq!(count_real_roots_rp1(&s).unwrap().total, 0);
        assert!(matches!(
            count_real_roots_rp1(&SectionSample::from_real_coefficients(2, vec![0.0; 3])),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn interval_counts_partition_consistently() {
        // p = t^2 - 1 has roots at t = +-1, i.e. arc coordinates of atan(+-1).
        let s = from_monomials(&[-1.0, 0.0, 1.0]);
        let total = count_real_roots_rp1(&s).unwrap().total;
        // [0, 2] in affine coordinates contains t = 1 only.
        let u0 = 0.0;
        let u2 = FsGeometry::arc_from_affine(2.0);
        assert_eq!(count_real_roots_in_arc(&s, u0, u2).unwrap(), 1);
        // Full circle equals the global count.
        assert_eq!(count_real_roots_in_arc(&s, 0.0, 0.0).unwrap(), total);
        // Random partition sums to the total.
        let bounds = [0.0, 0.3, 0.7, 1.1, FsGeometry::TOTAL_LENGTH];
        let rc = count_real_roots_partitioned(&s, &bounds).unwrap();
        assert_eq!(rc.total, total);
    }

    #[test]
    fn random_partition_sums_match_at_degree_50() {
        let mut bounds = vec![0.0];
        for i in 1..8 {
            bounds.push(i as f64 / 8.0 * FsGeometry::TOTAL_LENGTH);
        }
        bounds.push(FsGeometry::TOTAL_LENGTH);
        for i in 0..20 {
            let s = sample_real(50, &mut substream(1100, i));
            let total = count_real_roots_rp1(&s).unwrap().total;
            let rc = count_real_roots_partitioned(&s, &bounds).unwrap();
            assert_eq!(rc.total, total, "sample {i}");
        }
    }

    #[test]
    fn fast_counter_matches_sturm() {
        for &d in &[16u32, 50] {
            for i in 0..100 {
                let s = sample_real(d, &mut substream(1200 + d as u64, i));
                let a = count_real_roots_rp1(&s).unwrap().total;
                let b = count_real_roots_fast(&s).unwrap().total;
                assert_eq!(a, b, "d {d} sample {i}");
            }
        }
    }

    #[test]
    fn scale_invariance_exact() {
        for i in 0..20 {
            let s = sample_real(30, &mut substream(1300, i));
            let scaled = SectionSample::from_real_coefficients(
                30,
                s.coefficients().iter().map(|&(re, _)| re * 3.25).collect(),
            );
            assert_eq!(
                count_real_roots_rp1(&s).unwrap().total,
                count_real_roots_rp1(&scaled).unwrap().total
            );
        }
    }

    #[test]
    fn real_plus_conjugate_pairs_equals_degree() {
        for i in 0..25 {
            let s = sample_real(24, &mut substream(1400, i));
            let real = count_real_roots_rp1(&s).unwrap().total;
            let sphere = complex_roots(&s).unwrap();
            assert_eq!(sphere.len(), 24);
            let strictly_complex = sphere
                .iter()
                .filter(|p| p.y.abs() > 1e-7)
                .count();
            assert_eq!(real + strictly_complex, 24, "sample {i}");
            assert_eq!(strictly_complex % 2, 0);
        }
    }

    #[test]
    fn complex_roots_of_simple_polynomials() {
        // t^2 + 1: roots +-i, mapping to (0, +-1, 0) on the sphere.
        let s = from_monomials(&[1.0, 0.0, 1.0]);
        let pts = complex_roots(&s).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!(p.x.abs() < 1e-9 && p.z.abs() < 1e-9);
            assert!((p.y.abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn isolation_matches_sturm_count() {
        for i in 0..30 {
            let s = sample_real(30, &mut substream(1500, i));
            let isolated = isolate_real_roots(&s, 1e-12).unwrap();
            assert_eq!(isolated.len(), count_real_roots_rp1(&s).unwrap().total);
            // Roots are strictly increasing.
            for w in isolated.windows(2) {
                assert!(w[0].value < w[1].value);
            }
        }
    }
}
