//! Certified fast real-root counting.
//!
//! The counter runs Aberth-Ehrlich in f64, then builds an exactness
//! certificate: every approximation gets an a-posteriori disk
//! `D(z_i, d |p(z_i)/p'(z_i)|)` (with floating-point evaluation errors
//! absorbed into the radius) that is guaranteed to contain at least one
//! root; if the d disks are pairwise disjoint each contains exactly one, so
//! all roots are simple and localized. Disks clear of the real axis are
//! non-real; disks touching it are resolved by exact dyadic sign brackets
//! whose endpoints lie outside every disk (hence provably off every root).
//! Any gap in the certificate returns `None` and the caller falls back to
//! the exact Sturm chain.

use num_complex::Complex64;

use super::aberth::find_roots;
use super::sturm::{certified_horner_sign, exact_sign_at};

#[derive(Debug, Clone, Copy)]
pub struct CertifiedCount {
    pub distinct_real: usize,
    /// Exact zero leading coefficients were trimmed (projective root at
    /// infinity, excluded from the count; measure zero, logged upstream).
    pub root_at_infinity: bool,
}

/// One certified root disk in the z-plane.
#[derive(Debug, Clone, Copy)]
struct Disk {
    re: f64,
    im: f64,
    radius: f64,
}

/// `(value magnitude bound, derivative magnitude bound, value, derivative)`
/// of a real polynomial at a complex point, fused Horner.
fn eval_with_bounds(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64, f64, f64) {
    let az = z.norm();
    let mut p = Complex64::new(*coeffs.last().unwrap(), 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut mag_p = p.norm();
    let mut mag_dp = 0.0f64;
    for &c in coeffs.iter().rev().skip(1) {
        dp = dp * z + p;
        mag_dp = mag_dp * az + mag_p;
        p = p * z + c;
        mag_p = mag_p * az + c.abs();
    }
    (p, dp, mag_p, mag_dp)
}

/// Certified inclusion disk around an approximation, or `None` when the
/// derivative cannot be bounded away from zero.
fn inclusion_disk(coeffs: &[f64], rev: &[f64], z: Complex64) -> Option<Disk> {
    let d = coeffs.len() - 1;
    let gamma = 4.0 * (d as f64 + 1.0) * f64::EPSILON;
    if z.norm_sqr() <= 1.0 {
        let (p, dp, mag_p, mag_dp) = eval_with_bounds(coeffs, z);
        let denom = dp.norm() - gamma * mag_dp;
        if denom <= 0.0 {
            return None;
        }
        let radius = d as f64 * (p.norm() + gamma * mag_p) / denom;
        Some(Disk { re: z.re, im: z.im, radius })
    } else {
        // Work on the reversal at w = 1/z and map the disk back through the
        // inversion: D(c, r) -> D(conj(c)/(|c|^2 - r^2), r/(|c|^2 - r^2)).
        let w = z.inv();
        let (q, dq, mag_q, mag_dq) = eval_with_bounds(rev, w);
        let denom = dq.norm() - gamma * mag_dq;
        if denom <= 0.0 {
            return None;
        }
        let r_w = d as f64 * (q.norm() + gamma * mag_q) / denom;
        let scale = w.norm_sqr() - r_w * r_w;
        if scale <= 0.0 {
            return None; // the w-disk reaches the point at infinity
        }
        Some(Disk {
            re: w.re / scale,
            im: -w.im / scale,
            radius: r_w / scale,
        })
    }
}

fn disks_disjoint(disks: &[Disk]) -> bool {
    // Sweep by real part; disks further apart than the sum of the two
    // largest radii cannot intersect.
    let mut order: Vec<usize> = (0..disks.len()).collect();
    order.sort_by(|&a, &b| disks[a].re.partial_cmp(&disks[b].re).unwrap());
    let max_r = disks.iter().fold(0.0f64, |m, d| m.max(d.radius));
    for (pos, &i) in order.iter().enumerate() {
        for &j in order.iter().skip(pos + 1) {
            let dx = disks[j].re - disks[i].re;
            if dx > disks[i].radius + max_r {
                break;
            }
            let dy = disks[j].im - disks[i].im;
            let rr = disks[i].radius + disks[j].radius;
            if dx * dx + dy * dy <= rr * rr {
                return false;
            }
        }
    }
    true
}

/// Sign of `p` at a point certified to be off every root: f64 filter first,
/// exact dyadic evaluation as the fallback.
fn off_root_sign(coeffs: &[f64], x: f64) -> i8 {
    if let Some(s) = certified_horner_sign(coeffs, 0.0, x) {
        return s;
    }
    exact_sign_at(coeffs, x)
}

/// Attempts a certified exact count of distinct real roots.
pub fn certified_real_count(coeffs_in: &[f64]) -> Option<CertifiedCount> {
    // Exact trims: leading zeros are projective roots at infinity, trailing
    // zeros are roots at t = 0.
    let mut hi = coeffs_in.len();
    while hi > 0 && coeffs_in[hi - 1] == 0.0 {
        hi -= 1;
    }
    if hi == 0 {
        return None; // zero polynomial, caller handles
    }
    let root_at_infinity = hi != coeffs_in.len();
    let mut lo = 0usize;
    while lo < hi && coeffs_in[lo] == 0.0 {
        lo += 1;
    }
    let zero_root = lo > 0;
    let coeffs = &coeffs_in[lo..hi];
    let d = coeffs.len() - 1;
    if d == 0 {
        return Some(CertifiedCount {
            distinct_real: usize::from(zero_root),
            root_at_infinity,
        });
    }

    let complex_coeffs: Vec<Complex64> =
        coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let roots = find_roots(&complex_coeffs, 1e-9).ok()?;

    let rev: Vec<f64> = coeffs.iter().rev().copied().collect();
    let mut disks = Vec::with_capacity(d);
    for &z in &roots {
        disks.push(inclusion_disk(coeffs, &rev, z)?);
    }
    if !disks_disjoint(&disks) {
        return None;
    }

    // X-projections of every disk, used to keep brackets off other roots.
    let spans: Vec<(f64, f64)> = disks
        .iter()
        .map(|d| (d.re - d.radius, d.re + d.radius))
        .collect();

    let mut real = usize::from(zero_root);
    let mut nonreal = 0usize;
    for (i, disk) in disks.iter().enumerate() {
        if disk.im.abs() > disk.radius {
            nonreal += 1;
            continue;
        }
        // Axis-touching disk: bracket its x-projection between the
        // neighbouring projections.
        let (left, right) = spans[i];
        let mut lo_bound = f64::NEG_INFINITY;
        let mut hi_bound = f64::INFINITY;
        for (j, &(l, r)) in spans.iter().enumerate() {
            if j == i {
                continue;
            }
            if r <= left {
                lo_bound = lo_bound.max(r);
            } else if l >= right {
                hi_bound = hi_bound.min(l);
            } else {
                return None; // overlapping projections: near-real pair
            }
        }
        let pad = (disk.radius * 2.0).max(1e-13 * (1.0 + disk.re.abs()));
        let a = stretch_down(left, lo_bound, pad);
        let b = stretch_up(right, hi_bound, pad);
        // Endpoints must stay strictly outside every projection.
        if !(a < left && b > right && a > lo_bound && b < hi_bound) {
            return None;
        }
        let sa = off_root_sign(coeffs, a);
        let sb = off_root_sign(coeffs, b);
        if sa == 0 || sb == 0 {
            return None; // contradiction with the certificate, bail out
        }
        if sa != sb {
            real += 1;
        } else {
            nonreal += 1;
        }
    }
    if nonreal % 2 != 0 {
        return None; // real polynomial must pair its complex roots
    }
    Some(CertifiedCount { distinct_real: real, root_at_infinity })
}

fn stretch_down(edge: f64, bound: f64, pad: f64) -> f64 {
    if bound == f64::NEG_INFINITY {
        edge - pad.max(1e-3 * (1.0 + edge.abs()))
    } else {
        (edge + bound) / 2.0
    }
}

fn stretch_up(edge: f64, bound: f64, pad: f64) -> f64 {
    if bound == f64::INFINITY {
        edge + pad.max(1e-3 * (1.0 + edge.abs()))
    } else {
        (edge + bound) / 2.0
    }
}
