//! Sturm chains over the integers with exact sign evaluation.
//!
//! The chain is built from the square-free part with a primitive
//! pseudo-remainder sequence. Each pseudo-remainder is negated and
//! normalized by a *positive* factor only, so the sign structure of the
//! classical Sturm sequence is preserved exactly. Signs at dyadic points are
//! evaluated through a normalized f64 view first and fall back to exact
//! BigInt arithmetic when the floating filter cannot certify the sign.

use super::intpoly::IntPoly;

/// A point of the extended real line at which sign variations are counted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainPoint {
    NegInf,
    Finite(f64),
    PosInf,
}

/// Sturm chain of a square-free integer polynomial, with cached f64 views
/// of each element for fast certified sign evaluation.
///
/// Elements are stored as a subresultant pseudo-remainder sequence (no
/// content gcds), with one sign flip per element recording how the stored
/// polynomial relates to the true Sturm element.
#[derive(Debug, Clone)]
pub struct SturmChain {
    elements: Vec<IntPoly>,
    flips: Vec<i8>,
    f64_views: Vec<(Vec<f64>, f64)>,
}

impl SturmChain {
    /// Builds the chain for the square-free part of `poly`.
    pub fn new(poly: &IntPoly) -> Self {
        use num_bigint::BigInt;
        use num_traits::Signed;

        assert!(!poly.is_zero());
        let p = poly.square_free_part();
        let mut elements = vec![p.clone()];
        let mut flips: Vec<i8> = vec![1];
        if p.degree() >= 1 {
            elements.push(p.derivative().primitive_part());
            flips.push(1);
            let mut g = BigInt::from(1);
            let mut h = BigInt::from(1);
            loop {
                let n = elements.len();
                let (a, b) = (&elements[n - 2], &elements[n - 1]);
                if b.is_zero() || b.degree() == 0 || a.degree() < b.degree() {
                    break;
                }
                let delta = a.degree() - b.degree();
                let (prem, mult_sign) = a.pseudo_rem(b);
                if prem.is_zero() {
                    break;
                }
                let beta = &g * h.pow(delta as u32);
                let beta_sign: i8 = if beta.is_negative() { -1 } else { 1 };
                let next = IntPoly::from_bigints(
                    prem.coeffs
                        .iter()
                        .map(|c| {
                            debug_assert!(num_traits::Zero::is_zero(&(c % &beta)));
                            c / &beta
                        })
                        .collect(),
                );
                // True Sturm element: S_{i+1} = -rem(S_{i-1}, S_i); the
                // stored next = prem/beta picks up the pseudo-multiplier and
                // beta signs plus the flip of the (i-1)-st element.
                let flip = -mult_sign * flips[n - 2] * beta_sign;
                g = elements[n - 1].leading().clone();
                h = if delta == 0 {
                    h
                } else if delta == 1 {
                    g.clone()
                } else {
                    g.pow(delta as u32) / h.pow(delta as u32 - 1)
                };
                elements.push(next);
                flips.push(flip);
                if elements.last().unwrap().degree() == 0 {
                    break;
                }
            }
        }
        let f64_views = elements.iter().map(IntPoly::to_f64_normalized).collect();
        Self { elements, flips, f64_views }
    }

    /// The square-free polynomial at the head of the chain.
    pub fn head(&self) -> &IntPoly {
        &self.elements[0]
    }

    /// Sign of the head polynomial at a finite f64 point, via the float
    /// filter with exact fallback.
    pub fn head_sign_at(&self, x: f64) -> i8 {
        self.element_sign_at(0, x)
    }

    fn element_sign_at(&self, idx: usize, x: f64) -> i8 {
        let (coeffs, coeff_err) = &self.f64_views[idx];
        if let Some(s) = certified_horner_sign(coeffs, *coeff_err, x) {
            return s;
        }
        self.elements[idx].sign_at_f64(x)
    }

    /// Number of sign variations of the chain at a point.
    pub fn variations(&self, at: ChainPoint) -> usize {
        let mut count = 0usize;
        let mut last: i8 = 0;
        for (idx, el) in self.elements.iter().enumerate() {
            let s = self.flips[idx]
                * match at {
                    ChainPoint::NegInf => el.sign_at_neg_inf(),
                    ChainPoint::PosInf => el.sign_at_pos_inf(),
                    ChainPoint::Finite(x) => self.element_sign_at(idx, x),
                };
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`
    /// (with infinities allowed).
    pub fn count_between(&self, a: ChainPoint, b: ChainPoint) -> usize {
        let va = self.variations(a);
        let vb = self.variations(b);
        va.saturating_sub(vb)
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.count_between(ChainPoint::NegInf, ChainPoint::PosInf)
    }
}

/// Horner evaluation with a running error bound; returns the sign when the
/// result is certainly nonzero, `None` otherwise.
pub fn certified_horner_sign(coeffs: &[f64], coeff_err: f64, x: f64) -> Option<i8> {
    if coeffs.is_empty() {
        return Some(0);
    }
    let ax = x.abs();
    let mut acc = *coeffs.last().unwrap();
    let mut mag = acc.abs();
    let mut pow_sum = 1.0f64;
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc * x + c;
        mag = mag * ax + c.abs();
        pow_sum = pow_sum * ax + 1.0;
    }
    // Rounding of the Horner recurrence plus the per-coefficient rounding
    // error amplified through the power sum.
    let n = coeffs.len() as f64;
    let bound = mag * 2.0 * n * f64::EPSILON + pow_sum * coeff_err;
    if acc.abs() > bound {
        Some(if acc > 0.0 { 1 } else { -1 })
    } else {
        None
    }
}

/// Exact count of distinct real roots of the polynomial with the given f64
/// coefficients (constant term first) over the whole real line.
pub fn count_real_roots_sturm(coeffs: &[f64]) -> Option<usize> {
    let p = IntPoly::from_f64_coeffs(coeffs);
    if p.is_zero() {
        return None;
    }
    if p.degree() == 0 {
        return Some(0);
    }
    Some(SturmChain::new(&p).count_all())
}

/// Exact sign of the polynomial at a dyadic point, for bracket certificates.
pub fn exact_sign_at(coeffs: &[f64], x: f64) -> i8 {
    IntPoly::from_f64_coeffs(coeffs).sign_at_f64(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(coeffs: &[f64]) -> SturmChain {
        SturmChain::new(&IntPoly::from_f64_coeffs(coeffs))
    }

    #[test]
    fn quadratics() {
        assert_eq!(chain(&[-1.0, 0.0, 1.0]).count_all(), 2); // t^2 - 1
        assert_eq!(chain(&[1.0, 0.0, 1.0]).count_all(), 0); // t^2 + 1
        // Kostlan d = 2 with unit coefficients: 1 + sqrt2 t + t^2 has
        // negative discriminant.
        assert_eq!(
            chain(&[1.0, std::f64::consts::SQRT_2, 1.0]).count_all(),
            0
        );
    }

    #[test]
    fn interval_counts() {
        let c = chain(&[-1.0, 0.0, 1.0]);
        // (0, 2] contains t = 1.
        assert_eq!(
            c.count_between(ChainPoint::Finite(0.0), ChainPoint::Finite(2.0)),
            1
        );
        assert_eq!(
            c.count_between(ChainPoint::NegInf, ChainPoint::Finite(0.0)),
            1
        );
    }

    #[test]
    fn multiple_roots_counted_once() {
        // (t-1)^2 (t+3): distinct roots {1, -3}.
        // Expanded: t^3 + t^2 - 5t + 3.
        assert_eq!(chain(&[3.0, -5.0, 1.0, 1.0]).count_all(), 2);
    }

    #[test]
    fn wilkinson_like_density() {
        // prod (t - k/8), k = 1..12: twelve distinct dyadic roots.
        let mut coeffs = vec![1.0f64];
        for k in 1..=12 {
            let r = k as f64 / 8.0;
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        assert_eq!(count_real_roots_sturm(&coeffs), Some(12));
    }

    #[test]
    fn scale_invariance_of_counts() {
        let base = [3.0, -5.0, 1.0, 1.0];
        let scaled: Vec<f64> = base.iter().map(|c| c * 7.5).collect();
        assert_eq!(
            count_real_roots_sturm(&base),
            count_real_roots_sturm(&scaled)
        );
    }
}
