//! Real-root isolation by Sturm bisection, with chart flipping so every
//! sign evaluation happens at points of modulus at most one.

use super::intpoly::IntPoly;
use super::sturm::{ChainPoint, SturmChain};

/// An isolated real root: midpoint estimate and half-width of the final
/// isolating interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolatedRoot {
    pub value: f64,
    pub half_width: f64,
}

/// Isolates all real roots of the polynomial (constant term first) and
/// refines them to intervals of half-width at most `tol`.
///
/// Multiple roots are reduced away (the chain works on the square-free
/// part), so each distinct real root appears exactly once.
pub fn isolate_real_roots(coeffs: &[f64], tol: f64) -> Vec<IsolatedRoot> {
    assert!(tol > 0.0);
    let p = IntPoly::from_f64_coeffs(coeffs);
    assert!(!p.is_zero(), "zero polynomial");
    if p.degree() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(&p);

    let mut out: Vec<IsolatedRoot> = Vec::new();

    // Exact boundary roots of the unit charts.
    for &b in &[-1.0f64, 1.0] {
        if chain.head_sign_at(b) == 0 {
            out.push(IsolatedRoot { value: b, half_width: 0.0 });
        }
    }

    // Inner chart: roots strictly inside (-1, 1).
    let inner_lo = ChainPoint::Finite(-1.0);
    let inner_hi = ChainPoint::Finite(1.0);
    let mut inner_count = chain.count_between(inner_lo, inner_hi);
    // (lo, hi] counts the endpoint +1; drop it, it is reported separately.
    if chain.head_sign_at(1.0) == 0 {
        inner_count -= 1;
    }
    bisect(&chain, -1.0, 1.0, inner_count, tol, &mut out);

    // Outer chart: |t| > 1 through the reversed polynomial at w = 1/t.
    let rev: Vec<f64> = coeffs.iter().rev().copied().collect();
    let q = IntPoly::from_f64_coeffs(&rev);
    if !q.is_zero() && q.degree() >= 1 {
        let qchain = SturmChain::new(&q);
        let mut w_roots = Vec::new();
        // w in (0, 1): t in (1, inf); w in (-1, 0): t in (-inf, -1).
        for (lo, hi) in [(0.0f64, 1.0f64), (-1.0, 0.0)] {
            let mut count =
                qchain.count_between(ChainPoint::Finite(lo), ChainPoint::Finite(hi));
            if qchain.head_sign_at(hi) == 0 {
                count -= 1;
            }
            bisect(&qchain, lo, hi, count, tol, &mut w_roots);
        }
        for r in w_roots {
            if r.value != 0.0 {
                let t = 1.0 / r.value;
                // Width transforms by |dt/dw| = 1/w^2.
                let hw = r.half_width / (r.value * r.value - r.half_width * r.half_width).abs();
                out.push(IsolatedRoot { value: t, half_width: hw.max(f64::EPSILON * t.abs()) });
            }
        }
    }

    out.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    out
}

/// Recursive Sturm bisection of `(lo, hi)` known to contain `count` roots
/// strictly inside (endpoints are not roots of the chain head).
fn bisect(chain: &SturmChain, lo: f64, hi: f64, count: usize, tol: f64, out: &mut Vec<IsolatedRoot>) {
    if count == 0 {
        return;
    }
    let mid = lo + (hi - lo) / 2.0;
    if !(lo < mid && mid < hi) {
        // Interval of adjacent floats; cannot split further.
        out.extend(std::iter::repeat_n(
            IsolatedRoot { value: mid, half_width: (hi - lo) / 2.0 },
            count,
        ));
        return;
    }
    if count == 1 {
        refine(chain, lo, hi, tol, out);
        return;
    }
    if chain.head_sign_at(mid) == 0 {
        out.push(IsolatedRoot { value: mid, half_width: 0.0 });
        let below = next_down(mid);
        let left = chain
            .count_between(ChainPoint::Finite(lo), ChainPoint::Finite(below));
        let right = chain
            .count_between(ChainPoint::Finite(mid), ChainPoint::Finite(hi));
        bisect(chain, lo, below, left, tol, out);
        bisect(chain, mid, hi, right, tol, out);
        return;
    }
    let left = chain.count_between(ChainPoint::Finite(lo), ChainPoint::Finite(mid));
    bisect(chain, lo, mid, left, tol, out);
    bisect(chain, mid, hi, count - left, tol, out);
}

/// Shrinks an isolating interval with exactly one interior root to width
/// `tol` by V-count bisection, then records the midpoint.
fn refine(chain: &SturmChain, mut lo: f64, mut hi: f64, tol: f64, out: &mut Vec<IsolatedRoot>) {
    while hi - lo > 2.0 * tol {
        let mid = lo + (hi - lo) / 2.0;
        if !(lo < mid && mid < hi) {
            break;
        }
        match chain.head_sign_at(mid) {
            0 => {
                out.push(IsolatedRoot { value: mid, half_width: 0.0 });
                return;
            }
            _ => {
                if chain.count_between(ChainPoint::Finite(mid), ChainPoint::Finite(hi)) == 1 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
    }
    out.push(IsolatedRoot { value: lo + (hi - lo) / 2.0, half_width: (hi - lo) / 2.0 });
}

fn next_down(x: f64) -> f64 {
    f64::from_bits(if x > 0.0 { x.to_bits() - 1 } else { x.to_bits() + 1 })
}
