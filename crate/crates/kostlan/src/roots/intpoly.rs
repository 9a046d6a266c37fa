//! Exact integer polynomials built from f64 coefficients.
//!
//! Every finite f64 is a dyadic rational `m * 2^e`, so a polynomial with f64
//! coefficients can be scaled by a common power of two into an integer
//! polynomial with the same roots. Signs of values at dyadic points are then
//! exact, which is what Sturm chains and bracket certificates consume.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Decomposes a finite f64 into `(mantissa, exponent)` with
/// `value = mantissa * 2^exponent`.
pub fn integer_decode(value: f64) -> (i64, i32) {
    assert!(value.is_finite());
    if value == 0.0 {
        return (0, 0);
    }
    let bits = value.to_bits();
    let sign: i64 = if bits >> 63 == 0 { 1 } else { -1 };
    let mut exponent = ((bits >> 52) & 0x7ff) as i32;
    let mantissa = if exponent == 0 {
        (bits & 0x000f_ffff_ffff_ffff) << 1
    } else {
        (bits & 0x000f_ffff_ffff_ffff) | 0x0010_0000_0000_0000
    };
    exponent -= 1075;
    (sign * mantissa as i64, exponent)
}

/// A polynomial with exact integer coefficients, lowest degree first.
/// The leading coefficient is kept nonzero (the zero polynomial is `[]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_bigints(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Scales f64 coefficients by a common power of two into integers.
    /// The scaling is by a positive constant, so roots and sign structure
    /// are untouched.
    pub fn from_f64_coeffs(coeffs: &[f64]) -> Self {
        let decoded: Vec<(i64, i32)> = coeffs.iter().map(|&c| integer_decode(c)).collect();
        let min_exp = decoded
            .iter()
            .filter(|&&(m, _)| m != 0)
            .map(|&(_, e)| e)
            .min()
            .unwrap_or(0);
        let ints = decoded
            .iter()
            .map(|&(m, e)| {
                if m == 0 {
                    BigInt::zero()
                } else {
                    BigInt::from(m) << (e - min_exp) as u32
                }
            })
            .collect();
        Self::from_bigints(ints)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        Self::from_bigints(coeffs)
    }

    /// Divides out the content (gcd of coefficients), keeping the sign of
    /// the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            content = content.gcd(c);
            if content == BigInt::from(1) {
                return self.clone();
            }
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        }
    }

    /// Exact sign of `P(n / 2^q)`: evaluates `P(n/2^q) * 2^(q*deg)` by
    /// Horner with shifts.
    pub fn sign_at_dyadic(&self, numer: &BigInt, log2_denom: u32) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let mut acc = self.coeffs.last().unwrap().clone();
        for (j, c) in self.coeffs.iter().rev().skip(1).enumerate() {
            acc = acc * numer + (c << (log2_denom as usize * (j + 1)));
        }
        sign_of(&acc)
    }

    /// Exact sign of `P(x)` at a finite f64 (an exact dyadic rational).
    pub fn sign_at_f64(&self, x: f64) -> i8 {
        let (m, e) = integer_decode(x);
        if e >= 0 {
            self.sign_at_dyadic(&(BigInt::from(m) << e as u32), 0)
        } else {
            self.sign_at_dyadic(&BigInt::from(m), (-e) as u32)
        }
    }

    /// Sign at +infinity (sign of the leading coefficient).
    pub fn sign_at_pos_inf(&self) -> i8 {
        if self.is_zero() {
            0
        } else {
            sign_of(self.leading())
        }
    }

    /// Sign at -infinity.
    pub fn sign_at_neg_inf(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let s = sign_of(self.leading());
        if self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Pseudo-remainder `prem(self, other)` together with the sign of the
    /// implied multiplier `lc(other)^(deg self - deg other + 1)`.
    pub fn pseudo_rem(&self, other: &Self) -> (Self, i8) {
        assert!(!other.is_zero());
        let d_self = self.degree();
        let d_other = other.degree();
        assert!(d_self >= d_other);
        let lc = other.leading().clone();
        let steps = d_self - d_other + 1;
        let mult_sign = if lc.is_negative() && steps % 2 == 1 { -1 } else { 1 };

        let mut rem = self.coeffs.clone();
        // Classical pseudo-division: repeatedly scale by lc and eliminate.
        let mut deg = d_self;
        let mut performed = 0usize;
        while deg >= d_other && !rem.iter().all(Zero::is_zero) {
            let lead = rem[deg].clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            if !lead.is_zero() {
                let shift = deg - d_other;
                for (i, oc) in other.coeffs.iter().enumerate() {
                    rem[shift + i] -= &lead * oc;
                }
            }
            performed += 1;
            if deg == 0 {
                break;
            }
            deg -= 1;
        }
        // Pad with the remaining multiplier powers so the total factor is
        // exactly lc^steps.
        let remaining = steps - performed;
        if remaining > 0 {
            let factor = lc.pow(remaining as u32);
            for c in rem.iter_mut() {
                *c *= &factor;
            }
        }
        (Self::from_bigints(rem), mult_sign)
    }

    /// Greatest common divisor via the subresultant pseudo-remainder
    /// sequence (exact known divisors instead of content gcds).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = BigInt::from(1);
        let mut h = BigInt::from(1);
        loop {
            if b.degree() == 0 {
                if b.is_zero() {
                    break;
                }
                return Self::from_bigints(vec![BigInt::from(1)]);
            }
            let delta = a.degree() - b.degree();
            let (r, _) = a.pseudo_rem(&b);
            if r.is_zero() {
                a = b;
                break;
            }
            let divisor = &g * h.pow(delta as u32);
            a = b;
            b = Self {
                coeffs: r
                    .coeffs
                    .iter()
                    .map(|c| {
                        debug_assert!((c % &divisor).is_zero());
                        c / &divisor
                    })
                    .collect(),
            };
            g = a.leading().clone();
            h = if delta == 0 {
                h
            } else {
                // h <- g^delta / h^(delta-1), exact by the subresultant
                // theory.
                let num = g.pow(delta as u32);
                if delta == 1 {
                    num
                } else {
                    num / h.pow(delta as u32 - 1)
                }
            };
        }
        let mut out = a.primitive_part();
        if sign_of(out.leading()) < 0 {
            for c in out.coeffs.iter_mut() {
                *c = -c.clone();
            }
        }
        out
    }

    /// Exact polynomial division; panics unless `divisor` divides exactly.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        if self.is_zero() {
            return self.clone();
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for deg in (dd..=self.degree()).rev() {
            let lead = rem[deg].clone();
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(divisor.leading());
            assert!(r.is_zero(), "division is not exact");
            let shift = deg - dd;
            quot[shift] = q.clone();
            for (i, oc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * oc;
            }
        }
        assert!(rem.iter().all(Zero::is_zero), "division left a remainder");
        Self::from_bigints(quot)
    }

    /// The square-free part `self / gcd(self, self')`.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() || self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.primitive_part()
        } else {
            // self = g * h with h square-free up to content.
            let scaled = {
                // Make the division exact: self * lc(g)^k is divisible by g
                // over the integers once both are primitive.
                self.primitive_part()
            };
            scaled.div_exact(&g).primitive_part()
        }
    }

    /// Approximate f64 coefficients scaled so the largest is 1, plus a bound
    /// on the absolute rounding error of each scaled coefficient.
    pub fn to_f64_normalized(&self) -> (Vec<f64>, f64) {
        if self.is_zero() {
            return (Vec::new(), 0.0);
        }
        let max_bits = self.coeffs.iter().map(|c| c.bits()).max().unwrap().max(1);
        // Shift so magnitudes land near 2^0..2^53.
        let shift = max_bits as i64 - 53;
        let scaled: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| {
                let v = if shift > 0 { c >> shift as usize } else { c << (-shift) as usize };
                big_to_f64(&v)
            })
            .collect();
        let max = scaled.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1.0);
        let inv = 1.0 / max;
        // Each coefficient carries at most 1 ulp of truncation from the
        // shift plus the conversion rounding.
        let err = 2.0 * inv * if shift > 0 { 1.0 } else { 0.0 } + 4.0 * f64::EPSILON;
        (scaled.iter().map(|&v| v * inv).collect(), err)
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    // num-bigint's conversion saturates; magnitudes here are pre-shifted
    // to at most ~2^53.
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(0.0)
}

fn sign_of(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_bigints(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn decode_roundtrip() {
        for &x in &[1.0, -1.5, 0.1, 1e-300, 3.7e200, -0.0] {
            let (m, e) = integer_decode(x);
            assert_eq!(m as f64 * 2f64.powi(e), x);
        }
        // Smallest subnormal: mantissa 2, exponent -1075 (the product
        // cannot be formed in f64 directly).
        assert_eq!(integer_decode(5.0e-324), (2, -1075));
    }

    #[test]
    fn f64_coeffs_preserve_roots() {
        // p = (t - 0.5)(t + 2) = t^2 + 1.5 t - 1.
        let p = IntPoly::from_f64_coeffs(&[-1.0, 1.5, 1.0]);
        assert_eq!(p.sign_at_f64(0.5), 0);
        assert_eq!(p.sign_at_f64(-2.0), 0);
        assert_eq!(p.sign_at_f64(0.0), -1);
        assert_eq!(p.sign_at_f64(1.0), 1);
    }

    #[test]
    fn dyadic_sign_evaluation() {
        let p = poly(&[-1, 0, 1]); // t^2 - 1
        assert_eq!(p.sign_at_dyadic(&BigInt::from(3), 1), 1); // 1.5
        assert_eq!(p.sign_at_dyadic(&BigInt::from(1), 1), -1); // 0.5
        assert_eq!(p.sign_at_dyadic(&BigInt::from(2), 1), 0); // 1.0
        assert_eq!(p.sign_at_pos_inf(), 1);
        assert_eq!(p.sign_at_neg_inf(), 1);
        assert_eq!(p.derivative().sign_at_neg_inf(), -2i8.signum());
    }

    #[test]
    fn gcd_and_square_free() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2.
        let p = poly(&[2, -3, 0, 1]);
        let g = p.gcd(&p.derivative());
        assert_eq!(g.degree(), 1); // t - 1
        let sf = p.square_free_part();
        assert_eq!(sf.degree(), 2);
        assert_eq!(sf.sign_at_f64(1.0), 0);
        assert_eq!(sf.sign_at_f64(-2.0), 0);
        // Square-free input is untouched up to content.
        let q = poly(&[-2, 0, 2]);
        assert_eq!(q.square_free_part(), poly(&[-1, 0, 1]));
    }

    #[test]
    fn normalized_f64_view_tracks_signs() {
        let p = poly(&[-6, 11, -6, 1]); // (t-1)(t-2)(t-3)
        let (c, err) = p.to_f64_normalized();
        assert!(err < 1e-10);
        let eval = |x: f64| c.iter().rev().fold(0.0, |a, &ck| a * x + ck);
        assert!(eval(0.0) < 0.0);
        assert!(eval(1.5) > 0.0);
        assert!(eval(2.5) < 0.0);
        assert!(eval(4.0) > 0.0);
    }
}
