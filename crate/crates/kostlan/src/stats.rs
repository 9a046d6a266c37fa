//! Small statistical helpers: log-gamma, the regularized incomplete gamma
//! function (for chi-square tail probabilities), and running mean/stderr
//! accumulation.

/// Natural log of the gamma function (Lanczos, g = 7, 9 coefficients).
/// Accurate to ~1e-13 relative for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma P(a, x).
pub fn gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        // Series representation.
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut n = a;
        for _ in 0..500 {
            n += 1.0;
            term *= x / n;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        sum * (-x + a * x.ln() - ln_gamma(a)).exp()
    } else {
        1.0 - gamma_q_cf(a, x)
    }
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p(a, x)
    } else {
        gamma_q_cf(a, x)
    }
}

/// Continued-fraction evaluation of Q(a, x), valid for x >= a + 1.
fn gamma_q_cf(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Upper tail probability of a chi-square distribution with `df` degrees of
/// freedom at the observed statistic.
pub fn chi_square_p_value(statistic: f64, df: usize) -> f64 {
    gamma_q(df as f64 / 2.0, statistic / 2.0)
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    assert!(n >= 2, "need at least two samples for a standard error");
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln_gamma_matches_factorials() {
        for n in 1..15u64 {
            let fact: f64 = (1..n).map(|k| k as f64).product();
            assert_relative_eq!(
                ln_gamma(n as f64),
                fact.ln(),
                max_relative = 1e-12,
                epsilon = 1e-13
            );
        }
        // Gamma(1/2) = sqrt(pi).
        assert_relative_eq!(
            ln_gamma(0.5),
            std::f64::consts::PI.sqrt().ln(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn chi_square_known_values() {
        // Chi-square with 1 df at x: Q = erfc(sqrt(x/2)).
        assert_relative_eq!(chi_square_p_value(3.841, 1), 0.05, max_relative = 1e-3);
        // 31 df (32 bins), at the mean the tail is near 0.47.
        let p = chi_square_p_value(31.0, 31);
        assert!(p > 0.4 && p < 0.6, "p = {p}");
        // P + Q = 1 on both branches.
        for &(a, x) in &[(2.5, 1.0), (2.5, 9.0), (15.5, 3.0), (15.5, 40.0)] {
            assert_relative_eq!(gamma_p(a, x) + gamma_q(a, x), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn mean_stderr_basics() {
        let (m, se) = mean_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(m, 2.5);
        let var = (2.25 + 0.25 + 0.25 + 2.25) / 3.0;
        assert_relative_eq!(se, (var / 4.0_f64).sqrt());
    }
}
