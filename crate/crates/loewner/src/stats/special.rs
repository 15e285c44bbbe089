//! Special functions backing the hypothesis tests: regularized incomplete
//! gamma (series + continued fraction), the normal distribution, and the
//! asymptotic Kolmogorov-Smirnov tail.

use crate::error::{Error, Result};

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms; ~1e-15 relative).
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // reflection to keep the approximation in its accurate range
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.99999999999980993;
    for (i, c) in COEFFS.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

const GAMMA_EPS: f64 = 1e-16;
const GAMMA_ITMAX: usize = 1000;

/// Lower regularized incomplete gamma P(a, x) by its power series (x < a+1).
fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut term = sum;
    for _ in 0..GAMMA_ITMAX {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Upper regularized incomplete gamma Q(a, x) by continued fraction (x >= a+1).
fn gamma_q_cf(a: f64, x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=GAMMA_ITMAX {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x).
pub fn gamma_q(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || x < 0.0 || !x.is_finite() {
        return Err(Error::InvalidParameter {
            reason: format!("gamma_q domain: a = {a}, x = {x}"),
        });
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    Ok(if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    })
}

/// Survival function of the chi-square distribution with `dof` degrees of
/// freedom.
pub fn chi2_sf(dof: usize, x: f64) -> Result<f64> {
    if dof == 0 {
        return Err(Error::InvalidParameter {
            reason: "chi2_sf needs dof >= 1".into(),
        });
    }
    gamma_q(dof as f64 / 2.0, x / 2.0)
}

/// Complementary error function via the incomplete gamma functions.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x == 0.0 {
        return 1.0;
    }
    gamma_q(0.5, x * x).expect("erfc domain is valid")
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal quantile by bisection on the cdf.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(0.0 < p && p < 1.0) {
        return Err(Error::InvalidParameter {
            reason: format!("normal_quantile domain: p = {p}"),
        });
    }
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Asymptotic Kolmogorov-Smirnov tail Q_KS(x) = 2 sum_k (-1)^(k-1) e^(-2 k^2 x^2),
/// the limit of P(sqrt(N) D > x). Terms are added until they drop below 1e-12.
pub fn ks_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=1000 {
        let term = (-2.0 * (k as f64) * (k as f64) * x * x).exp();
        sum += sign * term;
        if term < 1e-12 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_function_values() {
        // Gamma(1/2) = sqrt(pi), Gamma(5) = 24
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        assert!((ln_gamma(5.0) - 24.0f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn chi2_survival_closed_form_at_two_dof() {
        // dof = 2 gives exp(-x/2)
        let p = chi2_sf(2, 2.0).unwrap();
        assert!((p - (-1.0f64).exp()).abs() < 1e-12, "{p}");
        for x in [0.1, 1.0, 5.0, 20.0] {
            let p = chi2_sf(2, x).unwrap();
            assert!((p - (-x / 2.0).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn chi2_survival_large_dof() {
        // mean of chi2(k) is k: the sf at the mean is near 1/2 for large k
        let p = chi2_sf(1023, 1023.0).unwrap();
        assert!((p - 0.5).abs() < 0.02, "{p}");
        // monotone decreasing in x
        assert!(chi2_sf(1023, 900.0).unwrap() > chi2_sf(1023, 1100.0).unwrap());
        // frozen high-precision reference
        let p = chi2_sf(1023, 1100.0).unwrap();
        assert!((p - 0.046866328217488072).abs() < 1e-9, "{p}");
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.96) - 0.9750021048517795).abs() < 1e-10);
        assert!((normal_cdf(-1.96) - 0.024997895148220428).abs() < 1e-10);
        assert!((normal_cdf(8.0) - 1.0).abs() < 1e-15);
        // symmetry
        for x in [0.1, 0.5, 1.0, 2.5, 5.0] {
            assert!((normal_cdf(x) + normal_cdf(-x) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn normal_quantile_inverts_cdf() {
        let q = normal_quantile(0.75).unwrap();
        assert!((q - 0.6744897501960817).abs() < 1e-10, "{q}");
        for p in [0.001, 0.1, 0.5, 0.9, 0.999] {
            let x = normal_quantile(p).unwrap();
            assert!((normal_cdf(x) - p).abs() < 1e-12);
        }
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
    }

    #[test]
    fn ks_tail_reference_point() {
        // P(sqrt(N) D > 1.36) is approximately 5%
        let p = ks_sf(1.36);
        assert!((0.049..=0.051).contains(&p), "{p}");
        assert_eq!(ks_sf(0.0), 1.0);
        assert_eq!(ks_sf(-1.0), 1.0);
        assert!(ks_sf(3.0) < 1e-7);
    }
}
