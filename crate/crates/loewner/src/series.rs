//! Truncated power series of the reciprocal-conjugated maps hhat(z) = 1/h(1/z).
//!
//! A slit map h normalized at infinity has hhat(0) = 0 and hhat'(0) = 1, so
//! its series starts with z. These series compose covariantly with map
//! composition, which is what makes whole blocks of slit maps collapsible
//! into a single polynomial evaluation for large arguments.

use num_complex::Complex64;

use crate::conformal::{TiltedSlit, VerticalSlit};
use crate::error::{Error, Result};

/// Coefficients a_1..a_n of a truncated series sum_j a_j z^j with a_1 = 1.
///
/// Coefficients are real: slit data is real, so the maps commute with
/// conjugation and their series have real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

const A1_TOL: f64 = 1e-14;

impl PowerSeries {
    /// The identity map z.
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1);
        let mut coeffs = vec![0.0; order];
        coeffs[0] = 1.0;
        PowerSeries { coeffs }
    }

    /// Wrap raw coefficients a_1..a_n; the leading coefficient must be 1.
    pub fn from_coefficients(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter {
                reason: "series must have at least one coefficient".into(),
            });
        }
        if (coeffs[0] - 1.0).abs() > A1_TOL {
            return Err(Error::BadLeadingCoefficient { a1: coeffs[0] });
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// a_j for j = 1..order (slice index j-1).
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Series of hhat for a vertical slit: z (1 - 2x z + (x^2+y^2) z^2)^(-1/2),
    /// expanded by the first-order recurrence for powers of a quadratic.
    pub fn from_vertical(slit: &VerticalSlit, order: usize) -> Self {
        assert!(order >= 1);
        let c1 = -2.0 * slit.x;
        let c2 = slit.x * slit.x + slit.y * slit.y;
        let beta = -0.5;
        // s_k are the coefficients of (1 + c1 z + c2 z^2)^beta.
        let mut s = vec![0.0; order];
        s[0] = 1.0;
        for k in 0..order.saturating_sub(1) {
            let mut num = c1 * (beta - k as f64) * s[k];
            if k >= 1 {
                num += c2 * (2.0 * beta - k as f64 + 1.0) * s[k - 1];
            }
            s[k + 1] = num / (k as f64 + 1.0);
        }
        PowerSeries { coeffs: s }
    }

    /// Series of hhat for a tilted slit.
    ///
    /// The inverse map has the explicit reciprocal-conjugated series
    /// z (1 + x_l z)^(-(1-a)) (1 - x_r z)^(-a); hhat is its compositional
    /// inverse, so we expand that product and revert it.
    pub fn from_tilted(slit: &TiltedSlit, order: usize) -> Self {
        assert!(order >= 1);
        let (beta, x_l, x_r, mirrored) = slit.canonical();
        let left = binomial_series(x_l, -(1.0 - beta), order);
        let right = binomial_series(-x_r, -beta, order);
        let ghat = PowerSeries {
            coeffs: mul_shifted(&left, &right, order),
        };
        let mut hhat = ghat.revert();
        if mirrored {
            // Mirrored slit: hhat_m(z) = -hhat(-z), i.e. even coefficients
            // flip sign. Done coefficient-wise so reflection stays bit-exact.
            for (j, a) in hhat.coeffs.iter_mut().enumerate() {
                if j % 2 == 1 {
                    *a = -*a;
                }
            }
        }
        hhat
    }

    /// Truncated composition self(other(z)).
    pub fn compose(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let n = self.order();
        if other.order() != n {
            return Err(Error::OrderMismatch {
                left: n,
                right: other.order(),
            });
        }
        // Horner over polynomials indexed by power, constant term included.
        let mut b = vec![0.0; n + 1];
        b[1..].copy_from_slice(&other.coeffs);
        let mut acc = vec![0.0; n + 1];
        acc[0] = self.coeffs[n - 1];
        for k in (1..n).rev() {
            acc = poly_mul_trunc(&acc, &b, n + 1);
            acc[0] += self.coeffs[k - 1];
        }
        let res = poly_mul_trunc(&acc, &b, n + 1);
        Ok(PowerSeries {
            coeffs: res[1..].to_vec(),
        })
    }

    /// Compositional inverse truncated at the same order.
    pub fn revert(&self) -> PowerSeries {
        let n = self.order();
        // Powers of self as polynomials (index = power).
        let mut g = vec![0.0; n + 1];
        g[1..].copy_from_slice(&self.coeffs);
        let mut powers = Vec::with_capacity(n);
        powers.push(g.clone());
        for _ in 1..n {
            let next = poly_mul_trunc(powers.last().unwrap(), &g, n + 1);
            powers.push(next);
        }
        // Solve sum_k f_k g^k = z coefficient by coefficient; g^m has unit
        // coefficient at z^m, so the system is unit triangular.
        let mut f = vec![0.0; n];
        f[0] = 1.0;
        for m in 2..=n {
            let mut acc = 0.0;
            for k in 1..m {
                acc += f[k - 1] * powers[k - 1][m];
            }
            f[m - 1] = -acc;
        }
        PowerSeries { coeffs: f }
    }

    /// Evaluate the underlying map h(z) ~ [sum_j a_j z^-j]^(-1) for |z| well
    /// outside the series radius (the caller enforces the threshold rule).
    #[inline]
    pub fn eval_map(&self, z: Complex64) -> Complex64 {
        let inv = z.inv();
        let n = self.coeffs.len();
        let mut acc = Complex64::new(self.coeffs[n - 1], 0.0);
        for j in (0..n - 1).rev() {
            acc = acc * inv + self.coeffs[j];
        }
        (acc * inv).inv()
    }
}

/// Coefficients of (1 + u z)^gamma up to z^(len-1).
fn binomial_series(u: f64, gamma: f64, len: usize) -> Vec<f64> {
    let mut b = vec![0.0; len];
    b[0] = 1.0;
    for k in 0..len.saturating_sub(1) {
        b[k + 1] = b[k] * u * (gamma - k as f64) / (k as f64 + 1.0);
    }
    b
}

/// Product of two coefficient arrays (index = power of z, both starting at
/// z^0), truncated to `len` entries and reinterpreted as a_1.. of z * A * B.
fn mul_shifted(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Polynomial product truncated to `len` coefficients (index = power).
fn poly_mul_trunc(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}
