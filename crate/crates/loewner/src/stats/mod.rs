//! Statistical tests of whether a sampled driving process is Brownian motion.
//!
//! Each driving function contributes its values at ten equally spaced
//! capacity times. The battery: Kolmogorov-Smirnov normality of U at T/2 and
//! T, a mean test on the product of the two half-interval increments, two
//! sign-pattern chi-square tests (10 and 5 increments), and a quartile-cell
//! chi-square on the two half-interval increments. The variance slope kappa
//! is estimated by weighted least squares through the origin.

pub mod special;

use rand::Rng;

use crate::error::{Error, Result};
use special::{chi2_sf, ks_sf, normal_cdf, normal_quantile};

/// Number of grid times the driving function is recorded at.
pub const GRID: usize = 10;

/// U values of many samples at the ten grid times T/10, 2T/10, ..., T.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingSampleMatrix {
    t_final: f64,
    rows: Vec<[f64; GRID]>,
}

impl DrivingSampleMatrix {
    pub fn new(t_final: f64, rows: Vec<[f64; GRID]>) -> Result<Self> {
        if !(t_final > 0.0) {
            return Err(Error::InvalidParameter {
                reason: format!("t_final must be positive, got {t_final}"),
            });
        }
        if rows.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(DrivingSampleMatrix { t_final, rows })
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    /// The grid times T/10, ..., T.
    pub fn times(&self) -> [f64; GRID] {
        std::array::from_fn(|i| self.t_final * (i + 1) as f64 / GRID as f64)
    }

    pub fn rows(&self) -> &[[f64; GRID]] {
        &self.rows
    }

    pub fn n_samples(&self) -> usize {
        self.rows.len()
    }

    /// Column of U values at grid index i (0-based).
    fn column(&self, i: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    /// Increments over `n_inc` equal subdivisions of [0, T]; `n_inc` must
    /// divide the grid.
    fn increments(&self, n_inc: usize) -> Vec<Vec<f64>> {
        assert!(GRID % n_inc == 0);
        let stride = GRID / n_inc;
        self.rows
            .iter()
            .map(|r| {
                (0..n_inc)
                    .map(|j| {
                        let hi = r[(j + 1) * stride - 1];
                        let lo = if j == 0 { 0.0 } else { r[j * stride - 1] };
                        hi - lo
                    })
                    .collect()
            })
            .collect()
    }
}

/// Weighted least-squares slope of E[U_t^2] = kappa t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaEstimate {
    pub kappa: f64,
    /// Two standard deviations, as the slope's reported half-width.
    pub stderr: f64,
}

/// Fit kappa through the origin, weighting each grid time by the inverse
/// estimated variance of its sample second moment.
pub fn fit_kappa(matrix: &DrivingSampleMatrix) -> Result<KappaEstimate> {
    let n = matrix.n_samples();
    if n < 30 {
        return Err(Error::DegenerateInput {
            reason: format!("kappa fit needs >= 30 samples, got {n}"),
        });
    }
    let times = matrix.times();
    let mut swtv = 0.0;
    let mut swtt = 0.0;
    for (i, &t) in times.iter().enumerate() {
        let sq: Vec<f64> = matrix.column(i).iter().map(|u| u * u).collect();
        let mean = sq.iter().sum::<f64>() / n as f64;
        let var = sq.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0);
        let var_of_mean = var / n as f64;
        if !(var_of_mean > 0.0) {
            return Err(Error::DegenerateInput {
                reason: format!("second moment at t = {t} has no spread"),
            });
        }
        let w = 1.0 / var_of_mean;
        swtv += w * t * mean;
        swtt += w * t * t;
    }
    Ok(KappaEstimate {
        kappa: swtv / swtt,
        stderr: 2.0 / swtt.sqrt(),
    })
}

/// Kolmogorov-Smirnov statistic against a continuous cdf:
/// D = max_k |F(Y_(k)) - (k - 1/2)/N| + 1/(2N), p = Q_KS(sqrt(N) D).
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("samples must not contain NaN"));
    let nf = n as f64;
    let mut d = 0.0f64;
    for (k, y) in sorted.iter().enumerate() {
        let f = cdf(*y);
        d = d.max((f - (k as f64 + 0.5) / nf).abs());
    }
    let d = d + 0.5 / nf;
    Ok((d, ks_sf(nf.sqrt() * d)))
}

/// Mean test on X1 X2 with X1 = U_{T/2}, X2 = U_T - U_{T/2}: under the null
/// the product has mean zero and standard deviation kappa T / 2.
pub fn z_statistic(u_half: &[f64], u_full: &[f64], kappa: f64, t_final: f64) -> Result<(f64, f64)> {
    if u_half.len() != u_full.len() {
        return Err(Error::LengthMismatch {
            left: u_half.len(),
            right: u_full.len(),
        });
    }
    let n = u_half.len();
    if n < 2 {
        return Err(Error::DegenerateInput {
            reason: "z statistic needs at least two samples".into(),
        });
    }
    let mean = u_half
        .iter()
        .zip(u_full)
        .map(|(x1, u)| x1 * (u - x1))
        .sum::<f64>()
        / n as f64;
    let sigma = kappa * t_final / 2.0;
    let z = mean / (sigma / (n as f64).sqrt());
    let p = 2.0 * (1.0 - normal_cdf(z.abs()));
    Ok((z, p))
}

/// Chi-square over the 2^n_inc sign patterns of the increments. Under the
/// null all patterns are equally likely, independent of kappa.
pub fn chi2_sign_cells(
    matrix: &DrivingSampleMatrix,
    n_inc: usize,
) -> Result<(f64, usize, f64)> {
    if n_inc != 10 && n_inc != 5 {
        return Err(Error::InvalidParameter {
            reason: format!("sign cells are defined for 10 or 5 increments, got {n_inc}"),
        });
    }
    let cells = 1usize << n_inc;
    let mut counts = vec![0u64; cells];
    for inc in matrix.increments(n_inc) {
        let mut idx = 0usize;
        for (j, x) in inc.iter().enumerate() {
            if *x > 0.0 {
                idx |= 1 << j;
            }
        }
        counts[idx] += 1;
    }
    let expected = matrix.n_samples() as f64 / cells as f64;
    let chi2 = counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum::<f64>();
    let dof = cells - 1;
    Ok((chi2, dof, chi2_sf(dof, chi2)?))
}

/// Chi-square over quartile cells of the two half-interval increments; the
/// quartile boundary q = Phi^{-1}(3/4) sqrt(kappa T / 2) depends on kappa.
pub fn chi2_quartile_cells(
    x1: &[f64],
    x2: &[f64],
    kappa: f64,
    t_final: f64,
) -> Result<(f64, usize, f64)> {
    if x1.len() != x2.len() {
        return Err(Error::LengthMismatch {
            left: x1.len(),
            right: x2.len(),
        });
    }
    if x1.is_empty() {
        return Err(Error::EmptySample);
    }
    let q = normal_quantile(0.75)? * (kappa * t_final / 2.0).sqrt();
    let bin = |x: f64| -> usize {
        if x <= -q {
            0
        } else if x <= 0.0 {
            1
        } else if x <= q {
            2
        } else {
            3
        }
    };
    let mut counts = [0u64; 16];
    for (a, b) in x1.iter().zip(x2) {
        counts[4 * bin(*a) + bin(*b)] += 1;
    }
    let expected = x1.len() as f64 / 16.0;
    let chi2 = counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum::<f64>();
    Ok((chi2, 15, chi2_sf(15, chi2)?))
}

/// The full battery for one batch of driving functions.
#[derive(Debug, Clone, PartialEq)]
pub struct StatReport {
    pub n_samples: usize,
    pub kappa: KappaEstimate,
    pub d_half: f64,
    pub d_half_p: f64,
    pub d_full: f64,
    pub d_full_p: f64,
    pub z: f64,
    pub z_p: f64,
    pub chi2_a: f64,
    pub chi2_a_dof: usize,
    pub chi2_a_p: f64,
    pub chi2_b: f64,
    pub chi2_b_dof: usize,
    pub chi2_b_p: f64,
    pub chi2_c: f64,
    pub chi2_c_dof: usize,
    pub chi2_c_p: f64,
}

impl StatReport {
    /// Run every test; kappa is fitted from the same matrix and reused by the
    /// tests that need a variance scale.
    pub fn compute(matrix: &DrivingSampleMatrix) -> Result<StatReport> {
        let kappa = fit_kappa(matrix)?;
        let t_final = matrix.t_final();
        let u_half = matrix.column(GRID / 2 - 1);
        let u_full = matrix.column(GRID - 1);

        let normal = |t: f64| {
            let sd = (kappa.kappa * t).sqrt();
            move |x: f64| normal_cdf(x / sd)
        };
        let (d_half, d_half_p) = ks_statistic(&u_half, normal(t_final / 2.0))?;
        let (d_full, d_full_p) = ks_statistic(&u_full, normal(t_final))?;
        let (z, z_p) = z_statistic(&u_half, &u_full, kappa.kappa, t_final)?;
        let (chi2_a, chi2_a_dof, chi2_a_p) = chi2_sign_cells(matrix, 10)?;
        let (chi2_b, chi2_b_dof, chi2_b_p) = chi2_sign_cells(matrix, 5)?;
        let x2: Vec<f64> = u_full.iter().zip(&u_half).map(|(u, x1)| u - x1).collect();
        let (chi2_c, chi2_c_dof, chi2_c_p) =
            chi2_quartile_cells(&u_half, &x2, kappa.kappa, t_final)?;

        Ok(StatReport {
            n_samples: matrix.n_samples(),
            kappa,
            d_half,
            d_half_p,
            d_full,
            d_full_p,
            z,
            z_p,
            chi2_a,
            chi2_a_dof,
            chi2_a_p,
            chi2_b,
            chi2_b_dof,
            chi2_b_p,
            chi2_c,
            chi2_c_dof,
            chi2_c_p,
        })
    }

    pub fn p_values(&self) -> [f64; 6] {
        [
            self.d_half_p,
            self.d_full_p,
            self.z_p,
            self.chi2_a_p,
            self.chi2_b_p,
            self.chi2_c_p,
        ]
    }

    pub fn csv_header() -> &'static str {
        "model,lambda,N_samples,D_half_p,D_full_p,Z_p,chi2a_p,chi2b_p,chi2c_p"
    }

    pub fn csv_row(&self, model: &str, lambda: f64) -> String {
        format!(
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            model,
            lambda,
            self.n_samples,
            self.d_half_p,
            self.d_full_p,
            self.z_p,
            self.chi2_a_p,
            self.chi2_b_p,
            self.chi2_c_p
        )
    }
}

/// Exact discrete Brownian paths on the grid: independent increments with
/// variance kappa * dt, from one deterministic stream per sample.
pub fn brownian_motion_matrix(
    n_samples: usize,
    kappa: f64,
    t_final: f64,
    master_seed: u64,
) -> Result<DrivingSampleMatrix> {
    let dt = t_final / GRID as f64;
    let sd = (kappa * dt).sqrt();
    let mut rows = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let mut rng = crate::rng::stream(master_seed, i as u64);
        let mut u = 0.0;
        let row = std::array::from_fn(|_| {
            u += sd * standard_normal(&mut rng);
            u
        });
        rows.push(row);
    }
    DrivingSampleMatrix::new(t_final, rows)
}

/// One standard normal draw (Box-Muller; uses two uniforms).
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // in (0, 1]
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
