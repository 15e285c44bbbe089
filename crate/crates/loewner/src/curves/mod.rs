//! Lattice random-curve models and their conversion to plane curves.
//!
//! All three models produce chordal curves from the origin toward infinity in
//! the upper half plane: the loop-erased random walk (loop erasure of the
//! half-plane excursion), the self-avoiding walk (pivot Monte Carlo), and the
//! critical percolation exploration interface on the hexagonal lattice.

mod lerw;
mod percolation;
mod saw;
pub mod file;

pub use lerw::{excursion_probs, excursion_step, generate_lerw, Direction};
pub use percolation::generate_percolation_interface;
pub use saw::{default_burn_in, generate_saw, PivotChain};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::zipper::Curve;

/// An ordered lattice path starting at the origin.
///
/// Square-lattice walks store integer sites; the percolation interface stores
/// hexagonal lattice vertices in integer units of (sqrt(3)/2, 1/2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeWalk {
    Square(Vec<(i32, i32)>),
    HexVertices(Vec<(i32, i32)>),
}

impl LatticeWalk {
    /// Number of steps (sites minus one).
    pub fn steps(&self) -> usize {
        self.sites_len().saturating_sub(1)
    }

    pub fn sites_len(&self) -> usize {
        match self {
            LatticeWalk::Square(s) => s.len(),
            LatticeWalk::HexVertices(s) => s.len(),
        }
    }

    /// Planar coordinates of the walk.
    pub fn to_points(&self) -> Vec<(f64, f64)> {
        match self {
            LatticeWalk::Square(s) => s.iter().map(|&(x, y)| (x as f64, y as f64)).collect(),
            LatticeWalk::HexVertices(s) => {
                let ux = 3.0f64.sqrt() / 2.0;
                s.iter().map(|&(a, b)| (a as f64 * ux, b as f64 * 0.5)).collect()
            }
        }
    }

    /// True if no site repeats.
    pub fn is_simple(&self) -> bool {
        let sites = match self {
            LatticeWalk::Square(s) => s,
            LatticeWalk::HexVertices(s) => s,
        };
        let mut seen = crate::hashutil::FastSet::default();
        sites.iter().all(|&(x, y)| seen.insert(crate::hashutil::pack(x, y)))
    }
}

/// The vertical distortion (x, y) -> (x, lambda y).
pub fn distort(points: &[(f64, f64)], lambda: f64) -> Result<Vec<(f64, f64)>> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter {
            reason: format!("lambda must be positive, got {lambda}"),
        });
    }
    Ok(points.iter().map(|&(x, y)| (x, lambda * y)).collect())
}

/// Divide all coordinates by N^nu and wrap as a [`Curve`].
pub fn rescale_to_curve(points: &[(f64, f64)], n: usize, nu: f64) -> Result<Curve> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            reason: "rescaling length must be >= 1".into(),
        });
    }
    let scale = (n as f64).powf(nu);
    let pts: Vec<Complex64> = points
        .iter()
        .map(|&(x, y)| Complex64::new(x / scale, y / scale))
        .collect();
    Curve::new(pts)
}

/// The three lattice models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Lerw,
    Saw,
    Percolation,
}

impl Model {
    /// Size-rescaling exponent nu used to bring an N-step walk to unit scale.
    pub fn default_nu(self) -> f64 {
        match self {
            Model::Lerw => 0.8,
            Model::Saw => 0.75,
            Model::Percolation => 4.0 / 7.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Lerw => "lerw",
            Model::Saw => "saw",
            Model::Percolation => "percolation",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lerw" => Ok(Model::Lerw),
            "saw" => Ok(Model::Saw),
            "percolation" => Ok(Model::Percolation),
            other => Err(Error::InvalidParameter {
                reason: format!("unknown model '{other}' (expected lerw|saw|percolation)"),
            }),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Parameters of one model run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub model: Model,
    /// Lattice steps per generated walk.
    pub steps: usize,
    /// Rescaling exponent; defaults to the model's value.
    pub nu: f64,
    /// Vertical distortion factor.
    pub lambda: f64,
    /// Capacity horizon the driving function is computed up to.
    pub t_horizon: f64,
    pub seed: u64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 1 {
            return Err(Error::InvalidParameter {
                reason: "steps must be >= 1".into(),
            });
        }
        if !(self.lambda > 0.0) {
            return Err(Error::InvalidParameter {
                reason: format!("lambda must be positive, got {}", self.lambda),
            });
        }
        if !(self.nu > 0.0) {
            return Err(Error::InvalidParameter {
                reason: format!("nu must be positive, got {}", self.nu),
            });
        }
        if !(self.t_horizon > 0.0) {
            return Err(Error::InvalidParameter {
                reason: format!("t_horizon must be positive, got {}", self.t_horizon),
            });
        }
        Ok(())
    }
}
