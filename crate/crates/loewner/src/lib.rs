//! Loewner driving functions of simple curves in the upper half plane.
//!
//! The crate has three layers:
//!
//! - the zipper: compute the driving function of a discretized curve by
//!   composing elementary slit-removing conformal maps, either naively
//!   (O(N^2)) or with block power-series acceleration ([`zipper`],
//!   [`conformal`], [`series`]);
//! - lattice curve models: loop-erased random walk, self-avoiding walk and
//!   the percolation exploration interface, with vertical distortion and
//!   rescaling to plane coordinates ([`curves`]);
//! - statistics: the battery of tests for whether a sampled driving process
//!   behaves like Brownian motion, plus the variance-slope fit ([`stats`]).

pub mod conformal;
pub mod curves;
pub mod error;
pub mod hashutil;
pub mod rng;
pub mod series;
pub mod stats;
pub mod zipper;

pub use conformal::{HalfPlanePoint, SlitKind, SlitMap, SlitStep, TiltedSlit, VerticalSlit};
pub use error::{Error, Result};
pub use series::PowerSeries;
pub use zipper::{
    block_radius, unzip_fast, unzip_fast_accounted, unzip_naive, Curve, DrivingFunction,
    FastZipConfig,
};
