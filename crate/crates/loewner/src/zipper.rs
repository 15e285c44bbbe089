//! Driving functions of discretized curves.
//!
//! The naive unzip maps each new curve point through every previous slit map
//! (O(N^2) map applications). The fast unzip freezes completed groups of `b`
//! maps into blocks; a block whose argument is far enough outside its radius
//! is applied through the truncated series of its composition instead of its
//! `b` member maps.

use num_complex::Complex64;

use crate::conformal::{
    tilted_from_tip, vertical_from_tip, HalfPlanePoint, SlitKind, TiltedSlit, VerticalSlit,
};
use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Image tips at or below this height count as a numerical self-intersection.
const SELF_INTERSECT_EPS: f64 = 1e-14;

/// A simple curve in the upper half plane, first point at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    points: Vec<HalfPlanePoint>,
}

impl Curve {
    pub fn new(points: Vec<HalfPlanePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCurve {
                reason: "curve has no points".into(),
            });
        }
        if points[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidCurve {
                reason: format!("first point must be the origin, got {}", points[0]),
            });
        }
        for (i, p) in points.iter().enumerate().skip(1) {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(Error::InvalidCurve {
                    reason: format!("point {i} is not finite"),
                });
            }
            if p.im <= 0.0 {
                return Err(Error::InvalidCurve {
                    reason: format!("point {i} = {p} is not strictly inside the half plane"),
                });
            }
            if *p == points[i - 1] {
                return Err(Error::InvalidCurve {
                    reason: format!("points {} and {i} coincide", i - 1),
                });
            }
        }
        Ok(Curve { points })
    }

    pub fn points(&self) -> &[HalfPlanePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Scaled copy s * curve (s > 0).
    pub fn scaled(&self, s: f64) -> Curve {
        Curve {
            points: self.points.iter().map(|p| p * s).collect(),
        }
    }

    /// Mirror image through the imaginary axis.
    pub fn reflected(&self) -> Curve {
        Curve {
            points: self.points.iter().map(|p| crate::conformal::reflect(*p)).collect(),
        }
    }

    /// First `n` points (at least 2).
    pub fn prefix(&self, n: usize) -> Curve {
        let n = n.clamp(2, self.points.len());
        Curve {
            points: self.points[..n].to_vec(),
        }
    }

    /// Every `stride`-th point, always keeping the origin.
    pub fn thinned(&self, stride: usize) -> Curve {
        assert!(stride >= 1);
        Curve {
            points: self.points.iter().copied().step_by(stride).collect(),
        }
    }
}

/// The computed driving function: cumulative samples (t_k, u_k) plus the
/// per-step increments they were accumulated from.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingFunction {
    times: Vec<f64>,
    values: Vec<f64>,
    dts: Vec<f64>,
    dus: Vec<f64>,
}

impl DrivingFunction {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dts(&self) -> &[f64] {
        &self.dts
    }

    pub fn dus(&self) -> &[f64] {
        &self.dus
    }

    /// Number of elementary steps (including a final truncated one).
    pub fn steps(&self) -> usize {
        self.dts.len()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// U at time t by linear interpolation between step samples.
    pub fn sample_one(&self, t: f64) -> Result<f64> {
        let t_max = self.final_time();
        if !(0.0..=t_max).contains(&t) {
            return Err(Error::TimeOutOfRange { t, t_max });
        }
        // index of the first sample with times[i] >= t
        let i = self.times.partition_point(|&x| x < t);
        if i == 0 {
            return Ok(self.values[0]);
        }
        if self.times[i] == t {
            return Ok(self.values[i]);
        }
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let (u0, u1) = (self.values[i - 1], self.values[i]);
        Ok(u0 + (u1 - u0) * ((t - t0) / (t1 - t0)))
    }

    pub fn sample_at(&self, ts: &[f64]) -> Result<Vec<f64>> {
        ts.iter().map(|&t| self.sample_one(t)).collect()
    }
}

/// Parameters of the block-accelerated unzip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FastZipConfig {
    /// Number of elementary maps per block.
    pub block_len: usize,
    /// Truncation order of the block series.
    pub series_order: usize,
    /// A block's series is used for arguments with |z| >= threshold * R_j.
    pub threshold: f64,
    pub kind: SlitKind,
}

pub const DEFAULT_SERIES_ORDER: usize = 12;
pub const DEFAULT_THRESHOLD: f64 = 4.0;

impl FastZipConfig {
    pub fn new(block_len: usize, series_order: usize, threshold: f64, kind: SlitKind) -> Result<Self> {
        if block_len < 1 {
            return Err(Error::InvalidParameter {
                reason: "block length must be >= 1".into(),
            });
        }
        if series_order < 2 {
            return Err(Error::InvalidParameter {
                reason: "series order must be >= 2".into(),
            });
        }
        if !(threshold > 1.0) {
            return Err(Error::InvalidParameter {
                reason: "threshold must be > 1".into(),
            });
        }
        Ok(FastZipConfig {
            block_len,
            series_order,
            threshold,
            kind,
        })
    }

    /// Rule-of-thumb block length sqrt(N)/4 for a curve of n points.
    pub fn auto_block_len(n_points: usize) -> usize {
        (((n_points as f64).sqrt() / 4.0).round() as usize).max(1)
    }

    pub fn with_auto_block(n_points: usize, kind: SlitKind) -> Self {
        FastZipConfig {
            block_len: Self::auto_block_len(n_points),
            series_order: DEFAULT_SERIES_ORDER,
            threshold: DEFAULT_THRESHOLD,
            kind,
        }
    }
}

/// Maximum distance from the origin among a block's member images.
pub fn block_radius(images: &[HalfPlanePoint]) -> f64 {
    assert!(!images.is_empty(), "block radius of an empty set");
    images.iter().fold(0.0f64, |m, p| m.max(p.norm()))
}

/// The per-family operations the unzip engines need.
trait Elementary: Copy {
    fn from_tip(w: Complex64) -> Result<(Self, f64, f64)>;
    fn apply(&self, z: Complex64) -> Result<Complex64>;
    fn hat_series(&self, order: usize) -> PowerSeries;
}

impl Elementary for VerticalSlit {
    #[inline]
    fn from_tip(w: Complex64) -> Result<(Self, f64, f64)> {
        let step = vertical_from_tip(w)?;
        match step.map {
            crate::conformal::SlitMap::Vertical(v) => Ok((v, step.dt, step.du)),
            _ => unreachable!(),
        }
    }

    #[inline]
    fn apply(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.apply_unchecked(z))
    }

    fn hat_series(&self, order: usize) -> PowerSeries {
        PowerSeries::from_vertical(self, order)
    }
}

impl Elementary for TiltedSlit {
    #[inline]
    fn from_tip(w: Complex64) -> Result<(Self, f64, f64)> {
        let step = tilted_from_tip(w)?;
        match step.map {
            crate::conformal::SlitMap::Tilted(t) => Ok((t, step.dt, step.du)),
            _ => unreachable!(),
        }
    }

    #[inline]
    fn apply(&self, z: Complex64) -> Result<Complex64> {
        self.apply_checked(z)
    }

    fn hat_series(&self, order: usize) -> PowerSeries {
        PowerSeries::from_tilted(self, order)
    }
}

struct Recorder {
    times: Vec<f64>,
    values: Vec<f64>,
    dts: Vec<f64>,
    dus: Vec<f64>,
    t: f64,
    u: f64,
}

impl Recorder {
    fn new(capacity: usize) -> Self {
        let mut times = Vec::with_capacity(capacity + 1);
        let mut values = Vec::with_capacity(capacity + 1);
        times.push(0.0);
        values.push(0.0);
        Recorder {
            times,
            values,
            dts: Vec::with_capacity(capacity),
            dus: Vec::with_capacity(capacity),
            t: 0.0,
            u: 0.0,
        }
    }

    #[inline]
    fn push(&mut self, dt: f64, du: f64) {
        self.t += dt;
        self.u += du;
        self.times.push(self.t);
        self.values.push(self.u);
        self.dts.push(dt);
        self.dus.push(du);
    }

    /// Pull the final sample back to exactly `t_max` by linear interpolation
    /// inside the last step.
    fn truncate_to(&mut self, t_max: f64) {
        let n = self.times.len();
        debug_assert!(n >= 2 && self.t >= t_max);
        let (t0, t1) = (self.times[n - 2], self.times[n - 1]);
        let (u0, u1) = (self.values[n - 2], self.values[n - 1]);
        let u = if t1 == t0 {
            u1
        } else {
            u0 + (u1 - u0) * ((t_max - t0) / (t1 - t0))
        };
        self.times[n - 1] = t_max;
        self.values[n - 1] = u;
        *self.dts.last_mut().unwrap() = t_max - t0;
        *self.dus.last_mut().unwrap() = u - u0;
        self.t = t_max;
        self.u = u;
    }

    fn into_driving(self) -> DrivingFunction {
        DrivingFunction {
            times: self.times,
            values: self.values,
            dts: self.dts,
            dus: self.dus,
        }
    }
}

fn check_t_max(t_max: Option<f64>) -> Result<()> {
    if let Some(t) = t_max {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter {
                reason: format!("t_max must be positive, got {t}"),
            });
        }
    }
    Ok(())
}

/// Unzip by mapping every new point through all previous elementary maps.
///
/// If `t_max` is given, unzipping stops after the first step whose cumulative
/// capacity time reaches it and the final sample is interpolated back to
/// exactly `t_max`; if the curve runs out first the full record is returned.
pub fn unzip_naive(curve: &Curve, kind: SlitKind, t_max: Option<f64>) -> Result<DrivingFunction> {
    check_t_max(t_max)?;
    match kind {
        SlitKind::Vertical => naive_engine::<VerticalSlit>(curve, t_max),
        SlitKind::Tilted => naive_engine::<TiltedSlit>(curve, t_max),
    }
}

fn naive_engine<E: Elementary>(curve: &Curve, t_max: Option<f64>) -> Result<DrivingFunction> {
    let pts = curve.points();
    let mut maps: Vec<E> = Vec::with_capacity(pts.len().saturating_sub(1));
    let mut rec = Recorder::new(pts.len().saturating_sub(1));
    for (i, &z) in pts.iter().enumerate().skip(1) {
        let mut w = z;
        for m in &maps {
            w = m.apply(w).map_err(|e| e.at_index(i))?;
        }
        if w.im <= SELF_INTERSECT_EPS {
            return Err(Error::SelfIntersection { index: i, im: w.im });
        }
        let (m, dt, du) = E::from_tip(w).map_err(|e| e.at_index(i))?;
        maps.push(m);
        rec.push(dt, du);
        if let Some(tm) = t_max {
            if rec.t >= tm {
                rec.truncate_to(tm);
                break;
            }
        }
    }
    Ok(rec.into_driving())
}

/// Block-accelerated unzip with the same contract as [`unzip_naive`].
pub fn unzip_fast(curve: &Curve, cfg: &FastZipConfig, t_max: Option<f64>) -> Result<DrivingFunction> {
    Ok(unzip_fast_accounted(curve, cfg, t_max)?.0)
}

/// Like [`unzip_fast`], also reporting the bytes held by the unzip state at
/// completion (its peak: the state only grows).
pub fn unzip_fast_accounted(
    curve: &Curve,
    cfg: &FastZipConfig,
    t_max: Option<f64>,
) -> Result<(DrivingFunction, usize)> {
    check_t_max(t_max)?;
    FastZipConfig::new(cfg.block_len, cfg.series_order, cfg.threshold, cfg.kind)?;
    match cfg.kind {
        SlitKind::Vertical => fast_engine::<VerticalSlit>(curve, cfg, t_max),
        SlitKind::Tilted => fast_engine::<TiltedSlit>(curve, cfg, t_max),
    }
}

struct SealedBlock<E> {
    maps: Vec<E>,
    series: PowerSeries,
    /// (threshold * R_j)^2, compared against |z|^2.
    threshold_sq: f64,
}

fn fast_engine<E: Elementary>(
    curve: &Curve,
    cfg: &FastZipConfig,
    t_max: Option<f64>,
) -> Result<(DrivingFunction, usize)> {
    let pts = curve.points();
    let n = cfg.series_order;
    let b = cfg.block_len;
    let lsq = cfg.threshold * cfg.threshold;

    let mut blocks: Vec<SealedBlock<E>> = Vec::with_capacity(pts.len() / b + 1);
    let mut partial: Vec<E> = Vec::with_capacity(b);
    let mut partial_series = PowerSeries::identity(n);
    let mut partial_radius_sq = 0.0f64;
    let mut rec = Recorder::new(pts.len().saturating_sub(1));

    for (i, &z) in pts.iter().enumerate().skip(1) {
        let mut v = z;
        for blk in &blocks {
            if v.norm_sqr() >= blk.threshold_sq {
                v = blk.series.eval_map(v);
            } else {
                for m in &blk.maps {
                    v = m.apply(v).map_err(|e| e.at_index(i))?;
                }
            }
        }
        // v is the image of z under all sealed blocks: a candidate for the
        // radius of the block currently being assembled.
        partial_radius_sq = partial_radius_sq.max(v.norm_sqr());
        for m in &partial {
            v = m.apply(v).map_err(|e| e.at_index(i))?;
        }
        if v.im <= SELF_INTERSECT_EPS {
            return Err(Error::SelfIntersection { index: i, im: v.im });
        }
        let (m, dt, du) = E::from_tip(v).map_err(|e| e.at_index(i))?;
        partial_series = m.hat_series(n).compose(&partial_series)?;
        partial.push(m);
        if partial.len() == b {
            blocks.push(SealedBlock {
                maps: std::mem::take(&mut partial),
                series: std::mem::replace(&mut partial_series, PowerSeries::identity(n)),
                threshold_sq: lsq * partial_radius_sq,
            });
            partial = Vec::with_capacity(b);
            partial_radius_sq = 0.0;
        }
        rec.push(dt, du);
        if let Some(tm) = t_max {
            if rec.t >= tm {
                rec.truncate_to(tm);
                break;
            }
        }
    }

    let series_bytes = (n * 8 + 48) * (blocks.len() + 1);
    let map_bytes =
        std::mem::size_of::<E>() * (blocks.iter().map(|bl| bl.maps.len()).sum::<usize>() + b);
    let rec_bytes = 8 * (2 * rec.times.capacity() + 2 * rec.dts.capacity());
    let block_overhead = std::mem::size_of::<SealedBlock<E>>() * blocks.capacity();
    let bytes = series_bytes + map_bytes + rec_bytes + block_overhead;
    Ok((rec.into_driving(), bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// Vertical segment at abscissa x, height y, m points above the origin.
    fn vertical_segment(x: f64, y: f64, m: usize) -> Curve {
        let mut pts = vec![Complex64::new(0.0, 0.0)];
        pts.extend((1..=m).map(|k| Complex64::new(x, y * k as f64 / m as f64)));
        Curve::new(pts).unwrap()
    }

    /// Simple random staircase: strictly increasing imaginary part.
    fn staircase(n: usize, seed: u64) -> Curve {
        let mut rng = crate::rng::stream(seed, 0);
        let mut pts = vec![Complex64::new(0.0, 0.0)];
        let mut x = 0.0;
        for k in 1..=n {
            x += rng.gen_range(-0.02..0.02);
            pts.push(Complex64::new(x, 0.01 * k as f64));
        }
        Curve::new(pts).unwrap()
    }

    #[test]
    fn curve_validation() {
        assert!(Curve::new(vec![]).is_err());
        assert!(Curve::new(vec![Complex64::new(0.1, 0.0)]).is_err());
        assert!(Curve::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).is_err());
        let dup = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 1.0),
        ];
        assert!(Curve::new(dup).is_err());
    }

    #[test]
    fn vertical_segment_telescopes_exactly() {
        let curve = vertical_segment(0.3, 1.0, 1000);
        let d = unzip_naive(&curve, SlitKind::Vertical, None).unwrap();
        assert!((d.final_value() - 0.3).abs() < 1e-12, "U_T = {}", d.final_value());
        assert!((d.final_time() - 0.25).abs() < 1e-12, "T = {}", d.final_time());
        // every driving increment after the first vanishes
        for &du in &d.dus()[1..] {
            assert_eq!(du, 0.0);
        }
    }

    #[test]
    fn fast_with_giant_threshold_is_bit_identical_to_naive() {
        let curve = staircase(400, 33);
        let naive = unzip_naive(&curve, SlitKind::Vertical, None).unwrap();
        let cfg = FastZipConfig::new(1, 12, 1e30, SlitKind::Vertical).unwrap();
        let fast = unzip_fast(&curve, &cfg, None).unwrap();
        assert_eq!(naive, fast);
        // grouping into longer blocks must not change the arithmetic either
        let cfg = FastZipConfig::new(16, 12, 1e30, SlitKind::Vertical).unwrap();
        let fast = unzip_fast(&curve, &cfg, None).unwrap();
        assert_eq!(naive, fast);
    }

    #[test]
    fn fast_matches_naive_on_vertical_segment() {
        let curve = vertical_segment(0.3, 1.0, 1000);
        let cfg = FastZipConfig::new(25, 12, 4.0, SlitKind::Vertical).unwrap();
        let fast = unzip_fast(&curve, &cfg, None).unwrap();
        let naive = unzip_naive(&curve, SlitKind::Vertical, None).unwrap();
        let rel_t = (fast.final_time() - naive.final_time()).abs() / naive.final_time();
        assert!(rel_t < 1e-9, "relative T difference {rel_t:e}");
        assert!((fast.final_value() - naive.final_value()).abs() < 1e-9);
    }

    #[test]
    fn fast_matches_naive_on_staircase() {
        let curve = staircase(2000, 7);
        let cfg = FastZipConfig::new(11, 12, 4.0, SlitKind::Vertical).unwrap();
        let fast = unzip_fast(&curve, &cfg, None).unwrap();
        let naive = unzip_naive(&curve, SlitKind::Vertical, None).unwrap();
        let rel_t = (fast.final_time() - naive.final_time()).abs() / naive.final_time();
        let rel_u =
            (fast.final_value() - naive.final_value()).abs() / naive.max_abs_value();
        assert!(rel_t < 1e-6, "relative T difference {rel_t:e}");
        assert!(rel_u < 1e-6, "relative U difference {rel_u:e}");
    }

    #[test]
    fn straight_tilted_line_has_sqrt_t_driving() {
        // alpha = 1/3: U_t / sqrt(t) = 2(1-2a)/sqrt(a(1-a)) = sqrt(2).
        let m = 1000;
        let dir = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let mut pts = vec![Complex64::new(0.0, 0.0)];
        pts.extend((1..=m).map(|k| dir * (k as f64 / m as f64)));
        let curve = Curve::new(pts).unwrap();
        let d = unzip_naive(&curve, SlitKind::Tilted, None).unwrap();
        let ratio = d.final_value() / d.final_time().sqrt();
        assert!(
            (ratio - std::f64::consts::SQRT_2).abs() < 1e-3,
            "U_T/sqrt(T) = {ratio}"
        );
    }

    #[test]
    fn single_point_curve_is_one_step() {
        let curve = Curve::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.4, 0.8)]).unwrap();
        let d = unzip_naive(&curve, SlitKind::Vertical, None).unwrap();
        assert_eq!(d.steps(), 1);
        assert_eq!(d.final_value(), 0.4);
        assert_eq!(d.final_time(), 0.25 * 0.8 * 0.8);
    }

    #[test]
    fn capacity_is_additive() {
        let curve = staircase(500, 9);
        let d = unzip_naive(&curve, SlitKind::Vertical, None).unwrap();
        let sum: f64 = d.dts().iter().sum();
        assert!((sum - d.final_time()).abs() <= 1e-12 * d.final_time().max(1.0));
        assert!(d.times().windows(2).all(|w| w[1] > w[0]), "t must increase");
    }

    #[test]
    fn scaling_covariance() {
        let curve = staircase(300, 5);
        let s = 2.5;
        let big = curve.scaled(s);
        for kind in [SlitKind::Vertical, SlitKind::Tilted] {
            let d1 = unzip_naive(&curve, kind, None).unwrap();
            let d2 = unzip_naive(&big, kind, None).unwrap();
            for (k, (&t, &u)) in d1.times().iter().zip(d1.values()).enumerate() {
                let t2 = d2.times()[k];
                let u2 = d2.values()[k];
                assert!(
                    (t2 - s * s * t).abs() <= 1e-9 * (s * s * t).max(1e-12),
                    "capacity not covariant at step {k}"
                );
                assert!(
                    (u2 - s * u).abs() <= 1e-9 * (s * u.abs()).max(1e-9),
                    "driving not covariant at step {k}"
                );
            }
        }
    }

    #[test]
    fn reflection_negates_driving_exactly() {
        let curve = staircase(300, 6);
        let mirror = curve.reflected();
        for kind in [SlitKind::Vertical, SlitKind::Tilted] {
            let d = unzip_naive(&curve, kind, None).unwrap();
            let m = unzip_naive(&mirror, kind, None).unwrap();
            for k in 0..d.steps() {
                assert_eq!(d.dts()[k], m.dts()[k], "dt changed under reflection");
                assert!(
                    d.dus()[k] == -m.dus()[k] || (d.dus()[k] == 0.0 && m.dus()[k] == 0.0),
                    "du not negated at step {k}: {} vs {}",
                    d.dus()[k],
                    m.dus()[k]
                );
            }
        }
        // and the fast variant preserves the symmetry too
        let cfg = FastZipConfig::new(9, 12, 4.0, SlitKind::Vertical).unwrap();
        let d = unzip_fast(&curve, &cfg, None).unwrap();
        let m = unzip_fast(&mirror, &cfg, None).unwrap();
        for k in 0..d.steps() {
            assert_eq!(d.dts()[k], m.dts()[k]);
            assert!(d.dus()[k] == -m.dus()[k] || (d.dus()[k] == 0.0 && m.dus()[k] == 0.0));
        }
    }

    #[test]
    fn t_max_truncates_exactly() {
        let curve = vertical_segment(0.2, 1.0, 100);
        let d = unzip_naive(&curve, SlitKind::Vertical, Some(0.1)).unwrap();
        assert_eq!(d.final_time(), 0.1);
        assert!(d.steps() < 100);
        let sum: f64 = d.dts().iter().sum();
        assert!((sum - 0.1).abs() < 1e-15);
        // horizon beyond the curve capacity: full record, no error
        let d = unzip_naive(&curve, SlitKind::Vertical, Some(10.0)).unwrap();
        assert_eq!(d.steps(), 100);
        assert!((d.final_time() - 0.25).abs() < 1e-12);
        // nonsense horizons are rejected
        assert!(unzip_naive(&curve, SlitKind::Vertical, Some(0.0)).is_err());
    }

    #[test]
    fn self_intersection_detected() {
        // Second point hides just next to the first slit: its image collapses
        // onto the real axis.
        let pts = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1e-18, 0.5),
        ];
        let curve = Curve::new(pts).unwrap();
        let err = unzip_naive(&curve, SlitKind::Vertical, None).unwrap_err();
        assert!(
            matches!(err, Error::SelfIntersection { index: 2, .. }),
            "got {err:?}"
        );
    }

    #[test]
    fn block_radius_is_max_modulus() {
        assert_eq!(block_radius(&[Complex64::new(0.0, 1.0)]), 1.0);
        let r = block_radius(&[Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.1)]);
        assert!((r - 4.01f64.sqrt()).abs() < 1e-15);
        let mut rng = crate::rng::stream(3, 0);
        let pts: Vec<Complex64> = (0..100)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.0..2.0)))
            .collect();
        let brute = pts.iter().map(|p| p.norm()).fold(0.0f64, f64::max);
        assert_eq!(block_radius(&pts), brute);
    }

    #[test]
    fn sampling_driving_functions() {
        let curve = vertical_segment(0.1, 1.0, 50);
        let d = unzip_naive(&curve, SlitKind::Vertical, None).unwrap();
        // exact step times reproduce the stored values
        for (k, &t) in d.times().iter().enumerate() {
            assert_eq!(d.sample_one(t).unwrap(), d.values()[k]);
        }
        // midpoint rule
        let (t0, t1) = (d.times()[3], d.times()[4]);
        let mid = d.sample_one(0.5 * (t0 + t1)).unwrap();
        assert!((mid - 0.5 * (d.values()[3] + d.values()[4])).abs() < 1e-15);
        // dense resampling then re-interpolation is idempotent
        let grid: Vec<f64> = (0..=1000).map(|k| d.final_time() * k as f64 / 1000.0).collect();
        let first = d.sample_at(&grid).unwrap();
        let again = d.sample_at(&grid).unwrap();
        assert_eq!(first, again);
        // out of range
        assert!(d.sample_one(d.final_time() * 1.0000001).is_err());
        assert!(d.sample_one(-1e-12).is_err());
    }

    #[test]
    fn memory_stays_near_linear() {
        let curve = staircase(20_000, 12);
        let cfg = FastZipConfig::with_auto_block(curve.len(), SlitKind::Vertical);
        let (_, bytes) = unzip_fast_accounted(&curve, &cfg, None).unwrap();
        let curve_bytes = curve.len() * std::mem::size_of::<Complex64>();
        assert!(
            bytes <= 10 * curve_bytes,
            "unzip state {bytes} B exceeds 10x curve storage {curve_bytes} B"
        );
    }
}
