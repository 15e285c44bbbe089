//! Elementary conformal maps that remove a short slit from the upper half
//! plane, together with their capacity and driving increments.
//!
//! Both map families are normalized hydrodynamically: h(z) = z - dU + 2 dt/z
//! + O(1/z^2) for large z, and the slit tip is sent to the origin. The
//! vertical slit has a closed form in both directions; the tilted slit has a
//! closed-form inverse and is evaluated forward by a safeguarded Newton
//! iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the closed upper half plane.
pub type HalfPlanePoint = Complex64;

/// Tips closer to the real axis than this are rejected as degenerate.
const MIN_TIP_IM: f64 = 0.0;

/// Tilt angles (in units of pi) are clamped away from 0 and 1; outside the
/// clamp the slit parameters overflow.
pub const ALPHA_CLAMP: f64 = 1e-6;

/// Newton iteration cap for the tilted forward map.
const NEWTON_MAX_ITER: usize = 100;

/// Relative residual target for the tilted forward map.
const NEWTON_TOL: f64 = 1e-12;

/// Vertical segment from the real axis at `x` up to `x + iy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalSlit {
    pub x: f64,
    pub y: f64,
}

/// Straight segment from the origin to `r exp(i alpha pi)`.
///
/// The inverse map is (z + x_l)^(1-alpha) (z - x_r)^alpha. Internally the
/// slit is stored in a canonical right-leaning frame (angle <= pi/2) plus a
/// mirror flag, so that reflecting a tip through the imaginary axis produces
/// the bit-exact mirror of every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltedSlit {
    pub r: f64,
    pub alpha: f64,
    pub x_l: f64,
    pub x_r: f64,
    tip: Complex64,
    beta: f64,
    beta_x_l: f64,
    beta_x_r: f64,
    beta_du: f64,
    /// Offset added to the Newton starting guess: the vertical map from the
    /// same tip differs from the tilted map by du_vertical - du_tilted at
    /// leading order.
    guess_shift: f64,
    mirrored: bool,
}

/// One elementary map together with its capacity increment `dt` and driving
/// increment `du`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlitMap {
    Vertical(VerticalSlit),
    Tilted(TiltedSlit),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitStep {
    pub map: SlitMap,
    pub dt: f64,
    pub du: f64,
}

/// Which elementary map family the zipper uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlitKind {
    Vertical,
    Tilted,
}

impl std::fmt::Display for SlitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SlitKind::Vertical => write!(f, "vertical"),
            SlitKind::Tilted => write!(f, "tilted"),
        }
    }
}

impl std::str::FromStr for SlitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertical" => Ok(SlitKind::Vertical),
            "tilted" => Ok(SlitKind::Tilted),
            other => Err(Error::InvalidParameter {
                reason: format!("unknown slit kind '{other}' (expected vertical|tilted)"),
            }),
        }
    }
}

fn check_tip(w: HalfPlanePoint) -> Result<()> {
    if !(w.re.is_finite() && w.im.is_finite()) || w.im <= MIN_TIP_IM {
        return Err(Error::DegenerateTip { im: w.im });
    }
    Ok(())
}

/// Build the vertical slit whose tip is `w`, with dt = y^2/4 and du = x.
pub fn vertical_from_tip(w: HalfPlanePoint) -> Result<SlitStep> {
    check_tip(w)?;
    let slit = VerticalSlit { x: w.re, y: w.im };
    Ok(SlitStep {
        map: SlitMap::Vertical(slit),
        dt: 0.25 * w.im * w.im,
        du: w.re,
    })
}

/// Build the tilted slit whose tip is `w = r exp(i alpha pi)`.
pub fn tilted_from_tip(w: HalfPlanePoint) -> Result<SlitStep> {
    check_tip(w)?;
    let slit = TiltedSlit::from_tip(w)?;
    Ok(SlitStep {
        map: SlitMap::Tilted(slit),
        dt: slit.dt(),
        du: slit.du(),
    })
}

impl SlitKind {
    pub fn step_from_tip(self, w: HalfPlanePoint) -> Result<SlitStep> {
        match self {
            SlitKind::Vertical => vertical_from_tip(w),
            SlitKind::Tilted => tilted_from_tip(w),
        }
    }
}

impl SlitMap {
    pub fn apply(&self, z: HalfPlanePoint) -> Result<HalfPlanePoint> {
        match self {
            SlitMap::Vertical(s) => s.apply(z),
            SlitMap::Tilted(s) => s.apply(z),
        }
    }
}

impl VerticalSlit {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        check_tip(Complex64::new(x, y))?;
        Ok(VerticalSlit { x, y })
    }

    pub fn tip(&self) -> HalfPlanePoint {
        Complex64::new(self.x, self.y)
    }

    fn on_slit(&self, z: HalfPlanePoint) -> bool {
        z.re == self.x && z.im >= 0.0 && z.im <= self.y
    }

    /// h(z) = i sqrt(-(z-x)^2 - y^2), principal branch. Real arguments are
    /// evaluated as the limit from above, so the sign of the real output
    /// matches the side of the slit base.
    pub fn apply(&self, z: HalfPlanePoint) -> Result<HalfPlanePoint> {
        if self.on_slit(z) {
            return Err(Error::PointOnSlit);
        }
        Ok(self.apply_unchecked(z))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, z: HalfPlanePoint) -> HalfPlanePoint {
        let a = z.re - self.x;
        let b = z.im;
        if b == 0.0 {
            // Limit from above: sign follows the side of the base.
            return Complex64::new(a.signum() * (a * a + self.y * self.y).sqrt(), 0.0);
        }
        // s = -(z-x)^2 - y^2; result = i sqrt(s) expanded in real arithmetic.
        let s_re = b * b - a * a - self.y * self.y;
        let s_im = -2.0 * a * b;
        let m = (s_re * s_re + s_im * s_im).sqrt();
        let p = (0.5 * (m + s_re)).max(0.0).sqrt();
        let q = (0.5 * (m - s_re)).max(0.0).sqrt().copysign(s_im);
        Complex64::new(-q, p)
    }

    /// h^{-1}(z) = x + sqrt(z^2 - y^2) with the branch that maps the half
    /// plane onto the half plane minus the slit; real arguments inside the
    /// welding interval [-y, y] fold onto the slit.
    pub fn apply_inverse(&self, z: HalfPlanePoint) -> HalfPlanePoint {
        if z.re == 0.0 && z.im == 0.0 {
            return self.tip();
        }
        if z.im == 0.0 {
            let t = z.re;
            if t.abs() <= self.y {
                return Complex64::new(self.x, (self.y * self.y - t * t).sqrt());
            }
            return Complex64::new(self.x + t.signum() * (t * t - self.y * self.y).sqrt(), 0.0);
        }
        let ratio = Complex64::new(self.y, 0.0) / z;
        let w = z * (Complex64::new(1.0, 0.0) - ratio * ratio).sqrt();
        Complex64::new(self.x + w.re, w.im)
    }
}

impl TiltedSlit {
    pub fn from_tip(w: HalfPlanePoint) -> Result<Self> {
        check_tip(w)?;
        let mirrored = w.re < 0.0;
        let ax = w.re.abs();
        let r = ax.hypot(w.im);
        // Canonical angle in (0, 1/2], in units of pi.
        let beta = w.im.atan2(ax) / std::f64::consts::PI;
        if beta < ALPHA_CLAMP {
            let alpha = if mirrored { 1.0 - beta } else { beta };
            return Err(Error::IllConditionedSlit { alpha });
        }
        let omb = 1.0 - beta;
        let x_l = r * (omb / beta).powf(beta);
        let x_r = r * (beta / omb).powf(omb);
        let du = r * (1.0 - 2.0 * beta) * beta.powf(-beta) * omb.powf(beta - 1.0);
        let du_vertical = ax; // du of the vertical slit from the same tip
        Ok(if mirrored {
            TiltedSlit {
                r,
                alpha: 1.0 - beta,
                x_l: x_r,
                x_r: x_l,
                beta,
                beta_x_l: x_l,
                beta_x_r: x_r,
                beta_du: du,
                guess_shift: du_vertical - du,
                mirrored: true,
            }
        } else {
            TiltedSlit {
                r,
                alpha: beta,
                x_l,
                x_r,
                beta,
                beta_x_l: x_l,
                beta_x_r: x_r,
                beta_du: du,
                guess_shift: du_vertical - du,
                mirrored: false,
            }
        })
    }

    pub fn tip(&self) -> HalfPlanePoint {
        let t = Complex64::from_polar(self.r, self.beta * std::f64::consts::PI);
        if self.mirrored {
            reflect(t)
        } else {
            t
        }
    }

    /// Canonical right-leaning angle (in units of pi), its slit abscissas,
    /// and whether this slit is the mirror image of that frame.
    pub(crate) fn canonical(&self) -> (f64, f64, f64, bool) {
        (self.beta, self.beta_x_l, self.beta_x_r, self.mirrored)
    }

    pub fn dt(&self) -> f64 {
        let b = self.beta;
        0.25 * self.r * self.r * b.powf(1.0 - 2.0 * b) * (1.0 - b).powf(2.0 * b - 1.0)
    }

    pub fn du(&self) -> f64 {
        if self.mirrored {
            -self.beta_du
        } else {
            self.beta_du
        }
    }

    /// h^{-1}(w) = (w + x_l)^(1-alpha) (w - x_r)^alpha, mapping the half
    /// plane onto the half plane minus the slit. Real arguments are taken as
    /// limits from above.
    pub fn apply_inverse(&self, w: HalfPlanePoint) -> HalfPlanePoint {
        if self.mirrored {
            reflect(self.inverse_canonical(reflect(w)))
        } else {
            self.inverse_canonical(w)
        }
    }

    #[inline]
    fn inverse_canonical(&self, mut w: Complex64) -> Complex64 {
        if w.im == 0.0 {
            w.im = 0.0; // normalize -0.0 so powers use the limit from above
        }
        let l = w + self.beta_x_l;
        let rr = w - self.beta_x_r;
        // (l)^(1-b) (rr)^b = l * (rr/l)^b; the quotient's argument stays in
        // [0, pi] for w in the closed half plane, so the principal power is
        // the right branch.
        l * (rr / l).powf(self.beta)
    }

    /// d/dw of the inverse formula, reusing a precomputed inverse value.
    #[inline]
    fn inverse_deriv_canonical(&self, w: Complex64, inv_at_w: Complex64) -> Complex64 {
        inv_at_w * w / ((w + self.beta_x_l) * (w - self.beta_x_r))
    }

    fn on_slit(&self, z: HalfPlanePoint) -> bool {
        // Closed segment from 0 to the tip.
        let t = self.tip();
        if z.re == 0.0 && z.im == 0.0 {
            return true;
        }
        let cross = z.re * t.im - z.im * t.re;
        if cross != 0.0 {
            return false;
        }
        let dot = z.re * t.re + z.im * t.im;
        dot >= 0.0 && dot <= self.r * self.r
    }

    /// Forward map: the w in the closed half plane with h^{-1}(w) = z,
    /// found by safeguarded Newton iteration started from the vertical-slit
    /// image of the same tip.
    pub fn apply(&self, z: HalfPlanePoint) -> Result<HalfPlanePoint> {
        if self.on_slit(z) {
            return Err(Error::PointOnSlit);
        }
        if self.mirrored {
            self.apply_canonical(reflect(z)).map(reflect)
        } else {
            self.apply_canonical(z)
        }
    }

    pub(crate) fn apply_checked(&self, z: HalfPlanePoint) -> Result<HalfPlanePoint> {
        self.apply(z)
    }

    fn apply_canonical(&self, z: Complex64) -> Result<Complex64> {
        let tol = NEWTON_TOL * z.norm().max(1.0);
        // Vertical-slit image from the canonical tip, shifted by the
        // difference of the leading driving terms.
        let tip = Complex64::from_polar(self.r, self.beta * std::f64::consts::PI);
        let vguess = VerticalSlit { x: tip.re, y: tip.im };
        let mut w = vguess.apply_unchecked(z) + self.guess_shift;
        if w.im < 0.0 {
            w.im = 0.0;
        }
        for _ in 0..NEWTON_MAX_ITER {
            let fw = self.inverse_canonical(w);
            let res = fw - z;
            let residual = res.norm();
            if residual <= tol {
                return Ok(w);
            }
            let dw = self.inverse_deriv_canonical(w, fw);
            if dw.re == 0.0 && dw.im == 0.0 {
                break; // critical point reached without meeting the residual
            }
            let mut step = res / dw;
            // Damp the step until the iterate stays in the closed half plane
            // and the residual does not grow.
            let mut accepted = false;
            for _ in 0..40 {
                let mut cand = w - step;
                if cand.im < 0.0 {
                    if cand.im > -1e-14 * (1.0 + cand.re.abs()) {
                        cand.im = 0.0;
                    } else {
                        step *= 0.5;
                        continue;
                    }
                }
                let cand_res = (self.inverse_canonical(cand) - z).norm();
                if cand_res <= residual {
                    w = cand;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        // One final check: the last iterate may have just met the target.
        let res = (self.inverse_canonical(w) - z).norm();
        if res <= tol {
            Ok(w)
        } else {
            Err(Error::NonConvergence { residual: res })
        }
    }
}

/// Reflection through the imaginary axis, z -> -conj(z).
#[inline]
pub fn reflect(z: Complex64) -> Complex64 {
    Complex64::new(-z.re, z.im)
}
