//! Closed-form spectra, dimensions and bounds. Pure formulas, no tolerances.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{HolderParams, SpiralParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsInterval {
    pub lo: f64,
    pub hi: f64,
}

impl BoundsInterval {
    fn new(lo: f64, hi: f64) -> Self {
        BoundsInterval { lo, hi }
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        v >= self.lo - tol && v <= self.hi + tol
    }

    /// Signed distance inside the interval; negative when `v` lies outside.
    pub fn margin(&self, v: f64) -> f64 {
        (v - self.lo).min(self.hi - v)
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(invalid("theta", "must lie in (0,1)"));
    }
    Ok(())
}

fn check_moran(alpha: f64, beta: f64) -> Result<()> {
    if !(beta > 1.0 && alpha > beta && alpha.is_finite()) {
        return Err(invalid("alpha", "need alpha > beta > 1"));
    }
    Ok(())
}

/// Assouad spectrum of a decreasing sequence with decreasing gaps and box dimension `b`.
pub fn seq_spectrum(b: f64, theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&b) {
        return Err(invalid("B", "must lie in [0,1]"));
    }
    check_theta(theta)?;
    Ok(saturating(b, theta, 1.0))
}

/// `min(b/(1-θ), cap)`, equal to `cap` exactly from `θ = 1 - b/cap` on.
fn saturating(b: f64, theta: f64, cap: f64) -> f64 {
    if theta >= 1.0 - b / cap {
        cap
    } else {
        (b / (1.0 - theta)).min(cap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FLambdaFacts {
    pub lambda: f64,
    pub box_dim: f64,
    pub assouad: f64,
}

impl FLambdaFacts {
    pub fn spectrum(&self, theta: f64) -> Result<f64> {
        seq_spectrum(self.box_dim, theta)
    }
}

/// Dimensions of `{n^{-λ}} ∪ {0}`.
pub fn f_lambda_facts(lambda: f64) -> Result<FLambdaFacts> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(invalid("lambda", "must be positive"));
    }
    Ok(FLambdaFacts { lambda, box_dim: 1.0 / (lambda + 1.0), assouad: 1.0 })
}

/// Assouad spectrum of a convex spiral with monotonic winding and box dimension `b > 1`.
pub fn spiral_spectrum(b: f64, theta: f64) -> Result<f64> {
    if !(b > 1.0 && b <= 2.0) {
        return Err(invalid("B", "must lie in (1,2]"));
    }
    check_theta(theta)?;
    Ok(saturating(b, theta, 2.0))
}

/// Assouad dimension of a spiral: 2 for sub-exponential winding, 1 otherwise.
pub fn spiral_assouad_dichotomy(params: &SpiralParams) -> f64 {
    if params.winding.is_sub_exponential() {
        2.0
    } else {
        1.0
    }
}

/// Upper box dimension `2/(1+p)` of the power spiral `(1+α)^{-p}e^{iα}`, `0 < p < 1`.
pub fn power_spiral_box_dim(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid("p", "must lie in (0,1)"));
    }
    Ok(2.0 / (1.0 + p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MoranDims {
    pub lower: f64,
    pub lower_box: f64,
    pub upper_box: f64,
    pub assouad: f64,
}

pub fn moran_dims(alpha: f64, beta: f64) -> Result<MoranDims> {
    check_moran(alpha, beta)?;
    let lower_box = (beta - 1.0) / (alpha - 1.0);
    Ok(MoranDims { lower: 0.0, lower_box, upper_box: lower_box * alpha / beta, assouad: 1.0 })
}

/// `(dim_A^θ, dim_L^θ)` at every `θ = α^{-m}`.
pub fn moran_spectrum_integer_theta(alpha: f64, beta: f64) -> Result<(f64, f64)> {
    let d = moran_dims(alpha, beta)?;
    Ok((d.upper_box, d.lower_box))
}

/// Fractional part `c` of `log_α(1/θ)`, snapped to 0 within 1e-12 of an integer.
pub fn moran_phase(alpha: f64, theta: f64) -> f64 {
    let x = (1.0 / theta).ln() / alpha.ln();
    let c = x - x.floor();
    if c < 1e-12 || 1.0 - c < 1e-12 {
        0.0
    } else {
        c
    }
}

/// Largest phase at which the near-integer closed forms are trusted.
pub const MORAN_PHASE_WINDOW: f64 = 0.2;

/// `(dim_A^θ, dim_L^θ)` for `θ = α^{-(m+c)}` with a small phase `c`.
pub fn moran_spectrum_near(alpha: f64, beta: f64, theta: f64) -> Result<(f64, f64)> {
    check_moran(alpha, beta)?;
    check_theta(theta)?;
    let c = moran_phase(alpha, theta);
    if c > MORAN_PHASE_WINDOW {
        return Err(Error::OutsideWindow(format!(
            "phase {c:.4} of log_alpha(1/theta) exceeds {MORAN_PHASE_WINDOW}; compare only at theta = alpha^-m"
        )));
    }
    if c == 0.0 {
        return moran_spectrum_integer_theta(alpha, beta);
    }
    let ac = alpha.powf(c);
    let inv = 1.0 / theta;
    let q = (1.0 - beta) / (1.0 - alpha);
    let denom = 1.0 - inv;
    let a = (alpha / beta * q * (ac - inv) - ac + 1.0) / denom;
    let l = (q * (ac - inv)) / denom;
    // the admissible phase depends on (alpha, beta); leaving the general bounds marks its edge
    let d = moran_dims(alpha, beta)?;
    let ab = general_bounds(d.upper_box, d.assouad, theta)?;
    let lb = lower_general_bounds(d.lower, d.lower_box)?;
    if !(a >= ab.lo && a <= ab.hi && l >= lb.lo && l <= lb.hi) {
        return Err(Error::OutsideWindow(format!(
            "phase {c:.4} is past the validity window for alpha={alpha}, beta={beta} (closed form leaves the general bounds)"
        )));
    }
    Ok((a, l))
}

/// Interval `[B, min(B/(1-θ), A)]` holding the Assouad spectrum.
pub fn general_bounds(upper_box: f64, assouad: f64, theta: f64) -> Result<BoundsInterval> {
    check_theta(theta)?;
    if !(upper_box >= 0.0) {
        return Err(invalid("upper_box", "must be nonnegative"));
    }
    if upper_box > assouad {
        return Err(invalid("upper_box", "exceeds the Assouad dimension"));
    }
    Ok(BoundsInterval::new(upper_box, (upper_box / (1.0 - theta)).min(assouad)))
}

/// Interval `[dim_L, lower box]` holding the lower spectrum at every θ.
pub fn lower_general_bounds(lower: f64, lower_box: f64) -> Result<BoundsInterval> {
    if lower > lower_box {
        return Err(invalid("lower", "exceeds the lower box dimension"));
    }
    Ok(BoundsInterval::new(lower, lower_box))
}

/// Interval holding `dim_A^{θ1}` given `dim_A^{θ2}` and `dim_A`, for `θ1 < θ2`.
pub fn regularity_envelope(value_at_theta2: f64, assouad: f64, theta1: f64, theta2: f64) -> Result<BoundsInterval> {
    check_theta(theta1)?;
    check_theta(theta2)?;
    if theta1 >= theta2 {
        return Err(invalid("theta1", "must be below theta2"));
    }
    if !(value_at_theta2 >= 0.0 && value_at_theta2 <= assouad) {
        return Err(invalid("value_at_theta2", "must lie in [0, assouad]"));
    }
    let d1 = 1.0 / theta1 - 1.0;
    let carried = value_at_theta2 * ((1.0 / theta2 - 1.0) / d1);
    Ok(BoundsInterval::new(carried, assouad * ((1.0 / theta1 - 1.0 / theta2) / d1) + carried))
}

/// Bound on `|dim_A^{θ1} - dim_A^{θ2}|`.
pub fn lipschitz_bound(assouad: f64, theta1: f64, theta2: f64) -> Result<f64> {
    check_theta(theta1)?;
    check_theta(theta2)?;
    if theta1 > theta2 {
        return Err(invalid("theta1", "must not exceed theta2"));
    }
    Ok(assouad / (theta2 * (1.0 - theta1)) * (theta2 - theta1))
}

/// Closed-form spectrum families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum OracleCurve {
    Sequence { b: f64 },
    FLambda { lambda: f64 },
    Spiral { b: f64 },
    Moran { alpha: f64, beta: f64 },
    Constant { v: f64 },
}

impl OracleCurve {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OracleCurve::Sequence { b } if !(0.0..=1.0).contains(&b) => Err(invalid("B", "must lie in [0,1]")),
            OracleCurve::FLambda { lambda } => f_lambda_facts(lambda).map(|_| ()),
            OracleCurve::Spiral { b } if !(b > 1.0 && b <= 2.0) => Err(invalid("B", "must lie in (1,2]")),
            OracleCurve::Moran { alpha, beta } => check_moran(alpha, beta),
            OracleCurve::Constant { v } if !(v >= 0.0 && v <= 2.0) => Err(invalid("v", "must lie in [0,2]")),
            _ => Ok(()),
        }
    }

    /// Assouad spectrum at `theta`. The nested-interval family is only known
    /// near `θ = α^{-m}`.
    pub fn assouad(&self, theta: f64) -> Result<f64> {
        self.validate()?;
        match *self {
            OracleCurve::Sequence { b } => seq_spectrum(b, theta),
            OracleCurve::FLambda { lambda } => f_lambda_facts(lambda)?.spectrum(theta),
            OracleCurve::Spiral { b } => spiral_spectrum(b, theta),
            OracleCurve::Moran { alpha, beta } => moran_spectrum_near(alpha, beta, theta).map(|v| v.0),
            OracleCurve::Constant { v } => {
                check_theta(theta)?;
                Ok(v)
            }
        }
    }

    /// Lower spectrum at `theta`, where a closed form exists.
    pub fn lower(&self, theta: f64) -> Result<f64> {
        self.validate()?;
        check_theta(theta)?;
        match *self {
            OracleCurve::Sequence { .. } | OracleCurve::FLambda { .. } => Ok(0.0),
            OracleCurve::Moran { alpha, beta } => moran_spectrum_near(alpha, beta, theta).map(|v| v.1),
            OracleCurve::Constant { v } => Ok(v),
            OracleCurve::Spiral { .. } => Err(invalid("family", "no closed-form lower spectrum for spirals")),
        }
    }

    /// `θ → 0` limit of the Assouad spectrum.
    pub fn upper_box(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            OracleCurve::Sequence { b } | OracleCurve::Spiral { b } => b,
            OracleCurve::FLambda { lambda } => 1.0 / (lambda + 1.0),
            OracleCurve::Moran { alpha, beta } => moran_dims(alpha, beta)?.upper_box,
            OracleCurve::Constant { v } => v,
        })
    }

    pub fn assouad_dim(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            OracleCurve::Sequence { b } => if b > 0.0 { 1.0 } else { 0.0 },
            OracleCurve::FLambda { .. } | OracleCurve::Moran { .. } => 1.0,
            OracleCurve::Spiral { .. } => 2.0,
            OracleCurve::Constant { v } => v,
        })
    }
}

/// Interval holding the Assouad spectrum of a bi-Hölder image of a set whose
/// spectrum is `curve`.
pub fn holder_spectrum_bounds(curve: &OracleCurve, hp: HolderParams, theta: f64) -> Result<BoundsInterval> {
    check_theta(theta)?;
    let HolderParams { alpha, beta } = HolderParams::new(hp.alpha, hp.beta)?;
    let at = |t: f64| if t >= 1.0 { Ok(0.0) } else { curve.assouad(t) };
    let t_lo = beta / alpha * theta;
    let lo = if t_lo >= 1.0 { 0.0 } else { (1.0 - t_lo) / (beta * (1.0 - theta)) * at(t_lo)? };
    let t_hi = alpha / beta * theta;
    let hi = (1.0 - t_hi) / (alpha * (1.0 - theta)) * at(t_hi)?;
    Ok(BoundsInterval::new(lo.max(curve.upper_box()? / beta), hi))
}

/// Lower bound for the Assouad dimension of a bi-Hölder image.
pub fn holder_assouad_lower(assouad: f64, theta0: f64, hp: HolderParams) -> Result<f64> {
    if !(0.0..1.0).contains(&theta0) {
        return Err(invalid("theta0", "must lie in [0,1)"));
    }
    let hp = HolderParams::new(hp.alpha, hp.beta)?;
    Ok(assouad * (1.0 - theta0) / (hp.beta - theta0 * hp.alpha))
}

/// Smallest admissible `β` for an `α`-Hölder unwinding of a spiral with box dimension `b`.
pub fn spiral_unwind_beta_bound(b: f64, alpha: f64) -> Result<f64> {
    if !(b > 1.0 && b <= 2.0) {
        return Err(invalid("B", "must lie in (1,2]"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(invalid("alpha", "must lie in (0,1]"));
    }
    Ok(alpha + b * (1.0 - alpha / 2.0))
}

/// Hölder exponents of `x ↦ x^a` on `[0,1]`.
pub fn power_map_holder(a: f64) -> Result<HolderParams> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(invalid("a", "must be positive"));
    }
    if a <= 1.0 {
        HolderParams::new(a, 1.0)
    } else {
        HolderParams::new(1.0, a)
    }
}
