//! Finite approximations of the example families.

use std::collections::HashSet;
use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{FiniteApprox, Metric, MoranParams, Point, SpiralParams};

/// Largest point count any generator will produce.
pub const MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SequenceFamily {
    /// `f(n) = n^{-λ}`
    Power { lambda: f64 },
    /// `f(n) = e^{-√n}`
    ExpSqrt,
    /// `f(n) = e^{-cn}`
    Exponential { c: f64 },
}

impl SequenceFamily {
    pub fn term(&self, n: u64) -> f64 {
        let x = n as f64;
        match *self {
            SequenceFamily::Power { lambda } => 1.0 / x.powf(lambda),
            SequenceFamily::ExpSqrt => (-x.sqrt()).exp(),
            SequenceFamily::Exponential { c } => (-c * x).exp(),
        }
    }

    /// Real solution of `f(n) = delta`.
    fn inverse(&self, delta: f64) -> f64 {
        match *self {
            SequenceFamily::Power { lambda } => delta.powf(-1.0 / lambda),
            SequenceFamily::ExpSqrt => delta.ln().powi(2),
            SequenceFamily::Exponential { c } => -delta.ln() / c,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            SequenceFamily::Power { lambda } if !(lambda > 0.0 && lambda.is_finite()) => {
                Err(invalid("lambda", "must be positive"))
            }
            SequenceFamily::Exponential { c } if !(c > 0.0 && c.is_finite()) => {
                Err(invalid("c", "must be positive"))
            }
            _ => Ok(()),
        }
    }

    /// Smallest `n` with `f(n) ≤ delta`.
    pub fn n_max(&self, delta: f64) -> u64 {
        let mut n = self.inverse(delta).ceil().max(1.0) as u64;
        while n > 1 && self.term(n - 1) <= delta {
            n -= 1;
        }
        while self.term(n) > delta {
            n += 1;
        }
        n
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceFamily::Power { lambda } => write!(f, "power lambda={lambda}"),
            SequenceFamily::ExpSqrt => write!(f, "exp_sqrt"),
            SequenceFamily::Exponential { c } => write!(f, "exponential c={c}"),
        }
    }
}

/// `{f(n) : n ≤ n_max} ∪ {0}` with `n_max` minimal such that `f(n_max) ≤ delta`.
pub fn gen_sequence(family: SequenceFamily, delta: f64) -> Result<FiniteApprox> {
    family.validate()?;
    if !(delta > 0.0) {
        return Err(invalid("delta", "must be positive"));
    }
    if delta >= family.term(1) {
        return Err(invalid("delta", format!("must be below f(1) = {}", family.term(1))));
    }
    let n_max = family.n_max(delta);
    if n_max as usize >= MAX_POINTS {
        return Err(Error::TooLarge { size: n_max as usize + 1, limit: MAX_POINTS });
    }
    let mut points: Vec<Point> = (1..=n_max).map(|n| Point::line(family.term(n))).collect();
    points.push(Point::line(0.0));
    Ok(FiniteApprox::new(points, delta, Metric::Euclidean, format!("sequence {family} delta={delta}")))
}

/// Grid `{0, δ, 2δ, …, 1}` standing in for `[0, 1]`.
pub fn gen_interval(delta: f64) -> Result<FiniteApprox> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid("delta", "must lie in (0,1)"));
    }
    let steps = (1.0 / delta - 1e-9).ceil() as usize;
    if steps >= MAX_POINTS {
        return Err(Error::TooLarge { size: steps + 1, limit: MAX_POINTS });
    }
    let mut points: Vec<Point> = (0..steps).map(|i| Point::line(i as f64 * delta)).collect();
    points.push(Point::line(1.0));
    Ok(FiniteApprox::new(points, delta / 2.0, Metric::Euclidean, format!("interval delta={delta}")))
}

/// First angle at which one full turn moves inward by at most `delta`.
fn dense_core_angle(params: &SpiralParams, delta: f64) -> f64 {
    let w = params.winding;
    let gap = |a: f64| w.phi(a) - w.phi(a + TAU);
    if gap(0.0) <= delta {
        return 0.0;
    }
    let mut hi = 1.0;
    while gap(hi) > delta {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > delta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Planar spiral `φ(α)e^{iα}` plus the origin.
///
/// The curve is sampled with chords of length at most `delta` out to the angle
/// where consecutive turns come within `delta` of each other. Inside that
/// radius the turns are denser than the resolution, and the disc is filled with
/// an origin-anchored lattice of spacing `delta` instead.
pub fn gen_spiral(params: &SpiralParams, delta: f64) -> Result<FiniteApprox> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid("delta", "must lie in (0,1)"));
    }
    let w = params.winding;
    if w.phi(params.alpha_max) > delta {
        return Err(invalid(
            "alpha_max",
            format!("phi(alpha_max) = {} exceeds delta = {delta}", w.phi(params.alpha_max)),
        ));
    }
    let stop = dense_core_angle(params, delta).min(params.alpha_max);
    let at = |a: f64| {
        let rho = w.phi(a);
        Point::plane(rho * a.cos(), rho * a.sin())
    };
    let chord = |a: &Point, b: &Point| (a.x() - b.x()).hypot(a.y() - b.y());
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    let mut push = |p: Point, points: &mut Vec<Point>| {
        if seen.insert(p.key()) {
            points.push(p);
        }
    };
    let mut a = 0.0;
    let mut cur = at(0.0);
    push(cur, &mut points);
    while a < stop {
        let mut step = (0.9 * delta / w.phi(a)).min(PI / 16.0);
        let mut next = (a + step).min(stop);
        let mut p = at(next);
        while chord(&cur, &p) > delta {
            step *= 0.5;
            next = (a + step).min(stop);
            p = at(next);
        }
        push(p, &mut points);
        if points.len() > MAX_POINTS {
            return Err(Error::TooLarge { size: points.len(), limit: MAX_POINTS });
        }
        a = next;
        cur = p;
    }
    let core = w.phi(stop);
    if stop < params.alpha_max && core > delta {
        let k = (core / delta).floor() as i64;
        let est = (PI * (k as f64 + 1.0).powi(2)) as usize;
        if points.len() + est > MAX_POINTS {
            return Err(Error::TooLarge { size: points.len() + est, limit: MAX_POINTS });
        }
        for i in -k..=k {
            for j in -k..=k {
                let (x, y) = (i as f64 * delta, j as f64 * delta);
                if x.hypot(y) <= core {
                    push(Point::plane(x, y), &mut points);
                }
            }
        }
    }
    push(Point::plane(0.0, 0.0), &mut points);
    Ok(FiniteApprox::new(
        points,
        delta,
        Metric::Euclidean,
        format!("spiral {} alpha_max={} delta={delta}", w, params.alpha_max),
    ))
}

/// Endpoints of the depth-level intervals of the nested construction.
pub fn gen_moran(params: &MoranParams) -> Result<FiniteApprox> {
    let p = MoranParams::new(params.length, params.m_alpha, params.m_beta, params.depth)?;
    let mut lefts = vec![0.0f64];
    let mut total: usize = 1;
    for k in 1..=p.depth {
        let parent = p.interval_length(k - 1);
        let child = p.interval_length(k);
        let gap = p.gap_length(k);
        if !(child > 0.0) || !child.is_normal() || !gap.is_normal() {
            return Err(Error::Underflow {
                level: k,
                reason: format!("interval length {child:e} is not a normal double"),
            });
        }
        let c = p.children(k);
        if c < 1 {
            return Err(invalid("L", format!("level {k} has no children")));
        }
        total = total
            .checked_mul(c as usize)
            .filter(|&t| 2 * t <= MAX_POINTS)
            .ok_or(Error::TooLarge { size: usize::MAX, limit: MAX_POINTS })?;
        let used = c as f64 * child + (c as f64 - 1.0) * gap;
        if used > parent * (1.0 + 1e-12) {
            return Err(invalid("L", format!("level {k} children overflow their parent")));
        }
        let mut next = Vec::with_capacity(total);
        for &a in &lefts {
            for j in 0..c {
                next.push(a + j as f64 * (child + gap));
            }
        }
        lefts = next;
    }
    let len = p.interval_length(p.depth);
    let mut points = Vec::with_capacity(2 * lefts.len());
    for &a in &lefts {
        if a + len == a {
            return Err(Error::Underflow {
                level: p.depth,
                reason: "interval length below coordinate precision".into(),
            });
        }
        points.push(Point::line(a));
        points.push(Point::line(a + len));
    }
    // the seed interval needs a resolution below its own diameter
    let resolution = if p.depth == 0 { p.length / 2.0 } else { len };
    Ok(FiniteApprox::new(
        points,
        resolution,
        Metric::Euclidean,
        format!("moran L={} alpha={} beta={} depth={}", p.length, p.m_alpha, p.m_beta, p.depth),
    ))
}

fn require_line(f: &FiniteApprox, name: &'static str) -> Result<()> {
    if f.dim() != 1 {
        return Err(invalid(name, "must be one-dimensional"));
    }
    Ok(())
}

/// Cartesian product under the sup metric.
pub fn gen_product(f: &FiniteApprox, g: &FiniteApprox) -> Result<FiniteApprox> {
    require_line(f, "F")?;
    require_line(g, "G")?;
    let size = f.len().saturating_mul(g.len());
    if size > MAX_POINTS {
        return Err(Error::TooLarge { size, limit: MAX_POINTS });
    }
    let points = f
        .points()
        .iter()
        .flat_map(|a| g.points().iter().map(move |b| Point::plane(a.x(), b.x())))
        .collect();
    Ok(FiniteApprox::new(
        points,
        f.resolution().max(g.resolution()),
        Metric::Sup,
        format!("product({}; {})", f.label(), g.label()),
    ))
}

/// Pointwise image under `x ↦ x^alpha` on `[0, 1]`.
pub fn gen_holder_image(f: &FiniteApprox, alpha: f64) -> Result<FiniteApprox> {
    require_line(f, "F")?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid("alpha", "must be positive"));
    }
    if f.points().iter().any(|p| !(0.0..=1.0).contains(&p.x())) {
        return Err(invalid("F", "points must lie in [0,1]"));
    }
    let mut seen = HashSet::new();
    let points: Vec<Point> = f
        .points()
        .iter()
        .map(|p| Point::line(p.x().powf(alpha)))
        .filter(|p| seen.insert(p.key()))
        .collect();
    let resolution = if alpha <= 1.0 { f.resolution().powf(alpha) } else { alpha * f.resolution() };
    Ok(FiniteApprox::new(
        points,
        resolution,
        f.metric(),
        format!("holder_image({}; alpha={alpha})", f.label()),
    ))
}

/// Deduplicated union; points of `f` come first.
pub fn gen_union(f: &FiniteApprox, g: &FiniteApprox) -> Result<FiniteApprox> {
    if f.metric() != g.metric() {
        return Err(Error::MetricMismatch);
    }
    if !f.is_empty() && !g.is_empty() && f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(f.dim(), g.dim()));
    }
    let mut seen = HashSet::new();
    let points: Vec<Point> =
        f.points().iter().chain(g.points()).copied().filter(|p| seen.insert(p.key())).collect();
    Ok(FiniteApprox::new(
        points,
        f.resolution().max(g.resolution()),
        f.metric(),
        format!("union({}; {})", f.label(), g.label()),
    ))
}

/// Copy of a one-dimensional set shifted by `offset`.
pub fn translate(f: &FiniteApprox, offset: f64) -> Result<FiniteApprox> {
    require_line(f, "F")?;
    let points = f.points().iter().map(|p| Point::line(p.x() + offset)).collect();
    Ok(FiniteApprox::new(
        points,
        f.resolution(),
        f.metric(),
        format!("translate({}; {offset})", f.label()),
    ))
}
