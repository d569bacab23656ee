//! Shared domain types: points, finite approximations, scale schedules and
//! the records produced by the estimators.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Sup,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Sup => "sup",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "sup" => Ok(Metric::Sup),
            other => Err(invalid("metric", format!("unknown metric `{other}`"))),
        }
    }
}

/// A point on the line or in the plane.
#[derive(Clone, Copy, PartialEq)]
pub struct Point {
    coords: [f64; 2],
    dim: u8,
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        if !(1..=2).contains(&coords.len()) {
            return Err(Error::UnsupportedDimension(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut c = [0.0; 2];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Point { coords: c, dim: coords.len() as u8 })
    }

    #[inline]
    pub fn line(x: f64) -> Self {
        Point { coords: [x, 0.0], dim: 1 }
    }

    #[inline]
    pub fn plane(x: f64, y: f64) -> Self {
        Point { coords: [x, y], dim: 2 }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    /// Second coordinate; zero for points on the line.
    #[inline]
    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    /// Bit-level identity key, used for exact duplicate detection.
    pub(crate) fn key(&self) -> (u64, u64) {
        (self.coords[0].to_bits(), if self.dim == 2 { self.coords[1].to_bits() } else { 0 })
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Point").field(&self.coords()).finish()
    }
}

/// Distance between two points of equal ambient dimension.
pub fn distance(a: &Point, b: &Point, metric: Metric) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(dist_unchecked(a, b, metric))
}

#[inline]
pub(crate) fn dist_unchecked(a: &Point, b: &Point, metric: Metric) -> f64 {
    let dx = (a.coords[0] - b.coords[0]).abs();
    if a.dim == 1 {
        return dx;
    }
    let dy = (a.coords[1] - b.coords[1]).abs();
    match metric {
        Metric::Euclidean => dx.hypot(dy),
        Metric::Sup => dx.max(dy),
    }
}

/// A finite point sample standing in for an ideal set up to Hausdorff distance `resolution`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteApprox {
    points: Vec<Point>,
    resolution: f64,
    diameter: f64,
    metric: Metric,
    label: String,
}

impl FiniteApprox {
    /// Builds an approximation, computing the diameter under `metric`.
    ///
    /// No invariant is enforced here; call [`validate_approx`] to audit the result.
    pub fn new(points: Vec<Point>, resolution: f64, metric: Metric, label: impl Into<String>) -> Self {
        let diameter = diameter_of(&points, metric);
        FiniteApprox { points, resolution, diameter, metric, label: label.into() }
    }

    /// Builds an approximation with a caller-supplied diameter.
    pub fn from_parts(
        points: Vec<Point>,
        resolution: f64,
        diameter: f64,
        metric: Metric,
        label: impl Into<String>,
    ) -> Self {
        FiniteApprox { points, resolution, diameter, metric, label: label.into() }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Ambient dimension, taken from the first point (1 for an empty set).
    pub fn dim(&self) -> usize {
        self.points.first().map_or(1, Point::dim)
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

/// A failed [`FiniteApprox`] invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    EmptySet,
    UnsupportedDimension,
    DimensionMismatch,
    NonFiniteCoordinate,
    DuplicatePoints,
    NonpositiveResolution,
    ResolutionNotBelowDiameter,
    DiameterMismatch,
}

impl Violation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Violation::EmptySet => "empty-set",
            Violation::UnsupportedDimension => "unsupported-dimension",
            Violation::DimensionMismatch => "dimension-mismatch",
            Violation::NonFiniteCoordinate => "non-finite-coordinate",
            Violation::DuplicatePoints => "duplicate-points",
            Violation::NonpositiveResolution => "nonpositive-resolution",
            Violation::ResolutionNotBelowDiameter => "resolution-not-below-diameter",
            Violation::DiameterMismatch => "diameter-mismatch",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Lists every violated invariant; empty when the approximation is well formed.
pub fn validate_approx(f: &FiniteApprox) -> Vec<Violation> {
    let mut out = Vec::new();
    if f.points.is_empty() {
        out.push(Violation::EmptySet);
    }
    let d = f.dim();
    if !(1..=2).contains(&d) {
        out.push(Violation::UnsupportedDimension);
    }
    if f.points.iter().any(|p| p.dim() != d) {
        out.push(Violation::DimensionMismatch);
    }
    if f.points.iter().any(|p| !p.is_finite()) {
        out.push(Violation::NonFiniteCoordinate);
    }
    let mut seen = HashSet::with_capacity(f.points.len());
    if !f.points.iter().all(|p| seen.insert(p.key())) {
        out.push(Violation::DuplicatePoints);
    }
    if !(f.resolution > 0.0) {
        out.push(Violation::NonpositiveResolution);
    }
    if f.points.len() == 1 {
        if f.diameter != 0.0 {
            out.push(Violation::DiameterMismatch);
        }
    } else if f.points.len() > 1 {
        if f.resolution > 0.0 && !(f.resolution < f.diameter) {
            out.push(Violation::ResolutionNotBelowDiameter);
        }
        let expected = diameter_of(&f.points, f.metric);
        if (expected - f.diameter).abs() > 1e-12 * expected.max(1.0) {
            out.push(Violation::DiameterMismatch);
        }
    }
    out
}

/// Exact diameter of a point set: coordinate extents on the line and under the
/// sup metric, rotating calipers over the convex hull for the Euclidean plane.
pub fn diameter_of(points: &[Point], metric: Metric) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let extent = |i: usize| {
        let (lo, hi) = points
            .iter()
            .map(|p| p.coords[i])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo
    };
    if points[0].dim() == 1 {
        return extent(0);
    }
    match metric {
        Metric::Sup => extent(0).max(extent(1)),
        Metric::Euclidean => hull_diameter(points),
    }
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn hull_diameter(points: &[Point]) -> f64 {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p.x(), p.y())).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        let (a, b) = (pts[0], pts[pts.len() - 1]);
        return (a.0 - b.0).hypot(a.1 - b.1);
    }
    // Andrew's monotone chain
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    let h = hull.len();
    let d2 = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2);
    if h < 3 {
        return d2(hull[0], hull[h - 1]).sqrt();
    }
    let mut best = 0.0f64;
    let mut j = 1;
    for i in 0..h {
        let ni = (i + 1) % h;
        loop {
            let nj = (j + 1) % h;
            if cross(hull[i], hull[ni], hull[nj]).abs() > cross(hull[i], hull[ni], hull[j]).abs() {
                j = nj;
            } else {
                break;
            }
        }
        best = best.max(d2(hull[i], hull[j])).max(d2(hull[ni], hull[j]));
    }
    best.sqrt()
}

/// The ladder of radii over which counts are taken, largest first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleSchedule {
    radii: Vec<f64>,
    tail_fraction: f64,
    rho: Option<f64>,
}

/// Default ratio between consecutive rungs.
pub const DEFAULT_RHO: f64 = std::f64::consts::FRAC_1_SQRT_2;
pub const DEFAULT_TAIL_FRACTION: f64 = 0.5;
/// Smallest radius an estimator may use, as a multiple of the resolution.
pub const RESOLUTION_FLOOR_FACTOR: f64 = 10.0;
/// Largest radius an estimator may use, as a fraction of the diameter.
pub const DIAMETER_CAP_FRACTION: f64 = 0.25;

impl ScaleSchedule {
    /// Rungs `r_max * rho^k` for `k = 0..count`.
    pub fn geometric(rho: f64, r_max: f64, count: usize, tail_fraction: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(invalid("rho", "must lie in (0,1)"));
        }
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(invalid("r_max", "must be positive and finite"));
        }
        if count == 0 {
            return Err(invalid("count", "must be positive"));
        }
        check_tail(tail_fraction)?;
        let radii: Vec<f64> = (0..count).map(|k| r_max * rho.powi(k as i32)).collect();
        if !(radii[count - 1] > 0.0) || radii.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(invalid("count", "rungs underflow or are not distinct"));
        }
        Ok(ScaleSchedule { radii, tail_fraction, rho: Some(rho) })
    }

    /// An explicit list of radii; sorted descending and deduplicated.
    pub fn explicit(mut radii: Vec<f64>, tail_fraction: f64) -> Result<Self> {
        check_tail(tail_fraction)?;
        if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(invalid("radii", "must be a nonempty list of positive finite reals"));
        }
        radii.sort_by(|a, b| b.total_cmp(a));
        radii.dedup();
        Ok(ScaleSchedule { radii, tail_fraction, rho: None })
    }

    /// `rho = 2^{-1/2}`, `r_max = diameter/4`, as many rungs as stay above `10·resolution`.
    pub fn default_for(f: &FiniteApprox) -> Self {
        Self::with_rho(f, DEFAULT_RHO, DEFAULT_TAIL_FRACTION)
    }

    /// Like [`ScaleSchedule::default_for`] with a custom ratio and tail fraction.
    pub fn with_rho(f: &FiniteApprox, rho: f64, tail_fraction: f64) -> Self {
        let r_max = DIAMETER_CAP_FRACTION * f.diameter();
        let floor = RESOLUTION_FLOOR_FACTOR * f.resolution();
        let mut radii = Vec::new();
        if r_max > 0.0 {
            let mut r = r_max;
            while r >= floor && r > 0.0 {
                radii.push(r);
                r *= rho;
            }
        }
        ScaleSchedule { radii, tail_fraction, rho: Some(rho) }
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn tail_fraction(&self) -> f64 {
        self.tail_fraction
    }

    pub fn rho(&self) -> Option<f64> {
        self.rho
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Number of smallest rungs forming the tail window out of `admissible` rungs.
    pub fn tail_len(&self, admissible: usize) -> usize {
        ((self.tail_fraction * admissible as f64).ceil() as usize).clamp(1.min(admissible), admissible)
    }
}

fn check_tail(tail_fraction: f64) -> Result<()> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(invalid("tail_fraction", "must lie in (0,1]"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Assouad,
    Lower,
}

impl SpectrumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectrumKind::Assouad => "assouad",
            SpectrumKind::Lower => "lower",
        }
    }
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SpectrumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assouad" => Ok(SpectrumKind::Assouad),
            "lower" => Ok(SpectrumKind::Lower),
            other => Err(invalid("kind", format!("unknown spectrum kind `{other}`"))),
        }
    }
}

/// One rung of a spectrum estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RungRecord {
    pub radius: f64,
    pub count: usize,
    pub local_exponent: f64,
}

/// The estimated `dim_A^θ` or `dim_L^θ` at one θ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEstimate {
    pub theta: f64,
    pub value: f64,
    pub kind: SpectrumKind,
    /// Every admissible rung, largest radius first.
    pub trace: Vec<RungRecord>,
    pub slope_fit: f64,
    pub admissible_rungs: usize,
    /// Radius of the rung that attained `value` (the smallest on ties); 0 for a singleton.
    pub witness_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderParams {
    pub alpha: f64,
    pub beta: f64,
}

impl HolderParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(invalid("alpha", "must lie in (0,1]"));
        }
        if !(beta >= 1.0 && beta.is_finite()) {
            return Err(invalid("beta", "must lie in [1,inf)"));
        }
        Ok(HolderParams { alpha, beta })
    }

    pub fn bi_lipschitz() -> Self {
        HolderParams { alpha: 1.0, beta: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoranParams {
    /// Seed interval length `L`.
    pub length: f64,
    pub m_alpha: f64,
    pub m_beta: f64,
    pub depth: u32,
}

impl MoranParams {
    pub fn new(length: f64, m_alpha: f64, m_beta: f64, depth: u32) -> Result<Self> {
        if !(length > 0.0 && length < 1.0) {
            return Err(invalid("L", "must lie in (0,1)"));
        }
        if !(m_beta > 1.0) {
            return Err(invalid("beta", "must exceed 1"));
        }
        if !(m_alpha > m_beta && m_alpha.is_finite()) {
            return Err(invalid("alpha", "must exceed beta"));
        }
        Ok(MoranParams { length, m_alpha, m_beta, depth })
    }

    /// Interval length at level `k`: `L^{α^k}`.
    pub fn interval_length(&self, k: u32) -> f64 {
        self.length.powf(self.m_alpha.powi(k as i32))
    }

    /// Gap between consecutive level-`k` intervals: `L^{α^{k-1} β}`.
    pub fn gap_length(&self, k: u32) -> f64 {
        self.length.powf(self.m_alpha.powi(k as i32 - 1) * self.m_beta)
    }

    /// Children per level-`(k-1)` interval: `[L^{α^{k-1}(1-β)}]`.
    pub fn children(&self, k: u32) -> u64 {
        let x = self.length.powf(self.m_alpha.powi(k as i32 - 1) * (1.0 - self.m_beta));
        integer_part(x)
    }
}

/// Integer part, snapping values within 1e-10 (relative) below an integer up to it.
pub(crate) fn integer_part(x: f64) -> u64 {
    if !(x >= 0.0) {
        return 0;
    }
    let up = x.ceil();
    if up - x <= 1e-10 * x.max(1.0) {
        up as u64
    } else {
        x.floor() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Winding {
    /// `φ(α) = (1+α)^{-p}`
    Power { p: f64 },
    /// `φ(α) = e^{-cα}`
    Exponential { c: f64 },
}

impl Winding {
    pub fn phi(&self, angle: f64) -> f64 {
        match *self {
            Winding::Power { p } => (1.0 + angle).powf(-p),
            Winding::Exponential { c } => (-c * angle).exp(),
        }
    }

    /// Smallest angle with `φ(angle) ≤ radius`.
    pub fn angle_for_radius(&self, radius: f64) -> f64 {
        match *self {
            Winding::Power { p } => radius.powf(-1.0 / p) - 1.0,
            Winding::Exponential { c } => -radius.ln() / c,
        }
    }

    pub fn is_sub_exponential(&self) -> bool {
        matches!(self, Winding::Power { .. })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Winding::Power { p } if !(p > 0.0 && p.is_finite()) => Err(invalid("p", "must be positive")),
            Winding::Exponential { c } if !(c > 0.0 && c.is_finite()) => {
                Err(invalid("c", "must be positive"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Winding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Winding::Power { p } => write!(f, "power p={p}"),
            Winding::Exponential { c } => write!(f, "exponential c={c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralParams {
    pub winding: Winding,
    pub alpha_max: f64,
}

impl SpiralParams {
    pub fn new(winding: Winding, alpha_max: f64) -> Result<Self> {
        winding.validate()?;
        if !(alpha_max > 0.0 && alpha_max.is_finite()) {
            return Err(invalid("alpha_max", "must be positive and finite"));
        }
        Ok(SpiralParams { winding, alpha_max })
    }

    /// Truncation angle chosen so that `φ(alpha_max) ≤ delta`.
    pub fn for_resolution(winding: Winding, delta: f64) -> Result<Self> {
        winding.validate()?;
        if !(delta > 0.0 && delta < 1.0) {
            return Err(invalid("delta", "must lie in (0,1)"));
        }
        let mut a = winding.angle_for_radius(delta);
        // nudge past rounding so the tail bound holds exactly
        while winding.phi(a) > delta {
            a = a * (1.0 + 1e-15) + 1e-12;
        }
        Self::new(winding, a)
    }

    /// Whether `φ(x) − φ(x + 2π)` is non-increasing on `samples` equally spaced angles in `[0, alpha_max]`.
    pub fn winding_is_monotonic(&self, samples: usize) -> bool {
        let two_pi = std::f64::consts::TAU;
        let n = samples.max(2);
        let mut prev = f64::INFINITY;
        for i in 0..n {
            let x = self.alpha_max * i as f64 / (n - 1) as f64;
            let g = self.winding.phi(x) - self.winding.phi(x + two_pi);
            if g > prev * (1.0 + 1e-12) {
                return false;
            }
            prev = g;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn distance_examples() {
        let m = Metric::Euclidean;
        assert_eq!(distance(&Point::line(0.0), &Point::line(0.5), m).unwrap(), 0.5);
        assert_eq!(distance(&Point::plane(0.0, 0.0), &Point::plane(3.0, 4.0), m).unwrap(), 5.0);
        assert_eq!(distance(&Point::plane(0.0, 0.0), &Point::plane(3.0, 4.0), Metric::Sup).unwrap(), 4.0);
    }

    #[test]
    fn distance_rejects_mixed_dimensions() {
        let err = distance(&Point::line(0.0), &Point::plane(0.0, 1.0), Metric::Euclidean);
        assert_eq!(err, Err(Error::DimensionMismatch(1, 2)));
    }

    #[test]
    fn point_constructor_checks() {
        assert!(Point::new(&[f64::NAN]).is_err());
        assert!(Point::new(&[1.0, 2.0, 3.0]).is_err());
        assert_eq!(Point::new(&[1.0, 2.0]).unwrap(), Point::plane(1.0, 2.0));
    }

    #[test]
    fn validate_examples() {
        let single = FiniteApprox::from_parts(vec![Point::line(0.3)], 0.1, 0.0, Metric::Euclidean, "s");
        assert!(validate_approx(&single).is_empty());

        let dup = FiniteApprox::new(
            vec![Point::line(0.0), Point::line(1.0), Point::line(0.0)],
            0.1,
            Metric::Euclidean,
            "d",
        );
        assert_eq!(validate_approx(&dup), vec![Violation::DuplicatePoints]);

        let zero = FiniteApprox::new(vec![Point::line(0.0), Point::line(1.0)], 0.0, Metric::Euclidean, "z");
        assert_eq!(validate_approx(&zero), vec![Violation::NonpositiveResolution]);

        let coarse = FiniteApprox::new(vec![Point::line(0.0), Point::line(1.0)], 2.0, Metric::Euclidean, "c");
        assert_eq!(validate_approx(&coarse), vec![Violation::ResolutionNotBelowDiameter]);
    }

    #[test]
    fn violation_names() {
        assert_eq!(Violation::DuplicatePoints.to_string(), "duplicate-points");
        assert_eq!(Violation::NonpositiveResolution.to_string(), "nonpositive-resolution");
    }

    #[test]
    fn hull_diameter_matches_brute_force() {
        let pts: Vec<Point> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.37;
                Point::plane(t.cos() * (1.0 + 0.3 * (3.0 * t).sin()), t.sin() * 0.7)
            })
            .collect();
        let mut brute = 0.0f64;
        for a in &pts {
            for b in &pts {
                brute = brute.max(dist_unchecked(a, b, Metric::Euclidean));
            }
        }
        assert!((diameter_of(&pts, Metric::Euclidean) - brute).abs() < 1e-12);
    }

    #[test]
    fn collinear_plane_diameter() {
        let pts = vec![Point::plane(0.0, 0.0), Point::plane(1.0, 1.0), Point::plane(2.0, 2.0)];
        assert!((diameter_of(&pts, Metric::Euclidean) - 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn geometric_schedule() {
        let s = ScaleSchedule::geometric(0.5, 1.0, 4, 0.5).unwrap();
        assert_eq!(s.radii(), &[1.0, 0.5, 0.25, 0.125]);
        assert_eq!(s.tail_len(4), 2);
        assert_eq!(s.tail_len(3), 2);
        assert!(ScaleSchedule::geometric(1.0, 1.0, 4, 0.5).is_err());
        assert!(ScaleSchedule::geometric(0.5, 1.0, 4, 0.0).is_err());
    }

    #[test]
    fn moran_children_snap_round_off() {
        let m = MoranParams::new(0.05, 2.0, 1.5, 3).unwrap();
        assert_eq!(m.children(1), 4);
        assert_eq!(m.children(2), 20);
        assert_eq!(m.children(3), 400);
        assert_eq!(integer_part(3.9999999999999996), 4);
        assert_eq!(integer_part(3.99), 3);
    }

    #[test]
    fn spiral_truncation_and_winding() {
        let s = SpiralParams::for_resolution(Winding::Power { p: 0.5 }, 1e-3).unwrap();
        assert!((s.alpha_max - (1e6 - 1.0)).abs() < 1e-3);
        assert!(s.winding.phi(s.alpha_max) <= 1e-3);
        assert!(s.winding_is_monotonic(10_000));
        let e = SpiralParams::for_resolution(Winding::Exponential { c: 0.1 }, 1e-4).unwrap();
        assert!(e.winding_is_monotonic(1000));
        assert_eq!(e.winding.phi(0.0), 1.0);
    }

    fn arb_point() -> impl Strategy<Value = Point> {
        (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point::plane(x, y))
    }

    proptest! {
        #[test]
        fn triangle_inequality(a in arb_point(), b in arb_point(), c in arb_point(), sup in any::<bool>()) {
            let m = if sup { Metric::Sup } else { Metric::Euclidean };
            let ab = distance(&a, &b, m).unwrap();
            let bc = distance(&b, &c, m).unwrap();
            let ac = distance(&a, &c, m).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12);
            prop_assert_eq!(ab, distance(&b, &a, m).unwrap());
            prop_assert!(ab >= 0.0);
        }
    }
}
