//! Empirical box dimensions, spectra and two-scale dimensions.
//!
//! Every estimate walks the rungs of a [`ScaleSchedule`], keeps the admissible
//! ones, and reduces the per-rung exponents over the tail window: the max
//! stands in for a limsup, the min for a liminf.

use std::fmt;

use serde::Serialize;

use crate::counting::{mesh_count_points, LocalCounter};
use crate::error::{invalid, Error, Result};
use crate::geometry::{
    FiniteApprox, MoranParams, RungRecord, ScaleSchedule, SpectrumEstimate, SpectrumKind,
    DEFAULT_RHO, DIAMETER_CAP_FRACTION, RESOLUTION_FLOOR_FACTOR,
};

/// Local counts at inner scale `r` use mesh cells of side `BALL_CELL_FACTOR · r`,
/// the mesh analogue of covering by balls of radius `r`.
pub const BALL_CELL_FACTOR: f64 = 2.0;

/// Minimum ratio `R_j / R_k` for a pair of rungs in the two-scale estimates.
pub const PAIR_RATIO: f64 = 16.0;

const MIN_RUNGS: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaGrid {
    thetas: Vec<f64>,
}

impl ThetaGrid {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(invalid("grid", "must be nonempty"));
        }
        if thetas.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
            return Err(invalid("grid", "every theta must lie in (0,1)"));
        }
        if thetas.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("grid", "must be strictly increasing"));
        }
        Ok(ThetaGrid { thetas })
    }

    /// `start, start+step, …` up to `stop` inclusive (with a small rounding allowance).
    pub fn range(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(stop >= start) {
            return Err(invalid("grid", "need step > 0 and stop >= start"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        // round to 12 decimals so 0.1 + 2*0.1 prints as 0.3
        let thetas = (0..=n).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect();
        Self::new(thetas)
    }

    /// `{0.05, 0.10, …, 0.95}`.
    pub fn standard() -> Self {
        Self::range(0.05, 0.95, 0.05).expect("valid grid")
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionKind {
    UpperBox,
    LowerBox,
    Assouad,
    Lower,
}

impl fmt::Display for DimensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionKind::UpperBox => "upper_box",
            DimensionKind::LowerBox => "lower_box",
            DimensionKind::Assouad => "assouad",
            DimensionKind::Lower => "lower",
        })
    }
}

/// One scale pair of a two-scale estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairRecord {
    pub big_r: f64,
    pub r: f64,
    pub count: usize,
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimTrace {
    Rungs(Vec<RungRecord>),
    /// The pairs that were counted. Pairs whose count bound could not change the value are skipped.
    Pairs(Vec<PairRecord>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub value: f64,
    pub kind: DimensionKind,
    pub trace: DimTrace,
    pub admissible: usize,
}

fn too_few(found: usize, required: usize, reason: String, theta_min: Option<f64>) -> Error {
    Error::TooFewScales { found, required, reason, theta_min }
}

/// Index of the extremal exponent in `vals`; ties go to the later (smaller R) entry.
fn pick(vals: impl Iterator<Item = f64>, want_max: bool) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in vals.enumerate() {
        let take = match best {
            None => true,
            Some((_, b)) => {
                if want_max {
                    v >= b
                } else {
                    v <= b
                }
            }
        };
        if take {
            best = Some((i, v));
        }
    }
    best
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return 0.0;
    }
    xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / sxx
}

#[cfg(feature = "parallel")]
fn map_par<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn batch_size() -> usize {
    rayon::current_num_threads()
}

#[cfg(not(feature = "parallel"))]
fn batch_size() -> usize {
    1
}

#[cfg(not(feature = "parallel"))]
fn map_par<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Reusable estimator bound to one set; keeps the counting index across calls.
pub struct Estimator<'a> {
    f: &'a FiniteApprox,
    counter: Option<LocalCounter<'a>>,
}

impl<'a> Estimator<'a> {
    pub fn new(f: &'a FiniteApprox) -> Result<Self> {
        if f.is_empty() {
            return Err(invalid("F", "empty point set"));
        }
        let counter = if f.is_singleton() { None } else { Some(LocalCounter::new(f)?) };
        Ok(Estimator { f, counter })
    }

    fn floor(&self) -> f64 {
        RESOLUTION_FLOOR_FACTOR * self.f.resolution()
    }

    fn cap(&self) -> f64 {
        DIAMETER_CAP_FRACTION * self.f.diameter()
    }

    fn box_dim(&self, sched: &ScaleSchedule, want_max: bool) -> Result<DimensionEstimate> {
        let kind = if want_max { DimensionKind::UpperBox } else { DimensionKind::LowerBox };
        if self.f.is_singleton() {
            return Ok(DimensionEstimate { value: 0.0, kind, trace: DimTrace::Rungs(vec![]), admissible: 0 });
        }
        let (floor, cap) = (self.floor(), self.cap());
        let rungs: Vec<f64> =
            sched.radii().iter().copied().filter(|&r| r >= floor && r <= cap && r < 1.0).collect();
        if rungs.len() < MIN_RUNGS {
            let reason = self.binding_constraint(sched, floor, cap);
            return Err(too_few(rungs.len(), MIN_RUNGS, reason, None));
        }
        let points = self.f.points();
        let trace: Vec<RungRecord> = map_par(&rungs, |&r| {
            let count = mesh_count_points(points, r);
            RungRecord { radius: r, count, local_exponent: (count as f64).ln() / -r.ln() }
        });
        let tail = &trace[trace.len() - sched.tail_len(trace.len())..];
        let (_, value) = pick(tail.iter().map(|t| t.local_exponent), want_max).expect("nonempty tail");
        Ok(DimensionEstimate { value, kind, admissible: trace.len(), trace: DimTrace::Rungs(trace) })
    }

    fn binding_constraint(&self, sched: &ScaleSchedule, floor: f64, cap: f64) -> String {
        let below = sched.radii().iter().filter(|&&r| r < floor).count();
        let above = sched.radii().iter().filter(|&&r| r > cap || r >= 1.0).count();
        if below >= above {
            format!("{below} rungs fall below the resolution floor 10*delta = {floor:e}")
        } else {
            format!("{above} rungs exceed the diameter cap diameter/4 = {cap:e}")
        }
    }

    pub fn upper_box_dim(&self, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
        self.box_dim(sched, true)
    }

    pub fn lower_box_dim(&self, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
        self.box_dim(sched, false)
    }

    /// Smallest θ for which at least three rungs satisfy `R^{1/θ} ≥ 10δ`.
    pub fn theta_min(&self, sched: &ScaleSchedule) -> Option<f64> {
        let floor = self.floor();
        let mut usable: Vec<f64> =
            sched.radii().iter().copied().filter(|&r| r <= self.cap() && r < 1.0 && r >= floor).collect();
        usable.sort_by(|a, b| b.total_cmp(a));
        usable.get(MIN_RUNGS - 1).map(|r| r.ln() / floor.ln())
    }

    pub fn spectrum_at(
        &self,
        theta: f64,
        sched: &ScaleSchedule,
        kind: SpectrumKind,
    ) -> Result<SpectrumEstimate> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(invalid("theta", "must lie in (0,1)"));
        }
        let Some(counter) = &self.counter else {
            return Ok(SpectrumEstimate {
                theta,
                value: 0.0,
                kind,
                trace: vec![],
                slope_fit: 0.0,
                admissible_rungs: 0,
                witness_radius: 0.0,
            });
        };
        let (floor, cap) = (self.floor(), self.cap());
        let rungs: Vec<f64> = sched
            .radii()
            .iter()
            .copied()
            .filter(|&big_r| {
                let r = big_r.powf(1.0 / theta);
                big_r <= cap && r >= floor && BALL_CELL_FACTOR * r < big_r
            })
            .collect();
        if rungs.len() < MIN_RUNGS {
            let reason = format!(
                "need R <= {cap:e} and R^(1/theta) >= {floor:e}; {} of {} rungs qualify at theta={theta}",
                rungs.len(),
                sched.len()
            );
            return Err(too_few(rungs.len(), MIN_RUNGS, reason, self.theta_min(sched)));
        }
        let want_max = kind == SpectrumKind::Assouad;
        let trace: Vec<RungRecord> = map_par(&rungs, |&big_r| {
            let r = big_r.powf(1.0 / theta);
            let cell = BALL_CELL_FACTOR * r;
            let res = counter.extreme_count(big_r, cell, want_max);
            let count = res.expect("admissible scales");
            let denom = (1.0 - 1.0 / theta) * big_r.ln();
            RungRecord { radius: big_r, count, local_exponent: (count as f64).ln() / denom }
        });
        let tail = &trace[trace.len() - sched.tail_len(trace.len())..];
        let (at, value) = pick(tail.iter().map(|t| t.local_exponent), want_max).expect("nonempty tail");
        let xs: Vec<f64> = tail.iter().map(|t| (1.0 - 1.0 / theta) * t.radius.ln()).collect();
        let ys: Vec<f64> = tail.iter().map(|t| (t.count as f64).ln()).collect();
        Ok(SpectrumEstimate {
            theta,
            value,
            kind,
            slope_fit: slope(&xs, &ys),
            admissible_rungs: trace.len(),
            witness_radius: tail[at].radius,
            trace,
        })
    }

    pub fn assouad_spectrum_at(&self, theta: f64, sched: &ScaleSchedule) -> Result<SpectrumEstimate> {
        self.spectrum_at(theta, sched, SpectrumKind::Assouad)
    }

    pub fn lower_spectrum_at(&self, theta: f64, sched: &ScaleSchedule) -> Result<SpectrumEstimate> {
        self.spectrum_at(theta, sched, SpectrumKind::Lower)
    }

    pub fn sweep(&self, grid: &ThetaGrid, sched: &ScaleSchedule, kind: SpectrumKind) -> Result<Sweep> {
        let mut estimates = Vec::new();
        let mut skipped = Vec::new();
        for &theta in grid.thetas() {
            match self.spectrum_at(theta, sched, kind) {
                Ok(e) => estimates.push(e),
                Err(e @ Error::TooFewScales { .. }) => skipped.push((theta, e.to_string())),
                Err(e) => return Err(e),
            }
        }
        if estimates.is_empty() {
            return Err(Error::AllSkipped { reasons: skipped });
        }
        Ok(Sweep { estimates, skipped })
    }

    fn two_scale(&self, sched: &ScaleSchedule, want_max: bool) -> Result<DimensionEstimate> {
        let kind = if want_max { DimensionKind::Assouad } else { DimensionKind::Lower };
        let Some(counter) = &self.counter else {
            return Ok(DimensionEstimate { value: 0.0, kind, trace: DimTrace::Pairs(vec![]), admissible: 0 });
        };
        let (floor, cap) = (self.floor(), self.cap());
        let rungs: Vec<f64> = sched.radii().iter().copied().filter(|&r| r >= floor && r <= cap).collect();
        if rungs.len() < 2 {
            let reason = self.binding_constraint(sched, floor, cap);
            return Err(too_few(rungs.len(), 2, reason, None));
        }
        let pairs: Vec<(f64, f64)> = rungs
            .iter()
            .flat_map(|&a| rungs.iter().filter(move |&&b| b * PAIR_RATIO <= a).map(move |&b| (a, b)))
            .collect();
        if pairs.is_empty() {
            return Err(too_few(
                0,
                1,
                format!("no admissible rung pair with R/r >= {PAIR_RATIO}"),
                None,
            ));
        }
        let eval = |&(big_r, r): &(f64, f64)| {
            let cell = BALL_CELL_FACTOR * r;
            let count = counter.extreme_count(big_r, cell, want_max).expect("admissible scales");
            PairRecord { big_r, r, count, exponent: (count as f64).ln() / (big_r / r).ln() }
        };
        let mut trace: Vec<(usize, PairRecord)> = Vec::new();
        let mut best: Option<f64> = None;
        if want_max {
            // an upper bound on each count; pairs whose bound cannot beat the best are skipped
            let dim = self.f.dim() as i32;
            let mut inner: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            inner.sort_by(|a, b| b.total_cmp(a));
            inner.dedup();
            let totals = map_par(&inner, |&r| mesh_count_points(self.f.points(), BALL_CELL_FACTOR * r));
            let total = |r: f64| totals[inner.iter().position(|&x| x == r).expect("inner rung")];
            let mut order: Vec<(usize, f64)> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(big_r, r))| {
                    let per_axis = (big_r / r * (1.0 + 1e-9)).floor() + 2.0;
                    let bound = per_axis.powi(dim).min(total(r) as f64);
                    (i, bound.ln() / (big_r / r).ln())
                })
                .collect();
            order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            let mut next = 0;
            while next < order.len() && best.is_none_or(|b| order[next].1 >= b) {
                let end = (next + batch_size()).min(order.len());
                let batch: Vec<usize> = order[next..end].iter().map(|o| o.0).collect();
                for (i, rec) in batch.iter().zip(map_par(&batch, |&i| eval(&pairs[i]))) {
                    best = Some(best.map_or(rec.exponent, |b: f64| b.max(rec.exponent)));
                    trace.push((*i, rec));
                }
                next = end;
            }
        } else {
            // counts are at least 1, so an exponent of 0 cannot be undercut
            let mut next = 0;
            while next < pairs.len() && best != Some(0.0) {
                let end = (next + batch_size()).min(pairs.len());
                for (i, rec) in (next..end).zip(map_par(&pairs[next..end], eval)) {
                    best = Some(best.map_or(rec.exponent, |b: f64| b.min(rec.exponent)));
                    trace.push((i, rec));
                }
                next = end;
            }
        }
        trace.sort_by_key(|t| t.0);
        let trace: Vec<PairRecord> = trace.into_iter().map(|t| t.1).collect();
        let (_, value) = pick(trace.iter().map(|p| p.exponent), want_max).expect("nonempty");
        Ok(DimensionEstimate { value, kind, admissible: rungs.len(), trace: DimTrace::Pairs(trace) })
    }

    pub fn assouad_dim_estimate(&self, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
        self.two_scale(sched, true)
    }

    pub fn lower_dim_estimate(&self, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
        self.two_scale(sched, false)
    }
}

/// Estimates from a θ sweep, with the θ values that had too few rungs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub estimates: Vec<SpectrumEstimate>,
    pub skipped: Vec<(f64, String)>,
}

pub fn upper_box_dim(f: &FiniteApprox, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
    Estimator::new(f)?.upper_box_dim(sched)
}

pub fn lower_box_dim(f: &FiniteApprox, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
    Estimator::new(f)?.lower_box_dim(sched)
}

pub fn assouad_spectrum_at(f: &FiniteApprox, theta: f64, sched: &ScaleSchedule) -> Result<SpectrumEstimate> {
    Estimator::new(f)?.assouad_spectrum_at(theta, sched)
}

pub fn lower_spectrum_at(f: &FiniteApprox, theta: f64, sched: &ScaleSchedule) -> Result<SpectrumEstimate> {
    Estimator::new(f)?.lower_spectrum_at(theta, sched)
}

pub fn spectrum_sweep(
    f: &FiniteApprox,
    grid: &ThetaGrid,
    sched: &ScaleSchedule,
    kind: SpectrumKind,
) -> Result<Sweep> {
    Estimator::new(f)?.sweep(grid, sched, kind)
}

pub fn assouad_dim_estimate(f: &FiniteApprox, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
    Estimator::new(f)?.assouad_dim_estimate(sched)
}

pub fn lower_dim_estimate(f: &FiniteApprox, sched: &ScaleSchedule) -> Result<DimensionEstimate> {
    Estimator::new(f)?.lower_dim_estimate(sched)
}

/// Construction scales `L^{α^k}` and `L^{α^{k-1}β}` of a nested interval set,
/// largest first.
pub fn moran_scales(params: &MoranParams) -> Vec<f64> {
    let mut radii = vec![params.interval_length(0)];
    for k in 1..=params.depth {
        radii.push(params.gap_length(k));
        radii.push(params.interval_length(k));
    }
    radii
}

/// Construction scales of `params` merged into the default geometric ladder of `f`.
/// The construction scales alone leave too few rungs for most `theta`.
pub fn moran_aligned_schedule(f: &FiniteApprox, params: &MoranParams, tail_fraction: f64) -> Result<ScaleSchedule> {
    let mut radii = moran_scales(params);
    radii.extend_from_slice(ScaleSchedule::with_rho(f, DEFAULT_RHO, tail_fraction).radii());
    ScaleSchedule::explicit(radii, tail_fraction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_interval, gen_sequence, SequenceFamily};
    use crate::geometry::{Metric, Point};

    #[test]
    fn grids() {
        let g = ThetaGrid::range(0.1, 0.9, 0.1).unwrap();
        assert_eq!(g.thetas().len(), 9);
        assert_eq!(g.thetas()[2], 0.3);
        assert_eq!(ThetaGrid::standard().thetas().len(), 19);
        assert!(ThetaGrid::new(vec![0.5, 0.4]).is_err());
        assert!(ThetaGrid::new(vec![1.0]).is_err());
    }

    #[test]
    fn singleton_is_zero_everywhere() {
        let f = FiniteApprox::new(vec![Point::line(0.2)], 0.01, Metric::Euclidean, "one");
        let s = ScaleSchedule::geometric(0.5, 0.5, 10, 0.5).unwrap();
        assert_eq!(upper_box_dim(&f, &s).unwrap().value, 0.0);
        assert_eq!(lower_box_dim(&f, &s).unwrap().value, 0.0);
        assert_eq!(assouad_spectrum_at(&f, 0.3, &s).unwrap().value, 0.0);
        assert_eq!(assouad_dim_estimate(&f, &s).unwrap().value, 0.0);
        let sw = spectrum_sweep(&f, &ThetaGrid::standard(), &s, SpectrumKind::Lower).unwrap();
        assert!(sw.estimates.iter().all(|e| e.value == 0.0));
    }

    #[test]
    fn interval_is_one_dimensional() {
        let f = gen_interval(1e-4).unwrap();
        let s = ScaleSchedule::default_for(&f);
        for v in [upper_box_dim(&f, &s).unwrap().value, lower_box_dim(&f, &s).unwrap().value] {
            assert!((v - 1.0).abs() <= 0.02, "{v}");
        }
        let a = assouad_spectrum_at(&f, 0.5, &s).unwrap();
        assert!((a.value - 1.0).abs() <= 0.1, "{}", a.value);
        // endpoint balls see half an interval
        let l = lower_spectrum_at(&f, 0.5, &s).unwrap();
        assert!(l.value > 0.6 && l.value <= a.value, "{}", l.value);
    }

    #[test]
    fn too_few_rungs_reports_theta_min() {
        let f = gen_sequence(SequenceFamily::Power { lambda: 1.0 }, 1e-3).unwrap();
        let s = ScaleSchedule::default_for(&f);
        match assouad_spectrum_at(&f, 0.9, &s) {
            Err(Error::TooFewScales { theta_min: Some(t), .. }) => assert!(t > 0.0 && t < 0.9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tail_max_is_value_and_witness_is_deepest_tie() {
        let f = gen_sequence(SequenceFamily::Power { lambda: 1.0 }, 1e-6).unwrap();
        let s = ScaleSchedule::default_for(&f);
        let e = assouad_spectrum_at(&f, 0.5, &s).unwrap();
        let tail = &e.trace[e.trace.len() - s.tail_len(e.trace.len())..];
        let max = tail.iter().map(|t| t.local_exponent).fold(f64::MIN, f64::max);
        assert_eq!(e.value, max);
        let deepest = tail.iter().rev().find(|t| t.local_exponent == max).unwrap();
        assert_eq!(e.witness_radius, deepest.radius);
    }

    #[test]
    fn moran_scale_ladder() {
        let p = MoranParams::new(0.05, 2.0, 1.5, 2).unwrap();
        let s = moran_scales(&p);
        assert_eq!(s.len(), 5);
        assert!(s.windows(2).all(|w| w[1] < w[0]));
        assert!((s[1] - 0.05f64.powf(1.5)).abs() < 1e-15);
        assert!((s[4] - 0.05f64.powi(4)).abs() < 1e-18);
    }

    fn every_pair(f: &FiniteApprox, sched: &ScaleSchedule, want_max: bool) -> f64 {
        let est = Estimator::new(f).unwrap();
        let counter = LocalCounter::new(f).unwrap();
        let rungs: Vec<f64> =
            sched.radii().iter().copied().filter(|&r| r >= est.floor() && r <= est.cap()).collect();
        let mut vals = Vec::new();
        for &a in &rungs {
            for &b in rungs.iter().filter(|&&b| b * PAIR_RATIO <= a) {
                let n = counter.extreme_count(a, BALL_CELL_FACTOR * b, want_max).unwrap();
                vals.push((n as f64).ln() / (a / b).ln());
            }
        }
        pick(vals.into_iter(), want_max).unwrap().1
    }

    #[test]
    fn skipped_pairs_do_not_change_the_value() {
        let mut pts: Vec<Point> = (0..400).map(|i| Point::plane((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos())).collect();
        pts.extend((0..300).map(|i| Point::plane(2.0 + i as f64 * 1e-3, 0.5)));
        let sets = [
            gen_sequence(SequenceFamily::Power { lambda: 1.0 }, 1e-5).unwrap(),
            gen_sequence(SequenceFamily::Exponential { c: 0.5 }, 1e-9).unwrap(),
            gen_interval(1e-4).unwrap(),
            FiniteApprox::new(pts, 1e-4, Metric::Euclidean, "cloud"),
        ];
        for f in &sets {
            let sched = ScaleSchedule::default_for(f);
            let est = Estimator::new(f).unwrap();
            assert_eq!(est.assouad_dim_estimate(&sched).unwrap().value, every_pair(f, &sched, true), "{}", f.label());
            assert_eq!(est.lower_dim_estimate(&sched).unwrap().value, every_pair(f, &sched, false), "{}", f.label());
        }
    }
}
