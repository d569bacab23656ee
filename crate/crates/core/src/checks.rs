//! Inequality suite: relations every estimate set should satisfy up to slack.

use serde::Serialize;

use crate::error::Result;
use crate::estimator::{Estimator, ThetaGrid};
use crate::geometry::{FiniteApprox, ScaleSchedule, SpectrumEstimate, SpectrumKind};

pub const CHAIN_SLACK: f64 = 0.05;
pub const BAND_SLACK: f64 = 0.1;
pub const MONO_SLACK: f64 = 0.1;
pub const COMBINE_SLACK: f64 = 0.2;

/// One checked relation. `margin >= 0` means it holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub relation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub margin: f64,
    pub pass: bool,
}

impl Check {
    /// `lhs <= rhs + slack`.
    fn le(name: &'static str, relation: String, theta: Option<f64>, lhs: f64, rhs: f64, slack: f64) -> Self {
        let margin = rhs + slack - lhs;
        Check { name, relation, theta, lhs, rhs, slack, margin, pass: margin >= 0.0 }
    }

    /// `|lhs - rhs| <= slack`.
    fn near(name: &'static str, relation: String, theta: Option<f64>, lhs: f64, rhs: f64, slack: f64) -> Self {
        let margin = slack - (lhs - rhs).abs();
        Check { name, relation, theta, lhs, rhs, slack, margin, pass: margin >= 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub label: String,
    pub checks: Vec<Check>,
    /// Quantities that could not be estimated, with the reason.
    pub skipped: Vec<(String, String)>,
    pub all_pass: bool,
}

impl InequalityReport {
    fn new(label: String, checks: Vec<Check>, skipped: Vec<(String, String)>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        InequalityReport { label, checks, skipped, all_pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Estimates the suite consumes. Missing entries drop the checks that need them.
#[derive(Debug, Clone, Default)]
pub struct SuiteInputs {
    pub lower_dim: Option<f64>,
    pub lower_box: Option<f64>,
    pub upper_box: Option<f64>,
    pub assouad_dim: Option<f64>,
    pub assouad: Vec<SpectrumEstimate>,
    pub lower: Vec<SpectrumEstimate>,
}

fn same_theta(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9
}

fn at(list: &[SpectrumEstimate], theta: f64) -> Option<&SpectrumEstimate> {
    list.iter().find(|e| same_theta(e.theta, theta))
}

/// Ordering chain, general bounds for both spectra and quasi-monotonicity.
pub fn check_inequalities(inp: &SuiteInputs) -> Vec<Check> {
    let mut out = Vec::new();
    let chain = [
        ("lower_dim", inp.lower_dim),
        ("lower_box", inp.lower_box),
        ("upper_box", inp.upper_box),
        ("assouad_dim", inp.assouad_dim),
    ];
    for w in chain.windows(2) {
        if let ((a, Some(x)), (b, Some(y))) = (w[0], w[1]) {
            out.push(Check::le("ordering-chain", format!("{a} <= {b}"), None, x, y, CHAIN_SLACK));
        }
    }
    for e in &inp.assouad {
        let t = Some(e.theta);
        if let Some(b) = inp.upper_box {
            out.push(Check::le("general-bounds", "upper_box <= assouad_spectrum".into(), t, b, e.value, BAND_SLACK));
            let mut hi = b / (1.0 - e.theta);
            if let Some(a) = inp.assouad_dim {
                hi = hi.min(a);
            }
            out.push(Check::le(
                "general-bounds",
                "assouad_spectrum <= min(upper_box/(1-theta), assouad_dim)".into(),
                t,
                e.value,
                hi,
                BAND_SLACK,
            ));
        }
    }
    for e in &inp.lower {
        let t = Some(e.theta);
        if let Some(l) = inp.lower_dim {
            out.push(Check::le("lower-bounds", "lower_dim <= lower_spectrum".into(), t, l, e.value, BAND_SLACK));
        }
        if let Some(b) = inp.lower_box {
            out.push(Check::le("lower-bounds", "lower_spectrum <= lower_box".into(), t, e.value, b, BAND_SLACK));
        }
    }
    for e in &inp.assouad {
        if let Some(s) = at(&inp.assouad, e.theta.sqrt()) {
            if same_theta(s.theta, e.theta) {
                continue;
            }
            out.push(Check::le(
                "quasi-monotonicity",
                format!("assouad_spectrum({}) <= assouad_spectrum({})", e.theta, s.theta),
                Some(e.theta),
                e.value,
                s.value,
                MONO_SLACK,
            ));
        }
    }
    out
}

/// Spectrum of a union against the larger of the two parts, θ by θ.
pub fn check_union_max(a: &[SpectrumEstimate], b: &[SpectrumEstimate], union: &[SpectrumEstimate]) -> Vec<Check> {
    union
        .iter()
        .filter_map(|u| {
            let (x, y) = (at(a, u.theta)?, at(b, u.theta)?);
            Some(Check::near(
                "union-max",
                "spectrum(F u G) = max(spectrum(F), spectrum(G))".into(),
                Some(u.theta),
                u.value,
                x.value.max(y.value),
                COMBINE_SLACK,
            ))
        })
        .collect()
}

/// Spectrum of `F x F` against twice the spectrum of `F`, θ by θ.
pub fn check_self_product(single: &[SpectrumEstimate], product: &[SpectrumEstimate]) -> Vec<Check> {
    product
        .iter()
        .filter_map(|p| {
            let s = at(single, p.theta)?;
            Some(Check::near(
                "self-product",
                "spectrum(F x F) = 2 spectrum(F)".into(),
                Some(p.theta),
                p.value,
                2.0 * s.value,
                COMBINE_SLACK,
            ))
        })
        .collect()
}

/// Grid extended by `sqrt(theta)` for each θ, so every θ gets a monotonicity partner.
pub fn with_square_roots(grid: &ThetaGrid) -> ThetaGrid {
    let mut all: Vec<f64> = grid.thetas().to_vec();
    all.extend(grid.thetas().iter().map(|t| (t.sqrt() * 1e12).round() / 1e12));
    all.sort_by(f64::total_cmp);
    all.dedup_by(|a, b| same_theta(*a, *b));
    ThetaGrid::new(all).expect("square roots stay in (0,1)")
}

/// Estimates everything the suite needs for `f` and runs it.
pub fn run_inequality_suite(f: &FiniteApprox, grid: &ThetaGrid, sched: &ScaleSchedule) -> Result<InequalityReport> {
    let est = Estimator::new(f)?;
    let mut inp = SuiteInputs::default();
    let mut skipped = Vec::new();
    let mut keep = |name: &str, r: Result<f64>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            skipped.push((name.to_string(), e.to_string()));
            None
        }
    };
    inp.upper_box = keep("upper_box", est.upper_box_dim(sched).map(|e| e.value));
    inp.lower_box = keep("lower_box", est.lower_box_dim(sched).map(|e| e.value));
    inp.assouad_dim = keep("assouad_dim", est.assouad_dim_estimate(sched).map(|e| e.value));
    inp.lower_dim = keep("lower_dim", est.lower_dim_estimate(sched).map(|e| e.value));
    let full = with_square_roots(grid);
    for kind in [SpectrumKind::Assouad, SpectrumKind::Lower] {
        let sw = est.sweep(&full, sched, kind);
        match sw {
            Ok(sw) => {
                for (t, why) in sw.skipped {
                    skipped.push((format!("{kind}({t})"), why));
                }
                match kind {
                    SpectrumKind::Assouad => inp.assouad = sw.estimates,
                    SpectrumKind::Lower => inp.lower = sw.estimates,
                }
            }
            Err(e) => skipped.push((format!("{kind} sweep"), e.to_string())),
        }
    }
    let checks = check_inequalities(&inp);
    Ok(InequalityReport::new(f.label().to_string(), checks, skipped))
}

/// Builds a report from precomputed inputs.
pub fn report_from_inputs(label: &str, inp: &SuiteInputs, extra: Vec<Check>) -> InequalityReport {
    let mut checks = check_inequalities(inp);
    checks.extend(extra);
    InequalityReport::new(label.to_string(), checks, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_interval;

    fn est(theta: f64, value: f64) -> SpectrumEstimate {
        SpectrumEstimate {
            theta,
            value,
            kind: SpectrumKind::Assouad,
            trace: Vec::new(),
            slope_fit: value,
            admissible_rungs: 3,
            witness_radius: 0.1,
        }
    }

    #[test]
    fn margins_and_pairs() {
        let inp = SuiteInputs {
            lower_dim: Some(0.0),
            lower_box: Some(0.5),
            upper_box: Some(0.5),
            assouad_dim: Some(1.0),
            assouad: vec![est(0.25, 0.9), est(0.5, 0.7)],
            lower: Vec::new(),
        };
        let checks = check_inequalities(&inp);
        assert_eq!(checks.iter().filter(|c| c.name == "ordering-chain").count(), 3);
        let mono: Vec<_> = checks.iter().filter(|c| c.name == "quasi-monotonicity").collect();
        assert_eq!(mono.len(), 1);
        assert!(!mono[0].pass && (mono[0].margin + 0.1).abs() < 1e-12);
        // 0.9 > 0.5/(1-0.25) + 0.1
        assert!(checks.iter().any(|c| c.name == "general-bounds" && !c.pass));
    }

    #[test]
    fn combination_rules() {
        let a = [est(0.3, 0.5), est(0.6, 0.9)];
        let b = [est(0.3, 0.7)];
        let u = [est(0.3, 0.75), est(0.6, 0.9)];
        let c = check_union_max(&a, &b, &u);
        assert_eq!(c.len(), 1);
        assert!(c[0].pass);
        let p = check_self_product(&a, &[est(0.3, 1.5)]);
        assert!(!p[0].pass);
    }

    #[test]
    fn interval_passes_the_suite() {
        let f = gen_interval(1e-4).unwrap();
        let grid = ThetaGrid::range(0.1, 0.3, 0.1).unwrap();
        let rep = run_inequality_suite(&f, &grid, &ScaleSchedule::default_for(&f)).unwrap();
        assert!(rep.checks.len() > 10);
        assert!(rep.all_pass, "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
