//! Text formats: point files and the sweep/compare CSV tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{validate_approx, FiniteApprox, Metric, Point, SpectrumEstimate, SpectrumKind};
use crate::oracle::OracleCurve;

const PTS_MAGIC: &str = "dimspec-pts";
const PTS_VERSION: &str = "v1";

pub const SWEEP_HEADER: &str = "theta,kind,value,slope_fit,admissible_rungs,witness_R";
pub const COMPARE_HEADER: &str = "theta,estimated,oracle,abs_error,within_band";

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

/// Serializes `f` as a point file. Coordinates carry 17 significant digits, so reading
/// the text back reproduces every point bit for bit.
pub fn points_to_string(f: &FiniteApprox) -> String {
    let mut out = String::with_capacity(f.len() * 25 * f.dim().max(1) + 64);
    let _ = writeln!(
        out,
        "{PTS_MAGIC} {PTS_VERSION} d={} delta={:e} metric={} label={}",
        f.dim(),
        f.resolution(),
        f.metric(),
        f.label()
    );
    for p in f.points() {
        let mut first = true;
        for c in p.coords() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{c:.16e}");
        }
        out.push('\n');
    }
    out
}

/// Parses a point file and recomputes the diameter. The result must pass
/// [`validate_approx`].
pub fn points_from_str(text: &str) -> Result<FiniteApprox> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut fields = header.splitn(6, ' ');
    if fields.next() != Some(PTS_MAGIC) || fields.next() != Some(PTS_VERSION) {
        return Err(parse_err(1, format!("expected header `{PTS_MAGIC} {PTS_VERSION} ...`")));
    }
    let mut field = |key: &str| -> Result<&str> {
        let f = fields.next().ok_or_else(|| parse_err(1, format!("missing `{key}=`")))?;
        f.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .ok_or_else(|| parse_err(1, format!("expected `{key}=`, found `{f}`")))
    };
    let d: usize = field("d")?.parse().map_err(|_| parse_err(1, "bad `d`"))?;
    if !(1..=2).contains(&d) {
        return Err(parse_err(1, format!("unsupported dimension {d}")));
    }
    let delta: f64 = field("delta")?.parse().map_err(|_| parse_err(1, "bad `delta`"))?;
    let metric = Metric::from_str(field("metric")?).map_err(|e| parse_err(1, e.to_string()))?;
    let label = field("label")?.to_string();

    let mut points = Vec::new();
    let mut buf = [0.0f64; 2];
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut n = 0;
        for tok in line.split_ascii_whitespace() {
            if n == d {
                return Err(parse_err(i + 1, format!("more than {d} coordinates")));
            }
            buf[n] = tok.parse().map_err(|_| parse_err(i + 1, format!("bad number `{tok}`")))?;
            n += 1;
        }
        if n != d {
            return Err(parse_err(i + 1, format!("expected {d} coordinates, found {n}")));
        }
        points.push(Point::new(&buf[..d]).map_err(|e| parse_err(i + 1, e.to_string()))?);
    }
    let f = FiniteApprox::new(points, delta, metric, label);
    let bad = validate_approx(&f);
    if !bad.is_empty() {
        let names: Vec<&str> = bad.iter().map(|v| v.as_str()).collect();
        return Err(parse_err(0, format!("invalid set: {}", names.join(", "))));
    }
    Ok(f)
}

/// One row of a sweep table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub kind: SpectrumKind,
    pub value: f64,
    pub slope_fit: f64,
    pub admissible_rungs: usize,
    pub witness_r: f64,
}

impl From<&SpectrumEstimate> for SweepRow {
    fn from(e: &SpectrumEstimate) -> Self {
        SweepRow {
            theta: e.theta,
            kind: e.kind,
            value: e.value,
            slope_fit: e.slope_fit,
            admissible_rungs: e.admissible_rungs,
            witness_r: e.witness_radius,
        }
    }
}

/// Sorts rows by θ, assouad before lower.
pub fn sort_sweep_rows(rows: &mut [SweepRow]) {
    let rank = |k: SpectrumKind| match k {
        SpectrumKind::Assouad => 0,
        SpectrumKind::Lower => 1,
    };
    rows.sort_by(|a, b| a.theta.total_cmp(&b.theta).then(rank(a.kind).cmp(&rank(b.kind))));
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.theta, r.kind, r.value, r.slope_fit, r.admissible_rungs, r.witness_r
        );
    }
    out
}

pub fn sweep_from_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == SWEEP_HEADER => {}
        _ => return Err(parse_err(1, format!("expected header `{SWEEP_HEADER}`"))),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 6 {
            return Err(parse_err(i + 1, format!("expected 6 columns, found {}", cols.len())));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| parse_err(i + 1, format!("bad number `{s}`")))
        };
        rows.push(SweepRow {
            theta: num(cols[0])?,
            kind: cols[1].parse().map_err(|e: Error| parse_err(i + 1, e.to_string()))?,
            value: num(cols[2])?,
            slope_fit: num(cols[3])?,
            admissible_rungs: cols[4].parse().map_err(|_| parse_err(i + 1, "bad rung count"))?,
            witness_r: num(cols[5])?,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub theta: f64,
    pub estimated: f64,
    pub oracle: f64,
    pub abs_error: f64,
    pub within_band: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub kind: SpectrumKind,
    pub band: f64,
    pub rows: Vec<CompareRow>,
    pub max_abs_error: f64,
    pub all_within: bool,
}

/// Compares the rows of one spectrum kind against `curve`.
pub fn compare_sweep(rows: &[SweepRow], curve: &OracleCurve, kind: SpectrumKind, band: f64) -> Result<CompareReport> {
    if !(band >= 0.0 && band.is_finite()) {
        return Err(crate::error::invalid("band", "must be a nonnegative real"));
    }
    let mut out = Vec::new();
    for r in rows.iter().filter(|r| r.kind == kind) {
        let oracle = match kind {
            SpectrumKind::Assouad => curve.assouad(r.theta)?,
            SpectrumKind::Lower => curve.lower(r.theta)?,
        };
        let abs_error = (r.value - oracle).abs();
        out.push(CompareRow { theta: r.theta, estimated: r.value, oracle, abs_error, within_band: abs_error <= band });
    }
    if out.is_empty() {
        return Err(parse_err(0, format!("no `{kind}` rows to compare")));
    }
    let max_abs_error = out.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    let all_within = out.iter().all(|r| r.within_band);
    Ok(CompareReport { kind, band, rows: out, max_abs_error, all_within })
}

pub fn compare_to_csv(report: &CompareReport) -> String {
    let mut out = String::from(COMPARE_HEADER);
    out.push('\n');
    for r in &report.rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.theta, r.estimated, r.oracle, r.abs_error, r.within_band);
    }
    let within = report.rows.iter().filter(|r| r.within_band).count();
    let _ = writeln!(
        out,
        "# summary kind={} rows={} within={} max_abs_error={} band={} result={}",
        report.kind,
        report.rows.len(),
        within,
        report.max_abs_error,
        report.band,
        if report.all_within { "pass" } else { "fail" }
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_sequence, SequenceFamily};

    #[test]
    fn points_round_trip_exactly() {
        let f = gen_sequence(SequenceFamily::Power { lambda: 1.0 }, 1e-3).unwrap();
        let g = points_from_str(&points_to_string(&f)).unwrap();
        assert_eq!(f.points(), g.points());
        assert_eq!((f.resolution(), f.metric(), f.label()), (g.resolution(), g.metric(), g.label()));
        assert_eq!(f.diameter(), g.diameter());
        let p = FiniteApprox::new(
            vec![Point::plane(0.1, -0.3), Point::plane(1.0 / 3.0, 2.5e-300)],
            1e-3,
            Metric::Sup,
            "two words",
        );
        let q = points_from_str(&points_to_string(&p)).unwrap();
        assert_eq!(p.points(), q.points());
        assert_eq!(q.label(), "two words");
    }

    #[test]
    fn bad_point_files() {
        for text in [
            "",
            "nope v1 d=1 delta=1e-3 metric=euclidean label=x\n0\n",
            "dimspec-pts v1 d=3 delta=1e-3 metric=euclidean label=x\n0 0 0\n",
            "dimspec-pts v1 d=1 delta=1e-3 metric=euclidean label=x\n0 1\n",
            "dimspec-pts v1 d=1 delta=1e-3 metric=euclidean label=x\nabc\n",
            "dimspec-pts v1 d=1 delta=1e-3 metric=euclidean label=x\n0\n0\n",
            "dimspec-pts v1 d=1 delta=1e-3 metric=euclidean label=x\n",
        ] {
            assert!(matches!(points_from_str(text), Err(Error::Parse { .. })), "{text:?}");
        }
    }

    #[test]
    fn sweep_csv_round_trip_and_order() {
        let mut rows = vec![
            SweepRow { theta: 0.5, kind: SpectrumKind::Lower, value: 0.25, slope_fit: 0.3, admissible_rungs: 4, witness_r: 1e-3 },
            SweepRow { theta: 0.5, kind: SpectrumKind::Assouad, value: 1.0, slope_fit: 0.9, admissible_rungs: 4, witness_r: 2e-3 },
            SweepRow { theta: 0.1, kind: SpectrumKind::Lower, value: 0.1, slope_fit: 0.1, admissible_rungs: 9, witness_r: 0.01 },
        ];
        sort_sweep_rows(&mut rows);
        assert_eq!((rows[0].theta, rows[1].kind, rows[2].kind), (0.1, SpectrumKind::Assouad, SpectrumKind::Lower));
        let text = sweep_to_csv(&rows);
        assert!(text.starts_with("theta,kind,value,slope_fit,admissible_rungs,witness_R\n"));
        assert_eq!(sweep_from_csv(&text).unwrap(), rows);
        assert!(sweep_from_csv("").is_err());
    }

    #[test]
    fn compare_flags_rows() {
        let rows = vec![
            SweepRow { theta: 0.2, kind: SpectrumKind::Assouad, value: 0.66, slope_fit: 0.0, admissible_rungs: 5, witness_r: 0.1 },
            SweepRow { theta: 0.6, kind: SpectrumKind::Assouad, value: 0.7, slope_fit: 0.0, admissible_rungs: 5, witness_r: 0.1 },
        ];
        let rep = compare_sweep(&rows, &OracleCurve::FLambda { lambda: 1.0 }, SpectrumKind::Assouad, 0.1).unwrap();
        assert_eq!(rep.rows.iter().map(|r| r.within_band).collect::<Vec<_>>(), vec![true, false]);
        assert!(!rep.all_within);
        let csv = compare_to_csv(&rep);
        assert!(csv.starts_with(COMPARE_HEADER) && csv.contains("result=fail"));
        assert!(compare_sweep(&rows, &OracleCurve::FLambda { lambda: 1.0 }, SpectrumKind::Lower, 0.1).is_err());
    }
}
