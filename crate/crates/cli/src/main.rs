use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dimspec::estimator::moran_aligned_schedule;
use dimspec::generators::{gen_holder_image, gen_interval, gen_moran, gen_sequence, gen_spiral, SequenceFamily};
use dimspec::geometry::{DEFAULT_RHO, DEFAULT_TAIL_FRACTION, DIAMETER_CAP_FRACTION, RESOLUTION_FLOOR_FACTOR};
use dimspec::io::{compare_sweep, compare_to_csv, points_from_str, points_to_string, sort_sweep_rows, sweep_from_csv, sweep_to_csv, SweepRow};
use dimspec::{
    checks, Error, Estimator, FiniteApprox, MoranParams, OracleCurve, ScaleSchedule, SpectrumKind, SpiralParams,
    ThetaGrid, Winding,
};
use serde::Serialize;

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NO_SCALES: u8 = 3;

/// Assouad and lower spectra of finite samples of fractal sets.
#[derive(Parser)]
#[command(name = "dimspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sample of one of the built-in families and write it as a point file.
    Generate(GenerateArgs),
    /// Box, Assouad and lower dimension estimates of a point file.
    Estimate(EstimateArgs),
    /// Spectrum estimates over a theta grid, as CSV.
    Sweep(SweepArgs),
    /// Compare a sweep CSV against a closed-form spectrum.
    Compare(CompareArgs),
    /// Run the inequality suite on a point file and print a JSON report.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Power,
    ExpSqrt,
    Exponential,
    Interval,
    Moran,
    Spiral,
}

#[derive(Clone, Copy, ValueEnum)]
enum WindingKind {
    Power,
    Exponential,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Resolution of the sample (all families except moran).
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Rate of the exponential sequence or exponential winding.
    #[arg(long)]
    c: Option<f64>,
    /// Initial interval length of the nested-interval construction.
    #[arg(long = "L")]
    length: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long, value_enum)]
    winding: Option<WindingKind>,
    /// Exponent of the power winding.
    #[arg(long)]
    p: Option<f64>,
    /// Replace the sample by its image under x -> x^a (1-d sets only).
    #[arg(long)]
    holder: Option<f64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Ratio between consecutive radii.
    #[arg(long)]
    rho: Option<f64>,
    /// Largest radius (default diameter/4).
    #[arg(long)]
    r_max: Option<f64>,
    /// Number of radii (default: down to 10 x resolution).
    #[arg(long)]
    count: Option<usize>,
    /// Fraction of admissible radii used for the limit.
    #[arg(long)]
    tail: Option<f64>,
    /// Merge the scales of a nested-interval construction: L,ALPHA,BETA,DEPTH.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    aligned: Option<Vec<f64>>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0.1)]
    start: f64,
    #[arg(long, default_value_t = 0.9)]
    stop: f64,
    #[arg(long, default_value_t = 0.1)]
    step: f64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Assouad,
    Lower,
    Both,
}

impl KindArg {
    fn kinds(self) -> &'static [SpectrumKind] {
        match self {
            KindArg::Assouad => &[SpectrumKind::Assouad],
            KindArg::Lower => &[SpectrumKind::Lower],
            KindArg::Both => &[SpectrumKind::Assouad, SpectrumKind::Lower],
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    input: PathBuf,
    #[command(flatten)]
    schedule: ScheduleArgs,
    /// Also estimate both spectra at this theta.
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    input: PathBuf,
    #[command(flatten)]
    schedule: ScheduleArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value = "both")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    FLambda,
    Sequence,
    Spiral,
    Moran,
    Constant,
}

#[derive(Args)]
struct CompareArgs {
    /// Sweep CSV produced by `dimspec sweep`.
    input: PathBuf,
    #[arg(long, value_enum)]
    oracle: OracleKind,
    #[arg(long)]
    lambda: Option<f64>,
    /// Upper box dimension for the sequence and spiral curves.
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Value of the constant curve.
    #[arg(long)]
    v: Option<f64>,
    /// assouad or lower.
    #[arg(long, default_value = "assouad")]
    kind: SpectrumKind,
    #[arg(long, default_value_t = 0.1)]
    band: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    input: PathBuf,
    #[command(flatten)]
    schedule: ScheduleArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooFewScales { .. } | Error::AllSkipped { .. } => EXIT_NO_SCALES,
            _ => EXIT_INPUT,
        };
        let message = match &e {
            Error::AllSkipped { reasons } => {
                let mut m = e.to_string();
                for (t, why) in reasons {
                    m.push_str(&format!("\n  theta={t}: {why}"));
                }
                m
            }
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

type Outcome = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    let res = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Estimate(a) => estimate(a),
        Command::Sweep(a) => sweep(a),
        Command::Compare(a) => compare(a),
        Command::Validate(a) => validate(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> std::result::Result<(), Failure> {
    let Ok(v) = std::env::var("DIMSPEC_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| input_error(format!("DIMSPEC_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| input_error(e.to_string()))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| input_error(format!("--{flag} is required for {family}")))
}

fn build_set(a: &GenerateArgs) -> std::result::Result<FiniteApprox, Failure> {
    let delta = || need(a.delta, "delta", "this family");
    let f = match a.family {
        Family::Power => gen_sequence(SequenceFamily::Power { lambda: need(a.lambda, "lambda", "power")? }, delta()?)?,
        Family::ExpSqrt => gen_sequence(SequenceFamily::ExpSqrt, delta()?)?,
        Family::Exponential => gen_sequence(SequenceFamily::Exponential { c: need(a.c, "c", "exponential")? }, delta()?)?,
        Family::Interval => gen_interval(delta()?)?,
        Family::Moran => {
            let p = MoranParams::new(
                need(a.length, "L", "moran")?,
                need(a.alpha, "alpha", "moran")?,
                need(a.beta, "beta", "moran")?,
                need(a.depth, "depth", "moran")?,
            )?;
            gen_moran(&p)?
        }
        Family::Spiral => {
            let winding = match need(a.winding, "winding", "spiral")? {
                WindingKind::Power => Winding::Power { p: need(a.p, "p", "power winding")? },
                WindingKind::Exponential => Winding::Exponential { c: need(a.c, "c", "exponential winding")? },
            };
            let d = delta()?;
            gen_spiral(&SpiralParams::for_resolution(winding, d)?, d)?
        }
    };
    match a.holder {
        Some(alpha) => Ok(gen_holder_image(&f, alpha)?),
        None => Ok(f),
    }
}

fn generate(a: GenerateArgs) -> Outcome {
    let f = build_set(&a)?;
    let path = a.output.clone().unwrap_or_else(|| PathBuf::from(format!("{}.pts", f.label())));
    write_out(Some(&path), &points_to_string(&f))?;
    println!("points {} delta {:e} diameter {} file {}", f.len(), f.resolution(), f.diameter(), path.display());
    Ok(0)
}

fn read_set(path: &Path) -> std::result::Result<FiniteApprox, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    points_from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn schedule(f: &FiniteApprox, s: &ScheduleArgs) -> std::result::Result<ScaleSchedule, Failure> {
    let rho = s.rho.unwrap_or(DEFAULT_RHO);
    let tail = s.tail.unwrap_or(DEFAULT_TAIL_FRACTION);
    if let Some(v) = &s.aligned {
        if s.rho.is_some() || s.r_max.is_some() || s.count.is_some() {
            return Err(input_error("--aligned cannot be combined with --rho, --r-max or --count"));
        }
        if v[3].fract() != 0.0 || !(v[3] >= 0.0 && v[3] <= u32::MAX as f64) {
            return Err(input_error("--aligned depth must be a nonnegative integer"));
        }
        let p = MoranParams::new(v[0], v[1], v[2], v[3] as u32)?;
        return Ok(moran_aligned_schedule(f, &p, tail)?);
    }
    if s.r_max.is_none() && s.count.is_none() {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(input_error("--rho must lie in (0,1)"));
        }
        if !(tail > 0.0 && tail <= 1.0) {
            return Err(input_error("--tail must lie in (0,1]"));
        }
        return Ok(ScaleSchedule::with_rho(f, rho, tail));
    }
    let r_max = s.r_max.unwrap_or(DIAMETER_CAP_FRACTION * f.diameter());
    let count = match s.count {
        Some(c) => c,
        None => {
            let floor = RESOLUTION_FLOOR_FACTOR * f.resolution();
            let steps = ((floor / r_max).ln() / rho.ln()).floor();
            if steps.is_finite() && steps >= 0.0 { steps as usize + 1 } else { 1 }
        }
    };
    Ok(ScaleSchedule::geometric(rho, r_max, count, tail)?)
}

#[derive(Serialize)]
struct Quantity {
    name: String,
    value: Option<f64>,
    admissible: Option<usize>,
    skipped: Option<String>,
}

impl Quantity {
    fn new(name: impl Into<String>, r: dimspec::Result<(f64, usize)>) -> Self {
        let name = name.into();
        match r {
            Ok((v, n)) => Quantity { name, value: Some(v), admissible: Some(n), skipped: None },
            Err(e) => Quantity { name, value: None, admissible: None, skipped: Some(e.to_string()) },
        }
    }
}

#[derive(Serialize)]
struct EstimateReport {
    label: String,
    points: usize,
    delta: f64,
    diameter: f64,
    quantities: Vec<Quantity>,
}

fn estimate(a: EstimateArgs) -> Outcome {
    let f = read_set(&a.input)?;
    let sched = schedule(&f, &a.schedule)?;
    let est = Estimator::new(&f)?;
    let dim = |r: dimspec::Result<dimspec::DimensionEstimate>| r.map(|e| (e.value, e.admissible));
    let mut quantities = vec![
        Quantity::new("upper_box", dim(est.upper_box_dim(&sched))),
        Quantity::new("lower_box", dim(est.lower_box_dim(&sched))),
        Quantity::new("assouad_dim", dim(est.assouad_dim_estimate(&sched))),
        Quantity::new("lower_dim", dim(est.lower_dim_estimate(&sched))),
    ];
    if let Some(t) = a.theta {
        for kind in [SpectrumKind::Assouad, SpectrumKind::Lower] {
            let r = est.spectrum_at(t, &sched, kind).map(|e| (e.value, e.admissible_rungs));
            if let Err(e @ Error::InvalidParameter { .. }) = r {
                return Err(e.into());
            }
            quantities.push(Quantity::new(format!("{kind}({t})"), r));
        }
    }
    if quantities.iter().all(|q| q.value.is_none()) {
        for q in &quantities {
            eprintln!("{}: {}", q.name, q.skipped.as_deref().unwrap_or(""));
        }
        return Err(Failure { code: EXIT_NO_SCALES, message: "no quantity had enough admissible scales".into() });
    }
    let text = match a.format {
        Format::Json => {
            let r = EstimateReport {
                label: f.label().to_string(),
                points: f.len(),
                delta: f.resolution(),
                diameter: f.diameter(),
                quantities,
            };
            to_json(&r)
        }
        Format::Csv => {
            let mut out = String::from("quantity,value,admissible\n");
            for q in &quantities {
                let v = q.value.map_or(String::new(), |v| v.to_string());
                let n = q.admissible.map_or(String::new(), |n| n.to_string());
                out.push_str(&format!("{},{v},{n}\n", q.name));
            }
            out
        }
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(0)
}

fn grid(g: &GridArgs) -> std::result::Result<ThetaGrid, Failure> {
    Ok(ThetaGrid::range(g.start, g.stop, g.step)?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports hold finite numbers");
    s.push('\n');
    s
}

fn sweep(a: SweepArgs) -> Outcome {
    let f = read_set(&a.input)?;
    let sched = schedule(&f, &a.schedule)?;
    let grid = grid(&a.grid)?;
    let est = Estimator::new(&f)?;
    let mut rows = Vec::new();
    let mut reasons = Vec::new();
    for &kind in a.kind.kinds() {
        match est.sweep(&grid, &sched, kind) {
            Ok(sw) => {
                rows.extend(sw.estimates.iter().map(SweepRow::from));
                reasons.extend(sw.skipped.into_iter().map(|(t, why)| (kind, t, why)));
            }
            Err(Error::AllSkipped { reasons: r }) => reasons.extend(r.into_iter().map(|(t, why)| (kind, t, why))),
            Err(e) => return Err(e.into()),
        }
    }
    for (kind, t, why) in &reasons {
        eprintln!("skipped {kind} theta={t}: {why}");
    }
    if rows.is_empty() {
        return Err(Failure { code: EXIT_NO_SCALES, message: "every theta was skipped".into() });
    }
    sort_sweep_rows(&mut rows);
    let text = match a.format {
        Format::Csv => sweep_to_csv(&rows),
        Format::Json => to_json(&rows),
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(0)
}

fn oracle_curve(a: &CompareArgs) -> std::result::Result<OracleCurve, Failure> {
    let curve = match a.oracle {
        OracleKind::FLambda => OracleCurve::FLambda { lambda: need(a.lambda, "lambda", "f-lambda")? },
        OracleKind::Sequence => OracleCurve::Sequence { b: need(a.b, "b", "sequence")? },
        OracleKind::Spiral => OracleCurve::Spiral { b: need(a.b, "b", "spiral")? },
        OracleKind::Moran => {
            OracleCurve::Moran { alpha: need(a.alpha, "alpha", "moran")?, beta: need(a.beta, "beta", "moran")? }
        }
        OracleKind::Constant => OracleCurve::Constant { v: need(a.v, "v", "constant")? },
    };
    curve.validate()?;
    Ok(curve)
}

fn compare(a: CompareArgs) -> Outcome {
    let curve = oracle_curve(&a)?;
    let text = fs::read_to_string(&a.input).map_err(|e| input_error(format!("{}: {e}", a.input.display())))?;
    let rows = sweep_from_csv(&text).map_err(|e| input_error(format!("{}: {e}", a.input.display())))?;
    let report = compare_sweep(&rows, &curve, a.kind, a.band).map_err(|e| input_error(e.to_string()))?;
    let text = match a.format {
        Format::Csv => compare_to_csv(&report),
        Format::Json => to_json(&report),
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(if report.all_within { 0 } else { EXIT_FAIL })
}

fn validate(a: ValidateArgs) -> Outcome {
    let f = read_set(&a.input)?;
    let sched = schedule(&f, &a.schedule)?;
    let grid = grid(&a.grid)?;
    let report = checks::run_inequality_suite(&f, &grid, &sched)?;
    write_out(a.output.as_deref(), &to_json(&report))?;
    if report.checks.is_empty() {
        for (what, why) in &report.skipped {
            eprintln!("skipped {what}: {why}");
        }
        return Err(Failure { code: EXIT_NO_SCALES, message: "no inequality could be checked".into() });
    }
    Ok(if report.all_pass { 0 } else { EXIT_FAIL })
}
