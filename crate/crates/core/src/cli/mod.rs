//! Command-line front end. Every subcommand writes one JSON record or one
//! CSV table; records carry a schema version, the build id, and the spec,
//! seed and trial count they were computed from.

pub mod config;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::engine::{closure_with, QueueDiscipline};
use crate::error::{input_err, Error, Result};
use crate::estimator::{
    estimate_pc_with, estimate_theta_with, fit_exponent, plane_statistics_run, preface_statistics, regime_of,
    Regime, RunOptions, SlopeFit,
};
use crate::grid::{parse_points, GridSpec, SpecRecord};
use crate::minset::{min_percolating_size, verify_construction};
use crate::processes::{
    classify_line_count, run_alternating_2d, run_sequential, run_synchronous, sequential_inspections,
    AlternatingOptions, LineCount2D, LineCountClass,
};
use crate::theory::{pc3_exponent, predicted_theta2_slope, theory_report};

pub use config::{PRule, SweepConfig};

/// Version of the output layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Crate version plus `git describe` of the source tree at build time.
pub const BUILD_ID: &str = env!("LINEPERC_BUILD_ID");

#[derive(Debug, Parser)]
#[command(name = "lineperc", version = BUILD_ID, about = "r-neighbour line percolation on [n]^d")]
pub struct Cli {
    /// Worker threads for Monte Carlo commands (0 = all cores). Results do
    /// not depend on it.
    #[arg(long, global = true, env = "LINEPERC_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Add wall-clock seconds to JSON output (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Uniform threshold.
    #[arg(long, conflicts_with = "thresholds")]
    pub r: Option<u32>,
    /// Per-axis thresholds, comma separated (sets d).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub thresholds: Option<Vec<u32>>,
}

impl SpecArgs {
    fn build(&self) -> Result<GridSpec> {
        build_spec(self.n, self.d, self.r, self.thresholds.as_deref())
    }
}

fn build_spec(n: u32, d: usize, r: Option<u32>, thresholds: Option<&[u32]>) -> Result<GridSpec> {
    match (r, thresholds) {
        (Some(r), None) => GridSpec::uniform(n, d, r),
        (None, Some(t)) => GridSpec::new(n, t.to_vec()),
        _ => Err(input_err!("give exactly one of --r and --thresholds")),
    }
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Process {
    Fifo,
    Lifo,
    Synchronous,
    Alternating,
    Sequential,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closure of a point set read from a file or stdin.
    Closure {
        #[command(flatten)]
        spec: SpecArgs,
        /// Point file, one "x1,...,xd" per line; "-" reads stdin.
        #[arg(long, default_value = "-")]
        points: String,
        #[arg(long, value_enum, default_value_t = Process::Fifo)]
        process: Process,
        /// Also list every infected point.
        #[arg(long)]
        list: bool,
    },
    /// Monte Carlo estimate of the percolation probability at density p.
    Theta {
        #[command(flatten)]
        spec: SpecArgs,
        /// Density: <float>, n^<float> or <float>*n^<float>.
        #[arg(long)]
        p: PRule,
        #[command(flatten)]
        mc: McArgs,
        /// Also write a one-row CSV summary here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Check round counts and line-count classes on percolating samples.
        #[arg(long)]
        check_structure: bool,
    },
    /// Median of per-trial critical probabilities.
    Pc {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mc: McArgs,
        /// Also write the sorted per-trial values as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        check_structure: bool,
    },
    /// Estimates over a list of n with an optional log-log fit.
    Sweep(SweepArgs),
    /// Closed-form constants and exponents for threshold r.
    Theory {
        #[arg(long)]
        r: u32,
    },
    /// Tabulates prefaces of stopped alternating runs (d = 2), as CSV.
    PrefaceStats {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: PRule,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Plane statistics of runs to the fixed point (d = 3).
    PlaneStats {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: PRule,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Minimal percolating sets and polynomial certificates.
    Minset {
        #[command(subcommand)]
        action: MinsetCommand,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML file with sweep settings; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, conflicts_with = "thresholds")]
    pub r: Option<u32>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub thresholds: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub n_list: Option<Vec<u32>>,
    /// Estimate θ at this density instead of p_c.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Fit log(value) against log(n).
    #[arg(long)]
    pub fit: bool,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum MinsetCommand {
    /// Checks that [r]^d percolates and certifies random sets of size r^d - 1.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1000)]
        sets: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive search for the smallest percolating set.
    Search {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        max_size: Option<u32>,
    },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    build: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_seconds: Option<f64>,
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    input: &'a mut dyn Read,
    opts: RunOptions,
    timing: bool,
    start: Instant,
}

impl Ctx<'_> {
    fn record<T: Serialize>(&self, command: &str, body: T) -> Result<String> {
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            build: BUILD_ID,
            command,
            body,
            wall_seconds: self.timing.then(|| self.start.elapsed().as_secs_f64()),
        };
        serde_json::to_string(&env).map_err(|e| Error::Internal(format!("serialization: {e}")))
    }

    fn emit<T: Serialize>(&mut self, command: &str, body: T) -> Result<()> {
        let line = self.record(command, body)?;
        self.print(&line)
    }

    fn print(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}").map_err(|e| Error::Internal(format!("write failed: {e}")))
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| input_err!("cannot write {}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| input_err!("cannot read {}: {e}", path.display()))
}

fn csv_header(command: &str, spec: &SpecRecord, extra: &str) -> String {
    let t: Vec<String> = spec.thresholds.iter().map(|t| t.to_string()).collect();
    format!(
        "# lineperc {BUILD_ID} schema {SCHEMA_VERSION} {command} n={} d={} thresholds={} {extra}\n",
        spec.n,
        spec.d,
        t.join(",")
    )
}

fn density(rule: &PRule, n: u32) -> Result<f64> {
    let p = rule.at(n);
    if !(0.0..=1.0).contains(&p) {
        return Err(input_err!("density {rule} evaluates to {p} at n = {n}, outside [0, 1]"));
    }
    Ok(p)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code: 0 success, 1 input error, 2 internal failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, input: &mut dyn Read, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if help {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 1;
        }
    };
    let mut ctx = Ctx {
        out,
        input,
        opts: RunOptions::with_threads(cli.threads),
        timing: cli.timing,
        start: Instant::now(),
    };
    match dispatch(&cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Input(_) | Error::Refused(_) => 1,
                Error::Internal(_) => 2,
            }
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stdin = std::io::stdin();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stdin.lock(), &mut stderr.lock())
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<()> {
    match cmd {
        Command::Closure { spec, points, process, list } => closure_cmd(ctx, &spec.build()?, points, *process, *list),
        Command::Theta { spec, p, mc, csv, check_structure } => {
            let spec = spec.build()?;
            let p = density(p, spec.n())?;
            let mut opts = ctx.opts;
            opts.structure_checks = *check_structure;
            let est = estimate_theta_with(&spec, p, mc.trials, mc.seed, opts)?;
            if let Some(path) = csv {
                let mut text = csv_header("theta", &est.spec, &format!("seed={} trials={}", est.seed, est.trials));
                text.push_str("p,trials,successes,theta,ci_low,ci_high\n");
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    est.p, est.trials, est.successes, est.point_estimate, est.ci_low, est.ci_high
                ));
                write_file(path, &text)?;
            }
            ctx.emit("theta", &est)
        }
        Command::Pc { spec, mc, csv, check_structure } => {
            let spec = spec.build()?;
            let mut opts = ctx.opts;
            opts.structure_checks = *check_structure;
            let est = estimate_pc_with(&spec, mc.trials, mc.seed, opts)?;
            if let Some(path) = csv {
                let mut text = csv_header("pc", &est.spec, &format!("seed={} trials={}", est.seed, est.trials));
                text.push_str("rank,p_star\n");
                for (i, v) in est.samples.iter().enumerate() {
                    text.push_str(&format!("{},{v}\n", i + 1));
                }
                write_file(path, &text)?;
            }
            ctx.emit("pc", &est)
        }
        Command::Sweep(args) => sweep_cmd(ctx, args),
        Command::Theory { r } => ctx.emit("theory", theory_report(*r)?),
        Command::PrefaceStats { n, r, p, mc } => {
            let spec = GridSpec::uniform(*n, 2, *r)?;
            let pv = density(p, *n)?;
            let rows = preface_statistics(&spec, pv, mc.trials, mc.seed, ctx.opts)?;
            let mut text = csv_header(
                "preface-stats",
                &(&spec).into(),
                &format!("p={pv} seed={} trials={}", mc.seed, mc.trials),
            );
            text.push_str("classification,preface,slow,count,frequency\n");
            for row in rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.classification, row.preface, row.slow, row.count, row.frequency
                ));
            }
            ctx.print(text.trim_end())
        }
        Command::PlaneStats { n, r, p, mc } => {
            let spec = GridSpec::uniform(*n, 3, *r)?;
            let pv = density(p, *n)?;
            ctx.emit("plane-stats", plane_statistics_run(&spec, pv, mc.trials, mc.seed, ctx.opts)?)
        }
        Command::Minset { action } => minset_cmd(ctx, action),
    }
}

#[derive(Serialize)]
struct ClosureRecord {
    spec: SpecRecord,
    process: Process,
    initial_size: usize,
    percolates: bool,
    infected_count: u64,
    rounds: u32,
    saturated_lines: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line_count: Option<LineCount2D>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<LineCountClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inspections: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    infected: Option<Vec<String>>,
}

fn closure_cmd(ctx: &mut Ctx, spec: &GridSpec, source: &str, process: Process, list: bool) -> Result<()> {
    let text = if source == "-" {
        let mut s = String::new();
        ctx.input.read_to_string(&mut s).map_err(|e| input_err!("cannot read stdin: {e}"))?;
        s
    } else {
        read_file(Path::new(source))?
    };
    let a = parse_points(&text)?;
    // synchronous rounds come from the FIFO cascade, whose queue depths are
    // exactly the generations
    let fifo = closure_with(spec, &a, QueueDiscipline::Fifo)?;
    let rounds = fifo.trace().rounds();
    let (mut line_count, mut classification, mut inspections) = (None, None, None);
    let state = match process {
        Process::Fifo => fifo,
        Process::Lifo => closure_with(spec, &a, QueueDiscipline::Lifo)?,
        Process::Synchronous => run_synchronous(spec, &a)?.0,
        Process::Alternating => {
            let (_, stopped) = run_alternating_2d(spec, &a, AlternatingOptions::default())?;
            if let Some(r) = spec.uniform_threshold() {
                classification = Some(classify_line_count(&stopped, r)?);
            }
            line_count = Some(stopped);
            run_alternating_2d(spec, &a, AlternatingOptions::to_termination())?.0
        }
        Process::Sequential => {
            let (state, trace) = run_sequential(spec, &a, None)?;
            inspections = Some(sequential_inspections(spec, &trace));
            state
        }
    };
    let record = ClosureRecord {
        spec: spec.into(),
        process,
        initial_size: state.initial().len(),
        percolates: state.percolates(),
        infected_count: state.infected_count(),
        rounds,
        saturated_lines: state.saturated_lines().iter().map(|l| l.to_string()).collect(),
        line_count,
        classification,
        inspections,
        infected: list.then(|| state.infected_points().iter().map(|p| p.to_string()).collect()),
    };
    ctx.emit("closure", record)
}

#[derive(Serialize)]
struct SweepRow {
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    value: f64,
    ci_low: f64,
    ci_high: f64,
}

#[derive(Serialize)]
struct FitRecord {
    slope: f64,
    intercept: f64,
    stderr: f64,
    predicted_slope: Option<f64>,
}

#[derive(Serialize)]
struct SweepRecord {
    d: usize,
    thresholds: Vec<u32>,
    n_list: Vec<u32>,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_rule: Option<String>,
    trials: u64,
    seed: u64,
    rows: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<FitRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit_error: Option<String>,
}

/// Predicted slope of `log p_c` against `log n`, where known.
fn predicted_pc_slope(d: usize, r: Option<u32>) -> Option<f64> {
    match (d, r) {
        (1, Some(_)) => Some(-1.0),
        (2, Some(r)) => Some(-1.0 - 1.0 / r as f64),
        (3, Some(r)) if r >= 2 => pc3_exponent(r).ok().map(|q| *q.numer() as f64 / *q.denom() as f64),
        _ => None,
    }
}

/// Predicted slope of `log θ` for `p = c·n^b` in two dimensions, when every
/// `n` of the sweep sits in the same regime.
fn predicted_theta_slope(d: usize, r: Option<u32>, rule: &PRule, ns: &[u32]) -> Option<f64> {
    let (2, Some(r), Some(b)) = (d, r, rule.exponent) else { return None };
    let regimes: Vec<Regime> = ns.iter().filter_map(|&n| regime_of(n as u64, rule.at(n), r).ok()).collect();
    if regimes.len() != ns.len() || regimes.windows(2).any(|w| w[0] != w[1]) {
        return None;
    }
    match regimes[0] {
        Regime::Supercritical => Some(0.0),
        Regime::Subcritical(s) => Some(predicted_theta2_slope(r, s, b)),
    }
}

fn sweep_cmd(ctx: &mut Ctx, args: &SweepArgs) -> Result<()> {
    let base = match &args.config {
        Some(path) => SweepConfig::parse(&read_file(path)?)?,
        None => SweepConfig::default(),
    };
    let cfg = base.overlay(SweepConfig {
        d: args.d,
        r: args.r,
        thresholds: args.thresholds.clone(),
        n_list: args.n_list.clone(),
        p: args.p.clone(),
        trials: args.trials,
        seed: args.seed,
        fit: args.fit.then_some(true),
        csv: args.csv.clone(),
        json: args.json.clone(),
    });
    cfg.validate()?;
    let d = cfg.d.expect("validated");
    let ns = cfg.n_list.clone().expect("validated");
    let trials = cfg.trials.unwrap_or(1000);
    let seed = cfg.seed.unwrap_or(0);
    let rule: Option<PRule> = cfg.p.as_deref().map(str::parse).transpose()?;
    let specs: Vec<GridSpec> =
        ns.iter().map(|&n| build_spec(n, d, cfg.r, cfg.thresholds.as_deref())).collect::<Result<_>>()?;
    let uniform_r = specs[0].uniform_threshold();
    let mut rows = Vec::new();
    for spec in &specs {
        let n = spec.n();
        rows.push(match &rule {
            None => {
                let est = estimate_pc_with(spec, trials, seed, ctx.opts)?;
                SweepRow { n, p: None, value: est.median, ci_low: est.ci_low, ci_high: est.ci_high }
            }
            Some(rule) => {
                let p = density(rule, n)?;
                let est = estimate_theta_with(spec, p, trials, seed, ctx.opts)?;
                SweepRow { n, p: Some(p), value: est.point_estimate, ci_low: est.ci_low, ci_high: est.ci_high }
            }
        });
    }
    let (mut fit, mut fit_error) = (None, None);
    if cfg.fit.unwrap_or(false) {
        let predicted = match &rule {
            None => predicted_pc_slope(d, uniform_r),
            Some(rule) => predicted_theta_slope(d, uniform_r, rule, &ns),
        };
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.value)).collect();
        match fit_exponent(&points) {
            Ok(SlopeFit { slope, intercept, stderr, .. }) => {
                fit = Some(FitRecord { slope, intercept, stderr, predicted_slope: predicted })
            }
            Err(e) => fit_error = Some(e.to_string()),
        }
    }
    let spec_record: SpecRecord = (&specs[0]).into();
    if let Some(path) = &cfg.csv {
        let value = if rule.is_some() { "theta" } else { "median_pc" };
        let mut text = csv_header("sweep", &spec_record, &format!("seed={seed} trials={trials}"));
        text.push_str(&format!("n,{}{value},ci_low,ci_high\n", if rule.is_some() { "p," } else { "" }));
        for r in &rows {
            let p = r.p.map(|p| format!("{p},")).unwrap_or_default();
            text.push_str(&format!("{},{p}{},{},{}\n", r.n, r.value, r.ci_low, r.ci_high));
        }
        write_file(path, &text)?;
    }
    let record = SweepRecord {
        d,
        thresholds: spec_record.thresholds.clone(),
        n_list: ns,
        mode: if rule.is_some() { "theta" } else { "pc" },
        p_rule: rule.map(|r| r.to_string()),
        trials,
        seed,
        rows,
        fit,
        fit_error,
    };
    let line = ctx.record("sweep", &record)?;
    if let Some(path) = &cfg.json {
        write_file(path, &format!("{line}\n"))?;
    }
    ctx.print(&line)
}

#[derive(Serialize)]
struct VerifyRecord<T: Serialize> {
    spec: SpecRecord,
    seed: u64,
    #[serde(flatten)]
    report: T,
}

fn minset_cmd(ctx: &mut Ctx, action: &MinsetCommand) -> Result<()> {
    match action {
        MinsetCommand::Verify { n, d, r, sets, seed } => {
            let spec = GridSpec::uniform(*n, *d, *r)?;
            let report = verify_construction(&spec, *sets, *seed)?;
            let passed = report.passed();
            let first_failure = report.failures.first().cloned();
            ctx.emit("minset verify", VerifyRecord { spec: (&spec).into(), seed: *seed, report })?;
            if !passed {
                return Err(Error::Internal(first_failure.unwrap_or_else(|| "construction check failed".into())));
            }
            Ok(())
        }
        MinsetCommand::Search { spec, max_size } => {
            let spec = spec.build()?;
            let outcome = ctx.opts_pool(|| min_percolating_size(&spec, *max_size))?;
            #[derive(Serialize)]
            struct Rec<T: Serialize> {
                spec: SpecRecord,
                #[serde(flatten)]
                outcome: T,
            }
            ctx.emit("minset search", Rec { spec: (&spec).into(), outcome })
        }
    }
}

impl Ctx<'_> {
    /// Runs `f` on a pool sized by `--threads`.
    fn opts_pool<T: Send>(&self, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.opts.threads)
            .build()
            .map_err(|e| Error::Internal(format!("worker pool: {e}")))?
            .install(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut input = stdin.as_bytes();
        let code = run(std::iter::once("lineperc").chain(args.iter().copied()), &mut out, &mut input, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn corner_cube_closure() {
        let pts = "1,1\n1,2\n1,3\n2,1\n2,2\n2,3\n3,1\n3,2\n3,3\n";
        let (code, out, _) = call(&["closure", "--n", "8", "--d", "2", "--r", "3", "--points", "-"], pts);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["percolates"], true);
        assert_eq!(v["rounds"], 2);
        assert_eq!(v["infected_count"], 64);
        assert_eq!(v["schema_version"], 1);
        for process in ["lifo", "synchronous", "alternating", "sequential"] {
            let (code, out, _) =
                call(&["closure", "--n", "8", "--r", "3", "--process", process], pts);
            assert_eq!(code, 0, "{process}");
            let w: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert_eq!(w["infected_count"], 64);
        }
    }

    #[test]
    fn theory_record() {
        let (code, out, _) = call(&["theory", "--r", "2"], "");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gamma"], "1/1");
        assert_eq!(v["s"], 1);
        assert!((v["lambda"].as_f64().unwrap() - 0.832555).abs() < 1e-6);
    }

    #[test]
    fn errors_and_exit_codes() {
        assert_eq!(call(&["theory", "--r", "1"], "").0, 1);
        assert_eq!(call(&["theory", "--bogus"], "").0, 1);
        assert_eq!(call(&["nonsense"], "").0, 1);
        assert_eq!(call(&["closure", "--n", "4", "--r", "2"], "9,9\n").0, 1);
        assert_eq!(call(&["closure", "--n", "4", "--r", "2", "--thresholds", "2,2"], "").0, 1);
        assert_eq!(call(&["minset", "search", "--n", "6", "--d", "3", "--r", "3"], "").0, 1);
        let (code, out, _) = call(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("closure"));
    }

    #[test]
    fn deterministic_pc_across_threads() {
        let a = call(&["pc", "--n", "64", "--r", "2", "--trials", "100", "--seed", "7", "--threads", "1"], "");
        let b = call(&["pc", "--n", "64", "--r", "2", "--trials", "100", "--seed", "7", "--threads", "3"], "");
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        assert!(!a.1.contains("wall_seconds"));
        let t = call(&["pc", "--n", "64", "--r", "2", "--trials", "100", "--timing"], "");
        assert!(t.1.contains("wall_seconds"));
    }

    #[test]
    fn sweep_with_fit() {
        let (code, out, err) = call(
            &["sweep", "--d", "2", "--r", "2", "--n-list", "16,32,64", "--trials", "200", "--seed", "1", "--fit"],
            "",
        );
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);
        assert_eq!(v["fit"]["predicted_slope"], -1.5);
    }

    #[test]
    fn minset_commands() {
        let (code, out, _) = call(&["minset", "search", "--n", "3", "--d", "2", "--r", "2"], "");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["min_size"], 4);
        let (code, _, _) = call(&["minset", "verify", "--n", "5", "--r", "2", "--sets", "20"], "");
        assert_eq!(code, 0);
    }
}
