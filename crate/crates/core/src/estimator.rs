//! Monte Carlo estimates of `θ_p` and `p_c`, scaling-exponent fits and the
//! two-dimensional regime map.
//!
//! Trials are pure functions of `(master_seed, trial_index)` and are
//! collected in index order, so every estimate is bit-identical for any
//! worker count.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Binomial, ContinuousCDF, DiscreteCDF, Normal};

use crate::engine::{closure_packed, StopRule};
use crate::error::{input_err, Error, Result};
use crate::grid::{GridSpec, SpecRecord};
use crate::processes::alternating::{classify_line_count, run_alternating_packed, AlternatingOptions};
use crate::processes::synchronous::synchronous_until_certain_packed;
use crate::processes::LineCountClass;
use crate::sampling::{critical_p_with_sample, sample_initial_packed, TrialSeed};

/// Worker-pool and instrumentation settings shared by the estimators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; 0 means the available parallelism.
    pub threads: usize,
    /// Check round and line-count structure on every percolating 2D sample.
    pub structure_checks: bool,
}

impl RunOptions {
    pub fn with_threads(threads: usize) -> Self {
        Self { threads, ..Self::default() }
    }

    pub fn checked(mut self) -> Self {
        self.structure_checks = true;
        self
    }

    fn collect<T: Send>(&self, trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Result<Vec<T>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
        Ok(pool.install(|| (0..trials).into_par_iter().map(f).collect()))
    }
}

/// Structure of percolating two-dimensional samples: synchronous rounds and
/// stopped alternating line-count classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub checked: u64,
    pub max_rounds: u32,
    /// Samples needing more than `2r + 1` synchronous rounds.
    pub round_violations: u64,
    pub horizontal: u64,
    pub vertical: u64,
    /// Percolating samples whose line-count classified as neither, or whose
    /// conditions were inconsistent.
    pub unclassified: u64,
}

impl StructureReport {
    fn of_sample(spec: &GridSpec, a: &[u64]) -> Self {
        let r = spec.max_threshold();
        let sync = synchronous_until_certain_packed(spec, a);
        let lc = run_alternating_packed(spec, a, AlternatingOptions::default());
        let class = classify_line_count(&lc, r);
        Self {
            checked: 1,
            max_rounds: sync.rounds,
            round_violations: u64::from(!sync.percolates || sync.rounds > 2 * r + 1),
            horizontal: u64::from(class == Ok(LineCountClass::HorizontalLineCount)),
            vertical: u64::from(class == Ok(LineCountClass::VerticalLineCount)),
            unclassified: u64::from(!matches!(
                class,
                Ok(LineCountClass::HorizontalLineCount | LineCountClass::VerticalLineCount)
            )),
        }
    }

    fn merge(self, o: Self) -> Self {
        Self {
            checked: self.checked + o.checked,
            max_rounds: self.max_rounds.max(o.max_rounds),
            round_violations: self.round_violations + o.round_violations,
            horizontal: self.horizontal + o.horizontal,
            vertical: self.vertical + o.vertical,
            unclassified: self.unclassified + o.unclassified,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.round_violations == 0 && self.unclassified == 0
    }
}

fn structure_for(spec: &GridSpec, opts: &RunOptions, a: &[u64]) -> Option<StructureReport> {
    (opts.structure_checks && spec.d() == 2).then(|| StructureReport::of_sample(spec, a))
}

fn merge_reports(reports: impl Iterator<Item = Option<StructureReport>>) -> Option<StructureReport> {
    reports.flatten().reduce(StructureReport::merge)
}

/// Two-sided 95% Wilson score interval.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = Normal::standard().inverse_cdf(0.975);
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let centre = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    // clamp rounding at the extremes so the interval always brackets phat
    ((centre - half).clamp(0.0, phat), (centre + half).clamp(phat, 1.0))
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaEstimate {
    pub spec: SpecRecord,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    pub point_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    #[serde(skip)]
    pub wall_seconds: f64,
}

/// Estimates `θ_p` from `trials` independent Bernoulli(`p`) initial sets.
pub fn estimate_theta(spec: &GridSpec, p: f64, trials: u64, seed: u64) -> Result<ThetaEstimate> {
    estimate_theta_with(spec, p, trials, seed, RunOptions::default())
}

pub fn estimate_theta_with(
    spec: &GridSpec,
    p: f64,
    trials: u64,
    seed: u64,
    opts: RunOptions,
) -> Result<ThetaEstimate> {
    if !(0.0..=1.0).contains(&p) {
        return Err(input_err!("p must lie in [0, 1], got {p}"));
    }
    if trials == 0 {
        return Err(input_err!("trials must be at least 1"));
    }
    let start = Instant::now();
    let outcomes = opts.collect(trials, |t| {
        let a = sample_initial_packed(spec, p, TrialSeed::new(seed, t));
        let hit = closure_packed(spec, &a, StopRule::Percolation).expect("in range").percolates();
        (hit, if hit { structure_for(spec, &opts, &a) } else { None })
    })?;
    let successes = outcomes.iter().filter(|o| o.0).count() as u64;
    let (ci_low, ci_high) = wilson_interval(successes, trials);
    Ok(ThetaEstimate {
        spec: spec.into(),
        p,
        trials,
        seed,
        successes,
        point_estimate: successes as f64 / trials as f64,
        ci_low,
        ci_high,
        structure: merge_reports(outcomes.into_iter().map(|o| o.1)),
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PcEstimate {
    pub spec: SpecRecord,
    pub trials: u64,
    pub seed: u64,
    pub median: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Trials where no line could ever saturate (`p* = 1` by convention).
    pub degenerate: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    /// Sorted per-trial `p*`.
    #[serde(skip)]
    pub samples: Vec<f64>,
    #[serde(skip)]
    pub wall_seconds: f64,
}

impl PcEstimate {
    /// Empirical CDF of `p*` at `p`, which estimates `θ_p`.
    pub fn ecdf(&self, p: f64) -> f64 {
        self.samples.partition_point(|&x| x <= p) as f64 / self.samples.len() as f64
    }
}

/// Sample median (mean of the middle pair for even counts).
pub fn median_of_sorted(xs: &[f64]) -> f64 {
    let m = xs.len();
    if m % 2 == 1 {
        xs[m / 2]
    } else {
        (xs[m / 2 - 1] + xs[m / 2]) / 2.0
    }
}

/// 1-based order-statistic ranks `(l, u)` with
/// `P(X_(l) <= median <= X_(u)) >= 0.95`, from `Binomial(m, 1/2)`.
pub fn median_ci_ranks(m: u64) -> (u64, u64) {
    let b = Binomial::new(0.5, m).expect("valid binomial");
    // largest l with P(B <= l - 1) <= 0.025
    let mut l = 1;
    while l < m && b.cdf(l) <= 0.025 {
        l += 1;
    }
    (l, m + 1 - l)
}

/// Estimates `p_c` as the median of per-trial `p*`, with a 95% CI from
/// binomial order statistics.
pub fn estimate_pc(spec: &GridSpec, trials: u64, seed: u64) -> Result<PcEstimate> {
    estimate_pc_with(spec, trials, seed, RunOptions::default())
}

pub fn estimate_pc_with(spec: &GridSpec, trials: u64, seed: u64, opts: RunOptions) -> Result<PcEstimate> {
    if trials < 10 {
        return Err(input_err!("p_c estimation needs at least 10 trials, got {trials}"));
    }
    let start = Instant::now();
    let outcomes = opts.collect(trials, |t| {
        let (pc, sample) = critical_p_with_sample(spec, TrialSeed::new(seed, t));
        let report = if pc.degenerate {
            None
        } else {
            structure_for(spec, &opts, &sample.packed_prefix(pc.critical_size))
        };
        (pc, report)
    })?;
    let degenerate = outcomes.iter().filter(|o| o.0.degenerate).count() as u64;
    let mut samples: Vec<f64> = outcomes.iter().map(|o| o.0.value).collect();
    samples.sort_by(f64::total_cmp);
    let (l, u) = median_ci_ranks(trials);
    Ok(PcEstimate {
        spec: spec.into(),
        trials,
        seed,
        median: median_of_sorted(&samples),
        ci_low: samples[l as usize - 1],
        ci_high: samples[u as usize - 1],
        degenerate,
        structure: merge_reports(outcomes.into_iter().map(|o| o.1)),
        samples,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Least-squares line through `(log n, log value)`.
#[derive(Debug, Clone, Serialize)]
pub struct SlopeFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
}

pub fn fit_exponent(estimates: &[(f64, f64)]) -> Result<SlopeFit> {
    if let Some(&(n, v)) = estimates.iter().find(|&&(n, v)| !(v > 0.0 && n > 0.0)) {
        return Err(input_err!("log-log fit needs positive n and values, got ({n}, {v})"));
    }
    let mut ns: Vec<f64> = estimates.iter().map(|e| e.0).collect();
    ns.sort_by(f64::total_cmp);
    ns.dedup();
    if ns.len() < 3 {
        return Err(input_err!("log-log fit needs at least 3 distinct n, got {}", ns.len()));
    }
    let points: Vec<(f64, f64)> = estimates.iter().map(|&(n, v)| (n.ln(), v.ln())).collect();
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = (ssr / (k - 2.0) / sxx).sqrt();
    Ok(SlopeFit { points, slope, intercept, stderr })
}

/// Position of `(n, p)` in the two-dimensional regime map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `n^{-1-1/(r-s-1)} <= p <= n^{-1-1/(r-s)}` (lower bound absent for
    /// `s = r - 1`).
    Subcritical(u32),
    /// `p > n^{-1-1/r}`.
    Supercritical,
}

/// Classifies `p` against the cutoffs `c_s = n^{-1-1/(r-s)}`. A `p` equal to
/// a cutoff goes to the smaller `s`.
pub fn regime_of(n: u64, p: f64, r: u32) -> Result<Regime> {
    if n < 2 || r < 2 || !(p > 0.0 && p < 1.0) {
        return Err(input_err!("regime_of needs n >= 2, r >= 2 and 0 < p < 1, got n={n} p={p} r={r}"));
    }
    let cutoff = |s: u32| (n as f64).powf(-1.0 - 1.0 / (r - s) as f64);
    if p > cutoff(0) {
        return Ok(Regime::Supercritical);
    }
    Ok(Regime::Subcritical((0..r - 1).find(|&s| p >= cutoff(s + 1)).unwrap_or(r - 1)))
}

/// One row of the preface table: how often a stopped alternating run ended
/// with a given classification and preface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefaceRow {
    pub classification: LineCountClass,
    pub preface: String,
    pub slow: bool,
    pub count: u64,
    pub frequency: f64,
}

/// Runs the stopped alternating process on `trials` Bernoulli(`p`) sets and
/// tabulates the prefaces of percolating runs; `slow` uses `s = s_of_r(r)`.
/// Non-percolating runs form a single row with an empty preface.
pub fn preface_statistics(
    spec: &GridSpec,
    p: f64,
    trials: u64,
    seed: u64,
    opts: RunOptions,
) -> Result<Vec<PrefaceRow>> {
    use crate::processes::alternating::{is_slow, preface_of};
    if spec.d() != 2 {
        return Err(input_err!("preface statistics need d = 2, got d = {}", spec.d()));
    }
    let r = spec
        .uniform_threshold()
        .ok_or_else(|| input_err!("preface statistics need a uniform threshold"))?;
    let s = crate::theory::s_of_r(r)?;
    if !(0.0..=1.0).contains(&p) || trials == 0 {
        return Err(input_err!("need p in [0, 1] and trials >= 1"));
    }
    let outcomes = opts.collect(trials, |t| {
        let a = sample_initial_packed(spec, p, TrialSeed::new(seed, t));
        let lc = run_alternating_packed(spec, &a, AlternatingOptions::default());
        match preface_of(&lc, r) {
            Ok(pre) => Ok((pre.class, pre.to_string(), is_slow(&pre, s))),
            Err(_) => classify_line_count(&lc, r).map(|c| (c, String::new(), false)),
        }
    })?;
    let mut tally: std::collections::BTreeMap<(LineCountClass, String, bool), u64> = Default::default();
    for o in outcomes {
        *tally.entry(o?).or_default() += 1;
    }
    let mut rows: Vec<PrefaceRow> = tally
        .into_iter()
        .map(|((classification, preface, slow), count)| PrefaceRow {
            classification,
            preface,
            slow,
            count,
            frequency: count as f64 / trials as f64,
        })
        .collect();
    rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| (a.classification, &a.preface).cmp(&(b.classification, &b.preface))));
    Ok(rows)
}

/// Aggregate plane statistics of three-dimensional runs taken to the fixed
/// point.
#[derive(Debug, Clone, Serialize)]
pub struct PlaneStatsSummary {
    pub spec: SpecRecord,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub percolated: u64,
    /// Mean `N_k` for `k = 1..=max threshold`.
    pub mean_n_k: Vec<f64>,
    pub mean_boosted: f64,
    /// Runs with `N_k <= n^{1 - kγ/(r-γ)}` for every `k >= 1`.
    pub within_bound: u64,
    pub within_bound_fraction: f64,
}

/// `N_k` and boosted-point statistics over `trials` Bernoulli(`p`) sets in
/// `d = 3` with uniform threshold `r >= 2`, compared against
/// `n^{1 - kγ/(r-γ)}`.
pub fn plane_statistics_run(
    spec: &GridSpec,
    p: f64,
    trials: u64,
    seed: u64,
    opts: RunOptions,
) -> Result<PlaneStatsSummary> {
    use crate::processes::plane_statistics;
    let r = spec
        .uniform_threshold()
        .filter(|_| spec.d() == 3)
        .ok_or_else(|| input_err!("plane statistics need d = 3 with a uniform threshold"))?;
    let gamma = crate::theory::gamma_of_r(r)?;
    let g = *gamma.numer() as f64 / *gamma.denom() as f64;
    if !(0.0..=1.0).contains(&p) || trials == 0 {
        return Err(input_err!("need p in [0, 1] and trials >= 1"));
    }
    let n = spec.n() as f64;
    let bound = |k: usize| n.powf(1.0 - k as f64 * g / (r as f64 - g));
    let k_max = spec.max_threshold() as usize;
    let outcomes = opts.collect(trials, |t| {
        let a = sample_initial_packed(spec, p, TrialSeed::new(seed, t));
        let state = closure_packed(spec, &a, StopRule::FixedPoint).expect("in range");
        let stats = plane_statistics(&state).expect("three-dimensional");
        let within = (1..=spec.n() as usize).all(|k| {
            let n_k = stats.plane_max.iter().filter(|&&m| m as usize >= k).count();
            n_k as f64 <= bound(k)
        });
        (state.percolates(), stats.n_k.clone(), stats.total_boosted(), within)
    })?;
    let tf = trials as f64;
    let mut mean_n_k = vec![0.0; k_max];
    for o in &outcomes {
        for (m, &v) in mean_n_k.iter_mut().zip(&o.1) {
            *m += v as f64 / tf;
        }
    }
    let within_bound = outcomes.iter().filter(|o| o.3).count() as u64;
    Ok(PlaneStatsSummary {
        spec: spec.into(),
        p,
        trials,
        seed,
        percolated: outcomes.iter().filter(|o| o.0).count() as u64,
        mean_n_k,
        mean_boosted: outcomes.iter().map(|o| o.2 as f64).sum::<f64>() / tf,
        within_bound,
        within_bound_fraction: within_bound as f64 / tf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_brackets_and_is_sane() {
        for (k, n) in [(0, 10), (10, 10), (3, 10), (500, 1000), (1, 100_000)] {
            let (lo, hi) = wilson_interval(k, n);
            let ph = k as f64 / n as f64;
            assert!(0.0 <= lo && lo <= ph && ph <= hi && hi <= 1.0);
        }
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
        let (lo, hi) = wilson_interval(0, 10);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.2775).abs() < 1e-3);
    }

    #[test]
    fn wilson_coverage_meta() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for q in [0.02, 0.3, 0.5, 0.9] {
            let reps = 2000;
            let covered = (0..reps)
                .filter(|_| {
                    let k = (0..200).filter(|_| rng.random::<f64>() < q).count() as u64;
                    let (lo, hi) = wilson_interval(k, 200);
                    lo <= q && q <= hi
                })
                .count();
            assert!(covered as f64 >= 0.9 * reps as f64, "q={q}: {covered}/{reps}");
        }
    }

    #[test]
    fn median_ranks() {
        // classic table value: m = 100 gives ranks 40 and 61
        assert_eq!(median_ci_ranks(100), (40, 61));
        assert_eq!(median_ci_ranks(5), (1, 5));
        assert_eq!(median_of_sorted(&[1.0, 2.0, 4.0, 8.0]), 3.0);
    }

    #[test]
    fn theta_extremes() {
        let spec = GridSpec::uniform(16, 2, 2).unwrap();
        let one = estimate_theta(&spec, 1.0, 20, 1).unwrap();
        assert_eq!(one.point_estimate, 1.0);
        let zero = estimate_theta(&spec, 0.0, 20, 1).unwrap();
        assert_eq!(zero.point_estimate, 0.0);
        assert!(estimate_theta(&spec, 1.1, 20, 1).is_err());
        assert!(estimate_theta(&spec, 0.5, 0, 1).is_err());
    }

    #[test]
    fn estimates_ignore_thread_count() {
        let spec = GridSpec::uniform(40, 2, 2).unwrap();
        let a = estimate_pc_with(&spec, 200, 9, RunOptions::with_threads(1)).unwrap();
        let b = estimate_pc_with(&spec, 200, 9, RunOptions::with_threads(4)).unwrap();
        assert_eq!(a.samples, b.samples);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let t1 = estimate_theta_with(&spec, 0.01, 300, 4, RunOptions::with_threads(1).checked()).unwrap();
        let t4 = estimate_theta_with(&spec, 0.01, 300, 4, RunOptions::with_threads(3).checked()).unwrap();
        assert_eq!(serde_json::to_string(&t1).unwrap(), serde_json::to_string(&t4).unwrap());
    }

    #[test]
    fn pc_one_dimension_order_statistic() {
        // median of Beta(2, 99) is about 1.678 / 100
        let spec = GridSpec::uniform(100, 1, 2).unwrap();
        let est = estimate_pc(&spec, 4000, 2).unwrap();
        assert!((est.median * 100.0 / 1.678 - 1.0).abs() < 0.1, "{}", est.median);
        assert!(est.ci_low <= est.median && est.median <= est.ci_high);
    }

    #[test]
    fn ecdf_matches_theta() {
        let spec = GridSpec::uniform(32, 2, 2).unwrap();
        let pc = estimate_pc(&spec, 2000, 21).unwrap();
        for p in [0.003, 0.006, 0.01] {
            let th = estimate_theta(&spec, p, 2000, 22).unwrap();
            let e = pc.ecdf(p);
            let (lo, hi) = wilson_interval((e * 2000.0).round() as u64, 2000);
            assert!(lo <= th.ci_high && th.ci_low <= hi, "p={p}: ecdf {e}, theta {}", th.point_estimate);
        }
        // the coupling makes θ̂ monotone under a shared seed set
        let mut last = 0.0;
        for p in [0.001, 0.003, 0.006, 0.01, 0.02] {
            let th = estimate_theta(&spec, p, 500, 5).unwrap().point_estimate;
            assert!(th >= last);
            last = th;
        }
    }

    #[test]
    fn structure_on_small_runs() {
        let spec = GridSpec::uniform(30, 2, 2).unwrap();
        let est = estimate_pc_with(&spec, 300, 3, RunOptions::default().checked()).unwrap();
        let s = est.structure.unwrap();
        assert_eq!(s.checked, 300);
        assert!(s.is_clean(), "{s:?}");
        assert!(s.max_rounds <= 5);
    }

    #[test]
    fn preface_table_small() {
        let spec = GridSpec::uniform(64, 2, 2).unwrap();
        let rows = preface_statistics(&spec, 64f64.powf(-1.5), 400, 1, RunOptions::default()).unwrap();
        assert_eq!(rows.iter().map(|r| r.count).sum::<u64>(), 400);
        let again = preface_statistics(&spec, 64f64.powf(-1.5), 400, 1, RunOptions::with_threads(2)).unwrap();
        assert_eq!(rows, again);
        assert!(rows.iter().any(|r| r.classification == LineCountClass::NoPercolation));
    }

    #[test]
    fn plane_summary_small() {
        let spec = GridSpec::uniform(12, 3, 2).unwrap();
        let sum = plane_statistics_run(&spec, 0.2 / 144.0, 100, 3, RunOptions::default()).unwrap();
        assert_eq!(sum.mean_n_k.len(), 2);
        assert!(sum.within_bound_fraction > 0.5);
        assert!(plane_statistics_run(&GridSpec::uniform(5, 2, 2).unwrap(), 0.1, 10, 1, RunOptions::default()).is_err());
    }

    #[test]
    fn exact_power_law_fit() {
        let pts: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0].iter().map(|&n: &f64| (n, n.powi(-2))).collect();
        let fit = fit_exponent(&pts).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!(fit.stderr < 1e-12);
        assert!(fit_exponent(&pts[..2]).is_err());
        assert!(fit_exponent(&[(2.0, 1.0), (3.0, 0.0), (4.0, 1.0)]).is_err());
    }

    #[test]
    fn regimes() {
        let n = 1000u64;
        let nf = n as f64;
        assert_eq!(regime_of(n, nf.powf(-1.7), 2).unwrap(), Regime::Subcritical(0));
        assert_eq!(regime_of(n, nf.powf(-2.05), 2).unwrap(), Regime::Subcritical(1));
        assert_eq!(regime_of(n, nf.powf(-1.3), 2).unwrap(), Regime::Supercritical);
        assert_eq!(regime_of(n, nf.powf(-1.4), 3).unwrap(), Regime::Subcritical(0));
        assert_eq!(regime_of(n, nf.powf(-1.6), 3).unwrap(), Regime::Subcritical(1));
        assert_eq!(regime_of(n, nf.powf(-2.5), 3).unwrap(), Regime::Subcritical(2));
        assert!(regime_of(1, 0.5, 2).is_err());
        assert!(regime_of(10, 1.0, 2).is_err());
    }
}
