//! Reproducible Bernoulli initial sets and the monotone weight coupling.
//!
//! Every site carries an i.i.d. uniform weight and `A_p` is the set of sites
//! with weight at most `p`. Weights are realized lazily in dyadic bands
//! `(2^{j-49}, 2^{j-48}]` (band 0 is `(0, 2^-48]`): band `j` holds each
//! not-yet-realized site with probability `(hi - lo) / (1 - lo)`, so its size
//! is binomial and its sites are distinct uniform draws. Bands are realized
//! in increasing order from one per-trial stream, hence `A_p` for different
//! `p` come from the same weights and only the sites below the largest band
//! in use are ever touched.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::engine::{closure_packed, InfectionState, StopRule};
use crate::error::{input_err, Result};
use crate::grid::{GridSpec, Point};

const BANDS: usize = 49;
const MANTISSA: u64 = 1 << 52;

/// Identifies one trial's random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TrialSeed {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl TrialSeed {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self { master_seed, trial_index }
    }

    /// ChaCha8 keyed by the master seed, one stream per trial.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.trial_index);
        rng
    }
}

fn band_bounds(j: usize) -> (f64, f64) {
    let hi = 2f64.powi(j as i32 - 48);
    let lo = if j == 0 { 0.0 } else { hi / 2.0 };
    (lo, hi)
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(input_err!("p must lie in [0, 1], got {p}"));
    }
    Ok(())
}

/// Lazily realized site weights of one trial.
#[derive(Debug, Clone)]
pub struct CoupledSample {
    spec: GridSpec,
    rng: ChaCha8Rng,
    bands_done: usize,
    taken: FxHashSet<u64>,
    // (weight, packed point), sorted
    weighted: Vec<(f64, u64)>,
}

impl CoupledSample {
    pub fn new(spec: &GridSpec, seed: TrialSeed) -> Self {
        Self {
            spec: spec.clone(),
            rng: seed.rng(),
            bands_done: 0,
            taken: FxHashSet::default(),
            weighted: Vec::new(),
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    /// Every weight at most `cap()` has been realized.
    pub fn cap(&self) -> f64 {
        if self.bands_done == 0 {
            0.0
        } else {
            band_bounds(self.bands_done - 1).1
        }
    }

    /// Realizes the next band and returns the range of `weighted` it added.
    fn realize_band(&mut self) -> std::ops::Range<usize> {
        let j = self.bands_done;
        debug_assert!(j < BANDS);
        self.bands_done += 1;
        let (lo, hi) = band_bounds(j);
        let total = self.spec.num_points();
        let remaining = total - self.taken.len() as u64;
        let start = self.weighted.len();
        if remaining == 0 {
            return start..start;
        }
        let q = if j + 1 == BANDS { 1.0 } else { (hi - lo) / (1.0 - lo) };
        let k = Binomial::new(remaining, q).expect("valid binomial").sample(&mut self.rng);
        let sites: Vec<u64> = if k > remaining / 2 {
            // dense: pick among the untouched sites directly
            let free: Vec<u64> = (0..total).filter(|i| !self.taken.contains(i)).collect();
            let picked: Vec<u64> = index::sample(&mut self.rng, free.len(), k as usize)
                .into_iter()
                .map(|i| free[i])
                .collect();
            self.taken.extend(picked.iter().copied());
            picked
        } else {
            let mut out = Vec::with_capacity(k as usize);
            while (out.len() as u64) < k {
                let site = self.rng.random_range(0..total);
                if self.taken.insert(site) {
                    out.push(site);
                }
            }
            out
        };
        for site in sites {
            // exact on the 2^-52 grid of the band: weight in (lo, hi]
            let m = self.rng.random_range(1..=MANTISSA) as f64 / MANTISSA as f64;
            self.weighted.push((lo + (hi - lo) * m, site));
        }
        self.weighted[start..].sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        start..self.weighted.len()
    }

    /// Realizes bands until every weight `<= p` is known.
    pub fn realize_up_to(&mut self, p: f64) {
        while self.bands_done < BANDS && band_bounds(self.bands_done).0 < p {
            self.realize_band();
        }
    }

    /// Realized `(point, weight)` pairs sorted by weight, then point order.
    pub fn weighted_points(&self) -> Vec<(Point, f64)> {
        self.weighted.iter().map(|&(w, i)| (self.spec.point_at(i), w)).collect()
    }

    /// Packed `A_p`, in weight order. Realizes bands as needed.
    pub fn packed_below(&mut self, p: f64) -> Vec<u64> {
        self.realize_up_to(p);
        self.weighted.iter().take_while(|&&(w, _)| w <= p).map(|&(_, i)| i).collect()
    }

    /// The `k` lightest realized sites.
    pub(crate) fn packed_prefix(&self, k: usize) -> Vec<u64> {
        self.weighted[..k].iter().map(|&(_, i)| i).collect()
    }

    /// `A_p` as points, in weight order.
    pub fn initial_set(&mut self, p: f64) -> Result<Vec<Point>> {
        check_p(p)?;
        Ok(self.packed_below(p).into_iter().map(|i| self.spec.point_at(i)).collect())
    }
}

/// A Bernoulli(`p`) subset of the grid determined by `seed`, coupled across
/// `p`.
pub fn sample_initial(spec: &GridSpec, p: f64, seed: TrialSeed) -> Result<Vec<Point>> {
    CoupledSample::new(spec, seed).initial_set(p)
}

pub(crate) fn sample_initial_packed(spec: &GridSpec, p: f64, seed: TrialSeed) -> Vec<u64> {
    CoupledSample::new(spec, seed).packed_below(p)
}

/// The per-sample critical probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PcSample {
    /// Smallest weight `w` with `A_w` percolating.
    pub value: f64,
    /// Set when no line can ever saturate (`n` below every threshold); the
    /// value is then 1 by convention.
    pub degenerate: bool,
    /// `|A_{p*}|`.
    pub critical_size: usize,
}

/// `p*` of one trial. Sites are added in weight order to a single cascade
/// state; monotonicity makes the first percolating prefix the answer, so
/// this agrees with a binary search over the realized weights.
pub fn critical_p_of_sample(spec: &GridSpec, seed: TrialSeed) -> PcSample {
    critical_p_with_sample(spec, seed).0
}

/// As [`critical_p_of_sample`], also returning the realized weights.
pub fn critical_p_with_sample(spec: &GridSpec, seed: TrialSeed) -> (PcSample, CoupledSample) {
    let mut sample = CoupledSample::new(spec, seed);
    if spec.n() < spec.min_threshold() {
        let pc = PcSample { value: 1.0, degenerate: true, critical_size: spec.num_points() as usize };
        return (pc, sample);
    }
    let mut state = InfectionState::new(spec).with_stop_rule(StopRule::Percolation);
    let mut added = 0usize;
    while sample.bands_done < BANDS {
        let range = sample.realize_band();
        for &(w, site) in &sample.weighted[range] {
            added += 1;
            state.insert_index(site);
            state.run();
            if state.percolates() {
                return (PcSample { value: w, degenerate: false, critical_size: added }, sample);
            }
        }
    }
    unreachable!("the full grid percolates once n reaches every threshold")
}

/// Spec-literal `p*`: grow the cap band by band, starting just below
/// `start_cap`, until `A_cap` percolates, then binary search the realized
/// weights with fresh closures. Returns the same value as
/// [`critical_p_of_sample`]; kept as an independent check.
pub fn critical_p_bisect(spec: &GridSpec, seed: TrialSeed, start_cap: f64) -> PcSample {
    let mut sample = CoupledSample::new(spec, seed);
    if spec.n() < spec.min_threshold() {
        return PcSample { value: 1.0, degenerate: true, critical_size: spec.num_points() as usize };
    }
    let perc = |pts: &[(f64, u64)]| {
        let packed: Vec<u64> = pts.iter().map(|&(_, i)| i).collect();
        closure_packed(spec, &packed, StopRule::Percolation).expect("in range").percolates()
    };
    sample.realize_up_to(start_cap.clamp(0.0, 1.0));
    while !perc(&sample.weighted) {
        sample.realize_band();
    }
    let w = &sample.weighted;
    // invariant: prefix of length hi percolates, prefix of length lo does not
    let (mut lo, mut hi) = (0usize, w.len());
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if perc(&w[..mid]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    PcSample { value: w[hi - 1].0, degenerate: false, critical_size: hi }
}

/// Theory-guided starting cap for the bisection: a few times
/// `n^{-1-1/r}`, the two-dimensional critical scale.
pub fn default_start_cap(spec: &GridSpec) -> f64 {
    let r = spec.max_threshold() as f64;
    (4.0 * (spec.n() as f64).powf(-1.0 - 1.0 / r)).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::percolates;

    #[test]
    fn extremes() {
        let spec = GridSpec::uniform(6, 2, 2).unwrap();
        let seed = TrialSeed::new(1, 0);
        assert!(sample_initial(&spec, 0.0, seed).unwrap().is_empty());
        let mut all = sample_initial(&spec, 1.0, seed).unwrap();
        all.sort();
        assert_eq!(all, spec.all_points().collect::<Vec<_>>());
        assert!(sample_initial(&spec, 1.5, seed).is_err());
        assert!(sample_initial(&spec, -0.1, seed).is_err());
    }

    #[test]
    fn mean_size_matches_binomial() {
        let spec = GridSpec::uniform(10, 2, 2).unwrap();
        let trials = 100_000u64;
        let total: usize = (0..trials)
            .map(|t| sample_initial_packed(&spec, 0.1, TrialSeed::new(11, t)).len())
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 10.0).abs() < 0.1, "mean |A| = {mean}");
    }

    #[test]
    fn samples_are_coupled_and_deterministic() {
        let spec = GridSpec::uniform(20, 2, 2).unwrap();
        let seed = TrialSeed::new(3, 17);
        let small = sample_initial(&spec, 0.01, seed).unwrap();
        let large = sample_initial(&spec, 0.3, seed).unwrap();
        assert_eq!(&large[..small.len()], &small[..]);
        assert_eq!(large, sample_initial(&spec, 0.3, seed).unwrap());
        assert_ne!(large, sample_initial(&spec, 0.3, TrialSeed::new(3, 18)).unwrap());
        let mut uniq = large.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), large.len());
    }

    #[test]
    fn one_dimension_is_an_order_statistic() {
        let spec = GridSpec::uniform(30, 1, 3).unwrap();
        for t in 0..200 {
            let (pc, sample) = critical_p_with_sample(&spec, TrialSeed::new(5, t));
            let weights: Vec<f64> = sample.weighted_points().iter().map(|x| x.1).collect();
            assert_eq!(pc.value, weights[2]);
            assert_eq!(pc.critical_size, 3);
        }
    }

    #[test]
    fn incremental_matches_bisection_and_flips_once() {
        let cases = [(8, 2, 3), (12, 2, 2), (6, 3, 2), (5, 3, 3), (4, 4, 2), (9, 2, 4)];
        for (i, &(n, d, r)) in cases.iter().enumerate() {
            let spec = GridSpec::uniform(n, d, r).unwrap();
            for t in 0..40 {
                let seed = TrialSeed::new(i as u64, t);
                let pc = critical_p_of_sample(&spec, seed);
                assert_eq!(pc, critical_p_bisect(&spec, seed, default_start_cap(&spec)));
                assert_eq!(pc, critical_p_bisect(&spec, seed, 1e-9));
                let mut sample = CoupledSample::new(&spec, seed);
                sample.realize_up_to(1.0);
                let flags: Vec<bool> = sample
                    .weighted_points()
                    .iter()
                    .map(|&(_, w)| percolates(&spec, &sample.clone().initial_set(w).unwrap()).unwrap())
                    .collect();
                let first = flags.iter().position(|&f| f).unwrap();
                assert!(flags[first..].iter().all(|&f| f));
                assert_eq!(first + 1, pc.critical_size);
            }
        }
    }

    #[test]
    fn degenerate_when_no_line_can_fill() {
        let spec = GridSpec::uniform(2, 2, 3).unwrap();
        let pc = critical_p_of_sample(&spec, TrialSeed::new(0, 0));
        assert!(pc.degenerate);
        assert_eq!(pc.value, 1.0);
    }
}
