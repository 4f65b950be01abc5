//! Plane statistics for three-dimensional runs.
//!
//! Plane `(a, c)` is `{x : x_a = c}` (0-based `c`), stored at index
//! `a * n + c`. A line along axis `b` lies in the two planes `(a, x_a)` with
//! `a != b`. For every plane we count saturated lines per in-plane direction;
//! the plane's statistic is the larger of its two counts.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::engine::InfectionState;
use crate::error::{input_err, Result};
use crate::grid::GridSpec;
use crate::processes::trace::Trace;

#[derive(Debug, Clone)]
pub(crate) struct PlaneCounters {
    n: usize,
    // dir_count[plane * 3 + b]
    dir_count: Vec<u32>,
    max: Vec<u32>,
    // hist[m] = planes whose max equals m
    hist: Vec<u64>,
    destined: Vec<bool>,
    destined_per_axis: [u32; 3],
    boosted: Vec<u64>,
}

impl PlaneCounters {
    pub(crate) fn new(spec: &GridSpec) -> Self {
        debug_assert_eq!(spec.d(), 3);
        let n = spec.n() as usize;
        let mut hist = vec![0u64; n + 1];
        hist[0] = 3 * n as u64;
        Self {
            n,
            dir_count: vec![0; 9 * n],
            max: vec![0; 3 * n],
            hist,
            destined: vec![false; 3 * n],
            destined_per_axis: [0; 3],
            boosted: vec![0; 3 * n],
        }
    }

    /// A point infected through a line along `axis` is a boosted point of the
    /// plane perpendicular to that line.
    #[inline]
    pub(crate) fn record_boost(&mut self, spec: &GridSpec, point: u64, axis: usize) {
        let c = spec.coord0(point, axis) as usize;
        self.boosted[axis * self.n + c] += 1;
    }

    /// Registers a saturated line. Returns true when, for some axis `a`, the
    /// number of planes perpendicular to `a` that must fill reaches `r_a`.
    pub(crate) fn record_saturation(&mut self, spec: &GridSpec, line: usize) -> bool {
        let b = spec.line_axis(line);
        let mut certain = false;
        for a in (0..3).filter(|&a| a != b) {
            let plane = a * self.n + spec.line_coord0(line, a) as usize;
            let slot = plane * 3 + b;
            self.dir_count[slot] += 1;
            let count = self.dir_count[slot];
            if count > self.max[plane] {
                self.hist[self.max[plane] as usize] -= 1;
                self.max[plane] = count;
                self.hist[count as usize] += 1;
            }
            let third = 3 - a - b;
            if !self.destined[plane] && count >= spec.threshold(third) {
                self.destined[plane] = true;
                self.destined_per_axis[a] += 1;
            }
            if self.destined_per_axis[a] >= spec.threshold(a) {
                certain = true;
            }
        }
        certain
    }

    fn stats(&self, k_max: usize) -> PlaneStats {
        let mut n_k = vec![0u64; k_max];
        let mut above = 0u64;
        for m in (1..self.hist.len()).rev() {
            above += self.hist[m];
            if m <= k_max {
                n_k[m - 1] = above;
            }
        }
        PlaneStats { n_k, boosted: self.boosted.clone(), plane_max: self.max.clone() }
    }
}

/// `N_k` and boosted-point counts for a three-dimensional run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneStats {
    /// `n_k[k - 1]` = number of planes containing at least `k` parallel
    /// saturated lines, for `k = 1..=k_max`.
    pub n_k: Vec<u64>,
    /// Boosted points per plane, indexed `axis * n + (coord - 1)`.
    pub boosted: Vec<u64>,
    /// Per-plane maximum over the two in-plane directions of the number of
    /// parallel saturated lines.
    pub plane_max: Vec<u32>,
}

impl PlaneStats {
    pub fn n(&self, k: usize) -> u64 {
        if k == 0 {
            return self.plane_max.len() as u64;
        }
        self.n_k.get(k - 1).copied().unwrap_or(0)
    }

    pub fn total_boosted(&self) -> u64 {
        self.boosted.iter().sum()
    }
}

/// Incrementally maintained plane statistics of a three-dimensional state,
/// reporting `N_k` for `k = 1..=max threshold`.
pub fn plane_statistics(state: &InfectionState) -> Result<PlaneStats> {
    let spec = state.spec();
    let planes = state
        .planes()
        .ok_or_else(|| input_err!("plane statistics need d = 3, got d = {}", spec.d()))?;
    Ok(planes.stats(spec.max_threshold() as usize))
}

/// Brute-force recount of the plane statistics from the initial set and the
/// saturation order: every saturated line is replayed and each point is
/// attributed to the first line through it that saturated.
pub fn recount_plane_statistics(spec: &GridSpec, initial: &[u64], trace: &Trace) -> Result<PlaneStats> {
    if spec.d() != 3 {
        return Err(input_err!("plane statistics need d = 3, got d = {}", spec.d()));
    }
    let n = spec.n() as usize;
    let mut infected: FxHashSet<u64> = initial.iter().copied().collect();
    let mut boosted = vec![0u64; 3 * n];
    let mut dir_count = vec![0u32; 9 * n];
    for e in trace.events() {
        let b = spec.line_axis(e.line);
        for t in 0..spec.n() {
            let q = spec.line_point(e.line, t);
            if infected.insert(q) {
                boosted[b * n + spec.coord0(q, b) as usize] += 1;
            }
        }
        for a in (0..3).filter(|&a| a != b) {
            let plane = a * n + spec.line_coord0(e.line, a) as usize;
            dir_count[plane * 3 + b] += 1;
        }
    }
    let plane_max: Vec<u32> = (0..3 * n)
        .map(|plane| (0..3).map(|b| dir_count[plane * 3 + b]).max().unwrap_or(0))
        .collect();
    let k_max = spec.max_threshold() as usize;
    let n_k = (1..=k_max)
        .map(|k| plane_max.iter().filter(|&&m| m as usize >= k).count() as u64)
        .collect();
    Ok(PlaneStats { n_k, boosted, plane_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::closure;
    use crate::grid::{LineId, Point};

    #[test]
    fn no_saturation_means_no_planes() {
        let spec = GridSpec::uniform(5, 3, 2).unwrap();
        let state = closure(&spec, &[Point(vec![1, 1, 1]), Point(vec![2, 2, 2])]).unwrap();
        let stats = plane_statistics(&state).unwrap();
        assert_eq!(stats.n_k, vec![0, 0]);
        assert_eq!(stats.n(0), 15);
        assert_eq!(stats.total_boosted(), 0);
    }

    #[test]
    fn single_line_touches_two_planes() {
        let spec = GridSpec::uniform(5, 3, 2).unwrap();
        let state = closure(&spec, &[Point(vec![1, 2, 3]), Point(vec![4, 2, 3])]).unwrap();
        assert_eq!(state.saturated_lines(), vec![LineId::new(0, vec![2, 3])]);
        let stats = plane_statistics(&state).unwrap();
        assert_eq!(stats.n_k, vec![2, 0]);
        assert_eq!(stats.plane_max[5 + 1], 1);
        assert_eq!(stats.plane_max[2 * 5 + 2], 1);
        // three new points, each boosted in its own x-plane
        assert_eq!(stats.total_boosted(), 3);
        assert_eq!(stats, recount_plane_statistics(&spec, state.initial(), state.trace()).unwrap());
    }

    #[test]
    fn rejects_other_dimensions() {
        let spec = GridSpec::uniform(4, 2, 2).unwrap();
        let state = closure(&spec, &[]).unwrap();
        assert!(plane_statistics(&state).is_err());
        assert!(recount_plane_statistics(&spec, &[], state.trace()).is_err());
    }
}
