//! Sparse counter-based computation of the infection closure `[A]`.
//!
//! Every line carries a counter of infected points on it. A line whose counter
//! reaches its axis threshold is queued; saturating it walks its `n` points
//! and bumps the counters of the other `d - 1` lines through every point that
//! was not yet infected. Infected points that do not lie on a saturated line
//! are kept in a hash set; all other membership is answered from the
//! per-line saturation flags.

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashSet;

use crate::error::{input_err, Result};
use crate::grid::{GridSpec, LineId, Point};
use crate::processes::planes::PlaneCounters;
use crate::processes::trace::{SaturationEvent, Trace};

/// Order in which queued lines are saturated. The final closure does not
/// depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueueDiscipline {
    #[default]
    Fifo,
    Lifo,
}

/// Whether a cascade may halt before the fixed point once percolation is
/// guaranteed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StopRule {
    #[default]
    FixedPoint,
    /// Halt as soon as a sufficient condition for percolation holds:
    /// `d = 2`: some axis has at least as many saturated lines as the
    /// threshold of the perpendicular axis;
    /// `d = 3`: for some axis `a`, at least `r_a` planes perpendicular to `a`
    /// hold `r_c` saturated lines along an in-plane axis `b` (`c` the third
    /// axis), so each of those planes fills and then every `a`-line does.
    Percolation,
}

#[derive(Debug, Clone)]
pub struct InfectionState {
    spec: GridSpec,
    initial: Vec<u64>,
    explicit: FxHashSet<u64>,
    saturated: Vec<bool>,
    line_count: Vec<u32>,
    infected_total: u64,
    pending: VecDeque<(usize, u32)>,
    queued: usize,
    discipline: QueueDiscipline,
    stop: StopRule,
    trace: Trace,
    infection_events: u64,
    saturated_per_axis: Vec<u64>,
    planes: Option<PlaneCounters>,
    certain: bool,
}

impl InfectionState {
    /// An empty state (no infected points) over `spec`.
    pub fn new(spec: &GridSpec) -> Self {
        let lines = spec.num_lines();
        Self {
            spec: spec.clone(),
            initial: Vec::new(),
            explicit: FxHashSet::default(),
            saturated: vec![false; lines],
            line_count: vec![0; lines],
            infected_total: 0,
            pending: VecDeque::new(),
            queued: 0,
            discipline: QueueDiscipline::Fifo,
            stop: StopRule::FixedPoint,
            trace: Trace::new(),
            infection_events: 0,
            saturated_per_axis: vec![0; spec.d()],
            planes: (spec.d() == 3).then(|| PlaneCounters::new(spec)),
            certain: false,
        }
    }

    pub fn with_discipline(mut self, discipline: QueueDiscipline) -> Self {
        self.discipline = discipline;
        self
    }

    pub fn with_stop_rule(mut self, stop: StopRule) -> Self {
        self.stop = stop;
        self
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    // ---- seeding --------------------------------------------------------

    /// Adds an initially infected point (packed index). Returns `false` if it
    /// was already infected. Lines that reach their threshold are queued with
    /// depth 1; call [`InfectionState::run`] to propagate.
    pub fn insert_index(&mut self, idx: u64) -> bool {
        if self.is_infected_index(idx) {
            return false;
        }
        self.initial.push(idx);
        self.explicit.insert(idx);
        self.infected_total += 1;
        self.infection_events += 1;
        for axis in 0..self.spec.d() {
            let line = self.spec.line_through_index(idx, axis);
            self.bump(line, 1);
        }
        self.update_full();
        true
    }

    pub fn insert(&mut self, p: &Point) -> Result<bool> {
        let idx = self.spec.point_index(p)?;
        Ok(self.insert_index(idx))
    }

    pub fn seed(&mut self, points: &[Point]) -> Result<()> {
        let packed = self.spec.pack(points)?;
        for idx in packed {
            self.insert_index(idx);
        }
        Ok(())
    }

    #[inline]
    fn bump(&mut self, line: usize, depth: u32) {
        let c = &mut self.line_count[line];
        *c += 1;
        if *c == self.spec.threshold(self.spec.line_axis(line)) && !self.saturated[line] {
            self.pending.push_back((line, depth));
            self.queued += 1;
        }
    }

    fn update_full(&mut self) {
        if self.infected_total == self.spec.num_points() {
            self.certain = true;
        }
    }

    // ---- propagation ----------------------------------------------------

    /// Saturates `line`: every point on it becomes infected. Records an event
    /// with the given `round` and `step` and returns the number of newly
    /// infected points. Lines reaching threshold are queued with depth
    /// `round + 1`.
    pub(crate) fn saturate(&mut self, line: usize, round: u32, step: u64) -> u32 {
        debug_assert!(!self.saturated[line]);
        let spec = &self.spec;
        let d = spec.d();
        let axis = spec.line_axis(line);
        let (base, stride) = spec.line_base_stride(line);
        self.saturated[line] = true;
        self.saturated_per_axis[axis] += 1;
        let mut gained = 0u32;
        for t in 0..spec.n() {
            let q = base + t as u64 * stride;
            if self.explicit.remove(&q) {
                continue;
            }
            let covered = (0..d)
                .filter(|&b| b != axis)
                .any(|b| self.saturated[self.spec.line_through_index(q, b)]);
            if covered {
                continue;
            }
            gained += 1;
            self.infected_total += 1;
            self.infection_events += 1;
            self.line_count[line] += 1;
            for b in (0..d).filter(|&b| b != axis) {
                let other = self.spec.line_through_index(q, b);
                self.bump(other, round + 1);
            }
            if let Some(planes) = self.planes.as_mut() {
                planes.record_boost(&self.spec, q, axis);
            }
        }
        debug_assert_eq!(self.line_count[line], self.spec.n());
        if let Some(planes) = self.planes.as_mut() {
            if planes.record_saturation(&self.spec, line) {
                self.certain = true;
            }
        }
        if d == 2 && self.saturated_per_axis[axis] >= self.spec.threshold(1 - axis) as u64 {
            self.certain = true;
        }
        self.update_full();
        self.trace.push(SaturationEvent { line, step, round, gained });
        gained
    }

    fn next_step(&self) -> u64 {
        self.trace.events().last().map_or(1, |e| e.step + 1)
    }

    /// Drains the queue (FIFO or LIFO), stopping early if the stop rule
    /// allows it and percolation is already certain.
    pub fn run(&mut self) {
        loop {
            if self.stop == StopRule::Percolation && self.certain {
                return;
            }
            let next = match self.discipline {
                QueueDiscipline::Fifo => self.pending.pop_front(),
                QueueDiscipline::Lifo => self.pending.pop_back(),
            };
            let Some((line, depth)) = next else { return };
            if self.saturated[line] {
                continue;
            }
            let step = self.next_step();
            self.saturate(line, depth, step);
        }
    }

    /// Removes and returns every queued line, sorted canonically. Used by the
    /// process schedules, which decide themselves when to saturate.
    pub(crate) fn take_pending(&mut self) -> Vec<usize> {
        let mut lines: Vec<usize> = self
            .pending
            .drain(..)
            .map(|(l, _)| l)
            .filter(|&l| !self.saturated[l])
            .collect();
        lines.sort_unstable();
        lines
    }

    // ---- queries --------------------------------------------------------

    pub fn is_infected_index(&self, idx: u64) -> bool {
        self.explicit.contains(&idx)
            || (0..self.spec.d()).any(|a| self.saturated[self.spec.line_through_index(idx, a)])
    }

    pub fn is_infected(&self, p: &Point) -> Result<bool> {
        Ok(self.is_infected_index(self.spec.point_index(p)?))
    }

    pub fn infected_count(&self) -> u64 {
        self.infected_total
    }

    /// True once the closure is known to be the whole grid: either every
    /// point is infected or a stop-rule condition holds.
    pub fn percolation_certain(&self) -> bool {
        self.certain
    }

    /// True when no queued work remains.
    pub fn is_quiescent(&self) -> bool {
        self.pending.iter().all(|&(l, _)| self.saturated[l])
    }

    /// Whether the closure is the full grid. Exact at quiescence, and also
    /// after an early stop (which only fires when percolation is certain).
    pub fn percolates(&self) -> bool {
        self.certain || self.infected_total == self.spec.num_points()
    }

    pub fn line_count(&self, line: usize) -> u32 {
        self.line_count[line]
    }

    pub fn is_saturated(&self, line: usize) -> bool {
        self.saturated[line]
    }

    pub fn saturated_codes(&self) -> Vec<usize> {
        (0..self.saturated.len()).filter(|&l| self.saturated[l]).collect()
    }

    pub fn saturated_lines(&self) -> Vec<LineId> {
        self.saturated_codes()
            .into_iter()
            .map(|l| self.spec.decode_line_unchecked(l))
            .collect()
    }

    pub fn saturated_on_axis(&self, axis: usize) -> u64 {
        self.saturated_per_axis[axis]
    }

    /// The initial set `A` in insertion order (duplicates dropped).
    pub fn initial(&self) -> &[u64] {
        &self.initial
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    /// Number of point infections processed (initial points plus points
    /// gained by saturations).
    pub fn infection_events(&self) -> u64 {
        self.infection_events
    }

    /// Lines ever queued by reaching their threshold.
    pub fn lines_queued(&self) -> usize {
        self.queued
    }

    pub(crate) fn planes(&self) -> Option<&PlaneCounters> {
        self.planes.as_ref()
    }

    /// All infected points as sorted packed indices. Materializes the set.
    pub fn infected_indices(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.explicit.iter().copied().collect();
        for line in self.saturated_codes() {
            let (base, stride) = self.spec.line_base_stride(line);
            out.extend((0..self.spec.n() as u64).map(|t| base + t * stride));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn infected_points(&self) -> BTreeSet<Point> {
        self.infected_indices().into_iter().map(|i| self.spec.point_at(i)).collect()
    }

    /// Recomputes every counter from the materialized infected set and
    /// checks the state invariants. Intended for tests.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let infected: FxHashSet<u64> = self.infected_indices().into_iter().collect();
        if infected.len() as u64 != self.infected_total {
            return Err(format!(
                "infected_total {} but {} points materialized",
                self.infected_total,
                infected.len()
            ));
        }
        for line in 0..self.spec.num_lines() {
            let (base, stride) = self.spec.line_base_stride(line);
            let on = (0..self.spec.n() as u64)
                .filter(|t| infected.contains(&(base + t * stride)))
                .count() as u32;
            if on != self.line_count[line] {
                return Err(format!("line {line}: counter {} but {on} infected", self.line_count[line]));
            }
            if self.saturated[line] && on != self.spec.n() {
                return Err(format!("line {line} saturated but only {on} infected"));
            }
        }
        for &q in &self.explicit {
            if (0..self.spec.d()).any(|a| self.saturated[self.spec.line_through_index(q, a)]) {
                return Err(format!("point {q} stored explicitly but lies on a saturated line"));
            }
        }
        Ok(())
    }
}

/// The closure `[A]` with the default FIFO discipline, run to the fixed
/// point.
pub fn closure(spec: &GridSpec, a: &[Point]) -> Result<InfectionState> {
    closure_with(spec, a, QueueDiscipline::Fifo)
}

pub fn closure_with(spec: &GridSpec, a: &[Point], discipline: QueueDiscipline) -> Result<InfectionState> {
    let mut state = InfectionState::new(spec).with_discipline(discipline);
    state.seed(a)?;
    state.run();
    Ok(state)
}

/// Closure from packed indices; skips per-point validation beyond a range
/// check.
pub fn closure_packed(spec: &GridSpec, a: &[u64], stop: StopRule) -> Result<InfectionState> {
    let mut state = InfectionState::new(spec).with_stop_rule(stop);
    for &idx in a {
        if idx >= spec.num_points() {
            return Err(input_err!("packed point {idx} outside grid"));
        }
        state.insert_index(idx);
    }
    state.run();
    Ok(state)
}

/// Reference fixed-point iteration: scan every line, fill any line holding at
/// least its threshold of infected points, repeat until a pass changes
/// nothing.
pub fn naive_closure(spec: &GridSpec, a: &[Point]) -> Result<BTreeSet<Point>> {
    let mut infected = vec![false; spec.num_points() as usize];
    for idx in spec.pack(a)? {
        infected[idx as usize] = true;
    }
    loop {
        let mut changed = false;
        for line in spec.all_lines() {
            let pts = spec.points_on(&line)?;
            let idxs: Vec<usize> = pts.iter().map(|p| spec.point_index(p).map(|i| i as usize)).collect::<Result<_>>()?;
            let count = idxs.iter().filter(|&&i| infected[i]).count();
            if count >= spec.threshold(line.axis) as usize && count < idxs.len() {
                for i in idxs {
                    infected[i] = true;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(infected
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| spec.point_at(i as u64))
        .collect())
}

/// Whether `A` percolates, i.e. `[A] = [n]^d`. Uses the sound early-stop
/// rule where one exists and otherwise runs to the fixed point.
pub fn percolates(spec: &GridSpec, a: &[Point]) -> Result<bool> {
    let mut state = InfectionState::new(spec).with_stop_rule(StopRule::Percolation);
    state.seed(a)?;
    state.run();
    Ok(state.percolates())
}

/// Two-dimensional percolation test that halts as soon as some axis holds as
/// many saturated lines as the perpendicular threshold. Returns the state so
/// callers can inspect how far the cascade went.
pub fn run_until_certain_2d(spec: &GridSpec, a: &[Point]) -> Result<InfectionState> {
    if spec.d() != 2 {
        return Err(input_err!("percolates_fast_2d needs d = 2, got d = {}", spec.d()));
    }
    let mut state = InfectionState::new(spec).with_stop_rule(StopRule::Percolation);
    state.seed(a)?;
    state.run();
    Ok(state)
}

pub fn percolates_fast_2d(spec: &GridSpec, a: &[Point]) -> Result<bool> {
    Ok(run_until_certain_2d(spec, a)?.percolates())
}
