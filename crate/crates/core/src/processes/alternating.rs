//! The alternating two-dimensional process: half-steps that saturate only
//! horizontal lines (axis 0) alternate with half-steps that saturate only
//! vertical lines (axis 1).
//!
//! The line-count records the number of lines saturated in each half-step.
//! The first half-step is always recorded, even when idle; the run ends at
//! the first later idle half-step, which is not recorded. With the stop rule
//! the run also ends right after a half-step leaving some axis with at least
//! as many saturated lines as the perpendicular threshold.
//!
//! Classification and prefaces follow the horizontal-first indexing: for a
//! run starting with vertical half-steps the roles of `h` and `v` swap.

use std::fmt;

use serde::Serialize;

use crate::engine::InfectionState;
use crate::error::{input_err, Result};
use crate::grid::{GridSpec, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    /// Lines along axis 0.
    Horizontal,
    /// Lines along axis 1.
    Vertical,
}

impl Direction {
    pub fn axis(self) -> usize {
        match self {
            Direction::Horizontal => 0,
            Direction::Vertical => 1,
        }
    }

    fn other(self) -> Self {
        match self {
            Direction::Horizontal => Direction::Vertical,
            Direction::Vertical => Direction::Horizontal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternatingOptions {
    pub start: Direction,
    pub stop_rule: bool,
}

impl Default for AlternatingOptions {
    fn default() -> Self {
        Self { start: Direction::Horizontal, stop_rule: true }
    }
}

impl AlternatingOptions {
    pub fn to_termination() -> Self {
        Self { stop_rule: false, ..Self::default() }
    }
}

/// Per-half-step saturation counts. `h[i]` is the `i`-th horizontal
/// half-step and `v[i]` the `i`-th vertical one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LineCount2D {
    pub start: Direction,
    pub h: Vec<u32>,
    pub v: Vec<u32>,
}

impl LineCount2D {
    /// A horizontal-first line-count.
    pub fn new(h: Vec<u32>, v: Vec<u32>) -> Self {
        Self { start: Direction::Horizontal, h, v }
    }

    /// `(first, second)` in schedule order.
    fn ordered(&self) -> (&[u32], &[u32]) {
        match self.start {
            Direction::Horizontal => (&self.h, &self.v),
            Direction::Vertical => (&self.v, &self.h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineCountClass {
    VerticalLineCount,
    HorizontalLineCount,
    NoPercolation,
}

impl fmt::Display for LineCountClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineCountClass::VerticalLineCount => "vertical",
            LineCountClass::HorizontalLineCount => "horizontal",
            LineCountClass::NoPercolation => "none",
        })
    }
}

/// Runs the alternating process on a two-dimensional grid.
pub fn run_alternating_2d(
    spec: &GridSpec,
    a: &[Point],
    opts: AlternatingOptions,
) -> Result<(InfectionState, LineCount2D)> {
    if spec.d() != 2 {
        return Err(input_err!("the alternating process needs d = 2, got d = {}", spec.d()));
    }
    let mut state = InfectionState::new(spec);
    state.seed(a)?;
    let lc = alternate(&mut state, opts);
    Ok((state, lc))
}

pub(crate) fn run_alternating_packed(spec: &GridSpec, a: &[u64], opts: AlternatingOptions) -> LineCount2D {
    debug_assert_eq!(spec.d(), 2);
    let mut state = InfectionState::new(spec);
    for &idx in a {
        state.insert_index(idx);
    }
    alternate(&mut state, opts)
}

fn alternate(state: &mut InfectionState, opts: AlternatingOptions) -> LineCount2D {
    let spec = state.spec().clone();
    let mut ready: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut counts: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let mut dir = opts.start;
    let mut half = 0u32;
    loop {
        for line in state.take_pending() {
            ready[spec.line_axis(line)].push(line);
        }
        let axis = dir.axis();
        let mut lines = std::mem::take(&mut ready[axis]);
        if lines.is_empty() && half > 0 {
            break;
        }
        lines.sort_unstable();
        half += 1;
        // once every perpendicular line is saturated the grid is full and
        // the remaining parallel lines are not newly infected
        let mut gained = 0u32;
        for &line in &lines {
            let step = state.trace().events().last().map_or(1, |e| e.step + 1);
            if state.saturated_on_axis(1 - axis) < spec.n() as u64 {
                gained += 1;
            }
            state.saturate(line, half, step);
        }
        if gained == 0 && half > 1 {
            break;
        }
        counts[axis].push(gained);
        if opts.stop_rule
            && (state.saturated_on_axis(0) >= spec.threshold(1) as u64
                || state.saturated_on_axis(1) >= spec.threshold(0) as u64)
        {
            break;
        }
        dir = dir.other();
    }
    let [h, v] = counts;
    LineCount2D { start: opts.start, h, v }
}

/// Which of the two schedule-ordered sequences reached `r` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Winner {
    First,
    Second,
    Neither,
}

fn sum(xs: &[u32]) -> u64 {
    xs.iter().map(|&x| x as u64).sum()
}

fn prefix(xs: &[u32], len: usize) -> u64 {
    sum(&xs[..len.min(xs.len())])
}

/// Classification on schedule-ordered sequences `first = ⟨f_i⟩`,
/// `second = ⟨s_i⟩` (horizontal-first: `f = h`, `s = v`).
///
/// Second wins at `k = |s| - 1` iff `Σ_{i<k} s_i < r`, `Σ_{i≤k} f_i < r` and
/// `Σ_{i≤k} s_i ≥ r`. First wins at `k + 1 = |f| - 1` iff `Σ_{i≤k} f_i < r`,
/// `Σ_{i≤k} s_i < r` and `Σ_{i≤k+1} f_i ≥ r`. Missing entries count as zero.
fn winner(first: &[u32], second: &[u32], r: u32) -> Result<Winner> {
    let r = r as u64;
    if !second.is_empty() {
        let k = second.len() - 1;
        if prefix(second, k) < r && prefix(first, k + 1) < r && sum(second) >= r {
            return Ok(Winner::Second);
        }
    }
    if !first.is_empty() {
        let k1 = first.len() - 1;
        if prefix(first, k1) < r && prefix(second, k1) < r && sum(first) >= r {
            return Ok(Winner::First);
        }
    }
    if sum(first) < r && sum(second) < r {
        return Ok(Winner::Neither);
    }
    Err(input_err!(
        "line-count {first:?}/{second:?} reaches {r} without satisfying either ordering condition"
    ))
}

fn class_of(start: Direction, w: Winner) -> LineCountClass {
    let winning = match (w, start) {
        (Winner::Neither, _) => return LineCountClass::NoPercolation,
        (Winner::First, s) => s,
        (Winner::Second, s) => s.other(),
    };
    match winning {
        Direction::Horizontal => LineCountClass::HorizontalLineCount,
        Direction::Vertical => LineCountClass::VerticalLineCount,
    }
}

/// Classifies a stopped line-count as vertical, horizontal or
/// non-percolating using only the three sum conditions.
pub fn classify_line_count(lc: &LineCount2D, r: u32) -> Result<LineCountClass> {
    let (first, second) = lc.ordered();
    Ok(class_of(lc.start, winner(first, second, r)?))
}

/// A line-count with the final entry of the winning direction removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Preface {
    pub class: LineCountClass,
    pub start: Direction,
    pub h: Vec<u32>,
    pub v: Vec<u32>,
}

impl Preface {
    fn ordered(&self) -> (&[u32], &[u32]) {
        match self.start {
            Direction::Horizontal => (&self.h, &self.v),
            Direction::Vertical => (&self.v, &self.h),
        }
    }

    fn first_wins(&self) -> bool {
        let first_class = class_of(self.start, Winner::First);
        self.class == first_class
    }
}

impl fmt::Display for Preface {
    /// `h:1,0|v:1`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "h:{}|v:{}", join(&self.h), join(&self.v))
    }
}

pub fn preface_of(lc: &LineCount2D, r: u32) -> Result<Preface> {
    let class = classify_line_count(lc, r)?;
    let (mut h, mut v) = (lc.h.clone(), lc.v.clone());
    match class {
        LineCountClass::NoPercolation => {
            return Err(input_err!("a non-percolating line-count has no preface"));
        }
        LineCountClass::VerticalLineCount => {
            v.pop();
        }
        LineCountClass::HorizontalLineCount => {
            h.pop();
        }
    }
    Ok(Preface { class, start: lc.start, h, v })
}

/// Slow prefaces: for a second-direction winner with preface
/// `(⟨f_0..f_k⟩, ⟨s_0..s_{k-1}⟩)` both `Σ_{i<k} s_i` and `Σ_{i<k} f_i` are at
/// most `s`; for a first-direction winner with preface
/// `(⟨f_0..f_k⟩, ⟨s_0..s_k⟩)` both `Σ_{i<k} s_i` and `Σ_{i≤k} f_i` are.
pub fn is_slow(preface: &Preface, s: u32) -> bool {
    let s = s as u64;
    let (first, second) = preface.ordered();
    if preface.first_wins() {
        let earlier_second = prefix(second, second.len().saturating_sub(1));
        earlier_second <= s && sum(first) <= s
    } else {
        let k = second.len();
        sum(second) <= s && prefix(first, k) <= s
    }
}
