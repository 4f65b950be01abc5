use crate::engine::InfectionState;
use crate::error::{input_err, Result};
use crate::grid::{GridSpec, Point};
use crate::processes::trace::Trace;

/// Saturates whole generations: every line at or above threshold with respect
/// to `A^(m)` saturates in round `m + 1`. Lines of a round are processed in
/// canonical order, which also fixes boosted-point attribution on ties.
/// Returns the round after which percolation became certain, if asked to
/// stop there.
fn generations(state: &mut InfectionState, stop_when_certain: bool) -> Option<u32> {
    let mut round = 0u32;
    loop {
        let frontier = state.take_pending();
        if frontier.is_empty() {
            return None;
        }
        round += 1;
        for line in frontier {
            let step = state.trace().events().last().map_or(1, |e| e.step + 1);
            state.saturate(line, round, step);
        }
        if stop_when_certain && state.percolation_certain() {
            return Some(round);
        }
    }
}

/// Runs the synchronous process `A^(0) ⊂ A^(1) ⊂ ...` to termination.
pub fn run_synchronous(spec: &GridSpec, a: &[Point]) -> Result<(InfectionState, Trace)> {
    let mut state = InfectionState::new(spec);
    state.seed(a)?;
    generations(&mut state, false);
    let trace = state.trace().clone();
    Ok((state, trace))
}

/// Outcome of a synchronous run cut short once percolation is certain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyncOutcome {
    pub percolates: bool,
    /// Number of generations the full process needs to terminate (counting
    /// only generations that infect new points).
    pub rounds: u32,
}

/// Synchronous run for `d <= 2` that stops once percolation is certain but
/// still reports the exact number of rounds: if after round `m` some axis
/// holds enough saturated lines, every perpendicular line saturates in round
/// `m + 1` and the grid is full.
pub fn synchronous_until_certain(spec: &GridSpec, a: &[Point]) -> Result<SyncOutcome> {
    if spec.d() > 2 {
        return Err(input_err!("early-stopped round counting needs d <= 2, got d = {}", spec.d()));
    }
    let mut state = InfectionState::new(spec);
    state.seed(a)?;
    Ok(until_certain(&mut state))
}

pub(crate) fn synchronous_until_certain_packed(spec: &GridSpec, a: &[u64]) -> SyncOutcome {
    debug_assert!(spec.d() <= 2);
    let mut state = InfectionState::new(spec);
    for &idx in a {
        state.insert_index(idx);
    }
    until_certain(&mut state)
}

fn until_certain(state: &mut InfectionState) -> SyncOutcome {
    match generations(state, true) {
        Some(m) => {
            let full = state.infected_count() == state.spec().num_points();
            let rounds = if full { state.trace().rounds() } else { m + 1 };
            SyncOutcome { percolates: true, rounds }
        }
        None => SyncOutcome { percolates: state.percolates(), rounds: state.trace().rounds() },
    }
}
