//! The sequential process: lines are inspected one at a time in a fixed
//! cyclic order and a line saturates iff its infected count has reached its
//! threshold at the moment it is inspected.
//!
//! Instead of scanning idle lines we jump to the next ready line in cyclic
//! order; the inspection counter is reconstructed from positions, so event
//! steps match a literal scan exactly.

use std::collections::BTreeSet;

use crate::engine::InfectionState;
use crate::error::{input_err, Result};
use crate::grid::{GridSpec, LineId, Point};
use crate::processes::trace::Trace;

/// Runs the sequential process. `order` must be a permutation of all lines;
/// `None` uses canonical order. Event `round` is the 1-based cycle and
/// `step` the 1-based inspection count at which the line saturated.
pub fn run_sequential(
    spec: &GridSpec,
    a: &[Point],
    order: Option<&[LineId]>,
) -> Result<(InfectionState, Trace)> {
    let total = spec.num_lines();
    let order_codes: Vec<usize> = match order {
        None => (0..total).collect(),
        Some(lines) => {
            if lines.len() != total {
                return Err(input_err!("order lists {} lines, the grid has {total}", lines.len()));
            }
            let codes = lines.iter().map(|l| spec.encode_line(l)).collect::<Result<Vec<_>>>()?;
            let mut seen = vec![false; total];
            for &c in &codes {
                if std::mem::replace(&mut seen[c], true) {
                    return Err(input_err!("order repeats line {}", spec.decode_line_unchecked(c)));
                }
            }
            codes
        }
    };
    let mut position = vec![0usize; total];
    for (pos, &code) in order_codes.iter().enumerate() {
        position[code] = pos;
    }

    let mut state = InfectionState::new(spec);
    state.seed(a)?;
    let mut ready: BTreeSet<usize> = BTreeSet::new();
    let mut cycle = 0u64;
    let mut cursor = 0usize;
    loop {
        ready.extend(state.take_pending().into_iter().map(|l| position[l]));
        let pos = match ready.range(cursor..).next() {
            Some(&p) => p,
            None => match ready.first() {
                Some(&p) => {
                    cycle += 1;
                    p
                }
                None => break,
            },
        };
        ready.remove(&pos);
        let step = cycle * total as u64 + pos as u64 + 1;
        state.saturate(order_codes[pos], cycle as u32 + 1, step);
        cursor = pos + 1;
    }
    let trace = state.trace().clone();
    Ok((state, trace))
}

/// Total inspections a literal scan performs: up to the last saturation, then
/// one full idle cycle.
pub fn sequential_inspections(spec: &GridSpec, trace: &Trace) -> u64 {
    trace.events().last().map_or(0, |e| e.step) + spec.num_lines() as u64
}
