use serde::Serialize;

use crate::grid::{GridSpec, LineId};

/// One line saturation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SaturationEvent {
    /// Canonical line code (see [`GridSpec::encode_line`]).
    pub line: usize,
    /// Strictly increasing position of the event in its schedule. For the
    /// sequential process this is the inspection counter; elsewhere it is
    /// the 1-based event number.
    pub step: u64,
    /// Generation (synchronous / FIFO depth), half-step (alternating) or
    /// cycle (sequential).
    pub round: u32,
    /// Points newly infected by this saturation.
    pub gained: u32,
}

/// Ordered saturation log of a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    events: Vec<SaturationEvent>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn push(&mut self, event: SaturationEvent) {
        debug_assert!(self.events.last().is_none_or(|e| e.step < event.step));
        self.events.push(event);
    }

    pub fn events(&self) -> &[SaturationEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Number of generations that infected at least one new point.
    pub fn rounds(&self) -> u32 {
        self.events
            .iter()
            .filter(|e| e.gained > 0)
            .map(|e| e.round)
            .max()
            .unwrap_or(0)
    }

    /// `counts[k][axis]` = lines along `axis` saturated in round `k + 1`.
    pub fn round_counts(&self, spec: &GridSpec) -> Vec<Vec<u64>> {
        let last = self.events.iter().map(|e| e.round).max().unwrap_or(0) as usize;
        let mut counts = vec![vec![0u64; spec.d()]; last];
        for e in &self.events {
            if e.round >= 1 {
                counts[e.round as usize - 1][spec.line_axis(e.line)] += 1;
            }
        }
        counts
    }

    pub fn saturated_lines(&self, spec: &GridSpec) -> Vec<LineId> {
        self.events.iter().map(|e| spec.decode_line_unchecked(e.line)).collect()
    }

    /// Checks the ordering invariants: steps strictly increase and, when
    /// `monotone_rounds`, rounds never decrease.
    pub fn is_well_ordered(&self, monotone_rounds: bool) -> bool {
        self.events.windows(2).all(|w| {
            w[0].step < w[1].step && (!monotone_rounds || w[0].round <= w[1].round)
        })
    }
}
