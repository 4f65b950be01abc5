//! Process schedules over the same cascade state: synchronous generations,
//! the alternating two-dimensional process with its line-counts, and the
//! one-line-at-a-time sequential scan, plus plane statistics for `d = 3`.

pub mod alternating;
pub mod planes;
pub mod sequential;
pub mod synchronous;
pub mod trace;

pub use alternating::{
    classify_line_count, is_slow, preface_of, run_alternating_2d, AlternatingOptions, Direction,
    LineCount2D, LineCountClass, Preface,
};
pub use planes::{plane_statistics, recount_plane_statistics, PlaneStats};
pub use sequential::{run_sequential, sequential_inspections};
pub use synchronous::{run_synchronous, synchronous_until_certain, SyncOutcome};
pub use trace::{SaturationEvent, Trace};
