//! The same initial set under the synchronous, alternating and sequential
//! schedules. All three reach the same closure; they differ in timing.

use lineperc::processes::{
    classify_line_count, preface_of, run_alternating_2d, run_sequential, run_synchronous, sequential_inspections,
    AlternatingOptions,
};
use lineperc::sampling::{sample_initial, TrialSeed};
use lineperc::GridSpec;

fn main() -> lineperc::Result<()> {
    let spec = GridSpec::uniform(40, 2, 2)?;
    // search a few seeds for a percolating set near criticality
    let a = (0..)
        .map(|t| sample_initial(&spec, 0.004, TrialSeed::new(9, t)).unwrap())
        .find(|a| lineperc::percolates(&spec, a).unwrap())
        .unwrap();
    println!("|A| = {}", a.len());

    let (sync, trace) = run_synchronous(&spec, &a)?;
    println!("synchronous: {} rounds, lines per round {:?}", trace.rounds(), trace.round_counts(&spec));

    let (_, lc) = run_alternating_2d(&spec, &a, AlternatingOptions::default())?;
    let class = classify_line_count(&lc, 2)?;
    println!("alternating line-count h={:?} v={:?}: {class}", lc.h, lc.v);
    println!("preface: {:?}", preface_of(&lc, 2)?);

    let (seq, strace) = run_sequential(&spec, &a, None)?;
    println!("sequential: {} inspections", sequential_inspections(&spec, &strace));
    assert_eq!(sync.infected_points(), seq.infected_points());
    Ok(())
}
