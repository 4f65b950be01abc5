//! Plane counts N_k and boosted points for a three-dimensional run.

use lineperc::engine::{closure_packed, StopRule};
use lineperc::estimator::{plane_statistics_run, RunOptions};
use lineperc::processes::plane_statistics;
use lineperc::sampling::{sample_initial, TrialSeed};
use lineperc::GridSpec;

fn main() -> lineperc::Result<()> {
    let n = 48;
    let spec = GridSpec::uniform(n, 3, 2)?;
    let p = 0.5 * (n as f64).powi(-2);
    let a = sample_initial(&spec, p, TrialSeed::new(4, 0))?;
    let state = closure_packed(&spec, &spec.pack(&a)?, StopRule::FixedPoint)?;
    let stats = plane_statistics(&state)?;
    println!("|A| = {}, N_1 = {}, N_2 = {}, boosted = {}", a.len(), stats.n(1), stats.n(2), stats.total_boosted());

    let summary = plane_statistics_run(&spec, 0.2 * (n as f64).powi(-2), 200, 4, RunOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
    Ok(())
}
