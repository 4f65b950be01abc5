//! Point-mass and tail bounds for the binomial distribution, including the
//! small-mean cases where the stated tail bound breaks.

use lineperc::theory::{check_point_mass, check_tail};

fn main() -> lineperc::Result<()> {
    let pm = check_point_mass(1000, 0.01, 10)?;
    println!("{pm:?}");
    for (n, p) in [(10u64, 0.001f64), (100, 0.1), (10_000, 0.5)] {
        for delta in [0.1, 0.5] {
            let t = check_tail(n, p, delta)?;
            println!(
                "N={n} p={p} δ={delta}: μ={} tail={:.3e} bound={:.3e} holds={} (factor two: {})",
                t.mu, t.tail, t.bound, t.holds, t.holds_with_factor_two
            );
        }
    }
    Ok(())
}
