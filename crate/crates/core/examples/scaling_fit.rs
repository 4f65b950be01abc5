//! Log-log fit of the median critical probability in three dimensions.

use lineperc::estimator::{estimate_pc, fit_exponent};
use lineperc::theory::pc3_exponent;
use lineperc::GridSpec;

fn main() -> lineperc::Result<()> {
    let r = 2;
    let mut points = Vec::new();
    for n in [16u32, 24, 32, 48, 64] {
        let est = estimate_pc(&GridSpec::uniform(n, 3, r)?, 400, 2)?;
        println!("n={n:3}  median p* = {:.4e}", est.median);
        points.push((n as f64, est.median));
    }
    let fit = fit_exponent(&points)?;
    println!("slope {:.3} ± {:.3}, predicted {}", fit.slope, fit.stderr, pc3_exponent(r)?);
    Ok(())
}
