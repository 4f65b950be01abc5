//! θ_p at p = α·n^{-3/2} against 1 - exp(-α²).

use lineperc::estimator::estimate_theta;
use lineperc::GridSpec;

fn main() -> lineperc::Result<()> {
    let n = 1024u32;
    let spec = GridSpec::uniform(n, 2, 2)?;
    for alpha in [0.5f64, 1.0, 2.0] {
        let p = alpha * (n as f64).powf(-1.5);
        let est = estimate_theta(&spec, p, 5000, 3)?;
        println!(
            "α={alpha}: θ̂ = {:.4} [{:.4}, {:.4}], limit {:.4}",
            est.point_estimate,
            est.ci_low,
            est.ci_high,
            1.0 - (-alpha * alpha).exp()
        );
    }
    Ok(())
}
