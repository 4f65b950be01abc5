//! Median critical probability in two dimensions compared with the
//! limiting constant.

use lineperc::estimator::estimate_pc;
use lineperc::theory::lambda_r;
use lineperc::GridSpec;

fn main() -> lineperc::Result<()> {
    let r = 2;
    let lambda = lambda_r(r)?;
    for n in [128u32, 512, 2048] {
        let est = estimate_pc(&GridSpec::uniform(n, 2, r)?, 2000, 1)?;
        let scale = (n as f64).powf(1.0 + 1.0 / r as f64);
        println!(
            "n={n:5}  p_c ≈ {:.3e} [{:.3e}, {:.3e}]  p_c·n^1.5 = {:.4} (λ = {lambda:.4})",
            est.median,
            est.ci_low,
            est.ci_high,
            est.median * scale
        );
    }
    Ok(())
}
