//! Where densities n^b fall in the two-dimensional regime map and the
//! predicted decay of θ in each regime.

use lineperc::estimator::{regime_of, Regime};
use lineperc::theory::{predicted_theta2_slope, theory_report};

fn main() -> lineperc::Result<()> {
    for r in 2..=6 {
        let t = theory_report(r)?;
        println!("r={r}: λ={:.5} s={} γ={} p_c(3D) exponent {}", t.lambda, t.s, t.gamma, t.pc3_exponent);
    }
    let (n, r) = (1024u64, 3);
    for b in [-1.2f64, -1.4, -1.6, -1.8, -2.2] {
        let p = (n as f64).powf(b);
        match regime_of(n, p, r)? {
            Regime::Supercritical => println!("n^{b}: supercritical"),
            Regime::Subcritical(s) => {
                println!("n^{b}: regime s={s}, θ slope in n {:.2}", predicted_theta2_slope(r, s, b))
            }
        }
    }
    Ok(())
}
