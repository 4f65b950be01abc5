//! Closed-form constants and exponents, and numeric checks of the binomial
//! bounds used in the asymptotic arguments.

use num_rational::Ratio;
use num_traits::One;
use serde::Serialize;
use statrs::function::factorial::{factorial, ln_binomial};

use crate::estimator::{regime_of, Regime};
use crate::error::{input_err, Result};

pub type Rational = Ratio<i64>;

fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(input_err!("r must be at least 2, got {r}"));
    }
    Ok(())
}

/// The unique positive `λ` with `exp(-2λ^r / r!) = 1/2`, i.e.
/// `λ = (r! ln 2 / 2)^{1/r}`.
pub fn lambda_r(r: u32) -> Result<f64> {
    check_r(r)?;
    Ok((factorial(r as u64) * std::f64::consts::LN_2 / 2.0).powf(1.0 / r as f64))
}

/// `|exp(-2λ^r / r!) - 1/2|`.
pub fn lambda_residual(r: u32) -> Result<f64> {
    let lambda = lambda_r(r)?;
    Ok(((-2.0 * lambda.powi(r as i32) / factorial(r as u64)).exp() - 0.5).abs())
}

/// Greatest `s` with `s(s+1) <= r`, by enumeration.
pub fn s_of_r(r: u32) -> Result<u32> {
    check_r(r)?;
    let r = r as u64;
    let mut s = 0u64;
    while (s + 1) * (s + 2) <= r {
        s += 1;
    }
    Ok(s as u32)
}

/// `⌊√(r + 1/4) − 1/2⌋`, which must agree with [`s_of_r`].
pub fn s_closed_form(r: u32) -> u32 {
    ((r as f64 + 0.25).sqrt() - 0.5).floor() as u32
}

/// `γ = (r + s(s+1)) / (2(s+1))`, exactly.
pub fn gamma_of_r(r: u32) -> Result<Rational> {
    let s = s_of_r(r)? as i64;
    Ok(Rational::new(r as i64 + s * (s + 1), 2 * (s + 1)))
}

/// `-1 - 1/r`.
pub fn pc2_exponent(r: u32) -> Result<Rational> {
    check_r(r)?;
    Ok(-Rational::one() - Rational::new(1, r as i64))
}

/// `-1 - 1/(r - γ)`.
pub fn pc3_exponent(r: u32) -> Result<Rational> {
    let gamma = gamma_of_r(r)?;
    Ok(-Rational::one() - (Rational::from_integer(r as i64) - gamma).recip())
}

/// `(2s+1, r(2s+1) - s(s+1))`: the powers of `n` and `np` in the
/// two-dimensional regime-`s` estimate of `θ_p`.
pub fn theta2_exponents(r: u32, s: u32) -> (u64, u64) {
    let (r, s) = (r as u64, s as u64);
    (2 * s + 1, r * (2 * s + 1) - s * (s + 1))
}

fn ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoryReport {
    pub r: u32,
    pub lambda: f64,
    pub lambda_residual: f64,
    pub s: u32,
    pub gamma: String,
    pub gamma_value: f64,
    /// `r = s(s+1)`: the upper regime comparison becomes an equality.
    pub gamma_equals_s: bool,
    pub pc2_exponent: String,
    pub pc2_exponent_value: f64,
    pub pc3_exponent: String,
    pub pc3_exponent_value: f64,
    /// `pc3_exponent` lies between `-1-1/(r-s-1)` and `-1-1/(r-s)`.
    pub regime_ordering_holds: bool,
    /// `(power of n, power of np)` for `s' = 0..r-1`.
    pub theta2_regime_exponents: Vec<(u64, u64)>,
}

/// Whether `-1-1/(r-s-1) <= e <= -1-1/(r-s)`, the lower end being `-∞`
/// when `r = s + 1`.
pub fn regime_ordering_holds(r: u32, s: u32, e: &Rational) -> bool {
    let (r, s) = (r as i64, s as i64);
    let upper = -Rational::one() - Rational::new(1, r - s);
    let lower_ok = r - s - 1 == 0 || *e >= -Rational::one() - Rational::new(1, r - s - 1);
    lower_ok && *e <= upper
}

pub fn theory_report(r: u32) -> Result<TheoryReport> {
    let s = s_of_r(r)?;
    let gamma = gamma_of_r(r)?;
    let pc2 = pc2_exponent(r)?;
    let pc3 = pc3_exponent(r)?;
    let lambda = lambda_r(r)?;
    Ok(TheoryReport {
        r,
        lambda: (lambda * 1e12).round() / 1e12,
        lambda_residual: lambda_residual(r)?,
        s,
        gamma: ratio_string(&gamma),
        gamma_value: to_f64(&gamma),
        gamma_equals_s: gamma == Rational::from_integer(s as i64),
        pc2_exponent: ratio_string(&pc2),
        pc2_exponent_value: to_f64(&pc2),
        pc3_exponent: ratio_string(&pc3),
        pc3_exponent_value: to_f64(&pc3),
        regime_ordering_holds: regime_ordering_holds(r, s, &pc3),
        theta2_regime_exponents: (0..r).map(|sp| theta2_exponents(r, sp)).collect(),
    })
}

/// `n^{2s+1}(np)^{r(2s+1)-s(s+1)}` with `s` the regime of `(n, p)`; 1 in
/// the supercritical regime. Constants are not modelled.
pub fn predicted_theta2(n: u64, p: f64, r: u32) -> Result<f64> {
    match regime_of(n, p, r)? {
        Regime::Supercritical => Ok(1.0),
        Regime::Subcritical(s) => {
            let (a, b) = theta2_exponents(r, s);
            let n = n as f64;
            Ok(n.powi(a as i32) * (n * p).powi(b as i32))
        }
    }
}

/// Predicted slope of `log θ` against `log n` when `p = c·n^b` stays in
/// regime `s`: `(2s+1) + (r(2s+1) - s(s+1))(1 + b)`.
pub fn predicted_theta2_slope(r: u32, s: u32, b: f64) -> f64 {
    let (a, e) = theta2_exponents(r, s);
    a as f64 + e as f64 * (1.0 + b)
}

// ---- binomial bounds ------------------------------------------------------

fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// `ln P(X = k)` for `X ~ Bin(N, p)`.
pub fn binomial_ln_pmf(big_n: u64, p: f64, k: u64) -> f64 {
    if k > big_n {
        return f64::NEG_INFINITY;
    }
    let (kf, rest) = (k as f64, (big_n - k) as f64);
    let tail = if rest == 0.0 { 0.0 } else { rest * (-p).ln_1p() };
    ln_binomial(big_n, k) + xlny(kf, p) + tail
}

fn ln_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.filter(|t| *t > f64::NEG_INFINITY).collect();
    let Some(m) = v.iter().copied().reduce(f64::max) else {
        return f64::NEG_INFINITY;
    };
    m + v.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

fn check_binomial_args(big_n: u64, p: f64) -> Result<()> {
    if big_n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(input_err!("need N >= 1 and p in [0, 1], got N={big_n} p={p}"));
    }
    Ok(())
}

/// The point-mass bounds for one `(N, p, k)`:
/// `exp(-2μ)(μ/k)^k <= P(X=k) <= exp(-μ)(2eμ/k)^k` for `k >= 1` and
/// `exp(-2μ) <= P(X=0) <= exp(-μ)`. Compared in log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointMassCheck {
    pub n: u64,
    pub p: f64,
    pub k: u64,
    pub ln_pmf: f64,
    pub ln_lower: f64,
    pub ln_upper: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

pub fn check_point_mass(big_n: u64, p: f64, k: u64) -> Result<PointMassCheck> {
    check_binomial_args(big_n, p)?;
    if k > big_n {
        return Err(input_err!("k = {k} exceeds N = {big_n}"));
    }
    if p > 0.5 {
        return Err(input_err!("the point-mass bounds need p <= 1/2, got {p}"));
    }
    let mu = big_n as f64 * p;
    let ln_pmf = binomial_ln_pmf(big_n, p, k);
    let (ln_lower, ln_upper) = if k == 0 {
        (-2.0 * mu, -mu)
    } else {
        let kf = k as f64;
        // (μ/k)^k and (2eμ/k)^k; μ = 0 makes both bounds 0
        (-2.0 * mu + xlny(kf, mu / kf), -mu + xlny(kf, 2.0 * std::f64::consts::E * mu / kf))
    };
    Ok(PointMassCheck {
        n: big_n,
        p,
        k,
        ln_pmf,
        ln_lower,
        ln_upper,
        lower_holds: ln_lower <= ln_pmf,
        upper_holds: ln_pmf <= ln_upper,
    })
}

/// The concentration inequality `P(|X - μ| > δμ) <= exp(-δ²μ/3)` as stated,
/// alongside two textbook variants for reference: the two-sided bound with
/// a factor 2, and each one-sided tail against `exp(-δ²μ/3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailCheck {
    pub n: u64,
    pub p: f64,
    pub delta: f64,
    pub mu: f64,
    pub tail: f64,
    pub bound: f64,
    pub holds: bool,
    pub holds_with_factor_two: bool,
    pub upper_tail: f64,
    pub lower_tail: f64,
    pub one_sided_hold: bool,
}

pub fn check_tail(big_n: u64, p: f64, delta: f64) -> Result<TailCheck> {
    check_binomial_args(big_n, p)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(input_err!("delta must lie in (0, 1), got {delta}"));
    }
    let mu = big_n as f64 * p;
    let gap = delta * mu;
    // strict inequality; the margin keeps decimal inputs such as
    // N = 1000, p = 0.01, δ = 0.5 from flipping a boundary k by rounding
    let margin = 1e-9 * mu.max(1.0);
    let side = |upper: bool| {
        ln_sum_exp((0..=big_n).filter_map(|k| {
            let dev = k as f64 - mu;
            let far = if upper { dev > gap + margin } else { -dev > gap + margin };
            far.then(|| binomial_ln_pmf(big_n, p, k))
        }))
        .exp()
    };
    let (upper_tail, lower_tail) = (side(true), side(false));
    let tail = upper_tail + lower_tail;
    let bound = (-delta * delta * mu / 3.0).exp();
    Ok(TailCheck {
        n: big_n,
        p,
        delta,
        mu,
        tail,
        bound,
        holds: tail <= bound,
        holds_with_factor_two: tail <= 2.0 * bound,
        upper_tail,
        lower_tail,
        one_sided_hold: upper_tail <= bound && lower_tail <= bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinomialBoundsReport {
    pub point_mass: PointMassCheck,
    pub tails: Vec<TailCheck>,
}

impl BinomialBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.point_mass.lower_holds && self.point_mass.upper_holds && self.tails.iter().all(|t| t.holds)
    }
}

/// Point-mass bounds at `(N, p, k)` and the tail bound for every `δ`.
pub fn check_binomial_bounds(big_n: u64, p: f64, k: u64, deltas: &[f64]) -> Result<BinomialBoundsReport> {
    Ok(BinomialBoundsReport {
        point_mass: check_point_mass(big_n, p, k)?,
        tails: deltas.iter().map(|&d| check_tail(big_n, p, d)).collect::<Result<_>>()?,
    })
}

/// Summary of the bounds over a grid of `(N, p)`, with `k` ranging over
/// `0..=min(N, ⌈3μ⌉ + 10)`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BoundsGridSummary {
    pub point_checks: u64,
    pub point_failures: Vec<PointMassCheck>,
    pub tail_checks: u64,
    pub tail_failures: Vec<TailCheck>,
    pub factor_two_failures: u64,
    pub one_sided_failures: u64,
}

pub fn check_bounds_grid(ns: &[u64], ps: &[f64], deltas: &[f64]) -> Result<BoundsGridSummary> {
    let mut out = BoundsGridSummary::default();
    for &big_n in ns {
        for &p in ps {
            let mu = big_n as f64 * p;
            let k_max = big_n.min((3.0 * mu).ceil() as u64 + 10);
            for k in 0..=k_max {
                let c = check_point_mass(big_n, p, k)?;
                out.point_checks += 1;
                if !(c.lower_holds && c.upper_holds) {
                    out.point_failures.push(c);
                }
            }
            for &delta in deltas {
                let t = check_tail(big_n, p, delta)?;
                out.tail_checks += 1;
                out.factor_two_failures += u64::from(!t.holds_with_factor_two);
                out.one_sided_failures += u64::from(!t.one_sided_hold);
                if !t.holds {
                    out.tail_failures.push(t);
                }
            }
        }
    }
    Ok(out)
}
