//! Polynomial certificates of non-percolation and minimal percolating sets.
//!
//! A polynomial of degree at most `r - 1` in each variable that vanishes on
//! `A` also vanishes on every line `A` saturates (restricted to a line it is
//! a univariate polynomial of degree `< r` with `r` roots), hence on `[A]`.
//! It cannot vanish on all of `[n]^d` when `n >= r`, so `A` does not
//! percolate. Such a polynomial exists whenever `|A| < r^d`. All arithmetic
//! here is exact.

pub mod linalg;
pub mod search;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::index;
use serde::Serialize;

use crate::engine::closure_packed;
use crate::engine::StopRule;
use crate::error::{input_err, Error, Result};
use crate::grid::{cube, GridSpec, Point};
use crate::sampling::TrialSeed;

pub use search::{min_percolating_size, SearchOutcome, SEARCH_LIMIT};

/// Exponent tuples `{0..r-1}^d` in colexicographic order (first coordinate
/// varies fastest).
pub fn exponent_columns(r: u32, d: usize) -> Vec<Vec<u32>> {
    let count = (r as usize).pow(d as u32);
    (0..count)
        .map(|mut c| {
            (0..d)
                .map(|_| {
                    let e = (c % r as usize) as u32;
                    c /= r as usize;
                    e
                })
                .collect()
        })
        .collect()
}

fn monomial(point: &[u32], alpha: &[u32]) -> BigInt {
    point.iter().zip(alpha).fold(BigInt::one(), |acc, (&v, &a)| acc * BigInt::from(v).pow(a))
}

fn dedup_points(a: &[Point], d: usize) -> Result<Vec<Point>> {
    if let Some(p) = a.iter().find(|p| p.0.len() != d) {
        return Err(input_err!("point {p} does not have {d} coordinates"));
    }
    if let Some(p) = a.iter().find(|p| p.0.contains(&0)) {
        return Err(input_err!("point {p} has a zero coordinate; coordinates are 1-based"));
    }
    let mut pts = a.to_vec();
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Rows `v ∈ A`, columns `α` colexicographic, entry `∏ v_i^{α_i}`.
pub fn eval_matrix(a: &[Point], r: u32, d: usize) -> Result<Vec<Vec<BigInt>>> {
    if r == 0 || d == 0 {
        return Err(input_err!("need r >= 1 and d >= 1"));
    }
    let cols = exponent_columns(r, d);
    Ok(dedup_points(a, d)?
        .iter()
        .map(|p| cols.iter().map(|alpha| monomial(&p.0, alpha)).collect())
        .collect())
}

/// Rank over the rationals of the evaluation map on `A` (duplicates
/// ignored).
pub fn eval_rank(a: &[Point], r: u32, d: usize) -> Result<usize> {
    let m = eval_matrix(a, r, d)?;
    Ok(linalg::echelon(m, (r as usize).pow(d as u32))?.rank())
}

/// A nonzero polynomial with per-variable degree below `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingPolynomial {
    pub r: u32,
    pub d: usize,
    /// Indexed like [`exponent_columns`].
    pub coefficients: Vec<BigRational>,
}

impl VanishingPolynomial {
    pub fn evaluate(&self, point: &[u32]) -> BigRational {
        exponent_columns(self.r, self.d)
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(alpha, c)| c * BigRational::from_integer(monomial(point, alpha)))
            .sum()
    }

    /// Nonzero terms as `(exponents, coefficient)`.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigRational)> {
        exponent_columns(self.r, self.d)
            .into_iter()
            .zip(self.coefficients.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

impl fmt::Display for VanishingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (alpha, c)) in self.terms().into_iter().enumerate() {
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.abs();
            let vars: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{e}", v + 1) })
                .collect();
            f.write_str(sign)?;
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRecord {
    exponents: Vec<u32>,
    coefficient: String,
}

impl Serialize for VanishingPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRecord> = self
            .terms()
            .into_iter()
            .map(|(exponents, c)| TermRecord { exponents, coefficient: c.to_string() })
            .collect();
        terms.serialize(s)
    }
}

/// A kernel vector of the evaluation map on `A`, or `None` when the map has
/// full rank `r^d`. The result is checked to vanish on `A`.
pub fn vanishing_polynomial(a: &[Point], r: u32, d: usize) -> Result<Option<VanishingPolynomial>> {
    let pts = dedup_points(a, d)?;
    let m = eval_matrix(&pts, r, d)?;
    let e = linalg::echelon(m, (r as usize).pow(d as u32))?;
    let Some(coefficients) = linalg::kernel_vector(&e) else {
        return Ok(None);
    };
    let poly = VanishingPolynomial { r, d, coefficients };
    if let Some(p) = pts.iter().find(|p| !poly.evaluate(&p.0).is_zero()) {
        return Err(Error::Internal(format!("kernel polynomial does not vanish at {p}")));
    }
    Ok(Some(poly))
}

/// Witness that `A` does not percolate.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub polynomial: VanishingPolynomial,
    pub initial_size: usize,
    pub closure_size: u64,
    pub percolates: bool,
}

/// Builds the vanishing polynomial of `A`, checks it vanishes on the whole
/// closure, and cross-checks non-percolation with the engine.
pub fn certify_non_percolation(spec: &GridSpec, a: &[Point]) -> Result<Certificate> {
    let r = spec
        .uniform_threshold()
        .ok_or_else(|| input_err!("certificates need a uniform threshold"))?;
    if spec.n() < r {
        return Err(input_err!("certificates need n >= r, got n={} r={r}", spec.n()));
    }
    let d = spec.d();
    let pts = dedup_points(a, d)?;
    let cells = (r as u64).pow(d as u32);
    if pts.len() as u64 >= cells {
        return Err(input_err!("|A| = {} is not below r^d = {cells}; no certificate in general", pts.len()));
    }
    let polynomial = vanishing_polynomial(&pts, r, d)?
        .ok_or_else(|| Error::Internal("rank r^d with fewer than r^d points".into()))?;
    let state = closure_packed(spec, &spec.pack(&pts)?, StopRule::FixedPoint)?;
    for idx in state.infected_indices() {
        let p = spec.point_at(idx);
        if !polynomial.evaluate(&p.0).is_zero() {
            return Err(Error::Internal(format!("vanishing polynomial is nonzero at closure point {p}")));
        }
    }
    if state.percolates() {
        return Err(Error::Internal("engine reports percolation for a certified set".into()));
    }
    Ok(Certificate { polynomial, initial_size: pts.len(), closure_size: state.infected_count(), percolates: false })
}

/// Outcome of checking the cube construction and random certificates.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub cube_percolates: bool,
    pub cube_rank: usize,
    pub full_rank: usize,
    pub random_sets: u64,
    pub certified: u64,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cube_percolates && self.cube_rank == self.full_rank && self.certified == self.random_sets
    }
}

/// Checks that `[r]^d` percolates with full evaluation rank, and certifies
/// `sets` uniformly random sets of size `r^d - 1`.
pub fn verify_construction(spec: &GridSpec, sets: u64, seed: u64) -> Result<VerifyReport> {
    let r = spec
        .uniform_threshold()
        .ok_or_else(|| input_err!("verification needs a uniform threshold"))?;
    if spec.n() < r {
        return Err(input_err!("verification needs n >= r, got n={} r={r}", spec.n()));
    }
    let d = spec.d();
    let full_rank = (r as usize).pow(d as u32);
    let box_set = cube(r, d);
    let cube_percolates = crate::engine::percolates(spec, &box_set)?;
    let cube_rank = eval_rank(&box_set, r, d)?;
    let mut certified = 0;
    let mut failures = Vec::new();
    for t in 0..sets {
        let mut rng = TrialSeed::new(seed, t).rng();
        let picks = index::sample(&mut rng, spec.num_points() as usize, full_rank - 1);
        let a: Vec<Point> = picks.into_iter().map(|i| spec.point_at(i as u64)).collect();
        match certify_non_percolation(spec, &a) {
            Ok(_) => certified += 1,
            Err(e) => failures.push(format!("set {t}: {e}")),
        }
    }
    Ok(VerifyReport { cube_percolates, cube_rank, full_rank, random_sets: sets, certified, failures })
}
