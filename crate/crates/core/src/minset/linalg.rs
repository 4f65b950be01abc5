//! Exact rank and kernel of integer matrices by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row echelon form produced by fraction-free elimination: every division
/// by the previous pivot is exact, so entries stay integral.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// The first `pivots.len()` rows are the nonzero echelon rows.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Eliminates column by column, pivoting on the first nonzero entry at or
/// below the current row.
pub fn echelon(mut m: Vec<Vec<BigInt>>, cols: usize) -> Result<Echelon> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let (top, rest) = m.split_at_mut(row + 1);
        let pivot_row = &top[row];
        let piv = pivot_row[col].clone();
        for r in rest.iter_mut() {
            let lead = std::mem::take(&mut r[col]);
            for j in col + 1..cols {
                let num = &piv * &r[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                if !rem.is_zero() {
                    return Err(Error::Internal("fraction-free step left a remainder".into()));
                }
                r[j] = q;
            }
        }
        prev = piv;
        pivots.push(col);
        row += 1;
    }
    Ok(Echelon { rows: m, pivots, cols })
}

/// A nonzero kernel vector, built from the first free column by back
/// substitution and scaled to coprime integers with a positive free entry.
/// `None` when the columns are independent.
pub fn kernel_vector(e: &Echelon) -> Option<Vec<BigRational>> {
    let free = (0..e.cols).find(|c| !e.pivots.contains(c))?;
    let mut x = vec![BigRational::zero(); e.cols];
    x[free] = BigRational::one();
    for (k, &pc) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[k];
        let s: BigRational = (pc + 1..e.cols)
            .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
            .map(|j| BigRational::from_integer(row[j].clone()) * &x[j])
            .sum();
        x[pc] = -s / BigRational::from_integer(row[pc].clone());
    }
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let sign = if ints[free].is_negative() { -BigInt::one() } else { BigInt::one() };
    Some(ints.into_iter().map(|v| BigRational::from_integer(v / &g * &sign)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn apply(m: &[Vec<BigInt>], x: &[BigRational]) -> Vec<BigRational> {
        m.iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum())
            .collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(echelon(mat(&[&[1, 2], &[2, 4]]), 2).unwrap().rank(), 1);
        assert_eq!(echelon(mat(&[&[0, 1], &[1, 0]]), 2).unwrap().rank(), 2);
        assert_eq!(echelon(mat(&[]), 3).unwrap().rank(), 0);
        assert_eq!(echelon(mat(&[&[0, 0, 0]]), 3).unwrap().rank(), 0);
        // skipped pivot column in the middle
        let m = mat(&[&[1, 1, 2, 3], &[2, 2, 4, 7], &[3, 3, 5, 1]]);
        let e = echelon(m.clone(), 4).unwrap();
        assert_eq!(e.rank(), 3);
        assert_eq!(e.pivots, vec![0, 2, 3]);
        let x = kernel_vector(&e).unwrap();
        assert!(apply(&m, &x).iter().all(|v| v.is_zero()));
        assert_eq!(x[1], BigRational::one());
    }

    #[test]
    fn random_rank_against_rational_reduction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let rows = rng.random_range(1..=6);
            let cols = rng.random_range(1..=6);
            let basis = rng.random_range(1..=3);
            // low-rank products exercise the skipped-column path
            let b: Vec<Vec<i64>> =
                (0..basis).map(|_| (0..cols).map(|_| rng.random_range(-3..=3)).collect()).collect();
            let m: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| {
                    let w: Vec<i64> = (0..basis).map(|_| rng.random_range(-2..=2)).collect();
                    (0..cols).map(|j| BigInt::from((0..basis).map(|k| w[k] * b[k][j]).sum::<i64>())).collect()
                })
                .collect();
            let e = echelon(m.clone(), cols).unwrap();
            assert_eq!(e.rank(), rational_rank(&m, cols));
            match kernel_vector(&e) {
                Some(x) => {
                    assert!(x.iter().any(|v| !v.is_zero()));
                    assert!(apply(&m, &x).iter().all(|v| v.is_zero()));
                }
                None => assert_eq!(e.rank(), cols),
            }
        }
    }

    fn rational_rank(m: &[Vec<BigInt>], cols: usize) -> usize {
        let mut a: Vec<Vec<BigRational>> =
            m.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[rank][c];
                    for j in 0..cols {
                        let t = &f * &a[rank][j];
                        a[i][j] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
