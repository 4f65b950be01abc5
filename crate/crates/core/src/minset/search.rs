//! Exhaustive search for the smallest percolating set on tiny grids.

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{closure_packed, StopRule};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Point};

/// Largest `C(n^d, k)` the search accepts for any size it may visit.
pub const SEARCH_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    /// Least size with a percolating subset, if one was found up to the
    /// size cap.
    pub min_size: Option<u32>,
    /// Lexicographically least percolating subset of that size (in packed
    /// point order).
    pub witness: Vec<Point>,
    pub max_size: u32,
    pub subsets_examined: u64,
    /// Subsets skipped because no line held its threshold.
    pub subsets_pruned: u64,
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Advances `c` (strictly increasing, values below `n`) to the next
/// combination in lexicographic order, touching positions `from..`.
fn next_combination(c: &mut [u64], from: usize, n: u64) -> bool {
    let k = c.len();
    let mut i = k;
    while i > from {
        i -= 1;
        if c[i] < n - (k - i) as u64 {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Block {
    witness: Option<Vec<u64>>,
    examined: u64,
    pruned: u64,
}

/// Searches subsets of size `k` whose smallest element is `first`.
fn search_block(spec: &GridSpec, k: usize, first: u64) -> Block {
    let n = spec.num_points();
    let mut out = Block { witness: None, examined: 0, pruned: 0 };
    if first + k as u64 > n {
        return out;
    }
    let mut c: Vec<u64> = (0..k as u64).map(|i| first + i).collect();
    let mut counts = vec![0u32; spec.num_lines()];
    loop {
        out.examined += 1;
        for &p in &c {
            for a in 0..spec.d() {
                counts[spec.line_through_index(p, a)] += 1;
            }
        }
        let viable = c.iter().any(|&p| {
            (0..spec.d()).any(|a| counts[spec.line_through_index(p, a)] >= spec.threshold(a))
        });
        for &p in &c {
            for a in 0..spec.d() {
                counts[spec.line_through_index(p, a)] = 0;
            }
        }
        if !viable {
            out.pruned += 1;
        } else if closure_packed(spec, &c, StopRule::Percolation).expect("in range").percolates() {
            out.witness = Some(c);
            return out;
        }
        if !next_combination(&mut c, 1, n) {
            return out;
        }
    }
}

/// Smallest percolating set size by exhaustive search over increasing
/// sizes, up to `max_size` (default: the product of the thresholds, which
/// the box `[r_1]×…×[r_d]` always achieves when it fits). Refuses when some
/// visited size has more than [`SEARCH_LIMIT`] subsets.
pub fn min_percolating_size(spec: &GridSpec, max_size: Option<u32>) -> Result<SearchOutcome> {
    let total = spec.num_points();
    let fits = spec.n() >= spec.max_threshold();
    let product: u64 = spec.thresholds().iter().map(|&r| r as u64).product();
    let upper = if fits { product.min(total) } else { total };
    let cap = max_size.map_or(upper, |m| (m as u64).min(upper));
    let worst = (1..=cap).map(|k| (k, binomial(total, k))).max_by_key(|x| x.1);
    if let Some((k, count)) = worst {
        if count > SEARCH_LIMIT {
            return Err(Error::Refused(format!(
                "C({total}, {k}) = {count} subsets exceeds the limit of {SEARCH_LIMIT}; lower --max-size or the grid"
            )));
        }
    }
    let mut outcome =
        SearchOutcome { min_size: None, witness: Vec::new(), max_size: cap as u32, subsets_examined: 0, subsets_pruned: 0 };
    for k in 1..=cap as usize {
        let blocks: Vec<Block> = (0..total).into_par_iter().map(|first| search_block(spec, k, first)).collect();
        outcome.subsets_examined += blocks.iter().map(|b| b.examined).sum::<u64>();
        outcome.subsets_pruned += blocks.iter().map(|b| b.pruned).sum::<u64>();
        if let Some(w) = blocks.into_iter().find_map(|b| b.witness) {
            outcome.min_size = Some(k as u32);
            outcome.witness = w.into_iter().map(|i| spec.point_at(i)).collect();
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minset::eval_rank;

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 0, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(binomial(27, 8), 2_220_075);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn small_minimum_sizes() {
        let cases = [(3, 2, 2, 4), (2, 3, 2, 8), (3, 1, 2, 2), (4, 2, 1, 1)];
        for (n, d, r, want) in cases {
            let spec = GridSpec::uniform(n, d, r).unwrap();
            let out = min_percolating_size(&spec, None).unwrap();
            assert_eq!(out.min_size, Some(want), "n={n} d={d} r={r}");
            assert_eq!(out.witness.len(), want as usize);
            assert!(crate::engine::percolates(&spec, &out.witness).unwrap());
            if r > 1 {
                assert_eq!(eval_rank(&out.witness, r, d).unwrap(), (r as usize).pow(d as u32));
            }
        }
    }

    #[test]
    fn anisotropic_thresholds() {
        let spec = GridSpec::new(4, vec![2, 3]).unwrap();
        let out = min_percolating_size(&spec, None).unwrap();
        assert_eq!(out.min_size, Some(6));
    }

    #[test]
    fn cap_and_refusal() {
        let spec = GridSpec::uniform(3, 2, 2).unwrap();
        let out = min_percolating_size(&spec, Some(3)).unwrap();
        assert_eq!(out.min_size, None);
        let big = GridSpec::uniform(6, 3, 3).unwrap();
        assert!(matches!(min_percolating_size(&big, None), Err(Error::Refused(_))));
    }
}
