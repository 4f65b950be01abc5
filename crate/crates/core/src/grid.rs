//! Coordinates, axis-parallel lines and their canonical identifiers on `[n]^d`.
//!
//! Points are 1-based at the public boundary and packed into a 0-based
//! mixed-radix `u64` internally (axis 0 is the most significant digit).
//! Lines are numbered axis-major, then by the mixed-radix value of their
//! fixed coordinates, so that `code = axis * n^(d-1) + value(fixed - 1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{input_err, Error, Result};

/// Largest grid we are willing to index; keeps `n^d` comfortably inside `u64`
/// and line codes inside `usize`.
const MAX_SITES: u128 = 1 << 48;

/// The universe of a run: side length, dimension and one infection threshold
/// per axis (threshold `thresholds[i]` applies to lines running along axis `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    n: u32,
    thresholds: Vec<u32>,
    // pows[k] = n^k for k in 0..=d
    pows: Vec<u64>,
}

impl GridSpec {
    pub fn new(n: u32, thresholds: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(input_err!("side length n must be >= 1"));
        }
        if thresholds.is_empty() {
            return Err(input_err!("dimension d must be >= 1"));
        }
        if let Some(i) = thresholds.iter().position(|&r| r == 0) {
            return Err(input_err!("threshold for axis {i} must be >= 1"));
        }
        let d = thresholds.len();
        if (n as u128).pow(d as u32) > MAX_SITES {
            return Err(input_err!("grid {n}^{d} is too large"));
        }
        let mut pows = Vec::with_capacity(d + 1);
        let mut acc = 1u64;
        for _ in 0..=d {
            pows.push(acc);
            acc = acc.saturating_mul(n as u64);
        }
        Ok(Self { n, thresholds, pows })
    }

    /// Uniform model: every axis uses threshold `r`.
    pub fn uniform(n: u32, d: usize, r: u32) -> Result<Self> {
        Self::new(n, vec![r; d])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.thresholds.len()
    }

    pub fn thresholds(&self) -> &[u32] {
        &self.thresholds
    }

    pub fn threshold(&self, axis: usize) -> u32 {
        self.thresholds[axis]
    }

    /// `Some(r)` when all axes share the same threshold.
    pub fn uniform_threshold(&self) -> Option<u32> {
        let r = self.thresholds[0];
        self.thresholds.iter().all(|&t| t == r).then_some(r)
    }

    pub fn max_threshold(&self) -> u32 {
        *self.thresholds.iter().max().expect("d >= 1")
    }

    pub fn min_threshold(&self) -> u32 {
        *self.thresholds.iter().min().expect("d >= 1")
    }

    /// `n^d`.
    pub fn num_points(&self) -> u64 {
        self.pows[self.d()]
    }

    /// Points per hyperplane, `n^(d-1)`; also the number of lines per axis.
    pub fn lines_per_axis(&self) -> usize {
        self.pows[self.d() - 1] as usize
    }

    /// `d * n^(d-1)`.
    pub fn num_lines(&self) -> usize {
        self.d() * self.lines_per_axis()
    }

    // ---- packed point indices -------------------------------------------

    pub fn point_index(&self, p: &Point) -> Result<u64> {
        if p.0.len() != self.d() {
            return Err(input_err!(
                "point {p} has {} coordinates, expected {}",
                p.0.len(),
                self.d()
            ));
        }
        let mut idx = 0u64;
        for &c in &p.0 {
            if c < 1 || c > self.n {
                return Err(input_err!("coordinate {c} of point {p} outside [1, {}]", self.n));
            }
            idx = idx * self.n as u64 + (c - 1) as u64;
        }
        Ok(idx)
    }

    pub fn point_at(&self, idx: u64) -> Point {
        debug_assert!(idx < self.num_points());
        let d = self.d();
        let n = self.n as u64;
        let mut coords = vec![0u32; d];
        let mut rest = idx;
        for slot in coords.iter_mut().rev() {
            *slot = (rest % n) as u32 + 1;
            rest /= n;
        }
        Point(coords)
    }

    /// 0-based coordinate of a packed point along `axis`.
    #[inline]
    pub(crate) fn coord0(&self, idx: u64, axis: usize) -> u32 {
        ((idx / self.pows[self.d() - 1 - axis]) % self.n as u64) as u32
    }

    /// Code of the line along `axis` through the packed point `idx`.
    #[inline]
    pub(crate) fn line_through_index(&self, idx: u64, axis: usize) -> usize {
        let d = self.d();
        let low_span = self.pows[d - 1 - axis];
        let high = idx / (low_span * self.n as u64);
        let low = idx % low_span;
        axis * self.lines_per_axis() + (high * low_span + low) as usize
    }

    /// Axis of a line code.
    #[inline]
    pub(crate) fn line_axis(&self, code: usize) -> usize {
        code / self.lines_per_axis()
    }

    /// Packed index of the point at 0-based position `t` along line `code`.
    #[inline]
    pub(crate) fn line_point(&self, code: usize, t: u32) -> u64 {
        let (base, stride) = self.line_base_stride(code);
        base + t as u64 * stride
    }

    /// The packed index of the first point of a line and the stride between
    /// consecutive points on it.
    #[inline]
    pub(crate) fn line_base_stride(&self, code: usize) -> (u64, u64) {
        let d = self.d();
        let axis = code / self.lines_per_axis();
        let fixed = (code % self.lines_per_axis()) as u64;
        let stride = self.pows[d - 1 - axis];
        let high = fixed / stride;
        let low = fixed % stride;
        (high * stride * self.n as u64 + low, stride)
    }

    /// 0-based fixed coordinate of line `code` along `axis` (which must differ
    /// from the line's own axis).
    #[inline]
    pub(crate) fn line_coord0(&self, code: usize, axis: usize) -> u32 {
        let (base, _) = self.line_base_stride(code);
        self.coord0(base, axis)
    }

    pub(crate) fn check_line_code(&self, code: usize) -> Result<()> {
        if code >= self.num_lines() {
            return Err(input_err!("line id {code} outside [0, {})", self.num_lines()));
        }
        Ok(())
    }

    // ---- public line API ------------------------------------------------

    /// The `d` lines through `p`, one per axis, in axis order.
    pub fn lines_through(&self, p: &Point) -> Result<Vec<LineId>> {
        let idx = self.point_index(p)?;
        Ok((0..self.d())
            .map(|axis| self.decode_line_unchecked(self.line_through_index(idx, axis)))
            .collect())
    }

    /// The `n` points of `line`, ordered by the varying coordinate.
    pub fn points_on(&self, line: &LineId) -> Result<Vec<Point>> {
        let code = self.encode_line(line)?;
        Ok((0..self.n).map(|t| self.point_at(self.line_point(code, t))).collect())
    }

    pub fn encode_line(&self, line: &LineId) -> Result<usize> {
        let d = self.d();
        if line.axis >= d {
            return Err(input_err!("line axis {} outside [0, {d})", line.axis));
        }
        if line.fixed.len() != d - 1 {
            return Err(input_err!(
                "line {line} has {} fixed coordinates, expected {}",
                line.fixed.len(),
                d - 1
            ));
        }
        let mut value = 0usize;
        for &c in &line.fixed {
            if c < 1 || c > self.n {
                return Err(input_err!("fixed coordinate {c} of line {line} outside [1, {}]", self.n));
            }
            value = value * self.n as usize + (c - 1) as usize;
        }
        Ok(line.axis * self.lines_per_axis() + value)
    }

    pub fn decode_line(&self, code: usize) -> Result<LineId> {
        self.check_line_code(code)?;
        Ok(self.decode_line_unchecked(code))
    }

    pub(crate) fn decode_line_unchecked(&self, code: usize) -> LineId {
        let d = self.d();
        let per_axis = self.lines_per_axis();
        let axis = code / per_axis;
        let mut rest = code % per_axis;
        let mut fixed = vec![0u32; d - 1];
        for slot in fixed.iter_mut().rev() {
            *slot = (rest % self.n as usize) as u32 + 1;
            rest /= self.n as usize;
        }
        LineId { axis, fixed }
    }

    /// Every line in canonical order.
    pub fn all_lines(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.num_lines()).map(|c| self.decode_line_unchecked(c))
    }

    /// Every point in canonical (lexicographic) order.
    pub fn all_points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.num_points()).map(|i| self.point_at(i))
    }

    /// Packs a list of points, rejecting any coordinate outside the grid.
    pub fn pack(&self, points: &[Point]) -> Result<Vec<u64>> {
        points.iter().map(|p| self.point_index(p)).collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d={} thresholds=", self.n, self.d())?;
        write_csv(f, &self.thresholds)
    }
}

/// JSON-facing summary of a grid spec.
#[derive(Debug, Clone, Serialize)]
pub struct SpecRecord {
    pub n: u32,
    pub d: usize,
    pub thresholds: Vec<u32>,
}

impl From<&GridSpec> for SpecRecord {
    fn from(s: &GridSpec) -> Self {
        Self { n: s.n, d: s.d(), thresholds: s.thresholds.clone() }
    }
}

/// A lattice point of `[n]^d` with 1-based coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Point {
    fn from(v: Vec<u32>) -> Self {
        Point(v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.0)
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_csv(s).map(Point).map_err(|e| input_err!("bad point {s:?}: {e}"))
    }
}

/// An axis-parallel line: the axis it runs along plus the `d - 1` coordinates
/// held fixed, in increasing axis order skipping `axis`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineId {
    pub axis: usize,
    pub fixed: Vec<u32>,
}

impl LineId {
    pub fn new(axis: usize, fixed: Vec<u32>) -> Self {
        Self { axis, fixed }
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.axis)?;
        write_csv(f, &self.fixed)
    }
}

impl FromStr for LineId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (axis, rest) = s
            .split_once(':')
            .ok_or_else(|| input_err!("bad line {s:?}: expected \"axis:c1,...\""))?;
        let axis = axis
            .trim()
            .parse()
            .map_err(|_| input_err!("bad line {s:?}: axis is not an integer"))?;
        let fixed = if rest.trim().is_empty() {
            Vec::new()
        } else {
            parse_csv(rest).map_err(|e| input_err!("bad line {s:?}: {e}"))?
        };
        Ok(LineId { axis, fixed })
    }
}

fn write_csv(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

fn parse_csv(s: &str) -> std::result::Result<Vec<u32>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| format!("{t:?} is not a non-negative integer")))
        .collect()
}

/// Parses the point text format: one point per non-empty line, `#` comments
/// allowed.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

/// `[m]^d` as a point list, the standard percolating set when `m = r`.
pub fn cube(m: u32, d: usize) -> Vec<Point> {
    box_points(&vec![m; d])
}

/// The box `[m_1] x ... x [m_d]` in canonical order.
pub fn box_points(sides: &[u32]) -> Vec<Point> {
    let total: usize = sides.iter().map(|&m| m as usize).product();
    let mut out = Vec::with_capacity(total);
    if total == 0 {
        return out;
    }
    let mut cur = vec![1u32; sides.len()];
    loop {
        out.push(Point(cur.clone()));
        let mut axis = sides.len();
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if cur[axis] < sides[axis] {
                cur[axis] += 1;
                break;
            }
            cur[axis] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pt(c: &[u32]) -> Point {
        Point(c.to_vec())
    }

    #[test]
    fn lines_through_2d() {
        let spec = GridSpec::uniform(8, 2, 3).unwrap();
        let lines = spec.lines_through(&pt(&[3, 5])).unwrap();
        assert_eq!(lines, vec![LineId::new(0, vec![5]), LineId::new(1, vec![3])]);
    }

    #[test]
    fn lines_through_1d_is_whole_grid() {
        let spec = GridSpec::uniform(6, 1, 2).unwrap();
        for x in 1..=6 {
            let lines = spec.lines_through(&pt(&[x])).unwrap();
            assert_eq!(lines, vec![LineId::new(0, vec![])]);
            assert_eq!(spec.points_on(&lines[0]).unwrap().len(), 6);
        }
    }

    #[test]
    fn lines_through_3d_meet_only_at_point() {
        let spec = GridSpec::uniform(4, 3, 2).unwrap();
        let p = pt(&[1, 2, 3]);
        let lines = spec.lines_through(&p).unwrap();
        assert_eq!(lines.len(), 3);
        let sets: Vec<BTreeSet<Point>> = lines
            .iter()
            .map(|l| spec.points_on(l).unwrap().into_iter().collect())
            .collect();
        for s in &sets {
            assert!(s.contains(&p));
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let both: Vec<_> = sets[i].intersection(&sets[j]).cloned().collect();
                assert_eq!(both, vec![p.clone()]);
            }
        }
    }

    #[test]
    fn points_on_examples() {
        let spec = GridSpec::uniform(3, 2, 2).unwrap();
        let pts = spec.points_on(&LineId::new(0, vec![2])).unwrap();
        assert_eq!(pts, vec![pt(&[1, 2]), pt(&[2, 2]), pt(&[3, 2])]);

        let spec = GridSpec::uniform(2, 3, 2).unwrap();
        let pts = spec.points_on(&LineId::new(2, vec![1, 1])).unwrap();
        assert_eq!(pts, vec![pt(&[1, 1, 1]), pt(&[1, 1, 2])]);
    }

    #[test]
    fn encode_examples() {
        let spec = GridSpec::uniform(8, 2, 3).unwrap();
        assert_eq!(spec.encode_line(&LineId::new(0, vec![1])).unwrap(), 0);
        assert_eq!(spec.encode_line(&LineId::new(1, vec![1])).unwrap(), 8);
        assert!(spec.decode_line(16).is_err());
        assert!(spec.encode_line(&LineId::new(2, vec![1])).is_err());
        assert!(spec.encode_line(&LineId::new(0, vec![9])).is_err());
    }

    #[test]
    fn exhaustive_incidence_and_codec() {
        for d in 1..=3usize {
            for n in 1..=5u32 {
                let spec = GridSpec::uniform(n, d, 1).unwrap();
                assert_eq!(spec.num_lines(), d * (n as usize).pow(d as u32 - 1));
                let mut per_line = vec![0usize; spec.num_lines()];
                for p in spec.all_points() {
                    let lines = spec.lines_through(&p).unwrap();
                    assert_eq!(lines.len(), d);
                    for l in &lines {
                        per_line[spec.encode_line(l).unwrap()] += 1;
                        assert!(spec.points_on(l).unwrap().contains(&p));
                    }
                }
                assert!(per_line.iter().all(|&c| c == n as usize));
                for code in 0..spec.num_lines() {
                    let l = spec.decode_line(code).unwrap();
                    assert_eq!(spec.encode_line(&l).unwrap(), code);
                    for q in spec.points_on(&l).unwrap() {
                        assert!(spec.lines_through(&q).unwrap().contains(&l));
                    }
                }
            }
        }
    }

    #[test]
    fn packed_helpers_agree_with_public_api() {
        let spec = GridSpec::uniform(5, 3, 2).unwrap();
        for idx in 0..spec.num_points() {
            let p = spec.point_at(idx);
            assert_eq!(spec.point_index(&p).unwrap(), idx);
            for axis in 0..3 {
                let code = spec.line_through_index(idx, axis);
                let l = spec.decode_line(code).unwrap();
                assert_eq!(l.axis, axis);
                assert_eq!(spec.coord0(idx, axis) + 1, p.0[axis]);
                let on: Vec<u64> = (0..5).map(|t| spec.line_point(code, t)).collect();
                assert!(on.contains(&idx));
                for other in (0..3).filter(|&a| a != axis) {
                    assert_eq!(spec.line_coord0(code, other), spec.coord0(idx, other));
                }
            }
        }
    }

    #[test]
    fn text_formats() {
        let p: Point = "3, 5".parse().unwrap();
        assert_eq!(p, pt(&[3, 5]));
        assert_eq!(p.to_string(), "3,5");
        let l: LineId = "1:2,4".parse().unwrap();
        assert_eq!(l, LineId::new(1, vec![2, 4]));
        assert_eq!(l.to_string(), "1:2,4");
        let l: LineId = "0:".parse().unwrap();
        assert_eq!(l, LineId::new(0, vec![]));
        assert!("1;2".parse::<LineId>().is_err());
        assert!("a,b".parse::<Point>().is_err());
        let pts = parse_points("1,1\n# comment\n\n2,2 # trailing\n").unwrap();
        assert_eq!(pts, vec![pt(&[1, 1]), pt(&[2, 2])]);
    }

    #[test]
    fn invalid_specs_and_points() {
        assert!(GridSpec::new(0, vec![2]).is_err());
        assert!(GridSpec::new(3, vec![]).is_err());
        assert!(GridSpec::new(3, vec![2, 0]).is_err());
        let spec = GridSpec::uniform(3, 2, 2).unwrap();
        assert!(spec.lines_through(&pt(&[0, 1])).is_err());
        assert!(spec.lines_through(&pt(&[4, 1])).is_err());
        assert!(spec.lines_through(&pt(&[1, 1, 1])).is_err());
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(cube(2, 2), vec![pt(&[1, 1]), pt(&[1, 2]), pt(&[2, 1]), pt(&[2, 2])]);
        assert_eq!(box_points(&[2, 3]).len(), 6);
        assert!(box_points(&[0, 3]).is_empty());
        assert_eq!(cube(3, 1).len(), 3);
    }
}
