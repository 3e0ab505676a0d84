//! Partitions (shapes), cells, and constrained subshape enumeration.
//!
//! Cells are 1-based throughout: `[i, j]` is row `i`, column `j`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        let size = parts.iter().sum();
        Ok(Partition { parts, size })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), size: 0 }
    }

    /// The k x n rectangle (n repeated k times).
    pub fn rectangle(k: usize, n: usize) -> Self {
        if n == 0 {
            return Partition::empty();
        }
        Partition { parts: vec![n; k], size: k * n }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at 1-based row `i`, zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        let size = self.size;
        Partition { parts, size }
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.row <= self.len() && c.col >= 1 && c.col <= self.parts[c.row - 1]
    }

    /// Componentwise containment of Young diagrams.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner
            .parts
            .iter()
            .enumerate()
            .all(|(t, &p)| self.parts.get(t).is_some_and(|&q| q >= p))
    }

    /// Removable cells `[t, lambda_t]`, top to bottom.
    pub fn corners(&self) -> Vec<Cell> {
        (1..=self.len())
            .filter(|&t| self.part(t + 1) < self.part(t))
            .map(|t| Cell::new(t, self.part(t)))
            .collect()
    }

    /// Is `c` a corner of this partition?
    pub fn is_corner(&self, c: Cell) -> bool {
        self.part(c.row) == c.col && self.part(c.row + 1) < c.col
    }

    /// The partition with the corner `c` removed.
    pub fn remove_corner(&self, c: Cell) -> Option<Partition> {
        if !self.is_corner(c) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[c.row - 1] -= 1;
        if parts[c.row - 1] == 0 {
            parts.pop();
        }
        Some(Partition { parts, size: self.size - 1 })
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(t, &p)| (1..=p).map(move |j| Cell::new(t + 1, j)))
    }

    /// All partitions of `n`, descending lexicographic.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                let size = parts.iter().sum();
                out.push(Partition { parts: parts.clone(), size });
                return;
            }
            for p in (1..=max.min(remaining)).rev() {
                parts.push(p);
                rec(remaining - p, p, parts, out);
                parts.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n.max(1), &mut Vec::new(), &mut out);
        out
    }

    fn check_cell(&self, c: Cell) -> Result<()> {
        if self.contains_cell(c) {
            Ok(())
        } else {
            Err(Error::CellOutsideShape { cell: c, shape: self.clone() })
        }
    }

    /// Range `[lo, hi]` of possible occupants of cell `c`:
    /// `lo = i*j`, `hi = lambda_1+..+lambda_{i-1} + lambda'_1+..+lambda'_{j-1} - (i-1)(j-1) + 1`.
    ///
    /// Every occupant outside the range has probability zero; the upper bound
    /// is returned as stated even when unattained.
    pub fn occupant_range(&self, c: Cell) -> Result<(usize, usize)> {
        self.check_cell(c)?;
        let (i, j) = (c.row, c.col);
        let conj = self.conjugate();
        let rows: usize = (1..i).map(|t| self.part(t)).sum();
        let cols: usize = (1..j).map(|t| conj.part(t)).sum();
        let hi = rows + cols - (i - 1) * (j - 1) + 1;
        Ok((i * j, hi))
    }

    /// All `nu` of size `r` with `nu` inside `self`, cell `c` a corner of `nu`.
    /// Descending lexicographic order.
    pub fn subshapes_with_corner(&self, c: Cell, r: usize) -> Result<Vec<Partition>> {
        self.check_cell(c)?;
        Ok(enumerate_subshapes(self, c, None, r))
    }

    /// All `nu` of size `r` inside `self` with `c1` a corner of `nu` and `c2` in `nu`.
    pub fn subshapes_for_sorting(&self, c1: Cell, c2: Cell, r: usize) -> Result<Vec<Partition>> {
        self.check_cell(c1)?;
        self.check_cell(c2)?;
        if c1 == c2 {
            return Err(Error::SameCell);
        }
        Ok(enumerate_subshapes(self, c1, Some(c2), r))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma-separated parts, e.g. `"10,4,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A 1-based cell `[row, col]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Cell { row, col }
    }

    /// Cells are related when one is weakly below and weakly right of the other.
    pub fn related(self, other: Cell) -> bool {
        (self.row <= other.row && self.col <= other.col)
            || (other.row <= self.row && other.col <= self.col)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = Error;

    /// Parses `"i,j"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::InvalidPartition(format!("bad cell {s:?}, expected \"i,j\""));
        let (a, b) = s.split_once(',').ok_or_else(err)?;
        let row: usize = a.trim().parse().map_err(|_| err())?;
        let col: usize = b.trim().parse().map_err(|_| err())?;
        if row == 0 || col == 0 {
            return Err(err());
        }
        Ok(Cell::new(row, col))
    }
}

/// A skew shape `outer/inner`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InnerNotContained { inner, outer });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

/// Enumerate partitions of `r` inside `lambda` with `corner` a corner,
/// optionally containing `contain`. Parts are chosen largest-first row by
/// row, which yields descending lexicographic order.
fn enumerate_subshapes(
    lambda: &Partition,
    corner: Cell,
    contain: Option<Cell>,
    r: usize,
) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    rec(lambda, corner, contain, r, 1, usize::MAX, &mut parts, &mut out);
    return out;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        lambda: &Partition,
        corner: Cell,
        contain: Option<Cell>,
        remaining: usize,
        row: usize,
        prev: usize,
        parts: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            let deep_enough =
                row > corner.row && contain.is_none_or(|c| row > c.row);
            if deep_enough {
                let size = parts.iter().sum();
                out.push(Partition { parts: parts.clone(), size });
            }
            return;
        }
        if row > lambda.len() {
            return;
        }
        let mut max = prev.min(lambda.part(row));
        let mut min = 1;
        match row.cmp(&corner.row) {
            std::cmp::Ordering::Less => min = min.max(corner.col),
            std::cmp::Ordering::Equal => {
                min = corner.col;
                max = max.min(corner.col);
            }
            std::cmp::Ordering::Greater => {
                // corner condition: rows below must be strictly narrower
                if corner.col == 1 {
                    return;
                }
                max = max.min(corner.col - 1);
            }
        }
        if let Some(c) = contain {
            if row <= c.row {
                min = min.max(c.col);
            }
        }
        if min > max {
            return;
        }
        for p in (min..=max.min(remaining)).rev() {
            parts.push(p);
            rec(lambda, corner, contain, remaining - p, row + 1, p, parts, out);
            parts.pop();
        }
    }
}
