//! Young diagrams, their cell statistics and weighted diagonal profiles.
//!
//! A diagram is stored as its weakly decreasing list of row lengths.
//! Cell `(i, j)` (column `i`, row `j`) lies in the diagram iff `i < rows[j]`.
//! Row 0 is the longest row and `j` grows upward, so the arm of a cell counts
//! boxes strictly above it in its column and the leg counts boxes strictly to
//! its right in its row.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Cell {
    pub i: u32,
    pub j: u32,
}

impl Cell {
    pub fn new(i: u32, j: u32) -> Self {
        Cell { i, j }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

/// Counts of cells whose leg-to-arm ratio falls on, inside, or on the closure
/// of the band `k*a(s) <= l(s) <= k*(a(s)+1)`. `closed = halfopen + exact`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpecialCounts {
    pub exact: u32,
    pub halfopen: u32,
    pub closed: u32,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    /// Builds a diagram from row lengths. Trailing zeros are dropped; an
    /// increase between consecutive rows is an error.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(Error::BadRows(format!("{rows:?}")));
        }
        Ok(YoungDiagram { rows })
    }

    /// Builds the diagram whose column heights are the given weakly
    /// decreasing list, i.e. the conjugate of `new`.
    pub fn from_columns(cols: &[u32]) -> Result<Self> {
        if cols.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadRows(format!("{cols:?}")));
        }
        let height = cols.first().copied().unwrap_or(0);
        let rows = (0..height)
            .map(|j| cols.iter().take_while(|&&c| c > j).count() as u32)
            .collect();
        Ok(YoungDiagram { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Length of row `j`, zero outside the diagram.
    pub fn row(&self, j: u32) -> u32 {
        self.rows.get(j as usize).copied().unwrap_or(0)
    }

    /// Height of column `i`, zero outside the diagram.
    pub fn col(&self, i: u32) -> u32 {
        self.rows.iter().take_while(|&&r| r > i).count() as u32
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.row(0);
        let rows = (0..width).map(|i| self.col(i)).collect();
        YoungDiagram { rows }
    }

    pub fn contains(&self, s: Cell) -> bool {
        s.i < self.row(s.j)
    }

    /// `other` fits inside `self` row by row.
    pub fn contains_diagram(&self, other: &YoungDiagram) -> bool {
        other
            .rows
            .iter()
            .enumerate()
            .all(|(j, &r)| r <= self.row(j as u32))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(j, &r)| (0..r).map(move |i| Cell::new(i, j as u32)))
    }

    /// Arm (boxes strictly above in the column) and leg (boxes strictly right
    /// in the row) of a cell.
    pub fn arm_leg(&self, s: Cell) -> Result<(u32, u32)> {
        if !self.contains(s) {
            return Err(Error::CellNotInDiagram(s.i, s.j));
        }
        let arm = self.col(s.i) - 1 - s.j;
        let leg = self.row(s.j) - 1 - s.i;
        Ok((arm, leg))
    }

    /// Number of cells on each line `a*i + b*j = l`, reported as the vector of
    /// counts indexed by `l`.
    pub fn diag_profile(&self, a: u32, b: u32) -> HilbertFunction {
        let mut dims = Vec::new();
        for s in self.cells() {
            let l = (a as usize) * (s.i as usize) + (b as usize) * (s.j as usize);
            if dims.len() <= l {
                dims.resize(l + 1, 0);
            }
            dims[l] += 1;
        }
        HilbertFunction::new(dims)
    }

    /// Band statistics of the leg against `k` times the arm.
    pub fn special_counts(&self, k: u32) -> SpecialCounts {
        let mut counts = SpecialCounts {
            exact: 0,
            halfopen: 0,
            closed: 0,
        };
        for s in self.cells() {
            let (a, l) = self.arm_leg(s).expect("cell comes from the diagram");
            let (a, l, k) = (a as u64, l as u64, k as u64);
            if l == k * (a + 1) {
                counts.exact += 1;
            }
            if k * a <= l && l < k * (a + 1) {
                counts.halfopen += 1;
            }
            if k * a <= l && l <= k * (a + 1) {
                counts.closed += 1;
            }
        }
        counts
    }

    /// Cells with `a*l(s) = b*(arm(s)+1)`, the exact statistic for a general
    /// coprime weight pair.
    pub fn special_count_ab(&self, a: u32, b: u32) -> Result<u32> {
        if num_integer::gcd(a, b) != 1 {
            return Err(Error::NotCoprime(a, b));
        }
        let mut count = 0;
        for s in self.cells() {
            let (arm, leg) = self.arm_leg(s).expect("cell comes from the diagram");
            if (a as u64) * (leg as u64) == (b as u64) * (arm as u64 + 1) {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn remove_bottom_row(&self) -> Result<(u32, YoungDiagram)> {
        match self.rows.split_first() {
            Some((&r0, rest)) => Ok((
                r0,
                YoungDiagram {
                    rows: rest.to_vec(),
                },
            )),
            None => Err(Error::EmptyDiagram),
        }
    }

    /// Shortens every row by one cell, dropping column 0.
    pub fn remove_first_column(&self) -> YoungDiagram {
        let rows = self
            .rows
            .iter()
            .filter(|&&r| r > 1)
            .map(|&r| r - 1)
            .collect();
        YoungDiagram { rows }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Parses comma-separated row lengths; the empty string is the empty
    /// diagram.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(YoungDiagram::empty());
        }
        let rows = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("{p:?}: {e}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        YoungDiagram::new(rows)
    }
}

/// A diagonal profile: `dims[l]` counts cells on level `l`. Stored without
/// trailing zeros so equal profiles compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct HilbertFunction {
    dims: Vec<u32>,
}

impl HilbertFunction {
    pub fn new(mut dims: Vec<u32>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        HilbertFunction { dims }
    }

    pub fn zero() -> Self {
        HilbertFunction { dims: Vec::new() }
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn get(&self, l: usize) -> u32 {
        self.dims.get(l).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Index of the last nonzero entry, or -1 for the zero profile.
    pub fn support_end(&self) -> i64 {
        self.dims.len() as i64 - 1
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for HilbertFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(HilbertFunction::zero());
        }
        let dims = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("{p:?}: {e}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(HilbertFunction::new(dims))
    }
}

/// All partitions of `n`, largest first within each partition, in reverse
/// lexicographic order. `n = 0` yields the empty diagram.
pub fn enumerate_partitions(n: u32) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(rest: u32, limit: u32, current: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
    if rest == 0 {
        out.push(YoungDiagram {
            rows: current.clone(),
        });
        return;
    }
    for part in (1..=rest.min(limit)).rev() {
        current.push(part);
        descend(rest - part, part, current, out);
        current.pop();
    }
}

/// All diagrams fitting in a `width x height` box (row length at most
/// `width`, at most `height` rows).
pub fn partitions_in_box(width: u32, height: u32) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend_box(width, height, &mut current, &mut out);
    out
}

fn descend_box(limit: u32, rows_left: u32, current: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
    out.push(YoungDiagram {
        rows: current.clone(),
    });
    if rows_left == 0 {
        return;
    }
    for part in (1..=limit).rev() {
        current.push(part);
        descend_box(part, rows_left - 1, current, out);
        current.pop();
    }
}

/// All diagrams of size `h.total()` whose `(a, b)` diagonal profile equals
/// `h`: the filter-over-partitions baseline.
pub fn enumerate_with_diag(h: &HilbertFunction, a: u32, b: u32) -> Vec<YoungDiagram> {
    enumerate_partitions(h.total())
        .into_iter()
        .filter(|d| &d.diag_profile(a, b) == h)
        .collect()
}
