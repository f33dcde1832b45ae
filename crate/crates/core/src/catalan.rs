//! Lattice paths under the slope-k staircase, their two statistics, and the
//! stratum generating series that packages the component classes of small
//! support into a two-parameter Catalan polynomial.

use crate::diagram::{enumerate_partitions, YoungDiagram};
use crate::error::Result;
use crate::identities::VerifyReport;
use crate::poly::MPoly;
use num_bigint::BigInt;
use num_traits::Zero;

/// A path of `n` unit up-steps at horizontal positions `ups[0] <= ... <=
/// ups[n-1]`, step `i` constrained by `ups[i] <= k*i`, so the path stays
/// weakly left of the slope-k staircase.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KDyckPath {
    ups: Vec<u32>,
}

impl KDyckPath {
    pub fn new(ups: Vec<u32>, k: u32) -> Option<KDyckPath> {
        let ok = ups.windows(2).all(|w| w[0] <= w[1])
            && ups
                .iter()
                .enumerate()
                .all(|(i, &u)| u as u64 <= k as u64 * i as u64);
        ok.then_some(KDyckPath { ups })
    }

    pub fn ups(&self) -> &[u32] {
        &self.ups
    }

    pub fn n(&self) -> usize {
        self.ups.len()
    }

    /// Cells left of the path, a diagram with rows read from the top step
    /// down.
    pub fn diagram(&self) -> YoungDiagram {
        let rows: Vec<u32> = self.ups.iter().rev().copied().collect();
        YoungDiagram::new(rows).expect("reversed up-steps decrease weakly")
    }

    /// Cells between the path and the staircase, counted directly.
    pub fn area(&self, k: u32) -> u32 {
        self.ups
            .iter()
            .enumerate()
            .map(|(i, &u)| k * i as u32 - u)
            .sum()
    }
}

pub fn enumerate_kdyck(n: usize, k: u32) -> Vec<KDyckPath> {
    let mut out = Vec::new();
    let mut ups = Vec::with_capacity(n);
    fn fill(n: usize, k: u32, ups: &mut Vec<u32>, out: &mut Vec<KDyckPath>) {
        if ups.len() == n {
            out.push(KDyckPath { ups: ups.clone() });
            return;
        }
        let lo = ups.last().copied().unwrap_or(0);
        let hi = k * ups.len() as u32;
        for u in lo..=hi {
            ups.push(u);
            fill(n, k, ups, out);
            ups.pop();
        }
    }
    fill(n, k, &mut ups, &mut out);
    out
}

/// The companion statistic: cells of the path diagram with `k*a <= l <=
/// k*(a+1)`.
pub fn bk(path: &KDyckPath, k: u32) -> u32 {
    path.diagram().special_counts(k).closed
}

/// The two-parameter Catalan polynomial `sum q^bk t^area` over all paths
/// with `n` up-steps.
pub fn qt_catalan(n: usize, k: u32) -> MPoly {
    let mut sum = MPoly::zero();
    for path in enumerate_kdyck(n, k) {
        sum.add_term(bk(&path, k), path.area(k), BigInt::from(1));
    }
    sum
}

/// Path count `binom((k+1)n, n) / (kn + 1)`, exactly.
pub fn fuss_catalan(n: usize, k: u32) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    let top = (k as u64 + 1) * n as u64;
    for i in 0..n as u64 {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    let (binom, rem) = num_integer::div_rem(num, den.clone());
    assert!(rem.is_zero(), "binomial is an integer");
    let (count, rem) = num_integer::div_rem(binom, BigInt::from(k as u64 * n as u64 + 1));
    assert!(rem.is_zero(), "path count divides the binomial");
    count
}

pub fn is_qt_symmetric(p: &MPoly) -> bool {
    let mut swapped = MPoly::zero();
    for (em, et, c) in p.terms() {
        swapped.add_term(et, em, c.clone());
    }
    swapped == *p
}

/// Class of the size-`size` piece of the open stratum: the sum of
/// `L^(size + closed count)` over diagrams of that size with no cell at
/// level `k*(n-1)` or higher. Zero once `size` exceeds the full staircase
/// area, since those diagrams are exactly the path diagrams.
pub fn open_stratum_class(size: u32, k: u32, n: usize) -> MPoly {
    let cutoff = k as i64 * (n as i64 - 1);
    let mut class = MPoly::zero();
    for d in enumerate_partitions(size) {
        if d.diag_profile(1, k).support_end() >= cutoff.max(0) {
            continue;
        }
        if cutoff <= 0 && !d.is_empty() {
            continue;
        }
        class.add_term(size + d.special_counts(k).closed, 0, BigInt::from(1));
    }
    class
}

/// The stratum classes strung up on `t` by size.
pub fn stratum_series(k: u32, n: usize) -> MPoly {
    let n_max = if n < 2 {
        0
    } else {
        k * (n * (n - 1) / 2) as u32
    };
    let mut lhs = MPoly::zero();
    for size in 0..=n_max {
        for (e_main, _, c) in open_stratum_class(size, k, n).terms() {
            lhs.add_term(e_main, size, c.clone());
        }
    }
    lhs
}

/// The stratum series against the Catalan polynomial with `t` inverted into
/// `L*t` around the staircase area.
pub fn verify_stratum_series(k: u32, n: usize) -> Result<VerifyReport> {
    let lhs = stratum_series(k, n);
    let shift = k * (n * n.saturating_sub(1) / 2) as u32;
    let rhs = qt_catalan(n, k).substitute_lt_inverse(shift)?;
    Ok(VerifyReport::compare(lhs, rhs))
}
