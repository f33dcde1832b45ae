//! The hook code: a bijection between diagrams with a fixed diagonal profile
//! and box-bounded sequences of diagrams.
//!
//! For a diagram `D` with profile `H`, every nonempty row `j` ends in the
//! cell of level `m = k*j + r_j - 1`. Grouping rows by that level and
//! recording, per row, the number of cells with `l(s) = k*(a(s)+1)` yields a
//! partition for each level; re-indexed by `i = m - theta` these partitions
//! form the code `F(D)`. Part `i` fits in an `f_i x w_i` rectangle, and the
//! image inside the product of box sets is cut out by a gap condition on the
//! indices whose part does not exhaust the rectangle width.

use crate::components::{derive, is_realizable, DerivedIndices};
use crate::diagram::{partitions_in_box, Cell, HilbertFunction, YoungDiagram};
use crate::error::{Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Row-end levels, per-row exact band counts and the level partitions of a
/// diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookStats {
    /// Level `m` -> rows ending on level `m`, ascending.
    pub b: BTreeMap<i64, Vec<u32>>,
    /// Row `j` -> number of cells in row `j` with `l = k*(a+1)`.
    pub h: BTreeMap<u32, u32>,
    /// Level `m` -> the counts of its rows, weakly decreasing, zeros dropped.
    pub lambda: BTreeMap<i64, Vec<u32>>,
}

pub fn hook_stats(d: &YoungDiagram, k: u32) -> HookStats {
    let mut b: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    let mut h = BTreeMap::new();
    for (j, &rj) in d.rows().iter().enumerate() {
        let j = j as u32;
        let m = k as i64 * j as i64 + rj as i64 - 1;
        b.entry(m).or_default().push(j);
        let count = (0..rj)
            .filter(|&i| {
                let (a, l) = d.arm_leg(Cell::new(i, j)).expect("cell of the diagram");
                l as u64 == k as u64 * (a as u64 + 1)
            })
            .count() as u32;
        h.insert(j, count);
    }
    let mut lambda = BTreeMap::new();
    for (&m, rows) in &b {
        let hs: Vec<u32> = rows.iter().map(|j| h[j]).collect();
        assert!(
            hs.windows(2).all(|w| w[0] >= w[1]),
            "exact band counts decrease along rows ending on one level"
        );
        lambda.insert(m, hs.into_iter().filter(|&x| x > 0).collect::<Vec<u32>>());
    }
    HookStats { b, h, lambda }
}

fn empty_diagram() -> &'static YoungDiagram {
    static EMPTY: OnceLock<YoungDiagram> = OnceLock::new();
    EMPTY.get_or_init(YoungDiagram::empty)
}

/// A sequence of diagrams indexed from 0, each bounded by the rectangle
/// `f_i x w_i` of its profile context. Trailing empty parts are not stored.
#[derive(Clone, Debug)]
pub struct DiagramSequence {
    ctx: DerivedIndices,
    parts: Vec<YoungDiagram>,
}

impl PartialEq for DiagramSequence {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.h() == other.ctx.h() && self.ctx.k() == other.ctx.k() && self.parts == other.parts
    }
}

impl Eq for DiagramSequence {}

impl DiagramSequence {
    /// Validates each nonempty part against its bounding rectangle.
    pub fn new(h: &HilbertFunction, k: u32, mut parts: Vec<YoungDiagram>) -> Result<Self> {
        while parts.last().is_some_and(YoungDiagram::is_empty) {
            parts.pop();
        }
        let ctx = derive(h, k);
        for (i, p) in parts.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let (f, w) = (ctx.f(i as i64), ctx.w(i as i64));
            if (p.row(0) as i64) > f || (p.col(0) as i64) > w {
                return Err(Error::RectangleBound(i));
            }
        }
        Ok(DiagramSequence { ctx, parts })
    }

    pub fn ctx(&self) -> &DerivedIndices {
        &self.ctx
    }

    pub fn h(&self) -> &HilbertFunction {
        self.ctx.h()
    }

    pub fn k(&self) -> u32 {
        self.ctx.k()
    }

    pub fn parts(&self) -> &[YoungDiagram] {
        &self.parts
    }

    /// Part at index `i`, the empty diagram beyond the stored range.
    pub fn part(&self, i: i64) -> &YoungDiagram {
        if i < 0 {
            panic!("sequence index {i} is negative");
        }
        self.parts
            .get(i as usize)
            .unwrap_or_else(|| empty_diagram())
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().map(YoungDiagram::size).sum()
    }

    /// Largest index whose part exhausts the rectangle height; index 0 always
    /// qualifies because `w_0 = 0`.
    pub fn nu(&self) -> i64 {
        let top = self.ctx.sigma().max(self.parts.len() as i64 - 1);
        (0..=top)
            .filter(|&i| self.part(i).col(0) as i64 == self.ctx.w(i))
            .max()
            .unwrap_or(0)
    }

    /// Whether the part at `i` leaves row room in its rectangle.
    pub fn is_slack(&self, i: i64) -> bool {
        (self.part(i).row(0) as i64) < self.ctx.f(i)
    }

    /// Smallest slack index `> i`, searched out to the forced tail; `None`
    /// only for sequences that violate the gap condition near the horizon.
    pub fn first_slack_after(&self, i: i64) -> Option<i64> {
        let top = self.horizon().max(i) + 2 * self.ctx.k() as i64;
        (i + 1..=top).find(|&j| self.is_slack(j))
    }

    /// Largest slack index `< i`.
    pub fn last_slack_before(&self, i: i64) -> Option<i64> {
        (0..i).rev().find(|&j| self.is_slack(j))
    }

    fn horizon(&self) -> i64 {
        self.ctx.sigma().max(self.parts.len() as i64 - 1)
    }

    /// The gap condition cutting the image out of the product of box sets:
    /// every window of `k` consecutive indices past any position must contain
    /// a slack index. Index 0 never helps because windows open to its right.
    pub fn in_image(&self) -> bool {
        let k = self.ctx.k() as i64;
        let mut last = 0;
        for i in 1..=self.horizon() + 2 * k {
            if self.is_slack(i) {
                if i - last > k {
                    return false;
                }
                last = i;
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        let parts: Vec<Value> = self
            .parts
            .iter()
            .map(|p| Value::from(p.rows().to_vec()))
            .collect();
        json!({
            "schema": 1,
            "H": self.ctx.h().dims(),
            "k": self.ctx.k(),
            "parts": parts,
        })
    }

    pub fn from_json(v: &Value) -> Result<DiagramSequence> {
        let dims = v
            .get("H")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("sequence JSON needs an H array".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|d| d as u32)
                    .ok_or_else(|| Error::Parse("H entries must be non-negative integers".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Parse("sequence JSON needs a positive k".into()))?
            as u32;
        let parts = v
            .get("parts")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("sequence JSON needs a parts array".into()))?
            .iter()
            .map(|rows| {
                let rows = rows
                    .as_array()
                    .ok_or_else(|| Error::Parse("each part must be an array of rows".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64().map(|r| r as u32).ok_or_else(|| {
                            Error::Parse("rows must be non-negative integers".into())
                        })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                YoungDiagram::new(rows)
            })
            .collect::<Result<Vec<YoungDiagram>>>()?;
        DiagramSequence::new(&HilbertFunction::new(dims), k, parts)
    }
}

/// The hook code of a diagram: part `m - theta` is the diagram whose column
/// heights are the level partition at `m`.
pub fn encode(d: &YoungDiagram, k: u32) -> DiagramSequence {
    let h = d.diag_profile(1, k);
    let ctx = derive(&h, k);
    let stats = hook_stats(d, k);
    let mut parts = vec![YoungDiagram::empty(); (ctx.sigma() + 1) as usize];
    for (&m, lambda) in &stats.lambda {
        if lambda.is_empty() {
            continue;
        }
        let i = m - ctx.theta();
        assert!(
            (0..parts.len() as i64).contains(&i),
            "rows with exact band cells end between theta and theta + sigma"
        );
        parts[i as usize] =
            YoungDiagram::from_columns(lambda).expect("level partitions are weakly decreasing");
    }
    DiagramSequence::new(&h, k, parts).expect("hook code fits its rectangles")
}

/// Inverse of `encode`: validates the gap condition, then peels one bottom
/// row per step. The bottom row length is `theta + nu + 1`; removing it
/// shifts the profile down by `k` and decrements the levels it covered.
pub fn decode(p: &DiagramSequence) -> Result<YoungDiagram> {
    if !is_realizable(p.h(), p.k()) {
        return Err(Error::NotRealizable(p.h().to_string(), p.k()));
    }
    if !p.in_image() {
        return Err(Error::NotInImage);
    }
    decode_step(p)
}

fn decode_step(p: &DiagramSequence) -> Result<YoungDiagram> {
    let ctx = p.ctx();
    let k = ctx.k() as i64;
    if ctx.h().is_zero() {
        return if p.weight() == 0 {
            Ok(YoungDiagram::empty())
        } else {
            Err(Error::NotInImage)
        };
    }
    let nu = p.nu();
    let theta = ctx.theta();
    let r0 = theta + nu + 1;
    if r0 < 1 {
        return Err(Error::Invariant("bottom row length must be positive"));
    }

    let support = ctx.h().support_end();
    let mut dims = Vec::new();
    for i in 0..=(support - k).max(-1) {
        let v = ctx.d(i + k) - i64::from(i + k <= nu + theta);
        if v < 0 {
            return Err(Error::NotInImage);
        }
        dims.push(v as u32);
    }
    let h_next = HilbertFunction::new(dims);
    if !is_realizable(&h_next, ctx.k()) {
        return Err(Error::Invariant("peeled profile must stay realizable"));
    }

    // Rectangle heights drop by one just above nu when the bottom row ends
    // deep in the profile (first case); otherwise the whole index frame
    // shifts down by k (second case).
    let first_case = nu >= k || ctx.w(k) >= 2;
    let parts_next: Vec<YoungDiagram> = if first_case {
        let mut parts = p.parts().to_vec();
        if let Some(slot) = parts.get_mut(nu as usize) {
            *slot = slot.remove_first_column();
        }
        parts
    } else {
        p.parts().iter().skip(k as usize).cloned().collect()
    };
    let p_next = DiagramSequence::new(&h_next, ctx.k(), parts_next)
        .map_err(|_| Error::Invariant("peeled sequence must fit its rectangles"))?;
    let theta_next = p_next.ctx().theta();
    if theta_next != if first_case { theta - k } else { theta } {
        return Err(Error::Invariant("theta must track the peeling case"));
    }

    let rest = decode_step(&p_next)?;
    if (rest.row(0) as i64) > r0 {
        return Err(Error::Invariant("peeled diagram exceeds its bottom row"));
    }
    let mut rows = vec![r0 as u32];
    rows.extend_from_slice(rest.rows());
    Ok(YoungDiagram::new(rows).expect("rows are weakly decreasing"))
}

/// All sequences over the rectangles of `h` satisfying the gap condition,
/// in depth-first order over the per-index box sets.
pub fn enumerate_sh(h: &HilbertFunction, k: u32) -> Result<Vec<DiagramSequence>> {
    enumerate_sh_with_horizon(h, k, 0)
}

/// Enumeration with `extra` indices past the standard horizon `sigma`; the
/// gap condition forces every extra part to stay empty, which a test asserts
/// by comparing horizons.
fn enumerate_sh_with_horizon(
    h: &HilbertFunction,
    k: u32,
    extra: i64,
) -> Result<Vec<DiagramSequence>> {
    if !is_realizable(h, k) {
        return Err(Error::NotRealizable(h.to_string(), k));
    }
    let ctx = derive(h, k);
    let ki = k as i64;
    let top = ctx.sigma() + extra;
    let boxes: Vec<Vec<YoungDiagram>> = (0..=top)
        .map(|i| {
            let (f, w) = (ctx.f(i), ctx.w(i));
            assert!(
                f >= 0 && w >= 0,
                "realizable profiles have nonnegative box sides"
            );
            partitions_in_box(f as u32, w as u32)
        })
        .collect();
    let tail_slack = (top / ki + 1) * ki;
    let mut out = Vec::new();
    let mut chosen: Vec<YoungDiagram> = Vec::new();

    struct Search<'a> {
        top: i64,
        ki: i64,
        tail_slack: i64,
        ctx: &'a DerivedIndices,
        boxes: &'a [Vec<YoungDiagram>],
    }

    fn fill(
        env: &Search<'_>,
        i: i64,
        last_slack: i64,
        chosen: &mut Vec<YoungDiagram>,
        out: &mut Vec<DiagramSequence>,
    ) {
        if i - last_slack > env.ki {
            return;
        }
        if i > env.top {
            if env.tail_slack - last_slack <= env.ki {
                let seq = DiagramSequence::new(env.ctx.h(), env.ctx.k(), chosen.clone())
                    .expect("boxes bound every candidate part");
                out.push(seq);
            }
            return;
        }
        for part in &env.boxes[i as usize] {
            let slack = (part.row(0) as i64) < env.ctx.f(i);
            let next_last = if slack && i > 0 { i } else { last_slack };
            chosen.push(part.clone());
            fill(env, i + 1, next_last, chosen, out);
            chosen.pop();
        }
    }

    let env = Search {
        top,
        ki,
        tail_slack,
        ctx: &ctx,
        boxes: &boxes,
    };
    fill(&env, 0, 0, &mut chosen, &mut out);
    Ok(out)
}
