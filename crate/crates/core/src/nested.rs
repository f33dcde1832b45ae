//! Chains of diagrams with prescribed equal-weight profiles, and the
//! count-level consistency between chain components and the interleaved
//! unequal-weight component.

use crate::diagram::{enumerate_with_diag, HilbertFunction, YoungDiagram};
use crate::error::{Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// A tuple `(H_1, ..., H_k)` of profiles with weakly decreasing totals,
/// prescribing the profile of each member of a diagram chain `D_1 contains
/// D_2 contains ... contains D_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NestedHilbertFunctions {
    parts: Vec<HilbertFunction>,
}

impl NestedHilbertFunctions {
    pub fn new(parts: Vec<HilbertFunction>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::NotNested);
        }
        if parts.windows(2).any(|w| w[0].total() < w[1].total()) {
            return Err(Error::NotNested);
        }
        Ok(NestedHilbertFunctions { parts })
    }

    pub fn parts(&self) -> &[HilbertFunction] {
        &self.parts
    }

    pub fn k(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn totals(&self) -> Vec<u32> {
        self.parts.iter().map(HilbertFunction::total).collect()
    }

    /// Indices where the parts disagree: the finite complement of the set
    /// where all parts share one value.
    pub fn e_complement(&self) -> BTreeSet<usize> {
        let len = self.parts.iter().map(|h| h.dims().len()).max().unwrap_or(0);
        (0..len)
            .filter(|&i| {
                let first = self.parts[0].get(i);
                self.parts.iter().any(|h| h.get(i) != first)
            })
            .collect()
    }

    /// No two consecutive disagreement indices.
    pub fn hypothesis(&self) -> bool {
        self.consecutive_disagreement().is_none()
    }

    fn consecutive_disagreement(&self) -> Option<(usize, usize)> {
        let comp: Vec<usize> = self.e_complement().into_iter().collect();
        comp.windows(2)
            .find(|w| w[1] - w[0] < 2)
            .map(|w| (w[0], w[1]))
    }

    /// The single profile reading the parts in round-robin order:
    /// `d_{i + k*j}` is part `i` at position `j`.
    pub fn interleave(&self) -> HilbertFunction {
        let k = self.parts.len();
        let len = self.parts.iter().map(|h| h.dims().len()).max().unwrap_or(0);
        let mut dims = vec![0u32; k * len];
        for (i, part) in self.parts.iter().enumerate() {
            for j in 0..len {
                dims[i + k * j] = part.get(j);
            }
        }
        HilbertFunction::new(dims)
    }

    pub fn to_json(&self) -> Value {
        let parts: Vec<Value> = self
            .parts
            .iter()
            .map(|h| Value::from(h.dims().to_vec()))
            .collect();
        json!({ "schema": 1, "parts": parts })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let parts = v
            .get("parts")
            .and_then(Value::as_array)
            .ok_or_else(|| {
                Error::Parse(
                    r#"nested JSON needs a parts array, e.g. {"parts":[[1,1],[1]]}"#.into(),
                )
            })?
            .iter()
            .map(|dims| {
                let dims = dims
                    .as_array()
                    .ok_or_else(|| Error::Parse("each part must be an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64().map(|d| d as u32).ok_or_else(|| {
                            Error::Parse("profile entries must be non-negative integers".into())
                        })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok(HilbertFunction::new(dims))
            })
            .collect::<Result<Vec<HilbertFunction>>>()?;
        NestedHilbertFunctions::new(parts)
    }
}

/// Splits a profile into `k` round-robin residue tracks, inverting
/// `interleave`.
pub fn decimate(h: &HilbertFunction, k: u32) -> Vec<HilbertFunction> {
    assert!(k >= 1);
    let k = k as usize;
    (0..k)
        .map(|i| {
            let dims: Vec<u32> = (0..)
                .map(|j| i + k * j)
                .take_while(|&pos| pos < h.dims().len())
                .map(|pos| h.get(pos))
                .collect();
            HilbertFunction::new(dims)
        })
        .collect()
}

/// Number of diagram chains realizing the tuple, each member containing the
/// next and matching its equal-weight profile.
pub fn count_nested_fixed_points(bh: &NestedHilbertFunctions) -> u64 {
    fn extend(chains: u64, rest: &[Vec<YoungDiagram>], outer: &YoungDiagram) -> u64 {
        match rest.split_first() {
            None => chains,
            Some((candidates, tail)) => candidates
                .iter()
                .filter(|d| outer.contains_diagram(d))
                .map(|d| extend(chains, tail, d))
                .sum(),
        }
    }
    let fibers: Vec<Vec<YoungDiagram>> = bh
        .parts()
        .iter()
        .map(|h| enumerate_with_diag(h, 1, 1))
        .collect();
    let (first, rest) = fibers.split_first().expect("tuple is nonempty");
    first.iter().map(|d| extend(1, rest, d)).sum()
}

/// Both counts of the consistency check, with no hypothesis gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedReport {
    pub equal: bool,
    pub chain_count: u64,
    pub fiber_count: u64,
}

impl NestedReport {
    pub fn to_json(&self) -> Value {
        json!({
            "equal": self.equal,
            "chain_count": self.chain_count,
            "fiber_count": self.fiber_count,
        })
    }
}

/// Chain count against the fiber count of the interleaved profile under
/// weights `(1, k)`, computed regardless of the hypothesis.
pub fn nested_counts(bh: &NestedHilbertFunctions) -> NestedReport {
    let chain_count = count_nested_fixed_points(bh);
    let fiber_count = enumerate_with_diag(&bh.interleave(), 1, bh.k()).len() as u64;
    NestedReport {
        equal: chain_count == fiber_count,
        chain_count,
        fiber_count,
    }
}

/// The consistency claim only covers tuples satisfying the gap hypothesis;
/// others are refused.
pub fn verify_nested_consistency(bh: &NestedHilbertFunctions) -> Result<NestedReport> {
    if let Some((i, j)) = bh.consecutive_disagreement() {
        return Err(Error::HypothesisFails(i, j));
    }
    Ok(nested_counts(bh))
}

/// Profile tuples realized by at least one diagram chain with the given
/// sizes, collected by enumerating the chains.
pub fn profiles_of_nested_tuples(sizes: &[u32]) -> BTreeSet<NestedHilbertFunctions> {
    fn extend(
        sizes: &[u32],
        chain: &mut Vec<YoungDiagram>,
        out: &mut BTreeSet<NestedHilbertFunctions>,
    ) {
        match sizes.split_first() {
            None => {
                let parts = chain.iter().map(|d| d.diag_profile(1, 1)).collect();
                out.insert(
                    NestedHilbertFunctions::new(parts).expect("chain sizes decrease weakly"),
                );
            }
            Some((&size, tail)) => {
                let candidates: Vec<YoungDiagram> = crate::diagram::enumerate_partitions(size)
                    .into_iter()
                    .filter(|d| chain.last().is_none_or(|outer| outer.contains_diagram(d)))
                    .collect();
                for d in candidates {
                    chain.push(d);
                    extend(tail, chain, out);
                    chain.pop();
                }
            }
        }
    }
    assert!(
        sizes.windows(2).all(|w| w[0] >= w[1]),
        "chain sizes must decrease weakly"
    );
    let mut out = BTreeSet::new();
    if !sizes.is_empty() {
        extend(sizes, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn hf(s: &str) -> HilbertFunction {
        HilbertFunction::from_str(s).unwrap()
    }

    fn bh(parts: &[&str]) -> NestedHilbertFunctions {
        NestedHilbertFunctions::new(parts.iter().map(|s| hf(s)).collect()).unwrap()
    }

    #[test]
    fn construction_checks_totals() {
        assert!(NestedHilbertFunctions::new(vec![]).is_err());
        assert!(NestedHilbertFunctions::new(vec![hf("1"), hf("1,1")]).is_err());
        assert!(NestedHilbertFunctions::new(vec![hf("1,1"), hf("1")]).is_ok());
    }

    #[test]
    fn e_complement_examples() {
        assert_eq!(bh(&["1,1", "1"]).e_complement(), BTreeSet::from([1]));
        assert_eq!(bh(&["1,1", "1,1"]).e_complement(), BTreeSet::new());
        assert_eq!(bh(&["2,1", "1,1"]).e_complement(), BTreeSet::from([0]));
    }

    #[test]
    fn hypothesis_examples() {
        assert!(bh(&["1,1", "1"]).hypothesis());
        // Disagreements at 2 and 3 sit next to each other.
        assert!(!bh(&["1,1,1,1", "1,1"]).hypothesis());
        assert!(bh(&["1,1", "1,1"]).hypothesis());
    }

    #[test]
    fn interleave_examples() {
        assert_eq!(bh(&["1,1", "1"]).interleave(), hf("1,1,1"));
        assert_eq!(bh(&["2,1"]).interleave(), hf("2,1"));
        assert_eq!(bh(&["", ""]).interleave(), HilbertFunction::zero());
    }

    #[test]
    fn decimate_inverts_interleave() {
        for n in 0..=6 {
            for tuple in profiles_of_nested_tuples(&[n + 1, n]) {
                let h = tuple.interleave();
                assert_eq!(decimate(&h, 2), tuple.parts(), "bH={tuple:?}");
            }
        }
    }

    #[test]
    fn chain_count_examples() {
        assert_eq!(count_nested_fixed_points(&bh(&["1,1", "1"])), 2);
        assert_eq!(count_nested_fixed_points(&bh(&["2", "1"])), 0);
        assert_eq!(count_nested_fixed_points(&bh(&["", ""])), 1);
        // Without a nesting constraint the count is the fiber size.
        assert_eq!(count_nested_fixed_points(&bh(&["1,1,1"])), 2);
    }

    #[test]
    fn consistency_examples() {
        let rep = verify_nested_consistency(&bh(&["1,1", "1"])).unwrap();
        assert!(rep.equal);
        assert_eq!((rep.chain_count, rep.fiber_count), (2, 2));
        let rep = verify_nested_consistency(&bh(&["", ""])).unwrap();
        assert_eq!((rep.chain_count, rep.fiber_count), (1, 1));
        assert!(matches!(
            verify_nested_consistency(&bh(&["1,1,1,1", "1,1"])),
            Err(Error::HypothesisFails(2, 3))
        ));
    }

    #[test]
    fn consecutive_pair_sweep() {
        for n in 0..=6u32 {
            for tuple in profiles_of_nested_tuples(&[n + 1, n]) {
                assert!(tuple.hypothesis(), "bH={tuple:?}");
                let rep = verify_nested_consistency(&tuple).unwrap();
                assert!(
                    rep.equal,
                    "bH={tuple:?} chains={} fiber={}",
                    rep.chain_count, rep.fiber_count
                );
            }
        }
    }

    #[test]
    fn realized_tuples_dominate_pointwise() {
        for n in 0..=6u32 {
            for tuple in profiles_of_nested_tuples(&[n + 1, n]) {
                let [a, b] = tuple.parts() else {
                    unreachable!()
                };
                let len = a.dims().len().max(b.dims().len());
                assert!((0..len).all(|i| a.get(i) >= b.get(i)), "bH={tuple:?}");
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let tuple = bh(&["2,1", "1,1"]);
        let v = tuple.to_json();
        assert_eq!(NestedHilbertFunctions::from_json(&v).unwrap(), tuple);
        assert!(NestedHilbertFunctions::from_json(&json!({})).is_err());
        assert!(NestedHilbertFunctions::from_json(&json!({"parts": [[1], [1, 1]]})).is_err());
    }
}
