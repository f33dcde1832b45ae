//! Verified identities tying the component classes, the hook code and the
//! generating series together, each checked by comparing two independently
//! computed polynomials.

use crate::components::{
    class_bruteforce, class_closed_form, components_for, derive, is_realizable,
};
use crate::diagram::{enumerate_partitions, HilbertFunction};
use crate::error::{Error, Result};
use crate::hookcode::enumerate_sh;
use crate::poly::{gaussian_binomial, inv_one_minus_product, MPoly, Monomial};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Outcome of comparing two polynomial computations of the same quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub equal: bool,
    pub lhs: MPoly,
    pub rhs: MPoly,
    /// Exponents and coefficients at the first differing monomial.
    pub first_diff: Option<(u32, u32, BigInt, BigInt)>,
}

impl VerifyReport {
    pub fn compare(lhs: MPoly, rhs: MPoly) -> Self {
        let first_diff = lhs.first_difference(&rhs);
        VerifyReport {
            equal: first_diff.is_none(),
            lhs,
            rhs,
            first_diff,
        }
    }

    pub fn to_json(&self, main: &str) -> Value {
        let diff = self.first_diff.as_ref().map(|(em, et, cl, cr)| {
            json!({
                "e": [em, et],
                "lhs_coeff": cl.to_string(),
                "rhs_coeff": cr.to_string(),
            })
        });
        json!({
            "equal": self.equal,
            "lhs": self.lhs.to_json(main),
            "rhs": self.rhs.to_json(main),
            "first_diff": diff,
        })
    }
}

/// Profile admissibility by local inequalities: a saturated prefix up to the
/// last saturated index, and from there on each step down at most one level
/// within its residue track. Equivalent to realizability by a diagram, which
/// a test checks against the enumeration-based definition.
pub fn is_good(h: &HilbertFunction, k: u32) -> bool {
    assert!(k >= 1, "weights are (1, k) with k >= 1");
    if h.is_zero() {
        return true;
    }
    let ki = k as i64;
    let sup = h.support_end();
    let d = |i: i64| -> i64 {
        if i < 0 {
            0
        } else {
            h.get(i as usize) as i64
        }
    };
    let eta = match (0..=sup).filter(|&i| d(i) == i / ki + 1).max() {
        Some(eta) => eta,
        None => return false,
    };
    if (0..=eta).any(|i| d(i) != i / ki + 1) {
        return false;
    }
    for i in eta..=sup {
        let tau = i64::from((i + 1) % ki == 0);
        if d(i) - d(i + 1) + tau < 0 {
            return false;
        }
        if d(i + 1) > d(i + 1 - ki) {
            return false;
        }
    }
    true
}

/// The exponent correction produced by flattening a component class into the
/// total space series.
pub fn chi(h: &HilbertFunction, k: u32) -> Result<i64> {
    if !is_good(h, k) {
        return Err(Error::NotRealizable(h.to_string(), k));
    }
    Ok(derive(h, k).chi_sum())
}

/// A profile paired with a slope, checked once at construction against the
/// admissibility inequalities so downstream calls cannot fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSequence {
    h: HilbertFunction,
    k: u32,
}

impl GoodSequence {
    /// Rejects profiles that no ideal realizes for the given slope.
    pub fn new(h: HilbertFunction, k: u32) -> Result<Self> {
        if !is_good(&h, k) {
            return Err(Error::NotRealizable(h.to_string(), k));
        }
        Ok(Self { h, k })
    }

    pub fn profile(&self) -> &HilbertFunction {
        &self.h
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Total of the profile values.
    pub fn total(&self) -> u32 {
        self.h.total()
    }

    /// See [`chi`]; construction has already ruled out failure.
    pub fn chi(&self) -> i64 {
        derive(&self.h, self.k).chi_sum()
    }

    /// Closed-form class in `L`; construction has already ruled out failure.
    pub fn class(&self) -> MPoly {
        class_closed_form(&self.h, self.k).expect("class is defined on validated profiles")
    }
}

/// The class written with the prefactor `(1 - q) / (1 - q^{w})` in front of
/// a product of box counts, the right-hand side of the combinatorial
/// identity behind the closed form.
pub fn class_prefactor_form(h: &HilbertFunction, k: u32) -> Result<MPoly> {
    if !is_good(h, k) {
        return Err(Error::NotRealizable(h.to_string(), k));
    }
    let ctx = derive(h, k);
    let ki = k as i64;
    let (eta, theta) = (ctx.eta(), ctx.theta());
    let mut prod = MPoly::one();
    for i in eta + 1..=(h.support_end() + ki).max(eta + 1) {
        let m = ctx.e(i);
        let n = ctx.d(i - ki) - ctx.d(i);
        assert!(m >= 0 && n >= 0, "good profiles have nonnegative box sides");
        prod = &prod * &gaussian_binomial(m as u32, n as u32);
    }
    let w = ctx.w(eta - theta + 1);
    assert!(w >= 1, "prefactor width is positive on good profiles");
    prod.div_exact(&MPoly::main_geometric(w as u32))
}

/// Weight generating polynomial of the box-bounded sequence set, by
/// enumeration.
pub fn sh_weight_sum(h: &HilbertFunction, k: u32) -> Result<MPoly> {
    let mut sum = MPoly::zero();
    for p in enumerate_sh(h, k)? {
        sum.add_term(p.weight(), 0, BigInt::from(1));
    }
    Ok(sum)
}

/// Product form of the sequence weight sum over the rectangles between the
/// first free index and the horizon.
pub fn main_identity_rhs(h: &HilbertFunction, k: u32) -> Result<MPoly> {
    if !is_realizable(h, k) {
        return Err(Error::NotRealizable(h.to_string(), k));
    }
    let ctx = derive(h, k);
    let ki = k as i64;
    let start = ctx.eta() - ctx.theta() + 1;
    let mut prod = MPoly::one();
    for i in start..=ctx.sigma() + ki {
        let (f, w) = (ctx.f(i), ctx.w(i));
        assert!(f >= 0 && w >= 1, "box sides past the first free index");
        prod = &prod * &gaussian_binomial(f as u32, w as u32 - 1);
    }
    let w0 = ctx.w(start);
    assert!(w0 >= 1);
    prod.div_exact(&MPoly::main_geometric(w0 as u32))
}

pub fn verify_main_identity(h: &HilbertFunction, k: u32) -> Result<VerifyReport> {
    Ok(VerifyReport::compare(
        sh_weight_sum(h, k)?,
        main_identity_rhs(h, k)?,
    ))
}

fn check_p_range(ctx_psi: i64, k: u32, p: i64) -> Result<()> {
    let hi = ctx_psi + k as i64;
    if p < ctx_psi || p >= hi {
        return Err(Error::POutOfRange(p, ctx_psi, hi));
    }
    Ok(())
}

/// Weight sum over the sequences whose last slack index below `psi + k`
/// equals `p`, by enumeration.
pub fn extra_identity_lhs(h: &HilbertFunction, k: u32, p: i64) -> Result<MPoly> {
    let ctx = derive(h, k);
    check_p_range(ctx.psi(), k, p)?;
    let cut = ctx.psi() + k as i64;
    let mut sum = MPoly::zero();
    for seq in enumerate_sh(h, k)? {
        if seq.last_slack_before(cut) == Some(p) {
            sum.add_term(seq.weight(), 0, BigInt::from(1));
        }
    }
    Ok(sum)
}

/// Product form of the same restricted sum: a shift by the full rectangles
/// right of `p`, a defect factor at `p`, and the total sum with one
/// geometric factor removed.
pub fn extra_identity_rhs(h: &HilbertFunction, k: u32, p: i64) -> Result<MPoly> {
    if !is_realizable(h, k) {
        return Err(Error::NotRealizable(h.to_string(), k));
    }
    let ctx = derive(h, k);
    let psi = ctx.psi();
    check_p_range(psi, k, p)?;
    let cut = psi + k as i64;
    let shift: i64 = (p + 1..cut).map(|i| ctx.f(i)).sum();
    assert!(shift >= 0);
    let fp = ctx.f(p);
    assert!(fp >= 0);
    let w_cut = ctx.w(cut);
    assert!(w_cut >= 1, "divisor width is positive on good profiles");
    let total = main_identity_rhs(h, k)?;
    let numer = &(&MPoly::main_pow(shift as u32) * &MPoly::one_minus_main_pow(fp as u32)) * &total;
    numer.div_exact(&MPoly::one_minus_main_pow(w_cut as u32))
}

pub fn verify_extra_identity(h: &HilbertFunction, k: u32, p: i64) -> Result<VerifyReport> {
    Ok(VerifyReport::compare(
        extra_identity_lhs(h, k, p)?,
        extra_identity_rhs(h, k, p)?,
    ))
}

/// Class by fiber enumeration against the closed form.
pub fn verify_class(h: &HilbertFunction, k: u32) -> Result<VerifyReport> {
    Ok(VerifyReport::compare(
        class_bruteforce(h, k),
        class_closed_form(h, k)?,
    ))
}

/// Closed form against the prefactor form.
pub fn verify_class_prefactor(h: &HilbertFunction, k: u32) -> Result<VerifyReport> {
    Ok(VerifyReport::compare(
        class_closed_form(h, k)?,
        class_prefactor_form(h, k)?,
    ))
}

/// Sum of `class * q^chi * t^total` over good profiles with total at most
/// `n_max`, against the partition-like product `prod 1/(1 - q t^i)`.
pub fn verify_good_series(k: u32, n_max: u32) -> Result<VerifyReport> {
    let mut lhs = MPoly::zero();
    for n in 0..=n_max {
        for h in components_for(n, k) {
            let good = GoodSequence::new(h, k)?;
            let chi = good.chi();
            assert!(chi >= 0, "flattening exponent is nonnegative");
            lhs = &lhs + &(&good.class() * &MPoly::monomial(1, chi as u32, n));
        }
    }
    let factors: Vec<Monomial> = (1..=n_max).map(|i| Monomial::new(1, 1, i)).collect();
    let rhs = inv_one_minus_product(&factors, n_max)?;
    Ok(VerifyReport::compare(lhs, rhs.poly().clone()))
}

/// Sum of `class * L^(total + chi) * t^total` over good profiles, against
/// `prod 1/(1 - L^(i+1) t^i)`.
pub fn verify_hilbert_series(k: u32, n_max: u32) -> Result<VerifyReport> {
    let mut lhs = MPoly::zero();
    for n in 0..=n_max {
        for h in components_for(n, k) {
            let good = GoodSequence::new(h, k)?;
            let chi = good.chi();
            assert!(chi >= 0);
            lhs = &lhs + &(&good.class() * &MPoly::monomial(1, n + chi as u32, n));
        }
    }
    let factors: Vec<Monomial> = (1..=n_max).map(|i| Monomial::new(1, i + 1, i)).collect();
    let rhs = inv_one_minus_product(&factors, n_max)?;
    Ok(VerifyReport::compare(lhs, rhs.poly().clone()))
}

/// Diagram sum of `L^(cells with a*l = b*(arm+1)) * t^size` against the
/// guessed product with plain factors away from multiples of `a + b` and one
/// `L`-marked factor on them. A mismatch is a finding, reported through
/// `equal`, not an error.
pub fn verify_conjecture(a: u32, b: u32, n_max: u32) -> Result<VerifyReport> {
    let mut lhs = MPoly::zero();
    for n in 0..=n_max {
        for d in enumerate_partitions(n) {
            let count = d.special_count_ab(a, b)?;
            lhs.add_term(count, n, BigInt::from(1));
        }
    }
    let period = a + b;
    let mut factors: Vec<Monomial> = Vec::new();
    for i in 1..=n_max {
        if i % period != 0 {
            factors.push(Monomial::new(1, 0, i));
        }
    }
    let mut i = period;
    while i <= n_max {
        factors.push(Monomial::new(1, 1, i));
        i += period;
    }
    let rhs = inv_one_minus_product(&factors, n_max)?;
    Ok(VerifyReport::compare(lhs, rhs.poly().clone()))
}
