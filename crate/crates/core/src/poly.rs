//! Exact bivariate polynomials and truncated power series.
//!
//! `MPoly` is a polynomial in a main variable (printed `L` or `q` depending
//! on context) and a series variable `t`, with arbitrary-precision integer
//! coefficients. Terms are kept in a map ordered by `(t-degree, main-degree)`,
//! which fixes the serialization order; zero coefficients are never stored.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    /// Keyed by `(e_t, e_main)` so iteration is canonical.
    terms: BTreeMap<(u32, u32), BigInt>,
}

/// A single term `coeff * main^e_main * t^e_t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub coeff: BigInt,
    pub e_main: u32,
    pub e_t: u32,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, e_main: u32, e_t: u32) -> Self {
        Monomial {
            coeff: coeff.into(),
            e_main,
            e_t,
        }
    }
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e_main: u32, e_t: u32) -> Self {
        let mut p = MPoly::zero();
        p.add_term(e_main, e_t, c.into());
        p
    }

    /// `main^e`.
    pub fn main_pow(e: u32) -> Self {
        MPoly::monomial(1, e, 0)
    }

    /// `1 + main + ... + main^(w-1)`; the zero polynomial for `w = 0`.
    pub fn main_geometric(w: u32) -> Self {
        let mut p = MPoly::zero();
        for e in 0..w {
            p.add_term(e, 0, BigInt::one());
        }
        p
    }

    /// `1 - main^w`.
    pub fn one_minus_main_pow(w: u32) -> Self {
        let mut p = MPoly::one();
        p.add_term(w, 0, -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e_main: u32, e_t: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((e_t, e_main)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(e_t, e_main));
        }
    }

    pub fn coeff(&self, e_main: u32, e_t: u32) -> BigInt {
        self.terms
            .get(&(e_t, e_main))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Terms in canonical `(e_t, e_main)` order as `(e_main, e_t, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.terms.iter().map(|(&(et, em), c)| (em, et, c))
    }

    pub fn max_t_degree(&self) -> u32 {
        self.terms.keys().map(|&(et, _)| et).max().unwrap_or(0)
    }

    pub fn max_main_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, em)| em).max().unwrap_or(0)
    }

    pub fn eval(&self, main: &BigInt, t: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (&(et, em), c) in &self.terms {
            total += c * main.pow(em) * t.pow(et);
        }
        total
    }

    /// Drops every term of t-degree above `order`.
    pub fn truncate_t(&self, order: u32) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(&(et, _), _)| et <= order)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        MPoly { terms }
    }

    /// Substitutes `main -> main, t -> (main*t)^-1` and multiplies by
    /// `(main*t)^shift`. Requires `shift >= max t-degree` so the result stays
    /// polynomial: a term `c*main^a*t^b` maps to `c*main^(a+shift-b)*t^(shift-b)`.
    pub fn substitute_lt_inverse(&self, shift: u32) -> Result<MPoly> {
        let deg = self.max_t_degree();
        if !self.is_zero() && deg > shift {
            return Err(Error::ShiftTooSmall(shift, deg));
        }
        let mut out = MPoly::zero();
        for (&(et, em), c) in &self.terms {
            out.add_term(em + shift - et, shift - et, c.clone());
        }
        Ok(out)
    }

    /// Exact division by a divisor free of `t`. Errors if the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Result<MPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if divisor.terms.keys().any(|&(et, _)| et != 0) {
            return Err(Error::Invariant("divisor must not involve t"));
        }
        let (&(_, lead_deg), lead_coeff) = divisor
            .terms
            .iter()
            .next_back()
            .expect("divisor is nonzero");
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        while !rem.is_zero() {
            let top = rem.max_main_degree();
            if top < lead_deg {
                return Err(Error::InexactDivision);
            }
            let group: Vec<(u32, BigInt)> = rem
                .terms
                .iter()
                .filter(|(&(_, em), _)| em == top)
                .map(|(&(et, _), c)| (et, c.clone()))
                .collect();
            for (et, c) in group {
                let (q, r) = c.div_rem(lead_coeff);
                if !r.is_zero() {
                    return Err(Error::InexactDivision);
                }
                quo.add_term(top - lead_deg, et, q.clone());
                // Cancel the contribution of this quotient term.
                for (&(det, dem), dc) in &divisor.terms {
                    rem.add_term(top - lead_deg + dem, et + det, -(&q * dc));
                }
            }
            debug_assert!(rem.is_zero() || rem.max_main_degree() < top);
        }
        Ok(quo)
    }

    /// First coefficient (in canonical term order) where the two polynomials
    /// disagree, with both values.
    pub fn first_difference(&self, other: &MPoly) -> Option<(u32, u32, BigInt, BigInt)> {
        let mut keys: Vec<(u32, u32)> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        for (et, em) in keys {
            let a = self.coeff(em, et);
            let b = other.coeff(em, et);
            if a != b {
                return Some((em, et, a, b));
            }
        }
        None
    }

    /// Renders with the given variable names, e.g. `1 + 3*L + L^2`.
    pub fn to_text(&self, main: &str, t: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (&(et, em), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut pieces = Vec::new();
            if !mag.is_one() || (em == 0 && et == 0) {
                pieces.push(mag.to_string());
            }
            if em > 0 {
                pieces.push(if em == 1 {
                    main.to_string()
                } else {
                    format!("{main}^{em}")
                });
            }
            if et > 0 {
                pieces.push(if et == 1 {
                    t.to_string()
                } else {
                    format!("{t}^{et}")
                });
            }
            out.push_str(&pieces.join("*"));
        }
        out
    }

    pub fn to_json(&self, main: &str) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&(et, em), c)| json!({ "e": [em, et], "c": c.to_string() }))
            .collect();
        json!({ "vars": [main, "t"], "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<MPoly> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial JSON needs a terms array".into()))?;
        let mut p = MPoly::zero();
        for t in terms {
            let e = t
                .get("e")
                .and_then(Value::as_array)
                .filter(|e| e.len() == 2)
                .ok_or_else(|| Error::Parse("term needs e: [e_main, e_t]".into()))?;
            let em = e[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad exponent".into()))? as u32;
            let et = e[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad exponent".into()))? as u32;
            let c = t
                .get("c")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term needs a decimal string c".into()))?;
            let c: BigInt = c
                .parse()
                .map_err(|e| Error::Parse(format!("bad coefficient: {e}")))?;
            p.add_term(em, et, c);
        }
        Ok(p)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("L", "t"))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (&(et, em), c) in &rhs.terms {
            out.add_term(em, et, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (&(et, em), c) in &rhs.terms {
            out.add_term(em, et, -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        &MPoly::zero() - self
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (&(et1, em1), c1) in &self.terms {
            for (&(et2, em2), c2) in &rhs.terms {
                out.add_term(em1 + em2, et1 + et2, c1 * c2);
            }
        }
        out
    }
}

static GAUSSIAN_CACHE: OnceLock<Mutex<HashMap<(u32, u32), MPoly>>> = OnceLock::new();

/// Gaussian binomial `G(m, n)` in the main variable: the generating
/// polynomial of partitions inside an `m x n` box, computed by the Pascal
/// recurrence `G(m, n) = G(m-1, n) + q^m G(m, n-1)`.
pub fn gaussian_binomial(m: u32, n: u32) -> MPoly {
    let cache = GAUSSIAN_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = cache.lock().expect("gaussian cache poisoned");
    if let Some(p) = cache.get(&(m, n)) {
        return p.clone();
    }
    let mut table: Vec<Vec<MPoly>> = vec![vec![MPoly::one(); (n + 1) as usize]; (m + 1) as usize];
    for a in 1..=m as usize {
        for b in 1..=n as usize {
            let step = &MPoly::main_pow(a as u32) * &table[a][b - 1];
            table[a][b] = &table[a - 1][b] + &step;
        }
    }
    for (a, row) in table.into_iter().enumerate() {
        for (b, p) in row.into_iter().enumerate() {
            cache.entry((a as u32, b as u32)).or_insert(p);
        }
    }
    cache[&(m, n)].clone()
}

/// A polynomial known only up to and including t-degree `t_order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    poly: MPoly,
    t_order: u32,
}

impl TruncatedSeries {
    pub fn new(poly: MPoly, t_order: u32) -> Self {
        TruncatedSeries {
            poly: poly.truncate_t(t_order),
            t_order,
        }
    }

    pub fn one(t_order: u32) -> Self {
        TruncatedSeries {
            poly: MPoly::one(),
            t_order,
        }
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn t_order(&self) -> u32 {
        self.t_order
    }

    pub fn mul_poly(&self, rhs: &MPoly) -> TruncatedSeries {
        TruncatedSeries::new(&self.poly * rhs, self.t_order)
    }

    /// Multiplies by `1/(1 - m)` for a monomial `m` of positive t-degree,
    /// i.e. by the geometric series in `m` up to the truncation order.
    pub fn mul_inv_one_minus(&self, m: &Monomial) -> Result<TruncatedSeries> {
        if m.e_t == 0 {
            return Err(Error::FactorConstantInT);
        }
        let mut geometric = MPoly::zero();
        let mut coeff = BigInt::one();
        let mut r = 0;
        while r * m.e_t <= self.t_order {
            geometric.add_term(r * m.e_main, r * m.e_t, coeff.clone());
            coeff *= &m.coeff;
            r += 1;
        }
        Ok(self.mul_poly(&geometric))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.poly, self.t_order + 1)
    }
}

/// `prod 1/(1 - m)` over the given monomials, truncated at `t_order`.
/// Factors of t-degree above the order are no-ops.
pub fn inv_one_minus_product(factors: &[Monomial], t_order: u32) -> Result<TruncatedSeries> {
    let mut series = TruncatedSeries::one(t_order);
    for m in factors {
        series = series.mul_inv_one_minus(m)?;
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::partitions_in_box;
    use proptest::prelude::*;

    fn q() -> MPoly {
        MPoly::main_pow(1)
    }

    fn t() -> MPoly {
        MPoly::monomial(1, 0, 1)
    }

    #[test]
    fn basic_arithmetic() {
        let p = &(&q() + &MPoly::one()) * &(&q() - &MPoly::one());
        assert_eq!(p, &MPoly::main_pow(2) - &MPoly::one());
        assert!((&p - &p).is_zero());
        assert_eq!(MPoly::zero().to_string(), "0");
    }

    #[test]
    fn display_format() {
        let mut p = MPoly::one();
        p.add_term(1, 0, 3.into());
        p.add_term(2, 0, 1.into());
        assert_eq!(p.to_string(), "1 + 3*L + L^2");
        assert_eq!(p.to_text("q", "t"), "1 + 3*q + q^2");
        let m = MPoly::monomial(-2, 1, 2);
        assert_eq!(m.to_string(), "-2*L*t^2");
        let s = &MPoly::one() - &MPoly::monomial(1, 0, 1);
        assert_eq!(s.to_string(), "1 - t");
    }

    #[test]
    fn json_roundtrip() {
        let mut p = MPoly::one();
        p.add_term(1, 0, 3.into());
        p.add_term(2, 3, (-7).into());
        let v = p.to_json("L");
        assert_eq!(v["vars"], json!(["L", "t"]));
        assert_eq!(MPoly::from_json(&v).unwrap(), p);
    }

    #[test]
    fn eval_points() {
        let mut p = MPoly::one();
        p.add_term(1, 1, 2.into());
        let val = p.eval(&BigInt::from(3), &BigInt::from(5));
        assert_eq!(val, BigInt::from(31));
    }

    #[test]
    fn gaussian_small_values() {
        assert_eq!(gaussian_binomial(0, 4), MPoly::one());
        assert_eq!(gaussian_binomial(4, 0), MPoly::one());
        assert_eq!(gaussian_binomial(1, 1), &MPoly::one() + &q());
        // G(2,2) = 1 + q + 2q^2 + q^3 + q^4.
        let mut want = MPoly::one();
        want.add_term(1, 0, 1.into());
        want.add_term(2, 0, 2.into());
        want.add_term(3, 0, 1.into());
        want.add_term(4, 0, 1.into());
        assert_eq!(gaussian_binomial(2, 2), want);
    }

    #[test]
    fn gaussian_against_box_partitions() {
        // Independent oracle: sum q^|D| over diagrams in the box.
        for m in 0..=5 {
            for n in 0..=5 {
                let mut oracle = MPoly::zero();
                for d in partitions_in_box(m, n) {
                    oracle.add_term(d.size(), 0, 1.into());
                }
                assert_eq!(gaussian_binomial(m, n), oracle, "G({m},{n})");
            }
        }
    }

    #[test]
    fn gaussian_product_form() {
        // G(m,n) * prod_{i<=m}(1-q^i) * prod_{i<=n}(1-q^i) = prod_{i<=m+n}(1-q^i).
        let prod = |hi: u32| {
            let mut p = MPoly::one();
            for i in 1..=hi {
                p = &p * &MPoly::one_minus_main_pow(i);
            }
            p
        };
        for m in 0..=6 {
            for n in 0..=6 {
                let lhs = &(&gaussian_binomial(m, n) * &prod(m)) * &prod(n);
                assert_eq!(lhs, prod(m + n), "G({m},{n})");
            }
        }
    }

    #[test]
    fn gaussian_symmetry_pascal_specialization() {
        let binom = |a: u64, b: u64| -> BigInt {
            let mut v = BigInt::one();
            for i in 0..b {
                v = v * BigInt::from(a - i) / BigInt::from(i + 1);
            }
            v
        };
        for m in 0..=8u32 {
            for n in 0..=8u32 {
                let g = gaussian_binomial(m, n);
                assert_eq!(g, gaussian_binomial(n, m));
                assert_eq!(
                    g.eval(&BigInt::one(), &BigInt::one()),
                    binom((m + n) as u64, m as u64)
                );
                if m > 0 && n > 0 {
                    let rhs = &gaussian_binomial(m - 1, n)
                        + &(&MPoly::main_pow(m) * &gaussian_binomial(m, n - 1));
                    assert_eq!(g, rhs);
                }
            }
        }
    }

    #[test]
    fn division() {
        // (1-q^6) / (1+q+q^2) = 1 - q^3... times (1-q)? Check a clean case:
        let a = MPoly::one_minus_main_pow(4);
        let b = MPoly::one_minus_main_pow(2);
        assert_eq!(
            a.div_exact(&b).unwrap(),
            &MPoly::one() + &MPoly::main_pow(2)
        );
        assert_eq!(
            MPoly::one_minus_main_pow(3).div_exact(&b),
            Err(Error::InexactDivision)
        );
        assert_eq!(a.div_exact(&MPoly::zero()), Err(Error::DivisionByZero));
        // (1-q^w) = (1-q) * (1 + ... + q^(w-1)).
        for w in 1..=6 {
            let lhs = MPoly::one_minus_main_pow(w);
            let rhs = &MPoly::one_minus_main_pow(1) * &MPoly::main_geometric(w);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn substitution_examples() {
        // C = q + t, shift 1: (Lt)*(L + (Lt)^-1) = L^2*t + 1.
        let c = &q() + &t();
        let got = c.substitute_lt_inverse(1).unwrap();
        let mut want = MPoly::one();
        want.add_term(2, 1, 1.into());
        assert_eq!(got, want);
        assert_eq!(MPoly::one().substitute_lt_inverse(0).unwrap(), MPoly::one());
        assert_eq!(
            t().substitute_lt_inverse(0),
            Err(Error::ShiftTooSmall(0, 1))
        );
    }

    #[test]
    fn series_products() {
        // 1/(1-t) mod t^3 = 1 + t + t^2.
        let s = inv_one_minus_product(&[Monomial::new(1, 0, 1)], 3).unwrap();
        let mut want = MPoly::one();
        for e in 1..=3 {
            want.add_term(0, e, 1.into());
        }
        assert_eq!(s.poly(), &want);

        // Partitions with parts <= 2: 1, 1, 2, 2.
        let s =
            inv_one_minus_product(&[Monomial::new(1, 0, 1), Monomial::new(1, 0, 2)], 3).unwrap();
        let mut want = MPoly::one();
        want.add_term(0, 1, 1.into());
        want.add_term(0, 2, 2.into());
        want.add_term(0, 3, 2.into());
        assert_eq!(s.poly(), &want);

        // 1/(1 - L t^2) mod t^4 = 1 + L t^2 + L^2 t^4.
        let s = inv_one_minus_product(&[Monomial::new(1, 1, 2)], 4).unwrap();
        let mut want = MPoly::one();
        want.add_term(1, 2, 1.into());
        want.add_term(2, 4, 1.into());
        assert_eq!(s.poly(), &want);

        // Factors beyond the order contribute nothing.
        let s = inv_one_minus_product(&[Monomial::new(5, 2, 9)], 4).unwrap();
        assert_eq!(s.poly(), &MPoly::one());

        assert_eq!(
            inv_one_minus_product(&[Monomial::new(1, 1, 0)], 4),
            Err(Error::FactorConstantInT)
        );
    }

    #[test]
    fn series_inversion_property() {
        // (1 - m) * (1/(1-m)) == 1 up to the order.
        for (c, em, et) in [(1i64, 0u32, 1u32), (-2, 1, 1), (3, 2, 2)] {
            let m = Monomial::new(c, em, et);
            let inv = inv_one_minus_product(std::slice::from_ref(&m), 9).unwrap();
            let one_minus = &MPoly::one() - &MPoly::monomial(c, em, et);
            let prod = inv.mul_poly(&one_minus);
            assert_eq!(prod.poly(), &MPoly::one());
        }
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 0..6).prop_map(|terms| {
            let mut p = MPoly::zero();
            for ((em, et), c) in terms {
                p.add_term(em, et, c.into());
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn multiply_then_divide(a in arb_poly(), w in 1u32..6) {
            let d = MPoly::one_minus_main_pow(w);
            let a = a.truncate_t(0);
            prop_assert_eq!((&a * &d).div_exact(&d).unwrap(), a);
        }

        #[test]
        fn eval_is_ring_hom(a in arb_poly(), b in arb_poly(), x in -3i64..=3, y in -3i64..=3) {
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            prop_assert_eq!((&a * &b).eval(&x, &y), a.eval(&x, &y) * b.eval(&x, &y));
            prop_assert_eq!((&a + &b).eval(&x, &y), a.eval(&x, &y) + b.eval(&x, &y));
        }
    }
}
