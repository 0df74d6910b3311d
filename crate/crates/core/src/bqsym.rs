//! Type-B quasisymmetric functions.
//!
//! Bases are indexed by pseudo-compositions `(α_1, …, α_k)` with `α_1 ≥ 0`
//! and later parts positive, identified with subsets of `[0, n-1]` through
//! their proper prefix sums. Products are computed by realizing sums as
//! polynomials in `x_0, …, x_m` and reading the monomial expansion back off.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{to_fundamental, Basis, FormalSum};
use crate::perm::{DescentSet, SignedPermutation};
use crate::weak_order::{descent_class_max, WeakOrder};

/// `(α_1, …, α_k)` with `α_1 ≥ 0` and `α_i > 0` for `i ≥ 2`; the empty
/// sequence is the unique pseudo-composition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PseudoComposition {
    parts: Vec<usize>,
}

impl PseudoComposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() == 1 && parts[0] == 0 {
            return Err(Error::InvalidComposition(
                "the composition of 0 is written ()".to_string(),
            ));
        }
        if let Some(k) = parts.iter().skip(1).position(|&a| a == 0) {
            return Err(Error::InvalidComposition(format!(
                "part {} is zero; only the first part may vanish",
                k + 2
            )));
        }
        Ok(PseudoComposition { parts })
    }

    pub fn empty() -> Self {
        PseudoComposition { parts: Vec::new() }
    }

    pub fn from_subset(set: &DescentSet) -> Self {
        let n = set.ambient();
        if n == 0 {
            return Self::empty();
        }
        let mut parts = Vec::new();
        let mut prev = 0;
        for d in set.elements() {
            parts.push(d - prev);
            prev = d;
        }
        parts.push(n - prev);
        PseudoComposition { parts }
    }

    /// `D(α)`, the proper prefix sums.
    pub fn to_subset(&self) -> DescentSet {
        let n = self.size();
        let mut acc = 0;
        let elements: Vec<usize> = self.parts[..self.parts.len().saturating_sub(1)]
            .iter()
            .map(|&a| {
                acc += a;
                acc
            })
            .collect();
        DescentSet::from_elements(n, elements).expect("prefix sums lie in [0, n-1]")
    }

    /// All pseudo-compositions of `n`, ordered by their subset bitmask.
    pub fn all(n: usize) -> Vec<PseudoComposition> {
        DescentSet::all(n).map(|s| Self::from_subset(&s)).collect()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Refinement order, i.e. inclusion of prefix-sum sets.
    pub fn refines_to(&self, other: &PseudoComposition) -> bool {
        self.size() == other.size() && self.to_subset().is_subset(&other.to_subset())
    }
}

impl Ord for PseudoComposition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for PseudoComposition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PseudoComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

/// Accepts `(0,1,2)` or the subset form `{0,1}@3`.
impl FromStr for PseudoComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains('@') {
            return Ok(Self::from_subset(&t.parse()?));
        }
        let body = t
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(t);
        let parts = body
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<usize>().map_err(|_| Error::Parse {
                    input: s.to_string(),
                    reason: format!("{x:?} is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

// ---------------------------------------------------------------------------
// Sums

/// An integer combination of `M_α` or `F_α`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BQFormalSum {
    basis: Basis,
    terms: BTreeMap<PseudoComposition, BigInt>,
}

impl BQFormalSum {
    pub fn zero(basis: Basis) -> Self {
        BQFormalSum {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, alpha: PseudoComposition) -> Self {
        let mut s = Self::zero(basis);
        s.add_term(alpha, BigInt::one());
        s
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add_term(&mut self, alpha: PseudoComposition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(alpha.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn coeff(&self, alpha: &PseudoComposition) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PseudoComposition, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_grade(&self) -> usize {
        self.terms.keys().map(|a| a.size()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(a, c)| {
                json!({
                    "composition": a.parts(),
                    "coeff": Value::Number(c.to_string().parse().expect("integer")),
                })
            })
            .collect();
        json!({"basis": self.basis.to_string(), "terms": terms})
    }
}

impl fmt::Display for BQFormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}{a}", self.basis)?;
        }
        Ok(())
    }
}

/// `F_α = Σ_{α ≤ β} M_β`.
pub fn bq_to_monomial(x: &BQFormalSum) -> BQFormalSum {
    if x.basis == Basis::M {
        return x.clone();
    }
    let mut out = BQFormalSum::zero(Basis::M);
    for (alpha, c) in x.terms() {
        let d = alpha.to_subset();
        for beta in DescentSet::all(alpha.size()) {
            if d.is_subset(&beta) {
                out.add_term(PseudoComposition::from_subset(&beta), c.clone());
            }
        }
    }
    out
}

/// `M_α = Σ_{α ≤ β} (-1)^{ℓ(β) - ℓ(α)} F_β`, with `ℓ` the number of parts.
pub fn bq_to_fundamental(x: &BQFormalSum) -> BQFormalSum {
    if x.basis == Basis::F {
        return x.clone();
    }
    let mut out = BQFormalSum::zero(Basis::F);
    for (alpha, c) in x.terms() {
        let d = alpha.to_subset();
        for beta in DescentSet::all(alpha.size()) {
            if d.is_subset(&beta) {
                let b = PseudoComposition::from_subset(&beta);
                let sign = if (b.length() - alpha.length()) % 2 == 0 { 1 } else { -1 };
                out.add_term(b, c * BigInt::from(sign));
            }
        }
    }
    out
}

pub fn bq_convert(x: &BQFormalSum, to: Basis) -> BQFormalSum {
    match to {
        Basis::M => bq_to_monomial(x),
        Basis::F => bq_to_fundamental(x),
    }
}

// ---------------------------------------------------------------------------
// Polynomial realization

/// A polynomial in `x_0, …, x_m` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<u8>, BigInt>,
}

impl TruncatedPolynomial {
    /// The zero polynomial in `x_0, …, x_m`.
    pub fn zero(m: usize) -> Self {
        TruncatedPolynomial {
            vars: m + 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.vars - 1
    }

    pub fn add_monomial(&mut self, exponents: Vec<u8>, c: BigInt) {
        debug_assert_eq!(exponents.len(), self.vars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponents.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn coeff(&self, exponents: &[u8]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_monomial(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_monomial(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "polynomials over different variable sets");
        let mut out = Self::zero(self.width());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_monomial(e, c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn realize_monomial(alpha: &PseudoComposition, m: usize, c: &BigInt, out: &mut TruncatedPolynomial) {
    if alpha.length() == 0 {
        out.add_monomial(vec![0; m + 1], c.clone());
        return;
    }
    let parts = alpha.parts();
    let rest = &parts[1..];
    // choose 0 < i_2 < … < i_k ≤ m
    fn go(
        rest: &[usize],
        next: usize,
        m: usize,
        exps: &mut Vec<u8>,
        c: &BigInt,
        out: &mut TruncatedPolynomial,
    ) {
        let Some((&a, tail)) = rest.split_first() else {
            out.add_monomial(exps.clone(), c.clone());
            return;
        };
        for i in next..=m {
            if m - i < tail.len() {
                break;
            }
            exps[i] += a as u8;
            go(tail, i + 1, m, exps, c, out);
            exps[i] -= a as u8;
        }
    }
    let mut exps = vec![0u8; m + 1];
    exps[0] = parts[0] as u8;
    go(rest, 1, m, &mut exps, c, out);
}

fn realize_fundamental(
    alpha: &PseudoComposition,
    m: usize,
    c: &BigInt,
    out: &mut TruncatedPolynomial,
) {
    let n = alpha.size();
    let d = alpha.to_subset();
    // 0 ≤ i_1 ≤ … ≤ i_n ≤ m with i_j < i_{j+1} for j ∈ D, and i_0 = 0
    fn go(
        j: usize,
        prev: usize,
        n: usize,
        m: usize,
        d: &DescentSet,
        exps: &mut Vec<u8>,
        c: &BigInt,
        out: &mut TruncatedPolynomial,
    ) {
        if j == n {
            out.add_monomial(exps.clone(), c.clone());
            return;
        }
        let lo = if d.contains(j) { prev + 1 } else { prev };
        for i in lo..=m {
            exps[i] += 1;
            go(j + 1, i, n, m, d, exps, c, out);
            exps[i] -= 1;
        }
    }
    let mut exps = vec![0u8; m + 1];
    go(0, 0, n, m, &d, &mut exps, c, out);
}

/// The polynomial in `x_0, …, x_m` obtained by truncating every basis element.
pub fn realize(x: &BQFormalSum, m: usize) -> Result<TruncatedPolynomial> {
    let grade = x.max_grade();
    if m < grade {
        return Err(Error::WidthTooSmall { width: m, grade });
    }
    let mut out = TruncatedPolynomial::zero(m);
    for (alpha, c) in x.terms() {
        match x.basis {
            Basis::M => realize_monomial(alpha, m, c, &mut out),
            Basis::F => realize_fundamental(alpha, m, c, &mut out),
        }
    }
    Ok(out)
}

/// Reads the `M`-expansion off a realized polynomial: the coefficient of
/// `M_β` is that of its packed monomial `x_0^{β_1} x_1^{β_2} ⋯`. Fails if the
/// expansion does not reproduce the polynomial.
pub fn extract_monomial(poly: &TruncatedPolynomial, max_grade: usize) -> Result<BQFormalSum> {
    let m = poly.width();
    if m < max_grade {
        return Err(Error::WidthTooSmall {
            width: m,
            grade: max_grade,
        });
    }
    let mut out = BQFormalSum::zero(Basis::M);
    for n in 0..=max_grade {
        for beta in PseudoComposition::all(n) {
            let mut exps = vec![0u8; m + 1];
            for (i, &a) in beta.parts().iter().enumerate() {
                exps[i] = a as u8;
            }
            out.add_term(beta, poly.coeff(&exps));
        }
    }
    if !poly.sub(&realize(&out, m)?).is_zero() {
        return Err(Error::NotQuasisymmetric);
    }
    Ok(out)
}

/// Product at an explicit width `m`; the result is in the basis of `x`.
pub fn bq_product_at(x: &BQFormalSum, y: &BQFormalSum, m: usize) -> Result<BQFormalSum> {
    let grade = x.max_grade() + y.max_grade();
    if m < grade {
        return Err(Error::WidthTooSmall { width: m, grade });
    }
    let prod = realize(x, m)?.mul(&realize(y, m)?);
    Ok(bq_convert(&extract_monomial(&prod, grade)?, x.basis))
}

/// Product at width `2n + 1`, `n` the total grade.
pub fn bq_product(x: &BQFormalSum, y: &BQFormalSum) -> Result<BQFormalSum> {
    let grade = x.max_grade() + y.max_grade();
    bq_product_at(x, y, 2 * grade + 1)
}

// ---------------------------------------------------------------------------
// The descent map

/// `F_u ↦ F_{Des(u)}`, extended linearly; `M`-sums are first rewritten in `F`.
pub fn descent_map(x: &FormalSum, order: &WeakOrder) -> Result<BQFormalSum> {
    let fx = match x.basis() {
        Basis::F => x.clone(),
        Basis::M => to_fundamental(x, order)?,
    };
    let mut out = BQFormalSum::zero(Basis::F);
    for (u, c) in fx.terms() {
        out.add_term(PseudoComposition::from_subset(&u.descents()), c.clone());
    }
    Ok(out)
}

/// `M_{Des(w)}` if `w = ζ_{Des(w)}`, and zero otherwise.
pub fn monomial_descent_formula(w: &SignedPermutation) -> BQFormalSum {
    let des = w.descents();
    if descent_class_max(&des) == *w {
        BQFormalSum::basis_element(Basis::M, PseudoComposition::from_subset(&des))
    } else {
        BQFormalSum::zero(Basis::M)
    }
}

/// Möbius identity for the Galois connection `(Des, ζ)`: for every `w ∈ B_n`
/// and `I ⊆ [0, n-1]`,
/// `Σ_{w ≤ x, Des(x) = I} μ(w, x) = Σ_{J ⊆ I, ζ_J = w} (-1)^{|I \ J|}`.
pub fn rota_check(n: usize, order: &WeakOrder) -> Result<bool> {
    order.check_rank(n)?;
    let subsets: Vec<DescentSet> = DescentSet::all(n).collect();
    let zetas: Vec<SignedPermutation> = subsets.iter().map(descent_class_max).collect();
    for w in SignedPermutation::all(n) {
        let row = order.mobius_row(&w)?;
        for set in &subsets {
            let left: i64 = row
                .iter()
                .filter(|(x, _)| x.descents() == *set)
                .map(|(_, m)| *m)
                .sum();
            let right: i64 = subsets
                .iter()
                .zip(&zetas)
                .filter(|(j, z)| j.is_subset(set) && **z == w)
                .map(|(j, _)| if (set.len() - j.len()) % 2 == 0 { 1 } else { -1 })
                .sum();
            if left != right {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
