//! The Hopf algebra of signed permutations in its fundamental (`F`) and
//! monomial (`M`) bases.
//!
//! `F_u·F_v = Σ_{ξ ∈ Sh(p,q)} F_{(u×v)ξ^{-1}}` and
//! `Δ(F_u) = Σ_i F_{sts(u_1…u_i)} ⊗ F_{sts(u_{i+1}…u_p)}`.
//! The monomial basis is defined by Möbius inversion along the weak order,
//! `F_u = Σ_{u ≤ v} M_v`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::embeddings::tau;
use crate::error::{Error, Result};
use crate::perm::{shuffles, Shuffle, SignedPermutation};
use crate::verify::VerifyReport;
use crate::weak_order::WeakOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    F,
    M,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::F => "F",
            Basis::M => "M",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "F" | "f" => Ok(Basis::F),
            "M" | "m" => Ok(Basis::M),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "basis must be F or M".to_string(),
            }),
        }
    }
}

fn expect_basis(found: Basis, expected: Basis) -> Result<()> {
    if found != expected {
        return Err(Error::BasisMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(())
}

fn render_element(basis: Basis, w: &SignedPermutation) -> String {
    if w.size() == 0 {
        "ι".to_string()
    } else {
        format!("{basis}[{w}]")
    }
}

fn render_terms<'a>(items: impl Iterator<Item = (String, &'a BigInt)>) -> String {
    let mut out = String::new();
    for (k, (label, c)) in items.enumerate() {
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn coeff_json(c: &BigInt) -> Value {
    Value::Number(c.to_string().parse().expect("integers are valid JSON numbers"))
}

fn coeff_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| Error::Parse {
            input: n.to_string(),
            reason: "coefficient must be an integer".to_string(),
        }),
        other => Err(Error::Json(format!("coefficient {other} is not a number"))),
    }
}

fn perm_json(w: &SignedPermutation) -> Value {
    Value::Array(w.window().into_iter().map(Value::from).collect())
}

fn perm_from_json(v: &Value) -> Result<SignedPermutation> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("permutation {v} is not an array")))?;
    let window = items
        .iter()
        .map(|a| {
            a.as_i64()
                .map(|a| a as i32)
                .ok_or_else(|| Error::Json(format!("entry {a} is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    SignedPermutation::new(&window)
}

fn basis_from_json(root: &Value) -> Result<Basis> {
    root.get("basis")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json("missing \"basis\"".to_string()))?
        .parse()
}

fn terms_from_json(root: &Value) -> Result<&Vec<Value>> {
    root.get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("missing \"terms\" array".to_string()))
}

// ---------------------------------------------------------------------------
// Formal sums

/// A finite integer combination of basis elements of any grades.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum {
    basis: Basis,
    terms: BTreeMap<SignedPermutation, BigInt>,
}

impl FormalSum {
    pub fn zero(basis: Basis) -> Self {
        FormalSum {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, w: SignedPermutation) -> Self {
        let mut s = Self::zero(basis);
        s.add_term(w, BigInt::one());
        s
    }

    pub fn from_terms<I, C>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (SignedPermutation, C)>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero(basis);
        for (w, c) in terms {
            s.add_term(w, c.into());
        }
        s
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add_term(&mut self, w: SignedPermutation, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        expect_basis(other.basis, self.basis)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> FormalSum {
        let mut out = Self::zero(self.basis);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn coeff(&self, w: &SignedPermutation) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms ordered by grade, then window.
    pub fn terms(&self) -> impl Iterator<Item = (&SignedPermutation, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneous_part(&self, grade: usize) -> FormalSum {
        FormalSum {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.size() == grade)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_grade(&self) -> usize {
        self.terms.keys().map(|w| w.size()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!({"perm": perm_json(w), "coeff": coeff_json(c)}))
            .collect();
        json!({"basis": self.basis.to_string(), "terms": terms})
    }

    pub fn from_json(root: &Value) -> Result<FormalSum> {
        let basis = basis_from_json(root)?;
        let mut s = Self::zero(basis);
        for t in terms_from_json(root)? {
            let w = perm_from_json(t.get("perm").unwrap_or(&Value::Null))?;
            let c = coeff_from_json(t.get("coeff").unwrap_or(&Value::Null))?;
            s.add_term(w, c);
        }
        Ok(s)
    }

    pub fn from_json_str(text: &str) -> Result<FormalSum> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(
            self.terms
                .iter()
                .map(|(w, c)| (render_element(self.basis, w), c)),
        ))
    }
}

/// A finite integer combination of tensors `b_u ⊗ b_v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSum {
    basis: Basis,
    terms: BTreeMap<(SignedPermutation, SignedPermutation), BigInt>,
}

impl TensorSum {
    pub fn zero(basis: Basis) -> Self {
        TensorSum {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I, C>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (SignedPermutation, SignedPermutation, C)>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero(basis);
        for (a, b, c) in terms {
            s.add_term(a, b, c.into());
        }
        s
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add_term(&mut self, a: SignedPermutation, b: SignedPermutation, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coeff(&self, a: &SignedPermutation, b: &SignedPermutation) -> BigInt {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedPermutation, &SignedPermutation, &BigInt)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd` in the `F` basis.
    pub fn f_product(&self, other: &TensorSum) -> Result<TensorSum> {
        expect_basis(self.basis, Basis::F)?;
        expect_basis(other.basis, Basis::F)?;
        let mut out = TensorSum::zero(Basis::F);
        for ((a, b), c1) in &self.terms {
            for ((x, y), c2) in &other.terms {
                let left = product_of_basis(a, x);
                let right = product_of_basis(b, y);
                let c = c1 * c2;
                for (l, cl) in &left {
                    for (r, cr) in &right {
                        out.add_term(l.clone(), r.clone(), &c * cl * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((a, b), c)| json!({"left": perm_json(a), "right": perm_json(b), "coeff": coeff_json(c)}))
            .collect();
        json!({"basis": self.basis.to_string(), "terms": terms})
    }

    pub fn from_json(root: &Value) -> Result<TensorSum> {
        let basis = basis_from_json(root)?;
        let mut s = Self::zero(basis);
        for t in terms_from_json(root)? {
            let a = perm_from_json(t.get("left").unwrap_or(&Value::Null))?;
            let b = perm_from_json(t.get("right").unwrap_or(&Value::Null))?;
            let c = coeff_from_json(t.get("coeff").unwrap_or(&Value::Null))?;
            s.add_term(a, b, c);
        }
        Ok(s)
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().map(|((a, b), c)| {
            (
                format!(
                    "{} ⊗ {}",
                    render_element(self.basis, a),
                    render_element(self.basis, b)
                ),
                c,
            )
        })))
    }
}

// ---------------------------------------------------------------------------
// Fundamental basis

/// `F_u·F_v` as a list of basis elements, one per shuffle.
pub fn product_of_basis(u: &SignedPermutation, v: &SignedPermutation) -> Vec<(SignedPermutation, BigInt)> {
    shuffles(&[u.size(), v.size()])
        .iter()
        .map(|xi| {
            (
                tau(xi, &[u.clone(), v.clone()]).expect("blocks match factor sizes"),
                BigInt::one(),
            )
        })
        .collect()
}

pub fn f_product(x: &FormalSum, y: &FormalSum) -> Result<FormalSum> {
    expect_basis(x.basis, Basis::F)?;
    expect_basis(y.basis, Basis::F)?;
    let mut out = FormalSum::zero(Basis::F);
    for (u, a) in x.terms() {
        for (v, b) in y.terms() {
            let ab = a * b;
            for (w, c) in product_of_basis(u, v) {
                out.add_term(w, &ab * c);
            }
        }
    }
    Ok(out)
}

/// `Δ(F_u)` cut at every position.
pub fn coproduct_of_basis(u: &SignedPermutation) -> Vec<(SignedPermutation, SignedPermutation)> {
    let n = u.size();
    (0..=n)
        .map(|i| (u.sts_window(1, i), u.sts_window(i + 1, n)))
        .collect()
}

pub fn f_coproduct(x: &FormalSum) -> Result<TensorSum> {
    expect_basis(x.basis, Basis::F)?;
    let mut out = TensorSum::zero(Basis::F);
    for (u, c) in x.terms() {
        for (a, b) in coproduct_of_basis(u) {
            out.add_term(a, b, c.clone());
        }
    }
    Ok(out)
}

/// `(Δ ⊗ id)` or `(id ⊗ Δ)` applied to a tensor, flattened to triples.
fn coproduct_on_leg(
    t: &TensorSum,
    left: bool,
) -> BTreeMap<(SignedPermutation, SignedPermutation, SignedPermutation), BigInt> {
    let mut out: BTreeMap<_, BigInt> = BTreeMap::new();
    for ((a, b), c) in &t.terms {
        let target = if left { a } else { b };
        for (x, y) in coproduct_of_basis(target) {
            let key = if left {
                (x, y, b.clone())
            } else {
                (a.clone(), x, y)
            };
            *out.entry(key).or_default() += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The image of `F_u` under forgetting signs, `F_u ↦ F_{|u|}`.
pub fn forget_signs(x: &FormalSum) -> Result<FormalSum> {
    expect_basis(x.basis, Basis::F)?;
    Ok(FormalSum::from_terms(
        Basis::F,
        x.terms().map(|(w, c)| (w.unsigned(), c.clone())),
    ))
}

// ---------------------------------------------------------------------------
// Basis change

/// Rewrites an `F`-sum in the `M` basis: `F_u = Σ_{u ≤ v} M_v`.
pub fn to_monomial(x: &FormalSum, order: &WeakOrder) -> Result<FormalSum> {
    expect_basis(x.basis, Basis::F)?;
    let mut out = FormalSum::zero(Basis::M);
    for (u, c) in x.terms() {
        for v in order.upper_set(u)?.iter() {
            out.add_term(v.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Rewrites an `M`-sum in the `F` basis: `M_u = Σ_{u ≤ v} μ(u, v) F_v`.
pub fn to_fundamental(x: &FormalSum, order: &WeakOrder) -> Result<FormalSum> {
    expect_basis(x.basis, Basis::M)?;
    let mut out = FormalSum::zero(Basis::F);
    for (u, c) in x.terms() {
        for (v, m) in order.mobius_row(u)?.iter() {
            if *m != 0 {
                out.add_term(v.clone(), c * BigInt::from(*m));
            }
        }
    }
    Ok(out)
}

/// Converts to the requested basis; a no-op when already there.
pub fn convert(x: &FormalSum, to: Basis, order: &WeakOrder) -> Result<FormalSum> {
    match (x.basis, to) {
        (a, b) if a == b => Ok(x.clone()),
        (Basis::F, Basis::M) => to_monomial(x, order),
        _ => to_fundamental(x, order),
    }
}

fn tensor_to_monomial(t: &TensorSum, order: &WeakOrder) -> Result<TensorSum> {
    expect_basis(t.basis, Basis::F)?;
    let mut out = TensorSum::zero(Basis::M);
    for ((a, b), c) in &t.terms {
        let ups_a = order.upper_set(a)?;
        let ups_b = order.upper_set(b)?;
        for x in ups_a.iter() {
            for y in ups_b.iter() {
                out.add_term(x.clone(), y.clone(), c.clone());
            }
        }
    }
    Ok(out)
}

pub fn m_product(x: &FormalSum, y: &FormalSum, order: &WeakOrder) -> Result<FormalSum> {
    expect_basis(x.basis, Basis::M)?;
    expect_basis(y.basis, Basis::M)?;
    let fx = to_fundamental(x, order)?;
    let fy = to_fundamental(y, order)?;
    to_monomial(&f_product(&fx, &fy)?, order)
}

pub fn m_coproduct(x: &FormalSum, order: &WeakOrder) -> Result<TensorSum> {
    expect_basis(x.basis, Basis::M)?;
    let fx = to_fundamental(x, order)?;
    tensor_to_monomial(&f_coproduct(&fx)?, order)
}

/// Product in whichever basis the arguments share.
pub fn product(x: &FormalSum, y: &FormalSum, order: &WeakOrder) -> Result<FormalSum> {
    expect_basis(y.basis, x.basis)?;
    match x.basis {
        Basis::F => f_product(x, y),
        Basis::M => m_product(x, y, order),
    }
}

pub fn coproduct(x: &FormalSum, order: &WeakOrder) -> Result<TensorSum> {
    match x.basis {
        Basis::F => f_coproduct(x),
        Basis::M => m_coproduct(x, order),
    }
}

/// `Σ_{p ∈ GDes(u) ∪ {0, n}} M_{sts(u_1…u_p)} ⊗ M_{sts(u_{p+1}…u_n)}`.
pub fn gdes_coproduct_formula(u: &SignedPermutation) -> TensorSum {
    let n = u.size();
    let mut cuts = vec![0];
    cuts.extend(u.global_descents());
    if n > 0 {
        cuts.push(n);
    }
    TensorSum::from_terms(
        Basis::M,
        cuts.into_iter()
            .map(|p| (u.sts_window(1, p), u.sts_window(p + 1, n), 1)),
    )
}

// ---------------------------------------------------------------------------
// Monomial product structure constants

/// The shuffle sets `A ⊇ B ⊇ C` attached to `(u, v, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleCoefficient {
    pub a_set: Vec<Shuffle>,
    pub b_set: Vec<Shuffle>,
    pub c_set: Vec<Shuffle>,
}

impl ShuffleCoefficient {
    pub fn a(&self) -> usize {
        self.a_set.len()
    }

    pub fn b(&self) -> usize {
        self.b_set.len()
    }

    pub fn c(&self) -> usize {
        self.c_set.len()
    }
}

/// Precomputed data for the shuffle sets of a fixed pair `(u, v)`.
struct CoefficientTable {
    xis: Vec<Shuffle>,
    uppers_u: Vec<SignedPermutation>,
    uppers_v: Vec<SignedPermutation>,
    // images[ξ][i][j] = profile of τ_ξ(uppers_u[i] × uppers_v[j]); index 0 is (u, v)
    images: Vec<Vec<Vec<crate::perm::OrderProfile>>>,
}

impl CoefficientTable {
    fn new(u: &SignedPermutation, v: &SignedPermutation, order: &WeakOrder) -> Result<Self> {
        let xis = shuffles(&[u.size(), v.size()]);
        let uppers_u = Self::upper_first(u, order)?;
        let uppers_v = Self::upper_first(v, order)?;
        let images = xis
            .iter()
            .map(|xi| {
                let inv = xi.perm().inverse();
                uppers_u
                    .iter()
                    .map(|a| {
                        uppers_v
                            .iter()
                            .map(|b| a.shifted_product(b).compose_unchecked(&inv).profile())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(CoefficientTable {
            xis,
            uppers_u,
            uppers_v,
            images,
        })
    }

    fn upper_first(u: &SignedPermutation, order: &WeakOrder) -> Result<Vec<SignedPermutation>> {
        let ups = order.upper_set(u)?;
        let mut out = vec![u.clone()];
        out.extend(ups.iter().filter(|z| *z != u).cloned());
        Ok(out)
    }

    fn sets(&self, w: &SignedPermutation) -> ShuffleCoefficient {
        let pw = w.profile();
        let mut sc = ShuffleCoefficient {
            a_set: Vec::new(),
            b_set: Vec::new(),
            c_set: Vec::new(),
        };
        for (k, xi) in self.xis.iter().enumerate() {
            let grid = &self.images[k];
            if !grid[0][0].is_contained_in(&pw) {
                continue;
            }
            sc.a_set.push(xi.clone());
            let u_maximal = (1..self.uppers_u.len()).all(|i| !grid[i][0].is_contained_in(&pw));
            if !u_maximal {
                continue;
            }
            sc.b_set.push(xi.clone());
            let jointly_maximal = (0..self.uppers_u.len()).all(|i| {
                (0..self.uppers_v.len())
                    .all(|j| (i == 0 && j == 0) || !grid[i][j].is_contained_in(&pw))
            });
            if jointly_maximal {
                sc.c_set.push(xi.clone());
            }
        }
        sc
    }
}

/// The sets `A^w_{u,v}`, `B^w_{u,v}` and `C^w_{u,v}` by direct testing.
pub fn shuffle_coefficients(
    u: &SignedPermutation,
    v: &SignedPermutation,
    w: &SignedPermutation,
    order: &WeakOrder,
) -> Result<ShuffleCoefficient> {
    if u.size() + v.size() != w.size() {
        return Err(Error::SizeMismatch {
            left: u.size() + v.size(),
            right: w.size(),
        });
    }
    Ok(CoefficientTable::new(u, v, order)?.sets(w))
}

/// Every `w` that can have a nonempty `A^w_{u,v′}` for some `v′ ≥ v`.
fn candidate_targets(
    u: &SignedPermutation,
    v: &SignedPermutation,
    order: &WeakOrder,
) -> Result<Vec<SignedPermutation>> {
    let mut seen = std::collections::BTreeSet::new();
    for v2 in order.upper_set(v)?.iter() {
        for xi in shuffles(&[u.size(), v.size()]) {
            let base = tau(&xi, &[u.clone(), v2.clone()])?;
            if seen.contains(&base) {
                continue;
            }
            seen.extend(order.upper_set(&base)?.iter().cloned());
        }
    }
    Ok(seen.into_iter().collect())
}

/// `M_u·M_v` from the `b`-coefficients: `Σ_w Σ_{v ≤ v′} μ(v, v′) b^w_{u,v′} M_w`.
pub fn m_product_b_formula(
    u: &SignedPermutation,
    v: &SignedPermutation,
    order: &WeakOrder,
) -> Result<FormalSum> {
    let targets = candidate_targets(u, v, order)?;
    let mut out = FormalSum::zero(Basis::M);
    for (v2, mu) in order.mobius_row(v)?.iter() {
        if *mu == 0 {
            continue;
        }
        let table = CoefficientTable::new(u, v2, order)?;
        for w in &targets {
            let b = table.sets(w).b();
            if b > 0 {
                out.add_term(w.clone(), BigInt::from(*mu) * BigInt::from(b));
            }
        }
    }
    Ok(out)
}

/// `M_u·M_v` from the `c`-coefficients, `Σ_w c^w_{u,v} M_w`; valid when
/// every entry of `v` is negative.
pub fn m_product_c_formula(
    u: &SignedPermutation,
    v: &SignedPermutation,
    order: &WeakOrder,
) -> Result<FormalSum> {
    let table = CoefficientTable::new(u, v, order)?;
    let mut out = FormalSum::zero(Basis::M);
    for w in candidate_targets(u, v, order)? {
        let c = table.sets(&w).c();
        if c > 0 {
            out.add_term(w, BigInt::from(c));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Axioms

fn basis_up_to(max_grade: usize) -> Vec<Vec<SignedPermutation>> {
    (0..=max_grade).map(SignedPermutation::all).collect()
}

fn f(w: &SignedPermutation) -> FormalSum {
    FormalSum::basis_element(Basis::F, w.clone())
}

/// The bialgebra axioms on all basis elements within the total grade budget.
pub fn hopf_axiom_suite(max_total_grade: usize) -> VerifyReport {
    let start = Instant::now();
    let mut report = VerifyReport::new("hopf-axioms");
    let basis = basis_up_to(max_total_grade);

    // associativity
    'assoc: for a in 0..=max_total_grade {
        for b in 0..=max_total_grade - a {
            for c in 0..=max_total_grade - a - b {
                for x in &basis[a] {
                    for y in &basis[b] {
                        let xy = f_product(&f(x), &f(y)).expect("F basis");
                        for z in &basis[c] {
                            let left = f_product(&xy, &f(z)).expect("F basis");
                            let yz = f_product(&f(y), &f(z)).expect("F basis");
                            let right = f_product(&f(x), &yz).expect("F basis");
                            if !report.record(left == right, || {
                                format!("(F[{x}]F[{y}])F[{z}] = {left}, F[{x}](F[{y}]F[{z}]) = {right}")
                            }) {
                                break 'assoc;
                            }
                        }
                    }
                }
            }
        }
    }

    // coassociativity
    'coassoc: for grade in &basis {
        for x in grade {
            let d = f_coproduct(&f(x)).expect("F basis");
            let left = coproduct_on_leg(&d, true);
            let right = coproduct_on_leg(&d, false);
            if !report.record(left == right, || format!("coassociativity fails at F[{x}]")) {
                break 'coassoc;
            }
        }
    }

    // Δ(xy) = Δ(x)Δ(y)
    'bialg: for a in 0..=max_total_grade {
        for b in 0..=max_total_grade - a {
            for x in &basis[a] {
                let dx = f_coproduct(&f(x)).expect("F basis");
                for y in &basis[b] {
                    let dy = f_coproduct(&f(y)).expect("F basis");
                    let left = f_coproduct(&f_product(&f(x), &f(y)).expect("F basis"))
                        .expect("F basis");
                    let right = dx.f_product(&dy).expect("F basis");
                    if !report.record(left == right, || {
                        format!("Δ(F[{x}]F[{y}]) = {left}, Δ(F[{x}])Δ(F[{y}]) = {right}")
                    }) {
                        break 'bialg;
                    }
                }
            }
        }
    }
    report.finish(start)
}
