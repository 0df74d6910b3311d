//! Shifted products `B_{p_1} × … × B_{p_k}` inside `B_n`, their decomposition
//! into components by negative-index sets, and the coset maps that carry them
//! around the weak order.
//!
//! Throughout, `τ_ξ(x) = x·ξ^{-1}` moves the entry at position `r` of `x` to
//! position `ξ(r)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{shuffles, OrderProfile, Shuffle, SignedPermutation};
use crate::weak_order::{self, WeakOrder};

/// `w = ξ·(u × v)`, with `ξ ∈ Sh(p, q)` acting on values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFactorization {
    pub xi: Shuffle,
    pub left: SignedPermutation,
    pub right: SignedPermutation,
}

impl CosetFactorization {
    /// `ξ ∘ (u × v)`.
    pub fn reassemble(&self) -> SignedPermutation {
        self.xi
            .perm()
            .compose_unchecked(&self.left.shifted_product(&self.right))
    }
}

/// Splits `w` after position `p`.
///
/// `ξ` is read off by sorting the absolute values of each window in place;
/// `u` and `v` are the signed standardizations of the two windows.
pub fn factorize(w: &SignedPermutation, p: usize) -> Result<CosetFactorization> {
    let n = w.size();
    if p > n {
        return Err(Error::SizeMismatch { left: p, right: n });
    }
    let abs: Vec<i32> = w.window().iter().map(|a| a.abs()).collect();
    let mut first = abs[..p].to_vec();
    let mut second = abs[p..].to_vec();
    first.sort_unstable();
    second.sort_unstable();
    first.extend(second);
    let xi = Shuffle::new(SignedPermutation::new(&first)?, vec![p, n - p])?;
    Ok(CosetFactorization {
        xi,
        left: w.sts_window(1, p),
        right: w.sts_window(p + 1, n),
    })
}

/// Splits `w` as `(u × v)·η^{-1}` with `η ∈ Sh(p, q)` acting on positions.
pub fn factorize_positions(w: &SignedPermutation, p: usize) -> Result<CosetFactorization> {
    let f = factorize(&w.inverse(), p)?;
    Ok(CosetFactorization {
        xi: f.xi,
        left: f.left.inverse(),
        right: f.right.inverse(),
    })
}

/// `τ_ξ(u_1, …, u_k) = (u_1 × … × u_k)·ξ^{-1}`.
pub fn tau(xi: &Shuffle, factors: &[SignedPermutation]) -> Result<SignedPermutation> {
    let sizes: Vec<usize> = factors.iter().map(SignedPermutation::size).collect();
    if sizes != xi.blocks() {
        return Err(Error::InvalidShuffle(format!(
            "blocks {:?} do not match factor sizes {sizes:?}",
            xi.blocks()
        )));
    }
    let x = SignedPermutation::shifted_product_all(factors);
    Ok(x.compose_unchecked(&xi.perm().inverse()))
}

/// The profile of `(u × v)·ξ^{-1}` assembled from the profiles of `u`, `v`
/// and the inversions of `ξ`, without forming the product.
///
/// Panics if two of the families overlap, since they must be disjoint.
pub fn profile_via_formula(
    xi: &Shuffle,
    u: &SignedPermutation,
    v: &SignedPermutation,
) -> Result<OrderProfile> {
    let (p, q) = (u.size(), v.size());
    if xi.blocks() != [p, q] {
        return Err(Error::InvalidShuffle(format!(
            "blocks {:?} do not match sizes ({p},{q})",
            xi.blocks()
        )));
    }
    let n = p + q;
    let x = |r: usize| xi.perm().at(r) as usize;
    let ordered = |a: usize, b: usize| (a.min(b), a.max(b));
    let (pu, pv) = (u.profile(), v.profile());
    let mut out = OrderProfile::empty(n);
    let mut fresh = true;

    for i in pu.nega() {
        fresh &= out.insert_nega(x(i));
    }
    for i in pv.nega() {
        fresh &= out.insert_nega(x(p + i));
    }

    // Within a block ξ is increasing, so pairs keep their orientation.
    for (i, j) in pu.inv() {
        fresh &= out.insert_inv(x(i), x(j));
    }
    for (i, j) in pv.inv() {
        fresh &= out.insert_inv(x(p + i), x(p + j));
    }
    for (i, j) in pu.nsp() {
        fresh &= out.insert_nsp(x(i), x(j));
    }
    for (i, j) in pv.nsp() {
        fresh &= out.insert_nsp(x(p + i), x(p + j));
    }

    // Cross pairs r ≤ p < s: |entry at s| exceeds |entry at r|, so only the
    // sign of v decides, together with whether ξ swaps the two positions.
    for r in 1..=p {
        for t in 1..=q {
            let s = p + t;
            let neg = pv.has_nega(t);
            let kept = x(r) < x(s);
            if neg {
                let (a, b) = ordered(x(r), x(s));
                fresh &= out.insert_nsp(a, b);
            }
            if kept == neg {
                let (a, b) = ordered(x(r), x(s));
                fresh &= out.insert_inv(a, b);
            }
        }
    }
    assert!(fresh, "statistic families must be disjoint");
    Ok(out)
}

/// Result of comparing two shifted products factor by factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentwiseComparison {
    /// Every factor of the left product lies below the matching factor on the right.
    pub holds: bool,
    /// `ℓ(right product) − ℓ(left product)`, by the closed formula.
    pub length_delta: i64,
}

/// Compares `u_1 × … × u_k` with `v_1 × … × v_k` factor by factor and
/// predicts the length difference from factor data alone.
pub fn componentwise_order(
    us: &[SignedPermutation],
    vs: &[SignedPermutation],
) -> Result<ComponentwiseComparison> {
    if us.len() != vs.len() {
        return Err(Error::SizeMismatch {
            left: us.len(),
            right: vs.len(),
        });
    }
    let mut holds = true;
    let mut delta = 0i64;
    let mut offset = 0i64;
    for (u, v) in us.iter().zip(vs) {
        holds &= weak_order::leq(u, v)?;
        delta += v.length() as i64 - u.length() as i64;
        delta += 2 * offset * (v.nega() as i64 - u.nega() as i64);
        offset += u.size() as i64;
    }
    Ok(ComponentwiseComparison {
        holds,
        length_delta: delta,
    })
}

// ---------------------------------------------------------------------------
// Components

/// Block sizes `(p_1, …, p_k)` and negative-index sets `L_2, …, L_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSignature {
    blocks: Vec<usize>,
    negatives: Vec<BTreeSet<usize>>,
}

impl ComponentSignature {
    /// `negatives[j]` is the negative-index set of block `j + 2`.
    pub fn new(blocks: Vec<usize>, negatives: Vec<BTreeSet<usize>>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::InvalidSignature(format!(
                "need at least two blocks, got {blocks:?}"
            )));
        }
        if negatives.len() + 1 != blocks.len() {
            return Err(Error::InvalidSignature(format!(
                "{} blocks need {} negative sets, got {}",
                blocks.len(),
                blocks.len() - 1,
                negatives.len()
            )));
        }
        for (set, &p) in negatives.iter().zip(&blocks[1..]) {
            if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > p) {
                return Err(Error::InvalidSignature(format!("index {bad} outside [1,{p}]")));
            }
        }
        Ok(ComponentSignature { blocks, negatives })
    }

    /// Every signature over the given blocks, in a fixed order.
    pub fn all(blocks: &[usize]) -> Result<Vec<ComponentSignature>> {
        let mut out = vec![Vec::new()];
        for &p in &blocks[1.min(blocks.len())..] {
            let mut next = Vec::new();
            for prefix in &out {
                for mask in 0u32..(1 << p) {
                    let set: BTreeSet<usize> =
                        (1..=p).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    let mut v: Vec<BTreeSet<usize>> = prefix.clone();
                    v.push(set);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|negatives| ComponentSignature::new(blocks.to_vec(), negatives))
            .collect()
    }

    /// The component containing a shifted product `x`.
    pub fn of(x: &SignedPermutation, blocks: &[usize]) -> Result<Self> {
        let total: usize = blocks.iter().sum();
        if total != x.size() {
            return Err(Error::SizeMismatch {
                left: total,
                right: x.size(),
            });
        }
        let mut negatives = Vec::new();
        let mut start = blocks.first().copied().unwrap_or(0);
        for &p in &blocks[1.min(blocks.len())..] {
            negatives.push(
                (1..=p)
                    .filter(|&i| x.at(start + i) < 0)
                    .collect::<BTreeSet<_>>(),
            );
            start += p;
        }
        ComponentSignature::new(blocks.to_vec(), negatives)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn negatives(&self) -> &[BTreeSet<usize>] {
        &self.negatives
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Number of elements: `p_1!·2^{p_1}·∏ p_i!`.
    pub fn cardinality(&self) -> usize {
        let fact = |m: usize| (1..=m).product::<usize>();
        (fact(self.blocks[0]) << self.blocks[0]) * self.blocks[1..].iter().map(|&p| fact(p)).product::<usize>()
    }

    /// All shifted products in the component.
    pub fn elements(&self) -> Vec<SignedPermutation> {
        let mut out: Vec<Vec<SignedPermutation>> = SignedPermutation::all(self.blocks[0])
            .into_iter()
            .map(|u| vec![u])
            .collect();
        for (set, &p) in self.negatives.iter().zip(&self.blocks[1..]) {
            let factors: Vec<SignedPermutation> = SignedPermutation::all(p)
                .into_iter()
                .filter(|v| (1..=p).all(|i| (v.at(i) < 0) == set.contains(&i)))
                .collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    factors.iter().map(move |f| {
                        let mut next = prefix.clone();
                        next.push(f.clone());
                        next
                    })
                })
                .collect();
        }
        out.iter()
            .map(|fs| SignedPermutation::shifted_product_all(fs))
            .collect()
    }
}

impl fmt::Display for ComponentSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.blocks[0])?;
        for (set, p) in self.negatives.iter().zip(&self.blocks[1..]) {
            let items: Vec<String> = set.iter().map(|i| i.to_string()).collect();
            write!(f, " x B{p},{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// Bottom of a component's single-block factor: negatives `-r, …, -1` placed on
/// `L` left to right, then `r+1, …, p` on the rest.
fn block_min(p: usize, set: &BTreeSet<usize>) -> Vec<i32> {
    let r = set.len() as i32;
    let mut neg = -r;
    let mut pos = r + 1;
    (1..=p)
        .map(|i| {
            if set.contains(&i) {
                neg += 1;
                neg - 1
            } else {
                pos += 1;
                pos - 1
            }
        })
        .collect()
}

/// Top of a single-block factor: `-(p-r+1), …, -p` on `L`, then `p-r, …, 1`.
fn block_max(p: usize, set: &BTreeSet<usize>) -> Vec<i32> {
    let r = set.len() as i32;
    let p = p as i32;
    let mut neg = p - r + 1;
    let mut pos = p - r;
    (1..=p as usize)
        .map(|i| {
            if set.contains(&i) {
                neg += 1;
                -(neg - 1)
            } else {
                pos -= 1;
                pos + 1
            }
        })
        .collect()
}

/// The endpoints `(min, max)` of a component, which is the interval between them.
pub fn component_interval(sig: &ComponentSignature) -> (SignedPermutation, SignedPermutation) {
    let p1 = sig.blocks[0];
    let mut lo = vec![SignedPermutation::identity(p1)];
    let mut hi = vec![SignedPermutation::longest(p1)];
    for (set, &p) in sig.negatives.iter().zip(&sig.blocks[1..]) {
        lo.push(SignedPermutation::new(&block_min(p, set)).expect("valid block minimum"));
        hi.push(SignedPermutation::new(&block_max(p, set)).expect("valid block maximum"));
    }
    (
        SignedPermutation::shifted_product_all(&lo),
        SignedPermutation::shifted_product_all(&hi),
    )
}

/// Identifies a component element with a tuple in `B_{p_1} × S_{p_2} × …` by
/// right-multiplying with the inverse of the component minimum and cutting
/// the result into blocks.
pub fn component_isomorphism(
    sig: &ComponentSignature,
    x: &SignedPermutation,
) -> Vec<SignedPermutation> {
    let (lo, _) = component_interval(sig);
    let y = x.compose_unchecked(&lo.inverse());
    let mut start = 0;
    sig.blocks
        .iter()
        .map(|&p| {
            let f = y.sts_window(start + 1, start + p);
            start += p;
            f
        })
        .collect()
}

/// `true` when the images `τ_ξ(component)` over every shuffle and every
/// signature are pairwise disjoint and cover `B_n`.
pub fn partition_check(blocks: &[usize], order: &WeakOrder) -> Result<bool> {
    let n: usize = blocks.iter().sum();
    order.check_rank(n)?;
    if blocks.len() < 2 {
        return Ok(true);
    }
    let sigs = ComponentSignature::all(blocks)?;
    let mut seen = HashSet::new();
    for xi in shuffles(blocks) {
        let inv = xi.perm().inverse();
        for sig in &sigs {
            for x in sig.elements() {
                if !seen.insert(x.compose_unchecked(&inv)) {
                    return Ok(false);
                }
            }
        }
    }
    let total = (1usize << n) * (1..=n).product::<usize>();
    Ok(seen.len() == total)
}

/// A comparable pair in different components of the same shifted product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapWitness {
    pub gap: usize,
    pub lower: SignedPermutation,
    pub upper: SignedPermutation,
}

/// Minimal length difference over comparable pairs `w < w′` of the shifted
/// product that lie in different components. `None` if there is no such pair.
pub fn gap_check(blocks: &[usize], order: &WeakOrder) -> Result<Option<GapWitness>> {
    let n: usize = blocks.iter().sum();
    order.check_rank(n)?;
    if blocks.len() < 2 {
        return Ok(None);
    }
    let mut items = Vec::new();
    for sig in ComponentSignature::all(blocks)? {
        for x in sig.elements() {
            let prof = x.profile();
            items.push((x, prof, sig.clone()));
        }
    }
    items.sort_by_key(|(x, _, _)| (x.length(), x.clone()));
    let mut best: Option<GapWitness> = None;
    for (a, (x, px, sx)) in items.iter().enumerate() {
        for (y, py, sy) in &items[a + 1..] {
            if sx == sy || !px.is_contained_in(py) {
                continue;
            }
            let gap = y.length() - x.length();
            if best.as_ref().map_or(true, |b| gap < b.gap) {
                best = Some(GapWitness {
                    gap,
                    lower: x.clone(),
                    upper: y.clone(),
                });
            }
        }
    }
    Ok(best)
}

/// Whether `f` is an order-reflecting injection with convex image on `domain`.
///
/// The domain is taken with the weak order it inherits; convexity means every
/// element between two images is itself an image.
pub fn is_convex_embedding(
    domain: &[SignedPermutation],
    f: impl Fn(&SignedPermutation) -> SignedPermutation,
) -> bool {
    let images: Vec<SignedPermutation> = domain.iter().map(&f).collect();
    let image_set: HashSet<&SignedPermutation> = images.iter().collect();
    if image_set.len() != domain.len() {
        return false;
    }
    let dp: Vec<OrderProfile> = domain.iter().map(|x| x.profile()).collect();
    let ip: Vec<OrderProfile> = images.iter().map(|x| x.profile()).collect();
    for a in 0..domain.len() {
        for b in 0..domain.len() {
            let below = ip[a].is_contained_in(&ip[b]);
            if below != dp[a].is_contained_in(&dp[b]) {
                return false;
            }
            if below && a != b {
                let between = weak_order::interval(&images[a], &images[b]).expect("same size");
                if between.iter().any(|z| !image_set.contains(z)) {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Parabolic cosets

/// The two concrete Coxeter families with a parabolic coset map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParabolicFamily {
    /// `S_n` with parabolic `S_{p_1} × … × S_{p_k}`.
    A,
    /// `B_n` with parabolic `B_{p_1} × S_{p_2} × … × S_{p_k}`.
    B,
}

/// Minimal coset representative test: increasing on every block, and for
/// type B also positive at the first position of the first block.
pub fn is_minimal_coset_representative(
    family: ParabolicFamily,
    xi: &SignedPermutation,
    blocks: &[usize],
) -> bool {
    if blocks.iter().sum::<usize>() != xi.size() {
        return false;
    }
    if family == ParabolicFamily::A && !xi.is_unsigned() {
        return false;
    }
    let w = xi.window();
    let mut start = 0;
    for (k, &p) in blocks.iter().enumerate() {
        let block = &w[start..start + p];
        if block.windows(2).any(|pair| pair[0] > pair[1]) {
            return false;
        }
        if family == ParabolicFamily::B && k == 0 && p > 0 && block[0] < 0 {
            return false;
        }
        start += p;
    }
    true
}

/// Elements of the parabolic subgroup for the given blocks, as shifted products.
pub fn parabolic_subgroup(family: ParabolicFamily, blocks: &[usize]) -> Vec<SignedPermutation> {
    let mut out = vec![SignedPermutation::empty()];
    for (k, &p) in blocks.iter().enumerate() {
        let factors = if family == ParabolicFamily::B && k == 0 {
            SignedPermutation::all(p)
        } else {
            SignedPermutation::all_unsigned(p)
        };
        out = out
            .iter()
            .flat_map(|x| factors.iter().map(move |f| x.shifted_product(f)))
            .collect();
    }
    out
}

/// `ρ_ξ(u_1, …, u_k) = (u_1 × … × u_k)·ξ^{-1}` for `ξ` a minimal coset
/// representative and factors in the parabolic subgroup.
pub fn rho(
    family: ParabolicFamily,
    xi: &SignedPermutation,
    factors: &[SignedPermutation],
) -> Result<SignedPermutation> {
    let blocks: Vec<usize> = factors.iter().map(SignedPermutation::size).collect();
    if !is_minimal_coset_representative(family, xi, &blocks) {
        return Err(Error::NotMinimalCosetRepresentative(xi.to_string()));
    }
    for (k, f) in factors.iter().enumerate() {
        let signed_ok = family == ParabolicFamily::B && k == 0;
        if !signed_ok && !f.is_unsigned() {
            return Err(Error::InvalidSignature(format!(
                "factor {} ({f}) must be unsigned",
                k + 1
            )));
        }
    }
    let x = SignedPermutation::shifted_product_all(factors);
    Ok(x.compose_unchecked(&xi.inverse()))
}

/// `ζ(ζ′ × 1_q)` for `ζ ∈ Sh(p, q)` and `ζ′ ∈ Sh(p_1, …, p_k)`, `p = Σ p_i`.
pub fn compose_shuffles(zeta: &Shuffle, zeta_prime: &Shuffle) -> Result<Shuffle> {
    let p = zeta_prime.size();
    if zeta.blocks().len() != 2 || zeta.blocks()[0] != p {
        return Err(Error::InvalidShuffle(format!(
            "outer blocks {:?} do not start with {p}",
            zeta.blocks()
        )));
    }
    let q = zeta.blocks()[1];
    let inner = zeta_prime
        .perm()
        .shifted_product(&SignedPermutation::identity(q));
    let mut blocks = zeta_prime.blocks().to_vec();
    blocks.push(q);
    Shuffle::new(zeta.perm().compose_unchecked(&inner), blocks)
}
