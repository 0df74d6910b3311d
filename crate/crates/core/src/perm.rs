//! Signed permutations in one-line notation and the order statistics behind
//! the weak order (see [`OrderProfile`]).
//!
//! A signed permutation of size `n` is stored as its window `w_1 … w_n`; the
//! value at a negative point is recovered from `w(-i) = -w(i)`. Composition is
//! functional, `(u ∘ v)(i) = u(v(i))`, so left multiplication acts on values and
//! right multiplication acts on positions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest supported size; windows are stored as `i8`.
pub const MAX_SIZE: usize = 127;

type Window = SmallVec<[i8; 16]>;

// ---------------------------------------------------------------------------
// Bitsets

/// Small fixed-universe bitset used for statistic sets.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: SmallVec<[u64; 2]>,
}

impl BitSet {
    pub fn with_capacity(bits: usize) -> Self {
        let mut words = SmallVec::new();
        words.resize(bits.div_ceil(64), 0);
        BitSet { words }
    }

    /// Sets `bit`; returns `false` if it was already present.
    pub fn insert(&mut self, bit: usize) -> bool {
        let (w, b) = (bit / 64, bit % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, bit: usize) -> bool {
        self.words
            .get(bit / 64)
            .is_some_and(|w| w & (1 << (bit % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().enumerate().all(|(i, &w)| {
            let o = other.words.get(i).copied().unwrap_or(0);
            w & !o == 0
        })
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Row-major slot of the pair `(i, j)`, `1 ≤ i < j ≤ n`.
#[inline]
pub fn pair_slot(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // rows 1..i-1 hold (n-1) + (n-2) + … + (n-i+1) slots
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

fn slot_pair(n: usize, mut slot: usize) -> (usize, usize) {
    let mut i = 1;
    while slot >= n - i {
        slot -= n - i;
        i += 1;
    }
    (i, i + 1 + slot)
}

// ---------------------------------------------------------------------------
// Signed permutations

/// An element of the hyperoctahedral group `B_n`, in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    window: Window,
}

impl SignedPermutation {
    /// Builds a signed permutation from its window, checking bijectivity.
    pub fn new(window: &[i32]) -> Result<Self> {
        let n = window.len();
        if n > MAX_SIZE {
            return Err(Error::Parse {
                input: format!("{window:?}"),
                reason: format!("size {n} exceeds {MAX_SIZE}"),
            });
        }
        let mut seen = vec![false; n + 1];
        for &a in window {
            let reason = if a == 0 {
                Some("zero entry".to_string())
            } else if a.unsigned_abs() as usize > n {
                Some(format!("entry {a} is outside [-{n},{n}]"))
            } else if std::mem::replace(&mut seen[a.unsigned_abs() as usize], true) {
                Some(format!("absolute value {} is repeated", a.abs()))
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::Parse {
                    input: render_window(window.iter().copied()),
                    reason,
                });
            }
        }
        Ok(SignedPermutation {
            window: window.iter().map(|&a| a as i8).collect(),
        })
    }

    fn from_window_unchecked(window: Window) -> Self {
        SignedPermutation { window }
    }

    /// The empty permutation ι, the unique element of `B_0`.
    pub fn empty() -> Self {
        SignedPermutation {
            window: Window::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            window: (1..=n as i8).collect(),
        }
    }

    /// The longest element `(-1, -2, …, -n)`.
    pub fn longest(n: usize) -> Self {
        SignedPermutation {
            window: (1..=n as i8).map(|a| -a).collect(),
        }
    }

    /// Coxeter generator `s_i` of `B_n`: `s_0` swaps 1 and -1, `s_i` swaps `i` and `i+1`.
    pub fn generator(i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        let mut w = Self::identity(n);
        if i == 0 {
            w.window[0] = -1;
        } else {
            w.window.swap(i - 1, i);
        }
        Ok(w)
    }

    pub fn size(&self) -> usize {
        self.window.len()
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &a)| a as usize == i + 1)
    }

    pub fn window(&self) -> Vec<i32> {
        self.window.iter().map(|&a| a as i32).collect()
    }

    /// `w_i` for `1 ≤ i ≤ n`.
    #[inline]
    pub fn at(&self, i: usize) -> i32 {
        self.window[i - 1] as i32
    }

    /// Evaluates `w` anywhere on `[-n, n]`.
    pub fn eval(&self, i: i32) -> i32 {
        match i.cmp(&0) {
            Ordering::Equal => 0,
            Ordering::Greater => self.at(i as usize),
            Ordering::Less => -self.at((-i) as usize),
        }
    }

    /// `true` when every entry is positive, i.e. `w ∈ S_n`.
    pub fn is_unsigned(&self) -> bool {
        self.window.iter().all(|&a| a > 0)
    }

    /// Forgets signs: the permutation `|w_1| … |w_n|` of `S_n`.
    pub fn unsigned(&self) -> Self {
        Self::from_window_unchecked(self.window.iter().map(|a| a.abs()).collect())
    }

    /// `u ∘ v`, i.e. `(u ∘ v)(i) = u(v(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self::from_window_unchecked(
            other
                .window
                .iter()
                .map(|&v| {
                    let a = self.window[v.unsigned_abs() as usize - 1];
                    if v < 0 {
                        -a
                    } else {
                        a
                    }
                })
                .collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        let mut window: Window = SmallVec::from_elem(0, self.size());
        for (pos, &a) in self.window.iter().enumerate() {
            let p = (pos + 1) as i8;
            window[a.unsigned_abs() as usize - 1] = if a < 0 { -p } else { p };
        }
        Self::from_window_unchecked(window)
    }

    /// Signed position of the value `k`: `w^{-1}(k)`, with `w^{-1}(0) = 0`.
    pub fn position_of(&self, k: i32) -> i32 {
        if k == 0 {
            return 0;
        }
        let idx = self
            .window
            .iter()
            .position(|&a| a.unsigned_abs() as i32 == k.abs())
            .expect("value within range");
        let same_sign = (self.window[idx] > 0) == (k > 0);
        if same_sign {
            idx as i32 + 1
        } else {
            -(idx as i32 + 1)
        }
    }

    /// Left multiplication by `s_i`; panics if `i ≥ n`.
    pub fn left_generator(&self, i: usize) -> Self {
        assert!(i < self.size(), "generator index out of range");
        let window = self
            .window
            .iter()
            .map(|&a| {
                let (m, s) = (a.unsigned_abs() as usize, a.signum());
                if i == 0 {
                    if m == 1 {
                        -a
                    } else {
                        a
                    }
                } else if m == i {
                    s * (i as i8 + 1)
                } else if m == i + 1 {
                    s * i as i8
                } else {
                    a
                }
            })
            .collect();
        Self::from_window_unchecked(window)
    }

    /// The statistic sets `(Inv, Nega, Nsp)`.
    pub fn profile(&self) -> OrderProfile {
        OrderProfile::of(self)
    }

    /// Coxeter length `inv + nega + nsp`.
    pub fn length(&self) -> usize {
        let n = self.size();
        let mut len = 0;
        for i in 0..n {
            let a = self.window[i];
            if a < 0 {
                len += 1;
            }
            for &b in &self.window[i + 1..] {
                len += usize::from(a > b) + usize::from((a as i16) + (b as i16) < 0);
            }
        }
        len
    }

    /// Number of negative entries.
    pub fn nega(&self) -> usize {
        self.window.iter().filter(|&&a| a < 0).count()
    }

    /// Shifts every entry away from zero by `p`; `a[p] = a + sgn(a)·p`.
    pub fn shift(&self, p: usize) -> Vec<i32> {
        self.window
            .iter()
            .map(|&a| {
                let a = a as i32;
                a + a.signum() * p as i32
            })
            .collect()
    }

    /// The shifted product `u × v ∈ B_{p+q}`.
    pub fn shifted_product(&self, other: &Self) -> Self {
        let p = self.size() as i8;
        let mut window = self.window.clone();
        window.extend(other.window.iter().map(|&a| a + a.signum() * p));
        Self::from_window_unchecked(window)
    }

    /// Shifted product of a list of factors, left to right.
    pub fn shifted_product_all<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = &'a SignedPermutation>,
    {
        factors
            .into_iter()
            .fold(Self::empty(), |acc, f| acc.shifted_product(f))
    }

    /// The window `w_i … w_j` (1-based, inclusive) standardized by [`standardize`].
    pub fn sts_window(&self, i: usize, j: usize) -> Self {
        if i > j {
            return Self::empty();
        }
        let word: Vec<i32> = self.window[i - 1..j].iter().map(|&a| a as i32).collect();
        standardize(&word).expect("windows have no zero entries")
    }

    /// Descent set `{i ∈ [0, n-1] | w_i > w_{i+1}}` with `w_0 = 0`.
    pub fn descents(&self) -> DescentSet {
        let mut set = DescentSet::empty(self.size());
        let mut prev = 0i8;
        for (i, &a) in self.window.iter().enumerate() {
            if prev > a {
                set.insert(i);
            }
            prev = a;
        }
        set
    }

    /// Global descents: `i ∈ [n-1]` such that every entry in positions `≤ i`
    /// exceeds every entry in positions `> i`.
    pub fn global_descents(&self) -> Vec<usize> {
        let n = self.size();
        let mut suffix_max = vec![i8::MIN; n + 1];
        for i in (0..n).rev() {
            suffix_max[i] = suffix_max[i + 1].max(self.window[i]);
        }
        let mut prefix_min = i8::MAX;
        let mut out = Vec::new();
        for i in 1..n {
            prefix_min = prefix_min.min(self.window[i - 1]);
            if prefix_min > suffix_max[i] {
                out.push(i);
            }
        }
        out
    }

    /// Every element of `B_n`, in lexicographic order of the window.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::with_capacity((1usize << n) * (1..=n).product::<usize>());
        for perm in Self::all_unsigned(n) {
            for signs in 0u32..(1 << n) {
                let window = perm
                    .window
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| if signs >> i & 1 == 1 { -a } else { a })
                    .collect();
                out.push(Self::from_window_unchecked(window));
            }
        }
        out.sort_by(|a, b| a.window.cmp(&b.window));
        out
    }

    /// Every element of `S_n ⊂ B_n`, in lexicographic order.
    pub fn all_unsigned(n: usize) -> Vec<SignedPermutation> {
        let mut cur: Vec<i8> = (1..=n as i8).collect();
        let mut out = vec![Self::from_window_unchecked(cur.iter().copied().collect())];
        while next_permutation(&mut cur) {
            out.push(Self::from_window_unchecked(cur.iter().copied().collect()));
        }
        out
    }
}

/// A uniformly random element of `B_n`.
pub fn random_signed_permutation<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> SignedPermutation {
    use rand::seq::SliceRandom;
    let mut window: Vec<i8> = (1..=n as i8).collect();
    window.shuffle(rng);
    for a in window.iter_mut() {
        if rng.gen::<bool>() {
            *a = -*a;
        }
    }
    SignedPermutation::from_window_unchecked(window.into_iter().collect())
}

fn next_permutation(a: &mut [i8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Grade first, then lexicographic on the window.
impl Ord for SignedPermutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.window.cmp(&other.window))
    }
}

impl PartialOrd for SignedPermutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn render_window(entries: impl Iterator<Item = i32>) -> String {
    entries
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_window(self.window.iter().map(|&a| a as i32)))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Parses one-line notation: signed integers separated by commas and/or
/// whitespace, optionally wrapped in `()` or `[]`. The empty string is ι.
impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
            .unwrap_or(trimmed);
        let mut window = Vec::new();
        for tok in inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let a: i32 = tok.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: format!("{tok:?} is not an integer"),
            })?;
            window.push(a);
        }
        SignedPermutation::new(&window).map_err(|e| match e {
            Error::Parse { reason, .. } => Error::Parse {
                input: s.to_string(),
                reason,
            },
            other => other,
        })
    }
}

pub fn parse(text: &str) -> Result<SignedPermutation> {
    text.parse()
}

// ---------------------------------------------------------------------------
// Standardization

/// `sts`: the signed permutation with the sign pattern of `word` whose absolute
/// values are ordered like `|word|`, ties broken left to right.
pub fn standardize(word: &[i32]) -> Result<SignedPermutation> {
    if word.contains(&0) {
        return Err(Error::ZeroEntry);
    }
    let ranks = stable_ranks(word, |a| a.unsigned_abs() as i64);
    let window = word
        .iter()
        .zip(ranks)
        .map(|(&a, r)| if a < 0 { -(r as i8) } else { r as i8 })
        .collect();
    Ok(SignedPermutation::from_window_unchecked(window))
}

/// `st`: the unsigned permutation ordered like `word`, ties broken left to right.
pub fn standardize_plain(word: &[i32]) -> Result<SignedPermutation> {
    if word.contains(&0) {
        return Err(Error::ZeroEntry);
    }
    let ranks = stable_ranks(word, |a| a as i64);
    Ok(SignedPermutation::from_window_unchecked(
        ranks.into_iter().map(|r| r as i8).collect(),
    ))
}

fn stable_ranks(word: &[i32], key: impl Fn(i32) -> i64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| key(word[i]));
    let mut ranks = vec![0; word.len()];
    for (r, i) in order.into_iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

// ---------------------------------------------------------------------------
// Order profiles

/// The triple `(Inv, Nega, Nsp)` of a signed permutation.
///
/// Pair sets are bitsets over the `n(n-1)/2` slots in row-major `(i, j)`
/// order; `Nega` is a bitset over `[n]` (bit `i-1` for index `i`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderProfile {
    n: usize,
    inv: BitSet,
    nega: BitSet,
    nsp: BitSet,
}

impl OrderProfile {
    pub fn empty(n: usize) -> Self {
        let pairs = n * n.saturating_sub(1) / 2;
        OrderProfile {
            n,
            inv: BitSet::with_capacity(pairs),
            nega: BitSet::with_capacity(n),
            nsp: BitSet::with_capacity(pairs),
        }
    }

    pub fn of(w: &SignedPermutation) -> Self {
        let n = w.size();
        let mut p = Self::empty(n);
        let mut slot = 0;
        for i in 0..n {
            let a = w.window[i] as i16;
            if a < 0 {
                p.nega.insert(i);
            }
            for &b in &w.window[i + 1..] {
                let b = b as i16;
                if a > b {
                    p.inv.insert(slot);
                }
                if a + b < 0 {
                    p.nsp.insert(slot);
                }
                slot += 1;
            }
        }
        p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Adds `(i, j)` to `Inv`; returns `false` if already present.
    pub fn insert_inv(&mut self, i: usize, j: usize) -> bool {
        self.inv.insert(pair_slot(self.n, i, j))
    }

    pub fn insert_nsp(&mut self, i: usize, j: usize) -> bool {
        self.nsp.insert(pair_slot(self.n, i, j))
    }

    pub fn insert_nega(&mut self, i: usize) -> bool {
        self.nega.insert(i - 1)
    }

    pub fn has_inv(&self, i: usize, j: usize) -> bool {
        self.inv.contains(pair_slot(self.n, i, j))
    }

    pub fn has_nsp(&self, i: usize, j: usize) -> bool {
        self.nsp.contains(pair_slot(self.n, i, j))
    }

    pub fn has_nega(&self, i: usize) -> bool {
        self.nega.contains(i - 1)
    }

    pub fn inv(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.inv.iter().map(|s| slot_pair(self.n, s))
    }

    pub fn nsp(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nsp.iter().map(|s| slot_pair(self.n, s))
    }

    pub fn nega(&self) -> impl Iterator<Item = usize> + '_ {
        self.nega.iter().map(|i| i + 1)
    }

    pub fn inv_count(&self) -> usize {
        self.inv.len()
    }

    pub fn nega_count(&self) -> usize {
        self.nega.len()
    }

    pub fn nsp_count(&self) -> usize {
        self.nsp.len()
    }

    pub fn length(&self) -> usize {
        self.inv.len() + self.nega.len() + self.nsp.len()
    }

    /// Componentwise containment of all three sets.
    #[inline]
    pub fn is_contained_in(&self, other: &OrderProfile) -> bool {
        self.n == other.n
            && self.nega.is_subset(&other.nega)
            && self.inv.is_subset(&other.inv)
            && self.nsp.is_subset(&other.nsp)
    }
}

impl fmt::Debug for OrderProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderProfile")
            .field("inv", &self.inv().collect::<Vec<_>>())
            .field("nega", &self.nega().collect::<Vec<_>>())
            .field("nsp", &self.nsp().collect::<Vec<_>>())
            .finish()
    }
}

// ---------------------------------------------------------------------------
// Descent sets

/// A subset of `[0, n-1]` together with its ambient `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSet {
    n: usize,
    mask: u128,
}

impl DescentSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SIZE);
        DescentSet { n, mask: 0 }
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(n);
        for e in elements {
            if e >= n {
                return Err(Error::Parse {
                    input: format!("{e}"),
                    reason: format!("element outside [0,{}]", n as i64 - 1),
                });
            }
            set.insert(e);
        }
        Ok(set)
    }

    /// Every subset of `[0, n-1]`, in increasing order of the bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = DescentSet> {
        assert!(n < 32, "subset enumeration limited to n < 32");
        (0u128..(1u128 << n)).map(move |mask| DescentSet { n, mask })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n);
        self.mask |= 1 << i;
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.mask >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_subset(&self, other: &DescentSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}@{}", items.join(","), self.n)
    }
}

impl fmt::Debug for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `{0,2}@4`.
impl FromStr for DescentSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (set, n) = s
            .trim()
            .split_once('@')
            .ok_or_else(|| bad("expected the form {i,j,...}@n"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("ambient size is not a number"))?;
        let body = set
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| bad("subset must be braced"))?;
        let mut elements = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            elements.push(tok.parse::<usize>().map_err(|_| bad("element is not a number"))?);
        }
        if n > MAX_SIZE {
            return Err(bad("ambient size too large"));
        }
        DescentSet::from_elements(n, elements).map_err(|_| bad("element outside [0,n-1]"))
    }
}

// ---------------------------------------------------------------------------
// Shuffles

/// A permutation increasing on each consecutive block of the given sizes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Shuffle {
    perm: SignedPermutation,
    blocks: Vec<usize>,
}

impl Shuffle {
    /// Validates that `perm` is unsigned and increasing on every block.
    pub fn new(perm: SignedPermutation, blocks: Vec<usize>) -> Result<Self> {
        if blocks.iter().sum::<usize>() != perm.size() {
            return Err(Error::InvalidShuffle(format!(
                "blocks {blocks:?} do not sum to {}",
                perm.size()
            )));
        }
        if !perm.is_unsigned() {
            return Err(Error::InvalidShuffle(format!("{perm} has negative entries")));
        }
        let mut start = 0;
        for &b in &blocks {
            let block = &perm.window[start..start + b];
            if block.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidShuffle(format!(
                    "{perm} is not increasing on positions {}..{}",
                    start + 1,
                    start + b
                )));
            }
            start += b;
        }
        Ok(Shuffle { perm, blocks })
    }

    pub fn perm(&self) -> &SignedPermutation {
        &self.perm
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.perm.size()
    }
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.perm.fmt(f)
    }
}

/// All `(p_1, …, p_k)`-shuffles in lexicographic order of the window.
pub fn shuffles(blocks: &[usize]) -> Vec<Shuffle> {
    let n: usize = blocks.iter().sum();
    // Assign each value 1..=n to a block; the window lists each block's values in order.
    let mut out = Vec::new();
    let mut remaining = blocks.to_vec();
    let mut labels = Vec::with_capacity(n);
    fill_labels(&mut remaining, &mut labels, n, &mut |labels| {
        let mut starts: Vec<usize> = blocks
            .iter()
            .scan(0, |acc, &b| {
                let s = *acc;
                *acc += b;
                Some(s)
            })
            .collect();
        let mut window: Window = SmallVec::from_elem(0, n);
        for (value, &block) in labels.iter().enumerate() {
            window[starts[block]] = value as i8 + 1;
            starts[block] += 1;
        }
        out.push(Shuffle {
            perm: SignedPermutation::from_window_unchecked(window),
            blocks: blocks.to_vec(),
        });
    });
    out.sort_by(|a, b| a.perm.window.cmp(&b.perm.window));
    out
}

fn fill_labels(
    remaining: &mut [usize],
    labels: &mut Vec<usize>,
    n: usize,
    emit: &mut dyn FnMut(&[usize]),
) {
    if labels.len() == n {
        emit(labels);
        return;
    }
    for b in 0..remaining.len() {
        if remaining[b] > 0 {
            remaining[b] -= 1;
            labels.push(b);
            fill_labels(remaining, labels, n, emit);
            labels.pop();
            remaining[b] += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Reflections

/// A reflection of `B_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Reflection {
    /// `(i, j)(-i, -j)` with `1 ≤ i < |j| ≤ n`; `j` may be negative.
    Transposition { i: usize, j: i32 },
    /// `(i, -i)`.
    SignChange { i: usize },
}

impl Reflection {
    /// Every reflection of `B_n`.
    pub fn all(n: usize) -> Vec<Reflection> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Reflection::Transposition { i, j: j as i32 });
                out.push(Reflection::Transposition { i, j: -(j as i32) });
            }
            out.push(Reflection::SignChange { i });
        }
        out
    }

    pub fn to_perm(&self, n: usize) -> SignedPermutation {
        let mut w = SignedPermutation::identity(n);
        match *self {
            Reflection::SignChange { i } => w.window[i - 1] = -(i as i8),
            Reflection::Transposition { i, j } => {
                let m = j.unsigned_abs() as usize;
                let s = j.signum() as i8;
                w.window[i - 1] = s * m as i8;
                w.window[m - 1] = s * i as i8;
            }
        }
        w
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Reflection::Transposition { i, j } => {
                write!(f, "({i},{j})({},{})", -(i as i64), -j)
            }
            Reflection::SignChange { i } => write!(f, "({i},-{i})"),
        }
    }
}
