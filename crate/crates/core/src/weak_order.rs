//! The left weak order on `B_n`.
//!
//! `u ≤ v` holds exactly when each of `Inv`, `Nega`, `Nsp` of `u` is contained
//! in the corresponding set of `v`, which makes the order test a handful of
//! word-sized subset checks. Covers are `u ⋖ s_i·u`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::perm::{DescentSet, OrderProfile, Reflection, SignedPermutation};

/// Default rank cap for dense enumeration.
pub const DEFAULT_MAX_N: usize = 6;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "OCTAWEAK_MAX_N";

fn same_size(u: &SignedPermutation, v: &SignedPermutation) -> Result<()> {
    if u.size() != v.size() {
        return Err(Error::SizeMismatch {
            left: u.size(),
            right: v.size(),
        });
    }
    Ok(())
}

/// `u ≤ v` in the left weak order.
pub fn leq(u: &SignedPermutation, v: &SignedPermutation) -> Result<bool> {
    same_size(u, v)?;
    Ok(u.profile().is_contained_in(&v.profile()))
}

/// The statistic that grows when passing from `u` to a cover `s_i·u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverStatistic {
    Nega(usize),
    Inv(usize, usize),
    Nsp(usize, usize),
}

/// If `s_i·u` covers `u`, the single element it adds to the profile.
///
/// Positions are signed: `u^{-1}(-k) = -u^{-1}(k)` and `u^{-1}(0) = 0`.
pub fn cover_step(u: &SignedPermutation, i: usize) -> Option<CoverStatistic> {
    let n = u.size();
    if i >= n {
        return None;
    }
    if i == 0 {
        let a = u.position_of(1);
        return (a > 0).then_some(CoverStatistic::Nega(a as usize));
    }
    let a = u.position_of(i as i32);
    let b = u.position_of(i as i32 + 1);
    if a >= b {
        return None;
    }
    Some(match (a > 0, b > 0) {
        (true, true) => CoverStatistic::Inv(a as usize, b as usize),
        (false, true) => {
            let (x, y) = ((-a) as usize, b as usize);
            CoverStatistic::Nsp(x.min(y), x.max(y))
        }
        (false, false) => CoverStatistic::Inv((-b) as usize, (-a) as usize),
        (true, false) => unreachable!("a < b with a > 0 forces b > 0"),
    })
}

/// Upper covers `s_i·u`, labelled by the generator index.
pub fn covers_labeled(u: &SignedPermutation) -> Vec<(usize, SignedPermutation)> {
    (0..u.size())
        .filter(|&i| cover_step(u, i).is_some())
        .map(|i| (i, u.left_generator(i)))
        .collect()
}

pub fn covers(u: &SignedPermutation) -> Vec<SignedPermutation> {
    covers_labeled(u).into_iter().map(|(_, v)| v).collect()
}

/// Elements covered by `u`.
pub fn lower_covers(u: &SignedPermutation) -> Vec<SignedPermutation> {
    (0..u.size())
        .filter(|&i| {
            if i == 0 {
                u.position_of(1) < 0
            } else {
                u.position_of(i as i32) > u.position_of(i as i32 + 1)
            }
        })
        .map(|i| u.left_generator(i))
        .collect()
}

fn closure(
    start: &SignedPermutation,
    step: impl Fn(&SignedPermutation) -> Vec<SignedPermutation>,
    keep: impl Fn(&SignedPermutation) -> bool,
) -> Vec<SignedPermutation> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    if keep(start) {
        seen.insert(start.clone());
        queue.push_back(start.clone());
    }
    let mut out = Vec::new();
    while let Some(z) = queue.pop_front() {
        for y in step(&z) {
            if keep(&y) && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(z);
    }
    out
}

/// `{z | u ≤ z}`, in breadth-first (hence length-nondecreasing) order.
pub fn upper_set(u: &SignedPermutation) -> Vec<SignedPermutation> {
    closure(u, covers, |_| true)
}

/// `{z | z ≤ u}`, in breadth-first order from `u` downward.
pub fn lower_set(u: &SignedPermutation) -> Vec<SignedPermutation> {
    closure(u, lower_covers, |_| true)
}

/// `{z | u ≤ z ≤ v}`, sorted by length then window; empty if `u ≰ v`.
pub fn interval(u: &SignedPermutation, v: &SignedPermutation) -> Result<Vec<SignedPermutation>> {
    same_size(u, v)?;
    let top = v.profile();
    let mut out = closure(u, covers, |z| z.profile().is_contained_in(&top));
    sort_graded(&mut out);
    Ok(out)
}

fn sort_graded(items: &mut [SignedPermutation]) {
    items.sort_by_cached_key(|z| (z.length(), z.clone()));
}

/// The right-descent reflections `T_R(w)`, read off the profile.
pub fn reflections_tr(w: &SignedPermutation) -> Vec<Reflection> {
    let prof = w.profile();
    let mut out: Vec<Reflection> = prof
        .inv()
        .map(|(i, j)| Reflection::Transposition { i, j: j as i32 })
        .collect();
    out.extend(prof.nega().map(|i| Reflection::SignChange { i }));
    out.extend(
        prof.nsp()
            .map(|(i, j)| Reflection::Transposition { i, j: -(j as i32) }),
    );
    out
}

/// `{t | ℓ(wt) < ℓ(w)}` by trying every reflection.
pub fn reflections_tr_by_length(w: &SignedPermutation) -> Vec<Reflection> {
    let n = w.size();
    let len = w.length();
    Reflection::all(n)
        .into_iter()
        .filter(|t| w.compose_unchecked(&t.to_perm(n)).length() < len)
        .collect()
}

fn breakpoints(set: &DescentSet) -> Vec<usize> {
    let n = set.ambient();
    let mut cuts = vec![0];
    cuts.extend(set.elements().into_iter().filter(|&i| i > 0));
    cuts.push(n);
    cuts
}

/// `ζ_I`, the largest element with descent set `I`.
pub fn descent_class_max(set: &DescentSet) -> SignedPermutation {
    let cuts = breakpoints(set);
    let mut window = Vec::with_capacity(set.ambient());
    for (r, pair) in cuts.windows(2).enumerate() {
        let (lo, hi) = (pair[0] as i32, pair[1] as i32);
        if r == 0 && !set.contains(0) {
            window.extend(lo + 1..=hi);
        } else {
            window.extend((lo + 1..=hi).rev().map(|a| -a));
        }
    }
    SignedPermutation::new(&window).expect("descent class maximum is a signed permutation")
}

/// The smallest element with descent set `I`: the longest element of the
/// parabolic subgroup generated by `{s_i | i ∈ I}`.
pub fn descent_class_min(set: &DescentSet) -> SignedPermutation {
    let n = set.ambient();
    let mut window: Vec<i32> = (1..=n as i32).collect();
    let mut i = 0;
    while i < n {
        if !set.contains(i) {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && set.contains(i) {
            i += 1;
        }
        // run s_start … s_{i-1}
        if start == 0 {
            for a in window.iter_mut().take(i) {
                *a = -*a;
            }
        } else {
            window[start - 1..i].reverse();
        }
    }
    SignedPermutation::new(&window).expect("parabolic longest element")
}

/// The descent class `Y_I = {w | Des(w) = I}` as the interval between its extremes.
pub fn descent_class(set: &DescentSet) -> Vec<SignedPermutation> {
    interval(&descent_class_min(set), &descent_class_max(set)).expect("same size")
}

/// `Des(w) ⊆ I ⇔ w ≤ ζ_I` for every `w ∈ B_n` and every `I ⊆ [0, n-1]`.
pub fn galois_adjoint_check(n: usize) -> bool {
    let elements = SignedPermutation::all(n);
    let tops: Vec<(DescentSet, OrderProfile)> = DescentSet::all(n)
        .map(|i| (i, descent_class_max(&i).profile()))
        .collect();
    elements.iter().all(|w| {
        let des = w.descents();
        let prof = w.profile();
        tops.iter()
            .all(|(i, top)| des.is_subset(i) == prof.is_contained_in(top))
    })
}

// ---------------------------------------------------------------------------
// Cover graph

/// The Hasse diagram of `B_n`, built by brute force from generator actions.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    n: usize,
    elements: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, usize>,
    up: Vec<Vec<(usize, usize)>>,
    lengths: Vec<usize>,
}

impl CoverGraph {
    /// Builds the graph; edges are `u → s_i·u` whenever the length goes up by one.
    ///
    /// Lengths are computed by breadth-first search from the identity over all
    /// generator moves, independent of the statistic formulas.
    pub fn build(n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::RankCapExceeded { n, cap });
        }
        let elements = SignedPermutation::all(n);
        let index: HashMap<_, _> = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        let gens: Vec<Vec<usize>> = elements
            .iter()
            .map(|w| (0..n).map(|i| index[&w.left_generator(i)]).collect())
            .collect();

        let mut lengths = vec![usize::MAX; elements.len()];
        let mut queue = VecDeque::new();
        let e = index[&SignedPermutation::identity(n)];
        lengths[e] = 0;
        queue.push_back(e);
        while let Some(k) = queue.pop_front() {
            for &m in &gens[k] {
                if lengths[m] == usize::MAX {
                    lengths[m] = lengths[k] + 1;
                    queue.push_back(m);
                }
            }
        }
        let up = gens
            .iter()
            .enumerate()
            .map(|(k, g)| {
                g.iter()
                    .enumerate()
                    .filter(|&(_, &m)| lengths[m] == lengths[k] + 1)
                    .map(|(i, &m)| (m, i))
                    .collect()
            })
            .collect();
        Ok(CoverGraph {
            n,
            elements,
            index,
            up,
            lengths,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn vertex_count(&self) -> usize {
        self.elements.len()
    }

    pub fn edge_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, w: &SignedPermutation) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Up-neighbours of vertex `k` as `(vertex, generator index)`.
    pub fn up_edges(&self, k: usize) -> &[(usize, usize)] {
        &self.up[k]
    }

    /// Length as graph distance from the identity.
    pub fn length(&self, k: usize) -> usize {
        self.lengths[k]
    }

    pub fn height(&self) -> usize {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// Vertices with no incoming, resp. outgoing, cover edges.
    pub fn sources_and_sinks(&self) -> (Vec<usize>, Vec<usize>) {
        let mut has_in = vec![false; self.elements.len()];
        for edges in &self.up {
            for &(m, _) in edges {
                has_in[m] = true;
            }
        }
        let sources = (0..self.elements.len()).filter(|&k| !has_in[k]).collect();
        let sinks = (0..self.elements.len())
            .filter(|&k| self.up[k].is_empty())
            .collect();
        (sources, sinks)
    }

    /// Reachability from vertex `k` along up-edges (including `k` itself).
    pub fn reachable_from(&self, k: usize) -> Vec<bool> {
        let mut seen = vec![false; self.elements.len()];
        let mut stack = vec![k];
        seen[k] = true;
        while let Some(a) = stack.pop() {
            for &(b, _) in &self.up[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }

    pub fn reachable(&self, u: &SignedPermutation, v: &SignedPermutation) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.reachable_from(a)[b],
            _ => false,
        }
    }

    /// DOT rendering: vertices labelled in one-line notation and ranked by
    /// length, edges labelled by the generator index.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph B{} {{", self.n);
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=plaintext];");
        for (k, w) in self.elements.iter().enumerate() {
            let label = if self.n == 0 {
                "ι".to_string()
            } else {
                w.to_string()
            };
            let _ = writeln!(out, "  v{k} [label=\"{label}\"];");
        }
        for level in 0..=self.height() {
            let ids: Vec<String> = (0..self.elements.len())
                .filter(|&k| self.lengths[k] == level)
                .map(|k| format!("v{k}"))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join("; "));
        }
        for (k, edges) in self.up.iter().enumerate() {
            for &(m, i) in edges {
                let _ = writeln!(out, "  v{k} -> v{m} [label=\"{i}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

// ---------------------------------------------------------------------------
// Sessions

type Row = Arc<Vec<(SignedPermutation, i64)>>;

/// A rank-capped query session with cached closures and Möbius rows.
///
/// Safe to share between threads: caches sit behind `RwLock`s.
#[derive(Debug)]
pub struct WeakOrder {
    cap: usize,
    upper: RwLock<HashMap<SignedPermutation, Arc<Vec<SignedPermutation>>>>,
    lower: RwLock<HashMap<SignedPermutation, Arc<Vec<SignedPermutation>>>>,
    mobius: RwLock<HashMap<SignedPermutation, Row>>,
}

impl Default for WeakOrder {
    fn default() -> Self {
        Self::from_env()
    }
}

impl WeakOrder {
    pub fn new(cap: usize) -> Self {
        WeakOrder {
            cap,
            upper: RwLock::default(),
            lower: RwLock::default(),
            mobius: RwLock::default(),
        }
    }

    /// Cap from `OCTAWEAK_MAX_N`, falling back to [`DEFAULT_MAX_N`].
    pub fn from_env() -> Self {
        let cap = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_N);
        Self::new(cap)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::RankCapExceeded { n, cap: self.cap });
        }
        Ok(())
    }

    pub fn cover_graph(&self, n: usize) -> Result<CoverGraph> {
        CoverGraph::build(n, self.cap)
    }

    fn cached(
        cache: &RwLock<HashMap<SignedPermutation, Arc<Vec<SignedPermutation>>>>,
        u: &SignedPermutation,
        compute: impl FnOnce() -> Vec<SignedPermutation>,
    ) -> Arc<Vec<SignedPermutation>> {
        if let Some(hit) = cache.read().unwrap().get(u) {
            return hit.clone();
        }
        let value = Arc::new(compute());
        cache
            .write()
            .unwrap()
            .entry(u.clone())
            .or_insert(value)
            .clone()
    }

    /// Upper set of `u`, sorted by length then window.
    pub fn upper_set(&self, u: &SignedPermutation) -> Result<Arc<Vec<SignedPermutation>>> {
        self.check_rank(u.size())?;
        Ok(Self::cached(&self.upper, u, || {
            let mut items = upper_set(u);
            sort_graded(&mut items);
            items
        }))
    }

    /// Lower set of `u`, sorted by length then window.
    pub fn lower_set(&self, u: &SignedPermutation) -> Result<Arc<Vec<SignedPermutation>>> {
        self.check_rank(u.size())?;
        Ok(Self::cached(&self.lower, u, || {
            let mut items = lower_set(u);
            sort_graded(&mut items);
            items
        }))
    }

    pub fn leq(&self, u: &SignedPermutation, v: &SignedPermutation) -> Result<bool> {
        leq(u, v)
    }

    pub fn interval(
        &self,
        u: &SignedPermutation,
        v: &SignedPermutation,
    ) -> Result<Vec<SignedPermutation>> {
        self.check_rank(u.size())?;
        interval(u, v)
    }

    /// Least upper bound: the unique length-minimal common upper bound.
    pub fn join(&self, u: &SignedPermutation, v: &SignedPermutation) -> Result<SignedPermutation> {
        same_size(u, v)?;
        let ups = self.upper_set(u)?;
        let pv = v.profile();
        let common: Vec<&SignedPermutation> = ups
            .iter()
            .filter(|z| pv.is_contained_in(&z.profile()))
            .collect();
        Ok(unique_extreme(common, |z| z.length(), true))
    }

    /// Greatest lower bound: the unique length-maximal common lower bound.
    pub fn meet(&self, u: &SignedPermutation, v: &SignedPermutation) -> Result<SignedPermutation> {
        same_size(u, v)?;
        let downs = self.lower_set(u)?;
        let pv = v.profile();
        let common: Vec<&SignedPermutation> = downs
            .iter()
            .filter(|z| z.profile().is_contained_in(&pv))
            .collect();
        Ok(unique_extreme(common, |z| z.length(), false))
    }

    /// `μ(u, z)` for every `z ≥ u`, sorted by length then window.
    pub fn mobius_row(&self, u: &SignedPermutation) -> Result<Row> {
        if let Some(hit) = self.mobius.read().unwrap().get(u) {
            return Ok(hit.clone());
        }
        let ups = self.upper_set(u)?;
        let row = Arc::new(mobius_over(&ups));
        Ok(self
            .mobius
            .write()
            .unwrap()
            .entry(u.clone())
            .or_insert(row)
            .clone())
    }

    /// `μ(u, v)`; zero when `u ≰ v`.
    ///
    /// Only the interval `[u, v]` is explored, so this works at ranks where the
    /// full upper set of `u` would be too large.
    pub fn mobius(&self, u: &SignedPermutation, v: &SignedPermutation) -> Result<i64> {
        same_size(u, v)?;
        if let Some(row) = self.mobius.read().unwrap().get(u) {
            return Ok(row
                .iter()
                .find(|(z, _)| z == v)
                .map(|&(_, m)| m)
                .unwrap_or(0));
        }
        let items = interval(u, v)?;
        Ok(mobius_over(&items)
            .into_iter()
            .find(|(z, _)| z == v)
            .map(|(_, m)| m)
            .unwrap_or(0))
    }
}

/// Möbius values from the first element of a graded-sorted, order-convex set
/// whose first element is its minimum.
fn mobius_over(items: &[SignedPermutation]) -> Vec<(SignedPermutation, i64)> {
    let profiles: Vec<OrderProfile> = items.iter().map(|z| z.profile()).collect();
    let mut mu: Vec<i64> = Vec::with_capacity(items.len());
    for k in 0..items.len() {
        if k == 0 {
            mu.push(1);
            continue;
        }
        let s: i64 = (0..k)
            .filter(|&y| mu[y] != 0 && profiles[y].is_contained_in(&profiles[k]))
            .map(|y| mu[y])
            .sum();
        mu.push(-s);
    }
    items.iter().cloned().zip(mu).collect()
}

fn unique_extreme(
    candidates: Vec<&SignedPermutation>,
    key: impl Fn(&SignedPermutation) -> usize,
    minimal: bool,
) -> SignedPermutation {
    let best = if minimal {
        candidates.iter().map(|z| key(z)).min()
    } else {
        candidates.iter().map(|z| key(z)).max()
    }
    .expect("B_n is a bounded lattice");
    let hits: Vec<_> = candidates.into_iter().filter(|z| key(z) == best).collect();
    assert_eq!(hits.len(), 1, "weak order bound must be unique");
    hits[0].clone()
}
