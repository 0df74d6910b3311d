//! Brute-force reference implementation used by the integration tests.
//!
//! Works on plain `Vec<i32>` windows and never calls into the library.
//! Lengths come from breadth-first search over the generators, and the weak
//! order from `u ≤ v ⇔ ℓ(v) = ℓ(u) + ℓ(vu⁻¹)`. Products are word shuffles.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

pub type P = Vec<i32>;
pub type Sum = BTreeMap<P, i64>;
pub type Tensor = BTreeMap<(P, P), i64>;

pub fn identity(n: usize) -> P {
    (1..=n as i32).collect()
}

fn eval(w: &[i32], k: i32) -> i32 {
    if k > 0 {
        w[k as usize - 1]
    } else {
        -w[(-k) as usize - 1]
    }
}

/// `(u∘v)(i) = u(v(i))`.
pub fn compose(u: &[i32], v: &[i32]) -> P {
    v.iter().map(|&k| eval(u, k)).collect()
}

pub fn inverse(w: &[i32]) -> P {
    let mut out = vec![0; w.len()];
    for (i, &a) in w.iter().enumerate() {
        let pos = i as i32 + 1;
        out[a.unsigned_abs() as usize - 1] = if a > 0 { pos } else { -pos };
    }
    out
}

/// `s_0` negates 1; `s_i` swaps `i` and `i+1`.
pub fn generator(i: usize, n: usize) -> P {
    let mut w = identity(n);
    if i == 0 {
        w[0] = -1;
    } else {
        w.swap(i - 1, i);
    }
    w
}

fn permutations(n: usize) -> Vec<Vec<i32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n as i32);
            out.push(q);
        }
    }
    out
}

pub fn all(n: usize) -> Vec<P> {
    let mut out = Vec::new();
    for p in permutations(n) {
        for mask in 0u32..(1 << n) {
            out.push(
                p.iter()
                    .enumerate()
                    .map(|(i, &a)| if mask >> i & 1 == 1 { -a } else { a })
                    .collect(),
            );
        }
    }
    out.sort();
    out
}

pub fn all_unsigned(n: usize) -> Vec<P> {
    let mut out = permutations(n);
    out.sort();
    out
}

/// Lengths of every element of `B_n`, by breadth-first search from the identity.
pub struct Lengths {
    pub n: usize,
    len: HashMap<P, usize>,
}

impl Lengths {
    pub fn new(n: usize) -> Self {
        let gens: Vec<P> = (0..n).map(|i| generator(i, n)).collect();
        let mut len = HashMap::new();
        let id = identity(n);
        len.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = len[&w];
            for g in &gens {
                let x = compose(g, &w);
                if !len.contains_key(&x) {
                    len.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        Lengths { n, len }
    }

    pub fn len(&self, w: &[i32]) -> usize {
        self.len[w]
    }

    pub fn leq(&self, u: &[i32], v: &[i32]) -> bool {
        self.len(v) == self.len(u) + self.len(&compose(v, &inverse(u)))
    }

    /// Upper covers `s_i w` with `ℓ(s_i w) = ℓ(w) + 1`.
    pub fn up(&self, w: &[i32]) -> Vec<P> {
        (0..self.n)
            .map(|i| compose(&generator(i, self.n), w))
            .filter(|x| self.len(x) == self.len(w) + 1)
            .collect()
    }

    /// `{v : u ≤ v}` by upward search, sorted by length then window.
    pub fn upper(&self, u: &[i32]) -> Vec<P> {
        let mut seen = BTreeSet::from([u.to_vec()]);
        let mut stack = vec![u.to_vec()];
        while let Some(w) = stack.pop() {
            for x in self.up(&w) {
                if seen.insert(x.clone()) {
                    stack.push(x);
                }
            }
        }
        let mut out: Vec<P> = seen.into_iter().collect();
        out.sort_by_key(|w| (self.len(w), w.clone()));
        out
    }

    pub fn interval(&self, u: &[i32], v: &[i32]) -> BTreeSet<P> {
        self.upper(u)
            .into_iter()
            .filter(|x| self.leq(x, v))
            .collect()
    }

    /// `μ(u, v)` for every `v ≥ u`.
    pub fn mobius_row(&self, u: &[i32]) -> Vec<(P, i64)> {
        let ups = self.upper(u);
        let mut row: Vec<(P, i64)> = Vec::with_capacity(ups.len());
        for v in ups {
            let m = if v == u {
                1
            } else {
                -row.iter()
                    .filter(|(z, _)| self.leq(z, &v))
                    .map(|(_, m)| m)
                    .sum::<i64>()
            };
            row.push((v, m));
        }
        row
    }
}

/// Lengths for every rank `0..=max`.
pub struct Oracle {
    ranks: Vec<Lengths>,
}

impl Oracle {
    pub fn new(max: usize) -> Self {
        Oracle {
            ranks: (0..=max).map(Lengths::new).collect(),
        }
    }

    pub fn rank(&self, n: usize) -> &Lengths {
        &self.ranks[n]
    }

    pub fn len(&self, w: &[i32]) -> usize {
        self.ranks[w.len()].len(w)
    }

    pub fn leq(&self, u: &[i32], v: &[i32]) -> bool {
        u.len() == v.len() && self.ranks[u.len()].leq(u, v)
    }

    pub fn upper(&self, u: &[i32]) -> Vec<P> {
        self.ranks[u.len()].upper(u)
    }

    pub fn interval(&self, u: &[i32], v: &[i32]) -> BTreeSet<P> {
        self.ranks[u.len()].interval(u, v)
    }

    /// `M_u = Σ_{v ≥ u} μ(u, v) F_v`.
    pub fn m_to_f(&self, x: &Sum) -> Sum {
        let mut out = Sum::new();
        for (u, c) in x {
            for (v, m) in self.ranks[u.len()].mobius_row(u) {
                add(&mut out, v, c * m);
            }
        }
        out
    }

    /// `F_u = Σ_{v ≥ u} M_v`.
    pub fn f_to_m(&self, x: &Sum) -> Sum {
        let mut out = Sum::new();
        for (u, c) in x {
            for v in self.upper(u) {
                add(&mut out, v, *c);
            }
        }
        out
    }

    pub fn tensor_f_to_m(&self, x: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for ((a, b), c) in x {
            let ub = self.upper(b);
            for a2 in self.upper(a) {
                for b2 in &ub {
                    add(&mut out, (a2.clone(), b2.clone()), *c);
                }
            }
        }
        out
    }

    pub fn m_product(&self, x: &Sum, y: &Sum) -> Sum {
        self.f_to_m(&f_product(&self.m_to_f(x), &self.m_to_f(y)))
    }

    pub fn m_coproduct(&self, x: &Sum) -> Tensor {
        self.tensor_f_to_m(&f_coproduct(&self.m_to_f(x)))
    }

    /// Greatest common lower bound, found by scanning `B_n`.
    pub fn meet(&self, u: &[i32], v: &[i32]) -> P {
        let lower: Vec<P> = all(u.len())
            .into_iter()
            .filter(|z| self.leq(z, u) && self.leq(z, v))
            .collect();
        let top = lower.iter().max_by_key(|z| self.len(z)).unwrap().clone();
        assert!(lower.iter().all(|z| self.leq(z, &top)), "no meet");
        top
    }

    pub fn join(&self, u: &[i32], v: &[i32]) -> P {
        let upper: Vec<P> = all(u.len())
            .into_iter()
            .filter(|z| self.leq(u, z) && self.leq(v, z))
            .collect();
        let bottom = upper.iter().min_by_key(|z| self.len(z)).unwrap().clone();
        assert!(upper.iter().all(|z| self.leq(&bottom, z)), "no join");
        bottom
    }
}

pub fn add<K: Ord>(map: &mut BTreeMap<K, i64>, k: K, c: i64) {
    if c == 0 {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

pub fn single(w: &[i32]) -> Sum {
    BTreeMap::from([(w.to_vec(), 1)])
}

/// Standardization keeping signs and ordering absolute values, ties left to right.
pub fn sts(word: &[i32]) -> P {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by_key(|&i| word[i].abs());
    let mut out = vec![0; word.len()];
    for (r, i) in idx.into_iter().enumerate() {
        out[i] = if word[i] < 0 { -(r as i32 + 1) } else { r as i32 + 1 };
    }
    out
}

pub fn shift(w: &[i32], p: usize) -> P {
    w.iter()
        .map(|&a| if a > 0 { a + p as i32 } else { a - p as i32 })
        .collect()
}

pub fn shifted_product(u: &[i32], v: &[i32]) -> P {
    let mut out = u.to_vec();
    out.extend(shift(v, u.len()));
    out
}

pub fn word_shuffles(a: &[i32], b: &[i32]) -> Vec<P> {
    if a.is_empty() || b.is_empty() {
        return vec![[a, b].concat()];
    }
    let mut out = Vec::new();
    for mut rest in word_shuffles(&a[1..], b) {
        rest.insert(0, a[0]);
        out.push(rest);
    }
    for mut rest in word_shuffles(a, &b[1..]) {
        rest.insert(0, b[0]);
        out.push(rest);
    }
    out
}

pub fn f_product(x: &Sum, y: &Sum) -> Sum {
    let mut out = Sum::new();
    for (u, a) in x {
        for (v, b) in y {
            for w in word_shuffles(u, &shift(v, u.len())) {
                add(&mut out, w, a * b);
            }
        }
    }
    out
}

pub fn f_coproduct(x: &Sum) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in x {
        for i in 0..=w.len() {
            add(&mut out, (sts(&w[..i]), sts(&w[i..])), *c);
        }
    }
    out
}

pub fn tensor_product(x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((a, b), c) in x {
        for ((a2, b2), c2) in y {
            for l in f_product(&single(a), &single(a2)).keys() {
                for r in f_product(&single(b), &single(b2)).keys() {
                    add(&mut out, (l.clone(), r.clone()), c * c2);
                }
            }
        }
    }
    out
}

/// `{i ∈ [0, n-1] : w_i > w_{i+1}}` with `w_0 = 0`.
pub fn descents(w: &[i32]) -> BTreeSet<usize> {
    let mut ext = vec![0];
    ext.extend_from_slice(w);
    (0..w.len()).filter(|&i| ext[i] > ext[i + 1]).collect()
}

pub fn inv_set(w: &[i32]) -> BTreeSet<(usize, usize)> {
    pairs(w.len()).filter(|&(i, j)| w[i - 1] > w[j - 1]).collect()
}

pub fn nsp_set(w: &[i32]) -> BTreeSet<(usize, usize)> {
    pairs(w.len()).filter(|&(i, j)| w[i - 1] + w[j - 1] < 0).collect()
}

pub fn nega_set(w: &[i32]) -> BTreeSet<usize> {
    (1..=w.len()).filter(|&i| w[i - 1] < 0).collect()
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Unsigned permutations increasing on each block of positions.
pub fn shuffles(blocks: &[usize]) -> Vec<P> {
    let n: usize = blocks.iter().sum();
    all_unsigned(n)
        .into_iter()
        .filter(|w| {
            let mut start = 0;
            blocks.iter().all(|&b| {
                let ok = w[start..start + b].windows(2).all(|p| p[0] < p[1]);
                start += b;
                ok
            })
        })
        .collect()
}

/// `x ↦ x·ξ⁻¹`.
pub fn tau(xi: &[i32], x: &[i32]) -> P {
    compose(x, &inverse(xi))
}

pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every tuple `(u_1, …, u_k)` with `u_i ∈ B_{blocks[i]}`.
pub fn factor_tuples(blocks: &[usize]) -> Vec<Vec<P>> {
    let mut out: Vec<Vec<P>> = vec![Vec::new()];
    for &b in blocks {
        let elems = all(b);
        out = out
            .into_iter()
            .flat_map(|t| {
                elems.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    out
}

pub fn product_of(tuple: &[P]) -> P {
    tuple
        .iter()
        .fold(Vec::new(), |acc, w| shifted_product(&acc, w))
}

/// A polynomial in `x_0, …, x_m` keyed by exponent vectors.
pub type Poly = BTreeMap<Vec<u8>, i64>;

/// `F_D` truncated to `x_0, …, x_m`: weakly increasing indices
/// `0 = i_0 ≤ i_1 ≤ … ≤ i_n ≤ m`, strict at the positions in `D`.
pub fn realize_f(d: &BTreeSet<usize>, n: usize, m: usize) -> Poly {
    let mut out = Poly::new();
    let mut exps = vec![0u8; m + 1];
    fn go(j: usize, prev: usize, n: usize, m: usize, d: &BTreeSet<usize>, e: &mut Vec<u8>, out: &mut Poly) {
        if j == n {
            *out.entry(e.clone()).or_insert(0) += 1;
            return;
        }
        let lo = prev + usize::from(d.contains(&j));
        for i in lo..=m {
            e[i] += 1;
            go(j + 1, i, n, m, d, e, out);
            e[i] -= 1;
        }
    }
    go(0, 0, n, m, d, &mut exps, &mut out);
    out
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add(&mut out, e, ca * cb);
        }
    }
    out
}

pub fn poly_add(a: &Poly, b: &Poly, k: i64) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        add(&mut out, e.clone(), k * c);
    }
    out
}
