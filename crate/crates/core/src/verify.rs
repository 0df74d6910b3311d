//! Compiled-in verification suites: each one checks a structural identity
//! exhaustively (or on seeded random samples) at small rank against a
//! brute-force computation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::bqsym::{
    bq_to_fundamental, bq_to_monomial, descent_map, monomial_descent_formula, realize, rota_check,
    BQFormalSum, PseudoComposition, TruncatedPolynomial,
};
use crate::embeddings::{
    component_interval, component_isomorphism, componentwise_order, compose_shuffles, gap_check,
    is_convex_embedding, is_minimal_coset_representative, parabolic_subgroup, partition_check,
    profile_via_formula, tau, ComponentSignature, ParabolicFamily,
};
use crate::hopf::{
    coproduct_of_basis, f_coproduct, f_product, forget_signs, gdes_coproduct_formula,
    hopf_axiom_suite, m_coproduct, m_product, m_product_b_formula, m_product_c_formula,
    shuffle_coefficients, to_fundamental, to_monomial, Basis, FormalSum, TensorSum,
};
use crate::perm::{
    random_signed_permutation, shuffles, standardize, standardize_plain, DescentSet, Reflection,
    SignedPermutation,
};
use crate::weak_order::{
    self, cover_step, descent_class, descent_class_max, galois_adjoint_check, reflections_tr,
    reflections_tr_by_length, CoverGraph, CoverStatistic, WeakOrder,
};

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: String,
    pub attempted: u64,
    pub passed: u64,
    /// First failing case with its inputs and the mismatching values.
    pub counterexample: Option<String>,
    pub duration: Duration,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn new(suite: &str) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            attempted: 0,
            passed: 0,
            counterexample: None,
            duration: Duration::ZERO,
            notes: Vec::new(),
        }
    }

    /// Counts one check; returns `ok` so callers can stop at the first failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.attempted += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(mut self, start: Instant) -> Self {
        self.duration = start.elapsed();
        self
    }

    pub fn ok(&self) -> bool {
        self.passed == self.attempted && self.counterexample.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "attempted": self.attempted,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "duration_ms": self.duration.as_millis() as u64,
            "notes": self.notes,
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}/{} checks in {:.2?}",
            if self.ok() { "ok  " } else { "FAIL" },
            self.suite,
            self.passed,
            self.attempted,
            self.duration
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n    counterexample: {c}")?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}

/// Shared state for a verification run.
pub struct SuiteContext {
    pub max_n: usize,
    pub order: WeakOrder,
}

impl SuiteContext {
    /// Exhaustive suites run at ranks `≤ max_n`; the session cap must allow it.
    pub fn new(max_n: usize) -> Self {
        SuiteContext {
            max_n,
            order: WeakOrder::new(max_n.max(6)),
        }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub statement: &'static str,
    run: fn(&SuiteContext) -> VerifyReport,
}

impl Suite {
    pub fn run(&self, ctx: &SuiteContext) -> VerifyReport {
        (self.run)(ctx)
    }
}

pub fn suites() -> &'static [Suite] {
    SUITES
}

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

static SUITES: &[Suite] = &[
    Suite { name: "order-criterion", statement: "u ≤ v iff Inv, Nega and Nsp of u are contained in those of v (checked against cover-graph reachability)", run: order_criterion },
    Suite { name: "group-axioms", statement: "composition is associative with identity and inverses in B_n", run: group_axioms },
    Suite { name: "standardization", statement: "sts agrees with st on positive repeat-free words and breaks ties left to right", run: standardization },
    Suite { name: "length-distance", statement: "ℓ(w) = inv + nega + nsp = |T_R(w)| equals the cover-graph distance from the identity", run: length_distance },
    Suite { name: "reflection-sets", statement: "T_R(w) is the disjoint union of the Inv, Nega and Nsp reflection families and has ℓ(w) elements", run: reflection_sets },
    Suite { name: "cover-statistics", statement: "each cover s_i·u adds exactly one element to exactly one statistic set, as predicted by the signed-position rule", run: cover_statistics },
    Suite { name: "window-monotone", statement: "u ≤ v implies sts(u_i…u_j) ≤ sts(v_i…v_j) for all i < j", run: window_monotone },
    Suite { name: "lattice-axioms", statement: "meet and join are commutative, associative, idempotent and absorptive", run: lattice_axioms },
    Suite { name: "mobius-recursion", statement: "Σ_{u≤z≤v} μ(u,z) = 0 for u < v (value distribution recorded, not asserted)", run: mobius_recursion },
    Suite { name: "descent-classes", statement: "Y_I is the interval [w_0(I), ζ_I] and Des(ζ_I) = I", run: descent_classes },
    Suite { name: "galois-connection", statement: "Des is order-preserving and Des(w) ⊆ I iff w ≤ ζ_I", run: galois_connection },
    Suite { name: "profile-formula", statement: "the profile of (u×v)ξ^{-1} assembled from u, v, ξ equals the direct profile", run: profile_formula },
    Suite { name: "componentwise-order", statement: "u×v ≤ u'×v' iff u ≤ u' and v ≤ v', with the closed-form length difference", run: componentwise },
    Suite { name: "component-partition", statement: "the images τ_ξ(component) over shuffles and negative-index signatures partition B_n", run: component_partition },
    Suite { name: "component-intervals", statement: "each component is the interval between its explicit minimum and maximum", run: component_intervals },
    Suite { name: "component-gap", statement: "comparable elements in different components differ in length by at least 3 (attained at 132 < 13-2)", run: component_gap },
    Suite { name: "component-embedding", statement: "τ_ξ restricted to a component is a convex embedding preserving meets and joins", run: component_embedding },
    Suite { name: "interval-product", statement: "[u,u']×[v,v'] = [u×v, u'×v'] whenever Nega(v) = Nega(v')", run: interval_product },
    Suite { name: "component-isomorphism", statement: "x ↦ x·min^{-1}, cut into blocks, is an order isomorphism onto B_{p1}×S_{p2}×…", run: component_isomorphism_suite },
    Suite { name: "shuffle-bijection", statement: "(ζ,ζ') ↦ ζ(ζ'×1_q) is a bijection Sh(p,q)×Sh(p_1,…,p_k) → Sh(p_1,…,p_k,q)", run: shuffle_bijection },
    Suite { name: "parabolic-rho", statement: "ρ_ξ(u) = uξ^{-1} is a convex embedding of the parabolic subgroup iff ξ is a minimal coset representative (types A and B)", run: parabolic_rho },
    Suite { name: "hopf-examples", statement: "worked product, coproduct and basis-change examples in both bases", run: hopf_examples },
    Suite { name: "basis-change", statement: "F→M and M→F are mutually inverse and unitriangular along the weak order", run: basis_change },
    Suite { name: "m-coproduct-gdes", statement: "Δ(M_u) splits at global descents for every all-negative u", run: m_coproduct_gdes },
    Suite { name: "m-product-formulas", statement: "M_uM_v from b-coefficients, and from nonnegative c-coefficients when v is all-negative", run: m_product_formulas },
    Suite { name: "a-b-decomposition", statement: "a^w_{u,v} = Σ_{u≤u'} b^w_{u',v}", run: a_b_decomposition },
    Suite { name: "hopf-axioms", statement: "associativity, coassociativity and Δ(xy) = Δ(x)Δ(y) in the F basis", run: hopf_axioms },
    Suite { name: "unsigned-subalgebra", statement: "the span of F_u with u unsigned is closed under product and coproduct", run: unsigned_subalgebra },
    Suite { name: "forgetful-hom", statement: "dropping signs intertwines products and coproducts", run: forgetful_hom },
    Suite { name: "bq-realization", statement: "F_α = Σ_{α≤β} M_β and M_α = Σ_{α≤β} (-1)^{ℓ(β)-ℓ(α)} F_β as polynomials", run: bq_realization },
    Suite { name: "descent-hom", statement: "the descent map is an algebra homomorphism: D(F_uF_v) = D(F_u)D(F_v) as polynomials", run: descent_hom },
    Suite { name: "bq-monomial-descent", statement: "D(M_w) = M_{Des(w)} if w = ζ_{Des(w)} and 0 otherwise", run: bq_monomial_descent },
    Suite { name: "rota-identity", statement: "Σ_{w≤x, Des(x)=I} μ(w,x) = Σ_{J⊆I, ζ_J=w} (-1)^{|I∖J|}", run: rota_identity },
];

/// Runs every suite in registry order.
pub fn run_all(ctx: &SuiteContext) -> Vec<VerifyReport> {
    SUITES.iter().map(|s| s.run(ctx)).collect()
}

/// Compositions of `n` into positive parts.
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

/// Compositions of every `n ≤ max_n` with at least two parts.
fn multi_block(max_n: usize) -> Vec<Vec<usize>> {
    (2..=max_n)
        .flat_map(compositions)
        .filter(|c| c.len() >= 2)
        .collect()
}

fn fbasis(w: &SignedPermutation) -> FormalSum {
    FormalSum::basis_element(Basis::F, w.clone())
}

fn mbasis(w: &SignedPermutation) -> FormalSum {
    FormalSum::basis_element(Basis::M, w.clone())
}

macro_rules! check {
    ($report:expr, $ok:expr, $($fmt:tt)+) => {
        if !$report.record($ok, || format!($($fmt)+)) {
            return;
        }
    };
}

fn timed(name: &str, body: impl FnOnce(&mut VerifyReport)) -> VerifyReport {
    let start = Instant::now();
    let mut r = VerifyReport::new(name);
    body(&mut r);
    r.finish(start)
}

// ---------------------------------------------------------------------------
// Weak order

fn order_criterion(ctx: &SuiteContext) -> VerifyReport {
    timed("order-criterion", |r| {
        for n in 0..=ctx.max_n.min(4) {
            let g = CoverGraph::build(n, ctx.order.cap()).expect("within cap");
            let profiles: Vec<_> = g.elements().iter().map(|w| w.profile()).collect();
            for a in 0..g.vertex_count() {
                let reach = g.reachable_from(a);
                for b in 0..g.vertex_count() {
                    let leq = profiles[a].is_contained_in(&profiles[b]);
                    check!(r, leq == reach[b], "{} vs {}: profile test {leq}, reachable {}", g.elements()[a], g.elements()[b], reach[b]);
                }
            }
        }
    })
}

fn group_axioms(ctx: &SuiteContext) -> VerifyReport {
    timed("group-axioms", |r| {
        for n in 0..=ctx.max_n.min(3) {
            let all = SignedPermutation::all(n);
            let id = SignedPermutation::identity(n);
            for x in &all {
                let inv = x.inverse();
                check!(r, x.compose(&inv).unwrap() == id && inv.compose(x).unwrap() == id, "{x} has no two-sided inverse");
                check!(r, x.compose(&id).unwrap() == *x && id.compose(x).unwrap() == *x, "identity fails at {x}");
                for y in &all {
                    let xy = x.compose(y).unwrap();
                    for z in &all {
                        let left = xy.compose(z).unwrap();
                        let right = x.compose(&y.compose(z).unwrap()).unwrap();
                        check!(r, left == right, "associativity fails at {x}, {y}, {z}");
                    }
                }
            }
        }
    })
}

fn standardization(ctx: &SuiteContext) -> VerifyReport {
    timed("standardization", |r| {
        for n in 0..=ctx.max_n.max(5).min(7) {
            for w in SignedPermutation::all_unsigned(n) {
                // spread the values out so the word is not already standard
                let word: Vec<i32> = w.window().iter().map(|a| 3 * a + 1).collect();
                let (a, b) = (standardize(&word).unwrap(), standardize_plain(&word).unwrap());
                check!(r, a == b && a == w, "{word:?}: sts {a}, st {b}");
            }
        }
        let word = [6, -3, 2, -7, 3, 5];
        let sts: SignedPermutation = "5,-2,1,-6,3,4".parse().unwrap();
        let st: SignedPermutation = "6,2,3,1,4,5".parse().unwrap();
        check!(r, standardize(&word).unwrap() == sts, "sts{word:?}");
        check!(r, standardize_plain(&word).unwrap() == st, "st{word:?}");
    })
}

fn length_distance(ctx: &SuiteContext) -> VerifyReport {
    timed("length-distance", |r| {
        for n in 0..=ctx.max_n.max(5).min(ctx.order.cap()) {
            let g = CoverGraph::build(n, ctx.order.cap()).expect("within cap");
            for (k, w) in g.elements().iter().enumerate() {
                let p = w.profile();
                let tr = reflections_tr(w).len();
                check!(r, p.length() == g.length(k) && w.length() == g.length(k) && tr == g.length(k), "{w}: statistics give {}, |T_R| = {tr}, graph distance {}", p.length(), g.length(k));
            }
            check!(r, g.height() == n * n, "height of B_{n} is {}", g.height());
        }
    })
}

fn reflection_sets(ctx: &SuiteContext) -> VerifyReport {
    timed("reflection-sets", |r| {
        for n in 0..=ctx.max_n.min(4) {
            for w in SignedPermutation::all(n) {
                let from_profile = reflections_tr(&w);
                let distinct: HashSet<&Reflection> = from_profile.iter().collect();
                let mut a = from_profile.clone();
                let mut b = reflections_tr_by_length(&w);
                a.sort();
                b.sort();
                check!(r, distinct.len() == from_profile.len() && a == b && a.len() == w.length(), "{w}: families {a:?}, by length {b:?}");
            }
        }
    })
}

fn cover_statistics(ctx: &SuiteContext) -> VerifyReport {
    timed("cover-statistics", |r| {
        for n in 1..=ctx.max_n.min(4) {
            for u in SignedPermutation::all(n) {
                let pu = u.profile();
                for i in 0..n {
                    let v = u.left_generator(i);
                    let pv = v.profile();
                    match cover_step(&u, i) {
                        None => check!(r, v.length() + 1 == u.length(), "{u}: s_{i} predicted a down step"),
                        Some(step) => {
                            let mut expected = pu.clone();
                            let fresh = match step {
                                CoverStatistic::Nega(a) => expected.insert_nega(a),
                                CoverStatistic::Inv(a, b) => expected.insert_inv(a, b),
                                CoverStatistic::Nsp(a, b) => expected.insert_nsp(a, b),
                            };
                            check!(r, fresh && expected == pv, "{u}: s_{i} predicted {step:?}, got {pv:?}");
                        }
                    }
                }
            }
        }
    })
}

fn window_monotone(ctx: &SuiteContext) -> VerifyReport {
    timed("window-monotone", |r| {
        for n in 2..=ctx.max_n.min(4) {
            let all = SignedPermutation::all(n);
            let profiles: Vec<_> = all.iter().map(|w| w.profile()).collect();
            for (a, u) in all.iter().enumerate() {
                for (b, v) in all.iter().enumerate() {
                    if !profiles[a].is_contained_in(&profiles[b]) {
                        continue;
                    }
                    for i in 1..=n {
                        for j in i + 1..=n {
                            let (x, y) = (u.sts_window(i, j), v.sts_window(i, j));
                            check!(r, weak_order::leq(&x, &y).unwrap(), "{u} ≤ {v} but windows {i}..{j} give {x} ≰ {y}");
                        }
                    }
                }
            }
        }
    })
}

fn lattice_axioms(ctx: &SuiteContext) -> VerifyReport {
    timed("lattice-axioms", |r| {
        let wo = &ctx.order;
        let mut triples: Vec<[SignedPermutation; 3]> = Vec::new();
        for n in 0..=ctx.max_n.min(3) {
            let all = SignedPermutation::all(n);
            for x in &all {
                for y in &all {
                    for z in &all {
                        triples.push([x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
        }
        if ctx.max_n >= 4 {
            let mut rng = StdRng::seed_from_u64(4);
            for _ in 0..10_000 {
                triples.push(std::array::from_fn(|_| random_signed_permutation(4, &mut rng)));
            }
        }
        for [x, y, z] in &triples {
            let j = wo.join(x, y).unwrap();
            let m = wo.meet(x, y).unwrap();
            check!(r, j == wo.join(y, x).unwrap() && m == wo.meet(y, x).unwrap(), "commutativity fails at {x}, {y}");
            check!(r, wo.join(x, x).unwrap() == *x && wo.meet(x, x).unwrap() == *x, "idempotence fails at {x}");
            check!(r, wo.meet(x, &j).unwrap() == *x && wo.join(x, &m).unwrap() == *x, "absorption fails at {x}, {y}");
            let jl = wo.join(&j, z).unwrap();
            let jr = wo.join(x, &wo.join(y, z).unwrap()).unwrap();
            let ml = wo.meet(&m, z).unwrap();
            let mr = wo.meet(x, &wo.meet(y, z).unwrap()).unwrap();
            check!(r, jl == jr && ml == mr, "associativity fails at {x}, {y}, {z}");
        }
    })
}

fn mobius_recursion(ctx: &SuiteContext) -> VerifyReport {
    timed("mobius-recursion", |r| {
        let mut dist: BTreeMap<i64, u64> = BTreeMap::new();
        for n in 0..=ctx.max_n.min(4) {
            for u in SignedPermutation::all(n) {
                let row = ctx.order.mobius_row(&u).unwrap();
                let profiles: Vec<_> = row.iter().map(|(z, _)| z.profile()).collect();
                for (k, (v, m)) in row.iter().enumerate() {
                    *dist.entry(*m).or_default() += 1;
                    let s: i64 = (0..=k)
                        .filter(|&y| profiles[y].is_contained_in(&profiles[k]))
                        .map(|y| row[y].1)
                        .sum();
                    let expected = i64::from(k == 0);
                    check!(r, s == expected, "Σ_{{{u}≤z≤{v}}} μ = {s}");
                }
            }
            if n == ctx.max_n.min(4) {
                let text: Vec<String> = dist.iter().map(|(v, c)| format!("μ={v}: {c}")).collect();
                r.note(format!("μ(u,v) values over comparable pairs, n ≤ {n}: {}", text.join(", ")));
            }
        }
    })
}

fn descent_classes(ctx: &SuiteContext) -> VerifyReport {
    timed("descent-classes", |r| {
        for n in 0..=ctx.max_n.min(4) {
            let all = SignedPermutation::all(n);
            for set in DescentSet::all(n) {
                let mut direct: Vec<_> = all.iter().filter(|w| w.descents() == set).cloned().collect();
                let mut via = descent_class(&set);
                direct.sort();
                via.sort();
                let top = descent_class_max(&set);
                check!(r, direct == via && top.descents() == set, "descent class {set}");
                check!(r, direct.iter().all(|w| weak_order::leq(w, &top).unwrap()), "ζ_{set} is not the maximum");
            }
        }
    })
}

fn galois_connection(ctx: &SuiteContext) -> VerifyReport {
    timed("galois-connection", |r| {
        for n in 0..=ctx.max_n.min(4) {
            check!(r, galois_adjoint_check(n), "adjunction fails in B_{n}");
            let all = SignedPermutation::all(n);
            let profiles: Vec<_> = all.iter().map(|w| w.profile()).collect();
            for a in 0..all.len() {
                for b in 0..all.len() {
                    if profiles[a].is_contained_in(&profiles[b]) {
                        check!(r, all[a].descents().is_subset(&all[b].descents()), "Des not monotone at {} ≤ {}", all[a], all[b]);
                    }
                }
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Embeddings

fn profile_formula(ctx: &SuiteContext) -> VerifyReport {
    timed("profile-formula", |r| {
        for n in 0..=ctx.max_n.min(4) {
            for p in 0..=n {
                let q = n - p;
                let (us, vs) = (SignedPermutation::all(p), SignedPermutation::all(q));
                for xi in shuffles(&[p, q]) {
                    for u in &us {
                        for v in &vs {
                            let direct = tau(&xi, &[u.clone(), v.clone()]).unwrap().profile();
                            let formula = profile_via_formula(&xi, u, v).unwrap();
                            check!(r, direct == formula, "ξ={xi}, u={u}, v={v}");
                        }
                    }
                }
            }
        }
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..10_000 {
            let p = rand::Rng::gen_range(&mut rng, 0..=6);
            let q = 6 - p;
            let xi = shuffles(&[p, q]).choose(&mut rng).unwrap().clone();
            let u = random_signed_permutation(p, &mut rng);
            let v = random_signed_permutation(q, &mut rng);
            let direct = tau(&xi, &[u.clone(), v.clone()]).unwrap().profile();
            check!(r, direct == profile_via_formula(&xi, &u, &v).unwrap(), "ξ={xi}, u={u}, v={v}");
        }
    })
}

fn componentwise(ctx: &SuiteContext) -> VerifyReport {
    timed("componentwise-order", |r| {
        for blocks in multi_block(ctx.max_n.min(4)) {
            if blocks.len() > 3 {
                continue;
            }
            let mut tuples: Vec<Vec<SignedPermutation>> = vec![Vec::new()];
            for &b in &blocks {
                let all = SignedPermutation::all(b);
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        all.iter().map(move |w| {
                            let mut t = t.clone();
                            t.push(w.clone());
                            t
                        })
                    })
                    .collect();
            }
            let products: Vec<_> = tuples.iter().map(|t| SignedPermutation::shifted_product_all(t)).collect();
            for (a, us) in tuples.iter().enumerate() {
                for (b, vs) in tuples.iter().enumerate() {
                    let c = componentwise_order(us, vs).unwrap();
                    let (x, y) = (&products[a], &products[b]);
                    let direct = weak_order::leq(x, y).unwrap();
                    check!(r, c.holds == direct, "{x} vs {y}: factorwise {} direct {direct}", c.holds);
                    let gap = y.length() as i64 - x.length() as i64;
                    check!(r, c.length_delta == gap, "{x} vs {y}: formula {} direct {gap}", c.length_delta);
                }
            }
        }
    })
}

fn component_partition(ctx: &SuiteContext) -> VerifyReport {
    timed("component-partition", |r| {
        for blocks in multi_block(ctx.max_n.min(4)) {
            check!(r, partition_check(&blocks, &ctx.order).unwrap(), "blocks {blocks:?}");
        }
    })
}

fn component_intervals(ctx: &SuiteContext) -> VerifyReport {
    timed("component-intervals", |r| {
        for blocks in multi_block(ctx.max_n.min(4)) {
            for sig in ComponentSignature::all(&blocks).unwrap() {
                let (lo, hi) = component_interval(&sig);
                let mut a = sig.elements();
                let mut b = weak_order::interval(&lo, &hi).unwrap();
                a.sort();
                b.sort();
                check!(r, a == b, "{sig}: [{lo}, {hi}] has {} elements, component {}", b.len(), a.len());
            }
        }
    })
}

fn component_gap(ctx: &SuiteContext) -> VerifyReport {
    timed("component-gap", |r| {
        for blocks in multi_block(ctx.max_n.min(4)) {
            let w = gap_check(&blocks, &ctx.order).unwrap();
            if let Some(w) = &w {
                check!(r, w.gap >= 3, "blocks {blocks:?}: {} < {} with gap {}", w.lower, w.upper, w.gap);
            }
            if blocks == [1, 2] {
                let attained = w.as_ref().map(|w| w.gap) == Some(3);
                let lo: SignedPermutation = "1,3,2".parse().unwrap();
                let hi: SignedPermutation = "1,3,-2".parse().unwrap();
                let pair = weak_order::leq(&lo, &hi).unwrap() && hi.length() - lo.length() == 3;
                check!(r, attained && pair, "gap 3 not attained at (1,2)");
            }
        }
    })
}

fn component_embedding(ctx: &SuiteContext) -> VerifyReport {
    timed("component-embedding", |r| {
        let wo = &ctx.order;
        for blocks in multi_block(ctx.max_n.min(4)).into_iter().filter(|b| b.len() == 2) {
            for sig in ComponentSignature::all(&blocks).unwrap() {
                let elems = sig.elements();
                for xi in shuffles(&blocks) {
                    let inv = xi.perm().inverse();
                    let t = |x: &SignedPermutation| x.compose_unchecked(&inv);
                    check!(r, is_convex_embedding(&elems, t), "τ_{xi} on {sig} is not a convex embedding");
                    for x in &elems {
                        for y in &elems {
                            let meet = t(&wo.meet(x, y).unwrap());
                            let join = t(&wo.join(x, y).unwrap());
                            check!(r, meet == wo.meet(&t(x), &t(y)).unwrap(), "τ_{xi} does not preserve {x} ∧ {y}");
                            check!(r, join == wo.join(&t(x), &t(y)).unwrap(), "τ_{xi} does not preserve {x} ∨ {y}");
                        }
                    }
                }
            }
        }
    })
}

fn interval_product(ctx: &SuiteContext) -> VerifyReport {
    timed("interval-product", |r| {
        for blocks in multi_block(ctx.max_n.min(4)).into_iter().filter(|b| b.len() == 2) {
            let (p, q) = (blocks[0], blocks[1]);
            let us = SignedPermutation::all(p);
            let vs = SignedPermutation::all(q);
            for u in &us {
                for u2 in ctx.order.upper_set(u).unwrap().iter() {
                    let left = weak_order::interval(u, u2).unwrap();
                    for v in &vs {
                        for v2 in ctx.order.upper_set(v).unwrap().iter() {
                            if v.nega() != v2.nega() {
                                continue;
                            }
                            let right = weak_order::interval(v, v2).unwrap();
                            let mut prod: Vec<_> = left
                                .iter()
                                .flat_map(|a| right.iter().map(move |b| a.shifted_product(b)))
                                .collect();
                            let mut direct = weak_order::interval(&u.shifted_product(v), &u2.shifted_product(v2)).unwrap();
                            prod.sort();
                            direct.sort();
                            check!(r, prod == direct, "[{u},{u2}]×[{v},{v2}]");
                        }
                    }
                }
            }
        }
    })
}

fn component_isomorphism_suite(ctx: &SuiteContext) -> VerifyReport {
    timed("component-isomorphism", |r| {
        for blocks in multi_block(ctx.max_n.min(3)) {
            for sig in ComponentSignature::all(&blocks).unwrap() {
                let elems = sig.elements();
                let images: Vec<_> = elems.iter().map(|x| component_isomorphism(&sig, x)).collect();
                let distinct: HashSet<_> = images.iter().collect();
                let target_ok = images.iter().all(|fs| fs[1..].iter().all(SignedPermutation::is_unsigned));
                check!(r, distinct.len() == elems.len() && target_ok && elems.len() == sig.cardinality(), "{sig}: not a bijection onto B×S×…");
                for (x, fx) in elems.iter().zip(&images) {
                    for (y, fy) in elems.iter().zip(&images) {
                        let factorwise = fx.iter().zip(fy).all(|(a, b)| weak_order::leq(a, b).unwrap());
                        check!(r, weak_order::leq(x, y).unwrap() == factorwise, "{sig}: order not preserved at {x}, {y}");
                    }
                }
            }
        }
    })
}

fn shuffle_bijection(_ctx: &SuiteContext) -> VerifyReport {
    timed("shuffle-bijection", |r| {
        for n in 1..=6 {
            for comp in compositions(n) {
                // split off the last part as q
                let (q, inner) = comp.split_last().unwrap();
                if inner.is_empty() {
                    continue;
                }
                let pp: usize = inner.iter().sum();
                let mut seen = HashSet::new();
                for z in shuffles(&[pp, *q]) {
                    for zp in shuffles(inner) {
                        let c = compose_shuffles(&z, &zp);
                        check!(r, c.is_ok(), "ζ={z}, ζ'={zp}: not a shuffle of {comp:?}");
                        check!(r, seen.insert(c.unwrap().perm().clone()), "ζ={z}, ζ'={zp}: repeated image");
                    }
                }
                check!(r, seen.len() == shuffles(&comp).len(), "{comp:?}: image has {} elements", seen.len());
            }
        }
    })
}

fn parabolic_rho(ctx: &SuiteContext) -> VerifyReport {
    timed("parabolic-rho", |r| {
        for n in 1..=ctx.max_n.min(3) {
            for blocks in compositions(n) {
                for family in [ParabolicFamily::A, ParabolicFamily::B] {
                    let dom = parabolic_subgroup(family, &blocks);
                    let candidates = match family {
                        ParabolicFamily::A => SignedPermutation::all_unsigned(n),
                        ParabolicFamily::B => SignedPermutation::all(n),
                    };
                    for xi in candidates {
                        let inv = xi.inverse();
                        let embeds = is_convex_embedding(&dom, |x| x.compose_unchecked(&inv));
                        let minimal = is_minimal_coset_representative(family, &xi, &blocks);
                        check!(r, embeds == minimal, "{family:?} {blocks:?} ξ={xi}: embedding {embeds}, minimal {minimal}");
                    }
                }
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Hopf algebra

fn sum_of(basis: Basis, items: &[(&str, i64)]) -> FormalSum {
    FormalSum::from_terms(basis, items.iter().map(|&(w, c)| (w.parse().unwrap(), c)))
}

fn tensor_of(basis: Basis, items: &[(&str, &str, i64)]) -> TensorSum {
    TensorSum::from_terms(
        basis,
        items.iter().map(|&(a, b, c)| (a.parse().unwrap(), b.parse().unwrap(), c)),
    )
}

/// The worked examples in both bases, as `(label, computed == expected)`.
pub fn hopf_example_checks(order: &WeakOrder) -> Vec<(String, bool)> {
    let p = |s: &str| -> SignedPermutation { s.parse().unwrap() };
    let mut out = Vec::new();
    let mut push = |label: &str, ok: bool| out.push((label.to_string(), ok));

    let prod = f_product(&fbasis(&p("1,-2")), &fbasis(&p("-2,1"))).unwrap();
    push("F[1,-2]·F[-2,1]", prod == sum_of(Basis::F, &[("1,-2,-4,3", 1), ("1,-4,-2,3", 1), ("1,-4,3,-2", 1), ("-4,1,-2,3", 1), ("-4,1,3,-2", 1), ("-4,3,1,-2", 1)]));

    let cop = f_coproduct(&fbasis(&p("1,-4,-2,3"))).unwrap();
    push("Δ(F[1,-4,-2,3])", cop == tensor_of(Basis::F, &[("", "1,-4,-2,3", 1), ("1", "-3,-1,2", 1), ("1,-2", "-1,2", 1), ("1,-3,-2", "1", 1), ("1,-4,-2,3", "", 1)]));

    let expansions: [(&str, [(&str, i64); 4]); 3] = [
        ("2,3,1", [("2,3,1", 1), ("3,2,1", -1), ("2,3,-1", -1), ("3,2,-1", 1)]),
        ("1,2,-3", [("1,2,-3", 1), ("2,1,-3", -1), ("-1,2,-3", -1), ("-1,-2,-3", 1)]),
        ("1,-3,2", [("1,-3,2", 1), ("2,-3,1", -1), ("-1,-3,2", -1), ("-1,-3,-2", 1)]),
    ];
    for (u, items) in expansions {
        let got = to_fundamental(&mbasis(&p(u)), order).unwrap();
        push(&format!("M[{u}] in F"), got == sum_of(Basis::F, &items));
    }

    let d = m_coproduct(&mbasis(&p("1,2,-3")), order).unwrap();
    push("Δ(M[1,2,-3])", d == tensor_of(Basis::M, &[("", "1,2,-3", 1), ("1,2", "-1", 1), ("-1", "1,-2", -1), ("1,2,-3", "", 1)]));
    let d = m_coproduct(&mbasis(&p("1,-3,2")), order).unwrap();
    push("Δ(M[1,-3,2])", d == tensor_of(Basis::M, &[("", "1,-3,2", 1), ("-1", "-2,1", -1), ("-1,-2", "1", -1), ("1,-3,2", "", 1)]));

    let mp = m_product(&mbasis(&p("1,2")), &mbasis(&p("1")), order).unwrap();
    push("M[1,2]·M[1]", mp == sum_of(Basis::M, &[("1,2,3", 1), ("1,3,2", 2), ("1,3,-2", 1), ("2,3,1", 1), ("2,3,-1", 1), ("3,1,2", 1), ("1,-3,2", -1), ("-3,1,2", -1)]));
    let mp = m_product(&mbasis(&p("-1,2")), &mbasis(&p("1")), order).unwrap();
    push("M[-1,2]·M[1]", mp == sum_of(Basis::M, &[("-1,2,3", 1), ("-1,3,2", 2), ("-1,3,-2", 1), ("-2,3,-1", 1), ("-2,3,1", 1), ("3,-1,2", 1), ("-1,-3,2", -1), ("-3,-1,2", -1)]));
    let mp = m_product(&mbasis(&p("1")), &mbasis(&p("-2,-1")), order).unwrap();
    push("M[1]·M[-2,-1]", mp == sum_of(Basis::M, &[("1,-3,-2", 1), ("-3,1,-2", 1), ("-3,-2,1", 1)]));

    let u = p("-3,-1,-2,-4,-6,-5");
    let d = m_coproduct(&mbasis(&u), order).unwrap();
    push("Δ(M[-3,-1,-2,-4,-6,-5])", d == tensor_of(Basis::M, &[("", "-3,-1,-2,-4,-6,-5", 1), ("-3,-1,-2", "-1,-3,-2", 1), ("-3,-1,-2,-4", "-2,-1", 1), ("-3,-1,-2,-4,-6,-5", "", 1)]));
    out
}

fn hopf_examples(ctx: &SuiteContext) -> VerifyReport {
    timed("hopf-examples", |r| {
        for (label, ok) in hopf_example_checks(&ctx.order) {
            check!(r, ok, "{label} differs from the expected expansion");
        }
    })
}

fn basis_change(ctx: &SuiteContext) -> VerifyReport {
    timed("basis-change", |r| {
        let wo = &ctx.order;
        for n in 0..=ctx.max_n.min(4) {
            for u in SignedPermutation::all(n) {
                let ups: HashSet<SignedPermutation> = wo.upper_set(&u).unwrap().iter().cloned().collect();
                let m = to_monomial(&fbasis(&u), wo).unwrap();
                let f = to_fundamental(&mbasis(&u), wo).unwrap();
                let tri = m.coeff(&u) == BigInt::from(1)
                    && f.coeff(&u) == BigInt::from(1)
                    && m.terms().all(|(v, _)| ups.contains(v))
                    && f.terms().all(|(v, _)| ups.contains(v));
                check!(r, tri, "basis change at {u} is not unitriangular");
                check!(r, to_fundamental(&m, wo).unwrap() == fbasis(&u), "M→F∘F→M ≠ id at {u}");
                check!(r, to_monomial(&f, wo).unwrap() == mbasis(&u), "F→M∘M→F ≠ id at {u}");
            }
        }
    })
}

fn m_coproduct_gdes(ctx: &SuiteContext) -> VerifyReport {
    timed("m-coproduct-gdes", |r| {
        for n in 0..=ctx.max_n.min(4) {
            for w in SignedPermutation::all_unsigned(n) {
                let u = SignedPermutation::new(&w.window().iter().map(|a| -a).collect::<Vec<_>>()).unwrap();
                let direct = m_coproduct(&mbasis(&u), &ctx.order).unwrap();
                let formula = gdes_coproduct_formula(&u);
                check!(r, direct == formula, "Δ(M[{u}]) = {direct}, splitting gives {formula}");
            }
        }
    })
}

fn m_product_formulas(ctx: &SuiteContext) -> VerifyReport {
    timed("m-product-formulas", |r| {
        let wo = &ctx.order;
        for n in 0..=ctx.max_n.min(4) {
            for p in 0..=n {
                let q = n - p;
                for u in SignedPermutation::all(p) {
                    for v in SignedPermutation::all(q) {
                        let direct = m_product(&mbasis(&u), &mbasis(&v), wo).unwrap();
                        let b = m_product_b_formula(&u, &v, wo).unwrap();
                        check!(r, b == direct, "M[{u}]·M[{v}]: b-formula {b}, direct {direct}");
                        if v.nega() == q {
                            let c = m_product_c_formula(&u, &v, wo).unwrap();
                            let nonneg = c.terms().all(|(_, k)| k > &BigInt::from(0));
                            check!(r, c == direct && nonneg, "M[{u}]·M[{v}]: c-formula {c}, direct {direct}");
                        }
                    }
                }
            }
        }
    })
}

fn a_b_decomposition(ctx: &SuiteContext) -> VerifyReport {
    timed("a-b-decomposition", |r| {
        let wo = &ctx.order;
        for n in 2..=ctx.max_n.min(4) {
            let targets = SignedPermutation::all(n);
            for p in 1..n {
                let q = n - p;
                let us = SignedPermutation::all(p);
                for v in SignedPermutation::all(q) {
                    // b and a for every (u, w)
                    let mut b: HashMap<(SignedPermutation, SignedPermutation), usize> = HashMap::new();
                    let mut a: HashMap<(SignedPermutation, SignedPermutation), usize> = HashMap::new();
                    for u in &us {
                        for w in &targets {
                            let sc = shuffle_coefficients(u, &v, w, wo).unwrap();
                            a.insert((u.clone(), w.clone()), sc.a());
                            b.insert((u.clone(), w.clone()), sc.b());
                        }
                    }
                    for u in &us {
                        let ups = wo.upper_set(u).unwrap();
                        for w in &targets {
                            let total: usize = ups.iter().map(|u2| b[&(u2.clone(), w.clone())]).sum();
                            let direct = a[&(u.clone(), w.clone())];
                            check!(r, total == direct, "u={u}, v={v}, w={w}: a={direct}, Σb={total}");
                        }
                    }
                }
            }
        }
    })
}

fn hopf_axioms(ctx: &SuiteContext) -> VerifyReport {
    hopf_axiom_suite(ctx.max_n.min(4))
}

fn unsigned_subalgebra(ctx: &SuiteContext) -> VerifyReport {
    timed("unsigned-subalgebra", |r| {
        let top = ctx.max_n.min(3);
        for a in 0..=top {
            for b in 0..=top - a {
                for u in SignedPermutation::all_unsigned(a) {
                    for v in SignedPermutation::all_unsigned(b) {
                        let prod = f_product(&fbasis(&u), &fbasis(&v)).unwrap();
                        check!(r, prod.terms().all(|(w, _)| w.is_unsigned()), "F[{u}]·F[{v}] leaves the unsigned span");
                    }
                }
            }
        }
        for n in 0..=top {
            for u in SignedPermutation::all_unsigned(n) {
                let ok = coproduct_of_basis(&u).iter().all(|(x, y)| x.is_unsigned() && y.is_unsigned());
                check!(r, ok, "Δ(F[{u}]) leaves the unsigned span");
            }
        }
    })
}

fn forgetful_hom(ctx: &SuiteContext) -> VerifyReport {
    timed("forgetful-hom", |r| {
        let top = ctx.max_n.min(3);
        for a in 0..=top {
            for b in 0..=top - a {
                for u in SignedPermutation::all(a) {
                    for v in SignedPermutation::all(b) {
                        let (fu, fv) = (fbasis(&u), fbasis(&v));
                        let left = forget_signs(&f_product(&fu, &fv).unwrap()).unwrap();
                        let right = f_product(&forget_signs(&fu).unwrap(), &forget_signs(&fv).unwrap()).unwrap();
                        check!(r, left == right, "φ(F[{u}]F[{v}]) ≠ φ(F[{u}])φ(F[{v}])");
                    }
                }
            }
        }
        for n in 0..=top {
            for u in SignedPermutation::all(n) {
                let left: Vec<_> = coproduct_of_basis(&u).into_iter().map(|(x, y)| (x.unsigned(), y.unsigned())).collect();
                let right = coproduct_of_basis(&u.unsigned());
                check!(r, left == right, "(φ⊗φ)Δ ≠ Δφ at {u}");
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Type-B quasisymmetric functions

fn bq_realization(ctx: &SuiteContext) -> VerifyReport {
    timed("bq-realization", |r| {
        let m = 9;
        for n in 0..=ctx.max_n.min(4) {
            let mut realized_m: HashMap<PseudoComposition, TruncatedPolynomial> = HashMap::new();
            for alpha in PseudoComposition::all(n) {
                let x = BQFormalSum::basis_element(Basis::M, alpha.clone());
                realized_m.insert(alpha, realize(&x, m).unwrap());
            }
            for alpha in PseudoComposition::all(n) {
                let f = BQFormalSum::basis_element(Basis::F, alpha.clone());
                let direct = realize(&f, m).unwrap();
                let mut sum = TruncatedPolynomial::zero(m);
                for beta in PseudoComposition::all(n) {
                    if alpha.refines_to(&beta) {
                        sum = sum.add(&realized_m[&beta]);
                    }
                }
                check!(r, direct == sum, "F{alpha} ≠ Σ M_β");
                let mono = BQFormalSum::basis_element(Basis::M, alpha.clone());
                let via_f = realize(&bq_to_fundamental(&mono), m).unwrap();
                check!(r, via_f == realized_m[&alpha], "M{alpha} ≠ Σ ±F_β");
                check!(r, bq_to_monomial(&bq_to_fundamental(&mono)) == mono, "basis change round trip at {alpha}");
            }
        }
    })
}

fn descent_hom(ctx: &SuiteContext) -> VerifyReport {
    timed("descent-hom", |r| {
        let wo = &ctx.order;
        let mut cache: HashMap<(PseudoComposition, usize), TruncatedPolynomial> = HashMap::new();
        let mut realize_f = |x: &BQFormalSum, m: usize| -> TruncatedPolynomial {
            let mut out = TruncatedPolynomial::zero(m);
            for (alpha, c) in x.terms() {
                let poly = cache.entry((alpha.clone(), m)).or_insert_with(|| {
                    realize(&BQFormalSum::basis_element(Basis::F, alpha.clone()), m).unwrap()
                });
                if c == &BigInt::from(1) {
                    out = out.add(poly);
                } else {
                    let mut k = TruncatedPolynomial::zero(m);
                    k.add_monomial(vec![0; m + 1], c.clone());
                    out = out.add(&poly.mul(&k));
                }
            }
            out
        };
        for n in 0..=ctx.max_n.min(4) {
            let m = 2 * n + 1;
            for p in 0..=n {
                let q = n - p;
                for u in SignedPermutation::all(p) {
                    for v in SignedPermutation::all(q) {
                        let (fu, fv) = (fbasis(&u), fbasis(&v));
                        let left = realize_f(&descent_map(&f_product(&fu, &fv).unwrap(), wo).unwrap(), m);
                        let du = realize_f(&descent_map(&fu, wo).unwrap(), m);
                        let dv = realize_f(&descent_map(&fv, wo).unwrap(), m);
                        check!(r, left == du.mul(&dv), "D(F[{u}]F[{v}]) ≠ D(F[{u}])D(F[{v}])");
                    }
                }
            }
        }
    })
}

fn bq_monomial_descent(ctx: &SuiteContext) -> VerifyReport {
    timed("bq-monomial-descent", |r| {
        for n in 0..=ctx.max_n.min(4) {
            for w in SignedPermutation::all(n) {
                let image = bq_to_monomial(&descent_map(&mbasis(&w), &ctx.order).unwrap());
                let formula = monomial_descent_formula(&w);
                check!(r, image == formula, "D(M[{w}]) = {image}, expected {formula}");
            }
        }
    })
}

fn rota_identity(ctx: &SuiteContext) -> VerifyReport {
    timed("rota-identity", |r| {
        for n in 0..=ctx.max_n.min(4) {
            check!(r, rota_check(n, &ctx.order).unwrap(), "identity fails in B_{n}");
        }
    })
}
