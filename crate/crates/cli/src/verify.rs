//! Batch verification suites.
//!
//! Every check compares a structured result with an independent
//! computation: exhaustive search over permutations, direct enumeration of
//! subsets or bisections, or a dense re-evaluation. All comparisons are
//! exact. Runs are deterministic in `(seed, caps)`.

use std::fmt;

use blockqap::classes::{
    gmam_compose, gmam_decompose, is_anti_monge, is_monotone, split_anti_monge, BlockSpec, Expand, MultiCutSpec,
    SumSpec,
};
use blockqap::cut::{
    closed_form_two_block, solve_equal_blocks_antimonge, solve_multicut_monotone_antimonge, Hypotheses, TwoBlockShape,
};
use blockqap::gen;
use blockqap::oracle::brute_force_optimum;
use blockqap::pattern::{is_certified_polynomial, qp2_minimize_2x2, Pattern};
use blockqap::product_block::{candidates, expand_to_qap, is_separable, solve_product_block, ProductBlockInstance};
use blockqap::reductions::{
    partition_oracle_search, reduce_bisection, reduce_partition, yes_certificate_to_permutation,
    GraphBisectionInstance, PartitionInstance,
};
use blockqap::{evaluate, int, int_matrix, rat, Permutation, QapInstance, Rational, SymMatrix};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CRITERIA: usize = 10;

/// Instance counts and size limits for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    pub shape_max_n: usize,
    pub cut_pairs: usize,
    pub cut_max_n: usize,
    pub equal_pairs: usize,
    pub equal_ns: Vec<usize>,
    pub product_per_cell: usize,
    pub product_max_n: usize,
    pub product_max_q: usize,
    pub heavy_patterns: usize,
    pub grid_denominator: i64,
    pub partition_yes: usize,
    pub partition_no: usize,
    pub partition_max_m: usize,
    pub bisection_random_6: usize,
    pub fact_pairs: usize,
    pub fact_max_n: usize,
    pub linearity_triples: usize,
    pub recognition_matrices: usize,
    pub split_matrices: usize,
    pub gmam_matrices: usize,
    pub gmam_max_n: usize,
}

impl Caps {
    /// The acceptance-level suite.
    pub fn full() -> Self {
        Caps {
            shape_max_n: 9,
            cut_pairs: 200,
            cut_max_n: 8,
            equal_pairs: 100,
            equal_ns: vec![4, 6, 8],
            product_per_cell: 100,
            product_max_n: 8,
            product_max_q: 3,
            heavy_patterns: 50,
            grid_denominator: 100,
            partition_yes: 20,
            partition_no: 20,
            partition_max_m: 6,
            bisection_random_6: 100,
            fact_pairs: 100,
            fact_max_n: 6,
            linearity_triples: 100,
            recognition_matrices: 200,
            split_matrices: 200,
            gmam_matrices: 50,
            gmam_max_n: 12,
        }
    }

    /// A few seconds' worth of the same checks.
    pub fn quick() -> Self {
        Caps {
            shape_max_n: 7,
            cut_pairs: 30,
            cut_max_n: 7,
            equal_pairs: 20,
            equal_ns: vec![4, 6],
            product_per_cell: 5,
            product_max_n: 6,
            product_max_q: 3,
            heavy_patterns: 10,
            grid_denominator: 100,
            partition_yes: 5,
            partition_no: 5,
            partition_max_m: 5,
            bisection_random_6: 10,
            fact_pairs: 20,
            fact_max_n: 5,
            linearity_triples: 20,
            recognition_matrices: 40,
            split_matrices: 40,
            gmam_matrices: 10,
            gmam_max_n: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {status} {}: {}", self.id, self.name, self.detail)
    }
}

const NAMES: [&str; CRITERIA] = [
    "worked examples",
    "two-block closed form",
    "monotone anti-Monge x normal-form multi-cut",
    "anti-Monge x equal-block multi-cut",
    "product-block solver",
    "two-coordinate minimizer",
    "partition reduction",
    "bisection reduction",
    "sum matrices and linearity",
    "recognition soundness",
];

/// Runs all criteria, or only criterion `only` (1-based).
pub fn run(caps: &Caps, seed: u64, only: Option<usize>) -> Vec<Outcome> {
    (1..=CRITERIA)
        .filter(|id| only.is_none_or(|k| k == *id))
        .map(|id| run_one(id, caps, seed))
        .collect()
}

pub fn run_one(id: usize, caps: &Caps, seed: u64) -> Outcome {
    // Each criterion draws from its own stream.
    let rng = &mut gen::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64));
    let result = match id {
        1 => worked_examples(),
        2 => two_block_shapes(caps),
        3 => monotone_cut(caps, rng),
        4 => equal_blocks(caps, rng),
        5 => product_block(caps, rng),
        6 => heavy_pair_minimizer(caps, rng),
        7 => partition(caps, rng),
        8 => bisection(caps, rng),
        9 => sums_and_linearity(caps, rng),
        10 => recognition(caps, rng),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match result {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    Outcome {
        id,
        name: NAMES.get(id - 1).copied().unwrap_or("unknown"),
        passed,
        detail,
    }
}

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn lib<T>(r: blockqap::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn optimum(inst: &QapInstance) -> Result<Rational, String> {
    lib(brute_force_optimum(inst, inst.n().max(1))).map(|o| o.value)
}

fn worked_examples() -> Check {
    let inst = lib(QapInstance::new(
        int_matrix([[2, 1, 1], [1, 0, 0], [1, 0, 0]]),
        int_matrix([[0, 1, 1], [1, 0, 0], [1, 0, 0]]),
    ))?;
    let id = lib(evaluate(&inst, &Permutation::identity(3)))?;
    let opt = optimum(&inst)?;
    ensure(id == int(4) && opt == int(2), || {
        format!("non-monotone example: identity {id}, optimum {opt}")
    })?;

    for lambda in [int(1), rat(3, 2)] {
        let l = &lambda;
        let a = lib(SymMatrix::from_fn(4, |i, j| match (i >= 2, j >= 2) {
            (true, true) => l.clone(),
            (false, false) => int(0),
            _ => int(1),
        }))?;
        let b = lib(MultiCutSpec::new(vec![2, 2]).and_then(|c| c.expand()))?;
        let inst = lib(QapInstance::new(a, b))?;
        let id = lib(evaluate(&inst, &Permutation::identity(4)))?;
        let opt = optimum(&inst)?;
        let expected = int(4) + int(2) * l;
        ensure(id == int(8) && opt == expected, || {
            format!("λ = {lambda}: identity {id}, optimum {opt}, expected 8 and {expected}")
        })?;
    }

    for (alpha, values, best) in [([1, 1, 2], [21, 20], 20), ([1, 2, 2], [32, 33], 32)] {
        let blocks = lib(BlockSpec::new(int_matrix([[0, 2], [2, 1]]), vec![1, 2]))?;
        let alpha = lib(blockqap::classes::ProductSpec::new(
            alpha.iter().map(|&x| int(x)).collect(),
        ))?;
        let inst = lib(ProductBlockInstance::new(alpha, blocks))?;
        let got: Vec<Rational> = lib(candidates(&inst))?.into_iter().map(|c| c.value).collect();
        let opt = optimum(&lib(expand_to_qap(&inst))?)?;
        let solved = lib(solve_product_block(&inst, false))?.value;
        ensure(got == values.map(int) && opt == int(best) && solved == opt, || {
            format!("product example: candidates {got:?}, optimum {opt}, solver {solved}")
        })?;
    }
    Ok("identity 4 vs 2; 8 vs 4+2λ at λ = 1, 3/2; candidates 21/20 and 32/33".into())
}

/// Minimum of `2y(t - z) + 2z(s - y) + 4z(t - z)` over feasible counts.
fn two_block_grid(r: usize, s: usize, t: usize, u: usize) -> Rational {
    let (s, t) = (s as i64, t as i64);
    let mut best: Option<i64> = None;
    for y in 0..=s {
        for z in 0..=t {
            let x = u as i64 - y - z;
            if (0..=r as i64).contains(&x) {
                let f = 2 * y * (t - z) + 2 * z * (s - y) + 4 * z * (t - z);
                best = Some(best.map_or(f, |b| b.min(f)));
            }
        }
    }
    int(best.expect("x = u - y - z is feasible for some y, z"))
}

fn two_block_shapes(caps: &Caps) -> Check {
    let mut count = 0;
    for n in 1..=caps.shape_max_n {
        for r in 0..=n {
            for s in 0..=n - r {
                let t = n - r - s;
                for u in 0..=n / 2 {
                    let v = n - u;
                    let shape = lib(TwoBlockShape::new(r, s, t, u, v))?;
                    let closed = lib(closed_form_two_block(&shape))?.value;
                    let grid = two_block_grid(r, s, t, u);
                    let opt = optimum(&shape.instance())?;
                    ensure(closed == grid && grid == opt, || {
                        format!("shape {shape:?}: closed form {closed}, grid {grid}, oracle {opt}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} shapes with r+s+t ≤ {}", caps.shape_max_n))
}

fn monotone_cut(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    for k in 0..caps.cut_pairs {
        let n = rng.gen_range(2..=caps.cut_max_n);
        let q = rng.gen_range(1..=n);
        let rays = rng.gen_range(1..=5);
        let a = lib(gen::monotone_anti_monge_with(rng, n, rays))?;
        let b = lib(gen::multicut_with(rng, n, q))?;
        let sol = lib(solve_multicut_monotone_antimonge(&a, &b, Hypotheses::Verify))?;
        let opt = optimum(&lib(QapInstance::new(a, lib(b.expand())?))?)?;
        ensure(sol.permutation.is_identity() && sol.value == opt, || {
            format!(
                "pair {k} (n = {n}, sizes {:?}): identity {}, oracle {opt}",
                b.sizes(),
                sol.value
            )
        })?;
    }
    Ok(format!("{} pairs, n ≤ {}", caps.cut_pairs, caps.cut_max_n))
}

fn equal_blocks(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    for k in 0..caps.equal_pairs {
        let n = caps.equal_ns[k % caps.equal_ns.len()];
        let divisors: Vec<usize> = (2..=n).filter(|q| n.is_multiple_of(*q)).collect();
        let q = *divisors.choose(rng).expect("n ≥ 2");
        let rays = rng.gen_range(1..=4);
        let a = lib(gen::anti_monge_with(rng, n, rays))?;
        let b = lib(MultiCutSpec::new(vec![n / q; q]))?;
        let sol = lib(solve_equal_blocks_antimonge(&a, &b))?;
        let opt = optimum(&lib(QapInstance::new(a, lib(b.expand())?))?)?;
        ensure(sol.value == opt, || {
            format!("pair {k} (n = {n}, q = {q}): identity {}, oracle {opt}", sol.value)
        })?;
    }
    Ok(format!("{} pairs, n ∈ {:?}", caps.equal_pairs, caps.equal_ns))
}

fn product_block(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    let mut count = 0;
    for n in 1..=caps.product_max_n {
        for q in 1..=caps.product_max_q {
            for _ in 0..caps.product_per_cell {
                let pattern = lib(gen::certified_pattern_with(rng, q))?;
                ensure(is_certified_polynomial(&Pattern::new(pattern.clone())), || {
                    "uncertified pattern".into()
                })?;
                let sizes = lib(gen::block_sizes_with(rng, n, q))?;
                let alpha = lib(gen::product_with(rng, n))?;
                let inst = lib(ProductBlockInstance::new(alpha, lib(BlockSpec::new(pattern, sizes))?))?;
                let sol = lib(solve_product_block(&inst, false))?;
                let qap = lib(expand_to_qap(&inst))?;
                let opt = optimum(&qap)?;
                let at_pi = lib(qap.evaluate(&sol.permutation))?;
                let separable = lib(is_separable(&inst, &sol.permutation))?;
                ensure(sol.value == opt && at_pi == opt && separable, || {
                    format!(
                        "n = {n}, q = {q}, sizes {:?}: solver {}, at π {at_pi}, oracle {opt}, separable {separable}",
                        inst.blocks().sizes(),
                        sol.value
                    )
                })?;
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} instances, n ≤ {}, q ≤ {}; optimum attained by a separable assignment",
        caps.product_max_n, caps.product_max_q
    ))
}

fn heavy_pair_minimizer(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    let den = caps.grid_denominator;
    for k in 0..caps.heavy_patterns {
        let p = lib(gen::heavy_pair_pattern_with(rng))?;
        let sol = lib(qp2_minimize_2x2(&Pattern::new(p.clone()), 0, 1))?;
        let (a, b, c) = (p.get(0, 0), p.get(0, 1), p.get(1, 1));
        let one = int(1);
        let g = |x: &Rational| a * x * x + b * x * (&one - x) * int(2) + c * (&one - x) * (&one - x);
        let x = &sol.x[0];
        // g'(x) with x_2 = 1 - x_1.
        let slope = (a * x - b * x + b * (&one - x) - c * (&one - x)) * int(2);
        ensure(
            slope == int(0) && &sol.x[0] + &sol.x[1] == one && g(x) == sol.value,
            || format!("pattern {k}: x* = {:?}, slope {slope}", sol.x),
        )?;
        for i in 0..=den {
            let y = rat(i, den);
            let gy = g(&y);
            ensure(sol.value < gy || (sol.value == gy && y == *x), || {
                format!("pattern {k}: grid point {y} gives {gy} ≤ {}", sol.value)
            })?;
        }
    }
    Ok(format!("{} patterns, grid step 1/{den}", caps.heavy_patterns))
}

/// Index sets whose values sum to exactly 1.
fn halves(v: &[Rational]) -> Vec<Vec<usize>> {
    let m = v.len();
    let one = int(1);
    (0u32..1 << m)
        .map(|mask| (0..m).filter(|k| mask >> k & 1 == 1).collect::<Vec<_>>())
        .filter(|set| set.iter().map(|&k| &v[k]).sum::<Rational>() == one)
        .collect()
}

/// `m` positive values summing to 2 that split into two halves.
fn yes_instance(rng: &mut ChaCha8Rng, max_m: usize) -> Vec<Rational> {
    let m = rng.gen_range(2..=max_m);
    let left = rng.gen_range(1..m);
    let right = m - left;
    let mut side: Vec<i64> = (0..left).map(|_| rng.gen_range(1..=6)).collect();
    let mut total: i64 = side.iter().sum();
    if total < right as i64 {
        side[0] += right as i64 - total;
        total = right as i64;
    }
    // A random composition of `total` into `right` positive parts.
    let mut cuts: Vec<i64> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<i64> = cuts.into_iter().take(right - 1).collect();
    cuts.sort_unstable();
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        side.push(c - prev);
        prev = c;
    }
    side.shuffle(rng);
    side.into_iter().map(|x| rat(x, total)).collect()
}

fn no_instance(rng: &mut ChaCha8Rng, max_m: usize) -> Vec<Rational> {
    loop {
        let m = rng.gen_range(1..=max_m);
        let raw: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
        let total: i64 = raw.iter().sum();
        let v: Vec<Rational> = raw.iter().map(|&x| rat(2 * x, total)).collect();
        if halves(&v).is_empty() {
            return v;
        }
    }
}

fn partition(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    let p = Pattern::new(int_matrix([[2, 0], [0, 2]]));
    let mut cases = Vec::new();
    for _ in 0..caps.partition_yes {
        cases.push((yes_instance(rng, caps.partition_max_m), true));
    }
    for _ in 0..caps.partition_no {
        cases.push((no_instance(rng, caps.partition_max_m), false));
    }
    let mut certificates = 0;
    for (k, (v, expect_yes)) in cases.into_iter().enumerate() {
        let sets = halves(&v);
        ensure(sets.is_empty() != expect_yes, || {
            format!("instance {k} generated in the wrong class")
        })?;
        let part = lib(PartitionInstance::new(v.clone()))?;
        let red = lib(reduce_partition(&p, &part))?;
        let found = lib(partition_oracle_search(&red))?;
        ensure(found.feasible_below_threshold == expect_yes, || {
            format!(
                "instance {k} {v:?}: best {} vs z* {}, subset enumeration says {expect_yes}",
                found.best, red.threshold
            )
        })?;
        for set in &sets {
            let (_, value) = lib(yes_certificate_to_permutation(&red, set))?;
            ensure(value == red.threshold, || {
                format!("instance {k}, half {set:?}: value {value} ≠ z* {}", red.threshold)
            })?;
            certificates += 1;
        }
    }
    Ok(format!(
        "{} YES and {} NO instances, m ≤ {}; {certificates} certificates at exactly z*",
        caps.partition_yes, caps.partition_no, caps.partition_max_m
    ))
}

/// Fewest crossing edges over all balanced splits.
fn min_bisection(n: usize, edges: &[(usize, usize)]) -> u64 {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == n / 2)
        .map(|mask| {
            edges
                .iter()
                .filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1))
                .count() as u64
        })
        .min()
        .expect("n ≥ 2")
}

fn check_graph(n: usize, edges: Vec<(usize, usize)>) -> Result<(), String> {
    let cut = min_bisection(n, &edges);
    let m = edges.len() as u64;
    let base = lib(GraphBisectionInstance::new(n, edges.clone(), 0))?;
    let (inst, _) = lib(reduce_bisection(&base))?;
    let opt = optimum(&inst)?;
    for t in 0..=m {
        let (_, threshold) = lib(reduce_bisection(&lib(GraphBisectionInstance::new(
            n,
            edges.clone(),
            t,
        ))?))?;
        ensure((opt <= threshold) == (cut <= t), || {
            format!("graph {edges:?}, t = {t}: optimum {opt}, threshold {threshold}, min cut {cut}")
        })?;
    }
    Ok(())
}

fn bisection(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    let pairs = |n: usize| -> Vec<(usize, usize)> { (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect() };
    let four = pairs(4);
    for mask in 0u32..1 << four.len() {
        let edges = (0..four.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| four[k])
            .collect();
        check_graph(4, edges)?;
    }
    let six = pairs(6);
    for _ in 0..caps.bisection_random_6 {
        let edges = six.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        check_graph(6, edges)?;
    }
    Ok(format!(
        "all 64 graphs on 4 vertices, {} random graphs on 6, every t",
        caps.bisection_random_6
    ))
}

/// All `n!` permutations, by Heap's algorithm.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![p.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn dense_objective(a: &SymMatrix, b: &SymMatrix, p: &[usize]) -> Rational {
    let n = a.n();
    let mut total = int(0);
    for i in 0..n {
        for j in 0..n {
            total += a.get(p[i], p[j]) * b.get(i, j);
        }
    }
    total
}

fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), rng.gen_range(1..=3))
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Result<SymMatrix, String> {
    let upper: Vec<Rational> = (0..n * n).map(|_| small_rational(rng, -5, 5)).collect();
    lib(SymMatrix::from_fn(n, |i, j| upper[i * n + j].clone()))
}

fn sums_and_linearity(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    for k in 0..caps.fact_pairs {
        let n = rng.gen_range(1..=caps.fact_max_n);
        let alpha: Vec<Rational> = (0..n).map(|_| small_rational(rng, -6, 6)).collect();
        let a = lib(SumSpec { alpha: alpha.clone() }.expand())?;
        // c · cycle + d · I + e · J has every row sum equal.
        let (c, d, e) = (
            small_rational(rng, 0, 4),
            small_rational(rng, 0, 4),
            small_rational(rng, 0, 4),
        );
        let b = lib(SymMatrix::from_fn(n, |i, j| {
            let step = (j + n - i) % n;
            let on_cycle = n > 1 && (step == 1 || step == n - 1);
            let mut x = e.clone();
            if on_cycle {
                x += &c;
            }
            if i == j {
                x += &d;
            }
            x
        }))?;
        let beta: Rational = b.row(0).iter().sum();
        ensure(b.rows().all(|r| r.iter().sum::<Rational>() == beta), || {
            "row sums differ".into()
        })?;
        let expected = int(2) * &beta * alpha.iter().sum::<Rational>();
        for p in all_permutations(n) {
            let z = dense_objective(&a, &b, &p);
            ensure(z == expected, || {
                format!("pair {k}: permutation {p:?} gives {z}, expected {expected}")
            })?;
        }
    }
    for k in 0..caps.linearity_triples {
        let n = rng.gen_range(1..=caps.fact_max_n);
        let (a1, a2, b) = (
            random_symmetric(rng, n)?,
            random_symmetric(rng, n)?,
            random_symmetric(rng, n)?,
        );
        let c = small_rational(rng, -4, 4);
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        let p = lib(Permutation::new(image))?;
        let z = |a: &SymMatrix| lib(QapInstance::new(a.clone(), b.clone()).and_then(|i| evaluate(&i, &p)));
        let combined = lib(a1.checked_add(&a2.scale(&c)))?;
        let (lhs, rhs) = (z(&combined)?, z(&a1)? + &c * z(&a2)?);
        ensure(lhs == rhs, || format!("triple {k}: {lhs} ≠ {rhs}"))?;
    }
    Ok(format!(
        "{} sum × constant-row-sum pairs (all n!, n ≤ {}), {} linearity triples",
        caps.fact_pairs, caps.fact_max_n, caps.linearity_triples
    ))
}

fn anti_monge_exhaustive(a: &SymMatrix) -> bool {
    let n = a.n();
    if a.entries().iter().any(|x| *x < int(0)) {
        return false;
    }
    (0..n).all(|i| {
        (i + 1..n).all(|k| (0..n).all(|j| (j + 1..n).all(|l| a.get(i, j) + a.get(k, l) >= a.get(i, l) + a.get(k, j))))
    })
}

fn recognition(caps: &Caps, rng: &mut ChaCha8Rng) -> Check {
    let mut positives = 0;
    for k in 0..caps.recognition_matrices {
        let n = rng.gen_range(1..=7);
        let rays = rng.gen_range(1..=4);
        let base = lib(gen::anti_monge_with(rng, n, rays))?;
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let bump = int(rng.gen_range(-2..=2));
        let a = lib(SymMatrix::from_fn(n, |r, c| {
            let x = base.get(r, c).clone();
            if (r.min(c), r.max(c)) == (i.min(j), i.max(j)) {
                x + &bump
            } else {
                x
            }
        }))?;
        let (fast, slow) = (is_anti_monge(&a), anti_monge_exhaustive(&a));
        ensure(fast == slow, || {
            format!("matrix {k}: adjacent check {fast}, exhaustive {slow}")
        })?;
        positives += usize::from(fast);
    }
    for k in 0..caps.split_matrices {
        let n = rng.gen_range(1..=8);
        let rays = rng.gen_range(1..=4);
        let a = lib(gen::anti_monge_with(rng, n, rays))?;
        let split = lib(split_anti_monge(&a))?;
        let back = lib(split.monotone.checked_add(&lib(split.sum.expand())?))?;
        ensure(
            is_monotone(&split.monotone) && anti_monge_exhaustive(&split.monotone) && back == a,
            || format!("split {k} fails its postconditions"),
        )?;
    }
    for k in 0..caps.gmam_matrices {
        let n = rng.gen_range(1..=caps.gmam_max_n);
        let rays = rng.gen_range(1..=6);
        let a = lib(gen::monotone_anti_monge_with(rng, n, rays))?;
        let coeffs = lib(gmam_decompose(&a, &int(2)))?.ok_or_else(|| format!("matrix {k} (n = {n}) not decomposed"))?;
        ensure(lib(gmam_compose(n, &int(2), &coeffs))? == a, || {
            format!("matrix {k}: decomposition does not recompose")
        })?;
    }
    Ok(format!(
        "{} matrices ({positives} anti-Monge), {} splits, {} cone decompositions with n ≤ {}",
        caps.recognition_matrices, caps.split_matrices, caps.gmam_matrices, caps.gmam_max_n
    ))
}
