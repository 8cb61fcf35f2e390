//! Seeded random generators for the matrix classes.
//!
//! Each `gen_*` function is a deterministic function of its parameters and
//! seed. The `*_with` variants draw from a caller-supplied RNG so that
//! several objects can be drawn from one stream.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{Expand, MultiCutSpec, OneLambdaOneSpec, ProductSpec};
use crate::error::reject;
use crate::pattern::{is_certified_polynomial, Pattern};
use crate::{int, rat, Rational, Result, SymMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sum of `k` random non-negative multiples of random 1-2-1 block
/// matrices; always monotone and anti-Monge.
pub fn gen_monotone_anti_monge(n: usize, k: usize, seed: u64) -> Result<SymMatrix> {
    monotone_anti_monge_with(&mut rng(seed), n, k)
}

/// A monotone anti-Monge matrix plus a random sum matrix, shifted by a
/// constant so that every entry is non-negative.
pub fn gen_anti_monge(n: usize, k: usize, seed: u64) -> Result<SymMatrix> {
    anti_monge_with(&mut rng(seed), n, k)
}

/// Sorted non-negative factors.
pub fn gen_product(n: usize, seed: u64) -> Result<ProductSpec> {
    product_with(&mut rng(seed), n)
}

/// `q` positive block sizes in non-decreasing order summing to `n`.
pub fn gen_multicut(n: usize, q: usize, seed: u64) -> Result<MultiCutSpec> {
    multicut_with(&mut rng(seed), n, q)
}

/// Random symmetric `q × q` pattern with small non-negative integer entries.
pub fn gen_pattern(q: usize, seed: u64) -> Result<SymMatrix> {
    pattern_with(&mut rng(seed), q)
}

fn check_dims(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        reject!("generator needs n ≥ 1 and k ≥ 1, got n = {n}, k = {k}");
    }
    Ok(())
}

/// A small positive rational `p / d` with `1 ≤ p ≤ 6`, `d ∈ {1, 2, 3}`.
fn small_positive<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

pub fn monotone_anti_monge_with<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<SymMatrix> {
    check_dims(n, k)?;
    let mut total = SymMatrix::zero(n)?;
    for _ in 0..k {
        let t = rng.gen_range(1..=n);
        let s = rng.gen_range(0..=n - t);
        let ray = OneLambdaOneSpec::new(int(2), n - s - t, s, t)?.expand()?;
        total = total.checked_add(&ray.scale(&small_positive(rng)))?;
    }
    Ok(total)
}

pub fn anti_monge_with<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<SymMatrix> {
    let monotone = monotone_anti_monge_with(rng, n, k)?;
    let alpha: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-6..=6))).collect();
    let mixed = SymMatrix::from_fn(n, |i, j| monotone.get(i, j) + &alpha[i] + &alpha[j])?;
    // A constant matrix is itself a sum matrix.
    let shift = (-mixed.min_entry().clone()).max(int(0));
    SymMatrix::from_fn(n, |i, j| mixed.get(i, j) + &shift)
}

pub fn product_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<ProductSpec> {
    check_dims(n, 1)?;
    let mut alpha: Vec<Rational> = (0..n)
        .map(|_| rat(rng.gen_range(0..=9), rng.gen_range(1..=2)))
        .collect();
    alpha.sort();
    ProductSpec::new(alpha)
}

pub fn multicut_with<R: Rng + ?Sized>(rng: &mut R, n: usize, q: usize) -> Result<MultiCutSpec> {
    if q == 0 || q > n {
        reject!("multi-cut needs 1 ≤ q ≤ n, got n = {n}, q = {q}");
    }
    let mut sizes = alloc::vec![1usize; q];
    for _ in 0..n - q {
        sizes[rng.gen_range(0..q)] += 1;
    }
    sizes.sort_unstable();
    MultiCutSpec::new(sizes)
}

/// `q` block sizes summing to `n`; blocks may be empty.
pub fn block_sizes_with<R: Rng + ?Sized>(rng: &mut R, n: usize, q: usize) -> Result<Vec<usize>> {
    if q == 0 {
        reject!("need at least one block");
    }
    let mut sizes = alloc::vec![0usize; q];
    for _ in 0..n {
        sizes[rng.gen_range(0..q)] += 1;
    }
    Ok(sizes)
}

pub fn pattern_with<R: Rng + ?Sized>(rng: &mut R, q: usize) -> Result<SymMatrix> {
    let mut entries = alloc::vec![0i64; q * q];
    for i in 0..q {
        for j in i..q {
            let x = rng.gen_range(0..=5);
            entries[i * q + j] = x;
            entries[j * q + i] = x;
        }
    }
    SymMatrix::from_fn(q, |i, j| int(entries[i * q + j]))
}

/// A random pattern that [`is_certified_polynomial`] accepts.
///
/// Half the time a random pattern is drawn until one is certified (at most
/// 64 tries); otherwise, or if that fails, the diagonal is drawn first and
/// every off-diagonal entry is set to at least the mean of its two
/// diagonal entries.
pub fn certified_pattern_with<R: Rng + ?Sized>(rng: &mut R, q: usize) -> Result<SymMatrix> {
    if q == 0 {
        reject!("need at least one block");
    }
    if rng.gen_bool(0.5) {
        for _ in 0..64 {
            let p = pattern_with(rng, q)?;
            if is_certified_polynomial(&Pattern::new(p.clone())) {
                return Ok(p);
            }
        }
    }
    let diag: Vec<i64> = (0..q).map(|_| rng.gen_range(0..=5)).collect();
    let mut off = alloc::vec![0i64; q * q];
    for i in 0..q {
        for j in i + 1..q {
            // Entries are doubled below so that the mean stays integral.
            let x = diag[i] + diag[j] + rng.gen_range(0..=3);
            off[i * q + j] = x;
            off[j * q + i] = x;
        }
    }
    SymMatrix::from_fn(q, |i, j| if i == j { int(2 * diag[i]) } else { int(off[i * q + j]) })
}

/// A random 2×2 pattern with `p_11 > p_12` and `p_22 > p_12`; entries are
/// small rationals.
pub fn heavy_pair_pattern_with<R: Rng + ?Sized>(rng: &mut R) -> Result<SymMatrix> {
    let off = rat(rng.gen_range(0..=6), rng.gen_range(1..=3));
    let a = &off + small_positive(rng);
    let b = &off + small_positive(rng);
    SymMatrix::new(alloc::vec![alloc::vec![a, off.clone()], alloc::vec![off, b]])
}
