//! Exhaustive search over all `n!` permutations.
//!
//! This is the reference every structured solver is checked against. The
//! permutations are visited in lexicographic order and the objective is
//! updated incrementally after each transposition, so a step costs `O(n)`.
//! When both matrices scale to small integers the search runs in `i128`;
//! otherwise it falls back to exact rationals.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Permutation, QapInstance, Rational, Result, SymMatrix};

/// Largest dimension accepted unless the caller raises the cap.
pub const DEFAULT_MAX_N: usize = 10;

/// Minimum objective value and the lexicographically smallest permutation
/// attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub argmin: Permutation,
}

impl Optimum {
    /// The better of two optima, ties going to the lexicographically smaller
    /// permutation. Associative and commutative, so partial searches can be
    /// merged in any order.
    pub fn merge(self, other: Optimum) -> Optimum {
        if (&other.value, &other.argmin) < (&self.value, &self.argmin) {
            other
        } else {
            self
        }
    }
}

/// Brute-force QAP optimum with a size cap on `n`.
pub fn brute_force_optimum(inst: &QapInstance, max_n: usize) -> Result<Optimum> {
    let oracle = Oracle::new(inst, max_n)?;
    Ok(oracle.search_all())
}

/// A prepared exhaustive search, splittable by the value of `π(1)`.
#[derive(Debug, Clone)]
pub struct Oracle {
    n: usize,
    kernel: Kernel,
}

#[derive(Debug, Clone)]
enum Kernel {
    /// Integer images of `A` and `B` with `Z = Z_int / scale`.
    Int {
        a: Vec<i128>,
        b: Vec<i128>,
        scale: BigInt,
    },
    Exact {
        a: Vec<Rational>,
        b: Vec<Rational>,
    },
}

impl Oracle {
    pub fn new(inst: &QapInstance, max_n: usize) -> Result<Self> {
        let n = inst.n();
        if n > max_n {
            return Err(Error::TooLarge {
                what: "brute-force dimension",
                size: n,
                cap: max_n,
            });
        }
        let kernel = match (scaled(inst.a()), scaled(inst.b())) {
            (Some((a, da, amax)), Some((b, db, bmax))) if bound_fits(n, amax, bmax) => {
                Kernel::Int { a, b, scale: da * db }
            }
            _ => Kernel::Exact {
                a: inst.a().entries().to_vec(),
                b: inst.b().entries().to_vec(),
            },
        };
        Ok(Oracle { n, kernel })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn search_all(&self) -> Optimum {
        self.run(None)
    }

    /// Best permutation among those with `π(1) = first` (0-based `first`).
    pub fn search_with_first(&self, first: usize) -> Optimum {
        assert!(first < self.n, "first element out of range");
        self.run(Some(first))
    }

    fn run(&self, first: Option<usize>) -> Optimum {
        let n = self.n;
        let (start, perm): (usize, Vec<usize>) = match first {
            None => (0, (0..n).collect()),
            Some(f) => (1, core::iter::once(f).chain((0..n).filter(|&x| x != f)).collect()),
        };
        match &self.kernel {
            Kernel::Int { a, b, scale } => {
                let (value, argmin) = search(a, b, n, perm, start);
                Optimum {
                    value: Rational::new(BigInt::from(value), scale.clone()),
                    argmin: Permutation::new(argmin).expect("search yields permutations"),
                }
            }
            Kernel::Exact { a, b } => {
                let (value, argmin) = search(a, b, n, perm, start);
                Optimum {
                    value,
                    argmin: Permutation::new(argmin).expect("search yields permutations"),
                }
            }
        }
    }
}

/// Integer image of a matrix: `(entries · d, d, max |entry · d|)` where `d`
/// is the least common denominator, if every scaled entry fits in `i64`.
fn scaled(m: &SymMatrix) -> Option<(Vec<i128>, BigInt, i128)> {
    let d = m.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut max = 0i128;
    let mut out = Vec::with_capacity(m.entries().len());
    for x in m.entries() {
        let v = (x.numer() * (&d / x.denom())).to_i64()? as i128;
        max = max.max(v.abs());
        out.push(v);
    }
    Some((out, d, max))
}

/// Every partial sum and delta stays below `4 n² · max|a| · max|b|`.
fn bound_fits(n: usize, amax: i128, bmax: i128) -> bool {
    let nn = (n * n) as i128;
    amax.checked_mul(bmax)
        .and_then(|x| x.checked_mul(nn))
        .and_then(|x| x.checked_mul(4))
        .is_some()
}

trait Scalar: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}

impl<T> Scalar for T where T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> {}

fn full_value<T: Scalar>(a: &[T], b: &[T], n: usize, perm: &[usize]) -> T {
    let mut total = T::zero();
    for i in 0..n {
        for j in 0..n {
            total = total + a[perm[i] * n + perm[j]].clone() * b[i * n + j].clone();
        }
    }
    total
}

/// Change of the objective when positions `p` and `q` of `perm` swap.
/// Relies on both matrices being symmetric.
fn swap_delta<T: Scalar>(a: &[T], b: &[T], n: usize, perm: &[usize], p: usize, q: usize) -> T {
    let (x, y) = (perm[p], perm[q]);
    let mut cross = T::zero();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let pk = perm[k];
        let da = a[y * n + pk].clone() - a[x * n + pk].clone();
        let db = b[p * n + k].clone() - b[q * n + k].clone();
        if !da.is_zero() && !db.is_zero() {
            cross = cross + da * db;
        }
    }
    let diag = (a[y * n + y].clone() - a[x * n + x].clone()) * (b[p * n + p].clone() - b[q * n + q].clone());
    diag + cross.clone() + cross
}

/// Visits every permutation of `perm[start..]` in lexicographic order,
/// starting from the sorted suffix, and returns the first minimum found.
fn search<T: Scalar>(a: &[T], b: &[T], n: usize, mut perm: Vec<usize>, start: usize) -> (T, Vec<usize>) {
    let mut value = full_value(a, b, n, &perm);
    let mut best = (value.clone(), perm.clone());
    if n < 2 {
        return best;
    }
    loop {
        // Rightmost ascent within the free suffix.
        let mut i = n - 1;
        while i > start && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == start {
            return best;
        }
        let pivot = i - 1;
        let mut j = n - 1;
        while perm[j] <= perm[pivot] {
            j -= 1;
        }
        value = value + swap_delta(a, b, n, &perm, pivot, j);
        perm.swap(pivot, j);
        let (mut lo, mut hi) = (i, n - 1);
        while lo < hi {
            value = value + swap_delta(a, b, n, &perm, lo, hi);
            perm.swap(lo, hi);
            lo += 1;
            hi -= 1;
        }
        if value < best.0 {
            best = (value.clone(), perm.clone());
        }
    }
}
