//! Independent reference computations. Nothing here calls a solver or the
//! crate's oracle; only plain matrices and `itertools` enumeration.

#![allow(dead_code)]

use blockqap::{Rational, SymMatrix};
use itertools::Itertools;

pub type Dense = Vec<Vec<Rational>>;

pub fn dense(m: &SymMatrix) -> Dense {
    m.to_rows()
}

pub fn objective(a: &Dense, b: &Dense, perm: &[usize]) -> Rational {
    let n = a.len();
    let mut total = Rational::from_integer(0.into());
    for i in 0..n {
        for j in 0..n {
            total += &a[perm[i]][perm[j]] * &b[i][j];
        }
    }
    total
}

/// Minimum over all permutations, with the lexicographically smallest
/// minimizer.
pub fn naive_optimum(a: &Dense, b: &Dense) -> (Rational, Vec<usize>) {
    let n = a.len();
    (0..n)
        .permutations(n)
        .map(|p| (objective(a, b, &p), p))
        .min()
        .expect("n ≥ 1")
}

pub fn all_values(a: &Dense, b: &Dense) -> Vec<Rational> {
    let n = a.len();
    (0..n).permutations(n).map(|p| objective(a, b, &p)).collect()
}

/// Two-block objective on counts: `y` rows of the middle block and `z`
/// rows of the last block of the 1-2-1 matrix land in the first cut block.
pub fn two_block_grid_min(r: usize, s: usize, t: usize, u: usize) -> i64 {
    let (s, t) = (s as i64, t as i64);
    let mut best = i64::MAX;
    for y in 0..=s {
        for z in 0..=t {
            let x = u as i64 - y - z;
            if x < 0 || x > r as i64 {
                continue;
            }
            best = best.min(2 * y * (t - z) + 2 * z * (s - y) + 4 * z * (t - z));
        }
    }
    best
}

/// Block matrix with blocks `r, s, t`: 0 against the first block and
/// inside the middle one, 1 between middle and last, 2 inside the last.
pub fn two_block_a(r: usize, s: usize, t: usize) -> Dense {
    let n = r + s + t;
    let level = |i: usize| {
        if i < r {
            0
        } else if i < r + s {
            1
        } else {
            2
        }
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = match (level(i), level(j)) {
                        (0, _) | (_, 0) => 0,
                        (1, 1) => 0,
                        (1, 2) | (2, 1) => 1,
                        _ => 2,
                    };
                    Rational::from_integer(v.into())
                })
                .collect()
        })
        .collect()
}

pub fn cut(u: usize, v: usize) -> Dense {
    let n = u + v;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(i64::from((i < u) != (j < u)).into()))
                .collect()
        })
        .collect()
}

pub fn is_anti_monge_exhaustive(a: &Dense) -> bool {
    let n = a.len();
    if a.iter().flatten().any(|x| *x < Rational::from_integer(0.into())) {
        return false;
    }
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    if &a[i][j] + &a[k][l] < &a[i][l] + &a[k][j] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn min_bisection(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..n)
        .combinations(n / 2)
        .map(|side| {
            edges
                .iter()
                .filter(|(a, b)| side.contains(a) != side.contains(b))
                .count()
        })
        .min()
        .expect("n ≥ 2")
}

pub fn has_half(v: &[Rational]) -> bool {
    let one = Rational::from_integer(1.into());
    v.iter().powerset().any(|sub| sub.into_iter().sum::<Rational>() == one)
}
