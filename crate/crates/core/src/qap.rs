use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::reject;
use crate::{Error, Permutation, Rational, Result, SymMatrix};

/// A pair of equally sized symmetric matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QapInstance {
    a: SymMatrix,
    b: SymMatrix,
}

impl QapInstance {
    pub fn new(a: SymMatrix, b: SymMatrix) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch {
                expected: a.n(),
                found: b.n(),
            });
        }
        Ok(QapInstance { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &SymMatrix {
        &self.a
    }

    pub fn b(&self) -> &SymMatrix {
        &self.b
    }

    pub fn evaluate(&self, perm: &Permutation) -> Result<Rational> {
        evaluate(self, perm)
    }
}

/// The QAP objective `Σ_i Σ_j a[π(i)][π(j)] · b[i][j]`, computed exactly.
pub fn evaluate(inst: &QapInstance, perm: &Permutation) -> Result<Rational> {
    let n = inst.n();
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut total = Rational::zero();
    for i in 0..n {
        let pi = perm.apply(i);
        for j in 0..n {
            let b = inst.b.get(i, j);
            if !b.is_zero() {
                total += inst.a.get(pi, perm.apply(j)) * b;
            }
        }
    }
    Ok(total)
}

/// Sums `alpha` over consecutive intervals of the given sizes.
///
/// Sizes may be zero; they must add up to `alpha.len()`.
pub fn block_sums(alpha: &[Rational], sizes: &[usize]) -> Result<Vec<Rational>> {
    let total: usize = sizes.iter().sum();
    if total != alpha.len() {
        reject!("block sizes sum to {total} but there are {} values", alpha.len());
    }
    let mut rest = alpha;
    Ok(sizes
        .iter()
        .map(|&size| {
            let (head, tail) = rest.split_at(size);
            rest = tail;
            head.iter().sum()
        })
        .collect())
}
