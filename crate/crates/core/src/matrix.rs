use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use num_traits::{Signed, Zero};

use crate::{Error, Rational, Result};

/// Dense symmetric `n × n` matrix of exact rationals, stored row-major.
///
/// Symmetry is checked at construction and the matrix is immutable
/// afterwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    /// Builds a matrix from its rows, rejecting empty, ragged or
    /// asymmetric input.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: values.len(),
                    n,
                });
            }
            entries.extend(values);
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix { n, entries })
    }

    /// Builds a matrix whose `(i, j)` entry is `f(min(i, j), max(i, j))`,
    /// which is symmetric by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut entries = alloc::vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let value = f(i, j);
                entries[j * n + i] = value.clone();
                entries[i * n + j] = value;
            }
        }
        Ok(SymMatrix { n, entries })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| Rational::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.rows().map(<[Rational]>::to_vec).collect()
    }

    /// Every entry multiplied by `c`.
    pub fn scale(&self, c: &Rational) -> SymMatrix {
        SymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// Entrywise sum; fails when the dimensions differ.
    pub fn checked_add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(SymMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    /// The principal submatrix on `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<SymMatrix> {
        SymMatrix::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]).clone())
    }

    /// The matrix with rows and columns relabeled: entry `(i, j)` of the
    /// result is entry `(order[i], order[j])` of `self`.
    pub fn permuted(&self, order: &crate::Permutation) -> Result<SymMatrix> {
        if order.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: order.len(),
            });
        }
        self.principal_submatrix(order.image())
    }

    pub fn min_entry(&self) -> &Rational {
        self.entries.iter().min().expect("matrix is non-empty")
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.entries.iter().map(Signed::abs).max().expect("matrix is non-empty")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;

    /// Panics on a dimension mismatch; see [`SymMatrix::checked_add`].
    fn add(self, other: &SymMatrix) -> SymMatrix {
        self.checked_add(other).expect("matrix dimensions differ")
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.rows()
                    .map(|row| row.iter().map(alloc::string::ToString::to_string).collect::<Vec<_>>()),
            )
            .finish()
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let mut first = true;
            for x in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
                first = false;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Shorthand for building an integer matrix in tests and examples.
pub fn int_matrix<const N: usize>(rows: [[i64; N]; N]) -> SymMatrix {
    SymMatrix::new(
        rows.iter()
            .map(|row| row.iter().map(|&x| crate::int(x)).collect())
            .collect(),
    )
    .expect("literal matrix must be symmetric")
}
