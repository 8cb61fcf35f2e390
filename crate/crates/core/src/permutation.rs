use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A bijection on `{0, …, n-1}` stored as its image sequence.
///
/// `Ord` is lexicographic on the image, which is the tie-break order used by
/// every solver in this crate. Indices are 0-based; [`Permutation::from_one_based`]
/// and the `Display` impl convert at the I/O boundary.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = alloc::vec![false; n];
        for &x in &image {
            if x >= n {
                return Err(Error::InvalidPermutation(format!("value {} is outside 1..={n}", x + 1)));
            }
            if core::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("value {} appears twice", x + 1)));
            }
        }
        Ok(Permutation { image })
    }

    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        let zero_based = image
            .iter()
            .map(|&x| {
                x.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("value 0 in 1-based input".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(zero_based)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.image.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.to_one_based())
    }
}

/// One-based image, e.g. `(3 2 1)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.image.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str(")")
    }
}
