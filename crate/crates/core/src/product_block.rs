//! Product-Block QAP: `A` is a product matrix, `B` a block matrix.
//!
//! With `α` sorted, the objective of a permutation only depends on the
//! block sums `y_k` of the `α`-values that land in block `k`, as
//! `Σ p_kl y_k y_l`. When the pattern has no bad ensemble some optimal
//! permutation hands every block a consecutive interval of the sorted
//! `α`, so trying all `q!` block orders is exact.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::classes::{BlockSpec, Expand, ProductSpec};
use crate::error::reject;
use crate::pattern::{is_certified_polynomial, Pattern};
use crate::{Error, Hypothesis, Permutation, QapInstance, Rational, Result};

/// Largest `q` for which the solver enumerates block orders.
pub const MAX_BLOCKS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBlockInstance {
    alpha: ProductSpec,
    blocks: BlockSpec,
}

impl ProductBlockInstance {
    /// Requires `α` sorted non-decreasingly and block sizes summing to its
    /// length.
    pub fn new(alpha: ProductSpec, blocks: BlockSpec) -> Result<Self> {
        if !alpha.is_monotone() {
            reject!("product factors must be sorted non-decreasingly");
        }
        let n = blocks.dim();
        if n != alpha.dim() {
            return Err(Error::DimensionMismatch {
                expected: alpha.dim(),
                found: n,
            });
        }
        Ok(ProductBlockInstance { alpha, blocks })
    }

    /// Sorts `α` first. The returned permutation maps sorted positions to
    /// the original indices; compose it with a solver permutation to
    /// report against the original indexing.
    pub fn from_unsorted(alpha: Vec<Rational>, blocks: BlockSpec) -> Result<(Self, Permutation)> {
        let mut order: Vec<usize> = (0..alpha.len()).collect();
        order.sort_by(|&i, &j| alpha[i].cmp(&alpha[j]));
        let sorted = order.iter().map(|&i| alpha[i].clone()).collect();
        let inst = Self::new(ProductSpec::new(sorted)?, blocks)?;
        Ok((inst, Permutation::new(order)?))
    }

    pub fn alpha(&self) -> &[Rational] {
        self.alpha.alpha()
    }

    pub fn blocks(&self) -> &BlockSpec {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.alpha.dim()
    }

    pub fn q(&self) -> usize {
        self.blocks.q()
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::new(self.blocks.pattern().clone())
    }
}

/// `Σ_k Σ_l p_kl y_k y_l`.
pub fn objective_from_block_sums(p: &Pattern, y: &[Rational]) -> Result<Rational> {
    p.quadratic_form(y)
}

/// The dense QAP described by a Product-Block instance.
pub fn expand_to_qap(inst: &ProductBlockInstance) -> Result<QapInstance> {
    QapInstance::new(inst.alpha.expand()?, inst.blocks.expand()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    /// The pattern is certified free of bad ensembles.
    Optimal,
    /// Uncertified pattern run on the caller's attestation: best among
    /// separable assignments only.
    SeparableHeuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBlockSolution {
    pub value: Rational,
    /// Blocks in the order in which they receive intervals of sorted `α`.
    pub block_order: Vec<usize>,
    /// Maps each row of `B` to the row of `A` placed there.
    pub permutation: Permutation,
    pub certification: Certification,
}

/// One block order and its objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub block_order: Vec<usize>,
    pub block_sums: Vec<Rational>,
    pub value: Rational,
}

/// Advances `xs` to the next permutation in lexicographic order.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("xs[i + 1] > xs[i]");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Every block order in lexicographic order, with the block sums it
/// induces and its objective. Refuses `q > MAX_BLOCKS`.
pub fn candidates(inst: &ProductBlockInstance) -> Result<Vec<Candidate>> {
    let q = inst.q();
    if q > MAX_BLOCKS {
        return Err(Error::TooLarge {
            what: "number of blocks",
            size: q,
            cap: MAX_BLOCKS,
        });
    }
    let pattern = inst.pattern();
    let sizes = inst.blocks.sizes();
    let mut prefix = Vec::with_capacity(inst.n() + 1);
    prefix.push(Rational::zero());
    for a in inst.alpha() {
        let next = prefix.last().expect("non-empty") + a;
        prefix.push(next);
    }

    let mut order: Vec<usize> = (0..q).collect();
    let mut out = Vec::new();
    loop {
        let mut y = alloc::vec![Rational::zero(); q];
        let mut start = 0;
        for &k in &order {
            let end = start + sizes[k];
            y[k] = &prefix[end] - &prefix[start];
            start = end;
        }
        let value = objective_from_block_sums(&pattern, &y)?;
        out.push(Candidate {
            block_order: order.clone(),
            block_sums: y,
            value,
        });
        if !next_permutation(&mut order) {
            return Ok(out);
        }
    }
}

/// The permutation that gives block `block_order[0]` the first interval of
/// sorted `α`, the next block the following interval, and so on.
pub fn permutation_for_order(blocks: &BlockSpec, block_order: &[usize]) -> Result<Permutation> {
    let sizes = blocks.sizes();
    let offsets = blocks.offsets();
    let mut image = alloc::vec![0; blocks.dim()];
    let mut next = 0;
    for &k in block_order {
        for slot in &mut image[offsets[k]..offsets[k] + sizes[k]] {
            *slot = next;
            next += 1;
        }
    }
    Permutation::new(image)
}

/// Best separable assignment. Ties go to the lexicographically smallest
/// block order.
///
/// Without `attest`, refuses patterns that are not certified free of bad
/// ensembles. With it, such patterns are solved anyway and the result is
/// labelled [`Certification::SeparableHeuristic`].
pub fn solve_product_block(inst: &ProductBlockInstance, attest: bool) -> Result<ProductBlockSolution> {
    let certification = if is_certified_polynomial(&inst.pattern()) {
        Certification::Optimal
    } else if attest {
        Certification::SeparableHeuristic
    } else {
        return Err(Hypothesis::PatternNotCertified.into());
    };
    let best = candidates(inst)?
        .into_iter()
        .reduce(|best, c| if c.value < best.value { c } else { best })
        .expect("at least one block order");
    Ok(ProductBlockSolution {
        permutation: permutation_for_order(&inst.blocks, &best.block_order)?,
        value: best.value,
        block_order: best.block_order,
        certification,
    })
}

/// Whether the rows of `A` that `perm` sends to different blocks of `B`
/// lie in pairwise separable value ranges of sorted `α`: for any two
/// blocks, every value in one is at most every value in the other.
pub fn is_separable(inst: &ProductBlockInstance, perm: &Permutation) -> Result<bool> {
    if perm.len() != inst.n() {
        return Err(Error::DimensionMismatch {
            expected: inst.n(),
            found: perm.len(),
        });
    }
    let alpha = inst.alpha();
    let block = inst.blocks.block_of_rows();
    let mut range: Vec<Option<(&Rational, &Rational)>> = alloc::vec![None; inst.q()];
    for (i, &k) in block.iter().enumerate() {
        let a = &alpha[perm.apply(i)];
        range[k] = Some(match range[k] {
            None => (a, a),
            Some((lo, hi)) => (lo.min(a), hi.max(a)),
        });
    }
    let ranges: Vec<_> = range.into_iter().flatten().collect();
    Ok(ranges
        .iter()
        .enumerate()
        .all(|(i, (lo1, hi1))| ranges[i + 1..].iter().all(|(lo2, hi2)| hi1 <= lo2 || hi2 <= lo1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use crate::{evaluate, int, rat};
    use alloc::vec;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn example(alpha: &[i64]) -> ProductBlockInstance {
        let blocks = BlockSpec::new(int_matrix([[0, 2], [2, 1]]), vec![1, 2]).unwrap();
        ProductBlockInstance::new(ProductSpec::new(ints(alpha)).unwrap(), blocks).unwrap()
    }

    #[test]
    fn block_sum_objective() {
        let p = Pattern::new(int_matrix([[0, 2], [2, 1]]));
        assert_eq!(
            objective_from_block_sums(&p, &[rat(1, 4), rat(3, 4)]).unwrap(),
            rat(21, 16)
        );
        assert_eq!(objective_from_block_sums(&p, &[int(0), int(0)]).unwrap(), int(0));
        let p = Pattern::new(int_matrix([[2, 0], [0, 2]]));
        assert_eq!(objective_from_block_sums(&p, &[rat(1, 2), rat(1, 2)]).unwrap(), int(1));
        assert!(objective_from_block_sums(&p, &[int(1)]).is_err());
    }

    #[test]
    fn first_worked_example() {
        let inst = example(&[1, 1, 2]);
        let values: Vec<_> = candidates(&inst).unwrap().into_iter().map(|c| c.value).collect();
        assert_eq!(values, ints(&[21, 20]));
        let sol = solve_product_block(&inst, false).unwrap();
        assert_eq!(sol.value, int(20));
        assert_eq!(sol.block_order, vec![1, 0]);
        assert_eq!(sol.certification, Certification::Optimal);
        // Rows 1, 2, 3 of B receive rows 3, 1, 2 of A.
        assert_eq!(sol.permutation.to_one_based(), vec![3, 1, 2]);
    }

    #[test]
    fn second_worked_example() {
        let inst = example(&[1, 2, 2]);
        let values: Vec<_> = candidates(&inst).unwrap().into_iter().map(|c| c.value).collect();
        assert_eq!(values, ints(&[32, 33]));
        let sol = solve_product_block(&inst, false).unwrap();
        assert_eq!(sol.value, int(32));
        assert_eq!(sol.block_order, vec![0, 1]);
        assert!(sol.permutation.is_identity());
    }

    #[test]
    fn expansion_matches_displayed_matrices() {
        let qap = expand_to_qap(&example(&[1, 1, 2])).unwrap();
        assert_eq!(qap.a(), &int_matrix([[1, 1, 2], [1, 1, 2], [2, 2, 4]]));
        assert_eq!(qap.b(), &int_matrix([[0, 2, 2], [2, 1, 1], [2, 1, 1]]));
        for inst in [example(&[1, 1, 2]), example(&[1, 2, 2])] {
            let sol = solve_product_block(&inst, false).unwrap();
            let qap = expand_to_qap(&inst).unwrap();
            assert_eq!(evaluate(&qap, &sol.permutation).unwrap(), sol.value);
        }
    }

    #[test]
    fn single_block() {
        let blocks = BlockSpec::new(int_matrix([[3]]), vec![3]).unwrap();
        let inst = ProductBlockInstance::new(ProductSpec::new(ints(&[1, 2, 4])).unwrap(), blocks).unwrap();
        let sol = solve_product_block(&inst, false).unwrap();
        assert_eq!(sol.value, int(3 * 49));
        assert_eq!(sol.block_order, vec![0]);
    }

    #[test]
    fn empty_blocks_are_skipped() {
        let blocks = BlockSpec::new(int_matrix([[0, 2, 1], [2, 1, 0], [1, 0, 0]]), vec![1, 2, 0]).unwrap();
        let inst = ProductBlockInstance::new(ProductSpec::new(ints(&[1, 1, 2])).unwrap(), blocks).unwrap();
        let all = candidates(&inst).unwrap();
        assert_eq!(all.len(), 6);
        let sol = solve_product_block(&inst, true).unwrap();
        assert_eq!(sol.value, int(20));
        let qap = expand_to_qap(&inst).unwrap();
        assert_eq!(evaluate(&qap, &sol.permutation).unwrap(), sol.value);
    }

    #[test]
    fn uncertified_pattern_needs_attestation() {
        let blocks = BlockSpec::new(int_matrix([[2, 0], [0, 2]]), vec![2, 2]).unwrap();
        let inst = ProductBlockInstance::new(ProductSpec::new(ints(&[1, 2, 3, 4])).unwrap(), blocks).unwrap();
        assert_eq!(
            solve_product_block(&inst, false),
            Err(Error::Hypothesis(Hypothesis::PatternNotCertified))
        );
        let sol = solve_product_block(&inst, true).unwrap();
        assert_eq!(sol.certification, Certification::SeparableHeuristic);
        // Separable: {1,2} and {3,4} give 2·9 + 2·49 = 116.
        assert_eq!(sol.value, int(116));
    }

    #[test]
    fn construction_checks() {
        let blocks = BlockSpec::new(int_matrix([[0, 2], [2, 1]]), vec![1, 2]).unwrap();
        assert!(ProductBlockInstance::new(ProductSpec::new(ints(&[2, 1, 1])).unwrap(), blocks.clone()).is_err());
        assert!(ProductBlockInstance::new(ProductSpec::new(ints(&[1, 1])).unwrap(), blocks.clone()).is_err());
        let (inst, sort) = ProductBlockInstance::from_unsorted(ints(&[2, 1, 1]), blocks).unwrap();
        assert_eq!(inst.alpha(), &ints(&[1, 1, 2])[..]);
        assert_eq!(sort.to_one_based(), vec![2, 3, 1]);
    }

    #[test]
    fn unsorted_input_maps_back() {
        let blocks = BlockSpec::new(int_matrix([[0, 2], [2, 1]]), vec![1, 2]).unwrap();
        let alpha = ints(&[2, 1, 1]);
        let (inst, sort) = ProductBlockInstance::from_unsorted(alpha.clone(), blocks.clone()).unwrap();
        let sol = solve_product_block(&inst, false).unwrap();
        let original = sort.compose(&sol.permutation).unwrap();
        let qap = QapInstance::new(
            ProductSpec::new(alpha).unwrap().expand().unwrap(),
            blocks.expand().unwrap(),
        )
        .unwrap();
        assert_eq!(evaluate(&qap, &original).unwrap(), int(20));
    }

    #[test]
    fn separability() {
        let inst = example(&[1, 2, 3]);
        assert!(is_separable(&inst, &Permutation::identity(3)).unwrap());
        assert!(is_separable(&inst, &Permutation::from_one_based(&[3, 1, 2]).unwrap()).unwrap());
        assert!(!is_separable(&inst, &Permutation::from_one_based(&[2, 1, 3]).unwrap()).unwrap());
        // Ties in α do not break separability.
        let inst = example(&[1, 1, 1]);
        assert!(is_separable(&inst, &Permutation::from_one_based(&[2, 1, 3]).unwrap()).unwrap());
    }

    #[test]
    fn lexicographic_orders() {
        let mut xs = vec![0, 1, 2];
        let mut seen = vec![xs.clone()];
        while next_permutation(&mut xs) {
            seen.push(xs.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }
}
