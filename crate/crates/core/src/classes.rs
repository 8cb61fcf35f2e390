//! Matrix classes: specs, expansion to dense form, and recognition.
//!
//! All matrices are symmetric. The classes covered here:
//!
//! * **monotone**: rows and columns are non-decreasing;
//! * **anti-Monge**: non-negative, and in every 2×2 submatrix the main
//!   diagonal sum dominates the anti-diagonal sum;
//! * **sum** `a_ij = α_i + α_j` and **product** `a_ij = α_i α_j` (`α ≥ 0`);
//! * **block** matrices, constant on products of consecutive index
//!   intervals, described by a `q × q` pattern and `q` block sizes;
//! * **multi-cut** block matrices with pattern `0` on the diagonal and `1`
//!   elsewhere;
//! * **1-λ-1** block matrices with pattern
//!   `[[0, 0, 0], [0, 0, 1], [0, 1, λ]]`, whose non-negative combinations
//!   form the λ-GMAM cone (λ = 2 gives the monotone anti-Monge cone).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::reject;
use crate::{int, nonnegative_solution, Rational, Result, SymMatrix};

/// Anything that describes a symmetric matrix compactly.
pub trait Expand {
    /// Dimension of the expanded matrix.
    fn dim(&self) -> usize;

    /// The dense matrix. Fails only for zero-dimensional specs.
    fn expand(&self) -> Result<SymMatrix>;
}

/// Product matrix `a_ij = α_i α_j` with non-negative `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpec {
    alpha: Vec<Rational>,
}

impl ProductSpec {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if let Some(i) = alpha.iter().position(Signed::is_negative) {
            reject!("product factor α_{} is negative", i + 1);
        }
        Ok(ProductSpec { alpha })
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// Whether `α` is sorted non-decreasingly, which makes the product
    /// matrix monotone.
    pub fn is_monotone(&self) -> bool {
        self.alpha.windows(2).all(|w| w[0] <= w[1])
    }
}

impl Expand for ProductSpec {
    fn dim(&self) -> usize {
        self.alpha.len()
    }

    fn expand(&self) -> Result<SymMatrix> {
        SymMatrix::from_fn(self.alpha.len(), |i, j| &self.alpha[i] * &self.alpha[j])
    }
}

/// Sum matrix `a_ij = α_i + α_j`; `α` may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSpec {
    pub alpha: Vec<Rational>,
}

impl Expand for SumSpec {
    fn dim(&self) -> usize {
        self.alpha.len()
    }

    fn expand(&self) -> Result<SymMatrix> {
        SymMatrix::from_fn(self.alpha.len(), |i, j| &self.alpha[i] + &self.alpha[j])
    }
}

/// Block matrix with a `q × q` pattern and `q` consecutive blocks, some of
/// which may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pattern: SymMatrix,
    sizes: Vec<usize>,
}

impl BlockSpec {
    pub fn new(pattern: SymMatrix, sizes: Vec<usize>) -> Result<Self> {
        if pattern.n() != sizes.len() {
            reject!(
                "pattern has {} blocks but {} sizes were given",
                pattern.n(),
                sizes.len()
            );
        }
        Ok(BlockSpec { pattern, sizes })
    }

    pub fn pattern(&self) -> &SymMatrix {
        &self.pattern
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn q(&self) -> usize {
        self.sizes.len()
    }

    /// Block index of every row, e.g. sizes `(1, 0, 2)` give `[0, 2, 2]`.
    pub fn block_of_rows(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(k, &size)| core::iter::repeat_n(k, size))
            .collect()
    }

    /// First row of every block (for empty blocks, where it would start).
    pub fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &size| {
                let start = *acc;
                *acc += size;
                Some(start)
            })
            .collect()
    }
}

impl Expand for BlockSpec {
    fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn expand(&self) -> Result<SymMatrix> {
        let block = self.block_of_rows();
        SymMatrix::from_fn(block.len(), |i, j| self.pattern.get(block[i], block[j]).clone())
    }
}

/// Multi-cut matrix: `0` inside each block, `1` between blocks. All block
/// sizes are positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCutSpec {
    sizes: Vec<usize>,
}

impl MultiCutSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            reject!("a multi-cut matrix needs at least one block");
        }
        if let Some(k) = sizes.iter().position(|&s| s == 0) {
            reject!("multi-cut block {} is empty", k + 1);
        }
        Ok(MultiCutSpec { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Block sizes listed in non-decreasing order.
    pub fn is_normal_form(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn has_equal_blocks(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_block_spec(&self) -> BlockSpec {
        let q = self.sizes.len();
        let pattern = SymMatrix::from_fn(q, |k, l| int(i64::from(k != l))).expect("multi-cut has at least one block");
        BlockSpec {
            pattern,
            sizes: self.sizes.clone(),
        }
    }
}

impl Expand for MultiCutSpec {
    fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn expand(&self) -> Result<SymMatrix> {
        self.to_block_spec().expand()
    }
}

/// 1-λ-1 block matrix with blocks of sizes `r, s, t` (any may be empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneLambdaOneSpec {
    lambda: Rational,
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl OneLambdaOneSpec {
    pub fn new(lambda: Rational, r: usize, s: usize, t: usize) -> Result<Self> {
        if !lambda.is_positive() {
            reject!("λ must be positive, got {lambda}");
        }
        Ok(OneLambdaOneSpec { lambda, r, s, t })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn pattern(lambda: &Rational) -> SymMatrix {
        let z = Rational::zero;
        SymMatrix::new(alloc::vec![
            alloc::vec![z(), z(), z()],
            alloc::vec![z(), z(), Rational::one()],
            alloc::vec![z(), Rational::one(), lambda.clone()],
        ])
        .expect("P(λ) is symmetric")
    }

    pub fn to_block_spec(&self) -> BlockSpec {
        BlockSpec {
            pattern: Self::pattern(&self.lambda),
            sizes: alloc::vec![self.r, self.s, self.t],
        }
    }
}

impl Expand for OneLambdaOneSpec {
    fn dim(&self) -> usize {
        self.r + self.s + self.t
    }

    fn expand(&self) -> Result<SymMatrix> {
        self.to_block_spec().expand()
    }
}

/// Any of the matrix descriptions accepted in instance files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixSpec {
    Dense(SymMatrix),
    Product(ProductSpec),
    Sum(SumSpec),
    Block(BlockSpec),
    MultiCut(MultiCutSpec),
    OneLambdaOne(OneLambdaOneSpec),
}

impl Expand for MatrixSpec {
    fn dim(&self) -> usize {
        match self {
            MatrixSpec::Dense(m) => m.n(),
            MatrixSpec::Product(s) => s.dim(),
            MatrixSpec::Sum(s) => s.dim(),
            MatrixSpec::Block(s) => s.dim(),
            MatrixSpec::MultiCut(s) => s.dim(),
            MatrixSpec::OneLambdaOne(s) => s.dim(),
        }
    }

    fn expand(&self) -> Result<SymMatrix> {
        match self {
            MatrixSpec::Dense(m) => Ok(m.clone()),
            MatrixSpec::Product(s) => s.expand(),
            MatrixSpec::Sum(s) => s.expand(),
            MatrixSpec::Block(s) => s.expand(),
            MatrixSpec::MultiCut(s) => s.expand(),
            MatrixSpec::OneLambdaOne(s) => s.expand(),
        }
    }
}

pub fn is_monotone(a: &SymMatrix) -> bool {
    let n = a.n();
    (0..n).all(|i| {
        (0..n).all(|j| (j + 1 == n || a.get(i, j) <= a.get(i, j + 1)) && (i + 1 == n || a.get(i, j) <= a.get(i + 1, j)))
    })
}

/// Non-negativity plus the anti-Monge inequality on adjacent 2×2
/// submatrices, which implies it for all `i < r`, `j < s` by telescoping.
pub fn is_anti_monge(a: &SymMatrix) -> bool {
    let n = a.n();
    a.is_nonnegative()
        && (0..n.saturating_sub(1))
            .all(|i| (0..n - 1).all(|j| a.get(i, j) + a.get(i + 1, j + 1) >= a.get(i, j + 1) + a.get(i + 1, j)))
}

/// An anti-Monge matrix written as monotone anti-Monge plus sum matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiMongeSplit {
    pub monotone: SymMatrix,
    pub sum: SumSpec,
}

/// Splits an anti-Monge `A` into `M + S` with `M` monotone anti-Monge and
/// `S` a sum matrix.
///
/// `α_1 = 0` and `α_{i+1} - α_i = min(0, a_{i+1,1} - a_{i,1})`. Row
/// differences of an anti-Monge matrix are non-decreasing along the row,
/// so column 1 is the binding one and `M` comes out monotone, with
/// smallest entry `m_11 = a_11 ≥ 0`.
pub fn split_anti_monge(a: &SymMatrix) -> Result<AntiMongeSplit> {
    if !is_anti_monge(a) {
        return Err(crate::Hypothesis::NotAntiMonge.into());
    }
    let mut alpha = Vec::with_capacity(a.n());
    alpha.push(Rational::zero());
    for i in 0..a.n() - 1 {
        let step = a.get(i + 1, 0) - a.get(i, 0);
        let next = &alpha[i] + step.min(Rational::zero());
        alpha.push(next);
    }
    let monotone = SymMatrix::from_fn(a.n(), |i, j| a.get(i, j) - &alpha[i] - &alpha[j])?;
    debug_assert!(is_monotone(&monotone) && is_anti_monge(&monotone));
    Ok(AntiMongeSplit {
        monotone,
        sum: SumSpec { alpha },
    })
}

/// Recognizes a product matrix.
///
/// Exact square roots of rationals need not exist, so instead of `α` this
/// returns `β = a_{i₀,i₀} · α / α_{i₀}`, where `i₀` is the first index with
/// a positive diagonal entry; then `a_ij · a_{i₀i₀} = β_i β_j`. The
/// objective computed from `β` is `a_{i₀i₀}` times the true one, so
/// minimizers are unchanged. The zero matrix yields `β = 0`.
pub fn recognize_product(a: &SymMatrix) -> Option<Vec<Rational>> {
    let n = a.n();
    let Some(i0) = (0..n).find(|&i| a.get(i, i).is_positive()) else {
        return a
            .entries()
            .iter()
            .all(Zero::is_zero)
            .then(|| alloc::vec![Rational::zero(); n]);
    };
    let beta: Vec<Rational> = a.row(i0).to_vec();
    if beta.iter().any(Signed::is_negative) {
        return None;
    }
    let pivot = a.get(i0, i0);
    let consistent = (0..n).all(|i| (i..n).all(|j| a.get(i, j) * pivot == &beta[i] * &beta[j]));
    consistent.then_some(beta)
}

/// Recognizes a sum matrix; `α_i = a_ii / 2`.
pub fn recognize_sum(a: &SymMatrix) -> Option<SumSpec> {
    let n = a.n();
    let half = crate::rat(1, 2);
    let alpha: Vec<Rational> = (0..n).map(|i| a.get(i, i) * &half).collect();
    (0..n)
        .all(|i| (i..n).all(|j| a.get(i, j) == &(&alpha[i] + &alpha[j])))
        .then_some(SumSpec { alpha })
}

/// The coarsest partition into consecutive intervals on whose products `B`
/// is constant. Two neighbouring indices share a block exactly when their
/// rows coincide.
pub fn recognize_block_structure(b: &SymMatrix) -> BlockSpec {
    let n = b.n();
    let mut starts = alloc::vec![0];
    for i in 1..n {
        if b.row(i) != b.row(i - 1) {
            starts.push(i);
        }
    }
    let sizes: Vec<usize> = starts
        .iter()
        .zip(starts.iter().skip(1).chain(core::iter::once(&n)))
        .map(|(a, b)| b - a)
        .collect();
    let pattern =
        SymMatrix::from_fn(starts.len(), |k, l| b.get(starts[k], starts[l]).clone()).expect("at least one block");
    BlockSpec { pattern, sizes }
}

/// Multi-cut recognition result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCutRecognition {
    pub spec: MultiCutSpec,
    pub normal_form: bool,
}

pub fn recognize_multicut(b: &SymMatrix) -> Option<MultiCutRecognition> {
    let block = recognize_block_structure(b);
    let p = block.pattern();
    let q = p.n();
    let is_cut = (0..q).all(|k| (0..q).all(|l| *p.get(k, l) == int(i64::from(k != l))));
    if !is_cut {
        return None;
    }
    let spec = MultiCutSpec::new(block.sizes).expect("recognized blocks are non-empty");
    Some(MultiCutRecognition {
        normal_form: spec.is_normal_form(),
        spec,
    })
}

/// Coefficients `c_(r,s,t) ≥ 0` of a 1-λ-1 decomposition, keyed by block
/// sizes. Only non-zero coefficients are listed.
pub type GmamCoefficients = BTreeMap<(usize, usize, usize), Rational>;

/// Decides whether `A` lies in the λ-GMAM cone, i.e. is a non-negative
/// combination of `n × n` 1-λ-1 block matrices, and returns one such
/// combination.
///
/// Membership is an exact linear feasibility problem over the `n(n+1)/2`
/// non-zero generators (those with `t ≥ 1`); intended for `n ≤ 30`.
pub fn gmam_decompose(a: &SymMatrix, lambda: &Rational) -> Result<Option<GmamCoefficients>> {
    if !lambda.is_positive() {
        reject!("λ must be positive, got {lambda}");
    }
    let n = a.n();
    if !a.is_nonnegative() {
        return Ok(None);
    }
    let generators: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|r| (0..n - r).map(move |s| (r, s, n - r - s)))
        .filter(|&(_, _, t)| t >= 1)
        .collect();
    // Entry (i, j) of a 1-λ-1 matrix depends only on which blocks i and j
    // fall in.
    let entry = |&(r, s, _): &(usize, usize, usize), i: usize, j: usize| -> Rational {
        let block = |x: usize| usize::from(x >= r) + usize::from(x >= r + s);
        match (block(i), block(j)) {
            (1, 2) | (2, 1) => Rational::one(),
            (2, 2) => lambda.clone(),
            _ => Rational::zero(),
        }
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in i..n {
            rows.push(generators.iter().map(|g| entry(g, i, j)).collect());
            rhs.push(a.get(i, j).clone());
        }
    }
    Ok(
        nonnegative_solution(&rows, &rhs)
            .map(|x| generators.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect()),
    )
}

/// `Σ c · expand(1-λ-1(r, s, t))` for a coefficient map.
pub fn gmam_compose(n: usize, lambda: &Rational, coefficients: &GmamCoefficients) -> Result<SymMatrix> {
    let mut total = SymMatrix::zero(n)?;
    for (&(r, s, t), c) in coefficients {
        if r + s + t != n {
            reject!("generator ({r}, {s}, {t}) does not have dimension {n}");
        }
        let g = OneLambdaOneSpec::new(lambda.clone(), r, s, t)?.expand()?;
        total = total.checked_add(&g.scale(c))?;
    }
    Ok(total)
}
