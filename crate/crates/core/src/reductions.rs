//! Instance generators for two hardness reductions, with certificate maps
//! and small-scale deciders.
//!
//! * Partition → Product-Block QAP over a pattern with a pair `r, s` such
//!   that `p_rr > p_rs` and `p_ss > p_rs`.
//! * Graph Bisection → QAP with a monotone `A` and a two-block multi-cut
//!   `B`.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classes::{BlockSpec, Expand, MultiCutSpec, ProductSpec, SumSpec};
use crate::error::reject;
use crate::pattern::{first_heavy_pair, qp2_minimize_2x2, Pattern, QpSolution, VeryBadEnsemble};
use crate::product_block::ProductBlockInstance;
use crate::{int, Error, Hypothesis, Permutation, QapInstance, Rational, Result, SymMatrix};

/// Positive rationals summing to 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    v: Vec<Rational>,
}

impl PartitionInstance {
    pub fn new(v: Vec<Rational>) -> Result<Self> {
        if v.is_empty() {
            reject!("a partition instance needs at least one value");
        }
        if let Some(k) = v.iter().position(|x| !x.is_positive()) {
            reject!("partition value v_{} = {} is not positive", k + 1, v[k]);
        }
        let total: Rational = v.iter().sum();
        if total != int(2) {
            reject!("partition values sum to {total}, not 2");
        }
        Ok(PartitionInstance { v })
    }

    pub fn values(&self) -> &[Rational] {
        &self.v
    }

    pub fn m(&self) -> usize {
        self.v.len()
    }

    /// Some index set whose values sum to 1, by exhaustive search.
    /// Refuses `m > 24`.
    pub fn find_half(&self) -> Result<Option<Vec<usize>>> {
        let m = self.m();
        if m > 24 {
            return Err(Error::TooLarge {
                what: "partition size",
                size: m,
                cap: 24,
            });
        }
        let one = int(1);
        Ok((0u32..1 << m)
            .find(|mask| {
                let sum: Rational = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| &self.v[k]).sum();
                sum == one
            })
            .map(|mask| (0..m).filter(|k| mask >> k & 1 == 1).collect()))
    }
}

/// The Product-Block instance built from a Partition instance, together
/// with everything needed to interpret it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReduction {
    /// Scale: every `x*_i K` is an integer.
    pub k: u64,
    /// `m K`.
    pub l: u64,
    /// `L - 2`, the dimension of the QAP.
    pub n: usize,
    /// Number of partition values.
    pub m: usize,
    /// `m` values `(1 + v_k) / L`, then `n - m` values `1 / L`.
    pub alpha: Vec<Rational>,
    /// The pattern restricted to the support of `x*`, with block sizes.
    pub blocks: BlockSpec,
    /// `Σ p_ij x*_i x*_j`.
    pub threshold: Rational,
    pub ensemble: VeryBadEnsemble,
    /// Minimizer over the full pattern (zeros outside the support).
    pub x_star: QpSolution,
    /// Pattern indices with `x*_i > 0`, in increasing order.
    pub support: Vec<usize>,
    /// Positions of `r` and `s` in `support`, i.e. their block indices.
    pub block_r: usize,
    pub block_s: usize,
    pub partition: PartitionInstance,
}

impl PartitionReduction {
    pub fn to_qap(&self) -> Result<QapInstance> {
        QapInstance::new(ProductSpec::new(self.alpha.clone())?.expand()?, self.blocks.expand()?)
    }

    /// The same instance with `α` sorted; the permutation maps sorted
    /// positions to indices of [`PartitionReduction::alpha`].
    pub fn to_product_block(&self) -> Result<(ProductBlockInstance, Permutation)> {
        ProductBlockInstance::from_unsorted(self.alpha.clone(), self.blocks.clone())
    }

    fn q(&self) -> usize {
        self.support.len()
    }
}

/// Builds the reduction over the first pair `r < s` with `p_rr > p_rs` and
/// `p_ss > p_rs`, using the box `[0, 1)` on every coordinate.
pub fn reduce_partition(p: &Pattern, part: &PartitionInstance) -> Result<PartitionReduction> {
    let (r, s) = first_heavy_pair(p).ok_or(Error::Hypothesis(Hypothesis::NoVeryBadEnsemble))?;
    reduce_partition_at(p, part, r, s)
}

/// [`reduce_partition`] for a caller-chosen pair.
pub fn reduce_partition_at(p: &Pattern, part: &PartitionInstance, r: usize, s: usize) -> Result<PartitionReduction> {
    let x_star = qp2_minimize_2x2(p, r, s)?;
    let ensemble = VeryBadEnsemble::unit_box(p.q(), r, s)?;
    let support: Vec<usize> = (0..p.q()).filter(|&i| x_star.x[i].is_positive()).collect();
    let block_r = support.iter().position(|&i| i == r).expect("x*_r > 0");
    let block_s = support.iter().position(|&i| i == s).expect("x*_s > 0");

    let k = smallest_scale(&x_star.x, &ensemble, &support);
    let m = part.m();
    let l = m as u64 * k;
    let n = usize::try_from(l - 2).expect("dimension fits in usize");
    let l_rat = Rational::from_integer(l.into());

    let sizes: Vec<usize> = support
        .iter()
        .map(|&i| {
            let mut size = &x_star.x[i] * &l_rat;
            assert!(size.is_integer(), "x*_i L is an integer");
            // Bound x*_i L > m.
            assert!(size > Rational::from_integer(m.into()));
            if i == r || i == s {
                size -= Rational::one();
            }
            size.to_integer().to_usize().expect("block size fits in usize")
        })
        .collect();
    assert_eq!(sizes.iter().sum::<usize>(), n);

    let mut alpha: Vec<Rational> = part.v.iter().map(|v| (v + int(1)) / &l_rat).collect();
    alpha.resize(n, l_rat.recip());
    debug_assert_eq!(alpha.iter().sum::<Rational>(), int(1));

    let sub = p.matrix().principal_submatrix(&support)?;
    Ok(PartitionReduction {
        k,
        l,
        n,
        m,
        alpha,
        blocks: BlockSpec::new(sub, sizes)?,
        threshold: x_star.value.clone(),
        ensemble,
        x_star,
        support,
        block_r,
        block_s,
        partition: part.clone(),
    })
}

/// Smallest multiple `K` of the common denominator of `x*` on the support
/// with `K > 2 / (u_i - x*_i)` and `K > 1 / x*_i` on the support, and
/// `K > 1 / (x*_j - ℓ_j)` for `j ∈ {r, s}`.
fn smallest_scale(x: &[Rational], e: &VeryBadEnsemble, support: &[usize]) -> u64 {
    let step = support
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, &i| acc.lcm(x[i].denom()));
    let mut bound = Rational::zero();
    for &i in support {
        bound = bound.max(int(2) / (&e.upper()[i] - &x[i]));
        bound = bound.max(x[i].recip());
    }
    for j in [e.r(), e.s()] {
        bound = bound.max((&x[j] - &e.lower()[j]).recip());
    }
    // First multiple of `step` strictly above `bound`.
    let multiples: num_bigint::BigInt = (bound.floor().to_integer() / &step) + 1;
    (multiples * step).to_u64().expect("scale fits in u64")
}

/// Maps a half `M` (indices summing to 1) to the permutation the
/// construction prescribes, and its exact objective.
///
/// Block `r` gets the partition values in `M` plus dummies, block `s` the
/// remaining partition values plus dummies, every other block only
/// dummies.
pub fn yes_certificate_to_permutation(red: &PartitionReduction, half: &[usize]) -> Result<(Permutation, Rational)> {
    let m = red.m;
    let mut in_half = alloc::vec![false; m];
    for &k in half {
        if k >= m || in_half[k] {
            reject!("index set must list distinct indices below {m}");
        }
        in_half[k] = true;
    }
    let sum: Rational = half.iter().map(|&k| &red.partition.v[k]).sum();
    if sum != int(1) {
        reject!("the chosen values sum to {sum}, not 1");
    }
    let mut partition_of = alloc::vec![Vec::new(); red.q()];
    for k in 0..m {
        partition_of[if in_half[k] { red.block_r } else { red.block_s }].push(k);
    }
    let mut dummies = m..red.n;
    let mut image = Vec::with_capacity(red.n);
    for (block, &size) in red.blocks.sizes().iter().enumerate() {
        let values = &partition_of[block];
        assert!(values.len() <= size, "bound x*_i L > m leaves room for dummies");
        image.extend(values.iter().copied());
        image.extend(dummies.by_ref().take(size - values.len()));
    }
    let perm = Permutation::new(image)?;
    let value = red.to_qap()?.evaluate(&perm)?;
    Ok((perm, value))
}

/// Largest partition size handled by [`partition_oracle_search`].
pub const MAX_SEARCH_M: usize = 12;
/// Largest number of blocks handled by [`partition_oracle_search`].
pub const MAX_SEARCH_Q: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSearch {
    pub best: Rational,
    /// Block of every partition value in a best assignment.
    pub assignment: Vec<usize>,
    pub feasible_below_threshold: bool,
}

/// Exact optimum of the reduced QAP.
///
/// Dummy values are all equal, so an assignment is determined up to
/// objective by which block each partition value goes to; dummies fill the
/// remaining slots. All `q^m` such classes are tried.
pub fn partition_oracle_search(red: &PartitionReduction) -> Result<PartitionSearch> {
    let (m, q) = (red.m, red.q());
    if m > MAX_SEARCH_M {
        return Err(Error::TooLarge {
            what: "partition size",
            size: m,
            cap: MAX_SEARCH_M,
        });
    }
    if q > MAX_SEARCH_Q {
        return Err(Error::TooLarge {
            what: "number of blocks",
            size: q,
            cap: MAX_SEARCH_Q,
        });
    }
    let pattern = Pattern::new(red.blocks.pattern().clone());
    let sizes = red.blocks.sizes();
    let dummy = &red.alpha[red.n - 1];
    let mut assignment = alloc::vec![0usize; m];
    let mut best: Option<(Rational, Vec<usize>)> = None;
    loop {
        let mut counts = alloc::vec![0usize; q];
        let mut y = alloc::vec![Rational::zero(); q];
        for (k, &b) in assignment.iter().enumerate() {
            counts[b] += 1;
            y[b] += &red.alpha[k];
        }
        if counts.iter().zip(sizes).all(|(c, s)| c <= s) {
            for b in 0..q {
                y[b] += dummy * int((sizes[b] - counts[b]) as i64);
            }
            let value = pattern.quadratic_form(&y)?;
            if best.as_ref().is_none_or(|(v, _)| value < *v) {
                best = Some((value, assignment.clone()));
            }
        }
        // Next assignment in lexicographic order.
        let Some(pos) = assignment.iter().rposition(|&b| b + 1 < q) else {
            break;
        };
        assignment[pos] += 1;
        assignment[pos + 1..].fill(0);
    }
    let (best, assignment) = best.expect("the all-in-block-s assignment fits");
    Ok(PartitionSearch {
        feasible_below_threshold: best <= red.threshold,
        best,
        assignment,
    })
}

/// A graph on an even number of vertices with a cut bound `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphBisectionInstance {
    n: usize,
    edges: Vec<(usize, usize)>,
    t: u64,
}

impl GraphBisectionInstance {
    /// Edges are unordered pairs of distinct vertices `0..n`; duplicates
    /// are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, t: u64) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            reject!("graph bisection needs a positive even number of vertices, got {n}");
        }
        let mut seen = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= n || b >= n || a == b {
                reject!(
                    "edge {{{}, {}}} is not a pair of distinct vertices in 1..={n}",
                    a + 1,
                    b + 1
                );
            }
            let key = (a.min(b), a.max(b));
            if seen.contains(&key) {
                reject!("edge {{{}, {}}} is listed twice", a + 1, b + 1);
            }
            seen.push(key);
        }
        Ok(GraphBisectionInstance { n, edges, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn adjacency(&self) -> SymMatrix {
        let mut adj = alloc::vec![alloc::vec![Rational::zero(); self.n]; self.n];
        for &(a, b) in &self.edges {
            adj[a][b] = int(1);
            adj[b][a] = int(1);
        }
        SymMatrix::new(adj).expect("adjacency is square and symmetric")
    }

    /// Fewest edges crossing a split into two halves of equal size, by
    /// enumerating the halves that contain vertex 1. Refuses `n > 24`.
    pub fn min_bisection_cut(&self) -> Result<u64> {
        if self.n > 24 {
            return Err(Error::TooLarge {
                what: "graph size",
                size: self.n,
                cap: 24,
            });
        }
        let half = (self.n / 2) as u32;
        let best = (0u32..1 << self.n)
            .filter(|mask| mask & 1 == 1 && mask.count_ones() == half)
            .map(|mask| {
                self.edges
                    .iter()
                    .filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1))
                    .count() as u64
            })
            .min()
            .expect("some bisection exists");
        Ok(best)
    }
}

/// `A` = adjacency plus the sum matrix `2i + 2j` (1-based), `B` = two-block
/// multi-cut, threshold `n²(n + 1) + 2t`.
///
/// The sum part contributes `n²(n + 1)` under every permutation; each cut
/// edge contributes 2, once per ordered pair.
pub fn reduce_bisection(g: &GraphBisectionInstance) -> Result<(QapInstance, Rational)> {
    let n = g.n;
    let sum = SumSpec {
        alpha: (1..=n).map(|i| int(2 * i as i64)).collect(),
    }
    .expand()?;
    let a = g.adjacency().checked_add(&sum)?;
    debug_assert!(crate::classes::is_monotone(&a));
    let b = MultiCutSpec::new(alloc::vec![n / 2, n / 2])?.expand()?;
    let n_rat = int(n as i64);
    let threshold = &n_rat * &n_rat * (&n_rat + int(1)) + int(2) * Rational::from_integer(g.t.into());
    Ok((QapInstance::new(a, b)?, threshold))
}
