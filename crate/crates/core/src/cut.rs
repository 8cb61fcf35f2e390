//! Multi-cut QAPs with (monotone) anti-Monge cost matrices.
//!
//! The building block is the two-block case: `A` a 1-2-1 block matrix with
//! blocks of sizes `r, s, t` and `B` a cut matrix with blocks `u ≤ v`. If a
//! permutation sends `x`, `y`, `z` rows of `A`'s three blocks into `B`'s
//! first block, the objective is
//!
//! ```text
//! f(y, z) = 2y(t - z) + 2z(s - y) + 4z(t - z)
//! ```
//!
//! and its minimum has the closed form implemented by
//! [`closed_form_two_block`], always attained by the identity. Through
//! non-negative combinations this extends to every monotone anti-Monge `A`
//! against a multi-cut `B` in normal form, and (adding sum matrices) to
//! every anti-Monge `A` against equal-size blocks.

use alloc::vec::Vec;

use crate::classes::{is_anti_monge, is_monotone, Expand, MultiCutSpec, OneLambdaOneSpec};
use crate::error::reject;
use crate::{evaluate, int, Error, Hypothesis, Permutation, QapInstance, Rational, Result, SymMatrix};

/// Block sizes of a 1-2-1 matrix (`r, s, t`) and of a cut matrix (`u ≤ v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoBlockShape {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub u: usize,
    pub v: usize,
}

impl TwoBlockShape {
    /// Requires `r + s + t = u + v ≥ 1` and `u ≤ v`.
    pub fn new(r: usize, s: usize, t: usize, u: usize, v: usize) -> Result<Self> {
        if r + s + t != u + v {
            reject!("r + s + t = {} differs from u + v = {}", r + s + t, u + v);
        }
        if r + s + t == 0 {
            reject!("shape has dimension zero");
        }
        if u > v {
            reject!("cut matrix is not in normal form: u = {u} > v = {v}");
        }
        Ok(TwoBlockShape { r, s, t, u, v })
    }

    pub fn n(&self) -> usize {
        self.u + self.v
    }

    /// The 1-2-1 block matrix `A`.
    pub fn a_matrix(&self) -> SymMatrix {
        OneLambdaOneSpec::new(int(2), self.r, self.s, self.t)
            .and_then(|spec| spec.expand())
            .expect("shape has positive dimension")
    }

    /// The cut matrix `B`; `u` may be zero, giving the zero matrix.
    pub fn b_matrix(&self) -> SymMatrix {
        let (u, n) = (self.u, self.n());
        SymMatrix::from_fn(n, |i, j| int(i64::from((i < u) != (j < u)))).expect("shape has positive dimension")
    }

    pub fn instance(&self) -> QapInstance {
        QapInstance::new(self.a_matrix(), self.b_matrix()).expect("both matrices are n × n")
    }

    /// Every integer `(x, y, z)` with `0 ≤ x ≤ r`, `0 ≤ y ≤ s`,
    /// `0 ≤ z ≤ t` and `x + y + z = u`.
    pub fn count_assignments(&self) -> impl Iterator<Item = CountAssignment> + '_ {
        (0..=self.s).flat_map(move |y| {
            (0..=self.t).filter_map(move |z| {
                let x = self.u.checked_sub(y + z)?;
                (x <= self.r).then_some(CountAssignment { x, y, z })
            })
        })
    }
}

/// How many rows of each of `A`'s blocks land in `B`'s first block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountAssignment {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// `f(y, z)` for the given shape, evaluated in factored and in expanded
/// form; the two must agree.
pub fn objective_counts(shape: &TwoBlockShape, y: usize, z: usize) -> Result<Rational> {
    if y > shape.s || z > shape.t {
        reject!(
            "counts (y, z) = ({y}, {z}) outside 0 ≤ y ≤ {}, 0 ≤ z ≤ {}",
            shape.s,
            shape.t
        );
    }
    let (s, t, y, z) = (shape.s as i128, shape.t as i128, y as i128, z as i128);
    let factored = 2 * y * (t - z) + 2 * z * (s - y) + 4 * z * (t - z);
    let expanded = -4 * z * z - 4 * y * z + 2 * t * y + (2 * s + 4 * t) * z;
    assert_eq!(factored, expanded, "factored and expanded objective disagree");
    Ok(Rational::from_integer(factored.into()))
}

/// Which closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoBlockCase {
    /// `v > s + t`: the identity cuts nothing.
    Zero,
    /// `t ≤ v ≤ s + t`: `γ₁ = 2t(s + t - v)`.
    Gamma1,
    /// `v < t`: `γ₂ = 2v(s + 2t - 2v)`.
    Gamma2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBlockOptimum {
    pub value: Rational,
    /// The counts induced by the identity permutation.
    pub witness: CountAssignment,
    pub case: TwoBlockCase,
}

pub fn gamma1(shape: &TwoBlockShape) -> Rational {
    let (s, t, v) = (shape.s as i64, shape.t as i64, shape.v as i64);
    int(2 * t * (s + t - v))
}

pub fn gamma2(shape: &TwoBlockShape) -> Rational {
    let (s, t, v) = (shape.s as i64, shape.t as i64, shape.v as i64);
    int(2 * v * (s + 2 * t - 2 * v))
}

/// Optimal value of the two-block QAP and the identity's count assignment.
///
/// Requires `s + t ≤ 2v`, which `u ≤ v` already implies. At `v = s + t` and at `v = t` two formulas
/// coincide; the `γ₁` branch is reported.
pub fn closed_form_two_block(shape: &TwoBlockShape) -> Result<TwoBlockOptimum> {
    let TwoBlockShape { r, s, t, u, v } = *shape;
    if s + t > 2 * v {
        reject!("closed form needs s + t ≤ 2v, got s + t = {}, v = {v}", s + t);
    }
    let (value, case) = if v > s + t {
        (int(0), TwoBlockCase::Zero)
    } else if t <= v {
        (gamma1(shape), TwoBlockCase::Gamma1)
    } else {
        (gamma2(shape), TwoBlockCase::Gamma2)
    };
    let beyond_r = u as i64 - r as i64;
    let y = beyond_r.min(s as i64).max(0) as usize;
    let z = (beyond_r - s as i64).max(0) as usize;
    let witness = CountAssignment { x: u - y - z, y, z };
    debug_assert_eq!(objective_counts(shape, y, z)?, value);
    Ok(TwoBlockOptimum { value, witness, case })
}

/// Whether structural hypotheses are checked before solving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Hypotheses {
    #[default]
    Verify,
    /// Skip the checks and just evaluate the identity. The result is only
    /// optimal if the hypotheses actually hold.
    Assume,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSolution {
    pub permutation: Permutation,
    pub value: Rational,
}

fn identity_solution(a: &SymMatrix, b: &MultiCutSpec) -> Result<CutSolution> {
    if a.n() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.dim(),
        });
    }
    let inst = QapInstance::new(a.clone(), b.expand()?)?;
    let permutation = Permutation::identity(a.n());
    let value = evaluate(&inst, &permutation)?;
    Ok(CutSolution { permutation, value })
}

/// Monotone anti-Monge `A` against a multi-cut `B` in normal form: the
/// identity is optimal.
pub fn solve_multicut_monotone_antimonge(
    a: &SymMatrix,
    b: &MultiCutSpec,
    hypotheses: Hypotheses,
) -> Result<CutSolution> {
    if hypotheses == Hypotheses::Verify {
        if !is_monotone(a) {
            return Err(Hypothesis::NotMonotone.into());
        }
        if !is_anti_monge(a) {
            return Err(Hypothesis::NotAntiMonge.into());
        }
        if !b.is_normal_form() {
            return Err(Hypothesis::NotNormalForm.into());
        }
    }
    identity_solution(a, b)
}

/// Anti-Monge `A` (not necessarily monotone) against a multi-cut `B` whose
/// blocks all have the same size: the identity is optimal.
pub fn solve_equal_blocks_antimonge(a: &SymMatrix, b: &MultiCutSpec) -> Result<CutSolution> {
    if !is_anti_monge(a) {
        return Err(Hypothesis::NotAntiMonge.into());
    }
    if !b.has_equal_blocks() {
        return Err(Hypothesis::UnequalBlocks.into());
    }
    identity_solution(a, b)
}

/// Reassigns the rows of `A` that `perm` maps into blocks `k` and `k + 1`
/// of `B` so that the smallest ones go to block `k`, both in increasing
/// order. Rows in other blocks stay put.
pub fn separate_adjacent_blocks(perm: &Permutation, sizes: &[usize], k: usize) -> Result<Permutation> {
    if sizes.iter().sum::<usize>() != perm.len() {
        reject!("block sizes do not add up to {}", perm.len());
    }
    if k + 1 >= sizes.len() {
        reject!("block {} has no successor", k + 1);
    }
    let start: usize = sizes[..k].iter().sum();
    let end = start + sizes[k] + sizes[k + 1];
    let mut image = perm.image().to_vec();
    let mut rows: Vec<usize> = image[start..end].to_vec();
    rows.sort_unstable();
    image[start..end].copy_from_slice(&rows);
    Permutation::new(image)
}
