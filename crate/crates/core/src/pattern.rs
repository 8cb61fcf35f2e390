//! Complexity of the Product-Block QAP as a function of its block pattern.
//!
//! For a `q × q` pattern `P` the relevant continuous problem is
//! `min Σ p_ij x_i x_j` over `Σ x_i = 1` plus bounds. A *bad ensemble* fixes
//! all but two coordinates `r, s` (with `x_r + x_s = γ`) and has a unique
//! minimizer strictly inside `(0, γ)` in both; patterns without one are
//! polynomially solvable. A *very bad ensemble* (box bounds `ℓ_i ≤ x_i <
//! u_i`, unique rational minimizer strictly inside on `r, s`) makes the
//! problem NP-hard.
//!
//! Deciding "no bad ensemble exists" in general is not attempted. The
//! classifier certifies the two sufficient conditions
//!
//! * `p_ii + p_jj ≤ 2 p_ij` for all `i, j` (polynomial), and
//! * `p_rr > p_rs` and `p_ss > p_rs` for some pair (NP-hard),
//!
//! and answers [`Classification::Unknown`] otherwise, except at `q = 2`
//! where [`classify_2x2`] decides exactly.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::reject;
use crate::{int, Error, Hypothesis, Rational, Result, SymMatrix};

/// A symmetric `q × q` block pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern(SymMatrix);

impl Pattern {
    pub fn new(p: SymMatrix) -> Self {
        Pattern(p)
    }

    pub fn q(&self) -> usize {
        self.0.n()
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.0
    }

    #[inline]
    pub fn p(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    /// `Σ_i Σ_j p_ij x_i x_j`.
    pub fn quadratic_form(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.q() {
            return Err(Error::DimensionMismatch {
                expected: self.q(),
                found: x.len(),
            });
        }
        let mut total = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, xj) in x.iter().enumerate() {
                total += self.p(i, j) * xi * xj;
            }
        }
        Ok(total)
    }
}

impl From<SymMatrix> for Pattern {
    fn from(p: SymMatrix) -> Self {
        Pattern(p)
    }
}

/// Input of the two-free-coordinate program: indices `r < s`, their joint
/// mass `γ`, and fixed values `ℓ_i` for every other coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ensemble {
    r: usize,
    s: usize,
    gamma: Rational,
    /// Length `q`; the entries at `r` and `s` are unused and kept at zero.
    fixed: Vec<Rational>,
}

impl Ensemble {
    /// `others` lists `ℓ_i` for `i ∉ {r, s}` in increasing `i`. Requires
    /// `0 ≤ γ, ℓ_i ≤ 1` and `γ + Σ ℓ_i = 1`.
    pub fn new(q: usize, r: usize, s: usize, gamma: Rational, others: Vec<Rational>) -> Result<Self> {
        if !(r < s && s < q) {
            reject!(
                "ensemble needs 1 ≤ r < s ≤ q, got r = {}, s = {}, q = {q}",
                r + 1,
                s + 1
            );
        }
        if others.len() != q - 2 {
            reject!("ensemble needs {} fixed values, got {}", q - 2, others.len());
        }
        let unit = |x: &Rational| !x.is_negative() && *x <= int(1);
        if !unit(&gamma) || !others.iter().all(unit) {
            reject!("ensemble values must lie in [0, 1]");
        }
        let total: Rational = others.iter().sum::<Rational>() + &gamma;
        if total != int(1) {
            reject!("γ plus the fixed values sum to {total}, not 1");
        }
        let mut rest = others.into_iter();
        let fixed = (0..q)
            .map(|i| {
                if i == r || i == s {
                    Rational::zero()
                } else {
                    rest.next().expect("length checked")
                }
            })
            .collect();
        Ok(Ensemble { r, s, gamma, fixed })
    }

    pub fn q(&self) -> usize {
        self.fixed.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// `ℓ_i`, or `None` for the two free coordinates.
    pub fn fixed(&self, i: usize) -> Option<&Rational> {
        (i != self.r && i != self.s).then(|| &self.fixed[i])
    }
}

/// Box-bounded ensemble: indices `r < s` and `0 ≤ ℓ_i < u_i ≤ 1` for all `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeryBadEnsemble {
    r: usize,
    s: usize,
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

impl VeryBadEnsemble {
    pub fn new(r: usize, s: usize, lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self> {
        let q = lower.len();
        if upper.len() != q {
            reject!("{} lower bounds but {} upper bounds", q, upper.len());
        }
        if !(r < s && s < q) {
            reject!(
                "ensemble needs 1 ≤ r < s ≤ q, got r = {}, s = {}, q = {q}",
                r + 1,
                s + 1
            );
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if l.is_negative() || l >= u || *u > int(1) {
                reject!("bounds for x_{} violate 0 ≤ ℓ < u ≤ 1: [{l}, {u})", i + 1);
            }
        }
        Ok(VeryBadEnsemble { r, s, lower, upper })
    }

    /// `ℓ = 0`, `u = 1` on all `q` coordinates.
    pub fn unit_box(q: usize, r: usize, s: usize) -> Result<Self> {
        Self::new(r, s, alloc::vec![int(0); q], alloc::vec![int(1); q])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }
}

/// Exact minimizer of one of the quadratic programs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
    pub unique: bool,
    /// `0 < x_r < γ` and `0 < x_s < γ` (for the box-bounded program:
    /// strictly inside the bounds on `r` and `s`).
    pub interior_r_s: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalMin {
    pub argmin: Rational,
    pub min: Rational,
    pub interior: bool,
    pub unique: bool,
}

/// Minimizes `a2·x² + a1·x + a0` over `[lo, hi]`.
///
/// A strictly convex quadratic has a unique minimizer (interior when its
/// vertex lies in `(lo, hi)`). Otherwise the minimum sits at an endpoint
/// and is unique unless both endpoints tie; ties report `lo`.
pub fn quadratic_on_interval(
    a2: &Rational,
    a1: &Rational,
    a0: &Rational,
    lo: &Rational,
    hi: &Rational,
) -> Result<IntervalMin> {
    if lo > hi {
        reject!("empty interval [{lo}, {hi}]");
    }
    let f = |x: &Rational| a2 * x * x + a1 * x + a0;
    if a2.is_positive() {
        let vertex = -a1 / (a2 * int(2));
        let (argmin, interior) = if vertex <= *lo {
            (lo.clone(), false)
        } else if vertex >= *hi {
            (hi.clone(), false)
        } else {
            (vertex, true)
        };
        return Ok(IntervalMin {
            min: f(&argmin),
            argmin,
            interior,
            unique: true,
        });
    }
    let (f_lo, f_hi) = (f(lo), f(hi));
    Ok(if f_hi < f_lo {
        IntervalMin {
            argmin: hi.clone(),
            min: f_hi,
            interior: false,
            unique: true,
        }
    } else {
        IntervalMin {
            argmin: lo.clone(),
            unique: f_lo != f_hi || lo == hi,
            min: f_lo,
            interior: false,
        }
    })
}

/// Coefficients `(a2, a1, a0)` of `g(x_r)` after freezing the fixed
/// coordinates and substituting `x_s = γ - x_r`.
pub fn qp1_restriction(p: &Pattern, e: &Ensemble) -> Result<(Rational, Rational, Rational)> {
    if p.q() != e.q() {
        return Err(Error::DimensionMismatch {
            expected: p.q(),
            found: e.q(),
        });
    }
    let (r, s, gamma) = (e.r, e.s, &e.gamma);
    // Couplings of x_r and x_s with the frozen part, and the frozen part itself.
    let mut cr = Rational::zero();
    let mut cs = Rational::zero();
    let mut frozen = Rational::zero();
    for k in (0..p.q()).filter(|&k| k != r && k != s) {
        let lk = &e.fixed[k];
        cr += p.p(r, k) * lk;
        cs += p.p(s, k) * lk;
        for l in (0..p.q()).filter(|&l| l != r && l != s) {
            frozen += p.p(k, l) * lk * &e.fixed[l];
        }
    }
    let two = int(2);
    let a2 = p.p(r, r) + p.p(s, s) - p.p(r, s) * &two;
    let a1 = (p.p(r, s) - p.p(s, s)) * gamma * &two + (&cr - &cs) * &two;
    let a0 = p.p(s, s) * gamma * gamma + cs * gamma * &two + frozen;
    Ok((a2, a1, a0))
}

/// Exact solution of QP-1: `x_i = ℓ_i` off `{r, s}`, `x_r + x_s = γ`,
/// minimized over `x_r ∈ [0, γ]`.
pub fn qp1_minimize(p: &Pattern, e: &Ensemble) -> Result<QpSolution> {
    let (a2, a1, a0) = qp1_restriction(p, e)?;
    let best = quadratic_on_interval(&a2, &a1, &a0, &int(0), &e.gamma)?;
    let mut x = e.fixed.clone();
    x[e.r] = best.argmin.clone();
    x[e.s] = &e.gamma - &best.argmin;
    let value = p.quadratic_form(&x)?;
    debug_assert_eq!(value, best.min);
    Ok(QpSolution {
        x,
        value,
        unique: best.unique,
        interior_r_s: best.interior,
    })
}

/// Whether `e` is a bad ensemble for `p`: unique minimizer with both free
/// coordinates strictly inside `(0, γ)`.
pub fn is_bad(p: &Pattern, e: &Ensemble) -> Result<bool> {
    let sol = qp1_minimize(p, e)?;
    Ok(sol.unique && sol.interior_r_s)
}

fn is_heavy_pair(p: &Pattern, r: usize, s: usize) -> bool {
    p.p(r, r) > p.p(r, s) && p.p(s, s) > p.p(r, s)
}

/// The closed-form minimizer on the 2×2 subpattern spanned by `r` and `s`
/// with bounds `[0, 1)`:
///
/// ```text
/// x_r = (p_ss - p_rs) / (p_rr + p_ss - 2 p_rs)
/// x_s = (p_rr - p_rs) / (p_rr + p_ss - 2 p_rs)
/// ```
///
/// Returned as a length-`q` vector with zeros outside `{r, s}`. Requires
/// `p_rr > p_rs` and `p_ss > p_rs`.
pub fn qp2_minimize_2x2(p: &Pattern, r: usize, s: usize) -> Result<QpSolution> {
    if !(r < s && s < p.q()) {
        reject!("need 1 ≤ r < s ≤ q, got r = {}, s = {}", r + 1, s + 1);
    }
    if !is_heavy_pair(p, r, s) {
        return Err(Hypothesis::NotHeavyPair { r, s }.into());
    }
    let denom = p.p(r, r) + p.p(s, s) - p.p(r, s) * int(2);
    let mut x = alloc::vec![Rational::zero(); p.q()];
    x[r] = (p.p(s, s) - p.p(r, s)) / &denom;
    x[s] = (p.p(r, r) - p.p(r, s)) / &denom;
    let one = int(1);
    assert!(x[r].is_positive() && x[r] < one && x[s].is_positive() && x[s] < one);
    assert_eq!(&x[r] + &x[s], one);
    let value = p.quadratic_form(&x)?;
    Ok(QpSolution {
        x,
        value,
        unique: true,
        interior_r_s: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `p_ii + p_jj ≤ 2 p_ij` everywhere: no bad ensemble, polynomial.
    PolynomialByCondition14,
    /// `p_rr > p_rs`, `p_ss > p_rs` at the lexicographically first such
    /// pair: a very bad ensemble, NP-hard.
    NPHardByCondition16 {
        witness: VeryBadEnsemble,
        minimizer: QpSolution,
    },
    Unknown,
}

/// `p_ii + p_jj ≤ 2 p_ij` for all `i, j`.
pub fn satisfies_condition_14(p: &Pattern) -> bool {
    let q = p.q();
    (0..q).all(|i| (i + 1..q).all(|j| p.p(i, i) + p.p(j, j) <= p.p(i, j) * int(2)))
}

/// The lexicographically first pair `r < s` with `p_rr > p_rs` and
/// `p_ss > p_rs`.
pub fn first_heavy_pair(p: &Pattern) -> Option<(usize, usize)> {
    let q = p.q();
    (0..q)
        .flat_map(|r| (r + 1..q).map(move |s| (r, s)))
        .find(|&(r, s)| is_heavy_pair(p, r, s))
}

pub fn classify_pattern(p: &Pattern) -> Classification {
    let light = satisfies_condition_14(p);
    let heavy = first_heavy_pair(p);
    assert!(!(light && heavy.is_some()), "the two conditions are exclusive");
    if light {
        return Classification::PolynomialByCondition14;
    }
    match heavy {
        Some((r, s)) => Classification::NPHardByCondition16 {
            witness: VeryBadEnsemble::unit_box(p.q(), r, s).expect("r < s < q"),
            minimizer: qp2_minimize_2x2(p, r, s).expect("pair is heavy"),
        },
        None => Classification::Unknown,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Complexity {
    Polynomial,
    NPHard,
}

/// Exact dichotomy for 2×2 patterns: NP-hard iff `p_11 > p_12` and
/// `p_22 > p_12`.
pub fn classify_2x2(p: &Pattern) -> Result<Complexity> {
    if p.q() != 2 {
        reject!("expected a 2 × 2 pattern, got {} × {}", p.q(), p.q());
    }
    Ok(if is_heavy_pair(p, 0, 1) {
        Complexity::NPHard
    } else {
        Complexity::Polynomial
    })
}

/// Whether the pattern is certified free of bad ensembles, either by the
/// all-pairs condition or by the exact 2×2 dichotomy.
pub fn is_certified_polynomial(p: &Pattern) -> bool {
    satisfies_condition_14(p) || (p.q() == 2 && classify_2x2(p) == Ok(Complexity::Polynomial))
}
