use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::Rational;

/// Finds some `x ≥ 0` with `rows · x = rhs`, or `None` if none exists.
///
/// Phase one of the tableau simplex method over exact rationals, with
/// Bland's rule so that it terminates on degenerate problems.
pub fn nonnegative_solution(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let m = rows.len();
    let k = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|r| r.len() == k), "ragged constraint matrix");
    if m == 0 {
        return Some(alloc::vec![Rational::zero(); k]);
    }

    // Columns: k structural, m artificial, then the right-hand side.
    let width = k + m + 1;
    let mut tableau: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (row, b))| {
            let flip = b.is_negative();
            let mut t = Vec::with_capacity(width);
            t.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
            t.extend((0..m).map(|j| crate::int(i64::from(i == j))));
            t.push(if flip { -b } else { b.clone() });
            t
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();

    // Reduced costs of "minimize the sum of artificials"; last entry is
    // minus the current objective.
    let mut cost = alloc::vec![Rational::zero(); width];
    for row in &tableau {
        for j in (0..k).chain(core::iter::once(width - 1)) {
            cost[j] -= &row[j];
        }
    }

    while let Some(enter) = (0..k + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            let a = &tableau[i][enter];
            if !a.is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let lhs = &tableau[i][width - 1] * &tableau[l][enter];
                    let rhs = &tableau[l][width - 1] * a;
                    if lhs < rhs || (lhs == rhs && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // The phase-one objective is bounded below by zero.
        let leave = leave.expect("phase one is never unbounded");
        pivot(&mut tableau, &mut cost, leave, enter);
        basis[leave] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = alloc::vec![Rational::zero(); k];
    for (i, &var) in basis.iter().enumerate() {
        if var < k {
            x[var] = tableau[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = tableau[row][col].recip();
    for x in tableau[row].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let pivot_row = tableau[row].clone();
    let support: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
    let eliminate = |target: &mut [Rational]| {
        let factor = target[col].clone();
        if factor.is_zero() {
            return;
        }
        for &j in &support {
            target[j] -= &factor * &pivot_row[j];
        }
    };
    for (i, r) in tableau.iter_mut().enumerate() {
        if i != row {
            eliminate(r);
        }
    }
    eliminate(cost);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use alloc::vec;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn check(rows: &[Vec<Rational>], rhs: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, b) in rows.iter().zip(rhs) {
            let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
            assert_eq!(&lhs, b);
        }
    }

    #[test]
    fn finds_a_feasible_point() {
        let rows = vec![ints(&[1, 1, 0]), ints(&[0, 1, 1])];
        let rhs = ints(&[3, 5]);
        let x = nonnegative_solution(&rows, &rhs).unwrap();
        check(&rows, &rhs, &x);
    }

    #[test]
    fn handles_negative_right_hand_sides() {
        let rows = vec![ints(&[-1, 2]), ints(&[1, 1])];
        let rhs = ints(&[-1, 2]);
        let x = nonnegative_solution(&rows, &rhs).unwrap();
        check(&rows, &rhs, &x);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1 and x + y = 2.
        assert!(nonnegative_solution(&[ints(&[1, 1]), ints(&[1, 1])], &ints(&[1, 2])).is_none());
        // x - y = -1 with y = 0 forces x = -1.
        assert!(nonnegative_solution(&[ints(&[1, -1]), ints(&[0, 1])], &ints(&[-1, 0])).is_none());
        assert!(nonnegative_solution(&[ints(&[1, 1])], &ints(&[-1])).is_none());
    }

    #[test]
    fn redundant_rows_are_fine() {
        let rows = vec![ints(&[1, 2]), ints(&[2, 4]), ints(&[1, 2])];
        let rhs = ints(&[2, 4, 2]);
        let x = nonnegative_solution(&rows, &rhs).unwrap();
        check(&rows, &rhs, &x);
    }
}
