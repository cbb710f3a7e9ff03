use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{feasible, supremum, Constraint, Int, Sup};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("the polyhedron {{x >= 0 : Ax = b}} is unbounded (non-trivial recession cone)")]
pub struct RecessionError;

fn equality_constraints(a: &[Vec<Int>], b: &[Int], n_vars: usize) -> Vec<Constraint> {
    let mut cons = Vec::with_capacity(2 * a.len() + n_vars);
    for (row, rhs) in a.iter().zip(b) {
        let neg_row: Vec<Int> = row.iter().map(|x| -x.clone()).collect();
        cons.push(Constraint::from_int(row, rhs.clone()));
        cons.push(Constraint::from_int(&neg_row, -rhs.clone()));
    }
    for j in 0..n_vars {
        cons.push(Constraint::lower_bound(n_vars, j, 0));
    }
    cons
}

/// All non-negative integer solutions of `A x = b`, sorted lexicographically.
///
/// The polyhedron must be bounded; boundedness is certified up front by
/// checking that the recession cone `{x >= 0 : Ax = 0}` is trivial, via
/// rational feasibility of a normalized section. An unbounded input yields
/// [`RecessionError`].
pub fn enumerate_nonneg_integer_solutions(
    n_vars: usize,
    a: &[Vec<Int>],
    b: &[Int],
) -> Result<Vec<Vec<Int>>, RecessionError> {
    assert_eq!(a.len(), b.len(), "row count must match right-hand side");
    for row in a {
        assert_eq!(row.len(), n_vars, "ragged constraint matrix");
    }
    if n_vars == 0 {
        return if b.iter().all(Zero::is_zero) {
            Ok(vec![vec![]])
        } else {
            Ok(vec![])
        };
    }

    // recession direction: x >= 0, Ax = 0, sum x = 1
    let zero = vec![Int::zero(); a.len()];
    let mut recession = equality_constraints(a, &zero, n_vars);
    let ones = vec![Int::from(1); n_vars];
    let neg_ones = vec![Int::from(-1); n_vars];
    recession.push(Constraint::from_int(&ones, Int::from(1)));
    recession.push(Constraint::from_int(&neg_ones, Int::from(-1)));
    if feasible(&recession, n_vars) {
        return Err(RecessionError);
    }

    let mut out = Vec::new();
    let mut partial = Vec::with_capacity(n_vars);
    search(a, &mut b.to_vec(), n_vars, 0, &mut partial, &mut out);
    Ok(out)
}

fn search(
    a: &[Vec<Int>],
    residual: &mut Vec<Int>,
    n_vars: usize,
    level: usize,
    partial: &mut Vec<Int>,
    out: &mut Vec<Vec<Int>>,
) {
    if level == n_vars {
        if residual.iter().all(Zero::is_zero) {
            out.push(partial.clone());
        }
        return;
    }
    // remaining system over variables level..n_vars
    let rest = n_vars - level;
    let tail: Vec<Vec<Int>> = a.iter().map(|row| row[level..].to_vec()).collect();
    let cons = equality_constraints(&tail, residual, rest);
    let hi = match supremum(&cons, rest, 0) {
        Sup::Infeasible => return,
        // recession was ruled out globally, every sub-polyhedron is bounded
        Sup::Unbounded => unreachable!("bounded polyhedron with unbounded coordinate"),
        Sup::Finite(u) => u,
    };
    if hi.is_negative() {
        return;
    }
    let top = hi.numer().div_floor(hi.denom());
    let mut k = Int::zero();
    while k <= top {
        partial.push(k.clone());
        for (row, r) in a.iter().zip(residual.iter_mut()) {
            *r -= &row[level] * &k;
        }
        search(a, residual, n_vars, level + 1, partial, out);
        for (row, r) in a.iter().zip(residual.iter_mut()) {
            *r += &row[level] * &k;
        }
        partial.pop();
        k += 1;
    }
}
