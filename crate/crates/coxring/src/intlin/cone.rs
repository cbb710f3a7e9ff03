use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use super::{feasible, primitive_vector, Constraint, Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("generator {index} is the zero vector")]
    ZeroGenerator { index: usize },
    #[error("expected vectors of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone contains a line and has no extremal rays")]
    ContainsLine,
}

/// A rational polyhedral cone given by integer generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeZ {
    dim: usize,
    generators: Vec<Vec<Int>>,
}

impl ConeZ {
    pub fn new(dim: usize, generators: Vec<Vec<Int>>) -> Result<Self, ConeError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(ConeError::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if g.iter().all(Zero::is_zero) {
                return Err(ConeError::ZeroGenerator { index });
            }
        }
        Ok(ConeZ { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Rational feasibility of `v = Σ x_g g` with `x >= 0`.
    pub fn contains(&self, v: &[Int]) -> Result<bool, ConeError> {
        if v.len() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(membership(&self.generators, v, self.dim))
    }

    /// The cone is pointed when no non-trivial non-negative combination of
    /// generators vanishes; equivalently no generator's negation stays inside.
    pub fn is_pointed(&self) -> bool {
        self.generators.iter().all(|g| {
            let neg: Vec<Int> = g.iter().map(|x| -x.clone()).collect();
            !membership(&self.generators, &neg, self.dim)
        })
    }

    /// Unique minimal generating set of a pointed cone, primitivized and
    /// sorted lexicographically.
    ///
    /// A generator is kept exactly when it is not a non-negative combination
    /// of the remaining ones, so every returned ray is certified extremal.
    pub fn extremal_rays(&self) -> Result<Vec<Vec<Int>>, ConeError> {
        if !self.is_pointed() {
            return Err(ConeError::ContainsLine);
        }
        let directions: BTreeSet<Vec<Int>> = self
            .generators
            .iter()
            .map(|g| primitive_vector(g))
            .collect();
        let dirs: Vec<Vec<Int>> = directions.into_iter().collect();
        let mut rays = Vec::new();
        for (k, g) in dirs.iter().enumerate() {
            let others: Vec<Vec<Int>> = dirs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, h)| h.clone())
                .collect();
            if !membership(&others, g, self.dim) {
                rays.push(g.clone());
            }
        }
        Ok(rays)
    }
}

fn membership(generators: &[Vec<Int>], v: &[Int], dim: usize) -> bool {
    let n = generators.len();
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if n == 0 {
        return false;
    }
    // variables: one multiplier per generator
    let mut cons = Vec::with_capacity(2 * dim + n);
    for k in 0..dim {
        let row: Vec<Int> = generators.iter().map(|g| g[k].clone()).collect();
        let neg: Vec<Int> = row.iter().map(|x| -x.clone()).collect();
        cons.push(Constraint::from_int(&row, v[k].clone()));
        cons.push(Constraint::from_int(&neg, -v[k].clone()));
    }
    for j in 0..n {
        cons.push(Constraint::lower_bound(n, j, 0));
    }
    feasible(&cons, n)
}

/// Feasibility of `A x <= 0` with `x_j >= 1` for `j` in `strict` and
/// `x_j = 0` otherwise, over the rationals.
///
/// By homogeneity this is equivalent to asking for positive integers.
pub fn strict_feasible(a: &[Vec<Rat>], strict: &BTreeSet<usize>) -> bool {
    let cols: Vec<usize> = strict.iter().copied().collect();
    let n = cols.len();
    let mut cons = Vec::new();
    for row in a {
        let coeffs: Vec<Rat> = cols.iter().map(|&j| row[j].clone()).collect();
        cons.push(Constraint::new(coeffs, Rat::zero()));
    }
    for j in 0..n {
        cons.push(Constraint::lower_bound(n, j, 1));
    }
    feasible(&cons, n)
}
