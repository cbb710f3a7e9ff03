//! Fourier–Motzkin elimination over exact rationals.
//!
//! A system is a list of constraints `coeffs · x <= rhs`. Eliminating a
//! variable combines every positive-coefficient constraint with every
//! negative-coefficient one; constraints are kept normalized (primitive
//! integer coefficient vector) so duplicates collapse. All instances in this
//! crate have at most a dozen variables, which is well inside the range
//! where plain elimination with deduplication stays small.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{content, Int, Rat};

/// A single inequality `coeffs · x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        let mut c = Constraint { coeffs, rhs };
        c.normalize();
        c
    }

    pub fn from_int(coeffs: &[Int], rhs: Int) -> Self {
        Constraint::new(
            coeffs.iter().map(|x| Rat::from(x.clone())).collect(),
            Rat::from(rhs),
        )
    }

    /// `x_j >= lo` as a constraint.
    pub fn lower_bound(n_vars: usize, j: usize, lo: i64) -> Self {
        let mut coeffs = vec![Rat::zero(); n_vars];
        coeffs[j] = -Rat::from(Int::from(1));
        Constraint::new(coeffs, Rat::from(Int::from(-lo)))
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.rhs.is_negative()
    }

    fn is_contradiction(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && self.rhs.is_negative()
    }

    /// Scale by a positive rational so the coefficient vector (with the
    /// right-hand side) becomes a primitive integer vector.
    fn normalize(&mut self) {
        let mut denom_lcm = Int::from(1);
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let g = content(&ints);
        let scale = if g.is_zero() { Int::from(1) } else { g };
        let n = self.coeffs.len();
        for (j, c) in self.coeffs.iter_mut().enumerate() {
            *c = Rat::from(ints[j].clone() / &scale);
        }
        self.rhs = Rat::from(ints[n].clone() / &scale);
    }
}

/// Drop duplicates; for equal coefficient vectors only the tightest
/// right-hand side matters.
fn prune(cons: Vec<Constraint>) -> Result<Vec<Constraint>, ()> {
    let mut best: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
    for c in cons {
        if c.is_contradiction() {
            return Err(());
        }
        if c.is_trivial() {
            continue;
        }
        match best.get_mut(&c.coeffs) {
            Some(r) if *r <= c.rhs => {}
            _ => {
                best.insert(c.coeffs, c.rhs);
            }
        }
    }
    Ok(best
        .into_iter()
        .map(|(coeffs, rhs)| Constraint { coeffs, rhs })
        .collect())
}

/// One elimination step; the returned constraints have coefficient zero at
/// `var`. `Err(())` signals a detected contradiction.
fn eliminate(cons: &[Constraint], var: usize) -> Result<Vec<Constraint>, ()> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for c in cons {
        let a = &c.coeffs[var];
        if a.is_zero() {
            out.push(c.clone());
        } else if a.is_positive() {
            pos.push(c.clone());
        } else {
            neg.push(c.clone());
        }
    }
    for p in &pos {
        let ap = p.coeffs[var].clone();
        for n in &neg {
            let an = n.coeffs[var].clone();
            // ap * n - an * p has coefficient zero at var; both scales positive
            let coeffs: Vec<Rat> = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(pc, nc)| &ap * nc - &an * pc)
                .collect();
            let rhs = &ap * &n.rhs - &an * &p.rhs;
            out.push(Constraint::new(coeffs, rhs));
        }
    }
    prune(out)
}

/// Rational feasibility of `coeffs · x <= rhs` for all constraints.
pub fn feasible(cons: &[Constraint], n_vars: usize) -> bool {
    let mut cur = match prune(cons.to_vec()) {
        Ok(c) => c,
        Err(()) => return false,
    };
    for var in 0..n_vars {
        match eliminate(&cur, var) {
            Ok(next) => cur = next,
            Err(()) => return false,
        }
    }
    // everything eliminated: prune keeps no trivial rows, any survivor with
    // zero coefficients would have been a contradiction
    cur.is_empty()
}

/// Result of maximizing a single coordinate over a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sup {
    Infeasible,
    Unbounded,
    Finite(Rat),
}

/// Exact supremum of `x_var` subject to the constraints.
pub fn supremum(cons: &[Constraint], n_vars: usize, var: usize) -> Sup {
    let mut cur = match prune(cons.to_vec()) {
        Ok(c) => c,
        Err(()) => return Sup::Infeasible,
    };
    for v in 0..n_vars {
        if v == var {
            continue;
        }
        match eliminate(&cur, v) {
            Ok(next) => cur = next,
            Err(()) => return Sup::Infeasible,
        }
    }
    let mut upper: Option<Rat> = None;
    let mut lower: Option<Rat> = None;
    for c in &cur {
        let a = &c.coeffs[var];
        if a.is_positive() {
            let bound = &c.rhs / a;
            upper = Some(match upper {
                Some(u) if u <= bound => u,
                _ => bound,
            });
        } else if a.is_negative() {
            let bound = &c.rhs / a;
            lower = Some(match lower {
                Some(l) if l >= bound => l,
                _ => bound,
            });
        }
    }
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l > u {
            return Sup::Infeasible;
        }
    }
    match upper {
        Some(u) => Sup::Finite(u),
        None => Sup::Unbounded,
    }
}
