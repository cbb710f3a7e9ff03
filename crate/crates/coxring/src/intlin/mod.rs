//! Exact integer and rational linear algebra and polyhedral primitives.
//!
//! Everything in this module works over arbitrary-precision integers
//! ([`Int`]) and rationals ([`Rat`]); there is no floating point anywhere.
//! The pieces are:
//!
//! - [`IMat`]: a small dense integer matrix,
//! - [`smith_normal_form`] and [`cokernel`]: abelian group presentations,
//! - [`ConeZ`]: rational polyhedral cones generated by integer vectors,
//!   with exact membership tests and extremal-ray extraction,
//! - [`strict_feasible`]: the strict cone-interior feasibility test,
//! - [`enumerate_nonneg_integer_solutions`]: complete enumeration of the
//!   lattice points of a bounded polyhedron `{x >= 0 : Ax = b}`.

mod abelian;
mod cone;
mod dioph;
mod fm;
mod mat;
mod snf;

pub use abelian::{cokernel, AbelianPresentation};
pub use cone::{strict_feasible, ConeError, ConeZ};
pub use dioph::{enumerate_nonneg_integer_solutions, RecessionError};
pub use fm::{feasible, supremum, Constraint, Sup};
pub use mat::{solve_exact, IMat};
pub use snf::{smith_normal_form, Snf};

use num_traits::{Signed, Zero};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand conversion for literals.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Convert a slice of machine integers into big integers.
pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&n| Int::from(n)).collect()
}

/// Greatest common divisor of the entries, zero for the zero vector.
pub fn content(v: &[Int]) -> Int {
    v.iter()
        .fold(Int::zero(), |acc, x| num_integer::gcd(acc, x.abs()))
}

/// Divide an integer vector by the gcd of its entries.
///
/// The orientation of the input is kept: the result is the unique shortest
/// integer vector on the same ray. The zero vector maps to itself.
pub fn primitive_vector(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}
