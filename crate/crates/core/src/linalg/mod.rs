//! Exact dense linear algebra over prime fields.

mod field;
mod gf2;
mod matrix;
mod poly;
mod subspace;

pub use field::{is_prime, Fp, PrimeField, MAX_PRIME};
pub use matrix::{FpMatrix, Rref};
pub use poly::{minimal_polynomial, Poly};
pub use subspace::{Coordinates, Subspace};
