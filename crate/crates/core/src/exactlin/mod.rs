//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here is fraction-free; no floating point is involved.

mod lattice;
mod matrix;
mod smith;

pub use lattice::{
    bezout3, ext_gcd, gcd_many, is_part_of_basis, k_subsets, maximal_minors_gcd, mod_inverse,
    modulo, unimodular_extend,
};
pub use matrix::{parse_vector, IntMatrix};
pub use smith::{smith_form, SmithForm};

use num_bigint::BigInt;

/// Integer vector helper for literals in code and tests.
pub fn ivec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}
