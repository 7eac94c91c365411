//! Exact arithmetic in cyclotomic fields ℚ(ζ_n).

mod kernel;
mod number;
mod real;
mod serial;
mod table;

pub use kernel::Coeff;
pub use number::{CycError, CycNumber};
pub use serial::JsonInt;

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    table::cyclotomic_poly(n)
}
