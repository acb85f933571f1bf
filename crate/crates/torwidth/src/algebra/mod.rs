//! Exact linear algebra over prime and cyclotomic fields.
//!
//! Scalars live in `F_q` (prime `q`) or `Q(zeta_n)`; the rationals are
//! `Q(zeta_1)`. On top of scalars sit Laurent polynomials in one variable
//! `t`, rational functions, and matrices with polynomial entries whose
//! determinants are computed fraction-free. Every value is canonical: no
//! stored zero coefficients, reduced rationals, cyclotomic elements reduced
//! mod the cyclotomic polynomial. Equality of values is equality of
//! representations.

mod laurent;
mod matrix;
mod ratfn;
mod scalar;

pub use laurent::LaurentPoly;
pub use matrix::{det_eval_count, PolyMatrix, ScalarMatrix};
pub use ratfn::RatFn;
pub use scalar::{cyclotomic_polynomial, is_prime_u64, Field, Scalar};
pub(crate) use scalar::gcd_u64;

use thiserror::Error;

/// Failures in scalar, polynomial, or matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be at least 1")]
    BadCyclotomicOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator of a rational function must be nonzero")]
    ZeroDenominator,
    #[error("no {n}-th root of unity in F_{q} ({n} does not divide {q}-1)")]
    NoRootOfUnity { n: u64, q: u64 },
    #[error("galois substitution index {j} is not invertible mod {n}")]
    BadGaloisIndex { j: u64, n: u32 },
    #[error("matrix dimensions {0}x{1} and {2}x{3} do not fit")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("{0}/{1} has no inverse mod {2}")]
    NotInvertibleModP(u64, u64, u64),
}
