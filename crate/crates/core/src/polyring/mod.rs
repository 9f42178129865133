//! Exact multivariate polynomial arithmetic in x0..xn with weighted grading.

mod monomial;
mod parse;
mod poly;
mod scalar;

pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{FpPoly, Polynomial, QPoly};
pub use scalar::{is_prime, FieldChoice, Fp64, Rat, Scalar, DEFAULT_PRIME};
