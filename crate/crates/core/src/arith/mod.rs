//! Exact scalars: rationals, the rational function tower over Q(q),
//! Laurent polynomials and truncated nilpotent expansions.

mod field;
mod laurent;
mod monomial;
mod parse;
mod poly;
mod ratfun;
mod trunc;

pub use field::{Field, Rat};
pub use laurent::{quantum_binomial, quantum_factorial, quantum_integer, LaurentQ};
pub use monomial::QMono;
pub use parse::parse_qq;
pub use poly::Poly;
pub use ratfun::{Named, QField, Qq, Qqz, Qqzw, RatFunc, DEFAULT_NAMES};
pub use trunc::{compose, qq_rat, trunc_eval, TruncEval, TruncPoly};

#[cfg(test)]
mod tests;
