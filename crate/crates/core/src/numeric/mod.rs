//! Exact rational and cyclotomic arithmetic, plus a multi-precision embedding.

pub mod cyclotomic;
pub mod embed;
pub mod linalg;
pub mod rational;

pub use cyclotomic::{cyclo_conj, cyclo_mul, CyclotomicValue};
pub use embed::{cyclo_embed, BigFloatComplex};
pub use rational::{format_rational, parse_rational, Rational};
