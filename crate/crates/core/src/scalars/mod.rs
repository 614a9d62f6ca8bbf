//! Exact arithmetic in ℚ(i)(v) with `v = q^{1/2}`.

mod gaussian;
mod laurent;
mod qnum;
mod rational;
mod scalar;

pub use gaussian::GaussianRational;
pub use laurent::LaurentPoly;
pub use qnum::{bq, q_factorial, q_factorial_binomial, q_sub, q_sub_pow, qint, quantum_int};
pub use rational::{ParseRationalError, Rational};
pub use scalar::Scalar;
