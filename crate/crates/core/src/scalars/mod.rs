//! Exact scalars: arbitrary-precision rationals and elements of cyclotomic
//! fields.

mod cyclo;
mod rational;

pub use cyclo::{cyclotomic_poly, phi, Cyclo};
pub use rational::Rational;
