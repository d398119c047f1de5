//! Exact arithmetic of Frobenius eigenvalue data for varieties over finite
//! fields.

pub mod arith;
pub mod endalg;
pub mod motives;
pub mod padic;
pub mod prime_power;
pub mod weil;

pub use arith::{rat, ratio, Poly, Rational};
pub use prime_power::PrimePower;
