//! Hermite polynomials, Gaussian-weighted Hermite functions and parabolic
//! cylinder functions of real order and argument.

mod gamma;
mod hermite;
mod parabolic;
pub mod selftest;

pub use gamma::{recip_gamma, sin_pi};
pub use hermite::{hermite, hermite_function};
pub use parabolic::{
    parabolic_cylinder_d, HandoffReport, Method, ParabolicCylinder, MAX_ARGUMENT,
};
pub use selftest::{self_test, SpecfunReport};
