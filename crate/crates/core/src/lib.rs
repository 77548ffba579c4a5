//! Exact solutions of a modified 2D Burgers vortex under time-dependent
//! strain, and the numerical machinery that checks them.

pub mod acceptance;
pub mod error;
pub mod exact;
pub mod grid;
pub mod quadrature;
pub mod solver;
pub mod special;
pub mod strain;
pub mod verification;

pub use error::{Error, Result};
pub use strain::{SimilarityFrame, StrainModel};
