//! Independent numerical checks of the closed forms: ODE residuals, the
//! discrete spectrum of the eigen-operator, decay-rate fits of evolved
//! modes, and the physical ↔ similarity transform cross-check.

pub mod convergence;
pub mod crosscheck;
pub mod decay;
pub mod discrepancy;
pub mod residual;
pub mod spectrum;

pub use convergence::{spatial_order_study, temporal_order_study, OrderStudy};
pub use crosscheck::{cross_check_transform, CrossCheckParams, CrossCheckReport, Verdict};
pub use decay::{decay_rate_fit, DecayFit};
pub use discrepancy::{DiscrepancyItem, DiscrepancyKind, DiscrepancyReport, Evidence};
pub use residual::{ode_residual, pde_residual_steady};
pub use spectrum::{discrete_mode, discrete_spectrum, SpectrumReport};
