//! Imposed strain rate γ(t), its running integral τ(t) and the similarity
//! frame `(x, t) ↔ (ξ, τ)` built on top of it.
//!
//! Two families are supported:
//!
//! * `Constant`: γ(t) = γ₀.
//! * `Rational`: γ(t) = −1/(2c₁t + c₂), the solution of γ̇ = 2c₁γ², with
//!   c₂ < 0 so that γ(0) = −1/c₂ > 0.
//!
//! Substituting ξ = √(γ/ν)·x and τ = ∫₀ᵗ γ into the vorticity equation
//! produces a drift coefficient γ̇/(2γ²) = c₁, which turns the transformed
//! equation into `Ω_τ = Ω + (1 − c₁)ξΩ_ξ + Ω_ξξ`. See [`StrainModel::alpha`].

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "kind",
    rename_all = "lowercase",
    deny_unknown_fields,
    try_from = "StrainRepr"
)]
pub enum StrainModel {
    Constant { gamma0: f64 },
    Rational { c1: f64, c2: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum StrainRepr {
    Constant { gamma0: f64 },
    Rational { c1: f64, c2: f64 },
}

impl TryFrom<StrainRepr> for StrainModel {
    type Error = Error;

    fn try_from(repr: StrainRepr) -> Result<Self> {
        match repr {
            StrainRepr::Constant { gamma0 } => StrainModel::constant(gamma0),
            StrainRepr::Rational { c1, c2 } => StrainModel::rational(c1, c2),
        }
    }
}

impl StrainModel {
    pub fn constant(gamma0: f64) -> Result<Self> {
        if !(gamma0.is_finite() && gamma0 > 0.0) {
            return Err(invalid("gamma0", format!("must be finite and > 0, got {gamma0}")));
        }
        Ok(StrainModel::Constant { gamma0 })
    }

    pub fn rational(c1: f64, c2: f64) -> Result<Self> {
        if !c1.is_finite() {
            return Err(invalid("c1", format!("must be finite, got {c1}")));
        }
        if !(c2.is_finite() && c2 < 0.0) {
            return Err(invalid(
                "c2",
                format!("must be finite and < 0 so that gamma(0) > 0, got {c2}"),
            ));
        }
        Ok(StrainModel::Rational { c1, c2 })
    }

    /// The constant c₁ in γ̇ = 2c₁γ²; zero for the constant family.
    pub fn c1(&self) -> f64 {
        match *self {
            StrainModel::Constant { .. } => 0.0,
            StrainModel::Rational { c1, .. } => c1,
        }
    }

    /// End of the validity window: the zero of `2c₁t + c₂` when c₁ > 0,
    /// otherwise `+∞`.
    pub fn horizon(&self) -> f64 {
        match *self {
            StrainModel::Rational { c1, c2 } if c1 > 0.0 => -c2 / (2.0 * c1),
            _ => f64::INFINITY,
        }
    }

    pub fn check_time(&self, t: f64) -> Result<()> {
        let horizon = self.horizon();
        if t.is_nan() || t < 0.0 || t >= horizon {
            return Err(Error::Horizon { t, horizon });
        }
        Ok(())
    }

    pub fn gamma_at(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match *self {
            StrainModel::Constant { gamma0 } => gamma0,
            StrainModel::Rational { c1, c2 } => -1.0 / (2.0 * c1 * t + c2),
        })
    }

    /// dγ/dt. Equals `2c₁γ²` for the rational family.
    pub fn gamma_dot(&self, t: f64) -> Result<f64> {
        let g = self.gamma_at(t)?;
        Ok(2.0 * self.c1() * g * g)
    }

    /// τ(t) = ∫₀ᵗ γ(t′) dt′ in closed form.
    pub fn tau_of(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match *self {
            StrainModel::Constant { gamma0 } => gamma0 * t,
            StrainModel::Rational { c1: 0.0, c2 } => -t / c2,
            // ln((2c₁t + c₂)/c₂) = ln(1 + 2c₁t/c₂)
            StrainModel::Rational { c1, c2 } => -(2.0 * c1 * t / c2).ln_1p() / (2.0 * c1),
        })
    }

    /// α of the constant-coefficient similarity equation
    /// `Ω_τ = Ω + αξΩ_ξ + Ω_ξξ`, i.e. `1 − c₁`.
    ///
    /// The alternative reading `1 − 2c₁` is available as
    /// [`StrainModel::alpha_alternative`]; the transform cross-check in
    /// [`crate::verification::crosscheck`] discriminates between the two.
    pub fn alpha(&self) -> f64 {
        1.0 - self.c1()
    }

    pub fn alpha_alternative(&self) -> f64 {
        1.0 - 2.0 * self.c1()
    }

    /// `false` once α ≤ 0, where the eigenmodes stop being bounded.
    pub fn alpha_is_admissible(&self) -> bool {
        self.alpha() > 0.0
    }
}

/// Coordinate map between physical `(x, t)` and similarity `(ξ, τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityFrame {
    pub strain: StrainModel,
    pub nu: f64,
}

impl SimilarityFrame {
    pub fn new(strain: StrainModel, nu: f64) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(invalid("nu", format!("must be finite and > 0, got {nu}")));
        }
        Ok(Self { strain, nu })
    }

    /// √(γ(t)/ν): the factor taking x to ξ at time t.
    pub fn scale(&self, t: f64) -> Result<f64> {
        Ok((self.strain.gamma_at(t)? / self.nu).sqrt())
    }

    pub fn xi_of(&self, x: f64, t: f64) -> Result<f64> {
        Ok(self.scale(t)? * x)
    }

    pub fn x_of(&self, xi: f64, t: f64) -> Result<f64> {
        Ok(xi / self.scale(t)?)
    }

    pub fn tau_of(&self, t: f64) -> Result<f64> {
        self.strain.tau_of(t)
    }
}
