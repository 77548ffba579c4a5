//! Closed-form solutions of the similarity equation
//! `Ω_τ = Ω + αξΩ_ξ + Ω_ξξ`, and their images in physical coordinates.
//!
//! * steady profile: `Ω(ξ) = C₁ e^{−αξ²/4} D_{1/α−1}(√α ξ)`;
//! * eigenmodes: `hₙ(ξ) = (−1)ⁿ e^{−αξ²/2} Hₙ(√(α/2) ξ)` with decay rate
//!   `λₙ = (n+1)α − 1`;
//! * separable superpositions `Σ cₙ hₙ(ξ) e^{−λₙτ}`.
//!
//! The `printed_*` evaluators give the unscaled variants (argument ξ in
//! D_ν, exponent −αξ²/4 in hₙ). They do not solve the equations for general
//! α and exist only so the verification layer can quantify that.

use crate::error::{invalid, Error, Result};
use crate::quadrature;
use crate::special::{hermite_function, ParabolicCylinder};
use crate::strain::SimilarityFrame;

/// Maximum number of modes kept in a superposition.
pub const MAX_MODES: usize = 64;
/// Coefficients below this are dropped when a superposition exceeds
/// [`MAX_MODES`].
pub const NEGLIGIBLE_COEFF: f64 = 1e-14;
/// Absolute tolerance of the W quadrature.
pub const W_ABS_TOL: f64 = 1e-10;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(invalid("alpha", format!("must be finite and > 0, got {alpha}")))
    }
}

/// λₙ = (n+1)α − 1.
pub fn lambda(n: usize, alpha: f64) -> f64 {
    (n as f64 + 1.0) * alpha - 1.0
}

#[derive(Debug, Clone, Copy)]
pub struct SteadyProfile {
    alpha: f64,
    c_amp: f64,
    pcf: ParabolicCylinder,
}

impl SteadyProfile {
    pub fn new(alpha: f64, c_amp: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !c_amp.is_finite() {
            return Err(invalid("c_amp", "must be finite"));
        }
        Ok(Self {
            alpha,
            c_amp,
            pcf: ParabolicCylinder::new(1.0 / alpha - 1.0)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c_amp(&self) -> f64 {
        self.c_amp
    }

    /// Order ν = 1/α − 1 of the parabolic cylinder function.
    pub fn order(&self) -> f64 {
        self.pcf.order()
    }

    pub fn omega(&self, xi: f64) -> Result<f64> {
        let a = self.alpha;
        Ok(self.c_amp * (-0.25 * a * xi * xi).exp() * self.pcf.eval(a.sqrt() * xi)?)
    }

    /// `C₁ e^{−αξ²/4} D_{1/α−1}(ξ)`.
    pub fn printed_omega(&self, xi: f64) -> Result<f64> {
        Ok(self.c_amp * (-0.25 * self.alpha * xi * xi).exp() * self.pcf.eval(xi)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenMode {
    pub n: usize,
    pub alpha: f64,
}

impl EigenMode {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { n, alpha })
    }

    pub fn lambda(&self) -> f64 {
        lambda(self.n, self.alpha)
    }

    fn sign(&self) -> f64 {
        if self.n.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    pub fn eval(&self, xi: f64) -> f64 {
        // e^{−αξ²/2}Hₙ(z) = e^{−z²}Hₙ(z) with z = √(α/2)ξ
        let z = (0.5 * self.alpha).sqrt() * xi;
        self.sign() * (-0.5 * z * z).exp() * hermite_function(self.n, z)
    }

    /// `(−1)ⁿ e^{−αξ²/4} Hₙ(√(α/2) ξ)`.
    pub fn printed_eval(&self, xi: f64) -> f64 {
        let z = (0.5 * self.alpha).sqrt() * xi;
        self.sign() * hermite_function(self.n, z)
    }

    /// |ξ| beyond which the mode is below `rel · max|hₙ|`, from the envelope
    /// `|hₙ| ≤ (2|z|)ⁿ e^{−z²}` (valid once |z| exceeds the largest Hermite
    /// zero, bounded by √(2n+1)) and `max|hₙ| ≥ |hₙ|` at a sample point.
    pub fn decay_cutoff(&self, rel: f64) -> f64 {
        let n = self.n as f64;
        let reference = (0..=400)
            .map(|i| self.eval(i as f64 * 0.025 * (2.0 * n + 2.0).sqrt() / (0.5 * self.alpha).sqrt()).abs())
            .fold(0.0, f64::max);
        let target = (rel * reference).ln();
        let mut z = (2.0 * n + 1.0).sqrt().max(1.0);
        while n * (2.0 * z).ln() - z * z > target {
            z += 0.01;
        }
        z / (0.5 * self.alpha).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparableSolution {
    alpha: f64,
    modes: Vec<(f64, EigenMode)>,
}

impl SeparableSolution {
    /// `terms` are `(coefficient, n)` pairs sharing one α.
    pub fn new(alpha: f64, terms: &[(f64, usize)]) -> Result<Self> {
        check_alpha(alpha)?;
        let mut modes = Vec::with_capacity(terms.len());
        for &(c, n) in terms {
            if !c.is_finite() {
                return Err(invalid("coeff", format!("must be finite, got {c}")));
            }
            modes.push((c, EigenMode::new(n, alpha)?));
        }
        if modes.len() > MAX_MODES {
            modes.retain(|(c, _)| c.abs() >= NEGLIGIBLE_COEFF);
        }
        if modes.len() > MAX_MODES {
            return Err(invalid(
                "modes",
                format!("at most {MAX_MODES} significant modes are supported, got {}", modes.len()),
            ));
        }
        Ok(Self { alpha, modes })
    }

    pub fn single(n: usize, alpha: f64, coeff: f64) -> Result<Self> {
        Self::new(alpha, &[(coeff, n)])
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn modes(&self) -> &[(f64, EigenMode)] {
        &self.modes
    }

    pub fn omega(&self, xi: f64, tau: f64) -> Result<f64> {
        if tau.is_nan() || tau < 0.0 {
            return Err(invalid("tau", format!("must be >= 0, got {tau}")));
        }
        Ok(self
            .modes
            .iter()
            .map(|(c, m)| c * m.eval(xi) * (-m.lambda() * tau).exp())
            .sum())
    }
}

/// Any closed-form solution in similarity coordinates.
#[derive(Debug, Clone)]
pub enum Solution {
    Steady(SteadyProfile),
    Separable(SeparableSolution),
}

impl Solution {
    pub fn alpha(&self) -> f64 {
        match self {
            Solution::Steady(p) => p.alpha(),
            Solution::Separable(s) => s.alpha(),
        }
    }

    pub fn omega(&self, xi: f64, tau: f64) -> Result<f64> {
        match self {
            Solution::Steady(p) => p.omega(xi),
            Solution::Separable(s) => s.omega(xi, tau),
        }
    }

    /// Ω at physical `(x, t)`: the similarity solution evaluated at
    /// `(ξ(x, t), τ(t))`, without any amplitude rescaling.
    pub fn physical_omega(&self, frame: &SimilarityFrame, x: f64, t: f64) -> Result<f64> {
        self.omega(frame.xi_of(x, t)?, frame.tau_of(t)?)
    }

    /// Axial velocity `W(x, t) = ∫₀ˣ Ω(ξ(x′, t), τ(t)) dx′`, gauge W(0) = 0.
    pub fn w_profile(&self, frame: &SimilarityFrame, x: f64, t: f64) -> Result<f64> {
        let scale = frame.scale(t)?;
        let tau = frame.tau_of(t)?;
        quadrature::integrate(|s| self.omega(scale * s, tau), 0.0, x, W_ABS_TOL).map_err(|e| match e {
            Error::Accuracy { target, achieved, .. } => Error::Accuracy {
                context: "axial velocity quadrature",
                target,
                achieved,
            },
            other => other,
        })
    }

    /// `√(γ/ν) ∫₀^ξ Ω(η) dη`, the prefactor-as-printed variant of W.
    pub fn printed_w_profile(&self, frame: &SimilarityFrame, x: f64, t: f64) -> Result<f64> {
        let scale = frame.scale(t)?;
        let tau = frame.tau_of(t)?;
        let integral = quadrature::integrate(|eta| self.omega(eta, tau), 0.0, scale * x, W_ABS_TOL)?;
        Ok(scale * integral)
    }
}

impl From<SteadyProfile> for Solution {
    fn from(p: SteadyProfile) -> Self {
        Solution::Steady(p)
    }
}

impl From<SeparableSolution> for Solution {
    fn from(s: SeparableSolution) -> Self {
        Solution::Separable(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strain::StrainModel;

    fn unit_frame() -> SimilarityFrame {
        SimilarityFrame::new(StrainModel::constant(1.0).unwrap(), 1.0).unwrap()
    }

    /// Sixth-order central differences of an evaluator.
    fn derivs(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
        let v: Vec<f64> = (-3..=3).map(|k| f(x + k as f64 * h)).collect();
        let d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * h);
        let d2 = (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] - 27.0 * v[5]
            + 2.0 * v[6])
            / (180.0 * h * h);
        (d1, d2)
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda(0, 1.0), 0.0);
        assert_eq!(lambda(2, 0.5), 0.5);
        assert_eq!(lambda(3, 1.0), 3.0);
    }

    #[test]
    fn steady_examples() {
        let p = SteadyProfile::new(1.0, 1.0).unwrap();
        assert!((p.omega(0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((p.omega(2.0).unwrap() - (-2.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn steady_half_alpha_matches_shooting() {
        // integrate Ω″ = −αξΩ′ − Ω from the origin with RK4 on a fine step
        let alpha = 0.5;
        let p = SteadyProfile::new(alpha, 1.0).unwrap();
        let h = 1e-5;
        let (mut w, mut dw) = (p.omega(0.0).unwrap(), derivs(&|x| p.omega(x).unwrap(), 0.0, 1e-3).0);
        let f = |x: f64, w: f64, dw: f64| (dw, -alpha * x * dw - w);
        let mut x = 0.0;
        for _ in 0..100_000 {
            let k1 = f(x, w, dw);
            let k2 = f(x + h / 2.0, w + h / 2.0 * k1.0, dw + h / 2.0 * k1.1);
            let k3 = f(x + h / 2.0, w + h / 2.0 * k2.0, dw + h / 2.0 * k2.1);
            let k4 = f(x + h, w + h * k3.0, dw + h * k3.1);
            w += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            dw += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            x += h;
        }
        assert!((p.omega(1.0).unwrap() - w).abs() < 1e-9);
    }

    #[test]
    fn eigenmode_examples() {
        assert_eq!(EigenMode::new(0, 1.0).unwrap().eval(0.0), 1.0);
        assert!((EigenMode::new(0, 1.0).unwrap().eval(1.0) - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(EigenMode::new(1, 2.0).unwrap().eval(0.0), 0.0);
        assert!(EigenMode::new(1, 0.0).is_err());
    }

    #[test]
    fn eigenmode_residuals_vanish() {
        for n in 0..=10 {
            for alpha in [0.5, 1.0, 1.5, 2.0] {
                let m = EigenMode::new(n, alpha).unwrap();
                let f = |x: f64| m.eval(x);
                let max = (0..=400).map(|i| f(-8.0 + 0.04 * i as f64).abs()).fold(0.0, f64::max);
                for i in 0..=400 {
                    let x = -8.0 + 0.04 * i as f64;
                    let (d1, d2) = derivs(&f, x, 0.01);
                    let r = d2 + alpha * x * d1 + (1.0 + m.lambda()) * f(x);
                    assert!(r.abs() <= 1e-7 * max, "n={n} alpha={alpha} x={x} r={r}");
                }
            }
        }
    }

    #[test]
    fn separable_examples() {
        let s = SeparableSolution::single(0, 1.0, 1.0).unwrap();
        assert_eq!(s.omega(0.0, 5.0).unwrap(), 1.0);
        let s = SeparableSolution::single(1, 1.0, 1.0).unwrap();
        let m = EigenMode::new(1, 1.0).unwrap();
        assert!((s.omega(1.0, 1.0).unwrap() - m.eval(1.0) * (-1.0f64).exp()).abs() < 1e-16);
        let two = SeparableSolution::new(1.5, &[(2.0, 0), (-0.5, 3)]).unwrap();
        let direct = 2.0 * EigenMode::new(0, 1.5).unwrap().eval(0.7) - 0.5 * EigenMode::new(3, 1.5).unwrap().eval(0.7);
        assert!((two.omega(0.7, 0.0).unwrap() - direct).abs() < 1e-15);
        assert!(two.omega(0.7, -1.0).is_err());
    }

    #[test]
    fn superposition_cap() {
        let mut terms: Vec<(f64, usize)> = (0..64).map(|n| (1.0, n)).collect();
        terms.extend((64..80).map(|n| (1e-16, n)));
        assert_eq!(SeparableSolution::new(1.0, &terms).unwrap().modes().len(), 64);
        let too_many: Vec<(f64, usize)> = (0..65).map(|n| (1.0, n)).collect();
        assert!(SeparableSolution::new(1.0, &too_many).is_err());
    }

    #[test]
    fn steady_is_proportional_to_eigenmode_at_integer_order() {
        for (n, alpha) in [(0usize, 1.0), (1, 0.5), (3, 0.25)] {
            let p = SteadyProfile::new(alpha, 1.0).unwrap();
            let m = EigenMode::new(n, alpha).unwrap();
            assert_eq!(m.lambda(), 0.0);
            let xs: Vec<f64> = (0..=400).map(|i| -8.0 + 0.04 * i as f64).collect();
            let max = xs.iter().map(|&x| m.eval(x).abs()).fold(0.0, f64::max);
            let ratios: Vec<f64> = xs
                .iter()
                .filter(|&&x| m.eval(x).abs() > 1e-6 * max)
                .map(|&x| p.omega(x).unwrap() / m.eval(x))
                .collect();
            let r0 = ratios[0];
            for r in ratios {
                assert!(((r - r0) / r0).abs() < 1e-8, "n={n}: {r} vs {r0}");
            }
        }
    }

    #[test]
    fn decay_cutoff_bounds_mode() {
        for (n, alpha) in [(0usize, 1.0), (4, 0.5), (10, 2.0)] {
            let m = EigenMode::new(n, alpha).unwrap();
            let cut = m.decay_cutoff(1e-10);
            let max = (0..=4000).map(|i| m.eval(-20.0 + 0.01 * i as f64).abs()).fold(0.0, f64::max);
            for k in 0..200 {
                let x = cut + 0.05 * k as f64;
                assert!(m.eval(x).abs() < 1e-10 * max);
                assert!(m.eval(-x).abs() < 1e-10 * max);
            }
        }
    }

    #[test]
    fn w_profile_examples() {
        let sol: Solution = SteadyProfile::new(1.0, 1.0).unwrap().into();
        let frame = unit_frame();
        assert_eq!(sol.w_profile(&frame, 0.0, 0.0).unwrap(), 0.0);
        let w = sol.w_profile(&frame, 10.0, 0.0).unwrap();
        assert!((w - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-10);
        for x in [0.3, 1.7, 4.0] {
            let a = sol.w_profile(&frame, x, 3.0).unwrap();
            let b = sol.w_profile(&frame, -x, 3.0).unwrap();
            assert!((a + b).abs() < 1e-12);
        }
    }

    #[test]
    fn w_derivative_recovers_omega() {
        let sol: Solution = SteadyProfile::new(2.0, 1.3).unwrap().into();
        let frame = SimilarityFrame::new(StrainModel::rational(-0.5, -0.5).unwrap(), 0.7).unwrap();
        let t = 0.4;
        for x in [-1.5, -0.2, 0.5, 1.1] {
            let h = 1e-3;
            let (d1, _) = derivs(&|s| sol.w_profile(&frame, s, t).unwrap(), x, h);
            let omega = sol.physical_omega(&frame, x, t).unwrap();
            assert!((d1 - omega).abs() < 1e-8, "x={x}: {d1} vs {omega}");
        }
    }

    #[test]
    fn physical_examples() {
        let frame = unit_frame();
        let steady: Solution = SteadyProfile::new(1.0, 2.5).unwrap().into();
        assert!((steady.physical_omega(&frame, 0.0, 9.0).unwrap() - 2.5).abs() < 1e-14);
        let h0: Solution = SeparableSolution::single(0, 1.0, 1.0).unwrap().into();
        assert!((h0.physical_omega(&frame, 1.0, 2.0).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        let h1: Solution = SeparableSolution::single(1, 1.0, 1.0).unwrap().into();
        assert_eq!(h1.physical_omega(&frame, 0.0, 4.0).unwrap(), 0.0);
        let blowup = SimilarityFrame::new(StrainModel::rational(0.5, -1.0).unwrap(), 1.0).unwrap();
        assert!(matches!(h1.physical_omega(&blowup, 0.0, 2.0), Err(Error::Horizon { .. })));
    }
}
