use crate::error::Result;
use crate::exact::SteadyProfile;
use crate::grid::Grid1D;

/// Step of the finite-difference stencils applied to evaluators.
pub const FD_STEP: f64 = 0.01;

/// Sixth-order central first and second derivatives of `f` at `x`.
pub fn derivatives<F: Fn(f64) -> Result<f64>>(f: &F, x: f64, h: f64) -> Result<(f64, f64)> {
    let mut v = [0.0; 7];
    for (k, slot) in v.iter_mut().enumerate() {
        *slot = f(x + (k as f64 - 3.0) * h)?;
    }
    let d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * h);
    let d2 = (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] - 27.0 * v[5] + 2.0 * v[6])
        / (180.0 * h * h);
    Ok((d1, d2))
}

/// max over interior grid points of `|h″ + αξh′ + (1 + λ)h|`, normalised by
/// max|h| on the grid. Zero for the zero profile.
pub fn ode_residual<F: Fn(f64) -> Result<f64>>(profile: F, alpha: f64, lambda: f64, grid: &Grid1D) -> Result<f64> {
    let mut scale = 0.0f64;
    for x in grid.coords() {
        scale = scale.max(profile(x)?.abs());
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for i in 1..grid.len() - 1 {
        let x = grid.coord(i);
        let (d1, d2) = derivatives(&profile, x, FD_STEP)?;
        let r = d2 + alpha * x * d1 + (1.0 + lambda) * profile(x)?;
        worst = worst.max(r.abs());
    }
    Ok(worst / scale)
}

/// Normalised residual of the steady profile in `Ω + αξΩ_ξ + Ω_ξξ = 0`.
pub fn pde_residual_steady(alpha: f64, grid: &Grid1D) -> Result<f64> {
    let p = SteadyProfile::new(alpha, 1.0)?;
    ode_residual(|x| p.omega(x), alpha, 0.0, grid)
}

/// Same residual for the unscaled-argument form `e^{−αξ²/4}D_{1/α−1}(ξ)`.
pub fn printed_steady_residual(alpha: f64, grid: &Grid1D) -> Result<f64> {
    let p = SteadyProfile::new(alpha, 1.0)?;
    ode_residual(|x| p.printed_omega(x), alpha, 0.0, grid)
}
