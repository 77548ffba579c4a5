//! Observed orders of accuracy of the method-of-lines solver on separable
//! solutions whose exact evolution is known.

use serde::Serialize;

use super::spectrum::discrete_mode;
use crate::error::{invalid, Result};
use crate::exact::EigenMode;
use crate::grid::{Field1D, Grid1D};
use crate::solver::{evolve, EvolveSpec, TimeStep};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderStudy {
    /// Grid spacing or time step of each run.
    pub steps: Vec<f64>,
    pub errors: Vec<f64>,
    /// Order between consecutive runs, `ln(e₀/e₁)/ln(s₀/s₁)`.
    pub orders: Vec<f64>,
}

impl OrderStudy {
    fn from_runs(steps: Vec<f64>, errors: Vec<f64>) -> Self {
        let orders = steps
            .windows(2)
            .zip(errors.windows(2))
            .map(|(s, e)| (e[0] / e[1]).ln() / (s[0] / s[1]).ln())
            .collect();
        Self { steps, errors, orders }
    }

    pub fn min_order(&self) -> f64 {
        self.orders.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Evolves the continuous mode `hₙ` to `tau_end` on each grid size and
/// measures the max-norm error against `e^{−λₙτ}hₙ`. The time step is far
/// below the spatial error.
pub fn spatial_order_study(alpha: f64, n: usize, half_width: f64, sizes: &[usize], tau_end: f64) -> Result<OrderStudy> {
    if sizes.len() < 2 {
        return Err(invalid("sizes", "need at least two grids"));
    }
    let mode = EigenMode::new(n, alpha)?;
    let decay = (-mode.lambda() * tau_end).exp();
    let mut steps = Vec::with_capacity(sizes.len());
    let mut errors = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let grid = Grid1D::new(half_width, size)?;
        let initial = Field1D::from_fn(grid, |x| mode.eval(x));
        let spec = EvolveSpec::similarity(alpha, tau_end).with_norm_samples(0);
        let out = evolve(&initial, &spec)?;
        steps.push(grid.spacing());
        errors.push(out.field.max_abs_diff(&initial.scaled(decay)));
    }
    Ok(OrderStudy::from_runs(steps, errors))
}

/// Evolves a discrete eigenvector of the semi-discrete operator with fixed
/// RK4 steps, so the only error left is the time integration's.
pub fn temporal_order_study(
    alpha: f64,
    n: usize,
    grid: &Grid1D,
    dts: &[f64],
    tau_end: f64,
) -> Result<OrderStudy> {
    if dts.len() < 2 {
        return Err(invalid("dts", "need at least two time steps"));
    }
    let (value, initial) = discrete_mode(alpha, grid, n)?;
    let expected = initial.scaled((-value * tau_end).exp());
    let mut errors = Vec::with_capacity(dts.len());
    for &dt in dts {
        let spec = EvolveSpec::similarity(alpha, tau_end)
            .with_time_step(TimeStep::Fixed(dt))
            .with_norm_samples(0);
        let out = evolve(&initial, &spec)?;
        errors.push(out.field.max_abs_diff(&expected));
    }
    Ok(OrderStudy::from_runs(dts.to_vec(), errors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_arithmetic() {
        let s = OrderStudy::from_runs(vec![0.1, 0.05], vec![4e-3, 1e-3]);
        assert!((s.orders[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spatial_second_order() {
        let s = spatial_order_study(1.0, 1, 10.0, &[101, 201], 0.5).unwrap();
        assert!(s.min_order() > 1.9, "{s:?}");
    }

    #[test]
    fn temporal_fourth_order() {
        let g = Grid1D::new(8.0, 81).unwrap();
        let s = temporal_order_study(1.0, 4, &g, &[0.02, 0.01], 1.0).unwrap();
        assert!(s.min_order() > 3.8, "{s:?}");
    }
}
