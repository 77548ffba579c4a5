use serde::Serialize;

use crate::error::{invalid, Result};

/// Uniform grid on `[-L, L]` with an odd number of points, so the origin is
/// a node and node `m + k` sits exactly at `-(node m − k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    half_width: f64,
    num_points: usize,
}

impl Grid1D {
    pub fn new(half_width: f64, num_points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(invalid("half_width", format!("must be finite and > 0, got {half_width}")));
        }
        if num_points < 3 || num_points.is_multiple_of(2) {
            return Err(invalid("num_points", format!("must be odd and >= 3, got {num_points}")));
        }
        Ok(Self {
            half_width,
            num_points,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.num_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.num_points - 1) as f64
    }

    /// Index of the origin.
    pub fn centre(&self) -> usize {
        (self.num_points - 1) / 2
    }

    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - self.centre() as f64) * self.spacing()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.num_points).map(|i| self.coord(i)).collect()
    }

    /// Same half-width, spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            half_width: self.half_width,
            num_points: 2 * self.num_points - 1,
        }
    }
}

/// Samples of Ω on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field1D {
    grid: Grid1D,
    values: Vec<f64>,
}

impl Field1D {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(
                "values",
                format!("expected {} samples, got {}", grid.len(), values.len()),
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid("values", format!("sample {i} is not finite")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_fn(grid: Grid1D, f: impl FnMut(f64) -> f64) -> Self {
        Self {
            grid,
            values: grid.coords().into_iter().map(f).collect(),
        }
    }

    pub fn try_from_fn<E>(grid: Grid1D, mut f: impl FnMut(f64) -> std::result::Result<f64, E>) -> std::result::Result<Self, E> {
        let values = grid.coords().into_iter().map(&mut f).collect::<std::result::Result<Vec<_>, E>>()?;
        Ok(Self { grid, values })
    }

    pub(crate) fn from_raw(grid: Grid1D, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Discrete L2 norm `sqrt(h Σ uᵢ²)`.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.spacing() * self.values.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Field1D) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_raw(self.grid, self.values.iter().map(|v| factor * v).collect())
    }

    /// `a·self + b·other` on a shared grid.
    pub fn combine(&self, a: f64, other: &Field1D, b: f64) -> Self {
        Self::from_raw(
            self.grid,
            self.values.iter().zip(&other.values).map(|(u, v)| a * u + b * v).collect(),
        )
    }

    /// max |u(ξ) − parity·u(−ξ)|.
    pub fn asymmetry(&self, parity: f64) -> f64 {
        let n = self.values.len();
        (0..n).fold(0.0, |m, i| m.max((self.values[i] - parity * self.values[n - 1 - i]).abs()))
    }
}
