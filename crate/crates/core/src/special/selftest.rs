//! Accuracy self-test for the special functions, shared by the acceptance
//! suite and the command line.
//!
//! Away from the origin D_ν spans many orders of magnitude over
//! z ∈ [−8, 8], so every residual is divided by the size of the terms it
//! combines.

use serde::Serialize;

use super::hermite::hermite_function;
use super::parabolic::ParabolicCylinder;
use crate::error::Result;

pub const NU_RANGE: (f64, f64) = (-2.0, 4.0);
pub const Z_RANGE: (f64, f64) = (-8.0, 8.0);
pub const WEBER_SAMPLES: usize = 1000;
const FD_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Worst {
    pub value: f64,
    pub nu: f64,
    pub z: f64,
}

impl Worst {
    fn none() -> Self {
        Self { value: 0.0, nu: f64::NAN, z: f64::NAN }
    }

    fn update(&mut self, value: f64, nu: f64, z: f64) {
        if value > self.value || value.is_nan() {
            *self = Self { value, nu, z };
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecfunReport {
    /// `D_{ν+1} − zD_ν + νD_{ν−1}` relative to the sum of term magnitudes.
    pub recurrence: Worst,
    /// `D_n(z)` against `2^{−n/2}e^{−z²/4}Hₙ(z/√2)`, relative to the largest
    /// reference value for that n.
    pub hermite_reduction: Worst,
    /// Weber-equation residual from sixth-order differences, relative to the
    /// stencil magnitude.
    pub weber: Worst,
    /// Origin- versus exterior-route mismatch at the positive handoff.
    pub handoff: Worst,
    pub weber_samples: usize,
}

fn lerp(range: (f64, f64), s: f64) -> f64 {
    range.0 + (range.1 - range.0) * s
}

/// Deterministic low-discrepancy points in the (ν, z) rectangle.
pub fn sample_points(count: usize) -> Vec<(f64, f64)> {
    // additive recurrence with the plastic-number constants
    let g = 1.324_717_957_244_746f64;
    let (a1, a2) = (1.0 / g, 1.0 / (g * g));
    (0..count)
        .map(|i| {
            let i = i as f64 + 0.5;
            (lerp(NU_RANGE, (a1 * i).fract()), lerp(Z_RANGE, (a2 * i).fract()))
        })
        .collect()
}

fn recurrence_residual() -> Result<Worst> {
    let mut worst = Worst::none();
    for i in 0..=60 {
        let nu = lerp(NU_RANGE, i as f64 / 60.0);
        let (lo, mid, hi) = (
            ParabolicCylinder::new(nu - 1.0)?,
            ParabolicCylinder::new(nu)?,
            ParabolicCylinder::new(nu + 1.0)?,
        );
        for j in 0..=160 {
            let z = lerp(Z_RANGE, j as f64 / 160.0);
            let (a, b, c) = (hi.eval(z)?, z * mid.eval(z)?, nu * lo.eval(z)?);
            let scale = a.abs() + b.abs() + c.abs();
            if scale > 0.0 {
                worst.update((a - b + c).abs() / scale, nu, z);
            }
        }
    }
    Ok(worst)
}

fn hermite_residual() -> Result<Worst> {
    let mut worst = Worst::none();
    for n in 0..=10usize {
        let d = ParabolicCylinder::new(n as f64)?;
        let zs: Vec<f64> = (0..=160).map(|j| lerp(Z_RANGE, j as f64 / 160.0)).collect();
        // e^{−z²/4}Hₙ(z/√2) = e^{−w²/2}Hₙ(w), w = z/√2
        let reference: Vec<f64> = zs
            .iter()
            .map(|z| 2f64.powf(-0.5 * n as f64) * hermite_function(n, z / 2f64.sqrt()))
            .collect();
        let scale = reference.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (z, r) in zs.iter().zip(&reference) {
            worst.update((d.eval(*z)? - r).abs() / scale, n as f64, *z);
        }
    }
    Ok(worst)
}

fn weber_residual(samples: usize) -> Result<Worst> {
    let mut worst = Worst::none();
    for (nu, z) in sample_points(samples) {
        let d = ParabolicCylinder::new(nu)?;
        let mut v = [0.0; 7];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = d.eval(z + (k as f64 - 3.0) * FD_STEP)?;
        }
        let d2 = (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] - 27.0 * v[5] + 2.0 * v[6])
            / (180.0 * FD_STEP * FD_STEP);
        let q = z * z / 4.0 - nu - 0.5;
        let size = v.iter().fold(0.0f64, |m, x| m.max(x.abs())) * q.abs().max(1.0);
        if size > 0.0 {
            worst.update((d2 - q * v[3]).abs() / size, nu, z);
        }
    }
    Ok(worst)
}

fn handoff_mismatch() -> Result<Worst> {
    let mut worst = Worst::none();
    for i in 0..=60 {
        let nu = lerp(NU_RANGE, i as f64 / 60.0);
        let r = ParabolicCylinder::new(nu)?.handoff_report()?;
        worst.update(r.rel_diff, nu, r.handoff);
    }
    Ok(worst)
}

pub fn self_test() -> Result<SpecfunReport> {
    Ok(SpecfunReport {
        recurrence: recurrence_residual()?,
        hermite_reduction: hermite_residual()?,
        weber: weber_residual(WEBER_SAMPLES)?,
        handoff: handoff_mismatch()?,
        weber_samples: WEBER_SAMPLES,
    })
}
