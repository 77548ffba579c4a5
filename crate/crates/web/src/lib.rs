//! WebAssembly bindings for the browser demo: closed-form profiles, the
//! discrete spectrum, and the decay of an evolved eigenmode.
//!
//! Each binding wraps a plain function returning `Result<_, String>` so the
//! logic also runs (and is tested) natively.

use burgers_core::exact::{EigenMode, SteadyProfile};
use burgers_core::grid::{Field1D, Grid1D};
use burgers_core::solver::{evolve, EvolveSpec};
use burgers_core::verification::{decay_rate_fit, discrete_spectrum};
use wasm_bindgen::prelude::*;

/// Largest grid the page may request.
pub const MAX_POINTS: usize = 4001;

fn grid(half_width: f64, points: usize) -> Result<Grid1D, String> {
    if points > MAX_POINTS {
        return Err(format!("at most {MAX_POINTS} points"));
    }
    Grid1D::new(half_width, points).map_err(|e| e.to_string())
}

/// Ω at the grid nodes for `kind` = "steady" or "mode" (eigenmode `n`).
pub fn profile_values(kind: &str, alpha: f64, n: usize, half_width: f64, points: usize) -> Result<Vec<f64>, String> {
    let g = grid(half_width, points)?;
    match kind {
        "steady" => {
            let p = SteadyProfile::new(alpha, 1.0).map_err(|e| e.to_string())?;
            g.coords().into_iter().map(|x| p.omega(x).map_err(|e| e.to_string())).collect()
        }
        "mode" => {
            let m = EigenMode::new(n, alpha).map_err(|e| e.to_string())?;
            Ok(g.coords().into_iter().map(|x| m.eval(x)).collect())
        }
        other => Err(format!("unknown profile kind `{other}`")),
    }
}

/// `[λ̂₀, λ₀, λ̂₁, λ₁, …]` for the `k` lowest modes on `[-10, 10]`.
pub fn spectrum_pairs(alpha: f64, k: usize, points: usize) -> Result<Vec<f64>, String> {
    let report = discrete_spectrum(alpha, &grid(10.0, points)?, k).map_err(|e| e.to_string())?;
    Ok(report
        .computed
        .iter()
        .zip(&report.closed_form)
        .flat_map(|((_, v), exact)| [*v, *exact])
        .collect())
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct DecayRun {
    times: Vec<f64>,
    l2: Vec<f64>,
    rate: f64,
    r_squared: f64,
    lambda: f64,
}

#[wasm_bindgen]
impl DecayRun {
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    pub fn l2(&self) -> Vec<f64> {
        self.l2.clone()
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn r_squared(&self) -> f64 {
        self.r_squared
    }

    /// Closed-form decay rate `(n+1)α − 1`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Evolves `hₙ` under the similarity equation and fits its L2 decay.
pub fn decay(n: usize, alpha: f64, tau_end: f64, points: usize) -> Result<DecayRun, String> {
    let g = grid(10.0, points)?;
    let mode = EigenMode::new(n, alpha).map_err(|e| e.to_string())?;
    let initial = Field1D::from_fn(g, |x| mode.eval(x));
    let out = evolve(&initial, &EvolveSpec::similarity(alpha, tau_end)).map_err(|e| e.to_string())?;
    let series: Vec<(f64, f64)> = out.norms.iter().map(|s| (s.time, s.l2)).collect();
    let fit = decay_rate_fit(&series).map_err(|e| e.to_string())?;
    Ok(DecayRun {
        times: series.iter().map(|s| s.0).collect(),
        l2: series.iter().map(|s| s.1).collect(),
        rate: fit.rate,
        r_squared: fit.r_squared,
        lambda: mode.lambda(),
    })
}

#[wasm_bindgen]
pub fn profile(kind: &str, alpha: f64, n: usize, half_width: f64, points: usize) -> Result<Vec<f64>, JsError> {
    profile_values(kind, alpha, n, half_width, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spectrum(alpha: f64, k: usize, points: usize) -> Result<Vec<f64>, JsError> {
    spectrum_pairs(alpha, k, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decay_run(n: usize, alpha: f64, tau_end: f64, points: usize) -> Result<DecayRun, JsError> {
    decay(n, alpha, tau_end, points).map_err(|e| JsError::new(&e))
}
