//! Settles the α ↔ c₁ mapping by evolving the physical equation
//! `Ω_t = γxΩ_x + γΩ + νΩ_xx` from an eigenmode and comparing with the
//! similarity prediction for each candidate α.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::exact::EigenMode;
use crate::grid::{Field1D, Grid1D};
use crate::solver::{evolve, EvolveSpec};
use crate::strain::{SimilarityFrame, StrainModel};

/// Reach of the domain in similarity units at the narrowest instant.
pub const XI_REACH: f64 = 10.0;
pub const DEFAULT_THRESHOLD: f64 = 5e-3;
const IMPLIED_ALPHA_POINTS: usize = 401;
const GOLDEN_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheckParams {
    pub strain: StrainModel,
    pub nu: f64,
    pub mode_n: usize,
    pub t_end: f64,
    pub num_points: usize,
    /// Largest error still counted as discretisation level.
    pub threshold: f64,
    /// Also locate the α minimising the error on a coarse grid.
    pub implied_alpha: bool,
}

impl CrossCheckParams {
    pub fn new(strain: StrainModel, nu: f64, mode_n: usize, t_end: f64) -> Self {
        Self {
            strain,
            nu,
            mode_n,
            t_end,
            num_points: 2001,
            threshold: DEFAULT_THRESHOLD,
            implied_alpha: false,
        }
    }

    pub fn with_points(mut self, num_points: usize) -> Self {
        self.num_points = num_points;
        self
    }

    pub fn with_implied_alpha(mut self, on: bool) -> Self {
        self.implied_alpha = on;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub label: &'static str,
    pub alpha: f64,
    /// `None` when α ≤ 0 and no bounded mode exists.
    pub max_error: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Winner { alpha: f64 },
    /// Both readings give the same α (c₁ = 0).
    Degenerate { alpha: f64 },
    Ambiguous,
    NoCandidate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub strain: StrainModel,
    pub nu: f64,
    pub mode_n: usize,
    pub t_end: f64,
    pub tau_end: f64,
    pub grid: Grid1D,
    pub threshold: f64,
    pub candidates: Vec<Candidate>,
    pub verdict: Verdict,
    /// Loser error over winner error; `None` without a unique winner.
    pub separation: Option<f64>,
    pub implied_alpha: Option<f64>,
}

impl CrossCheckReport {
    pub fn error_for(&self, label: &str) -> Option<f64> {
        self.candidates.iter().find(|c| c.label == label).and_then(|c| c.max_error)
    }
}

pub const IMPLEMENTED_LABEL: &str = "1 - c1";
pub const ALTERNATIVE_LABEL: &str = "1 - 2 c1";

fn half_width(frame: &SimilarityFrame, t_end: f64) -> Result<f64> {
    let narrow = frame.scale(0.0)?.min(frame.scale(t_end)?);
    Ok(XI_REACH / narrow)
}

/// Max-norm error of the physical evolution against the α-prediction.
fn candidate_error(frame: &SimilarityFrame, grid: Grid1D, n: usize, alpha: f64, t_end: f64) -> Result<f64> {
    let mode = EigenMode::new(n, alpha)?;
    let s0 = frame.scale(0.0)?;
    let s1 = frame.scale(t_end)?;
    let decay = (-mode.lambda() * frame.tau_of(t_end)?).exp();
    let initial = Field1D::from_fn(grid, |x| mode.eval(s0 * x));
    let expected = Field1D::from_fn(grid, |x| decay * mode.eval(s1 * x));
    let spec = EvolveSpec::physical(*frame, t_end).with_norm_samples(0);
    let out = evolve(&initial, &spec)?;
    Ok(out.field.max_abs_diff(&expected))
}

fn golden_min(mut f: impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > GOLDEN_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

pub fn cross_check_transform(params: &CrossCheckParams) -> Result<CrossCheckReport> {
    let frame = SimilarityFrame::new(params.strain, params.nu)?;
    params.strain.check_time(params.t_end)?;
    if params.threshold.is_nan() || params.threshold <= 0.0 {
        return Err(invalid("threshold", "must be > 0"));
    }
    let grid = Grid1D::new(half_width(&frame, params.t_end)?, params.num_points)?;
    let mut candidates = Vec::with_capacity(2);
    for (label, alpha) in [
        (IMPLEMENTED_LABEL, params.strain.alpha()),
        (ALTERNATIVE_LABEL, params.strain.alpha_alternative()),
    ] {
        let max_error = if alpha > 0.0 {
            Some(candidate_error(&frame, grid, params.mode_n, alpha, params.t_end)?)
        } else {
            None
        };
        candidates.push(Candidate { label, alpha, max_error });
    }
    let passing: Vec<&Candidate> = candidates
        .iter()
        .filter(|c| c.max_error.is_some_and(|e| e < params.threshold))
        .collect();
    let same_alpha = (candidates[0].alpha - candidates[1].alpha).abs() <= 1e-12;
    let verdict = match passing.as_slice() {
        [] => Verdict::NoCandidate,
        [_, _] if same_alpha => Verdict::Degenerate {
            alpha: candidates[0].alpha,
        },
        [one] => Verdict::Winner { alpha: one.alpha },
        _ => Verdict::Ambiguous,
    };
    let separation = match verdict {
        Verdict::Winner { alpha } => {
            let win = candidates.iter().find(|c| c.alpha == alpha).and_then(|c| c.max_error);
            let lose = candidates.iter().find(|c| c.alpha != alpha).and_then(|c| c.max_error);
            match (win, lose) {
                (Some(w), Some(l)) => Some(l / w.max(f64::MIN_POSITIVE)),
                _ => None,
            }
        }
        _ => None,
    };
    let implied_alpha = if params.implied_alpha {
        let coarse = Grid1D::new(grid.half_width(), IMPLIED_ALPHA_POINTS)?;
        let lo = candidates.iter().map(|c| c.alpha).fold(f64::INFINITY, f64::min);
        let hi = candidates.iter().map(|c| c.alpha).fold(f64::NEG_INFINITY, f64::max);
        let a = (lo - 0.5).max(0.05);
        let b = hi + 0.5;
        Some(golden_min(
            |alpha| candidate_error(&frame, coarse, params.mode_n, alpha, params.t_end),
            a,
            b,
        )?)
    } else {
        None
    };
    Ok(CrossCheckReport {
        strain: params.strain,
        nu: params.nu,
        mode_n: params.mode_n,
        t_end: params.t_end,
        tau_end: frame.tau_of(params.t_end)?,
        grid,
        threshold: params.threshold,
        candidates,
        verdict,
        separation,
        implied_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn constant_strain_is_degenerate() {
        let p = CrossCheckParams::new(StrainModel::constant(1.0).unwrap(), 1.0, 0, 0.5).with_points(801);
        let r = cross_check_transform(&p).unwrap();
        assert_eq!(r.verdict, Verdict::Degenerate { alpha: 1.0 });
        assert!(r.candidates.iter().all(|c| c.max_error.unwrap() < 1e-3));
    }

    #[test]
    fn rational_strain_picks_one_candidate() {
        let p = CrossCheckParams::new(StrainModel::rational(-0.5, -1.0).unwrap(), 1.0, 0, 1.0).with_points(801);
        let r = cross_check_transform(&p).unwrap();
        assert_eq!(r.verdict, Verdict::Winner { alpha: 1.5 });
        assert!(r.separation.unwrap() > 10.0);
        assert!((r.tau_end - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn past_horizon() {
        let p = CrossCheckParams::new(StrainModel::rational(0.5, -1.0).unwrap(), 1.0, 0, 2.0);
        assert!(matches!(cross_check_transform(&p), Err(Error::Horizon { .. })));
    }

    #[test]
    fn inadmissible_candidate_is_skipped() {
        // c₁ = 0.5: α = 0.5 but 1 − 2c₁ = 0
        let p = CrossCheckParams::new(StrainModel::rational(0.5, -1.0).unwrap(), 1.0, 0, 0.2).with_points(401);
        let r = cross_check_transform(&p).unwrap();
        assert_eq!(r.candidates[1].max_error, None);
        assert_eq!(r.verdict, Verdict::Winner { alpha: 0.5 });
        assert_eq!(r.separation, None);
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let x = golden_min(|x| Ok((x - 1.234).powi(2)), 0.0, 3.0).unwrap();
        assert!((x - 1.234).abs() < 1e-4);
    }
}
