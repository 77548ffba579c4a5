use serde::Serialize;

use crate::error::{invalid, Result};

pub const MIN_SAMPLES: usize = 10;
/// Leading fraction of the τ range left out of the fit.
pub const WARMUP_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayFit {
    pub rate: f64,
    pub r_squared: f64,
    pub samples_used: usize,
}

/// Least-squares slope of `−ln a` against τ over the samples past the
/// warm-up window.
pub fn decay_rate_fit(series: &[(f64, f64)]) -> Result<DecayFit> {
    if series.len() < MIN_SAMPLES {
        return Err(invalid("series", format!("need at least {MIN_SAMPLES} samples, got {}", series.len())));
    }
    if let Some((t, a)) = series.iter().find(|(_, a)| !(*a > 0.0 && a.is_finite())) {
        return Err(invalid("series", format!("amplitude {a} at tau = {t} is not positive")));
    }
    let (t0, t1) = series
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (t, _)| (lo.min(*t), hi.max(*t)));
    let start = t0 + WARMUP_FRACTION * (t1 - t0);
    let kept: Vec<&(f64, f64)> = series.iter().filter(|(t, _)| *t >= start).collect();
    if kept.len() < 3 {
        return Err(invalid("series", "fewer than 3 samples after the warm-up window"));
    }
    // logs taken relative to the first kept sample so a constant series is exactly flat
    let base = kept[0].1.ln();
    let pts: Vec<(f64, f64)> = kept.iter().map(|(t, a)| (*t, base - a.ln())).collect();
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let stt = pts.iter().map(|p| (p.0 - mt).powi(2)).sum::<f64>();
    if stt == 0.0 {
        return Err(invalid("series", "all samples share one tau"));
    }
    let sty = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum::<f64>();
    let rate = sty / stt;
    let ss_res = pts.iter().map(|p| (p.1 - my - rate * (p.0 - mt)).powi(2)).sum::<f64>();
    let ss_tot = pts.iter().map(|p| (p.1 - my).powi(2)).sum::<f64>();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(DecayFit {
        rate,
        r_squared,
        samples_used: pts.len(),
    })
}
