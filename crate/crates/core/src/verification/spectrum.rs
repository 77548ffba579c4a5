//! Discrete spectrum of `h ↦ h″ + αξh′ + h` under central differences with
//! zero Dirichlet values at ±L.
//!
//! The tridiagonal matrix A is not symmetric, but whenever every product of
//! opposite off-diagonals is positive (cell Péclet number αL·h/2 < 1) the
//! diagonal similarity `W A W⁻¹` with `W_{i+1}/W_i = √(upᵢ/lo_{i+1})` makes
//! it symmetric. This is the discrete counterpart of conjugating by the
//! Gaussian e^{αξ²/4}. The spectrum is then real and is found by Sturm
//! sequence bisection on the symmetric form.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::lambda;
use crate::grid::{Field1D, Grid1D};

pub const MAX_MODES: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub alpha: f64,
    pub grid: Grid1D,
    /// `(n, λ̂ₙ)` sorted ascending.
    pub computed: Vec<(usize, f64)>,
    pub closed_form: Vec<f64>,
    pub abs_errors: Vec<f64>,
    /// Largest |Im λ̂|. Zero whenever the symmetrisation applies.
    pub imaginary_residue: f64,
    /// Smallest product of opposite off-diagonals (must be > 0).
    pub min_coupling: f64,
    /// Indices with λ̂ < 0.
    pub growing_modes: Vec<usize>,
}

impl SpectrumReport {
    pub fn max_abs_error(&self) -> f64 {
        self.abs_errors.iter().copied().fold(0.0, f64::max)
    }
}

/// Symmetric tridiagonal form of −A on the interior nodes: (diagonal, off-diagonal,
/// log W).
pub(crate) struct Symmetrised {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub log_weight: Vec<f64>,
    pub min_coupling: f64,
}

pub(crate) fn symmetrise(alpha: f64, grid: &Grid1D) -> Result<Symmetrised> {
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let interior: Vec<f64> = (1..grid.len() - 1).map(|i| grid.coord(i)).collect();
    let m = interior.len();
    let up = |x: f64| inv_h2 + alpha * x / (2.0 * h);
    let lo = |x: f64| inv_h2 - alpha * x / (2.0 * h);
    let diag = vec![2.0 * inv_h2 - 1.0; m];
    let mut off = Vec::with_capacity(m.saturating_sub(1));
    let mut log_weight = vec![0.0; m];
    let mut min_coupling = f64::INFINITY;
    for i in 0..m.saturating_sub(1) {
        let (u, l) = (up(interior[i]), lo(interior[i + 1]));
        let product = u * l;
        min_coupling = min_coupling.min(product);
        if product <= 0.0 {
            return Err(Error::Numeric(format!(
                "grid too coarse to symmetrise: coupling product {product:e} at xi = {}",
                interior[i]
            )));
        }
        off.push(-product.sqrt());
        log_weight[i + 1] = log_weight[i] + 0.5 * (u / l).ln();
    }
    Ok(Symmetrised {
        diag,
        off,
        log_weight,
        min_coupling,
    })
}

/// Number of eigenvalues of the symmetric tridiagonal (d, e) below `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let prev = if q == 0.0 { f64::EPSILON * (d[i - 1].abs() + e[i - 1].abs()).max(1.0) } else { q };
        q = d[i] - x - e[i - 1] * e[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `index`-th smallest eigenvalue (0-based) by bisection.
fn bisect(d: &[f64], e: &[f64], index: usize) -> Result<f64> {
    let m = d.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..m {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < m { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if sturm_count(d, e, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::Numeric("eigenvalue bisection did not converge".into()))
}

fn check_args(alpha: f64, k: usize, grid: &Grid1D) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(invalid("alpha", format!("must be finite and > 0, got {alpha}")));
    }
    if k > MAX_MODES {
        return Err(invalid("k", format!("at most {MAX_MODES} eigenvalues, got {k}")));
    }
    if k > grid.len() - 2 {
        return Err(invalid("k", "more eigenvalues requested than interior nodes"));
    }
    Ok(())
}

/// The `k` smallest eigenvalues of the discrete operator, paired with
/// `λₙ = (n+1)α − 1`.
pub fn discrete_spectrum(alpha: f64, grid: &Grid1D, k: usize) -> Result<SpectrumReport> {
    check_args(alpha, k, grid)?;
    let sym = symmetrise(alpha, grid)?;
    let mut computed = Vec::with_capacity(k);
    for n in 0..k {
        computed.push((n, bisect(&sym.diag, &sym.off, n)?));
    }
    let closed_form: Vec<f64> = (0..k).map(|n| lambda(n, alpha)).collect();
    let abs_errors = computed.iter().zip(&closed_form).map(|((_, a), b)| (a - b).abs()).collect();
    let growing_modes = computed.iter().filter(|(_, v)| *v < 0.0).map(|(n, _)| *n).collect();
    Ok(SpectrumReport {
        alpha,
        grid: *grid,
        computed,
        closed_form,
        abs_errors,
        imaginary_residue: 0.0,
        min_coupling: sym.min_coupling,
        growing_modes,
    })
}

/// Solves the tridiagonal system `(T − shift·I) y = b` with partial pivoting.
fn solve_shifted(d: &[f64], e: &[f64], shift: f64, b: &[f64]) -> Vec<f64> {
    let m = d.len();
    // rows hold (sub, diag, sup, sup2) after elimination
    let mut diag: Vec<f64> = d.iter().map(|v| v - shift).collect();
    let mut sup: Vec<f64> = e.to_vec();
    sup.push(0.0);
    let mut sup2 = vec![0.0; m];
    let mut sub: Vec<f64> = e.to_vec();
    let mut rhs = b.to_vec();
    for i in 0..m - 1 {
        if sub[i].abs() > diag[i].abs() {
            // swap rows i and i+1
            std::mem::swap(&mut diag[i], &mut sub[i]);
            let (a, c) = (sup[i], diag[i + 1]);
            sup[i] = c;
            diag[i + 1] = a;
            let (a2, c2) = (sup2[i], sup[i + 1]);
            sup2[i] = c2;
            sup[i + 1] = a2;
            rhs.swap(i, i + 1);
        }
        let pivot = if diag[i] == 0.0 { f64::EPSILON } else { diag[i] };
        diag[i] = pivot;
        let factor = sub[i] / pivot;
        diag[i + 1] -= factor * sup[i];
        sup[i + 1] -= factor * sup2[i];
        rhs[i + 1] -= factor * rhs[i];
    }
    let mut y = vec![0.0; m];
    for i in (0..m).rev() {
        let mut acc = rhs[i];
        if i + 1 < m {
            acc -= sup[i] * y[i + 1];
        }
        if i + 2 < m {
            acc -= sup2[i] * y[i + 2];
        }
        let pivot = if diag[i] == 0.0 { f64::EPSILON } else { diag[i] };
        y[i] = acc / pivot;
    }
    y
}

/// Discrete eigenpair `(λ̂ₙ, vₙ)` of −A with `vₙ` an eigenvector of the
/// unsymmetrised operator (zero at ±L), normalised to max|v| = 1 and signed
/// to match `hₙ` at the first node where it is significant.
pub fn discrete_mode(alpha: f64, grid: &Grid1D, n: usize) -> Result<(f64, Field1D)> {
    check_args(alpha, n + 1, grid)?;
    let sym = symmetrise(alpha, grid)?;
    let value = bisect(&sym.diag, &sym.off, n)?;
    let m = sym.diag.len();
    let shift = value + 1e-10 * value.abs().max(1.0);
    let mut y: Vec<f64> = (0..m).map(|i| 1.0 + 1e-3 * i as f64 / m as f64).collect();
    for _ in 0..4 {
        y = solve_shifted(&sym.diag, &sym.off, shift, &y);
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Numeric("inverse iteration failed".into()));
        }
        y.iter_mut().for_each(|v| *v /= norm);
    }
    // undo the similarity in log space: v = W⁻¹ y
    let peak_log = y
        .iter()
        .zip(&sym.log_weight)
        .filter(|(v, _)| **v != 0.0)
        .map(|(v, w)| v.abs().ln() - w)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut values = vec![0.0; grid.len()];
    for i in 0..m {
        values[i + 1] = if y[i] == 0.0 {
            0.0
        } else {
            y[i].signum() * (y[i].abs().ln() - sym.log_weight[i] - peak_log).exp()
        };
    }
    // sign convention of hₙ = (−1)ⁿ e^{−αξ²/2}Hₙ: positive at the far left
    let first = values.iter().copied().find(|v| v.abs() > 1e-3).unwrap_or(1.0);
    if first < 0.0 {
        values.iter_mut().for_each(|v| *v = -*v);
    }
    Ok((value, Field1D::new(*grid, values)?))
}
