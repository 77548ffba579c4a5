//! Method-of-lines integration of the two vorticity equations
//!
//! * physical:   `Ω_t = γ(t)xΩ_x + γ(t)Ω + νΩ_xx`
//! * similarity: `Ω_τ = αξΩ_ξ + Ω + Ω_ξξ`
//!
//! Both have the form `u_t = drift·x·u_x + growth·u + diffusion·u_xx` and are
//! discretised with second-order central differences on a [`Grid1D`], with
//! Dirichlet values at ±L. The drift term points inward (characteristics
//! dx/dt = −drift·x), so both ends are inflow boundaries.

use crate::error::{invalid, Error, Result};
use crate::grid::{Field1D, Grid1D};
use crate::strain::SimilarityFrame;

/// Relative boundary tolerance for [`Boundary::DirichletZero`] initial data.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-10;
pub const DEFAULT_CFL: f64 = 0.4;
pub const DEFAULT_NORM_SAMPLES: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Equation {
    /// Physical coordinates with time-dependent strain.
    Physical(SimilarityFrame),
    /// Similarity coordinates with constant α.
    Similarity { alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStep {
    Fixed(f64),
    /// Fraction of the stability-limited step; see [`EvolveSpec::max_step`].
    Cfl(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    ExplicitRk4,
    /// Crank–Nicolson.
    ImplicitTrapezoidal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Ω = 0 at ±L; the initial data must already vanish there.
    DirichletZero,
    /// Ω held at its initial boundary values.
    DirichletHeld,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveSpec {
    pub equation: Equation,
    /// Final t (physical) or τ (similarity); integration starts at 0.
    pub end_time: f64,
    pub time_step: TimeStep,
    pub scheme: Scheme,
    pub boundary: Boundary,
    /// Times at which full snapshots are kept.
    pub snapshot_times: Vec<f64>,
    /// Number of uniformly spaced norm samples over `[0, end_time]`.
    pub norm_samples: usize,
    pub boundary_tol: f64,
}

impl EvolveSpec {
    pub fn similarity(alpha: f64, tau_end: f64) -> Self {
        Self::with_equation(Equation::Similarity { alpha }, tau_end)
    }

    pub fn physical(frame: SimilarityFrame, t_end: f64) -> Self {
        Self::with_equation(Equation::Physical(frame), t_end)
    }

    fn with_equation(equation: Equation, end_time: f64) -> Self {
        Self {
            equation,
            end_time,
            time_step: TimeStep::Cfl(DEFAULT_CFL),
            scheme: Scheme::ExplicitRk4,
            boundary: Boundary::DirichletZero,
            snapshot_times: Vec::new(),
            norm_samples: DEFAULT_NORM_SAMPLES,
            boundary_tol: DEFAULT_BOUNDARY_TOL,
        }
    }

    pub fn with_time_step(mut self, step: TimeStep) -> Self {
        self.time_step = step;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }

    pub fn with_norm_samples(mut self, samples: usize) -> Self {
        self.norm_samples = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.end_time.is_finite() && self.end_time >= 0.0) {
            return Err(invalid("end_time", format!("must be finite and >= 0, got {}", self.end_time)));
        }
        match self.equation {
            Equation::Similarity { alpha } if !(alpha.is_finite() && alpha > 0.0) => {
                return Err(invalid("alpha", format!("must be finite and > 0, got {alpha}")));
            }
            Equation::Physical(frame) => {
                let horizon = frame.strain.horizon();
                if self.end_time >= horizon {
                    return Err(Error::Horizon {
                        t: self.end_time,
                        horizon,
                    });
                }
            }
            _ => {}
        }
        match self.time_step {
            TimeStep::Fixed(dt) if !(dt.is_finite() && dt > 0.0) => {
                return Err(invalid("dt", format!("must be finite and > 0, got {dt}")));
            }
            TimeStep::Cfl(f) if !(f > 0.0 && f <= 1.0) => {
                return Err(invalid("cfl_factor", format!("must lie in (0, 1], got {f}")));
            }
            _ => {}
        }
        if let Some(&t) = self
            .snapshot_times
            .iter()
            .find(|&&t| !(t.is_finite() && t >= 0.0 && t <= self.end_time))
        {
            return Err(invalid("snapshot_times", format!("{t} lies outside [0, {}]", self.end_time)));
        }
        if self.norm_samples == 1 {
            return Err(invalid("norm_samples", "must be 0 or >= 2"));
        }
        Ok(())
    }

    fn coefficients(&self, t: f64) -> Result<Coefficients> {
        Ok(match self.equation {
            Equation::Similarity { alpha } => Coefficients {
                drift: alpha,
                growth: 1.0,
                diffusion: 1.0,
            },
            Equation::Physical(frame) => {
                let gamma = frame.strain.gamma_at(t)?;
                Coefficients {
                    drift: gamma,
                    growth: gamma,
                    diffusion: frame.nu,
                }
            }
        })
    }

    /// Largest step allowed by the CFL policy on `grid`:
    /// `cfl·min(h²/(2ν_eff), h/max|a|)` for RK4 and `cfl·h/max|a|` for
    /// Crank–Nicolson, with `max|a|` taken over the whole run.
    pub fn max_step(&self, grid: &Grid1D) -> Result<f64> {
        let h = grid.spacing();
        let (drift, diffusion) = match self.equation {
            Equation::Similarity { alpha } => (alpha, 1.0),
            // γ is monotone in t for both strain families
            Equation::Physical(frame) => {
                let end = frame.strain.gamma_at(self.end_time)?;
                (frame.strain.gamma_at(0.0)?.max(end), frame.nu)
            }
        };
        let speed = drift * grid.half_width();
        let advective = if speed > 0.0 { h / speed } else { f64::INFINITY };
        Ok(match (self.time_step, self.scheme) {
            (TimeStep::Fixed(dt), _) => dt,
            (TimeStep::Cfl(f), Scheme::ExplicitRk4) => f * (h * h / (2.0 * diffusion)).min(advective),
            (TimeStep::Cfl(f), Scheme::ImplicitTrapezoidal) => f * advective.min(self.end_time.max(h)),
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Coefficients {
    drift: f64,
    growth: f64,
    diffusion: f64,
}

impl Coefficients {
    /// (lower, diagonal, upper) stencil weights at coordinate x.
    fn stencil(&self, x: f64, h: f64) -> (f64, f64, f64) {
        let d = self.diffusion / (h * h);
        let a = self.drift * x / (2.0 * h);
        (d - a, self.growth - 2.0 * d, d + a)
    }
}

fn apply(coeffs: Coefficients, grid: &Grid1D, u: &[f64], out: &mut [f64]) {
    let n = u.len();
    let h = grid.spacing();
    out[0] = 0.0;
    out[n - 1] = 0.0;
    for i in 1..n - 1 {
        let (lo, di, up) = coeffs.stencil(grid.coord(i), h);
        out[i] = lo * u[i - 1] + di * u[i] + up * u[i + 1];
    }
}

/// Discrete right-hand side of the physical equation at strain rate `gamma`.
/// Boundary rows are zero (the Dirichlet values do not evolve).
pub fn rhs_physical(field: &Field1D, gamma: f64, nu: f64) -> Result<Field1D> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(invalid("gamma", format!("must be finite and > 0, got {gamma}")));
    }
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(invalid("nu", format!("must be finite and > 0, got {nu}")));
    }
    let coeffs = Coefficients {
        drift: gamma,
        growth: gamma,
        diffusion: nu,
    };
    let mut out = vec![0.0; field.values().len()];
    apply(coeffs, field.grid(), field.values(), &mut out);
    Ok(Field1D::from_raw(*field.grid(), out))
}

/// Discrete right-hand side of the similarity equation.
pub fn rhs_similarity(field: &Field1D, alpha: f64) -> Result<Field1D> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid("alpha", format!("must be finite and > 0, got {alpha}")));
    }
    let coeffs = Coefficients {
        drift: alpha,
        growth: 1.0,
        diffusion: 1.0,
    };
    let mut out = vec![0.0; field.values().len()];
    apply(coeffs, field.grid(), field.values(), &mut out);
    Ok(Field1D::from_raw(*field.grid(), out))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSample {
    pub time: f64,
    pub l2: f64,
    pub linf: f64,
}

#[derive(Debug, Clone)]
pub struct Evolution {
    pub field: Field1D,
    pub norms: Vec<NormSample>,
    pub snapshots: Vec<(f64, Field1D)>,
    pub steps: usize,
}

struct Workspace {
    k: [Vec<f64>; 4],
    stage: Vec<f64>,
    // Crank–Nicolson scratch
    rhs: Vec<f64>,
    c_prime: Vec<f64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Self {
            k: [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]],
            stage: vec![0.0; n],
            rhs: vec![0.0; n],
            c_prime: vec![0.0; n],
        }
    }
}

fn rk4_step(spec: &EvolveSpec, grid: &Grid1D, t: f64, dt: f64, u: &mut [f64], ws: &mut Workspace) -> Result<()> {
    let c1 = spec.coefficients(t)?;
    let c2 = spec.coefficients(t + 0.5 * dt)?;
    let c4 = spec.coefficients(t + dt)?;
    let [k1, k2, k3, k4] = &mut ws.k;
    let stage = &mut ws.stage;
    apply(c1, grid, u, k1);
    for ((s, &ui), &k) in stage.iter_mut().zip(u.iter()).zip(k1.iter()) {
        *s = ui + 0.5 * dt * k;
    }
    apply(c2, grid, stage, k2);
    for ((s, &ui), &k) in stage.iter_mut().zip(u.iter()).zip(k2.iter()) {
        *s = ui + 0.5 * dt * k;
    }
    apply(c2, grid, stage, k3);
    for ((s, &ui), &k) in stage.iter_mut().zip(u.iter()).zip(k3.iter()) {
        *s = ui + dt * k;
    }
    apply(c4, grid, stage, k4);
    for i in 0..u.len() {
        u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(())
}

/// `(I − dt/2·A(t+dt)) uⁿ⁺¹ = (I + dt/2·A(t)) uⁿ` with the boundary values
/// fixed, solved by the Thomas algorithm.
fn trapezoidal_step(
    spec: &EvolveSpec,
    grid: &Grid1D,
    t: f64,
    dt: f64,
    u: &mut [f64],
    ws: &mut Workspace,
) -> Result<()> {
    let n = u.len();
    let h = grid.spacing();
    let explicit = spec.coefficients(t)?;
    let implicit = spec.coefficients(t + dt)?;
    let rhs = &mut ws.rhs;
    apply(explicit, grid, u, rhs);
    for i in 1..n - 1 {
        rhs[i] = u[i] + 0.5 * dt * rhs[i];
    }
    let cp = &mut ws.c_prime;
    // forward sweep over interior rows 1..n-1; boundary values known
    let mut prev_cp = 0.0;
    let mut prev_d = 0.0;
    for i in 1..n - 1 {
        let (lo, di, up) = implicit.stencil(grid.coord(i), h);
        let a = -0.5 * dt * lo;
        let b = 1.0 - 0.5 * dt * di;
        let c = -0.5 * dt * up;
        let mut d = rhs[i];
        if i == 1 {
            d -= a * u[0];
        }
        if i == n - 2 {
            d -= c * u[n - 1];
        }
        let (a_eff, cp_prev, d_prev) = if i == 1 { (0.0, 0.0, 0.0) } else { (a, prev_cp, prev_d) };
        let denom = b - a_eff * cp_prev;
        if denom == 0.0 || !denom.is_finite() {
            return Err(Error::Numeric("singular Crank–Nicolson system".into()));
        }
        prev_cp = if i == n - 2 { 0.0 } else { c / denom };
        prev_d = (d - a_eff * d_prev) / denom;
        cp[i] = prev_cp;
        rhs[i] = prev_d;
    }
    u[n - 2] = rhs[n - 2];
    for i in (1..n - 2).rev() {
        u[i] = rhs[i] - cp[i] * u[i + 1];
    }
    Ok(())
}

fn output_times(spec: &EvolveSpec) -> Vec<f64> {
    let end = spec.end_time;
    let mut times: Vec<f64> = Vec::new();
    if spec.norm_samples >= 2 {
        let m = spec.norm_samples - 1;
        times.extend((0..=m).map(|i| if i == m { end } else { end * i as f64 / m as f64 }));
    }
    times.extend(spec.snapshot_times.iter().copied());
    times.push(end);
    times.sort_by(f64::total_cmp);
    let eps = 1e-12 * end.max(1.0);
    times.dedup_by(|b, a| (*b - *a).abs() <= eps);
    times
}

/// Integrates `initial` from time 0 to `spec.end_time`.
pub fn evolve(initial: &Field1D, spec: &EvolveSpec) -> Result<Evolution> {
    spec.validate()?;
    let grid = *initial.grid();
    let mut u = initial.values().to_vec();
    let n = u.len();
    if spec.boundary == Boundary::DirichletZero {
        let limit = spec.boundary_tol * initial.max_abs();
        let edge = u[0].abs().max(u[n - 1].abs());
        if edge > limit {
            return Err(invalid(
                "initial",
                format!("boundary values ({edge:e}) exceed {limit:e}; data does not vanish at ±L"),
            ));
        }
        u[0] = 0.0;
        u[n - 1] = 0.0;
    }
    let max_dt = spec.max_step(&grid)?;
    let mut ws = Workspace::new(n);
    let eps = 1e-12 * spec.end_time.max(1.0);
    let wants_norm = |t: f64| {
        spec.norm_samples >= 2 && {
            let m = (spec.norm_samples - 1) as f64;
            let k = (t / spec.end_time * m).round();
            spec.end_time == 0.0 || (t - spec.end_time * k / m).abs() <= eps || (t - spec.end_time).abs() <= eps
        }
    };
    let wants_snapshot = |t: f64| spec.snapshot_times.iter().any(|&s| (s - t).abs() <= eps);

    let mut norms = Vec::new();
    let mut snapshots = Vec::new();
    let record = |t: f64, u: &[f64], norms: &mut Vec<NormSample>, snapshots: &mut Vec<(f64, Field1D)>| {
        let field = Field1D::from_raw(grid, u.to_vec());
        if wants_norm(t) {
            norms.push(NormSample {
                time: t,
                l2: field.l2_norm(),
                linf: field.max_abs(),
            });
        }
        if wants_snapshot(t) {
            snapshots.push((t, field));
        }
    };

    let mut t = 0.0;
    let mut steps = 0usize;
    for target in output_times(spec) {
        let span = target - t;
        if span > eps {
            let count = (span / max_dt - 1e-9).ceil().max(1.0) as usize;
            let dt = span / count as f64;
            for k in 0..count {
                let t_k = t + dt * k as f64;
                match spec.scheme {
                    Scheme::ExplicitRk4 => rk4_step(spec, &grid, t_k, dt, &mut u, &mut ws)?,
                    Scheme::ImplicitTrapezoidal => trapezoidal_step(spec, &grid, t_k, dt, &mut u, &mut ws)?,
                }
                steps += 1;
                if !u.iter().all(|v| v.is_finite()) {
                    return Err(Error::Instability {
                        step: steps,
                        time: t_k + dt,
                    });
                }
            }
        }
        t = target;
        record(t, &u, &mut norms, &mut snapshots);
    }

    Ok(Evolution {
        field: Field1D::from_raw(grid, u),
        norms,
        snapshots,
        steps,
    })
}
