//! Parabolic cylinder function D_ν(z) for real ν and real z.
//!
//! D_ν solves the Weber equation `u″ = (z²/4 − ν − 1/2)u` and is the
//! solution recessive as z → +∞. Everything here is built from local Taylor
//! expansions of that equation:
//!
//! * near the origin the expansion about z = 0 is seeded with the closed-form
//!   values D_ν(0) = √π 2^{ν/2}/Γ((1−ν)/2) and
//!   D′_ν(0) = −√π 2^{(ν+1)/2}/Γ(−ν/2);
//! * for z < −[`NEGATIVE_RADIUS`] the origin values are marched outward, the
//!   direction in which D_ν grows, so the marching is stable;
//! * for z > [`POSITIVE_HANDOFF`] the recessive branch cannot be marched
//!   outward (any error excites the e^{+z²/4} solution). Instead it is seeded
//!   far out from the asymptotic expansion and marched inward.
//!
//! The two routes overlap everywhere, which gives an independent check of
//! either one (see [`ParabolicCylinder::handoff_report`]).
//!
//! Marching uses fixed anchors `start ± k·STEP`, so an evaluation at z only
//! depends on the final partial step; the evaluator is smooth enough to be
//! finite-differenced.

use crate::error::{invalid, Error, Result};

use super::gamma::recip_gamma;

/// Largest |z| accepted.
pub const MAX_ARGUMENT: f64 = 40.0;
/// The origin expansion covers `[-NEGATIVE_RADIUS, POSITIVE_HANDOFF]`. Beyond
/// |z| ≈ 2 cancellation between series terms shows up as noise of order
/// 1e-13 that finite differences amplify; short Taylor steps avoid it.
pub const NEGATIVE_RADIUS: f64 = 2.0;
/// Above this the inward route from the asymptotic seed is used. The origin
/// expansion loses about e^{z²/2} relative accuracy on the recessive side, so
/// the handoff sits well inside the series radius.
pub const POSITIVE_HANDOFF: f64 = 2.0;

const STEP: f64 = 0.25;
const MAX_TERMS: usize = 400;
const SERIES_EPS: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Taylor expansion about z = 0.
    OriginSeries,
    /// Origin values marched outward to negative z.
    InteriorOutward,
    /// Asymptotic seed marched inward.
    ExteriorInward,
    /// Asymptotic expansion evaluated at z itself.
    Asymptotic,
    /// `D_n(z) = (−1)ⁿ D_n(−z)` for nonnegative integer order.
    Reflection,
}

/// Agreement between the origin and exterior routes at the handoff point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HandoffReport {
    pub nu: f64,
    pub handoff: f64,
    pub origin_route: f64,
    pub exterior_route: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

/// Evaluator of D_ν for a fixed order.
#[derive(Debug, Clone, Copy)]
pub struct ParabolicCylinder {
    nu: f64,
    a: f64,
    origin: (f64, f64),
    far: f64,
    seed: (f64, f64),
    integer_order: Option<u32>,
}

impl ParabolicCylinder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() {
            return Err(invalid("nu", format!("order must be finite, got {nu}")));
        }
        let a = nu + 0.5;
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let origin = (
            sqrt_pi * 2f64.powf(0.5 * nu) * recip_gamma(0.5 * (1.0 - nu)),
            -sqrt_pi * 2f64.powf(0.5 * (nu + 1.0)) * recip_gamma(-0.5 * nu),
        );
        let far = (12.0 + 2.0 * nu.abs().sqrt()).min(MAX_ARGUMENT);
        let seed = asymptotic(nu, far)?;
        let integer_order = (nu >= 0.0 && nu.fract() == 0.0 && nu <= u32::MAX as f64).then_some(nu as u32);
        Ok(Self {
            nu,
            a,
            origin,
            far,
            seed,
            integer_order,
        })
    }

    pub fn order(&self) -> f64 {
        self.nu
    }

    /// (D_ν(0), D′_ν(0)).
    pub fn origin_values(&self) -> (f64, f64) {
        self.origin
    }

    pub fn method(&self, z: f64) -> Method {
        if z < 0.0 && self.integer_order.is_some() && z < -POSITIVE_HANDOFF {
            Method::Reflection
        } else if z < -NEGATIVE_RADIUS {
            Method::InteriorOutward
        } else if z <= POSITIVE_HANDOFF {
            Method::OriginSeries
        } else if z < self.far {
            Method::ExteriorInward
        } else {
            Method::Asymptotic
        }
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        Ok(self.eval_with_derivative(z)?.0)
    }

    /// (D_ν(z), D′_ν(z)).
    pub fn eval_with_derivative(&self, z: f64) -> Result<(f64, f64)> {
        if !(z.is_finite() && z.abs() <= MAX_ARGUMENT) {
            return Err(invalid("z", format!("|z| must be <= {MAX_ARGUMENT}, got {z}")));
        }
        Ok(match self.method(z) {
            Method::Reflection => {
                let (u, du) = self.exterior_route(-z)?;
                let sign = if self.integer_order.unwrap_or(0).is_multiple_of(2) { 1.0 } else { -1.0 };
                (sign * u, -sign * du)
            }
            Method::InteriorOutward | Method::OriginSeries => self.origin_route(z),
            Method::ExteriorInward => self.exterior_route(z)?,
            Method::Asymptotic => asymptotic(self.nu, z)?,
        })
    }

    /// D_ν via the origin values, marched outward when |z| exceeds the
    /// series radius. Accurate on the negative axis and near the origin.
    pub fn origin_route(&self, z: f64) -> (f64, f64) {
        if z.abs() <= NEGATIVE_RADIUS {
            return taylor_step(self.a, 0.0, self.origin, z);
        }
        let start = NEGATIVE_RADIUS.copysign(z);
        let state = taylor_step(self.a, 0.0, self.origin, start);
        march(self.a, start, state, z)
    }

    /// D_ν via the asymptotic seed, marched inward. Accurate for z ≥ 0.
    pub fn exterior_route(&self, z: f64) -> Result<(f64, f64)> {
        if z >= self.far {
            return asymptotic(self.nu, z);
        }
        Ok(march(self.a, self.far, self.seed, z))
    }

    pub fn handoff_report(&self) -> Result<HandoffReport> {
        let handoff = POSITIVE_HANDOFF;
        let origin_route = self.origin_route(handoff).0;
        let exterior_route = self.exterior_route(handoff)?.0;
        let abs_diff = (origin_route - exterior_route).abs();
        Ok(HandoffReport {
            nu: self.nu,
            handoff,
            origin_route,
            exterior_route,
            abs_diff,
            rel_diff: abs_diff / exterior_route.abs().max(f64::MIN_POSITIVE),
        })
    }
}

/// D_ν(z).
pub fn parabolic_cylinder_d(nu: f64, z: f64) -> Result<f64> {
    ParabolicCylinder::new(nu)?.eval(z)
}

/// Steps from `start` toward `target` over anchors `start ± k·STEP`.
fn march(a: f64, start: f64, mut state: (f64, f64), target: f64) -> (f64, f64) {
    let dir = if target >= start { 1.0 } else { -1.0 };
    let full = ((target - start).abs() / STEP).floor() as usize;
    let mut z = start;
    for k in 0..full {
        let next = start + dir * STEP * (k + 1) as f64;
        state = taylor_step(a, z, state, next - z);
        z = next;
    }
    if target != z {
        state = taylor_step(a, z, state, target - z);
    }
    state
}

/// Advances (u, u′) from z0 by `t` using the Taylor expansion of
/// `u″ = (z²/4 − a)u` about z0.
fn taylor_step(a: f64, z0: f64, (u, du): (f64, f64), t: f64) -> (f64, f64) {
    // q(z0 + t) = q0 + q1 t + q2 t²
    let q0 = 0.25 * z0 * z0 - a;
    let q1 = 0.5 * z0;
    let q2 = 0.25;
    // c[k-2], c[k-1], c[k], c[k+1]
    let (mut cm2, mut cm1, mut c0, mut c1) = (0.0, 0.0, u, du);
    let mut sum = u + du * t;
    let mut dsum = du;
    let mut tk = t; // t^{k+1}
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let c2 = (q0 * c0 + q1 * cm1 + q2 * cm2) / ((kf + 1.0) * (kf + 2.0));
        let dterm = (kf + 2.0) * c2 * tk;
        tk *= t;
        let term = c2 * tk;
        sum += term;
        dsum += dterm;
        if term.abs() <= SERIES_EPS * sum.abs() && dterm.abs() <= SERIES_EPS * dsum.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        cm2 = cm1;
        cm1 = c0;
        c0 = c1;
        c1 = c2;
    }
    (sum, dsum)
}

/// Large-z expansion
/// `D_ν(z) ~ e^{−z²/4} z^ν Σ_s (−1)^s (−ν)_{2s} / (s! (2z²)^s)`
/// and its termwise derivative.
fn asymptotic(nu: f64, z: f64) -> Result<(f64, f64)> {
    let inv = 1.0 / (2.0 * z * z);
    let mut term = 1.0;
    let mut sum = 1.0;
    // Σ −2s t_s z^{−2s−1}
    let mut dsum = 0.0;
    let mut prev_abs = f64::INFINITY;
    let mut converged = false;
    for s in 1..MAX_TERMS {
        let sf = s as f64;
        term *= -(nu - 2.0 * sf + 2.0) * (nu - 2.0 * sf + 1.0) * inv / sf;
        if term == 0.0 {
            converged = true;
            break;
        }
        if term.abs() > prev_abs {
            break;
        }
        sum += term;
        dsum += -2.0 * sf * term / z;
        prev_abs = term.abs();
        if term.abs() <= SERIES_EPS * sum.abs() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Accuracy {
            context: "parabolic cylinder asymptotic seed",
            target: SERIES_EPS,
            achieved: prev_abs / sum.abs(),
        });
    }
    let envelope = (-0.25 * z * z + nu * z.ln()).exp();
    let u = envelope * sum;
    let du = envelope * ((nu / z - 0.5 * z) * sum + dsum);
    Ok((u, du))
}
