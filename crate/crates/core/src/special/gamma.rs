use std::f64::consts::PI;

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // reduce to r ∈ [-1, 1]
    let r = x - 2.0 * (x / 2.0).round();
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    (PI * r).sin()
}

/// 1/Γ(x), entire: returns 0 at the poles x = 0, −1, −2, …
pub fn recip_gamma(x: f64) -> f64 {
    if x >= 0.5 {
        1.0 / statrs::function::gamma::gamma(x)
    } else {
        // reflection: 1/Γ(x) = sin(πx) Γ(1 − x) / π
        sin_pi(x) * statrs::function::gamma::gamma(1.0 - x) / PI
    }
}
