use crate::error::{Error, Result};

/// Physicists' Hermite polynomial Hₙ(z) by the upward three-term recurrence
/// `H_{k+1} = 2zH_k − 2kH_{k−1}`.
pub fn hermite(n: usize, z: f64) -> Result<f64> {
    let (mut prev, mut cur) = (1.0, 2.0 * z);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow { context: "hermite" })
    }
}

const RESCALE: f64 = 1e150;

/// e^{−z²/2}·Hₙ(z).
///
/// The recurrence runs on rescaled values with the Gaussian factor and the
/// accumulated rescalings kept in a separate log, so neither the polynomial
/// nor the exponential overflows or underflows on the way.
pub fn hermite_function(n: usize, z: f64) -> f64 {
    let mut log_scale = -0.5 * z * z;
    if n == 0 {
        return log_scale.exp();
    }
    let (mut prev, mut cur) = (1.0, 2.0 * z);
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    if cur == 0.0 {
        return 0.0;
    }
    cur.signum() * (cur.abs().ln() + log_scale).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    /// Explicit expansion Hₙ(z) = n! Σ_m (−1)^m (2z)^{n−2m} / (m!(n−2m)!).
    fn hermite_explicit(n: usize, z: f64) -> f64 {
        let fact = |k: usize| (1..=k).fold(1.0, |acc, i| acc * i as f64);
        (0..=n / 2)
            .map(|m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                sign * fact(n) / (fact(m) * fact(n - 2 * m)) * (2.0 * z).powi((n - 2 * m) as i32)
            })
            .sum()
    }

    /// Exact Hₙ(z) for integer z.
    fn hermite_bigint(n: usize, z: i64) -> BigInt {
        let two_z = BigInt::from(2 * z);
        let (mut prev, mut cur) = (BigInt::from(1), two_z.clone());
        if n == 0 {
            return prev;
        }
        for k in 1..n {
            let next = &two_z * &cur - BigInt::from(2 * k as i64) * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    fn ln_abs_bigint(v: &BigInt) -> f64 {
        let digits = v.magnitude().to_string();
        let lead: f64 = digits[..digits.len().min(17)].parse().unwrap();
        lead.ln() + (digits.len().saturating_sub(17)) as f64 * std::f64::consts::LN_10
    }

    #[test]
    fn low_order_values() {
        assert_eq!(hermite(0, 3.7).unwrap(), 1.0);
        assert_eq!(hermite(1, 2.0).unwrap(), 4.0);
        assert_eq!(hermite(2, 1.0).unwrap(), 2.0);
        assert_eq!(hermite_explicit(2, 1.0), 2.0);
    }

    #[test]
    fn recurrence_matches_explicit_expansion() {
        for n in 0..15 {
            for i in -20..=20 {
                let z = i as f64 * 0.15;
                let a = hermite(n, z).unwrap();
                let b = hermite_explicit(n, z);
                assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "n={n} z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn three_term_identity() {
        for n in 1..30 {
            for i in -10..=10 {
                let z = i as f64 * 0.41;
                let lhs = hermite(n + 1, z).unwrap();
                let rhs = 2.0 * z * hermite(n, z).unwrap() - 2.0 * n as f64 * hermite(n - 1, z).unwrap();
                let scale = lhs.abs().max((2.0 * z * hermite(n, z).unwrap()).abs()).max(1.0);
                assert!((lhs - rhs).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(hermite(400, 30.0), Err(Error::Overflow { .. })));
    }

    #[test]
    fn hermite_function_small_values() {
        assert_eq!(hermite_function(0, 0.0), 1.0);
        let expected = 2.0 * (-0.5f64).exp();
        assert!((hermite_function(1, 1.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn hermite_function_matches_product_where_finite() {
        for n in 0..40 {
            for i in -30..=30 {
                let z = i as f64 * 0.2;
                let direct = hermite(n, z).unwrap();
                let scaled = hermite_function(n, z) * (0.5 * z * z).exp();
                assert!(
                    (scaled - direct).abs() <= 1e-10 * direct.abs().max(1e-300),
                    "n={n} z={z}: {scaled} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn large_arguments_stay_finite() {
        let v = hermite_function(50, 25.0);
        let exact = hermite_bigint(50, 25);
        let log_oracle = ln_abs_bigint(&exact) - 0.5 * 625.0;
        assert!(v.is_finite() && v.abs() < 1.0);
        assert!((v.abs().ln() - log_oracle).abs() < 1e-12 * log_oracle.abs());
        assert!(v > 0.0);

        let v = hermite_function(200, 30.0);
        let log_oracle = ln_abs_bigint(&hermite_bigint(200, 30)) - 450.0;
        assert!(v.is_finite());
        assert!((v.abs().ln() - log_oracle).abs() < 1e-12 * log_oracle.abs());

        let v = hermite_function(200, -29.0);
        let exact = hermite_bigint(200, -29);
        assert!((v.abs().ln() - (ln_abs_bigint(&exact) - 420.5)).abs() < 1e-10);
    }
}
