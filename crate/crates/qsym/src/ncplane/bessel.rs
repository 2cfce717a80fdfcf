//! Modified Bessel functions of quarter order.
//!
//! `I_nu` is evaluated by its ascending power series for `u <= 15` (the
//! terms are all positive, so there is no cancellation) and by the standard
//! asymptotic expansion beyond. `K_nu` is the classical combination
//! `pi (I_{-nu} - I_nu) / (2 sin(nu pi))` while the cancellation is benign
//! (`u <= 5`) and the `cosh` integral representation afterwards, evaluated
//! by a trapezoid rule whose error decays faster than any power of the step
//! for this even, exponentially clipped integrand.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BesselError {
    #[error("argument must be positive, got {u}")]
    NonPositiveArgument { u: f64 },
}

/// Which modified Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    I,
    K,
}

const GAMMA_QUARTER: f64 = 3.625_609_908_221_908_3; // Gamma(1/4)
const GAMMA_HALF: f64 = 1.772_453_850_905_516; // Gamma(1/2) = sqrt(pi)
const GAMMA_THREE_QUARTER: f64 = 1.225_416_702_465_177_6; // Gamma(3/4)

/// `Gamma(k/4)` for integer `k != 0, -4, -8, ...`, by recurrence from the
/// seeds in `(0, 1]`.
fn gamma_quarters(k: i64) -> f64 {
    assert!(k % 4 != 0 || k > 0, "Gamma pole at {}", k as f64 / 4.0);
    let mut x = k as f64 / 4.0;
    let mut factor = 1.0;
    while x > 1.0 {
        x -= 1.0;
        factor *= x;
    }
    while x <= 0.0 {
        factor /= x;
        x += 1.0;
    }
    let seed = match (x * 4.0).round() as i64 {
        1 => GAMMA_QUARTER,
        2 => GAMMA_HALF,
        3 => GAMMA_THREE_QUARTER,
        4 => 1.0,
        other => unreachable!("non-quarter seed {other}"),
    };
    factor * seed
}

/// Ascending series `I_nu(u) = sum_m (u/2)^{2m+nu} / (m! Gamma(m+nu+1))`
/// for quarter-integer `nu`.
fn bessel_i_series(nu4: i64, u: f64) -> f64 {
    let nu = nu4 as f64 / 4.0;
    let half = u / 2.0;
    let mut term = half.powf(nu) / gamma_quarters(nu4 + 4);
    let quarter = half * half;
    let mut sum = term;
    let mut m = 0.0;
    loop {
        term *= quarter / ((m + 1.0) * (m + 1.0 + nu));
        sum += term;
        m += 1.0;
        if term.abs() < sum.abs() * 1e-17 || m > 500.0 {
            return sum;
        }
    }
}

/// Asymptotic expansion `I_nu(u) ~ e^u / sqrt(2 pi u) sum_k (-1)^k a_k / u^k`
/// with `a_k = prod_j (4 nu^2 - (2j-1)^2) / (k! 8^k)`, truncated at the
/// smallest term.
fn bessel_i_asymptotic(nu4: i64, u: f64) -> f64 {
    let nu = nu4 as f64 / 4.0;
    let mu = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        term *= -(mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * u * kf);
        if term.abs() > prev {
            break; // divergent tail reached; stop at the smallest term
        }
        sum += term;
        prev = term.abs();
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    u.exp() / (2.0 * PI * u).sqrt() * sum
}

/// `I_nu(u)` for quarter-integer order `nu = nu4/4`.
pub fn bessel_i(nu4: i64, u: f64) -> f64 {
    if u <= 15.0 {
        bessel_i_series(nu4, u)
    } else {
        bessel_i_asymptotic(nu4, u)
    }
}

/// `K_nu(u)` by the reflection combination (small `u`) or the integral
/// `int_0^inf e^{-u cosh t} cosh(nu t) dt` (larger `u`). The switch sits at
/// `u = 2`: beyond that the reflection difference cancels like `e^{2u}`
/// epsilons and would put a noise floor on downstream second differences.
pub fn bessel_k(nu4: i64, u: f64) -> f64 {
    let nu4 = nu4.abs(); // K is even in its order
    if u <= 2.0 {
        let nu = nu4 as f64 / 4.0;
        PI * (bessel_i(-nu4, u) - bessel_i(nu4, u)) / (2.0 * (nu * PI).sin())
    } else {
        bessel_k_integral(nu4 as f64 / 4.0, u)
    }
}

fn bessel_k_integral(nu: f64, u: f64) -> f64 {
    // clip where e^{-u cosh t} is below 1e-24 relative to the t = 0 value
    let t_max = (1.0 + 56.0 / u).acosh();
    let n = 800usize;
    let h = t_max / n as f64;
    let f = |t: f64| (-u * t.cosh()).exp() * (nu * t).cosh();
    let mut acc = 0.5 * (f(0.0) + f(t_max));
    for i in 1..n {
        acc += f(i as f64 * h);
    }
    acc * h
}

/// The spec'd entry point: `I_{1/4}` or `K_{1/4}` at `u > 0`.
pub fn bessel_quarter(kind: BesselKind, u: f64) -> Result<f64, BesselError> {
    if u <= 0.0 {
        return Err(BesselError::NonPositiveArgument { u });
    }
    Ok(match kind {
        BesselKind::I => bessel_i(1, u),
        BesselKind::K => bessel_k(1, u),
    })
}

/// Value, first, and second derivative of `B_{1/4}` at `u`, all from the
/// standard order-shift recurrences (no use of the defining ODE).
pub fn bessel_quarter_d2(kind: BesselKind, u: f64) -> Result<(f64, f64, f64), BesselError> {
    if u <= 0.0 {
        return Err(BesselError::NonPositiveArgument { u });
    }
    let nu = 0.25f64;
    match kind {
        BesselKind::I => {
            let b = bessel_i(1, u);
            let b1 = bessel_i(5, u); // I_{5/4}
            let b2 = bessel_i(9, u); // I_{9/4}
            // I' = I_{nu+1} + (nu/u) I_nu
            let d1 = b1 + nu / u * b;
            // I'' = I'_{nu+1} - (nu/u^2) I_nu + (nu/u) I'_nu
            let d1_next = b2 + (nu + 1.0) / u * b1;
            let d2 = d1_next - nu / (u * u) * b + nu / u * d1;
            Ok((b, d1, d2))
        }
        BesselKind::K => {
            let b = bessel_k(1, u);
            let b1 = bessel_k(5, u); // K_{5/4}
            let b2 = bessel_k(9, u); // K_{9/4}
            // K' = (nu/u) K_nu - K_{nu+1}
            let d1 = nu / u * b - b1;
            let d1_next = (nu + 1.0) / u * b1 - b2;
            let d2 = -nu / (u * u) * b + nu / u * d1 - d1_next;
            Ok((b, d1, d2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_recurrence() {
        assert!((gamma_quarters(4) - 1.0).abs() < 1e-15);
        assert!((gamma_quarters(8) - 1.0).abs() < 1e-15); // Gamma(2) = 1
        assert!((gamma_quarters(5) - GAMMA_QUARTER / 4.0).abs() < 1e-15);
        assert!((gamma_quarters(-1) + 4.0 * GAMMA_THREE_QUARTER).abs() < 1e-12);
        // Gamma(1/4) Gamma(3/4) = pi / sin(pi/4) = pi sqrt(2)
        let product = gamma_quarters(1) * gamma_quarters(3);
        assert!((product - PI * 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn small_u_leading_term() {
        // I_{1/4}(u) ~ (u/2)^{1/4} / Gamma(5/4) as u -> 0+
        let u = 1e-4;
        let lead = (u / 2.0f64).powf(0.25) / gamma_quarters(5);
        let ratio = bessel_quarter(BesselKind::I, u).unwrap() / lead;
        assert!((ratio - 1.0).abs() < 1e-6, "ratio {ratio}");
    }

    #[test]
    fn wronskian() {
        // I_nu(u) K_nu'(u) - I_nu'(u) K_nu(u) = -1/u
        for &u in &[0.5, 2.0, 10.0] {
            let (i, di, _) = bessel_quarter_d2(BesselKind::I, u).unwrap();
            let (k, dk, _) = bessel_quarter_d2(BesselKind::K, u).unwrap();
            let w = i * dk - di * k;
            assert!(
                (w + 1.0 / u).abs() < 1e-9,
                "Wronskian off at u={u}: {w} vs {}",
                -1.0 / u
            );
        }
    }

    #[test]
    fn large_u_asymptotics() {
        // I_{1/4}(u) sqrt(2 pi u) e^{-u} approaches 1; at u = 30 the first
        // asymptotic correction -(4 nu^2 - 1)/(8u) = +3.125e-3 is still
        // visible, so the 1e-4 comparison is made against the two-term form
        let u = 30.0;
        let scaled = bessel_quarter(BesselKind::I, u).unwrap() * (2.0 * PI * u).sqrt() * (-u).exp();
        let two_term = 1.0 - (4.0 * 0.25f64.powi(2) - 1.0) / (8.0 * u);
        assert!((scaled - two_term).abs() < 1e-4, "scaled {scaled}");
        assert!((scaled - 1.0).abs() < 4e-3, "leading order sanity");
    }

    #[test]
    fn ode_residual_relative() {
        // u^2 B'' + u B' - (u^2 + 1/16) B = 0 within 1e-9 relative
        for kind in [BesselKind::I, BesselKind::K] {
            let mut u = 0.1;
            while u <= 20.0 {
                let (b, d1, d2) = bessel_quarter_d2(kind, u).unwrap();
                let residual = u * u * d2 + u * d1 - (u * u + 1.0 / 16.0) * b;
                let scale = (u * u * d2).abs().max((u * d1).abs()).max(
                    ((u * u + 1.0 / 16.0) * b).abs(),
                );
                assert!(
                    (residual / scale).abs() < 1e-9,
                    "{kind:?} at u={u}: rel {}",
                    residual / scale
                );
                u *= 1.27;
            }
        }
    }

    #[test]
    fn continuity_across_method_switches() {
        // the I series/asymptotic switch at 15 and the K difference/integral
        // switch at 5 must agree to ~1e-11 relative
        let i_lo = bessel_i_series(1, 15.0);
        let i_hi = bessel_i_asymptotic(1, 15.0);
        assert!(((i_lo - i_hi) / i_lo).abs() < 1e-11);

        let nu = 0.25;
        let k_lo = PI * (bessel_i(-1, 2.0) - bessel_i(1, 2.0)) / (2.0 * (nu * PI).sin());
        let k_hi = bessel_k_integral(nu, 2.0);
        assert!(((k_lo - k_hi) / k_lo).abs() < 1e-11);
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(matches!(
            bessel_quarter(BesselKind::I, 0.0),
            Err(BesselError::NonPositiveArgument { .. })
        ));
        assert!(bessel_quarter(BesselKind::K, -1.0).is_err());
    }
}
