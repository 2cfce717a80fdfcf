//! q-calculus core: the deformation parameter, symmetric q-numbers, the
//! q-derivative, the Jackson q-integral, and the q-exponential.
//!
//! A single q-number convention is used repository-wide: the symmetric
//! `[n] = (q^n - q^{-n}) / (q - q^{-1})`, which in unimodular mode
//! `q = e^{is}` equals `sin(s n) / sin(s)`. Limits at `q = 1` and `q = -1`
//! are taken analytically rather than by small-epsilon evaluation.

use num_complex::Complex64;
use thiserror::Error;

use crate::series::TruncatedSeries;

/// Tolerance used for root-of-unity and degeneracy detection.
pub const DEFORMATION_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum QcoreError {
    #[error("Jackson q-integral requires |q| < 1 strictly, got |q| = {modulus}")]
    NonConvergent { modulus: f64 },
    #[error("degenerate deformation: [{n}] vanishes for this q")]
    DegenerateDeformation { n: usize },
}

/// The deformation parameter.
///
/// `Unimodular { s }` stores the phase of `q = e^{is}` so that powers and
/// q-numbers stay on the unit circle exactly; `General { q }` is an arbitrary
/// nonzero complex (or real) deformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Deformation {
    Unimodular { s: f64 },
    General { q: Complex64 },
}

impl Deformation {
    pub fn unimodular(s: f64) -> Self {
        Deformation::Unimodular { s }
    }

    pub fn general(q: Complex64) -> Self {
        assert!(q.norm() > 0.0, "deformation parameter must be nonzero");
        Deformation::General { q }
    }

    /// Real deformation `q = e^s` (the convention of real-mode sweeps).
    pub fn real_exp(s: f64) -> Self {
        Deformation::General {
            q: Complex64::new(s.exp(), 0.0),
        }
    }

    pub fn classical() -> Self {
        Deformation::General { q: Complex64::ONE }
    }

    pub fn q(&self) -> Complex64 {
        match self {
            Deformation::Unimodular { s } => Complex64::from_polar(1.0, *s),
            Deformation::General { q } => *q,
        }
    }

    /// `q^n` for real exponent `n`. In unimodular mode this is `e^{isn}`,
    /// which tracks the continuous power along the circle; in general mode
    /// the principal branch is used for non-integer exponents.
    pub fn qpow(&self, n: f64) -> Complex64 {
        match self {
            Deformation::Unimodular { s } => Complex64::from_polar(1.0, s * n),
            Deformation::General { q } => {
                if n == 0.0 {
                    Complex64::ONE
                } else if n.fract() == 0.0 && n.abs() < 1e9 {
                    self.qpow_int(n as i64)
                } else {
                    q.powf(n)
                }
            }
        }
    }

    /// `q^n` for integer exponent.
    pub fn qpow_int(&self, n: i64) -> Complex64 {
        match self {
            Deformation::Unimodular { s } => Complex64::from_polar(1.0, s * n as f64),
            Deformation::General { q } => q.powi(n as i32),
        }
    }

    pub fn modulus(&self) -> f64 {
        match self {
            Deformation::Unimodular { .. } => 1.0,
            Deformation::General { q } => q.norm(),
        }
    }

    pub fn is_one(&self) -> bool {
        (self.q() - Complex64::ONE).norm() <= DEFORMATION_TOL
    }

    pub fn is_minus_one(&self) -> bool {
        (self.q() + Complex64::ONE).norm() <= DEFORMATION_TOL
    }

    /// True iff `q^n = 1` within [`DEFORMATION_TOL`].
    pub fn is_root_of_unity(&self, n: u32) -> bool {
        (self.qpow_int(i64::from(n)) - Complex64::ONE).norm() <= DEFORMATION_TOL
    }
}

/// Symmetric q-number `[n] = (q^n - q^{-n}) / (q - q^{-1})`.
///
/// At `q = 1` the analytic limit `n` is returned; at `q = -1` the limit of
/// `sin(sn)/sin(s)` as `s -> pi`, which is `(-1)^{n+1} n` for integer `n`.
pub fn qnumber(n: f64, d: &Deformation) -> Complex64 {
    if d.is_one() {
        return Complex64::new(n, 0.0);
    }
    match d {
        Deformation::Unimodular { s } => {
            let sin_s = s.sin();
            let sin_sn = (s * n).sin();
            if sin_s.abs() <= DEFORMATION_TOL {
                // s at a multiple of pi. If the numerator vanishes too the
                // ratio has the finite limit n cos(sn)/cos(s); otherwise the
                // ratio genuinely diverges and we return it as computed.
                if sin_sn.abs() <= 1e-9 {
                    return Complex64::new(n * (s * n).cos() / s.cos(), 0.0);
                }
            }
            Complex64::new(sin_sn / sin_s, 0.0)
        }
        Deformation::General { .. } => {
            if d.is_minus_one() && (n - n.round()).abs() <= 1e-9 {
                let ni = n.round() as i64;
                let sign = if ni.rem_euclid(2) == 0 { -1.0 } else { 1.0 };
                return Complex64::new(sign * n, 0.0);
            }
            let qn = d.qpow(n);
            (qn - qn.inv()) / (d.q() - d.q().inv())
        }
    }
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
///
/// Errors when some `[m]`, `1 <= m <= n`, vanishes (q a small root of unity).
pub fn qfactorial(n: usize, d: &Deformation) -> Result<Complex64, QcoreError> {
    let mut acc = Complex64::ONE;
    for m in 1..=n {
        let qm = qnumber(m as f64, d);
        if qm.norm() <= DEFORMATION_TOL {
            return Err(QcoreError::DegenerateDeformation { n: m });
        }
        acc *= qm;
    }
    Ok(acc)
}

/// Symmetric q-derivative `D_q f(x) = (f(qx) - f(q^{-1}x)) / ((q - q^{-1}) x)`,
/// implemented term-wise as `x^n -> [n] x^{n-1}`. At `q = 1` this is the
/// ordinary derivative.
pub fn q_derivative(f: &TruncatedSeries, d: &Deformation) -> TruncatedSeries {
    assert_eq!(f.nvars(), 1, "q-derivative is defined for 1-variable series");
    let order = f.order().saturating_sub(1);
    let terms = f.terms().filter(|(e, _)| e[0] > 0).map(|(e, c)| {
        let n = e[0] as usize;
        ([(n - 1) as u16, 0, 0], c * qnumber(n as f64, d))
    });
    TruncatedSeries::from_terms(1, order, terms.collect::<Vec<_>>())
}

/// Closed-form coefficient of the Jackson q-integral on `x^{k-1}`:
/// the monomial maps to `(q^{-1} - q) q^k / (1 - q^{2k}) x^k`, which is the
/// summed geometric series of the defining sum.
pub fn jackson_monomial_factor(k: usize, d: &Deformation) -> Complex64 {
    let q = d.q();
    let qk = d.qpow_int(k as i64);
    (q.inv() - q) * qk / (Complex64::ONE - qk * qk)
}

/// Jackson q-integral of a 1-variable series, term-wise closed form.
///
/// Requires `|q| < 1` strictly for the defining sum to converge. The result
/// order is one higher than the input order (integration raises degree).
pub fn jackson_integral(
    f: &TruncatedSeries,
    d: &Deformation,
) -> Result<TruncatedSeries, QcoreError> {
    assert_eq!(f.nvars(), 1);
    let modulus = d.modulus();
    if modulus >= 1.0 {
        return Err(QcoreError::NonConvergent { modulus });
    }
    let order = f.order() + 1;
    let terms: Vec<_> = f
        .terms()
        .map(|(e, c)| {
            let k = e[0] as usize + 1;
            ([k as u16, 0, 0], c * jackson_monomial_factor(k, d))
        })
        .collect();
    Ok(TruncatedSeries::from_terms(1, order, terms))
}

/// Evaluate the Jackson integral at a point by its defining partial sum
/// `(q^{-1} - q) x sum_n q^{2n+1} f(q^{2n+1} x)`, truncating once the
/// geometric tail bound drops below `tail_tol`. Returns the value and the
/// number of terms used.
pub fn jackson_partial_sum(
    f: &TruncatedSeries,
    d: &Deformation,
    x: Complex64,
    tail_tol: f64,
) -> Result<(Complex64, usize), QcoreError> {
    assert_eq!(f.nvars(), 1);
    let modulus = d.modulus();
    if modulus >= 1.0 {
        return Err(QcoreError::NonConvergent { modulus });
    }
    let q = d.q();
    // |f(q^{2n+1} x)| <= sum |c_j| |x|^j for |q| < 1, so the tail after n
    // terms is bounded by prefactor * bound * |q|^{2n+3} / (1 - |q|^2).
    let bound: f64 = f
        .terms()
        .map(|(e, c)| c.norm() * x.norm().powi(e[0] as i32))
        .sum();
    let prefactor = (q.inv() - q) * x;
    let mut acc = Complex64::ZERO;
    let mut qp = q; // q^{2n+1}
    let q2 = q * q;
    let mut n = 0usize;
    loop {
        acc += qp * f.evaluate(&[qp * x]);
        n += 1;
        let tail = prefactor.norm() * bound * qp.norm() * q2.norm() / (1.0 - modulus * modulus);
        if tail < tail_tol || n > 100_000 {
            break;
        }
        qp *= q2;
    }
    Ok((prefactor * acc, n))
}

/// q-exponential `e_q(kx) = sum_n k^n x^n / [n]!` truncated at `order`.
///
/// Satisfies `D_q e_q(kx) = k e_q(kx)` coefficient-exactly through
/// `order - 1`. Errors when `[n]` vanishes for some `1 <= n <= order`.
pub fn q_exponential(
    k: Complex64,
    d: &Deformation,
    order: usize,
) -> Result<TruncatedSeries, QcoreError> {
    let mut terms = Vec::with_capacity(order + 1);
    let mut kpow = Complex64::ONE;
    let mut fact = Complex64::ONE;
    for n in 0..=order {
        if n > 0 {
            let qn = qnumber(n as f64, d);
            if qn.norm() <= DEFORMATION_TOL {
                return Err(QcoreError::DegenerateDeformation { n });
            }
            fact *= qn;
            kpow *= k;
        }
        terms.push(([n as u16, 0, 0], kpow / fact));
    }
    Ok(TruncatedSeries::from_terms(1, order, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn qnumber_basics() {
        for d in [
            Deformation::unimodular(0.7),
            Deformation::general(c(0.5)),
            Deformation::classical(),
        ] {
            assert!((qnumber(1.0, &d) - Complex64::ONE).norm() < 1e-15);
        }
        // [2] = 2 cos s in unimodular mode
        let s = 1.3;
        let d = Deformation::unimodular(s);
        assert!((qnumber(2.0, &d) - c(2.0 * s.cos())).norm() < 1e-14);

        // [3] at s = 0.7: sin(2.1)/sin(0.7), cross-checked against the ratio form
        let d = Deformation::unimodular(0.7);
        let direct = (2.1f64).sin() / (0.7f64).sin();
        assert!((qnumber(3.0, &d) - c(direct)).norm() < 1e-13);
        let q = d.q();
        let ratio = (q.powi(3) - q.powi(-3)) / (q - q.inv());
        assert!((qnumber(3.0, &d) - ratio).norm() < 1e-12);
    }

    #[test]
    fn qnumber_limits() {
        let one = Deformation::classical();
        assert!((qnumber(7.0, &one) - c(7.0)).norm() < 1e-15);
        let minus_one = Deformation::general(c(-1.0));
        // limit of sin(sn)/sin(s) at s = pi is (-1)^{n+1} n
        assert!((qnumber(4.0, &minus_one) - c(-4.0)).norm() < 1e-12);
        assert!((qnumber(5.0, &minus_one) - c(5.0)).norm() < 1e-12);
        // unimodular endpoint, same limit
        let d = Deformation::unimodular(std::f64::consts::PI);
        assert!((qnumber(4.0, &d) - c(-4.0)).norm() < 1e-9);
    }

    #[test]
    fn qnumber_symmetry_and_sin_consistency() {
        for s in [0.1, 0.7, 2.5] {
            let d = Deformation::unimodular(s);
            let dinv = Deformation::unimodular(-s);
            for n in 1..=50 {
                let a = qnumber(n as f64, &d);
                let b = qnumber(n as f64, &dinv);
                assert!((a - b).norm() < 1e-12, "symmetry fails at n={n}, s={s}");
                let q = d.q();
                let ratio = (q.powi(n) - q.powi(-n)) / (q - q.inv());
                assert!((a - ratio).norm() < 1e-12, "sin form vs ratio at n={n}, s={s}");
            }
        }
        // symmetry under q -> 1/q in general mode
        let d = Deformation::general(c(0.6));
        let dinv = Deformation::general(c(1.0 / 0.6));
        for n in 1..=50 {
            let a = qnumber(n as f64, &d);
            let b = qnumber(n as f64, &dinv);
            assert!((a - b).norm() / a.norm().max(1.0) < 1e-12);
        }
    }

    #[test]
    fn q_derivative_basics() {
        let d = Deformation::unimodular(0.9);
        let x2 = TruncatedSeries::monomial(1, 5, &[2], Complex64::ONE);
        let dq = q_derivative(&x2, &d);
        let expected = d.q() + d.q().inv();
        assert!((dq.coeff1(1) - expected).norm() < 1e-14);

        let k = TruncatedSeries::constant(1, 5, c(3.0));
        assert!(q_derivative(&k, &d).is_zero());

        // q = 1 reduces to the ordinary derivative, coefficient-exactly
        let f = TruncatedSeries::from_coeffs_1var(6, &[c(1.0), c(-2.0), c(4.0), c(0.5)]);
        let dq1 = q_derivative(&f, &Deformation::classical());
        assert_eq!(dq1, f.differentiate(0));
    }

    #[test]
    fn jackson_integral_closed_form() {
        // f = x (k = 2), q = 0.5: (2 - 0.5) * 0.25/(1 - 0.0625) = 0.4
        let d = Deformation::general(c(0.5));
        let f = TruncatedSeries::monomial(1, 3, &[1], Complex64::ONE);
        let int = jackson_integral(&f, &d).unwrap();
        assert!((int.coeff1(2) - c(0.4)).norm() < 1e-15);

        // q -> 1^-: coefficient tends to the classical primitive 1/2
        let d = Deformation::general(c(1.0 - 1e-6));
        let int = jackson_integral(&f, &d).unwrap();
        assert!((int.coeff1(2) - c(0.5)).norm() < 1e-5);

        let zero = TruncatedSeries::zero(1, 3);
        assert!(jackson_integral(&zero, &d).unwrap().is_zero());

        let um = Deformation::unimodular(0.3);
        assert_eq!(
            jackson_integral(&f, &um),
            Err(QcoreError::NonConvergent { modulus: 1.0 })
        );
    }

    #[test]
    fn jackson_partial_sum_matches_closed_form() {
        let d = Deformation::general(Complex64::new(0.7, 0.1));
        let f = TruncatedSeries::from_coeffs_1var(8, &[c(1.0), c(2.0), c(-1.0), c(0.25)]);
        let closed = jackson_integral(&f, &d).unwrap();
        for &x in &[c(0.3), c(0.9), Complex64::new(0.2, 0.5)] {
            let (val, _) = jackson_partial_sum(&f, &d, x, 1e-14).unwrap();
            assert!((val - closed.evaluate(&[x])).norm() < 1e-12);
        }
    }

    #[test]
    fn q_derivative_inverts_jackson_integral() {
        // The symmetric q-derivative and the Jackson integral form a matched
        // pair: D_q (integral of f) returns f exactly, with no residual
        // q-power rescaling of the argument.
        let d = Deformation::general(c(0.7));
        let coeffs: Vec<Complex64> = (0..=20).map(|k| c(1.0 + (k as f64) * 0.3)).collect();
        let f = TruncatedSeries::from_coeffs_1var(20, &coeffs);
        let int = jackson_integral(&f, &d).unwrap();
        let back = q_derivative(&int, &d);
        let diff = back.sub(&f);
        assert!(diff.max_coeff_norm() < 1e-10);
    }

    #[test]
    fn q_exponential_properties() {
        // q = 1: Taylor series of e^{kx}
        let e = q_exponential(c(2.0), &Deformation::classical(), 8).unwrap();
        let mut fact = 1.0;
        for n in 0..=8 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((e.coeff1(n) - c(2.0f64.powi(n as i32) / fact)).norm() < 1e-12);
        }

        // k = 0: constant 1
        let e0 = q_exponential(Complex64::ZERO, &Deformation::unimodular(0.4), 6).unwrap();
        assert_eq!(e0, TruncatedSeries::one(1, 6));

        // eigenfunction property, coefficient-exact through order N-1
        let d = Deformation::unimodular(0.3);
        let k = Complex64::ONE;
        let e = q_exponential(k, &d, 12).unwrap();
        let lhs = q_derivative(&e, &d);
        let rhs = e.scale(k).truncate(11);
        assert!(lhs.sub(&rhs).max_coeff_norm() < 1e-13);
    }

    #[test]
    fn q_exponential_degenerate() {
        // q = e^{i pi/3} makes [3] = sin(pi)/sin(pi/3) = 0
        let d = Deformation::unimodular(std::f64::consts::PI / 3.0);
        match q_exponential(Complex64::ONE, &d, 5) {
            Err(QcoreError::DegenerateDeformation { n }) => assert_eq!(n, 3),
            other => panic!("expected degenerate deformation, got {other:?}"),
        }
    }
}
