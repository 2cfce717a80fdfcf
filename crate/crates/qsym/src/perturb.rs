//! First-order physics of the non-commutative free particle near the
//! endpoints `s ~ 0` and `s ~ pi`: the induced vector potential acting as a
//! momentum shift on plane waves, its curl, path-dependent phases, the
//! effective magnetic field, and the exact deformed-plane-wave check.
//!
//! Natural units `hbar = c = e = m = 1` are the defaults; each constant is
//! overridable where it enters.

use num_complex::Complex64;
use thiserror::Error;

use crate::dilation::{dilation_op, sqrt_realization};
use crate::qcore::{q_exponential, Deformation, QcoreError};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, PartialEq)]
pub enum PerturbError {
    #[error("effective field requires a nonzero charge-to-c ratio")]
    ZeroCharge,
    #[error(transparent)]
    Qcore(#[from] QcoreError),
}

/// Which endpoint the small parameter measures distance from: the upper sign
/// of the shift holds for `eps = s ~ 0`, the lower for `eps = pi - s ~ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSign {
    NearZero,
    NearPi,
}

impl BranchSign {
    /// The sign carried by the shift: `-1` near zero (upper sign of the
    /// printed `-/+`), `+1` near pi.
    pub fn shift_sign(self) -> f64 {
        match self {
            BranchSign::NearZero => -1.0,
            BranchSign::NearPi => 1.0,
        }
    }
}

/// A plane-wave label: wave vector plus the free-particle frequency
/// `omega = |k|^2 / (2m)` (in natural units unless overridden).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    pub k: [f64; 3],
    pub omega: f64,
}

impl WaveVector {
    pub fn new(k: [f64; 3]) -> Self {
        let omega = 0.5 * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        WaveVector { k, omega }
    }

    pub fn with_mass(k: [f64; 3], mass: f64) -> Self {
        let omega = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) / (2.0 * mass);
        WaveVector { k, omega }
    }
}

/// The induced gauge field: linear in position, quadratic in the wave
/// vector, linear in the small parameter.
#[derive(Debug, Clone, Copy)]
pub struct GaugeField {
    pub k: [f64; 3],
    pub eps: f64,
    pub sign: BranchSign,
    pub hbar: f64,
}

impl GaugeField {
    pub fn new(k: [f64; 3], eps: f64, sign: BranchSign) -> Self {
        GaugeField {
            k,
            eps,
            sign,
            hbar: 1.0,
        }
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    /// The 3x3 matrix `M` with `A(r) = M r` (upper triangular by
    /// construction).
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let [kx, ky, kz] = self.k;
        let c = self.sign.shift_sign() * self.eps * self.hbar;
        [
            [c * kx * kx / 2.0, c * kx * ky, c * kx * kz],
            [0.0, c * ky * ky / 2.0, c * ky * kz],
            [0.0, 0.0, c * kz * kz / 2.0],
        ]
    }

    pub fn at(&self, r: [f64; 3]) -> [f64; 3] {
        let m = self.matrix();
        [
            m[0][0] * r[0] + m[0][1] * r[1] + m[0][2] * r[2],
            m[1][0] * r[0] + m[1][1] * r[1] + m[1][2] * r[2],
            m[2][0] * r[0] + m[2][1] * r[1] + m[2][2] * r[2],
        ]
    }
}

/// The induced vector potential
/// `A = -/+ eps hbar (kx^2 x/2 + kx ky y + kx kz z,
///                    ky^2 y/2 + ky kz z, kz^2 z/2)`
/// at a point (upper sign near `s = 0`).
pub fn vector_potential(
    k: &WaveVector,
    eps: f64,
    sign: BranchSign,
    r: [f64; 3],
) -> [f64; 3] {
    GaugeField::new(k.k, eps, sign).at(r)
}

/// Analytic curl of the induced field:
/// `curl A = -/+ eps hbar (-ky kz, kx kz, -kx ky)`.
pub fn curl_vector_potential(k: &WaveVector, eps: f64, sign: BranchSign) -> [f64; 3] {
    let [kx, ky, kz] = k.k;
    let c = sign.shift_sign() * eps;
    [-c * ky * kz, c * kx * kz, -c * kx * ky]
}

/// The curl as printed: `-/+ eps hbar (-ky kz, kx kz, kx ky)`. Differs from
/// the analytic curl in the sign of the z-component.
pub fn curl_printed_form(k: &WaveVector, eps: f64, sign: BranchSign) -> [f64; 3] {
    let [kx, ky, kz] = k.k;
    let c = sign.shift_sign() * eps;
    [-c * ky * kz, c * kx * kz, c * kx * ky]
}

/// Central-difference curl of the field at a point, for cross-checking.
pub fn curl_finite_difference(field: &GaugeField, r: [f64; 3], h: f64) -> [f64; 3] {
    let partial = |component: usize, axis: usize| -> f64 {
        let mut rp = r;
        let mut rm = r;
        rp[axis] += h;
        rm[axis] -= h;
        (field.at(rp)[component] - field.at(rm)[component]) / (2.0 * h)
    };
    [
        partial(2, 1) - partial(1, 2),
        partial(0, 2) - partial(2, 0),
        partial(1, 0) - partial(0, 1),
    ]
}

/// `exp(i int A . dl)` along a polyline, each segment integrated in closed
/// form (exact for this linear field):
/// `int_seg = A(a) . d + (1/2) (M d) . d` with `d = b - a`.
pub fn phase_integral(field: &GaugeField, path: &[[f64; 3]]) -> Complex64 {
    assert!(path.len() >= 2, "path needs at least two vertices");
    let m = field.matrix();
    let mut total = 0.0;
    for seg in path.windows(2) {
        let a = seg[0];
        let b = seg[1];
        let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let aa = field.at(a);
        let md = [
            m[0][0] * d[0] + m[0][1] * d[1] + m[0][2] * d[2],
            m[1][0] * d[0] + m[1][1] * d[1] + m[1][2] * d[2],
            m[2][0] * d[0] + m[2][1] * d[1] + m[2][2] * d[2],
        ];
        total += aa[0] * d[0] + aa[1] * d[1] + aa[2] * d[2]
            + 0.5 * (md[0] * d[0] + md[1] * d[1] + md[2] * d[2]);
    }
    Complex64::from_polar(1.0, total)
}

/// Self-generated magnetic field `B_m = -(hbar c / e) eps k_j k_l` with
/// `(m, j, l)` a cyclic labelling of `(1, 2, 3)`, as printed.
pub fn effective_field(
    k: &WaveVector,
    eps: f64,
    charge_over_c: f64,
    hbar: f64,
) -> Result<[f64; 3], PerturbError> {
    if charge_over_c == 0.0 {
        return Err(PerturbError::ZeroCharge);
    }
    let [kx, ky, kz] = k.k;
    let c = -hbar / charge_over_c * eps;
    Ok([c * ky * kz, c * kx * kz, c * kx * ky])
}

/// First-order expansion of a deformed derivative acting on `e^{i k . r}`.
///
/// The expansion operator along `axis` is
/// `d_axis +/- i eps (x_axis d_axis^2 / 2 + sum_{m > axis} x_m d_axis d_m)`
/// (upper sign near `s = 0`). Each term applied to the plane wave is a
/// polynomial in `r` times the exponential; the polynomial prefactor is
/// returned (the exponential divides out).
pub fn expansion_action_on_planewave(
    axis: usize,
    eps: f64,
    sign: BranchSign,
    k: &WaveVector,
    r: [f64; 3],
) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let ik = [i * k.k[0], i * k.k[1], i * k.k[2]];
    // note: the expansion's sign convention is +i eps (...) near s = 0,
    // which is the opposite bookkeeping to the shift's -/+; keep them linked
    // through BranchSign so the identity below is exact.
    let expansion_sign = -sign.shift_sign();
    let mut acc = ik[axis];
    let self_term = 0.5 * r[axis] * ik[axis] * ik[axis];
    let mut cross = Complex64::ZERO;
    for m in (axis + 1)..3 {
        cross += r[m] * ik[axis] * ik[m];
    }
    acc += i * expansion_sign * eps * (self_term + cross);
    acc
}

/// The same action written through the momentum shift: `i k_axis` plus
/// `i A_axis / hbar` with `A` from the printed field. The residual between
/// this and [`expansion_action_on_planewave`] must vanish identically.
pub fn shift_action_on_planewave(
    axis: usize,
    eps: f64,
    sign: BranchSign,
    k: &WaveVector,
    r: [f64; 3],
) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let a = vector_potential(k, eps, sign, r);
    i * k.k[axis] + i * a[axis]
}

/// Relative residual of the expansion-vs-shift identity at one point.
pub fn perturbed_derivative_check(
    axis: usize,
    eps: f64,
    sign: BranchSign,
    k: &WaveVector,
    r: [f64; 3],
) -> f64 {
    let lhs = expansion_action_on_planewave(axis, eps, sign, k, r);
    let rhs = shift_action_on_planewave(axis, eps, sign, k, r);
    let scale = lhs.norm().max(rhs.norm()).max(1e-300);
    (lhs - rhs).norm() / scale
}

/// Outcome of the 1D deformed-plane-wave verification.
#[derive(Debug, Clone)]
pub struct PlanewaveReport {
    /// Measured argument-rescaling factor for the dilation realization:
    /// `Qd e^{ikx} = ik e^{ik lambda x}`; for `Q = q^{x dx}` the measured
    /// `lambda` is `q` itself.
    pub measured_rescale: Complex64,
    /// Max coefficient residual of the dilation eigen-relation after the
    /// measured rescaling.
    pub dilation_residual: f64,
    /// Max coefficient residual of the exact eigen-relation for the
    /// square-root realization's derivative on its own deformed exponential.
    pub sqrt_eigen_residual: f64,
    /// Max coefficient residual of `D_q e_q(kx) = k e_q(kx)`.
    pub q_exponential_residual: f64,
}

/// Verify that the deformed 1D derivative operators have plane-wave-like
/// eigenfunctions on truncated series, measuring any argument rescaling
/// rather than assuming it.
pub fn q_planewave_check(
    k: Complex64,
    d: &Deformation,
    order: usize,
) -> Result<PlanewaveReport, PerturbError> {
    // dilation realization: (q^{x dx} d/dx) e^{ikx} = ik e^{i(qk)x}
    let ik = Complex64::new(0.0, 1.0) * k;
    let classical_exp = q_exponential(ik, &Deformation::classical(), order)?;
    let dil = dilation_op(d, 0);
    let lhs = dil.apply(&classical_exp.differentiate(0));
    // measure the rescaling from the degree-1 over degree-0 coefficient ratio
    let measured_rescale = if order >= 2 && lhs.coeff1(0).norm() > 0.0 {
        lhs.coeff1(1) / lhs.coeff1(0) / ik
    } else {
        Complex64::ONE
    };
    let rescaled = classical_exp
        .scale_argument(0, measured_rescale)
        .scale(ik)
        .truncate(lhs.order());
    let dilation_residual = lhs.sub(&rescaled).max_coeff_norm();

    // square-root realization: build the eigenfunction from its recurrence
    // c_{m+1} = ik c_m / ((m+1) Q(m)) and verify (Q d/dx) f = ik f exactly
    let sq = sqrt_realization(d);
    let mut coeffs = vec![Complex64::ZERO; order + 1];
    coeffs[0] = Complex64::ONE;
    for m in 0..order {
        let qm = sq.spectrum(m);
        coeffs[m + 1] = if qm.norm() > 1e-13 {
            ik * coeffs[m] / (Complex64::new((m + 1) as f64, 0.0) * qm)
        } else {
            return Err(PerturbError::Qcore(QcoreError::DegenerateDeformation {
                n: m + 1,
            }));
        };
    }
    let eigen = TruncatedSeries::from_coeffs_1var(order, &coeffs);
    let applied = sq.apply(&eigen.differentiate(0));
    let sqrt_eigen_residual = applied
        .sub(&eigen.scale(ik).truncate(applied.order()))
        .max_coeff_norm();

    // the symmetric q-exponential eigen-relation
    let eq = q_exponential(k, d, order)?;
    let deriv = crate::qcore::q_derivative(&eq, d);
    let q_exponential_residual = deriv
        .sub(&eq.scale(k).truncate(deriv.order()))
        .max_coeff_norm();

    Ok(PlanewaveReport {
        measured_rescale,
        dilation_residual,
        sqrt_eigen_residual,
        q_exponential_residual,
    })
}
