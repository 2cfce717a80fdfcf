//! Diagonal operator realizations of the deformed coordinate machinery on
//! the monomial basis: the dilation operator `q^{x dx}`, the square-root
//! realization with spectrum `Q^2(j) = q^j [j+1]/(j+1)`, their 3D composites,
//! and analytic limits at `s = 0` and `s = pi`.
//!
//! For unimodular `q = e^{is}` the spectrum `Q^2(j, s)` vanishes at the
//! points `s = m pi/(j+1)`, so a square root continuous in `s` must track a
//! branch through those zeros. Continuing around each zero on the outside of
//! the unit circle multiplies the root by `+i` per crossing and lands on the
//! inversion `(-1)^j` at `s = pi`; continuing on the inside multiplies by
//! `-i` and lands on `+1`. Both continuations are first-class here because
//! the 1D realization requires the former and the 3D mirror-map tables
//! require the latter.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use thiserror::Error;

use crate::qcore::{qnumber, Deformation, DEFORMATION_TOL};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, PartialEq)]
pub enum DilationError {
    #[error("analytic limit does not exist at degree {j}")]
    LimitUndefined { j: usize },
}

/// Which side of the unit circle the square root is continued on when the
/// spectrum crosses zero. Determines the endpoint at `s = pi`:
/// `InversionAtPi` gives `Q(j, pi) = (-1)^j`, `IdentityAtPi` gives `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtBranch {
    InversionAtPi,
    IdentityAtPi,
}

/// `Q^2(j) = q^j [j+1]/(j+1) = (1 + q^2 + ... + q^{2j}) / (j+1)`.
///
/// The geometric-sum form is used directly; it is branch-free and satisfies
/// the defining recursion `(j+1) Q^2(j) = 1 + q^2 j Q^2(j-1)` exactly.
pub fn sqrt_spectrum_squared(d: &Deformation, j: usize) -> Complex64 {
    let q2 = d.qpow_int(2);
    let mut acc = Complex64::ONE;
    let mut p = Complex64::ONE;
    for _ in 0..j {
        p *= q2;
        acc += p;
    }
    acc / Complex64::new((j + 1) as f64, 0.0)
}

/// Branch-tracked square root of [`sqrt_spectrum_squared`].
///
/// Unimodular mode writes `Q^2(j, s) = e^{isj} sin((j+1)s) / ((j+1) sin s)`
/// and carries the root continuously from `Q(j, 0) = 1`, picking up a factor
/// `+-i` (by branch) at each simple zero crossed. Negative `s` is handled by
/// conjugation. General mode uses the principal square root (the spectrum
/// stays off the negative real axis for real `0 < q < 1`).
pub fn sqrt_spectrum(d: &Deformation, branch: SqrtBranch, j: usize) -> Complex64 {
    if j == 0 {
        return Complex64::ONE;
    }
    match d {
        Deformation::Unimodular { s } => {
            let sa = s.abs();
            let val = sqrt_spectrum_unimodular(sa, branch, j);
            if *s < 0.0 {
                val.conj()
            } else {
                val
            }
        }
        Deformation::General { .. } => sqrt_spectrum_squared(d, j).sqrt(),
    }
}

fn sqrt_spectrum_unimodular(s: f64, branch: SqrtBranch, j: usize) -> Complex64 {
    if s <= DEFORMATION_TOL {
        return Complex64::ONE;
    }
    if (s - PI).abs() <= DEFORMATION_TOL {
        return match branch {
            SqrtBranch::InversionAtPi => {
                if j % 2 == 0 {
                    Complex64::ONE
                } else {
                    -Complex64::ONE
                }
            }
            SqrtBranch::IdentityAtPi => Complex64::ONE,
        };
    }
    let jp1 = (j + 1) as f64;
    // zeros of sin((j+1)s)/sin(s) on (0, s): s = m pi/(j+1) with m not a
    // multiple of j+1 (those points are removable, not zeros)
    let t = s * jp1 / PI;
    let crossings = (t.floor() as i64 - (s / PI).floor() as i64).max(0) as u32;
    let at_zero = (t - t.round()).abs() <= DEFORMATION_TOL && (t.round() as i64) % (j as i64 + 1) != 0;
    let r = if at_zero {
        0.0
    } else {
        ((jp1 * s).sin() / (jp1 * s.sin())).abs().sqrt()
    };
    let phase_step = match branch {
        SqrtBranch::InversionAtPi => Complex64::new(0.0, 1.0),
        SqrtBranch::IdentityAtPi => Complex64::new(0.0, -1.0),
    };
    let mut phase = Complex64::from_polar(1.0, s * j as f64 / 2.0);
    for _ in 0..(crossings % 4) {
        phase *= phase_step;
    }
    phase * r
}

type SpectrumFn = Arc<dyn Fn(usize) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum SpectrumKind {
    Dilation(Deformation),
    SqrtRealization(Deformation, SqrtBranch),
    Identity,
    Inversion,
    Custom(SpectrumFn),
}

/// An operator diagonal on monomials along one axis: `x^j -> Q(j) x^j`.
///
/// Spectra are memoized per degree; the memo is internally synchronized so
/// shared operators can be read from several threads.
pub struct DiagonalOperator {
    axis: usize,
    label: String,
    kind: SpectrumKind,
    memo: Mutex<HashMap<usize, Complex64>>,
}

impl Clone for DiagonalOperator {
    fn clone(&self) -> Self {
        DiagonalOperator {
            axis: self.axis,
            label: self.label.clone(),
            kind: self.kind.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for DiagonalOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DiagonalOperator({}, axis {})", self.label, self.axis)
    }
}

impl DiagonalOperator {
    fn new(axis: usize, label: impl Into<String>, kind: SpectrumKind) -> Self {
        DiagonalOperator {
            axis,
            label: label.into(),
            kind,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn identity(axis: usize) -> Self {
        Self::new(axis, "identity", SpectrumKind::Identity)
    }

    pub fn inversion(axis: usize) -> Self {
        Self::new(axis, "inversion", SpectrumKind::Inversion)
    }

    pub fn from_fn(
        axis: usize,
        label: impl Into<String>,
        f: impl Fn(usize) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(axis, label, SpectrumKind::Custom(Arc::new(f)))
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Spectrum value `Q(j)`.
    pub fn spectrum(&self, j: usize) -> Complex64 {
        if let Some(v) = self.memo.lock().unwrap().get(&j) {
            return *v;
        }
        let v = match &self.kind {
            SpectrumKind::Dilation(d) => d.qpow_int(j as i64),
            SpectrumKind::SqrtRealization(d, branch) => sqrt_spectrum(d, *branch, j),
            SpectrumKind::Identity => Complex64::ONE,
            SpectrumKind::Inversion => {
                if j % 2 == 0 {
                    Complex64::ONE
                } else {
                    -Complex64::ONE
                }
            }
            SpectrumKind::Custom(f) => f(j),
        };
        self.memo.lock().unwrap().insert(j, v);
        v
    }

    /// Act on a series: the coefficient of each monomial is multiplied by
    /// `Q(j)` where `j` is the monomial degree along this operator's axis.
    pub fn apply(&self, f: &TruncatedSeries) -> TruncatedSeries {
        assert!(self.axis < f.nvars(), "operator axis outside series");
        let terms: Vec<_> = f
            .terms()
            .map(|(e, c)| (*e, c * self.spectrum(e[self.axis] as usize)))
            .collect();
        TruncatedSeries::from_terms(f.nvars(), f.order(), terms)
    }

    /// Pointwise product of spectra. Two diagonal operators on the same axis
    /// commute exactly, so composition order is immaterial.
    pub fn compose(&self, other: &DiagonalOperator) -> DiagonalOperator {
        assert_eq!(self.axis, other.axis, "composition requires a shared axis");
        let a = self.clone();
        let b = other.clone();
        DiagonalOperator::from_fn(
            self.axis,
            format!("{} * {}", self.label, other.label),
            move |j| a.spectrum(j) * b.spectrum(j),
        )
    }
}

/// Dilation operator `q^{x dx}` on the given axis: spectrum `Q(j) = q^j`.
/// At `q = -1` this is the inversion of that axis.
pub fn dilation_op(d: &Deformation, axis: usize) -> DiagonalOperator {
    DiagonalOperator::new(axis, "dilation", SpectrumKind::Dilation(*d))
}

/// Square-root realization of the deformed coordinate (continued outside the
/// unit circle, so `s -> pi` lands on the inversion `(-1)^j`).
pub fn sqrt_realization(d: &Deformation) -> DiagonalOperator {
    sqrt_realization_with_branch(d, SqrtBranch::InversionAtPi)
}

pub fn sqrt_realization_with_branch(d: &Deformation, branch: SqrtBranch) -> DiagonalOperator {
    DiagonalOperator::new(
        0,
        match branch {
            SqrtBranch::InversionAtPi => "sqrt-realization",
            SqrtBranch::IdentityAtPi => "sqrt-realization (inner branch)",
        },
        SpectrumKind::SqrtRealization(*d, branch),
    )
}

/// A diagonal-operator family whose analytic limits at `s = 0, pi` and
/// first-order expansions are known in closed form.
#[derive(Debug, Clone, Copy)]
pub enum OperatorFamily {
    Dilation { axis: usize },
    SqrtRealization { branch: SqrtBranch },
}

/// An endpoint of the unimodular parameter range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitPoint {
    Zero,
    Pi,
}

impl OperatorFamily {
    pub fn at(&self, d: &Deformation) -> DiagonalOperator {
        match self {
            OperatorFamily::Dilation { axis } => dilation_op(d, *axis),
            OperatorFamily::SqrtRealization { branch } => {
                sqrt_realization_with_branch(d, *branch)
            }
        }
    }

    fn endpoint_at_pi(&self) -> SpectrumKind {
        match self {
            OperatorFamily::Dilation { .. } => SpectrumKind::Inversion,
            OperatorFamily::SqrtRealization { branch } => match branch {
                SqrtBranch::InversionAtPi => SpectrumKind::Inversion,
                SqrtBranch::IdentityAtPi => SpectrumKind::Identity,
            },
        }
    }
}

/// Spectrum of a family at an endpoint, computed analytically (for these
/// families the q-number limits `[j+1] -> (-1)^j (j+1)` as `s -> pi` and
/// `-> j+1` as `s -> 0` always exist).
pub fn limit_spectrum(
    family: &OperatorFamily,
    s0: LimitPoint,
) -> Result<DiagonalOperator, DilationError> {
    let axis = match family {
        OperatorFamily::Dilation { axis } => *axis,
        OperatorFamily::SqrtRealization { .. } => 0,
    };
    let kind = match s0 {
        LimitPoint::Zero => SpectrumKind::Identity,
        LimitPoint::Pi => family.endpoint_at_pi(),
    };
    let label = format!("limit at {}", if s0 == LimitPoint::Zero { "0" } else { "pi" });
    Ok(DiagonalOperator::new(axis, label, kind))
}

/// First-order spectrum near an endpoint: the endpoint value times
/// `1 + i eps j h` at `s ~ 0` and `1 - i eps j h` at `s ~ pi` with
/// `eps = pi - s`. For the square-root realization `h = 1/2`; for the plain
/// dilation `h = 1`. The exact spectrum differs from this by `O(eps^2)`.
pub fn first_order_expansion(
    family: &OperatorFamily,
    s0: LimitPoint,
    eps: f64,
) -> DiagonalOperator {
    let half = match family {
        OperatorFamily::Dilation { .. } => 1.0,
        OperatorFamily::SqrtRealization { .. } => 0.5,
    };
    let endpoint = limit_spectrum(family, s0).expect("endpoint limits always exist");
    let sign = match s0 {
        LimitPoint::Zero => 1.0,
        LimitPoint::Pi => -1.0,
    };
    let axis = endpoint.axis();
    DiagonalOperator::from_fn(axis, format!("first-order(eps={eps})"), move |j| {
        endpoint.spectrum(j) * (Complex64::ONE + Complex64::new(0.0, sign * eps * half * j as f64))
    })
}

/// The 3D composite realization: each component multiplies the square-root
/// factor on its own axis by plain `q`-powers of the dilation generators of
/// the later axes,
/// `Qx = Q(dx) q^{dy+dz}`, `Qy = Q(dy) q^{dz}`, `Qz = Q(dz)`.
#[derive(Debug, Clone)]
pub struct Q3Realization {
    d: Deformation,
    branch: SqrtBranch,
}

/// Component selector for [`Q3Realization`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Q3Axis {
    X,
    Y,
    Z,
}

impl Q3Realization {
    /// The mirror-map tables at `s = pi` require the inner branch, so that is
    /// the default here.
    pub fn new(d: &Deformation) -> Self {
        Q3Realization {
            d: *d,
            branch: SqrtBranch::IdentityAtPi,
        }
    }

    pub fn with_branch(d: &Deformation, branch: SqrtBranch) -> Self {
        Q3Realization { d: *d, branch }
    }

    /// Multiplier applied to the monomial `x^a y^b z^c` by the chosen
    /// component.
    pub fn factor(&self, axis: Q3Axis, degrees: [usize; 3]) -> Complex64 {
        let [a, b, c] = degrees;
        match axis {
            Q3Axis::X => {
                sqrt_spectrum(&self.d, self.branch, a) * self.d.qpow_int((b + c) as i64)
            }
            Q3Axis::Y => sqrt_spectrum(&self.d, self.branch, b) * self.d.qpow_int(c as i64),
            Q3Axis::Z => sqrt_spectrum(&self.d, self.branch, c),
        }
    }

    pub fn apply(&self, axis: Q3Axis, f: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(f.nvars(), 3, "Q3 realization acts on 3-variable series");
        let terms: Vec<_> = f
            .terms()
            .map(|(e, coeff)| {
                let deg = [e[0] as usize, e[1] as usize, e[2] as usize];
                (*e, coeff * self.factor(axis, deg))
            })
            .collect();
        TruncatedSeries::from_terms(3, f.order(), terms)
    }

    /// Image of the coordinate triple `(x, y, z)`: the three multipliers the
    /// component applies to the degree-one monomials.
    pub fn coordinate_map(&self, axis: Q3Axis) -> [Complex64; 3] {
        [
            self.factor(axis, [1, 0, 0]),
            self.factor(axis, [0, 1, 0]),
            self.factor(axis, [0, 0, 1]),
        ]
    }

    /// Analytic-limit multiplier at an endpoint.
    pub fn limit_factor(&self, axis: Q3Axis, s0: LimitPoint, degrees: [usize; 3]) -> Complex64 {
        if s0 == LimitPoint::Zero {
            return Complex64::ONE;
        }
        let [a, b, c] = degrees;
        let sgn = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
        let sqrt_limit = |j: usize| match self.branch {
            SqrtBranch::InversionAtPi => sgn(j),
            SqrtBranch::IdentityAtPi => 1.0,
        };
        let v = match axis {
            Q3Axis::X => sqrt_limit(a) * sgn(b + c),
            Q3Axis::Y => sqrt_limit(b) * sgn(c),
            Q3Axis::Z => sqrt_limit(c),
        };
        Complex64::new(v, 0.0)
    }
}

/// Residual of the defining recursion `(j+1) Q^2(j) - 1 - q^2 j Q^2(j-1)` at
/// degree `j`. Should vanish to machine precision for every deformation.
pub fn recursion_residual(d: &Deformation, j: usize) -> f64 {
    let q2 = d.qpow_int(2);
    let lhs = sqrt_spectrum_squared(d, j) * Complex64::new((j + 1) as f64, 0.0);
    let rhs = Complex64::ONE + q2 * Complex64::new(j as f64, 0.0) * sqrt_spectrum_squared(d, j - 1);
    (lhs - rhs).norm()
}

/// Measures which exponent closes `[dhat, xhat]_{q^lambda} = 1` for the pair
/// `xhat = x Q`, `dhat = Q d`: returns `(j+1)Q^2(j) - lambda j Q^2(j-1)`
/// so the caller can compare `lambda = q` against `lambda = q^2`.
pub fn pair_commutator_gap(d: &Deformation, lambda: Complex64, j: usize) -> Complex64 {
    let lhs = sqrt_spectrum_squared(d, j) * Complex64::new((j + 1) as f64, 0.0);
    let rhs = lambda * Complex64::new(j as f64, 0.0) * sqrt_spectrum_squared(d, j - 1);
    lhs - rhs - Complex64::ONE
}

/// Consistency of the closed form with the q-number form
/// `Q^2(j) = q^j [j+1]/(j+1)`.
pub fn qnumber_form_residual(d: &Deformation, j: usize) -> f64 {
    let closed = sqrt_spectrum_squared(d, j);
    let via_qnum =
        d.qpow_int(j as i64) * qnumber((j + 1) as f64, d) / Complex64::new((j + 1) as f64, 0.0);
    (closed - via_qnum).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn dilation_spectrum_cases() {
        let one = dilation_op(&Deformation::classical(), 0);
        for j in 0..10 {
            assert_eq!(one.spectrum(j), Complex64::ONE);
        }
        let inv = dilation_op(&Deformation::general(Complex64::new(-1.0, 0.0)), 0);
        for j in 0..10 {
            let expect = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(inv.spectrum(j), Complex64::new(expect, 0.0), 1e-15));
        }
        let d = Deformation::unimodular(0.5);
        assert!(close(
            dilation_op(&d, 0).spectrum(3),
            Complex64::from_polar(1.0, 1.5),
            1e-15
        ));
    }

    #[test]
    fn sqrt_spectrum_low_degrees() {
        for d in [
            Deformation::general(Complex64::new(0.5, 0.0)),
            Deformation::unimodular(0.7),
            Deformation::unimodular(2.5),
        ] {
            let q = d.q();
            // Q^2(0) = 1
            assert!(close(sqrt_spectrum_squared(&d, 0), Complex64::ONE, 1e-15));
            // Q^2(1) = (1 + q^2)/2
            assert!(close(
                sqrt_spectrum_squared(&d, 1),
                (Complex64::ONE + q * q) / 2.0,
                1e-14
            ));
            // Q^2(2) = (1 + q^2 + q^4)/3
            assert!(close(
                sqrt_spectrum_squared(&d, 2),
                (Complex64::ONE + q.powi(2) + q.powi(4)) / 3.0,
                1e-14
            ));
        }
    }

    #[test]
    fn recursion_holds_to_high_degree() {
        for d in [
            Deformation::general(Complex64::new(0.5, 0.0)),
            Deformation::unimodular(0.7),
            Deformation::unimodular(2.5),
        ] {
            for j in 1..=50 {
                assert!(recursion_residual(&d, j) < 1e-12, "residual at j={j}");
                assert!(qnumber_form_residual(&d, j) < 1e-12);
            }
        }
    }

    #[test]
    fn branch_is_consistent_with_square() {
        for &s in &[0.3, 1.0, 1.7, 2.9, -0.8] {
            let d = Deformation::unimodular(s);
            for branch in [SqrtBranch::InversionAtPi, SqrtBranch::IdentityAtPi] {
                for j in 0..=12 {
                    let q = sqrt_spectrum(&d, branch, j);
                    assert!(
                        close(q * q, sqrt_spectrum_squared(&d, j), 1e-12),
                        "square mismatch at s={s}, j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn branch_continuity_in_s() {
        // walk s across the zero crossings and require small steps in Q(j, s)
        for branch in [SqrtBranch::InversionAtPi, SqrtBranch::IdentityAtPi] {
            for j in 1..=8 {
                let mut prev = Complex64::ONE;
                let steps = 40_000;
                for i in 0..=steps {
                    let s = PI * i as f64 / steps as f64;
                    let v = sqrt_spectrum(&Deformation::unimodular(s), branch, j);
                    assert!(
                        (v - prev).norm() < 0.05,
                        "jump at j={j}, s={s}: {prev} -> {v}"
                    );
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn branch_endpoints() {
        let pi = Deformation::unimodular(PI);
        for j in 0..=30 {
            let outer = sqrt_spectrum(&pi, SqrtBranch::InversionAtPi, j);
            let expect = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(outer, Complex64::new(expect, 0.0), 1e-12));
            let inner = sqrt_spectrum(&pi, SqrtBranch::IdentityAtPi, j);
            assert!(close(inner, Complex64::ONE, 1e-12));
        }
        let zero = Deformation::unimodular(0.0);
        for j in 0..=10 {
            assert!(close(
                sqrt_spectrum(&zero, SqrtBranch::InversionAtPi, j),
                Complex64::ONE,
                1e-15
            ));
        }
    }

    #[test]
    fn limit_spectrum_families() {
        let fam = OperatorFamily::SqrtRealization {
            branch: SqrtBranch::InversionAtPi,
        };
        let at_pi = limit_spectrum(&fam, LimitPoint::Pi).unwrap();
        for j in 0..=30 {
            let expect = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(at_pi.spectrum(j), Complex64::new(expect, 0.0));
        }
        let at_zero = limit_spectrum(&fam, LimitPoint::Zero).unwrap();
        assert_eq!(at_zero.spectrum(17), Complex64::ONE);

        let dil = OperatorFamily::Dilation { axis: 0 };
        assert_eq!(
            limit_spectrum(&dil, LimitPoint::Zero).unwrap().spectrum(5),
            Complex64::ONE
        );
        assert_eq!(
            limit_spectrum(&dil, LimitPoint::Pi).unwrap().spectrum(5),
            -Complex64::ONE
        );
    }

    #[test]
    fn first_order_expansion_is_second_order_accurate() {
        // residual (exact - expansion) must shrink like eps^2
        let fam = OperatorFamily::SqrtRealization {
            branch: SqrtBranch::InversionAtPi,
        };
        for s0 in [LimitPoint::Zero, LimitPoint::Pi] {
            for j in 0..=10 {
                let mut ratios = Vec::new();
                for &eps in &[1e-2, 1e-3] {
                    let s = match s0 {
                        LimitPoint::Zero => eps,
                        LimitPoint::Pi => PI - eps,
                    };
                    let exact = sqrt_spectrum(
                        &Deformation::unimodular(s),
                        SqrtBranch::InversionAtPi,
                        j,
                    );
                    let approx = first_order_expansion(&fam, s0, eps).spectrum(j);
                    ratios.push((exact - approx).norm() / (eps * eps));
                }
                // the eps^2 coefficient grows like j^2; 30 covers j <= 10
                for r in &ratios {
                    assert!(*r < 30.0, "residual/eps^2 = {r} too large at j={j}");
                }
                if j > 0 {
                    let stability = ratios[0] / ratios[1].max(1e-30);
                    assert!(
                        (0.25..4.0).contains(&stability),
                        "ratio not stable under eps refinement: {stability}"
                    );
                }
            }
        }
        // eps = 0 reproduces the endpoint exactly; j = 0 is 1 for every eps
        let op = first_order_expansion(&fam, LimitPoint::Pi, 0.0);
        for j in 0..=6 {
            let expect = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(op.spectrum(j), Complex64::new(expect, 0.0));
        }
        assert_eq!(
            first_order_expansion(&fam, LimitPoint::Zero, 0.37).spectrum(0),
            Complex64::ONE
        );
    }

    #[test]
    fn q3_mirror_tables() {
        let i = Complex64::new(0.0, 1.0);
        // s = pi: Qx -> (x, -y, -z), Qy -> (x, y, -z), Qz -> (x, y, z)
        let q3 = Q3Realization::new(&Deformation::unimodular(PI));
        let expect_pi = [
            [1.0, -1.0, -1.0],
            [1.0, 1.0, -1.0],
            [1.0, 1.0, 1.0],
        ];
        for (axis, row) in [Q3Axis::X, Q3Axis::Y, Q3Axis::Z].iter().zip(expect_pi) {
            let got = q3.coordinate_map(*axis);
            for (g, e) in got.iter().zip(row) {
                assert!(close(*g, Complex64::new(e, 0.0), 1e-12), "{axis:?}");
            }
        }
        // s = pi/2: Qx -> (0, iy, iz), Qy -> (x, 0, iz), Qz -> (x, y, 0)
        let q3 = Q3Realization::new(&Deformation::unimodular(PI / 2.0));
        let z = Complex64::ZERO;
        let one = Complex64::ONE;
        let expect_half: [[Complex64; 3]; 3] =
            [[z, i, i], [one, z, i], [one, one, z]];
        for (axis, row) in [Q3Axis::X, Q3Axis::Y, Q3Axis::Z].iter().zip(expect_half) {
            let got = q3.coordinate_map(*axis);
            for (g, e) in got.iter().zip(row) {
                assert!(close(*g, e, 1e-12), "{axis:?}: {got:?}");
            }
        }
        // s = 0: identity
        let q3 = Q3Realization::new(&Deformation::unimodular(0.0));
        for axis in [Q3Axis::X, Q3Axis::Y, Q3Axis::Z] {
            for v in q3.coordinate_map(axis) {
                assert!(close(v, Complex64::ONE, 1e-15));
            }
        }
    }

    #[test]
    fn q3_components_commute_exactly() {
        // The operator product on a monomial is the product of the two
        // factors, and complex multiplication commutes bit-exactly.
        let q3 = Q3Realization::new(&Deformation::unimodular(1.1));
        let axes = [Q3Axis::X, Q3Axis::Y, Q3Axis::Z];
        for a in 0..=20u16 {
            for b in 0..=(20 - a) {
                for c in 0..=(20 - a - b) {
                    let deg = [a as usize, b as usize, c as usize];
                    for i in axes {
                        for k in axes {
                            let fi = q3.factor(i, deg);
                            let fk = q3.factor(k, deg);
                            assert_eq!(fi * fk, fk * fi);
                        }
                    }
                }
            }
        }
        // sequential application agrees up to rounding of the reordered product
        let mut f = TruncatedSeries::zero(3, 20);
        for (i, exps) in [[0usize, 0, 0], [3, 2, 1], [5, 5, 5], [20, 0, 0], [2, 9, 9]]
            .iter()
            .enumerate()
        {
            f = f.add(&TruncatedSeries::monomial(
                3,
                20,
                exps,
                Complex64::new(1.0 + i as f64, 0.5),
            ));
        }
        for a in axes {
            for b in axes {
                let ab = q3.apply(a, &q3.apply(b, &f));
                let ba = q3.apply(b, &q3.apply(a, &f));
                assert!(ab.sub(&ba).max_coeff_norm() < 1e-14);
            }
        }
    }

    #[test]
    fn pair_commutator_closes_with_q_squared() {
        let d = Deformation::unimodular(0.9);
        let q = d.q();
        for j in 1..=20 {
            assert!(pair_commutator_gap(&d, q * q, j).norm() < 1e-12);
            assert!(pair_commutator_gap(&d, q, j).norm() > 1e-3);
        }
    }

    #[test]
    fn operators_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<DiagonalOperator>();
        assert_send_sync::<Q3Realization>();
        assert_send_sync::<Deformation>();

        let op = std::sync::Arc::new(sqrt_realization(&Deformation::unimodular(0.8)));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let op = op.clone();
                std::thread::spawn(move || (0..40).map(|j| op.spectrum(j).norm()).sum::<f64>())
            })
            .collect();
        let sums: Vec<f64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for s in &sums[1..] {
            assert_eq!(*s, sums[0]);
        }
    }

    #[test]
    fn diagonal_operator_apply_and_compose() {
        let d = Deformation::unimodular(0.4);
        let a = dilation_op(&d, 0);
        let b = sqrt_realization(&d);
        let f = TruncatedSeries::from_coeffs_1var(
            6,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(-1.0, 1.0),
            ],
        );
        let ab = a.compose(&b).apply(&f);
        let ba = b.compose(&a).apply(&f);
        let sequential = a.apply(&b.apply(&f));
        assert_eq!(ab, ba, "pointwise spectrum products commute bit-exactly");
        assert!(ab.sub(&sequential).max_coeff_norm() < 1e-14);
    }
}
