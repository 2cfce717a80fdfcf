//! Python bindings for the q-deformed symmetry toolkit.
//!
//! Exposes the deformation parameter, truncated series, the q-calculus
//! operations, the diagonal operator spectra, the invariance solver, the
//! deformed Coulomb curves, the plane-PDE variant scan, the induced gauge
//! field, and the full verification ledger.
//!
//! Usage from Python (after building the cdylib):
//!
//!     import qsym_py as qs
//!     d = qs.Deformation.unimodular(0.7)
//!     qs.qnumber(3.0, d)

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qsym::dilation::{sqrt_spectrum, SqrtBranch};
use qsym::ncplane::{bessel_quarter, variant_scan, BesselKind, GridSpec, Sign};
use qsym::perturb::{
    curl_vector_potential, phase_integral, vector_potential, BranchSign, GaugeField, WaveVector,
};
use qsym::qcore;
use qsym::symmetry1d::{
    deform_coulomb_curve, gauge_transform_potential, solve_q_independent, PotentialSpec,
};

fn to_py_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// The deformation parameter: unimodular `q = e^{is}` or a general nonzero
/// complex number.
#[pyclass(frozen, skip_from_py_object)]
struct Deformation {
    inner: qcore::Deformation,
}

#[pymethods]
impl Deformation {
    #[staticmethod]
    fn unimodular(s: f64) -> Self {
        Deformation {
            inner: qcore::Deformation::unimodular(s),
        }
    }

    #[staticmethod]
    fn general(q: Complex64) -> PyResult<Self> {
        if q.norm() == 0.0 {
            return Err(PyValueError::new_err("deformation parameter must be nonzero"));
        }
        Ok(Deformation {
            inner: qcore::Deformation::general(q),
        })
    }

    /// Real-mode deformation `q = e^s`.
    #[staticmethod]
    fn real_exp(s: f64) -> Self {
        Deformation {
            inner: qcore::Deformation::real_exp(s),
        }
    }

    #[staticmethod]
    fn classical() -> Self {
        Deformation {
            inner: qcore::Deformation::classical(),
        }
    }

    fn q(&self) -> Complex64 {
        self.inner.q()
    }

    fn qpow(&self, n: f64) -> Complex64 {
        self.inner.qpow(n)
    }

    fn is_root_of_unity(&self, n: u32) -> bool {
        self.inner.is_root_of_unity(n)
    }

    fn __repr__(&self) -> String {
        match self.inner {
            qcore::Deformation::Unimodular { s } => format!("Deformation.unimodular({s})"),
            qcore::Deformation::General { q } => format!("Deformation.general({q})"),
        }
    }
}

/// A one-variable truncated power series with complex coefficients.
#[pyclass(frozen, skip_from_py_object)]
struct Series {
    inner: qsym::TruncatedSeries,
}

#[pymethods]
impl Series {
    #[new]
    fn new(coeffs: Vec<Complex64>, order: usize) -> Self {
        Series {
            inner: qsym::TruncatedSeries::from_coeffs_1var(order, &coeffs),
        }
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn coeffs(&self) -> Vec<Complex64> {
        (0..=self.inner.order())
            .map(|k| self.inner.coeff1(k))
            .collect()
    }

    fn evaluate(&self, x: Complex64) -> Complex64 {
        self.inner.evaluate(&[x])
    }

    fn add(&self, other: &Series) -> Series {
        Series {
            inner: self.inner.add(&other.inner),
        }
    }

    fn multiply(&self, other: &Series) -> Series {
        Series {
            inner: self.inner.multiply(&other.inner),
        }
    }

    fn differentiate(&self) -> Series {
        Series {
            inner: self.inner.differentiate(0),
        }
    }

    fn scale_argument(&self, lam: Complex64) -> Series {
        Series {
            inner: self.inner.scale_argument(0, lam),
        }
    }

    fn __repr__(&self) -> String {
        format!("Series(order={})", self.inner.order())
    }
}

/// Symmetric q-number `[n]`.
#[pyfunction]
fn qnumber(n: f64, d: &Deformation) -> Complex64 {
    qcore::qnumber(n, &d.inner)
}

/// Symmetric q-derivative of a series.
#[pyfunction]
fn q_derivative(f: &Series, d: &Deformation) -> Series {
    Series {
        inner: qcore::q_derivative(&f.inner, &d.inner),
    }
}

/// Jackson q-integral of a series (requires |q| < 1).
#[pyfunction]
fn jackson_integral(f: &Series, d: &Deformation) -> PyResult<Series> {
    qcore::jackson_integral(&f.inner, &d.inner)
        .map(|inner| Series { inner })
        .map_err(to_py_err)
}

/// q-exponential `e_q(kx)` truncated at `order`.
#[pyfunction]
fn q_exponential(k: Complex64, d: &Deformation, order: usize) -> PyResult<Series> {
    qcore::q_exponential(k, &d.inner, order)
        .map(|inner| Series { inner })
        .map_err(to_py_err)
}

/// Dilation spectrum `q^j`.
#[pyfunction]
fn dilation_spectrum(d: &Deformation, j: usize) -> Complex64 {
    d.inner.qpow_int(j as i64)
}

/// Branch-tracked square-root realization spectrum `Q(j)`. `branch` is
/// `"inversion"` (ends at `(-1)^j` at `s = pi`) or `"identity"`.
#[pyfunction]
#[pyo3(signature = (d, j, branch = "inversion"))]
fn sqrt_realization_spectrum(d: &Deformation, j: usize, branch: &str) -> PyResult<Complex64> {
    let branch = match branch {
        "inversion" => SqrtBranch::InversionAtPi,
        "identity" => SqrtBranch::IdentityAtPi,
        other => {
            return Err(PyValueError::new_err(format!(
                "branch must be 'inversion' or 'identity', got {other}"
            )))
        }
    };
    Ok(sqrt_spectrum(&d.inner, branch, j))
}

/// Gauge-transform potential coefficients at deformation `d`.
#[pyfunction]
fn gauge_transform(coeffs: Vec<Complex64>, d: &Deformation) -> PyResult<Vec<Complex64>> {
    gauge_transform_potential(&PotentialSpec::new(coeffs), &d.inner)
        .map(|v| v.coeffs)
        .map_err(to_py_err)
}

/// Solve the q-independent invariance problem; returns a dict with keys
/// `f`, `w` (None where undetermined), `energy`, and `method`.
#[pyfunction]
fn solve_invariant(
    py: Python<'_>,
    potential: Vec<Complex64>,
    f0: Complex64,
    f1: Complex64,
    s: f64,
    order: usize,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let sol = solve_q_independent(
        &PotentialSpec::new(potential),
        f0,
        f1,
        &qcore::Deformation::unimodular(s),
        order,
    )
    .map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("f", sol.f.clone())?;
    dict.set_item("w", sol.w.clone())?;
    dict.set_item("energy", sol.energy)?;
    dict.set_item("method", sol.method.clone())?;
    Ok(dict.into())
}

/// Deformed Coulomb curve samples: dict with `points` as `(x, v, converged)`
/// tuples plus the detected pole abscissas.
#[pyfunction]
fn coulomb_curve(
    py: Python<'_>,
    mode: &str,
    s: f64,
    xs: Vec<f64>,
    terms: usize,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let d = match mode {
        "real" => qcore::Deformation::real_exp(s),
        "complex" => qcore::Deformation::unimodular(s),
        other => {
            return Err(PyValueError::new_err(format!(
                "mode must be 'real' or 'complex', got {other}"
            )))
        }
    };
    let curve = deform_coulomb_curve(&d, &xs, terms);
    let dict = pyo3::types::PyDict::new(py);
    let points: Vec<(f64, Complex64, bool)> = curve
        .points
        .iter()
        .map(|p| (p.x, p.v, p.converged))
        .collect();
    dict.set_item("points", points)?;
    dict.set_item("pole_ratio_estimate", curve.pole_estimate_ratio)?;
    dict.set_item("pole_scan", curve.pole_scan.clone())?;
    dict.set_item("pole_law", curve.pole_law)?;
    dict.set_item("excluded_modes", curve.excluded_modes.clone())?;
    Ok(dict.into())
}

/// Modified Bessel function of order 1/4: `kind` is `"I"` or `"K"`.
#[pyfunction]
fn bessel_quarter_order(kind: &str, u: f64) -> PyResult<f64> {
    let kind = match kind {
        "I" => BesselKind::I,
        "K" => BesselKind::K,
        other => {
            return Err(PyValueError::new_err(format!(
                "kind must be 'I' or 'K', got {other}"
            )))
        }
    };
    bessel_quarter(kind, u).map_err(to_py_err)
}

/// Scan the separable solution variants of the limit PDE; returns a ranked
/// list of dicts with keys `sigma_y`, `kind`, `residual`, `is_printed`.
#[pyfunction]
#[pyo3(signature = (alpha = 1.0))]
fn pde_variant_scan(py: Python<'_>, alpha: f64) -> PyResult<Vec<Py<pyo3::types::PyDict>>> {
    let results = variant_scan(alpha, &GridSpec::default()).map_err(to_py_err)?;
    results
        .iter()
        .map(|r| {
            let dict = pyo3::types::PyDict::new(py);
            dict.set_item(
                "sigma_y",
                match r.sigma_y {
                    Sign::Plus => "+",
                    Sign::Minus => "-",
                },
            )?;
            dict.set_item("kind", format!("{:?}", r.kind))?;
            dict.set_item("residual", r.max_relative_residual)?;
            dict.set_item("is_printed", r.is_printed)?;
            Ok(dict.into())
        })
        .collect()
}

fn parse_branch(branch: &str) -> PyResult<BranchSign> {
    match branch {
        "near-zero" => Ok(BranchSign::NearZero),
        "near-pi" => Ok(BranchSign::NearPi),
        other => Err(PyValueError::new_err(format!(
            "branch must be 'near-zero' or 'near-pi', got {other}"
        ))),
    }
}

/// Induced vector potential at a point.
#[pyfunction]
#[pyo3(signature = (k, eps, r, branch = "near-zero"))]
fn induced_vector_potential(
    k: [f64; 3],
    eps: f64,
    r: [f64; 3],
    branch: &str,
) -> PyResult<(f64, f64, f64)> {
    let a = vector_potential(&WaveVector::new(k), eps, parse_branch(branch)?, r);
    Ok((a[0], a[1], a[2]))
}

/// Analytic curl of the induced vector potential.
#[pyfunction]
#[pyo3(signature = (k, eps, branch = "near-zero"))]
fn induced_curl(k: [f64; 3], eps: f64, branch: &str) -> PyResult<(f64, f64, f64)> {
    let c = curl_vector_potential(&WaveVector::new(k), eps, parse_branch(branch)?);
    Ok((c[0], c[1], c[2]))
}

/// Path-ordered phase factor `exp(i int A . dl)` along a polyline.
#[pyfunction]
#[pyo3(signature = (k, eps, path, branch = "near-zero"))]
fn path_phase(
    k: [f64; 3],
    eps: f64,
    path: Vec<[f64; 3]>,
    branch: &str,
) -> PyResult<Complex64> {
    if path.len() < 2 {
        return Err(PyValueError::new_err("path needs at least two vertices"));
    }
    let field = GaugeField::new(k, eps, parse_branch(branch)?);
    Ok(phase_integral(&field, &path))
}

/// Run the full verification suite; returns the ledger as a JSON string.
#[pyfunction]
#[pyo3(signature = (order = 20, fuzz_trials = 200))]
fn run_verify(order: usize, fuzz_trials: usize) -> String {
    let doc = qsym::ledger::run_all_verifications(&qsym::ledger::VerifyOptions {
        order,
        fuzz_trials,
    });
    qsym::ledger::ledger_to_json(&doc)
}

#[pymodule]
fn qsym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Deformation>()?;
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(qnumber, m)?)?;
    m.add_function(wrap_pyfunction!(q_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(jackson_integral, m)?)?;
    m.add_function(wrap_pyfunction!(q_exponential, m)?)?;
    m.add_function(wrap_pyfunction!(dilation_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_realization_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(gauge_transform, m)?)?;
    m.add_function(wrap_pyfunction!(solve_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(coulomb_curve, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_quarter_order, m)?)?;
    m.add_function(wrap_pyfunction!(pde_variant_scan, m)?)?;
    m.add_function(wrap_pyfunction!(induced_vector_potential, m)?)?;
    m.add_function(wrap_pyfunction!(induced_curl, m)?)?;
    m.add_function(wrap_pyfunction!(path_phase, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
