//! Configuration schemas and command implementations behind the `qsym`
//! binary.
//!
//! Every command parses and validates its JSON config before computing
//! (unknown keys are rejected), produces deterministic output (fixed float
//! formatting, fixed row ordering), and maps failures to the documented
//! exit codes: 0 ok, 2 config, 3 numeric, 4 singular mode, 5 ledger
//! regression.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ledger::{ledger_to_json, run_all_verifications, LedgerDocument, VerifyOptions};
use crate::ncplane::{
    bessel_quarter_d2, limit_coefficient_comparison, pde_residual, eq_limit_operator,
    variant_scan, BesselKind, GridSpec, NcplaneError, Sign, SolutionCandidate,
};
use crate::perturb::{phase_integral, curl_vector_potential, BranchSign, GaugeField, WaveVector};
use crate::qcore::Deformation;
use crate::symmetry1d::{
    gauge_transform_potential, invariance_residual, partition_potential, partition_recursion,
    singular_scan, solve_q_independent, PartitionPotentialSpec, PotentialSpec, SymmetryError,
};

/// Exit codes of the `qsym` binary.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numeric(String),
    SingularMode(String),
    LedgerRegression(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::SingularMode(_) => 4,
            CliError::LedgerRegression(_) => 5,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Config(m) => format!("config error: {m}"),
            CliError::Numeric(m) => format!("numeric failure: {m}"),
            CliError::SingularMode(m) => format!("singular mode: {m}"),
            CliError::LedgerRegression(ids) => {
                format!("ledger regression in entries: {}", ids.join(", "))
            }
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::SingularModes { .. } | SymmetryError::DegeneratePartition { .. } => {
                CliError::SingularMode(e.to_string())
            }
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<NcplaneError> for CliError {
    fn from(e: NcplaneError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

/// Float formatting used in every CSV cell: 17 significant digits, so values
/// round-trip bit-exactly and identical configs give byte-identical output.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// RFC 4180 quoting: quote when the cell contains a comma, quote, or newline.
pub fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn parse_config<T: for<'de> Deserialize<'de>>(json: &str) -> Result<T, CliError> {
    serde_json::from_str(json).map_err(|e| CliError::Config(e.to_string()))
}

// ---------------------------------------------------------------------------
// deform-potential
// ---------------------------------------------------------------------------

/// Deformation mode of a potential sweep: `real` means `q = e^s`, `complex`
/// means `q = e^{is}` (s in radians, negative values match the figure
/// captions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformMode {
    Real,
    Complex,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeformPotentialConfig {
    pub mode: DeformMode,
    /// Deformation parameters; `None` selects the caption defaults.
    pub s_values: Option<Vec<f64>>,
    /// Grid bounds; `None` selects `[0, 2]` in real mode and
    /// `[-0.95, 0.95]` (inside the convergence disk) in complex mode.
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub x_steps: usize,
    /// Series truncation (number of Coulomb coefficients).
    pub terms: usize,
    /// Tail threshold for the per-point convergence flag.
    pub tolerance: f64,
}

impl Default for DeformPotentialConfig {
    fn default() -> Self {
        DeformPotentialConfig {
            mode: DeformMode::Real,
            s_values: None,
            x_min: None,
            x_max: None,
            x_steps: 101,
            terms: 200,
            tolerance: 1e-6,
        }
    }
}

impl DeformPotentialConfig {
    fn range(&self) -> (f64, f64) {
        let defaults = match self.mode {
            DeformMode::Real => (0.0, 2.0),
            DeformMode::Complex => (-0.95, 0.95),
        };
        (
            self.x_min.unwrap_or(defaults.0),
            self.x_max.unwrap_or(defaults.1),
        )
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.x_steps < 2 {
            return Err(CliError::Config("x_steps must be at least 2".into()));
        }
        if self.terms < 20 {
            return Err(CliError::Config("terms must be at least 20".into()));
        }
        let (lo, hi) = self.range();
        if lo >= hi {
            return Err(CliError::Config("x_min must be below x_max".into()));
        }
        Ok(())
    }

    fn s_defaults(&self) -> Vec<f64> {
        match self.mode {
            DeformMode::Real => vec![0.0, -0.1, -0.25, -0.5, -0.75],
            DeformMode::Complex => {
                vec![0.0, -0.15, -0.25, -0.5, -PI / 4.0, -PI / 2.0, -PI, -10.0]
            }
        }
    }
}

/// Sample the deformed Coulomb curves. Returns the CSV body and a summary of
/// detected poles per `s`, one line per sweep value.
pub fn cmd_deform_potential(
    config_json: Option<&str>,
) -> Result<(String, Vec<String>), CliError> {
    let cfg: DeformPotentialConfig = match config_json {
        Some(j) => parse_config(j)?,
        None => DeformPotentialConfig::default(),
    };
    cfg.validate()?;
    let s_values = cfg.s_values.clone().unwrap_or_else(|| cfg.s_defaults());
    let (x_lo, x_hi) = cfg.range();
    let grid: Vec<f64> = (0..cfg.x_steps)
        .map(|i| x_lo + (x_hi - x_lo) * i as f64 / (cfg.x_steps - 1) as f64)
        .collect();

    let mut out = String::from("x,s,re_v,im_v,converged\n");
    let mut summary = Vec::new();
    for &s in &s_values {
        let d = match cfg.mode {
            DeformMode::Real => Deformation::real_exp(s),
            DeformMode::Complex => Deformation::unimodular(s),
        };
        let curve =
            crate::symmetry1d::deform_coulomb_curve_with_tolerance(&d, &grid, cfg.terms, cfg.tolerance);
        if !curve.points.iter().all(|p| p.v.re.is_finite() && p.v.im.is_finite()) {
            return Err(CliError::Numeric(format!(
                "non-finite potential values at s = {s}"
            )));
        }
        for pt in &curve.points {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f64(pt.x),
                fmt_f64(s),
                fmt_f64(pt.v.re),
                fmt_f64(pt.v.im),
                pt.converged
            ));
        }
        summary.push(format!(
            "s = {s}: ratio-pole {:?}, scan poles {:?}, law {:?}, excluded modes {:?}",
            curve.pole_estimate_ratio, curve.pole_scan, curve.pole_law, curve.excluded_modes
        ));
    }
    Ok((out, summary))
}

// ---------------------------------------------------------------------------
// invariant-solve
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InvariantSolveConfig {
    /// Potential coefficients `V0_k` as `[re, im]` pairs, index = power.
    pub potential: Vec<[f64; 2]>,
    pub f0: [f64; 2],
    pub f1: [f64; 2],
    /// Unimodular deformation phases to solve at (q-independence is
    /// verified across them).
    pub s_values: Vec<f64>,
    pub order: usize,
    pub tolerance: f64,
}

impl Default for InvariantSolveConfig {
    fn default() -> Self {
        InvariantSolveConfig {
            potential: vec![[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
            f0: [1.0, 0.0],
            f1: [0.0, 0.0],
            s_values: vec![0.3, 1.1, 2.0],
            order: 20,
            tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InvariantSolveOutput {
    pub schema_version: u32,
    pub f: Vec<[f64; 2]>,
    /// `W(k)` per solved deformation; `null` where undetermined.
    pub w_per_s: Vec<Vec<Option<[f64; 2]>>>,
    pub energy: [f64; 2],
    pub q_independence_spread: f64,
    pub w_spread: f64,
    pub commutant_residual_max: f64,
    pub within_tolerance: bool,
}

pub fn cmd_invariant_solve(config_json: Option<&str>) -> Result<String, CliError> {
    let cfg: InvariantSolveConfig = match config_json {
        Some(j) => parse_config(j)?,
        None => InvariantSolveConfig::default(),
    };
    if cfg.s_values.is_empty() {
        return Err(CliError::Config("s_values must be nonempty".into()));
    }
    if cfg.order < 4 {
        return Err(CliError::Config("order must be at least 4".into()));
    }
    let v0 = PotentialSpec::new(
        cfg.potential
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    );
    let f0 = Complex64::new(cfg.f0[0], cfg.f0[1]);
    let f1 = Complex64::new(cfg.f1[0], cfg.f1[1]);

    // singular scan first: the actual singular set, not an assumption
    for &s in &cfg.s_values {
        let d = Deformation::unimodular(s);
        let report = singular_scan(&v0, &d);
        if !report.gauge_modes.is_empty() {
            return Err(CliError::SingularMode(format!(
                "s = {s}: gauge modes k = {:?}",
                report.gauge_modes
            )));
        }
        if report.recursion_degenerate {
            return Err(CliError::SingularMode(format!(
                "s = {s}: q^2 = 1 degenerates the recursion denominators"
            )));
        }
    }

    let mut solutions = Vec::new();
    for &s in &cfg.s_values {
        let d = Deformation::unimodular(s);
        solutions.push(solve_q_independent(&v0, f0, f1, &d, cfg.order)?);
    }

    let reference = &solutions[0];
    let mut spread: f64 = 0.0;
    for sol in &solutions[1..] {
        for (a, b) in sol.f.iter().zip(&reference.f) {
            spread = spread.max((a - b).norm());
        }
    }
    let mut w_spread: f64 = 0.0;
    for sol in &solutions[1..] {
        for (a, b) in sol.w.iter().zip(&reference.w) {
            if let (Some(a), Some(b)) = (a, b) {
                w_spread = w_spread.max((a - b).norm());
            }
        }
    }

    let mut commutant_max: f64 = 0.0;
    for (sol, &s) in solutions.iter().zip(&cfg.s_values) {
        let d = Deformation::unimodular(s);
        let vq = gauge_transform_potential(&v0, &d)?;
        let h = sol.hamiltonian(vq);
        let res = invariance_residual(
            &crate::dilation::dilation_op(&d, 0),
            &h,
            &sol.f_series(cfg.order),
        );
        commutant_max = commutant_max.max(res.max_coeff_norm());
    }

    let output = InvariantSolveOutput {
        schema_version: crate::ledger::SCHEMA_VERSION,
        f: reference.f.iter().map(|c| [c.re, c.im]).collect(),
        w_per_s: solutions
            .iter()
            .map(|sol| sol.w.iter().map(|w| w.map(|c| [c.re, c.im])).collect())
            .collect(),
        energy: [reference.energy.re, reference.energy.im],
        q_independence_spread: spread,
        w_spread,
        commutant_residual_max: commutant_max,
        within_tolerance: spread <= cfg.tolerance && commutant_max <= cfg.tolerance,
    };
    serde_json::to_string_pretty(&output).map_err(|e| CliError::Numeric(e.to_string()))
}

// ---------------------------------------------------------------------------
// partition-solve
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PartitionSolveConfig {
    pub npartition: usize,
    pub n_index: usize,
    pub a: Vec<[f64; 2]>,
    pub b: Vec<[f64; 2]>,
    pub c: Vec<[f64; 2]>,
    pub f0: [f64; 2],
    pub f1: [f64; 2],
    pub order: usize,
}

impl Default for PartitionSolveConfig {
    fn default() -> Self {
        PartitionSolveConfig {
            npartition: 2,
            n_index: 1,
            a: vec![],
            b: vec![[1.0, 0.0]],
            c: vec![],
            f0: [1.0, 0.0],
            f1: [0.0, 0.0],
            order: 16,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PartitionSolveOutput {
    pub schema_version: u32,
    pub s_point: f64,
    pub f: Vec<[f64; 2]>,
    pub w: Vec<Option<[f64; 2]>>,
    pub energy: [f64; 2],
    pub commutant_residual: f64,
    pub eq14_max_diff: f64,
    pub eq14_ratio: Option<[f64; 2]>,
    pub potential_exponents: Vec<usize>,
}

pub fn cmd_partition_solve(config_json: Option<&str>) -> Result<String, CliError> {
    let cfg: PartitionSolveConfig = match config_json {
        Some(j) => parse_config(j)?,
        None => PartitionSolveConfig::default(),
    };
    if cfg.npartition < 1 {
        return Err(CliError::Config("npartition must be at least 1".into()));
    }
    let cvt = |v: &Vec<[f64; 2]>| -> Vec<Complex64> {
        v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
    };
    let spec = PartitionPotentialSpec::new(cfg.npartition, cvt(&cfg.a), cvt(&cfg.b), cvt(&cfg.c));
    let sol = partition_recursion(
        &spec,
        cfg.n_index,
        Complex64::new(cfg.f0[0], cfg.f0[1]),
        Complex64::new(cfg.f1[0], cfg.f1[1]),
        cfg.order,
    )?;
    let vn = partition_potential(&spec);
    let output = PartitionSolveOutput {
        schema_version: crate::ledger::SCHEMA_VERSION,
        s_point: spec.s_point(cfg.n_index),
        f: sol.solution.f.iter().map(|c| [c.re, c.im]).collect(),
        w: sol
            .solution
            .w
            .iter()
            .map(|w| w.map(|c| [c.re, c.im]))
            .collect(),
        energy: [sol.solution.energy.re, sol.solution.energy.im],
        commutant_residual: sol.commutant_residual,
        eq14_max_diff: sol.eq14_max_diff,
        eq14_ratio: sol.eq14_ratio.map(|r| [r.re, r.im]),
        potential_exponents: (0..vn.coeffs.len())
            .filter(|&k| vn.coeff(k) != Complex64::ZERO)
            .collect(),
    };
    serde_json::to_string_pretty(&output).map_err(|e| CliError::Numeric(e.to_string()))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    pub order: usize,
    pub fuzz_trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 20,
            fuzz_trials: 1000,
        }
    }
}

/// Run every verification suite. Returns the ledger JSON and one status line
/// per entry; errors with exit code 5 on baseline regressions.
pub fn cmd_verify(
    config_json: Option<&str>,
    order_override: Option<usize>,
) -> Result<(String, Vec<String>, LedgerDocument), CliError> {
    let mut cfg: VerifyConfig = match config_json {
        Some(j) => parse_config(j)?,
        None => VerifyConfig::default(),
    };
    if let Some(order) = order_override {
        cfg.order = order;
    }
    if cfg.fuzz_trials == 0 {
        return Err(CliError::Config("fuzz_trials must be positive".into()));
    }
    let doc = run_all_verifications(&VerifyOptions {
        order: cfg.order,
        fuzz_trials: cfg.fuzz_trials,
    });
    let lines: Vec<String> = doc
        .entries
        .iter()
        .map(|e| format!("{:<36} {:?}: {}", e.id, e.verdict, e.measured))
        .collect();
    let json = ledger_to_json(&doc);
    let regressions = doc.regressions();
    if !regressions.is_empty() {
        return Err(CliError::LedgerRegression(regressions));
    }
    Ok((json, lines, doc))
}

// ---------------------------------------------------------------------------
// ncplane-check
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NcplaneCheckConfig {
    pub alpha: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub ny: usize,
    /// When set, the best variant's residual field is also rendered as CSV
    /// (columns x, y, residual) and returned alongside the JSON summary.
    pub export_residual_field: bool,
}

impl Default for NcplaneCheckConfig {
    fn default() -> Self {
        let g = GridSpec::default();
        NcplaneCheckConfig {
            alpha: 1.0,
            x_min: g.x_min,
            x_max: g.x_max,
            nx: g.nx,
            y_min: g.y_min,
            y_max: g.y_max,
            ny: g.ny,
            export_residual_field: false,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NcplaneCheckOutput {
    pub schema_version: u32,
    pub variants: Vec<VariantSummary>,
    pub bessel_wronskian_residuals: Vec<[f64; 2]>,
    pub limit_coefficient_table: Vec<SlotComparison>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VariantSummary {
    pub sigma_y: String,
    pub kind: String,
    pub max_relative_residual: f64,
    pub is_printed: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SlotComparison {
    pub slot: String,
    pub general_at_minus_one: [[f64; 2]; 3],
    pub printed_limit: [[f64; 2]; 3],
    pub matches: bool,
}

pub fn cmd_ncplane_check(
    config_json: Option<&str>,
) -> Result<(String, Option<String>), CliError> {
    let cfg: NcplaneCheckConfig = match config_json {
        Some(j) => parse_config(j)?,
        None => NcplaneCheckConfig::default(),
    };
    if cfg.y_min <= 0.0 {
        return Err(CliError::Config(
            "y_min must be positive (the candidate has a pole at y = 0)".into(),
        ));
    }
    if cfg.nx < 2 || cfg.ny < 2 {
        return Err(CliError::Config("grid must have at least 2x2 points".into()));
    }
    let grid = GridSpec {
        x_min: cfg.x_min,
        x_max: cfg.x_max,
        nx: cfg.nx,
        y_min: cfg.y_min,
        y_max: cfg.y_max,
        ny: cfg.ny,
    };
    let results = variant_scan(cfg.alpha, &grid)?;
    let wronskian: Vec<[f64; 2]> = [0.5, 2.0, 10.0]
        .iter()
        .map(|&u| {
            let (iv, div, _) = bessel_quarter_d2(BesselKind::I, u)?;
            let (kv, dkv, _) = bessel_quarter_d2(BesselKind::K, u)?;
            Ok([u, (iv * dkv - div * kv + 1.0 / u).abs()])
        })
        .collect::<Result<_, NcplaneError>>()?;

    let lin_to_json = |l: &crate::ncplane::LinXY| -> [[f64; 2]; 3] {
        [
            [l.c0.re, l.c0.im],
            [l.cx.re, l.cx.im],
            [l.cy.re, l.cy.im],
        ]
    };
    let table: Vec<SlotComparison> = limit_coefficient_comparison()
        .iter()
        .map(|row| SlotComparison {
            slot: row.slot.to_string(),
            general_at_minus_one: lin_to_json(&row.general_at_minus_one),
            printed_limit: lin_to_json(&row.printed_limit),
            matches: row.matches,
        })
        .collect();

    let output = NcplaneCheckOutput {
        schema_version: crate::ledger::SCHEMA_VERSION,
        variants: results
            .iter()
            .map(|r| VariantSummary {
                sigma_y: match r.sigma_y {
                    Sign::Plus => "+".into(),
                    Sign::Minus => "-".into(),
                },
                kind: format!("{:?}", r.kind),
                max_relative_residual: r.max_relative_residual,
                is_printed: r.is_printed,
            })
            .collect(),
        bessel_wronskian_residuals: wronskian,
        limit_coefficient_table: table,
    };
    let json =
        serde_json::to_string_pretty(&output).map_err(|e| CliError::Numeric(e.to_string()))?;

    let csv = if cfg.export_residual_field {
        let best = &results[0];
        let cand = SolutionCandidate::variant(cfg.alpha, best.sigma_y, best.kind);
        let field = pde_residual(&eq_limit_operator(), &cand, &grid)?;
        let mut s = String::from("x,y,residual\n");
        for (x, y, r, _) in &field.samples {
            s.push_str(&format!("{},{},{}\n", fmt_f64(*x), fmt_f64(*y), fmt_f64(*r)));
        }
        Some(s)
    } else {
        None
    };
    Ok((json, csv))
}

// ---------------------------------------------------------------------------
// phase-demo
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhaseDemoConfig {
    pub k: [f64; 3],
    pub eps: f64,
    /// "near-zero" or "near-pi".
    pub branch: String,
    /// Polylines; `None` selects a rectangle plus two endpoint-sharing paths.
    pub paths: Option<Vec<Vec<[f64; 3]>>>,
}

impl Default for PhaseDemoConfig {
    fn default() -> Self {
        PhaseDemoConfig {
            k: [1.0, 1.0, 1.0],
            eps: 0.01,
            branch: "near-zero".into(),
            paths: None,
        }
    }
}

pub fn cmd_phase_demo(config_json: Option<&str>) -> Result<String, CliError> {
    let cfg: PhaseDemoConfig = match config_json {
        Some(j) => parse_config(j)?,
        None => PhaseDemoConfig::default(),
    };
    let branch = match cfg.branch.as_str() {
        "near-zero" => BranchSign::NearZero,
        "near-pi" => BranchSign::NearPi,
        other => {
            return Err(CliError::Config(format!(
                "branch must be near-zero or near-pi, got {other}"
            )))
        }
    };
    let paths: Vec<Vec<[f64; 3]>> = cfg.paths.clone().unwrap_or_else(|| {
        let side = 0.1;
        vec![
            // closed rectangle in the xy-plane
            vec![
                [0.3, -0.2, 0.7],
                [0.3 + side, -0.2, 0.7],
                [0.3 + side, -0.2 + side, 0.7],
                [0.3, -0.2 + side, 0.7],
                [0.3, -0.2, 0.7],
            ],
            // two open paths sharing endpoints
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]],
            vec![[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]],
        ]
    });
    for (i, p) in paths.iter().enumerate() {
        if p.len() < 2 {
            return Err(CliError::Config(format!(
                "path {i} must have at least 2 vertices"
            )));
        }
    }
    let field = GaugeField::new(cfg.k, cfg.eps, branch);
    let k = WaveVector::new(cfg.k);
    let curl = curl_vector_potential(&k, cfg.eps, branch);

    let mut out = String::from("row,id,phase_re,phase_im,phase_arg,stokes_arg,stokes_abs_err\n");
    let mut phases = Vec::new();
    for (i, path) in paths.iter().enumerate() {
        let phase = phase_integral(&field, path);
        phases.push(phase);
        let closed = path.first() == path.last();
        let planar_z = path.iter().all(|p| (p[2] - path[0][2]).abs() < 1e-14);
        let stokes_cols = if closed && planar_z && path.len() == 5 {
            // rectangle in a z = const plane: signed area * curl_z
            let area = (path[1][0] - path[0][0]) * (path[2][1] - path[1][1]);
            let expect = curl[2] * area;
            let err = (phase - Complex64::from_polar(1.0, expect)).norm();
            (fmt_f64(expect), fmt_f64(err))
        } else {
            (String::new(), String::new())
        };
        out.push_str(&format!(
            "path,{},{},{},{},{},{}\n",
            i,
            fmt_f64(phase.re),
            fmt_f64(phase.im),
            fmt_f64(phase.arg()),
            stokes_cols.0,
            stokes_cols.1
        ));
    }
    for i in 0..phases.len() {
        for j in (i + 1)..phases.len() {
            let diff = phases[i] / phases[j];
            out.push_str(&format!(
                "pair,{},{},{},{},,\n",
                csv_cell(&format!("{i}/{j}")),
                fmt_f64(diff.re),
                fmt_f64(diff.im),
                fmt_f64(diff.arg()),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deform_defaults_are_deterministic() {
        let (a, _) = cmd_deform_potential(None).unwrap();
        let (b, _) = cmd_deform_potential(None).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("x,s,re_v,im_v,converged\n"));
        // s = 0 rows equal the undeformed potential
        for line in a.lines().skip(1).take(3) {
            let cells: Vec<&str> = line.split(',').collect();
            let x: f64 = cells[0].parse().unwrap();
            let s: f64 = cells[1].parse().unwrap();
            let re: f64 = cells[2].parse().unwrap();
            assert_eq!(s, 0.0);
            assert!((re - 1.0 / (x - 1.0)).abs() < 1e-9, "x={x}, re={re}");
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"mode": "real", "bogus": 1}"#;
        match cmd_deform_potential(Some(bad)) {
            Err(CliError::Config(_)) => {}
            other => panic!("expected config error, got {other:?}"),
        }
        let bad = r#"{"order": 20, "fuzz_trials": 100, "extra": true}"#;
        assert!(matches!(
            cmd_verify(Some(bad), None),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn invariant_solve_default_and_singular() {
        let json = cmd_invariant_solve(None).unwrap();
        let out: InvariantSolveOutput = serde_json::from_str(&json).unwrap();
        assert!(out.q_independence_spread < 1e-10);
        assert!(out.commutant_residual_max < 1e-10);
        assert!(out.within_tolerance);

        // V0 = x at q = e^{i pi}: the recursion denominators degenerate
        let cfg = r#"{
            "potential": [[0.0, 0.0], [1.0, 0.0]],
            "s_values": [3.141592653589793]
        }"#;
        match cmd_invariant_solve(Some(cfg)) {
            Err(e @ CliError::SingularMode(_)) => assert_eq!(e.exit_code(), 4),
            other => panic!("expected singular mode, got {other:?}"),
        }
    }

    #[test]
    fn partition_solve_default() {
        let json = cmd_partition_solve(None).unwrap();
        let out: PartitionSolveOutput = serde_json::from_str(&json).unwrap();
        assert!((out.s_point - PI / 2.0).abs() < 1e-15);
        assert_eq!(out.potential_exponents, vec![2]);
        assert!(out.eq14_max_diff.is_finite());
    }

    #[test]
    fn phase_demo_default() {
        let csv = cmd_phase_demo(None).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("row,id,"));
        // 3 paths + 3 pairs
        assert_eq!(lines.len(), 1 + 3 + 3);
        // the rectangle row carries a Stokes error below 1e-6
        let rect: Vec<&str> = lines[1].split(',').collect();
        let err: f64 = rect[6].parse().unwrap();
        assert!(err < 1e-6);
        // the endpoint-sharing pair differs in phase
        let pair_line = lines
            .iter()
            .find(|l| l.starts_with("pair,1/2"))
            .expect("pair row");
        let cells: Vec<&str> = pair_line.split(',').collect();
        let arg: f64 = cells[4].parse().unwrap();
        assert!(arg.abs() > 1e-6);
    }

    #[test]
    fn verify_returns_ledger() {
        let cfg = r#"{"order": 16, "fuzz_trials": 60}"#;
        let (json, lines, doc) = cmd_verify(Some(cfg), None).unwrap();
        assert!(json.contains("schema_version"));
        assert_eq!(lines.len(), doc.entries.len());
        assert!(doc.all_accounted_for());
    }

    #[test]
    fn ncplane_check_output() {
        let (json, csv) = cmd_ncplane_check(Some(r#"{"export_residual_field": true}"#)).unwrap();
        let out: NcplaneCheckOutput = serde_json::from_str(&json).unwrap();
        assert_eq!(out.variants.len(), 4);
        assert!(out.variants[0].max_relative_residual < 1e-8);
        assert!(out
            .limit_coefficient_table
            .iter()
            .any(|row| !row.matches));
        for [_, w] in &out.bessel_wronskian_residuals {
            assert!(*w < 1e-9);
        }
        let csv = csv.unwrap();
        assert!(csv.starts_with("x,y,residual\n"));
        assert_eq!(csv.lines().count(), 1 + 41 * 41);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_cell("plain"), "plain");
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
        assert_eq!(csv_cell("q\"q"), "\"q\"\"q\"");
    }
}
