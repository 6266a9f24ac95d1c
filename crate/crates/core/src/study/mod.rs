//! Batch studies: grids of `(method, k, m, params)` cells solved in
//! parallel and written out as CSV, JSON, plain-text tables and SVG plots.
//!
//! A study is described by a [`StudyConfig`], usually read from JSON:
//!
//! ```json
//! {
//!   "kind": "convergence",
//!   "methods": ["ldg1", "ldg2"],
//!   "ks": [10],
//!   "ms": [5, 10, 20, 40],
//!   "params": [{"beta0": 0.001, "beta_scaling": "inv-edge",
//!               "delta0": 0.1, "delta_scaling": "edge"}],
//!   "output_dir": "results/convergence",
//!   "formats": ["csv", "json", "svg"]
//! }
//! ```
//!
//! Missing `params` default to `δ = 0.1 h_e`, `β = 0.001 / h_e`. The
//! `kh-constant` and `k3h2-constant` kinds take their mesh sizes from the
//! `products` list instead of `ms`.

mod output;
mod svg;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    error_norms, interpolation_baseline, stability_audit, trace_sample, ErrorReport,
    StabilityAudit, TraceField,
};
use crate::assembly::{FluxParams, Method, Scaling};
use crate::error::{Error, Result};
use crate::mesh::build_structured_mesh;
use crate::problem::RadialProblem;
use crate::solve::solve;

pub use output::{format_table, RateTable};
pub use svg::{line_plot, PlotSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    Convergence,
    Sensitivity,
    KhConstant,
    K3h2Constant,
    Table,
    Trace,
    Audit,
}

impl StudyKind {
    pub fn name(self) -> &'static str {
        match self {
            StudyKind::Convergence => "convergence",
            StudyKind::Sensitivity => "sensitivity",
            StudyKind::KhConstant => "kh-constant",
            StudyKind::K3h2Constant => "k3h2-constant",
            StudyKind::Table => "table",
            StudyKind::Trace => "trace",
            StudyKind::Audit => "audit",
        }
    }

    fn has_error_reports(self) -> bool {
        !matches!(self, StudyKind::Trace | StudyKind::Audit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
    /// Plain-text table in the layout of the method comparison table.
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub kind: StudyKind,
    pub methods: Vec<Method>,
    pub ks: Vec<f64>,
    #[serde(default)]
    pub ms: Vec<usize>,
    #[serde(default = "default_params")]
    pub params: Vec<FluxParams>,
    /// `kh` or `k³h²` targets for the constant-product kinds.
    #[serde(default)]
    pub products: Vec<f64>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<OutputFormat>,
    #[serde(default = "default_trace_samples")]
    pub trace_samples: usize,
}

fn default_params() -> Vec<FluxParams> {
    vec![FluxParams::default()]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv, OutputFormat::Json]
}

fn default_trace_samples() -> usize {
    201
}

/// Mesh sizes of the method comparison table; 80 and 160 are opt-in.
pub const TABLE_MS: [usize; 4] = [5, 10, 20, 40];
pub const TABLE_MS_FULL: [usize; 6] = [5, 10, 20, 40, 80, 160];

impl StudyConfig {
    pub fn new(kind: StudyKind, methods: Vec<Method>, ks: Vec<f64>, ms: Vec<usize>) -> Self {
        StudyConfig {
            kind,
            methods,
            ks,
            ms,
            params: default_params(),
            products: Vec::new(),
            output_dir: default_output_dir(),
            formats: default_formats(),
            trace_samples: default_trace_samples(),
        }
    }

    /// Both LDG methods at `k = 10` with the default parameters.
    pub fn table1(full: bool) -> Self {
        let ms = if full {
            TABLE_MS_FULL.to_vec()
        } else {
            TABLE_MS.to_vec()
        };
        let mut c = StudyConfig::new(
            StudyKind::Table,
            vec![Method::Ldg1, Method::Ldg2],
            vec![10.0],
            ms,
        );
        c.formats = vec![OutputFormat::Csv, OutputFormat::Json, OutputFormat::Table];
        c
    }

    /// `β ∈ {0.001/h_e, 0.01/h_e, 1/h_e, 1}` at `δ = 0.1 h_e`.
    pub fn beta_sweep(ks: Vec<f64>, ms: Vec<usize>) -> Self {
        let mut c = StudyConfig::new(
            StudyKind::Sensitivity,
            vec![Method::Ldg1, Method::Ldg2],
            ks,
            ms,
        );
        c.params = beta_sweep_params();
        c
    }

    /// `δ ∈ {0.001 h_e, 0.1 h_e, 10 h_e, 0.1}` at `β = 0.001 / h_e`.
    pub fn delta_sweep(ks: Vec<f64>, ms: Vec<usize>) -> Self {
        let mut c = StudyConfig::new(
            StudyKind::Sensitivity,
            vec![Method::Ldg1, Method::Ldg2],
            ks,
            ms,
        );
        c.params = delta_sweep_params();
        c
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: StudyConfig = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        StudyConfig::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        if self.methods.is_empty() {
            return bad("method list is empty");
        }
        if self.ks.is_empty() {
            return bad("k list is empty");
        }
        if self.ks.iter().any(|&k| !(k > 0.0) || !k.is_finite()) {
            return bad("k must be positive");
        }
        match self.kind {
            StudyKind::KhConstant | StudyKind::K3h2Constant => {
                if self.products.is_empty() {
                    return bad("products list is empty");
                }
                if self.products.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
                    return bad("products must be positive");
                }
            }
            _ => {
                if self.ms.is_empty() {
                    return bad("m list is empty");
                }
                if self.ms.contains(&0) {
                    return bad("m must be at least 1");
                }
            }
        }
        if self.params.is_empty() {
            return bad("parameter list is empty");
        }
        for p in &self.params {
            p.validate()?;
        }
        if self.formats.is_empty() {
            return bad("format list is empty");
        }
        if self.kind == StudyKind::Audit && self.methods.contains(&Method::FemP1) {
            return bad("stability audit applies to the LDG methods only");
        }
        if self.kind == StudyKind::Trace && self.trace_samples < 2 {
            return bad("trace needs at least two samples");
        }
        if self.kind == StudyKind::Sensitivity {
            sweep_axis(&self.params)?;
        }
        Ok(())
    }

    /// Cells in report order: method (config order), `k`, `m`, then params.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &method in &self.methods {
            let mut ks = self.ks.clone();
            ks.sort_by(f64::total_cmp);
            ks.dedup();
            for &k in &ks {
                let mut ms = self.mesh_sizes(k);
                ms.sort_unstable();
                ms.dedup();
                for m in ms {
                    let params: &[FluxParams] = if method.uses_flux_params() {
                        &self.params
                    } else {
                        &self.params[..1]
                    };
                    for p in params {
                        out.push(Cell {
                            method,
                            k,
                            m,
                            params: *p,
                        });
                    }
                }
            }
        }
        out
    }

    fn mesh_sizes(&self, k: f64) -> Vec<usize> {
        match self.kind {
            StudyKind::KhConstant => self.products.iter().map(|&c| mesh_for_h(c / k)).collect(),
            StudyKind::K3h2Constant => self
                .products
                .iter()
                .map(|&c| mesh_for_h((c / (k * k * k)).sqrt()))
                .collect(),
            _ => self.ms.clone(),
        }
    }
}

fn mesh_for_h(h: f64) -> usize {
    (1.0 / h).round().max(1.0) as usize
}

pub fn beta_sweep_params() -> Vec<FluxParams> {
    [
        (0.001, Scaling::InverseEdge),
        (0.01, Scaling::InverseEdge),
        (1.0, Scaling::InverseEdge),
        (1.0, Scaling::Constant),
    ]
    .into_iter()
    .map(|(b, s)| FluxParams::new(b, s, 0.1, Scaling::LinearEdge))
    .collect()
}

pub fn delta_sweep_params() -> Vec<FluxParams> {
    [
        (0.001, Scaling::LinearEdge),
        (0.1, Scaling::LinearEdge),
        (10.0, Scaling::LinearEdge),
        (0.1, Scaling::Constant),
    ]
    .into_iter()
    .map(|(d, s)| FluxParams::new(0.001, Scaling::InverseEdge, d, s))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Beta,
    Delta,
}

/// Which parameter a sensitivity list varies; exactly one may change.
pub fn sweep_axis(params: &[FluxParams]) -> Result<SweepAxis> {
    let first = params
        .first()
        .ok_or_else(|| Error::InvalidArgument("parameter list is empty".into()))?;
    let beta_varies = params
        .iter()
        .any(|p| (p.beta0, p.beta_scaling) != (first.beta0, first.beta_scaling));
    let delta_varies = params
        .iter()
        .any(|p| (p.delta0, p.delta_scaling) != (first.delta0, first.delta_scaling));
    match (beta_varies, delta_varies) {
        (true, false) => Ok(SweepAxis::Beta),
        (false, true) => Ok(SweepAxis::Delta),
        _ => Err(Error::InvalidArgument(
            "a sensitivity sweep must vary exactly one of beta and delta".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub method: Method,
    pub k: f64,
    pub m: usize,
    pub params: FluxParams,
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} k={} m={}", self.method, self.k, self.m)?;
        if self.method.uses_flux_params() {
            write!(f, " {}", self.params.describe())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub cell: Cell,
    pub report: Option<ErrorReport>,
    /// Relative `H¹` seminorm error of the continuous nodal interpolant.
    pub interpolation_h1_rel: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRecord {
    pub cell: Cell,
    pub audit: Option<StabilityAudit>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub cell: Cell,
    /// `(x, Re u_h(x, 0))`
    pub samples: Vec<(f64, f64)>,
    /// `(x, Re u(x, 0))`
    pub exact: Vec<(f64, f64)>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct StudyResults {
    pub errors: Vec<ErrorRecord>,
    pub audits: Vec<AuditRecord>,
    pub traces: Vec<TraceRecord>,
}

impl StudyResults {
    pub fn failures(&self) -> Vec<String> {
        let e = self
            .errors
            .iter()
            .filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.cell)));
        let a = self
            .audits
            .iter()
            .filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.cell)));
        let t = self
            .traces
            .iter()
            .filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.cell)));
        e.chain(a).chain(t).collect()
    }

    /// Successful error reports in cell order.
    pub fn reports(&self) -> Vec<&ErrorReport> {
        self.errors
            .iter()
            .filter_map(|r| r.report.as_ref())
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StudyOutput {
    pub files: Vec<PathBuf>,
    pub results: StudyResults,
}

fn error_cell(cell: &Cell, baseline: bool) -> ErrorRecord {
    let run = || -> Result<(ErrorReport, Option<f64>)> {
        let mesh = build_structured_mesh(cell.m)?;
        let problem = RadialProblem::new(cell.k)?;
        let sol = solve(cell.method, &mesh, &problem, &cell.params)?;
        let params = cell.method.uses_flux_params().then_some(&cell.params);
        let report = error_norms(&mesh, &sol, &problem, params)?;
        let interp = if baseline {
            Some(interpolation_baseline(&mesh, &problem)?)
        } else {
            None
        };
        Ok((report, interp))
    };
    match run() {
        Ok((report, interp)) => ErrorRecord {
            cell: *cell,
            report: Some(report),
            interpolation_h1_rel: interp,
            error: None,
        },
        Err(e) => ErrorRecord {
            cell: *cell,
            report: None,
            interpolation_h1_rel: None,
            error: Some(e.to_string()),
        },
    }
}

fn audit_cell(cell: &Cell) -> AuditRecord {
    let run = || -> Result<StabilityAudit> {
        let mesh = build_structured_mesh(cell.m)?;
        let problem = RadialProblem::new(cell.k)?;
        stability_audit(cell.method, &mesh, &cell.params, &problem)
    };
    match run() {
        Ok(a) => AuditRecord {
            cell: *cell,
            audit: Some(a),
            error: None,
        },
        Err(e) => AuditRecord {
            cell: *cell,
            audit: None,
            error: Some(e.to_string()),
        },
    }
}

fn trace_cell(cell: &Cell, n: usize) -> TraceRecord {
    let run = || -> Result<(Vec<(f64, f64)>, Vec<(f64, f64)>)> {
        let mesh = build_structured_mesh(cell.m)?;
        let problem = RadialProblem::new(cell.k)?;
        let sol = solve(cell.method, &mesh, &problem, &cell.params)?;
        Ok((
            trace_sample(&mesh, TraceField::Discrete(&sol), n)?,
            trace_sample(&mesh, TraceField::Exact(&problem), n)?,
        ))
    };
    match run() {
        Ok((samples, exact)) => TraceRecord {
            cell: *cell,
            samples,
            exact,
            error: None,
        },
        Err(e) => TraceRecord {
            cell: *cell,
            samples: Vec::new(),
            exact: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

/// Solves every cell of the study without writing anything.
pub fn compute_study(config: &StudyConfig) -> Result<StudyResults> {
    config.validate()?;
    let cells = config.cells();
    let mut results = StudyResults::default();
    match config.kind {
        StudyKind::Audit => results.audits = cells.par_iter().map(audit_cell).collect(),
        StudyKind::Trace => {
            results.traces = cells
                .par_iter()
                .map(|c| trace_cell(c, config.trace_samples))
                .collect()
        }
        kind => {
            let baseline = matches!(kind, StudyKind::KhConstant | StudyKind::K3h2Constant);
            results.errors = cells.par_iter().map(|c| error_cell(c, baseline)).collect();
        }
    }
    Ok(results)
}

/// Runs the study and writes the requested formats to `config.output_dir`.
/// Failed cells are recorded in the outputs; only invalid configurations
/// and I/O problems are errors.
pub fn run_study(config: &StudyConfig) -> Result<StudyOutput> {
    let results = compute_study(config)?;
    let files = output::write_all(config, &results)?;
    Ok(StudyOutput { files, results })
}

/// [`run_study`] for a sensitivity configuration: the parameter list must
/// vary exactly one of `β`, `δ`.
pub fn run_sensitivity(config: &StudyConfig) -> Result<StudyOutput> {
    if config.kind != StudyKind::Sensitivity {
        return Err(Error::InvalidArgument(format!(
            "expected a sensitivity study, got '{}'",
            config.kind.name()
        )));
    }
    run_study(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_lists() {
        let ok = StudyConfig::new(
            StudyKind::Convergence,
            vec![Method::Ldg1],
            vec![5.0],
            vec![2],
        );
        assert!(ok.validate().is_ok());

        let mut c = ok.clone();
        c.ks = vec![0.0];
        assert!(c
            .validate()
            .unwrap_err()
            .to_string()
            .contains("k must be positive"));
        let mut c = ok.clone();
        c.ms = vec![0];
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.methods.clear();
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.kind = StudyKind::KhConstant;
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.kind = StudyKind::Audit;
        c.methods.push(Method::FemP1);
        assert!(c.validate().is_err());
        let mut c = ok;
        c.params[0].beta0 = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn sweeps_vary_one_parameter() {
        assert_eq!(sweep_axis(&beta_sweep_params()).unwrap(), SweepAxis::Beta);
        assert_eq!(sweep_axis(&delta_sweep_params()).unwrap(), SweepAxis::Delta);
        let mut mixed = beta_sweep_params();
        mixed[1].delta0 = 5.0;
        assert!(sweep_axis(&mixed).is_err());
        assert!(sweep_axis(&[FluxParams::default()]).is_err());
    }

    #[test]
    fn constant_product_meshes() {
        let mut c = StudyConfig::new(
            StudyKind::KhConstant,
            vec![Method::Ldg1],
            vec![10.0, 40.0],
            vec![],
        );
        c.products = vec![1.0];
        let ms: Vec<usize> = c.cells().iter().map(|c| c.m).collect();
        assert_eq!(ms, vec![10, 40]);
        c.kind = StudyKind::K3h2Constant;
        // h = k^{-3/2}: 1/h = 31.6 and 253
        let ms: Vec<usize> = c.cells().iter().map(|c| c.m).collect();
        assert_eq!(ms, vec![32, 253]);
    }

    #[test]
    fn cells_are_ordered_and_fem_ignores_sweeps() {
        let mut c = StudyConfig::beta_sweep(vec![50.0, 5.0], vec![4, 2]);
        c.methods = vec![Method::Ldg2, Method::FemP1];
        let cells = c.cells();
        assert_eq!(cells.len(), 2 * 2 * 4 + 2 * 2);
        assert_eq!((cells[0].k, cells[0].m), (5.0, 2));
        assert_eq!((cells[4].k, cells[4].m), (5.0, 4));
        assert_eq!(cells[16].method, Method::FemP1);
        assert_eq!(cells[16].params, c.params[0]);
    }

    #[test]
    fn json_config_with_defaults() {
        let c = StudyConfig::from_json(
            r#"{"kind": "table", "methods": ["ldg1"], "ks": [10], "ms": [5]}"#,
        )
        .unwrap();
        assert_eq!(c.params, vec![FluxParams::default()]);
        assert_eq!(c.trace_samples, 201);
        assert!(StudyConfig::from_json(
            r#"{"kind": "table", "methods": ["ldg1"], "ks": [-1], "ms": [5]}"#
        )
        .is_err());
        assert!(StudyConfig::from_json(r#"{"kind": "nope", "methods": [], "ks": []}"#).is_err());
    }
}
