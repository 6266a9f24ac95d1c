//! Report files. CSV output carries no timings so reruns are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use super::svg::{line_plot, PlotSeries};
use super::{ErrorRecord, OutputFormat, StudyConfig, StudyKind, StudyResults};
use crate::analysis::{convergence_rates, ErrorReport, Order, RateRow};
use crate::assembly::{FluxParams, Method};
use crate::error::Result;

#[derive(Serialize)]
struct ErrorRow<'a> {
    method: &'a str,
    k: f64,
    m: usize,
    h: f64,
    beta0: Option<f64>,
    beta_scaling: Option<&'a str>,
    delta0: Option<f64>,
    delta_scaling: Option<&'a str>,
    triangle_quadrature_degree: Option<usize>,
    edge_quadrature_degree: Option<usize>,
    h1_abs: Option<f64>,
    h1_rel: Option<f64>,
    l2_abs: Option<f64>,
    l2_rel: Option<f64>,
    l2_boundary_abs: Option<f64>,
    l2_boundary_rel: Option<f64>,
    sigma_abs: Option<f64>,
    sigma_rel: Option<f64>,
    dg_abs: Option<f64>,
    dg_rel: Option<f64>,
    dg_pair_abs: Option<f64>,
    dg_pair_rel: Option<f64>,
    solution_dg_norm: Option<f64>,
    solution_dg_pair_norm: Option<f64>,
    interpolation_h1_rel: Option<f64>,
    status: String,
}

fn params_columns(
    method: Method,
    p: &FluxParams,
) -> (
    Option<f64>,
    Option<&'static str>,
    Option<f64>,
    Option<&'static str>,
) {
    if method.uses_flux_params() {
        (
            Some(p.beta0),
            Some(p.beta_scaling.name()),
            Some(p.delta0),
            Some(p.delta_scaling.name()),
        )
    } else {
        (None, None, None, None)
    }
}

fn error_row(r: &ErrorRecord) -> ErrorRow<'_> {
    let (beta0, beta_scaling, delta0, delta_scaling) =
        params_columns(r.cell.method, &r.cell.params);
    let rep = r.report.as_ref();
    let pair = |f: fn(&ErrorReport) -> (f64, f64)| (rep.map(|x| f(x).0), rep.map(|x| f(x).1));
    let (h1_abs, h1_rel) = pair(|x| (x.h1.abs, x.h1.rel));
    let (l2_abs, l2_rel) = pair(|x| (x.l2.abs, x.l2.rel));
    let (l2_boundary_abs, l2_boundary_rel) = pair(|x| (x.l2_boundary.abs, x.l2_boundary.rel));
    let (sigma_abs, sigma_rel) = pair(|x| (x.sigma.abs, x.sigma.rel));
    let (dg_abs, dg_rel) = pair(|x| (x.dg.abs, x.dg.rel));
    let (dg_pair_abs, dg_pair_rel) = pair(|x| (x.dg_pair.abs, x.dg_pair.rel));
    ErrorRow {
        method: r.cell.method.name(),
        k: r.cell.k,
        m: r.cell.m,
        h: 1.0 / r.cell.m as f64,
        beta0,
        beta_scaling,
        delta0,
        delta_scaling,
        triangle_quadrature_degree: rep.map(|x| x.triangle_quadrature_degree),
        edge_quadrature_degree: rep.map(|x| x.edge_quadrature_degree),
        h1_abs,
        h1_rel,
        l2_abs,
        l2_rel,
        l2_boundary_abs,
        l2_boundary_rel,
        sigma_abs,
        sigma_rel,
        dg_abs,
        dg_rel,
        dg_pair_abs,
        dg_pair_rel,
        solution_dg_norm: rep.map(|x| x.solution_dg_norm),
        solution_dg_pair_norm: rep.map(|x| x.solution_dg_pair_norm),
        interpolation_h1_rel: r.interpolation_h1_rel,
        status: r.error.clone().unwrap_or_else(|| "ok".into()),
    }
}

#[derive(Serialize)]
struct AuditRow<'a> {
    method: &'a str,
    k: f64,
    m: usize,
    beta0: f64,
    beta_scaling: &'a str,
    delta0: f64,
    delta_scaling: &'a str,
    gamma: Option<f64>,
    data_norm: Option<f64>,
    solution_norm: Option<f64>,
    ratio: Option<f64>,
    status: String,
}

#[derive(Serialize)]
struct TraceRow<'a> {
    method: &'a str,
    k: f64,
    m: usize,
    beta0: Option<f64>,
    delta0: Option<f64>,
    x: f64,
    discrete: f64,
    exact: f64,
}

#[derive(Serialize)]
struct RateCsvRow<'a> {
    method: &'a str,
    k: f64,
    beta0: Option<f64>,
    beta_scaling: Option<&'a str>,
    delta0: Option<f64>,
    delta_scaling: Option<&'a str>,
    m_coarse: usize,
    m_fine: usize,
    h1: String,
    l2: String,
    l2_boundary: String,
    sigma: String,
    dg: String,
    dg_pair: String,
}

/// Observed orders for the reports of one `(method, k, params)` group.
#[derive(Debug, Clone, Serialize)]
pub struct RateTable {
    pub method: Method,
    pub k: f64,
    pub params: Option<FluxParams>,
    pub rows: Vec<RateRow>,
}

fn group_key(r: &ErrorReport) -> (Method, u64, String) {
    (
        r.method,
        r.k.to_bits(),
        r.params.map(|p| p.describe()).unwrap_or_default(),
    )
}

/// Groups of successful reports sharing method, `k` and parameters, in
/// first-appearance order, each sorted by decreasing `h`.
pub(super) fn report_groups(results: &StudyResults) -> Vec<Vec<&ErrorReport>> {
    let mut order: Vec<(Method, u64, String)> = Vec::new();
    let mut groups: BTreeMap<(Method, u64, String), Vec<&ErrorReport>> = BTreeMap::new();
    for r in results.reports() {
        let key = group_key(r);
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let mut g = groups.remove(&key).unwrap_or_default();
            g.sort_by_key(|r| r.m);
            g.dedup_by_key(|r| r.m);
            g
        })
        .collect()
}

pub(super) fn rate_tables(results: &StudyResults) -> Vec<RateTable> {
    report_groups(results)
        .into_iter()
        .filter(|g| g.len() >= 2)
        .filter_map(|g| {
            let owned: Vec<ErrorReport> = g.iter().map(|r| (*r).clone()).collect();
            convergence_rates(&owned).ok().map(|rows| RateTable {
                method: owned[0].method,
                k: owned[0].k,
                params: owned[0].params,
                rows,
            })
        })
        .collect()
}

/// `4.1059E-01` style.
fn sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.4E}");
    match s.split_once('E') {
        Some((mant, exp)) => {
            let e: i32 = exp.parse().unwrap_or(0);
            format!("{mant}E{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
        }
        None => s,
    }
}

fn order_cell(o: Option<Order>) -> String {
    match o {
        Some(o) => o.to_string(),
        None => String::new(),
    }
}

/// Text table with columns `1/h`, `|u-u_h|_H1`, order, `||σ-σ_h||_L2`,
/// order and wall time, one block per method and parameter set.
pub fn format_table(results: &StudyResults) -> String {
    let mut out = String::new();
    for group in report_groups(results) {
        let first = group[0];
        let _ = writeln!(
            out,
            "{} k={}{}",
            first.method,
            first.k,
            first
                .params
                .map(|p| format!(" {}", p.describe()))
                .unwrap_or_default()
        );
        let _ = writeln!(
            out,
            "{:>6}  {:>12}  {:>8}  {:>12}  {:>8}  {:>10}",
            "1/h", "|u-u_h|_H1", "order", "|s-s_h|_L2", "order", "time (s)"
        );
        let owned: Vec<ErrorReport> = group.iter().map(|r| (*r).clone()).collect();
        let rates = if owned.len() >= 2 {
            convergence_rates(&owned).unwrap_or_default()
        } else {
            Vec::new()
        };
        for (i, r) in group.iter().enumerate() {
            let rate = i.checked_sub(1).and_then(|j| rates.get(j));
            let _ = writeln!(
                out,
                "{:>6}  {:>12}  {:>8}  {:>12}  {:>8}  {:>10.4}",
                r.m,
                sci(r.h1.abs),
                order_cell(rate.map(|x| x.h1)),
                sci(r.sigma.abs),
                order_cell(rate.map(|x| x.sigma)),
                r.solve_seconds
            );
        }
        out.push('\n');
    }
    for f in results.failures() {
        let _ = writeln!(out, "failed: {f}");
    }
    out
}

fn write_csv<T: Serialize>(path: &PathBuf, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn series_label(method: Method, k: f64, params: Option<&FluxParams>) -> String {
    match params {
        Some(p) => format!("{method} k={k} {}", p.describe()),
        None => format!("{method} k={k}"),
    }
}

fn plots(config: &StudyConfig, results: &StudyResults) -> Vec<(String, String)> {
    match config.kind {
        StudyKind::Trace => results
            .traces
            .iter()
            .filter(|t| t.error.is_none())
            .map(|t| {
                let c = t.cell;
                let series = vec![
                    PlotSeries::new(format!("{} m={}", c.method, c.m), t.samples.clone()),
                    PlotSeries::new("exact".to_string(), t.exact.clone()),
                ];
                (
                    format!("trace_{}_k{}_m{}.svg", c.method, c.k, c.m),
                    line_plot(
                        &format!("Re u along y = 0, k = {}", c.k),
                        "x",
                        "Re u",
                        &series,
                        false,
                    ),
                )
            })
            .collect(),
        StudyKind::Audit => {
            let mut by: BTreeMap<(Method, usize), Vec<(f64, f64)>> = BTreeMap::new();
            for a in results.audits.iter().filter_map(|a| a.audit.as_ref()) {
                by.entry((a.method, a.m)).or_default().push((a.k, a.ratio));
            }
            let series: Vec<PlotSeries> = by
                .into_iter()
                .map(|((method, m), pts)| PlotSeries::new(format!("{method} m={m}"), pts))
                .collect();
            vec![(
                "audit.svg".into(),
                line_plot("stability ratio", "k", "ratio", &series, false),
            )]
        }
        StudyKind::KhConstant | StudyKind::K3h2Constant => {
            let mut by: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
            for r in &results.errors {
                if let Some(rep) = &r.report {
                    by.entry(r.cell.method.name().to_string())
                        .or_default()
                        .push((rep.k, rep.h1.rel));
                    if let Some(b) = r.interpolation_h1_rel {
                        by.entry("interpolant".into()).or_default().push((rep.k, b));
                    }
                }
            }
            let series: Vec<PlotSeries> = by
                .into_iter()
                .map(|(name, mut pts)| {
                    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
                    pts.dedup_by(|a, b| a.0 == b.0);
                    PlotSeries::new(name, pts)
                })
                .collect();
            vec![(
                format!("{}.svg", config.kind.name()),
                line_plot("relative H1 error", "k", "relative error", &series, true),
            )]
        }
        _ => {
            let series: Vec<PlotSeries> = report_groups(results)
                .into_iter()
                .map(|g| {
                    PlotSeries::new(
                        series_label(g[0].method, g[0].k, g[0].params.as_ref()),
                        g.iter().map(|r| (r.h, r.h1.rel)).collect(),
                    )
                })
                .collect();
            vec![(
                format!("{}.svg", config.kind.name()),
                line_plot("relative H1 error", "h", "relative error", &series, true),
            )]
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a StudyConfig,
    results: &'a StudyResults,
    rates: Vec<RateTable>,
}

pub(super) fn write_all(config: &StudyConfig, results: &StudyResults) -> Result<Vec<PathBuf>> {
    let dir = &config.output_dir;
    fs::create_dir_all(dir)?;
    let name = config.kind.name();
    let mut files = Vec::new();
    let has_errors = config.kind.has_error_reports();
    for fmt in &config.formats {
        match fmt {
            OutputFormat::Csv => {
                let path = dir.join(format!("{name}.csv"));
                match config.kind {
                    StudyKind::Audit => write_csv(
                        &path,
                        results.audits.iter().map(|a| AuditRow {
                            method: a.cell.method.name(),
                            k: a.cell.k,
                            m: a.cell.m,
                            beta0: a.cell.params.beta0,
                            beta_scaling: a.cell.params.beta_scaling.name(),
                            delta0: a.cell.params.delta0,
                            delta_scaling: a.cell.params.delta_scaling.name(),
                            gamma: a.audit.as_ref().map(|x| x.gamma),
                            data_norm: a.audit.as_ref().map(|x| x.data_norm),
                            solution_norm: a.audit.as_ref().map(|x| x.solution_norm),
                            ratio: a.audit.as_ref().map(|x| x.ratio),
                            status: a.error.clone().unwrap_or_else(|| "ok".into()),
                        }),
                    )?,
                    StudyKind::Trace => write_csv(
                        &path,
                        results.traces.iter().flat_map(|t| {
                            let (beta0, _, delta0, _) =
                                params_columns(t.cell.method, &t.cell.params);
                            t.samples.iter().zip(&t.exact).map(move |(s, e)| TraceRow {
                                method: t.cell.method.name(),
                                k: t.cell.k,
                                m: t.cell.m,
                                beta0,
                                delta0,
                                x: s.0,
                                discrete: s.1,
                                exact: e.1,
                            })
                        }),
                    )?,
                    _ => write_csv(&path, results.errors.iter().map(error_row))?,
                }
                files.push(path);
                if has_errors {
                    let path = dir.join(format!("{name}_rates.csv"));
                    let tables = rate_tables(results);
                    write_csv(
                        &path,
                        tables.iter().flat_map(|t| {
                            let (beta0, beta_scaling, delta0, delta_scaling) = match &t.params {
                                Some(p) => params_columns(t.method, p),
                                None => (None, None, None, None),
                            };
                            t.rows.iter().map(move |r| RateCsvRow {
                                method: t.method.name(),
                                k: t.k,
                                beta0,
                                beta_scaling,
                                delta0,
                                delta_scaling,
                                m_coarse: r.m_coarse,
                                m_fine: r.m_fine,
                                h1: r.h1.to_string(),
                                l2: r.l2.to_string(),
                                l2_boundary: r.l2_boundary.to_string(),
                                sigma: r.sigma.to_string(),
                                dg: r.dg.to_string(),
                                dg_pair: r.dg_pair.to_string(),
                            })
                        }),
                    )?;
                    files.push(path);
                }
            }
            OutputFormat::Json => {
                let path = dir.join(format!("{name}.json"));
                let report = JsonReport {
                    config,
                    results,
                    rates: if has_errors {
                        rate_tables(results)
                    } else {
                        Vec::new()
                    },
                };
                fs::write(&path, serde_json::to_string_pretty(&report)?)?;
                files.push(path);
            }
            OutputFormat::Svg => {
                for (file, svg) in plots(config, results) {
                    let path = dir.join(file);
                    fs::write(&path, svg)?;
                    files.push(path);
                }
            }
            OutputFormat::Table => {
                if has_errors {
                    let path = dir.join(format!("{name}.txt"));
                    fs::write(&path, format_table(results))?;
                    files.push(path);
                }
            }
        }
    }
    Ok(files)
}
