//! `ldg-helmholtz`: solve, study and inspect the LDG Helmholtz discretizations.
//!
//! Exit codes: 0 on success, 1 for usage errors and invalid input, 2 when a
//! solve fails numerically (the failing cell is named on stderr).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ldg_helmholtz::analysis::{error_norms, trace_sample, TraceField};
use ldg_helmholtz::assembly::{assemble_system, FluxParams, Method, Scaling};
use ldg_helmholtz::mesh::build_structured_mesh;
use ldg_helmholtz::problem::RadialProblem;
use ldg_helmholtz::solve::solve;
use ldg_helmholtz::study::{
    format_table, run_study, OutputFormat, StudyConfig, StudyKind, StudyOutput,
};
use ldg_helmholtz::Error;

const OUTPUT_ENV: &str = "LDG_HELMHOLTZ_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "ldg-helmholtz",
    version,
    about = "LDG and conforming P1 solvers for the 2D Helmholtz equation on [-0.5, 0.5]^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one problem and print its error report as JSON.
    Solve(SolveArgs),
    /// Error tables and observed orders over a list of meshes.
    Convergence(GridArgs),
    /// Sweep beta (at delta = 0.1 h_e) or delta (at beta = 0.001 / h_e).
    Sensitivity(SensitivityArgs),
    /// Both LDG methods at k = 10 on m = 5, 10, 20, 40 (80, 160 with --full).
    Table1(Table1Args),
    /// Real part of the discrete and exact solutions along y = 0, as CSV.
    Trace(TraceArgs),
    /// Stability ratios k ||u_h|| / (gamma M(f, g)) as JSON lines.
    Audit(GridArgs),
    /// Counts and edge lengths of the structured mesh.
    MeshInfo(MeshInfoArgs),
    /// Run a study described by a JSON configuration file.
    Study(StudyArgs),
}

fn positive_k(s: &str) -> Result<f64, String> {
    let k: f64 = s.parse().map_err(|_| format!("invalid number '{s}'"))?;
    if k > 0.0 && k.is_finite() {
        Ok(k)
    } else {
        Err("k must be positive".into())
    }
}

fn positive_m(s: &str) -> Result<usize, String> {
    let m: usize = s.parse().map_err(|_| format!("invalid mesh size '{s}'"))?;
    if m >= 1 {
        Ok(m)
    } else {
        Err("m must be at least 1".into())
    }
}

fn positive_param(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number '{s}'"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("flux parameters must be positive".into())
    }
}

fn beta_scaling(s: &str) -> Result<Scaling, String> {
    match s {
        "inv-edge" => Ok(Scaling::InverseEdge),
        "const" => Ok(Scaling::Constant),
        _ => Err(format!(
            "unknown beta scaling '{s}' (expected inv-edge or const)"
        )),
    }
}

fn delta_scaling(s: &str) -> Result<Scaling, String> {
    match s {
        "edge" => Ok(Scaling::LinearEdge),
        "const" => Ok(Scaling::Constant),
        _ => Err(format!(
            "unknown delta scaling '{s}' (expected edge or const)"
        )),
    }
}

fn method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Base value of beta, the penalty on [[u]].
    #[arg(long, default_value = "0.001", value_parser = positive_param)]
    beta0: f64,
    /// beta = beta0 / h_e (inv-edge) or beta0 (const).
    #[arg(long, default_value = "inv-edge", value_parser = beta_scaling)]
    beta_scaling: Scaling,
    /// Base value of delta, the penalty on the flux jump.
    #[arg(long, default_value = "0.1", value_parser = positive_param)]
    delta0: f64,
    /// delta = delta0 * h_e (edge) or delta0 (const).
    #[arg(long, default_value = "edge", value_parser = delta_scaling)]
    delta_scaling: Scaling,
}

impl ParamArgs {
    fn params(&self) -> FluxParams {
        FluxParams::new(
            self.beta0,
            self.beta_scaling,
            self.delta0,
            self.delta_scaling,
        )
    }
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output directory for report files.
    #[arg(long, env = OUTPUT_ENV, default_value = "results")]
    out: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    svg: bool,
}

impl OutputArgs {
    fn formats(&self, extra: &[OutputFormat]) -> Vec<OutputFormat> {
        let mut f = vec![OutputFormat::Csv, OutputFormat::Json];
        f.extend_from_slice(extra);
        if self.svg {
            f.push(OutputFormat::Svg);
        }
        f
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// ldg1, ldg2, ipdg-primal or fem-p1.
    #[arg(long, default_value = "ldg1", value_parser = method)]
    method: Method,
    /// Wave number.
    #[arg(long, default_value = "10", value_parser = positive_k, allow_negative_numbers = true)]
    k: f64,
    /// Subdivisions per side (h = 1/m).
    #[arg(long, default_value = "10", value_parser = positive_m)]
    m: usize,
    #[command(flatten)]
    params: ParamArgs,
    /// Write the assembled matrix in MatrixMarket format.
    #[arg(long)]
    export_matrix: Option<PathBuf>,
    /// Write the solution coefficients (u and sigma) as JSON.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', default_value = "ldg1,ldg2", value_parser = method)]
    method: Vec<Method>,
    /// Comma-separated wave numbers.
    #[arg(long, value_delimiter = ',', default_value = "10", value_parser = positive_k, allow_negative_numbers = true)]
    k: Vec<f64>,
    /// Comma-separated subdivision counts.
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,40", value_parser = positive_m)]
    m: Vec<usize>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
enum Sweep {
    Beta,
    Delta,
}

#[derive(Args, Debug)]
struct SensitivityArgs {
    /// Which parameter to sweep.
    #[arg(long, value_enum, default_value = "beta")]
    sweep: Sweep,
    #[arg(long, value_delimiter = ',', default_value = "ldg1,ldg2", value_parser = method)]
    method: Vec<Method>,
    #[arg(long, value_delimiter = ',', default_value = "5,50", value_parser = positive_k, allow_negative_numbers = true)]
    k: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,40", value_parser = positive_m)]
    m: Vec<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// Include m = 80 and m = 160.
    #[arg(long)]
    full: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long, default_value = "ldg1", value_parser = method)]
    method: Method,
    #[arg(long, default_value = "100", value_parser = positive_k, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, default_value = "50", value_parser = positive_m)]
    m: usize,
    /// Number of equispaced samples on [-0.5, 0.5].
    #[arg(long, default_value = "201")]
    samples: usize,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Debug)]
struct MeshInfoArgs {
    #[arg(long, default_value = "4", value_parser = positive_m)]
    m: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write vertices and triangles in the plain-text mesh format.
    #[arg(long)]
    write: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StudyArgs {
    /// JSON study configuration.
    #[arg(long)]
    config: PathBuf,
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn cell_label(method: Method, k: f64, m: usize) -> String {
    format!("{method} k={k} m={m}")
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let params = a.params.params();
    let mesh = build_structured_mesh(a.m)?;
    let problem = RadialProblem::new(a.k)?;
    if let Some(path) = &a.export_matrix {
        let sys = assemble_system(a.method, &mesh, &problem, &params)?;
        sys.matrix
            .write_matrix_market(BufWriter::new(File::create(path)?))?;
    }
    let label = cell_label(a.method, a.k, a.m);
    let sol = solve(a.method, &mesh, &problem, &params).map_err(|e| match Failure::from(e) {
        Failure::Numerical(msg) => Failure::Numerical(format!("{label}: {msg}")),
        other => other,
    })?;
    if let Some(path) = &a.dump {
        let dump = serde_json::json!({
            "method": a.method,
            "k": a.k,
            "m": a.m,
            "u": sol.u.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "sigma": sol.sigma.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        });
        std::fs::write(path, serde_json::to_string(&dump)?)?;
    }
    let report = error_norms(&mesh, &sol, &problem, Some(&params))?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn finish_study(out: &StudyOutput) -> CmdResult {
    for f in &out.files {
        eprintln!("wrote {}", f.display());
    }
    let failures = out.results.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Numerical(failures.join("\n")))
    }
}

fn grid_config(kind: StudyKind, a: &GridArgs) -> StudyConfig {
    let mut c = StudyConfig::new(kind, a.method.clone(), a.k.clone(), a.m.clone());
    c.params = vec![a.params.params()];
    c.output_dir = a.output.out.join(kind.name());
    c.formats = a.output.formats(&[OutputFormat::Table]);
    c
}

fn cmd_convergence(a: GridArgs) -> CmdResult {
    let out = run_study(&grid_config(StudyKind::Convergence, &a))?;
    print!("{}", format_table(&out.results));
    finish_study(&out)
}

fn cmd_sensitivity(a: SensitivityArgs) -> CmdResult {
    let mut c = match a.sweep {
        Sweep::Beta => StudyConfig::beta_sweep(a.k, a.m),
        Sweep::Delta => StudyConfig::delta_sweep(a.k, a.m),
    };
    c.methods = a.method;
    c.output_dir = a.output.out.join(match a.sweep {
        Sweep::Beta => "sensitivity-beta",
        Sweep::Delta => "sensitivity-delta",
    });
    c.formats = a.output.formats(&[OutputFormat::Table]);
    let out = ldg_helmholtz::study::run_sensitivity(&c)?;
    print!("{}", format_table(&out.results));
    finish_study(&out)
}

fn cmd_table1(a: Table1Args) -> CmdResult {
    let mut c = StudyConfig::table1(a.full);
    c.output_dir = a.output.out.join("table1");
    c.formats = a.output.formats(&[OutputFormat::Table]);
    let out = run_study(&c)?;
    print!("{}", format_table(&out.results));
    finish_study(&out)
}

fn cmd_trace(a: TraceArgs) -> CmdResult {
    let params = a.params.params();
    let mesh = build_structured_mesh(a.m)?;
    let problem = RadialProblem::new(a.k)?;
    let sol = solve(a.method, &mesh, &problem, &params)
        .map_err(|e| Failure::Numerical(format!("{}: {e}", cell_label(a.method, a.k, a.m))))?;
    let discrete = trace_sample(&mesh, TraceField::Discrete(&sol), a.samples)?;
    let exact = trace_sample(&mesh, TraceField::Exact(&problem), a.samples)?;
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    writeln!(w, "x,discrete,exact")?;
    for (d, e) in discrete.iter().zip(&exact) {
        writeln!(w, "{},{},{}", d.0, d.1, e.1)?;
    }
    Ok(())
}

fn cmd_audit(a: GridArgs) -> CmdResult {
    let out = run_study(&grid_config(StudyKind::Audit, &a))?;
    for rec in &out.results.audits {
        if let Some(audit) = &rec.audit {
            println!("{}", serde_json::to_string(audit)?);
        }
    }
    finish_study(&out)
}

fn cmd_mesh_info(a: MeshInfoArgs) -> CmdResult {
    let mesh = build_structured_mesh(a.m)?;
    let s = mesh.summary();
    if a.json {
        println!("{}", serde_json::to_string_pretty(&s)?);
    } else {
        println!("m: {}", a.m);
        println!("triangles: {}", s.triangles);
        println!("vertices: {}", s.vertices);
        println!(
            "edges: {} (interior {}, boundary {})",
            s.interior_edges + s.boundary_edges,
            s.interior_edges,
            s.boundary_edges
        );
        println!("min edge length: {}", s.min_edge_length);
        println!("max edge length: {}", s.max_edge_length);
    }
    if let Some(path) = &a.write {
        mesh.write_ascii(BufWriter::new(File::create(path)?))?;
    }
    Ok(())
}

fn cmd_study(a: StudyArgs) -> CmdResult {
    let config = StudyConfig::from_file(&a.config)?;
    let out = run_study(&config)?;
    if config.kind != StudyKind::Trace && config.kind != StudyKind::Audit {
        print!("{}", format_table(&out.results));
    }
    finish_study(&out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Convergence(a) => cmd_convergence(a),
        Command::Sensitivity(a) => cmd_sensitivity(a),
        Command::Table1(a) => cmd_table1(a),
        Command::Trace(a) => cmd_trace(a),
        Command::Audit(a) => cmd_audit(a),
        Command::MeshInfo(a) => cmd_mesh_info(a),
        Command::Study(a) => cmd_study(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}
