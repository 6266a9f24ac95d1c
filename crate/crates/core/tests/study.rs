use ldg_helmholtz::assembly::Method;
use ldg_helmholtz::study::{
    compute_study, format_table, run_sensitivity, run_study, OutputFormat, StudyConfig, StudyKind,
};

fn small(kind: StudyKind, dir: &std::path::Path) -> StudyConfig {
    let mut c = StudyConfig::new(
        kind,
        vec![Method::Ldg1, Method::FemP1],
        vec![3.0],
        vec![2, 4],
    );
    c.output_dir = dir.to_path_buf();
    c.formats = vec![
        OutputFormat::Csv,
        OutputFormat::Json,
        OutputFormat::Svg,
        OutputFormat::Table,
    ];
    c
}

#[test]
fn convergence_study_writes_all_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_study(&small(StudyKind::Convergence, dir.path())).unwrap();
    let names: Vec<String> = out
        .files
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    for f in [
        "convergence.csv",
        "convergence_rates.csv",
        "convergence.json",
        "convergence.svg",
        "convergence.txt",
    ] {
        assert!(names.contains(&f.to_string()), "{f} missing from {names:?}");
    }
    let csv = std::fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    for col in [
        "method",
        "beta0",
        "delta_scaling",
        "triangle_quadrature_degree",
        "h1_abs",
        "sigma_rel",
        "status",
    ] {
        assert!(header.split(',').any(|c| c == col), "{col}");
    }
    assert_eq!(csv.lines().count(), 1 + 4);
    assert!(!header.contains("seconds"));
    let json: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("convergence.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(json["results"]["errors"].as_array().unwrap().len(), 4);
    assert!(json["results"]["errors"][0]["report"]["solve_seconds"].is_number());
}

#[test]
fn csv_output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_study(&small(StudyKind::Convergence, a.path())).unwrap();
    run_study(&small(StudyKind::Convergence, b.path())).unwrap();
    for f in ["convergence.csv", "convergence_rates.csv"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
}

#[test]
fn invalid_config_is_rejected_before_solving() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = small(StudyKind::Convergence, &dir.path().join("never"));
    c.ks = vec![-2.0];
    assert!(run_study(&c).is_err());
    assert!(!dir.path().join("never").exists());
}

#[test]
fn sensitivity_requires_a_one_parameter_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = StudyConfig::beta_sweep(vec![5.0], vec![2]);
    c.output_dir = dir.path().to_path_buf();
    let out = run_sensitivity(&c).unwrap();
    assert_eq!(out.results.errors.len(), 2 * 4);
    let bad = small(StudyKind::Convergence, dir.path());
    assert!(run_sensitivity(&bad).is_err());
}

#[test]
fn trace_and_audit_studies() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = small(StudyKind::Trace, dir.path());
    c.trace_samples = 11;
    let out = run_study(&c).unwrap();
    assert_eq!(out.results.traces.len(), 4);
    assert!(out.results.traces.iter().all(|t| t.samples.len() == 11));
    assert!(dir.path().join("trace.csv").exists());

    let mut c = small(StudyKind::Audit, dir.path());
    c.methods = vec![Method::Ldg1, Method::Ldg2];
    let out = run_study(&c).unwrap();
    assert!(out
        .results
        .audits
        .iter()
        .all(|a| a.audit.as_ref().unwrap().ratio > 0.0));
    assert!(dir.path().join("audit.svg").exists());
}

#[test]
fn constant_product_study_records_baseline() {
    let mut c = StudyConfig::new(
        StudyKind::KhConstant,
        vec![Method::Ldg1],
        vec![4.0, 8.0],
        vec![],
    );
    c.products = vec![1.0];
    let r = compute_study(&c).unwrap();
    assert_eq!(r.errors.len(), 2);
    assert!(r.errors.iter().all(|e| e.interpolation_h1_rel.is_some()));
    assert_eq!(r.errors[1].cell.m, 8);
}

#[test]
fn table_layout() {
    let mut c = StudyConfig::table1(false);
    c.ms = vec![2, 4];
    c.ks = vec![3.0];
    let r = compute_study(&c).unwrap();
    let text = format_table(&r);
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_start().starts_with("1/h"))
            .count(),
        2
    );
    assert!(text.contains("ldg1 k=3") && text.contains("ldg2 k=3"));
    assert!(text.contains("E-0") || text.contains("E+0"));
}

#[test]
fn config_roundtrip() {
    let c = StudyConfig::delta_sweep(vec![5.0, 50.0], vec![10, 20]);
    let text = serde_json::to_string(&c).unwrap();
    assert_eq!(StudyConfig::from_json(&text).unwrap(), c);
}
