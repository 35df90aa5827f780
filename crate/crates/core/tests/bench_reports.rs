use std::fs;

use numrad::bench::{
    discrepancy_matrix, emit_reports, gen_random_matrix, run_benchmark, BenchConfig, Field, Status,
};
use numrad::Method;

fn config(dir: &std::path::Path, trials: usize) -> BenchConfig {
    let mut c = BenchConfig::new(
        vec![3, 5],
        vec![Field::Real, Field::Complex],
        vec![Method::Lso, Method::Cheb, Method::Sdp, Method::Grid],
        42,
        dir.to_path_buf(),
    );
    c.trials = trials;
    c
}

#[test]
fn reports_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), 2);
    let records = run_benchmark(&c).unwrap();
    assert_eq!(records.len(), 2 * 2 * 4);
    let cells = discrepancy_matrix(&records);
    assert_eq!(cells.len(), 2 * 2 * 6);
    emit_reports(&records, &cells, dir.path()).unwrap();

    let timings = fs::read_to_string(dir.path().join("timings.csv")).unwrap();
    assert!(timings.starts_with("n,field,method,wall_seconds,trials_used,status"));
    assert_eq!(timings.lines().count(), 1 + records.len());
    let disc = fs::read_to_string(dir.path().join("discrepancies.csv")).unwrap();
    assert_eq!(disc.lines().count(), 1 + cells.len());
    let report = fs::read_to_string(dir.path().join("report.md")).unwrap();
    assert!(report.contains("sdp"));

    for r in &records {
        assert_eq!(r.status, Status::Ok, "{:?}", r.error);
        assert!(r.trials_used == 1 || r.trials_used == c.trials);
    }
    for cell in &cells {
        assert!(cell.value <= 1e-6, "{cell:?}");
    }
}

#[test]
fn values_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), 1);
    c.methods = vec![Method::Lso, Method::Cheb];
    let a = run_benchmark(&c).unwrap();
    let b = run_benchmark(&c).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.radius_value, y.radius_value);
        assert_eq!(x.theta_star, y.theta_star);
    }
    assert_eq!(
        gen_random_matrix(7, Field::Complex, 3).unwrap(),
        gen_random_matrix(7, Field::Complex, 3).unwrap()
    );
    assert_ne!(
        gen_random_matrix(7, Field::Complex, 3).unwrap(),
        gen_random_matrix(7, Field::Complex, 4).unwrap()
    );
}

#[test]
fn sdp_above_the_cap_is_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), 1);
    c.sizes = vec![4];
    c.fields = vec![Field::Real];
    c.methods = vec![Method::Sdp, Method::Lso];
    c.sdp_cap = 3;
    let records = run_benchmark(&c).unwrap();
    assert_eq!(records[0].status, Status::SkippedSizeCap);
    assert!(records[0].radius_value.is_none());
    assert_eq!(records[1].status, Status::Ok);
    assert!(discrepancy_matrix(&records).is_empty());
}
