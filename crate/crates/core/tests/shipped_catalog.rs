use ncclab_core::catalog::{build_all, shipped_entries, verify_catalog, EXPECTED_COUNTS};
use ncclab_core::sweep::{run_verify, target_kset};
use ncclab_core::DEFAULT_CAP;

#[test]
fn shipped_catalog_is_consistent() {
    let built = build_all(&shipped_entries(), DEFAULT_CAP);
    let report = verify_catalog(&built);
    for issue in &report.issues {
        eprintln!("{issue}");
    }
    assert!(report.passed());
    assert_eq!(report.entries, EXPECTED_COUNTS.iter().map(|c| c.1).sum::<usize>());
}

#[test]
fn full_verify_passes() {
    let report = run_verify(&shipped_entries(), &target_kset(), DEFAULT_CAP);
    for c in &report.checks {
        eprintln!("{c}");
    }
    assert!(report.passed());
    assert_eq!(report.hits.len(), 6);
}
