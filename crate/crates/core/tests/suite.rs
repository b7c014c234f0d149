use diffalg::diff_laws::suite::{negative_controls, run_laws};

#[test]
fn every_shipped_law_passes() {
    for r in run_laws(42, 100) {
        assert!(r.pass, "{r}");
    }
}

#[test]
fn negative_controls_fail_with_counterexamples() {
    let reports = negative_controls(0, 50);
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert!(!r.pass, "{r}");
        assert!(r.counterexample.is_some(), "{r}");
    }
    assert!(reports[2].skipped);
}

#[test]
fn reports_are_deterministic() {
    let a: Vec<String> = negative_controls(9, 20).iter().map(|r| r.to_json()).collect();
    let b: Vec<String> = negative_controls(9, 20).iter().map(|r| r.to_json()).collect();
    assert_eq!(a, b);
}
