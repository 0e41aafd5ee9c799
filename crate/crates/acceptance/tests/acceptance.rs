use cechtower_acceptance::run_all;

#[test]
fn all_criteria_pass() {
    let report = run_all(0);
    print!("{report}");
    let failed: Vec<String> = report.failures().iter().map(|v| v.to_string()).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
