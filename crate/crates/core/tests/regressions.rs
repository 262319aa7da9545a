mod common;

use common::regress::{self, Checks};

fn assert_all(checks: Checks) {
    let failed: Vec<&String> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| name).collect();
    assert!(failed.is_empty(), "failed: {failed:#?}");
}

#[test]
fn printed_sextics_34_and_36() {
    assert_all(regress::printed_sextics());
}

#[test]
fn pencil_reduction_36() {
    assert_all(regress::pipeline_36());
}

#[test]
fn pencil_reduction_34() {
    assert_all(regress::pipeline_34());
}

#[test]
fn case_24_point() {
    assert_all(regress::case_24());
}

#[test]
fn symmetries_and_perturbed_controls() {
    assert_all(regress::symmetries());
}

#[test]
fn dual_degree_law() {
    assert_all(regress::dual_degrees());
}

#[test]
fn certify_small_cases() {
    assert_all(regress::certify_ids([3, 25, 36]));
}

#[test]
fn case_16_rescaling_is_found() {
    let checks = regress::case_16();
    assert_eq!(checks.len(), 2);
    assert!(!checks[0].1);
    assert!(checks[1].1, "{checks:?}");
}
