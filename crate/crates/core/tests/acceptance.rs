//! One test per acceptance criterion. Each prints its check lines and a
//! summary line; stretch items may SKIP but never FAIL.

use std::sync::Mutex;

use subpart::suite::{run_criterion, Outcome, SuiteOptions};

/// Criteria carry wall-clock limits, so they run one at a time.
static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(i: usize) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let report = run_criterion(i, &SuiteOptions::default());
    for c in &report.checks {
        println!("  {c}");
    }
    println!("{}", report.summary_line());
    assert_ne!(report.outcome(), Outcome::Fail, "{}", report.summary_line());
}

#[test]
fn criterion_1_formula_values() {
    criterion(1);
}

#[test]
fn criterion_2_relations() {
    criterion(2);
}

#[test]
fn criterion_3_constructions() {
    criterion(3);
}

#[test]
fn criterion_4_identity_suites() {
    criterion(4);
}

#[test]
fn criterion_5_search_oracles() {
    criterion(5);
}

#[test]
fn criterion_6_glynn_bound() {
    criterion(6);
}

#[test]
fn criterion_7_embedded_spreads() {
    criterion(7);
}

#[test]
fn criterion_8_stretch_pipeline() {
    criterion(8);
}

#[test]
fn criterion_9_property_suites() {
    criterion(9);
}
