//! Acceptance gate: one test per criterion of the reproduction suite, each
//! printing its measured values and one pass/fail line.

use cone_gauge_core::suite::{self, CriterionOutcome};

fn run(name: &str) -> CriterionOutcome {
    let mut outcomes = suite::run(Some(name));
    assert_eq!(outcomes.len(), 1, "criterion {name} not found");
    let outcome = outcomes.remove(0);
    for line in &outcome.lines {
        println!("  {line}");
    }
    println!("{}", outcome.summary());
    outcome
}

fn assert_criterion(name: &str) {
    let outcome = run(name);
    assert!(outcome.passed, "criterion {name} failed:\n{}", outcome.lines.join("\n"));
}

#[test]
fn criterion_01_hilbert_dual_form() {
    assert_criterion("hilbert-dual-form");
}

#[test]
fn criterion_02_isometric_embedding() {
    assert_criterion("isometric-embedding");
}

#[test]
fn criterion_03_birkhoff_contraction() {
    assert_criterion("birkhoff-contraction");
}

#[test]
fn criterion_04_gauge_contraction() {
    assert_criterion("gauge-contraction");
}

#[test]
fn criterion_05_complex_pf_soundness() {
    assert_criterion("complex-pf-soundness");
}

#[test]
fn criterion_06_domination_sharpness() {
    assert_criterion("domination-sharpness");
}

#[test]
fn criterion_07_complex_jentzsch() {
    assert_criterion("complex-jentzsch");
}

#[test]
fn criterion_08_rpf_desk() {
    assert_criterion("rpf-desk");
}

#[test]
fn criterion_09_constructive_iteration() {
    assert_criterion("constructive-iteration");
}

#[test]
fn criterion_10_exp_ratio() {
    assert_criterion("exp-ratio");
}

#[test]
fn criterion_11_appendix_aperture() {
    assert_criterion("appendix-aperture");
}
