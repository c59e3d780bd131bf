//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use tanglebound::acceptance::{criterion, Outcome};

fn run(id: u8) {
    let outcome: Outcome = criterion(id)
        .expect("known criterion")
        .expect("criterion ran");
    println!("{}", outcome.line());
    if !outcome.passed() {
        for c in outcome.checks.iter().filter(|c| !c.passed) {
            println!("  {}: {}", c.name, c.detail);
        }
    }
    assert!(outcome.passed(), "{}", outcome.line());
}

#[test]
fn criterion_1_class_closed_forms() {
    run(1);
}

#[test]
fn criterion_2_literature_dominance() {
    run(2);
}

#[test]
fn criterion_3_closed_form_vs_quartic() {
    run(3);
}

#[test]
fn criterion_4_ghzw_reference() {
    run(4);
}

#[test]
fn criterion_5_invariance_suites() {
    run(5);
}

#[test]
fn criterion_6_dominance_chain() {
    run(6);
}

#[test]
fn criterion_7_quartic_solver() {
    run(7);
}

#[test]
fn criterion_8_endpoint_transforms() {
    run(8);
}
