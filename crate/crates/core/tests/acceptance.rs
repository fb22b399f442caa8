//! Acceptance suite: one PASS/FAIL line per criterion, all required to pass.

use wchar::verify::{
    criterion_bijection, criterion_bk, criterion_brst_vanishing, criterion_exceptional, criterion_generic,
    criterion_grading, criterion_stability, criterion_virasoro, CriterionReport,
};

fn report(r: CriterionReport) {
    println!("{}", r.line());
    if let Some(cmd) = &r.repro {
        println!("  reproduce: {cmd}");
    }
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_1_grading_soundness() {
    // every partition of n <= 8, under 10 s
    report(criterion_grading(8));
}

#[test]
fn criterion_2_exceptional_pairs() {
    // n <= 6, p <= 9, q <= 5, under 5 min
    report(criterion_exceptional(6, 9, 5));
}

#[test]
fn criterion_3_virasoro_cross_check() {
    // (3,2), (4,3), (5,4) to order 12, exact, under 30 s
    report(criterion_virasoro(12));
}

#[test]
fn criterion_4_wf_bijection() {
    report(criterion_bijection(6, 9, 5));
}

#[test]
fn criterion_5_brst_vanishing() {
    // n in {2, 3}, dim L <= 200, under 2 min
    report(criterion_brst_vanishing(200));
}

#[test]
fn criterion_6_bk_consistency() {
    report(criterion_bk(8));
}

#[test]
fn criterion_7_genericity() {
    report(criterion_generic(6, 9, 5));
}

#[test]
fn criterion_8_stability() {
    // (N, T) -> (N + 2, T + 4)
    report(criterion_stability());
}
