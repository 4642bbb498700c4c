//! Acceptance suite: the twelve verification criteria at their full budgets,
//! one test each, printing a pass/fail line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines and
//! timings.

use matwaring::suite::{self, SuiteBudgets};

fn full() -> SuiteBudgets {
    SuiteBudgets::full(0)
}

fn check(rep: suite::CriterionReport) {
    println!("{}", rep.line());
    assert!(rep.pass, "{}", rep.line());
}

#[test]
fn criterion_01_three_powers_exhaustive_m2_f3() {
    check(suite::criterion_1_exhaustive_m2_f3());
}

#[test]
fn criterion_02_three_powers_randomized() {
    check(suite::criterion_2_three_powers_randomized(&full()));
}

#[test]
fn criterion_03_three_cubes_over_f2() {
    check(suite::criterion_3_f2_cubes(&full()));
}

#[test]
fn criterion_04_two_powers_n7() {
    check(suite::criterion_4_two_powers(&full()));
}

#[test]
fn criterion_05_block_root_identity() {
    check(suite::criterion_5_block_root(&full()));
}

#[test]
fn criterion_06_primitive_power_orbit_polynomials() {
    check(suite::criterion_6_primitive_power_orbits(&full()));
}

#[test]
fn criterion_07_full_orbit_count_bound() {
    check(suite::criterion_7_orbit_bound(&full()));
}

#[test]
fn criterion_08_trace_fiber_bound() {
    check(suite::criterion_8_trace_fiber_bound(&full()));
}

#[test]
fn criterion_09_divisor_count_bound() {
    check(suite::criterion_9_divisor_bound(&full()));
}

#[test]
fn criterion_10_kpower_polynomials_constructive() {
    check(suite::criterion_10_kpower_constructive(&full()));
}

#[test]
fn criterion_11_primitive_trace_census() {
    check(suite::criterion_11_cohen(&full()));
}

#[test]
fn criterion_12_sharp_condition_threshold() {
    check(suite::criterion_12_sharp_phenomenology());
}
