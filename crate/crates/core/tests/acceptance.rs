//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass/fail line.

use symdisc::acceptance::{run_criterion, CRITERIA};

const SEED: u64 = 20260810;
const TOL: f64 = 1e-8;

fn run(id: usize) {
    let outcome = run_criterion(id, SEED, TOL);
    println!("{}", outcome.line());
    assert!(outcome.pass, "{}", outcome.line());
}

#[test]
fn criterion_01_membership_oracle_n2() {
    run(1);
}

#[test]
fn criterion_02_symmetrization_soundness() {
    run(2);
}

#[test]
fn criterion_03_joint_spectrum_reconstruction() {
    run(3);
}

#[test]
fn criterion_04_fot_residuals() {
    run(4);
}

#[test]
fn criterion_05_fot_identity_suite() {
    run(5);
}

#[test]
fn criterion_06_dilation_fidelity() {
    run(6);
}

#[test]
fn criterion_07_model_round_trip() {
    run(7);
}

#[test]
fn criterion_08_variety_distinguishedness() {
    run(8);
}

#[test]
fn criterion_09_von_neumann_on_varieties() {
    run(9);
}

#[test]
fn criterion_10_separation_certificates() {
    run(10);
}

#[test]
fn criterion_11_g3_to_g2_projection() {
    run(11);
}

#[test]
fn criteria_table_is_complete() {
    assert_eq!(CRITERIA.len(), 11);
}

#[test]
fn verdicts_are_seed_robust() {
    // pass/fail verdicts must not depend on the seed (spot-checked on the
    // cheap criteria; the heavy corpora are seeded the same way)
    for seed in [1u64, 7, 999, 4242] {
        for id in [1usize, 2, 3, 8, 11] {
            let outcome = run_criterion(id, seed, TOL);
            assert!(outcome.pass, "seed {seed}: {}", outcome.line());
        }
    }
}
