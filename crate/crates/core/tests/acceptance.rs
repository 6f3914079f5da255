//! One test per acceptance criterion. Each prints its per-check report and a
//! final `criterion N name: PASS|FAIL` line.

use lltm_core::verify::{run_criterion, VerifyOptions};

fn opts() -> VerifyOptions {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    VerifyOptions { seed: 0, jobs }
}

fn criterion(id: usize) {
    let r = run_criterion(id, &opts()).expect("known criterion");
    println!("{r}");
    println!("[{:.1}s]", r.elapsed.as_secs_f64());
    assert!(r.passed(), "{}", r.headline());
}

#[test]
fn criterion_1_step() {
    criterion(1);
}

#[test]
fn criterion_2_iteration() {
    criterion(2);
}

#[test]
fn criterion_3_boolstep() {
    criterion(3);
}

#[test]
fn criterion_4_direct_steps() {
    criterion(4);
}

#[test]
fn criterion_5_closed_forms() {
    criterion(5);
}

#[test]
fn criterion_6_polynomials() {
    criterion(6);
}

#[test]
fn criterion_7_bint_algebra() {
    criterion(7);
}

#[test]
fn criterion_8_ket_laws() {
    criterion(8);
}
