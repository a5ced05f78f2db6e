//! Acceptance suite: one test per verification criterion, each pinned to
//! its sample count and tolerance. Every test prints a PASS/FAIL line;
//! run with `cargo test --test acceptance -- --nocapture` to see them all.

use sl2o::suites::run_suite;

const SEED: u64 = 20260810;

fn criterion(number: u32, label: &str, suite: &str, samples: usize, tol: f64) {
    let report = run_suite(suite, Some(samples), Some(tol), SEED).expect("known suite");
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {number:02} ({label}): {status}  max_residual={:.3e} tol={:.1e} samples={}",
        report.max_residual, report.tolerance, report.samples
    );
    assert!(
        report.pass,
        "criterion {number} ({label}) failed: residual {:.3e} > tol {:.1e}",
        report.max_residual, report.tolerance
    );
}

#[test]
fn criterion_01_clifford_triality_identities() {
    // Clifford square, adjointness and norm multiplicativity at 1e-12
    criterion(1, "clifford/triality identities", "clifford", 1000, 1e-12);
    criterion(1, "octonion algebra backing them", "octonion", 1000, 1e-12);
}

#[test]
fn criterion_02_vector_clifford_double_application() {
    criterion(2, "f.(f.psi) = -L(f,f) psi", "vector-clifford", 1000, 1e-10);
}

#[test]
fn criterion_03_quartic_identity() {
    // L(f11,f22) = -2 L(f12,f21) is part of the quartic suite
    criterion(3, "L(f11,f22) = -2 L(f12,f21)", "quartic", 1000, 1e-10);
}

#[test]
fn criterion_04_nullity_of_q() {
    // |L(Q,Q)| <= 1e-10 |Q|^2 is checked inside the same suite
    criterion(4, "Q(psi) is null", "quartic", 1000, 1e-10);
}

#[test]
fn criterion_05_invariance_and_covariance() {
    criterion(
        5,
        "mu invariant / (det P)^2 covariant",
        "invariance",
        200,
        1e-9,
    );
}

#[test]
fn criterion_06_quaternionic_anchor() {
    criterion(
        6,
        "mu = -3 qdet and qdet = cdet",
        "quaternion-oracle",
        500,
        1e-9,
    );
}

#[test]
fn criterion_07_signatures() {
    // (22,9,0), (22,0,0), (14,8,0), 10 x (10,5,0) and 20 orbit points
    criterion(7, "restricted Hessian signatures", "signature", 20, 0.0);
}

#[test]
fn criterion_08_closed_form_hessian() {
    criterion(
        8,
        "closed-form Hessian at the reference",
        "hessian-closed-form",
        50,
        1e-12,
    );
}

#[test]
fn criterion_09_normalization() {
    criterion(9, "diagonal unit normal form", "normalize", 100, 1e-8);
}

#[test]
fn criterion_10_duality_membership() {
    criterion(
        10,
        "duality calibration at rho0",
        "duality-calibration",
        1,
        1e-12,
    );
    criterion(10, "stabilizer words and retraction", "duality", 50, 1e-8);
}

#[test]
fn criterion_11_derivative_oracles() {
    criterion(
        11,
        "gradient/Hessian vs finite differences",
        "derivatives",
        50,
        1e-5,
    );
}
