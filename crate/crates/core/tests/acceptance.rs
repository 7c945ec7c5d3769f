//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them all). Tolerances and trial counts are pinned in this
//! file, deliberately not configurable.

use specmeasure::verify::{self, CheckResult};

fn report(criterion: &str, results: &[CheckResult]) {
    let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.pass).collect();
    if failed.is_empty() {
        println!("acceptance {criterion}: PASS ({} checks)", results.len());
    } else {
        println!(
            "acceptance {criterion}: FAIL ({} of {} checks)",
            failed.len(),
            results.len()
        );
        for f in &failed {
            println!(
                "  {}: lhs={} rhs={} gap={} tol={}",
                f.name, f.lhs, f.rhs, f.abs_gap, f.tol
            );
            if let Some(cx) = &f.counterexample {
                println!("  counterexample:\n{cx}");
            }
        }
    }
    assert!(
        failed.is_empty(),
        "criterion '{criterion}' failed: {:?}",
        failed.iter().map(|f| f.name.clone()).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_01_moment_oracle_equivalence() {
    // 200 random symmetric integer matrices (n <= 6, entries -2..2),
    // 20 random multi-indices each (components <= 4): permutation-sum
    // moments equal elimination moments exactly; measure-integral
    // moments match float determinants within 1e-7 (normalized).
    let results = verify::oracle_equivalence_suite(200, 20, 0xA11CE);
    report("01 moment-oracle-equivalence", &results);
}

#[test]
fn criterion_02_laplacian_identity() {
    // 50 random loopless simple graphs (n <= 8): covariance matrix equals
    // degree-minus-adjacency exactly.
    let results = verify::laplacian_suite(50, 0xA11CE);
    report("02 covariance-laplacian", &results);
}

#[test]
fn criterion_03_power_covariance() {
    // cov(X_i^k, X_j^k) = -((A^k)_{ij})^2 for all i != j, k <= 5, exactly.
    let results = verify::power_covariance_suite(50, 5, 0xA11CE);
    report("03 power-covariance", &results);
}

#[test]
fn criterion_04_analytic_minor_and_trace() {
    // 100 random (graph, subset, polynomial of degree <= 4) triples:
    // det(f(A)_uu) = E prod f(X_i) and tr(f(A)_uu) = E sum f(X_i),
    // exact on the rational path, within 1e-8 (normalized) in floats.
    let results = verify::analytic_identity_suite(100, 0xA11CE);
    report("04 analytic-minor-and-trace", &results);
}

#[test]
fn criterion_05_slater_probabilities() {
    // 20 random graphs with simple spectrum: each event probability
    // matches det(P_uv)^2 within 1e-8 and the squares sum to 1 over v,
    // for |u| <= 3.
    let results = verify::slater_suite(20, 0xA11CE);
    report("05 slater-probabilities", &results);
}

#[test]
fn criterion_06_basis_independence() {
    // the 3-leaf star plus 10 random repeated-spectrum block graphs,
    // 20 random in-class rotations each: every atom unchanged within
    // 1e-8; the Hadamard commutation lemma exact on 100 rational triples.
    let results = verify::basis_independence_suite(10, 20, 100, 0xA11CE);
    report("06 basis-independence", &results);
}

#[test]
fn criterion_07_star_product_convergence() {
    // P2, P3, K3, K4; every merge set of size <= 2; multi-indices with
    // total degree <= 6; copy counts 100, 1000, 10000. Even indices
    // converge to det(D[k/2]) within 0.05 at the largest n with log-log
    // slope <= -0.4 where the gap is resolvable; odd indices decay below
    // 0.05; the single-root special case pins limit moments to d_o^{k/2}
    // exactly.
    let results = verify::clt_suite(0.05);
    report("07 star-product-convergence", &results);
}

#[test]
fn criterion_08_rademacher_mgf() {
    // 20 random (limit law, z) pairs with |z_i| <= 0.1 at truncation 40:
    // the sign-averaged and squared MGF routes agree to 1e-9.
    let results = verify::rademacher_suite(20, 0xA11CE);
    report("08 rademacher-mgf", &results);
}

#[test]
fn criterion_09_hike_reconciliation() {
    // whole test family with n <= 5, truncation 8, exact arithmetic:
    // zeta*M = 1; zeta vs hike enumeration; Moebius vs signed cycle
    // covers; excursions closed vs brute force; resolvent blocks vs
    // power blocks; r_u vs filtered hikes and vs the zeta quotient;
    // traces vs pyramid sums; log r_u vs visit-weighted sums; Boolean
    // cumulants vs single-vertex excursions. Plus Viennot's
    // walk-to-pyramid correspondence exhaustively at length <= 6 (n <= 4).
    let mut results = verify::hike_reconciliation_suite(8);
    results.extend(verify::viennot_suite(6));
    report("09 hike-reconciliation", &results);
}

#[test]
fn criterion_10_known_closed_forms() {
    // triangle series against 1/(1-3z^2-2z^3) and
    // (1-z^2)/(1-3z^2-2z^3), coefficient by coefficient to degree 10.
    let results = verify::closed_form_suite();
    report("10 known-closed-forms", &results);
}
