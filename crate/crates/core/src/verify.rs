//! Randomized and exhaustive verification suites: every identity the
//! library claims, checked against an independent route (permutation
//! sums, brute-force enumeration, direct inversion). The command-line
//! `verify` command and the acceptance test target both run these.
//!
//! Floating-point comparisons are normalized by the magnitude of what
//! was actually summed, so a check reads `|lhs - rhs| <= tol * scale`;
//! exact-arithmetic checks use `tol = 0` and compare rationals.

use itertools::Itertools;
use num::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{set_partitions, subsets};
use crate::graph::WeightedGraph;
use crate::hikes;
use crate::hikes::CycleSet;
use crate::jsm::{self, MultiIndex, Polynomial};
use crate::linalg::{
    self, column_mix, eigendecompose, rat, schur_block, Matrix, Rat, SymmetricMatrix,
};
use crate::series::{MatrixSeries, Series};
use crate::starlimit;

/// One verification row, aligned with the CSV schema
/// `(name, lhs, rhs, abs_gap, tol, pass)`.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Worst normalized deviation observed (`|lhs - rhs| / scale`).
    pub abs_gap: f64,
    pub tol: f64,
    pub pass: bool,
    /// Replayable description of the first failing case, when any.
    pub counterexample: Option<String>,
}

pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}

pub fn first_failure(results: &[CheckResult]) -> Option<&CheckResult> {
    results.iter().find(|r| !r.pass)
}

/// Accumulates many cases into one aggregate row keyed by the worst
/// normalized deviation.
struct Aggregate {
    name: String,
    tol: f64,
    worst: f64,
    lhs: f64,
    rhs: f64,
    counterexample: Option<String>,
}

impl Aggregate {
    fn new(name: &str, tol: f64) -> Self {
        Aggregate {
            name: name.to_string(),
            tol,
            worst: 0.0,
            lhs: 0.0,
            rhs: 0.0,
            counterexample: None,
        }
    }

    fn observe(&mut self, lhs: f64, rhs: f64, scale: f64, cx: impl FnOnce() -> String) {
        let gap = (lhs - rhs).abs() / scale.max(1e-300);
        if gap > self.worst {
            self.worst = gap;
            self.lhs = lhs;
            self.rhs = rhs;
        }
        if gap > self.tol && self.counterexample.is_none() {
            self.counterexample = Some(cx());
        }
    }

    fn observe_exact(&mut self, equal: bool, lhs: f64, rhs: f64, cx: impl FnOnce() -> String) {
        if !equal {
            self.worst = self.worst.max((lhs - rhs).abs().max(1.0));
            self.lhs = lhs;
            self.rhs = rhs;
            if self.counterexample.is_none() {
                self.counterexample = Some(cx());
            }
        }
    }

    fn observe_flag(&mut self, ok: bool, value: f64, cx: impl FnOnce() -> String) {
        if !ok {
            self.worst = self.worst.max(value.abs().max(1.0));
            self.lhs = value;
            if self.counterexample.is_none() {
                self.counterexample = Some(cx());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            pass: self.worst <= self.tol,
            name: self.name,
            lhs: self.lhs,
            rhs: self.rhs,
            abs_gap: self.worst,
            tol: self.tol,
            counterexample: self.counterexample,
        }
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn dump(a: &SymmetricMatrix) -> String {
    WeightedGraph::from_adjacency(a.clone()).to_dense_string()
}

fn random_subset(n: usize, max_size: usize, rng: &mut impl Rng) -> Vec<usize> {
    let size = rng.gen_range(1..=max_size.min(n));
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    let mut u = all[..size].to_vec();
    u.sort_unstable();
    u
}

// ---------------------------------------------------------------------
// Moment oracle equivalence
// ---------------------------------------------------------------------

/// Permutation-sum moments against elimination-formula moments, exactly
/// on the rational path; measure-integral moments against float
/// determinants on the float path.
pub fn oracle_equivalence_suite(
    matrices: usize,
    indices_per: usize,
    seed: u64,
) -> Vec<CheckResult> {
    let mut exact = Aggregate::new("moments/permutation-vs-elimination", 0.0);
    let mut float = Aggregate::new("moments/measure-vs-determinant", 1e-7);

    for trial in 0..matrices {
        let mut rng = rng_for(seed, trial as u64);
        let n = rng.gen_range(2..=6);
        let a = WeightedGraph::random_integer_symmetric(n, -2, 2, &mut rng);
        let a_rat = a.to_rational();
        let measure = jsm::build_measure(&eigendecompose(&a).unwrap()).unwrap();
        for _ in 0..indices_per {
            let k = MultiIndex::new((0..n).map(|_| rng.gen_range(0..=4)).collect());

            let mixed = column_mix(&a_rat, k.components());
            let perm_sum = mixed.det_leibniz();
            let elimination = mixed.det_bareiss();
            exact.observe_exact(
                perm_sum == elimination,
                perm_sum.to_f64().unwrap_or(f64::NAN),
                elimination.to_f64().unwrap_or(f64::NAN),
                || format!("k = {:?}\n{}", k.components(), dump(&a)),
            );

            let oracle = jsm::moment_oracle(&measure, &k);
            let det = jsm::generalized_moment(&a, &k);
            // scale by the total variation of the integrand over the atoms
            let scale: f64 = measure
                .atoms()
                .iter()
                .map(|atom| {
                    let mut t = atom.weight.abs();
                    for (x, &e) in atom.point.iter().zip(k.components()) {
                        t *= x.abs().powi(e as i32);
                    }
                    t
                })
                .sum::<f64>()
                .max(1.0);
            float.observe(oracle, det, scale, || {
                format!("k = {:?}\n{}", k.components(), dump(&a))
            });
        }
    }
    vec![exact.finish(), float.finish()]
}

// ---------------------------------------------------------------------
// Covariance identities
// ---------------------------------------------------------------------

/// Covariance matrix equals the combinatorial Laplacian on loopless
/// simple graphs, exactly.
pub fn laplacian_suite(graphs: usize, seed: u64) -> Vec<CheckResult> {
    let mut agg = Aggregate::new("covariance/laplacian", 0.0);
    for trial in 0..graphs {
        let mut rng = rng_for(seed, 1000 + trial as u64);
        let n = rng.gen_range(2..=8);
        let g = WeightedGraph::gnp(n, 0.5, &mut rng);
        let cov = jsm::covariance_matrix_exact(g.adjacency());
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j {
                    rat(g.degree(i))
                } else {
                    rat(-g.weight(i, j))
                };
                agg.observe_exact(
                    cov[(i, j)] == expect,
                    cov[(i, j)].to_f64().unwrap_or(f64::NAN),
                    expect.to_f64().unwrap_or(f64::NAN),
                    || format!("entry ({i},{j})\n{}", g.to_dense_string()),
                );
            }
        }
    }
    vec![agg.finish()]
}

/// `cov(X_i^k, X_j^k) = -((A^k)_{ij})^2` for `i != j`, exactly, plus the
/// sign property (never positive).
pub fn power_covariance_suite(graphs: usize, kmax: usize, seed: u64) -> Vec<CheckResult> {
    let mut identity = Aggregate::new("covariance/power-identity", 0.0);
    let mut sign = Aggregate::new("covariance/non-positive", 0.0);
    for trial in 0..graphs {
        let mut rng = rng_for(seed, 2000 + trial as u64);
        let n = rng.gen_range(2..=8);
        let g = WeightedGraph::gnp(n, 0.5, &mut rng);
        let a = g.adjacency();
        let a_rat = a.to_rational();
        for k in 0..=kmax {
            let pow = a_rat.pow(k);
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let cov = jsm::power_covariance_exact(a, i, j, k).unwrap();
                    let expect = -(pow[(i, j)].clone() * pow[(i, j)].clone());
                    identity.observe_exact(
                        cov == expect,
                        cov.to_f64().unwrap_or(f64::NAN),
                        expect.to_f64().unwrap_or(f64::NAN),
                        || format!("i={i} j={j} k={k}\n{}", g.to_dense_string()),
                    );
                    sign.observe_flag(!cov.is_positive(), cov.to_f64().unwrap_or(f64::NAN), || {
                        format!("i={i} j={j} k={k}\n{}", g.to_dense_string())
                    });
                }
            }
        }
    }
    vec![identity.finish(), sign.finish()]
}

// ---------------------------------------------------------------------
// Analytic minors, traces, characteristic polynomials
// ---------------------------------------------------------------------

/// `det(f(A)_uu) = E prod f(X_i)` and `tr(f(A)_uu) = E sum f(X_i)` on
/// random (graph, subset, polynomial) triples; rational path exact,
/// float path normalized to the expansion magnitude.
pub fn analytic_identity_suite(trials: usize, seed: u64) -> Vec<CheckResult> {
    let mut minor_exact = Aggregate::new("analytic/minor-exact", 0.0);
    let mut minor_float = Aggregate::new("analytic/minor-float", 1e-8);
    let mut trace_exact = Aggregate::new("analytic/trace-exact", 0.0);
    let mut trace_float = Aggregate::new("analytic/trace-float", 1e-8);
    let mut charpoly = Aggregate::new("analytic/charpoly-exact", 0.0);

    for trial in 0..trials {
        let mut rng = rng_for(seed, 3000 + trial as u64);
        let n = rng.gen_range(2..=6);
        let g = WeightedGraph::gnp(n, 0.6, &mut rng);
        let a = g.adjacency();
        let u = random_subset(n, 3, &mut rng);
        let degree = rng.gen_range(0..=4);
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-3..=3) as f64).collect();
        let f = Polynomial::new(coeffs);
        let cx = || format!("u = {u:?}, f = {:?}\n{}", f.coeffs(), g.to_dense_string());

        let (lhs, rhs) = jsm::analytic_minor_exact(a, &u, &f);
        minor_exact.observe_exact(
            lhs == rhs,
            lhs.to_f64().unwrap_or(f64::NAN),
            rhs.to_f64().unwrap_or(f64::NAN),
            cx,
        );
        let (lhs, rhs) = jsm::analytic_minor(a, &u, &f);
        let scale = expansion_scale(a, &u, &f);
        minor_float.observe(lhs, rhs, scale, cx);

        let (lhs, rhs) = jsm::trace_identity_exact(a, &u, &f);
        trace_exact.observe_exact(
            lhs == rhs,
            lhs.to_f64().unwrap_or(f64::NAN),
            rhs.to_f64().unwrap_or(f64::NAN),
            cx,
        );
        let (lhs, rhs) = jsm::trace_identity(a, &u, &f);
        trace_float.observe(lhs, rhs, scale, cx);

        let check = jsm::submatrix_charpoly_exact(a, &u, &f);
        let equal = check.moment_side == check.matrix_side;
        charpoly.observe_exact(equal, 0.0, 0.0, cx);
    }
    vec![
        minor_exact.finish(),
        minor_float.finish(),
        trace_exact.finish(),
        trace_float.finish(),
        charpoly.finish(),
    ]
}

// magnitude of the moment expansion of E prod f(X_i), for normalizing
// float comparisons
fn expansion_scale(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> f64 {
    let n = a.n();
    let deg = f.degree();
    let mut exps = vec![0usize; u.len()];
    let mut scale = 1.0f64;
    loop {
        let coeff: f64 = exps.iter().map(|&e| f.coeffs()[e]).product();
        if coeff != 0.0 {
            let k = MultiIndex::on_subset(n, u, &exps);
            scale += (coeff * jsm::generalized_moment(a, &k)).abs();
        }
        let mut done = true;
        for e in exps.iter_mut() {
            if *e < deg {
                *e += 1;
                done = false;
                break;
            }
            *e = 0;
        }
        if done {
            return scale;
        }
    }
}

// ---------------------------------------------------------------------
// Slater probabilities
// ---------------------------------------------------------------------

/// Atom-summed event probabilities match squared Slater determinants,
/// and the squared determinants over all `v` sum to one.
pub fn slater_suite(graphs: usize, seed: u64) -> Vec<CheckResult> {
    let mut value = Aggregate::new("slater/value", 1e-8);
    let mut completeness = Aggregate::new("slater/completeness", 1e-8);

    let mut produced = 0usize;
    let mut salt = 0u64;
    while produced < graphs {
        let mut rng = rng_for(seed, 4000 + salt);
        salt += 1;
        let n = rng.gen_range(4..=6);
        let a = WeightedGraph::random_integer_symmetric(n, -2, 2, &mut rng);
        let eig = eigendecompose(&a).unwrap();
        if !eig.is_simple_spectrum() {
            continue;
        }
        produced += 1;

        for size in 1..=3.min(n) {
            for u in (0..n).combinations(size) {
                let mut total = 0.0;
                for v in (0..n).combinations(size) {
                    let (prob, slater_sq) = jsm::slater_probability(&eig, &u, &v).unwrap();
                    total += slater_sq;
                    value.observe(prob, slater_sq, 1.0, || {
                        format!("u = {u:?}, v = {v:?}\n{}", dump(&a))
                    });
                }
                completeness.observe(total, 1.0, 1.0, || format!("u = {u:?}\n{}", dump(&a)));
            }
        }
    }
    vec![value.finish(), completeness.finish()]
}

// ---------------------------------------------------------------------
// Basis independence
// ---------------------------------------------------------------------

/// In-class basis rotations leave every atom unchanged; the
/// Hadamard-product commutation lemma holds exactly on random rational
/// triples.
pub fn basis_independence_suite(
    random_graphs: usize,
    rotations: usize,
    lemma_trials: usize,
    seed: u64,
) -> Vec<CheckResult> {
    let mut atoms = Aggregate::new("basis/rotation-invariance", 1e-8);
    let mut lemma = Aggregate::new("basis/hadamard-lemma", 0.0);

    // the star K_{1,3} plus random block constructions with forced
    // repeated eigenvalues (two disjoint copies double every eigenvalue)
    let mut graphs = vec![WeightedGraph::star(3)];
    for trial in 0..random_graphs {
        let mut rng = rng_for(seed, 5000 + trial as u64);
        let n = rng.gen_range(3..=4);
        let g = WeightedGraph::gnp(n, 0.6, &mut rng);
        graphs.push(g.disjoint_union(&g));
    }
    for (idx, g) in graphs.iter().enumerate() {
        let report =
            jsm::basis_independence_check(g.adjacency(), rotations, seed ^ idx as u64).unwrap();
        if report.skipped {
            continue;
        }
        atoms.observe(report.max_atom_deviation, 0.0, 1.0, || g.to_dense_string());
    }

    for trial in 0..lemma_trials {
        let mut rng = rng_for(seed, 6000 + trial as u64);
        // random block structure covering 4..6 indices
        let mut sizes = Vec::new();
        let mut total = 0usize;
        let target = rng.gen_range(4..=6);
        while total < target {
            let s = rng.gen_range(1..=(target - total).min(3));
            sizes.push(s);
            total += s;
        }
        let block_of = {
            let mut owner = Vec::new();
            for (b, &s) in sizes.iter().enumerate() {
                owner.extend(vec![b; s]);
            }
            owner
        };
        let n = total;
        let c = Matrix::from_fn(n, n, |i, j| {
            linalg::rat_int((block_of[i] == block_of[j]) as i64)
        });
        let b = Matrix::from_fn(n, n, |i, j| {
            if block_of[i] == block_of[j] {
                linalg::rat_int(rng.gen_range(-5..=5))
            } else {
                Rat::zero()
            }
        });
        let m = Matrix::from_fn(n, n, |_, _| linalg::rat_int(rng.gen_range(-5..=5)));
        lemma.observe_exact(jsm::hadamard_identity_holds(&m, &b, &c), 0.0, 0.0, || {
            format!("block sizes {sizes:?}")
        });
    }
    vec![atoms.finish(), lemma.finish()]
}

// ---------------------------------------------------------------------
// Star-product convergence
// ---------------------------------------------------------------------

/// The full convergence experiment with final-gap thresholds: merged
/// star products of P2, P3, K3 and K4 over every merge set of size at
/// most two and every multi-index of total degree at most six.
pub fn clt_suite(tol_final: f64) -> Vec<CheckResult> {
    clt_experiment(tol_final, true)
}

/// The rate-and-consistency invariants of the same experiment (log-log
/// slopes, monotone gaps, direct-vs-reduced agreement, exact single-root
/// limits) without the final-gap thresholds.
pub fn clt_rate_suite() -> Vec<CheckResult> {
    clt_experiment(starlimit::DEFAULT_FINAL_TOL, false)
}

fn clt_experiment(tol_final: f64, include_final_gaps: bool) -> Vec<CheckResult> {
    let n_list = [100usize, 1000, 10000];
    let kmax_total = 6usize;

    let mut even_gap = Aggregate::new("clt/even-final-gap", tol_final);
    let mut odd_decay = Aggregate::new("clt/odd-final-decay", tol_final);
    let mut slope_ok = Aggregate::new("clt/loglog-slope", 0.0);
    let mut monotone = Aggregate::new("clt/monotone-gaps", 0.0);
    let mut crosscheck = Aggregate::new("clt/direct-vs-reduced", 1e-9);
    let mut failures: Vec<CheckResult> = Vec::new();

    let family: [(&str, WeightedGraph); 4] = [
        ("P2", WeightedGraph::path(2)),
        ("P3", WeightedGraph::path(3)),
        ("K3", WeightedGraph::complete(3)),
        ("K4", WeightedGraph::complete(4)),
    ];

    for (gname, g) in &family {
        let n = g.n();
        let mut merge_sets: Vec<Vec<usize>> = Vec::new();
        for size in 1..=2.min(n - 1) {
            merge_sets.extend((0..n).combinations(size));
        }
        for u in &merge_sets {
            let p = u.len();
            let law = starlimit::build_limit_law(g, u).unwrap();

            // one power block per (g, u, n) serves every multi-index
            let blocks: Vec<MatrixSeries<f64>> = n_list
                .iter()
                .map(|&copies| starlimit::star_power_block(g, u, copies, kmax_total).unwrap())
                .collect();

            // direct path at the smallest n for the cross-check
            let sp = starlimit::build_star_product(g, u, n_list[0]).unwrap();
            let assembled = sp.assembled().unwrap();
            let dim = sp.dim();
            let mut powers: Vec<Matrix<f64>> = vec![Matrix::identity(dim)];
            for k in 1..=kmax_total {
                powers.push(powers[k - 1].matmul(assembled.matrix()));
            }

            let mut indices: Vec<Vec<usize>> = Vec::new();
            if p == 1 {
                indices.extend((1..=kmax_total).map(|k| vec![k]));
            } else {
                for k1 in 1..kmax_total {
                    for k2 in 1..=kmax_total - k1 {
                        indices.push(vec![k1, k2]);
                    }
                }
            }

            for kvec in indices {
                let k = MultiIndex::new(kvec.clone());
                let case = format!("{gname} u={u:?} k={kvec:?}");
                let limit = starlimit::limit_moment(&law, &k);
                let scaled: Vec<f64> = blocks
                    .iter()
                    .zip(&n_list)
                    .map(|(b, &copies)| starlimit::scaled_moment_from_block(b, copies, &k))
                    .collect();
                let gaps: Vec<f64> = scaled.iter().map(|s| (s - limit).abs()).collect();

                // direct column-mixed determinant at n_list[0]
                let direct = {
                    let mixed = Matrix::<f64>::from_fn(dim, dim, |r, c| {
                        if c < p {
                            powers[kvec[c]][(r, c)]
                        } else if r == c {
                            1.0
                        } else {
                            0.0
                        }
                    });
                    mixed.det_lu()
                        / (n_list[0] as f64).powi(k.total() as i32 / 2)
                        / if k.total() % 2 == 1 {
                            (n_list[0] as f64).sqrt()
                        } else {
                            1.0
                        }
                };
                crosscheck.observe(direct, scaled[0], scaled[0].abs().max(1.0), || case.clone());

                let is_even = kvec.iter().all(|&e| e % 2 == 0);
                let final_gap = *gaps.last().unwrap();
                if include_final_gaps {
                    let target = if is_even {
                        &mut even_gap
                    } else {
                        &mut odd_decay
                    };
                    target.observe(final_gap, 0.0, 1.0, || case.clone());
                    if final_gap > tol_final {
                        failures.push(CheckResult {
                            name: format!("clt/case {case}"),
                            lhs: *scaled.last().unwrap(),
                            rhs: limit,
                            abs_gap: final_gap,
                            tol: tol_final,
                            pass: false,
                            counterexample: Some(format!("gaps over n {:?}: {:?}", n_list, gaps)),
                        });
                    }
                }

                // rate: fitted log-log slope over resolvable gaps
                let pts: Vec<(f64, f64)> = n_list
                    .iter()
                    .zip(&gaps)
                    .filter(|&(_, &gap)| gap > 1e-10)
                    .map(|(&nn, &gap)| ((nn as f64).ln(), gap.ln()))
                    .collect();
                if pts.len() == n_list.len() {
                    let m = pts.len() as f64;
                    let sx: f64 = pts.iter().map(|p| p.0).sum();
                    let sy: f64 = pts.iter().map(|p| p.1).sum();
                    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
                    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
                    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
                    slope_ok.observe_flag(slope <= -0.4, slope, || case.clone());
                }

                // gaps must not grow beyond the first step
                let mono = gaps.windows(2).skip(1).all(|w| w[1] <= w[0] + 1e-9);
                monotone.observe_flag(mono, final_gap, || case.clone());
            }
        }
    }

    // single-root special case: limit moments are exactly d_o^{k/2}
    let mut obata = Aggregate::new("clt/single-root-exact-limits", 0.0);
    let star_family: [(&str, WeightedGraph, usize); 5] = [
        ("P2", WeightedGraph::path(2), 0),
        ("P3", WeightedGraph::path(3), 1),
        ("K3", WeightedGraph::complete(3), 0),
        ("K4", WeightedGraph::complete(4), 0),
        ("K1_4", WeightedGraph::star(4), 0),
    ];
    for (gname, g, root) in &star_family {
        let report =
            starlimit::obata_special_case(g, *root, &n_list, kmax_total, tol_final).unwrap();
        for row in &report.rows {
            obata.observe_exact(
                row.limit_exact,
                row.expected_limit,
                row.expected_limit,
                || format!("{gname} root {root} k={}", row.k),
            );
        }
    }

    let mut out = Vec::new();
    if include_final_gaps {
        out.push(even_gap.finish());
        out.push(odd_decay.finish());
    }
    out.push(slope_ok.finish());
    out.push(monotone.finish());
    out.push(crosscheck.finish());
    out.push(obata.finish());
    out.extend(failures);
    out
}

// ---------------------------------------------------------------------
// Rademacher MGF identity
// ---------------------------------------------------------------------

/// Both MGF routes agree on random (limit law, z) pairs.
pub fn rademacher_suite(trials: usize, seed: u64) -> Vec<CheckResult> {
    let mut agg = Aggregate::new("mgf/rademacher-identity", 1e-9);
    let mut produced = 0usize;
    let mut salt = 0u64;
    while produced < trials {
        let mut rng = rng_for(seed, 7000 + salt);
        salt += 1;
        let n = rng.gen_range(3..=5);
        let g = WeightedGraph::gnp(n, 0.6, &mut rng);
        let size = rng.gen_range(1..=2.min(n - 1));
        let u = random_subset(n, size, &mut rng);
        if u.len() == n {
            continue;
        }
        let law = match starlimit::build_limit_law(&g, &u) {
            Ok(law) => law,
            Err(_) => continue,
        };
        let z: Vec<f64> = (0..u.len())
            .map(|_| (rng.gen::<f64>() * 2.0 - 1.0) * 0.1)
            .collect();
        match starlimit::rademacher_mgf_check(&law, &z, 40) {
            Ok((lhs, rhs)) => {
                produced += 1;
                agg.observe(lhs, rhs, 1.0, || {
                    format!("u = {u:?}, z = {z:?}\n{}", g.to_dense_string())
                });
            }
            Err(_) => continue,
        }
    }
    vec![agg.finish()]
}

// ---------------------------------------------------------------------
// Hike / excursion reconciliation
// ---------------------------------------------------------------------

fn reconciliation_family(max_n: usize) -> Vec<(String, WeightedGraph)> {
    let mut family: Vec<(String, WeightedGraph)> = Vec::new();
    for n in 2..=max_n {
        family.push((format!("P{n}"), WeightedGraph::path(n)));
    }
    for n in 3..=max_n {
        family.push((format!("C{n}"), WeightedGraph::cycle(n)));
    }
    for n in 4..=max_n {
        family.push((format!("K{n}"), WeightedGraph::complete(n)));
    }
    for leaves in 3..max_n {
        family.push((format!("S{leaves}"), WeightedGraph::star(leaves)));
    }
    family
}

/// Exact reconciliation of every closed formula with brute-force
/// enumeration on the whole test family, in rational arithmetic.
pub fn hike_reconciliation_suite(lmax: usize) -> Vec<CheckResult> {
    let mut unit = Aggregate::new("hikes/zeta-times-moebius", 0.0);
    let mut zeta_hikes = Aggregate::new("hikes/zeta-vs-enumeration", 0.0);
    let mut moebius_covers = Aggregate::new("hikes/moebius-vs-cycle-covers", 0.0);
    let mut excursions = Aggregate::new("hikes/excursions-closed-vs-brute", 0.0);
    let mut block = Aggregate::new("hikes/resolvent-block-vs-powers", 0.0);
    let mut ru_filter = Aggregate::new("hikes/ru-vs-filtered-hikes", 0.0);
    let mut ru_quotient = Aggregate::new("hikes/ru-vs-zeta-quotient", 0.0);
    let mut mangoldt = Aggregate::new("hikes/trace-vs-pyramids", 0.0);
    let mut mangoldt_u = Aggregate::new("hikes/block-trace-vs-pyramids", 0.0);
    let mut logru = Aggregate::new("hikes/log-ru-vs-visit-sums", 0.0);
    let mut boolean = Aggregate::new("hikes/boolean-cumulants-vs-excursions", 0.0);
    let mut witness = Aggregate::new("hikes/induced-zeta-differs", 0.0);

    for (name, g) in reconciliation_family(5) {
        let n = g.n();
        let cs = CycleSet::new(&g);
        let hikes_list = hikes::enumerate_hikes_with_cap(&g, lmax, lmax.max(10)).unwrap();

        let zeta = hikes::zeta_series(&g, lmax);
        let moebius = hikes::mobius_series(&g, lmax);
        unit.observe_exact(zeta.mul(&moebius) == Series::one(lmax), 0.0, 0.0, || {
            name.clone()
        });
        zeta_hikes.observe_exact(
            zeta == hikes::hike_series(&hikes_list, lmax),
            0.0,
            0.0,
            || name.clone(),
        );
        moebius_covers.observe_exact(
            moebius == hikes::cycle_cover_series(&cs, lmax),
            0.0,
            0.0,
            || name.clone(),
        );

        let tr = hikes::von_mangoldt_series(&g, lmax);
        let pyr = hikes::pyramid_lambda_series(&cs, &hikes_list, lmax);
        let tr_ok = *tr.coeff(0) == linalg::rat_int(n as i64)
            && (1..=lmax).all(|k| tr.coeff(k) == pyr.coeff(k));
        mangoldt.observe_exact(tr_ok, 0.0, 0.0, || name.clone());

        let neumann = MatrixSeries::resolvent(&g.adjacency().to_rational(), lmax);

        for u in subsets(&(0..n).collect::<Vec<_>>()) {
            if u.is_empty() || u.len() == n {
                continue;
            }
            let uname = || format!("{name} u={u:?}");

            let e_closed = hikes::excursion_matrix(&g, &u, lmax).unwrap();
            let e_brute = hikes::excursion_enumeration(&g, &u, lmax);
            excursions.observe_exact(e_closed == e_brute, 0.0, 0.0, uname);

            let r_block = hikes::resolvent_block(&g, &u, lmax).unwrap();
            let powers_ok =
                (0..=lmax).all(|k| *r_block.coeff(k) == neumann.coeff(k).submatrix(&u, &u));
            block.observe_exact(powers_ok, 0.0, 0.0, uname);

            let ru = hikes::ru_series(&g, &u, lmax).unwrap();
            ru_filter.observe_exact(
                ru == hikes::filtered_hike_series(&cs, &hikes_list, &u, lmax),
                0.0,
                0.0,
                uname,
            );
            let ubar: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
            let zeta_ubar = hikes::induced_zeta(&g, &ubar, lmax);
            ru_quotient.observe_exact(ru.mul(&zeta_ubar) == zeta, 0.0, 0.0, uname);

            let tru = hikes::von_mangoldt_u_series(&g, &u, lmax).unwrap();
            let pyr_u = hikes::pyramid_lambda_u_series(&cs, &hikes_list, &u, lmax);
            let tru_ok = *tru.coeff(0) == linalg::rat_int(u.len() as i64)
                && (1..=lmax).all(|k| tru.coeff(k) == pyr_u.coeff(k));
            mangoldt_u.observe_exact(tru_ok, 0.0, 0.0, uname);

            let log_check = hikes::log_ru_check(&g, &u, lmax).unwrap();
            logru.observe_exact(log_check.pass, 0.0, 0.0, uname);
        }

        for i in 0..n {
            let b = hikes::boolean_cumulants(&g, i, lmax);
            let e = hikes::excursion_matrix(&g, &[i], lmax).unwrap().entry(0, 0);
            boolean.observe_exact(b == e, 0.0, 0.0, || format!("{name} i={i}"));
        }
    }

    // r_u is not the induced-subgraph zeta: on K3 with u = {0}, the zeta
    // of the induced subgraph is 1 while r_u is not
    {
        let k3 = WeightedGraph::complete(3);
        let zeta_induced = hikes::induced_zeta(&k3, &[0], 6);
        let ru = hikes::ru_series(&k3, &[0], 6).unwrap();
        witness.observe_exact(
            zeta_induced == Series::one(6) && zeta_induced != ru,
            0.0,
            0.0,
            || "K3 u={0}".to_string(),
        );
    }

    vec![
        unit.finish(),
        zeta_hikes.finish(),
        moebius_covers.finish(),
        excursions.finish(),
        block.finish(),
        ru_filter.finish(),
        ru_quotient.finish(),
        mangoldt.finish(),
        mangoldt_u.finish(),
        logru.finish(),
        boolean.finish(),
        witness.finish(),
    ]
}

/// Viennot's correspondence: a hike is reached by closed walks iff it is
/// a pyramid, and the number of walks reaching it is its von Mangoldt
/// weight. Exhaustive at small length over the small test family.
pub fn viennot_suite(lmax: usize) -> Vec<CheckResult> {
    let mut agg = Aggregate::new("hikes/walks-vs-pyramids", 0.0);
    for (name, g) in reconciliation_family(4) {
        let cs = CycleSet::new(&g);
        let hikes_list = hikes::enumerate_hikes_with_cap(&g, lmax, lmax.max(10)).unwrap();
        let mut counts: std::collections::HashMap<Vec<Vec<usize>>, usize> =
            std::collections::HashMap::new();
        for start in 0..g.n() {
            for len in 1..=lmax {
                for walk in hikes::closed_walks_from(&g, start, len) {
                    let h = hikes::walk_to_hike(&cs, &walk);
                    *counts.entry(h.levels().to_vec()).or_insert(0) += 1;
                }
            }
        }
        for h in &hikes_list {
            if h.is_trivial() {
                continue;
            }
            let walks = counts.get(h.levels()).copied().unwrap_or(0);
            let ok = walks == h.lambda(&cs);
            agg.observe_exact(ok, walks as f64, h.lambda(&cs) as f64, || {
                format!("{name} hike {:?}", h.levels())
            });
        }
    }
    vec![agg.finish()]
}

/// Cumulant identities: `kappa(u) = (-1)^{|u|-1} c(u)` with the cycle
/// sums from the enumeration, and the determinant partition expansion
/// `det(-A_uu) = sum over partitions of (-1)^k prod c(pi_j)`.
pub fn cumulant_suite(graphs: usize, seed: u64) -> Vec<CheckResult> {
    let mut kappa = Aggregate::new("cumulants/kappa-vs-cycle-sum", 0.0);
    let mut det_partition = Aggregate::new("cumulants/det-partition-expansion", 0.0);

    let mut family: Vec<WeightedGraph> = vec![
        WeightedGraph::path(2),
        WeightedGraph::complete(3),
        WeightedGraph::complete(4),
        WeightedGraph::star(3),
    ];
    for trial in 0..graphs {
        let mut rng = rng_for(seed, 8000 + trial as u64);
        let n = rng.gen_range(3..=6);
        family.push(WeightedGraph::gnp(n, 0.6, &mut rng));
    }

    for (idx, g) in family.iter().enumerate() {
        let n = g.n();
        let cs = CycleSet::new(g);
        let a_rat = g.adjacency().to_rational();
        for u in subsets(&(0..n).collect::<Vec<_>>()) {
            if u.is_empty() || u.len() > 4 {
                continue;
            }
            let cx = || format!("graph #{idx} u={u:?}\n{}", g.to_dense_string());

            let kap = jsm::cumulant_exact(g.adjacency(), &u).unwrap();
            let c_u = hikes::cycle_weight_sum_on(&cs, &u);
            let sign = if (u.len() - 1) % 2 == 0 { 1 } else { -1 };
            kappa.observe_exact(
                kap == c_u.clone() * linalg::rat_int(sign),
                kap.to_f64().unwrap_or(f64::NAN),
                (c_u * linalg::rat_int(sign)).to_f64().unwrap_or(f64::NAN),
                cx,
            );

            // det(-A_uu) = sum over partitions of (-1)^blocks prod c(block)
            let det = a_rat.submatrix(&u, &u).neg().det_bareiss();
            let mut partition_sum = Rat::zero();
            for partition in set_partitions(&u) {
                let mut term = linalg::rat_int(if partition.len() % 2 == 0 { 1 } else { -1 });
                for block in &partition {
                    let mut sorted = block.clone();
                    sorted.sort_unstable();
                    term *= hikes::cycle_weight_sum_on(&cs, &sorted);
                }
                partition_sum += term;
            }
            det_partition.observe_exact(
                det == partition_sum,
                det.to_f64().unwrap_or(f64::NAN),
                partition_sum.to_f64().unwrap_or(f64::NAN),
                cx,
            );
        }
    }
    vec![kappa.finish(), det_partition.finish()]
}

// ---------------------------------------------------------------------
// Known closed forms
// ---------------------------------------------------------------------

/// Triangle series against their rational closed forms, coefficient by
/// coefficient to degree ten: `zeta = 1/(1 - 3z^2 - 2z^3)` and
/// `r_{0} = (1 - z^2)/(1 - 3z^2 - 2z^3)`.
pub fn closed_form_suite() -> Vec<CheckResult> {
    let l = 10usize;
    let k3 = WeightedGraph::complete(3);
    let mut zeta_row = Aggregate::new("closed-forms/k3-zeta", 0.0);
    let mut ru_row = Aggregate::new("closed-forms/k3-ru", 0.0);

    // independent expansion by the linear recurrence a_k = 3a_{k-2} + 2a_{k-3}
    let mut rec = vec![Rat::zero(); l + 1];
    rec[0] = linalg::rat_int(1);
    for k in 1..=l {
        let mut v = Rat::zero();
        if k >= 2 {
            v += linalg::rat_int(3) * rec[k - 2].clone();
        }
        if k >= 3 {
            v += linalg::rat_int(2) * rec[k - 3].clone();
        }
        rec[k] = v;
    }
    let zeta_expected = Series::from_coeffs(rec.clone(), l);
    zeta_row.observe_exact(
        hikes::zeta_series(&k3, l) == zeta_expected,
        0.0,
        0.0,
        || "K3 zeta".into(),
    );

    // (1 - z^2) * zeta, expanded through the same recurrence
    let numerator = Series::from_coeffs(
        vec![linalg::rat_int(1), Rat::zero(), linalg::rat_int(-1)],
        l,
    );
    let ru_expected = numerator.mul(&zeta_expected);
    ru_row.observe_exact(
        hikes::ru_series(&k3, &[0], l).unwrap() == ru_expected,
        0.0,
        0.0,
        || "K3 r_u".into(),
    );
    vec![zeta_row.finish(), ru_row.finish()]
}

// ---------------------------------------------------------------------
// Kernel invariants
// ---------------------------------------------------------------------

/// Random linear-algebra invariants: float column-mix determinants
/// against exact ones, eigendecomposition reconstruction and
/// orthogonality, Schur blocks against directly inverted resolvents.
pub fn linalg_suite(trials: usize, seed: u64) -> Vec<CheckResult> {
    let mut colmix = Aggregate::new("linalg/colmix-float-vs-exact", 1e-8);
    let mut reconstruct = Aggregate::new("linalg/eigen-reconstruction", 1e-8);
    let mut orth = Aggregate::new("linalg/eigen-orthogonality", 1e-10);
    let mut det_one = Aggregate::new("linalg/eigen-det-plus-one", 1e-10);
    let mut schur = Aggregate::new("linalg/schur-vs-direct", 1e-10);

    for trial in 0..trials {
        let mut rng = rng_for(seed, 9000 + trial as u64);
        let n = rng.gen_range(2..=6);
        let a = WeightedGraph::random_integer_symmetric(n, -2, 2, &mut rng);
        let cx = || dump(&a);

        let k: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        let float_det = column_mix(a.matrix(), &k).det_lu();
        let exact_det = column_mix(&a.to_rational(), &k).det_bareiss();
        // Hadamard bound of the mixed matrix as the cancellation scale
        let mixed = column_mix(a.matrix(), &k);
        let scale = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| mixed[(i, j)] * mixed[(i, j)])
                    .sum::<f64>()
                    .sqrt()
            })
            .product::<f64>()
            .max(1.0);
        colmix.observe(float_det, exact_det.to_f64().unwrap(), scale, cx);

        let eig = eigendecompose(&a).unwrap();
        let lambda =
            Matrix::<f64>::from_fn(n, n, |i, j| if i == j { eig.eigenvalues()[i] } else { 0.0 });
        let re = eig.basis().matmul(&lambda).matmul(&eig.basis().transpose());
        reconstruct.observe(
            re.sub(a.matrix()).frobenius_norm(),
            0.0,
            a.frobenius_norm().max(1.0),
            cx,
        );
        let gram = eig.basis().transpose().matmul(eig.basis());
        orth.observe(gram.sub(&Matrix::identity(n)).max_abs(), 0.0, 1.0, cx);
        det_one.observe(eig.basis().det_lu(), 1.0, 1.0, cx);

        if n >= 2 {
            let u = random_subset(n, n - 1, &mut rng);
            let z = (rng.gen::<f64>() - 0.5) / a.frobenius_norm().max(1.0);
            if let Ok(block) = schur_block(&a, &u, z) {
                let full = Matrix::<f64>::identity(n)
                    .sub(&a.matrix().scale(&z))
                    .inverse();
                if let Some(full) = full {
                    let expect = full.submatrix(&u, &u);
                    schur.observe(block.sub(&expect).max_abs(), 0.0, 1.0, || {
                        format!("u = {u:?}, z = {z}\n{}", dump(&a))
                    });
                }
            }
        }
    }
    vec![
        colmix.finish(),
        reconstruct.finish(),
        orth.finish(),
        det_one.finish(),
        schur.finish(),
    ]
}

/// Measure-level invariants: unit mass and marginal moments along both
/// routes, on the whole small test family and on random integer
/// matrices.
pub fn measure_invariant_suite(trials: usize, seed: u64) -> Vec<CheckResult> {
    let mut mass = Aggregate::new("measure/unit-mass", 1e-10);
    let mut marginals = Aggregate::new("measure/marginal-moments", 1e-7);
    for (name, g) in reconciliation_family(6) {
        let a = g.adjacency();
        let measure = jsm::build_measure(&eigendecompose(a).unwrap()).unwrap();
        mass.observe(measure.total_mass(), 1.0, 1.0, || name.clone());
        for i in 0..g.n() {
            let check = jsm::marginal_check(a, i, 8).unwrap();
            let scale = check
                .rows
                .iter()
                .map(|r| r.matrix_power.abs())
                .fold(1.0, f64::max);
            marginals.observe(check.max_abs_deviation, 0.0, scale, || name.clone());
        }
    }
    for trial in 0..trials {
        let mut rng = rng_for(seed, 10_000 + trial as u64);
        let n = rng.gen_range(2..=6);
        let a = WeightedGraph::random_integer_symmetric(n, -2, 2, &mut rng);
        let measure = jsm::build_measure(&eigendecompose(&a).unwrap()).unwrap();
        mass.observe(measure.total_mass(), 1.0, 1.0, || dump(&a));

        let i = rng.gen_range(0..n);
        let check = jsm::marginal_check(&a, i, 8).unwrap();
        let scale = check
            .rows
            .iter()
            .map(|r| r.matrix_power.abs())
            .fold(1.0, f64::max);
        marginals.observe(check.max_abs_deviation, 0.0, scale, || dump(&a));
    }
    vec![mass.finish(), marginals.finish()]
}

/// Star-product invariants: bipartite parity, positive semidefiniteness
/// of the limit matrix, and the exact block resolvent with the copy
/// factor.
pub fn starlimit_invariant_suite(trials: usize, seed: u64) -> Vec<CheckResult> {
    let mut parity = Aggregate::new("star/bipartite-parity", 0.0);
    let mut psd = Aggregate::new("star/limit-matrix-psd", 1e-10);
    let mut resolvent = Aggregate::new("star/block-resolvent-factor", 1e-10);

    // parity: bipartite bases with the merge set inside one part
    let parity_cases: [(WeightedGraph, Vec<usize>); 4] = [
        (WeightedGraph::path(2), vec![0]),
        (WeightedGraph::path(3), vec![0, 2]),
        (WeightedGraph::cycle(4), vec![0, 2]),
        (WeightedGraph::star(3), vec![0]),
    ];
    for (g, u) in &parity_cases {
        for copies in [3usize, 17] {
            let sp = starlimit::build_star_product(g, u, copies).unwrap();
            let mut odd_indices: Vec<Vec<usize>> = Vec::new();
            if u.len() == 1 {
                odd_indices.extend([vec![1], vec![3], vec![5]]);
            } else {
                odd_indices.extend([vec![1, 2], vec![2, 1], vec![1, 1], vec![3, 2]]);
            }
            for kvec in odd_indices {
                if kvec.iter().sum::<usize>() % 2 == 0 {
                    continue;
                }
                let m = starlimit::scaled_moment(&sp, &MultiIndex::new(kvec.clone())).unwrap();
                parity.observe_exact(m == 0.0, m, 0.0, || {
                    format!(
                        "u = {u:?}, k = {kvec:?}, n = {copies}\n{}",
                        g.to_dense_string()
                    )
                });
            }
        }
    }

    for trial in 0..trials {
        let mut rng = rng_for(seed, 11_000 + trial as u64);
        let n = rng.gen_range(3..=6);
        let g = WeightedGraph::gnp(n, 0.6, &mut rng);
        let u = random_subset(n, n - 1, &mut rng);
        if u.len() == n {
            continue;
        }
        let law = match starlimit::build_limit_law(&g, &u) {
            Ok(law) => law,
            Err(_) => continue,
        };
        let eig = eigendecompose(law.d()).unwrap();
        psd.observe_flag(
            eig.eigenvalues().iter().all(|&l| l > -1e-10),
            eig.eigenvalues()[0],
            || format!("u = {u:?}\n{}", g.to_dense_string()),
        );

        // exact block resolvent on the assembled star product
        let copies = rng.gen_range(1..=20);
        let sp = match starlimit::build_star_product(&g, &u, copies) {
            Ok(sp) => sp,
            Err(_) => continue,
        };
        if let Some(assembled) = sp.assembled() {
            let z = (rng.gen::<f64>() - 0.5) * 0.5 / assembled.frobenius_norm().max(1.0);
            let merged: Vec<usize> = (0..u.len()).collect();
            if let Ok(lhs) = schur_block(assembled, &merged, z) {
                let ubar: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
                let a = g.adjacency().matrix();
                let inner = Matrix::<f64>::identity(ubar.len())
                    .sub(&a.submatrix(&ubar, &ubar).scale(&z))
                    .inverse();
                if let Some(inner) = inner {
                    let sandwich = a
                        .submatrix(&u, &ubar)
                        .matmul(&inner)
                        .matmul(&a.submatrix(&ubar, &u))
                        .scale(&(copies as f64 * z * z));
                    let rhs = Matrix::<f64>::identity(u.len())
                        .sub(&a.submatrix(&u, &u).scale(&z))
                        .sub(&sandwich)
                        .inverse();
                    if let Some(rhs) = rhs {
                        resolvent.observe(lhs.sub(&rhs).max_abs(), 0.0, 1.0, || {
                            format!("u = {u:?}, n = {copies}, z = {z}\n{}", g.to_dense_string())
                        });
                    }
                }
            }
        }
    }
    vec![parity.finish(), psd.finish(), resolvent.finish()]
}

/// Identity checks against one specific graph: everything that is
/// well-defined at its size, with brute-force sides where feasible.
pub fn single_graph_suite(g: &WeightedGraph, lmax: usize, seed: u64) -> Vec<CheckResult> {
    let n = g.n();
    let a = g.adjacency();
    let mut out = Vec::new();

    if n <= jsm::MEASURE_DIMENSION_CAP {
        let mut mass = Aggregate::new("measure/unit-mass", 1e-10);
        let measure = jsm::build_measure(&eigendecompose(a).unwrap()).unwrap();
        mass.observe(measure.total_mass(), 1.0, 1.0, || dump(a));
        out.push(mass.finish());

        let mut marginals = Aggregate::new("measure/marginal-moments", 1e-7);
        for i in 0..n {
            let check = jsm::marginal_check(a, i, 8).unwrap();
            let scale = check
                .rows
                .iter()
                .map(|r| r.matrix_power.abs())
                .fold(1.0, f64::max);
            marginals.observe(check.max_abs_deviation, 0.0, scale, || dump(a));
        }
        out.push(marginals.finish());
    }

    if g.is_simple() {
        let mut lap = Aggregate::new("covariance/laplacian", 0.0);
        let cov = jsm::covariance_matrix_exact(a);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j {
                    rat(g.degree(i))
                } else {
                    rat(-g.weight(i, j))
                };
                lap.observe_exact(
                    cov[(i, j)] == expect,
                    cov[(i, j)].to_f64().unwrap_or(f64::NAN),
                    expect.to_f64().unwrap_or(f64::NAN),
                    || format!("entry ({i},{j})"),
                );
            }
        }
        out.push(lap.finish());
    }

    {
        let mut identity = Aggregate::new("covariance/power-identity", 0.0);
        let a_rat = a.to_rational();
        for k in 0..=5usize {
            let pow = a_rat.pow(k);
            for i in 0..n {
                for j in i + 1..n {
                    let cov = jsm::power_covariance_exact(a, i, j, k).unwrap();
                    let expect = -(pow[(i, j)].clone() * pow[(i, j)].clone());
                    identity.observe_exact(
                        cov == expect,
                        cov.to_f64().unwrap_or(f64::NAN),
                        expect.to_f64().unwrap_or(f64::NAN),
                        || format!("i={i} j={j} k={k}"),
                    );
                }
            }
        }
        out.push(identity.finish());
    }

    if n <= 8 {
        let mut kappa = Aggregate::new("cumulants/kappa-vs-cycle-sum", 0.0);
        let cs = CycleSet::new(g);
        for u in subsets(&(0..n).collect::<Vec<_>>()) {
            if u.is_empty() || u.len() > 4 {
                continue;
            }
            let kap = jsm::cumulant_exact(a, &u).unwrap();
            let c_u = hikes::cycle_weight_sum_on(&cs, &u);
            let sign = if (u.len() - 1) % 2 == 0 { 1 } else { -1 };
            kappa.observe_exact(
                kap == c_u.clone() * linalg::rat_int(sign),
                kap.to_f64().unwrap_or(f64::NAN),
                f64::NAN,
                || format!("u = {u:?}"),
            );
        }
        out.push(kappa.finish());
    }

    if n <= 6 {
        let l = lmax.min(8);
        let cs = CycleSet::new(g);
        let hikes_list = hikes::enumerate_hikes_with_cap(g, l, l.max(10)).unwrap();
        let zeta = hikes::zeta_series(g, l);
        let moebius = hikes::mobius_series(g, l);

        let mut series_checks = Aggregate::new("hikes/series-reconciliation", 0.0);
        series_checks.observe_exact(zeta.mul(&moebius) == Series::one(l), 0.0, 0.0, || {
            "zeta * moebius != 1".into()
        });
        series_checks.observe_exact(zeta == hikes::hike_series(&hikes_list, l), 0.0, 0.0, || {
            "zeta vs hikes".into()
        });
        series_checks.observe_exact(
            moebius == hikes::cycle_cover_series(&cs, l),
            0.0,
            0.0,
            || "moebius vs cycle covers".into(),
        );
        for u in subsets(&(0..n).collect::<Vec<_>>()) {
            if u.is_empty() || u.len() == n {
                continue;
            }
            let e_closed = hikes::excursion_matrix(g, &u, l).unwrap();
            series_checks.observe_exact(
                e_closed == hikes::excursion_enumeration(g, &u, l),
                0.0,
                0.0,
                || format!("excursions u = {u:?}"),
            );
            let ru = hikes::ru_series(g, &u, l).unwrap();
            series_checks.observe_exact(
                ru == hikes::filtered_hike_series(&cs, &hikes_list, &u, l),
                0.0,
                0.0,
                || format!("r_u u = {u:?}"),
            );
            series_checks.observe_exact(
                hikes::log_ru_check(g, &u, l).unwrap().pass,
                0.0,
                0.0,
                || format!("log r_u u = {u:?}"),
            );
        }
        for i in 0..n {
            let b = hikes::boolean_cumulants(g, i, l);
            let e = hikes::excursion_matrix(g, &[i], l).unwrap().entry(0, 0);
            series_checks.observe_exact(b == e, 0.0, 0.0, || format!("boolean i = {i}"));
        }
        out.push(series_checks.finish());
    }

    if n <= jsm::MEASURE_DIMENSION_CAP {
        let eig = eigendecompose(a).unwrap();
        if !eig.is_simple_spectrum() {
            let mut atoms = Aggregate::new("basis/rotation-invariance", 1e-8);
            let report = jsm::basis_independence_check(a, 20, seed).unwrap();
            atoms.observe(report.max_atom_deviation, 0.0, 1.0, || dump(a));
            out.push(atoms.finish());
        } else if n <= 7 {
            let mut completeness = Aggregate::new("slater/completeness", 1e-8);
            for size in 1..=3.min(n) {
                for u in (0..n).combinations(size) {
                    let mut total = 0.0;
                    for v in (0..n).combinations(size) {
                        let (_, slater_sq) = jsm::slater_probability(&eig, &u, &v).unwrap();
                        total += slater_sq;
                    }
                    completeness.observe(total, 1.0, 1.0, || format!("u = {u:?}"));
                }
            }
            out.push(completeness.finish());
        }
    }

    out
}

/// Every suite at its standard size, for the `verify` command. The
/// trial counts scale with `trials` (the randomized suites use it
/// directly where a count is natural).
pub fn full_suite(trials: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.extend(linalg_suite(trials.max(100), seed));
    out.extend(oracle_equivalence_suite(trials.max(200), 20, seed));
    out.extend(measure_invariant_suite(trials.max(10), seed));
    out.extend(laplacian_suite(trials.max(10), seed));
    out.extend(power_covariance_suite(trials.max(10), 5, seed));
    out.extend(analytic_identity_suite(trials.max(10), seed));
    out.extend(slater_suite(trials.clamp(5, 20), seed));
    out.extend(basis_independence_suite(10, 20, trials.max(10), seed));
    out.extend(cumulant_suite(trials.clamp(5, 20), seed));
    out.extend(hike_reconciliation_suite(8));
    out.extend(viennot_suite(6));
    out.extend(closed_form_suite());
    out.extend(starlimit_invariant_suite(trials.max(10), seed));
    out.extend(rademacher_suite(trials.clamp(5, 20), seed));
    out.extend(clt_rate_suite());
    out
}
