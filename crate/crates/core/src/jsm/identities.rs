//! Identity suite on top of the joint spectral measure: everything the
//! measure is supposed to know about minors, traces, covariances,
//! cumulants and Slater determinants, each computable along two routes
//! (moments vs direct matrix algebra) so that tests can compare them.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{permutation_sign, set_partitions};
use crate::error::{Error, Result};
use crate::jsm::measure::{
    build_measure, generalized_moment, generalized_moment_exact, moment_oracle, MultiIndex,
    Polynomial, MEASURE_DIMENSION_CAP,
};
use crate::linalg::{
    eigendecompose, rat, validate_subset, EigenSystem, Matrix, Rat, Scalar, SymmetricMatrix,
};

/// Expectation `E(prod_{i in u} f(X_i))` expanded through generalized
/// moments: `sum_{k_1..k_p} gamma_{k_1}...gamma_{k_p} m[k on u]`.
fn expectation_product_poly(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> f64 {
    let n = a.n();
    let deg = f.degree();
    let mut total = 0.0;
    let mut exps = vec![0usize; u.len()];
    loop {
        let coeff: f64 = exps.iter().map(|&e| f.coeffs()[e]).product();
        if coeff != 0.0 {
            let k = MultiIndex::on_subset(n, u, &exps);
            total += coeff * generalized_moment(a, &k);
        }
        if !advance(&mut exps, deg) {
            return total;
        }
    }
}

fn expectation_product_poly_exact(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> Rat {
    let n = a.n();
    let deg = f.degree();
    let mut total = Rat::from_integer(0.into());
    let mut exps = vec![0usize; u.len()];
    loop {
        let coeff: f64 = exps.iter().map(|&e| f.coeffs()[e]).product();
        if coeff != 0.0 {
            let k = MultiIndex::on_subset(n, u, &exps);
            total += rat(coeff) * generalized_moment_exact(a, &k);
        }
        if !advance(&mut exps, deg) {
            return total;
        }
    }
}

// odometer over {0..=max}^len
fn advance(exps: &mut [usize], max: usize) -> bool {
    for e in exps.iter_mut() {
        if *e < max {
            *e += 1;
            return true;
        }
        *e = 0;
    }
    false
}

/// Report of [`marginal_check`]: `E(X_i^k)` against `(A^k)_{ii}` for
/// `k = 0..=kmax`, along both moment routes.
#[derive(Clone, Debug)]
pub struct MarginalCheck {
    pub rows: Vec<MarginalRow>,
    pub max_abs_deviation: f64,
    /// False when the dimension exceeds the measure cap and only the
    /// determinant route was exercised.
    pub measure_path_used: bool,
}

#[derive(Clone, Debug)]
pub struct MarginalRow {
    pub k: usize,
    pub matrix_power: f64,
    pub det_moment: f64,
    pub oracle_moment: Option<f64>,
}

/// Checks the marginal property `E(X_i^k) = (A^k)_{ii}`.
pub fn marginal_check(a: &SymmetricMatrix, i: usize, kmax: usize) -> Result<MarginalCheck> {
    let n = a.n();
    if i >= n {
        return Err(Error::argument(format!("vertex {i} out of range")));
    }
    let measure = if n <= MEASURE_DIMENSION_CAP {
        Some(build_measure(&eigendecompose(a)?)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(kmax + 1);
    let mut worst = 0.0f64;
    for k in 0..=kmax {
        let mi = MultiIndex::single(n, i, k);
        let matrix_power = a.matrix().pow(k)[(i, i)];
        let det_moment = generalized_moment(a, &mi);
        let oracle_moment = measure.as_ref().map(|m| moment_oracle(m, &mi));
        worst = worst.max((det_moment - matrix_power).abs());
        if let Some(o) = oracle_moment {
            worst = worst.max((o - matrix_power).abs());
        }
        rows.push(MarginalRow {
            k,
            matrix_power,
            det_moment,
            oracle_moment,
        });
    }
    Ok(MarginalCheck {
        rows,
        max_abs_deviation: worst,
        measure_path_used: measure.is_some(),
    })
}

/// Covariance matrix `E(XX^T) - E(X)E(X)^T` from generalized moments.
/// For a loopless 0/1 adjacency matrix this is the graph Laplacian.
pub fn covariance_matrix(a: &SymmetricMatrix) -> Matrix<f64> {
    let n = a.n();
    let means: Vec<f64> = (0..n)
        .map(|i| generalized_moment(a, &MultiIndex::single(n, i, 1)))
        .collect();
    Matrix::from_fn(n, n, |i, j| {
        let second = if i == j {
            generalized_moment(a, &MultiIndex::single(n, i, 2))
        } else {
            generalized_moment(a, &MultiIndex::on_subset(n, &[i, j], &[1, 1]))
        };
        second - means[i] * means[j]
    })
}

/// Exact-rational covariance matrix.
pub fn covariance_matrix_exact(a: &SymmetricMatrix) -> Matrix<Rat> {
    let n = a.n();
    let means: Vec<Rat> = (0..n)
        .map(|i| generalized_moment_exact(a, &MultiIndex::single(n, i, 1)))
        .collect();
    Matrix::from_fn(n, n, |i, j| {
        let second = if i == j {
            generalized_moment_exact(a, &MultiIndex::single(n, i, 2))
        } else {
            generalized_moment_exact(a, &MultiIndex::on_subset(n, &[i, j], &[1, 1]))
        };
        second - means[i].clone() * means[j].clone()
    })
}

/// `cov(X_i^k, X_j^k)` from moments; equals `-((A^k)_{ij})^2` for
/// `i != j`.
pub fn power_covariance(a: &SymmetricMatrix, i: usize, j: usize, k: usize) -> Result<f64> {
    if i == j {
        return Err(Error::argument("power covariance requires i != j"));
    }
    let n = a.n();
    let joint = generalized_moment(a, &MultiIndex::on_subset(n, &[i, j], &[k, k]));
    let mi = generalized_moment(a, &MultiIndex::single(n, i, k));
    let mj = generalized_moment(a, &MultiIndex::single(n, j, k));
    Ok(joint - mi * mj)
}

pub fn power_covariance_exact(a: &SymmetricMatrix, i: usize, j: usize, k: usize) -> Result<Rat> {
    if i == j {
        return Err(Error::argument("power covariance requires i != j"));
    }
    let n = a.n();
    let joint = generalized_moment_exact(a, &MultiIndex::on_subset(n, &[i, j], &[k, k]));
    let mi = generalized_moment_exact(a, &MultiIndex::single(n, i, k));
    let mj = generalized_moment_exact(a, &MultiIndex::single(n, j, k));
    Ok(joint - mi * mj)
}

/// First-order joint cumulant `kappa(u)` of the variables `X_i, i in u`,
/// by Moebius inversion over the partition lattice:
/// `kappa(u) = sum_{pi} (-1)^{|pi|-1} (|pi|-1)! prod_B E(prod_{i in B} X_i)`.
pub fn cumulant(a: &SymmetricMatrix, u: &[usize]) -> Result<f64> {
    validate_subset(a.n(), u, false)?;
    let n = a.n();
    let moment = |block: &[usize]| -> f64 {
        generalized_moment(a, &MultiIndex::on_subset(n, block, &vec![1; block.len()]))
    };
    let mut total = 0.0;
    for partition in set_partitions(u) {
        let blocks = partition.len();
        let sign = if (blocks - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let weight = sign * factorial(blocks - 1) as f64;
        total += weight * partition.iter().map(|b| moment(b)).product::<f64>();
    }
    Ok(total)
}

pub fn cumulant_exact(a: &SymmetricMatrix, u: &[usize]) -> Result<Rat> {
    validate_subset(a.n(), u, false)?;
    let n = a.n();
    let moment = |block: &[usize]| -> Rat {
        generalized_moment_exact(a, &MultiIndex::on_subset(n, block, &vec![1; block.len()]))
    };
    let mut total = Rat::from_integer(0.into());
    for partition in set_partitions(u) {
        let blocks = partition.len();
        let sign: i64 = if (blocks - 1) % 2 == 0 { 1 } else { -1 };
        let weight = Rat::from_i64(sign * factorial(blocks - 1) as i64);
        let product = partition
            .iter()
            .map(|b| moment(b))
            .fold(Rat::from_i64(1), |acc, m| acc * m);
        total += weight * product;
    }
    Ok(total)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

/// Both sides of `det(f(A)_uu) = E(prod_{i in u} f(X_i))`.
pub fn analytic_minor(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> (f64, f64) {
    let fa = f.apply_f64(a.matrix());
    let lhs = fa.submatrix(u, u).det_lu();
    let rhs = expectation_product_poly(a, u, f);
    (lhs, rhs)
}

pub fn analytic_minor_exact(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> (Rat, Rat) {
    let fa = f.apply_exact(&a.to_rational());
    let lhs = fa.submatrix(u, u).det_bareiss();
    let rhs = expectation_product_poly_exact(a, u, f);
    (lhs, rhs)
}

/// Both sides of the trace identity
/// `tr(f(A)_uu) = E(sum_{i in u} f(X_i))`.
pub fn trace_identity(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> (f64, f64) {
    let fa = f.apply_f64(a.matrix());
    let lhs = fa.submatrix(u, u).trace();
    let n = a.n();
    let rhs = u
        .iter()
        .map(|&i| {
            f.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0.0)
                .map(|(k, &c)| c * generalized_moment(a, &MultiIndex::single(n, i, k)))
                .sum::<f64>()
        })
        .sum();
    (lhs, rhs)
}

pub fn trace_identity_exact(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> (Rat, Rat) {
    let fa = f.apply_exact(&a.to_rational());
    let lhs = fa.submatrix(u, u).trace();
    let n = a.n();
    let mut rhs = Rat::from_i64(0);
    for &i in u {
        for (k, &c) in f.coeffs().iter().enumerate() {
            if c != 0.0 {
                rhs += rat(c) * generalized_moment_exact(a, &MultiIndex::single(n, i, k));
            }
        }
    }
    (lhs, rhs)
}

/// Coefficients (ascending in `z`) of the characteristic polynomial of
/// `f(A)_uu`, along the moment route and the matrix route.
#[derive(Clone, Debug)]
pub struct CharPolyCheck<T> {
    pub moment_side: Vec<T>,
    pub matrix_side: Vec<T>,
}

/// Expands `E(prod_{i in u} (z - f(X_i)))` through moments and compares
/// it with `det(zI - f(A)_uu)` coefficient by coefficient; the roots are
/// the eigenvalues of `f(A)_uu`.
pub fn submatrix_charpoly(a: &SymmetricMatrix, u: &[usize], f: &Polynomial) -> CharPolyCheck<f64> {
    let p = u.len();
    let fa = f.apply_f64(a.matrix()).submatrix(u, u);
    let positions: Vec<usize> = (0..p).collect();

    let mut moment_side = vec![0.0; p + 1];
    let mut matrix_side = vec![0.0; p + 1];
    for m in 0..=p {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let mut esum_moment = 0.0;
        let mut esum_matrix = 0.0;
        for subset in positions.iter().copied().combinations(m) {
            let chosen: Vec<usize> = subset.iter().map(|&pos| u[pos]).collect();
            esum_moment += expectation_product_poly(a, &chosen, f);
            esum_matrix += fa.submatrix(&subset, &subset).det_lu();
        }
        moment_side[p - m] = sign * esum_moment;
        matrix_side[p - m] = sign * esum_matrix;
    }
    CharPolyCheck {
        moment_side,
        matrix_side,
    }
}

pub fn submatrix_charpoly_exact(
    a: &SymmetricMatrix,
    u: &[usize],
    f: &Polynomial,
) -> CharPolyCheck<Rat> {
    let p = u.len();
    let fa = f.apply_exact(&a.to_rational()).submatrix(u, u);
    let positions: Vec<usize> = (0..p).collect();

    let mut moment_side = vec![Rat::from_i64(0); p + 1];
    let mut matrix_side = vec![Rat::from_i64(0); p + 1];
    for m in 0..=p {
        let sign = Rat::from_i64(if m % 2 == 0 { 1 } else { -1 });
        let mut esum_moment = Rat::from_i64(0);
        let mut esum_matrix = Rat::from_i64(0);
        for subset in positions.iter().copied().combinations(m) {
            let chosen: Vec<usize> = subset.iter().map(|&pos| u[pos]).collect();
            esum_moment += expectation_product_poly_exact(a, &chosen, f);
            esum_matrix += fa.submatrix(&subset, &subset).det_bareiss();
        }
        moment_side[p - m] = sign.clone() * esum_moment;
        matrix_side[p - m] = sign * esum_matrix;
    }
    CharPolyCheck {
        moment_side,
        matrix_side,
    }
}

/// `P({X_i : i in u} = {lambda_j : j in v})` by atom summation, paired
/// with the squared Slater determinant `det(P_uv)^2`. Requires a simple
/// spectrum.
pub fn slater_probability(eig: &EigenSystem, u: &[usize], v: &[usize]) -> Result<(f64, f64)> {
    if !eig.is_simple_spectrum() {
        return Err(Error::RepeatedEigenvalues);
    }
    if u.len() != v.len() {
        return Err(Error::argument("|u| and |v| must agree"));
    }
    validate_subset(eig.n(), u, false)?;
    validate_subset(eig.n(), v, false)?;

    let measure = build_measure(eig)?;
    let target: Vec<usize> = v.to_vec();
    let atom_sum = measure
        .atoms()
        .iter()
        .filter(|atom| {
            let mut hit: Vec<usize> = u.iter().map(|&i| atom.classes[i]).collect();
            hit.sort_unstable();
            hit == target
        })
        .map(|atom| atom.weight)
        .sum();

    let slater = eig.basis().submatrix(u, v).det_lu();
    Ok((atom_sum, slater * slater))
}

/// `P(X_{s_1} = lambda_{t_sigma(1)}, ..., X_{s_k} = lambda_{t_sigma(k)})`
/// by atom summation, paired with the closed form
/// `eps(sigma) det(P_st) prod_j p_{s_j, t_sigma(j)}`.
pub fn multivariate_marginal(
    eig: &EigenSystem,
    s: &[usize],
    t: &[usize],
    sigma: &[usize],
) -> Result<(f64, f64)> {
    if !eig.is_simple_spectrum() {
        return Err(Error::RepeatedEigenvalues);
    }
    let k = s.len();
    if t.len() != k || sigma.len() != k {
        return Err(Error::argument("|s|, |t| and |sigma| must agree"));
    }
    validate_subset(eig.n(), s, false)?;
    validate_subset(eig.n(), t, false)?;
    {
        let mut sorted = sigma.to_vec();
        sorted.sort_unstable();
        if sorted != (0..k).collect::<Vec<_>>() {
            return Err(Error::argument("sigma must be a permutation of 0..k"));
        }
    }

    let measure = build_measure(eig)?;
    let atom_sum = measure
        .atoms()
        .iter()
        .filter(|atom| (0..k).all(|j| atom.classes[s[j]] == t[sigma[j]]))
        .map(|atom| atom.weight)
        .sum();

    let p = eig.basis();
    let det_st = p.submatrix(s, t).det_lu();
    let product: f64 = (0..k).map(|j| p[(s[j], t[sigma[j]])]).product();
    let closed = permutation_sign(sigma) as f64 * det_st * product;
    Ok((atom_sum, closed))
}

/// Hadamard-product commutation `(MB) . C = (M . C) B`, which holds
/// whenever `C` is block diagonal with all-ones blocks and the support
/// of `B` is contained in the support of `C`.
pub fn hadamard_identity_holds<T: Scalar>(m: &Matrix<T>, b: &Matrix<T>, c: &Matrix<T>) -> bool {
    let hadamard = |x: &Matrix<T>, y: &Matrix<T>| {
        Matrix::from_fn(x.rows(), x.cols(), |i, j| {
            x[(i, j)].clone() * y[(i, j)].clone()
        })
    };
    hadamard(&m.matmul(b), c) == hadamard(m, c).matmul(b)
}

/// Random orthogonal rotation with determinant one acting inside each
/// repeated-eigenvalue class (a product of Givens rotations, so both
/// properties hold by construction). Identity on singleton classes.
pub fn in_class_rotation(eig: &EigenSystem, rng: &mut impl Rng) -> Matrix<f64> {
    let n = eig.n();
    let mut b = Matrix::<f64>::identity(n);
    for class in eig.classes() {
        for pair in class.iter().copied().combinations(2) {
            let (i, j) = (pair[0], pair[1]);
            let angle = rng.gen::<f64>() * std::f64::consts::TAU;
            let (s, c) = angle.sin_cos();
            // right-multiply b by the Givens rotation in the (i, j) plane
            for row in 0..n {
                let bi = b[(row, i)];
                let bj = b[(row, j)];
                b[(row, i)] = c * bi - s * bj;
                b[(row, j)] = s * bi + c * bj;
            }
        }
    }
    b
}

/// Report of [`basis_independence_check`].
#[derive(Clone, Debug)]
pub struct BasisIndependenceReport {
    /// True when the spectrum is simple and the test is vacuous.
    pub skipped: bool,
    pub trials: usize,
    pub max_atom_deviation: f64,
}

/// Rebuilds the measure under random in-class basis rotations and
/// reports the largest atom-weight deviation seen. The measure must not
/// depend on the choice of eigendecomposition.
pub fn basis_independence_check(
    a: &SymmetricMatrix,
    trials: usize,
    seed: u64,
) -> Result<BasisIndependenceReport> {
    let eig = eigendecompose(a)?;
    if eig.is_simple_spectrum() {
        return Ok(BasisIndependenceReport {
            skipped: true,
            trials: 0,
            max_atom_deviation: 0.0,
        });
    }
    let reference = build_measure(&eig)?;
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let rotation = in_class_rotation(&eig, &mut rng);
        let rotated = eig.with_rotated_basis(&rotation);
        let measure = build_measure(&rotated)?;
        worst = worst.max(reference.max_atom_deviation(&measure));
    }
    Ok(BasisIndependenceReport {
        skipped: false,
        trials,
        max_atom_deviation: worst,
    })
}

/// Deterministic per-trial RNG derived from `(seed, trial)`.
pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::linalg::rat_int;

    fn p2() -> SymmetricMatrix {
        WeightedGraph::path(2).adjacency().clone()
    }

    fn k3() -> SymmetricMatrix {
        WeightedGraph::complete(3).adjacency().clone()
    }

    #[test]
    fn marginals_of_test_graphs() {
        // P2: (A^k)_{11} alternates 1, 0, 1, 0, ...
        let check = marginal_check(&p2(), 0, 6).unwrap();
        assert!(check.measure_path_used);
        for row in &check.rows {
            let expect = if row.k % 2 == 0 { 1.0 } else { 0.0 };
            assert_eq!(row.matrix_power, expect);
        }
        assert!(check.max_abs_deviation < 1e-10);

        // K3 at vertex 1: sequence 1, 0, 2, 2, 6
        let check = marginal_check(&k3(), 0, 4).unwrap();
        let seq: Vec<f64> = check.rows.iter().map(|r| r.matrix_power).collect();
        assert_eq!(seq, vec![1.0, 0.0, 2.0, 2.0, 6.0]);
        assert!(check.max_abs_deviation < 1e-9);

        // diagonal: powers of the diagonal entry
        let d = SymmetricMatrix::from_rows(vec![vec![3.0, 0.0], vec![0.0, 5.0]]).unwrap();
        let check = marginal_check(&d, 1, 3).unwrap();
        let seq: Vec<f64> = check.rows.iter().map(|r| r.det_moment).collect();
        assert_eq!(seq, vec![1.0, 5.0, 25.0, 125.0]);
    }

    #[test]
    fn covariance_is_the_laplacian() {
        let cov = covariance_matrix(&p2());
        assert_eq!(cov[(0, 0)], 1.0);
        assert_eq!(cov[(0, 1)], -1.0);

        let cov = covariance_matrix_exact(&k3());
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { rat_int(2) } else { rat_int(-1) };
                assert_eq!(cov[(i, j)], expect);
            }
        }

        // deterministic measure: zero covariance
        let d = SymmetricMatrix::from_rows(vec![vec![3.0, 0.0], vec![0.0, 5.0]]).unwrap();
        let cov = covariance_matrix(&d);
        assert_eq!(cov.max_abs(), 0.0);
    }

    #[test]
    fn power_covariance_examples() {
        assert_eq!(power_covariance(&p2(), 0, 1, 1).unwrap(), -1.0);
        // K3, k = 2: -((A^2)_{12})^2 = -1
        assert_eq!(power_covariance_exact(&k3(), 0, 1, 2).unwrap(), rat_int(-1));
        // k = 0: X^0 is constant
        assert_eq!(power_covariance(&k3(), 0, 2, 0).unwrap(), 0.0);
        assert!(power_covariance(&k3(), 1, 1, 2).is_err());
    }

    #[test]
    fn cumulants_count_cycles() {
        // K3 on all three vertices: kappa = det(A_uu) corrections = 2
        assert_eq!(cumulant_exact(&k3(), &[0, 1, 2]).unwrap(), rat_int(2));
        // P2 edge: kappa = E(X1 X2) = -1
        assert_eq!(cumulant_exact(&p2(), &[0, 1]).unwrap(), rat_int(-1));
        // loopless singleton: zero
        assert_eq!(cumulant(&k3(), &[1]).unwrap(), 0.0);
    }

    #[test]
    fn analytic_minor_examples() {
        // f(x) = x on the full set reduces to det(A)
        let (lhs, rhs) = analytic_minor(&p2(), &[0, 1], &Polynomial::x());
        assert!((lhs + 1.0).abs() < 1e-12 && (rhs + 1.0).abs() < 1e-12);

        // f(x) = x^2, u = {0,1} on K3: det [[2,1],[1,2]] = 3
        let f = Polynomial::new(vec![0.0, 0.0, 1.0]);
        let (lhs, rhs) = analytic_minor_exact(&k3(), &[0, 1], &f);
        assert_eq!(lhs, rat_int(3));
        assert_eq!(rhs, rat_int(3));

        // f(x) = 1 + x, u = {0,1} on P2: det [[1,1],[1,1]] = 0
        let f = Polynomial::new(vec![1.0, 1.0]);
        let (lhs, rhs) = analytic_minor_exact(&p2(), &[0, 1], &f);
        assert_eq!(lhs, rat_int(0));
        assert_eq!(rhs, rat_int(0));
    }

    #[test]
    fn trace_identity_examples() {
        let x2 = Polynomial::new(vec![0.0, 0.0, 1.0]);
        let (lhs, rhs) = trace_identity(&p2(), &[0], &x2);
        assert_eq!((lhs, rhs), (1.0, 1.0));

        let (lhs, rhs) = trace_identity(&k3(), &[0, 1, 2], &Polynomial::x());
        assert_eq!((lhs, rhs), (0.0, 0.0));

        // tr(A^2) over all of K3 = 2 * #edges = 6
        let (lhs, rhs) = trace_identity_exact(&k3(), &[0, 1, 2], &x2);
        assert_eq!(lhs, rat_int(6));
        assert_eq!(rhs, rat_int(6));
    }

    #[test]
    fn charpoly_examples() {
        // degree-1 case: z - A_{11} = z
        let check = submatrix_charpoly(&p2(), &[0], &Polynomial::x());
        assert_eq!(check.moment_side, vec![0.0, 1.0]);
        assert_eq!(check.matrix_side, vec![0.0, 1.0]);

        // u = {0,1}, f = x on P2: z^2 - 1
        let check = submatrix_charpoly_exact(&p2(), &[0, 1], &Polynomial::x());
        assert_eq!(check.moment_side, vec![rat_int(-1), rat_int(0), rat_int(1)]);
        assert_eq!(check.matrix_side, check.moment_side);

        // u = {0,1}, f = x^2 on K3: char poly of [[2,1],[1,2]] = z^2 - 4z + 3
        let f = Polynomial::new(vec![0.0, 0.0, 1.0]);
        let check = submatrix_charpoly_exact(&k3(), &[0, 1], &f);
        assert_eq!(check.matrix_side, vec![rat_int(3), rat_int(-4), rat_int(1)]);
        assert_eq!(check.moment_side, check.matrix_side);
    }

    #[test]
    fn slater_probabilities() {
        let a = p2();
        let eig = eigendecompose(&a).unwrap();
        let (prob, slater_sq) = slater_probability(&eig, &[0], &[0]).unwrap();
        assert!((prob - 0.5).abs() < 1e-12);
        assert!((slater_sq - 0.5).abs() < 1e-12);

        // the full event is certain
        let (prob, slater_sq) = slater_probability(&eig, &[0, 1], &[0, 1]).unwrap();
        assert!((prob - 1.0).abs() < 1e-12);
        assert!((slater_sq - 1.0).abs() < 1e-12);

        // diagonal matrix, off-diagonal block: impossible event
        let d = SymmetricMatrix::from_rows(vec![vec![3.0, 0.0], vec![0.0, 5.0]]).unwrap();
        let eig = eigendecompose(&d).unwrap();
        let (prob, slater_sq) = slater_probability(&eig, &[0], &[1]).unwrap();
        assert_eq!(prob, 0.0);
        assert_eq!(slater_sq, 0.0);

        // repeated eigenvalues are refused
        let eig = eigendecompose(&k3()).unwrap();
        assert!(matches!(
            slater_probability(&eig, &[0], &[0]),
            Err(Error::RepeatedEigenvalues)
        ));
    }

    #[test]
    fn multivariate_marginal_examples() {
        let a = p2();
        let eig = eigendecompose(&a).unwrap();
        // s = (0,1), t = (0,1), sigma = id: p_11 p_22 det(P) = 1/2
        let (atom, closed) = multivariate_marginal(&eig, &[0, 1], &[0, 1], &[0, 1]).unwrap();
        assert!((atom - 0.5).abs() < 1e-12);
        assert!((closed - 0.5).abs() < 1e-12);

        // k = n: coincides with the mu-weight of lambda_sigma directly
        let (atom, closed) = multivariate_marginal(&eig, &[0, 1], &[0, 1], &[1, 0]).unwrap();
        assert!((atom - closed).abs() < 1e-12);

        let d = SymmetricMatrix::from_rows(vec![vec![3.0, 0.0], vec![0.0, 5.0]]).unwrap();
        let eig = eigendecompose(&d).unwrap();
        let (atom, closed) = multivariate_marginal(&eig, &[0], &[0], &[0]).unwrap();
        assert_eq!((atom, closed), (1.0, 1.0));
    }

    #[test]
    fn basis_independence_on_star() {
        // K_{1,3} has a two-dimensional null space
        let g = WeightedGraph::star(3);
        let report = basis_independence_check(g.adjacency(), 5, 42).unwrap();
        assert!(!report.skipped);
        assert!(
            report.max_atom_deviation < 1e-8,
            "deviation {}",
            report.max_atom_deviation
        );
    }

    #[test]
    fn basis_independence_skips_simple_spectra() {
        let g = WeightedGraph::path(3);
        let report = basis_independence_check(g.adjacency(), 5, 1).unwrap();
        assert!(report.skipped);
    }

    #[test]
    fn hadamard_lemma_exact() {
        // C with all-ones blocks {0,1} and {2,3}; B block diagonal on the
        // same support; M arbitrary: (MB).C = (M.C)B exactly.
        let c = Matrix::from_fn(4, 4, |i, j| {
            let blk = |x: usize| if x < 2 { 0 } else { 1 };
            rat_int((blk(i) == blk(j)) as i64)
        });
        let b = Matrix::from_rows(vec![
            vec![rat_int(2), rat_int(-1), rat_int(0), rat_int(0)],
            vec![rat_int(7), rat_int(3), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(5)],
            vec![rat_int(0), rat_int(0), rat_int(-2), rat_int(4)],
        ]);
        let m = Matrix::from_fn(4, 4, |i, j| rat_int((3 * i + 5 * j) as i64 % 7 - 3));
        assert!(hadamard_identity_holds(&m, &b, &c));
    }
}
