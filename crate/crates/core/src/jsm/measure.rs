//! Construction of the joint spectral measure and its generalized
//! moments.
//!
//! For an eigendecomposition `A = P diag(lambda) P^T` with `det(P) = 1`,
//! the measure puts weight `sum_{tau: lambda_tau = lambda_sigma}
//! eps(tau) prod_j p_{j,tau(j)}` on the permuted eigenvalue vector
//! `lambda_sigma`. Its generalized moments have the closed form
//! `m[k_1..k_N] = det(A[k_1..k_N])`, the determinant of the column-mixed
//! matrix; the measure-side integral is kept as a genuinely separate
//! code path so the two can be played against each other.

use std::collections::BTreeMap;

use crate::combinatorics::for_each_permutation;
use crate::error::{Error, Result};
use crate::linalg::{column_mix, rat, EigenSystem, Matrix, Rat, Scalar, SymmetricMatrix};

/// Hard cap for the permutation sum in [`build_measure`]: `9! = 362880`.
pub const MEASURE_DIMENSION_CAP: usize = 9;

/// Atoms with absolute weight at or below this threshold are dropped;
/// well below every tolerance used by the identity checks.
const ATOM_WEIGHT_FLOOR: f64 = 1e-13;

/// Vector of exponents `(k_1, ..., k_N)` for a generalized moment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiIndex {
    k: Vec<usize>,
}

impl MultiIndex {
    pub fn new(k: Vec<usize>) -> Self {
        MultiIndex { k }
    }

    /// The zero multi-index (all exponents zero).
    pub fn zeros(n: usize) -> Self {
        MultiIndex { k: vec![0; n] }
    }

    /// `k` at position `i`, zero elsewhere.
    pub fn single(n: usize, i: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = k;
        MultiIndex { k: v }
    }

    /// Exponents placed on a subset of positions, zero elsewhere.
    pub fn on_subset(n: usize, positions: &[usize], exps: &[usize]) -> Self {
        assert_eq!(positions.len(), exps.len());
        let mut v = vec![0; n];
        for (&p, &e) in positions.iter().zip(exps) {
            v[p] = e;
        }
        MultiIndex { k: v }
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn components(&self) -> &[usize] {
        &self.k
    }

    /// Total degree `|k| = sum_i k_i`.
    pub fn total(&self) -> usize {
        self.k.iter().sum()
    }
}

/// One atom of the signed measure: a permuted eigenvalue vector with its
/// (possibly negative) weight. `classes[i]` is the eigenvalue-class id of
/// coordinate `i`; atoms are identified by this tuple, not by raw floats.
#[derive(Clone, Debug)]
pub struct Atom {
    pub point: Vec<f64>,
    pub classes: Vec<usize>,
    pub weight: f64,
}

/// The joint spectral measure: finitely many atoms with weights summing
/// to one. Atoms are sorted by their class tuple, so iteration order is
/// deterministic.
#[derive(Clone, Debug)]
pub struct SignedMeasure {
    atoms: Vec<Atom>,
}

impl SignedMeasure {
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Weight carried by a class tuple (zero when absent).
    pub fn weight_of_classes(&self, classes: &[usize]) -> f64 {
        self.atoms
            .iter()
            .find(|a| a.classes == classes)
            .map_or(0.0, |a| a.weight)
    }

    /// Largest absolute weight difference against another measure over
    /// the union of their supports.
    pub fn max_atom_deviation(&self, other: &SignedMeasure) -> f64 {
        let mut keys: Vec<&[usize]> = self
            .atoms
            .iter()
            .chain(other.atoms.iter())
            .map(|a| a.classes.as_slice())
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| (self.weight_of_classes(k) - other.weight_of_classes(k)).abs())
            .fold(0.0, f64::max)
    }
}

/// Builds the joint spectral measure by the explicit sum over `S_N`,
/// grouping permutations through the eigenvalue classes of `eig`.
pub fn build_measure(eig: &EigenSystem) -> Result<SignedMeasure> {
    build_measure_with_cap(eig, MEASURE_DIMENSION_CAP)
}

pub fn build_measure_with_cap(eig: &EigenSystem, cap: usize) -> Result<SignedMeasure> {
    let n = eig.n();
    if n > cap {
        return Err(Error::MeasureDimensionCap { n, cap });
    }
    let p = eig.basis();
    let mut weights: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for_each_permutation(n, |perm, sign| {
        let mut w = sign as f64;
        for (j, &target) in perm.iter().enumerate() {
            if w == 0.0 {
                break;
            }
            w *= p[(j, target)];
        }
        if w == 0.0 {
            return;
        }
        let key: Vec<usize> = perm.iter().map(|&t| eig.class_of(t)).collect();
        *weights.entry(key).or_insert(0.0) += w;
    });

    let atoms = weights
        .into_iter()
        .filter(|(_, w)| w.abs() > ATOM_WEIGHT_FLOOR)
        .map(|(classes, weight)| Atom {
            point: classes.iter().map(|&c| eig.class_value(c)).collect(),
            classes,
            weight,
        })
        .collect();
    Ok(SignedMeasure { atoms })
}

/// The definitional integral `sum_atoms w * prod_i x_i^{k_i}`. This is
/// the measure-side oracle: it never touches the determinant formula.
pub fn moment_oracle(measure: &SignedMeasure, k: &MultiIndex) -> f64 {
    measure
        .atoms
        .iter()
        .map(|atom| {
            let mut term = atom.weight;
            for (x, &e) in atom.point.iter().zip(k.components()) {
                term *= x.powi(e as i32);
            }
            term
        })
        .sum()
}

/// Generalized moment `m[k] = det(A[k_1..k_N])` in floating point. For
/// integer matrices the exact value is an integer; use
/// [`generalized_moment_exact`] when exactness matters.
pub fn generalized_moment(a: &SymmetricMatrix, k: &MultiIndex) -> f64 {
    assert_eq!(a.n(), k.len(), "one exponent per vertex");
    column_mix(a.matrix(), k.components()).det_lu()
}

/// Generalized moment through exact rational arithmetic (fraction-free
/// elimination on the column-mixed matrix).
pub fn generalized_moment_exact(a: &SymmetricMatrix, k: &MultiIndex) -> Rat {
    assert_eq!(a.n(), k.len(), "one exponent per vertex");
    column_mix(&a.to_rational(), k.components()).det_bareiss()
}

/// Polynomial `f(x) = sum_k gamma_k x^k` used as the analytic transform
/// in the minor and trace identities. Truncations keep every identity
/// exact, so no radius-of-convergence bookkeeping is needed.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        Polynomial { coeffs }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Polynomial::new(vec![0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `f(A) = sum_k gamma_k A^k`.
    pub fn apply<T: Scalar>(&self, a: &Matrix<T>, lift: impl Fn(f64) -> T) -> Matrix<T> {
        let n = a.rows();
        let mut out = Matrix::<T>::zeros(n, n);
        let mut power = Matrix::<T>::identity(n);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.matmul(a);
            }
            if c != 0.0 {
                out = out.add(&power.scale(&lift(c)));
            }
        }
        out
    }

    pub fn apply_f64(&self, a: &Matrix<f64>) -> Matrix<f64> {
        self.apply(a, |c| c)
    }

    pub fn apply_exact(&self, a: &Matrix<Rat>) -> Matrix<Rat> {
        self.apply(a, rat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::linalg::{eigendecompose, rat_int};

    fn measure_of(a: &SymmetricMatrix) -> SignedMeasure {
        build_measure(&eigendecompose(a).unwrap()).unwrap()
    }

    #[test]
    fn single_edge_measure() {
        // hand eigendecomposition: atoms (-1,1) and (1,-1), weight 1/2 each
        let a = WeightedGraph::path(2).adjacency().clone();
        let m = measure_of(&a);
        assert_eq!(m.len(), 2);
        for atom in m.atoms() {
            assert!((atom.weight - 0.5).abs() < 1e-12);
        }
        let points: Vec<Vec<i64>> = m
            .atoms()
            .iter()
            .map(|a| a.point.iter().map(|x| x.round() as i64).collect())
            .collect();
        assert!(points.contains(&vec![-1, 1]));
        assert!(points.contains(&vec![1, -1]));
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_matrix_is_deterministic() {
        // identity basis kills every non-identity permutation
        let a = SymmetricMatrix::from_rows(vec![vec![3.0, 0.0], vec![0.0, 5.0]]).unwrap();
        let m = measure_of(&a);
        assert_eq!(m.len(), 1);
        assert_eq!(m.atoms()[0].point, vec![3.0, 5.0]);
        assert!((m.atoms()[0].weight - 1.0).abs() < 1e-14);
        // single atom 3^2 * 5 = 45
        let k = MultiIndex::new(vec![2, 1]);
        assert!((moment_oracle(&m, &k) - 45.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_measure_mass_and_marginals() {
        let a = WeightedGraph::complete(3).adjacency().clone();
        let m = measure_of(&a);
        assert!((m.total_mass() - 1.0).abs() < 1e-10);
        for i in 0..3 {
            for k in 0..=4usize {
                let mi = MultiIndex::single(3, i, k);
                let lhs = moment_oracle(&m, &mi);
                let rhs = a.matrix().pow(k)[(i, i)];
                assert!((lhs - rhs).abs() < 1e-9, "k={k} i={i}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn moment_oracle_on_p2() {
        let a = WeightedGraph::path(2).adjacency().clone();
        let m = measure_of(&a);
        assert!(moment_oracle(&m, &MultiIndex::new(vec![1, 0])).abs() < 1e-14);
        assert!((moment_oracle(&m, &MultiIndex::new(vec![1, 1])) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn generalized_moment_examples() {
        let a = WeightedGraph::path(2).adjacency().clone();
        // k = 0 vector: det I = 1
        assert_eq!(
            generalized_moment_exact(&a, &MultiIndex::zeros(2)),
            rat_int(1)
        );
        // (2,0): column mix is the identity
        assert_eq!(
            generalized_moment_exact(&a, &MultiIndex::new(vec![2, 0])),
            rat_int(1)
        );
        // (1,1): det A = -1, which also equals (A^2)_{11} ... = -1 via float
        assert_eq!(
            generalized_moment_exact(&a, &MultiIndex::new(vec![1, 1])),
            rat_int(-1)
        );
        assert!((generalized_moment(&a, &MultiIndex::new(vec![1, 1])) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cap_is_enforced() {
        let a = SymmetricMatrix::from_fn(10, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap();
        let eig = eigendecompose(&a).unwrap();
        let err = build_measure(&eig).unwrap_err();
        assert!(matches!(err, Error::MeasureDimensionCap { n: 10, cap: 9 }));
    }

    #[test]
    fn polynomial_eval_and_apply() {
        let f = Polynomial::new(vec![1.0, 0.0, 2.0]); // 1 + 2x^2
        assert_eq!(f.eval(3.0), 19.0);
        let a = WeightedGraph::path(2).adjacency().clone();
        let fa = f.apply_f64(a.matrix());
        // A^2 = I, so f(A) = 3I
        assert_eq!(fa[(0, 0)], 3.0);
        assert_eq!(fa[(0, 1)], 0.0);
    }
}
