//! Cyclic Jacobi eigendecomposition for small symmetric matrices.
//!
//! Accuracy matters more than speed here: the measure construction
//! multiplies up to `n!` products of eigenvector entries, so the basis
//! must be orthogonal to near machine precision. Jacobi delivers that
//! for the dimensions this crate works at (a few tens).

use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, SymmetricMatrix};

/// Default sweep budget for the cyclic Jacobi iteration.
pub const DEFAULT_SWEEP_BUDGET: usize = 100;

/// Relative tolerance for grouping eigenvalues into equality classes.
pub const EIGENVALUE_CLASS_TOL: f64 = 1e-8;

/// Eigendecomposition `A = P diag(lambda) P^T` with `det(P) = +1`,
/// eigenvalues sorted ascending and grouped into equality classes.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    basis: Matrix<f64>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl EigenSystem {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthogonal basis matrix; column `k` is the eigenvector of
    /// `eigenvalues()[k]`.
    pub fn basis(&self) -> &Matrix<f64> {
        &self.basis
    }

    /// Equality classes of eigen-indices (runs of equal eigenvalues).
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Class id of eigen-index `k`.
    pub fn class_of(&self, k: usize) -> usize {
        self.class_of[k]
    }

    /// Canonical eigenvalue coordinate of a class (the class mean).
    pub fn class_value(&self, class: usize) -> f64 {
        let members = &self.classes[class];
        members.iter().map(|&k| self.eigenvalues[k]).sum::<f64>() / members.len() as f64
    }

    pub fn is_simple_spectrum(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Replaces the basis by `P * b`. The caller is responsible for `b`
    /// being orthogonal with determinant one and commuting with the
    /// eigenvalue structure (block-diagonal inside classes).
    pub fn with_rotated_basis(&self, b: &Matrix<f64>) -> EigenSystem {
        EigenSystem {
            eigenvalues: self.eigenvalues.clone(),
            basis: self.basis.matmul(b),
            classes: self.classes.clone(),
            class_of: self.class_of.clone(),
        }
    }
}

/// Eigendecomposition with the default sweep budget.
pub fn eigendecompose(a: &SymmetricMatrix) -> Result<EigenSystem> {
    eigendecompose_with_budget(a, DEFAULT_SWEEP_BUDGET)
}

/// Cyclic Jacobi with an explicit sweep budget; exceeding the budget
/// signals pathological input.
pub fn eigendecompose_with_budget(a: &SymmetricMatrix, sweeps: usize) -> Result<EigenSystem> {
    let n = a.n();
    let fro = a.frobenius_norm();
    let mut work = a.matrix().clone();
    let mut basis = Matrix::<f64>::identity(n);

    let off_norm = |m: &Matrix<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += m[(i, j)] * m[(i, j)];
            }
        }
        s.sqrt()
    };

    let threshold = 1e-15 * fro.max(1.0);
    let mut converged = n < 2;
    for _ in 0..sweeps {
        if off_norm(&work) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = work[(p, q)];
                if apq.abs() <= threshold * 1e-2 {
                    continue;
                }
                let theta = (work[(q, q)] - work[(p, p)]) / (2.0 * apq);
                let t = {
                    let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // rotate rows/columns p and q of the working matrix
                for k in 0..n {
                    let akp = work[(k, p)];
                    let akq = work[(k, q)];
                    work[(k, p)] = c * akp - s * akq;
                    work[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = work[(p, k)];
                    let aqk = work[(q, k)];
                    work[(p, k)] = c * apk - s * aqk;
                    work[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let bkp = basis[(k, p)];
                    let bkq = basis[(k, q)];
                    basis[(k, p)] = c * bkp - s * bkq;
                    basis[(k, q)] = s * bkp + c * bkq;
                }
            }
        }
    }
    if !converged && off_norm(&work) > threshold {
        return Err(Error::EigenNoConvergence { sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].total_cmp(&work[(j, j)]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| work[(i, i)]).collect();
    let mut sorted_basis = Matrix::<f64>::from_fn(n, n, |i, j| basis[(i, order[j])]);

    // force det(P) = +1 by negating the first eigenvector if necessary
    if sorted_basis.det_lu() < 0.0 {
        for i in 0..n {
            sorted_basis[(i, 0)] = -sorted_basis[(i, 0)];
        }
    }

    let tol = EIGENVALUE_CLASS_TOL * fro.max(1.0);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0usize; n];
    for k in 0..n {
        let start_new = match classes.last().and_then(|c| c.last()) {
            Some(&prev) => eigenvalues[k] - eigenvalues[prev] > tol,
            None => true,
        };
        if start_new {
            classes.push(vec![k]);
        } else {
            classes.last_mut().unwrap().push(k);
        }
        class_of[k] = classes.len() - 1;
    }

    Ok(EigenSystem {
        eigenvalues,
        basis: sorted_basis,
        classes,
        class_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    fn reconstruct_error(a: &SymmetricMatrix, eig: &EigenSystem) -> f64 {
        let n = a.n();
        let lambda =
            Matrix::<f64>::from_fn(n, n, |i, j| if i == j { eig.eigenvalues()[i] } else { 0.0 });
        let re = eig.basis().matmul(&lambda).matmul(&eig.basis().transpose());
        re.sub(a.matrix()).frobenius_norm()
    }

    #[test]
    fn identity_matrix() {
        let a = SymmetricMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let eig = eigendecompose(&a).unwrap();
        assert_eq!(eig.eigenvalues(), &[1.0, 1.0]);
        assert_eq!(eig.basis(), &Matrix::<f64>::identity(2));
        assert_eq!(eig.classes().len(), 1);
        assert_eq!(eig.classes()[0], vec![0, 1]);
    }

    #[test]
    fn single_edge() {
        // characteristic polynomial x^2 - 1 by hand: eigenvalues -1, 1
        let a = WeightedGraph::path(2).adjacency().clone();
        let eig = eigendecompose(&a).unwrap();
        assert!((eig.eigenvalues()[0] + 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues()[1] - 1.0).abs() < 1e-12);
        // columns are (1,-1)/sqrt2 and (1,1)/sqrt2 up to sign flips with det +1
        assert!(eig.basis().det_lu() > 0.0);
        let s = 1.0 / 2.0f64.sqrt();
        for col in 0..2 {
            let c0 = eig.basis()[(0, col)].abs();
            let c1 = eig.basis()[(1, col)].abs();
            assert!((c0 - s).abs() < 1e-12 && (c1 - s).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_classes() {
        // det(I - zA) = (1-2z)(1+z)^2: eigenvalues -1, -1, 2
        let a = WeightedGraph::complete(3).adjacency().clone();
        let eig = eigendecompose(&a).unwrap();
        assert!((eig.eigenvalues()[0] + 1.0).abs() < 1e-10);
        assert!((eig.eigenvalues()[1] + 1.0).abs() < 1e-10);
        assert!((eig.eigenvalues()[2] - 2.0).abs() < 1e-10);
        assert_eq!(eig.classes(), &[vec![0, 1], vec![2]]);
        assert!(!eig.is_simple_spectrum());
    }

    #[test]
    fn orthogonality_and_reconstruction() {
        let g = WeightedGraph::complete(5);
        let a = g.adjacency();
        let eig = eigendecompose(a).unwrap();
        let gram = eig.basis().transpose().matmul(eig.basis());
        let dev = gram.sub(&Matrix::<f64>::identity(5)).max_abs();
        assert!(dev < 1e-10, "orthogonality deviation {dev}");
        assert!((eig.basis().det_lu() - 1.0).abs() < 1e-10);
        assert!(reconstruct_error(a, &eig) < 1e-9 * a.frobenius_norm().max(1.0));
    }
}
