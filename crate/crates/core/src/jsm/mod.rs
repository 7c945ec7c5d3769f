//! The joint spectral measure: a signed measure on permuted eigenvalue
//! vectors whose generalized moments are determinants of column-mixed
//! matrix powers, together with the identity suite built on top of it
//! (marginals, covariance, cumulants, analytic minors, Slater
//! probabilities, basis independence).

mod identities;
mod measure;

pub use identities::{
    analytic_minor, analytic_minor_exact, basis_independence_check, covariance_matrix,
    covariance_matrix_exact, cumulant, cumulant_exact, hadamard_identity_holds, in_class_rotation,
    marginal_check, multivariate_marginal, power_covariance, power_covariance_exact,
    slater_probability, submatrix_charpoly, submatrix_charpoly_exact, trace_identity,
    trace_identity_exact, BasisIndependenceReport, CharPolyCheck, MarginalCheck,
};
pub use measure::{
    build_measure, build_measure_with_cap, generalized_moment, generalized_moment_exact,
    moment_oracle, Atom, MultiIndex, Polynomial, SignedMeasure, MEASURE_DIMENSION_CAP,
};
