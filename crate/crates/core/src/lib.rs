//! Joint spectral measures of symmetric matrices, and the combinatorics
//! hiding behind them.
//!
//! Given a real symmetric matrix `A` (typically the weighted adjacency
//! matrix of a graph), this crate constructs the signed measure that
//! couples the spectral measures at all vertices, evaluates its
//! generalized moments through determinants of column-mixed powers of
//! `A`, runs the star-product central-limit experiment, and enumerates
//! hikes (heaps of simple cycles) and excursions to check the walk
//! generating-function identities against brute force.
//!
//! The crate is organised around four areas:
//!
//! * [`linalg`] — dense symmetric eigendecomposition (cyclic Jacobi),
//!   exact rational determinants, matrix powers, Schur complements.
//! * [`jsm`] — the joint spectral measure itself: atoms, generalized
//!   moments, covariance/Laplacian, cumulants, analytic-minor and
//!   Slater-determinant identities.
//! * [`starlimit`] — merged star products `G^(n)`, scaled moments and
//!   their limit law, Rademacher MGF identity.
//! * [`hikes`] — simple cycles, Cartier–Foata heaps, excursions, zeta
//!   and Möbius series, von Mangoldt functions, Boolean cumulants.
//!
//! Everything is desk-scale by design: matrices stay small (a few tens
//! of rows), measures are built by explicit permutation sums, and every
//! closed formula ships with an independent enumeration oracle in
//! [`verify`].
//!
//! Vertices are indexed from 0 throughout the library; the command-line
//! front end translates from 1-based file formats.

pub mod combinatorics;
pub mod error;
pub mod graph;
pub mod hikes;
pub mod jsm;
pub mod linalg;
pub mod series;
pub mod starlimit;
pub mod verify;

pub use error::{Error, Result};
