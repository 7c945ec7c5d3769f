//! Generic dense matrices over an exact or floating scalar.
//!
//! The same code paths serve `f64` (fast, approximate) and
//! [`Rat`] = `num::BigRational` (slow, exact). Every floating-point
//! number is a dyadic rational, so lifting an `f64` matrix to the exact
//! side via [`rat`] is lossless; the determinant identities checked by
//! this crate can therefore always be replayed in exact arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num::traits::ToPrimitive;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar with arbitrary-precision integer parts.
pub type Rat = BigRational;

/// Scalar ring the matrix and series code is generic over.
///
/// `f64` and [`Rat`] implement it. Division is used only where it is
/// exact for rationals (Bareiss elimination, series inversion).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_i64(value: i64) -> Self;
}

impl Scalar for f64 {
    fn from_i64(value: i64) -> Self {
        value as f64
    }
}

impl Scalar for Rat {
    fn from_i64(value: i64) -> Self {
        Rat::from_integer(BigInt::from(value))
    }
}

/// Exact rational image of a finite `f64` (always exists and is lossless).
pub fn rat(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float expected")
}

/// Rational from an integer.
pub fn rat_int(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

/// Nearest `f64` to an exact rational (NaN when out of range).
pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Square matrix of exact rationals, used for oracle arithmetic.
pub type RationalMatrix = Matrix<Rat>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let delta = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + delta;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, factor: &T) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() * factor.clone()
        })
    }

    pub fn neg(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    /// `self^k` by repeated squaring, with the convention `A^0 = I`.
    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Matrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])].clone()
        })
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |i, j| f(&self[(i, j)]))
    }

    /// Fraction-free (Bareiss) determinant. Exact over rationals; every
    /// division in the elimination is exact.
    pub fn det_bareiss(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                // pivot search below row k
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(k, k)].clone() * a[(i, j)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num / prev.clone();
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Determinant by the Leibniz permutation sum. Exponential; kept as a
    /// transparent reference implementation for the verification suites.
    pub fn det_leibniz(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut total = T::zero();
        crate::combinatorics::for_each_permutation(n, |perm, sign| {
            let mut term = T::from_i64(sign);
            for (i, &j) in perm.iter().enumerate() {
                if term.is_zero() {
                    break;
                }
                term = term * self[(i, j)].clone();
            }
            total = total.clone() + term;
        });
        total
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Matrix<f64> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// LU determinant with partial pivoting.
    pub fn det_lu(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1.0;
        for k in 0..n {
            let pivot_row = (k..n)
                .max_by(|&r, &s| a[(r, k)].abs().total_cmp(&a[(s, k)].abs()))
                .unwrap();
            if a[(pivot_row, k)] == 0.0 {
                return 0.0;
            }
            if pivot_row != k {
                a.swap_rows(k, pivot_row);
                det = -det;
            }
            det *= a[(k, k)];
            for i in k + 1..n {
                let factor = a[(i, k)] / a[(k, k)];
                for j in k..n {
                    let delta = factor * a[(k, j)];
                    a[(i, j)] -= delta;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse with partial pivoting; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<f64>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<f64>::identity(n);
        let scale = self.max_abs().max(1.0);
        for k in 0..n {
            let pivot_row = (k..n)
                .max_by(|&r, &s| a[(r, k)].abs().total_cmp(&a[(s, k)].abs()))
                .unwrap();
            if a[(pivot_row, k)].abs() <= 1e-13 * scale {
                return None;
            }
            a.swap_rows(k, pivot_row);
            inv.swap_rows(k, pivot_row);
            let pivot = a[(k, k)];
            for j in 0..n {
                a[(k, j)] /= pivot;
                inv[(k, j)] /= pivot;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a[(i, k)];
                if factor == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let da = factor * a[(k, j)];
                    let di = factor * inv[(k, j)];
                    a[(i, j)] -= da;
                    inv[(i, j)] -= di;
                }
            }
        }
        Some(inv)
    }
}

impl Matrix<Rat> {
    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64().expect("rational out of f64 range"))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Real symmetric matrix; symmetry is enforced at construction and never
/// re-checked afterwards.
#[derive(Clone, PartialEq, Debug)]
pub struct SymmetricMatrix {
    mat: Matrix<f64>,
}

impl SymmetricMatrix {
    /// Wraps a square matrix, requiring exact (bitwise) symmetry.
    pub fn from_matrix(mat: Matrix<f64>) -> Result<Self> {
        if mat.rows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        if !mat.is_square() {
            return Err(Error::argument(format!(
                "symmetric matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        for i in 0..mat.rows() {
            for j in 0..i {
                if mat[(i, j)] != mat[(j, i)] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        if mat.data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(SymmetricMatrix { mat })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_matrix(Matrix::from_rows(rows))
    }

    /// Builds from the upper triangle: `f` is evaluated once per `i <= j`
    /// and mirrored, so the result is symmetric by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut mat = Matrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                mat[(i, j)] = v;
                mat[(j, i)] = v;
            }
        }
        Self::from_matrix(mat)
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mat[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix<f64> {
        &self.mat
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.mat.map(|&x| rat(x))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// True when every entry is an integer-valued float.
    pub fn has_integer_entries(&self) -> bool {
        self.mat.data.iter().all(|x| x.fract() == 0.0)
    }

    pub fn is_zero_diagonal(&self) -> bool {
        (0..self.n()).all(|i| self.get(i, i) == 0.0)
    }

    /// Principal submatrix on `idx` (stays symmetric).
    pub fn induced(&self, idx: &[usize]) -> SymmetricMatrix {
        SymmetricMatrix {
            mat: self.mat.submatrix(idx, idx),
        }
    }
}

impl Index<(usize, usize)> for SymmetricMatrix {
    type Output = f64;
    fn index(&self, ij: (usize, usize)) -> &f64 {
        &self.mat[ij]
    }
}

/// Checks that `u` is a strictly increasing, in-range, nonempty vertex
/// subset; `proper` additionally forbids the full vertex set.
pub fn validate_subset(n: usize, u: &[usize], proper: bool) -> Result<()> {
    if u.is_empty() {
        return Err(Error::subset("subset is empty"));
    }
    if u.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::subset("subset must be strictly increasing"));
    }
    if *u.last().unwrap() >= n {
        return Err(Error::subset(format!(
            "vertex {} out of range for n = {}",
            u.last().unwrap(),
            n
        )));
    }
    if proper && u.len() == n {
        return Err(Error::subset("subset must be proper"));
    }
    Ok(())
}

/// Complement of `u` in `0..n`, ascending.
pub fn complement(n: usize, u: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !u.contains(v)).collect()
}

/// The column-mixed matrix `A[k_1,...,k_n]`: column `i` equals column `i`
/// of `A^{k_i}` (with `A^0 = I`). Powers are computed once per distinct
/// exponent.
pub fn column_mix<T: Scalar>(a: &Matrix<T>, exponents: &[usize]) -> Matrix<T> {
    assert!(a.is_square());
    assert_eq!(a.rows(), exponents.len(), "one exponent per column");
    let n = a.rows();
    let mut powers: HashMap<usize, Matrix<T>> = HashMap::new();
    let mut out = Matrix::<T>::zeros(n, n);
    for (col, &k) in exponents.iter().enumerate() {
        let p = powers.entry(k).or_insert_with(|| a.pow(k));
        for row in 0..n {
            out[(row, col)] = p[(row, col)].clone();
        }
    }
    out
}

/// The `(u,u)` block of the resolvent `(I - zA)^{-1}`, computed through
/// the Schur complement:
/// `(I - z A_uu - z^2 A_{u,ub} (I - z A_{ub,ub})^{-1} A_{ub,u})^{-1}`.
pub fn schur_block(a: &SymmetricMatrix, u: &[usize], z: f64) -> Result<Matrix<f64>> {
    let n = a.n();
    validate_subset(n, u, true)?;
    let ubar = complement(n, u);
    let m = a.matrix();
    let a_uu = m.submatrix(u, u);
    let a_uv = m.submatrix(u, &ubar);
    let a_vu = m.submatrix(&ubar, u);
    let a_vv = m.submatrix(&ubar, &ubar);

    let inner = Matrix::<f64>::identity(ubar.len()).sub(&a_vv.scale(&z));
    let inner_inv = inner
        .inverse()
        .ok_or(Error::Singular { context: "inner" })?;

    let sandwich = a_uv.matmul(&inner_inv).matmul(&a_vu);
    let core = Matrix::<f64>::identity(u.len())
        .sub(&a_uu.scale(&z))
        .sub(&sandwich.scale(&(z * z)));
    core.inverse().ok_or(Error::Singular { context: "outer" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    fn p2() -> SymmetricMatrix {
        WeightedGraph::path(2).adjacency().clone()
    }

    fn k3() -> SymmetricMatrix {
        WeightedGraph::complete(3).adjacency().clone()
    }

    #[test]
    fn identity_determinants() {
        let id = Matrix::<Rat>::identity(3);
        assert_eq!(id.det_bareiss(), rat_int(1));
        assert_eq!(id.det_leibniz(), rat_int(1));
    }

    #[test]
    fn exact_determinant_of_test_graphs() {
        // cofactor expansion by hand: det(K3 adjacency) = 2, det(P2) = -1
        assert_eq!(k3().to_rational().det_bareiss(), rat_int(2));
        assert_eq!(p2().to_rational().det_bareiss(), rat_int(-1));
        assert_eq!(k3().to_rational().det_leibniz(), rat_int(2));
    }

    #[test]
    fn matrix_power_conventions() {
        let a = p2();
        assert_eq!(a.matrix().pow(0), Matrix::<f64>::identity(2));
        assert_eq!(a.matrix().pow(2), Matrix::<f64>::identity(2));
        let k3_sq = k3().matrix().pow(2);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 2.0 } else { 1.0 };
                assert_eq!(k3_sq[(i, j)], expect);
            }
        }
    }

    #[test]
    fn column_mix_cases() {
        let a = p2();
        // all-zero exponents mix to the identity
        assert_eq!(column_mix(a.matrix(), &[0, 0]), Matrix::<f64>::identity(2));
        // (2,0): column 1 of A^2 = e_1, column 2 of I = e_2
        assert_eq!(column_mix(a.matrix(), &[2, 0]), Matrix::<f64>::identity(2));
        // (1,1) is A itself
        assert_eq!(column_mix(a.matrix(), &[1, 1]), a.matrix().clone());
    }

    #[test]
    fn schur_block_matches_direct_inverse() {
        // resolvent at z = 0 is the identity
        let b = schur_block(&p2(), &[0], 0.0).unwrap();
        assert!((b[(0, 0)] - 1.0).abs() < 1e-14);

        // P2 at z = 1/2: entry (1/(1 - 1/4)) = 4/3
        let b = schur_block(&p2(), &[0], 0.5).unwrap();
        assert!((b[(0, 0)] - 4.0 / 3.0).abs() < 1e-12);

        // K3 at z = 1/4 against the directly inverted full resolvent
        let a = k3();
        let full = Matrix::<f64>::identity(3)
            .sub(&a.matrix().scale(&0.25))
            .inverse()
            .unwrap();
        let b = schur_block(&a, &[0], 0.25).unwrap();
        assert!((b[(0, 0)] - full[(0, 0)]).abs() < 1e-12);
    }

    #[test]
    fn singular_inner_matrix_is_reported() {
        // z = 1 makes I - z*A_{ub,ub} singular for a self-loop of weight 1
        let a = SymmetricMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let err = schur_block(&a, &[0], 1.0).unwrap_err();
        assert!(matches!(err, Error::Singular { context: "inner" }));
    }

    #[test]
    fn symmetry_is_enforced() {
        let err = SymmetricMatrix::from_rows(vec![vec![0.0, 1.0], vec![0.5, 0.0]]);
        assert!(matches!(err, Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn bareiss_agrees_with_lu_on_floats() {
        let m = Matrix::from_rows(vec![
            vec![2.0, -1.0, 0.0],
            vec![3.0, 5.0, 1.0],
            vec![0.0, 2.0, -2.0],
        ]);
        assert!((m.det_lu() - m.det_bareiss()).abs() < 1e-10);
        assert!((m.det_lu() - m.det_leibniz()).abs() < 1e-10);
    }
}
