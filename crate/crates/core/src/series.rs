//! Truncated formal power series in one variable `z`, with scalar or
//! matrix coefficients. All arithmetic is closed at a fixed truncation
//! degree `L`; the variable grades path length everywhere in this crate.

use crate::linalg::{Matrix, Rat, Scalar};

/// Polynomial in `z` truncated at a fixed degree: coefficients `c_0..c_L`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Series<T> {
    /// The zero series truncated at degree `l`.
    pub fn zero(l: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); l + 1],
        }
    }

    pub fn one(l: usize) -> Self {
        Self::constant(T::one(), l)
    }

    pub fn constant(c: T, l: usize) -> Self {
        let mut s = Self::zero(l);
        s.coeffs[0] = c;
        s
    }

    /// From explicit coefficients, padded or truncated to degree `l`.
    pub fn from_coeffs(mut coeffs: Vec<T>, l: usize) -> Self {
        coeffs.resize(l + 1, T::zero());
        Series { coeffs }
    }

    /// Truncation degree `L`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set(&mut self, k: usize, value: T) {
        self.coeffs[k] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        }
    }

    /// Product truncated at the shared degree.
    pub fn mul(&self, other: &Self) -> Self {
        let l = self.check_same(other);
        let mut out = Self::zero(l);
        for i in 0..=l {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=l - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let delta = self.coeffs[i].clone() * other.coeffs[j].clone();
                out.coeffs[i + j] = out.coeffs[i + j].clone() + delta;
            }
        }
        out
    }

    /// Multiplication by `z^k` (coefficients shift up, tail drops off).
    pub fn shift(&self, k: usize) -> Self {
        let l = self.truncation();
        let mut out = Self::zero(l);
        if k > l {
            return out;
        }
        for i in 0..=l - k {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a unit (nonzero).
    pub fn inverse(&self) -> Self {
        let l = self.truncation();
        let c0 = &self.coeffs[0];
        assert!(
            !c0.is_zero(),
            "series inverse needs a nonzero constant term"
        );
        let mut out = Self::zero(l);
        out.coeffs[0] = T::one() / c0.clone();
        for k in 1..=l {
            let mut acc = T::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc + self.coeffs[j].clone() * out.coeffs[k - j].clone();
            }
            out.coeffs[k] = -(acc / c0.clone());
        }
        out
    }

    /// Formal logarithm; requires constant term exactly one. Computed
    /// from `(log f)' = f'/f` and termwise integration.
    pub fn log(&self) -> Self {
        let l = self.truncation();
        assert!(
            self.coeffs[0] == T::one(),
            "series log needs constant term one"
        );
        let inv = self.inverse();
        // f'(z); its top coefficient would only feed degree l+1 of the log
        let mut deriv = Self::zero(l);
        for k in 1..=l {
            deriv.coeffs[k - 1] = self.coeffs[k].clone() * T::from_i64(k as i64);
        }
        let prod = deriv.mul(&inv);
        let mut out = Self::zero(l);
        for k in 1..=l {
            out.coeffs[k] = prod.coeffs[k - 1].clone() / T::from_i64(k as i64);
        }
        out
    }

    /// Geometric series `sum_m ratio^m z^(m*step)` truncated at `l`.
    pub fn geometric(ratio: T, step: usize, l: usize) -> Self {
        assert!(step >= 1);
        let mut out = Self::zero(l);
        let mut power = T::one();
        let mut k = 0;
        while k <= l {
            out.coeffs[k] = power.clone();
            power = power * ratio.clone();
            k += step;
        }
        out
    }

    /// Sum of all kept coefficients (the truncation evaluated at `z = 1`).
    pub fn sum_coeffs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Series<U> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, mut f: impl FnMut(&T, &T) -> T) -> Self {
        let l = self.check_same(other);
        let mut out = Self::zero(l);
        for k in 0..=l {
            out.coeffs[k] = f(&self.coeffs[k], &other.coeffs[k]);
        }
        out
    }

    fn check_same(&self, other: &Self) -> usize {
        assert_eq!(
            self.truncation(),
            other.truncation(),
            "series truncation degrees differ"
        );
        self.truncation()
    }
}

impl Series<Rat> {
    pub fn to_f64(&self) -> Series<f64> {
        self.map(|c| num::ToPrimitive::to_f64(c).expect("rational out of f64 range"))
    }
}

/// Square-matrix-valued truncated series: `sum_k C_k z^k` with `C_k` of a
/// fixed dimension.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixSeries<T> {
    dim: usize,
    coeffs: Vec<Matrix<T>>,
}

impl<T: Scalar> MatrixSeries<T> {
    pub fn zero(dim: usize, l: usize) -> Self {
        MatrixSeries {
            dim,
            coeffs: vec![Matrix::zeros(dim, dim); l + 1],
        }
    }

    pub fn identity(dim: usize, l: usize) -> Self {
        let mut s = Self::zero(dim, l);
        s.coeffs[0] = Matrix::identity(dim);
        s
    }

    /// Constant-in-`z` series from a single matrix.
    pub fn constant(m: Matrix<T>, l: usize) -> Self {
        assert!(m.is_square());
        let dim = m.rows();
        let mut s = Self::zero(dim, l);
        s.coeffs[0] = m;
        s
    }

    /// Neumann series `sum_k (zA)^k = (I - zA)^{-1}` truncated at `l`.
    pub fn resolvent(a: &Matrix<T>, l: usize) -> Self {
        assert!(a.is_square());
        let dim = a.rows();
        let mut coeffs = Vec::with_capacity(l + 1);
        let mut power = Matrix::<T>::identity(dim);
        for k in 0..=l {
            if k > 0 {
                power = power.matmul(a);
            }
            coeffs.push(power.clone());
        }
        MatrixSeries { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Matrix<T> {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, m: Matrix<T>) {
        assert_eq!(m.rows(), self.dim);
        self.coeffs[k] = m;
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.check_same(other);
        let coeffs = (0..=l)
            .map(|k| self.coeffs[k].add(&other.coeffs[k]))
            .collect();
        MatrixSeries {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let l = self.check_same(other);
        let coeffs = (0..=l)
            .map(|k| self.coeffs[k].sub(&other.coeffs[k]))
            .collect();
        MatrixSeries {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.check_same(other);
        let mut out = Self::zero(self.dim, l);
        for i in 0..=l {
            for j in 0..=l - i {
                let delta = self.coeffs[i].matmul(&other.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&delta);
            }
        }
        out
    }

    pub fn scale(&self, factor: &T) -> Self {
        MatrixSeries {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        let l = self.truncation();
        let mut out = Self::zero(self.dim, l);
        if k > l {
            return out;
        }
        for i in 0..=l - k {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Inverse of a series whose constant coefficient is the identity
    /// (the only case needed here: `I - E(z)` with `E(0) = 0`).
    pub fn inverse(&self) -> Self {
        let l = self.truncation();
        assert_eq!(
            self.coeffs[0],
            Matrix::identity(self.dim),
            "matrix series inverse needs identity constant term"
        );
        let mut out = Self::identity(self.dim, l);
        for k in 1..=l {
            let mut acc = Matrix::<T>::zeros(self.dim, self.dim);
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].matmul(&out.coeffs[k - j]));
            }
            out.coeffs[k] = acc.neg();
        }
        out
    }

    pub fn trace(&self) -> Series<T> {
        Series::from_coeffs(
            self.coeffs.iter().map(Matrix::trace).collect(),
            self.truncation(),
        )
    }

    pub fn entry(&self, i: usize, j: usize) -> Series<T> {
        Series::from_coeffs(
            self.coeffs.iter().map(|c| c[(i, j)].clone()).collect(),
            self.truncation(),
        )
    }

    /// Determinant over the truncated series ring, by the Leibniz sum.
    /// Fine for the block sizes this crate meets (dim <= 8).
    pub fn det(&self) -> Series<T> {
        assert!(self.dim <= 8, "series determinant capped at dimension 8");
        let l = self.truncation();
        let mut total = Series::<T>::zero(l);
        crate::combinatorics::for_each_permutation(self.dim, |perm, sign| {
            let mut term = Series::constant(T::from_i64(sign), l);
            for (i, &j) in perm.iter().enumerate() {
                term = term.mul(&self.entry(i, j));
            }
            total = total.add(&term);
        });
        total
    }

    fn check_same(&self, other: &Self) -> usize {
        assert_eq!(self.dim, other.dim, "matrix series dimensions differ");
        assert_eq!(
            self.truncation(),
            other.truncation(),
            "matrix series truncation degrees differ"
        );
        self.truncation()
    }
}
