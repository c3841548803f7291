//! Small dense matrices over an abstract field, sized for the 4x4 circuit
//! matrices and their 2x2 reductions. One implementation serves both the
//! numeric (Complex64) and the exact Eisenstein-rational scalars.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field scalar for matrix arithmetic. `pivot_mag` only steers pivot
/// selection; exactness is never decided by it.
pub trait Scalar:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn pivot_mag(&self) -> f64;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() == 0.0
    }
    fn pivot_mag(&self) -> f64 {
        self.norm()
    }
}

/// Row-major rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row_vector(v: Vec<T>) -> Self {
        let c = v.len();
        Mat { rows: 1, cols: c, data: v }
    }

    pub fn col_vector(v: Vec<T>) -> Self {
        let r = v.len();
        Mat { rows: r, cols: 1, data: v }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, by: &T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * by.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    /// Determinant by fraction-producing Gaussian elimination with
    /// magnitude-steered partial pivoting (exact over an exact field).
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&a, &b| {
                    m[(a, col)]
                        .pivot_mag()
                        .partial_cmp(&m[(b, col)].pivot_mag())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            if m[(pivot_row, col)].is_zero() {
                return T::zero();
            }
            if pivot_row != col {
                for j in 0..n {
                    m.data.swap(pivot_row * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for row in (col + 1)..n {
                let factor = m[(row, col)].clone() / pivot.clone();
                for j in col..n {
                    let sub = factor.clone() * m[(col, j)].clone();
                    m[(row, j)] = m[(row, j)].clone() - sub;
                }
            }
        }
        det
    }

    /// Inverse via Gauss-Jordan; errors on a (numerically) vanishing pivot.
    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Mat::<T>::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&a, &b| {
                    m[(a, col)]
                        .pivot_mag()
                        .partial_cmp(&m[(b, col)].pivot_mag())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            if m[(pivot_row, col)].is_zero() {
                return Err(Error::SingularPivot(m[(pivot_row, col)].pivot_mag()));
            }
            if pivot_row != col {
                for j in 0..n {
                    m.data.swap(pivot_row * n + j, col * n + j);
                    inv.data.swap(pivot_row * n + j, col * n + j);
                }
            }
            let pivot = m[(col, col)].clone();
            for j in 0..n {
                m[(col, j)] = m[(col, j)].clone() / pivot.clone();
                inv[(col, j)] = inv[(col, j)].clone() / pivot.clone();
            }
            for row in 0..n {
                if row == col || m[(row, col)].is_zero() {
                    continue;
                }
                let factor = m[(row, col)].clone();
                for j in 0..n {
                    let a = factor.clone() * m[(col, j)].clone();
                    m[(row, j)] = m[(row, j)].clone() - a;
                    let b = factor.clone() * inv[(col, j)].clone();
                    inv[(row, j)] = inv[(row, j)].clone() - b;
                }
            }
        }
        Ok(inv)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        let c = self.cols;
        &mut self.data[i * c + j]
    }
}

/// Largest entry-wise absolute difference between two complex matrices.
pub fn max_abs_diff(a: &Mat<Complex64>, b: &Mat<Complex64>) -> f64 {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Coefficients of the characteristic polynomial det(lambda I - A) via the
/// Faddeev-LeVerrier recurrence: returns c[0..=n] with c[0] = 1 (leading).
pub fn char_poly(a: &Mat<Complex64>) -> Vec<Complex64> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut m = Mat::<Complex64>::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k)/k
        for i in 0..n {
            m[(i, i)] += coeffs[k - 1];
        }
        m = a.mul(&m);
        let c = -m.trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// All roots of a monic complex polynomial (coefficients leading-first) by
/// Durand-Kerner iteration.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![];
    }
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs {
            acc = acc * z + c;
        }
        acc
    };
    // standard non-real starting points spread on a circle
    let radius = 1.0
        + coeffs[1..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.7, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut shift = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-14 {
            break;
        }
    }
    roots
}

/// Eigenvalues of a complex square matrix (with multiplicity, arbitrary
/// order).
pub fn eigenvalues(a: &Mat<Complex64>) -> Vec<Complex64> {
    poly_roots(&char_poly(a))
}

/// Check that two complex multisets agree pairwise within `tol`, greedily
/// matching nearest elements. Returns the largest matched distance.
pub fn multiset_distance(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut remaining: Vec<Complex64> = ys.to_vec();
    let mut worst = 0.0f64;
    for x in xs {
        let (idx, d) = remaining
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        worst = worst.max(d);
        remaining.swap_remove(idx);
    }
    worst
}
