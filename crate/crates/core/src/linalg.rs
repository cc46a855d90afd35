//! Dense complex matrices and the Hermitian eigensolver.
//!
//! Everything here works on small square matrices (dimension up to about a
//! hundred). Storage is row-major.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Complex scalar used for every matrix entry.
pub type ComplexScalar = Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square, dense, row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from a row-major buffer of length `dim * dim`.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from nested rows; every row must have as many
    /// entries as there are rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        Ok(Self::from_fn(u.len(), |i, j| u[i] * v[j].conj()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`. Infinite when the
    /// dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Position of the first NaN or infinite entry, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
            .map(|k| (k / self.dim, k % self.dim))
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must equal matrix dimension");
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `U A U^dagger`.
    pub fn conjugate_by(&self, unitary: &Self) -> Self {
        &(unitary * self) * &unitary.adjoint()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[(r, col)].norm().total_cmp(&a[(s, col)].norm()))
                .unwrap_or(col);
            if a[(pivot, col)].norm() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                for k in 0..n {
                    a.data.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for r in col + 1..n {
                let factor = a[(r, col)] / p;
                for k in col..n {
                    let sub = factor * a[(col, k)];
                    a[(r, k)] -= sub;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.rows() {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `A ⊗ B` with the first factor's index major.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(da * db, |r, c| {
        a[(r / db, c / db)] * b[(r % db, c % db)]
    })
}

/// Largest deviation `|A_ij - conj(A_ji)|`.
pub fn hermitian_deviation(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn is_hermitian(a: &ComplexMatrix, tol: f64) -> bool {
    hermitian_deviation(a) <= tol
}

fn ensure_hermitian(a: &ComplexMatrix, tol: f64) -> Result<()> {
    let deviation = hermitian_deviation(a);
    if deviation <= tol {
        Ok(())
    } else {
        Err(Error::NotHermitian { deviation, tol })
    }
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors stored as
/// the columns of `eigenvectors`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `V diag(λ) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj())
                .sum()
        })
    }
}

pub fn hermitian_eigendecompose(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    hermitian_eigendecompose_with(a, &Tolerances::default())
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies
/// a real Givens rotation that annihilates it. Sweeps stop once the
/// off-diagonal Frobenius norm falls below `jacobi_relative * ||A||_F`.
pub fn hermitian_eigendecompose_with(
    a: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<EigenDecomposition> {
    if let Some((row, col)) = a.first_non_finite() {
        return Err(Error::NotFinite { row, col });
    }
    ensure_hermitian(a, tol.hermitian)?;

    let n = a.dim();
    // Symmetrise so that rounding asymmetry in the input cannot accumulate.
    let mut m = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(a[(i, i)].re, 0.0)
        } else {
            (a[(i, j)] + a[(j, i)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol.jacobi_relative * m.frobenius_norm();

    let mut converged = false;
    for _ in 0..tol.jacobi_max_sweeps {
        if off_diagonal_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > threshold {
        return Err(Error::NoConvergence {
            sweeps: tol.jacobi_max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort: degenerate eigenvalues keep the order in which they were found.
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g; // e^{i phi}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // Rotation columns: u_p = c e_p - s e^{-i phi} e_q, u_q = s e_p + c e^{-i phi} e_q.
    let n = m.dim();
    let pc = phase.conj();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c - mkq * pc * s;
        m[(k, q)] = mkp * s + mkq * pc * c;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c - mqk * phase * s;
        m[(q, k)] = mpk * s + mqk * phase * c;
    }
    m[(p, p)] = Complex64::new(app - t * g, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * g, 0.0);
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * pc * s;
        v[(k, q)] = vkp * s + vkq * pc * c;
    }
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigendecompose(a).map(|e| e.eigenvalues)
}

/// Trace norm of a Hermitian matrix, `Σ |λ_k|`.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?.iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn hermitian_checks() {
        assert!(is_hermitian(&ComplexMatrix::identity(3), 1e-12));
        let m = ComplexMatrix::from_rows(&[vec![c(0., 0.), c(0., 1.)], vec![c(0., 1.), c(0., 0.)]])
            .unwrap();
        assert!(!is_hermitian(&m, 1e-12));
        assert!(matches!(
            hermitian_eigendecompose(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn diagonal_sorted_descending() {
        let e = hermitian_eigendecompose(&ComplexMatrix::from_diagonal(&[3., 1., 2.])).unwrap();
        assert_eq!(e.eigenvalues, vec![3., 2., 1.]);
    }

    #[test]
    fn half_projector_spectrum() {
        let m = ComplexMatrix::from_diagonal(&[0.5, 0.5, 0.0]);
        let e = hermitian_eigendecompose(&m).unwrap();
        assert_close(&e.eigenvalues, &[0.5, 0.5, 0.0], 1e-15);
    }

    #[test]
    fn cubic_block_spectrum() {
        let p = 1.0 / 3.0;
        let m = ComplexMatrix::from_real_rows(&[
            vec![0., -p, -p],
            vec![-p, 0., -p],
            vec![-p, -p, 0.],
        ])
        .unwrap();
        let e = hermitian_eigendecompose(&m).unwrap();
        assert_close(&e.eigenvalues, &[1. / 3., 1. / 3., -2. / 3.], 1e-12);
    }

    #[test]
    fn complex_hermitian_eigenpairs() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2., 0.), c(0., 1.), c(1., -1.)],
            vec![c(0., -1.), c(3., 0.), c(0.5, 0.25)],
            vec![c(1., 1.), c(0.5, -0.25), c(-1., 0.)],
        ])
        .unwrap();
        let e = hermitian_eigendecompose(&m).unwrap();
        for k in 0..3 {
            let v = e.eigenvector(k);
            let av = m.mul_vec(&v);
            for i in 0..3 {
                assert!((av[i] - v[i] * e.eigenvalues[k]).norm() < 1e-10);
            }
        }
        let vhv = &e.eigenvectors.adjoint() * &e.eigenvectors;
        assert!(vhv.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-10);
        assert!(e.reconstruct().max_abs_diff(&m) < 1e-9);
        let sum: f64 = e.eigenvalues.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-10);
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let e = hermitian_eigendecompose(&ComplexMatrix::zeros(4)).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 4]);
        let e = hermitian_eigendecompose(&ComplexMatrix::from_diagonal(&[7.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![7.0]);
    }

    #[test]
    fn non_finite_rejected() {
        let m = ComplexMatrix::from_diagonal(&[1.0, f64::NAN]);
        assert_eq!(
            hermitian_eigendecompose(&m).unwrap_err(),
            Error::NotFinite { row: 1, col: 1 }
        );
    }

    #[test]
    fn sweep_budget_exhaustion() {
        let m = ComplexMatrix::from_real_rows(&[vec![1., 2.], vec![2., -1.]]).unwrap();
        let tol = Tolerances {
            jacobi_max_sweeps: 0,
            ..Tolerances::default()
        };
        assert_eq!(
            hermitian_eigendecompose_with(&m, &tol).unwrap_err(),
            Error::NoConvergence { sweeps: 0 }
        );
    }

    #[test]
    fn trace_norms() {
        assert!((trace_norm(&ComplexMatrix::identity(3)).unwrap() - 3.0).abs() < 1e-15);
        let m = ComplexMatrix::from_diagonal(&[0.5, 0.5, -0.5]);
        assert!((trace_norm(&m).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn tensor_products() {
        let i6 = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
        assert_eq!(i6, ComplexMatrix::identity(6));
        let t = tensor_product(
            &ComplexMatrix::from_diagonal(&[1., 0.]),
            &ComplexMatrix::from_diagonal(&[0., 1.]),
        );
        assert_eq!(t, ComplexMatrix::from_diagonal(&[0., 1., 0., 0.]));
    }

    #[test]
    fn determinant_of_diagonal_and_swap() {
        let d = ComplexMatrix::from_diagonal(&[2., 3., 4.]).determinant();
        assert!((d - c(24., 0.)).norm() < 1e-12);
        let swap = ComplexMatrix::from_real_rows(&[vec![0., 1.], vec![1., 0.]]).unwrap();
        assert!((swap.determinant() - c(-1., 0.)).norm() < 1e-15);
    }
}
