//! Partial trace and partial transpose on a two-factor product space.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::DensityMatrix;

/// Dimensions of the two tensor factors, first factor major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteShape {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteShape {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        Self { dim_a, dim_b }
    }

    pub fn square(d: usize) -> Self {
        Self::new(d, d)
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        if self.total() == dim {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                dim_a: self.dim_a,
                dim_b: self.dim_b,
                dim,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace keeping `keep`.
///
/// Splits the matrix into `dim_a x dim_a` blocks of size `dim_b`. Keeping
/// A gives the matrix of block traces; keeping B gives the sum of the
/// diagonal blocks.
pub fn partial_trace_matrix(
    rho: &ComplexMatrix,
    shape: BipartiteShape,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    shape.check(rho.dim())?;
    let (da, db) = (shape.dim_a, shape.dim_b);
    let block = |k: usize, l: usize, i: usize, j: usize| rho[(k * db + i, l * db + j)];
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, |k, l| (0..db).map(|b| block(k, l, b, b)).sum()),
        Subsystem::B => ComplexMatrix::from_fn(db, |i, j| (0..da).map(|k| block(k, k, i, j)).sum()),
    })
}

/// Validated partial trace of a state.
pub fn partial_trace(
    rho: &DensityMatrix,
    shape: BipartiteShape,
    keep: Subsystem,
) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix(partial_trace_matrix(rho.matrix(), shape, keep)?)
}

/// Partial trace evaluated literally as `Σ_j <i1|<j| rho |j>|i2>` with
/// explicit product basis vectors. Slow; used to cross-check
/// [`partial_trace_matrix`].
pub fn partial_trace_by_index_sum(
    rho: &ComplexMatrix,
    shape: BipartiteShape,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    shape.check(rho.dim())?;
    let (kept, traced) = match keep {
        Subsystem::A => (shape.dim_a, shape.dim_b),
        Subsystem::B => (shape.dim_b, shape.dim_a),
    };
    let product_vector = |kept_index: usize, traced_index: usize| {
        let (a, b) = match keep {
            Subsystem::A => (kept_index, traced_index),
            Subsystem::B => (traced_index, kept_index),
        };
        kron(&basis(shape.dim_a, a), &basis(shape.dim_b, b))
    };
    let mut out = ComplexMatrix::zeros(kept);
    for i1 in 0..kept {
        for i2 in 0..kept {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..traced {
                let bra = product_vector(i1, j);
                let ket = rho.mul_vec(&product_vector(i2, j));
                acc += bra.iter().zip(&ket).map(|(x, y)| x.conj() * y).sum::<Complex64>();
            }
            out[(i1, i2)] = acc;
        }
    }
    Ok(out)
}

fn basis(dim: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[k] = Complex64::new(1.0, 0.0);
    v
}

fn kron(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}

/// Transpose of one factor only.
///
/// For `which = B`, entry `((i1,i2),(j1,j2))` takes the value at
/// `((i1,j2),(j1,i2))`. The result is generally indefinite, so it is not
/// validated as a state.
pub fn partial_transpose_matrix(
    rho: &ComplexMatrix,
    shape: BipartiteShape,
    which: Subsystem,
) -> Result<ComplexMatrix> {
    shape.check(rho.dim())?;
    let db = shape.dim_b;
    Ok(ComplexMatrix::from_fn(rho.dim(), |r, c| {
        let (i1, i2) = (r / db, r % db);
        let (j1, j2) = (c / db, c % db);
        match which {
            Subsystem::B => rho[(i1 * db + j2, j1 * db + i2)],
            Subsystem::A => rho[(j1 * db + i2, i1 * db + j2)],
        }
    }))
}

pub fn partial_transpose(
    rho: &DensityMatrix,
    shape: BipartiteShape,
    which: Subsystem,
) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), shape, which)
}
