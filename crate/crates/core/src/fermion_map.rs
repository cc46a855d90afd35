//! Qudit states as antisymmetric two-fermion states.
//!
//! A state on an `N`-level system, `N = d(d-1)/2`, is identified with a
//! state on `∧²(C^d)` by matching matrix elements in the wedge basis
//! `|g_k> = (|i>|j> - |j>|i>)/√2`, `i < j`, ordered lexicographically.
//! Embedding into the full `d²`-dimensional product space uses the flat
//! index `i*d + j` for the product vector `|i>|j>` (0-based).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::reductions::{partial_trace, BipartiteShape, Subsystem};
use crate::states::DensityMatrix;

/// Lexicographically ordered index pairs `(i, j)`, `i < j`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeBasis {
    d: usize,
    pairs: Vec<(usize, usize)>,
}

impl WedgeBasis {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let pairs = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .collect();
        Ok(Self { d, pairs })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of wedge vectors, `d(d-1)/2`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Pairs with 1-based labels, as usually written.
    pub fn labels(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    pub fn flat_index(&self, i: usize, j: usize) -> usize {
        i * self.d + j
    }

    /// Product-space components of `|g_k>` as `(flat index, amplitude)`.
    fn support(&self, k: usize) -> [(usize, f64); 2] {
        let (i, j) = self.pairs[k];
        [
            (self.flat_index(i, j), FRAC_1_SQRT_2),
            (self.flat_index(j, i), -FRAC_1_SQRT_2),
        ]
    }

    /// `|g_k>` as a dense vector of length `d²`.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.d * self.d];
        for (idx, amp) in self.support(k) {
            v[idx] = Complex64::new(amp, 0.0);
        }
        v
    }

    /// The `d² x N` isometry whose columns are the wedge vectors, stored
    /// column-major as a list of columns.
    pub fn isometry_columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.len()).map(|k| self.vector(k)).collect()
    }
}

pub fn wedge_basis(d: usize) -> Result<WedgeBasis> {
    WedgeBasis::new(d)
}

/// Single-fermion dimension `d` with `d(d-1)/2 = n`, if any.
pub fn fermion_dim_for(n: usize) -> Option<usize> {
    (2..=n + 2).find(|d| d * (d - 1) / 2 == n)
}

/// A `d² x d²` state supported on the antisymmetric subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFermionState {
    d: usize,
    rho: DensityMatrix,
}

impl TwoFermionState {
    /// Checks that `(I + SWAP)/2` annihilates `rho`.
    pub fn new(rho: DensityMatrix, d: usize) -> Result<Self> {
        Self::with_tolerance(rho, d, Tolerances::default().antisymmetric)
    }

    pub fn with_tolerance(rho: DensityMatrix, d: usize, tol: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if rho.dim() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: rho.dim(),
            });
        }
        let residual = symmetric_residual(rho.matrix(), d);
        if residual > tol {
            return Err(Error::NotAntisymmetric { residual, tol });
        }
        Ok(Self { d, rho })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.rho.matrix()
    }

    pub fn shape(&self) -> BipartiteShape {
        BipartiteShape::square(self.d)
    }
}

/// Largest entry of `(I + SWAP)/2 · rho`.
pub fn symmetric_residual(rho: &ComplexMatrix, d: usize) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..d {
        for j in 0..d {
            let (r, s) = (i * d + j, j * d + i);
            for c in 0..rho.dim() {
                worst = worst.max(((rho[(r, c)] + rho[(s, c)]) * 0.5).norm());
            }
        }
    }
    worst
}

fn check_wedge_dim(rho_i: &DensityMatrix, basis: &WedgeBasis) -> Result<()> {
    if rho_i.dim() == basis.len() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: rho_i.dim(),
        })
    }
}

/// `Σ_kl (rho_I)_kl |g_k><g_l|` written out in the product basis.
pub fn embed(rho_i: &DensityMatrix, d: usize) -> Result<TwoFermionState> {
    let basis = WedgeBasis::new(d)?;
    check_wedge_dim(rho_i, &basis)?;
    let src = rho_i.matrix();
    let mut out = ComplexMatrix::zeros(d * d);
    for k in 0..basis.len() {
        for l in 0..basis.len() {
            let value = src[(k, l)];
            for (r, ar) in basis.support(k) {
                for (c, ac) in basis.support(l) {
                    // amplitudes are ±1/√2, so the product is exactly ±1/2
                    let sign = (ar * ac).signum();
                    out[(r, c)] += value * (0.5 * sign);
                }
            }
        }
    }
    Ok(TwoFermionState {
        d,
        rho: DensityMatrix::from_matrix(out)?,
    })
}

/// `W rho_I W^dagger` with `W` the wedge isometry; a second, independent
/// route to [`embed`].
pub fn embed_by_isometry(rho_i: &DensityMatrix, d: usize) -> Result<ComplexMatrix> {
    let basis = WedgeBasis::new(d)?;
    check_wedge_dim(rho_i, &basis)?;
    let cols = basis.isometry_columns();
    let n = basis.len();
    let src = rho_i.matrix();
    // W rho
    let w_rho: Vec<Vec<Complex64>> = (0..d * d)
        .map(|r| {
            (0..n)
                .map(|l| (0..n).map(|k| cols[k][r] * src[(k, l)]).sum())
                .collect()
        })
        .collect();
    Ok(ComplexMatrix::from_fn(d * d, |r, c| {
        (0..n).map(|l| w_rho[r][l] * cols[l][c].conj()).sum()
    }))
}

/// Inverse of [`embed`]: `(rho_O)_kl = <g_k| rho' |g_l>`.
pub fn extract(state: &TwoFermionState) -> Result<DensityMatrix> {
    let basis = WedgeBasis::new(state.d)?;
    let m = state.matrix();
    let out = ComplexMatrix::from_fn(basis.len(), |k, l| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, ar) in basis.support(k) {
            for (c, ac) in basis.support(l) {
                acc += m[(r, c)] * (ar * ac);
            }
        }
        acc
    });
    DensityMatrix::from_matrix(out)
}

/// Single-fermion reduced state, `Tr_B` of the embedded state.
pub fn reduced_fermion_state(rho_i: &DensityMatrix, d: usize) -> Result<DensityMatrix> {
    let state = embed(rho_i, d)?;
    partial_trace(state.density(), state.shape(), Subsystem::A)
}
