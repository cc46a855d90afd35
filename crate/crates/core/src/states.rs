//! Validated quantum states and seeded random state generation.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_deviation, hermitian_eigenvalues, ComplexMatrix};

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// The stored matrix is exactly what was validated; nothing is clamped or
/// renormalised.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn from_matrix(mat: ComplexMatrix) -> Result<Self> {
        density_from_matrix(mat, &Tolerances::default())
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.mat)
    }

    /// `trace(rho^2)`.
    pub fn purity(&self) -> f64 {
        // trace(rho rho) = Σ_ij |rho_ij|^2 for Hermitian rho
        self.mat.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `U rho U^dagger`, re-validated.
    pub fn conjugated(&self, unitary: &ComplexMatrix) -> Result<Self> {
        Self::from_matrix(self.mat.conjugate_by(unitary))
    }

    /// Convex combination `Σ w_i rho_i`.
    pub fn mixture(states: &[DensityMatrix], weights: &DiagonalDistribution) -> Result<Self> {
        let first = states.first().ok_or(Error::EmptyInput("mixture needs at least one state"))?;
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: states.len(),
                found: weights.len(),
            });
        }
        let mut acc = ComplexMatrix::zeros(first.dim());
        for (state, &w) in states.iter().zip(weights.probs()) {
            if state.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: state.dim(),
                });
            }
            acc = &acc + &state.mat.scale_real(w);
        }
        Self::from_matrix(acc)
    }
}

/// Validates `mat` as a density matrix without modifying it.
pub fn density_from_matrix(mat: ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    if let Some((row, col)) = mat.first_non_finite() {
        return Err(Error::NotFinite { row, col });
    }
    let deviation = hermitian_deviation(&mat);
    if deviation > tol.hermitian {
        return Err(Error::NotHermitian {
            deviation,
            tol: tol.hermitian,
        });
    }
    let trace = mat.trace().re;
    if (trace - 1.0).abs() > tol.trace {
        return Err(Error::TraceNotOne {
            trace,
            tol: tol.trace,
        });
    }
    let min_eigenvalue = hermitian_eigenvalues(&mat)?
        .last()
        .copied()
        .unwrap_or(0.0);
    if min_eigenvalue < -tol.psd {
        return Err(Error::NotPositive {
            min_eigenvalue,
            tol: tol.psd,
        });
    }
    Ok(DensityMatrix { mat })
}

/// Normalised state vector `(a_1, ..., a_dim)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyInput("pure state needs at least one amplitude"));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let tol = Tolerances::default().normalization;
        if (norm_sqr - 1.0).abs() > tol || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr, tol });
        }
        Ok(Self { amplitudes })
    }

    /// Scales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
                tol: Tolerances::default().normalization,
            });
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// Probability vector `(p_1, ..., p_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalDistribution {
    probs: Vec<f64>,
}

impl DiagonalDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyInput("distribution needs at least one entry"));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "entry {p} is negative or not finite"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > Tolerances::default().normalization {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// `|psi><psi|`.
pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    let a = psi.amplitudes();
    DensityMatrix {
        mat: ComplexMatrix::outer(a, a).expect("equal lengths"),
    }
}

/// `diag(p_1, ..., p_n)`.
pub fn density_from_diagonal(p: &DiagonalDistribution) -> DensityMatrix {
    DensityMatrix {
        mat: ComplexMatrix::from_diagonal(p.probs()),
    }
}

/// Seeded source of Gaussian samples.
///
/// xoshiro256** seeded through SplitMix64; normals come from Box-Muller so
/// the stream is reproducible from the seed alone.
#[derive(Debug, Clone)]
pub struct StateRng {
    rng: Xoshiro256StarStar,
    spare: Option<f64>,
}

impl StateRng {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256StarStar::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    /// Real and imaginary parts independent standard normals.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.standard_normal();
        let im = self.standard_normal();
        Complex64::new(re, im)
    }

    pub fn ginibre(&mut self, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| self.complex_normal())
    }

    pub fn pure(&mut self, dim: usize) -> PureState {
        loop {
            let v: Vec<Complex64> = (0..dim).map(|_| self.complex_normal()).collect();
            if let Ok(psi) = PureState::normalized(v) {
                return psi;
            }
        }
    }

    pub fn mixed(&mut self, dim: usize) -> DensityMatrix {
        loop {
            let g = self.ginibre(dim);
            let ggh = &g * &g.adjoint();
            // GG^dagger is Hermitian up to rounding; symmetrise before validating
            let ggh = ComplexMatrix::from_fn(dim, |i, j| (ggh[(i, j)] + ggh[(j, i)].conj()) * 0.5);
            let tr = ggh.trace().re;
            if tr > 0.0 {
                if let Ok(rho) = DensityMatrix::from_matrix(ggh.scale_real(1.0 / tr)) {
                    return rho;
                }
            }
        }
    }

    /// Haar unitary: Gram-Schmidt QR of a Ginibre matrix. The R factor has
    /// a positive real diagonal, which is the phase fixing that makes Q Haar.
    pub fn unitary(&mut self, dim: usize) -> ComplexMatrix {
        loop {
            if let Some(q) = gram_schmidt(&self.ginibre(dim)) {
                return q;
            }
        }
    }

    /// Uniform point on the probability simplex with `n` entries.
    pub fn simplex(&mut self, n: usize) -> DiagonalDistribution {
        loop {
            let e: Vec<f64> = (0..n).map(|_| -(1.0 - self.uniform()).ln()).collect();
            let total: f64 = e.iter().sum();
            if total <= 0.0 {
                continue;
            }
            let mut p: Vec<f64> = e.iter().map(|x| x / total).collect();
            // absorb rounding into the last entry so the sum is 1 to machine precision
            let head: f64 = p[..n - 1].iter().sum();
            p[n - 1] = (1.0 - head).max(0.0);
            if let Ok(dist) = DiagonalDistribution::new(p) {
                return dist;
            }
        }
    }
}

/// Modified Gram-Schmidt on the columns; `None` if the columns are
/// numerically dependent.
fn gram_schmidt(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
    for j in 0..n {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let qk = &done[k];
            let proj: Complex64 = qk.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, q) in rest[0].iter_mut().zip(qk) {
                *x -= proj * q;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    Some(ComplexMatrix::from_fn(n, |i, j| cols[j][i]))
}

pub fn random_pure(dim: usize, seed: u64) -> PureState {
    StateRng::new(seed).pure(dim)
}

pub fn random_mixed(dim: usize, seed: u64) -> DensityMatrix {
    StateRng::new(seed).mixed(dim)
}

pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    StateRng::new(seed).unitary(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn validation_errors_name_the_invariant() {
        assert!(DensityMatrix::from_matrix(ComplexMatrix::identity(3).scale_real(1.0 / 3.0)).is_ok());
        // trace of diag(1, 1, -1) is exactly 1; positivity is what fails
        assert!(matches!(
            DensityMatrix::from_matrix(ComplexMatrix::from_diagonal(&[1., 1., -1.])),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            DensityMatrix::from_matrix(ComplexMatrix::from_diagonal(&[0.3, 0.3, 0.3])),
            Err(Error::TraceNotOne { .. })
        ));
        assert!(matches!(
            DensityMatrix::from_matrix(ComplexMatrix::from_diagonal(&[1.5, -0.5, 0.])),
            Err(Error::NotPositive { .. })
        ));
        let skew = ComplexMatrix::from_rows(&[
            vec![c(0.5), Complex64::new(0., 0.1)],
            vec![Complex64::new(0., 0.1), c(0.5)],
        ])
        .unwrap();
        let err = DensityMatrix::from_matrix(skew).unwrap_err();
        assert!(err.to_string().starts_with("NotHermitian"));
    }

    #[test]
    fn validation_does_not_repair() {
        let m = ComplexMatrix::from_diagonal(&[1.0 + 5e-10, -5e-10]);
        let rho = DensityMatrix::from_matrix(m.clone()).unwrap();
        assert_eq!(rho.matrix(), &m);
    }

    #[test]
    fn pure_density() {
        let rho = density_from_pure(&PureState::new(vec![c(1.), c(0.), c(0.)]).unwrap());
        assert_eq!(rho.matrix(), &ComplexMatrix::from_diagonal(&[1., 0., 0.]));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = density_from_pure(&PureState::new(vec![c(h), c(h), c(0.)]).unwrap());
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!((rho.matrix()[(i, j)] - c(0.5)).norm() < 1e-15);
        }
        assert_eq!(rho.matrix()[(2, 2)], c(0.));
    }

    #[test]
    fn pure_state_normalisation() {
        assert!(matches!(
            PureState::new(vec![c(1.), c(1.)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(PureState::normalized(vec![c(0.), c(0.)]).is_err());
    }

    #[test]
    fn diagonal_states() {
        let p = DiagonalDistribution::uniform(3).unwrap();
        let rho = density_from_diagonal(&p);
        assert!(rho
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0))
            < 1e-16);
        assert!(DiagonalDistribution::new(vec![0.5, 0.6]).is_err());
        assert!(DiagonalDistribution::new(vec![1.5, -0.5]).is_err());
        let half = density_from_diagonal(&DiagonalDistribution::new(vec![0.5, 0.5, 0.]).unwrap());
        assert_eq!(half.eigenvalues().unwrap(), vec![0.5, 0.5, 0.0]);
    }

    #[test]
    fn random_pure_is_deterministic() {
        let a = random_pure(3, 42);
        assert_eq!(a, random_pure(3, 42));
        let b = random_pure(3, 43);
        let diff = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(diff > 1e-6);
        let one = random_pure(1, 7);
        assert!((one.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_mixed_is_valid() {
        for seed in 0..20 {
            let rho = random_mixed(3, seed);
            assert!(density_from_matrix(rho.matrix().clone(), &Tolerances::default()).is_ok());
            let ev = rho.eigenvalues().unwrap();
            assert!(ev.iter().all(|&x| x >= -1e-12 && x <= 1.0 + 1e-12));
            assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
        let scalar = random_mixed(1, 5);
        assert!((scalar.matrix()[(0, 0)] - c(1.)).norm() < 1e-15);
    }

    #[test]
    fn random_unitary_is_unitary() {
        for seed in 0..10 {
            let u = random_unitary(3, seed);
            let uhu = &u.adjoint() * &u;
            assert!(uhu.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-10);
            assert!((u.determinant().norm() - 1.0).abs() < 1e-10);
        }
        let u1 = random_unitary(1, 3);
        assert!((u1[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn simplex_points_are_distributions() {
        let mut rng = StateRng::new(11);
        for _ in 0..100 {
            let p = rng.simplex(3);
            assert!((p.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
    }
}
