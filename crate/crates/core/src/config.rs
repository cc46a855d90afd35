/// Numerical tolerances shared by every module.
///
/// All defaults live here; functions that take a tolerance argument use
/// these values through [`Tolerances::default`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum `|A_ij - conj(A_ji)|` accepted as Hermitian.
    pub hermitian: f64,
    /// Maximum `|trace - 1|` for a density matrix.
    pub trace: f64,
    /// Smallest eigenvalue accepted is `-psd`.
    pub psd: f64,
    /// Maximum residual of the symmetric projector on a two-fermion state.
    pub antisymmetric: f64,
    /// Purity must satisfy `trace(rho^2) >= 1 - purity`.
    pub purity: f64,
    /// Negativity above this value counts as entangled.
    pub detection: f64,
    /// Normalisation tolerance for amplitudes and probability vectors.
    pub normalization: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm drops below
    /// `jacobi_relative * ||A||_F`.
    pub jacobi_relative: f64,
    pub jacobi_max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-9,
            trace: 1e-9,
            psd: 1e-9,
            antisymmetric: 1e-9,
            purity: 1e-9,
            detection: 1e-9,
            normalization: 1e-12,
            jacobi_relative: 1e-12,
            jacobi_max_sweeps: 100,
        }
    }
}
