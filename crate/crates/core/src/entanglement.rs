//! Negativity, logarithmic negativity and entanglement entropy, plus the
//! closed-form analysis of diagonal qutrit states.

use std::f64::consts::TAU;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, trace_norm};
use crate::reductions::{partial_trace_matrix, partial_transpose, BipartiteShape, Subsystem};
use crate::states::{DensityMatrix, DiagonalDistribution};

/// Result of the partial-transpose test on a bipartite state.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneReport {
    /// `Σ (|λ_i| - λ_i) / 2` over the partial-transpose spectrum.
    pub negativity: f64,
    /// `(||rho^PT||_1 - 1) / 2`, computed from the trace norm.
    pub negativity_from_trace_norm: f64,
    /// `ln ||rho^PT||_1`.
    pub log_negativity: f64,
    pub trace_norm: f64,
    /// Strictly negative eigenvalues of the partial transpose, ascending.
    pub neg_eigenvalues: Vec<f64>,
    pub entangled: bool,
}

/// Negativity with respect to the transpose of factor B.
pub fn negativity(rho: &DensityMatrix, shape: BipartiteShape) -> Result<MonotoneReport> {
    let pt = partial_transpose(rho, shape, Subsystem::B)?;
    let spectrum = hermitian_eigenvalues(&pt)?;
    let norm = trace_norm(&pt)?;
    let negativity = spectrum.iter().map(|l| (l.abs() - l) / 2.0).sum();
    let mut neg_eigenvalues: Vec<f64> = spectrum.into_iter().filter(|&l| l < 0.0).collect();
    neg_eigenvalues.reverse();
    Ok(MonotoneReport {
        negativity,
        negativity_from_trace_norm: (norm - 1.0) / 2.0,
        log_negativity: norm.ln(),
        trace_norm: norm,
        neg_eigenvalues,
        entangled: negativity > Tolerances::default().detection,
    })
}

/// `-Σ λ ln λ`, with `0 ln 0 = 0`; non-positive eigenvalues are dropped.
pub fn von_neumann_entropy(spectrum: &[f64]) -> f64 {
    spectrum
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum()
}

/// Entropy of the A marginal of a pure bipartite state.
pub fn entanglement_entropy(rho: &DensityMatrix, shape: BipartiteShape) -> Result<f64> {
    shape.check(rho.dim())?;
    let tol = Tolerances::default().purity;
    let purity = rho.purity();
    if purity < 1.0 - tol {
        return Err(Error::NotPure { purity, tol });
    }
    let marginal = partial_trace_matrix(rho.matrix(), shape, Subsystem::A)?;
    Ok(von_neumann_entropy(&hermitian_eigenvalues(&marginal)?))
}

/// Entropies of both marginals `(S_A, S_B)`; equal for pure states.
pub fn marginal_entropies(rho: &DensityMatrix, shape: BipartiteShape) -> Result<(f64, f64)> {
    let a = partial_trace_matrix(rho.matrix(), shape, Subsystem::A)?;
    let b = partial_trace_matrix(rho.matrix(), shape, Subsystem::B)?;
    Ok((
        von_neumann_entropy(&hermitian_eigenvalues(&a)?),
        von_neumann_entropy(&hermitian_eigenvalues(&b)?),
    ))
}

/// Roots of `λ³ - (p1² + p2² + p3²) λ + 2 p1 p2 p3 = 0`.
///
/// The roots are eigenvalues of the unscaled 3x3 block
/// `[[0,-p1,-p2],[-p1,0,-p3],[-p2,-p3,0]]`; the partial transpose carries an
/// extra factor 1/2, so `negativity = |most negative root| / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicAnalysis {
    /// `[1, 0, -(p1²+p2²+p3²), 2 p1 p2 p3]`, highest degree first.
    pub coefficients: [f64; 4],
    /// Ascending.
    pub roots: [f64; 3],
    pub negativity: f64,
}

impl CubicAnalysis {
    pub fn evaluate(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.coefficients;
        ((a * x + b) * x + c) * x + d
    }

    /// Smallest root; negative for every probability vector.
    pub fn neg_root(&self) -> f64 {
        self.roots[0]
    }
}

/// Trigonometric solution of the diagonal-state cubic.
pub fn diagonal_cubic_analysis(p: &DiagonalDistribution) -> Result<CubicAnalysis> {
    let [p1, p2, p3] = match p.probs() {
        &[a, b, c] => [a, b, c],
        other => {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: other.len(),
            })
        }
    };
    let s = p1 * p1 + p2 * p2 + p3 * p3;
    let q = p1 * p2 * p3;
    let coefficients = [1.0, 0.0, -s, 2.0 * q];

    // depressed cubic t³ + P t + Q with P = -s < 0 (s ≥ 1/3 on the simplex)
    let (big_p, big_q) = (-s, 2.0 * q);
    let m = 2.0 * (-big_p / 3.0).sqrt();
    let arg = ((3.0 * big_q) / (2.0 * big_p) * (-3.0 / big_p).sqrt()).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut roots = [0.0; 3];
    for (k, root) in roots.iter_mut().enumerate() {
        let t = m * (theta - TAU * k as f64 / 3.0).cos();
        *root = newton_polish(t, s, q);
    }
    roots.sort_by(f64::total_cmp);

    let negativity = if roots[0] < 0.0 { -roots[0] / 2.0 } else { 0.0 };
    Ok(CubicAnalysis {
        coefficients,
        roots,
        negativity,
    })
}

/// One Newton step, kept only if it lowers the residual.
fn newton_polish(t: f64, s: f64, q: f64) -> f64 {
    let f = |x: f64| (x * x - s) * x + 2.0 * q;
    let df = 3.0 * t * t - s;
    if df == 0.0 {
        return t;
    }
    let next = t - f(t) / df;
    if next.is_finite() && f(next).abs() < f(t).abs() {
        next
    } else {
        t
    }
}

/// `E(Σ w_i rho_i) <= Σ w_i E(rho_i) + 1e-9`.
pub fn convexity_check(
    states: &[DensityMatrix],
    weights: &DiagonalDistribution,
    shape: BipartiteShape,
) -> Result<bool> {
    for state in states {
        shape.check(state.dim())?;
    }
    let mixture = DensityMatrix::mixture(states, weights)?;
    let lhs = negativity(&mixture, shape)?.negativity;
    let mut rhs = 0.0;
    for (state, &w) in states.iter().zip(weights.probs()) {
        rhs += w * negativity(state, shape)?.negativity;
    }
    Ok(lhs <= rhs + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion_map::embed;
    use crate::linalg::{tensor_product, ComplexMatrix};
    use crate::states::{density_from_diagonal, density_from_pure, random_mixed, random_pure};
    use num_complex::Complex64;

    fn dist(p: &[f64]) -> DiagonalDistribution {
        DiagonalDistribution::new(p.to_vec()).unwrap()
    }

    fn embedded_negativity(rho: &DensityMatrix) -> MonotoneReport {
        let e = embed(rho, 3).unwrap();
        negativity(e.density(), e.shape()).unwrap()
    }

    #[test]
    fn maximally_mixed_negativity() {
        let r = embedded_negativity(&density_from_diagonal(&DiagonalDistribution::uniform(3).unwrap()));
        assert!((r.negativity - 1.0 / 3.0).abs() < 1e-9);
        assert!((r.negativity - r.negativity_from_trace_norm).abs() < 1e-12);
        assert!((r.log_negativity - (5.0f64 / 3.0).ln()).abs() < 1e-9);
        assert!(r.entangled);
        assert_eq!(r.neg_eigenvalues.len(), 1);
        let sum: f64 = r.neg_eigenvalues.iter().map(|x| x.abs()).sum();
        assert!((sum - r.negativity).abs() < 1e-12);
    }

    #[test]
    fn pure_negativity() {
        for seed in 0..5 {
            let r = embedded_negativity(&density_from_pure(&random_pure(3, seed)));
            assert!((r.negativity - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn half_half_zero() {
        let r = embedded_negativity(&density_from_diagonal(&dist(&[0.5, 0.5, 0.0])));
        assert!((r.negativity - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn product_states_have_zero_negativity() {
        let rho = DensityMatrix::from_matrix(tensor_product(
            random_mixed(3, 1).matrix(),
            random_mixed(3, 2).matrix(),
        ))
        .unwrap();
        let r = negativity(&rho, BipartiteShape::square(3)).unwrap();
        assert!(r.negativity.abs() < 1e-9);
        assert!(!r.entangled);
    }

    #[test]
    fn entropy_cases() {
        let e = embed(&density_from_pure(&random_pure(3, 8)), 3).unwrap();
        let s = entanglement_entropy(e.density(), e.shape()).unwrap();
        assert!((s - 2f64.ln()).abs() < 1e-9);

        let product = crate::states::PureState::new(
            [0.6, 0.8]
                .iter()
                .flat_map(|a| [1.0, 0.0].map(|b| Complex64::new(a * b, 0.0)))
                .collect(),
        )
        .unwrap();
        let rho = density_from_pure(&product);
        assert!(entanglement_entropy(&rho, BipartiteShape::square(2)).unwrap().abs() < 1e-9);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = density_from_pure(
            &crate::states::PureState::new(
                [h, 0.0, 0.0, h].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            )
            .unwrap(),
        );
        let s = entanglement_entropy(&bell, BipartiteShape::square(2)).unwrap();
        assert!((s - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_mixed_input() {
        let e = embed(&density_from_diagonal(&DiagonalDistribution::uniform(3).unwrap()), 3).unwrap();
        assert!(matches!(
            entanglement_entropy(e.density(), e.shape()),
            Err(Error::NotPure { .. })
        ));
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_diagonal(&[1.0, 0.0])).unwrap();
        assert!(matches!(
            entanglement_entropy(&rho, BipartiteShape::square(2)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn cubic_closed_forms() {
        let third = 1.0 / 3.0;
        let c = diagonal_cubic_analysis(&dist(&[third, third, third])).unwrap();
        let expected = [-2.0 / 3.0, third, third];
        for (r, e) in c.roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-9, "{:?}", c.roots);
        }
        assert!((c.negativity - third).abs() < 1e-9);

        let c = diagonal_cubic_analysis(&dist(&[1.0, 0.0, 0.0])).unwrap();
        for (r, e) in c.roots.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((r - e).abs() < 1e-12);
        }
        assert!((c.negativity - 0.5).abs() < 1e-12);
        assert_eq!(c.coefficients, [1.0, 0.0, -1.0, 0.0]);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = diagonal_cubic_analysis(&dist(&[0.5, 0.5, 0.0])).unwrap();
        for (r, e) in c.roots.iter().zip([-h, 0.0, h]) {
            assert!((r - e).abs() < 1e-12);
        }
        assert!((c.negativity - h / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_rejects_wrong_length() {
        assert!(diagonal_cubic_analysis(&dist(&[0.5, 0.5])).is_err());
    }

    #[test]
    fn cubic_residuals() {
        let mut rng = crate::states::StateRng::new(3);
        for _ in 0..200 {
            let c = diagonal_cubic_analysis(&rng.simplex(3)).unwrap();
            for r in c.roots {
                assert!(c.evaluate(r).abs() < 1e-10);
            }
            assert!(c.roots.iter().filter(|&&r| r < -1e-12).count() <= 1);
        }
    }

    #[test]
    fn convexity_single_and_pair() {
        let shape = BipartiteShape::square(3);
        let a = embed(&random_mixed(3, 1), 3).unwrap().density().clone();
        let b = embed(&density_from_pure(&random_pure(3, 2)), 3).unwrap().density().clone();
        assert!(convexity_check(&[a.clone()], &dist(&[1.0]), shape).unwrap());
        assert!(convexity_check(&[a, b], &dist(&[0.3, 0.7]), shape).unwrap());
        assert!(convexity_check(&[random_mixed(4, 0)], &dist(&[1.0]), shape).is_err());
    }
}
