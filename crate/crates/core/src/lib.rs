//! Virtual entanglement of single-qudit mixed states.
//!
//! A state on `N = d(d-1)/2` levels is mapped one-to-one onto a state of
//! two identical `d`-level fermions. The embedded state lives in the full
//! `d ⊗ d` product space, where partial transposition exposes entanglement
//! created purely by antisymmetry. For a qutrit (`d = 3`) every pure state
//! has Negativity 1/2 and entanglement entropy `ln 2`, and the maximally
//! mixed state sits at the infimum 1/3.

pub mod claims;
pub mod config;
pub mod entanglement;
pub mod error;
pub mod fermion_map;
pub mod io;
pub mod linalg;
pub mod reductions;
pub mod states;
pub mod sweep;

pub use config::Tolerances;
pub use entanglement::{
    convexity_check, diagonal_cubic_analysis, entanglement_entropy, negativity, CubicAnalysis,
    MonotoneReport,
};
pub use error::{Error, Result};
pub use fermion_map::{embed, extract, reduced_fermion_state, wedge_basis, TwoFermionState, WedgeBasis};
pub use linalg::{
    hermitian_eigendecompose, is_hermitian, tensor_product, trace_norm, ComplexMatrix,
    ComplexScalar, EigenDecomposition,
};
pub use reductions::{partial_trace, partial_transpose, BipartiteShape, Subsystem};
pub use states::{
    density_from_diagonal, density_from_matrix, density_from_pure, random_mixed, random_pure,
    random_unitary, DensityMatrix, DiagonalDistribution, PureState, StateRng,
};
