//! Graph spectra behind the energy bounds: the bisector graph on pairs at a
//! fixed distance, a dense symmetric eigensolver, the expander mixing lemma
//! and point/line incidences in the projective plane.

mod eigen;
mod graphs;
mod incidence;
mod matrix;

use thiserror::Error;

pub use eigen::{
    eigen_decomposition, eigenvalues_symmetric, gershgorin_bound, gershgorin_disks, EigenDecomposition,
    DEFAULT_TOLERANCE, MAX_SWEEPS,
};
pub use graphs::{
    bisector_graph, expander_mixing_check, expected_residual_entry, expected_residual_row_sum, second_eigenvalue,
    second_eigenvalue_check, BisectorGraph, LabeledGraph, MixingReport, SecondEigenvalueReport, BISECTOR_GRAPH_MAX_Q,
};
pub use incidence::{
    incidence_graph, incidence_spectrum_check, projective_points, weighted_incidence_check, IncidenceReport,
    IncidenceSpectrumReport, MultisetWeights, ProjectivePoint, INCIDENCE_GRAPH_MAX_Q,
};
pub use matrix::{IntMatrix, SymmetricMatrix};

/// Absolute slack allowed when comparing computed eigenvalues with exact bounds.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("distance must be nonzero")]
    InvalidDistance,
    #[error("{what} at q = {q} exceeds the size guard q <= {max}")]
    SizeGuard { what: &'static str, q: u32, max: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    ConvergenceError { sweeps: usize, off_norm: f64 },
}
