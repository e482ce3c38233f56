//! Complex linear algebra and information-theoretic primitives shared by the
//! protocol modules.
//!
//! Basis ordering: amplitude index `i` of a `q`-qubit state is the bit string
//! of qubits `1..=q` read with qubit 1 as the most significant bit.

mod entropy;
mod measurement;
mod rng;
mod state;

pub use entropy::{
    binary_entropy, conditional_entropy, log2_or_zero, shannon_entropy, von_neumann_entropy_2x2,
    DensityMatrix2, JointDistribution, ProbabilityDistribution,
};
pub use measurement::{born_measure, born_probabilities, RankOneMeasurement};
pub use rng::RngStream;
pub use state::{inner_product, tensor_product, StateVector};

pub use num_complex::Complex64;

/// Tolerance for vector-level quantities (norms, overlaps, fidelities).
pub const VECTOR_TOL: f64 = 1e-12;

/// Tolerance for matrix-level accumulations (completeness residuals,
/// entropy identities).
pub const MATRIX_TOL: f64 = 1e-10;
