use std::fmt;

use num_complex::Complex64;

use super::VECTOR_TOL;
use crate::{Error, Result};

/// A normalized pure state of `q` qubits, stored densely over the
/// computational basis.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    qubit_count: usize,
}

impl StateVector {
    /// Builds a state from raw amplitudes, checking that the length is a power
    /// of two and that the L2 norm is 1 within [`VECTOR_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "length {len} is not a power of two"
            )));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > VECTOR_TOL {
            return Err(Error::InvalidState(format!(
                "norm {norm} differs from 1 by more than {VECTOR_TOL:e}"
            )));
        }
        Ok(StateVector {
            qubit_count: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Computational basis state `|index⟩` on `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Self {
        let dim = 1usize << qubits;
        assert!(
            index < dim,
            "basis index {index} out of range for {qubits} qubits"
        );
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector {
            amplitudes,
            qubit_count: qubits,
        }
    }

    /// `|+⟩ = (|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(&[h, h]).expect("unit vector")
    }

    /// `|−⟩ = (|0⟩ − |1⟩)/√2`.
    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(&[h, -h]).expect("unit vector")
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        inner_product(self, other).norm_sqr()
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        tensor_product(self, other)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateVector")
            .field("qubit_count", &self.qubit_count)
            .field("amplitudes", &self.amplitudes)
            .finish()
    }
}

/// Kronecker product: amplitude `i·2^{q_b} + j` of the result is `a[i]·b[j]`.
pub fn tensor_product(a: &StateVector, b: &StateVector) -> StateVector {
    let mut amplitudes = Vec::with_capacity(a.dim() * b.dim());
    for &x in &a.amplitudes {
        amplitudes.extend(b.amplitudes.iter().map(|&y| x * y));
    }
    StateVector {
        amplitudes,
        qubit_count: a.qubit_count + b.qubit_count,
    }
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
///
/// Panics if the dimensions differ.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Complex64 {
    assert_eq!(
        a.dim(),
        b.dim(),
        "inner product of states with different dimensions"
    );
    a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum()
}
