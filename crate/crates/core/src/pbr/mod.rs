//! Conjugate-basis product states, the critical angle and the exclusion
//! measurement.
//!
//! Alice encodes each bit `x_i` as `|ψ_{x_i}(θ)⟩ = cos(θ/2)|0⟩ ± sin(θ/2)|1⟩`.
//! At the critical angle `θ_m = 2·arctan(2^{1/m} − 1)` the rank-one
//! measurement `{|ζ_z⟩}` on `m` such qubits never returns the string that was
//! actually encoded, so Bob can output its outcome as a certain exclusion.

mod bits;

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

pub use bits::{restrict, BitString, SubsetY};

use crate::qcore::{
    inner_product, ProbabilityDistribution, RankOneMeasurement, RngStream, StateVector,
};
use crate::{Error, Result};

/// Default cap on the number of qubits in a dense product state.
pub const MAX_QUBITS: usize = 14;

/// Largest `m` for which the `2^m × 2^m` exclusion measurement is
/// materialized. Bob's sampling path does not need the matrix and works up
/// to [`MAX_QUBITS`].
pub const MAX_MATERIALIZED_QUBITS: usize = 10;

/// The critical angle `θ_m = 2·arctan(2^{1/m} − 1)`.
pub fn theta(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("θ_m needs m >= 1".into()));
    }
    Ok(2.0 * (2f64.powf(1.0 / m as f64) - 1.0).atan())
}

/// `|ψ_0(θ)⟩ = (cos θ/2, sin θ/2)`, `|ψ_1(θ)⟩ = (cos θ/2, −sin θ/2)`.
pub fn psi(bit: u8, theta: f64) -> StateVector {
    assert!(bit <= 1, "psi takes a bit");
    let (s, c) = (theta / 2.0).sin_cos();
    let sign = if bit == 0 { 1.0 } else { -1.0 };
    StateVector::from_real(&[c, sign * s]).expect("unit vector")
}

/// `|Ψ_x(θ)⟩ = ⊗_i |ψ_{x_i}(θ)⟩`, with `x₁` on the most significant qubit.
pub fn psi_product(x: &BitString, theta: f64, max_qubits: usize) -> Result<StateVector> {
    if x.len() > max_qubits {
        return Err(Error::ResourceCap {
            what: "qubit count",
            requested: x.len(),
            cap: max_qubits,
        });
    }
    let (s, c) = (theta / 2.0).sin_cos();
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for &b in x.bits() {
        let lower = if b == 0 { s } else { -s };
        let mut next = Vec::with_capacity(amps.len() * 2);
        for a in &amps {
            next.push(a * c);
            next.push(a * lower);
        }
        amps = next;
    }
    StateVector::new(amps)
}

fn parity(v: u64) -> bool {
    v.count_ones() % 2 == 1
}

/// `|ζ_z⟩ = 2^{−m/2} (|0⟩ − Σ_{s≠0} (−1)^{z·s} |s⟩)`.
pub fn zeta(z: &BitString) -> StateVector {
    let m = z.len();
    assert!(m <= 30, "zeta is materialized densely");
    let zi = z.to_index();
    let scale = 1.0 / ((1u64 << m) as f64).sqrt();
    let amps: Vec<f64> = (0..1u64 << m)
        .map(|s| {
            if s == 0 || parity(zi & s) {
                scale
            } else {
                -scale
            }
        })
        .collect();
    StateVector::from_real(&amps).expect("unit vector")
}

static MEASUREMENTS: [OnceLock<Arc<RankOneMeasurement>>; MAX_MATERIALIZED_QUBITS + 1] =
    [const { OnceLock::new() }; MAX_MATERIALIZED_QUBITS + 1];

/// The exclusion measurement `{|ζ_z⟩ : z ∈ {0,1}^m}`, outcome `k` labeled by
/// `z` with `z.to_index() == k`. Built once per `m` and shared.
pub fn exclusion_measurement(m: usize) -> Result<Arc<RankOneMeasurement>> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "exclusion measurement needs m >= 1".into(),
        ));
    }
    if m > MAX_MATERIALIZED_QUBITS {
        return Err(Error::ResourceCap {
            what: "materialized measurement qubits",
            requested: m,
            cap: MAX_MATERIALIZED_QUBITS,
        });
    }
    if let Some(meas) = MEASUREMENTS[m].get() {
        return Ok(meas.clone());
    }
    let labels: Vec<u64> = (0..1u64 << m).collect();
    let vectors = labels
        .iter()
        .map(|&z| zeta(&BitString::from_index(z, m)))
        .collect();
    let built = Arc::new(RankOneMeasurement::new(vectors, labels)?);
    Ok(MEASUREMENTS[m].get_or_init(|| built).clone())
}

/// All overlaps `⟨ζ_z|ψ⟩`, indexed by `z`, in `O(m·2^m)`.
///
/// Since `⟨ζ_z|ψ⟩ = 2^{−m/2}(2ψ₀ − Σ_s (−1)^{z·s} ψ_s)`, the sum over `s` for
/// every `z` at once is a Walsh–Hadamard transform of the amplitudes.
pub fn exclusion_amplitudes(state: &StateVector) -> Vec<Complex64> {
    let mut w = state.amplitudes().to_vec();
    let dim = w.len();
    let mut h = 1;
    while h < dim {
        for block in (0..dim).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (w[i], w[i + h]);
                w[i] = a + b;
                w[i + h] = a - b;
            }
        }
        h *= 2;
    }
    let twice_first = state.amplitudes()[0] * 2.0;
    let scale = 1.0 / (dim as f64).sqrt();
    w.into_iter().map(|t| (twice_first - t) * scale).collect()
}

/// Born distribution of the exclusion measurement on `state`, indexed by `z`.
pub fn exclusion_probabilities(state: &StateVector) -> Result<ProbabilityDistribution> {
    let weights: Vec<f64> = exclusion_amplitudes(state)
        .iter()
        .map(|a| a.norm_sqr())
        .collect();
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > crate::qcore::MATRIX_TOL {
        return Err(Error::InvalidState(format!(
            "exclusion probabilities sum to {total}"
        )));
    }
    ProbabilityDistribution::new(weights.into_iter().map(|p| p / total).collect())
}

/// Bob's exclusion step: measure an `m`-qubit state with `{|ζ_z⟩}` and
/// return the outcome `z`.
pub fn bob_exclude(state: &StateVector, rng: &mut RngStream) -> BitString {
    let probs = exclusion_probabilities(state).expect("state vectors are normalized");
    BitString::from_index(probs.sample(rng) as u64, state.qubit_count())
}

/// `|⟨ζ_w|Ψ_w(θ)⟩|`, the amplitude of the forbidden outcome.
pub fn forbidden_overlap(w: &BitString, theta: f64) -> Result<f64> {
    let state = psi_product(w, theta, MAX_QUBITS)?;
    Ok(inner_product(&zeta(w), &state).norm())
}

/// `max_w |⟨ζ_w|Ψ_w(θ)⟩|` over all `w ∈ {0,1}^m`.
pub fn max_forbidden_overlap(m: usize, theta: f64) -> Result<f64> {
    if m == 0 || m > MAX_MATERIALIZED_QUBITS {
        return Err(Error::ResourceCap {
            what: "exhaustive overlap qubits",
            requested: m,
            cap: MAX_MATERIALIZED_QUBITS,
        });
    }
    (0..1u64 << m).try_fold(0.0f64, |acc, w| {
        Ok(acc.max(forbidden_overlap(&BitString::from_index(w, m), theta)?))
    })
}
