use super::{
    inner_product, ProbabilityDistribution, RngStream, StateVector, MATRIX_TOL, VECTOR_TOL,
};
use crate::{Error, Result};

/// A complete rank-one projective measurement `{|v_k⟩⟨v_k|}`.
///
/// Labels are integer encodings of the outcome names: for bit-string labels
/// the integer reads the string with its first bit most significant.
#[derive(Clone, Debug)]
pub struct RankOneMeasurement {
    vectors: Vec<StateVector>,
    labels: Vec<u64>,
}

impl RankOneMeasurement {
    /// Checks unit norms and completeness `Σ|v⟩⟨v| = I` (entrywise within
    /// [`MATRIX_TOL`]). A complete rank-one measurement has exactly `dim`
    /// outcomes.
    pub fn new(vectors: Vec<StateVector>, labels: Vec<u64>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidMeasurement("no outcome vectors".into()));
        };
        let dim = first.dim();
        if labels.len() != vectors.len() {
            return Err(Error::InvalidMeasurement(format!(
                "{} labels for {} outcomes",
                labels.len(),
                vectors.len()
            )));
        }
        if vectors.iter().any(|v| v.dim() != dim) {
            return Err(Error::InvalidMeasurement("mixed dimensions".into()));
        }
        if let Some(v) = vectors.iter().find(|v| (v.norm() - 1.0).abs() > VECTOR_TOL) {
            return Err(Error::InvalidMeasurement(format!(
                "outcome vector with norm {}",
                v.norm()
            )));
        }
        let meas = RankOneMeasurement { vectors, labels };
        let residual = meas.completeness_residual();
        if meas.vectors.len() != dim || residual > MATRIX_TOL {
            return Err(Error::IncompleteMeasurement {
                residual,
                tolerance: MATRIX_TOL,
            });
        }
        Ok(meas)
    }

    /// Largest entrywise deviation of `Σ_k |v_k⟩⟨v_k|` from the identity.
    pub fn completeness_residual(&self) -> f64 {
        let dim = self.dim();
        let mut acc = vec![num_complex::Complex64::new(0.0, 0.0); dim * dim];
        for v in &self.vectors {
            let a = v.amplitudes();
            for (i, &ai) in a.iter().enumerate() {
                let row = &mut acc[i * dim..(i + 1) * dim];
                for (slot, aj) in row.iter_mut().zip(a) {
                    *slot += ai * aj.conj();
                }
            }
        }
        for i in 0..dim {
            acc[i * dim + i] -= 1.0;
        }
        acc.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn vector(&self, outcome: usize) -> &StateVector {
        &self.vectors[outcome]
    }

    pub fn label(&self, outcome: usize) -> u64 {
        self.labels[outcome]
    }
}

/// Born-rule outcome distribution `p_k = |⟨v_k|ψ⟩|²`, indexed like the
/// measurement's outcome vectors.
pub fn born_probabilities(
    state: &StateVector,
    meas: &RankOneMeasurement,
) -> Result<ProbabilityDistribution> {
    if state.dim() != meas.dim() {
        return Err(Error::InvalidParameter(format!(
            "state dimension {} does not match measurement dimension {}",
            state.dim(),
            meas.dim()
        )));
    }
    let weights = meas
        .vectors
        .iter()
        .map(|v| inner_product(v, state).norm_sqr())
        .collect();
    ProbabilityDistribution::renormalized(weights)
}

/// Samples an outcome by the Born rule and returns its label together with
/// the post-measurement state `|v_label⟩`.
pub fn born_measure(
    state: &StateVector,
    meas: &RankOneMeasurement,
    rng: &mut RngStream,
) -> Result<(u64, StateVector)> {
    let probs = born_probabilities(state, meas)?;
    let k = probs.sample(rng);
    Ok((meas.labels[k], meas.vectors[k].clone()))
}
