use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{RngStream, VECTOR_TOL};
use crate::{Error, Result};

/// `log₂ p`, with the convention that `0 · log₂ 0 = 0` handled by callers via
/// [`plogp`].
pub fn log2_or_zero(p: f64) -> f64 {
    if p > 0.0 {
        p.log2()
    } else {
        0.0
    }
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// `H₂(p) = −p log₂ p − (1−p) log₂(1−p)`.
///
/// Panics unless `0 ≤ p ≤ 1`.
pub fn binary_entropy(p: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&p),
        "binary entropy of {p}, which is not a probability"
    );
    -plogp(p) - plogp(1.0 - p)
}

/// A finite probability distribution over outcomes `0..len`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityDistribution {
    weights: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Weights must lie in `[0, 1]` and sum to 1 within [`VECTOR_TOL`].
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights, VECTOR_TOL)?;
        Ok(ProbabilityDistribution { weights })
    }

    /// Accepts weights whose total is within `1e-10` of 1 and rescales them
    /// to sum to 1. Used for Born probabilities accumulated over many
    /// amplitudes.
    pub(crate) fn renormalized(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights, super::MATRIX_TOL)?;
        let total: f64 = weights.iter().sum();
        Ok(ProbabilityDistribution {
            weights: weights.into_iter().map(|w| w / total).collect(),
        })
    }

    pub fn uniform(len: usize) -> Self {
        assert!(len > 0);
        ProbabilityDistribution {
            weights: vec![1.0 / len as f64; len],
        }
    }

    /// Empirical distribution from counts.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("all counts are zero".into()));
        }
        Ok(ProbabilityDistribution {
            weights: counts.iter().map(|&c| c as f64 / total as f64).collect(),
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.weights.iter().filter(|&&w| w > 0.0).count()
    }

    /// Inverse-CDF sampling with `u ∈ (0, 1]`: returns the first outcome whose
    /// cumulative weight reaches `u`. Zero-weight outcomes are never
    /// returned.
    pub fn sample(&self, rng: &mut RngStream) -> usize {
        let u = rng.unit_open_closed();
        let mut cum = 0.0;
        let mut last_positive = 0;
        for (i, &w) in self.weights.iter().enumerate() {
            if w > 0.0 {
                cum += w;
                last_positive = i;
                if u <= cum {
                    return i;
                }
            }
        }
        last_positive
    }
}

fn validate_weights(weights: &[f64], tol: f64) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidDistribution("no outcomes".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
        return Err(Error::InvalidDistribution(format!(
            "weight {w} outside [0, 1]"
        )));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(Error::InvalidDistribution(format!(
            "weights sum to {total}"
        )));
    }
    Ok(())
}

/// Shannon entropy in bits.
pub fn shannon_entropy(d: &ProbabilityDistribution) -> f64 {
    -d.weights.iter().map(|&p| plogp(p)).sum::<f64>()
}

/// A joint distribution of `(X, M)` stored sparsely as `(x, m) → p`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    entries: BTreeMap<(u64, u64), f64>,
}

impl JointDistribution {
    /// Entries with the same `(x, m)` key are summed. Weights must be
    /// nonnegative and total 1 within `1e-12`.
    pub fn new<I: IntoIterator<Item = ((u64, u64), f64)>>(entries: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (key, w) in entries {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidDistribution(format!(
                    "weight {w} outside [0, 1]"
                )));
            }
            *map.entry(key).or_insert(0.0) += w;
        }
        let weights: Vec<f64> = map.values().copied().collect();
        validate_weights(&weights, VECTOR_TOL)?;
        Ok(JointDistribution { entries: map })
    }

    /// Empirical joint distribution from occurrence counts.
    pub fn from_counts(counts: &BTreeMap<(u64, u64), u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("all counts are zero".into()));
        }
        Ok(JointDistribution {
            entries: counts
                .iter()
                .filter(|(_, &c)| c > 0)
                .map(|(&k, &c)| (k, c as f64 / total as f64))
                .collect(),
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u64, u64), &f64)> {
        self.entries.iter()
    }

    /// Marginal of `M`, keyed by message.
    pub fn message_marginal(&self) -> BTreeMap<u64, f64> {
        let mut out = BTreeMap::new();
        for (&(_, m), &p) in &self.entries {
            *out.entry(m).or_insert(0.0) += p;
        }
        out
    }

    /// `H(X, M)`.
    pub fn joint_entropy(&self) -> f64 {
        -self.entries.values().map(|&p| plogp(p)).sum::<f64>()
    }

    /// `H(M)`.
    pub fn message_entropy(&self) -> f64 {
        -self
            .message_marginal()
            .values()
            .map(|&p| plogp(p))
            .sum::<f64>()
    }
}

/// `H(X|M) = Σ_m p(m) H(X | M = m)`.
pub fn conditional_entropy(joint: &JointDistribution) -> f64 {
    let marginal = joint.message_marginal();
    let mut by_message: BTreeMap<u64, f64> = BTreeMap::new();
    for (&(_, m), &p) in &joint.entries {
        let pm = marginal[&m];
        if p > 0.0 {
            *by_message.entry(m).or_insert(0.0) -= (p / pm) * (p / pm).log2();
        }
    }
    by_message.iter().map(|(m, h)| marginal[m] * h).sum()
}

/// A 2×2 Hermitian density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2 {
    pub entries: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    /// Equal-weight mixture of the pure qubit states given by their
    /// amplitude pairs.
    pub fn equal_mixture(states: &[[Complex64; 2]]) -> Self {
        assert!(!states.is_empty());
        let w = 1.0 / states.len() as f64;
        let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
        for s in states {
            for i in 0..2 {
                for j in 0..2 {
                    entries[i][j] += s[i] * s[j].conj() * w;
                }
            }
        }
        DensityMatrix2 { entries }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let b = self.entries[0][1].norm();
        let mean = 0.5 * (a + d);
        let gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        [mean - gap, mean + gap]
    }
}

/// Von Neumann entropy `S(ρ) = −tr ρ log₂ ρ` of a qubit density matrix.
pub fn von_neumann_entropy_2x2(rho: &DensityMatrix2) -> f64 {
    rho.eigenvalues()
        .iter()
        .map(|&l| -plogp(l.clamp(0.0, 1.0)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        // cos²(π/8); golden value from a 50-digit evaluation of the closed form
        let p = (PI / 8.0).cos().powi(2);
        assert!((binary_entropy(p) - 0.600_876_036_692_856).abs() < 1e-12);
    }

    #[test]
    #[should_panic]
    fn binary_entropy_rejects_non_probabilities() {
        binary_entropy(1.5);
    }

    #[test]
    fn shannon_entropy_examples() {
        assert!((shannon_entropy(&ProbabilityDistribution::uniform(8)) - 3.0).abs() < 1e-15);
        let det = ProbabilityDistribution::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&det), 0.0);
        assert!(ProbabilityDistribution::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityDistribution::new(vec![-0.1, 1.1]).is_err());
    }

    #[test]
    fn perfectly_correlated_message_leaves_no_uncertainty() {
        let joint = JointDistribution::new((0..4).map(|x| ((x, x), 0.25))).unwrap();
        assert_eq!(conditional_entropy(&joint), 0.0);
        assert!((joint.joint_entropy() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn independent_message_leaves_full_uncertainty() {
        let joint =
            JointDistribution::new((0..4).flat_map(|x| (0..2).map(move |m| ((x, m), 0.125))))
                .unwrap();
        assert!((conditional_entropy(&joint) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn mixture_of_conjugate_pair_has_binary_entropy_spectrum() {
        let theta = PI / 4.0;
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let rho = DensityMatrix2::equal_mixture(&[
            [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        ]);
        let [lo, hi] = rho.eigenvalues();
        assert!((lo - s * s).abs() < 1e-15 && (hi - c * c).abs() < 1e-15);
        assert!((von_neumann_entropy_2x2(&rho) - binary_entropy(c * c)).abs() < 1e-14);
    }

    #[test]
    fn pure_state_has_zero_von_neumann_entropy() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho =
            DensityMatrix2::equal_mixture(&[[Complex64::new(h, 0.0), Complex64::new(0.0, h)]]);
        assert!(von_neumann_entropy_2x2(&rho).abs() < 1e-12);
    }
}
