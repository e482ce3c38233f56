//! Closed-form information-cost bounds.
//!
//! The classical side is governed by `γ_m = Σ_{i<m} C(n, i)`, the number of
//! strings a minimal consistent answer set leaves unexcluded: any zero-error
//! one-way classical protocol on uniform inputs reveals at least
//! `n − log₂ γ_m` bits. The quantum side is bounded by twice the entropy of
//! Alice's message, at most `n·H₂(cos²(θ_m/2))`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::pbr;
use crate::qcore::binary_entropy;
use crate::{Error, Result};

/// Largest `n` evaluated with exact big-integer arithmetic by
/// [`gamma_log2`]. Above it the log-domain path is used.
pub const EXACT_GAMMA_MAX_N: usize = 64;

/// `⌊value⌋`, snapping to the nearest integer first when `value` is within
/// floating-point noise of it (so `10000^0.75` floors to 1000, not 999).
pub fn robust_floor(value: f64) -> usize {
    let r = value.round();
    if (value - r).abs() <= 1e-9 * value.abs().max(1.0) {
        r as usize
    } else {
        value.floor() as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameParameters {
    pub n: usize,
    pub m: usize,
    pub alpha: Option<f64>,
    pub delta: Option<f64>,
}

impl GameParameters {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        let p = GameParameters {
            n,
            m,
            alpha: None,
            delta: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// `m = ⌊αn⌋`.
    pub fn from_alpha(n: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "α = {alpha} outside (0, 1]"
            )));
        }
        let p = GameParameters {
            n,
            m: robust_floor(alpha * n as f64),
            alpha: Some(alpha),
            delta: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        self.delta = Some(delta);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        validate_nm(self.n, self.m)?;
        if let Some(alpha) = self.alpha {
            if robust_floor(alpha * self.n as f64) != self.m {
                return Err(Error::InvalidParameter(format!(
                    "m = {} is not ⌊{alpha}·{}⌋",
                    self.m, self.n
                )));
            }
        }
        if let Some(delta) = self.delta {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "δ = {delta} outside (0, 1)"
                )));
            }
        }
        Ok(())
    }
}

fn validate_nm(n: usize, m: usize) -> Result<()> {
    if m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// `γ_m = Σ_{i=0}^{m−1} C(n, i)`, exactly. Limited to `n <= 64`; use
/// [`gamma_log2`] beyond that.
pub fn gamma(n: usize, m: usize) -> Result<BigUint> {
    validate_nm(n, m)?;
    if n > EXACT_GAMMA_MAX_N {
        return Err(Error::ResourceCap {
            what: "exact γ string length",
            requested: n,
            cap: EXACT_GAMMA_MAX_N,
        });
    }
    Ok(binomial_prefix_sum(n, m - 1))
}

/// `Σ_{i=0}^{top} C(n, i)` as a big integer.
fn binomial_prefix_sum(n: usize, top: usize) -> BigUint {
    let mut term = BigUint::one();
    let mut sum = BigUint::zero();
    for i in 0..=top.min(n) {
        sum += &term;
        term = term * (n - i) / (i + 1);
    }
    sum
}

fn biguint_log2(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("64 bits");
    shift as f64 + (top as f64).log2()
}

/// `log₂ γ_m` through exact integer arithmetic.
pub fn gamma_log2_exact(n: usize, m: usize) -> Result<f64> {
    Ok(biguint_log2(&gamma(n, m)?))
}

/// `log₂ γ_m` through log-gamma terms and a compensated log-sum-exp. Valid
/// for any `n`.
pub fn gamma_log2_logdomain(n: usize, m: usize) -> Result<f64> {
    validate_nm(n, m)?;
    Ok(log2_binomial_prefix_sum(n, m - 1))
}

/// `log₂ Σ_{i=0}^{top} C(n, i)` in the log domain.
fn log2_binomial_prefix_sum(n: usize, top: usize) -> f64 {
    let top = top.min(n);
    let ln_n_fact = ln_gamma(n as f64 + 1.0);
    let ln_binom = |i: usize| ln_n_fact - ln_gamma(i as f64 + 1.0) - ln_gamma((n - i) as f64 + 1.0);
    // C(n, i) is unimodal with its peak at ⌊n/2⌋
    let peak = ln_binom(top.min(n / 2));
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for i in 0..=top {
        let y = (ln_binom(i) - peak).exp() - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    (peak + sum.ln()) / std::f64::consts::LN_2
}

/// `log₂ γ_m`: exact for `n <= 64`, log-domain otherwise.
pub fn gamma_log2(n: usize, m: usize) -> Result<f64> {
    if n <= EXACT_GAMMA_MAX_N {
        gamma_log2_exact(n, m)
    } else {
        gamma_log2_logdomain(n, m)
    }
}

/// `max(0, n − log₂ γ_m)`: the information any zero-error one-way classical
/// protocol reveals on uniform inputs.
pub fn classical_ic_lower_bound(p: &GameParameters) -> Result<f64> {
    p.validate()?;
    Ok((p.n as f64 - gamma_log2(p.n, p.m)?).max(0.0))
}

/// `n·H₂(cos²(θ_m/2))`, an upper bound on the von Neumann entropy of the
/// quantum message.
pub fn quantum_message_entropy_upper(p: &GameParameters) -> Result<f64> {
    p.validate()?;
    let theta = pbr::theta(p.m)?;
    // H₂ is symmetric; sin² keeps full relative precision when θ is tiny
    let s2 = (theta / 2.0).sin().powi(2);
    Ok(p.n as f64 * binary_entropy(s2))
}

/// `2·n·H₂(cos²(θ_m/2))`.
pub fn quantum_ic_upper_bound(p: &GameParameters) -> Result<f64> {
    Ok(2.0 * quantum_message_entropy_upper(p)?)
}

/// Returns `(log₂ Σ_{i=0}^{⌊qn⌋} C(n, i), n·H₂(q))`; the first never
/// exceeds the second for `0 < q <= 1/2`.
pub fn binomial_sum_bound_check(n: usize, q: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    if !(q > 0.0 && q <= 0.5) {
        return Err(Error::InvalidParameter(format!("q = {q} outside (0, 1/2]")));
    }
    let top = robust_floor(q * n as f64);
    let lhs = if n <= EXACT_GAMMA_MAX_N {
        biguint_log2(&binomial_prefix_sum(n, top))
    } else {
        log2_binomial_prefix_sum(n, top)
    };
    Ok((lhs, n as f64 * binary_entropy(q)))
}

/// How `m` is derived from `n` when tabulating.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MRule {
    /// `m = ⌊n^exponent⌋`.
    Power { exponent: f64 },
    /// `m = ⌊αn⌋`.
    Linear { alpha: f64 },
}

impl MRule {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MRule::Power { exponent } if !(exponent > 0.0 && exponent <= 1.0) => Err(
                Error::InvalidParameter(format!("power exponent {exponent} outside (0, 1]")),
            ),
            MRule::Linear { alpha } if !(alpha > 0.0 && alpha <= 1.0) => Err(
                Error::InvalidParameter(format!("α = {alpha} outside (0, 1]")),
            ),
            _ => Ok(()),
        }
    }

    pub fn m_for(&self, n: usize) -> Result<usize> {
        self.validate()?;
        let m = match *self {
            MRule::Power { exponent } => robust_floor((n as f64).powf(exponent)),
            MRule::Linear { alpha } => robust_floor(alpha * n as f64),
        };
        validate_nm(n, m)?;
        Ok(m)
    }
}

impl std::str::FromStr for MRule {
    type Err = Error;

    /// Parses `power:<c>` or `linear:<α>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("m rule {s:?} needs kind:value")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad number in m rule {s:?}")))?;
        let rule = match kind.trim() {
            "power" => MRule::Power { exponent: value },
            "linear" => MRule::Linear { alpha: value },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown m rule {other:?} (expected power or linear)"
                )))
            }
        };
        rule.validate()?;
        Ok(rule)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: usize,
    pub m: usize,
    pub gamma_log2: f64,
    pub classical_ic_lower: f64,
    pub quantum_entropy_upper: f64,
    pub quantum_ic_upper: f64,
}

impl BoundsRow {
    pub fn compute(n: usize, m: usize) -> Result<Self> {
        let p = GameParameters::new(n, m)?;
        let quantum_entropy_upper = quantum_message_entropy_upper(&p)?;
        Ok(BoundsRow {
            n,
            m,
            gamma_log2: gamma_log2(n, m)?,
            classical_ic_lower: classical_ic_lower_bound(&p)?,
            quantum_entropy_upper,
            quantum_ic_upper: 2.0 * quantum_entropy_upper,
        })
    }
}

/// One [`BoundsRow`] per `n`, in input order.
pub fn separation_table(n_values: &[usize], rule: MRule) -> Result<Vec<BoundsRow>> {
    rule.validate()?;
    n_values
        .par_iter()
        .map(|&n| BoundsRow::compute(n, rule.m_for(n)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pascal's triangle in u128, independent of the big-integer path.
    fn pascal_gamma(n: usize, m: usize) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..n {
            let mut next = vec![1u128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row[..m].iter().sum()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(3, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(gamma(5, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(gamma(4, 3).unwrap(), BigUint::from(11u32));
        assert_eq!(gamma(10, 10).unwrap(), BigUint::from(1023u32));
        assert!(gamma(3, 0).is_err());
        assert!(gamma(3, 4).is_err());
        assert!(matches!(gamma(65, 2), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn gamma_matches_pascal_triangle() {
        for n in 1..=64 {
            for m in 1..=n {
                assert_eq!(gamma(n, m).unwrap(), BigUint::from(pascal_gamma(n, m)));
            }
        }
    }

    #[test]
    fn exact_and_log_domain_paths_agree() {
        assert_eq!(gamma_log2(3, 2).unwrap(), 2.0);
        for n in 1..=64 {
            for m in 1..=n {
                let exact = gamma_log2_exact(n, m).unwrap();
                let approx = gamma_log2_logdomain(n, m).unwrap();
                let scale = exact.abs().max(1.0);
                assert!(
                    (exact - approx).abs() <= 1e-9 * scale,
                    "n={n} m={m}: {exact} vs {approx}"
                );
            }
        }
    }

    #[test]
    fn classical_bound_examples() {
        let p = GameParameters::new(3, 2).unwrap();
        assert!((classical_ic_lower_bound(&p).unwrap() - 1.0).abs() < 1e-15);
        let full = GameParameters::new(60, 60).unwrap();
        assert!(classical_ic_lower_bound(&full).unwrap() < 1e-12);
        let p = GameParameters::new(100, 25).unwrap();
        let relaxed = 100.0 * (1.0 - binary_entropy(0.25));
        assert!((relaxed - 18.872_187_554_086_72).abs() < 1e-9);
        assert!(classical_ic_lower_bound(&p).unwrap() >= relaxed);
    }

    #[test]
    fn quantum_bound_examples() {
        let one = GameParameters::new(1, 1).unwrap();
        assert!((quantum_message_entropy_upper(&one).unwrap() - 1.0).abs() < 1e-15);
        assert!((quantum_ic_upper_bound(&one).unwrap() - 2.0).abs() < 1e-15);
        // m = 2 with n = 1 is outside 1 <= m <= n
        assert!(GameParameters::new(1, 2).is_err());
        let p = GameParameters::new(2, 2).unwrap();
        assert!(
            (quantum_message_entropy_upper(&p).unwrap() / 2.0 - 0.600_876_036_692_856).abs()
                < 1e-12
        );
        assert!((quantum_ic_upper_bound(&p).unwrap() / 2.0 - 1.201_752_073_385_712).abs() < 1e-12);
    }

    #[test]
    fn quantum_entropy_decreases_along_power_rule() {
        let mut prev = f64::INFINITY;
        for n in [10_000usize, 100_000, 1_000_000] {
            let m = MRule::Power { exponent: 0.75 }.m_for(n).unwrap();
            let v = quantum_message_entropy_upper(&GameParameters::new(n, m).unwrap()).unwrap();
            assert!(v < prev);
            prev = v;
        }
        let p = GameParameters::new(10_000, 1000).unwrap();
        assert!(quantum_message_entropy_upper(&p).unwrap() < 0.15);
    }

    #[test]
    fn quantum_entropy_matches_von_neumann_entropy_of_mixture() {
        use crate::qcore::{von_neumann_entropy_2x2, DensityMatrix2};
        use num_complex::Complex64;
        for m in [1usize, 2, 3, 8, 50] {
            let t = pbr::theta(m).unwrap();
            let (s, c) = (t / 2.0).sin_cos();
            let rho = DensityMatrix2::equal_mixture(&[
                [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            ]);
            let p = GameParameters::new(m, m).unwrap();
            let via_rho = m as f64 * von_neumann_entropy_2x2(&rho);
            assert!((quantum_message_entropy_upper(&p).unwrap() - via_rho).abs() < 1e-10);
        }
    }

    #[test]
    fn binomial_sum_examples() {
        let (lhs, rhs) = binomial_sum_bound_check(10, 0.5).unwrap();
        assert!((lhs - 638f64.log2()).abs() < 1e-12);
        assert_eq!(rhs, 10.0);
        assert_eq!(binomial_sum_bound_check(1, 0.5).unwrap(), (0.0, 1.0));
        let (lhs, rhs) = binomial_sum_bound_check(64, 0.25).unwrap();
        assert!(lhs <= rhs && (rhs - 51.921_799_965_384_5).abs() < 1e-9);
        assert!(binomial_sum_bound_check(10, 0.6).is_err());
        assert!(binomial_sum_bound_check(10, 0.0).is_err());
    }

    #[test]
    fn m_rules() {
        assert_eq!(MRule::Power { exponent: 0.75 }.m_for(10_000).unwrap(), 1000);
        assert_eq!(
            MRule::Power { exponent: 0.75 }.m_for(1_000_000).unwrap(),
            31_622
        );
        assert_eq!(MRule::Linear { alpha: 0.25 }.m_for(64).unwrap(), 16);
        assert!(MRule::Linear { alpha: 0.25 }.m_for(3).is_err());
        assert_eq!(
            "power:0.75".parse::<MRule>().unwrap(),
            MRule::Power { exponent: 0.75 }
        );
        assert!("cubic:2".parse::<MRule>().is_err());
        assert!("linear:1.5".parse::<MRule>().is_err());
        assert!(GameParameters::from_alpha(10, 0.0).is_err());
        assert_eq!(GameParameters::from_alpha(10, 0.5).unwrap().m, 5);
    }

    #[test]
    fn separation_tables() {
        let rows = separation_table(&[8, 16], MRule::Linear { alpha: 0.25 }).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[1].classical_ic_lower > rows[0].classical_ic_lower);
        for r in &rows {
            assert!((r.classical_ic_lower - (r.n as f64 - r.gamma_log2)).abs() < 1e-12);
            assert_eq!(r.quantum_ic_upper, 2.0 * r.quantum_entropy_upper);
        }
        let row = BoundsRow::compute(3, 2).unwrap();
        assert!((row.classical_ic_lower - 1.0).abs() < 1e-15);
        let h = binary_entropy((std::f64::consts::PI / 8.0).cos().powi(2));
        assert!((row.quantum_ic_upper - 2.0 * 3.0 * h).abs() < 1e-12);
        assert!(separation_table(&[], MRule::Linear { alpha: 0.25 })
            .unwrap()
            .is_empty());
        assert!(separation_table(&[8], MRule::Linear { alpha: 2.0 }).is_err());
    }
}
