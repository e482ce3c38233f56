//! Entanglement-assisted exclusion through remote state preparation.
//!
//! Alice and Bob share `k` blocks of `n` copies of the two-qubit state
//! `|Φ⟩ = a₀|00⟩ + a₁|11⟩`. For each bit `x_i` Alice measures her half with
//! `S` (bit 0) or `R` (bit 1). Outcome 0 steers Bob's half to `ψ_{x_i}(θ_m)`;
//! outcome 1 steers it to `|−⟩` or `|+⟩`. If some block comes out all zeros
//! Alice sends its index and Bob runs the ordinary exclusion measurement on
//! it; otherwise she aborts. Every outcome-0 probability is `1/(1+sin θ_m)`,
//! so a whole block succeeds with probability at least `4^{−1/α}` when
//! `m = αn`, and a constant number of blocks keeps the abort rate below `δ`.

use num_complex::Complex64;
use serde::Serialize;

use crate::pbr::{self, BitString};
use crate::qcore::{ProbabilityDistribution, RankOneMeasurement, RngStream, StateVector};
use crate::{Error, Result};

/// The shared pair, Alice's two measurements and the resulting branches.
#[derive(Clone, Debug)]
pub struct SteeringKit {
    theta: f64,
    phi_ab: StateVector,
    meas_s: RankOneMeasurement,
    meas_r: RankOneMeasurement,
    /// `branches[bit][outcome]`: probability and Bob's post-state.
    branches: [[(f64, StateVector); 2]; 2],
}

/// Amplitudes `(a₀, a₁)` of `|Φ⟩` on `|00⟩` and `|11⟩`.
pub fn phi_coefficients(theta: f64) -> (f64, f64) {
    let c = theta.cos() / (1.0 + theta.sin());
    ((0.5 * (1.0 + c)).sqrt(), (0.5 * (1.0 - c)).sqrt())
}

/// Bob's unnormalized state after Alice's qubit (the most significant one)
/// is projected onto `v`.
fn bob_branch(phi: &StateVector, v: &StateVector) -> Vec<Complex64> {
    let a = phi.amplitudes();
    let u = v.amplitudes();
    (0..2)
        .map(|j| u[0].conj() * a[j] + u[1].conj() * a[2 + j])
        .collect()
}

fn branch(phi: &StateVector, v: &StateVector) -> Result<(f64, StateVector)> {
    let amps = bob_branch(phi, v);
    let prob = amps.iter().map(|c| c.norm_sqr()).sum();
    Ok((prob, StateVector::normalized(amps)?))
}

/// Builds the kit for the critical angle `θ_m`.
pub fn build_kit(m: usize) -> Result<SteeringKit> {
    let theta = pbr::theta(m)?;
    let (a0, a1) = phi_coefficients(theta);
    let phi_ab = StateVector::from_real(&[a0, 0.0, 0.0, a1])?;
    let real = |v: [f64; 2]| StateVector::from_real(&v);
    let meas_s = RankOneMeasurement::new(vec![real([a0, a1])?, real([a1, -a0])?], vec![0, 1])?;
    let meas_r = RankOneMeasurement::new(vec![real([a0, -a1])?, real([a1, a0])?], vec![0, 1])?;
    let branches = [
        [
            branch(&phi_ab, meas_s.vector(0))?,
            branch(&phi_ab, meas_s.vector(1))?,
        ],
        [
            branch(&phi_ab, meas_r.vector(0))?,
            branch(&phi_ab, meas_r.vector(1))?,
        ],
    ];
    Ok(SteeringKit {
        theta,
        phi_ab,
        meas_s,
        meas_r,
        branches,
    })
}

impl SteeringKit {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi_ab(&self) -> &StateVector {
        &self.phi_ab
    }

    pub fn meas_s(&self) -> &RankOneMeasurement {
        &self.meas_s
    }

    pub fn meas_r(&self) -> &RankOneMeasurement {
        &self.meas_r
    }

    /// Alice's measurement for input bit `bit`.
    pub fn measurement(&self, bit: u8) -> &RankOneMeasurement {
        if bit == 0 {
            &self.meas_s
        } else {
            &self.meas_r
        }
    }

    /// Intended post-state: `ψ_bit(θ)` on outcome 0, `|−⟩`/`|+⟩` on outcome 1.
    pub fn target(&self, bit: u8, outcome: u8) -> StateVector {
        match (bit, outcome) {
            (b, 0) => pbr::psi(b, self.theta),
            (0, _) => StateVector::minus(),
            _ => StateVector::plus(),
        }
    }

    /// Exact probability of `outcome` and Bob's resulting state.
    pub fn branch(&self, bit: u8, outcome: u8) -> (f64, &StateVector) {
        let (p, ref s) = self.branches[usize::from(bit)][usize::from(outcome)];
        (p, s)
    }
}

/// Alice measures one pair for input `bit`; returns her outcome and Bob's
/// post-measurement state.
pub fn steer_one(kit: &SteeringKit, bit: u8, rng: &mut RngStream) -> (u8, StateVector) {
    assert!(bit <= 1, "steer_one takes a bit");
    let [(p0, s0), (p1, s1)] = &kit.branches[usize::from(bit)];
    let dist = ProbabilityDistribution::renormalized(vec![*p0, *p1])
        .expect("branch probabilities sum to one");
    if dist.sample(rng) == 0 {
        (0, s0.clone())
    } else {
        (1, s1.clone())
    }
}

/// `P_steer = 1/(1 + sin θ_m)`.
pub fn p_steer(m: usize) -> Result<f64> {
    Ok(1.0 / (1.0 + pbr::theta(m)?.sin()))
}

/// `P_steer^n`, evaluated as `exp(n·ln P_steer)`.
pub fn p_global_steer(n: usize, m: usize) -> Result<f64> {
    Ok((n as f64 * p_steer(m)?.ln()).exp())
}

/// `(1 + 2^{(m−2)/m} − 2^{(m−1)/m})^n`, the same quantity with θ eliminated.
pub fn p_global_steer_closed_form(n: usize, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m = m as f64;
    let per_pair = 1.0 + 2f64.powf((m - 2.0) / m) - 2f64.powf((m - 1.0) / m);
    Ok((n as f64 * per_pair.ln()).exp())
}

/// `(1 − P_steer^n)^k`: every one of `k` blocks has an outcome 1.
pub fn p_abort(n: usize, m: usize, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let g = p_global_steer(n, m)?;
    Ok((f64::from(k) * (-g).ln_1p()).exp())
}

/// `1 − 4^{−1/α}`, the per-block failure bound for `m = αn`.
pub fn block_failure_bound(alpha: f64) -> f64 {
    1.0 - 4f64.powf(-1.0 / alpha)
}

/// Smallest `k` with `(1 − 4^{−1/α})^k ≤ δ`. Independent of `n`.
pub fn choose_k(alpha: f64, delta: f64) -> Result<u32> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "α = {alpha} outside (0, 1]"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "δ = {delta} outside (0, 1)"
        )));
    }
    let q = block_failure_bound(alpha);
    if q <= 0.0 {
        return Ok(1);
    }
    let estimate = (delta.ln() / q.ln()).ceil().max(1.0);
    if estimate > f64::from(u32::MAX / 2) {
        return Err(Error::InvalidParameter(format!(
            "α = {alpha}, δ = {delta} needs more than 2^31 blocks"
        )));
    }
    // correct the float estimate against the defining inequality
    let mut k = estimate as u32;
    while k > 1 && q.powi(k as i32 - 1) <= delta {
        k -= 1;
    }
    while q.powi(k as i32) > delta {
        k += 1;
    }
    Ok(k)
}

/// Parameters of the entanglement-assisted protocol.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EAProtocolParameters {
    pub n: usize,
    pub m: usize,
    pub k: u32,
    pub delta: f64,
}

impl EAProtocolParameters {
    pub fn new(n: usize, m: usize, k: u32, delta: f64) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= m <= n, got n={n}, m={m}"
            )));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "δ = {delta} outside (0, 1)"
            )));
        }
        Ok(EAProtocolParameters { n, m, k, delta })
    }

    /// `k = choose_k(m/n, δ)`.
    pub fn with_chosen_k(n: usize, m: usize, delta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let k = choose_k(m as f64 / n as f64, delta)?;
        Self::new(n, m, k, delta)
    }

    /// Bits for a set index as counted in the protocol analysis, `log₂ k`.
    pub fn message_bits(&self) -> f64 {
        f64::from(self.k).log2()
    }

    /// Bits for an alphabet of `k` indices plus one abort symbol,
    /// `⌈log₂(k+1)⌉`.
    pub fn message_bits_with_abort(&self) -> u32 {
        (self.k + 1).next_power_of_two().trailing_zeros()
    }

    pub fn p_abort(&self) -> Result<f64> {
        p_abort(self.n, self.m, self.k)
    }
}

/// What Alice sends after steering.
#[derive(Clone, Debug, PartialEq)]
pub enum RoundOutcome {
    /// Index (from 0) of the first block whose outcomes were all 0, with Bob's
    /// states from that block.
    Steered {
        set_index: u32,
        bob_states: Vec<StateVector>,
    },
    Abort,
}

impl RoundOutcome {
    pub fn is_abort(&self) -> bool {
        matches!(self, RoundOutcome::Abort)
    }
}

/// Simulates the `k × n` steering measurements for input `x`. Block `j`
/// draws from `rng.split(j)`; a block stops at its first outcome 1, and the
/// round stops at the first all-zero block.
pub fn run_steering_round(
    params: &EAProtocolParameters,
    kit: &SteeringKit,
    x: &BitString,
    rng: &RngStream,
) -> Result<RoundOutcome> {
    if x.len() != params.n {
        return Err(Error::InvalidParameter(format!(
            "input has {} bits, protocol expects {}",
            x.len(),
            params.n
        )));
    }
    'blocks: for j in 0..params.k {
        let mut stream = rng.split(u64::from(j));
        let mut bob_states = Vec::with_capacity(params.n);
        for &bit in x.bits() {
            let (outcome, state) = steer_one(kit, bit, &mut stream);
            if outcome == 1 {
                continue 'blocks;
            }
            bob_states.push(state);
        }
        return Ok(RoundOutcome::Steered {
            set_index: j,
            bob_states,
        });
    }
    Ok(RoundOutcome::Abort)
}

/// Bob's exclusion on a steered block: tensor the states at the positions of
/// `y` and measure.
pub fn bob_exclude_steered(
    bob_states: &[StateVector],
    y: &crate::pbr::SubsetY,
    rng: &mut RngStream,
) -> Result<BitString> {
    if y.len() > pbr::MAX_QUBITS {
        return Err(Error::ResourceCap {
            what: "qubit count",
            requested: y.len(),
            cap: pbr::MAX_QUBITS,
        });
    }
    let mut state = bob_states[y.indices()[0] - 1].clone();
    for &i in &y.indices()[1..] {
        state = state.tensor(&bob_states[i - 1]);
    }
    Ok(pbr::bob_exclude(&state, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::robust_floor;
    use crate::pbr::{restrict, SubsetY};
    use crate::qcore::inner_product;

    const TOL: f64 = 1e-12;

    #[test]
    fn kit_state_and_measurements() {
        for m in 1..=64 {
            let kit = build_kit(m).unwrap();
            assert!((kit.phi_ab().norm() - 1.0).abs() < TOL);
            for meas in [kit.meas_s(), kit.meas_r()] {
                assert!(inner_product(meas.vector(0), meas.vector(1)).norm() < TOL);
                assert!(meas.completeness_residual() < 1e-10);
            }
        }
        // θ_2 = π/4
        let (a0, a1) = phi_coefficients(std::f64::consts::FRAC_PI_4);
        let c = std::f64::consts::FRAC_1_SQRT_2 / (1.0 + std::f64::consts::FRAC_1_SQRT_2);
        assert!((a0 - (0.5 * (1.0 + c)).sqrt()).abs() < TOL);
        assert!((a0 - 0.840_896_415_253_714_5).abs() < 1e-12);
        assert!((a1 - 0.541_196_100_146_197).abs() < 1e-12);
        let kit = build_kit(2).unwrap();
        assert!((kit.phi_ab().amplitudes()[0].re - a0).abs() < TOL);
        assert!(kit.phi_ab().amplitudes()[1].norm() == 0.0);
    }

    #[test]
    fn steering_identities() {
        for m in 1..=64 {
            let theta = pbr::theta(m).unwrap();
            let c = theta.cos() / (1.0 + theta.sin());
            let lhs = (1.0 + theta.sin()).sqrt() * 0.5 * (1.0 + c);
            assert!((lhs - (theta / 2.0).cos()).abs() < TOL, "m={m}");
            let (a0, a1) = phi_coefficients(theta);
            // s₁ branch: (a₁a₀, −a₀a₁) normalized
            let norm = (2.0f64).sqrt() * a0 * a1;
            assert!((a0 * a1 / norm - std::f64::consts::FRAC_1_SQRT_2).abs() < TOL);
        }
    }

    #[test]
    fn branches_hit_their_targets_exactly() {
        for m in 1..=32 {
            let kit = build_kit(m).unwrap();
            let ps = p_steer(m).unwrap();
            let theta = kit.theta();
            for bit in 0..=1 {
                let (p0, s0) = kit.branch(bit, 0);
                let (p1, s1) = kit.branch(bit, 1);
                assert!((p0 - ps).abs() < TOL, "m={m}");
                assert!(
                    (p1 - theta.sin() / (1.0 + theta.sin())).abs() < TOL,
                    "m={m}"
                );
                assert!((s0.fidelity(&kit.target(bit, 0)) - 1.0).abs() < TOL);
                assert!((s1.fidelity(&kit.target(bit, 1)) - 1.0).abs() < TOL);
            }
        }
    }

    #[test]
    fn steer_one_examples() {
        let kit = build_kit(3).unwrap();
        let mut rng = RngStream::new(77);
        let trials = 100_000;
        let mut zeros = 0;
        for _ in 0..trials {
            let (o, s) = steer_one(&kit, 0, &mut rng);
            if o == 0 {
                zeros += 1;
                assert!((s.fidelity(&pbr::psi(0, kit.theta())) - 1.0).abs() < TOL);
            } else {
                assert!((s.fidelity(&StateVector::minus()) - 1.0).abs() < TOL);
            }
        }
        let p = p_steer(3).unwrap();
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((zeros as f64 / trials as f64 - p).abs() <= 3.0 * sigma);
        loop {
            let (o, s) = steer_one(&kit, 1, &mut rng);
            if o == 1 {
                assert!((s.fidelity(&StateVector::plus()) - 1.0).abs() < TOL);
                break;
            }
        }
    }

    #[test]
    fn steering_probabilities() {
        assert!((p_steer(1).unwrap() - 0.5).abs() < TOL);
        assert!((p_steer(2).unwrap() - 1.0 / (1.0 + 0.5f64.sqrt())).abs() < TOL);
        assert!((p_steer(2).unwrap() - 0.585_786_437_626_905).abs() < 1e-12);
        let mut prev = 0.0;
        for m in 1..200 {
            let p = p_steer(m).unwrap();
            assert!(p > prev && p < 1.0);
            prev = p;
        }
        assert!((p_global_steer(1, 1).unwrap() - 0.5).abs() < TOL);
    }

    #[test]
    fn closed_form_agrees() {
        for m in 1..=64 {
            for n in [m, 2 * m, 10 * m] {
                let a = p_global_steer(n, m).unwrap();
                let b = p_global_steer_closed_form(n, m).unwrap();
                assert!((a - b).abs() <= 1e-12 * a, "n={n} m={m}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn global_steer_limits() {
        let mut prev = 1.0;
        for n in [10, 100, 1000] {
            let p = p_global_steer(n, n).unwrap();
            assert!(p >= 0.25 && p < prev);
            prev = p;
            assert!(p_global_steer(n, n / 2).unwrap() >= 0.0625);
        }
        assert!((p_global_steer(1_000_000, 1_000_000).unwrap() - 0.25).abs() < 1e-5);
    }

    #[test]
    fn global_steer_bound_for_exact_fractions() {
        // m = αn exactly
        for (alpha, step) in [(0.25, 4), (0.5, 2), (1.0, 1)] {
            let bound = 4f64.powf(-1.0 / alpha);
            let mut prev = 1.0;
            let mut n = step;
            while n <= 100_000 {
                let p = p_global_steer(n, robust_floor(alpha * n as f64)).unwrap();
                assert!(p >= bound - 1e-12, "α={alpha} n={n}: {p} < {bound}");
                assert!(p <= prev + 1e-15);
                prev = p;
                n = if n < 1000 { n + step } else { n * 2 };
            }
        }
    }

    #[test]
    fn floor_rounding_can_break_the_global_bound() {
        // m = ⌊n/4⌋ with n not a multiple of 4 leaves fewer qubits per pair
        let p = p_global_steer(11, 2).unwrap();
        assert!(p < 4f64.powi(-4));
    }

    #[test]
    fn abort_probability() {
        assert!((p_abort(1, 1, 1).unwrap() - 0.5).abs() < TOL);
        assert!(p_abort(100, 100, 11).unwrap() <= 0.75f64.powi(11));
        let mut prev = 1.0;
        for k in 1..50 {
            let p = p_abort(20, 7, k).unwrap();
            assert!(p < prev);
            prev = p;
        }
        assert!(p_abort(3, 1, 0).is_err());
    }

    #[test]
    fn choose_k_examples() {
        assert_eq!(choose_k(1.0, 0.05).unwrap(), 11);
        assert_eq!(choose_k(1.0, 0.75).unwrap(), 1);
        assert_eq!(choose_k(0.5, 0.5).unwrap(), 11);
        assert!(choose_k(0.0, 0.5).is_err());
        assert!(choose_k(0.5, 1.0).is_err());
        // minimality by direct iteration
        for alpha in [0.1, 0.25, 0.5, 0.75, 1.0] {
            for delta in [1e-6, 0.01, 0.05, 0.3, 0.9] {
                let q = block_failure_bound(alpha);
                let k = choose_k(alpha, delta).unwrap();
                let direct = (1..).find(|&k| q.powi(k) <= delta).unwrap() as u32;
                assert_eq!(k, direct);
            }
        }
    }

    #[test]
    fn abort_budget_is_independent_of_n() {
        for alpha in [0.25, 0.5, 1.0] {
            for delta in [0.01, 0.05, 0.2] {
                let k = choose_k(alpha, delta).unwrap();
                for n in [4, 8, 16, 64, 256, 1024, 4096, 65536] {
                    let m = robust_floor(alpha * n as f64);
                    assert!(
                        p_abort(n, m, k).unwrap() <= delta,
                        "α={alpha} δ={delta} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn message_accounting() {
        let p = EAProtocolParameters::new(8, 8, 11, 0.05).unwrap();
        assert!((p.message_bits() - 11f64.log2()).abs() < TOL);
        assert_eq!(p.message_bits_with_abort(), 4);
        assert_eq!(
            EAProtocolParameters::new(8, 8, 1, 0.05)
                .unwrap()
                .message_bits_with_abort(),
            1
        );
        assert_eq!(
            EAProtocolParameters::new(8, 8, 7, 0.05)
                .unwrap()
                .message_bits_with_abort(),
            3
        );
        assert_eq!(
            EAProtocolParameters::with_chosen_k(8, 8, 0.05).unwrap().k,
            11
        );
        assert!(EAProtocolParameters::new(3, 4, 1, 0.05).is_err());
    }

    #[test]
    fn single_pair_round_aborts_half_the_time() {
        let params = EAProtocolParameters::new(1, 1, 1, 0.5).unwrap();
        let kit = build_kit(1).unwrap();
        let root = RngStream::new(5);
        let trials = 10_000;
        let aborts = (0..trials)
            .filter(|&t| {
                run_steering_round(&params, &kit, &BitString::zeros(1), &root.split(t))
                    .unwrap()
                    .is_abort()
            })
            .count();
        let sigma = (0.25 / trials as f64).sqrt();
        assert!((aborts as f64 / trials as f64 - 0.5).abs() <= 3.0 * sigma);
    }

    #[test]
    fn rounds_steer_to_the_encoded_states() {
        let params = EAProtocolParameters::with_chosen_k(8, 4, 0.05).unwrap();
        let kit = build_kit(4).unwrap();
        let root = RngStream::new(9);
        let trials = 10_000;
        let mut aborts = 0;
        for t in 0..trials {
            let mut rng = root.split(t);
            let x = BitString::random(8, &mut rng);
            match run_steering_round(&params, &kit, &x, &rng.named("steer")).unwrap() {
                RoundOutcome::Abort => aborts += 1,
                RoundOutcome::Steered {
                    set_index,
                    bob_states,
                } => {
                    assert!(set_index < params.k);
                    for (s, &b) in bob_states.iter().zip(x.bits()) {
                        assert!((s.fidelity(&pbr::psi(b, kit.theta())) - 1.0).abs() < TOL);
                    }
                }
            }
        }
        let d = params.delta;
        let rate = aborts as f64 / trials as f64;
        assert!(
            rate <= d + 3.0 * (d * (1.0 - d) / trials as f64).sqrt(),
            "{rate}"
        );
        assert!(run_steering_round(&params, &kit, &BitString::zeros(3), &root).is_err());
    }

    #[test]
    fn rounds_are_deterministic() {
        let params = EAProtocolParameters::new(6, 3, 4, 0.1).unwrap();
        let kit = build_kit(3).unwrap();
        let x: BitString = "011010".parse().unwrap();
        let a = run_steering_round(&params, &kit, &x, &RngStream::new(3)).unwrap();
        let b = run_steering_round(&params, &kit, &x, &RngStream::new(3)).unwrap();
        assert_eq!(a, b);
    }

    fn steered_round(
        params: &EAProtocolParameters,
        kit: &SteeringKit,
        x: &BitString,
        rng: &RngStream,
    ) -> Vec<StateVector> {
        // retry with fresh substreams until a block succeeds
        (0..)
            .find_map(
                |r| match run_steering_round(params, kit, x, &rng.split(r)).unwrap() {
                    RoundOutcome::Steered { bob_states, .. } => Some(bob_states),
                    RoundOutcome::Abort => None,
                },
            )
            .unwrap()
    }

    #[test]
    fn end_to_end_zero_error_exhaustive() {
        let root = RngStream::new(2718);
        for n in 1..=6 {
            for m in 1..=n.min(4) {
                let params = EAProtocolParameters::with_chosen_k(n, m, 0.05).unwrap();
                let kit = build_kit(m).unwrap();
                let subsets = SubsetY::all(n, m);
                for xi in 0..1u64 << n {
                    let x = BitString::from_index(xi, n);
                    let states = steered_round(&params, &kit, &x, &root.split(xi << 8 | n as u64));
                    for (yi, y) in subsets.iter().enumerate() {
                        let mut rng = root.split(xi).split(yi as u64);
                        let answer = bob_exclude_steered(&states, y, &mut rng).unwrap();
                        assert_ne!(answer, restrict(&x, y).unwrap(), "x={x} y={y}");
                    }
                }
            }
        }
    }

    #[test]
    fn end_to_end_zero_error_random() {
        let (n, m) = (10, 5);
        let params = EAProtocolParameters::with_chosen_k(n, m, 0.05).unwrap();
        let kit = build_kit(m).unwrap();
        let root = RngStream::new(31337);
        for t in 0..10_000 {
            let mut rng = root.split(t);
            let x = BitString::random(n, &mut rng);
            let y = SubsetY::random(n, m, &mut rng);
            let states = steered_round(&params, &kit, &x, &rng.named("steer"));
            let answer = bob_exclude_steered(&states, &y, &mut rng).unwrap();
            assert_ne!(answer, restrict(&x, &y).unwrap());
        }
    }
}
