//! Referee-mediated exclusion game harness.
//!
//! The referee draws a uniform `x ∈ {0,1}^n` and an independent uniform
//! size-`m` subset `y`. Alice sees only `x` and sends one message, and Bob
//! sees only `y` and the message and must output some `z ≠ M_y(x)`. Trial `i`
//! of a run draws all its randomness from `RngStream::new(seed).split(i)`,
//! so a parallel run reproduces a serial one exactly.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{self, CoverStrategy};
use crate::pbr::{self, restrict, BitString, SubsetY};
use crate::qcore::{conditional_entropy, JointDistribution, RngStream};
use crate::steering::{self, EAProtocolParameters, RoundOutcome, SteeringKit};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Product of conjugate-basis qubits at the critical angle.
    Quantum,
    /// Deterministic message from the greedy cover.
    ClassicalCover,
    /// Steered shared entanglement with a block index (or abort) as message.
    EntanglementAssisted,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum" => Ok(Strategy::Quantum),
            "classical_cover" | "classical-cover" | "classical" => Ok(Strategy::ClassicalCover),
            "entanglement_assisted" | "entanglement-assisted" | "ea" => {
                Ok(Strategy::EntanglementAssisted)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown strategy {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameConfig {
    pub n: usize,
    pub m: usize,
    pub strategy: Strategy,
    pub trials: u64,
    pub seed: u64,
    /// Abort budget; entanglement-assisted only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Number of shared blocks; entanglement-assisted only. Defaults to
    /// `choose_k(m/n, δ)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

impl GameConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 || self.m > self.n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= m <= n, got n={}, m={}",
                self.n, self.m
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.n > 64 {
            return Err(Error::ResourceCap {
                what: "string length",
                requested: self.n,
                cap: 64,
            });
        }
        let ea = self.strategy == Strategy::EntanglementAssisted;
        if !ea && (self.delta.is_some() || self.k.is_some()) {
            return Err(Error::InvalidParameter(
                "delta and k apply to the entanglement-assisted strategy only".into(),
            ));
        }
        match self.strategy {
            Strategy::Quantum | Strategy::EntanglementAssisted if self.m > pbr::MAX_QUBITS => {
                Err(Error::ResourceCap {
                    what: "qubit count",
                    requested: self.m,
                    cap: pbr::MAX_QUBITS,
                })
            }
            Strategy::ClassicalCover if self.n > classical::MAX_COVER_N => {
                Err(Error::ResourceCap {
                    what: "string length for cover construction",
                    requested: self.n,
                    cap: classical::MAX_COVER_N,
                })
            }
            Strategy::EntanglementAssisted => {
                let delta = self.delta.ok_or_else(|| {
                    Error::InvalidParameter("entanglement-assisted play needs delta".into())
                })?;
                match self.k {
                    Some(k) => EAProtocolParameters::new(self.n, self.m, k, delta).map(|_| ()),
                    None => EAProtocolParameters::with_chosen_k(self.n, self.m, delta).map(|_| ()),
                }
            }
            _ => Ok(()),
        }
    }
}

/// Alice's message as recorded in a transcript.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Message {
    /// `n` qubits in `⊗ψ_{x_i}(θ)`; recorded as a descriptor, not amplitudes.
    Quantum {
        qubits: usize,
        theta: f64,
    },
    Classical {
        a: BitString,
    },
    SetIndex {
        index: u32,
    },
    Abort,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Transcript {
    pub trial: u64,
    pub x: BitString,
    pub y: SubsetY,
    pub message: Message,
    pub answer: Option<BitString>,
    pub aborted: bool,
    /// `None` for aborted rounds.
    pub won: Option<bool>,
}

/// Uniform `x` and an independent uniform size-`m` subset.
pub fn referee_draw(n: usize, m: usize, rng: &mut RngStream) -> (BitString, SubsetY) {
    let x = BitString::random(n, rng);
    let y = SubsetY::random(n, m, rng);
    (x, y)
}

/// Message size per round.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MessageBits {
    /// Qubits (quantum) or bits.
    pub primary: f64,
    pub unit: &'static str,
    /// Entanglement-assisted only: `⌈log₂(k+1)⌉` with a separate abort symbol.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub with_abort_symbol: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStatistics {
    pub trials: u64,
    pub wins: u64,
    pub losses: u64,
    pub aborts: u64,
    /// Wins over non-aborted trials; `None` if every trial aborted.
    pub win_rate: Option<f64>,
    pub abort_rate: f64,
    pub message_bits: MessageBits,
    /// Plug-in `H(X|M)` over the realized `(x, message)` pairs; classical only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_conditional_entropy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

impl RunStatistics {
    pub fn zero_error(&self) -> bool {
        self.losses == 0
    }
}

/// Exact counters for a batch of transcripts. Merging is associative and
/// commutative, so any partition of the trials gives the same totals.
#[derive(Clone, Debug, Default, PartialEq)]
struct Tally {
    trials: u64,
    wins: u64,
    losses: u64,
    aborts: u64,
    pairs: BTreeMap<(u64, u64), u64>,
}

impl Tally {
    fn record(mut self, t: &Transcript, pair: Option<(u64, u64)>) -> Self {
        self.trials += 1;
        match t.won {
            Some(true) => self.wins += 1,
            Some(false) => self.losses += 1,
            None => self.aborts += 1,
        }
        if let Some(p) = pair {
            *self.pairs.entry(p).or_default() += 1;
        }
        self
    }

    fn merge(mut self, other: Tally) -> Self {
        self.trials += other.trials;
        self.wins += other.wins;
        self.losses += other.losses;
        self.aborts += other.aborts;
        for (k, v) in other.pairs {
            *self.pairs.entry(k).or_default() += v;
        }
        self
    }
}

enum Prepared {
    Quantum {
        theta: f64,
    },
    Classical {
        cover: CoverStrategy,
    },
    Steering {
        params: EAProtocolParameters,
        kit: Box<SteeringKit>,
    },
}

/// A validated configuration with its strategy-specific data built.
pub struct Game {
    config: GameConfig,
    prepared: Prepared,
}

impl Game {
    pub fn new(config: GameConfig) -> Result<Self> {
        config.validate()?;
        let prepared = match config.strategy {
            Strategy::Quantum => Prepared::Quantum {
                theta: pbr::theta(config.m)?,
            },
            Strategy::ClassicalCover => Prepared::Classical {
                cover: classical::build_cover_strategy(config.n, config.m)?,
            },
            Strategy::EntanglementAssisted => {
                let delta = config.delta.expect("validated");
                let params = match config.k {
                    Some(k) => EAProtocolParameters::new(config.n, config.m, k, delta)?,
                    None => EAProtocolParameters::with_chosen_k(config.n, config.m, delta)?,
                };
                Prepared::Steering {
                    params,
                    kit: Box::new(steering::build_kit(config.m)?),
                }
            }
        };
        Ok(Game { config, prepared })
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    /// Number of shared blocks, for entanglement-assisted play.
    pub fn k(&self) -> Option<u32> {
        match &self.prepared {
            Prepared::Steering { params, .. } => Some(params.k),
            _ => None,
        }
    }

    pub fn cover(&self) -> Option<&CoverStrategy> {
        match &self.prepared {
            Prepared::Classical { cover } => Some(cover),
            _ => None,
        }
    }

    pub fn message_bits(&self) -> MessageBits {
        match &self.prepared {
            Prepared::Quantum { .. } => MessageBits {
                primary: self.config.n as f64,
                unit: "qubits",
                with_abort_symbol: None,
            },
            Prepared::Classical { .. } => MessageBits {
                primary: self.config.n as f64,
                unit: "bits",
                with_abort_symbol: None,
            },
            Prepared::Steering { params, .. } => MessageBits {
                primary: params.message_bits(),
                unit: "bits",
                with_abort_symbol: Some(params.message_bits_with_abort()),
            },
        }
    }

    /// Plays one round for the given input pair.
    pub fn play(
        &self,
        x: BitString,
        y: SubsetY,
        trial: u64,
        rng: &RngStream,
    ) -> Result<Transcript> {
        let n = self.config.n;
        let (message, answer) = match &self.prepared {
            Prepared::Quantum { theta } => {
                // Bob only ever holds the qubits selected by y
                let local = pbr::psi_product(&restrict(&x, &y)?, *theta, pbr::MAX_QUBITS)?;
                let answer = pbr::bob_exclude(&local, &mut rng.named("bob"));
                (
                    Message::Quantum {
                        qubits: n,
                        theta: *theta,
                    },
                    Some(answer),
                )
            }
            Prepared::Classical { cover } => {
                let a = cover.message_for(&x).clone();
                let answer = restrict(&a, &y)?;
                (Message::Classical { a }, Some(answer))
            }
            Prepared::Steering { params, kit } => {
                match steering::run_steering_round(params, kit, &x, &rng.named("alice"))? {
                    RoundOutcome::Abort => (Message::Abort, None),
                    RoundOutcome::Steered {
                        set_index,
                        bob_states,
                    } => {
                        let answer =
                            steering::bob_exclude_steered(&bob_states, &y, &mut rng.named("bob"))?;
                        (Message::SetIndex { index: set_index }, Some(answer))
                    }
                }
            }
        };
        let won = match &answer {
            Some(z) => Some(z != &restrict(&x, &y)?),
            None => None,
        };
        Ok(Transcript {
            trial,
            x,
            y,
            message,
            aborted: answer.is_none(),
            answer,
            won,
        })
    }

    /// Referee draw and play with a trial's own stream.
    pub fn run_trial(&self, trial: u64, stream: &RngStream) -> Result<Transcript> {
        let (x, y) = referee_draw(self.config.n, self.config.m, &mut stream.named("referee"));
        self.play(x, y, trial, stream)
    }

    /// Trial `i` of the configured run.
    pub fn transcript(&self, trial: u64) -> Result<Transcript> {
        self.run_trial(trial, &RngStream::new(self.config.seed).split(trial))
    }

    /// Transcripts for trials `range`, in trial order.
    pub fn transcripts(&self, range: std::ops::Range<u64>) -> Result<Vec<Transcript>> {
        range.into_par_iter().map(|i| self.transcript(i)).collect()
    }

    fn pair_of(&self, t: &Transcript) -> Option<(u64, u64)> {
        let cover = self.cover()?;
        Some((t.x.to_index(), cover.message_index(&t.x) as u64))
    }

    /// Runs every trial in parallel and aggregates exact counters.
    pub fn monte_carlo(&self) -> Result<RunStatistics> {
        let tally = (0..self.config.trials)
            .into_par_iter()
            .map(|i| {
                let t = self.transcript(i)?;
                Ok(Tally::default().record(&t, self.pair_of(&t)))
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
        Ok(self.statistics(tally))
    }

    /// Runs every trial in ordered batches of `batch` trials, handing each
    /// batch to `sink` before tallying it. Same statistics as
    /// [`monte_carlo`](Self::monte_carlo).
    pub fn run_batches<F>(&self, batch: u64, mut sink: F) -> Result<RunStatistics>
    where
        F: FnMut(&[Transcript]) -> Result<()>,
    {
        assert!(batch > 0, "batch size must be positive");
        let mut tally = Tally::default();
        let mut start = 0;
        while start < self.config.trials {
            let end = (start + batch).min(self.config.trials);
            let ts = self.transcripts(start..end)?;
            sink(&ts)?;
            tally = ts
                .iter()
                .fold(tally, |acc, t| acc.record(t, self.pair_of(t)));
            start = end;
        }
        Ok(self.statistics(tally))
    }

    /// Aggregates already-computed transcripts.
    pub fn statistics_of(&self, transcripts: &[Transcript]) -> RunStatistics {
        let tally = transcripts
            .iter()
            .fold(Tally::default(), |acc, t| acc.record(t, self.pair_of(t)));
        self.statistics(tally)
    }

    fn statistics(&self, tally: Tally) -> RunStatistics {
        let played = tally.trials - tally.aborts;
        let empirical_conditional_entropy = match &self.prepared {
            Prepared::Classical { .. } => Some(conditional_entropy(
                &JointDistribution::from_counts(&tally.pairs).expect("nonempty counts"),
            )),
            _ => None,
        };
        RunStatistics {
            trials: tally.trials,
            wins: tally.wins,
            losses: tally.losses,
            aborts: tally.aborts,
            win_rate: (played > 0).then(|| tally.wins as f64 / played as f64),
            abort_rate: tally.aborts as f64 / tally.trials as f64,
            message_bits: self.message_bits(),
            empirical_conditional_entropy,
            k: self.k(),
        }
    }
}

/// Convenience wrapper: validate, prepare and run.
pub fn monte_carlo(config: &GameConfig) -> Result<RunStatistics> {
    Game::new(config.clone())?.monte_carlo()
}
