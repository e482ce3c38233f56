use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use exclab_core::bounds::{separation_table, BoundsRow, MRule};
use exclab_core::classical;
use exclab_core::game::{Game, GameConfig, RunStatistics, Strategy};
use exclab_core::pbr::{self, MAX_MATERIALIZED_QUBITS};
use exclab_core::qcore::inner_product;
use exclab_core::steering;

use crate::output::{self, document, emit, fmt_g12};
use crate::{Context, Failure, Format};

const OVERLAP_TOL: f64 = 1e-12;
const MATRIX_TOL: f64 = 1e-10;
const SUBCRITICAL_MIN: f64 = 1e-6;
const STEERING_TOL: f64 = 1e-12;
const MAX_STEERING_M: usize = 64;

/// CSV header of the bounds table.
pub const BOUNDS_HEADER: &str =
    "n,m,gamma_log2,classical_ic_lower,quantum_entropy_upper,quantum_ic_upper";

fn json_only(ctx: &Context, command: &str) -> Result<(), Failure> {
    match ctx.format {
        Some(Format::Csv) => Err(Failure::Usage(format!(
            "{command} writes JSON only; CSV is available for bounds"
        ))),
        _ => Ok(()),
    }
}

fn write_json<T: Serialize>(ctx: &Context, body: &T) -> Result<serde_json::Value, Failure> {
    let doc = document(body);
    emit(ctx.output.as_deref(), &output::pretty(&doc))?;
    Ok(doc)
}

fn default_m_max() -> usize {
    4
}

#[derive(Args, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPbrArgs {
    /// Largest number of qubits checked (at most 10).
    #[arg(long, default_value_t = 4)]
    #[serde(default = "default_m_max")]
    pub m_max: usize,
}

#[derive(Serialize)]
struct PbrRow {
    m: usize,
    theta: f64,
    max_forbidden_overlap: f64,
    completeness_residual: f64,
    orthogonality_residual: f64,
    /// At 0.9·θ_m; absent for m = 1.
    subcritical_max_overlap: Option<f64>,
    pass: bool,
}

fn orthogonality_residual(m: usize) -> Result<f64, Failure> {
    let meas = pbr::exclusion_measurement(m)?;
    let vs = meas.vectors();
    Ok((0..vs.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..vs.len())
                .map(|j| inner_product(&vs[i], &vs[j]).norm())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}

pub fn verify_pbr(args: &VerifyPbrArgs, ctx: &Context) -> Result<(), Failure> {
    json_only(ctx, "verify-pbr")?;
    if args.m_max == 0 || args.m_max > MAX_MATERIALIZED_QUBITS {
        return Err(Failure::Usage(format!(
            "--m-max must be in 1..={MAX_MATERIALIZED_QUBITS}, got {}",
            args.m_max
        )));
    }
    let mut rows = Vec::new();
    for m in 1..=args.m_max {
        let theta = pbr::theta(m)?;
        let max_forbidden_overlap = pbr::max_forbidden_overlap(m, theta)?;
        let completeness_residual = pbr::exclusion_measurement(m)?.completeness_residual();
        let orthogonality_residual = orthogonality_residual(m)?;
        let subcritical_max_overlap = if m >= 2 {
            Some(pbr::max_forbidden_overlap(m, 0.9 * theta)?)
        } else {
            None
        };
        let pass = max_forbidden_overlap < OVERLAP_TOL
            && completeness_residual < MATRIX_TOL
            && orthogonality_residual < MATRIX_TOL
            && subcritical_max_overlap.is_none_or(|v| v > SUBCRITICAL_MIN);
        rows.push(PbrRow {
            m,
            theta,
            max_forbidden_overlap,
            completeness_residual,
            orthogonality_residual,
            subcritical_max_overlap,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    #[derive(Serialize)]
    struct Report {
        command: &'static str,
        m_max: usize,
        overlap_tolerance: f64,
        matrix_tolerance: f64,
        subcritical_minimum: f64,
        rows: Vec<PbrRow>,
        pass: bool,
    }
    write_json(
        ctx,
        &Report {
            command: "verify-pbr",
            m_max: args.m_max,
            overlap_tolerance: OVERLAP_TOL,
            matrix_tolerance: MATRIX_TOL,
            subcritical_minimum: SUBCRITICAL_MIN,
            rows,
            pass,
        },
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Invariant(
            "exclusion measurement check failed".into(),
        ))
    }
}

fn default_rule() -> String {
    "power:0.75".into()
}

#[derive(Args, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsArgs {
    /// Comma-separated n values.
    #[arg(long = "n", value_delimiter = ',')]
    #[serde(default)]
    pub n: Vec<usize>,
    /// Powers of ten `a..b` (inclusive) appended to the n list, e.g. `3..6`.
    #[arg(long)]
    pub decades: Option<String>,
    /// `power:<c>` for m = ⌊n^c⌋ or `linear:<α>` for m = ⌊αn⌋.
    #[arg(long, default_value = "power:0.75")]
    #[serde(default = "default_rule")]
    pub rule: String,
}

fn parse_decades(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "--decades expects a..b with 0 <= a <= b <= 15, got {s:?}"
        ))
    };
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b || b > 15 {
        return Err(bad());
    }
    Ok((a..=b).map(|e| 10usize.pow(e)).collect())
}

pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from(BOUNDS_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            r.m,
            fmt_g12(r.gamma_log2),
            fmt_g12(r.classical_ic_lower),
            fmt_g12(r.quantum_entropy_upper),
            fmt_g12(r.quantum_ic_upper)
        )
        .expect("writing to a string");
    }
    out
}

pub fn bounds(args: &BoundsArgs, ctx: &Context) -> Result<(), Failure> {
    let rule: MRule = args.rule.parse()?;
    let mut n_values = args.n.clone();
    if let Some(d) = &args.decades {
        n_values.extend(parse_decades(d)?);
    }
    let rows = separation_table(&n_values, rule)?;
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => emit(ctx.output.as_deref(), &bounds_csv(&rows))?,
        Format::Json => {
            #[derive(Serialize)]
            struct Table<'a> {
                command: &'static str,
                rule: MRule,
                rows: &'a [BoundsRow],
            }
            write_json(
                ctx,
                &Table {
                    command: "bounds",
                    rule,
                    rows: &rows,
                },
            )?;
        }
    }
    Ok(())
}

fn default_trials() -> u64 {
    1000
}

#[derive(Args, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateArgs {
    /// quantum, classical_cover or entanglement_assisted.
    #[arg(long)]
    pub strategy: Strategy,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    #[serde(default = "default_trials")]
    pub trials: u64,
    /// Abort budget (entanglement-assisted only).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Shared blocks (entanglement-assisted only; default chosen from δ).
    #[arg(long)]
    pub k: Option<u32>,
    /// Also write every transcript as newline-delimited JSON.
    #[arg(long)]
    pub transcripts: Option<PathBuf>,
}

/// Trials per transcript batch, bounding memory for long runs.
const TRANSCRIPT_BATCH: u64 = 1 << 14;

pub fn simulate(args: &SimulateArgs, ctx: &Context) -> Result<(), Failure> {
    json_only(ctx, "simulate")?;
    let config = GameConfig {
        n: args.n,
        m: args.m,
        strategy: args.strategy,
        trials: args.trials,
        seed: ctx.seed,
        delta: args.delta,
        k: args.k,
    };
    let game = Game::new(config.clone())?;
    let statistics = match &args.transcripts {
        Some(path) => {
            use std::io::Write;
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            let mut io_error = None;
            let stats = game.run_batches(TRANSCRIPT_BATCH, |batch| {
                for t in batch {
                    if let Err(e) = file.write_all(output::line(&document(t)).as_bytes()) {
                        io_error.get_or_insert(e);
                    }
                }
                Ok(())
            })?;
            if let Some(e) = io_error {
                return Err(e.into());
            }
            file.flush()?;
            stats
        }
        None => game.monte_carlo()?,
    };
    let exact_conditional_entropy = match game.cover() {
        Some(cover) => Some(args.n as f64 - classical::exact_information_cost(cover)?),
        None => None,
    };
    #[derive(Serialize)]
    struct Report<'a> {
        command: &'static str,
        config: &'a GameConfig,
        #[serde(skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
        statistics: &'a RunStatistics,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact_conditional_entropy: Option<f64>,
        zero_error: bool,
    }
    write_json(
        ctx,
        &Report {
            command: "simulate",
            config: &config,
            k: game.k(),
            statistics: &statistics,
            exact_conditional_entropy,
            zero_error: statistics.zero_error(),
        },
    )?;
    if statistics.zero_error() {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "{} non-aborted trials were lost",
            statistics.losses
        )))
    }
}

#[derive(Args, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleArgs {
    pub n: usize,
    pub m: usize,
}

pub fn oracle(args: &OracleArgs, ctx: &Context) -> Result<(), Failure> {
    json_only(ctx, "oracle")?;
    let result = classical::brute_force_min_exclusion(args.n, args.m)?;
    let pass = result.matches_expected() && result.witness.consistent_source().is_some();
    #[derive(Serialize)]
    struct Report<'a> {
        command: &'static str,
        #[serde(flatten)]
        result: &'a classical::OracleResult,
        witness_consistent: bool,
        verdict: &'static str,
    }
    write_json(
        ctx,
        &Report {
            command: "oracle",
            result: &result,
            witness_consistent: result.witness.consistent_source().is_some(),
            verdict: if pass { "PASS" } else { "FAIL" },
        },
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "minimum {} differs from 2^n - gamma = {}",
            result.min_count, result.expected
        )))
    }
}

fn default_steering_m_max() -> usize {
    32
}

#[derive(Args, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteeringArgs {
    /// Largest m checked (at most 64).
    #[arg(long, default_value_t = 32)]
    #[serde(default = "default_steering_m_max")]
    pub m_max: usize,
}

#[derive(Serialize)]
struct SteeringRow {
    m: usize,
    theta: f64,
    phi_00: f64,
    phi_11: f64,
    p_steer: f64,
    /// `|1/(1+sinθ) − (1 + 2^{(m−2)/m} − 2^{(m−1)/m})|`.
    closed_form_residual: f64,
    probability_residual: f64,
    fidelity_residual: f64,
    completeness_residual: f64,
    pass: bool,
}

pub fn steering(args: &SteeringArgs, ctx: &Context) -> Result<(), Failure> {
    json_only(ctx, "steering")?;
    if args.m_max == 0 || args.m_max > MAX_STEERING_M {
        return Err(Failure::Usage(format!(
            "--m-max must be in 1..={MAX_STEERING_M}, got {}",
            args.m_max
        )));
    }
    let mut rows = Vec::new();
    for m in 1..=args.m_max {
        let kit = steering::build_kit(m)?;
        let s = kit.theta().sin();
        let expected = [1.0 / (1.0 + s), s / (1.0 + s)];
        let mut probability_residual: f64 = 0.0;
        let mut fidelity_residual: f64 = 0.0;
        for bit in 0..=1u8 {
            for outcome in 0..=1u8 {
                let (p, state) = kit.branch(bit, outcome);
                probability_residual =
                    probability_residual.max((p - expected[usize::from(outcome)]).abs());
                fidelity_residual =
                    fidelity_residual.max((1.0 - state.fidelity(&kit.target(bit, outcome))).abs());
            }
        }
        let p_steer = steering::p_steer(m)?;
        let closed = steering::p_global_steer_closed_form(1, m)?;
        let completeness_residual = kit
            .meas_s()
            .completeness_residual()
            .max(kit.meas_r().completeness_residual());
        let amps = kit.phi_ab().amplitudes();
        rows.push(SteeringRow {
            m,
            theta: kit.theta(),
            phi_00: amps[0].re,
            phi_11: amps[3].re,
            p_steer,
            closed_form_residual: (p_steer - closed).abs(),
            probability_residual,
            fidelity_residual,
            completeness_residual,
            pass: probability_residual < STEERING_TOL
                && fidelity_residual < STEERING_TOL
                && completeness_residual < MATRIX_TOL,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    #[derive(Serialize)]
    struct Report {
        command: &'static str,
        m_max: usize,
        tolerance: f64,
        rows: Vec<SteeringRow>,
        pass: bool,
    }
    write_json(
        ctx,
        &Report {
            command: "steering",
            m_max: args.m_max,
            tolerance: STEERING_TOL,
            rows,
            pass,
        },
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Invariant("steering branch check failed".into()))
    }
}

#[derive(Args, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChooseKArgs {
    /// m/n ratio in (0, 1].
    pub alpha: f64,
    /// Abort budget in (0, 1).
    pub delta: f64,
}

pub fn choose_k(args: &ChooseKArgs, ctx: &Context) -> Result<(), Failure> {
    let k = steering::choose_k(args.alpha, args.delta)?;
    match ctx.format {
        Some(Format::Csv) => Err(Failure::Usage(
            "choose-k prints an integer or JSON; CSV is available for bounds".into(),
        )),
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct Report {
                command: &'static str,
                alpha: f64,
                delta: f64,
                k: u32,
                /// `(1 − 4^{−1/α})^k`.
                abort_bound: f64,
            }
            write_json(
                ctx,
                &Report {
                    command: "choose-k",
                    alpha: args.alpha,
                    delta: args.delta,
                    k,
                    abort_bound: steering::block_failure_bound(args.alpha).powi(k as i32),
                },
            )?;
            Ok(())
        }
        None => Ok(emit(ctx.output.as_deref(), &format!("{k}\n"))?),
    }
}
