//! Monte Carlo evaluation of CSS codes over binary-component channels.
//!
//! Reproducibility contract: the stream of random bits consumed by a trial
//! is a pure function of `(seed, p-index, trial-index)`, and per-point
//! statistics are commutative sums of per-trial records. Running with one
//! worker or many therefore produces identical results, byte for byte.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binmat::{BinVector, RowBasis};
use crate::construct::{adapt_self_orthogonal, code_summary, type2_matrix};
use crate::decode::{
    classify_residual_with_basis, ChannelKind, ChannelModel, CssDecoder, ResidualClass,
    DEFAULT_DAMPING, DEFAULT_MAX_ITER,
};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::harness::alist::{matrix_content_hash, read_alist_path};
use crate::quantum::{css_from_matrix, css_from_self_orthogonal, StabilizerCode};

/// Environment variable that overrides the config seed when set.
pub const SEED_ENV_VAR: &str = "EGQLDPC_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub code: CodeSelector,
    pub channel: ChannelSweep,
    pub trials: u64,
    pub seed: u64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_damping")]
    pub damping: f64,
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

fn default_damping() -> f64 {
    DEFAULT_DAMPING
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeSelector {
    Constructed { q: u64, m: u32, ell: usize },
    Alist { alist: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSweep {
    pub kind: ChannelKind,
    pub p_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub metadata: SimMetadata,
    pub points: Vec<SimPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimMetadata {
    pub seed: u64,
    pub code: String,
    /// SHA-256 over the alist serialization of the check matrix.
    pub matrix_hash: String,
    pub channel_kind: ChannelKind,
    pub trials: u64,
    pub max_iter: usize,
    pub damping: f64,
}

/// Statistics for one swept probability. A trial counts as a logical
/// failure when either error component decodes to something outside the
/// stabilizer row space; non-convergence is tracked independently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimPoint {
    pub p: f64,
    pub trials: u64,
    pub exact: u64,
    pub degenerate: u64,
    pub failures: u64,
    pub nonconverged: u64,
    /// failures / trials.
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Loads a JSON config and applies the [`SEED_ENV_VAR`] override.
pub fn load_config<P: AsRef<std::path::Path>>(path: P) -> Result<SimConfig> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg: SimConfig = serde_json::from_str(&text)?;
    if let Ok(seed) = std::env::var(SEED_ENV_VAR) {
        cfg.seed = seed
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("{SEED_ENV_VAR}={seed} is not a u64")))?;
    }
    Ok(cfg)
}

/// Builds the stabilizer code a config points at, plus a description string.
pub fn resolve_code(selector: &CodeSelector) -> Result<(StabilizerCode, String)> {
    match selector {
        CodeSelector::Constructed { q, m, ell } => {
            let spec = code_summary(*q, *m, *ell)?;
            let geometry = Geometry::new(*m, *q)?;
            let adapted = adapt_self_orthogonal(&type2_matrix(&geometry, *ell)?)?;
            let code = css_from_self_orthogonal(&adapted.matrix, &spec)?;
            Ok((code, format!("EG(m={m},q={q}) ell={ell}")))
        }
        CodeSelector::Alist { alist } => {
            let matrix = read_alist_path(alist)?;
            let code = css_from_matrix(&matrix, None)?;
            Ok((code, format!("alist:{alist}")))
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Counters {
    exact: u64,
    degenerate: u64,
    failures: u64,
    nonconverged: u64,
}

impl Counters {
    fn merge(self, other: Counters) -> Counters {
        Counters {
            exact: self.exact + other.exact,
            degenerate: self.degenerate + other.degenerate,
            failures: self.failures + other.failures,
            nonconverged: self.nonconverged + other.nonconverged,
        }
    }
}

/// 95% Wilson score interval for `k` successes out of `n`.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959963984540054;
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn validate(cfg: &SimConfig) -> Result<()> {
    if cfg.trials < 1 {
        return Err(Error::InvalidConfig("trials must be >= 1".into()));
    }
    if cfg.channel.p_values.is_empty() {
        return Ok(());
    }
    let increasing = cfg
        .channel
        .p_values
        .windows(2)
        .all(|w| w[0] < w[1]);
    if !increasing {
        return Err(Error::InvalidConfig(
            "p values must be strictly increasing".into(),
        ));
    }
    for &p in &cfg.channel.p_values {
        ChannelModel::new(cfg.channel.kind, p)?;
    }
    Ok(())
}

/// Seeds a trial's generator from nothing but the triple, so any trial can
/// be replayed in isolation.
fn trial_rng(seed: u64, p_index: usize, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(p_index as u64).to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn sample_error(rng: &mut ChaCha8Rng, len: usize, flip_prob: f64) -> BinVector {
    let mut v = BinVector::zeros(len);
    for i in 0..len {
        if rng.random::<f64>() < flip_prob {
            v.set(i, true);
        }
    }
    v
}

struct TrialContext<'a> {
    code: &'a StabilizerCode,
    decoder: &'a CssDecoder,
    basis: &'a RowBasis,
    channel: ChannelModel,
    max_iter: usize,
    damping: f64,
}

fn run_one_trial(ctx: &TrialContext<'_>, rng: &mut ChaCha8Rng) -> Result<Counters> {
    let n = ctx.code.num_qubits;
    let flip = ctx.channel.marginal_flip_prob();
    // X component first, then Z; the BSC models a single classical
    // component, so its Z side stays clean.
    let error_x = sample_error(rng, n, flip);
    let error_z = match ctx.channel.kind {
        ChannelKind::Bsc => BinVector::zeros(n),
        ChannelKind::Depolarizing => sample_error(rng, n, flip),
    };
    let syndrome_z = ctx.code.hz().mul_vector(&error_x)?;
    let syndrome_x = ctx.code.hx().mul_vector(&error_z)?;
    let (x_hat, z_hat) = ctx.decoder.decode(
        &syndrome_x,
        &syndrome_z,
        &ctx.channel,
        ctx.max_iter,
        ctx.damping,
    )?;
    let class_x = classify_residual_with_basis(&error_x, &x_hat.estimate, ctx.basis)?;
    let class_z = classify_residual_with_basis(&error_z, &z_hat.estimate, ctx.basis)?;

    let mut c = Counters::default();
    if class_x == ResidualClass::LogicalFailure || class_z == ResidualClass::LogicalFailure {
        c.failures = 1;
    } else if class_x == ResidualClass::DegenerateSuccess
        || class_z == ResidualClass::DegenerateSuccess
    {
        c.degenerate = 1;
    } else {
        c.exact = 1;
    }
    if !x_hat.converged || !z_hat.converged {
        c.nonconverged = 1;
    }
    Ok(c)
}

/// Runs the full sweep. `workers` sizes the thread pool; results do not
/// depend on it.
pub fn run_trials(cfg: &SimConfig, workers: usize) -> Result<SimResult> {
    validate(cfg)?;
    let (code, code_desc) = resolve_code(&cfg.code)?;
    let matrix_hash = matrix_content_hash(code.hx());
    let decoder = CssDecoder::new(&code);
    let basis = RowBasis::new(code.hx());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;

    let mut points = Vec::with_capacity(cfg.channel.p_values.len());
    for (p_index, &p) in cfg.channel.p_values.iter().enumerate() {
        let channel = ChannelModel::new(cfg.channel.kind, p)?;
        let ctx = TrialContext {
            code: &code,
            decoder: &decoder,
            basis: &basis,
            channel,
            max_iter: cfg.max_iter,
            damping: cfg.damping,
        };
        let totals = pool.install(|| {
            (0..cfg.trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = trial_rng(cfg.seed, p_index, trial);
                    run_one_trial(&ctx, &mut rng)
                })
                .try_reduce(Counters::default, |a, b| Ok(a.merge(b)))
        })?;
        let (ci_lo, ci_hi) = wilson_interval(totals.failures, cfg.trials);
        points.push(SimPoint {
            p,
            trials: cfg.trials,
            exact: totals.exact,
            degenerate: totals.degenerate,
            failures: totals.failures,
            nonconverged: totals.nonconverged,
            rate: totals.failures as f64 / cfg.trials as f64,
            ci_lo,
            ci_hi,
        });
    }

    Ok(SimResult {
        metadata: SimMetadata {
            seed: cfg.seed,
            code: code_desc,
            matrix_hash,
            channel_kind: cfg.channel.kind,
            trials: cfg.trials,
            max_iter: cfg.max_iter,
            damping: cfg.damping,
        },
        points,
    })
}

/// Outcome of the deterministic single-error sweep: every weight-1 error on
/// either component, decoded with noiseless syndromes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub cases: usize,
    pub exact: usize,
    pub degenerate: usize,
    pub failures: usize,
    pub nonconverged: usize,
}

impl ExhaustiveReport {
    pub fn all_succeeded(&self) -> bool {
        self.failures == 0 && self.nonconverged == 0
    }
}

/// Decodes all `2 * N` single-component weight-1 errors. Deterministic: no
/// sampling involved.
pub fn exhaustive_single_error_check(
    code: &StabilizerCode,
    ch: &ChannelModel,
    max_iter: usize,
    damping: f64,
) -> Result<ExhaustiveReport> {
    let decoder = CssDecoder::new(code);
    let basis = RowBasis::new(code.hx());
    let n = code.num_qubits;
    let zero = BinVector::zeros(n);
    let mut report = ExhaustiveReport {
        cases: 2 * n,
        exact: 0,
        degenerate: 0,
        failures: 0,
        nonconverged: 0,
    };
    for component in 0..2 {
        for coord in 0..n {
            let error = BinVector::from_support(n, &[coord]);
            let (error_x, error_z) = if component == 0 {
                (error.clone(), zero.clone())
            } else {
                (zero.clone(), error.clone())
            };
            let syndrome_z = code.hz().mul_vector(&error_x)?;
            let syndrome_x = code.hx().mul_vector(&error_z)?;
            let (x_hat, z_hat) =
                decoder.decode(&syndrome_x, &syndrome_z, ch, max_iter, damping)?;
            let class_x = classify_residual_with_basis(&error_x, &x_hat.estimate, &basis)?;
            let class_z = classify_residual_with_basis(&error_z, &z_hat.estimate, &basis)?;
            match (class_x, class_z) {
                (ResidualClass::LogicalFailure, _) | (_, ResidualClass::LogicalFailure) => {
                    report.failures += 1
                }
                (ResidualClass::DegenerateSuccess, _) | (_, ResidualClass::DegenerateSuccess) => {
                    report.degenerate += 1
                }
                _ => report.exact += 1,
            }
            if !x_hat.converged || !z_hat.converged {
                report.nonconverged += 1;
            }
        }
    }
    Ok(report)
}
