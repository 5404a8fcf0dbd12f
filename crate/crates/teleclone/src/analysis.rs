//! Closed-form references and statistics: the analytic output fidelities
//! and density matrices, comparison of simulated runs against them, sweep
//! rows, and Monte Carlo success estimation.
//!
//! The closed forms here are written out independently of the simulation
//! path on purpose: agreeing on the same matrices through two unrelated
//! routes is the crate's main correctness argument.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{ProtocolEngine, ProtocolRun};
use crate::states::{random_data_state, ProtocolConfig, Scheme, ALICE, BOB};
use crate::tensor::DensityMatrix;

/// Which receiver's output to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Receiver {
    Alice,
    Bob,
}

/// The pair of analytic output fidelities
///   F_A = (1 + (D−1)p²) / (1 + (D−1)(2p² − 2p + 1)),
///   F_B = the same with p ↔ 1−p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CloningFidelities {
    pub alice: f64,
    pub bob: f64,
}

pub fn closed_form_fidelities(d: usize, p: f64) -> CloningFidelities {
    let dm1 = d as f64 - 1.0;
    let denom = 1.0 + dm1 * (2.0 * p * p - 2.0 * p + 1.0);
    CloningFidelities {
        alice: (1.0 + dm1 * p * p) / denom,
        bob: (1.0 + dm1 * (1.0 - p) * (1.0 - p)) / denom,
    }
}

/// Builds ρ_A or ρ_B directly from the closed-form matrix elements,
/// independent of any simulation:
///
///   ρ_A = (1/M) Σ_j { [2p + (D−2)p²]|α_j|² + (1−p)² } |j⟩⟨j|
///       + (1/M) [2p + (D−2)p²] Σ_{j≠k} α_j α_k^* e^{[(−1)^j + (−1)^{k+1}]iθ} |j⟩⟨k|
///
/// with M = 1 + (D−1)(2p² − 2p + 1); ρ_B swaps p ↔ 1−p.
pub fn reference_rho(
    d: usize,
    p: f64,
    theta: f64,
    alphas: &[Complex64],
    which: Receiver,
) -> Result<DensityMatrix> {
    if alphas.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "{} amplitudes for dimension {}",
            alphas.len(),
            d
        )));
    }
    let df = d as f64;
    let m = 1.0 + (df - 1.0) * (2.0 * p * p - 2.0 * p + 1.0);
    let (coupling, floor) = match which {
        Receiver::Alice => (2.0 * p + (df - 2.0) * p * p, (1.0 - p) * (1.0 - p)),
        Receiver::Bob => (
            df - 2.0 * (df - 1.0) * p + (df - 2.0) * p * p,
            p * p,
        ),
    };
    let mut matrix = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        for k in 0..d {
            let entry = if j == k {
                Complex64::new((coupling * alphas[j].norm_sqr() + floor) / m, 0.0)
            } else {
                let sign_j = if j % 2 == 0 { 1.0 } else { -1.0 };
                let sign_k1 = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
                alphas[j] * alphas[k].conj() * Complex64::cis((sign_j + sign_k1) * theta) * coupling
                    / m
            };
            matrix[j * d + k] = entry;
        }
    }
    let label = match which {
        Receiver::Alice => ALICE,
        Receiver::Bob => BOB,
    };
    DensityMatrix::new(matrix, vec![d], vec![label])
}

/// One cell of a parameter sweep: simulated versus analytic fidelities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: usize,
    pub p: f64,
    pub theta: f64,
    pub scheme: Scheme,
    #[serde(rename = "F_A_sim")]
    pub fidelity_alice_sim: f64,
    #[serde(rename = "F_B_sim")]
    pub fidelity_bob_sim: f64,
    #[serde(rename = "F_A_closed")]
    pub fidelity_alice_closed: f64,
    #[serde(rename = "F_B_closed")]
    pub fidelity_bob_closed: f64,
    pub success_prob: f64,
    pub max_abs_err: f64,
}

/// Fills a [`SweepRow`] from one successful run; errors on failure runs.
/// `success_probability` is the total success probability of the exhaustive
/// execution the run came from.
pub fn compare_run(run: &ProtocolRun, success_probability: f64) -> Result<SweepRow> {
    if !run.success {
        return Err(Error::InvalidArgument(
            "compare_run needs a success-branch run".into(),
        ));
    }
    let closed = closed_form_fidelities(run.config.dim, run.config.p);
    let f_a = run.fidelity_alice.expect("success run has fidelities");
    let f_b = run.fidelity_bob.expect("success run has fidelities");
    let max_abs_err = (f_a - closed.alice).abs().max((f_b - closed.bob).abs());
    Ok(SweepRow {
        d: run.config.dim,
        p: run.config.p,
        theta: run.config.theta,
        scheme: run.config.scheme,
        fidelity_alice_sim: f_a,
        fidelity_bob_sim: f_b,
        fidelity_alice_closed: closed.alice,
        fidelity_bob_closed: closed.bob,
        success_prob: success_probability,
        max_abs_err,
    })
}

/// Runs one sweep cell: `trials` random data states through an exhaustive
/// execution each, aggregating the worst fidelity error over every success
/// branch. Fidelities are data-independent, so the reported simulated
/// values come from the first success branch seen.
pub fn sweep_cell<R: Rng + ?Sized>(
    cfg: &ProtocolConfig,
    trials: usize,
    rng: &mut R,
) -> Result<SweepRow> {
    if trials == 0 {
        return Err(Error::InvalidArgument("sweep cell needs trials >= 1".into()));
    }
    let mut row: Option<SweepRow> = None;
    for _ in 0..trials {
        let data = random_data_state(cfg.dim, rng);
        let engine = ProtocolEngine::new(*cfg, &data)?;
        let runs = engine.runs();
        let total: f64 = runs
            .iter()
            .filter(|r| r.success)
            .map(|r| r.probability)
            .sum();
        for run in runs.iter().filter(|r| r.success) {
            let cell = compare_run(run, total)?;
            row = Some(match row.take() {
                None => cell,
                Some(mut acc) => {
                    acc.max_abs_err = acc.max_abs_err.max(cell.max_abs_err);
                    acc
                }
            });
        }
    }
    row.ok_or_else(|| Error::InvalidArgument("no success branch in sweep cell".into()))
}

/// Monte Carlo estimate of the success probability.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SuccessEstimate {
    pub trials: usize,
    pub successes: usize,
    pub frequency: f64,
    /// √(f(1−f)/trials).
    pub std_error: f64,
}

/// Frequency of success over `trials` seeded sampled runs.
pub fn monte_carlo_success(
    cfg: &ProtocolConfig,
    data: &crate::tensor::PureState,
    trials: usize,
    seed: u64,
) -> Result<SuccessEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let engine = ProtocolEngine::new(*cfg, data)?;
    let probabilities: Vec<f64> = engine.runs().iter().map(|r| r.probability).collect();
    let success_flags: Vec<bool> = engine.runs().iter().map(|r| r.success).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0usize;
    for _ in 0..trials {
        let idx = crate::bell::sample_index(&probabilities, &mut rng);
        if success_flags[idx] {
            successes += 1;
        }
    }
    let frequency = successes as f64 / trials as f64;
    Ok(SuccessEstimate {
        trials,
        successes,
        frequency,
        std_error: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
    })
}
