//! Protocol execution: Bell measurement on the (d, P) pair, outcome-keyed
//! corrections, and the optional joint completion that rescues every
//! failure branch.
//!
//! Outcomes with m = 0 commute with the encoded gate: a product of three
//! single-qudit phase operators V_n turns the conditional state into the
//! ideal output. Outcomes with m ≠ 0 permute the φ family and cannot be
//! undone by local phases; with `Completion::Nonlocal` a joint unitary on
//! (A, B, C) is applied instead, and the run always succeeds.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bell::{sample_index, BellBasis, MeasurementOutcome};
use crate::error::{Error, Result};
use crate::states::{
    ideal_output, phi_j, program_state, root_of_unity, sign, target_state, xi, ALICE, BOB,
    CHARLIE, DATA, PROGRAM,
};
use crate::states::{Completion, ProtocolConfig, Scheme};
use crate::tensor::{DensityMatrix, Operator, PureState};

/// What was applied to the conditional state after the outcome was known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CorrectionKind {
    /// Nothing; the run failed (or the outcome needed no correction record).
    None,
    /// The LOCC phase correction V_n on all three receivers.
    LocalPhase { n: usize },
    /// The joint completion unitary for outcome (m, n).
    NonlocalCompletion { m: usize, n: usize },
}

impl std::fmt::Display for CorrectionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorrectionKind::None => write!(f, "none"),
            CorrectionKind::LocalPhase { n } => write!(f, "local phase (n = {n})"),
            CorrectionKind::NonlocalCompletion { m, n } => {
                write!(f, "nonlocal completion (m = {m}, n = {n})")
            }
        }
    }
}

/// The correction V_n kept as three explicit single-qudit factors, so its
/// locality is visible in the type rather than inferred numerically.
#[derive(Debug, Clone)]
pub struct LocalCorrection {
    pub alice: Operator,
    pub bob: Operator,
    pub charlie: Operator,
}

impl LocalCorrection {
    /// Applies each factor to its own subsystem.
    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        state
            .apply(&self.alice, &[ALICE])?
            .apply(&self.bob, &[BOB])?
            .apply(&self.charlie, &[CHARLIE])
    }

    /// The combined operator V_n^A ⊗ V_n^B ⊗ V_n^C.
    pub fn combined(&self) -> Operator {
        self.alice.kron(&self.bob).kron(&self.charlie)
    }
}

/// Builds V_n: diag phases exp(2πi·j·n/D) on A and B, the conjugate phases
/// on C. V_n multiplies |φ_k⟩ by exp(2πi·k·n/D), which cancels the
/// outcome-dependent phase of the conditional state.
pub fn phase_correction(d: usize, n: usize) -> Result<LocalCorrection> {
    if n >= d {
        return Err(Error::IndexOutOfRange(format!("n = {n} for dimension {d}")));
    }
    let forward: Vec<Complex64> = (0..d).map(|j| root_of_unity(d, (j * n) as i64)).collect();
    let backward: Vec<Complex64> = (0..d).map(|j| root_of_unity(d, -((j * n) as i64))).collect();
    Ok(LocalCorrection {
        alice: Operator::diagonal(&forward, &[d])?,
        bob: Operator::diagonal(&forward, &[d])?,
        charlie: Operator::diagonal(&backward, &[d])?,
    })
}

/// Builds the joint completion unitary for a failure outcome (m ≠ 0).
///
/// On the span of the φ family it acts as
///   |φ_j⟩ ↦ exp[((−1)^{j−m} − (−1)^j) iθ] · exp(2πi·(j−m)·n/D) · |φ_{j−m mod D}⟩
/// and as the identity on the orthogonal complement. Under the local-gate
/// scheme the θ factor is dropped: there the gate phase enters through the
/// measurement basis, so the conditional state carries none of it.
/// Unitarity is verified at construction.
pub fn completion_operator(cfg: &ProtocolConfig, m: usize, n: usize) -> Result<Operator> {
    let d = cfg.dim;
    if m >= d || n >= d {
        return Err(Error::IndexOutOfRange(format!(
            "(m, n) = ({m}, {n}) for dimension {d}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidArgument(
            "m = 0 outcomes take the local phase correction, not the completion".into(),
        ));
    }
    let phis: Vec<PureState> = (0..d).map(|j| phi_j(d, cfg.p, j)).collect::<Result<_>>()?;
    let total = d * d * d;

    let mut w: Vec<Complex64> = Operator::identity(&[d, d, d]).matrix().to_vec();
    for j in 0..d {
        let shifted = (j + d - m) % d;
        let mut phase = root_of_unity(d, (shifted * n) as i64);
        if cfg.scheme == Scheme::Processor {
            phase *= Complex64::cis((sign(shifted) - sign(j)) * cfg.theta);
        }
        let src = phis[j].amplitudes();
        let dst = phis[shifted].amplitudes();
        for r in 0..total {
            if dst[r].norm_sqr() == 0.0 && src[r].norm_sqr() == 0.0 {
                continue;
            }
            for c in 0..total {
                // replace |φ_j⟩⟨φ_j| from the identity with phase·|φ_{j−m}⟩⟨φ_j|
                w[r * total + c] += (phase * dst[r] - src[r]) * src[c].conj();
            }
        }
    }
    Operator::verified(w, vec![d, d, d])
}

/// Full record of one protocol execution for a single measurement outcome.
#[derive(Debug, Clone)]
pub struct ProtocolRun {
    pub config: ProtocolConfig,
    /// Seed of the sampling generator; `None` for exhaustive enumeration.
    pub seed: Option<u64>,
    pub outcome: (usize, usize),
    /// Exact probability of this outcome.
    pub probability: f64,
    pub success: bool,
    pub correction: CorrectionKind,
    /// Corrected three-qudit state on (A, B, C); success branches only.
    pub final_state: Option<PureState>,
    pub rho_alice: Option<DensityMatrix>,
    pub rho_bob: Option<DensityMatrix>,
    pub fidelity_alice: Option<f64>,
    pub fidelity_bob: Option<f64>,
}

/// Aggregate view of an exhaustive enumeration.
#[derive(Debug, Clone)]
pub struct SuccessSummary {
    /// Σ probability over successful outcomes.
    pub total_probability: f64,
    pub outcomes: Vec<OutcomeSummary>,
}

#[derive(Debug, Clone, Copy)]
pub struct OutcomeSummary {
    pub m: usize,
    pub n: usize,
    pub probability: f64,
    pub success: bool,
}

/// Sums success probability and tabulates the outcomes of one exhaustive
/// execution.
pub fn summarize_success(runs: &[ProtocolRun]) -> SuccessSummary {
    let outcomes: Vec<OutcomeSummary> = runs
        .iter()
        .map(|r| OutcomeSummary {
            m: r.outcome.0,
            n: r.outcome.1,
            probability: r.probability,
            success: r.success,
        })
        .collect();
    SuccessSummary {
        total_probability: runs
            .iter()
            .filter(|r| r.success)
            .map(|r| r.probability)
            .sum(),
        outcomes,
    }
}

/// A prepared protocol instance: the joint state is built and measured
/// exhaustively once, every outcome is completed once, and sampling just
/// draws from the resulting records. Everything is immutable after
/// construction, so an engine can be shared across threads.
pub struct ProtocolEngine {
    config: ProtocolConfig,
    target: PureState,
    ideal: PureState,
    runs: Vec<ProtocolRun>,
}

impl ProtocolEngine {
    pub fn new(cfg: ProtocolConfig, data: &PureState) -> Result<Self> {
        if data.dims() != [cfg.dim] {
            return Err(Error::DimensionMismatch(format!(
                "data state has dims {:?}, config dimension is {}",
                data.dims(),
                cfg.dim
            )));
        }
        let (resource, basis) = match cfg.scheme {
            Scheme::Processor => (program_state(&cfg)?, BellBasis::standard(cfg.dim)),
            Scheme::LocalGate => (xi(cfg.dim, cfg.p)?, BellBasis::tilted(cfg.dim, cfg.theta)),
        };
        let joint = data.tensor(&resource)?;
        let outcomes = crate::bell::measure_exhaustive(&joint, (DATA, PROGRAM), &basis)?;

        let target = target_state(&cfg, data)?;
        let ideal = ideal_output(&cfg, data)?;

        let mut runs = Vec::with_capacity(outcomes.len());
        for outcome in &outcomes {
            runs.push(complete_outcome(&cfg, &target, outcome)?);
        }
        Ok(ProtocolEngine {
            config: cfg,
            target,
            ideal,
            runs,
        })
    }

    pub fn config(&self) -> &ProtocolConfig {
        &self.config
    }

    /// The ideal gate output U_θ|ψ⟩ on a single qudit.
    pub fn target(&self) -> &PureState {
        &self.target
    }

    /// The reference three-qudit output Σ_k α_k exp[(−1)^k iθ]|φ_k⟩.
    pub fn ideal_output(&self) -> &PureState {
        &self.ideal
    }

    /// All D² outcome records with exact probabilities.
    pub fn runs(&self) -> &[ProtocolRun] {
        &self.runs
    }

    pub fn enumerate(&self) -> Vec<ProtocolRun> {
        self.runs.clone()
    }

    /// Draws one outcome from the exact distribution.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, seed: Option<u64>) -> ProtocolRun {
        let probabilities: Vec<f64> = self.runs.iter().map(|r| r.probability).collect();
        let idx = sample_index(&probabilities, rng);
        let mut run = self.runs[idx].clone();
        run.seed = seed;
        run
    }
}

fn complete_outcome(
    cfg: &ProtocolConfig,
    target: &PureState,
    outcome: &MeasurementOutcome,
) -> Result<ProtocolRun> {
    let (m, n) = (outcome.m, outcome.n);
    let mut run = ProtocolRun {
        config: *cfg,
        seed: None,
        outcome: (m, n),
        probability: outcome.probability,
        success: false,
        correction: CorrectionKind::None,
        final_state: None,
        rho_alice: None,
        rho_bob: None,
        fidelity_alice: None,
        fidelity_bob: None,
    };
    let Some(post) = &outcome.post_state else {
        return Ok(run);
    };

    let corrected = if m == 0 {
        run.correction = CorrectionKind::LocalPhase { n };
        Some(phase_correction(cfg.dim, n)?.apply(post)?)
    } else if cfg.completion == Completion::Nonlocal {
        run.correction = CorrectionKind::NonlocalCompletion { m, n };
        let w = completion_operator(cfg, m, n)?;
        Some(post.apply(&w, &[ALICE, BOB, CHARLIE])?)
    } else {
        None
    };

    if let Some(final_state) = corrected {
        let rho_alice = final_state.partial_trace(&[ALICE])?;
        let rho_bob = final_state.partial_trace(&[BOB])?;
        run.fidelity_alice = Some(rho_alice.fidelity_pure(target)?);
        run.fidelity_bob = Some(rho_bob.fidelity_pure(target)?);
        run.rho_alice = Some(rho_alice);
        run.rho_bob = Some(rho_bob);
        run.final_state = Some(final_state);
        run.success = true;
    }
    Ok(run)
}

/// Runs every outcome of the measurement with its exact probability.
pub fn run_exhaustive(cfg: &ProtocolConfig, data: &PureState) -> Result<Vec<ProtocolRun>> {
    Ok(ProtocolEngine::new(*cfg, data)?.enumerate())
}

/// Runs one seeded sampled execution.
pub fn run_sampled(cfg: &ProtocolConfig, data: &PureState, seed: u64) -> Result<ProtocolRun> {
    let engine = ProtocolEngine::new(*cfg, data)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(engine.sample(&mut rng, Some(seed)))
}
