//! Self-contained invariant suite behind the `verify` subcommand.
//!
//! Each check re-derives its expectation independently of the code path it
//! exercises (hand-coded fixtures, index-looping references, closed forms)
//! and reports the worst defect it saw against its tolerance. A global
//! `--tolerance` override tightens or loosens every threshold at once;
//! the statistical sampling check keeps its 4σ band regardless.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::{closed_form_fidelities, reference_rho, Receiver};
use crate::bell::{BellBasis, BellVariant};
use crate::protocol::{phase_correction, ProtocolEngine};
use crate::states::{
    self, phi_j, random_data_state, u_mn, u_theta, Completion, ProtocolConfig, Scheme, DATA,
    PROGRAM,
};
use crate::tensor::{max_abs_diff, Operator, PureState};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Qudit dimensions to run the parameterized checks at.
    pub d_list: Vec<usize>,
    /// Overrides every check's default tolerance when set.
    pub tolerance: Option<f64>,
    pub seed: u64,
    /// Number of draws for the sampling-frequency check.
    pub sample_draws: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            d_list: vec![2, 4, 6],
            tolerance: None,
            seed: 7,
            sample_draws: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn report(name: &'static str, defect: f64, tol: f64) -> CheckReport {
    CheckReport {
        name,
        passed: defect <= tol,
        detail: format!("max defect {defect:.3e} (tol {tol:.1e})"),
    }
}

const P_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const THETA_GRID: [f64; 4] = [0.0, 0.7, std::f64::consts::PI, 5.5];

/// Runs every check and returns one report per check.
pub fn run_suite(opts: &VerifyOptions) -> Vec<CheckReport> {
    let tol = |default: f64| opts.tolerance.unwrap_or(default);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    vec![
        check_state_norms(opts, tol(1e-10), &mut rng),
        check_partial_trace_keep_all(opts, tol(1e-12), &mut rng),
        check_partial_trace_unit_trace(opts, tol(1e-10), &mut rng),
        check_identity_apply(opts, tol(1e-12), &mut rng),
        check_partial_trace_oracle(tol(1e-12), &mut rng),
        check_density_matrix_contracts(opts, tol(1e-10), &mut rng),
        check_phi_orthonormality(opts, tol(1e-12)),
        check_phi_qubit_fixture(tol(1e-12)),
        check_u_theta_qubit_matrix(tol(1e-15)),
        check_u_mn_hilbert_schmidt(opts, tol(1e-10)),
        check_bell_orthonormal_complete(opts, tol(1e-10)),
        check_uniform_outcome_probabilities(opts, tol(1e-10), &mut rng),
        check_post_state_formula(tol(1e-10), &mut rng),
        check_sampled_frequencies(opts, &mut rng),
        check_correction_correctness(opts, tol(1e-10), &mut rng),
        check_success_probabilities(opts, tol(1e-12), &mut rng),
        check_scheme_equivalence(opts, tol(1e-10), &mut rng),
        check_failure_branch_honesty(tol(1e-6), &mut rng),
        check_fidelity_closed_forms(opts, tol(1e-10), &mut rng),
        check_fidelity_symmetry(opts, tol(1e-12)),
        check_rho_swap_symmetry(tol(1e-12), &mut rng),
        check_qubit_closed_form_consistency(tol(1e-14)),
    ]
}

fn check_state_norms(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        for &p in &P_GRID {
            defect = defect.max((states::xi(d, p).unwrap().norm() - 1.0).abs());
            for j in 0..d {
                defect = defect.max((phi_j(d, p, j).unwrap().norm() - 1.0).abs());
            }
        }
        defect = defect.max((random_data_state(d, rng).norm() - 1.0).abs());
    }
    report("tensor/state-norms", defect, tol)
}

fn check_partial_trace_keep_all(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        let s = PureState::random(&[d, 2], &['a', 'b'], rng);
        let rho = s.partial_trace(&['a', 'b']).unwrap();
        let proj = crate::tensor::DensityMatrix::from_pure(&s);
        defect = defect.max(max_abs_diff(rho.matrix(), proj.matrix()));
    }
    report("tensor/partial-trace-keep-all", defect, tol)
}

fn check_partial_trace_unit_trace(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        let s = PureState::random(&[d, 2, 3], &['a', 'b', 'c'], rng);
        for keep in [vec!['a'], vec!['b', 'c'], vec!['c', 'a']] {
            let tr = s.partial_trace(&keep).unwrap().trace();
            defect = defect.max((tr.re - 1.0).abs().max(tr.im.abs()));
        }
    }
    report("tensor/partial-trace-unit-trace", defect, tol)
}

fn check_identity_apply(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        let s = PureState::random(&[2, d], &['a', 'b'], rng);
        let out = s.apply(&Operator::identity(&[d]), &['b']).unwrap();
        defect = defect.max(max_abs_diff(out.amplitudes(), s.amplitudes()));
    }
    report("tensor/identity-apply", defect, tol)
}

/// Index-looping partial-trace reference, independent of the strided
/// implementation in `tensor`.
fn looped_partial_trace(s: &PureState, keep: &[char]) -> Vec<Complex64> {
    let dims = s.dims();
    let n_sub = dims.len();
    let unflatten = |mut flat: usize| -> Vec<usize> {
        let mut idx = vec![0usize; n_sub];
        for j in (0..n_sub).rev() {
            idx[j] = flat % dims[j];
            flat /= dims[j];
        }
        idx
    };
    let keep_axes: Vec<usize> = keep.iter().map(|&l| s.axis_of(l).unwrap()).collect();
    let k: usize = keep_axes.iter().map(|&a| dims[a]).product();
    let mut rho = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..s.total_dim() {
        let ti = unflatten(i);
        for j in 0..s.total_dim() {
            let tj = unflatten(j);
            if (0..n_sub).any(|a| !keep_axes.contains(&a) && ti[a] != tj[a]) {
                continue;
            }
            let mut row = 0usize;
            let mut col = 0usize;
            for &a in &keep_axes {
                row = row * dims[a] + ti[a];
                col = col * dims[a] + tj[a];
            }
            rho[row * k + col] += s.amp(i) * s.amp(j).conj();
        }
    }
    rho
}

fn check_partial_trace_oracle(tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    let cases: &[(&[usize], &[char], &[char])] = &[
        (&[2, 3], &['a', 'b'], &['a']),
        (&[3, 2, 3], &['a', 'b', 'c'], &['b']),
        (&[2, 3, 2], &['a', 'b', 'c'], &['c', 'a']),
    ];
    for &(dims, labels, keep) in cases {
        let s = PureState::random(dims, labels, rng);
        let fast = s.partial_trace(keep).unwrap();
        let slow = looped_partial_trace(&s, keep);
        defect = defect.max(max_abs_diff(fast.matrix(), &slow));
    }
    report("tensor/partial-trace-bruteforce-oracle", defect, tol)
}

fn check_density_matrix_contracts(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    for &d in &opts.d_list {
        let cfg = ProtocolConfig::new(d, 0.3, 0.9, Scheme::Processor, Completion::LoccOnly).unwrap();
        let data = random_data_state(d, rng);
        let engine = match ProtocolEngine::new(cfg, &data) {
            Ok(e) => e,
            Err(e) => {
                return CheckReport {
                    name: "tensor/density-matrix-contracts",
                    passed: false,
                    detail: format!("engine failed: {e}"),
                }
            }
        };
        for run in engine.runs().iter().filter(|r| r.success) {
            for rho in [run.rho_alice.as_ref().unwrap(), run.rho_bob.as_ref().unwrap()] {
                if let Err(e) = rho.validate(tol) {
                    return CheckReport {
                        name: "tensor/density-matrix-contracts",
                        passed: false,
                        detail: format!("D={d}: {e}"),
                    };
                }
            }
        }
    }
    CheckReport {
        name: "tensor/density-matrix-contracts",
        passed: true,
        detail: format!("Hermitian, unit trace, eigenvalues >= -{tol:.1e}"),
    }
}

fn check_phi_orthonormality(opts: &VerifyOptions, tol: f64) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        for &p in &P_GRID {
            let phis: Vec<PureState> = (0..d).map(|j| phi_j(d, p, j).unwrap()).collect();
            for (i, a) in phis.iter().enumerate() {
                for (j, b) in phis.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    let g = a.inner(b).unwrap();
                    defect = defect.max((g - Complex64::new(expect, 0.0)).norm());
                }
            }
        }
    }
    report("states/phi-gram-orthonormality", defect, tol)
}

fn check_phi_qubit_fixture(tol: f64) -> CheckReport {
    // Hand-coded two-level cloning states, written out term by term.
    let mut defect = 0.0f64;
    for &p in &P_GRID {
        let norm = (2.0 * (1.0 - p + p * p)).sqrt();
        let mut phi0 = vec![Complex64::new(0.0, 0.0); 8];
        phi0[0b000] = Complex64::new(1.0 / norm, 0.0);
        phi0[0b011] = Complex64::new(p / norm, 0.0);
        phi0[0b101] = Complex64::new((1.0 - p) / norm, 0.0);
        let mut phi1 = vec![Complex64::new(0.0, 0.0); 8];
        phi1[0b111] = Complex64::new(1.0 / norm, 0.0);
        phi1[0b100] = Complex64::new(p / norm, 0.0);
        phi1[0b010] = Complex64::new((1.0 - p) / norm, 0.0);
        defect = defect.max(max_abs_diff(phi_j(2, p, 0).unwrap().amplitudes(), &phi0));
        defect = defect.max(max_abs_diff(phi_j(2, p, 1).unwrap().amplitudes(), &phi1));
    }
    report("states/phi-qubit-fixture", defect, tol)
}

fn check_u_theta_qubit_matrix(tol: f64) -> CheckReport {
    let mut defect = 0.0f64;
    for &theta in &THETA_GRID {
        let u = u_theta(2, theta).unwrap();
        let expected = [
            Complex64::cis(theta),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::cis(-theta),
        ];
        defect = defect.max(max_abs_diff(u.matrix(), &expected));
    }
    report("states/u-theta-qubit-matrix", defect, tol)
}

fn check_u_mn_hilbert_schmidt(opts: &VerifyOptions, tol: f64) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        let ops: Vec<Operator> = (0..d * d).map(|i| u_mn(d, i / d, i % d).unwrap()).collect();
        for (a, op_a) in ops.iter().enumerate() {
            for (b, op_b) in ops.iter().enumerate() {
                let mut tr = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    for k in 0..d {
                        tr += op_a.element(k, i).conj() * op_b.element(k, i);
                    }
                }
                let expect = if a == b { d as f64 } else { 0.0 };
                defect = defect.max((tr - Complex64::new(expect, 0.0)).norm());
            }
        }
    }
    report("states/u-mn-hilbert-schmidt", defect, tol)
}

fn check_bell_orthonormal_complete(opts: &VerifyOptions, tol: f64) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        for variant in [
            BellVariant::Standard,
            BellVariant::ThetaTilted(0.0),
            BellVariant::ThetaTilted(0.7),
            BellVariant::ThetaTilted(std::f64::consts::PI),
        ] {
            let basis = BellBasis::new(d, variant);
            defect = defect.max(basis.max_orthonormality_defect());
            defect = defect.max(basis.max_completeness_defect());
        }
    }
    report("bell/orthonormal-and-complete", defect, tol)
}

fn protocol_engine(
    d: usize,
    p: f64,
    theta: f64,
    scheme: Scheme,
    completion: Completion,
    rng: &mut ChaCha8Rng,
) -> (PureState, ProtocolEngine) {
    let cfg = ProtocolConfig::new(d, p, theta, scheme, completion).unwrap();
    let data = random_data_state(d, rng);
    let engine = ProtocolEngine::new(cfg, &data).expect("engine construction");
    (data, engine)
}

fn check_uniform_outcome_probabilities(
    opts: &VerifyOptions,
    tol: f64,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        for scheme in [Scheme::Processor, Scheme::LocalGate] {
            for &theta in &THETA_GRID {
                let (_, engine) = protocol_engine(d, 0.3, theta, scheme, Completion::LoccOnly, rng);
                let expect = 1.0 / (d * d) as f64;
                for run in engine.runs() {
                    defect = defect.max((run.probability - expect).abs());
                }
            }
        }
    }
    report("bell/uniform-outcome-probabilities", defect, tol)
}

fn check_post_state_formula(tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    // Conditional state for outcome (0, n), built directly:
    //   Σ_k α_k exp[(−1)^k iθ] exp(−2πi·k·n/D) |φ_k⟩.
    let d = 4;
    let p = 0.3;
    let theta = 1.1;
    let cfg = ProtocolConfig::new(d, p, theta, Scheme::Processor, Completion::LoccOnly).unwrap();
    let data = random_data_state(d, rng);
    let joint = data.tensor(&states::program_state(&cfg).unwrap()).unwrap();
    let outcomes =
        crate::bell::measure_exhaustive(&joint, (DATA, PROGRAM), &BellBasis::standard(d)).unwrap();
    let mut defect = 0.0f64;
    for o in outcomes.iter().filter(|o| o.m == 0) {
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d * d];
        for k in 0..d {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let coeff = data.amp(k)
                * Complex64::cis(sign * theta)
                * Complex64::cis(-std::f64::consts::TAU * (k * o.n) as f64 / d as f64);
            let phi = phi_j(d, p, k).unwrap();
            for (idx, &a) in phi.amplitudes().iter().enumerate() {
                amps[idx] += coeff * a;
            }
        }
        defect = defect.max(max_abs_diff(
            o.post_state.as_ref().unwrap().amplitudes(),
            &amps,
        ));
    }
    report("bell/post-state-formula", defect, tol)
}

fn check_sampled_frequencies(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> CheckReport {
    let d = 2;
    let (_, engine) = protocol_engine(d, 0.5, 0.7, Scheme::Processor, Completion::LoccOnly, rng);
    let draws = opts.sample_draws.max(1);
    let mut counts = vec![0usize; d * d];
    for _ in 0..draws {
        let run = engine.sample(rng, None);
        counts[run.outcome.0 * d + run.outcome.1] += 1;
    }
    let mut worst_sigma = 0.0f64;
    for (i, run) in engine.runs().iter().enumerate() {
        let freq = counts[i] as f64 / draws as f64;
        let stderr = (run.probability * (1.0 - run.probability) / draws as f64).sqrt();
        if stderr > 0.0 {
            worst_sigma = worst_sigma.max((freq - run.probability).abs() / stderr);
        }
    }
    CheckReport {
        name: "bell/sampled-frequencies",
        passed: worst_sigma <= 4.0,
        detail: format!("worst deviation {worst_sigma:.2} sigma over {draws} draws (limit 4)"),
    }
}

fn check_correction_correctness(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut phase_defect = 0.0f64;
    let mut completion_defect = 0.0f64;
    for &d in &opts.d_list {
        for scheme in [Scheme::Processor, Scheme::LocalGate] {
            let (_, engine) = protocol_engine(d, 0.3, 1.1, scheme, Completion::Nonlocal, rng);
            let ideal = engine.ideal_output();
            for run in engine.runs() {
                let final_state = run.final_state.as_ref().unwrap();
                if run.outcome.0 == 0 {
                    // The local phase correction restores the exact state.
                    phase_defect =
                        phase_defect.max(max_abs_diff(final_state.amplitudes(), ideal.amplitudes()));
                } else {
                    // The completion restores it up to a global phase.
                    let overlap = final_state.overlap_mag(ideal).unwrap();
                    completion_defect = completion_defect.max((overlap - 1.0).abs());
                }
            }
        }
    }
    report(
        "protocol/correction-correctness",
        phase_defect.max(completion_defect),
        tol,
    )
}

fn check_success_probabilities(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        let (_, engine) = protocol_engine(d, 0.4, 0.9, Scheme::Processor, Completion::LoccOnly, rng);
        let total: f64 = engine
            .runs()
            .iter()
            .filter(|r| r.success)
            .map(|r| r.probability)
            .sum();
        defect = defect.max((total - 1.0 / d as f64).abs());

        let (_, engine) = protocol_engine(d, 0.4, 0.9, Scheme::LocalGate, Completion::Nonlocal, rng);
        let total: f64 = engine
            .runs()
            .iter()
            .filter(|r| r.success)
            .map(|r| r.probability)
            .sum();
        defect = defect.max((total - 1.0).abs());
    }
    report("protocol/success-probabilities", defect, tol)
}

fn check_scheme_equivalence(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        let data = random_data_state(d, rng);
        let mut engines = Vec::new();
        for scheme in [Scheme::Processor, Scheme::LocalGate] {
            let cfg = ProtocolConfig::new(d, 0.3, 2.1, scheme, Completion::LoccOnly).unwrap();
            engines.push(ProtocolEngine::new(cfg, &data).unwrap());
        }
        for (a, b) in engines[0].runs().iter().zip(engines[1].runs()) {
            if !a.success {
                continue;
            }
            let fa = a.final_state.as_ref().unwrap();
            let fb = b.final_state.as_ref().unwrap();
            defect = defect.max((fa.overlap_mag(fb).unwrap() - 1.0).abs());
            defect = defect.max(max_abs_diff(
                a.rho_alice.as_ref().unwrap().matrix(),
                b.rho_alice.as_ref().unwrap().matrix(),
            ));
            defect = defect.max(max_abs_diff(
                a.rho_bob.as_ref().unwrap().matrix(),
                b.rho_bob.as_ref().unwrap().matrix(),
            ));
        }
    }
    report("protocol/scheme-equivalence", defect, tol)
}

fn check_failure_branch_honesty(margin: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    // No local phase correction can rescue an m ≠ 0 outcome.
    let mut best = 0.0f64;
    for &d in &[2usize, 4] {
        let cfg = ProtocolConfig::new(d, 0.3, 1.3, Scheme::Processor, Completion::LoccOnly).unwrap();
        let data = random_data_state(d, rng);
        let joint = data
            .tensor(&states::program_state(&cfg).unwrap())
            .unwrap();
        let outcomes =
            crate::bell::measure_exhaustive(&joint, (DATA, PROGRAM), &BellBasis::standard(d))
                .unwrap();
        let ideal = states::ideal_output(&cfg, &data).unwrap();
        for o in outcomes.iter().filter(|o| o.m != 0) {
            let post = o.post_state.as_ref().unwrap();
            for n in 0..d {
                let candidate = phase_correction(d, n).unwrap().apply(post).unwrap();
                best = best.max(candidate.overlap_mag(&ideal).unwrap());
            }
        }
    }
    CheckReport {
        name: "protocol/failure-branch-honesty",
        passed: best < 1.0 - margin,
        detail: format!("best local-phase overlap {best:.6} (must stay below 1 - {margin:.0e})"),
    }
}

fn check_fidelity_closed_forms(opts: &VerifyOptions, tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            let closed = closed_form_fidelities(d, p);
            for &theta in &THETA_GRID {
                for scheme in [Scheme::Processor, Scheme::LocalGate] {
                    for _ in 0..20 {
                        let cfg =
                            ProtocolConfig::new(d, p, theta, scheme, Completion::LoccOnly).unwrap();
                        let data = random_data_state(d, rng);
                        let engine = ProtocolEngine::new(cfg, &data).unwrap();
                        let ref_a =
                            reference_rho(d, p, cfg.theta, data.amplitudes(), Receiver::Alice)
                                .unwrap();
                        let ref_b =
                            reference_rho(d, p, cfg.theta, data.amplitudes(), Receiver::Bob)
                                .unwrap();
                        for run in engine.runs().iter().filter(|r| r.success) {
                            defect = defect
                                .max((run.fidelity_alice.unwrap() - closed.alice).abs())
                                .max((run.fidelity_bob.unwrap() - closed.bob).abs())
                                .max(max_abs_diff(
                                    run.rho_alice.as_ref().unwrap().matrix(),
                                    ref_a.matrix(),
                                ))
                                .max(max_abs_diff(
                                    run.rho_bob.as_ref().unwrap().matrix(),
                                    ref_b.matrix(),
                                ));
                        }
                    }
                }
            }
        }
    }
    report("analysis/fidelity-and-rho-closed-forms", defect, tol)
}

fn check_fidelity_symmetry(opts: &VerifyOptions, tol: f64) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &opts.d_list {
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            let f = closed_form_fidelities(d, p);
            let g = closed_form_fidelities(d, 1.0 - p);
            defect = defect.max((f.alice - g.bob).abs()).max((f.bob - g.alice).abs());
        }
    }
    report("analysis/fidelity-p-symmetry", defect, tol)
}

fn check_rho_swap_symmetry(tol: f64, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut defect = 0.0f64;
    for &d in &[2usize, 4] {
        let data = random_data_state(d, rng);
        for i in 0..=4 {
            let p = i as f64 / 4.0;
            let a = reference_rho(d, 1.0 - p, 0.8, data.amplitudes(), Receiver::Alice).unwrap();
            let b = reference_rho(d, p, 0.8, data.amplitudes(), Receiver::Bob).unwrap();
            defect = defect.max(max_abs_diff(a.matrix(), b.matrix()));
        }
    }
    report("analysis/rho-swap-symmetry", defect, tol)
}

fn check_qubit_closed_form_consistency(tol: f64) -> CheckReport {
    let mut defect = 0.0f64;
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let f = closed_form_fidelities(2, p);
        let denom = 2.0 * (1.0 - p + p * p);
        defect = defect
            .max((f.alice - (1.0 + p * p) / denom).abs())
            .max((f.bob - (2.0 - 2.0 * p + p * p) / denom).abs());
    }
    report("analysis/qubit-closed-form-consistency", defect, tol)
}
