//! Constructors for the named states and operators of the protocol: data
//! states, the asymmetric-cloning family |φ_j⟩, the resource state |ξ⟩, the
//! phase gate U_θ, the shift-and-phase basis operators U^{(mn)}, the encoded
//! program state, and the ideal target U_θ|ψ⟩.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{Label, Operator, PureState};

/// Subsystem owned by the sender: the data qudit.
pub const DATA: Label = 'd';
/// Subsystem `P` of the shared resource, measured together with the data.
pub const PROGRAM: Label = 'P';
/// First receiver's qudit.
pub const ALICE: Label = 'A';
/// Second receiver's qudit.
pub const BOB: Label = 'B';
/// Ancilla qudit, traced out at the end.
pub const CHARLIE: Label = 'C';

/// Which of the two protocol variants to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Encode U_θ into the resource state, measure in the standard
    /// two-qudit Bell basis.
    Processor,
    /// Keep the bare resource state, measure in the θ-dependent Bell basis.
    LocalGate,
}

/// What the receivers are allowed to do on failure outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Completion {
    /// Local operations and classical communication only; non-commuting
    /// outcomes are declared failures.
    #[serde(rename = "locc")]
    LoccOnly,
    /// Rescue every outcome with a joint unitary on the receivers' qudits.
    #[serde(rename = "nonlocal")]
    Nonlocal,
}

/// Full parameter set of one protocol instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    /// Qudit dimension; must be even so the alternating-phase gate exists.
    #[serde(rename = "d")]
    pub dim: usize,
    /// Cloning asymmetry in [0, 1]; p = 1/2 is the symmetric point.
    pub p: f64,
    /// Gate phase, normalized into [0, 2π).
    pub theta: f64,
    pub scheme: Scheme,
    pub completion: Completion,
}

impl ProtocolConfig {
    pub fn new(
        dim: usize,
        p: f64,
        theta: f64,
        scheme: Scheme,
        completion: Completion,
    ) -> Result<Self> {
        if dim < 2 || !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidAsymmetry(p));
        }
        Ok(ProtocolConfig {
            dim,
            p,
            theta: theta.rem_euclid(std::f64::consts::TAU),
            scheme,
            completion,
        })
    }
}

/// (−1)^k as a float.
fn parity_sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// exp(2πi·k·n/D).
pub(crate) fn root_of_unity(d: usize, kn: i64) -> Complex64 {
    Complex64::cis(std::f64::consts::TAU * kn as f64 / d as f64)
}

/// An arbitrary data qudit Σ_k α_k|k⟩ on subsystem `d`. The amplitudes must
/// already be normalized.
pub fn data_state(d: usize, alphas: &[Complex64]) -> Result<PureState> {
    if alphas.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "{} amplitudes for dimension {}",
            alphas.len(),
            d
        )));
    }
    PureState::new(alphas.to_vec(), vec![d], vec![DATA])
}

/// Like [`data_state`] but renormalizes; rejects the zero vector.
pub fn data_state_normalized(d: usize, alphas: &[Complex64]) -> Result<PureState> {
    if alphas.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "{} amplitudes for dimension {}",
            alphas.len(),
            d
        )));
    }
    PureState::normalized(alphas.to_vec(), vec![d], vec![DATA])
}

/// A random data qudit with i.i.d. Gaussian amplitudes.
pub fn random_data_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> PureState {
    PureState::random(&[d], &[DATA], rng)
}

/// The diagonal gate with entries exp[(−1)^s iθ], s = 0..D−1. Requires even
/// D: the alternation pairs each level with its neighbor.
pub fn u_theta(d: usize, theta: f64) -> Result<Operator> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::OddDimension(d));
    }
    let entries: Vec<Complex64> = (0..d)
        .map(|s| Complex64::cis(parity_sign(s) * theta))
        .collect();
    Operator::diagonal(&entries, &[d])
}

/// Shift-and-phase operator U^{(mn)} = Σ_s exp(−2πi·s·m/D) |s−n mod D⟩⟨s|.
/// The D² of them are an orthogonal basis of the operator space.
pub fn u_mn(d: usize, m: usize, n: usize) -> Result<Operator> {
    if m >= d || n >= d {
        return Err(Error::IndexOutOfRange(format!(
            "(m, n) = ({m}, {n}) for dimension {d}"
        )));
    }
    let mut matrix = vec![Complex64::new(0.0, 0.0); d * d];
    for s in 0..d {
        let row = (s + d - n) % d;
        matrix[row * d + s] = root_of_unity(d, -((s * m) as i64));
    }
    Operator::verified(matrix, vec![d])
}

/// Normalization denominator shared by the |φ_j⟩ family: the squared norm
/// of the unnormalized state is 1 + (D−1)(2p² − 2p + 1).
fn phi_norm_sq(d: usize, p: f64) -> f64 {
    1.0 + (d as f64 - 1.0) * (2.0 * p * p - 2.0 * p + 1.0)
}

/// Output of the asymmetric cloning machine on input |j⟩: a three-qudit
/// state on (A, B, C) with weight 1 on |j j j⟩, p on |j, j+r, j+r⟩ and
/// (1−p) on |j+r, j, j+r⟩ for r = 1..D−1.
pub fn phi_j(d: usize, p: f64, j: usize) -> Result<PureState> {
    if j >= d {
        return Err(Error::IndexOutOfRange(format!("j = {j} for dimension {d}")));
    }
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidAsymmetry(p));
    }
    let norm = phi_norm_sq(d, p).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d * d];
    let flat = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
    amps[flat(j, j, j)] = Complex64::new(1.0 / norm, 0.0);
    for r in 1..d {
        let jr = (j + r) % d;
        amps[flat(j, jr, jr)] = Complex64::new(p / norm, 0.0);
        amps[flat(jr, j, jr)] = Complex64::new((1.0 - p) / norm, 0.0);
    }
    PureState::new(amps, vec![d, d, d], vec![ALICE, BOB, CHARLIE])
}

/// The shared resource (1/√D) Σ_j |j⟩_P |φ_j⟩_{ABC} on (P, A, B, C).
pub fn xi(d: usize, p: f64) -> Result<PureState> {
    let scale = 1.0 / (d as f64).sqrt();
    let block = d * d * d;
    let mut amps = vec![Complex64::new(0.0, 0.0); d * block];
    for j in 0..d {
        let phi = phi_j(d, p, j)?;
        for (idx, &a) in phi.amplitudes().iter().enumerate() {
            amps[j * block + idx] = a * scale;
        }
    }
    PureState::new(amps, vec![d, d, d, d], vec![PROGRAM, ALICE, BOB, CHARLIE])
}

/// The program register (U_θ ⊗ I)|ξ⟩ — the gate encoded by acting on
/// subsystem `P` alone.
pub fn program_state(cfg: &ProtocolConfig) -> Result<PureState> {
    let resource = xi(cfg.dim, cfg.p)?;
    let gate = u_theta(cfg.dim, cfg.theta)?;
    resource.apply(&gate, &[PROGRAM])
}

/// Ideal output U_θ|ψ⟩ = Σ_j α_j exp[(−1)^j iθ] |j⟩.
pub fn target_state(cfg: &ProtocolConfig, data: &PureState) -> Result<PureState> {
    if data.dims() != [cfg.dim] {
        return Err(Error::DimensionMismatch(format!(
            "data state has dims {:?}, config dimension is {}",
            data.dims(),
            cfg.dim
        )));
    }
    let gate = u_theta(cfg.dim, cfg.theta)?;
    data.apply(&gate, &[data.labels()[0]])
}

/// Σ_k α_k exp[(−1)^k iθ] |φ_k⟩ — the corrected three-qudit output every
/// success branch lands on.
pub fn ideal_output(cfg: &ProtocolConfig, data: &PureState) -> Result<PureState> {
    if data.dims() != [cfg.dim] {
        return Err(Error::DimensionMismatch(format!(
            "data state has dims {:?}, config dimension is {}",
            data.dims(),
            cfg.dim
        )));
    }
    let d = cfg.dim;
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d * d];
    for k in 0..d {
        let coeff = data.amp(k) * Complex64::cis(parity_sign(k) * cfg.theta);
        let phi = phi_j(d, cfg.p, k)?;
        for (idx, &a) in phi.amplitudes().iter().enumerate() {
            amps[idx] += coeff * a;
        }
    }
    PureState::new(amps, vec![d, d, d], vec![ALICE, BOB, CHARLIE])
}

pub(crate) fn sign(k: usize) -> f64 {
    parity_sign(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{max_abs_diff, TOL};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg(d: usize, p: f64, theta: f64) -> ProtocolConfig {
        ProtocolConfig::new(d, p, theta, Scheme::Processor, Completion::LoccOnly).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            ProtocolConfig::new(3, 0.5, 0.0, Scheme::Processor, Completion::LoccOnly),
            Err(Error::OddDimension(3))
        ));
        assert!(matches!(
            ProtocolConfig::new(2, 1.5, 0.0, Scheme::Processor, Completion::LoccOnly),
            Err(Error::InvalidAsymmetry(_))
        ));
        let wrapped = cfg(2, 0.5, 3.0 * PI);
        assert_abs_diff_eq!(wrapped.theta, PI, epsilon = 1e-12);
    }

    #[test]
    fn data_state_basics() {
        let s = data_state(2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(s.labels(), &[DATA]);
        assert_eq!(s.amp(0), c(1.0, 0.0));

        let r = 1.0 / 2.0f64.sqrt();
        let plus = data_state(2, &[c(r, 0.0), c(r, 0.0)]).unwrap();
        assert_abs_diff_eq!(plus.norm(), 1.0, epsilon = 1e-15);

        assert!(data_state(2, &[c(1.0, 0.0)]).is_err());
        assert!(matches!(
            data_state_normalized(2, &[c(0.0, 0.0), c(0.0, 0.0)]),
            Err(Error::ZeroVector)
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let raw: Vec<Complex64> = (0..4).map(|_| c(rng.gen::<f64>(), rng.gen::<f64>())).collect();
        let s = data_state_normalized(4, &raw).unwrap();
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn u_theta_qubit_matrix_is_exact() {
        let u = u_theta(2, 0.0).unwrap();
        assert!(max_abs_diff(u.matrix(), Operator::identity(&[2]).matrix()) < 1e-15);

        let th = 0.83;
        let u = u_theta(2, th).unwrap();
        let expected = [
            Complex64::cis(th),
            c(0.0, 0.0),
            c(0.0, 0.0),
            Complex64::cis(-th),
        ];
        assert!(max_abs_diff(u.matrix(), &expected) <= 1e-15);
    }

    #[test]
    fn u_theta_alternates_for_d4() {
        let th = PI / 3.0;
        let u = u_theta(4, th).unwrap();
        for s in 0..4 {
            let expect = Complex64::cis(if s % 2 == 0 { th } else { -th });
            assert!((u.element(s, s) - expect).norm() < 1e-15);
        }
        assert!(matches!(u_theta(3, 0.1), Err(Error::OddDimension(3))));
    }

    #[test]
    fn u_mn_special_cases() {
        let id = u_mn(4, 0, 0).unwrap();
        assert!(max_abs_diff(id.matrix(), Operator::identity(&[4]).matrix()) < 1e-15);

        // D = 2, (m, n) = (1, 0) is the Pauli Z.
        let z = u_mn(2, 1, 0).unwrap();
        let expected = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)];
        assert!(max_abs_diff(z.matrix(), &expected) <= 1e-12);

        assert!(u_mn(2, 2, 0).is_err());
    }

    #[test]
    fn u_theta_decomposes_over_u_mn() {
        // cos θ · I + i sin θ · U^{(D/2, 0)} equals the phase gate.
        let d = 4;
        let th = 1.234;
        let u = u_theta(d, th).unwrap();
        let shift = u_mn(d, d / 2, 0).unwrap();
        let mut combo = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                let idc = if i == j { c(th.cos(), 0.0) } else { c(0.0, 0.0) };
                combo[i * d + j] = idc + c(0.0, th.sin()) * shift.element(i, j);
            }
        }
        assert!(max_abs_diff(&combo, u.matrix()) <= 1e-12);
    }

    #[test]
    fn u_mn_hilbert_schmidt_orthogonality() {
        // trace(U^{(mn)†} U^{(m'n')}) = D δ_{mm'} δ_{nn'}.
        let d = 4;
        let ops: Vec<Operator> = (0..d * d).map(|i| u_mn(d, i / d, i % d).unwrap()).collect();
        for (a, op_a) in ops.iter().enumerate() {
            for (b, op_b) in ops.iter().enumerate() {
                let mut tr = c(0.0, 0.0);
                for i in 0..d {
                    for k in 0..d {
                        tr += op_a.element(k, i).conj() * op_b.element(k, i);
                    }
                }
                let expect = if a == b { d as f64 } else { 0.0 };
                assert!(
                    (tr - c(expect, 0.0)).norm() <= 1e-10,
                    "HS orthogonality failed at pair ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn phi_family_qubit_fixtures() {
        // p = 1/2: (|000⟩ + ½|011⟩ + ½|101⟩)/√1.5
        let phi0 = phi_j(2, 0.5, 0).unwrap();
        let n = 1.5f64.sqrt();
        assert_abs_diff_eq!(phi0.amp(0b000).re, 1.0 / n, epsilon = 1e-12);
        assert_abs_diff_eq!(phi0.amp(0b011).re, 0.5 / n, epsilon = 1e-12);
        assert_abs_diff_eq!(phi0.amp(0b101).re, 0.5 / n, epsilon = 1e-12);
        assert_abs_diff_eq!(phi0.norm(), 1.0, epsilon = 1e-12);

        // p = 1 endpoint: (|000⟩ + |011⟩)/√2
        let phi0 = phi_j(2, 1.0, 0).unwrap();
        let r = 1.0 / 2.0f64.sqrt();
        assert_abs_diff_eq!(phi0.amp(0b000).re, r, epsilon = 1e-12);
        assert_abs_diff_eq!(phi0.amp(0b011).re, r, epsilon = 1e-12);
        assert!(phi0.amp(0b101).norm() < 1e-15);

        assert!(phi_j(2, 0.5, 2).is_err());
    }

    #[test]
    fn phi_family_is_orthonormal() {
        for &d in &[2usize, 4, 6] {
            for &p in &[0.0, 0.25, 0.5, 0.75, 1.0] {
                let phis: Vec<_> = (0..d).map(|j| phi_j(d, p, j).unwrap()).collect();
                for (i, a) in phis.iter().enumerate() {
                    for (j, b) in phis.iter().enumerate() {
                        let g = a.inner(b).unwrap();
                        let expect = if i == j { 1.0 } else { 0.0 };
                        assert!(
                            (g - c(expect, 0.0)).norm() <= 1e-12,
                            "Gram defect at D={d}, p={p}, pair ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn xi_reduces_to_maximally_mixed_program_register() {
        for &d in &[2usize, 4, 6] {
            for &p in &[0.1, 0.5, 0.9] {
                let state = xi(d, p).unwrap();
                assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-12);
                let rho = state.partial_trace(&[PROGRAM]).unwrap();
                for i in 0..d {
                    for j in 0..d {
                        let expect = if i == j { 1.0 / d as f64 } else { 0.0 };
                        assert!((rho.element(i, j) - c(expect, 0.0)).norm() <= 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn xi_qubit_matches_hand_expansion() {
        // (|0⟩φ₀ + |1⟩φ₁)/√2 written out amplitude by amplitude.
        let p = 0.3;
        let state = xi(2, p).unwrap();
        let n = (2.0 * (1.0 - p + p * p)).sqrt() * 2.0f64.sqrt();
        let mut expected = vec![c(0.0, 0.0); 16];
        // |0⟩_P (|000⟩ + p|011⟩ + (1−p)|101⟩)
        expected[0b0000] = c(1.0 / n, 0.0);
        expected[0b0011] = c(p / n, 0.0);
        expected[0b0101] = c((1.0 - p) / n, 0.0);
        // |1⟩_P (|111⟩ + p|100⟩ + (1−p)|010⟩)
        expected[0b1111] = c(1.0 / n, 0.0);
        expected[0b1100] = c(p / n, 0.0);
        expected[0b1010] = c((1.0 - p) / n, 0.0);
        assert!(max_abs_diff(state.amplitudes(), &expected) <= 1e-12);
    }

    #[test]
    fn program_state_phases() {
        // θ = 0 leaves the resource untouched.
        let conf = cfg(2, 0.4, 0.0);
        let prog = program_state(&conf).unwrap();
        let plain = xi(2, 0.4).unwrap();
        assert!(max_abs_diff(prog.amplitudes(), plain.amplitudes()) <= 1e-12);

        // θ = π/2 gives (i|0⟩φ₀ − i|1⟩φ₁)/√2.
        let conf = cfg(2, 0.4, PI / 2.0);
        let prog = program_state(&conf).unwrap();
        for (idx, &a) in prog.amplitudes().iter().enumerate() {
            let expect = if idx < 8 { c(0.0, 1.0) } else { c(0.0, -1.0) } * plain.amp(idx);
            assert!((a - expect).norm() <= 1e-12);
        }
        assert_abs_diff_eq!(prog.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn target_state_examples() {
        let data = data_state(2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let conf = cfg(2, 0.5, 1.1);
        let t = target_state(&conf, &data).unwrap();
        // α = (1, 0) picks up the global phase e^{iθ} on |0⟩.
        assert!((t.amp(0) - Complex64::cis(1.1)).norm() <= 1e-12);
        assert!(t.amp(1).norm() < 1e-15);
        assert_abs_diff_eq!(t.norm(), 1.0, epsilon = 1e-12);

        let conf0 = cfg(2, 0.5, 0.0);
        let t0 = target_state(&conf0, &data).unwrap();
        assert!(max_abs_diff(t0.amplitudes(), data.amplitudes()) < 1e-15);
    }

    #[test]
    fn phi_inner_products_vanish_across_indices() {
        let a = phi_j(2, 0.37, 0).unwrap();
        let b = phi_j(2, 0.37, 1).unwrap();
        assert!(a.inner(&b).unwrap().norm() <= TOL);
    }

    #[test]
    fn ideal_output_reduced_matrix_matches_hand_value() {
        // D = 2, p = 1/2, α = (1, 0): tracing all but A out of the ideal
        // output leaves (0,0) entry (2p + (1−p)²)/(2(1−p+p²)) = 1.25/1.5.
        let conf = cfg(2, 0.5, 0.9);
        let data = data_state(2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let eta = ideal_output(&conf, &data).unwrap();
        let rho = eta.partial_trace(&[ALICE]).unwrap();
        assert_abs_diff_eq!(rho.element(0, 0).re, 1.25 / 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.element(1, 1).re, 0.25 / 1.5, epsilon = 1e-12);
    }

    #[test]
    fn ideal_output_is_normalized_superposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let conf = cfg(4, 0.3, 0.9);
        let data = random_data_state(4, &mut rng);
        let eta = ideal_output(&conf, &data).unwrap();
        assert_abs_diff_eq!(eta.norm(), 1.0, epsilon = 1e-12);
        // Component along φ_k is α_k e^{(−1)^k iθ}.
        for k in 0..4 {
            let phi = phi_j(4, 0.3, k).unwrap();
            let comp = phi.inner(&eta).unwrap();
            let expect = data.amp(k) * Complex64::cis(sign(k) * conf.theta);
            assert!((comp - expect).norm() <= 1e-12);
        }
    }
}
