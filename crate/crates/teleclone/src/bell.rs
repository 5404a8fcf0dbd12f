//! Generalized two-qudit Bell bases and projective pair measurement.
//!
//! The standard basis is Φ_{m,n} = (1/√D) Σ_k exp(2πi·k·n/D) |k⟩|k+m mod D⟩.
//! The θ-tilted variant multiplies each term by exp[(−1)^{k+1} iθ], which is
//! how the local-gate scheme moves the gate phase out of the resource state
//! and into the measurement.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::states::{root_of_unity, DATA, PROGRAM};
use crate::tensor::{Label, PureState, PROB_FLOOR};

/// Which family of D² maximally entangled pair states to use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BellVariant {
    Standard,
    ThetaTilted(f64),
}

/// An indexed family {Φ_{m,n}} of D² orthonormal two-qudit states.
///
/// Member states carry the labels (`d`, `P`) since that is the pair the
/// protocol measures; use [`PureState::with_labels`] to rename them.
#[derive(Debug, Clone)]
pub struct BellBasis {
    dim: usize,
    variant: BellVariant,
    states: Vec<PureState>,
}

impl BellBasis {
    pub fn new(dim: usize, variant: BellVariant) -> Self {
        assert!(dim >= 2, "Bell basis needs dimension at least 2");
        let d = dim;
        let scale = 1.0 / (d as f64).sqrt();
        let mut states = Vec::with_capacity(d * d);
        for m in 0..d {
            for n in 0..d {
                let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
                for k in 0..d {
                    let mut coeff = root_of_unity(d, (k * n) as i64) * scale;
                    if let BellVariant::ThetaTilted(theta) = variant {
                        let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
                        coeff *= Complex64::cis(sign * theta);
                    }
                    amps[k * d + (k + m) % d] = coeff;
                }
                states.push(
                    PureState::new(amps, vec![d, d], vec![DATA, PROGRAM])
                        .expect("Bell states are normalized by construction"),
                );
            }
        }
        BellBasis { dim, variant, states }
    }

    pub fn standard(dim: usize) -> Self {
        Self::new(dim, BellVariant::Standard)
    }

    pub fn tilted(dim: usize, theta: f64) -> Self {
        Self::new(dim, BellVariant::ThetaTilted(theta))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variant(&self) -> BellVariant {
        self.variant
    }

    pub fn state(&self, m: usize, n: usize) -> &PureState {
        &self.states[m * self.dim + n]
    }

    /// Iterates members in (m, n) lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &PureState)> {
        let d = self.dim;
        self.states
            .iter()
            .enumerate()
            .map(move |(i, s)| ((i / d, i % d), s))
    }

    /// max |⟨Φ_{mn}|Φ_{m'n'}⟩ − δ| over all pairs.
    pub fn max_orthonormality_defect(&self) -> f64 {
        let mut defect = 0.0f64;
        for (i, a) in self.states.iter().enumerate() {
            for (j, b) in self.states.iter().enumerate() {
                let g = a.inner(b).expect("same dims");
                let expect = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((g - Complex64::new(expect, 0.0)).norm());
            }
        }
        defect
    }

    /// max |(Σ_{mn} |Φ_{mn}⟩⟨Φ_{mn}| − I)_{ij}|.
    pub fn max_completeness_defect(&self) -> f64 {
        let n = self.dim * self.dim;
        let mut sum = vec![Complex64::new(0.0, 0.0); n * n];
        for s in &self.states {
            let amps = s.amplitudes();
            for i in 0..n {
                for j in 0..n {
                    sum[i * n + j] += amps[i] * amps[j].conj();
                }
            }
        }
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((sum[i * n + j] - Complex64::new(expect, 0.0)).norm());
            }
        }
        defect
    }
}

/// One projective outcome of a Bell-pair measurement.
///
/// `post_state` lives on the unmeasured subsystems, in their original
/// order; it is `None` when the outcome probability is below
/// [`PROB_FLOOR`], where normalizing would divide by ~0.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub m: usize,
    pub n: usize,
    pub probability: f64,
    pub post_state: Option<PureState>,
}

/// Projects `joint` onto every member of `basis` on the labeled pair,
/// returning all D² outcomes with exact probabilities.
pub fn measure_exhaustive(
    joint: &PureState,
    pair: (Label, Label),
    basis: &BellBasis,
) -> Result<Vec<MeasurementOutcome>> {
    let d = basis.dim();
    let ax_first = joint.axis_of(pair.0)?;
    let ax_second = joint.axis_of(pair.1)?;
    if ax_first == ax_second {
        return Err(Error::DuplicateLabel(pair.0));
    }
    if joint.dims()[ax_first] != d || joint.dims()[ax_second] != d {
        return Err(Error::DimensionMismatch(format!(
            "measured pair has dims ({}, {}) but basis dimension is {}",
            joint.dims()[ax_first],
            joint.dims()[ax_second],
            d
        )));
    }

    let dims = joint.dims();
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let rest_axes: Vec<usize> = (0..dims.len())
        .filter(|&a| a != ax_first && a != ax_second)
        .collect();
    let rest_dims: Vec<usize> = rest_axes.iter().map(|&a| dims[a]).collect();
    let rest_labels: Vec<Label> = rest_axes.iter().map(|&a| joint.labels()[a]).collect();
    let rest_total: usize = rest_dims.iter().product();

    // Flat offsets of every configuration of the unmeasured subsystems.
    let mut rest_offsets = Vec::with_capacity(rest_total);
    let mut idx = vec![0usize; rest_axes.len()];
    for _ in 0..rest_total {
        rest_offsets.push(
            idx.iter()
                .zip(&rest_axes)
                .map(|(&i, &a)| i * strides[a])
                .sum::<usize>(),
        );
        for pos in (0..rest_axes.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < dims[rest_axes[pos]] {
                break;
            }
            idx[pos] = 0;
        }
    }

    let mut outcomes = Vec::with_capacity(d * d);
    let mut prob_sum = 0.0;
    for ((m, n), bell) in basis.iter() {
        let mut projected = vec![Complex64::new(0.0, 0.0); rest_total];
        for i in 0..d {
            for j in 0..d {
                let coeff = bell.amp(i * d + j).conj();
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                let base = i * strides[ax_first] + j * strides[ax_second];
                for (r, &ro) in rest_offsets.iter().enumerate() {
                    projected[r] += coeff * joint.amp(base + ro);
                }
            }
        }
        let probability: f64 = projected.iter().map(|c| c.norm_sqr()).sum();
        prob_sum += probability;
        let post_state = if probability >= PROB_FLOOR {
            Some(PureState::normalized(
                projected,
                rest_dims.clone(),
                rest_labels.clone(),
            )?)
        } else {
            None
        };
        outcomes.push(MeasurementOutcome {
            m,
            n,
            probability,
            post_state,
        });
    }
    debug_assert!(
        (prob_sum - 1.0).abs() <= 1e-10,
        "outcome probabilities sum to {prob_sum}"
    );
    Ok(outcomes)
}

/// Draws one outcome from the exact distribution using the supplied
/// generator. The generator is explicit: callers own the seed.
pub fn measure_sampled<R: Rng + ?Sized>(
    joint: &PureState,
    pair: (Label, Label),
    basis: &BellBasis,
    rng: &mut R,
) -> Result<MeasurementOutcome> {
    let outcomes = measure_exhaustive(joint, pair, basis)?;
    Ok(pick_outcome(outcomes, rng))
}

pub(crate) fn pick_outcome<R: Rng + ?Sized>(
    outcomes: Vec<MeasurementOutcome>,
    rng: &mut R,
) -> MeasurementOutcome {
    let u: f64 = rng.gen();
    let mut cumulative = 0.0;
    let last = outcomes.len() - 1;
    for (i, o) in outcomes.into_iter().enumerate() {
        cumulative += o.probability;
        if u < cumulative || i == last {
            return o;
        }
    }
    unreachable!("probabilities sum to 1")
}

pub(crate) fn sample_index<R: Rng + ?Sized>(probabilities: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut cumulative = 0.0;
    for (i, &p) in probabilities.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return i;
        }
    }
    probabilities.len() - 1
}
