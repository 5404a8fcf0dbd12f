//! Dense complex linear algebra over tensor-product Hilbert spaces.
//!
//! Everything in this crate works on flat amplitude vectors with one fixed
//! indexing convention: the amplitude of the basis ket |k₀ k₁ … k_{s−1}⟩
//! sits at flat index Σ_j k_j · Π_{l>j} dims[l], i.e. the *first* subsystem
//! is the most significant digit. All modules share this convention; the
//! Bell-expansion algebra in [`crate::bell`] depends on it.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Default equality / constructor tolerance.
pub const TOL: f64 = 1e-10;
/// Tighter tolerance used when comparing against independent oracles.
pub const STRICT_TOL: f64 = 1e-12;
/// Measurement outcomes below this probability are reported without a
/// post-state (normalizing them would divide by ~0).
pub const PROB_FLOOR: f64 = 1e-14;

/// Subsystem name. The protocol uses `d`, `P`, `A`, `B`, `C`.
pub type Label = char;

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Flat offsets of every multi-index over the chosen axes, enumerated
/// row-major in the order the axes are given (last axis fastest).
fn axis_offsets(dims: &[usize], strides: &[usize], axes: &[usize]) -> Vec<usize> {
    let total: usize = axes.iter().map(|&a| dims[a]).product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; axes.len()];
    for _ in 0..total {
        out.push(idx.iter().zip(axes).map(|(&i, &a)| i * strides[a]).sum());
        for pos in (0..axes.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < dims[axes[pos]] {
                break;
            }
            idx[pos] = 0;
        }
    }
    out
}

fn check_labels_unique(labels: &[Label]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[i + 1..].contains(l) {
            return Err(Error::DuplicateLabel(*l));
        }
    }
    Ok(())
}

/// Largest entrywise absolute difference between two complex slices.
pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "max_abs_diff: length mismatch");
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// A normalized pure state over an ordered list of labeled subsystems.
#[derive(Debug, Clone)]
pub struct PureState {
    amps: Vec<Complex64>,
    dims: Vec<usize>,
    labels: Vec<Label>,
}

impl PureState {
    /// Builds a state from explicit amplitudes. The vector must already be
    /// normalized to within [`TOL`].
    pub fn new(amps: Vec<Complex64>, dims: Vec<usize>, labels: Vec<Label>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(
                "subsystem dimensions must be positive".into(),
            ));
        }
        if dims.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} dims but {} labels",
                dims.len(),
                labels.len()
            )));
        }
        check_labels_unique(&labels)?;
        let total: usize = dims.iter().product();
        if amps.len() != total {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector has length {} but dims give {}",
                amps.len(),
                total
            )));
        }
        let state = PureState { amps, dims, labels };
        let norm = state.norm();
        if (norm - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Builds a state from an unnormalized vector by dividing out its norm.
    pub fn normalized(mut amps: Vec<Complex64>, dims: Vec<usize>, labels: Vec<Label>) -> Result<Self> {
        let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < PROB_FLOOR.sqrt() {
            return Err(Error::ZeroVector);
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::new(amps, dims, labels)
    }

    /// The basis ket |levels₀ levels₁ …⟩.
    pub fn basis_ket(dims: &[usize], labels: &[Label], levels: &[usize]) -> Result<Self> {
        if levels.len() != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} levels for {} subsystems",
                levels.len(),
                dims.len()
            )));
        }
        for (i, (&k, &d)) in levels.iter().zip(dims).enumerate() {
            if k >= d {
                return Err(Error::IndexOutOfRange(format!(
                    "level {k} out of range for subsystem {i} of dimension {d}"
                )));
            }
        }
        let s = strides(dims);
        let flat: usize = levels.iter().zip(&s).map(|(&k, &st)| k * st).sum();
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        amps[flat] = Complex64::new(1.0, 0.0);
        Self::new(amps, dims.to_vec(), labels.to_vec())
    }

    /// A Haar-like random state: i.i.d. complex Gaussian amplitudes,
    /// normalized.
    pub fn random<R: Rng + ?Sized>(dims: &[usize], labels: &[Label], rng: &mut R) -> Self {
        let total: usize = dims.iter().product();
        let amps: Vec<Complex64> = (0..total)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(amps, dims.to_vec(), labels.to_vec())
            .expect("gaussian vector is nonzero with probability 1")
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Position of a labeled subsystem.
    pub fn axis_of(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Same amplitudes under new subsystem names.
    pub fn with_labels(&self, labels: &[Label]) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} subsystems",
                labels.len(),
                self.labels.len()
            )));
        }
        check_labels_unique(labels)?;
        Ok(PureState {
            amps: self.amps.clone(),
            dims: self.dims.clone(),
            labels: labels.to_vec(),
        })
    }

    /// Tensor product; `self`'s subsystems become the most significant.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        check_labels_unique(&labels)?;
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        PureState::new(amps, dims, labels)
    }

    /// Applies `op` to the targeted subsystems (identity elsewhere). The
    /// operator must have passed unitarity verification so the result stays
    /// normalized.
    pub fn apply(&self, op: &Operator, targets: &[Label]) -> Result<PureState> {
        if !op.is_unitary_verified() {
            return Err(Error::UnverifiedOperator);
        }
        let axes: Vec<usize> = targets
            .iter()
            .map(|&l| self.axis_of(l))
            .collect::<Result<_>>()?;
        let target_dims: Vec<usize> = axes.iter().map(|&a| self.dims[a]).collect();
        if target_dims != op.dims() {
            return Err(Error::DimensionMismatch(format!(
                "operator acts on dims {:?} but targets have dims {:?}",
                op.dims(),
                target_dims
            )));
        }
        let st = strides(&self.dims);
        let rest_axes: Vec<usize> = (0..self.dims.len()).filter(|a| !axes.contains(a)).collect();
        let op_offsets = axis_offsets(&self.dims, &st, &axes);
        let rest_offsets = axis_offsets(&self.dims, &st, &rest_axes);
        let n = op_offsets.len();

        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for &base in &rest_offsets {
            for (row, &ro) in op_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (col, &co) in op_offsets.iter().enumerate() {
                    acc += op.element(row, col) * self.amps[base + co];
                }
                out[base + ro] = acc;
            }
        }
        debug_assert_eq!(n * n, op.matrix().len());
        PureState::new(out, self.dims.clone(), self.labels.clone())
    }

    /// Reduced density matrix on the kept subsystems, in the order given.
    pub fn partial_trace(&self, keep: &[Label]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("empty keep list".into()));
        }
        check_labels_unique(keep)?;
        let keep_axes: Vec<usize> = keep.iter().map(|&l| self.axis_of(l)).collect::<Result<_>>()?;
        let rest_axes: Vec<usize> = (0..self.dims.len())
            .filter(|a| !keep_axes.contains(a))
            .collect();
        let st = strides(&self.dims);
        let keep_offsets = axis_offsets(&self.dims, &st, &keep_axes);
        let rest_offsets = axis_offsets(&self.dims, &st, &rest_axes);
        let k = keep_offsets.len();

        let mut rho = vec![Complex64::new(0.0, 0.0); k * k];
        for (i, &ki) in keep_offsets.iter().enumerate() {
            for (j, &kj) in keep_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &r in &rest_offsets {
                    acc += self.amps[ki + r] * self.amps[kj + r].conj();
                }
                rho[i * k + j] = acc;
            }
        }
        let dims = keep_axes.iter().map(|&a| self.dims[a]).collect();
        Ok(DensityMatrix {
            matrix: rho,
            dims,
            labels: keep.to_vec(),
        })
    }

    /// ⟨self|other⟩, conjugating `self`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩| — the global-phase-insensitive equality measure.
    pub fn overlap_mag(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }
}

/// A complex square matrix acting on a declared list of subsystem dims,
/// stored row-major.
#[derive(Debug, Clone)]
pub struct Operator {
    matrix: Vec<Complex64>,
    dims: Vec<usize>,
    unitary: bool,
}

impl Operator {
    /// Wraps a matrix without unitarity verification.
    pub fn new(matrix: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if n == 0 || matrix.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} entries, dims {:?} require {}",
                matrix.len(),
                dims,
                n * n
            )));
        }
        Ok(Operator {
            matrix,
            dims,
            unitary: false,
        })
    }

    /// Wraps a matrix and verifies U†U = I to within [`TOL`], recording the
    /// verification in the constructed value.
    pub fn verified(matrix: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let op = Self::new(matrix, dims)?;
        let defect = op.max_unitarity_defect();
        if defect > TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Operator { unitary: true, ..op })
    }

    pub fn identity(dims: &[usize]) -> Self {
        let n: usize = dims.iter().product();
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            matrix[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Operator {
            matrix,
            dims: dims.to_vec(),
            unitary: true,
        }
    }

    /// Diagonal operator from its diagonal entries (unitarity-verified).
    pub fn diagonal(entries: &[Complex64], dims: &[usize]) -> Result<Self> {
        let n: usize = dims.iter().product();
        if entries.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} diagonal entries for total dimension {}",
                entries.len(),
                n
            )));
        }
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &e) in entries.iter().enumerate() {
            matrix[i * n + i] = e;
        }
        Self::verified(matrix, dims.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.dim() + col]
    }

    pub fn is_unitary_verified(&self) -> bool {
        self.unitary
    }

    /// max |(U†U − I)_{ij}|.
    pub fn max_unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.matrix[k * n + i].conj() * self.matrix[k * n + j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((acc - expect).norm());
            }
        }
        defect
    }

    pub fn adjoint(&self) -> Operator {
        let n = self.dim();
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = self.matrix[j * n + i].conj();
            }
        }
        Operator {
            matrix,
            dims: self.dims.clone(),
            unitary: self.unitary,
        }
    }

    /// Matrix product `self · other`. The result is not re-verified.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        let n = self.dim();
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.matrix[i * n + k];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    matrix[i * n + j] += aik * other.matrix[k * n + j];
                }
            }
        }
        Operator::new(matrix, self.dims.clone())
    }

    /// Kronecker product; `self` becomes the most significant factor.
    pub fn kron(&self, other: &Operator) -> Operator {
        let n1 = self.dim();
        let n2 = other.dim();
        let n = n1 * n2;
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for i1 in 0..n1 {
            for j1 in 0..n1 {
                let a = self.matrix[i1 * n1 + j1];
                for i2 in 0..n2 {
                    for j2 in 0..n2 {
                        matrix[(i1 * n2 + i2) * n + (j1 * n2 + j2)] =
                            a * other.matrix[i2 * n2 + j2];
                    }
                }
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Operator {
            matrix,
            dims,
            unitary: self.unitary && other.unitary,
        }
    }
}

/// A density matrix over labeled subsystems. Hermiticity, unit trace and
/// positivity are contracts of the producing operations; [`Self::validate`]
/// checks them explicitly.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: Vec<Complex64>,
    dims: Vec<usize>,
    labels: Vec<Label>,
}

impl DensityMatrix {
    pub fn new(matrix: Vec<Complex64>, dims: Vec<usize>, labels: Vec<Label>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if n == 0 || matrix.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} entries, dims {:?} require {}",
                matrix.len(),
                dims,
                n * n
            )));
        }
        if dims.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} dims but {} labels",
                dims.len(),
                labels.len()
            )));
        }
        check_labels_unique(&labels)?;
        Ok(DensityMatrix { matrix, dims, labels })
    }

    /// |ψ⟩⟨ψ|.
    pub fn from_pure(state: &PureState) -> Self {
        let n = state.total_dim();
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = state.amps[i] * state.amps[j].conj();
            }
        }
        DensityMatrix {
            matrix,
            dims: state.dims.clone(),
            labels: state.labels.clone(),
        }
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.total_dim() + col]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.total_dim();
        (0..n).map(|i| self.matrix[i * n + i]).sum()
    }

    pub fn axis_of(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Reduced density matrix on the kept subsystems, in the order given.
    pub fn partial_trace(&self, keep: &[Label]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("empty keep list".into()));
        }
        check_labels_unique(keep)?;
        let keep_axes: Vec<usize> = keep.iter().map(|&l| self.axis_of(l)).collect::<Result<_>>()?;
        let rest_axes: Vec<usize> = (0..self.dims.len())
            .filter(|a| !keep_axes.contains(a))
            .collect();
        let st = strides(&self.dims);
        let keep_offsets = axis_offsets(&self.dims, &st, &keep_axes);
        let rest_offsets = axis_offsets(&self.dims, &st, &rest_axes);
        let n = self.total_dim();
        let k = keep_offsets.len();

        let mut rho = vec![Complex64::new(0.0, 0.0); k * k];
        for (i, &ki) in keep_offsets.iter().enumerate() {
            for (j, &kj) in keep_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &r in &rest_offsets {
                    acc += self.matrix[(ki + r) * n + (kj + r)];
                }
                rho[i * k + j] = acc;
            }
        }
        let dims = keep_axes.iter().map(|&a| self.dims[a]).collect();
        Ok(DensityMatrix {
            matrix: rho,
            dims,
            labels: keep.to_vec(),
        })
    }

    /// ⟨target|ρ|target⟩, clamped to [0, 1].
    pub fn fidelity_pure(&self, target: &PureState) -> Result<f64> {
        if self.dims != target.dims {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.dims, target.dims
            )));
        }
        let n = self.total_dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += target.amps[i].conj() * self.matrix[i * n + j] * target.amps[j];
            }
        }
        debug_assert!(acc.im.abs() <= TOL, "fidelity has imaginary part {}", acc.im);
        Ok(acc.re.clamp(0.0, 1.0))
    }

    /// Smallest eigenvalue (matrix treated as Hermitian).
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.matrix, self.total_dim())
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks hermiticity, unit trace, and positive semidefiniteness (all
    /// within `tol`; the eigenvalue floor is −tol).
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.total_dim();
        for i in 0..n {
            for j in i..n {
                let d = (self.matrix[i * n + j] - self.matrix[j * n + i].conj()).norm();
                if d > tol {
                    return Err(Error::InvalidDensityMatrix(format!(
                        "not Hermitian at ({i},{j}): defect {d:.3e}"
                    )));
                }
            }
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace = {tr}")));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < -tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(())
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Adequate for the small matrices this crate produces (n ≤ a few hundred).
pub fn hermitian_eigenvalues(matrix: &[Complex64], n: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let scale: f64 = a.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].norm());
            }
        }
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Rotation on the (p, q) plane:
                //   |p'⟩ = c|p⟩ + s e^{−iφ}|q⟩,  |q'⟩ = −s e^{iφ}|p⟩ + c|q⟩.
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp + s * phase.conj() * akq;
                    let new_kq = -s * phase * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[k * n + q] = new_kq;
                    a[p * n + k] = new_kp.conj();
                    a[q * n + k] = new_kq.conj();
                }
                let new_pp = c * c * app + 2.0 * c * s * mag + s * s * aqq;
                let new_qq = s * s * app - 2.0 * c * s * mag + c * c * aqq;
                a[p * n + p] = Complex64::new(new_pp, 0.0);
                a[q * n + q] = Complex64::new(new_qq, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    (0..n).map(|i| a[i * n + i].re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket(dims: &[usize], labels: &[Label], levels: &[usize]) -> PureState {
        PureState::basis_ket(dims, labels, levels).unwrap()
    }

    #[test]
    fn tensor_of_basis_kets() {
        // |0⟩ ⊗ |0⟩ → (1, 0, 0, 0)
        let a = ket(&[2], &['a'], &[0]);
        let b = ket(&[2], &['b'], &[0]);
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.dims(), &[2, 2]);
        assert_eq!(ab.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn tensor_plus_with_zero() {
        // |+⟩ ⊗ |0⟩ → (1/√2, 0, 1/√2, 0) under the most-significant-first
        // convention.
        let r = 1.0 / 2.0f64.sqrt();
        let plus = PureState::new(vec![c(r, 0.0), c(r, 0.0)], vec![2], vec!['a']).unwrap();
        let zero = ket(&[2], &['b'], &[0]);
        let out = plus.tensor(&zero).unwrap();
        let expected = [c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0)];
        assert!(max_abs_diff(out.amplitudes(), &expected) < 1e-15);
    }

    #[test]
    fn tensor_norm_of_random_3x4() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = PureState::random(&[3], &['a'], &mut rng);
        let b = PureState::random(&[4], &['b'], &mut rng);
        let ab = a.tensor(&b).unwrap();
        assert_abs_diff_eq!(ab.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn tensor_rejects_duplicate_labels() {
        let a = ket(&[2], &['a'], &[0]);
        let b = ket(&[2], &['a'], &[0]);
        assert!(matches!(a.tensor(&b), Err(Error::DuplicateLabel('a'))));
    }

    #[test]
    fn apply_sigma_z_fixes_zero_ket() {
        let sz = Operator::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)], &[2]).unwrap();
        let zero = ket(&[2], &['P'], &[0]);
        let out = zero.apply(&sz, &['P']).unwrap();
        assert!(max_abs_diff(out.amplitudes(), zero.amplitudes()) < 1e-15);
    }

    #[test]
    fn apply_diagonal_phase_on_excited_ket() {
        // diag(e^{iθ}, e^{−iθ}) at θ = π/2 sends |1⟩ to −i|1⟩.
        let th = std::f64::consts::FRAC_PI_2;
        let u = Operator::diagonal(&[Complex64::cis(th), Complex64::cis(-th)], &[2]).unwrap();
        let one = ket(&[2], &['P'], &[1]);
        let out = one.apply(&u, &['P']).unwrap();
        assert!((out.amp(1) - c(0.0, -1.0)).norm() < 1e-15);
        assert!(out.amp(0).norm() < 1e-15);
    }

    #[test]
    fn apply_preserves_norm_on_three_subsystems() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let state = PureState::random(&[2, 3, 2], &['x', 'y', 'z'], &mut rng);
        // A random diagonal unitary on the middle subsystem.
        let phases: Vec<Complex64> = (0..3)
            .map(|_| Complex64::cis(rng.gen::<f64>() * std::f64::consts::TAU))
            .collect();
        let u = Operator::diagonal(&phases, &[3]).unwrap();
        let out = state.apply(&u, &['y']).unwrap();
        assert_abs_diff_eq!(out.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn apply_identity_is_identity_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let state = PureState::random(&[2, 2, 3], &['x', 'y', 'z'], &mut rng);
        let id = Operator::identity(&[2, 3]);
        let out = state.apply(&id, &['y', 'z']).unwrap();
        assert!(max_abs_diff(out.amplitudes(), state.amplitudes()) <= 1e-12);
    }

    #[test]
    fn apply_rejects_unknown_label_and_mismatch() {
        let state = ket(&[2, 2], &['a', 'b'], &[0, 0]);
        let id2 = Operator::identity(&[2]);
        assert!(matches!(state.apply(&id2, &['q']), Err(Error::UnknownLabel('q'))));
        let id3 = Operator::identity(&[3]);
        assert!(matches!(
            state.apply(&id3, &['a']),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn apply_rejects_unverified_operator() {
        let not_unitary = Operator::new(vec![c(2.0, 0.0)], vec![1]).unwrap();
        let state = ket(&[1], &['a'], &[0]);
        assert!(matches!(
            state.apply(&not_unitary, &['a']),
            Err(Error::UnverifiedOperator)
        ));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let s = ket(&[2, 2], &['a', 'b'], &[0, 0]);
        let rho = s.partial_trace(&['a']).unwrap();
        assert!((rho.element(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(rho.element(1, 1).norm() < 1e-15);
        assert!(rho.element(0, 1).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_pair_is_maximally_mixed() {
        let r = 1.0 / 2.0f64.sqrt();
        let bell = PureState::new(
            vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)],
            vec![2, 2],
            vec!['a', 'b'],
        )
        .unwrap();
        let rho = bell.partial_trace(&['a']).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 0.5 } else { 0.0 };
                assert!((rho.element(i, j) - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_keep_all_reproduces_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = PureState::random(&[2, 3], &['a', 'b'], &mut rng);
        let rho = s.partial_trace(&['a', 'b']).unwrap();
        let proj = DensityMatrix::from_pure(&s);
        assert!(max_abs_diff(rho.matrix(), proj.matrix()) <= 1e-12);
    }

    #[test]
    fn partial_trace_respects_keep_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = PureState::random(&[2, 3], &['a', 'b'], &mut rng);
        let ab = s.partial_trace(&['a', 'b']).unwrap();
        let ba = s.partial_trace(&['b', 'a']).unwrap();
        assert_eq!(ba.dims(), &[3, 2]);
        // (a,b) entry of one equals the transposed-index entry of the other.
        for a1 in 0..2 {
            for b1 in 0..3 {
                for a2 in 0..2 {
                    for b2 in 0..3 {
                        let x = ab.element(a1 * 3 + b1, a2 * 3 + b2);
                        let y = ba.element(b1 * 2 + a1, b2 * 2 + a2);
                        assert!((x - y).norm() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_errors() {
        let s = ket(&[2, 2], &['a', 'b'], &[0, 0]);
        assert!(matches!(s.partial_trace(&[]), Err(Error::InvalidArgument(_))));
        assert!(matches!(s.partial_trace(&['z']), Err(Error::UnknownLabel('z'))));
    }

    /// Index-looping reference used as an independent oracle: forms the full
    /// projector and sums the traced indices one tuple at a time.
    fn partial_trace_reference(s: &PureState, keep: &[Label]) -> Vec<Complex64> {
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
        let keep_dims: Vec<usize> = keep_axes.iter().map(|&a| dims[a]).collect();
        let k: usize = keep_dims.iter().product();
        let mut rho = vec![Complex64::new(0.0, 0.0); k * k];
        let total = s.total_dim();
        for i in 0..total {
            let ti = unflatten(i);
            for j in 0..total {
                let tj = unflatten(j);
                // Contributes iff all non-kept indices coincide.
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

    #[test]
    fn partial_trace_matches_bruteforce_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases: &[(&[usize], &[Label], &[Label])] = &[
            (&[2, 2], &['a', 'b'], &['a']),
            (&[2, 3], &['a', 'b'], &['b']),
            (&[3, 2, 3], &['a', 'b', 'c'], &['b']),
            (&[2, 3, 2], &['a', 'b', 'c'], &['a', 'c']),
            (&[3, 3, 2], &['a', 'b', 'c'], &['c', 'a']),
        ];
        for &(dims, labels, keep) in cases {
            let s = PureState::random(dims, labels, &mut rng);
            let fast = s.partial_trace(keep).unwrap();
            let slow = partial_trace_reference(&s, keep);
            assert!(
                max_abs_diff(fast.matrix(), &slow) <= 1e-12,
                "oracle mismatch for dims {dims:?} keep {keep:?}"
            );
        }
    }

    #[test]
    fn inner_product_basics() {
        let zero = ket(&[2], &['a'], &[0]);
        let one = ket(&[2], &['a'], &[1]);
        assert_eq!(zero.inner(&one).unwrap(), c(0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = PureState::random(&[2, 2], &['a', 'b'], &mut rng);
        assert_abs_diff_eq!(s.inner(&s).unwrap().re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.inner(&s).unwrap().im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn inner_product_conjugates_left_argument() {
        let a = PureState::new(vec![c(0.0, 1.0)], vec![1], vec!['a']).unwrap();
        let b = PureState::new(vec![c(1.0, 0.0)], vec![1], vec!['a']).unwrap();
        assert!((a.inner(&b).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn fidelity_basics() {
        let zero = ket(&[2], &['a'], &[0]);
        let rho = DensityMatrix::from_pure(&zero);
        assert_abs_diff_eq!(rho.fidelity_pure(&zero).unwrap(), 1.0, epsilon = 1e-15);

        // Maximally mixed state has fidelity 1/2 with any qubit pure state.
        let mixed = DensityMatrix::new(
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
            vec![2],
            vec!['a'],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let s = PureState::random(&[2], &['a'], &mut rng);
            assert_abs_diff_eq!(mixed.fidelity_pure(&s).unwrap(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn density_matrix_validate_accepts_reduced_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let s = PureState::random(&[2, 3, 2], &['a', 'b', 'c'], &mut rng);
        let rho = s.partial_trace(&['b']).unwrap();
        rho.validate(TOL).unwrap();
        assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn density_matrix_validate_rejects_bad_trace() {
        let bad = DensityMatrix::new(
            vec![c(0.9, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)],
            vec![2],
            vec!['a'],
        )
        .unwrap();
        assert!(bad.validate(TOL).is_err());
    }

    #[test]
    fn hermitian_eigenvalues_known_cases() {
        // [[2, i], [−i, 2]] has eigenvalues 1 and 3.
        let m = vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)];
        let mut eigs = hermitian_eigenvalues(&m, 2);
        eigs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(eigs[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1], 3.0, epsilon = 1e-12);

        let diag = vec![
            c(0.25, 0.0), c(0.0, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(0.25, 0.0),
        ];
        let mut eigs = hermitian_eigenvalues(&diag, 3);
        eigs.sort_by(f64::total_cmp);
        assert!((eigs[0] - 0.25).abs() < 1e-14 && (eigs[2] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn operator_verified_flags_and_rejects() {
        let h = 1.0 / 2.0f64.sqrt();
        let hadamard = Operator::verified(
            vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)],
            vec![2],
        )
        .unwrap();
        assert!(hadamard.is_unitary_verified());

        let skew = Operator::verified(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], vec![2]);
        assert!(matches!(skew, Err(Error::NotUnitary(_))));
    }

    #[test]
    fn kron_matches_block_structure() {
        let sz = Operator::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)], &[2]).unwrap();
        let id = Operator::identity(&[2]);
        let k = sz.kron(&id);
        assert_eq!(k.dims(), &[2, 2]);
        for i in 0..4 {
            let expect = if i < 2 { 1.0 } else { -1.0 };
            assert!((k.element(i, i) - c(expect, 0.0)).norm() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn prop_tensor_product_preserves_norm(
            re_a in prop::collection::vec(-1.0f64..1.0, 3),
            im_a in prop::collection::vec(-1.0f64..1.0, 3),
            re_b in prop::collection::vec(-1.0f64..1.0, 4),
            im_b in prop::collection::vec(-1.0f64..1.0, 4),
        ) {
            let amps_a: Vec<Complex64> = re_a.iter().zip(&im_a).map(|(&r, &i)| c(r, i)).collect();
            let amps_b: Vec<Complex64> = re_b.iter().zip(&im_b).map(|(&r, &i)| c(r, i)).collect();
            let norm_a: f64 = amps_a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let norm_b: f64 = amps_b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(norm_a > 0.1 && norm_b > 0.1);
            let a = PureState::normalized(amps_a, vec![3], vec!['a']).unwrap();
            let b = PureState::normalized(amps_b, vec![4], vec!['b']).unwrap();
            let ab = a.tensor(&b).unwrap();
            prop_assert!((ab.norm() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn prop_partial_trace_has_unit_trace(
            re in prop::collection::vec(-1.0f64..1.0, 12),
            im in prop::collection::vec(-1.0f64..1.0, 12),
            keep_mask in 1u8..7,
        ) {
            let amps: Vec<Complex64> = re.iter().zip(&im).map(|(&r, &i)| c(r, i)).collect();
            let norm: f64 = amps.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(norm > 0.1);
            let s = PureState::normalized(amps, vec![2, 3, 2], vec!['a', 'b', 'c']).unwrap();
            let labels = ['a', 'b', 'c'];
            let keep: Vec<Label> = (0..3).filter(|i| keep_mask & (1 << i) != 0).map(|i| labels[i]).collect();
            let rho = s.partial_trace(&keep).unwrap();
            prop_assert!((rho.trace().re - 1.0).abs() <= 1e-10);
            prop_assert!(rho.trace().im.abs() <= 1e-10);
        }
    }
}
