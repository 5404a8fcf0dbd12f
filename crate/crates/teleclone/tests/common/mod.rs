//! Hand-expanded two-level fixtures, written out term by term and kept
//! independent of the library's general-D constructions. Raw amplitude
//! vectors throughout; indexing is most-significant-first, e.g. |p a b c⟩
//! sits at 8p + 4a + 2b + c.

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cis(x: f64) -> Complex64 {
    Complex64::cis(x)
}

/// Cloning-machine output for input |0⟩: (|000⟩ + p|011⟩ + (1−p)|101⟩)/N
/// with N = √(2(1−p+p²)), on (A, B, C).
pub fn phi0(p: f64) -> Vec<Complex64> {
    let n = (2.0 * (1.0 - p + p * p)).sqrt();
    let mut v = vec![c(0.0, 0.0); 8];
    v[0b000] = c(1.0 / n, 0.0);
    v[0b011] = c(p / n, 0.0);
    v[0b101] = c((1.0 - p) / n, 0.0);
    v
}

/// Cloning-machine output for input |1⟩: (|111⟩ + p|100⟩ + (1−p)|010⟩)/N.
pub fn phi1(p: f64) -> Vec<Complex64> {
    let n = (2.0 * (1.0 - p + p * p)).sqrt();
    let mut v = vec![c(0.0, 0.0); 8];
    v[0b111] = c(1.0 / n, 0.0);
    v[0b100] = c(p / n, 0.0);
    v[0b010] = c((1.0 - p) / n, 0.0);
    v
}

/// a·φ₀ + b·φ₁ on (A, B, C).
pub fn combine(p: f64, a: Complex64, b: Complex64) -> Vec<Complex64> {
    let (phi0, phi1) = (phi0(p), phi1(p));
    (0..8).map(|i| a * phi0[i] + b * phi1[i]).collect()
}

/// The shared resource (|0⟩_P φ₀ + |1⟩_P φ₁)/√2 on (P, A, B, C).
pub fn xi(p: f64) -> Vec<Complex64> {
    let r = 1.0 / 2.0f64.sqrt();
    let mut v = vec![c(0.0, 0.0); 16];
    for (i, &a) in phi0(p).iter().enumerate() {
        v[i] = a * r;
    }
    for (i, &a) in phi1(p).iter().enumerate() {
        v[8 + i] = a * r;
    }
    v
}

/// The encoded resource (e^{iθ}|0⟩_P φ₀ + e^{−iθ}|1⟩_P φ₁)/√2.
pub fn program(p: f64, theta: f64) -> Vec<Complex64> {
    let mut v = xi(p);
    for (i, a) in v.iter_mut().enumerate() {
        *a *= cis(if i < 8 { theta } else { -theta });
    }
    v
}

/// α₀e^{iθ}φ₀ + α₁e^{−iθ}φ₁ — where every success branch ends up.
pub fn eta(p: f64, theta: f64, alpha: (Complex64, Complex64)) -> Vec<Complex64> {
    combine(p, alpha.0 * cis(theta), alpha.1 * cis(-theta))
}

/// The four normalized conditional states of the standard-basis measurement
/// on |ψ⟩_d ⊗ (e^{iθ}|0⟩φ₀ + e^{−iθ}|1⟩φ₁)/√2, in (m, n) order
/// (0,0), (0,1), (1,0), (1,1). Derived by substituting
///   |00⟩ = (Φ⁺+Φ⁻)/√2, |11⟩ = (Φ⁺−Φ⁻)/√2,
///   |01⟩ = (Ψ⁺+Ψ⁻)/√2, |10⟩ = (Ψ⁺−Ψ⁻)/√2
/// into the product state; each outcome has probability 1/4.
pub fn processor_rows(p: f64, theta: f64, alpha: (Complex64, Complex64)) -> [Vec<Complex64>; 4] {
    let (a0, a1) = alpha;
    [
        combine(p, a0 * cis(theta), a1 * cis(-theta)),
        combine(p, a0 * cis(theta), -a1 * cis(-theta)),
        combine(p, a1 * cis(theta), a0 * cis(-theta)),
        combine(p, -a1 * cis(theta), a0 * cis(-theta)),
    ]
}

/// Same for the θ-dependent basis applied to |ψ⟩_d ⊗ |ξ⟩, using
///   |00⟩ = e^{iθ}(Φ̃⁺+Φ̃⁻)/√2, |11⟩ = e^{−iθ}(Φ̃⁺−Φ̃⁻)/√2,
///   |01⟩ = e^{iθ}(Ψ̃⁺+Ψ̃⁻)/√2, |10⟩ = e^{−iθ}(Ψ̃⁺−Ψ̃⁻)/√2.
/// The (m = 0) rows coincide with the processor rows; the (m = 1) rows
/// carry the opposite θ phases since here the gate never touched the
/// resource.
pub fn local_gate_rows(p: f64, theta: f64, alpha: (Complex64, Complex64)) -> [Vec<Complex64>; 4] {
    let (a0, a1) = alpha;
    [
        combine(p, a0 * cis(theta), a1 * cis(-theta)),
        combine(p, a0 * cis(theta), -a1 * cis(-theta)),
        combine(p, a1 * cis(-theta), a0 * cis(theta)),
        combine(p, -a1 * cis(-theta), a0 * cis(theta)),
    ]
}

/// Φ⁺, Φ⁻, Ψ⁺, Ψ⁻ in the same (m, n) order.
pub fn standard_bell() -> [Vec<Complex64>; 4] {
    let r = 1.0 / 2.0f64.sqrt();
    [
        vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)],
        vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-r, 0.0)],
        vec![c(0.0, 0.0), c(r, 0.0), c(r, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)],
    ]
}

/// Φ̃± = (e^{−iθ}|00⟩ ± e^{iθ}|11⟩)/√2, Ψ̃± = (e^{−iθ}|01⟩ ± e^{iθ}|10⟩)/√2.
pub fn tilted_bell(theta: f64) -> [Vec<Complex64>; 4] {
    let r = 1.0 / 2.0f64.sqrt();
    let em = cis(-theta) * r;
    let ep = cis(theta) * r;
    [
        vec![em, c(0.0, 0.0), c(0.0, 0.0), ep],
        vec![em, c(0.0, 0.0), c(0.0, 0.0), -ep],
        vec![c(0.0, 0.0), em, ep, c(0.0, 0.0)],
        vec![c(0.0, 0.0), em, -ep, c(0.0, 0.0)],
    ]
}

/// ρ_A = { [2p|α₀|² + (1−p)²]|0⟩⟨0| + [2p|α₁|² + (1−p)²]|1⟩⟨1|
///         + 2p α₀α₁* e^{2iθ}|0⟩⟨1| + 2p α₀*α₁ e^{−2iθ}|1⟩⟨0| } / (2(1−p+p²)).
pub fn rho_a(p: f64, theta: f64, alpha: (Complex64, Complex64)) -> Vec<Complex64> {
    let m = 2.0 * (1.0 - p + p * p);
    let (a0, a1) = alpha;
    vec![
        c((2.0 * p * a0.norm_sqr() + (1.0 - p) * (1.0 - p)) / m, 0.0),
        2.0 * p * a0 * a1.conj() * cis(2.0 * theta) / m,
        2.0 * p * a0.conj() * a1 * cis(-2.0 * theta) / m,
        c((2.0 * p * a1.norm_sqr() + (1.0 - p) * (1.0 - p)) / m, 0.0),
    ]
}

/// ρ_B swaps the roles of the clones: coefficient 2(1−p) and floor p².
pub fn rho_b(p: f64, theta: f64, alpha: (Complex64, Complex64)) -> Vec<Complex64> {
    let m = 2.0 * (1.0 - p + p * p);
    let q = 1.0 - p;
    let (a0, a1) = alpha;
    vec![
        c((2.0 * q * a0.norm_sqr() + p * p) / m, 0.0),
        2.0 * q * a0 * a1.conj() * cis(2.0 * theta) / m,
        2.0 * q * a0.conj() * a1 * cis(-2.0 * theta) / m,
        c((2.0 * q * a1.norm_sqr() + p * p) / m, 0.0),
    ]
}

/// F_A = (1 + p²) / (2(1 − p + p²)).
pub fn fidelity_a(p: f64) -> f64 {
    (1.0 + p * p) / (2.0 * (1.0 - p + p * p))
}

/// F_B = (2 − 2p + p²) / (2(1 − p + p²)).
pub fn fidelity_b(p: f64) -> f64 {
    (2.0 - 2.0 * p + p * p) / (2.0 * (1.0 - p + p * p))
}
