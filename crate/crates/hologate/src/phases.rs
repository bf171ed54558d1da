//! Cyclic eigensystem of the dynamical invariant and the splitting of each
//! eigenvector's Lewis-Riesenfeld phase into geometric and dynamical parts.
//!
//! The invariant of either driving family has closed-form eigenvectors
//! `(e^{-iωt} cos θ, sin θ)` per two-dimensional block, single-valued over
//! one period. The total phase an eigenvector accumulates splits as
//! `α = γ_g + γ_d`, with the geometric part evaluated as a discrete
//! holonomy (accumulated overlap phases, unwrapped) and the dynamical part
//! by quadrature of the energy expectation. The spectral form
//! `U(t;0) = Σ_n e^{iα_n(t)} |φ_n(t)⟩⟨φ_n(0)|` reassembles the full
//! evolution operator from these ingredients.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inner, outer, pauli_x, pauli_z, ComplexMatrix};
use crate::model::{CouplingAxis, OneQubitParams, SystemParams, TwoQubitParams};
use crate::propagator::propagate;
use crate::tol;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Two-valued label for invariant eigenbranches and subalgebra blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One eigenbranch of the dynamical invariant.
#[derive(Debug, Clone)]
pub struct InvariantMode {
    /// Signed eigenvalue (±λ, or ±λ_s for the two-qubit blocks).
    pub eigenvalue: f64,
    /// Mixing ratio ξ = [(Δ-ω) ± λ]/Ω; ±∞ in the Ω → 0 limit.
    pub xi: f64,
    /// Mixing angle with cos θ = ξ/√(1+ξ²), sin θ = 1/√(1+ξ²).
    pub theta: f64,
    /// Which su(2) block the mode lives in; `None` for the one-qubit family.
    pub block: Option<Sign>,
    /// ± branch within its block (+ ↔ +λ).
    pub sign: Sign,
    cos_theta: f64,
    sin_theta: f64,
    block_detuning: f64,
}

impl InvariantMode {
    /// Compact label: "+"/"-" for one qubit; block then branch ("+-", ...)
    /// for two qubits.
    pub fn label(&self) -> String {
        match self.block {
            None => self.sign.symbol().to_string(),
            Some(block) => format!("{}{}", block.symbol(), self.sign.symbol()),
        }
    }
}

/// Closed-form eigensystem of the dynamical invariant in the single-valued
/// cyclic gauge (the `e^{-iωt}` factor on the first block component).
#[derive(Debug, Clone)]
pub struct InvariantEigensystem {
    dim: usize,
    drive: f64,
    rabi: f64,
    modes: Vec<InvariantMode>,
    /// Local frame conjugation for the XX coupling axis (H⊗H); `None`
    /// otherwise. Phases are frame-invariant, vectors are not.
    frame: Option<ComplexMatrix>,
}

/// (cos θ, sin θ, ξ) for one branch, including the Ω → 0 limits where the
/// invariant is already diagonal.
fn branch_angles(rabi: f64, detuning_shift: f64, lambda: f64, sign: Sign) -> (f64, f64, f64) {
    if rabi != 0.0 {
        let xi = (detuning_shift + sign.value() * lambda) / rabi;
        let norm = (1.0 + xi * xi).sqrt();
        (xi / norm, 1.0 / norm, xi)
    } else if detuning_shift > 0.0 {
        match sign {
            Sign::Plus => (1.0, 0.0, f64::INFINITY),
            Sign::Minus => (0.0, 1.0, 0.0),
        }
    } else {
        // Δ - ω ≤ 0, including the doubly degenerate Δ = ω case, for which
        // this fixes the basis convention.
        match sign {
            Sign::Plus => (0.0, 1.0, 0.0),
            Sign::Minus => (-1.0, 0.0, f64::NEG_INFINITY),
        }
    }
}

fn block_modes(
    rabi: f64,
    drive: f64,
    block_detuning: f64,
    block: Option<Sign>,
) -> Vec<InvariantMode> {
    let shift = block_detuning - drive;
    let lambda = rabi.hypot(shift);
    [Sign::Minus, Sign::Plus]
        .into_iter()
        .map(|sign| {
            let (cos_theta, sin_theta, xi) = branch_angles(rabi, shift, lambda, sign);
            InvariantMode {
                eigenvalue: sign.value() * lambda,
                xi,
                theta: sin_theta.atan2(cos_theta),
                block,
                sign,
                cos_theta,
                sin_theta,
                block_detuning,
            }
        })
        .collect()
}

impl InvariantEigensystem {
    pub fn one_qubit(p: &OneQubitParams) -> Self {
        let mut modes = block_modes(p.rabi, p.drive, p.detuning, None);
        modes.sort_by(|a, b| a.eigenvalue.partial_cmp(&b.eigenvalue).unwrap());
        InvariantEigensystem { dim: 2, drive: p.drive, rabi: p.rabi, modes, frame: None }
    }

    pub fn two_qubit(p: &TwoQubitParams) -> Self {
        let mut modes = block_modes(p.rabi, p.drive, p.delta_plus(), Some(Sign::Plus));
        modes.extend(block_modes(p.rabi, p.drive, p.delta_minus(), Some(Sign::Minus)));
        modes.sort_by(|a, b| a.eigenvalue.partial_cmp(&b.eigenvalue).unwrap());
        let frame = match p.axis {
            CouplingAxis::ZZ => None,
            CouplingAxis::XX => {
                let h = pauli_x()
                    .add(&pauli_z())
                    .scale(c(std::f64::consts::FRAC_1_SQRT_2, 0.0));
                Some(h.kron(&h))
            }
        };
        InvariantEigensystem { dim: 4, drive: p.drive, rabi: p.rabi, modes, frame }
    }

    pub fn for_params(p: &SystemParams) -> Self {
        match p {
            SystemParams::OneQubit(p) => Self::one_qubit(p),
            SystemParams::TwoQubit(p) => Self::two_qubit(p),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn drive(&self) -> f64 {
        self.drive
    }

    /// Modes ordered by ascending eigenvalue.
    pub fn modes(&self) -> &[InvariantMode] {
        &self.modes
    }

    fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.drive
    }

    /// The two logical components (e^{-iωt} cos θ, sin θ) of mode `n`.
    ///
    /// The drive phase is evaluated modulo the period, which makes the
    /// cyclic gauge exactly single-valued: the components at t = T equal
    /// those at t = 0 bit for bit.
    fn logical_components(&self, n: usize, t: f64) -> (Complex64, Complex64) {
        let mode = &self.modes[n];
        let wrapped = t.rem_euclid(self.period());
        let phase = Complex64::from_polar(1.0, -self.drive * wrapped);
        (phase * mode.cos_theta, c(mode.sin_theta, 0.0))
    }

    fn embed(&self, n: usize, first: Complex64, second: Complex64) -> Vec<Complex64> {
        let mode = &self.modes[n];
        let mut v = vec![Complex64::ZERO; self.dim];
        let offset = match mode.block {
            None | Some(Sign::Plus) => 0,
            Some(Sign::Minus) => 2,
        };
        v[offset] = first;
        v[offset + 1] = second;
        if let Some(frame) = &self.frame {
            v = frame.mul_vec(&v);
        }
        v
    }

    /// Unit eigenvector |φ_n(t)⟩.
    pub fn vector_at(&self, n: usize, t: f64) -> Vec<Complex64> {
        let (first, second) = self.logical_components(n, t);
        self.embed(n, first, second)
    }

    /// Time derivative d|φ_n(t)⟩/dt.
    pub fn vector_dt(&self, n: usize, t: f64) -> Vec<Complex64> {
        let (first, _) = self.logical_components(n, t);
        self.embed(n, first * c(0.0, -self.drive), Complex64::ZERO)
    }

    /// Closed-form Lewis-Riesenfeld phase α_n(t) = (ω - λ_n) t / 2 of the
    /// su(2) block dynamics, with λ_n the signed eigenvalue.
    pub fn lr_phase(&self, n: usize, t: f64) -> f64 {
        (self.drive - self.modes[n].eigenvalue) * t / 2.0
    }

    fn check_mode(&self, n: usize) -> Result<()> {
        if n < self.modes.len() {
            Ok(())
        } else {
            Err(Error::NoSuchMode { index: n, count: self.modes.len() })
        }
    }
}

/// Phases accumulated by one invariant eigenvector over a full period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRecord {
    /// Total Lewis-Riesenfeld phase α(T) = γ_g + γ_d, radians.
    pub alpha: f64,
    /// Geometric (Aharonov-Anandan) part.
    pub gamma_g: f64,
    /// Dynamical part -∫₀ᵀ ⟨φ|H|φ⟩ dt.
    pub gamma_d: f64,
}

/// Convenience wrapper for [`InvariantEigensystem::for_params`].
pub fn invariant_eigensystem(p: &SystemParams) -> InvariantEigensystem {
    InvariantEigensystem::for_params(p)
}

/// Energy expectation ⟨φ_n(t)|H(t)|φ_n(t)⟩ evaluated on the logical
/// 2-vector of the mode's su(2) block.
///
/// For the two-qubit family this is the su(2)⊕su(2) part of the
/// Hamiltonian; the u(1) waveform term is a separate exactly known local
/// factor and does not enter the holonomic phase budget.
fn block_energy(es: &InvariantEigensystem, n: usize, t: f64) -> f64 {
    let mode = &es.modes[n];
    let (a, b) = es.logical_components(n, t);
    // ⟨φ|(Ω cos ωt σx + Ω sin ωt σy + Δ σz)|φ⟩/2
    //   = Ω Re(ā b e^{-iωt}) + Δ(|a|² - |b|²)/2.
    let transverse = Complex64::from_polar(es.rabi, -es.drive * t);
    (a.conj() * b * transverse).re + 0.5 * mode.block_detuning * (a.norm_sqr() - b.norm_sqr())
}

/// Split the Lewis-Riesenfeld phase of mode `n` over one period.
///
/// `gamma_g` is the discrete holonomy Σ arg⟨φ(t_{k+1})|φ(t_k)⟩ on a uniform
/// grid of `steps` intervals (each increment stays far below π, so the
/// unwrapped total has no modular ambiguity); `gamma_d` is a composite
/// trapezoid quadrature of -⟨φ|H|φ⟩; `alpha` is their sum.
pub fn phase_split(p: &SystemParams, n: usize, steps: usize) -> Result<PhaseRecord> {
    let es = invariant_eigensystem(p);
    es.check_mode(n)?;
    if steps < tol::MIN_PHASE_STEPS {
        return Err(Error::TooFewSteps { got: steps, min: tol::MIN_PHASE_STEPS });
    }
    let period = es.period();
    let dt = period / steps as f64;

    let mut gamma_g = 0.0;
    let (mut prev_a, mut prev_b) = es.logical_components(n, 0.0);
    let mut energy_sum = 0.5 * block_energy(&es, n, 0.0);
    for k in 1..=steps {
        let t = if k == steps { period } else { k as f64 * dt };
        let (a, b) = es.logical_components(n, t);
        let overlap = a.conj() * prev_a + b.conj() * prev_b;
        gamma_g += overlap.arg();
        let weight = if k == steps { 0.5 } else { 1.0 };
        energy_sum += weight * block_energy(&es, n, t);
        prev_a = a;
        prev_b = b;
    }
    let gamma_d = -energy_sum * dt;
    Ok(PhaseRecord { alpha: gamma_g + gamma_d, gamma_g, gamma_d })
}

/// Discrete holonomy of mode `n` along an arbitrary closed time grid.
///
/// The grid must run from 0 to one period (the gauge is single-valued, so
/// the loop closes); spacing may be non-uniform. Exposed to demonstrate the
/// time-reparametrization invariance of the geometric phase.
pub fn geometric_phase_on_grid(p: &SystemParams, n: usize, times: &[f64]) -> Result<f64> {
    let es = invariant_eigensystem(p);
    es.check_mode(n)?;
    if times.len() < tol::MIN_PHASE_STEPS {
        return Err(Error::TooFewSteps { got: times.len(), min: tol::MIN_PHASE_STEPS });
    }
    let mut gamma = 0.0;
    let mut prev = es.vector_at(n, times[0]);
    for &t in &times[1..] {
        let current = es.vector_at(n, t);
        gamma += inner(&current, &prev).arg();
        prev = current;
    }
    Ok(gamma)
}

/// Evolution operator from the spectral form
/// U(t;0) = U_q(t) Σ_n e^{iα_n(t)} |φ_n(t)⟩⟨φ_n(0)|, with the closed-form
/// block phases α_n(t) = (ω - λ_n)t/2 and, for the two-qubit family, the
/// u(1) waveform factor U_q(t) = exp(-i P⊗𝟙 ∫₀ᵗ q) folded in per block.
pub fn reconstruct_evolution(p: &SystemParams, t: f64) -> ComplexMatrix {
    let es = invariant_eigensystem(p);
    let q_integral = match p {
        SystemParams::OneQubit(_) => 0.0,
        SystemParams::TwoQubit(p2) => p2.q.integral_to(t),
    };
    let mut u = ComplexMatrix::zeros(es.dim());
    for n in 0..es.modes().len() {
        let block_sign = es.modes()[n].block.map_or(0.0, Sign::value);
        let phase = es.lr_phase(n, t) - block_sign * q_integral;
        let now = es.vector_at(n, t);
        let start = es.vector_at(n, 0.0);
        u = u.add(&outer(&now, &start).scale(Complex64::from_polar(1.0, phase)));
    }
    u
}

/// Worst violation, over a uniform grid and all mode pairs m ≠ n, of the
/// off-diagonal identity ⟨φ_m|H|φ_n⟩ = i⟨φ_m|dφ_n/dt⟩ obeyed by invariant
/// eigenvectors (with the full Hamiltonian, waveform included).
pub fn off_diagonal_identity_defect(p: &SystemParams, steps: usize) -> f64 {
    let es = invariant_eigensystem(p);
    let count = es.modes().len();
    let mut worst = 0.0f64;
    for k in 0..steps {
        let t = es.period() * k as f64 / steps as f64;
        let h = p.hamiltonian(t);
        let vectors: Vec<_> = (0..count).map(|n| es.vector_at(n, t)).collect();
        let derivatives: Vec<_> = (0..count).map(|n| es.vector_dt(n, t)).collect();
        for m in 0..count {
            for n in 0..count {
                if m == n {
                    continue;
                }
                let lhs = inner(&vectors[m], &h.mul_vec(&vectors[n]));
                let rhs = c(0.0, 1.0) * inner(&vectors[m], &derivatives[n]);
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    worst
}

/// Cyclic-return defect of mode `n`: propagate |φ_n(0)⟩ through one period
/// with the full Hamiltonian and compare against e^{iα_n(T)} |φ_n(0)⟩,
/// α including the u(1) waveform phase on the mode's block.
pub fn cyclic_return_defect(p: &SystemParams, n: usize, steps: usize) -> Result<f64> {
    let es = invariant_eigensystem(p);
    es.check_mode(n)?;
    let period = es.period();
    let propagated = propagate(|t| p.hamiltonian(t), 0.0, period, steps)?;
    let start = es.vector_at(n, 0.0);
    let evolved = propagated.unitary.mul_vec(&start);
    let q_integral = match p {
        SystemParams::OneQubit(_) => 0.0,
        SystemParams::TwoQubit(p2) => p2.q.integral_to(period),
    };
    let block_sign = es.modes()[n].block.map_or(0.0, Sign::value);
    let phase = Complex64::from_polar(1.0, es.lr_phase(n, period) - block_sign * q_integral);
    let defect: f64 = evolved
        .iter()
        .zip(&start)
        .map(|(&got, &want)| (got - phase * want).norm())
        .fold(0.0, f64::max);
    Ok(defect)
}
