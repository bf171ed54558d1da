//! Driving-parameter families, their Hamiltonians, and dynamical invariants.
//!
//! Two families are covered: a single driven qubit
//! `H = (Ω cos ωt σx + Ω sin ωt σy + Δ σz)/2` with invariant
//! `I = Ω cos ωt σx + Ω sin ωt σy + (Δ-ω) σz`, and an Ising-coupled pair
//! whose Hamiltonian splits over an su(2)⊕su(2)⊕u(1) subalgebra spanned by
//! the block generators `G^s_i` plus a local u(1) term driven by a free
//! piecewise-constant waveform `q(t)`. The invariant-equation residual
//! `∂I/∂t + i[H, I]` is available both as a central difference and in closed
//! form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{pauli_x, pauli_y, pauli_z, ComplexMatrix};
use crate::tol;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}

/// Piecewise-constant control waveform: a list of (value, duration) segments.
///
/// Lookups wrap modulo the total duration, so a waveform defined over one
/// drive period extends periodically.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    segments: Vec<(f64, f64)>, // (value, duration)
    total: f64,
}

impl Waveform {
    /// Build from (value, duration) pairs. Durations must be positive.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::WaveformSegment { index: 0, duration: 0.0 });
        }
        let mut total = 0.0;
        for (index, &(value, duration)) in pairs.iter().enumerate() {
            check_finite("waveform value", value)?;
            check_finite("waveform duration", duration)?;
            if duration <= 0.0 {
                return Err(Error::WaveformSegment { index, duration });
            }
            total += duration;
        }
        Ok(Waveform { segments: pairs.to_vec(), total })
    }

    /// Single-segment constant waveform.
    pub fn constant(value: f64, duration: f64) -> Result<Self> {
        Self::from_pairs(&[(value, duration)])
    }

    /// The all-zero waveform over the given duration.
    pub fn zero(duration: f64) -> Self {
        Self::constant(0.0, duration).expect("positive duration")
    }

    pub fn total_duration(&self) -> f64 {
        self.total
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    /// Value at time `t`, wrapped modulo the total duration.
    pub fn value_at(&self, t: f64) -> f64 {
        let mut s = t.rem_euclid(self.total);
        for &(value, duration) in &self.segments {
            if s < duration {
                return value;
            }
            s -= duration;
        }
        self.segments.last().unwrap().0
    }

    /// ∫₀ᵗ q(s) ds with the waveform extended periodically.
    pub fn integral_to(&self, t: f64) -> f64 {
        let cycles = (t / self.total).floor();
        let mut rest = t - cycles * self.total;
        let mut acc = cycles * self.full_integral();
        for &(value, duration) in &self.segments {
            if rest <= 0.0 {
                break;
            }
            let span = rest.min(duration);
            acc += value * span;
            rest -= span;
        }
        acc
    }

    fn full_integral(&self) -> f64 {
        self.segments.iter().map(|&(v, d)| v * d).sum()
    }
}

/// Driving parameters of the single-qubit family, natural units (ħ = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct OneQubitParams {
    /// Rabi amplitude Ω ≥ 0.
    pub rabi: f64,
    /// Detuning Δ.
    pub detuning: f64,
    /// Drive angular frequency ω > 0; the period is T = 2π/ω.
    pub drive: f64,
}

impl OneQubitParams {
    pub fn new(rabi: f64, detuning: f64, drive: f64) -> Result<Self> {
        check_finite("rabi", rabi)?;
        check_finite("detuning", detuning)?;
        check_finite("drive", drive)?;
        if drive <= 0.0 {
            return Err(Error::NonPositiveDrive(drive));
        }
        if rabi < 0.0 {
            return Err(Error::NegativeRabi(rabi));
        }
        Ok(OneQubitParams { rabi, detuning, drive })
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.drive
    }
}

/// Which Ising coupling the two-qubit family uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingAxis {
    /// σz⊗σz coupling with a σz⊗𝟙 local u(1) term.
    ZZ,
    /// σx⊗σx coupling with a σx⊗𝟙 local u(1) term; the whole family is the
    /// ZZ one conjugated by a Hadamard on each qubit.
    XX,
}

/// Driving parameters of the Ising-coupled two-qubit family.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitParams {
    /// Rabi amplitude Ω ≥ 0 on the target qubit.
    pub rabi: f64,
    /// Target-qubit detuning D; the block detunings are Δ± = D ± J.
    pub detuning: f64,
    /// Ising coupling strength J.
    pub coupling: f64,
    /// Drive angular frequency ω > 0.
    pub drive: f64,
    /// Coupling axis.
    pub axis: CouplingAxis,
    /// Free u(1) control waveform q(t), defined over one period.
    pub q: Waveform,
}

impl TwoQubitParams {
    pub fn new(
        rabi: f64,
        detuning: f64,
        coupling: f64,
        drive: f64,
        axis: CouplingAxis,
        q: Waveform,
    ) -> Result<Self> {
        check_finite("rabi", rabi)?;
        check_finite("detuning", detuning)?;
        check_finite("coupling", coupling)?;
        check_finite("drive", drive)?;
        if drive <= 0.0 {
            return Err(Error::NonPositiveDrive(drive));
        }
        if rabi < 0.0 {
            return Err(Error::NegativeRabi(rabi));
        }
        let period = 2.0 * PI / drive;
        if (q.total_duration() - period).abs() > tol::WAVEFORM_COVER {
            return Err(Error::WaveformCoverage { expected: period, got: q.total_duration() });
        }
        Ok(TwoQubitParams { rabi, detuning, coupling, drive, axis, q })
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.drive
    }

    /// Block detuning Δ₊ = D + J.
    pub fn delta_plus(&self) -> f64 {
        self.detuning + self.coupling
    }

    /// Block detuning Δ₋ = D - J.
    pub fn delta_minus(&self) -> f64 {
        self.detuning - self.coupling
    }
}

/// Control-qubit projector (𝟙 + s P)/2 with P = σz (ZZ) or σx (XX).
fn block_projector(axis: CouplingAxis, sign: f64) -> ComplexMatrix {
    let p = match axis {
        CouplingAxis::ZZ => pauli_z(),
        CouplingAxis::XX => pauli_x(),
    };
    ComplexMatrix::identity(2).add(&p.scale(c(sign, 0.0))).scale(c(0.5, 0.0))
}

/// Target-qubit operator frame.
///
/// For ZZ coupling this is the plain Pauli frame (σx, σy, σz). For XX it is
/// the Hadamard-conjugated frame (σz, -σy, σx): the coupling term enters the
/// block detunings Δ± only if the target axis it acts on coincides with the
/// detuning axis, so the σx⊗σx family needs the target detuning along σx.
fn target_pauli(axis: CouplingAxis, index: usize) -> ComplexMatrix {
    match (axis, index) {
        (CouplingAxis::ZZ, 0) => pauli_x(),
        (CouplingAxis::ZZ, 1) => pauli_y(),
        (CouplingAxis::ZZ, 2) => pauli_z(),
        (CouplingAxis::XX, 0) => pauli_z(),
        (CouplingAxis::XX, 1) => pauli_y().scale(c(-1.0, 0.0)),
        (CouplingAxis::XX, 2) => pauli_x(),
        _ => panic!("target pauli index must be 0..3"),
    }
}

/// Block generator G^s_i = (𝟙 + s P)/2 ⊗ σ_i in the axis frame.
fn block_generator(axis: CouplingAxis, sign: f64, index: usize) -> ComplexMatrix {
    block_projector(axis, sign).kron(&target_pauli(axis, index))
}

/// Generator of the local u(1) term: σz⊗𝟙 (ZZ) or σx⊗𝟙 (XX).
pub fn u1_generator(axis: CouplingAxis) -> ComplexMatrix {
    match axis {
        CouplingAxis::ZZ => pauli_z().kron(&ComplexMatrix::identity(2)),
        CouplingAxis::XX => pauli_x().kron(&ComplexMatrix::identity(2)),
    }
}

/// The seven generators spanning su(2)⊕su(2)⊕u(1) for the given coupling
/// axis: {G⁺x, G⁺y, G⁺z, G⁻x, G⁻y, G⁻z, u(1)}.
pub fn subalgebra_generators(axis: CouplingAxis) -> Vec<ComplexMatrix> {
    let mut gens = Vec::with_capacity(7);
    for &sign in &[1.0, -1.0] {
        for index in 0..3 {
            gens.push(block_generator(axis, sign, index));
        }
    }
    gens.push(u1_generator(axis));
    gens
}

/// H(t) = (Ω cos ωt σx + Ω sin ωt σy + Δ σz)/2.
pub fn one_qubit_hamiltonian(p: &OneQubitParams, t: f64) -> ComplexMatrix {
    let phase = p.drive * t;
    pauli_x()
        .scale(c(0.5 * p.rabi * phase.cos(), 0.0))
        .add(&pauli_y().scale(c(0.5 * p.rabi * phase.sin(), 0.0)))
        .add(&pauli_z().scale(c(0.5 * p.detuning, 0.0)))
}

/// I(t) = Ω cos ωt σx + Ω sin ωt σy + (Δ-ω) σz.
pub fn one_qubit_invariant(p: &OneQubitParams, t: f64) -> ComplexMatrix {
    let phase = p.drive * t;
    pauli_x()
        .scale(c(p.rabi * phase.cos(), 0.0))
        .add(&pauli_y().scale(c(p.rabi * phase.sin(), 0.0)))
        .add(&pauli_z().scale(c(p.detuning - p.drive, 0.0)))
}

/// Closed-form ∂I/∂t for the single-qubit invariant.
pub fn one_qubit_invariant_dt(p: &OneQubitParams, t: f64) -> ComplexMatrix {
    let phase = p.drive * t;
    pauli_x()
        .scale(c(-p.drive * p.rabi * phase.sin(), 0.0))
        .add(&pauli_y().scale(c(p.drive * p.rabi * phase.cos(), 0.0)))
}

/// The su(2)⊕su(2) part of the two-qubit Hamiltonian,
/// Σ_s (Ω cos ωt G^s_x + Ω sin ωt G^s_y + Δ_s G^s_z)/2.
///
/// For ZZ coupling this equals J σz⊗σz/2 + 𝟙⊗H_c(t) with
/// H_c = (Ω cos ωt σx + Ω sin ωt σy + D σz)/2.
pub fn two_qubit_block_hamiltonian(p: &TwoQubitParams, t: f64) -> ComplexMatrix {
    let phase = p.drive * t;
    let mut h = ComplexMatrix::zeros(4);
    for &(sign, delta) in &[(1.0, p.delta_plus()), (-1.0, p.delta_minus())] {
        h = h
            .add(&block_generator(p.axis, sign, 0).scale(c(0.5 * p.rabi * phase.cos(), 0.0)))
            .add(&block_generator(p.axis, sign, 1).scale(c(0.5 * p.rabi * phase.sin(), 0.0)))
            .add(&block_generator(p.axis, sign, 2).scale(c(0.5 * delta, 0.0)));
    }
    h
}

/// Full two-qubit Hamiltonian including the u(1) waveform term
/// q(t) P⊗𝟙. The waveform lookup wraps modulo the period; the trig terms
/// use the unwrapped time (they are exactly periodic anyway).
pub fn two_qubit_hamiltonian(p: &TwoQubitParams, t: f64) -> ComplexMatrix {
    two_qubit_block_hamiltonian(p, t).add(&u1_generator(p.axis).scale(c(p.q.value_at(t), 0.0)))
}

/// I'(t) = Σ_s [Ω cos ωt G^s_x + Ω sin ωt G^s_y + (Δ_s-ω) G^s_z].
///
/// Independent of the waveform q: the u(1) generator commutes with every
/// block generator, so q drops out of the invariant equation.
pub fn two_qubit_invariant(p: &TwoQubitParams, t: f64) -> ComplexMatrix {
    let phase = p.drive * t;
    let mut inv = ComplexMatrix::zeros(4);
    for &(sign, delta) in &[(1.0, p.delta_plus()), (-1.0, p.delta_minus())] {
        inv = inv
            .add(&block_generator(p.axis, sign, 0).scale(c(p.rabi * phase.cos(), 0.0)))
            .add(&block_generator(p.axis, sign, 1).scale(c(p.rabi * phase.sin(), 0.0)))
            .add(&block_generator(p.axis, sign, 2).scale(c(delta - p.drive, 0.0)));
    }
    inv
}

/// Closed-form ∂I'/∂t for the two-qubit invariant.
pub fn two_qubit_invariant_dt(p: &TwoQubitParams, t: f64) -> ComplexMatrix {
    let phase = p.drive * t;
    let mut d = ComplexMatrix::zeros(4);
    for &sign in &[1.0, -1.0] {
        d = d
            .add(&block_generator(p.axis, sign, 0).scale(c(-p.drive * p.rabi * phase.sin(), 0.0)))
            .add(&block_generator(p.axis, sign, 1).scale(c(p.drive * p.rabi * phase.cos(), 0.0)));
    }
    d
}

/// Either driving-parameter family, for code that works on both.
#[derive(Debug, Clone, PartialEq)]
pub enum SystemParams {
    OneQubit(OneQubitParams),
    TwoQubit(TwoQubitParams),
}

impl SystemParams {
    pub fn dim(&self) -> usize {
        match self {
            SystemParams::OneQubit(_) => 2,
            SystemParams::TwoQubit(_) => 4,
        }
    }

    pub fn drive(&self) -> f64 {
        match self {
            SystemParams::OneQubit(p) => p.drive,
            SystemParams::TwoQubit(p) => p.drive,
        }
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.drive()
    }

    pub fn hamiltonian(&self, t: f64) -> ComplexMatrix {
        match self {
            SystemParams::OneQubit(p) => one_qubit_hamiltonian(p, t),
            SystemParams::TwoQubit(p) => two_qubit_hamiltonian(p, t),
        }
    }

    /// Hamiltonian without the u(1) waveform term; identical to
    /// [`Self::hamiltonian`] for the one-qubit family.
    pub fn block_hamiltonian(&self, t: f64) -> ComplexMatrix {
        match self {
            SystemParams::OneQubit(p) => one_qubit_hamiltonian(p, t),
            SystemParams::TwoQubit(p) => two_qubit_block_hamiltonian(p, t),
        }
    }

    pub fn invariant(&self, t: f64) -> ComplexMatrix {
        match self {
            SystemParams::OneQubit(p) => one_qubit_invariant(p, t),
            SystemParams::TwoQubit(p) => two_qubit_invariant(p, t),
        }
    }

    pub fn invariant_dt(&self, t: f64) -> ComplexMatrix {
        match self {
            SystemParams::OneQubit(p) => one_qubit_invariant_dt(p, t),
            SystemParams::TwoQubit(p) => two_qubit_invariant_dt(p, t),
        }
    }

    /// Exact invariant-equation residual ‖∂I/∂t + i[H, I]‖_max at time `t`.
    pub fn residual_exact(&self, t: f64) -> f64 {
        invariant_residual_exact(
            |s| self.hamiltonian(s),
            |s| self.invariant(s),
            |s| self.invariant_dt(s),
            t,
        )
    }
}

/// Central-difference residual ‖(I(t+dt) - I(t-dt))/(2dt) + i[H(t), I(t)]‖_max.
pub fn invariant_residual<H, I>(hamiltonian: H, invariant: I, t: f64, dt: f64) -> Result<f64>
where
    H: Fn(f64) -> ComplexMatrix,
    I: Fn(f64) -> ComplexMatrix,
{
    if dt <= 0.0 {
        return Err(Error::NonPositiveDt(dt));
    }
    let derivative = invariant(t + dt).sub(&invariant(t - dt)).scale(c(0.5 / dt, 0.0));
    Ok(residual_from_derivative(hamiltonian, invariant, derivative, t))
}

/// Residual with the analytic ∂I/∂t supplied in closed form.
pub fn invariant_residual_exact<H, I, D>(hamiltonian: H, invariant: I, invariant_dt: D, t: f64) -> f64
where
    H: Fn(f64) -> ComplexMatrix,
    I: Fn(f64) -> ComplexMatrix,
    D: Fn(f64) -> ComplexMatrix,
{
    residual_from_derivative(hamiltonian, invariant, invariant_dt(t), t)
}

fn residual_from_derivative<H, I>(
    hamiltonian: H,
    invariant: I,
    derivative: ComplexMatrix,
    t: f64,
) -> f64
where
    H: Fn(f64) -> ComplexMatrix,
    I: Fn(f64) -> ComplexMatrix,
{
    let comm = hamiltonian(t).commutator(&invariant(t)).scale(c(0.0, 1.0));
    derivative.add(&comm).max_abs()
}
