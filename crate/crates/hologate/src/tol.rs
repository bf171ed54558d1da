//! Central table of numerical tolerances.
//!
//! Every validation threshold used by the library lives here so that test
//! suites and the CLI (`--tol NAME=VAL`) can tighten or inspect them in one
//! place. Values are absolute unless noted otherwise.

/// Max entrywise |A - A†| for a matrix accepted as Hermitian.
pub const HERMITIAN: f64 = 1e-13;

/// Max entrywise |U†U - 1| for a matrix accepted as unitary.
pub const UNITARY: f64 = 1e-10;

/// Eigenpair residual ‖A v - λ v‖_max for the Hermitian eigensolver.
pub const EIG_RESIDUAL: f64 = 1e-11;

/// Orthonormality defect of eigenvector columns.
pub const ORTHONORMALITY: f64 = 1e-11;

/// Unitarity defect of `exp_i_hermitian` output.
pub const EXP_UNITARITY: f64 = 1e-12;

/// |Σ σ_k² - ‖M‖²_F| for singular values.
pub const SV_NORMALIZATION: f64 = 1e-12;

/// Unitarity defect allowed for a propagated evolution operator at the
/// default step count.
pub const PROPAGATOR_DEFECT: f64 = 1e-8;

/// Norm defect |‖ψ‖ - 1| for state vectors fed to the propagator.
pub const STATE_NORM: f64 = 1e-10;

/// Waveform durations must cover one drive period this tightly.
pub const WAVEFORM_COVER: f64 = 1e-12;

/// Residual |Ω² + Δ(Δ - ω)| / ω² beyond which parameters are rejected by
/// checks that presuppose the vanishing-dynamical-phase condition.
pub const PHASE_CONDITION: f64 = 1e-10;

/// Agreement between analytically assembled gates and the propagated
/// evolution, and between extracted and closed-form phases.
pub const CROSS_CHECK: f64 = 1e-8;

/// Schmidt rank threshold, relative to the largest singular value.
pub const RANK_RELATIVE: f64 = 1e-8;

/// |D - √½| allowed when flagging a gate as CNOT-class.
pub const CNOT_SV: f64 = 1e-6;

/// Ceiling on the two singular values that must vanish for a CNOT-class
/// gate.
pub const CNOT_SV_ZERO: f64 = 1e-8;

/// Componentwise agreement of Makhlin triples in local-equivalence checks.
pub const LOCAL_EQUIVALENCE: f64 = 1e-8;

/// Default |f(r)| target for the entangler-ratio bisection.
pub const ROOT_RESIDUAL: f64 = 1e-12;

/// Minimum steps accepted by the propagator.
pub const MIN_PROPAGATION_STEPS: usize = 16;

/// Minimum steps accepted by the phase integrators and the CLI.
pub const MIN_PHASE_STEPS: usize = 64;

/// Default steps per drive period for propagation and quadrature.
pub const DEFAULT_STEPS: usize = 4096;

/// Steps used for discrete-holonomy phase extraction when a caller asks for
/// converged phases; the Pancharatnam sum carries an O(steps⁻²) bias, and
/// 2²⁰ points push it below [`CROSS_CHECK`].
pub const HOLONOMY_STEPS: usize = 1 << 20;
