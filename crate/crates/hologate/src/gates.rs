//! Parameter solvers for purely geometric gates and the analytic unitaries
//! they produce.
//!
//! One qubit: the dynamical phases of both invariant eigenvectors vanish iff
//! `Ω² + Δ(Δ-ω) = 0`, parametrized by the gate angle β through
//! `Δ = ω cos²β`, `Ω = ω sinβ cosβ`. Two qubits: all four block phases
//! vanish iff `D = ω/2` and `Ω² + J² = (ω/2)²`; the coupling ratio
//! `r = J/ω` at which the gate becomes a perfect entangler is the root of a
//! transcendental constraint with cotangent poles, located by scanning and
//! bisection.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{exp_i_hermitian, pauli_x, pauli_z, ComplexMatrix};
use crate::model::{CouplingAxis, OneQubitParams, SystemParams, TwoQubitParams, Waveform};
use crate::phases::reconstruct_evolution;
use crate::tol;

/// A solved gate: the driving parameters, the free coordinate that produced
/// them, and the analytic unitary over one period.
#[derive(Debug, Clone)]
pub enum GateSpec {
    OneQubit { beta: f64, params: OneQubitParams, unitary: ComplexMatrix, period: f64 },
    TwoQubit { ratio: f64, params: TwoQubitParams, unitary: ComplexMatrix, period: f64 },
}

impl GateSpec {
    pub fn unitary(&self) -> &ComplexMatrix {
        match self {
            GateSpec::OneQubit { unitary, .. } | GateSpec::TwoQubit { unitary, .. } => unitary,
        }
    }

    pub fn period(&self) -> f64 {
        match self {
            GateSpec::OneQubit { period, .. } | GateSpec::TwoQubit { period, .. } => *period,
        }
    }

    pub fn params(&self) -> SystemParams {
        match self {
            GateSpec::OneQubit { params, .. } => SystemParams::OneQubit(params.clone()),
            GateSpec::TwoQubit { params, .. } => SystemParams::TwoQubit(params.clone()),
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 && beta < PI / 2.0 {
        Ok(())
    } else {
        Err(Error::BetaOutOfRange(beta))
    }
}

/// Driving parameters satisfying `Ω² + Δ(Δ-ω) = 0` for gate angle β:
/// Δ = ω cos²β, Ω = ω sinβ cosβ (the positive root).
///
/// The open interval (0, π/2) is enforced: the endpoints give Ω = 0 and a
/// trivial gate.
pub fn solve_one_qubit_params(beta: f64, omega: f64) -> Result<OneQubitParams> {
    check_beta(beta)?;
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::NonPositiveDrive(omega));
    }
    let detuning = omega * beta.cos() * beta.cos();
    let rabi = omega * beta.sin() * beta.cos();
    OneQubitParams::new(rabi, detuning, omega)
}

/// Relative residual |Ω² + Δ(Δ-ω)| / ω² of the vanishing-phase condition.
pub fn phase_condition_residual(p: &OneQubitParams) -> f64 {
    (p.rabi * p.rabi + p.detuning * (p.detuning - p.drive)).abs() / (p.drive * p.drive)
}

/// The analytic one-period gate
/// U_β = -exp(iπ sinβ [-cosβ σx + sinβ σz]).
pub fn one_qubit_gate_analytic(beta: f64) -> Result<ComplexMatrix> {
    check_beta(beta)?;
    let generator = pauli_x()
        .scale(Complex64::new(-beta.cos(), 0.0))
        .add(&pauli_z().scale(Complex64::new(beta.sin(), 0.0)));
    Ok(exp_i_hermitian(&generator, PI * beta.sin())?.scale(Complex64::new(-1.0, 0.0)))
}

/// Gap-time product δE·T = √(Ω² + Δ²)·(2π/ω) for parameters on the
/// vanishing-phase manifold, where it reduces to 2π√(Δ/ω) < 2π: the gate
/// never reaches the adiabatic regime δE·T ≫ 2π.
///
/// Rejects parameters violating the condition beyond [`tol::PHASE_CONDITION`].
pub fn adiabaticity_product(p: &OneQubitParams) -> Result<f64> {
    let residual = phase_condition_residual(p);
    if residual > tol::PHASE_CONDITION {
        return Err(Error::PhaseConditionViolated { residual });
    }
    Ok(p.rabi.hypot(p.detuning) * 2.0 * PI / p.drive)
}

/// Solve the β gate: parameters plus analytic unitary.
pub fn one_qubit_gate(beta: f64, omega: f64) -> Result<GateSpec> {
    let params = solve_one_qubit_params(beta, omega)?;
    let unitary = one_qubit_gate_analytic(beta)?;
    let period = params.period();
    Ok(GateSpec::OneQubit { beta, params, unitary, period })
}

/// Perfect-entangler constraint f(r) = cot(πa₊)cot(πa₋) + 2a₊a₋ with
/// a± = √(1/2 ± r). Its roots in (0, 1/2) are the coupling ratios at which
/// both Schmidt coefficients of the gate reach √(1/2).
pub fn entangler_constraint(r: f64) -> f64 {
    let a_plus = (0.5 + r).sqrt();
    let a_minus = (0.5 - r).sqrt();
    let cot = |x: f64| x.cos() / x.sin();
    cot(PI * a_plus) * cot(PI * a_minus) + 2.0 * a_plus * a_minus
}

/// Bisect the entangler constraint on a bracket inside (0, 1/2) until
/// |f(r)| ≤ `tolerance`.
pub fn solve_entangler_ratio(bracket: (f64, f64), tolerance: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo < hi && lo > 0.0 && hi < 0.5) {
        return Err(Error::BadBracket { lo, hi });
    }
    let mut f_lo = entangler_constraint(lo);
    let f_hi = entangler_constraint(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let f_mid = entangler_constraint(mid);
        if f_mid.abs() <= tolerance {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// Scan (0, 1/2) on a 512-point grid and bisect every sign change of the
/// entangler constraint. The cotangent pole sits at the right endpoint, so
/// derivative-free bracketing is the robust choice here.
pub fn find_entangler_ratios() -> Vec<f64> {
    const GRID: usize = 512;
    let lo = 1e-4;
    let hi = 0.5 - 1e-4;
    let mut roots = Vec::new();
    let mut prev_r = lo;
    let mut prev_f = entangler_constraint(lo);
    for k in 1..=GRID {
        let r = lo + (hi - lo) * k as f64 / GRID as f64;
        let f = entangler_constraint(r);
        if prev_f.signum() != f.signum() {
            if let Ok(root) = solve_entangler_ratio((prev_r, r), tol::ROOT_RESIDUAL) {
                roots.push(root);
            }
        }
        prev_r = r;
        prev_f = f;
    }
    roots
}

/// Driving parameters making all four two-qubit dynamical phases vanish:
/// J = rω, D = ω/2, Ω = +√((ω/2)² - J²). Requires |r| < 1/2.
pub fn solve_two_qubit_params(
    omega: f64,
    r: f64,
    axis: CouplingAxis,
    q: Waveform,
) -> Result<TwoQubitParams> {
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::NonPositiveDrive(omega));
    }
    if !r.is_finite() || r.abs() >= 0.5 {
        return Err(Error::RatioOutOfRange(r));
    }
    let coupling = r * omega;
    let half = omega / 2.0;
    let rabi = (half * half - coupling * coupling).sqrt();
    TwoQubitParams::new(rabi, half, coupling, omega, axis, q)
}

/// The analytic one-period two-qubit gate U' = U_q · U'₊ · U'₋, assembled
/// from the spectral form on each invariant eigenpair.
pub fn two_qubit_gate_analytic(p: &TwoQubitParams) -> ComplexMatrix {
    let params = SystemParams::TwoQubit(p.clone());
    reconstruct_evolution(&params, p.period())
}

/// Solve the entangler-family gate at coupling ratio `r`.
pub fn two_qubit_gate(
    omega: f64,
    r: f64,
    axis: CouplingAxis,
    q: Waveform,
) -> Result<GateSpec> {
    let params = solve_two_qubit_params(omega, r, axis, q)?;
    let unitary = two_qubit_gate_analytic(&params);
    let period = params.period();
    Ok(GateSpec::TwoQubit { ratio: r, params, unitary, period })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{unitary_distance, ComplexMatrix};
    use crate::phases::{invariant_eigensystem, phase_split};
    use crate::propagator::propagate;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_one_qubit_reference_angles() {
        let p = solve_one_qubit_params(PI / 4.0, 1.0).unwrap();
        assert!((p.detuning - 0.5).abs() < 1e-15);
        assert!((p.rabi - 0.5).abs() < 1e-15);

        let p = solve_one_qubit_params(PI / 3.0, 1.0).unwrap();
        assert!((p.detuning - 0.25).abs() < 1e-15);
        assert!((p.rabi - 3.0f64.sqrt() / 4.0).abs() < 1e-15);
        assert!(phase_condition_residual(&p) < 1e-14);
    }

    #[test]
    fn condition_residual_is_zero_across_the_beta_range() {
        for k in 1..100 {
            let beta = PI / 2.0 * k as f64 / 100.0;
            let p = solve_one_qubit_params(beta, 1.7).unwrap();
            assert!(phase_condition_residual(&p) < 1e-15, "beta {beta}");
        }
    }

    #[test]
    fn beta_endpoints_are_rejected() {
        assert!(matches!(solve_one_qubit_params(0.0, 1.0), Err(Error::BetaOutOfRange(_))));
        assert!(matches!(
            solve_one_qubit_params(PI / 2.0, 1.0),
            Err(Error::BetaOutOfRange(_))
        ));
        assert!(matches!(one_qubit_gate_analytic(-0.3), Err(Error::BetaOutOfRange(_))));
        assert!(matches!(solve_one_qubit_params(0.5, 0.0), Err(Error::NonPositiveDrive(_))));
    }

    #[test]
    fn analytic_gate_matches_propagated_dynamics() {
        for beta in [PI / 6.0, PI / 4.0, PI / 3.0] {
            let spec = one_qubit_gate(beta, 1.0).unwrap();
            let params = match &spec {
                GateSpec::OneQubit { params, .. } => params.clone(),
                _ => unreachable!(),
            };
            let propagated = propagate(
                |t| crate::model::one_qubit_hamiltonian(&params, t),
                0.0,
                spec.period(),
                4096,
            )
            .unwrap();
            let d = unitary_distance(spec.unitary(), &propagated.unitary).unwrap();
            assert!(d < 1e-8, "beta {beta}: distance {d}");
        }
    }

    #[test]
    fn two_gate_angles_do_not_commute() {
        let u1 = one_qubit_gate_analytic(PI / 6.0).unwrap();
        let u2 = one_qubit_gate_analytic(PI / 3.0).unwrap();
        let comm = u1.commutator(&u2).max_abs();
        assert!(comm > 0.1, "commutator norm {comm}");
    }

    #[test]
    fn adiabaticity_product_reference_and_bound() {
        let p = OneQubitParams::new(0.5, 0.5, 1.0).unwrap();
        let product = adiabaticity_product(&p).unwrap();
        assert!((product - 2.0 * PI / 2.0f64.sqrt()).abs() < 1e-12);
        assert!((product - 4.443).abs() < 1e-3);

        // δE·T = 2π√(Δ/ω) increases toward the supremum 2π as β → 0 (Δ → ω).
        let near = solve_one_qubit_params(1e-4, 1.0).unwrap();
        let sup = adiabaticity_product(&near).unwrap();
        assert!(sup < 2.0 * PI && sup > 2.0 * PI - 1e-3);

        for k in 1..10 {
            let delta = k as f64 / 10.0;
            let rabi = (delta * (1.0 - delta)).sqrt();
            let p = OneQubitParams::new(rabi, delta, 1.0).unwrap();
            let product = adiabaticity_product(&p).unwrap();
            assert!(product < 2.0 * PI);
            assert!((product - 2.0 * PI * delta.sqrt()).abs() < 1e-12);
        }

        let off = OneQubitParams::new(0.7, 0.5, 1.0).unwrap();
        assert!(matches!(
            adiabaticity_product(&off),
            Err(Error::PhaseConditionViolated { .. })
        ));
    }

    #[test]
    fn entangler_root_matches_reported_ratio() {
        let root = solve_entangler_ratio((0.25, 0.40), 1e-12).unwrap();
        assert!((root - 0.3187).abs() < 5e-4, "root {root}");
        assert!(entangler_constraint(root).abs() <= 1e-12);
        // Residual spot check at the 4-digit value.
        assert!(entangler_constraint(0.3187).abs() < 1e-3);
    }

    #[test]
    fn constraint_is_even_in_the_ratio() {
        for r in [0.1, 0.22, 0.3187, 0.45] {
            let diff = (entangler_constraint(r) - entangler_constraint(-r)).abs();
            assert!(diff < 1e-12, "f({r}) asymmetry {diff}");
        }
    }

    #[test]
    fn grid_scan_finds_the_root() {
        let roots = find_entangler_ratios();
        assert!(!roots.is_empty());
        assert!(roots.iter().any(|r| (r - 0.3187).abs() < 5e-4));
        for r in &roots {
            assert!(entangler_constraint(*r).abs() <= 1e-10);
        }
    }

    #[test]
    fn bisection_validates_brackets() {
        assert!(matches!(
            solve_entangler_ratio((0.6, 0.7), 1e-12),
            Err(Error::BadBracket { .. })
        ));
        assert!(matches!(
            solve_entangler_ratio((0.05, 0.15), 1e-12),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn solve_two_qubit_reference_points() {
        let q = Waveform::zero(2.0 * PI);
        let p = solve_two_qubit_params(1.0, 0.3187, CouplingAxis::ZZ, q.clone()).unwrap();
        assert!((p.detuning - 0.5).abs() < 1e-15);
        assert!((p.coupling - 0.3187).abs() < 1e-15);
        assert!((p.rabi - 0.38527).abs() < 1e-5);
        assert!((p.rabi * p.rabi + p.coupling * p.coupling - 0.25).abs() < 1e-15);

        let p = solve_two_qubit_params(1.0, 0.0, CouplingAxis::ZZ, q.clone()).unwrap();
        assert!((p.rabi - 0.5).abs() < 1e-15);

        assert!(matches!(
            solve_two_qubit_params(1.0, 0.5, CouplingAxis::ZZ, q),
            Err(Error::RatioOutOfRange(_))
        ));
    }

    #[test]
    fn block_eigenvalues_factor_through_the_constraint_amplitudes() {
        // λ± = ω·a∓ whenever D = ω/2, across the admissible ratio range.
        for k in 1..50 {
            let r = 0.5 * k as f64 / 50.0;
            let p = solve_two_qubit_params(1.3, r, CouplingAxis::ZZ, Waveform::zero(2.0 * PI / 1.3))
                .unwrap();
            let es = invariant_eigensystem(&SystemParams::TwoQubit(p));
            let lambda_plus = es
                .modes()
                .iter()
                .find(|m| m.block == Some(crate::phases::Sign::Plus) && m.eigenvalue > 0.0)
                .unwrap()
                .eigenvalue;
            let lambda_minus = es
                .modes()
                .iter()
                .find(|m| m.block == Some(crate::phases::Sign::Minus) && m.eigenvalue > 0.0)
                .unwrap()
                .eigenvalue;
            assert!((lambda_plus - 1.3 * (0.5 - r).sqrt()).abs() < 1e-12);
            assert!((lambda_minus - 1.3 * (0.5 + r).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn all_four_dynamical_phases_vanish_with_any_waveform() {
        let q = Waveform::from_pairs(&[(0.8, 1.0), (-0.3, 2.0 * PI - 1.0)]).unwrap();
        for k in 1..6 {
            let r = 0.5 * k as f64 / 6.0;
            let p = solve_two_qubit_params(1.0, r, CouplingAxis::ZZ, q.clone()).unwrap();
            let sys = SystemParams::TwoQubit(p);
            for n in 0..4 {
                let record = phase_split(&sys, n, 4096).unwrap();
                assert!(record.gamma_d.abs() < 1e-8, "r {r} mode {n}: {}", record.gamma_d);
            }
        }
    }

    #[test]
    fn analytic_two_qubit_gate_matches_propagation() {
        let root = solve_entangler_ratio((0.25, 0.40), 1e-12).unwrap();
        let p = solve_two_qubit_params(1.0, root, CouplingAxis::ZZ, Waveform::zero(2.0 * PI))
            .unwrap();
        let gate = two_qubit_gate_analytic(&p);
        assert!(gate.unitarity_defect() < 1e-12);
        let propagated = propagate(
            |t| crate::model::two_qubit_hamiltonian(&p, t),
            0.0,
            p.period(),
            4096,
        )
        .unwrap();
        let d = unitary_distance(&gate, &propagated.unitary).unwrap();
        assert!(d < 1e-8, "distance {d}");
    }

    #[test]
    fn constant_waveform_prepends_a_local_phase_factor() {
        let omega = 1.0;
        let period = 2.0 * PI / omega;
        let r = 0.3187;
        let base = solve_two_qubit_params(omega, r, CouplingAxis::ZZ, Waveform::zero(period))
            .unwrap();
        let shifted = solve_two_qubit_params(
            omega,
            r,
            CouplingAxis::ZZ,
            Waveform::constant(0.37, period).unwrap(),
        )
        .unwrap();
        let u0 = two_qubit_gate_analytic(&base);
        let u = two_qubit_gate_analytic(&shifted);
        let local = exp_i_hermitian(&crate::model::u1_generator(CouplingAxis::ZZ), -0.37 * period)
            .unwrap();
        assert!(u.sub(&local.matmul(&u0)).max_abs() < 1e-12);
    }

    #[test]
    fn decoupled_gate_is_a_local_target_rotation() {
        let p = solve_two_qubit_params(1.0, 0.0, CouplingAxis::ZZ, Waveform::zero(2.0 * PI))
            .unwrap();
        let u = two_qubit_gate_analytic(&p);
        let block =
            ComplexMatrix::from_entries(2, vec![u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]])
                .unwrap();
        let expected = ComplexMatrix::identity(2).kron(&block);
        assert!(u.sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn gate_spec_invariants() {
        let spec = one_qubit_gate(0.9, 1.4).unwrap();
        if let GateSpec::OneQubit { beta, params, period, .. } = &spec {
            assert!((beta.cos().powi(2) - params.detuning / params.drive).abs() < 1e-12);
            assert!((period - 2.0 * PI / params.drive).abs() < 1e-15);
        } else {
            panic!("wrong variant");
        }

        let spec = two_qubit_gate(1.0, 0.3, CouplingAxis::ZZ, Waveform::zero(2.0 * PI)).unwrap();
        if let GateSpec::TwoQubit { ratio, params, period, .. } = &spec {
            assert!((params.detuning - params.drive / 2.0).abs() < 1e-12);
            let half = params.drive / 2.0;
            assert!(
                (params.rabi * params.rabi + params.coupling * params.coupling - half * half)
                    .abs()
                    < 1e-12
            );
            // T = 2π|r|/J coincides with 2π/ω.
            assert!((period - 2.0 * PI * ratio.abs() / params.coupling.abs()).abs() < 1e-12);
        } else {
            panic!("wrong variant");
        }
    }

    #[test]
    fn gate_carries_the_overall_minus_sign() {
        // U_β at β = π/4 equals -exp(i(π/√2)(-σx+σz)/√2); check the sign
        // against the bare exponential rather than only up to phase.
        let beta = PI / 4.0;
        let bare = exp_i_hermitian(
            &pauli_x()
                .scale(c(-beta.cos(), 0.0))
                .add(&pauli_z().scale(c(beta.sin(), 0.0))),
            PI * beta.sin(),
        )
        .unwrap();
        let gate = one_qubit_gate_analytic(beta).unwrap();
        assert!(gate.add(&bare).max_abs() < 1e-13);
    }
}
