//! Construction and certification of non-adiabatic holonomic quantum gates
//! driven by abelian dynamical invariants.
//!
//! The library builds the periodically driven one- and two-qubit
//! Hamiltonians whose dynamical invariants admit closed-form cyclic
//! eigenvectors, splits the Lewis-Riesenfeld phase of each eigenvector into
//! geometric and dynamical parts, solves the parameter conditions that make
//! every dynamical phase vanish, and certifies the resulting gates:
//! unitarity, operator Schmidt rank, and CNOT-class local equivalence.
//!
//! Start with the runnable examples (`cargo run --example one_qubit_gate`,
//! `two_qubit_gate`, `entangler_root`, ...) or the `hologate` binary, whose
//! subcommands expose the same workflows with machine-readable reports.


pub mod entangle;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod model;
pub mod phases;
pub mod propagator;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use model::{CouplingAxis, OneQubitParams, SystemParams, TwoQubitParams, Waveform};

// CLI wired in after the numeric core.

