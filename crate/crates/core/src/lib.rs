//! Semiclassical tunneling under tailored non-stationary signals.
//!
//! A metastable particle that would tunnel at the exponentially small WKB
//! rate `W ~ exp(-A0)` can instead emit quanta into a suitably shaped pulse,
//! dive to a lower energy under the barrier, and come out with the total
//! imaginary-time action driven to zero at a signal-selected resonance
//! energy. This crate computes the closed-form resonance conditions for the
//! exactly solvable triangular barrier, a trajectory-based solver for smooth
//! potentials under instant signals, and lab-unit application estimates
//! (atom ionization, field emission, alpha decay), cross-checked against
//! independent numerical oracles (adaptive quadrature, bracketed root
//! finding, complex-contour ODE integration).
//!
//! Entry points:
//! - [`triangular::BarrierSpec`] plus [`pulses::StepProfile`] for the exact
//!   branch structure, actions and escape probability;
//! - [`smooth::PotentialModel`] for the general instant-signal solver;
//! - [`scenarios`] for lab-unit reports;
//! - [`cli`] for the `eures` command-line front end.
//!
//! Everything is computed in natural units (`hbar = 1`); [`quantities`]
//! converts to and from lab units at the boundaries.

pub mod cli;
pub mod numerics;
pub mod pulses;
pub mod quantities;
pub mod scenarios;
pub mod smooth;
pub mod triangular;
