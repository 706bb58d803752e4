//! Ermakov systems, Reid oscillators and their Emden-Fowler reductions.
//!
//! The linear oscillator `q_tt + ω²(t) q = 0` and its nonlinear Reid companion
//! share a conserved Ermakov-Lewis invariant. This crate simulates the pair,
//! evaluates the invariant in physical, Emden-Fowler, hyperbolic and canonical
//! coordinates, builds the closed-form superposition, Pinney, Polyanin and
//! parametric solutions, and checks them against their defining equations.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod emden_fowler;
pub mod error;
pub mod invariant;
pub mod linear;
pub mod mechanics;
pub mod numerics;
pub mod reid;

pub use emden_fowler::{EFState, EfSolution, HyperbolicState};
pub use error::{Error, Result};
pub use invariant::{drift_report, Formulation, InvariantReport};
pub use linear::{FrequencyModel, LinearBasis, SuperpositionCoefficients};
pub use numerics::{SampledPath, ToleranceConfig};
pub use reid::{ReidParams, ReidTrajectory};
