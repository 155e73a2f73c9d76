//! Tolerance allocation and capability analysis for 1D assembly chains.
//!
//! The crate sizes component budgets so that a linearized chain
//! `Y = alpha0 + sum(alpha_i x_i)` meets a requirement on its resultant,
//! stated either as a symmetric tolerance interval or as a maximum inertia
//! `sqrt(sigma^2 + delta^2)`:
//!
//! - [`classical`]: interval allocation (worst-case, statistical, inflated
//!   statistical), uniform or feasibility-weighted.
//! - [`inertial`]: inertia allocation under four hypotheses about how
//!   component off-centerings combine.
//! - [`corrected`]: inertia allocation from an interval requirement through
//!   a correction coefficient that floors the resultant capability index,
//!   plus the index profile, its minimum, and the coefficient abacus.
//! - [`verify`]: seeded Monte Carlo simulation and exhaustive grid search
//!   that confirm the closed forms independently.
//! - [`cli`]: command-line front end over text spec files and CSV batch
//!   data.

pub mod classical;
pub mod cli;
pub mod corrected;
pub mod error;
pub mod inertial;
pub mod stack;
pub mod verify;

pub use error::{Error, Result};
pub use stack::{
    AssemblyModel, BatchStats, CapabilitySet, ComponentSpec, ResultantSpec, ToleranceKind,
};
