//! Eigenvalue-count bounds for Schrödinger operators with critical Hardy terms.
//!
//! The crate is `no_std` (with `alloc`). It provides:
//!
//! - [`iterfun`]: iterated `ln`/`exp`, Hardy weight stacks, domain thresholds,
//!   spherical-harmonic degeneracies;
//! - [`potentials`]: radial potentials and their images under the logarithmic
//!   change of variables;
//! - [`quadrature`]: adaptive Gauss–Kronrod integration;
//! - [`bounds`]: Bargmann-type, CLR-type and partial-wave bound evaluators;
//! - [`spectra`]: finite-difference discretization and Sturm-sequence counting
//!   of negative eigenvalues, plus quadratic-form evaluation;
//! - [`harness`]: verification experiments comparing bounds with counts.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod harness;
pub mod iterfun;
pub mod potentials;
pub mod quadrature;
pub mod spectra;

pub use error::{Error, Result};
pub use iterfun::{DomainThreshold, LogDepth, Variant};
pub use potentials::{PotentialFamily, PotentialSpec, TransformedPotential};
