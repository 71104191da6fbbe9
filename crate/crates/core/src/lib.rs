//! Algebraic scattering phase shifts: the non-relativistic J-matrix method
//! and its relativistic (kinetic-balance) counterpart, with independent
//! direct-integration references.
//!
//! Units: hbar = 1, mass defaults to 1, energies in Hartree-like units;
//! k = sqrt(2 m E). The light speed c is configurable (default 137.035999),
//! so the relativistic machinery reduces to the non-relativistic one as
//! c grows.

pub mod basis;
pub mod error;
pub mod freewave;
pub mod linalg;
pub mod nonrel;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod rel;
pub mod specfun;

pub use basis::{BasisKind, BasisSpec};
pub use error::{Error, Result};
pub use potential::PotentialModel;
pub use rel::{kinematics, Kinematics, DEFAULT_LIGHT_SPEED};
