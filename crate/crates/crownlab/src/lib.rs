//! Desk-scale computations around Euler elements and modular theory: Lie
//! algebras by structure constants with 3-gradings and wedge data, explicit
//! crown domains in the complex affine and SL2 groups, a numerical Hardy
//! space on the upper half-plane with its modular flow, boundary maps and
//! KMS tests, finite-rank nets of real subspaces with cyclicity and wedge
//! probes, and a verified study of the t^{-t} integral function.
//!
//! The `crownlab` CLI drives the same machinery for scripted runs; see the
//! repository README.

pub mod complexnum;
pub mod config;
pub mod crown;
pub mod error;
pub mod hardy;
pub mod lie;
pub mod nets;
pub mod quad;
pub mod report;
pub mod schober;
pub mod suites;

pub use error::{Error, Result};
