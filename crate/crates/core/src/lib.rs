//! Exact tooling for torus-equivariant null-cobordisms of lens spaces.
//!
//! * [`exactlin`]: integer matrices, determinants, Smith form, lattice tests.
//! * [`charfun`]: hyper and rational characteristic functions on simplices
//!   and polygons.
//! * [`lensid`]: identification of the generalized lens space of a
//!   characteristic function, parameter translation and normal forms.
//! * [`cobord`]: unimodular chains, epsilon-extension search, vertex-cut
//!   reduction trees and their verifier, exhaustive surveys.
//! * [`cli`]: the `torcob` command-line front-end.

pub mod charfun;
pub mod cli;
pub mod cobord;
pub mod error;
pub mod exactlin;
pub mod lensid;

pub use error::{Error, Result};
