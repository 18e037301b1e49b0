//! Guided electromagnetic waves treated as relativistic massive particles.
//!
//! A hollow rectangular waveguide imposes the dispersion relation
//! `omega^2 = k3^2 + omega_c^2` on every propagating mode, which is the
//! mass shell of a relativistic particle with rest mass `m = omega_c`
//! (natural units, hbar = c = 1). This crate provides the pieces needed
//! to take that identification seriously and test it numerically:
//!
//! - [`minkowski`]: four-vector arithmetic, axial boosts, and the
//!   orthogonal split of the light-like photon momentum into a
//!   traveling (time-like) part and a frozen transverse (space-like)
//!   part.
//! - [`spinor`]: the 6-component electromagnetic spinor `(E, iB)/sqrt(2)`,
//!   its tau/beta/spin matrices, and the first-order wave equation they
//!   generate, with machine-checkable operator identities.
//! - [`modes`]: waveguide mode catalogue — cutoffs, effective mass
//!   (including a lossless plasma fill), Compton wavelength, dispersion,
//!   group/phase velocity, and guided four-momenta.
//! - [`fields`]: analytic TE-mode fields, their decomposition into two
//!   zigzagging plane TEM waves, and finite-difference residual checks
//!   against the first-order equation and the transversality conditions.
//! - [`propagate`]: 1D spectral and RK4 solvers for the reduced axial
//!   dynamics, Klein-Gordon evolution, evanescent decay, barrier
//!   transmission via transfer matrices, and wave-packet observables.
//!
//! All quantities are in natural units; lengths are in units of the
//! broad wall unless stated otherwise.

pub mod fields;
pub mod minkowski;
pub mod modes;
pub mod propagate;
pub mod spinor;

use thiserror::Error;

/// Errors reported by the library.
///
/// `Domain` marks precondition violations (e.g. a superluminal boost
/// speed), `Numerical` marks runtime failures of a numeric procedure
/// (instability, unresolved degeneracy, overflow), and `Fit` marks
/// estimation procedures that could not extract a result from the data
/// they were given.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("fit error: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use minkowski::{
    boost_axial, classify, decompose_guided, minkowski_dot, phase_split_check, Classification,
    FourVector, GuidedDecomposition,
};
pub use modes::{GuidedPhotonState, ModeFamily, ModeIndex, WaveguideSpec};
pub use spinor::{PhotonSpinor, SpinorMatrix, C64};
