//! 1D dynamics of guided waves along the axis.
//!
//! The axial reduction of the first-order wave equation is evolved two
//! independent ways — exactly per Fourier mode ([`evolve_spectral`])
//! and by explicit RK4 time stepping ([`evolve_rk4`]) — plus the
//! scalar Klein-Gordon form ([`evolve_klein_gordon`]). Below-cutoff
//! physics is handled by transfer matrices ([`helmholtz_mode`]) and a
//! decay-constant fit ([`evanescent_decay_fit`]). Wave-packet
//! observables (norm, centroid, fitted velocity, oscillation spectrum,
//! measured dispersion) live in [`observe`].
//!
//! The axial grid is periodic; packets are expected to stay several
//! widths away from the wrap point. All reductions sum in fixed index
//! order so results are bit-reproducible.

mod evolve;
mod grid;
mod hamiltonian;
mod helmholtz;
mod observe;

pub use evolve::{
    evolve_klein_gordon, evolve_rk4, evolve_spectral, init_gaussian_packet, klein_gordon_energy,
    Branch,
};
pub use grid::{Grid1D, ScalarField1D, SpinorField1D};
pub use hamiltonian::{branch_spinor, guided_hamiltonian_symbol, physical_branch_projector};
pub use helmholtz::{
    evanescent_decay_fit, helmholtz_field, helmholtz_mode, BarrierProfile, Segment, Transmission,
};
pub use observe::{
    extract_dispersion, fit_group_velocity, measure_centroid, measure_norm, record_trajectory,
    snapshot_columns, zitterbewegung_spectrum, Trajectory, TrajectorySample, ZbwPeak,
};
