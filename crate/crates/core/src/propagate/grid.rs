//! Periodic 1D grids and the fields living on them.

use crate::spinor::{PhotonSpinor, C64};
use crate::{Error, Result};
use nalgebra::Vector6;

/// Uniform periodic grid: `n` points (a power of two, >= 64) over
/// `[0, length)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n: usize,
    length: f64,
}

impl Grid1D {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 64 || !n.is_power_of_two() {
            return Err(Error::Domain(format!(
                "grid size must be a power of two >= 64, got {n}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Domain(format!(
                "grid length must be finite and positive, got {length}"
            )));
        }
        Ok(Self { n, length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn position(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    /// Signed wavenumber of FFT bin `j`, in the usual order: bins up to
    /// n/2 - 1 are nonnegative, the rest alias to negative frequencies.
    pub fn wavenumber(&self, j: usize) -> f64 {
        let signed = if j < self.n / 2 {
            j as isize
        } else {
            j as isize - self.n as isize
        };
        2.0 * std::f64::consts::PI * signed as f64 / self.length
    }
}

/// Six-component field on a [`Grid1D`] at one time.
#[derive(Debug, Clone)]
pub struct SpinorField1D {
    pub(crate) grid: Grid1D,
    pub(crate) time: f64,
    pub(crate) values: Vec<PhotonSpinor>,
}

impl SpinorField1D {
    pub fn zero(grid: Grid1D) -> Self {
        Self {
            grid,
            time: 0.0,
            values: vec![Vector6::zeros(); grid.n()],
        }
    }

    /// Builds a field from per-point values; the closure receives the
    /// position.
    pub fn from_fn(grid: Grid1D, mut f: impl FnMut(f64) -> PhotonSpinor) -> Self {
        let values = (0..grid.n()).map(|j| f(grid.position(j))).collect();
        Self {
            grid,
            time: 0.0,
            values,
        }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn values(&self) -> &[PhotonSpinor] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [PhotonSpinor] {
        &mut self.values
    }
}

/// Complex scalar field with its time derivative, for second-order-in-
/// time evolution.
#[derive(Debug, Clone)]
pub struct ScalarField1D {
    pub(crate) grid: Grid1D,
    pub(crate) time: f64,
    pub(crate) values: Vec<C64>,
    pub(crate) velocity: Vec<C64>,
}

impl ScalarField1D {
    pub fn new(grid: Grid1D, values: Vec<C64>, velocity: Vec<C64>) -> Result<Self> {
        if values.len() != grid.n() || velocity.len() != grid.n() {
            return Err(Error::Domain(format!(
                "field length mismatch: grid has {} points, got {} values and {} velocities",
                grid.n(),
                values.len(),
                velocity.len()
            )));
        }
        Ok(Self {
            grid,
            time: 0.0,
            values,
            velocity,
        })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn velocity(&self) -> &[C64] {
        &self.velocity
    }

    /// `h * sum |phi_j|^2`.
    pub fn norm(&self) -> f64 {
        self.grid.spacing() * self.values.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }
}
