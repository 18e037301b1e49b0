//! Momentum-space symbol of the reduced axial dynamics and the
//! projector onto its physical (transverse) branches.
//!
//! Per Fourier mode `exp(ikr)` the reduced equation reads
//! `i d(phi)/dt = H(k) phi` with `H(k) = k beta0 beta3 + omega_c beta0 beta1`,
//! i.e. the free-photon symbol at the full wavevector `(omega_c, 0, k)`.
//! Its spectrum is `+-sqrt(k^2 + omega_c^2)` twice each (the transverse
//! polarizations) plus a double zero (longitudinal constraint modes).

use crate::spinor::{beta, hermitian_eigen_sorted, omega_symbol, PhotonSpinor, SpinorMatrix, C64};
use crate::{Error, Result};
use nalgebra::{Vector3, Vector6};
use num_complex::Complex;

const I: C64 = Complex::new(0.0, 1.0);

/// Hermitian symbol `k beta0 beta3 + omega_c beta0 beta1` of the reduced
/// axial Hamiltonian; `omega_c` must be positive.
pub fn guided_hamiltonian_symbol(k: f64, omega_c: f64) -> SpinorMatrix {
    assert!(omega_c > 0.0, "cutoff must be positive, got {omega_c}");
    beta(0) * (beta(3) * C64::from(k) + beta(1) * C64::from(omega_c))
}

/// Full 3D wavevector `(omega_c, 0, k)` carried by the reduced mode.
fn full_wavevector(k: f64, omega_c: f64) -> Vector3<f64> {
    Vector3::new(omega_c, 0.0, k)
}

/// Orthogonal projector onto the physical branches of
/// [`guided_hamiltonian_symbol`]: the span of eigenvectors with
/// eigenvalues `+-sqrt(k^2 + omega_c^2)` whose spinors satisfy the
/// transversality constraint at wavevector `(omega_c, 0, k)`.
///
/// Built from the numerical eigendecomposition; eigenvectors inside the
/// degenerate `+-omega` eigenspaces are accepted only if they pass the
/// constraint, which resolves the degeneracy deterministically. Errors
/// if the four physical directions cannot be isolated.
pub fn physical_branch_projector(k: f64, omega_c: f64) -> Result<SpinorMatrix> {
    let h = guided_hamiltonian_symbol(k, omega_c);
    let omega = (k * k + omega_c * omega_c).sqrt();
    let (values, vectors) = hermitian_eigen_sorted(&h);
    let constraint = omega_symbol(full_wavevector(k, omega_c));
    let scale = omega * omega;

    let mut projector = SpinorMatrix::zeros();
    let mut accepted = 0;
    for (i, &lambda) in values.iter().enumerate() {
        if (lambda.abs() - omega).abs() > 1e-9 * omega.max(1.0) {
            continue;
        }
        let v = vectors.column(i).into_owned();
        let violation = (constraint * v).norm();
        if violation > 1e-8 * scale.max(1.0) {
            return Err(Error::Numerical(format!(
                "eigenvalue {lambda} of the axial symbol at (k = {k}, omega_c = {omega_c}) \
                 produced an eigenvector violating the transversality constraint by {violation:.3e}"
            )));
        }
        projector += v * v.adjoint();
        accepted += 1;
    }
    if accepted != 4 {
        return Err(Error::Numerical(format!(
            "expected 4 physical eigenvectors at (k = {k}, omega_c = {omega_c}), found {accepted}"
        )));
    }
    // symmetrize away roundoff
    Ok((projector + projector.adjoint()) * C64::from(0.5))
}

/// Analytic physical branch eigenvector with the electric field along
/// e2: `(e2, +-i khat x e2)/sqrt(2)`, the spinor of the zigzag TEM wave
/// at `(k1 = omega_c, k3 = k)`. Eigenvalue `sign * sqrt(k^2 + omega_c^2)`.
pub fn branch_spinor(k: f64, omega_c: f64, sign: f64) -> PhotonSpinor {
    let kv = full_wavevector(k, omega_c);
    let khat = kv / kv.norm();
    // b = khat x e2
    let b = Vector3::new(-khat[2], 0.0, khat[0]);
    let s = 0.5f64.sqrt() * sign;
    Vector6::new(
        C64::from(0.0),
        C64::from(0.5f64.sqrt()),
        C64::from(0.0),
        I * C64::from(s * b[0]),
        I * C64::from(s * b[1]),
        I * C64::from(s * b[2]),
    )
}

/// Structure-exploiting per-mode operations used by the evolvers; all
/// agree with the dense matrices above and are cross-checked against
/// them in tests.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ModeAction {
    kvec: Vector3<f64>,
    omega: f64,
}

impl ModeAction {
    pub fn new(k: f64, omega_c: f64) -> Self {
        let kvec = full_wavevector(k, omega_c);
        Self {
            kvec,
            omega: kvec.norm(),
        }
    }

    fn cross(k: &Vector3<f64>, v: &Vector3<C64>) -> Vector3<C64> {
        Vector3::new(
            v[2] * k[1] - v[1] * k[2],
            v[0] * k[2] - v[2] * k[0],
            v[1] * k[0] - v[0] * k[1],
        )
    }

    /// `H psi` for `psi = (E, F)`: `(i k x F, i k x E)`.
    pub fn apply_h(&self, psi: &PhotonSpinor) -> PhotonSpinor {
        let e = Vector3::new(psi[0], psi[1], psi[2]);
        let f = Vector3::new(psi[3], psi[4], psi[5]);
        let top = Self::cross(&self.kvec, &f) * I;
        let bottom = Self::cross(&self.kvec, &e) * I;
        Vector6::new(top[0], top[1], top[2], bottom[0], bottom[1], bottom[2])
    }

    /// Transverse projection of both field blocks.
    pub fn apply_projector(&self, psi: &PhotonSpinor) -> PhotonSpinor {
        let khat = self.kvec / self.omega;
        let project = |v: Vector3<C64>| -> Vector3<C64> {
            let along: C64 = v[0] * khat[0] + v[1] * khat[1] + v[2] * khat[2];
            Vector3::new(
                v[0] - along * khat[0],
                v[1] - along * khat[1],
                v[2] - along * khat[2],
            )
        };
        let e = project(Vector3::new(psi[0], psi[1], psi[2]));
        let f = project(Vector3::new(psi[3], psi[4], psi[5]));
        Vector6::new(e[0], e[1], e[2], f[0], f[1], f[2])
    }

    /// Exact propagator `exp(-i H t) psi`, using `H^3 = omega^2 H`:
    /// `exp(-iHt) = 1 - (1 - cos(omega t)) P - i sin(omega t) H / omega`.
    pub fn apply_exp(&self, t: f64, psi: &PhotonSpinor) -> PhotonSpinor {
        let (s, c) = (self.omega * t).sin_cos();
        let p = self.apply_projector(psi);
        let h = self.apply_h(psi);
        psi - p * C64::from(1.0 - c) - h * (I * C64::from(s / self.omega))
    }
}
