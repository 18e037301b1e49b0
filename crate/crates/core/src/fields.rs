//! Analytic TE-mode fields and their zigzag plane-wave decomposition,
//! with finite-difference residual checks on sampled grids.
//!
//! A TE(n,0) mode is the sum of two plane TEM waves with wavevectors
//! `(+-k1, 0, k3)` bouncing between the walls; both are light-like and
//! individually satisfy the first-order wave equation. Fields are kept
//! as the complex analytic signal; taking the real part is a
//! presentation concern.

use crate::modes::{cutoff_frequency, dispersion_omega, ModeFamily, ModeIndex, WaveguideSpec};
use crate::spinor::{self, assemble_spinor_complex, PhotonSpinor, C64};
use crate::{Error, Result};
use nalgebra::Vector3;
use num_complex::Complex;

const I: C64 = Complex::new(0.0, 1.0);

/// Complex electric and magnetic field vectors at one spacetime point.
#[derive(Debug, Clone, Copy)]
pub struct FieldSample {
    pub e: Vector3<C64>,
    pub b: Vector3<C64>,
}

impl FieldSample {
    pub fn zero() -> Self {
        Self {
            e: Vector3::zeros(),
            b: Vector3::zeros(),
        }
    }

    /// Spinor value `(E, iB)/sqrt(2)` at this point.
    pub fn spinor(&self) -> PhotonSpinor {
        assemble_spinor_complex(self.e, self.b)
    }
}

/// One plane TEM wave `E = amplitude * polarization * exp[-i(w t - k.x)]`
/// with `B = (k x E)/w`; light-like (`|k| = w`) and transverse
/// (`k . polarization = 0`).
#[derive(Debug, Clone)]
pub struct PlaneWaveComponent {
    pub wavevector: Vector3<f64>,
    pub polarization: Vector3<C64>,
    pub amplitude: C64,
}

impl PlaneWaveComponent {
    /// Frequency `|k|` of the light-like wave.
    pub fn omega(&self) -> f64 {
        self.wavevector.norm()
    }

    /// Magnetic polarization `k_hat x E0`.
    pub fn magnetic_polarization(&self) -> Vector3<C64> {
        let khat = self.wavevector / self.omega();
        Vector3::new(
            khat[1] * self.polarization[2] - khat[2] * self.polarization[1],
            khat[2] * self.polarization[0] - khat[0] * self.polarization[2],
            khat[0] * self.polarization[1] - khat[1] * self.polarization[0],
        )
    }

    /// Field value at `(t, x)`.
    pub fn field_at(&self, t: f64, x: Vector3<f64>) -> FieldSample {
        let phase = (-I * (self.omega() * t - self.wavevector.dot(&x))).exp() * self.amplitude;
        FieldSample {
            e: self.polarization * phase,
            b: self.magnetic_polarization() * phase,
        }
    }

    /// Polarization spinor of the wave (amplitude and phase stripped).
    pub fn polarization_spinor(&self) -> PhotonSpinor {
        assemble_spinor_complex(self.polarization, self.magnetic_polarization())
    }

    /// Transverse phase factor `exp[i(k1 x1 + k2 x2)]` of the
    /// factorization `psi(t, x) = phi(t, x3) * phase`.
    pub fn transverse_phase(&self, x1: f64, x2: f64) -> C64 {
        (I * (self.wavevector[0] * x1 + self.wavevector[1] * x2)).exp()
    }
}

fn require_te_n0(guide: &WaveguideSpec, mode: &ModeIndex) -> Result<()> {
    if !guide.is_hollow() {
        return Err(Error::UnsupportedMode(
            "analytic mode fields are implemented for hollow guides only".into(),
        ));
    }
    if mode.family() != ModeFamily::Te || mode.s() != 0 {
        return Err(Error::UnsupportedMode(format!(
            "analytic field construction covers TE(n,0) only, got {:?}({},{})",
            mode.family(),
            mode.n(),
            mode.s()
        )));
    }
    Ok(())
}

/// `sin(pi u)` with exact zeros at integer `u`.
fn sin_pi(u: f64) -> f64 {
    let r = u.round();
    let s = (std::f64::consts::PI * (u - r)).sin();
    if (r as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(pi u)` with exact zeros at half-integer `u`.
fn cos_pi(u: f64) -> f64 {
    let r = u.round();
    let c = (std::f64::consts::PI * (u - r)).cos();
    if (r as i64) % 2 == 0 {
        c
    } else {
        -c
    }
}

/// Analytic TE(n,0) field at one spacetime point:
/// `E = e2 sin(n pi x1 / b1) exp[-i(w t - k3 x3)]` with the matching
/// magnetic field (`B1` odd, `B3` the longitudinal cosine component).
/// Tangential E vanishes on the walls `x1 in {0, b1}` exactly.
pub fn te_mode_field(
    guide: &WaveguideSpec,
    mode: &ModeIndex,
    k3: f64,
    t: f64,
    x: Vector3<f64>,
) -> Result<FieldSample> {
    require_te_n0(guide, mode)?;
    let (k1, _) = mode.transverse_wavenumbers(guide);
    let omega = dispersion_omega(cutoff_frequency(guide, mode), k3);
    let axial = (-I * (omega * t - k3 * x[2])).exp();
    let u = mode.n() as f64 * x[0] / guide.b1();
    let s = sin_pi(u);
    let c = cos_pi(u);
    Ok(FieldSample {
        e: Vector3::new(C64::from(0.0), axial * s, C64::from(0.0)),
        b: Vector3::new(
            axial * (-k3 / omega * s),
            C64::from(0.0),
            -I * axial * (k1 / omega * c),
        ),
    })
}

/// Splits a TE(n,0) mode into its two zigzag TEM branches with
/// wavevectors `(+-k1, 0, k3)`, equal amplitude magnitude and opposite
/// sign; their sum reproduces [`te_mode_field`] pointwise.
pub fn zigzag_decompose(
    guide: &WaveguideSpec,
    mode: &ModeIndex,
    k3: f64,
    e0: f64,
) -> Result<(PlaneWaveComponent, PlaneWaveComponent)> {
    require_te_n0(guide, mode)?;
    let (k1, _) = mode.transverse_wavenumbers(guide);
    let e2 = Vector3::new(C64::from(0.0), C64::from(1.0), C64::from(0.0));
    // sin(k1 x1) = (e^{i k1 x1} - e^{-i k1 x1}) / 2i
    let plus = PlaneWaveComponent {
        wavevector: Vector3::new(k1, 0.0, k3),
        polarization: e2,
        amplitude: C64::from(e0) / (2.0 * I),
    };
    let minus = PlaneWaveComponent {
        wavevector: Vector3::new(-k1, 0.0, k3),
        polarization: e2,
        amplitude: -C64::from(e0) / (2.0 * I),
    };
    Ok((plus, minus))
}

/// Residual of the per-branch factorization
/// `psi(t, x) = phi(t, x3) * exp[i(k1 x1 + k2 x2)]`: the max over the
/// sample points of the spinor-component mismatch.
pub fn factorization_check(component: &PlaneWaveComponent, samples: &[(f64, Vector3<f64>)]) -> f64 {
    let mut worst: f64 = 0.0;
    for &(t, x) in samples {
        let full = component.field_at(t, x).spinor();
        let axial = component
            .field_at(t, Vector3::new(0.0, 0.0, x[2]))
            .spinor();
        let diff = full - axial * component.transverse_phase(x[0], x[1]);
        worst = worst.max(diff.norm());
    }
    worst
}

/// Spinor samples on a regular grid over one cross-section and one
/// axial period: inclusive wall-to-wall points along x1 and x2,
/// periodic points along x3.
#[derive(Debug, Clone)]
pub struct FieldGrid3D {
    /// Points per axis (n1, n2 inclusive of walls; n3 periodic).
    dims: [usize; 3],
    /// Grid spacings.
    spacing: [f64; 3],
    /// Time instant of the snapshot.
    time: f64,
    data: Vec<PhotonSpinor>,
}

impl FieldGrid3D {
    /// Builds a grid from a closure `f(x1, x2, x3) -> spinor`.
    ///
    /// `dims` are point counts, all >= 8.
    pub fn from_fn(
        dims: [usize; 3],
        spacing: [f64; 3],
        time: f64,
        mut f: impl FnMut(f64, f64, f64) -> PhotonSpinor,
    ) -> Result<Self> {
        if dims.iter().any(|&n| n < 8) {
            return Err(Error::Domain(format!(
                "grid needs at least 8 points per axis, got {dims:?}"
            )));
        }
        if spacing.iter().any(|&h| !(h > 0.0)) {
            return Err(Error::Domain(format!(
                "grid spacings must be positive, got {spacing:?}"
            )));
        }
        let mut data = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    data.push(f(
                        i as f64 * spacing[0],
                        j as f64 * spacing[1],
                        k as f64 * spacing[2],
                    ));
                }
            }
        }
        Ok(Self {
            dims,
            spacing,
            time,
            data,
        })
    }

    /// Samples the analytic TE(n,0) field with `intervals` cells per
    /// axis: x1 and x2 span the walls inclusively, x3 spans one axial
    /// wavelength periodically (one broad wall length when k3 = 0).
    pub fn sample_te_mode(
        guide: &WaveguideSpec,
        mode: &ModeIndex,
        k3: f64,
        t: f64,
        intervals: usize,
    ) -> Result<Self> {
        require_te_n0(guide, mode)?;
        if intervals < 8 {
            return Err(Error::Domain(format!(
                "grid needs at least 8 cells per axis, got {intervals}"
            )));
        }
        let l3 = if k3 > 0.0 {
            2.0 * std::f64::consts::PI / k3
        } else {
            guide.b1()
        };
        let dims = [intervals + 1, intervals + 1, intervals];
        let spacing = [
            guide.b1() / intervals as f64,
            guide.b2() / intervals as f64,
            l3 / intervals as f64,
        ];
        let guide = *guide;
        let mode = *mode;
        Self::from_fn(dims, spacing, t, move |x1, x2, x3| {
            te_mode_field(&guide, &mode, k3, t, Vector3::new(x1, x2, x3))
                .expect("validated above")
                .spinor()
        })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &PhotonSpinor {
        &self.data[self.idx(i, j, k)]
    }

    /// Central differences along an axis; x3 wraps periodically, x1/x2
    /// are only called on interior indices.
    fn central_diff(&self, i: usize, j: usize, k: usize, axis: usize) -> PhotonSpinor {
        let (lo, hi) = match axis {
            0 => (self.idx(i - 1, j, k), self.idx(i + 1, j, k)),
            1 => (self.idx(i, j - 1, k), self.idx(i, j + 1, k)),
            _ => {
                let n3 = self.dims[2];
                (
                    self.idx(i, j, (k + n3 - 1) % n3),
                    self.idx(i, j, (k + 1) % n3),
                )
            }
        };
        (self.data[hi] - self.data[lo]) / C64::from(2.0 * self.spacing[axis])
    }

    /// Energy `integral psi^dag psi dx1 dx2` over the cross-section at
    /// one axial index, by the trapezoid rule (wall points get weight
    /// 1/2).
    pub fn cross_section_energy(&self, axial_index: usize) -> f64 {
        let mut total = 0.0;
        for i in 0..self.dims[0] {
            let wi = if i == 0 || i == self.dims[0] - 1 { 0.5 } else { 1.0 };
            for j in 0..self.dims[1] {
                let wj = if j == 0 || j == self.dims[1] - 1 { 0.5 } else { 1.0 };
                total += wi * wj * self.at(i, j, axial_index).norm_squared();
            }
        }
        total * self.spacing[0] * self.spacing[1]
    }
}

fn check_compatible(a: &FieldGrid3D, b: &FieldGrid3D) -> Result<f64> {
    if a.dims != b.dims || a.spacing != b.spacing {
        return Err(Error::Domain(
            "snapshots must share grid dimensions and spacings".into(),
        ));
    }
    let dt = b.time - a.time;
    if !(dt > 0.0) {
        return Err(Error::Domain(format!(
            "snapshots must be time-ordered, got dt = {dt}"
        )));
    }
    Ok(dt)
}

/// Discrete residual of `i d(psi)/dt = -i beta0 (beta . grad) psi` from
/// two snapshots at `t -+ dt/2`: max norm over interior points (x3
/// wraps). Second-order accurate in both the spacings and dt for exact
/// mode fields.
pub fn dirac_residual(minus: &FieldGrid3D, plus: &FieldGrid3D) -> Result<f64> {
    let dt = check_compatible(minus, plus)?;
    let b0 = spinor::beta(0);
    let hop = [
        b0 * spinor::beta(1) * (-I),
        b0 * spinor::beta(2) * (-I),
        b0 * spinor::beta(3) * (-I),
    ];
    let mut worst: f64 = 0.0;
    let [n1, n2, n3] = minus.dims;
    for i in 1..n1 - 1 {
        for j in 1..n2 - 1 {
            for k in 0..n3 {
                let dt_psi =
                    (plus.data[plus.idx(i, j, k)] - minus.data[minus.idx(i, j, k)]) / C64::from(dt);
                let mut residual: PhotonSpinor = dt_psi * I;
                for (axis, op) in hop.iter().enumerate() {
                    let mid = (minus.central_diff(i, j, k, axis)
                        + plus.central_diff(i, j, k, axis))
                        / C64::from(2.0);
                    residual -= op * mid;
                }
                worst = worst.max(residual.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
    }
    Ok(worst)
}

/// Discrete max of `|div E| + |div B|` over interior points; second
/// order convergent to zero for valid mode fields.
pub fn transversality_residual(grid: &FieldGrid3D) -> Result<f64> {
    if grid.dims.iter().any(|&n| n < 8) {
        return Err(Error::Domain("grid too small".into()));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut worst: f64 = 0.0;
    let [n1, n2, n3] = grid.dims;
    for i in 1..n1 - 1 {
        for j in 1..n2 - 1 {
            for k in 0..n3 {
                let mut div_e = C64::from(0.0);
                let mut div_b = C64::from(0.0);
                for axis in 0..3 {
                    let d = grid.central_diff(i, j, k, axis);
                    // psi = (E, iB)/sqrt(2)
                    div_e += d[axis] * sqrt2;
                    div_b += d[3 + axis] * sqrt2 * (-I);
                }
                worst = worst.max(div_e.norm() + div_b.norm());
            }
        }
    }
    Ok(worst)
}

/// Convenience: builds the two snapshots at `t -+ dt/2` with
/// `dt = min(h)/4` and returns the Dirac residual of the analytic
/// TE(n,0) field at the given refinement.
pub fn te_mode_dirac_residual(
    guide: &WaveguideSpec,
    mode: &ModeIndex,
    k3: f64,
    t: f64,
    intervals: usize,
) -> Result<f64> {
    let probe = FieldGrid3D::sample_te_mode(guide, mode, k3, t, intervals)?;
    let dt = probe
        .spacing
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        / 4.0;
    let minus = FieldGrid3D::sample_te_mode(guide, mode, k3, t - dt / 2.0, intervals)?;
    let plus = FieldGrid3D::sample_te_mode(guide, mode, k3, t + dt / 2.0, intervals)?;
    dirac_residual(&minus, &plus)
}
