//! Wave-packet observables: norm, centroid, trajectories, fitted
//! velocities, centroid-oscillation spectra, and dispersion extraction
//! from snapshot stacks.
//!
//! The density is `psi^dag psi` throughout (the energy density of the
//! underlying fields). Centroids on the periodic grid are computed as
//! the circular mean refined by a wrapped first moment, which is exact
//! for packets that stay away from the wrap point.

use super::evolve::{evolve_spectral, FieldFft};
use super::grid::{Grid1D, ScalarField1D, SpinorField1D};
use crate::spinor::C64;
use crate::{Error, Result};

/// `h * sum_j psi_j^dag psi_j`; conserved by the spectral evolution.
pub fn measure_norm(field: &SpinorField1D) -> f64 {
    field.grid.spacing() * field.values.iter().map(|v| v.norm_squared()).sum::<f64>()
}

fn circular_centroid(grid: Grid1D, density: impl Iterator<Item = f64> + Clone) -> Result<f64> {
    let l = grid.length();
    let total: f64 = density.clone().sum();
    if !(total > 0.0) {
        return Err(Error::Domain("centroid of a zero-norm field".into()));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let (mut re, mut im) = (0.0, 0.0);
    for (j, rho) in density.clone().enumerate() {
        let theta = two_pi * grid.position(j) / l;
        re += rho * theta.cos();
        im += rho * theta.sin();
    }
    if (re * re + im * im).sqrt() <= 1e-12 * total {
        return Err(Error::Domain(
            "density is too uniform for a circular centroid".into(),
        ));
    }
    let mut c0 = l / two_pi * im.atan2(re);
    if c0 < 0.0 {
        c0 += l;
    }
    // refine with the wrapped first moment about the circular mean;
    // flag packets that violate the stay-away-from-the-wrap contract
    let mut moment = 0.0;
    let mut wrap_mass = 0.0;
    let mut far_mass = 0.0;
    for (j, rho) in density.enumerate() {
        let r = grid.position(j);
        let mut d = r - c0;
        d -= l * (d / l).round();
        moment += rho * d;
        if r < 0.025 * l || r > 0.975 * l {
            wrap_mass += rho;
        }
        if d.abs() > 0.45 * l {
            far_mass += rho;
        }
    }
    if wrap_mass > 1e-6 * total || far_mass > 1e-6 * total {
        return Err(Error::Domain(format!(
            "packet too close to the periodic boundary: density fraction {:.2e} at the wrap \
             point, {:.2e} opposite the centroid",
            wrap_mass / total,
            far_mass / total
        )));
    }
    let mut c = c0 + moment / total;
    c = c.rem_euclid(l);
    Ok(c)
}

/// Density-weighted position of the packet, circular-mean corrected.
/// Callers should keep packets several widths away from the wrap point.
pub fn measure_centroid(field: &SpinorField1D) -> Result<f64> {
    circular_centroid(field.grid, field.values.iter().map(|v| v.norm_squared()))
}

impl ScalarField1D {
    /// Density-weighted position with density `|phi|^2`.
    pub fn centroid(&self) -> Result<f64> {
        circular_centroid(self.grid, self.values.iter().map(|z| z.norm_sqr()))
    }
}

/// One logged observation of an evolving packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub centroid: f64,
    pub norm: f64,
}

/// Uniformly sampled time series of (t, centroid, norm), tagged with
/// the periodic domain length so later fits can unwrap the centroid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    samples: Vec<TrajectorySample>,
    domain_length: f64,
}

impl Trajectory {
    pub fn new(domain_length: f64) -> Self {
        Self {
            samples: Vec::new(),
            domain_length,
        }
    }

    pub fn push(&mut self, sample: TrajectorySample) -> Result<()> {
        if let Some(last) = self.samples.last() {
            if !(sample.t > last.t) {
                return Err(Error::Domain(format!(
                    "trajectory times must increase strictly: {} after {}",
                    sample.t, last.t
                )));
            }
        }
        self.samples.push(sample);
        Ok(())
    }

    pub fn samples(&self) -> &[TrajectorySample] {
        &self.samples
    }

    pub fn domain_length(&self) -> f64 {
        self.domain_length
    }

    /// Centroid series with periodic wraps removed.
    fn unwrapped_centroids(&self) -> Vec<f64> {
        let l = self.domain_length;
        let mut out = Vec::with_capacity(self.samples.len());
        let mut offset = 0.0;
        let mut prev = None;
        for s in &self.samples {
            if let Some(p) = prev {
                let d: f64 = s.centroid - p;
                if d > l / 2.0 {
                    offset -= l;
                } else if d < -l / 2.0 {
                    offset += l;
                }
            }
            prev = Some(s.centroid);
            out.push(s.centroid + offset);
        }
        out
    }
}

/// Evolves `field` spectrally, logging (t, centroid, norm) every
/// `dt_sample` until `t_final`; returns the trajectory and the final
/// field.
pub fn record_trajectory(
    field: &SpinorField1D,
    omega_c: f64,
    t_final: f64,
    dt_sample: f64,
) -> Result<(Trajectory, SpinorField1D)> {
    if !(dt_sample > 0.0) || !(t_final >= 0.0) {
        return Err(Error::Domain(format!(
            "need dt_sample > 0 and t_final >= 0, got {dt_sample}, {t_final}"
        )));
    }
    let steps = (t_final / dt_sample).round() as usize;
    let mut traj = Trajectory::new(field.grid.length());
    let mut current = field.clone();
    traj.push(TrajectorySample {
        t: current.time,
        centroid: measure_centroid(&current)?,
        norm: measure_norm(&current),
    })?;
    for _ in 0..steps {
        current = evolve_spectral(&current, omega_c, dt_sample)?;
        traj.push(TrajectorySample {
            t: current.time,
            centroid: measure_centroid(&current)?,
            norm: measure_norm(&current),
        })?;
    }
    Ok((traj, current))
}

/// Least-squares slope of the unwrapped centroid over the window
/// `[t_a, t_b]`; needs at least 10 samples inside the window.
pub fn fit_group_velocity(traj: &Trajectory, window: (f64, f64)) -> Result<f64> {
    let centroids = traj.unwrapped_centroids();
    let pairs: Vec<(f64, f64)> = traj
        .samples
        .iter()
        .zip(&centroids)
        .filter(|(s, _)| s.t >= window.0 && s.t <= window.1)
        .map(|(s, &c)| (s.t, c))
        .collect();
    if pairs.len() < 10 {
        return Err(Error::Fit(format!(
            "need at least 10 samples in the fit window, got {}",
            pairs.len()
        )));
    }
    let n = pairs.len() as f64;
    let sx: f64 = pairs.iter().map(|p| p.0).sum();
    let sy: f64 = pairs.iter().map(|p| p.1).sum();
    let sxx: f64 = pairs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pairs.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Dominant peak of the detrended centroid spectrum.
#[derive(Debug, Clone, Copy)]
pub struct ZbwPeak {
    /// Angular frequency of the dominant nonzero bin.
    pub frequency: f64,
    /// Oscillation amplitude in length units.
    pub amplitude: f64,
    /// Amplitude relative to the domain length.
    pub relative_amplitude: f64,
}

/// Discrete spectrum of the detrended centroid: subtracts the
/// best-fit line, Fourier transforms, and returns the dominant nonzero
/// peak. Errors when no peak rises above the noise floor of
/// `1e-12 * domain_length` — a centroid that simply travels in a
/// straight line has no oscillation to report.
pub fn zitterbewegung_spectrum(traj: &Trajectory) -> Result<ZbwPeak> {
    let n = traj.samples.len();
    if n < 64 {
        return Err(Error::Domain(format!(
            "need at least 64 uniform samples, got {n}"
        )));
    }
    let dt = traj.samples[1].t - traj.samples[0].t;
    for w in traj.samples.windows(2) {
        if ((w[1].t - w[0].t) - dt).abs() > 1e-9 * dt {
            return Err(Error::Domain("trajectory sampling is not uniform".into()));
        }
    }
    let centroids = traj.unwrapped_centroids();
    // detrend
    let nf = n as f64;
    let sx: f64 = traj.samples.iter().map(|s| s.t).sum();
    let sy: f64 = centroids.iter().sum();
    let sxx: f64 = traj.samples.iter().map(|s| s.t * s.t).sum();
    let sxy: f64 = traj
        .samples
        .iter()
        .zip(&centroids)
        .map(|(s, &c)| s.t * c)
        .sum();
    let slope = (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
    let intercept = (sy - slope * sx) / nf;
    let mut buf: Vec<C64> = traj
        .samples
        .iter()
        .zip(&centroids)
        .map(|(s, &c)| C64::from(c - slope * s.t - intercept))
        .collect();

    let fft = FieldFft::new_any(n);
    fft.process(&mut buf);
    let mut best_bin = 0;
    let mut best_amp = 0.0;
    for (m, z) in buf.iter().enumerate().take(n / 2 + 1).skip(1) {
        let amp = 2.0 * z.norm() / nf;
        if amp > best_amp {
            best_amp = amp;
            best_bin = m;
        }
    }
    let floor = 1e-12 * traj.domain_length;
    if best_amp <= floor {
        return Err(Error::Fit(format!(
            "no oscillation peak above the noise floor (max amplitude {best_amp:.3e}, floor \
             {floor:.3e}): the centroid is ballistic"
        )));
    }
    // quadratic interpolation around the peak bin recovers off-bin
    // frequencies well inside one bin width
    let mut bin = best_bin as f64;
    if best_bin >= 2 && best_bin + 1 <= n / 2 {
        let a = buf[best_bin - 1].norm();
        let b = buf[best_bin].norm();
        let c = buf[best_bin + 1].norm();
        let denom = a - 2.0 * b + c;
        if denom.abs() > 0.0 {
            let delta = 0.5 * (a - c) / denom;
            if delta.abs() <= 0.5 {
                bin += delta;
            }
        }
    }
    Ok(ZbwPeak {
        frequency: 2.0 * std::f64::consts::PI * bin / (nf * dt),
        amplitude: best_amp,
        relative_amplitude: best_amp / traj.domain_length,
    })
}

impl FieldFft {
    /// Forward FFT plan for arbitrary (non power-of-two) lengths, used
    /// on time series.
    pub(crate) fn new_any(n: usize) -> AnyFft {
        let mut planner = rustfft::FftPlanner::new();
        AnyFft {
            plan: planner.plan_fft_forward(n),
        }
    }
}

pub(crate) struct AnyFft {
    plan: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl AnyFft {
    pub fn process(&self, buf: &mut [C64]) {
        self.plan.process(buf);
    }
}

/// Columnar numeric dump of a snapshot: position, then the real and
/// imaginary part of each of the six components, in grid order.
/// Returns `(column_names, columns)`.
pub fn snapshot_columns(field: &SpinorField1D) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut names = vec!["r".to_string()];
    for c in 1..=6 {
        names.push(format!("re_psi{c}"));
        names.push(format!("im_psi{c}"));
    }
    let n = field.grid.n();
    let mut columns = vec![Vec::with_capacity(n); 13];
    for j in 0..n {
        columns[0].push(field.grid.position(j));
        let v = &field.values[j];
        for c in 0..6 {
            columns[1 + 2 * c].push(v[c].re);
            columns[2 + 2 * c].push(v[c].im);
        }
    }
    (names, columns)
}

/// Measured dispersion points `(k, omega)` from a stack of uniformly
/// spaced snapshots: spatial FFT per snapshot, temporal FFT per spatial
/// bin, peak picking over bins whose total power clears `1e-6` of the
/// strongest bin. Needs at least 64 snapshots.
pub fn extract_dispersion(history: &[SpinorField1D]) -> Result<Vec<(f64, f64)>> {
    if history.len() < 64 {
        return Err(Error::Domain(format!(
            "need at least 64 snapshots, got {}",
            history.len()
        )));
    }
    let grid = history[0].grid;
    let dt = history[1].time - history[0].time;
    if !(dt > 0.0) {
        return Err(Error::Domain("snapshots must be time-ordered".into()));
    }
    for pair in history.windows(2) {
        if pair[1].grid != grid {
            return Err(Error::Domain("snapshots must share one grid".into()));
        }
        if ((pair[1].time - pair[0].time) - dt).abs() > 1e-9 * dt {
            return Err(Error::Domain("snapshot times are not uniform".into()));
        }
    }

    let n = grid.n();
    let m = history.len();
    let fft = FieldFft::new(n);
    // spatial spectra, snapshot-major
    let spatial: Vec<Vec<crate::spinor::PhotonSpinor>> = history
        .iter()
        .map(|f| fft.forward_spinor(&f.values))
        .collect();

    let tfft = FieldFft::new_any(m);
    let mut power_by_bin = vec![0.0f64; n];
    let mut peak_by_bin = vec![0usize; n];
    let mut series = vec![C64::from(0.0); m];
    let mut spectrum_power = vec![0.0f64; m];
    for j in 0..n {
        spectrum_power.iter_mut().for_each(|p| *p = 0.0);
        for c in 0..6 {
            for (ti, snap) in spatial.iter().enumerate() {
                series[ti] = snap[j][c];
            }
            tfft.process(&mut series);
            for (p, z) in spectrum_power.iter_mut().zip(&series) {
                *p += z.norm_sqr();
            }
        }
        let total: f64 = spectrum_power.iter().sum();
        power_by_bin[j] = total;
        peak_by_bin[j] = spectrum_power
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
    }

    let max_power = power_by_bin.iter().cloned().fold(0.0, f64::max);
    let threshold = 1e-6 * max_power;
    let mut points: Vec<(f64, f64)> = Vec::new();
    for j in 0..n {
        if power_by_bin[j] < threshold || power_by_bin[j] == 0.0 {
            continue;
        }
        let bin = peak_by_bin[j];
        let signed = if bin <= m / 2 {
            bin as isize
        } else {
            bin as isize - m as isize
        };
        let omega = (2.0 * std::f64::consts::PI * signed as f64 / (m as f64 * dt)).abs();
        points.push((grid.wavenumber(j), omega));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(points)
}
