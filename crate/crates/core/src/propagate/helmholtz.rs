//! Frequency-domain axial solutions: transfer matrices across
//! piecewise-constant cutoff profiles, transmission/reflection, the
//! interior field, and the evanescent decay-constant fit.
//!
//! Each segment solves `phi'' + (omega^2 - omega_c^2) phi = 0`, so the
//! (phi, phi') transfer matrix is a rotation above cutoff and a
//! hyperbolic map below it; both are real with unit determinant, which
//! is what keeps `T + R = 1` at roundoff. Matrices are rescaled during
//! composition with the log of the scale carried separately, so thick
//! barriers neither overflow nor lose the exponent.

use crate::modes::evanescent_kappa;
use crate::spinor::C64;
use crate::{Error, Result};
use num_complex::Complex;

/// One piecewise-constant stretch of guide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub length: f64,
    pub omega_c: f64,
}

/// A piecewise-constant cutoff profile; the first and last segments act
/// as the leads.
#[derive(Debug, Clone, PartialEq)]
pub struct BarrierProfile {
    segments: Vec<Segment>,
}

impl BarrierProfile {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Domain("profile needs at least one segment".into()));
        }
        for (i, s) in segments.iter().enumerate() {
            if !(s.length > 0.0) || !s.length.is_finite() {
                return Err(Error::Domain(format!(
                    "segment {i} must have positive finite length, got {}",
                    s.length
                )));
            }
            if !(s.omega_c >= 0.0) || !s.omega_c.is_finite() {
                return Err(Error::Domain(format!(
                    "segment {i} must have finite cutoff >= 0, got {}",
                    s.omega_c
                )));
            }
        }
        Ok(Self { segments })
    }

    /// Uniform lead / barrier / lead shorthand.
    pub fn single_barrier(
        lead_omega_c: f64,
        lead_length: f64,
        barrier_omega_c: f64,
        barrier_length: f64,
    ) -> Result<Self> {
        Self::new(vec![
            Segment {
                length: lead_length,
                omega_c: lead_omega_c,
            },
            Segment {
                length: barrier_length,
                omega_c: barrier_omega_c,
            },
            Segment {
                length: lead_length,
                omega_c: lead_omega_c,
            },
        ])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }
}

/// Transmission/reflection coefficients of a profile. `saturated` marks
/// barriers so thick that the transmission underflowed to zero.
#[derive(Debug, Clone, Copy)]
pub struct Transmission {
    pub transmission: f64,
    pub reflection: f64,
    pub saturated: bool,
}

/// Real (phi, phi') transfer matrix with a separately tracked log-scale.
#[derive(Debug, Clone, Copy)]
struct Scaled2x2 {
    m: [[f64; 2]; 2],
    log_scale: f64,
}

impl Scaled2x2 {
    fn identity() -> Self {
        Self {
            m: [[1.0, 0.0], [0.0, 1.0]],
            log_scale: 0.0,
        }
    }

    /// Transfer matrix of one segment at frequency `omega`, prescaled
    /// when evanescent so entries stay O(1).
    fn segment(omega: f64, seg: &Segment) -> Self {
        let q = omega * omega - seg.omega_c * seg.omega_c;
        let l = seg.length;
        if q >= 0.0 {
            let k = q.sqrt();
            if k * l < 1e-12 {
                // resolves the k -> 0 limit: sin(kl)/k -> l
                return Self {
                    m: [[1.0, l], [-k * k * l, 1.0]],
                    log_scale: 0.0,
                };
            }
            let (s, c) = (k * l).sin_cos();
            Self {
                m: [[c, s / k], [-k * s, c]],
                log_scale: 0.0,
            }
        } else {
            let kappa = (-q).sqrt();
            let x = kappa * l;
            // cosh(x) = e^x (1 + e^{-2x}) / 2, sinh(x) = e^x (1 - e^{-2x}) / 2
            let d = (-2.0 * x).exp();
            let ch = 0.5 * (1.0 + d);
            let sh = 0.5 * (1.0 - d);
            Self {
                m: [[ch, sh / kappa], [kappa * sh, ch]],
                log_scale: x,
            }
        }
    }

    /// `self = other * self` (apply `other` after `self`), renormalizing
    /// so entries stay bounded.
    fn premultiply(&mut self, other: &Scaled2x2) {
        let a = &other.m;
        let b = &self.m;
        let mut m = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        let mut log_scale = self.log_scale + other.log_scale;
        let biggest = m
            .iter()
            .flatten()
            .map(|x| x.abs())
            .fold(0.0f64, f64::max);
        if biggest > 1.0 {
            for row in &mut m {
                for x in row.iter_mut() {
                    *x /= biggest;
                }
            }
            log_scale += biggest.ln();
        }
        self.m = m;
        self.log_scale = log_scale;
    }
}

fn lead_wavenumber(omega: f64, seg: &Segment, which: &str) -> Result<f64> {
    let q = omega * omega - seg.omega_c * seg.omega_c;
    if !(q > 0.0) {
        return Err(Error::Domain(format!(
            "{which} lead is not propagating: omega = {omega} <= cutoff {}",
            seg.omega_c
        )));
    }
    Ok(q.sqrt())
}

/// Transmission and reflection of a monochromatic wave incident from
/// the left lead. Lossless: `T + R = 1` to roundoff; transmissions that
/// underflow the double range come back as exactly 0 with `saturated`
/// set.
pub fn helmholtz_mode(omega: f64, profile: &BarrierProfile) -> Result<Transmission> {
    let segs = profile.segments();
    let k_a = lead_wavenumber(omega, &segs[0], "left")?;
    let k_b = lead_wavenumber(omega, segs.last().unwrap(), "right")?;

    let mut m = Scaled2x2::identity();
    if segs.len() > 2 {
        for seg in &segs[1..segs.len() - 1] {
            m.premultiply(&Scaled2x2::segment(omega, seg));
        }
    }

    // With M = (phi, phi') transfer across the interior and unit
    // incidence, t = -2 i k_a / Delta where
    // Delta = M21 - i k_a M22 - i k_b M11 - k_a k_b M12 (det M = 1).
    let mm = &m.m;
    let delta = Complex::new(mm[1][0] - k_a * k_b * mm[0][1], -(k_a * mm[1][1] + k_b * mm[0][0]));
    let r_num = Complex::new(
        -(mm[1][0] + k_a * k_b * mm[0][1]),
        k_b * mm[0][0] - k_a * mm[1][1],
    );
    let reflection = (r_num.norm_sqr() / delta.norm_sqr()).clamp(0.0, 1.0);
    // T = 4 k_a k_b / |Delta_actual|^2 with Delta_actual = e^{log_scale} Delta
    let log_t = (4.0 * k_a * k_b).ln() - 2.0 * m.log_scale - delta.norm_sqr().ln();
    let transmission = log_t.exp().clamp(0.0, 1.0);
    let saturated = transmission == 0.0 && log_t < 0.0;
    Ok(Transmission {
        transmission,
        reflection,
        saturated,
    })
}

/// Complex field `phi(r)` of the same scattering solution, sampled at
/// positions measured from the start of the profile (the incident wave
/// has unit amplitude at the interior's left edge).
///
/// Intended for moderate profiles; errors out rather than overflowing
/// on extreme barriers.
pub fn helmholtz_field(
    omega: f64,
    profile: &BarrierProfile,
    positions: &[f64],
) -> Result<Vec<C64>> {
    let segs = profile.segments();
    let k_a = lead_wavenumber(omega, &segs[0], "left")?;
    let k_b = lead_wavenumber(omega, segs.last().unwrap(), "right")?;

    let mut m = Scaled2x2::identity();
    if segs.len() > 2 {
        for seg in &segs[1..segs.len() - 1] {
            m.premultiply(&Scaled2x2::segment(omega, seg));
        }
    }
    if m.log_scale > 300.0 {
        return Err(Error::Numerical(format!(
            "barrier too opaque for direct field evaluation (log scale {:.1})",
            m.log_scale
        )));
    }
    let scale = m.log_scale.exp();
    let mm = [
        [m.m[0][0] * scale, m.m[0][1] * scale],
        [m.m[1][0] * scale, m.m[1][1] * scale],
    ];
    let delta = Complex::new(mm[1][0] - k_a * k_b * mm[0][1], -(k_a * mm[1][1] + k_b * mm[0][0]));
    let r = Complex::new(
        -(mm[1][0] + k_a * k_b * mm[0][1]),
        k_b * mm[0][0] - k_a * mm[1][1],
    ) / delta;
    let t = Complex::new(0.0, -2.0 * k_a) / delta;

    let interior_start = segs[0].length;
    let interior_end = profile.total_length() - segs.last().unwrap().length;
    let i = Complex::new(0.0, 1.0);

    let mut out = Vec::with_capacity(positions.len());
    for &r_pos in positions {
        if r_pos < interior_start {
            let x = r_pos - interior_start;
            out.push((i * k_a * x).exp() + r * (-i * k_a * x).exp());
        } else if r_pos >= interior_end {
            out.push(t * (i * k_b * (r_pos - interior_end)).exp());
        } else {
            // propagate (phi, phi') from the interior start
            let mut state = [Complex::new(1.0, 0.0) + r, i * k_a * (Complex::new(1.0, 0.0) - r)];
            let mut x = interior_start;
            for seg in &segs[1..segs.len() - 1] {
                let end = x + seg.length;
                let within = r_pos.min(end) - x;
                if within > 0.0 {
                    let partial = Scaled2x2::segment(
                        omega,
                        &Segment {
                            length: within,
                            omega_c: seg.omega_c,
                        },
                    );
                    let s = partial.log_scale.exp();
                    let p = [
                        [partial.m[0][0] * s, partial.m[0][1] * s],
                        [partial.m[1][0] * s, partial.m[1][1] * s],
                    ];
                    state = [
                        state[0] * p[0][0] + state[1] * p[0][1],
                        state[0] * p[1][0] + state[1] * p[1][1],
                    ];
                }
                if r_pos <= end {
                    break;
                }
                x = end;
            }
            out.push(state[0]);
        }
    }
    Ok(out)
}

/// Least-squares log-linear fit of `|phi(r)|` samples below cutoff;
/// returns the fitted decay constant (the negated slope of
/// `ln |phi|` vs `r`).
///
/// Requires `omega < omega_c`, a sample span of at least three decay
/// lengths of the expected constant, and enough dynamic range in the
/// magnitudes to fit against.
pub fn evanescent_decay_fit(omega: f64, omega_c: f64, samples: &[(f64, f64)]) -> Result<f64> {
    let kappa = evanescent_kappa(omega, omega_c)?;
    if samples.len() < 4 {
        return Err(Error::Fit(format!(
            "need at least 4 samples, got {}",
            samples.len()
        )));
    }
    let r_min = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let r_max = samples.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
    if (r_max - r_min) * kappa < 3.0 - 1e-9 {
        return Err(Error::Domain(format!(
            "samples span {:.3} decay lengths, need >= 3",
            (r_max - r_min) * kappa
        )));
    }
    let mut logs = Vec::with_capacity(samples.len());
    for &(r, mag) in samples {
        if !(mag > 0.0) || !mag.is_finite() {
            return Err(Error::Fit(format!(
                "magnitude samples must be positive and finite, got {mag} at r = {r}"
            )));
        }
        logs.push((r, mag.ln()));
    }
    let lmax = logs.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let lmin = logs.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    if lmax - lmin < 1.0 {
        return Err(Error::Fit(format!(
            "insufficient dynamic range: ln(max/min) = {:.3}",
            lmax - lmin
        )));
    }
    // least squares slope
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|s| s.0).sum();
    let sy: f64 = logs.iter().map(|s| s.1).sum();
    let sxx: f64 = logs.iter().map(|s| s.0 * s.0).sum();
    let sxy: f64 = logs.iter().map(|s| s.0 * s.1).sum();
    let denom = n * sxx - sx * sx;
    if denom <= 0.0 {
        return Err(Error::Fit("degenerate sample positions".into()));
    }
    let slope = (n * sxy - sx * sy) / denom;
    Ok(-slope)
}
