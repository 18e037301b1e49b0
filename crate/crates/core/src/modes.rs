//! Rectangular-waveguide mode catalogue and single-particle kinematics.
//!
//! Cutoffs follow `omega_c = pi sqrt((n/b1)^2 + (s/b2)^2)`; the
//! effective rest mass is the cutoff, shifted to
//! `sqrt(omega_c^2 + omega_p^2)` when the guide is filled with a
//! lossless plasma of frequency `omega_p`. Away from cutoff the plasma
//! fill is modelled by the standard lossless-plasma dispersion
//! `omega^2 = k3^2 + omega_c^2 + omega_p^2`, i.e. the effective mass
//! feeds the usual mass shell.

use crate::minkowski::{self, GuidedDecomposition};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Mode family label. Only TE fields are constructed elsewhere; TM
/// indices are accepted by the catalogue (cutoff formula is shared) but
/// flagged by this field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeFamily {
    #[default]
    Te,
    Tm,
}

/// Rectangular guide: broad wall `b1 >= b2 > 0` (narrow wall), plus an
/// optional plasma fill frequency (0 = hollow).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideSpec {
    b1: f64,
    b2: f64,
    plasma_frequency: f64,
}

impl WaveguideSpec {
    /// Hollow guide with walls `b1 >= b2 > 0`.
    pub fn new(b1: f64, b2: f64) -> Result<Self> {
        Self::with_plasma(b1, b2, 0.0)
    }

    /// Guide filled with lossless plasma of frequency `omega_p >= 0`.
    pub fn with_plasma(b1: f64, b2: f64, plasma_frequency: f64) -> Result<Self> {
        if !(b2 > 0.0) || !b1.is_finite() || !b2.is_finite() {
            return Err(Error::Domain(format!(
                "wall lengths must be finite and positive, got b1 = {b1}, b2 = {b2}"
            )));
        }
        if b1 < b2 {
            return Err(Error::Domain(format!(
                "broad wall must not be shorter than narrow wall, got b1 = {b1} < b2 = {b2}"
            )));
        }
        if !(plasma_frequency >= 0.0) || !plasma_frequency.is_finite() {
            return Err(Error::Domain(format!(
                "plasma frequency must be finite and >= 0, got {plasma_frequency}"
            )));
        }
        Ok(Self {
            b1,
            b2,
            plasma_frequency,
        })
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn plasma_frequency(&self) -> f64 {
        self.plasma_frequency
    }

    pub fn is_hollow(&self) -> bool {
        self.plasma_frequency == 0.0
    }

    /// Degenerate square cross-section. Allowed, but sweep drivers may
    /// want to warn: TE(n,s) and TE(s,n) cutoffs coincide.
    pub fn is_square(&self) -> bool {
        self.b1 == self.b2
    }
}

/// Mode label (n, s): `n >= 1`, `s >= 0` for TE; TM additionally needs
/// `s >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeIndex {
    n: u32,
    s: u32,
    family: ModeFamily,
}

impl ModeIndex {
    /// TE mode with `n >= 1`, `s >= 0`; (1, 0) is the lowest-order mode.
    pub fn te(n: u32, s: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("TE mode requires n >= 1".into()));
        }
        Ok(Self {
            n,
            s,
            family: ModeFamily::Te,
        })
    }

    /// TM mode with `n >= 1`, `s >= 1`.
    pub fn tm(n: u32, s: u32) -> Result<Self> {
        if n == 0 || s == 0 {
            return Err(Error::Domain("TM mode requires n >= 1 and s >= 1".into()));
        }
        Ok(Self {
            n,
            s,
            family: ModeFamily::Tm,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn family(&self) -> ModeFamily {
        self.family
    }

    /// Transverse wavenumbers `(k1, k2) = (n pi / b1, s pi / b2)`.
    pub fn transverse_wavenumbers(&self, guide: &WaveguideSpec) -> (f64, f64) {
        (
            self.n as f64 * PI / guide.b1,
            self.s as f64 * PI / guide.b2,
        )
    }
}

/// A single guided photon: guide, mode, and axial wavenumber `k3 >= 0`
/// (negative axial momenta arise only via boosts).
#[derive(Debug, Clone, Copy)]
pub struct GuidedPhotonState {
    pub guide: WaveguideSpec,
    pub mode: ModeIndex,
    pub k3: f64,
}

impl GuidedPhotonState {
    pub fn new(guide: WaveguideSpec, mode: ModeIndex, k3: f64) -> Result<Self> {
        if !(k3 >= 0.0) || !k3.is_finite() {
            return Err(Error::Domain(format!(
                "axial wavenumber must be finite and >= 0, got {k3}"
            )));
        }
        Ok(Self { guide, mode, k3 })
    }

    /// Energy `sqrt(k3^2 + m^2)` on the mass shell of this state.
    pub fn energy(&self) -> f64 {
        dispersion_omega(effective_mass(&self.guide, &self.mode), self.k3)
    }
}

/// Cutoff frequency `pi sqrt((n/b1)^2 + (s/b2)^2)` of the (empty-guide)
/// mode; nonincreasing in both wall lengths.
pub fn cutoff_frequency(guide: &WaveguideSpec, mode: &ModeIndex) -> f64 {
    let (k1, k2) = mode.transverse_wavenumbers(guide);
    (k1 * k1 + k2 * k2).sqrt()
}

/// Effective rest mass `sqrt(omega_c^2 + omega_p^2)`; identical to the
/// cutoff for a hollow guide (bit for bit, not just to rounding).
pub fn effective_mass(guide: &WaveguideSpec, mode: &ModeIndex) -> f64 {
    let wc = cutoff_frequency(guide, mode);
    let wp = guide.plasma_frequency;
    if wp == 0.0 {
        return wc;
    }
    (wc * wc + wp * wp).sqrt()
}

/// Effective Compton wavelength `1/mass` (natural units); the transverse
/// localization limit of a guided photon.
pub fn compton_wavelength(mass: f64) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(Error::Domain(format!(
            "Compton wavelength needs a positive mass, got {mass}"
        )));
    }
    Ok(1.0 / mass)
}

/// Mass-shell frequency `sqrt(k3^2 + mass^2)`.
pub fn dispersion_omega(mass: f64, k3: f64) -> f64 {
    (k3 * k3 + mass * mass).sqrt()
}

/// Group velocity `sqrt(1 - (omega_c/omega)^2)` of a propagating mode;
/// equals `|p|/E` on the mass shell.
pub fn group_velocity(omega: f64, omega_c: f64) -> Result<f64> {
    if !(omega_c > 0.0) {
        return Err(Error::Domain(format!(
            "cutoff must be positive, got {omega_c}"
        )));
    }
    if omega < omega_c {
        return Err(Error::Domain(format!(
            "omega = {omega} < omega_c = {omega_c}: evanescent regime, use evanescent_kappa"
        )));
    }
    let r = omega_c / omega;
    Ok((1.0 - r * r).sqrt())
}

/// Phase velocity `1 / sqrt(1 - (omega_c/omega)^2) > 1`; its product
/// with the group velocity is exactly 1.
pub fn phase_velocity(omega: f64, omega_c: f64) -> Result<f64> {
    if !(omega_c > 0.0) {
        return Err(Error::Domain(format!(
            "cutoff must be positive, got {omega_c}"
        )));
    }
    if omega <= omega_c {
        return Err(Error::Domain(format!(
            "omega = {omega} <= omega_c = {omega_c}: phase velocity undefined at or below cutoff"
        )));
    }
    let r = omega_c / omega;
    Ok(1.0 / (1.0 - r * r).sqrt())
}

/// Relativistic energy `mass / sqrt(1 - v_g^2)`; inverse of
/// [`group_velocity`] composed with [`dispersion_omega`].
pub fn energy_from_velocity(mass: f64, v_g: f64) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(Error::Domain(format!(
            "mass must be positive, got {mass}"
        )));
    }
    if !(0.0..1.0).contains(&v_g) {
        return Err(Error::Domain(format!(
            "group velocity must lie in [0, 1), got {v_g}"
        )));
    }
    Ok(mass / (1.0 - v_g * v_g).sqrt())
}

/// Spatial decay constant `sqrt(omega_c^2 - omega^2)` of the
/// below-cutoff solutions `exp(-kappa r)`.
pub fn evanescent_kappa(omega: f64, omega_c: f64) -> Result<f64> {
    if !(omega >= 0.0) {
        return Err(Error::Domain(format!(
            "frequency must be >= 0, got {omega}"
        )));
    }
    if omega >= omega_c {
        return Err(Error::Domain(format!(
            "omega = {omega} >= omega_c = {omega_c}: propagating regime"
        )));
    }
    Ok((omega_c * omega_c - omega * omega).sqrt())
}

/// Effective four-momentum decomposition of a guided photon state.
///
/// For a hollow guide the frozen part is literally `(0, k1, k2, 0)`.
/// With a plasma fill the effective mass exceeds `|k_perp|`; the frozen
/// part keeps the transverse direction of the mode but is scaled to
/// `mass * eta` so that every decomposition invariant (orthogonality,
/// unit space-like `eta`, light-like total, `E^2 - k3^2 = m^2`) holds.
pub fn guided_four_momentum(state: &GuidedPhotonState) -> GuidedDecomposition {
    let (k1, k2) = state.mode.transverse_wavenumbers(&state.guide);
    let mass = effective_mass(&state.guide, &state.mode);
    let wc = cutoff_frequency(&state.guide, &state.mode);
    let scale = mass / wc;
    minkowski::decompose_transverse(k1 * scale, k2 * scale, state.k3)
        .expect("mode constructors guarantee k_perp > 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::minkowski_dot;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn guide_11() -> WaveguideSpec {
        WaveguideSpec::new(1.0, 0.5).unwrap()
    }

    #[test]
    fn guide_validation() {
        assert!(WaveguideSpec::new(1.0, 0.0).is_err());
        assert!(WaveguideSpec::new(0.5, 1.0).is_err());
        assert!(WaveguideSpec::with_plasma(1.0, 0.5, -1.0).is_err());
        let sq = WaveguideSpec::new(1.0, 1.0).unwrap();
        assert!(sq.is_square());
    }

    #[test]
    fn mode_validation() {
        assert!(ModeIndex::te(0, 0).is_err());
        assert!(ModeIndex::te(1, 0).is_ok());
        assert!(ModeIndex::tm(1, 0).is_err());
        assert!(ModeIndex::tm(1, 1).is_ok());
    }

    #[test]
    fn cutoff_lowest_mode() {
        let wc = cutoff_frequency(&guide_11(), &ModeIndex::te(1, 0).unwrap());
        assert_abs_diff_eq!(wc, PI, epsilon = 1e-15);
    }

    #[test]
    fn cutoff_te11() {
        let wc = cutoff_frequency(&guide_11(), &ModeIndex::te(1, 1).unwrap());
        assert_relative_eq!(wc, PI * 5.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn cutoff_scaling_degeneracy() {
        let wide = WaveguideSpec::new(2.0, 0.5).unwrap();
        let wc = cutoff_frequency(&wide, &ModeIndex::te(2, 0).unwrap());
        assert_abs_diff_eq!(wc, PI, epsilon = 1e-15);
    }

    #[test]
    fn cutoff_ordering_lowest_first() {
        let g = guide_11();
        let base = cutoff_frequency(&g, &ModeIndex::te(1, 0).unwrap());
        for n in 1..=4 {
            for s in 0..=4 {
                let m = ModeIndex::te(n, s).unwrap();
                assert!(cutoff_frequency(&g, &m) >= base - 1e-15);
            }
        }
    }

    #[test]
    fn effective_mass_hollow_equals_cutoff() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let b2 = rng.gen_range(0.2..1.0);
            let b1 = b2 + rng.gen_range(0.0..2.0);
            let g = WaveguideSpec::new(b1, b2).unwrap();
            let m = ModeIndex::te(rng.gen_range(1..4), rng.gen_range(0..4)).unwrap();
            assert_eq!(effective_mass(&g, &m), cutoff_frequency(&g, &m));
        }
    }

    #[test]
    fn effective_mass_plasma_three_four_five() {
        // omega_c = 3 needs b1 = pi/3
        let g = WaveguideSpec::with_plasma(PI / 3.0, PI / 6.0, 4.0).unwrap();
        let m = ModeIndex::te(1, 0).unwrap();
        assert_abs_diff_eq!(cutoff_frequency(&g, &m), 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(effective_mass(&g, &m), 5.0, epsilon = 1e-14);
    }

    #[test]
    fn compton_values() {
        assert_eq!(compton_wavelength(1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(compton_wavelength(PI).unwrap(), 1.0 / PI, epsilon = 1e-16);
        assert_eq!(compton_wavelength(5.0).unwrap(), 0.2);
        assert!(compton_wavelength(0.0).is_err());
        assert!(compton_wavelength(-1.0).is_err());
    }

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion_omega(PI, 0.0), PI);
        assert_eq!(dispersion_omega(3.0, 4.0), 5.0);
        assert_relative_eq!(dispersion_omega(PI, PI), PI * 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn mass_shell_relative() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..100 {
            let m = rng.gen_range(0.0..10.0);
            let k3 = rng.gen_range(0.0..10.0);
            let w = dispersion_omega(m, k3);
            assert!(w >= k3.max(m));
            assert!((w * w - k3 * k3 - m * m).abs() <= 1e-12 * (w * w).max(1.0));
        }
    }

    #[test]
    fn group_velocity_values() {
        assert_eq!(group_velocity(PI, PI).unwrap(), 0.0);
        assert_relative_eq!(
            group_velocity(2.0 * PI, PI).unwrap(),
            3.0f64.sqrt() / 2.0,
            epsilon = 1e-15
        );
        assert!((group_velocity(1000.0 * PI, PI).unwrap() - 1.0).abs() < 1e-5);
        assert!(group_velocity(2.0, 3.0).is_err());
    }

    #[test]
    fn phase_velocity_values() {
        assert_relative_eq!(
            phase_velocity(2.0 * PI, PI).unwrap(),
            2.0 / 3.0f64.sqrt(),
            epsilon = 1e-15
        );
        assert!(phase_velocity(PI, PI).is_err());
        // divergence just above cutoff
        let wc = 2.0;
        assert!(phase_velocity(wc * (1.0 + 5e-7), wc).unwrap() > 1e3);
    }

    #[test]
    fn de_broglie_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let wc = rng.gen_range(0.1..5.0);
            let w = wc * rng.gen_range(1.0001..50.0);
            let prod = group_velocity(w, wc).unwrap() * phase_velocity(w, wc).unwrap();
            assert!((prod - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn velocity_monotonicity() {
        let wc = 1.3;
        let mut prev_g = 0.0;
        let mut prev_p = f64::INFINITY;
        for i in 1..=60 {
            let w = wc * (1.0 + 0.2 * i as f64);
            let g = group_velocity(w, wc).unwrap();
            let p = phase_velocity(w, wc).unwrap();
            assert!(g > prev_g);
            assert!(p < prev_p);
            prev_g = g;
            prev_p = p;
        }
    }

    #[test]
    fn energy_from_velocity_values() {
        assert_eq!(energy_from_velocity(PI, 0.0).unwrap(), PI);
        assert_relative_eq!(
            energy_from_velocity(PI, 3.0f64.sqrt() / 2.0).unwrap(),
            2.0 * PI,
            epsilon = 1e-14
        );
        assert!(energy_from_velocity(PI, 1.0).is_err());
        assert!(energy_from_velocity(0.0, 0.5).is_err());
    }

    #[test]
    fn kinematics_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..50 {
            let m = rng.gen_range(0.1..8.0);
            let k3 = rng.gen_range(0.0..8.0);
            let w = dispersion_omega(m, k3);
            let vg = group_velocity(w, m).unwrap();
            let back = energy_from_velocity(m, vg).unwrap();
            assert!((back - w).abs() <= 1e-12 * w);
            // v_g = p/E form
            assert!((vg - k3 / w).abs() <= 1e-12);
        }
    }

    #[test]
    fn evanescent_kappa_values() {
        assert_eq!(evanescent_kappa(0.0, PI).unwrap(), PI);
        assert_eq!(evanescent_kappa(3.0, 5.0).unwrap(), 4.0);
        assert!(evanescent_kappa(5.0, 5.0).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..50 {
            let wc = rng.gen_range(0.5..8.0);
            let w = rng.gen_range(0.0..wc * 0.999);
            let kappa = evanescent_kappa(w, wc).unwrap();
            assert!((kappa * kappa + w * w - wc * wc).abs() <= 1e-12 * wc * wc);
        }
    }

    #[test]
    fn guided_momentum_rest_case() {
        let g = guide_11();
        let state = GuidedPhotonState::new(g, ModeIndex::te(1, 0).unwrap(), 0.0).unwrap();
        let d = guided_four_momentum(&state);
        assert_abs_diff_eq!(d.p_l.t, PI, epsilon = 1e-15);
        assert_eq!(d.p_l.x3, 0.0);
    }

    #[test]
    fn guided_momentum_te11_transverse() {
        let g = guide_11();
        let state = GuidedPhotonState::new(g, ModeIndex::te(1, 1).unwrap(), 2.0).unwrap();
        let d = guided_four_momentum(&state);
        assert_abs_diff_eq!(d.p_t.x1, PI, epsilon = 1e-14);
        assert_abs_diff_eq!(d.p_t.x2, 2.0 * PI, epsilon = 1e-14);
        let norm = (d.p_t.x1 * d.p_t.x1 + d.p_t.x2 * d.p_t.x2).sqrt();
        assert_relative_eq!(norm, PI * 5.0f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn guided_momentum_plasma_mass_shell() {
        let hollow = WaveguideSpec::new(1.0, 0.5).unwrap();
        let plasma = WaveguideSpec::with_plasma(1.0, 0.5, 1.0).unwrap();
        let mode = ModeIndex::te(1, 0).unwrap();
        for g in [hollow, plasma] {
            let state = GuidedPhotonState::new(g, mode, 1.0).unwrap();
            let d = guided_four_momentum(&state);
            let e = d.p_l.t;
            let m = effective_mass(&g, &mode);
            assert!((e * e - 1.0 - m * m).abs() <= 1e-12 * (m * m));
            // full invariants hold with the plasma-scaled frozen part
            assert!(minkowski_dot(d.k, d.k).abs() <= 1e-12 * d.k.euclid_norm_sq());
            assert!((minkowski_dot(d.eta, d.eta) + 1.0).abs() <= 1e-13);
        }
        let e_hollow = GuidedPhotonState::new(hollow, mode, 1.0).unwrap().energy();
        let e_plasma = GuidedPhotonState::new(plasma, mode, 1.0).unwrap().energy();
        assert_relative_eq!(e_hollow, (PI * PI + 1.0).sqrt(), epsilon = 1e-14);
        assert_relative_eq!(e_plasma, (PI * PI + 2.0).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn state_rejects_negative_k3() {
        let g = guide_11();
        assert!(GuidedPhotonState::new(g, ModeIndex::te(1, 0).unwrap(), -1.0).is_err());
    }

    #[test]
    fn boosted_state_keeps_mass() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let g = guide_11();
        let mode = ModeIndex::te(1, 0).unwrap();
        for _ in 0..50 {
            let k3 = rng.gen_range(0.0..6.0);
            let v = rng.gen_range(-0.97..0.97);
            let state = GuidedPhotonState::new(g, mode, k3).unwrap();
            let d = guided_four_momentum(&state);
            let boosted = crate::minkowski::boost_axial(d.p_l, v).unwrap();
            let m2 = boosted.t * boosted.t - boosted.x3 * boosted.x3;
            assert!((m2 - d.mass * d.mass).abs() <= 1e-10 * (d.mass * d.mass).max(1.0));
        }
    }
}
