//! Four-vectors under the metric diag(1, -1, -1, -1), axial Lorentz
//! boosts, and the orthogonal decomposition of a guided photon's
//! light-like momentum.
//!
//! Components are always stored lower-index style as `(t, x1, x2, x3)`
//! (equivalently `(omega, k1, k2, k3)` for momenta), so that the
//! contraction of a momentum with a position reads
//! `omega*t - k.x` with no hidden sign flips.

use crate::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// A real four-vector `(t, x1, x2, x3)` under diag(1, -1, -1, -1).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl FourVector {
    pub const ZERO: FourVector = FourVector {
        t: 0.0,
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    pub fn new(t: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { t, x1, x2, x3 }
    }

    /// Spatial part as an array `[x1, x2, x3]`.
    pub fn spatial(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// Squared Euclidean norm over all four components; used for
    /// scale-relative tolerances.
    pub fn euclid_norm_sq(&self) -> f64 {
        self.t * self.t + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    /// Transverse slice `(0, x1, x2, 0)`.
    pub fn transverse(&self) -> FourVector {
        FourVector::new(0.0, self.x1, self.x2, 0.0)
    }

    /// Longitudinal slice `(t, 0, 0, x3)`.
    pub fn longitudinal(&self) -> FourVector {
        FourVector::new(self.t, 0.0, 0.0, self.x3)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t + rhs.t,
            self.x1 + rhs.x1,
            self.x2 + rhs.x2,
            self.x3 + rhs.x3,
        )
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t - rhs.t,
            self.x1 - rhs.x1,
            self.x2 - rhs.x2,
            self.x3 - rhs.x3,
        )
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector::new(self * v.t, self * v.x1, self * v.x2, self * v.x3)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        -1.0 * self
    }
}

/// Minkowski inner product `a0*b0 - a1*b1 - a2*b2 - a3*b3`.
pub fn minkowski_dot(a: FourVector, b: FourVector) -> f64 {
    a.t * b.t - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3
}

/// Causal character of a four-vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Timelike,
    Spacelike,
    Lightlike,
}

/// Classifies `a` by the sign of its Minkowski norm, treating
/// `|a.a| <= tol` as light-like. `tol` must be positive.
pub fn classify(a: FourVector, tol: f64) -> Classification {
    assert!(tol > 0.0, "classify tolerance must be positive");
    let n = minkowski_dot(a, a);
    if n.abs() <= tol {
        Classification::Lightlike
    } else if n > 0.0 {
        Classification::Timelike
    } else {
        Classification::Spacelike
    }
}

/// [`classify`] with the scale-relative default tolerance
/// `1e-9 * (t^2 + |x|^2)`, floored at 1e-300 so the zero vector is
/// light-like.
pub fn classify_default(a: FourVector) -> Classification {
    let scale = a.euclid_norm_sq();
    classify(a, (1e-9 * scale).max(1e-300))
}

/// Boost along the x3 (guide) axis with velocity `speed`, |speed| < 1.
///
/// Mixes components 0 and 3 and leaves 1, 2 untouched; the Minkowski
/// norm is preserved.
pub fn boost_axial(a: FourVector, speed: f64) -> Result<FourVector> {
    if !(speed.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "superluminal boost: |speed| = {} >= 1",
            speed.abs()
        )));
    }
    let gamma = 1.0 / (1.0 - speed * speed).sqrt();
    Ok(FourVector::new(
        gamma * (a.t + speed * a.x3),
        a.x1,
        a.x2,
        gamma * (a.x3 + speed * a.t),
    ))
}

/// Orthogonal split of a light-like momentum `k` into a space-like
/// frozen transverse part `p_t = mass * eta` and a time-like traveling
/// part `p_l`, with `eta.eta = -1` and `p_l.p_t = 0`.
#[derive(Debug, Clone, Copy)]
pub struct GuidedDecomposition {
    /// Light-like total momentum, `p_t + p_l`.
    pub k: FourVector,
    /// Space-like frozen part `(0, k_perp)`.
    pub p_t: FourVector,
    /// Time-like traveling part `(E, 0, 0, k3)`.
    pub p_l: FourVector,
    /// Unit space-like direction, `p_t = mass * eta`.
    pub eta: FourVector,
    /// Effective rest mass `|k_perp|`.
    pub mass: f64,
}

/// Decomposition for the lowest-order orientation `k_perp = (omega_c, 0, 0)`.
///
/// Yields `k = (sqrt(k3^2 + omega_c^2), omega_c, 0, k3)` split into
/// `p_t = (0, omega_c, 0, 0)` and `p_l = (E, 0, 0, k3)`.
pub fn decompose_guided(omega_c: f64, k3: f64) -> Result<GuidedDecomposition> {
    if !(omega_c > 0.0) {
        return Err(Error::Domain(format!(
            "cutoff must be positive, got {omega_c}"
        )));
    }
    decompose_transverse(omega_c, 0.0, k3)
}

/// General decomposition with transverse momentum `(k1, k2)`; the
/// effective mass is `|k_perp| = sqrt(k1^2 + k2^2)`, which must be
/// positive.
pub fn decompose_transverse(k1: f64, k2: f64, k3: f64) -> Result<GuidedDecomposition> {
    let mass = (k1 * k1 + k2 * k2).sqrt();
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::Domain(format!(
            "transverse momentum must be finite and nonzero, got |k_perp| = {mass}"
        )));
    }
    let energy = (k3 * k3 + mass * mass).sqrt();
    let p_t = FourVector::new(0.0, k1, k2, 0.0);
    let p_l = FourVector::new(energy, 0.0, 0.0, k3);
    Ok(GuidedDecomposition {
        k: p_t + p_l,
        p_t,
        p_l,
        eta: (1.0 / mass) * p_t,
        mass,
    })
}

/// Residual of the phase split `k.x = p_t.x_t + p_l.x_l`, where
/// `x_t = (0, x1, x2, 0)` and `x_l = (t, 0, 0, x3)`.
///
/// Zero up to roundoff for every decomposition and every `x`.
pub fn phase_split_check(decomp: &GuidedDecomposition, x: FourVector) -> f64 {
    let whole = minkowski_dot(decomp.k, x);
    let split =
        minkowski_dot(decomp.p_t, x.transverse()) + minkowski_dot(decomp.p_l, x.longitudinal());
    (whole - split).abs()
}
