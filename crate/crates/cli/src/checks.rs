//! The identity-suite battery: named, seeded checks over the library's
//! algebraic and spectral contracts. Each check returns its worst
//! residual (normalized by the relevant scale) and the tolerance it
//! must beat; randomness flows from one ChaCha8 stream so a fixed seed
//! reproduces every number bit for bit.

use guided_photon::minkowski::{
    boost_axial, decompose_guided, minkowski_dot, phase_split_check, FourVector,
};
use guided_photon::modes::{
    dispersion_omega, energy_from_velocity, group_velocity, phase_velocity,
};
use guided_photon::propagate::{guided_hamiltonian_symbol, physical_branch_projector};
use guided_photon::spinor::{
    self, angular_momentum_closure_residual, beta, hermitian_eigen_sorted, max_abs, omega_symbol,
    spin, square_identity_residual, SpinorMatrix,
};
use guided_photon::{fields, modes};
use nalgebra::{Complex, Vector3};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// One completed check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

fn random_four_vector(rng: &mut ChaCha8Rng) -> FourVector {
    FourVector::new(
        rng.gen_range(-10.0..10.0),
        rng.gen_range(-10.0..10.0),
        rng.gen_range(-10.0..10.0),
        rng.gen_range(-10.0..10.0),
    )
}

/// Runs the full battery with `trials` random draws per randomized
/// check. Exact matrix identities carry tolerance 0.
pub fn identity_suite(seed: u64, trials: u32) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = trials as usize;
    let mut checks = Vec::new();

    // exact matrix algebra (entries are 0, +-1, +-i: products are exact)
    checks.push(Check {
        name: "beta0_involution",
        residual: max_abs(&(beta(0) * beta(0) - SpinorMatrix::identity())),
        tolerance: 0.0,
    });
    let anti = (1..=3)
        .map(|j| max_abs(&(beta(0) * beta(j) + beta(j) * beta(0))))
        .fold(0.0f64, f64::max);
    checks.push(Check {
        name: "beta_anticommutation",
        residual: anti,
        tolerance: 0.0,
    });
    let casimir = spin(1) * spin(1) + spin(2) * spin(2) + spin(3) * spin(3)
        - SpinorMatrix::identity() * Complex::new(2.0, 0.0);
    checks.push(Check {
        name: "spin_casimir",
        residual: max_abs(&casimir),
        tolerance: 0.0,
    });
    checks.push(Check {
        name: "beta_spin_closure",
        residual: angular_momentum_closure_residual(),
        tolerance: 1e-14,
    });

    // randomized operator-square identity
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let k = random_four_vector(&mut rng);
        let scale = 1.0 + k.euclid_norm_sq() * k.euclid_norm_sq();
        worst = worst.max(square_identity_residual(k) / scale);
    }
    checks.push(Check {
        name: "square_identity",
        residual: worst,
        tolerance: 1e-12,
    });

    // light-like decomposition invariants
    let mut worst = 0.0f64;
    let mut worst_phase = 0.0f64;
    for _ in 0..trials {
        let wc = rng.gen_range(0.05..10.0);
        let k3 = rng.gen_range(0.0..10.0);
        let d = decompose_guided(wc, k3).unwrap();
        let scale = d.k.euclid_norm_sq().max(1.0);
        worst = worst.max(minkowski_dot(d.k, d.k).abs() / scale);
        worst = worst.max(minkowski_dot(d.p_l, d.p_t).abs() / scale);
        worst = worst.max((minkowski_dot(d.eta, d.eta) + 1.0).abs());
        worst = worst.max((minkowski_dot(d.p_l, d.p_l) - d.mass * d.mass).abs() / scale);
        let x = random_four_vector(&mut rng);
        let xscale = (d.k.euclid_norm_sq() * x.euclid_norm_sq()).sqrt().max(1.0);
        worst_phase = worst_phase.max(phase_split_check(&d, x) / xscale);
    }
    checks.push(Check {
        name: "decomposition_invariants",
        residual: worst,
        tolerance: 1e-12,
    });
    checks.push(Check {
        name: "phase_split",
        residual: worst_phase,
        tolerance: 1e-12,
    });

    // kinematics closed forms
    let mut worst_product = 0.0f64;
    let mut worst_round_trip = 0.0f64;
    let mut worst_boost = 0.0f64;
    for _ in 0..trials {
        let m = rng.gen_range(0.05..8.0);
        let k3 = rng.gen_range(0.0..8.0);
        let w = dispersion_omega(m, k3);
        if w > m {
            let prod = group_velocity(w, m).unwrap() * phase_velocity(w, m).unwrap();
            worst_product = worst_product.max((prod - 1.0).abs());
        }
        let vg = group_velocity(w, m).unwrap();
        let back = energy_from_velocity(m, vg).unwrap();
        worst_round_trip = worst_round_trip.max((back - w).abs() / w);

        let v = rng.gen_range(-0.97..0.97);
        let d = decompose_guided(m, k3).unwrap();
        let boosted = boost_axial(d.p_l, v).unwrap();
        let m2 = boosted.t * boosted.t - boosted.x3 * boosted.x3;
        worst_boost = worst_boost.max((m2 - m * m).abs() / (m * m).max(1.0));
    }
    checks.push(Check {
        name: "velocity_product",
        residual: worst_product,
        tolerance: 1e-14,
    });
    checks.push(Check {
        name: "kinematics_round_trip",
        residual: worst_round_trip,
        tolerance: 1e-12,
    });
    checks.push(Check {
        name: "boost_mass_invariance",
        residual: worst_boost,
        tolerance: 1e-10,
    });

    // axial symbol spectrum and transversality of its physical branches
    let mut worst_shell = 0.0f64;
    let mut worst_transverse = 0.0f64;
    let spectral_trials = trials.min(50);
    for _ in 0..spectral_trials {
        let k: f64 = rng.gen_range(-10.0..10.0);
        let wc: f64 = rng.gen_range(0.1..10.0);
        let w = (k * k + wc * wc).sqrt();
        let h = guided_hamiltonian_symbol(k, wc);
        let (vals, vecs) = hermitian_eigen_sorted(&h);
        for target in [-w, w] {
            let nearest = vals
                .iter()
                .map(|v| (v - target).abs())
                .fold(f64::INFINITY, f64::min);
            worst_shell = worst_shell.max(nearest / w);
        }
        let constraint = omega_symbol(Vector3::new(wc, 0.0, k));
        for (i, &lambda) in vals.iter().enumerate() {
            if (lambda.abs() - w).abs() <= 1e-9 * w.max(1.0) {
                let v = vecs.column(i);
                worst_transverse = worst_transverse.max((constraint * v).norm() / (w * w));
            }
        }
        // the projector must reproduce those brances
        let p = physical_branch_projector(k, wc).unwrap();
        worst_transverse = worst_transverse.max(max_abs(&(p * p - p)));
    }
    checks.push(Check {
        name: "axial_mass_shell",
        residual: worst_shell,
        tolerance: 1e-12,
    });
    checks.push(Check {
        name: "branch_transversality",
        residual: worst_transverse,
        tolerance: 1e-12,
    });

    // zigzag reconstruction of the TE(1,0) field
    let guide = modes::WaveguideSpec::new(1.0, 0.5).unwrap();
    let mode = modes::ModeIndex::te(1, 0).unwrap();
    let (plus, minus) = fields::zigzag_decompose(&guide, &mode, 2.0, 1.0).unwrap();
    let mut worst_zigzag = 0.0f64;
    for _ in 0..trials.min(200) {
        let t = rng.gen_range(-2.0..2.0);
        let x = Vector3::new(
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..0.5),
            rng.gen_range(-3.0..3.0),
        );
        let direct = fields::te_mode_field(&guide, &mode, 2.0, t, x)
            .unwrap()
            .spinor();
        let summed = plus.field_at(t, x).spinor() + minus.field_at(t, x).spinor();
        worst_zigzag = worst_zigzag.max((direct - summed).norm());
    }
    checks.push(Check {
        name: "zigzag_reconstruction",
        residual: worst_zigzag,
        tolerance: 1e-12,
    });

    // slash annihilation of each zigzag branch
    let mut worst_slash = 0.0f64;
    for c in [&plus, &minus] {
        let k = c.wavevector;
        let res = (spinor::slash(FourVector::new(c.omega(), k[0], k[1], k[2]))
            * c.polarization_spinor())
        .norm();
        worst_slash = worst_slash.max(res / c.omega());
    }
    checks.push(Check {
        name: "zigzag_slash_annihilation",
        residual: worst_slash,
        tolerance: 1e-12,
    });

    // second-order convergence of the discrete mode-field residuals
    let r16: f64 = fields::te_mode_dirac_residual(&guide, &mode, 2.0, 0.1, 16).unwrap();
    let r32 = fields::te_mode_dirac_residual(&guide, &mode, 2.0, 0.1, 32).unwrap();
    let order = (r16 / r32).log2();
    checks.push(Check {
        name: "mode_field_convergence_order",
        residual: (order - 2.0).abs(),
        tolerance: 0.2,
    });

    checks
}
