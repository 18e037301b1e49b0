//! The 6-component electromagnetic spinor and its matrix algebra.
//!
//! The spinor packs the fields as `psi = (E, iB)^T / sqrt(2)`, so that
//! the two curl equations become a single first-order wave equation
//! `i d(psi)/dt = H psi` with `H = -i beta0 (beta . grad)` and the
//! divergence conditions become `Omega psi = 0`. Everything here is a
//! plain dense 6x6 complex matrix; at this size there is nothing to be
//! gained from sparsity and the operator identities stay one
//! matrix-multiply away from their tests.
//!
//! Conventions: spinor blocks are ordered (E, iB); plane waves carry
//! the phase `exp[-i(omega t - k.x)]`; `beta_upper(0) = beta(0)` and
//! `beta_upper(j) = -beta(j)`.

use crate::minkowski::FourVector;
use nalgebra::{Matrix3, Matrix6, Vector3, Vector6};
use num_complex::Complex;

pub type C64 = Complex<f64>;
/// Dense 6x6 complex matrix acting on photon spinors.
pub type SpinorMatrix = Matrix6<C64>;
/// A single 6-component spinor value, ordered (E1, E2, E3, iB1, iB2, iB3)/sqrt(2).
pub type PhotonSpinor = Vector6<C64>;

const I: C64 = Complex::new(0.0, 1.0);

fn c(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

/// Levi-Civita symbol with indices in 1..=3.
fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// Spin-1 generator `(tau_i)_{jk} = -i eps_{ijk}`, `i` in 1..=3.
pub fn tau(i: usize) -> Matrix3<C64> {
    assert!((1..=3).contains(&i), "tau axis index out of range: {i}");
    Matrix3::from_fn(|j, k| -I * epsilon(i, j + 1, k + 1))
}

fn block6(
    aa: &Matrix3<C64>,
    ab: &Matrix3<C64>,
    ba: &Matrix3<C64>,
    bb: &Matrix3<C64>,
) -> SpinorMatrix {
    Matrix6::from_fn(|r, col| match (r < 3, col < 3) {
        (true, true) => aa[(r, col)],
        (true, false) => ab[(r, col - 3)],
        (false, true) => ba[(r - 3, col)],
        (false, false) => bb[(r - 3, col - 3)],
    })
}

/// Lower-index beta matrices: `beta(0) = diag(I3, -I3)` and
/// `beta(j) = [[0, tau_j], [-tau_j, 0]]` for j = 1..3.
pub fn beta(mu: usize) -> SpinorMatrix {
    assert!(mu <= 3, "beta index out of range: {mu}");
    let z = Matrix3::zeros();
    if mu == 0 {
        block6(&Matrix3::identity(), &z, &z, &(-Matrix3::identity()))
    } else {
        let t = tau(mu);
        block6(&z, &t, &(-t), &z)
    }
}

/// Upper-index betas: `beta_upper(0) = beta(0)`, `beta_upper(j) = -beta(j)`.
pub fn beta_upper(mu: usize) -> SpinorMatrix {
    if mu == 0 {
        beta(0)
    } else {
        -beta(mu)
    }
}

/// Photon spin matrix `S_j = diag(tau_j, tau_j)`.
pub fn spin(j: usize) -> SpinorMatrix {
    assert!((1..=3).contains(&j), "spin axis index out of range: {j}");
    let t = tau(j);
    let z = Matrix3::zeros();
    block6(&t, &z, &z, &t)
}

/// Momentum-space symbol of the divergence-constraint operator: both
/// diagonal blocks are the outer product `k_i k_j`.
///
/// `omega_symbol(k) psi = 0` exactly when `k.E = 0` and `k.B = 0`.
pub fn omega_symbol(k: Vector3<f64>) -> SpinorMatrix {
    let outer = Matrix3::from_fn(|i, j| c(k[i] * k[j]));
    let z = Matrix3::zeros();
    block6(&outer, &z, &z, &outer)
}

/// Momentum-space contraction `beta^mu k_mu = beta0 k0 - sum_j beta_j k_j`
/// for a lower-index four-momentum `(k0, k1, k2, k3)`.
///
/// Annihilates the spinor of any physical plane wave with that
/// four-momentum.
pub fn slash(k: FourVector) -> SpinorMatrix {
    let mut m = beta(0) * c(k.t);
    m -= beta(1) * c(k.x1);
    m -= beta(2) * c(k.x2);
    m -= beta(3) * c(k.x3);
    m
}

/// Largest absolute entry of a matrix.
pub fn max_abs(m: &SpinorMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-norm residual of the square identity
/// `(beta^mu k_mu)(beta_nu k^nu) = (k.k) I + Omega(k_spatial)`.
pub fn square_identity_residual(k: FourVector) -> f64 {
    let s = slash(k);
    let kk = crate::minkowski::minkowski_dot(k, k);
    let rhs = SpinorMatrix::identity() * c(kk) + omega_symbol(Vector3::new(k.x1, k.x2, k.x3));
    max_abs(&(s * s - rhs))
}

/// Max residual over the finite matrix identities behind angular-momentum
/// conservation: `[beta_m, S_j] = i eps_{mjl} beta_l` for all m, j, and
/// `[beta0, S_j] = 0`.
pub fn angular_momentum_closure_residual() -> f64 {
    let mut worst: f64 = 0.0;
    for m in 1..=3 {
        for j in 1..=3 {
            let comm = beta(m) * spin(j) - spin(j) * beta(m);
            let mut expected = SpinorMatrix::zeros();
            for l in 1..=3 {
                expected += beta(l) * (I * epsilon(m, j, l));
            }
            worst = worst.max(max_abs(&(comm - expected)));
        }
    }
    for j in 1..=3 {
        let comm = beta(0) * spin(j) - spin(j) * beta(0);
        worst = worst.max(max_abs(&comm));
    }
    worst
}

/// Packs real field vectors into the spinor `(E, iB)/sqrt(2)`.
pub fn assemble_spinor(e: Vector3<f64>, b: Vector3<f64>) -> PhotonSpinor {
    assemble_spinor_complex(e.map(c), b.map(c))
}

/// Packs complex (analytic-signal) field vectors into `(E, iB)/sqrt(2)`.
pub fn assemble_spinor_complex(e: Vector3<C64>, b: Vector3<C64>) -> PhotonSpinor {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Vector6::new(
        e[0] * s,
        e[1] * s,
        e[2] * s,
        I * b[0] * s,
        I * b[1] * s,
        I * b[2] * s,
    )
}

/// Plane-wave symbol of the free Hamiltonian `H = -i beta0 (beta . grad)`
/// on `exp(ik.x)`: the Hermitian matrix `beta0 (beta . k)`.
///
/// Spectrum: `+|k|` and `-|k|` twice each (the two transverse
/// polarizations) and 0 twice (the longitudinal constraint modes).
pub fn free_hamiltonian_symbol(k: Vector3<f64>) -> SpinorMatrix {
    beta(0) * (beta(1) * c(k[0]) + beta(2) * c(k[1]) + beta(3) * c(k[2]))
}

/// Hermiticity check to tolerance `tol` on the max-norm.
pub fn is_hermitian(m: &SpinorMatrix, tol: f64) -> bool {
    max_abs(&(m - m.adjoint())) <= tol
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
/// ascending (ties keep the solver's order); returns `(eigenvalues,
/// column eigenvectors)` in matching order.
pub fn hermitian_eigen_sorted(m: &SpinorMatrix) -> (Vec<f64>, SpinorMatrix) {
    let eig = nalgebra::SymmetricEigen::new(*m);
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = SpinorMatrix::zeros();
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tau3_entries() {
        let t3 = tau(3);
        let expected = Matrix3::new(
            c(0.0),
            -I,
            c(0.0),
            I,
            c(0.0),
            c(0.0),
            c(0.0),
            c(0.0),
            c(0.0),
        );
        assert_eq!(t3, expected);
    }

    #[test]
    fn tau1_squared_projector() {
        let sq = tau(1) * tau(1);
        let expected = Matrix3::from_diagonal(&Vector3::new(c(0.0), c(1.0), c(1.0)));
        assert_eq!(sq, expected);
    }

    #[test]
    fn tau_su2_closure() {
        let comm = tau(1) * tau(2) - tau(2) * tau(1);
        assert_eq!(comm, tau(3) * I);
    }

    #[test]
    #[should_panic]
    fn tau_index_out_of_range() {
        tau(0);
    }

    #[test]
    fn beta0_is_block_diagonal_sign() {
        let b0 = beta(0);
        for i in 0..6 {
            for j in 0..6 {
                let expected = if i != j {
                    c(0.0)
                } else if i < 3 {
                    c(1.0)
                } else {
                    c(-1.0)
                };
                assert_eq!(b0[(i, j)], expected);
            }
        }
    }

    #[test]
    fn beta0_involution_exact() {
        assert_eq!(beta(0) * beta(0), SpinorMatrix::identity());
    }

    #[test]
    fn beta_anticommutation_exact() {
        for j in 1..=3 {
            let anti = beta(0) * beta(j) + beta(j) * beta(0);
            assert_eq!(max_abs(&anti), 0.0);
        }
    }

    #[test]
    fn beta_upper_signs() {
        assert_eq!(beta_upper(0), beta(0));
        for j in 1..=3 {
            assert_eq!(beta_upper(j), -beta(j));
        }
    }

    #[test]
    fn beta_hermiticity() {
        assert!(is_hermitian(&beta(0), 0.0));
        for j in 1..=3 {
            // spatial betas are anti-Hermitian
            assert_eq!(max_abs(&(beta(j) + beta(j).adjoint())), 0.0);
        }
    }

    #[test]
    fn spin_casimir_exact() {
        let total = spin(1) * spin(1) + spin(2) * spin(2) + spin(3) * spin(3);
        assert_eq!(total, SpinorMatrix::identity() * c(2.0));
    }

    #[test]
    fn spin_commutator() {
        let comm = spin(1) * spin(2) - spin(2) * spin(1);
        assert_eq!(comm, spin(3) * I);
    }

    #[test]
    fn spin3_eigenvalues() {
        let (vals, _) = hermitian_eigen_sorted(&spin(3));
        let expected = [-1.0, -1.0, 0.0, 0.0, 1.0, 1.0];
        for (v, e) in vals.iter().zip(expected) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-14);
        }
        for j in 1..=3 {
            assert!(is_hermitian(&spin(j), 0.0));
        }
    }

    #[test]
    fn omega_symbol_zero_and_axis() {
        assert_eq!(max_abs(&omega_symbol(Vector3::zeros())), 0.0);
        let m = omega_symbol(Vector3::new(0.0, 0.0, 2.0));
        for i in 0..6 {
            for j in 0..6 {
                let expected = if (i, j) == (2, 2) || (i, j) == (5, 5) {
                    c(4.0)
                } else {
                    c(0.0)
                };
                assert_eq!(m[(i, j)], expected);
            }
        }
    }

    #[test]
    fn omega_annihilates_iff_transverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let k = Vector3::new(
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            );
            if k.norm() < 1e-3 {
                continue;
            }
            let raw = Vector3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let e_t = raw - k * (raw.dot(&k) / k.norm_squared());
            let b_t = k.cross(&e_t) / k.norm();
            let psi_t = assemble_spinor(e_t, b_t);
            assert!((omega_symbol(k) * psi_t).norm() <= 1e-12 * k.norm_squared());

            // longitudinal contamination must be detected
            let psi_l = assemble_spinor(e_t + k * 0.5, b_t);
            assert!((omega_symbol(k) * psi_l).norm() > 1e-3);
        }
    }

    #[test]
    fn slash_single_components() {
        assert_eq!(slash(FourVector::new(1.0, 0.0, 0.0, 0.0)), beta(0));
        assert_eq!(slash(FourVector::new(0.0, 0.0, 0.0, 1.0)), -beta(3));
    }

    #[test]
    fn slash_annihilates_maxwell_plane_wave() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let k = Vector3::new(
                rng.gen_range(-4.0..4.0),
                rng.gen_range(-4.0..4.0),
                rng.gen_range(-4.0..4.0),
            );
            if k.norm() < 1e-2 {
                continue;
            }
            let omega = k.norm();
            let raw = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.3);
            let e = raw - k * (raw.dot(&k) / k.norm_squared());
            let b = k.cross(&e) / omega;
            let psi = assemble_spinor(e, b);
            let res = (slash(FourVector::new(omega, k[0], k[1], k[2])) * psi).norm();
            assert!(res <= 1e-12 * omega.max(1.0), "slash residual {res}");
        }
    }

    #[test]
    fn square_identity_axis_case() {
        // (omega, 0, 0, k3): product should be diag(w2-k2, w2-k2, w2, ...)
        let k = FourVector::new(2.0, 0.0, 0.0, 1.5);
        assert_eq!(square_identity_residual(k), 0.0);
        let s = slash(k);
        let prod = s * s;
        let d = 2.0f64 * 2.0 - 1.5 * 1.5;
        for i in 0..6 {
            let expected = if i == 2 || i == 5 { c(4.0) } else { c(d) };
            assert_eq!(prod[(i, i)], expected);
        }
    }

    #[test]
    fn square_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let k = FourVector::new(
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
            );
            let scale = 1.0 + k.euclid_norm_sq() * k.euclid_norm_sq();
            assert!(square_identity_residual(k) <= 1e-12 * scale);
        }
    }

    #[test]
    fn closure_residual_exact() {
        // [beta1, S1] = 0 and [beta1, S2] = i beta3 fall out of the sweep
        assert_eq!(angular_momentum_closure_residual(), 0.0);
        let comm = beta(1) * spin(2) - spin(2) * beta(1);
        assert_eq!(comm, beta(3) * I);
    }

    #[test]
    fn assemble_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = assemble_spinor(Vector3::new(1.0, 0.0, 0.0), Vector3::zeros());
        assert_eq!(psi[0], c(s));
        assert_eq!(psi[3], c(0.0));

        let psi = assemble_spinor(Vector3::zeros(), Vector3::new(0.0, 1.0, 0.0));
        assert_eq!(psi[4], I * s);

        let psi = assemble_spinor(Vector3::new(1.0, 1.0, 0.0), Vector3::new(0.0, 0.0, 1.0));
        assert_abs_diff_eq!(psi.norm_squared(), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn free_hamiltonian_spectrum() {
        assert_eq!(max_abs(&free_hamiltonian_symbol(Vector3::zeros())), 0.0);
        let (vals, _) = hermitian_eigen_sorted(&free_hamiltonian_symbol(Vector3::new(
            0.0, 0.0, 1.0,
        )));
        let expected = [-1.0, -1.0, 0.0, 0.0, 1.0, 1.0];
        for (v, e) in vals.iter().zip(expected) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-12);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..20 {
            let k = Vector3::new(
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            );
            let h = free_hamiltonian_symbol(k);
            assert!(is_hermitian(&h, 1e-14));
            let (vals, _) = hermitian_eigen_sorted(&h);
            let w = k.norm();
            let expected = [-w, -w, 0.0, 0.0, w, w];
            for (v, e) in vals.iter().zip(expected) {
                assert_abs_diff_eq!(*v, e, epsilon = 1e-12 * w.max(1.0));
            }
        }
    }
}
