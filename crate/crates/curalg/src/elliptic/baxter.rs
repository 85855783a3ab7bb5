//! Eight-vertex R-matrix, its symmetric-form rewrite under a Landen
//! step, and the checks tying its small-parameter expansion to the
//! classical kernels.
//!
//! The eight-vertex weights live on the modulus `ktilde`; the symmetric
//! form lives on the Landen-descended modulus k with k' = (1 - kt)/(1 + kt).
//! Matching the two takes the substitutions zeta = hbar (1 + kt) / 2 and
//! u = i (1 + kt) v, and only the projective entry ratios are compared
//! because the overall scalar factor drops out of both pictures.

use super::EllipticAlgebra;
use crate::error::{Error, Result};
use crate::mat::{sigma, CMat};
use crate::specfun::jacobi::sncndn_c;
use crate::specfun::theta::ThetaLattice;
use crate::{c64, C64};
#[allow(unused_imports)]
use num_traits::Float;

/// Eight-vertex weight matrix at spectral parameter `v`, quantum step
/// `hbar`, modulus `ktilde`, in the basis ordering (++, +-, -+, --).
pub fn eight_vertex(v: f64, hbar: f64, ktilde: f64) -> Result<CMat> {
    if !(0.0 < ktilde && ktilde < 1.0) {
        return Err(Error::InvalidModulus);
    }
    let sn = |z: C64| -> Result<C64> { Ok(sncndn_c(z, ktilde)?.0) };
    let a = sn(c64(hbar, v))?;
    let b = sn(c64(0.0, v))?;
    let c = sn(c64(hbar, 0.0))?;
    let d = ktilde * a * b * c;
    let z = c64(0.0, 0.0);
    Ok(CMat::from_rows(
        4,
        &[
            a, z, z, d, //
            z, b, c, z, //
            z, c, b, z, //
            d, z, z, a,
        ],
    ))
}

/// Lattice of the Landen-descended modulus k, k' = (1 - kt)/(1 + kt).
pub fn landen_lattice(ktilde: f64) -> Result<ThetaLattice> {
    if !(0.0 < ktilde && ktilde < 1.0) {
        return Err(Error::InvalidModulus);
    }
    let kprime = (1.0 - ktilde) / (1.0 + ktilde);
    ThetaLattice::from_modulus((1.0 - kprime * kprime).sqrt())
}

/// Pauli weights of the symmetric form at spectral point `u` and shift
/// `zeta`: W1 a plain ratio of sn values, W2 and W3 the same ratio
/// dressed with dn and cn factors.
pub fn sklyanin_weights(lat: &ThetaLattice, u: C64, zeta: C64) -> Result<[C64; 3]> {
    let snz = lat.sn(zeta)?;
    let cnz = lat.cn(zeta)?;
    let dnz = lat.dn(zeta)?;
    let snu = lat.sn(u + zeta)?;
    let cnu = lat.cn(u + zeta)?;
    let dnu = lat.dn(u + zeta)?;
    if snu.norm() < 1e-12 || cnz.norm() < 1e-12 || dnz.norm() < 1e-12 {
        return Err(Error::Pole {
            what: "symmetric-form weight denominator",
        });
    }
    Ok([
        snz / snu,
        snz * dnu / (snu * dnz),
        snz * cnu / (snu * cnz),
    ])
}

/// Symmetric form: identity plus the Pauli-diagonal combination of the
/// three weights.
pub fn sklyanin_matrix(lat: &ThetaLattice, u: C64, zeta: C64) -> Result<CMat> {
    let w = sklyanin_weights(lat, u, zeta)?;
    let mut s = CMat::identity(4);
    for a in 1..=3usize {
        let pauli = sigma(a);
        s = s.add(&pauli.kron(&pauli).scale(w[a - 1]));
    }
    Ok(s)
}

/// Worst projective mismatch between the eight-vertex matrix at
/// (v, hbar, ktilde) and the symmetric form on the Landen lattice at
/// the matched (u, zeta). Entries are compared as ratios to the (0,0)
/// entry of each matrix.
pub fn baxter_to_sklyanin(v: f64, hbar: f64, ktilde: f64) -> Result<f64> {
    let r = eight_vertex(v, hbar, ktilde)?;
    let lat = landen_lattice(ktilde)?;
    let zeta = c64(hbar * (1.0 + ktilde) / 2.0, 0.0);
    let u = c64(0.0, (1.0 + ktilde) * v);
    let s = sklyanin_matrix(&lat, u, zeta)?;
    let (r0, s0) = (r.get(0, 0), s.get(0, 0));
    if r0.norm() < 1e-12 || s0.norm() < 1e-12 {
        return Err(Error::Domain {
            what: "projective reference entry vanishes",
        });
    }
    let mut worst = 0.0f64;
    for row in 0..4 {
        for col in 0..4 {
            let diff = (r.get(row, col) / r0 - s.get(row, col) / s0).norm();
            if diff > worst {
                worst = diff;
            }
        }
    }
    Ok(worst)
}

/// First-order defect |(S - id)/zeta - r| at each of the given shifts,
/// where r is the classical kernel matrix of the algebra at `u`.
pub fn classical_limit_residuals(
    alg: &EllipticAlgebra,
    u: C64,
    zetas: &[f64],
) -> Result<alloc::vec::Vec<f64>> {
    let r = alg.r_matrix(u)?;
    let mut out = alloc::vec::Vec::new();
    for &z in zetas {
        let zeta = c64(z, 0.0);
        let s = sklyanin_matrix(&alg.lat, u, zeta)?;
        let lin = s.sub(&CMat::identity(4)).scale(1.0 / zeta);
        out.push(lin.sub(&r).norm_max());
    }
    Ok(out)
}

/// Second-order defect of the lattice-shift law: moving tau by
/// zeta * charge / K inside the symmetric form matches zeta^2 times the
/// tau-derivative of the classical kernel matrix scaled by charge / K.
pub fn tau_shift_residual(alg: &EllipticAlgebra, u: C64, zeta: f64, charge: f64) -> Result<f64> {
    let z = c64(zeta, 0.0);
    let shifted = ThetaLattice::from_tau(alg.lat.tau + z * charge / alg.lat.big_k)?;
    let s_shift = sklyanin_matrix(&shifted, u, z)?;
    let s_base = sklyanin_matrix(&alg.lat, u, z)?;
    let second = s_shift.sub(&s_base).scale(1.0 / (z * z));
    let rdot = alg.r_matrix_dtau(u)?.scale(c64(charge, 0.0) / alg.lat.big_k);
    Ok(second.sub(&rdot).norm_max())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::I;

    #[test]
    fn eight_vertex_degenerates_at_zero_arguments() {
        // v = 0 kills the b weight; hbar -> 0 collapses toward a scalar
        let r = eight_vertex(0.0, 0.4, 0.3).unwrap();
        assert!(r.get(1, 1).norm() < 1e-15);
        let r = eight_vertex(0.2, 1e-8, 0.3).unwrap();
        assert!((r.get(0, 0) - r.get(1, 1)).norm() < 1e-7);
        assert!(r.get(1, 2).norm() < 1e-7);
        assert!(r.get(0, 3).norm() < 1e-9);
    }

    #[test]
    fn symmetric_form_weights_are_unity_at_the_origin() {
        let lat = landen_lattice(0.25).unwrap();
        let w = sklyanin_weights(&lat, c64(0.0, 0.0), c64(0.3, 0.0)).unwrap();
        for a in 0..3 {
            assert!((w[a] - 1.0).norm() < 1e-12, "weight {a}");
        }
    }

    #[test]
    fn projective_match_between_the_two_forms() {
        for (v, hbar, ktilde) in [(0.3, 0.2, 0.4), (0.17, 0.35, 0.25)] {
            let worst = baxter_to_sklyanin(v, hbar, ktilde).unwrap();
            assert!(worst < 1e-8, "({v}, {hbar}, {ktilde}): {worst}");
        }
    }

    #[test]
    fn first_order_term_is_the_classical_kernel_matrix() {
        let alg = EllipticAlgebra::new(0.6).unwrap();
        let kp = alg.half_period().im;
        let u = c64(0.5, -0.2 * kp);
        let res = classical_limit_residuals(&alg, u, &[2e-2, 1e-2, 5e-3]).unwrap();
        for pair in res.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!(
                (1.7..2.3).contains(&ratio),
                "halving ratio {ratio}: {res:?}"
            );
        }
    }

    // the leftover first-order error scales like zeta * k^2, so the
    // modulus is kept moderate to leave headroom under the bound
    #[test]
    fn lattice_shift_matches_the_kernel_tau_derivative() {
        let alg = EllipticAlgebra::new(0.1).unwrap();
        let u = c64(0.4, 0.0) + 0.1 * I;
        let res = tau_shift_residual(&alg, u, 5e-3, 1.0).unwrap();
        assert!(res < 1e-4, "charged residual {res}");
        let flat = tau_shift_residual(&alg, u, 5e-3, 0.0).unwrap();
        assert!(flat < 1e-14, "zero charge must shift nothing: {flat}");
    }
}
