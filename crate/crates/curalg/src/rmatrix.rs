//! Trigonometric R-matrix on C^2 (x) C^2 and its semiclassical layer.
//!
//! `rbar` is the bare six-vertex-type matrix, `varrho` the scalar factor
//! that normalizes it (a gamma-function product), and `r0` the classical
//! r-matrix appearing at first order in the quantization step `hbar`.
//! The second-order data (`r1_diff`, `varrho0`) feed the matrix form of
//! the current bracket, checked by [`ll_structure_residual`].

use crate::element::{Branch, Element, ElementMat};
use crate::error::{Error, Result};
use crate::mat::CMat;
use crate::specfun::{gamma, ln_gamma};
use crate::trig::{ef_cocycle_shape, hh_cocycle_shape, TrigAlgebra, TrigKind};
use crate::{c64, C64};
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

fn sinh_checked(x: C64) -> Result<C64> {
    let s = x.sinh();
    if s.norm() < 1e-12 {
        return Err(Error::Pole {
            what: "sinh vanishes at the requested point",
        });
    }
    Ok(s)
}

/// Bare R-matrix: corners 1, middle block [[b, c], [c, b]] with
/// b = sinh(pi eta u) / sinh(pi eta (u - i hbar)) and
/// c = -sinh(i pi eta hbar) / sinh(pi eta (u - i hbar)).
pub fn rbar(u: C64, eta: f64, hbar: f64) -> Result<CMat> {
    let pe = PI * eta;
    let den = sinh_checked(pe * (u - c64(0.0, hbar)))?;
    let b = (pe * u).sinh() / den;
    let c = -(c64(0.0, pe * hbar)).sinh() / den;
    let one = c64(1.0, 0.0);
    let o = c64(0.0, 0.0);
    Ok(CMat::from_rows(
        4,
        &[one, o, o, o, o, b, c, o, o, c, b, o, o, o, o, one],
    ))
}

/// Scalar prefactor coth(pi u / 2 hbar) applied on top of the normalized
/// matrix. Kept out of the expansion checks: it has an essential hbar -> 0
/// limit rather than a power series.
pub fn tau_plus(u: C64, hbar: f64) -> Result<C64> {
    let x = PI * u / (2.0 * hbar);
    let s = sinh_checked(x)?;
    Ok(x.cosh() / s)
}

fn prefactor(u: C64, eta: f64, hbar: f64) -> Result<C64> {
    let he = c64(hbar * eta, 0.0);
    let iu = c64(0.0, eta) * u;
    Ok(gamma(he)? * gamma(c64(1.0, 0.0) + iu)? / gamma(he + iu)?)
}

// One factor of the normalization product, as a ratio of four gammas.
// Assembled in log space so large arguments cannot overflow.
fn rp_ln(u: C64, eta: f64, hbar: f64, p: usize) -> Result<C64> {
    let z = 2.0 * (p as f64) * hbar * eta;
    let a = c64(0.0, eta) * u;
    Ok(ln_gamma(c64(z, 0.0) + a)? + ln_gamma(c64(1.0 + z, 0.0) + a)?
        - ln_gamma(c64(z + hbar * eta, 0.0) + a)?
        - ln_gamma(c64(1.0 + z - hbar * eta, 0.0) + a)?)
}

#[cfg(test)]
fn rp(u: C64, eta: f64, hbar: f64, p: usize) -> Result<C64> {
    Ok(rp_ln(u, eta, hbar, p)?.exp())
}

fn product_factor(u: C64, eta: f64, hbar: f64, p: usize) -> Result<C64> {
    let ih = c64(0.0, hbar);
    let ln = rp_ln(u, eta, hbar, p)? + rp_ln(ih - u, eta, hbar, p)?
        - rp_ln(c64(0.0, 0.0), eta, hbar, p)?
        - rp_ln(ih, eta, hbar, p)?;
    Ok(ln.exp())
}

// Sum f(p) for p = 1..=pmax and extrapolate the tail from the partial sums
// at pmax/4, pmax/2 and pmax, assuming a 1/P^2 + 1/P^3 remainder.
fn tail_extrapolated_sum(
    pmax: usize,
    mut f: impl FnMut(usize) -> Result<C64>,
) -> Result<C64> {
    if pmax < 8 || pmax % 4 != 0 {
        return Err(Error::Domain {
            what: "product truncation must be a multiple of 4, at least 8",
        });
    }
    let mut s = c64(0.0, 0.0);
    let mut quarter = s;
    let mut half = s;
    for p in 1..=pmax {
        s += f(p)?;
        if p == pmax / 4 {
            quarter = s;
        } else if p == pmax / 2 {
            half = s;
        }
    }
    if (s - half).norm() > 0.5 {
        return Err(Error::NonConvergent {
            what: "normalization product tail is not small at this truncation",
        });
    }
    let r1 = s + (s - half) / 3.0;
    let r1_prev = half + (half - quarter) / 3.0;
    Ok(r1 + (r1 - r1_prev) / 7.0)
}

/// Normalization scalar: gamma prefactor times the infinite product,
/// truncated at `pmax` with tail extrapolation from partial sums.
pub fn varrho(u: C64, eta: f64, hbar: f64, pmax: usize) -> Result<C64> {
    let s = tail_extrapolated_sum(pmax, |p| Ok(product_factor(u, eta, hbar, p)?.ln()))?;
    Ok(prefactor(u, eta, hbar)? * s.exp())
}

/// Ratio varrho(u, eta') / varrho(u, eta) with eta' = eta / (1 + eta c hbar),
/// accumulated factor by factor so the common tail cancels before rounding.
/// The truncation is extended beyond `pmax` when the grid 2 p hbar eta would
/// otherwise stop before the power-law tail regime sets in.
pub fn varrho_ratio(u: C64, eta: f64, hbar: f64, c: f64, pmax: usize) -> Result<C64> {
    let eta_new = eta / (1.0 + eta * c * hbar);
    if eta_new == eta {
        return Ok(c64(1.0, 0.0));
    }
    let reach = (8.0 / (hbar * eta)).ceil() as usize;
    let p_eff = pmax.max(reach.next_multiple_of(4));
    if p_eff > 1_000_000 {
        return Err(Error::NonConvergent {
            what: "normalization ratio needs an impractically long product",
        });
    }
    let s = tail_extrapolated_sum(p_eff, |p| {
        let fp_new = product_factor(u, eta_new, hbar, p)?;
        let fp_old = product_factor(u, eta, hbar, p)?;
        Ok((fp_new / fp_old).ln())
    })?;
    let pref = prefactor(u, eta_new, hbar)? / prefactor(u, eta, hbar)?;
    Ok(pref * s.exp())
}

/// Fully normalized R-matrix varrho * rbar.
pub fn r_full(u: C64, eta: f64, hbar: f64, pmax: usize) -> Result<CMat> {
    Ok(rbar(u, eta, hbar)?.scale(varrho(u, eta, hbar, pmax)?))
}

/// Classical r-matrix: diagonal (coth, 0, 0, coth) and middle off-diagonal
/// 1/sinh entries, all times -i pi eta, argument pi eta u.
pub fn r0(u: C64, eta: f64) -> Result<CMat> {
    let x = PI * eta * u;
    let sh = sinh_checked(x)?;
    let pref = c64(0.0, -PI * eta);
    let d = pref * x.cosh() / sh;
    let s = pref / sh;
    let o = c64(0.0, 0.0);
    Ok(CMat::from_rows(
        4,
        &[d, o, o, o, o, o, s, o, o, s, o, o, o, o, o, d],
    ))
}

/// Difference of the second-order coefficients of rbar at the two kernel
/// scales tied by the central charge. Middle block only; regular at u = 0.
pub fn r1_diff(u: C64, eta: f64) -> Result<CMat> {
    let x = PI * eta * u;
    if x.sinh().norm() < 1e-12 && x.norm() > 1e-3 {
        return Err(Error::Pole {
            what: "sinh vanishes at the requested point",
        });
    }
    let pref = c64(0.0, PI * eta * eta);
    let a = -pref * hh_cocycle_shape(x);
    let b = pref * ef_cocycle_shape(x);
    let o = c64(0.0, 0.0);
    Ok(CMat::from_rows(
        4,
        &[o, o, o, o, o, a, b, o, o, b, a, o, o, o, o, o],
    ))
}

/// Second-order coefficient of the normalization ratio; equals a quarter of
/// the trace of [`r1_diff`].
pub fn varrho0(u: C64, eta: f64) -> Result<C64> {
    let x = PI * eta * u;
    if x.sinh().norm() < 1e-12 && x.norm() > 1e-3 {
        return Err(Error::Pole {
            what: "sinh vanishes at the requested point",
        });
    }
    Ok(-c64(0.0, PI * eta * eta / 2.0) * hh_cocycle_shape(x))
}

/// Scalar making r0 traceless: kappa = (i pi eta / 2) coth(pi eta u).
pub fn kappa(u: C64, eta: f64) -> Result<C64> {
    let x = PI * eta * u;
    let sh = sinh_checked(x)?;
    Ok(c64(0.0, PI * eta / 2.0) * x.cosh() / sh)
}

/// Returns (kappa, r0 + kappa id); the shifted matrix has zero trace.
pub fn traceless_shift(u: C64, eta: f64) -> Result<(C64, CMat)> {
    let k = kappa(u, eta)?;
    let shifted = r0(u, eta)?.add(&CMat::identity(4).scale(k));
    Ok((k, shifted))
}

/// Classical Yang-Baxter residual of r0 with arguments u - v, u, v on a
/// three-site chain.
pub fn cybe_residual(u: C64, v: C64, eta: f64) -> Result<f64> {
    let r12 = r0(u - v, eta)?.embed_pair(0, 1, 3);
    let r13 = r0(u, eta)?.embed_pair(0, 2, 3);
    let r23 = r0(v, eta)?.embed_pair(1, 2, 3);
    let acc = r12
        .commutator(&r13)
        .add(&r12.commutator(&r23))
        .add(&r13.commutator(&r23));
    Ok(acc.norm_max())
}

/// Residual of the closed form for the second-order data:
/// r1_diff - varrho0 id equals eta^2 d/d eta of the traceless r-matrix.
/// The derivative is taken by central differences with one extrapolation.
pub fn eta_derivative_residual(u: C64, eta: f64, step: f64) -> Result<f64> {
    if step <= 0.0 || step >= eta {
        return Err(Error::Domain {
            what: "derivative step must lie in (0, eta)",
        });
    }
    let diff = |h: f64| -> Result<CMat> {
        let hi = traceless_shift(u, eta + h)?.1;
        let lo = traceless_shift(u, eta - h)?.1;
        Ok(hi.sub(&lo).scale(c64(1.0 / (2.0 * h), 0.0)))
    };
    let d1 = diff(step)?;
    let d2 = diff(step / 2.0)?;
    let deriv = d2
        .scale(c64(4.0 / 3.0, 0.0))
        .sub(&d1.scale(c64(1.0 / 3.0, 0.0)));
    let lhs = r1_diff(u, eta)?.sub(&CMat::identity(4).scale(varrho0(u, eta)?));
    Ok(lhs.sub(&deriv.scale(c64(eta * eta, 0.0))).norm_max())
}

/// Per-step residuals of the semiclassical expansion.
#[derive(Clone, Copy, Debug)]
pub struct ExpansionRow {
    pub hbar: f64,
    /// First order: ||(rbar - 1)/hbar - r0 - i pi eta coth(pi eta u) id||.
    pub res_a: f64,
    /// Second order across the scale change: ||diff/hbar^2 + c r1_diff||.
    pub res_b: f64,
    /// Second order of the normalization ratio: |(ratio-1)/hbar^2 - c varrho0|.
    pub res_c: f64,
}

/// Expansion residuals over an hbar grid, plus Richardson extrapolations of
/// the second-order ones when the grid is a halving triple.
#[derive(Clone, Debug)]
pub struct ExpansionReport {
    pub rows: Vec<ExpansionRow>,
    pub extrap_b: Option<f64>,
    pub extrap_c: Option<f64>,
}

/// Compare rbar and varrho against their expansion coefficients on a grid
/// of hbar values. `c` sets the shifted kernel scale eta' = eta/(1 + eta c hbar).
pub fn expansion_check(
    u: C64,
    eta: f64,
    hbars: &[f64],
    c: f64,
    pmax: usize,
) -> Result<ExpansionReport> {
    if hbars.is_empty() {
        return Err(Error::Domain {
            what: "expansion check needs at least one hbar value",
        });
    }
    let id4 = CMat::identity(4);
    let r0m = r0(u, eta)?;
    let x = PI * eta * u;
    let coth = x.cosh() / sinh_checked(x)?;
    let first_order = r0m.add(&id4.scale(c64(0.0, PI * eta) * coth));
    let r1d = r1_diff(u, eta)?.scale(c64(c, 0.0));
    let rho0 = varrho0(u, eta)? * c;

    let mut rows = Vec::new();
    let mut mbs = Vec::new();
    let mut vcs = Vec::new();
    for &h in hbars {
        if h <= 0.0 {
            return Err(Error::Domain {
                what: "hbar grid must be positive",
            });
        }
        let eta_new = eta / (1.0 + eta * c * h);
        let ra = rbar(u, eta, h)?;
        let ma = ra.sub(&id4).scale(c64(1.0 / h, 0.0));
        let res_a = ma.sub(&first_order).norm_max();
        let mb = rbar(u, eta_new, h)?
            .sub(&ra)
            .scale(c64(1.0 / (h * h), 0.0));
        let res_b = mb.add(&r1d).norm_max();
        let vc = (varrho_ratio(u, eta, h, c, pmax)? - 1.0) / (h * h);
        let res_c = (vc - rho0).norm();
        rows.push(ExpansionRow {
            hbar: h,
            res_a,
            res_b,
            res_c,
        });
        mbs.push(mb);
        vcs.push(vc);
    }

    let halving = hbars.len() >= 3
        && hbars
            .windows(2)
            .all(|w| (w[0] / w[1] - 2.0).abs() < 1e-9);
    let (extrap_b, extrap_c) = if halving {
        let n = hbars.len();
        let two = c64(2.0, 0.0);
        let pair = |i: usize| mbs[i + 1].scale(two).sub(&mbs[i]);
        let rb = pair(n - 2)
            .scale(c64(4.0 / 3.0, 0.0))
            .sub(&pair(n - 3).scale(c64(1.0 / 3.0, 0.0)));
        let spair = |i: usize| 2.0 * vcs[i + 1] - vcs[i];
        let rc = (4.0 * spair(n - 2) - spair(n - 3)) / 3.0;
        (
            Some(rb.add(&r1d).norm_max()),
            Some((rc - rho0).norm()),
        )
    } else {
        (None, None)
    };
    Ok(ExpansionReport {
        rows,
        extrap_b,
        extrap_c,
    })
}

/// The 2x2 matrix of currents whose bracket relations the classical
/// RLL identity reproduces: [[h/2, f], [e, -h/2]], all on the lower strip.
pub fn l_plus(alg: &TrigAlgebra, u: C64) -> Result<ElementMat<TrigKind>> {
    let h = alg.gen(TrigKind::H, Branch::Plus, u)?;
    let e = alg.gen(TrigKind::E, Branch::Plus, u)?;
    let f = alg.gen(TrigKind::F, Branch::Plus, u)?;
    let mut m = ElementMat::zeros(2);
    m.set(0, 0, Element::from_term(c64(0.5, 0.0), h));
    m.set(0, 1, Element::from_term(c64(1.0, 0.0), f));
    m.set(1, 0, Element::from_term(c64(1.0, 0.0), e));
    m.set(1, 1, Element::from_term(c64(-0.5, 0.0), h));
    Ok(m)
}

/// Expand [L1 + L2, r0] + c (r1_diff - varrho0 id) entrywise and compare
/// with the current brackets of the matrix entries. The central weight `c`
/// scales the cocycle coordinate on both sides; the returned value is the
/// worst entry distance.
pub fn ll_structure_residual(alg: &TrigAlgebra, u1: C64, u2: C64, c: f64) -> Result<f64> {
    let l1 = l_plus(alg, u1)?;
    let l2 = l_plus(alg, u2)?;
    let u12 = u1 - u2;
    let m = ElementMat::from_fn(4, |row, col| {
        let (i, k) = (row / 2, row % 2);
        let (j, l) = (col / 2, col % 2);
        let mut e = Element::zero();
        if k == l {
            e = e.add(l1.get(i, j));
        }
        if i == j {
            e = e.add(l2.get(k, l));
        }
        e
    });
    let rhs_current = m.commutator_scalar(&r0(u12, alg.eta)?);
    let r1d = r1_diff(u12, alg.eta)?;
    let rho0 = varrho0(u12, alg.eta)?;

    let mut worst = 0.0f64;
    for row in 0..4 {
        for col in 0..4 {
            let (i, k) = (row / 2, row % 2);
            let (j, l) = (col / 2, col % 2);
            let mut lhs = alg.bracket_elements(l1.get(i, j), l2.get(k, l))?;
            lhs.central *= c64(c, 0.0);
            let mut rhs = rhs_current.get(row, col).clone();
            let delta = if row == col { 1.0 } else { 0.0 };
            rhs.central += c64(c, 0.0) * (r1d.get(row, col) - rho0 * delta);
            let d = lhs.distance(&rhs, 1e-9);
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rbar_degenerate_points() {
        let r = rbar(c64(0.0, 0.0), 0.8, 0.05).unwrap();
        assert!(r.get(1, 1).norm() < 1e-14);
        assert!((r.get(1, 2) - 1.0).norm() < 1e-14);
        let id = rbar(c64(0.4, -0.1), 0.8, 0.0).unwrap();
        assert!(id.sub(&CMat::identity(4)).norm_max() < 1e-15);
        let r2 = rbar(c64(0.3, -0.2), 1.3, 0.07).unwrap();
        assert_eq!(r2.get(0, 0), c64(1.0, 0.0));
        assert_eq!(r2.get(3, 3), c64(1.0, 0.0));
        assert_eq!(r2.get(1, 2), r2.get(2, 1));
    }

    #[test]
    fn product_factor_survives_gamma_recurrence() {
        // Gamma(z) = Gamma(z + 1) / z applied to every factor must leave
        // each product term unchanged to round-off.
        let (u, eta, hbar) = (c64(0.3, 0.0), 1.0, 0.05);
        for &p in &[1usize, 7, 50] {
            let direct = rp(u, eta, hbar, p).unwrap();
            let z = 2.0 * (p as f64) * hbar * eta;
            let a = c64(0.0, eta) * u;
            let shifted = |base: C64| gamma(base + 1.0).unwrap() / base;
            let alt = shifted(c64(z, 0.0) + a) * shifted(c64(1.0 + z, 0.0) + a)
                / (shifted(c64(z + hbar * eta, 0.0) + a)
                    * shifted(c64(1.0 + z - hbar * eta, 0.0) + a));
            assert!((direct - alt).norm() / direct.norm() < 1e-12);
        }
    }

    #[test]
    fn r0_symmetry_and_scaling() {
        let u = c64(0.37, -0.22);
        let eta = 0.9;
        let r = r0(u, eta).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(r.get(i, j), r.get(j, i));
            }
        }
        let scaled = r0(u * eta, 1.0).unwrap().scale(c64(eta, 0.0));
        assert!(r.sub(&scaled).norm_max() < 1e-13);
    }

    #[test]
    fn r0_solves_cybe() {
        let res = cybe_residual(c64(0.31, -0.18), c64(-0.46, 0.27), 1.1).unwrap();
        assert!(res < 1e-10, "cybe residual {res:.3e}");
    }

    #[test]
    fn second_order_block_properties() {
        let eta = 1.2;
        let u = c64(0.41, -0.13);
        let m = r1_diff(u, eta).unwrap();
        assert_eq!(m.get(0, 0), c64(0.0, 0.0));
        assert_eq!(m.get(3, 3), c64(0.0, 0.0));
        assert_eq!(m.get(1, 2), m.get(2, 1));
        let rho0 = varrho0(u, eta).unwrap();
        assert!((m.trace() - 4.0 * rho0).norm() < 1e-15);
        assert!(m
            .sub(&CMat::identity(4).scale(rho0))
            .trace()
            .norm()
            < 1e-15);
        // both entries vanish linearly at u = 0
        let tiny = r1_diff(c64(1e-8, 0.0), eta).unwrap();
        assert!(tiny.norm_max() < 1e-6);
        let (k, shifted) = traceless_shift(u, eta).unwrap();
        assert_eq!(shifted.trace(), c64(0.0, 0.0));
        assert!((k - c64(0.0, PI * eta / 2.0) * (PI * eta * u).cosh() / (PI * eta * u).sinh())
            .norm()
            < 1e-15);
    }

    #[test]
    fn eta_derivative_matches_second_order_data() {
        let res = eta_derivative_residual(c64(0.5, 0.0), 1.0, 1e-4).unwrap();
        assert!(res < 1e-7, "residual {res:.3e}");
    }

    #[test]
    fn tau_plus_value() {
        let v = tau_plus(c64(0.2, -0.1), 0.05).unwrap();
        let x = PI * c64(0.2, -0.1) / 0.1;
        assert!((v - x.cosh() / x.sinh()).norm() < 1e-13);
        assert!(tau_plus(c64(0.0, 0.0), 0.05).is_err());
    }

    #[test]
    fn normalization_product_truncation_is_stable() {
        let u = c64(0.3, 0.0);
        let v200 = varrho(u, 1.0, 0.05, 200).unwrap();
        let v400 = varrho(u, 1.0, 0.05, 400).unwrap();
        let drift = (v400 - v200).norm();
        assert!(drift < 2e-7, "truncation drift {drift:.3e}");
    }

    #[test]
    fn normalization_tends_to_a_pure_phase() {
        // At real argument the scalar factor is unimodular; its phase climbs
        // to pi/2 linearly in hbar, so the full R-matrix does not tend to the
        // identity but to i times it.
        let u = c64(0.3, 0.0);
        let mut prev = f64::INFINITY;
        for hb in [0.2, 0.1, 0.05] {
            let v = varrho(u, 1.0, hb, 400).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-8, "hbar {hb}: |v| {:?}", v.norm());
            let deficit = core::f64::consts::FRAC_PI_2 - v.arg();
            assert!(
                deficit > 0.0 && deficit < 0.6 * prev,
                "hbar {hb}: deficit {deficit:.3e} after {prev:.3e}"
            );
            prev = deficit;
        }
    }

    #[test]
    fn expansion_residuals_shrink_and_extrapolate() {
        let rep =
            expansion_check(c64(0.4, 0.0), 1.0, &[1e-2, 5e-3, 2.5e-3], 1.0, 400).unwrap();
        for w in rep.rows.windows(2) {
            let ratio = w[0].res_a / w[1].res_a;
            assert!(ratio > 1.8 && ratio < 2.2, "first-order ratio {ratio:.3}");
            assert!(w[1].res_b < w[0].res_b);
            assert!(w[1].res_c < w[0].res_c);
        }
        assert!(rep.extrap_b.unwrap() < 1e-5, "b {:?}", rep.extrap_b);
        assert!(rep.extrap_c.unwrap() < 1e-5, "c {:?}", rep.extrap_c);
    }

    #[test]
    fn ll_bracket_matches_matrix_form() {
        let alg = TrigAlgebra::new(1.0);
        let u1 = c64(0.1, -0.2);
        let u2 = c64(-0.3, -0.7);
        for &c in &[0.0, 1.0] {
            let res = ll_structure_residual(&alg, u1, u2, c).unwrap();
            assert!(res < 1e-9, "c = {c}: residual {res:.3e}");
        }
    }
}
