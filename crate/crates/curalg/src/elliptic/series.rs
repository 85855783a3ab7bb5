//! Fourier-mode side of the currents: bilateral harmonic series for the
//! plus-branch kernels, the loop-algebra mode bracket, and the mode-level
//! cobracket coefficients.
//!
//! Modes of directions 1 and 2 sit on odd harmonics, direction 3 on even
//! ones. The series weight of mode l is p^l / (p^l - s_a) with family
//! sign s = (+1, -1, -1), and the bilateral sum over the parity class
//! reproduces the quotient kernel once the argument is rescaled by
//! 1/(4K), which the calibration below recovers by fitting.

use super::{EllipticAlgebra, SigmaKind};
use crate::error::{Error, Result};
use crate::{c64, C64, I};
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

fn parity_ok(a: SigmaKind, ell: i64) -> bool {
    match a {
        SigmaKind::S3 => ell % 2 == 0,
        _ => ell % 2 != 0,
    }
}

fn family_sign(a: SigmaKind) -> f64 {
    match a {
        SigmaKind::S1 => 1.0,
        _ => -1.0,
    }
}

// p^x - s as (mantissa, shift) with value = p^shift * mantissa and
// shift = min(x, 0), so large negative exponents never overflow
fn family_factor(a: SigmaKind, x: i64, p: C64) -> (C64, i64) {
    let s = family_sign(a);
    if x >= 0 {
        (p.powi(x as i32) - s, 0)
    } else {
        (c64(1.0, 0.0) - s * p.powi((-x) as i32), x)
    }
}

/// Series weight of mode `ell` in direction `a`; zero off the parity
/// class of the direction.
pub fn mode_weight(a: SigmaKind, ell: i64, p: C64) -> Result<C64> {
    if !parity_ok(a, ell) {
        return Ok(c64(0.0, 0.0));
    }
    let s = family_sign(a);
    let (num, den) = if ell >= 0 {
        let pl = p.powi(ell as i32);
        (pl, pl - s)
    } else {
        (c64(1.0, 0.0), c64(1.0, 0.0) - s * p.powi((-ell) as i32))
    };
    if den.norm() < 1e-12 {
        return Err(Error::Pole {
            what: "mode weight denominator",
        });
    }
    Ok(num / den)
}

/// Partial bilateral sum of the harmonic series for the kernel of
/// direction `a`, truncated at |l| <= n, with the argument rescaled to
/// `scale * w`. At scale 1/(4K) the full sum is omega_a(w).
///
/// The tail is monitored on both sides; terms that stop decaying signal
/// an argument outside the convergence band.
pub fn sigma_series(
    alg: &EllipticAlgebra,
    a: SigmaKind,
    w: C64,
    n: i64,
    scale: f64,
) -> Result<C64> {
    if n < 1 {
        return Err(Error::Domain {
            what: "series truncation must be positive",
        });
    }
    let p = alg.lat.q;
    let phase = |ell: i64| (2.0 * PI * I * (ell as f64) * scale * w).exp();
    let term = |ell: i64| -> Result<C64> { Ok(mode_weight(a, ell, p)? * phase(ell)) };

    let mut sum = c64(0.0, 0.0);
    for ell in -n..=n {
        if parity_ok(a, ell) {
            sum += term(ell)?;
        }
    }
    // compare the outermost retained term against one half-way out
    for side in [-1i64, 1] {
        let mut outer = side * n;
        while !parity_ok(a, outer) {
            outer -= side;
        }
        let mut mid = side * (n / 2).max(1);
        while !parity_ok(a, mid) {
            mid += side;
        }
        let t_out = term(outer)?.norm();
        let t_mid = term(mid)?.norm();
        if t_out > 0.9 * t_mid {
            return Err(Error::NonConvergent {
                what: "harmonic series tail does not decay",
            });
        }
    }
    Ok(I * PI / alg.lat.big_k * sum)
}

/// Least-squares fit of the series argument scale against the kernel on
/// a probe grid inside the convergence band. Returns the fitted scale
/// and the max grid residual at that scale; the lattice answer is
/// 1/(4K).
pub fn calibrate_series_scale(
    alg: &EllipticAlgebra,
    a: SigmaKind,
    n: i64,
) -> Result<(f64, f64)> {
    let kk = alg.lat.big_k.re;
    let kp = alg.half_period().im;
    let mut grid = Vec::new();
    for j in 0..5 {
        grid.push(c64((0.25 + 0.3 * j as f64) * kk, -0.45 * kp));
    }
    let mut refs = Vec::new();
    for &w in &grid {
        refs.push(alg.omega(a, w)?);
    }
    let objective = |s: f64| -> Result<f64> {
        let mut total = 0.0;
        for (idx, &w) in grid.iter().enumerate() {
            total += (sigma_series(alg, a, w, n, s)? - refs[idx]).norm_sqr();
        }
        Ok(total)
    };

    let s0 = 1.0 / (4.0 * kk);
    let (mut lo, mut hi) = (0.6 * s0, 1.6 * s0);
    // coarse scan to bracket the minimum, then golden-section refinement
    let mut best = (lo, f64::INFINITY);
    let coarse = 60;
    for i in 0..=coarse {
        let s = lo + (hi - lo) * i as f64 / coarse as f64;
        let f = objective(s)?;
        if f < best.1 {
            best = (s, f);
        }
    }
    let span = (hi - lo) / coarse as f64;
    lo = best.0 - span;
    hi = best.0 + span;
    let phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = objective(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = objective(x2)?;
        }
    }
    let s_fit = 0.5 * (lo + hi);
    let mut worst = 0.0f64;
    for (idx, &w) in grid.iter().enumerate() {
        let r = (sigma_series(alg, a, w, n, s_fit)? - refs[idx]).norm();
        if r > worst {
            worst = r;
        }
    }
    Ok((s_fit, worst))
}

/// Bracket of two labelled modes with central weight `charge`.
#[derive(Clone, Copy, Debug)]
pub struct ModeBracket {
    pub current: Option<(SigmaKind, i64, C64)>,
    pub central: C64,
}

pub fn mode_bracket(a: SigmaKind, k: i64, b: SigmaKind, l: i64, charge: C64) -> ModeBracket {
    match a.completes(b) {
        None => ModeBracket {
            current: None,
            central: if k + l == 0 {
                charge * k as f64
            } else {
                c64(0.0, 0.0)
            },
        },
        Some((third, eps)) => ModeBracket {
            current: Some((third, k + l, 2.0 * I * eps)),
            central: c64(0.0, 0.0),
        },
    }
}

/// One coefficient row of the mode cobracket.
#[derive(Clone, Copy, Debug)]
pub struct CobracketTerm {
    pub i: i64,
    pub j: i64,
    pub coeff: C64,
}

/// Mode cobracket of sigma_a^k truncated to |i|, |j| <= ncut: rows
/// (i, j, coeff) with i + j = k for the wedge sigma_b^i ^ sigma_c^j,
/// (a, b, c) cyclic. The numerator factor follows a's family, each
/// denominator factor the family of its slot.
pub fn mode_cobracket(a: SigmaKind, k: i64, p: C64, ncut: i64) -> Result<Vec<CobracketTerm>> {
    if !parity_ok(a, k) {
        return Err(Error::Domain {
            what: "mode index off the direction's parity class",
        });
    }
    let (b, c) = a.cyclic_successors();
    let (num, num_shift) = family_factor(a, k, p);
    let mut out = Vec::new();
    for i in -ncut..=ncut {
        let j = k - i;
        if !parity_ok(b, i) || !parity_ok(c, j) || j.abs() > ncut {
            continue;
        }
        let (db, db_shift) = family_factor(b, i, p);
        let (dc, dc_shift) = family_factor(c, j, p);
        if db.norm() < 1e-12 || dc.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "cobracket denominator",
            });
        }
        // net exponent of p is never negative because i + j = k
        let e = num_shift - db_shift - dc_shift;
        debug_assert!(e >= 0);
        out.push(CobracketTerm {
            i,
            j,
            coeff: p.powi(e as i32) * num / (db * dc),
        });
    }
    Ok(out)
}
