//! Jacobi quotient kernels 1/sn, dn/sn, cn/sn and a finite-difference
//! tau-derivative that rebuilds the modulus from the period ratio at every
//! step, independent of the theta-series route.

use crate::error::{Error, Result};
use crate::specfun::jacobi::sncndn_c;
use crate::specfun::theta::modulus_from_tau;
use crate::{c64, C64};

/// Quotient kernel with index `a` in 1..=3: 1/sn, dn/sn, cn/sn.
///
/// All three have a simple pole with unit residue at the origin (and at
/// its period translates), so arguments too close to a zero of sn are
/// rejected.
pub fn omega(a: usize, u: C64, k: f64) -> Result<C64> {
    let (sn, cn, dn) = sncndn_c(u, k)?;
    if sn.norm() < 1e-12 {
        return Err(Error::Pole {
            what: "quotient kernel at a zero of sn",
        });
    }
    match a {
        1 => Ok(1.0 / sn),
        2 => Ok(dn / sn),
        3 => Ok(cn / sn),
        _ => Err(Error::Domain {
            what: "kernel index outside 1..=3",
        }),
    }
}

/// d/dtau of `omega` at fixed argument, by central differences along the
/// imaginary tau direction (where the modulus stays real) with one
/// Richardson extrapolation.
///
/// `step` is the initial offset; `None` picks 1e-3 times the imaginary
/// part of tau. The halved-step pair doubles as an error estimate, and a
/// gross disagreement is reported as a non-convergent derivative.
pub fn d_omega_dtau(a: usize, u: C64, tau: C64, step: Option<f64>) -> Result<C64> {
    let h0 = step.unwrap_or(1e-3 * tau.im.abs());
    if !(h0 > 0.0) || tau.im <= 2.0 * h0 {
        return Err(Error::Domain {
            what: "tau step must be positive and keep tau in the upper half-plane",
        });
    }
    let eval = |t: C64| -> Result<C64> {
        let k = modulus_from_tau(t)?;
        omega(a, u, k)
    };
    let diff = |h: f64| -> Result<C64> {
        let dt = c64(0.0, h);
        Ok((eval(tau + dt)? - eval(tau - dt)?) / (2.0 * dt))
    };
    let d1 = diff(h0)?;
    let d2 = diff(0.5 * h0)?;
    let r = (4.0 * d2 - d1) / 3.0;
    if !r.re.is_finite() || !r.im.is_finite() || (d2 - d1).norm() > 0.1 * (1.0 + r.norm()) {
        return Err(Error::NonConvergent {
            what: "tau-derivative step halving",
        });
    }
    Ok(r)
}
