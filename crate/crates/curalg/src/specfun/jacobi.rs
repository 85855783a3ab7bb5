//! Jacobi elliptic functions sn, cn, dn.
//!
//! Real argument uses the arithmetic-geometric mean with backward
//! recurrence; complex argument splits into real and imaginary parts with
//! the standard addition rule through the complementary modulus.

use crate::error::{Error, Result};
use crate::{c64, C64};
#[allow(unused_imports)]
use num_traits::Float;

const CA: f64 = 1e-9;
const DEPTH: usize = 16;

/// (sn, cn, dn) at real argument `u` with modulus `0 <= k <= 1`.
pub fn sncndn(u: f64, k: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::InvalidModulus);
    }
    let emc = 1.0 - k * k;
    if emc == 0.0 {
        let c = 1.0 / u.cosh();
        return Ok((u.tanh(), c, c));
    }

    let mut em = [0.0f64; DEPTH];
    let mut en = [0.0f64; DEPTH];
    let mut a = 1.0;
    let mut dn = 1.0;
    let mut emc_i = emc;
    let mut c = 0.0;
    let mut l = 0;
    for i in 0..DEPTH {
        l = i;
        em[i] = a;
        emc_i = emc_i.sqrt();
        en[i] = emc_i;
        c = 0.5 * (a + emc_i);
        if (a - emc_i).abs() <= CA * a {
            break;
        }
        emc_i *= a;
        a = c;
    }

    let uu = u * c;
    let mut sn = uu.sin();
    let mut cn = uu.cos();
    if sn != 0.0 {
        let mut aa = cn / sn;
        c *= aa;
        for ii in (0..=l).rev() {
            let b = em[ii];
            aa *= c;
            c *= dn;
            dn = (en[ii] + aa) / (b + aa);
            aa = c / b;
        }
        let inv = 1.0 / (c * c + 1.0).sqrt();
        sn = if sn >= 0.0 { inv } else { -inv };
        cn = c * sn;
    }
    Ok((sn, cn, dn))
}

/// (sn, cn, dn) at complex argument `z` with real modulus `0 <= k <= 1`.
/// Errors if `z` sits on top of a pole (the lattice of `i K'`).
pub fn sncndn_c(z: C64, k: f64) -> Result<(C64, C64, C64)> {
    let kp = (1.0 - k * k).sqrt();
    let (s, c, d) = sncndn(z.re, k)?;
    let (s1, c1, d1) = sncndn(z.im, kp)?;

    let denom = c1 * c1 + k * k * s * s * s1 * s1;
    if denom.abs() < 1e-12 {
        return Err(Error::Pole {
            what: "jacobi function at a lattice pole",
        });
    }
    let sn = c64(s * d1, c * d * s1 * c1) / denom;
    let cn = c64(c * c1, -s * d * s1 * d1) / denom;
    let dn = c64(d * c1 * d1, -k * k * s * c * s1) / denom;
    Ok((sn, cn, dn))
}
