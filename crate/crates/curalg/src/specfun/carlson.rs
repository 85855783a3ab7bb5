//! Carlson symmetric elliptic integral RF and the complete integral K
//! built on it.

use crate::error::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Carlson RF(x, y, z) for non-negative arguments, at most one of them zero.
pub fn rf(mut x: f64, mut y: f64, mut z: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 || z < 0.0 {
        return Err(Error::Domain {
            what: "rf needs non-negative arguments",
        });
    }
    let zeros = [x, y, z].iter().filter(|v| **v == 0.0).count();
    if zeros > 1 {
        return Err(Error::Domain {
            what: "rf diverges with two zero arguments",
        });
    }
    for _ in 0..200 {
        let lam = x.sqrt() * y.sqrt() + y.sqrt() * z.sqrt() + z.sqrt() * x.sqrt();
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + z) / 3.0;
        let eps = [x, y, z]
            .iter()
            .map(|v| ((v - mu) / mu).abs())
            .fold(0.0, f64::max);
        if eps < 1e-4 {
            let dx = (mu - x) / mu;
            let dy = (mu - y) / mu;
            let dz = (mu - z) / mu;
            let e2 = dx * dy + dy * dz + dz * dx;
            let e3 = dx * dy * dz;
            let s = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
            return Ok(s / mu.sqrt());
        }
    }
    Err(Error::NonConvergent { what: "rf" })
}

/// Complete elliptic integral K(k) with modulus 0 <= k < 1.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidModulus);
    }
    rf(0.0, 1.0 - k * k, 1.0)
}
