//! Contour quadrature: horizontal lines, symmetric principal values, and a
//! log-weighted keyhole around the positive real axis.
//!
//! All routines use trapezoid or midpoint sums with Richardson acceleration.
//! For the analytic, exponentially decaying integrands this crate feeds them,
//! plain trapezoid refinement is already close to spectral; the Richardson
//! table mostly sharpens the error estimate.

use crate::error::{Error, Result};
use crate::{c64, C64};
#[allow(unused_imports)]
use num_traits::Float;

/// Where and how to integrate.
#[derive(Clone, Debug)]
pub struct ContourSpec {
    /// Imaginary part of a horizontal line contour.
    pub offset: f64,
    /// Distance of the keyhole lips from the real axis.
    pub epsilon: f64,
    /// Radius of the keyhole circle around the origin.
    pub r0: f64,
    /// Truncation of the non-compact direction.
    pub cutoff: f64,
    /// Requested accuracy, relative to `max(1, |value|)`.
    pub tol: f64,
}

impl ContourSpec {
    /// Horizontal line `Im z = offset`, truncated at `|Re z| = cutoff`.
    pub fn line(offset: f64, cutoff: f64) -> Self {
        ContourSpec {
            offset,
            epsilon: 1e-4,
            r0: 1e-3,
            cutoff,
            tol: 1e-10,
        }
    }

    /// Symmetric principal value through a simple pole at the origin.
    pub fn principal_value(cutoff: f64) -> Self {
        Self::line(0.0, cutoff)
    }

    /// Keyhole wrapping the positive real axis, truncated at `cutoff`.
    pub fn keyhole(cutoff: f64) -> Self {
        Self::line(0.0, cutoff)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_lips(mut self, epsilon: f64, r0: f64) -> Self {
        assert!(epsilon < r0, "lips must meet the circle");
        self.epsilon = epsilon;
        self.r0 = r0;
        self
    }
}

/// Truncation radius at which a tail decaying like `exp(-rate * x)` is
/// below double precision.
pub fn cutoff_for_rate(rate: f64) -> f64 {
    40.0 / rate
}

#[derive(Clone, Copy, Debug)]
pub struct QuadratureResult {
    pub value: C64,
    pub err: f64,
    pub evals: u64,
}

const MAX_LEVEL: usize = 14;
const MIN_LEVEL: usize = 4;
const MAX_RICHARDSON: usize = 8;

/// Trapezoid sums on [a, b] with Richardson extrapolation.
fn romberg_closed(
    f: &mut dyn FnMut(f64) -> C64,
    a: f64,
    b: f64,
    tol: f64,
    what: &'static str,
) -> Result<QuadratureResult> {
    let n0: usize = 32;
    let mut evals: u64 = 0;
    let mut eval = |x: f64, n: &mut u64| {
        *n += 1;
        f(x)
    };

    let mut h = (b - a) / n0 as f64;
    let mut trap = {
        let mut s = 0.5 * (eval(a, &mut evals) + eval(b, &mut evals));
        for i in 1..n0 {
            s += eval(a + h * i as f64, &mut evals);
        }
        s * h
    };
    let mut n = n0;
    let mut diag: alloc::vec::Vec<C64> = alloc::vec![trap];

    for level in 1..=MAX_LEVEL {
        // refine: add midpoints of the current grid
        let mut s = c64(0.0, 0.0);
        for i in 0..n {
            s += eval(a + h * (i as f64 + 0.5), &mut evals);
        }
        n *= 2;
        h *= 0.5;
        trap = 0.5 * trap + h * s;

        let mut row = alloc::vec![trap];
        let depth = level.min(diag.len()).min(MAX_RICHARDSON);
        let mut pow4 = 1.0;
        for j in 0..depth {
            pow4 *= 4.0;
            let v = (pow4 * row[j] - diag[j]) / (pow4 - 1.0);
            row.push(v);
        }
        let new = *row.last().unwrap();
        let old = *diag.last().unwrap();
        let change = (new - old).norm();
        diag = row;

        if level >= MIN_LEVEL {
            let scale = 1.0f64.max(new.norm());
            if change < tol * scale {
                return Ok(QuadratureResult {
                    value: new,
                    err: change,
                    evals,
                });
            }
        }
    }
    Err(Error::NonConvergent { what })
}

/// Midpoint sums on (0, b] with Richardson extrapolation; never touches 0.
fn midpoint_romberg(
    f: &mut dyn FnMut(f64) -> C64,
    b: f64,
    tol: f64,
    what: &'static str,
) -> Result<QuadratureResult> {
    let mut evals: u64 = 0;
    let mut diag: alloc::vec::Vec<C64> = alloc::vec::Vec::new();

    for level in 0..=MAX_LEVEL {
        let n = 64usize << level;
        let h = b / n as f64;
        let mut s = c64(0.0, 0.0);
        for i in 0..n {
            s += f(h * (i as f64 + 0.5));
            evals += 1;
        }
        let m = s * h;

        if diag.is_empty() {
            diag = alloc::vec![m];
            continue;
        }
        let mut row = alloc::vec![m];
        let depth = level.min(diag.len()).min(MAX_RICHARDSON);
        let mut pow4 = 1.0;
        for j in 0..depth {
            pow4 *= 4.0;
            row.push((pow4 * row[j] - diag[j]) / (pow4 - 1.0));
        }
        let new = *row.last().unwrap();
        let old = *diag.last().unwrap();
        let change = (new - old).norm();
        diag = row;

        if level >= MIN_LEVEL {
            let scale = 1.0f64.max(new.norm());
            if change < tol * scale {
                return Ok(QuadratureResult {
                    value: new,
                    err: change,
                    evals,
                });
            }
        }
    }
    Err(Error::NonConvergent { what })
}

/// Integral of `f` over the real segment `[a, b]`.
pub fn integrate_segment(
    mut f: impl FnMut(f64) -> C64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    romberg_closed(&mut f, a, b, tol, "segment integral")
}

/// Integral of `f` along the horizontal line `Im z = spec.offset`,
/// truncated at `|Re z| = spec.cutoff`.
pub fn integrate_line(mut f: impl FnMut(C64) -> C64, spec: &ContourSpec) -> Result<QuadratureResult> {
    let y = spec.offset;
    romberg_closed(
        &mut |x| f(c64(x, y)),
        -spec.cutoff,
        spec.cutoff,
        spec.tol,
        "line integral",
    )
}

/// Symmetric principal value of `f` over `(-cutoff, cutoff)` with a pole of
/// order at most one at the origin. The integrand is folded so the singular
/// odd part cancels exactly; an even singular part (pole order > 1) is
/// detected and reported.
pub fn integrate_pv(mut f: impl FnMut(f64) -> C64, spec: &ContourSpec) -> Result<QuadratureResult> {
    let x = spec.cutoff;
    let mut fold = |lam: f64| f(lam) + f(-lam);

    let t0 = x * 2.0f64.powi(-40);
    let m0 = fold(t0).norm();
    let m1 = fold(t0 * 0.5).norm();
    let m2 = fold(t0 * 0.25).norm();
    let floor = 1e-12 * (1.0 + m0);
    if m1 > 1.5 * m0 + floor && m2 > 1.5 * m1 + floor {
        return Err(Error::PoleOrder);
    }

    let mut res = midpoint_romberg(&mut fold, x, spec.tol, "principal value")?;
    res.evals += 3;
    Ok(res)
}

/// Integral of `ln(-lambda)/(2 pi i) * g(lambda)` over a keyhole wrapping
/// the positive real axis: upper lip at `Im = +epsilon` traversed inward,
/// circle of radius `r0` counterclockwise through the negative axis, lower
/// lip outward, truncated at `Re = cutoff`. `ln` is the principal branch,
/// which is continuous on this contour.
///
/// For `g` analytic across `[0, cutoff]` this reproduces the plain integral
/// of `g` over the positive axis up to `O(epsilon, r0 ln r0)` boundary terms;
/// for `g` with a simple pole at the origin the value depends on the contour
/// geometry, but differences of such integrals with equal pole parts do not.
pub fn integrate_keyhole_log(
    mut g: impl FnMut(C64) -> C64,
    spec: &ContourSpec,
) -> Result<QuadratureResult> {
    let eps = spec.epsilon;
    let r0 = spec.r0;
    assert!(eps < r0, "lip height must be below the circle radius");
    let x0 = (r0 * r0 - eps * eps).sqrt();
    let th1 = (eps / r0).asin();
    let two_pi_i = c64(0.0, 2.0 * core::f64::consts::PI);

    let mut weighted = |lam: C64| (-lam).ln() / two_pi_i * g(lam);

    // lips in t = ln(Re lambda) to resolve the 1/lambda steepness near 0
    let (ta, tb) = (x0.ln(), spec.cutoff.ln());
    let upper = romberg_closed(
        &mut |t| {
            let xx = t.exp();
            weighted(c64(xx, eps)) * xx
        },
        ta,
        tb,
        spec.tol,
        "keyhole upper lip",
    )?;
    let lower = romberg_closed(
        &mut |t| {
            let xx = t.exp();
            weighted(c64(xx, -eps)) * xx
        },
        ta,
        tb,
        spec.tol,
        "keyhole lower lip",
    )?;
    let circle = romberg_closed(
        &mut |th| {
            let lam = r0 * c64(th.cos(), th.sin());
            weighted(lam) * lam * c64(0.0, 1.0)
        },
        th1,
        2.0 * core::f64::consts::PI - th1,
        spec.tol,
        "keyhole circle",
    )?;

    Ok(QuadratureResult {
        value: -upper.value + circle.value + lower.value,
        err: upper.err + circle.err + lower.err,
        evals: upper.evals + circle.evals + lower.evals,
    })
}

/// Gaussian bump used to smear distributions:
/// `s(z) = exp(-alpha (z - z0)^2 + beta (z - z0))`.
#[derive(Clone, Copy, Debug)]
pub struct TestFunction {
    pub alpha: f64,
    pub beta: C64,
    pub z0: C64,
}

impl TestFunction {
    pub fn new(alpha: f64, beta: C64, z0: C64) -> Self {
        assert!(alpha > 0.0);
        TestFunction { alpha, beta, z0 }
    }

    pub fn eval(&self, z: C64) -> C64 {
        let d = z - self.z0;
        (-self.alpha * d * d + self.beta * d).exp()
    }

    pub fn deriv(&self, z: C64) -> C64 {
        let d = z - self.z0;
        (self.beta - 2.0 * self.alpha * d) * self.eval(z)
    }

    /// Radius beyond which `|s|` stays below `tail` along any horizontal
    /// line within `band` of `Im z0`.
    pub fn decay_radius(&self, tail: f64, band: f64) -> f64 {
        let l = (1.0 / tail).ln() + self.alpha * band * band + self.beta.norm() * band;
        let bn = self.beta.norm() + 2.0 * self.alpha * band;
        (bn + (bn * bn + 4.0 * self.alpha * l).sqrt()) / (2.0 * self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::I;
    use core::f64::consts::PI;

    #[test]
    fn line_gaussian() {
        // shifted Gaussian: integral is sqrt(pi) independent of the line
        let spec = ContourSpec::line(0.7, 12.0);
        let r = integrate_line(|z| (-z * z).exp(), &spec).unwrap();
        assert!((r.value - c64(PI.sqrt(), 0.0)).norm() < 1e-12, "{:?}", r);
    }

    #[test]
    fn line_lorentzian_tail() {
        // exp(-z^2/10) / (z^2+1) on Im z = 0.5 stays off the poles
        let spec = ContourSpec::line(0.5, 40.0);
        let r = integrate_line(|z| (-z * z / 10.0).exp() / (z * z + 1.0), &spec).unwrap();
        assert!(r.err < 1e-9);
    }

    #[test]
    fn pv_odd_pole_vanishes() {
        // pv of 1/lambda times an even envelope is zero
        let spec = ContourSpec::principal_value(30.0);
        let r = integrate_pv(|l| c64((-l * l / 50.0).exp() / l, 0.0), &spec).unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn pv_oscillatory_kernel() {
        // damped version of the classic pv integral of exp(i lambda)/lambda;
        // the Gaussian damping shifts the value by less than 1e-300
        let alpha = 1e-4;
        let spec = ContourSpec::principal_value(700.0).with_tol(1e-11);
        let r = integrate_pv(
            |l| (I * l - alpha * l * l).exp() / l,
            &spec,
        )
        .unwrap();
        assert!((r.value - I * PI).norm() < 1e-9, "got {:?}", r);
    }

    #[test]
    fn pv_rejects_double_pole() {
        let spec = ContourSpec::principal_value(10.0);
        let e = integrate_pv(|l| c64((-l * l).exp() / (l * l), 0.0), &spec);
        assert_eq!(e.unwrap_err(), Error::PoleOrder);
    }

    #[test]
    fn keyhole_reduces_to_ray_for_regular_integrand() {
        // g analytic on [0, cutoff] and vanishing at 0 quadratically:
        // integral of lambda^2 exp(-lambda) is 2; shrink the keyhole so the
        // boundary terms sit below the tolerance
        let spec = ContourSpec::keyhole(42.0).with_lips(1e-8, 1e-6);
        let r = integrate_keyhole_log(|lam| lam * lam * (-lam).exp(), &spec).unwrap();
        assert!((r.value - c64(2.0, 0.0)).norm() < 2e-8, "got {:?}", r.value);
    }

    #[test]
    fn keyhole_difference_is_contour_independent() {
        // g(lambda) = exp(i lambda w)/lambda: single keyhole values depend on
        // (epsilon, r0), but differences in w do not
        let w1 = c64(0.3, 0.8);
        let w2 = c64(-0.2, 1.1);
        let g = |w: C64| move |lam: C64| (I * lam * w).exp() / lam;
        let d = |spec: &ContourSpec| {
            let a = integrate_keyhole_log(g(w1), spec).unwrap().value;
            let b = integrate_keyhole_log(g(w2), spec).unwrap().value;
            a - b
        };
        let d1 = d(&ContourSpec::keyhole(60.0));
        let d2 = d(&ContourSpec::keyhole(60.0).with_lips(3e-4, 4e-3));
        assert!((d1 - d2).norm() < 1e-8, "{:?} vs {:?}", d1, d2);
        // the difference of the two integrands has its pole cancelled, so a
        // plain ray integral serves as the oracle; the cancellation-free
        // form exp(il(w1+w2)/2) * 2 sinh(il(w1-w2)/2) / l keeps it accurate
        // near zero
        let mut diff = |l: f64| {
            let mid = (I * l * (w1 + w2) * 0.5).exp();
            let half = I * l * (w1 - w2) * 0.5;
            mid * 2.0 * half.sinh() / l
        };
        let direct = super::romberg_closed(&mut diff, 1e-12, 60.0, 1e-11, "oracle")
            .unwrap()
            .value;
        assert!((d1 - direct).norm() < 1e-8, "{:?} vs {:?}", d1, direct);
    }

    #[test]
    fn test_function_decay_radius() {
        let s = TestFunction::new(0.5, c64(0.2, -0.1), c64(0.4, 0.0));
        let r = s.decay_radius(1e-16, 0.3);
        for sgn in [-1.0, 1.0] {
            let z = s.z0 + c64(sgn * r, 0.3);
            assert!(s.eval(z).norm() <= 1.1e-16);
        }
    }

    #[test]
    fn nonconvergent_reports() {
        // white-noise style integrand never settles
        let mut state = 1u64;
        let mut f = |_z: C64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            c64((state >> 11) as f64 / (1u64 << 53) as f64, 0.0)
        };
        let spec = ContourSpec::line(0.0, 1.0).with_tol(1e-14);
        let e = integrate_line(&mut f, &spec);
        assert!(matches!(e, Err(Error::NonConvergent { .. })));
    }
}
