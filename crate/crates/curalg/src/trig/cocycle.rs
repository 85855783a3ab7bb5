//! Integral representation of the central two-cocycle and the boundary
//! behaviour of currents as distributions.
//!
//! The closed-form central coefficients used by [`TrigAlgebra::bracket`]
//! come from a boundary integral over the strip: pair the two current
//! kernels against each other's derivative in the kernel scale and
//! integrate along the two edges. The scale derivative is taken by finite
//! differences here so the numeric value shares no calculus with the
//! closed forms it is checked against.

use super::{TGen, TrigAlgebra, TrigKind};
use crate::element::Branch;
use crate::error::Result;
use crate::quad::{self, ContourSpec, TestFunction};
use crate::{c64, C64, I};
use core::f64::consts::PI;
#[cfg(test)]
use num_traits::Float;

// kernel closed form at scale eta, usable off the home strip
fn kernel(eta: f64, kind: TrigKind, w: C64) -> C64 {
    let x = PI * eta * w;
    match kind {
        TrigKind::E | TrigKind::F => I * PI * eta / x.sinh(),
        TrigKind::H => I * PI * eta * x.cosh() / x.sinh(),
    }
}

// scale derivative of the kernel at fixed argument: central difference
// with one Richardson step, h = 1e-3 * eta
fn kernel_deta(eta: f64, kind: TrigKind, w: C64) -> C64 {
    let h = 1e-3 * eta;
    let d = |step: f64| (kernel(eta + step, kind, w) - kernel(eta - step, kind, w)) / (2.0 * step);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

// relabel a generator onto the plus branch: (sign, kind, point)
fn plus_form(alg: &TrigAlgebra, g: &TGen) -> (f64, TrigKind, C64) {
    match g.branch {
        Branch::Plus => (1.0, g.kind, g.point),
        Branch::Minus => {
            let sign = if g.kind == TrigKind::H { 1.0 } else { -1.0 };
            (sign, g.kind, g.point - I / alg.eta)
        }
    }
}

/// Central cocycle of two currents evaluated from its boundary-integral
/// representation. Independent of the closed forms in the parent module.
pub fn cocycle_numeric(alg: &TrigAlgebra, a: &TGen, b: &TGen) -> Result<C64> {
    use TrigKind::*;
    let trace = match (a.kind, b.kind) {
        (E, F) | (F, E) => 1.0,
        (H, H) => 2.0,
        _ => return Ok(c64(0.0, 0.0)),
    };
    let eta = alg.eta;
    let (s1, k1, p1) = plus_form(alg, a);
    let (s2, k2, p2) = plus_form(alg, b);
    let cutoff = 40.0 / (PI * eta) + p1.re.abs().max(p2.re.abs());
    let line = |offset: f64| -> Result<C64> {
        let spec = ContourSpec::line(offset, cutoff);
        let integrand = |z: C64| {
            kernel_deta(eta, k2, z - p2) * kernel(eta, k1, z - p1)
                - kernel(eta, k2, z - p2) * kernel_deta(eta, k1, z - p1)
        };
        Ok(quad::integrate_line(integrand, &spec)?.value)
    };
    let bottom = line(-1.0 / eta)?;
    let top = line(0.0)?;
    let pref = s1 * s2 * trace * eta * eta / (4.0 * PI);
    Ok(pref * (bottom - top))
}

/// Jump of a current kernel paired with a test function across the
/// current's horizontal line: integrate just above minus just below.
/// For both kernel kinds the jump equals `2 pi` times the test function
/// at the current's point.
pub fn boundary_jump(
    alg: &TrigAlgebra,
    kind: TrigKind,
    u: C64,
    s: &TestFunction,
) -> Result<C64> {
    let eta = alg.eta;
    let delta = 0.25 / eta;
    let cutoff = s.decay_radius(1e-16, u.im.abs() + delta) + u.re.abs() + 4.0 / eta;
    let side = |offset: f64| -> Result<C64> {
        let spec = ContourSpec::line(offset, cutoff);
        let integrand = |z: C64| kernel(eta, kind, z - u) * s.eval(z);
        Ok(quad::integrate_line(integrand, &spec)?.value)
    };
    let above = side(u.im + delta)?;
    let below = side(u.im - delta)?;
    Ok(above - below)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Generator;

    fn alg() -> TrigAlgebra {
        TrigAlgebra::new(0.8)
    }

    fn gen(kind: TrigKind, branch: Branch, re: f64, im: f64) -> TGen {
        Generator::new(kind, branch, c64(re, im))
    }

    #[test]
    fn boundary_integral_matches_closed_forms_same_branch() {
        let a = alg();
        let pairs = [
            (
                gen(TrigKind::E, Branch::Plus, 0.41, -0.52),
                gen(TrigKind::F, Branch::Plus, -0.22, -0.87),
            ),
            (
                gen(TrigKind::H, Branch::Plus, 0.15, -0.33),
                gen(TrigKind::H, Branch::Plus, -0.48, -0.71),
            ),
            (
                gen(TrigKind::E, Branch::Minus, 0.31, 0.42),
                gen(TrigKind::F, Branch::Minus, -0.12, 0.66),
            ),
        ];
        for (x, y) in pairs {
            let numeric = cocycle_numeric(&a, &x, &y).unwrap();
            let closed = a.cocycle(&x, &y).unwrap();
            assert!(
                (numeric - closed).norm() < 5e-7,
                "{:?}{:?}: numeric {numeric} closed {closed}",
                x.kind,
                y.kind
            );
        }
    }

    #[test]
    fn boundary_integral_matches_closed_forms_mixed_branch() {
        let a = alg();
        let pairs = [
            (
                gen(TrigKind::E, Branch::Plus, 0.41, -0.52),
                gen(TrigKind::F, Branch::Minus, -0.22, 0.47),
            ),
            (
                gen(TrigKind::E, Branch::Minus, 0.27, 0.58),
                gen(TrigKind::F, Branch::Plus, -0.31, -0.64),
            ),
            (
                gen(TrigKind::H, Branch::Plus, 0.15, -0.33),
                gen(TrigKind::H, Branch::Minus, -0.08, 0.51),
            ),
        ];
        for (x, y) in pairs {
            let numeric = cocycle_numeric(&a, &x, &y).unwrap();
            let closed = a.cocycle(&x, &y).unwrap();
            assert!(
                (numeric - closed).norm() < 5e-7,
                "{:?}{:?}: numeric {numeric} closed {closed}",
                x.kind,
                y.kind
            );
        }
    }

    #[test]
    fn traceless_pairs_have_no_central_term() {
        let a = alg();
        let x = gen(TrigKind::E, Branch::Plus, 0.3, -0.4);
        let y = gen(TrigKind::E, Branch::Plus, -0.2, -0.7);
        let z = gen(TrigKind::H, Branch::Plus, 0.1, -0.5);
        assert_eq!(cocycle_numeric(&a, &x, &y).unwrap(), c64(0.0, 0.0));
        assert_eq!(cocycle_numeric(&a, &x, &z).unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn numeric_cocycle_is_antisymmetric() {
        let a = alg();
        let x = gen(TrigKind::E, Branch::Plus, 0.41, -0.52);
        let y = gen(TrigKind::F, Branch::Minus, -0.22, 0.47);
        let xy = cocycle_numeric(&a, &x, &y).unwrap();
        let yx = cocycle_numeric(&a, &y, &x).unwrap();
        assert!((xy + yx).norm() < 1e-8);
    }

    #[test]
    fn kernel_jump_reproduces_test_function_value() {
        let a = alg();
        let s = TestFunction {
            alpha: 0.6,
            beta: c64(0.2, -0.1),
            z0: c64(0.3, -0.4),
        };
        for kind in [TrigKind::E, TrigKind::H] {
            for u in [c64(0.3, -0.4), c64(-0.6, -0.7)] {
                let jump = boundary_jump(&a, kind, u, &s).unwrap();
                let expect = 2.0 * PI * s.eval(u);
                assert!(
                    (jump - expect).norm() < 1e-8 * (1.0 + expect.norm()),
                    "{kind:?} at {u}: jump {jump} expected {expect}"
                );
            }
        }
    }
}
