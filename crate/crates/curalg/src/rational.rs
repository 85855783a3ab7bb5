//! Degeneration of the strip algebra as the kernel scale goes to zero.
//!
//! Kernels collapse to simple poles `i/u`, the two strips open up into the
//! lower and upper half-planes, and the two branch subalgebras become
//! isotropic halves of a classical double. Central terms survive only
//! across branches, as double poles. On modes, the generating functions
//! are one-sided Laplace transforms and the cobracket kernel degenerates
//! to a step function supported between 0 and the total mode.

use crate::element::{Branch, Element, Generator};
use crate::error::{Error, Result};
use crate::quad;
use crate::trig::modes::{mode_bracket, pair_mode, MKind};
use crate::trig::TrigAlgebra;
use crate::{c64, C64, I};
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

pub type RGen = Generator<MKind>;
pub type RElem = Element<MKind>;

/// Current algebra of rational functions on the two half-planes.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalAlgebra;

impl RationalAlgebra {
    pub fn new() -> Self {
        RationalAlgebra
    }

    /// Half-plane of a branch as (lower, upper) imaginary bounds.
    pub fn half_plane(&self, branch: Branch) -> (f64, f64) {
        match branch {
            Branch::Plus => (f64::NEG_INFINITY, 0.0),
            Branch::Minus => (0.0, f64::INFINITY),
        }
    }

    /// Check a generator sits strictly inside its half-plane.
    pub fn validate(&self, g: &RGen) -> Result<()> {
        let ok = match g.branch {
            Branch::Plus => g.point.im < -1e-9,
            Branch::Minus => g.point.im > 1e-9,
        };
        if ok {
            Ok(())
        } else {
            let (lo, hi) = self.half_plane(g.branch);
            Err(Error::StripViolation {
                im: g.point.im,
                lo,
                hi,
            })
        }
    }

    /// Validated generator constructor.
    pub fn gen(&self, kind: MKind, branch: Branch, point: C64) -> Result<RGen> {
        let g = Generator::new(kind, branch, point);
        self.validate(&g)?;
        Ok(g)
    }

    /// Simple-pole kernel shared by all three current kinds.
    pub fn kernel(&self, w: C64) -> Result<C64> {
        if w.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "rational kernel at zero separation",
            });
        }
        Ok(I / w)
    }

    // central coefficient of a raising/lowering pair: a double pole across
    // branches, zero on a common branch
    fn central_ef(&self, first: Branch, second: Branch, u: C64) -> C64 {
        if first == second {
            c64(0.0, 0.0)
        } else {
            -first.sign() / (u * u)
        }
    }

    fn central_hh(&self, first: Branch, second: Branch, u: C64) -> C64 {
        if first == second {
            c64(0.0, 0.0)
        } else {
            -2.0 * first.sign() / (u * u)
        }
    }

    // [e, f] with the raising current first; outputs keep own-point branches
    fn bracket_ef(&self, eg: &RGen, fg: &RGen) -> Result<RElem> {
        let u = eg.point - fg.point;
        let k = self.kernel(u)?;
        let mut out = Element::zero();
        out.push(k, Generator::new(MKind::H, eg.branch, eg.point));
        out.push(-k, Generator::new(MKind::H, fg.branch, fg.point));
        out.central = self.central_ef(eg.branch, fg.branch, u);
        Ok(out)
    }

    // [h, x] for x raising (pm +1) or lowering (pm -1)
    fn bracket_hx(&self, hg: &RGen, xg: &RGen, pm: f64) -> Result<RElem> {
        let u = hg.point - xg.point;
        let k = self.kernel(u)?;
        let mut out = Element::zero();
        out.push(-pm * 2.0 * k, Generator::new(xg.kind, xg.branch, xg.point));
        out.push(pm * 2.0 * k, Generator::new(xg.kind, hg.branch, hg.point));
        Ok(out)
    }

    /// Bracket of two currents.
    pub fn bracket(&self, a: &RGen, b: &RGen) -> Result<RElem> {
        use MKind::*;
        match (a.kind, b.kind) {
            (E, E) | (F, F) => Ok(Element::zero()),
            (E, F) => self.bracket_ef(a, b),
            (F, E) => Ok(self.bracket_ef(b, a)?.scale(c64(-1.0, 0.0))),
            (H, E) => self.bracket_hx(a, b, 1.0),
            (E, H) => Ok(self.bracket_hx(b, a, 1.0)?.scale(c64(-1.0, 0.0))),
            (H, F) => self.bracket_hx(a, b, -1.0),
            (F, H) => Ok(self.bracket_hx(b, a, -1.0)?.scale(c64(-1.0, 0.0))),
            (H, H) => Ok(Element::central_only(self.central_hh(
                a.branch,
                b.branch,
                a.point - b.point,
            ))),
        }
    }

    /// Bracket extended to elements; the central part acts trivially.
    pub fn bracket_elements(&self, x: &RElem, y: &RElem) -> Result<RElem> {
        let mut out = Element::zero();
        for tx in &x.terms {
            for ty in &y.terms {
                let b = self.bracket(&tx.gen, &ty.gen)?;
                out = out.add(&b.scale(tx.coeff * ty.coeff));
            }
        }
        Ok(out)
    }

    /// Pairing between the two half-plane subalgebras; each subalgebra is
    /// isotropic, so same-branch pairings vanish identically.
    pub fn pair(&self, a: &RGen, b: &RGen) -> Result<C64> {
        use MKind::*;
        if a.branch == b.branch {
            return Ok(c64(0.0, 0.0));
        }
        let u = a.point - b.point;
        if u.norm() < 1e-12 {
            return Err(Error::CoincidentPoints);
        }
        let scale = match (a.kind, b.kind) {
            (E, F) | (F, E) => 1.0,
            (H, H) => 2.0,
            _ => return Ok(c64(0.0, 0.0)),
        };
        Ok(scale * a.branch.sign() * I / u)
    }

    /// Pairing extended to elements, dropping central parts.
    pub fn pair_elements(&self, x: &RElem, y: &RElem) -> Result<C64> {
        let mut acc = c64(0.0, 0.0);
        for tx in &x.terms {
            for ty in &y.terms {
                acc += tx.coeff * ty.coeff * self.pair(&tx.gen, &ty.gen)?;
            }
        }
        Ok(acc)
    }

    /// Residual of the cyclic bracket identity; the central coordinate is
    /// weighted by the numeric central charge.
    pub fn jacobi_residual(&self, x: &RGen, y: &RGen, z: &RGen, c: f64) -> Result<f64> {
        let xe = Element::from_term(c64(1.0, 0.0), *x);
        let ye = Element::from_term(c64(1.0, 0.0), *y);
        let ze = Element::from_term(c64(1.0, 0.0), *z);
        let mut acc = self.bracket_elements(&xe, &self.bracket(y, z)?)?;
        acc = acc.add(&self.bracket_elements(&ye, &self.bracket(z, x)?)?);
        acc = acc.add(&self.bracket_elements(&ze, &self.bracket(x, y)?)?);
        acc.central *= c;
        Ok(acc.canonical(1e-9).norm_max())
    }

    /// Residual of pairing invariance `<[x,y],z> + <y,[x,z]>`.
    pub fn invariance_residual(&self, x: &RGen, y: &RGen, z: &RGen) -> Result<f64> {
        let ye = Element::from_term(c64(1.0, 0.0), *y);
        let ze = Element::from_term(c64(1.0, 0.0), *z);
        let a = self.pair_elements(&self.bracket(x, y)?, &ze)?;
        let b = self.pair_elements(&ye, &self.bracket(x, z)?)?;
        Ok((a + b).norm())
    }
}

/// Step function with the half-value convention at zero.
pub fn theta(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Mode cobracket data: the step-difference kernel is constant on the
/// interval between 0 and the total mode, so it is returned as that
/// constant together with the central coefficient.
#[derive(Clone, Copy, Debug)]
pub struct ModeCobracket {
    /// Value of the kernel on the open interval between 0 and `lambda`,
    /// including the kind-dependent multiplicity.
    pub kernel: f64,
    /// Coefficient of (mode wedge c).
    pub c_term: f64,
}

/// Cobracket of a mode at `lambda`. The wedge slots are diagonal wedge
/// raising for E, lowering wedge diagonal for F, and raising wedge
/// lowering for H, with the diagonal (resp. first) index running over the
/// integration variable.
pub fn mode_cobracket(kind: MKind, lambda: f64) -> ModeCobracket {
    let step = theta(-lambda) - theta(lambda);
    let mult = match kind {
        MKind::E | MKind::F => 1.0,
        MKind::H => 2.0,
    };
    let sgn = if lambda > 0.0 {
        1.0
    } else if lambda < 0.0 {
        -1.0
    } else {
        0.0
    };
    ModeCobracket {
        kernel: mult * step,
        c_term: 0.5 * lambda * sgn,
    }
}

// ordered tensor slots of the cobracket of `kind` at total mode `sigma`,
// as (first kind, second kind, sign, first index is the integration
// variable). The wedge contributes the pair and its swap with a sign.
fn cobracket_slots(kind: MKind) -> [(MKind, MKind, f64, bool); 2] {
    use MKind::*;
    match kind {
        E => [(H, E, 1.0, true), (E, H, -1.0, false)],
        F => [(F, H, 1.0, false), (H, F, -1.0, true)],
        H => [(E, F, 1.0, true), (F, E, -1.0, false)],
    }
}

// smearing profiles with exact half-line support and a double zero at the
// origin, so all integrands are C^1
fn bump_pos(x: f64) -> f64 {
    if x > 0.0 {
        x * x * (-x).exp()
    } else {
        0.0
    }
}

fn bump_neg(x: f64) -> f64 {
    bump_pos(-x)
}

const BUMP_CUT: f64 = 48.0;

/// Residual of classical-double duality `<delta x, y (x) z> = <x, [y,z]>`
/// on smeared modes: `x` is smeared over positive modes (one isotropic
/// half), `y` and `z` over negative modes (the dual half). Both sides are
/// computed as nested quadratures sharing only the smearing profiles.
pub fn duality_residual(xk: MKind, yk: MKind, zk: MKind) -> Result<f64> {
    let tol = 1e-10;

    // left side: pair the cobracket slots against the smeared y and z
    let slots = cobracket_slots(xk);
    let lhs = quad::integrate_segment(
        |sigma: f64| {
            let kern = mode_cobracket(xk, sigma).kernel;
            let inner = quad::integrate_segment(
                |tau: f64| {
                    let mut s = 0.0;
                    for (k1, k2, sign, tau_first) in slots {
                        let (i1, i2) = if tau_first {
                            (tau, sigma - tau)
                        } else {
                            (sigma - tau, tau)
                        };
                        s += sign
                            * pair_mode(k1, yk)
                            * pair_mode(k2, zk)
                            * bump_neg(-i1)
                            * bump_neg(-i2);
                    }
                    c64(s, 0.0)
                },
                0.0,
                sigma,
                tol,
            )
            .map(|r| r.value)
            .unwrap_or(c64(0.0, 0.0));
            bump_pos(sigma) * kern * inner
        },
        0.0,
        BUMP_CUT,
        tol,
    )?
    .value;

    // right side: bracket the smeared y and z, then pair with x
    let mb = mode_bracket(yk, zk);
    let rhs = match mb.curr {
        None => c64(0.0, 0.0),
        Some((k, s)) => {
            let p = pair_mode(xk, k);
            if p == 0.0 {
                c64(0.0, 0.0)
            } else {
                quad::integrate_segment(
                    |sigma: f64| {
                        let conv = quad::integrate_segment(
                            |a: f64| c64(bump_neg(a) * bump_neg(-sigma - a), 0.0),
                            -sigma,
                            0.0,
                            tol,
                        )
                        .map(|r| r.value)
                        .unwrap_or(c64(0.0, 0.0));
                        bump_pos(sigma) * conv
                    },
                    0.0,
                    BUMP_CUT,
                    tol,
                )?
                .value
                    * s
                    * p
            }
        }
    };
    Ok((lhs - rhs).norm())
}

/// Difference between the strip kernels at scale `eta` and their rational
/// limits at separation `w`, for the raising/lowering and diagonal kinds.
pub fn kernel_limit_residual(alg: &TrigAlgebra, kind: MKind, w: C64) -> Result<f64> {
    let trig = match kind {
        MKind::E | MKind::F => alg.ef_kernel(w)?,
        MKind::H => alg.h_kernel(w)?,
    };
    Ok((trig - I / w).norm())
}

/// Residual curve of the strip-to-rational kernel limit over a list of
/// scales; `w` must stay inside every strip involved.
pub fn eta_to_zero_check(kind: MKind, w: C64, etas: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(etas.len());
    for &eta in etas {
        if w.im.abs() >= 0.5 / eta {
            return Err(Error::Domain {
                what: "separation outside the common validity substrip",
            });
        }
        out.push(kernel_limit_residual(&TrigAlgebra::new(eta), kind, w)?);
    }
    Ok(out)
}

/// One-sided Laplace transform of 1 with the oscillation direction chosen
/// by the half-plane of `w`; reproduces the rational kernel `i/w` (upper
/// half-plane) or `-i/w` (lower).
pub fn laplace_kernel(w: C64) -> Result<C64> {
    if w.im.abs() < 1e-6 {
        return Err(Error::Domain {
            what: "Laplace direction undefined on the real axis",
        });
    }
    let s = if w.im > 0.0 { 1.0 } else { -1.0 };
    let cutoff = 40.0 / w.im.abs();
    Ok(quad::integrate_segment(
        |l: f64| (s * I * l * w).exp(),
        0.0,
        cutoff,
        1e-11,
    )?
    .value)
}
