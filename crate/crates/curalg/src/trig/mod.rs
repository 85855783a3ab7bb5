//! Current algebra with hyperbolic-secant type kernels on a horizontal
//! strip of width 1/eta.
//!
//! Currents come in three kinds (raising `E`, lowering `F`, diagonal `H`)
//! and two branches tied to the strip a point lives on: `Plus` for
//! `-1/eta < Im u < 0`, `Minus` for `0 < Im u < 1/eta`. Brackets of currents
//! close on currents plus a central term; the central coefficients are the
//! values of a two-cocycle with known closed forms, kept here next to the
//! bracket so the algebra is usable standalone. The companion submodules
//! check those closed forms against their integral representations.

pub mod cocycle;
pub mod modes;

use crate::element::{Branch, Element, Generator};
use crate::error::{Error, Result};
use crate::{c64, C64, I};
use core::f64::consts::PI;
#[cfg(test)]
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    E,
    F,
    H,
}

pub type TGen = Generator<TrigKind>;
pub type TElem = Element<TrigKind>;

/// x / sinh x with the removable point at zero handled by series.
pub fn x_over_sinh(x: C64) -> C64 {
    if x.norm() < 1e-3 {
        let x2 = x * x;
        c64(1.0, 0.0) - x2 / 6.0 + 7.0 * x2 * x2 / 360.0
    } else {
        x / x.sinh()
    }
}

/// x coth x with the removable point at zero handled by series.
pub fn x_coth(x: C64) -> C64 {
    if x.norm() < 1e-3 {
        let x2 = x * x;
        c64(1.0, 0.0) + x2 / 3.0 - x2 * x2 / 45.0
    } else {
        x * x.cosh() / x.sinh()
    }
}

// (x cosh x - sinh x) / sinh^2 x, regular at zero
pub(crate) fn ef_cocycle_shape(x: C64) -> C64 {
    if x.norm() < 1e-3 {
        x / 3.0 - 7.0 * x * x * x / 90.0
    } else {
        let sh = x.sinh();
        (x * x.cosh() - sh) / (sh * sh)
    }
}

// x / sinh^2 x - coth x, regular at zero
pub(crate) fn hh_cocycle_shape(x: C64) -> C64 {
    if x.norm() < 1e-3 {
        -2.0 * x / 3.0 + 4.0 * x * x * x / 45.0
    } else {
        let sh = x.sinh();
        (x - sh * x.cosh()) / (sh * sh)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TrigAlgebra {
    pub eta: f64,
}

impl TrigAlgebra {
    pub fn new(eta: f64) -> Self {
        assert!(eta > 0.0, "kernel scale must be positive");
        TrigAlgebra { eta }
    }

    /// Strip of a branch as (lower, upper) imaginary bounds.
    pub fn strip(&self, branch: Branch) -> (f64, f64) {
        match branch {
            Branch::Plus => (-1.0 / self.eta, 0.0),
            Branch::Minus => (0.0, 1.0 / self.eta),
        }
    }

    /// Check a generator sits strictly inside its branch strip.
    pub fn validate(&self, g: &TGen) -> Result<()> {
        let (lo, hi) = self.strip(g.branch);
        let im = g.point.im;
        if im > lo + 1e-9 && im < hi - 1e-9 {
            Ok(())
        } else {
            Err(Error::StripViolation { im, lo, hi })
        }
    }

    /// Validated generator constructor.
    pub fn gen(&self, kind: TrigKind, branch: Branch, point: C64) -> Result<TGen> {
        let g = Generator::new(kind, branch, point);
        self.validate(&g)?;
        Ok(g)
    }

    /// Kernel attached to raising and lowering currents, as a function of
    /// the separation.
    pub fn ef_kernel(&self, w: C64) -> Result<C64> {
        let x = PI * self.eta * w;
        let sh = x.sinh();
        if sh.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "separation on the kernel pole lattice",
            });
        }
        Ok(I * PI * self.eta / sh)
    }

    /// Kernel attached to the diagonal current.
    pub fn h_kernel(&self, w: C64) -> Result<C64> {
        let x = PI * self.eta * w;
        let sh = x.sinh();
        if sh.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "separation on the kernel pole lattice",
            });
        }
        Ok(I * PI * self.eta * x.cosh() / sh)
    }

    /// Kernel of a current as a function on the strip, `z` the running
    /// variable and `p` the current's point. Closed form is shared by the
    /// two branches; the branch only selects which strip the formula is
    /// read on.
    pub fn current_kernel(&self, kind: TrigKind, z: C64, p: C64) -> Result<C64> {
        match kind {
            TrigKind::E | TrigKind::F => self.ef_kernel(z - p),
            TrigKind::H => self.h_kernel(z - p),
        }
    }

    // central coefficient for a raising/lowering pair, first argument's
    // branch fixing the shift direction when branches differ
    fn cocycle_ef(&self, first: Branch, second: Branch, u: C64) -> Result<C64> {
        let eta = self.eta;
        let x = PI * eta * u;
        let pref = I * PI * eta * eta;
        if first == second {
            return Ok(pref * ef_cocycle_shape(x));
        }
        let sh = x.sinh();
        if sh.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "mixed-branch cocycle at coincident points",
            });
        }
        let shifted = PI * eta * (u + first.sign() * I / eta);
        Ok(pref * (shifted * x.cosh() / (sh * sh) - 1.0 / sh))
    }

    // central coefficient for a pair of diagonal currents
    fn cocycle_hh(&self, first: Branch, second: Branch, u: C64) -> Result<C64> {
        let eta = self.eta;
        let x = PI * eta * u;
        let pref = 2.0 * I * PI * eta * eta;
        if first == second {
            return Ok(pref * hh_cocycle_shape(x));
        }
        let sh = x.sinh();
        if sh.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "mixed-branch cocycle at coincident points",
            });
        }
        let shifted = PI * eta * (u + first.sign() * I / eta);
        Ok(pref * (shifted / (sh * sh) - x.cosh() / sh))
    }

    /// Central two-cocycle on a pair of currents. Zero whenever the
    /// underlying trace form vanishes.
    pub fn cocycle(&self, a: &TGen, b: &TGen) -> Result<C64> {
        use TrigKind::*;
        let u = a.point - b.point;
        match (a.kind, b.kind) {
            (E, F) => self.cocycle_ef(a.branch, b.branch, u),
            (F, E) => Ok(-(self.cocycle_ef(b.branch, a.branch, -u)?)),
            (H, H) => self.cocycle_hh(a.branch, b.branch, u),
            _ => Ok(c64(0.0, 0.0)),
        }
    }

    // [e, f] with the raising current first; each output current keeps
    // the branch of the input whose point it sits at
    fn bracket_ef(&self, eg: &TGen, fg: &TGen) -> Result<TElem> {
        let u = eg.point - fg.point;
        let k = self.ef_kernel(u)?;
        let mut out = Element::zero();
        out.push(k, Generator::new(TrigKind::H, eg.branch, eg.point));
        out.push(-k, Generator::new(TrigKind::H, fg.branch, fg.point));
        out.central = self.cocycle_ef(eg.branch, fg.branch, u)?;
        Ok(out)
    }

    // [h, x] for x a raising (pm +1) or lowering (pm -1) current
    fn bracket_hx(&self, hg: &TGen, xg: &TGen, pm: f64) -> Result<TElem> {
        let u = hg.point - xg.point;
        let x = PI * self.eta * u;
        let sh = x.sinh();
        if sh.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "bracket at coincident points",
            });
        }
        let two_i_pi_eta = 2.0 * I * PI * self.eta;
        let mut out = Element::zero();
        out.push(
            -pm * two_i_pi_eta * x.cosh() / sh,
            Generator::new(xg.kind, xg.branch, xg.point),
        );
        out.push(
            pm * two_i_pi_eta / sh,
            Generator::new(xg.kind, hg.branch, hg.point),
        );
        Ok(out)
    }

    /// Bracket of two currents. Points of the result may continue outside
    /// the branch strips; kernels extend there, only the labels travel.
    pub fn bracket(&self, a: &TGen, b: &TGen) -> Result<TElem> {
        use TrigKind::*;
        match (a.kind, b.kind) {
            (E, E) | (F, F) => Ok(Element::zero()),
            (E, F) => self.bracket_ef(a, b),
            (F, E) => Ok(self.bracket_ef(b, a)?.scale(c64(-1.0, 0.0))),
            (H, E) => self.bracket_hx(a, b, 1.0),
            (E, H) => Ok(self.bracket_hx(b, a, 1.0)?.scale(c64(-1.0, 0.0))),
            (H, F) => self.bracket_hx(a, b, -1.0),
            (F, H) => Ok(self.bracket_hx(b, a, -1.0)?.scale(c64(-1.0, 0.0))),
            (H, H) => Ok(Element::central_only(
                self.cocycle_hh(a.branch, b.branch, a.point - b.point)?,
            )),
        }
    }

    /// Bracket extended to elements; the central part acts trivially.
    pub fn bracket_elements(&self, x: &TElem, y: &TElem) -> Result<TElem> {
        let mut out = Element::zero();
        for tx in &x.terms {
            for ty in &y.terms {
                let b = self.bracket(&tx.gen, &ty.gen)?;
                out = out.add(&b.scale(tx.coeff * ty.coeff));
            }
        }
        Ok(out)
    }

    // invariant pairing of a raising/lowering pair, raising current first
    fn pair_ef(&self, eg: &TGen, fg: &TGen) -> Result<C64> {
        let eta = self.eta;
        let u = eg.point - fg.point;
        let x = PI * eta * u;
        if eg.branch == fg.branch {
            return Ok(eta * x_over_sinh(x));
        }
        let sh = x.sinh();
        if sh.norm() < 1e-12 {
            return Err(Error::CoincidentPoints);
        }
        Ok(PI * eta * eta * (u + eg.branch.sign() * I / eta) / sh)
    }

    /// Symmetric invariant pairing of two currents; the central element
    /// pairs to zero.
    pub fn pair(&self, a: &TGen, b: &TGen) -> Result<C64> {
        use TrigKind::*;
        let eta = self.eta;
        match (a.kind, b.kind) {
            (E, F) => self.pair_ef(a, b),
            (F, E) => self.pair_ef(b, a),
            (H, H) => {
                let u = a.point - b.point;
                let x = PI * eta * u;
                if a.branch == b.branch {
                    return Ok(2.0 * eta * x_coth(x));
                }
                let sh = x.sinh();
                if sh.norm() < 1e-12 {
                    return Err(Error::CoincidentPoints);
                }
                Ok(2.0 * PI * eta * eta * (u + a.branch.sign() * I / eta) * x.cosh() / sh)
            }
            _ => Ok(c64(0.0, 0.0)),
        }
    }

    /// Pairing extended to elements, dropping central parts.
    pub fn pair_elements(&self, x: &TElem, y: &TElem) -> Result<C64> {
        let mut acc = c64(0.0, 0.0);
        for tx in &x.terms {
            for ty in &y.terms {
                acc += tx.coeff * ty.coeff * self.pair(&tx.gen, &ty.gen)?;
            }
        }
        Ok(acc)
    }

    /// Rescaling map onto the algebra with kernel scale `eta_new`: points
    /// and coefficients both scale by `eta / eta_new`, the central part is
    /// untouched. Intertwines the two brackets exactly.
    pub fn rescale(&self, x: &TElem, eta_new: f64) -> TElem {
        let f = self.eta / eta_new;
        let factor = c64(f, 0.0);
        TElem {
            terms: x
                .terms
                .iter()
                .map(|t| crate::element::Term {
                    coeff: factor * t.coeff,
                    gen: Generator::new(t.gen.kind, t.gen.branch, t.gen.point * f),
                })
                .collect(),
            central: x.central,
        }
    }

    /// Relabel every minus-branch generator through the connecting
    /// identity onto the plus branch (shifted point, sign flip for raising
    /// and lowering currents). Points may leave the plus strip; this is a
    /// relabeling of the same current, not a move.
    pub fn to_plus(&self, x: &TElem) -> TElem {
        let shift = I / self.eta;
        let mut out = Element::zero();
        out.central = x.central;
        for t in &x.terms {
            match t.gen.branch {
                Branch::Plus => out.push(t.coeff, t.gen),
                Branch::Minus => {
                    let sign = match t.gen.kind {
                        TrigKind::H => 1.0,
                        _ => -1.0,
                    };
                    out.push(
                        sign * t.coeff,
                        Generator::new(t.gen.kind, Branch::Plus, t.gen.point - shift),
                    );
                }
            }
        }
        out
    }

    /// Residual of the cyclic bracket identity on three currents.
    pub fn jacobi_residual(&self, x: &TGen, y: &TGen, z: &TGen) -> Result<f64> {
        let xe = Element::from_term(c64(1.0, 0.0), *x);
        let ye = Element::from_term(c64(1.0, 0.0), *y);
        let ze = Element::from_term(c64(1.0, 0.0), *z);
        let mut acc = self.bracket_elements(&xe, &self.bracket(y, z)?)?;
        acc = acc.add(&self.bracket_elements(&ye, &self.bracket(z, x)?)?);
        acc = acc.add(&self.bracket_elements(&ze, &self.bracket(x, y)?)?);
        Ok(acc.canonical(1e-9).norm_max())
    }

    /// Residual of pairing invariance under the bracket:
    /// `<[x,y], z> + <y, [x,z]>`.
    pub fn invariance_residual(&self, x: &TGen, y: &TGen, z: &TGen) -> Result<f64> {
        let ye = Element::from_term(c64(1.0, 0.0), *y);
        let ze = Element::from_term(c64(1.0, 0.0), *z);
        let a = self.pair_elements(&self.bracket(x, y)?, &ze)?;
        let b = self.pair_elements(&ye, &self.bracket(x, z)?)?;
        Ok((a + b).norm())
    }
}
