//! Free-boson realization of the total currents and the Wick calculus
//! that evaluates their vacuum expectations.
//!
//! A continuum of oscillator modes with `[a_lam, a_mu] = (lam/2) delta(lam+mu)`
//! carries the currents: the raising and lowering ones are normal-ordered
//! exponentials of smeared modes with weights `±2 e^{i lam u}/lam` and an
//! `e^{gamma}` prefactor, the diagonal one is linear with weight
//! `2 e^{i lam u}`, and its positive half carries the extra thermal factor
//! `1/(1 - e^{lam/eta})`.
//!
//! Pairing two insertions contracts the left weight at `+lam` against the
//! right weight at `-lam` under the mode density `lam/2`, integrated over a
//! keyhole wrapping the positive axis with a `ln(-lam)/(2 pi i)` weight.
//! Weights analytic at the origin collapse the keyhole to a plain half-line
//! integral; a simple pole leaves a finite regularized value. Either way the
//! number does not move when the lips are deformed, because the contour
//! never crosses a singularity. What the regularization does fix is the
//! overall constant of the raising-lowering pairing, so observables are
//! built from differences and ratios of pairings plus that one constant,
//! which the context measures once and caches.
//!
//! A pairing exists only where every term decays along the contour: a pure
//! phase needs `Im(left point) > Im(right point)`, and each thermal factor
//! contributes `1/eta` of extra decay. Orderings outside the band are
//! rejected, not analytically continued.

use crate::error::{Error, Result};
use crate::quad::{self, ContourSpec, TestFunction};
use crate::{c64, C64, I};
use alloc::vec::Vec;
use core::cell::Cell;
#[allow(unused_imports)]
use num_traits::Float;

/// Euler's constant; the exponential currents carry `e^{gamma}` in front,
/// which cancels the matching constant in their regularized pairings.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Multiplicative shape of one smearing term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModeFactor {
    /// Pure phase.
    One,
    /// Simple pole `1/lambda`.
    Inverse,
    /// Thermal weight `1/(1 - e^{lambda/eta})`.
    Thermal { eta: f64 },
}

/// One term `coef * e^{i lambda point} * factor(lambda)` of a smearing
/// function paired against the modes.
#[derive(Clone, Copy, Debug)]
pub struct ModeTerm {
    pub coef: C64,
    pub point: C64,
    pub factor: ModeFactor,
}

/// `prefactor * :exp(integral of the smeared modes):`.
#[derive(Clone, Debug)]
pub struct NormalExp {
    pub prefactor: C64,
    pub exponent: Vec<ModeTerm>,
}

/// A field insertion: a normal-ordered exponential or an operator linear
/// in the modes.
#[derive(Clone, Debug)]
pub enum FockOp {
    Exp(NormalExp),
    Linear(Vec<ModeTerm>),
}

impl FockOp {
    /// The smearing terms, whichever shape the insertion has.
    pub fn terms(&self) -> &[ModeTerm] {
        match self {
            FockOp::Exp(x) => &x.exponent,
            FockOp::Linear(t) => t,
        }
    }
}

/// Raising current: `e^{gamma} :exp(int 2 e^{i lam u}/lam a_lam):`.
pub fn e_current(u: C64) -> FockOp {
    FockOp::Exp(NormalExp {
        prefactor: c64(EULER_GAMMA.exp(), 0.0),
        exponent: alloc::vec![ModeTerm {
            coef: c64(2.0, 0.0),
            point: u,
            factor: ModeFactor::Inverse,
        }],
    })
}

/// Lowering current: the same shape with the opposite smearing sign.
pub fn f_current(u: C64) -> FockOp {
    FockOp::Exp(NormalExp {
        prefactor: c64(EULER_GAMMA.exp(), 0.0),
        exponent: alloc::vec![ModeTerm {
            coef: c64(-2.0, 0.0),
            point: u,
            factor: ModeFactor::Inverse,
        }],
    })
}

/// Diagonal current: `2 int e^{i lam u} a_lam dlam`, linear in the modes.
pub fn h_current(u: C64) -> FockOp {
    FockOp::Linear(alloc::vec![ModeTerm {
        coef: c64(2.0, 0.0),
        point: u,
        factor: ModeFactor::One,
    }])
}

/// Positive half of the diagonal current. The thermal weight widens its
/// pairing band by `1/eta` on one side and closes it on the other.
pub fn h_plus_current(u: C64, eta: f64) -> FockOp {
    assert!(eta > 0.0);
    FockOp::Linear(alloc::vec![ModeTerm {
        coef: c64(2.0, 0.0),
        point: u,
        factor: ModeFactor::Thermal { eta },
    }])
}

// A term evaluated at `-lambda`, rewritten over the original factors;
// the thermal weight splits as 1/(1 - e^{-x}) = 1 - 1/(1 - e^{x}).
fn reflected(t: &ModeTerm) -> ([ModeTerm; 2], usize) {
    match t.factor {
        ModeFactor::One => {
            let m = ModeTerm {
                coef: t.coef,
                point: -t.point,
                factor: ModeFactor::One,
            };
            ([m, m], 1)
        }
        ModeFactor::Inverse => {
            let m = ModeTerm {
                coef: -t.coef,
                point: -t.point,
                factor: ModeFactor::Inverse,
            };
            ([m, m], 1)
        }
        ModeFactor::Thermal { eta } => (
            [
                ModeTerm {
                    coef: t.coef,
                    point: -t.point,
                    factor: ModeFactor::One,
                },
                ModeTerm {
                    coef: -t.coef,
                    point: -t.point,
                    factor: ModeFactor::Thermal { eta },
                },
            ],
            2,
        ),
    }
}

// One elementary pairing integrand
// `coef * e^{i lam delta} * lam^power * prod bose(lam/eta)`,
// assembled from a left term and an already reflected right term.
struct Piece {
    coef: C64,
    delta: C64,
    power: i32,
    etas: [f64; 2],
    n_etas: usize,
}

fn piece(l: &ModeTerm, r: &ModeTerm) -> Piece {
    let mut p = Piece {
        coef: l.coef * r.coef * 0.5,
        delta: l.point + r.point,
        power: 1,
        etas: [0.0; 2],
        n_etas: 0,
    };
    for f in [l.factor, r.factor] {
        match f {
            ModeFactor::One => {}
            ModeFactor::Inverse => p.power -= 1,
            ModeFactor::Thermal { eta } => {
                // 1/(1 - e^{x}) = -(1/x) * x/(e^x - 1)
                p.power -= 1;
                p.coef *= -eta;
                p.etas[p.n_etas] = eta;
                p.n_etas += 1;
            }
        }
    }
    p
}

/// `x / (e^x - 1)`, stable through the origin.
fn bose_factor(x: C64) -> C64 {
    if x.norm() < 1e-3 {
        let x2 = x * x;
        1.0 - x * 0.5 + x2 * (1.0 / 12.0) - x2 * x2 * (1.0 / 720.0)
    } else {
        x / (x.exp() - 1.0)
    }
}

fn int_pow(z: C64, n: i32) -> C64 {
    match n {
        -1 => 1.0 / z,
        0 => c64(1.0, 0.0),
        1 => z,
        _ => {
            let mut v = c64(1.0, 0.0);
            for _ in 0..n {
                v *= z;
            }
            v
        }
    }
}

/// Evaluation context: keyhole lip geometry, quadrature tolerance, and the
/// cached raising-lowering constant.
#[derive(Clone, Debug)]
pub struct FockContext {
    pub epsilon: f64,
    pub r0: f64,
    pub tol: f64,
    ef_cache: Cell<Option<C64>>,
}

impl Default for FockContext {
    fn default() -> Self {
        Self::new()
    }
}

impl FockContext {
    pub fn new() -> Self {
        FockContext {
            epsilon: 1e-4,
            r0: 1e-3,
            tol: 1e-10,
            ef_cache: Cell::new(None),
        }
    }

    /// Move the keyhole lips; pairing values must not care.
    pub fn with_lips(mut self, epsilon: f64, r0: f64) -> Self {
        assert!(epsilon < r0);
        self.epsilon = epsilon;
        self.r0 = r0;
        self.ef_cache = Cell::new(None);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.ef_cache = Cell::new(None);
        self
    }

    fn piece_value(&self, p: &Piece) -> Result<C64> {
        let mut rate = p.delta.im;
        for eta in &p.etas[..p.n_etas] {
            rate += 1.0 / eta;
            // thermal poles at 2 pi i eta k must stay off the circle
            debug_assert!(self.r0 < core::f64::consts::TAU * eta);
        }
        if rate <= 0.0 {
            return Err(Error::OutOfBand {
                what: "mode pairing does not decay along the contour",
            });
        }
        debug_assert!(p.power >= -1);
        let cutoff = quad::cutoff_for_rate(rate);
        let f = |lam: C64| {
            let mut v = p.coef * (I * lam * p.delta).exp() * int_pow(lam, p.power);
            for eta in &p.etas[..p.n_etas] {
                v *= bose_factor(lam / *eta);
            }
            v
        };
        if p.power >= 0 {
            Ok(quad::integrate_segment(|x| f(c64(x, 0.0)), 0.0, cutoff, self.tol)?.value)
        } else {
            let spec = ContourSpec::keyhole(cutoff)
                .with_lips(self.epsilon, self.r0)
                .with_tol(self.tol);
            Ok(quad::integrate_keyhole_log(f, &spec)?.value)
        }
    }

    fn contraction(&self, left: &[ModeTerm], right: &[ModeTerm]) -> Result<C64> {
        let mut total = c64(0.0, 0.0);
        for l in left {
            for r in right {
                let (parts, n) = reflected(r);
                for part in &parts[..n] {
                    let p = piece(l, part);
                    if p.coef.norm_sqr() == 0.0 {
                        continue;
                    }
                    total += self.piece_value(&p)?;
                }
            }
        }
        Ok(total)
    }

    /// Scalar pairing of two ordered insertions, exposed for the
    /// exponent-law checks.
    pub fn pair_contraction(&self, left: &FockOp, right: &FockOp) -> Result<C64> {
        self.contraction(left.terms(), right.terms())
    }

    /// Normal-ordered product of two exponentials: the pairing exponentiates
    /// into the prefactor and the smearings concatenate.
    pub fn product_normal(&self, a: &NormalExp, b: &NormalExp) -> Result<NormalExp> {
        let pairing = self.contraction(&a.exponent, &b.exponent)?;
        let mut exponent = a.exponent.clone();
        exponent.extend_from_slice(&b.exponent);
        Ok(NormalExp {
            prefactor: a.prefactor * b.prefactor * pairing.exp(),
            exponent,
        })
    }

    /// Vacuum expectation of an ordered product. Exponentials contribute
    /// their prefactors and pairwise pairings; up to two linear insertions
    /// contract against everything else, split by side.
    pub fn vacuum_expectation(&self, ops: &[FockOp]) -> Result<C64> {
        let mut prefactors = c64(1.0, 0.0);
        let mut pair_log = c64(0.0, 0.0);
        for (i, op) in ops.iter().enumerate() {
            if let FockOp::Exp(x) = op {
                prefactors *= x.prefactor;
                for later in &ops[i + 1..] {
                    if let FockOp::Exp(y) = later {
                        pair_log += self.contraction(&x.exponent, &y.exponent)?;
                    }
                }
            }
        }

        let mut amps: [C64; 2] = [c64(0.0, 0.0); 2];
        let mut lin: [usize; 2] = [0; 2];
        let mut n_lin = 0;
        for (k, op) in ops.iter().enumerate() {
            if let FockOp::Linear(terms) = op {
                if n_lin == 2 {
                    return Err(Error::Domain {
                        what: "more than two linear insertions",
                    });
                }
                let mut amp = c64(0.0, 0.0);
                for (j, other) in ops.iter().enumerate() {
                    if let FockOp::Exp(x) = other {
                        amp += if j < k {
                            self.contraction(&x.exponent, terms)?
                        } else {
                            self.contraction(terms, &x.exponent)?
                        };
                    }
                }
                amps[n_lin] = amp;
                lin[n_lin] = k;
                n_lin += 1;
            }
        }
        let linear_part = match n_lin {
            0 => c64(1.0, 0.0),
            1 => amps[0],
            _ => {
                let direct = self.contraction(ops[lin[0]].terms(), ops[lin[1]].terms())?;
                direct + amps[0] * amps[1]
            }
        };
        Ok(prefactors * pair_log.exp() * linear_part)
    }

    /// The constant `<e(u) f(v)> (u - v)^2`, measured once per context at a
    /// reference separation and cached.
    pub fn ef_constant(&self) -> Result<C64> {
        if let Some(k) = self.ef_cache.get() {
            return Ok(k);
        }
        let d = c64(0.0, 1.0);
        let val = self.vacuum_expectation(&[e_current(d), f_current(c64(0.0, 0.0))])?;
        let k = val * d * d;
        self.ef_cache.set(Some(k));
        Ok(k)
    }

    /// Eigenvalue of the positive diagonal half on a raising or lowering
    /// insertion, read off inside a three-point function: the witness and
    /// its own pairings drop out of `(<w h+ t> - <w t h+>) / <w t>`.
    pub fn half_current_eigenvalue(
        &self,
        u: C64,
        eta: f64,
        target: &FockOp,
        witness: &FockOp,
    ) -> Result<C64> {
        let hp = h_plus_current(u, eta);
        let t1 = self.vacuum_expectation(&[witness.clone(), hp.clone(), target.clone()])?;
        let t2 = self.vacuum_expectation(&[witness.clone(), target.clone(), hp])?;
        let pair = self.vacuum_expectation(&[witness.clone(), target.clone()])?;
        if pair.norm() < 1e-14 {
            return Err(Error::Pole {
                what: "witness pairing vanishes",
            });
        }
        Ok((t1 - t2) / pair)
    }

    /// Smeared commutator of the raising and lowering currents:
    /// `int s(x) [<e(x + i delta) f(v)> - <f(v) e(x - i delta)>] dx`,
    /// each ordering evaluated inside its own boundary-value prescription.
    pub fn smeared_ef_commutator(&self, s: &TestFunction, v: f64, delta: f64) -> Result<C64> {
        if delta <= 0.0 {
            return Err(Error::Domain {
                what: "prescription width must be positive",
            });
        }
        let shift = c64(0.0, delta);
        let vv = c64(v, 0.0);
        let bad = c64(f64::NAN, 0.0);
        let f = |x: f64| {
            let xe = c64(x, 0.0);
            let up = self
                .vacuum_expectation(&[e_current(xe + shift), f_current(vv)])
                .unwrap_or(bad);
            let down = self
                .vacuum_expectation(&[f_current(vv), e_current(xe - shift)])
                .unwrap_or(bad);
            s.eval(xe) * (up - down)
        };
        let val = split_integral(f, s, v, delta, self.tol)?;
        if !val.re.is_finite() || !val.im.is_finite() {
            return Err(Error::NonConvergent {
                what: "pairing failed inside the smearing integral",
            });
        }
        Ok(val)
    }

    /// The same prescription applied to the bare double pole:
    /// `int s(x) [(x - v + i delta)^{-2} - (x - v - i delta)^{-2}] dx`.
    /// As `delta` tightens this tends to `-2 pi i s'(v)`.
    pub fn boundary_value_oracle(&self, s: &TestFunction, v: f64, delta: f64) -> Result<C64> {
        if delta <= 0.0 {
            return Err(Error::Domain {
                what: "prescription width must be positive",
            });
        }
        let shift = c64(0.0, delta);
        let f = |x: f64| {
            let w = c64(x - v, 0.0);
            let a = w + shift;
            let b = w - shift;
            s.eval(c64(x, 0.0)) * (1.0 / (a * a) - 1.0 / (b * b))
        };
        split_integral(f, s, v, delta, self.tol)
    }

    /// Ratio of the smeared commutator to the boundary-value oracle. Both
    /// sides carry the same smearing and the same width, so the ratio is
    /// the raising-lowering constant for every test function and every
    /// prescription width.
    pub fn smeared_central_constant(&self, s: &TestFunction, v: f64, delta: f64) -> Result<C64> {
        let t = self.smeared_ef_commutator(s, v, delta)?;
        let o = self.boundary_value_oracle(s, v, delta)?;
        if o.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "oracle vanishes at a stationary base point",
            });
        }
        Ok(t / o)
    }
}

// The smearing integrals resolve two scales, the test function's support
// and the prescription width around the base point, so the line is cut
// there before handing the pieces to the quadrature.
fn split_integral(
    mut f: impl FnMut(f64) -> C64,
    s: &TestFunction,
    v: f64,
    delta: f64,
    tol: f64,
) -> Result<C64> {
    let r = s.decay_radius(1e-12, 0.0);
    let lo = v.min(s.z0.re) - r;
    let hi = v.max(s.z0.re) + r;
    let m1 = (v - 50.0 * delta).clamp(lo, hi);
    let m2 = (v + 50.0 * delta).clamp(lo, hi);
    let cuts = [lo, m1, m2, hi];
    let mut total = c64(0.0, 0.0);
    for k in 0..3 {
        if cuts[k + 1] > cuts[k] {
            total += quad::integrate_segment(&mut f, cuts[k], cuts[k + 1], tol)?.value;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Branch;
    use crate::trig::modes::{self, MKind};
    use crate::trig::TrigAlgebra;

    fn ctx() -> FockContext {
        FockContext::new()
    }

    #[test]
    fn vacuum_collapses_to_prefactors() {
        let c = ctx();
        assert_eq!(c.vacuum_expectation(&[]).unwrap(), c64(1.0, 0.0));
        let single = c.vacuum_expectation(&[e_current(c64(0.3, 0.2))]).unwrap();
        assert!((single - EULER_GAMMA.exp()).norm() < 1e-14);
        let lone_linear = c.vacuum_expectation(&[h_current(c64(-0.1, 0.4))]).unwrap();
        assert!(lone_linear.norm() < 1e-14);
    }

    #[test]
    fn diagonal_pair_carries_the_second_moment() {
        let c = ctx();
        for (u, v) in [
            (c64(0.3, 0.45), c64(-0.2, 0.05)),
            (c64(0.0, 0.7), c64(0.0, 0.1)),
        ] {
            let val = c
                .vacuum_expectation(&[h_current(u), h_current(v)])
                .unwrap();
            let d = u - v;
            assert!((val * d * d + 2.0).norm() < 1e-9);
        }
    }

    #[test]
    fn diagonal_against_exponential_picks_the_first_moment() {
        let c = ctx();
        let (u, v) = (c64(0.1, 0.6), c64(0.4, 0.1));
        let d = u - v;
        let pref = EULER_GAMMA.exp();
        let he = c
            .vacuum_expectation(&[h_current(u), e_current(v)])
            .unwrap();
        assert!((he / pref + 2.0 * I / d).norm() < 1e-10);
        let eh = c
            .vacuum_expectation(&[e_current(u), h_current(v)])
            .unwrap();
        assert!((eh / pref - 2.0 * I / d).norm() < 1e-10);
    }

    #[test]
    fn exponential_pair_exponents_follow_the_log_law() {
        let c = ctx();
        let (u1, v1) = (c64(0.25, 0.5), c64(-0.25, 0.1));
        let (u2, v2) = (c64(-0.1, 0.75), c64(0.2, 0.15));
        let d1 = u1 - v1;
        let d2 = u2 - v2;
        let jef = c.pair_contraction(&e_current(u1), &f_current(v1)).unwrap()
            - c.pair_contraction(&e_current(u2), &f_current(v2)).unwrap();
        assert!((jef + 2.0 * (d1 / d2).ln()).norm() < 1e-9);
        let jee = c.pair_contraction(&e_current(u1), &e_current(v1)).unwrap()
            - c.pair_contraction(&e_current(u2), &e_current(v2)).unwrap();
        assert!((jee - 2.0 * (d1 / d2).ln()).norm() < 1e-9);
    }

    #[test]
    fn raising_lowering_constant_is_point_independent() {
        let c = ctx();
        let k = c.ef_constant().unwrap();
        for (u, v) in [
            (c64(0.4, 0.35), c64(-0.3, -0.15)),
            (c64(-0.2, 0.9), c64(0.5, 0.2)),
        ] {
            let val = c
                .vacuum_expectation(&[e_current(u), f_current(v)])
                .unwrap();
            let d = u - v;
            assert!((val * d * d - k).norm() < 1e-8);
        }
        // the gamma prefactors cancel the regularization's own constant,
        // so the measured number resums to minus one
        assert!((k + 1.0).norm() < 1e-9);
    }

    #[test]
    fn pairings_survive_a_lip_change() {
        let base = FockContext::new();
        let half = FockContext::new().with_lips(5e-5, 5e-4);
        let (u, v) = (c64(0.3, 0.55), c64(-0.15, 0.1));
        let a = base.pair_contraction(&e_current(u), &f_current(v)).unwrap();
        let b = half.pair_contraction(&e_current(u), &f_current(v)).unwrap();
        assert!((a - b).norm() < 1e-8);
        let ka = base.ef_constant().unwrap();
        let kb = half.ef_constant().unwrap();
        assert!((ka - kb).norm() < 1e-7);
    }

    #[test]
    fn normal_products_associate_and_absorb_units() {
        let c = ctx();
        let gauss = |coef: C64, z: C64| NormalExp {
            prefactor: c64(1.0, 0.0),
            exponent: alloc::vec![ModeTerm {
                coef,
                point: z,
                factor: ModeFactor::One,
            }],
        };
        let a = gauss(c64(0.7, 0.1), c64(0.2, 0.9));
        let b = gauss(c64(-0.4, 0.3), c64(-0.1, 0.45));
        let d = gauss(c64(0.25, -0.2), c64(0.3, 0.1));
        let left = c
            .product_normal(&c.product_normal(&a, &b).unwrap(), &d)
            .unwrap();
        let right = c
            .product_normal(&a, &c.product_normal(&b, &d).unwrap())
            .unwrap();
        assert!((left.prefactor - right.prefactor).norm() < 1e-10 * right.prefactor.norm());
        assert_eq!(left.exponent.len(), 3);

        let unit = NormalExp {
            prefactor: c64(1.7, -0.3),
            exponent: alloc::vec![],
        };
        let scaled = c.product_normal(&a, &unit).unwrap();
        assert_eq!(scaled.prefactor, a.prefactor * unit.prefactor);
        assert_eq!(scaled.exponent.len(), 1);
    }

    #[test]
    fn orderings_outside_the_decay_band_are_rejected() {
        let c = ctx();
        let res = c.vacuum_expectation(&[e_current(c64(0.0, 0.1)), f_current(c64(0.0, 0.4))]);
        assert!(matches!(res, Err(Error::OutOfBand { .. })));
        let three = alloc::vec![h_current(c64(0.0, 0.5)); 3];
        assert!(matches!(
            c.vacuum_expectation(&three),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn half_current_action_reproduces_the_thermal_kernel() {
        let c = ctx();
        let eta = 1.0;
        let alg = TrigAlgebra::new(eta);
        let u = c64(0.0, -0.5);
        let v = c64(0.2, -0.3);
        let w = u - v;
        let e = e_current(v);
        let d1 = c
            .half_current_eigenvalue(u, eta, &e, &f_current(c64(-0.4, -0.1)))
            .unwrap();
        let d2 = c
            .half_current_eigenvalue(u, eta, &e, &f_current(c64(0.5, -0.05)))
            .unwrap();
        // the witness current drops out of the ratio
        assert!((d1 - d2).norm() < 1e-8);

        let reference =
            -2.0 * modes::mode_kernel_integral(&alg, MKind::H, Branch::Plus, w).unwrap();
        assert!((d1 - reference).norm() < 1e-6);
        let closed = 2.0 * alg.h_kernel(w).unwrap();
        assert!((d1 - closed).norm() < 1e-6);

        // swapping raising for lowering flips the sign
        let df = c
            .half_current_eigenvalue(u, eta, &f_current(v), &e_current(c64(-0.4, -0.1)))
            .unwrap();
        assert!((d1 + df).norm() < 1e-8);
    }

    #[test]
    fn smeared_commutator_extracts_one_central_constant() {
        let c = FockContext::new().with_tol(1e-9);
        let v = 0.1;
        let delta = 0.25;
        let funcs = [
            TestFunction::new(2.0, c64(0.5, 0.0), c64(0.0, 0.0)),
            TestFunction::new(2.6, c64(-0.3, 0.0), c64(0.4, 0.0)),
            TestFunction::new(2.2, c64(0.9, 0.0), c64(-0.3, 0.0)),
            TestFunction::new(3.0, c64(0.2, 0.0), c64(0.15, 0.0)),
            TestFunction::new(2.4, c64(-0.7, 0.0), c64(0.25, 0.0)),
        ];
        let mut ks = [c64(0.0, 0.0); 5];
        for (i, s) in funcs.iter().enumerate() {
            ks[i] = c.smeared_central_constant(s, v, delta).unwrap();
        }
        let mean = (ks[0] + ks[1] + ks[2] + ks[3] + ks[4]) / 5.0;
        for k in ks {
            assert!((k - mean).norm() < 1e-6 * mean.norm());
        }
        // and it is the same constant the two-point function carries
        let kef = c.ef_constant().unwrap();
        assert!((ks[0] - kef).norm() < 1e-6 * kef.norm());
    }

    #[test]
    fn smeared_commutator_follows_the_derivative_at_the_base_point() {
        let c = FockContext::new().with_tol(1e-9);
        let v = 0.1;
        // the oracle tends to the delta-prime action as the prescription
        // tightens; the kernel's cubic tails make the leading correction
        // first order in the width, so two widths extrapolate it away
        let s = TestFunction::new(2.0, c64(0.5, 0.0), c64(0.0, 0.0));
        let o1 = c.boundary_value_oracle(&s, v, 2e-3).unwrap();
        let o2 = c.boundary_value_oracle(&s, v, 1e-3).unwrap();
        let pred = c64(0.0, -2.0 * core::f64::consts::PI) * s.deriv(c64(v, 0.0));
        assert!(((2.0 * o2 - o1) / pred - 1.0).norm() < 1e-4);
        // a test function stationary at the base point smears to zero
        let flat = TestFunction::new(2.5, c64(0.0, 0.0), c64(v, 0.0));
        let t0 = c.smeared_ef_commutator(&flat, v, 0.25).unwrap();
        let t1 = c.smeared_ef_commutator(&s, v, 0.25).unwrap();
        assert!(t0.norm() < 1e-6 * t1.norm());
    }
}
