//! Current algebra with doubly periodic kernels: three currents tied to
//! the Pauli directions, each in two branches separated by the imaginary
//! half-period iK', with a central extension measured by a tau-derivative.
//!
//! The kernels are the Jacobi quotients ns, ds, cs. A minus-branch
//! current is the plus-branch current at a point shifted down by iK', so
//! every pair law reduces to the same-branch law at effective points:
//! cross-index brackets close on the third current weighted by kernels of
//! the effective separation, same-index brackets are purely central with
//! value (1/K) d/dtau of the kernel there, the derivative taken at fixed
//! argument. On top of the currents sit the classical r-matrix, its
//! Yang-Baxter residual, and the 2x2 operator matrix identity that ties
//! the brackets to r and its tau-derivative.

pub mod baxter;
pub mod series;

use crate::element::{Branch, Element, ElementMat, Generator};
use crate::error::{Error, Result};
use crate::mat::{sigma, CMat};
use crate::specfun::theta::ThetaLattice;
use crate::{c64, C64, I};

/// Pauli direction labelling a current.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaKind {
    S1,
    S2,
    S3,
}

impl SigmaKind {
    pub const ALL: [SigmaKind; 3] = [SigmaKind::S1, SigmaKind::S2, SigmaKind::S3];

    pub fn index(self) -> usize {
        match self {
            SigmaKind::S1 => 1,
            SigmaKind::S2 => 2,
            SigmaKind::S3 => 3,
        }
    }

    /// The two directions following this one cyclically.
    pub fn cyclic_successors(self) -> (SigmaKind, SigmaKind) {
        match self {
            SigmaKind::S1 => (SigmaKind::S2, SigmaKind::S3),
            SigmaKind::S2 => (SigmaKind::S3, SigmaKind::S1),
            SigmaKind::S3 => (SigmaKind::S1, SigmaKind::S2),
        }
    }

    // the direction completing {self, other} and the sign of the
    // structure constant eps(self, other, third), when the two differ
    pub(crate) fn completes(self, other: SigmaKind) -> Option<(SigmaKind, f64)> {
        if self == other {
            return None;
        }
        let (b, c) = self.cyclic_successors();
        if other == b {
            Some((c, 1.0))
        } else {
            Some((b, -1.0))
        }
    }

    // sign picked up by the kernel family under a 2iK' translation
    pub(crate) fn shift_sign(self) -> f64 {
        match self {
            SigmaKind::S1 => 1.0,
            _ => -1.0,
        }
    }
}

pub type SGen = Generator<SigmaKind>;
pub type SElem = Element<SigmaKind>;

/// Antisymmetrized pair of currents, the value of the cobracket.
#[derive(Clone, Copy, Debug)]
pub struct Wedge {
    pub left: SGen,
    pub right: SGen,
}

/// The algebra, carrying its period lattice.
#[derive(Clone, Debug)]
pub struct EllipticAlgebra {
    pub lat: ThetaLattice,
}

impl EllipticAlgebra {
    pub fn new(modulus: f64) -> Result<Self> {
        Ok(EllipticAlgebra {
            lat: ThetaLattice::from_modulus(modulus)?,
        })
    }

    pub fn from_tau(tau: C64) -> Result<Self> {
        Ok(EllipticAlgebra {
            lat: ThetaLattice::from_tau(tau)?,
        })
    }

    /// The imaginary half-period iK' separating the two branches.
    pub fn half_period(&self) -> C64 {
        self.lat.tau * self.lat.big_k
    }

    fn offset(&self, b: Branch) -> C64 {
        match b {
            Branch::Plus => c64(0.0, 0.0),
            Branch::Minus => self.half_period(),
        }
    }

    // separation of the pair in the common frame, where both currents
    // read as plus-branch
    fn effective_separation(&self, x: &SGen, y: &SGen) -> C64 {
        (x.point - self.offset(x.branch)) - (y.point - self.offset(y.branch))
    }

    /// Plus-branch kernel family: ns, ds, cs.
    pub fn omega(&self, a: SigmaKind, w: C64) -> Result<C64> {
        match a {
            SigmaKind::S1 => self.lat.ns(w),
            SigmaKind::S2 => self.lat.ds(w),
            SigmaKind::S3 => self.lat.cs(w),
        }
    }

    /// Fixed-argument tau-derivative of [`omega`](Self::omega).
    pub fn omega_dtau(&self, a: SigmaKind, w: C64) -> Result<C64> {
        match a {
            SigmaKind::S1 => self.lat.dns_dtau(w),
            SigmaKind::S2 => self.lat.dds_dtau(w),
            SigmaKind::S3 => self.lat.dcs_dtau(w),
        }
    }

    /// Argument derivative of [`omega`](Self::omega): the quotient family
    /// closes under differentiation, d(omega_a)/dw = -omega_b omega_c.
    pub fn omega_dw(&self, a: SigmaKind, w: C64) -> Result<C64> {
        let (b, c) = a.cyclic_successors();
        Ok(-(self.omega(b, w)? * self.omega(c, w)?))
    }

    /// Kernel of a current at separation `w` from its point. The minus
    /// branch reads the plus kernel half a period down, which lands on
    /// the shifted family (k sn, -i k cn, -i dn) with signs (+, -, -).
    pub fn sigma_kernel(&self, a: SigmaKind, branch: Branch, w: C64) -> Result<C64> {
        match branch {
            Branch::Plus => self.omega(a, w),
            Branch::Minus => {
                let m = match a {
                    SigmaKind::S1 => self.lat.ksn(w)?,
                    SigmaKind::S2 => -I * self.lat.kcn(w)?,
                    SigmaKind::S3 => -I * self.lat.dn(w)?,
                };
                Ok(a.shift_sign() * m)
            }
        }
    }

    /// Central value of a same-index pair at kernel separation `w`:
    /// delta_ab (1/K) d(omega_a)/dtau at fixed argument. Zero for
    /// distinct indices.
    pub fn cocycle_value(&self, a: SigmaKind, b: SigmaKind, w: C64) -> Result<C64> {
        if a != b {
            return Ok(c64(0.0, 0.0));
        }
        Ok(self.omega_dtau(a, w)? / self.lat.big_k)
    }

    /// Same as [`cocycle_value`](Self::cocycle_value) on the diagonal,
    /// but through finite differences of the modulus over tau instead of
    /// the theta-series derivative. Needs a purely imaginary tau.
    pub fn cocycle_fd(&self, a: SigmaKind, w: C64, step: Option<f64>) -> Result<C64> {
        Ok(crate::specfun::omega::d_omega_dtau(a.index(), w, self.lat.tau, step)?
            / self.lat.big_k)
    }

    /// Cocycle of two currents: nonzero only for equal directions, where
    /// it is the diagonal value at the effective separation.
    pub fn cocycle(&self, x: &SGen, y: &SGen) -> Result<C64> {
        if x.kind != y.kind {
            return Ok(c64(0.0, 0.0));
        }
        self.cocycle_value(x.kind, y.kind, self.effective_separation(x, y))
    }

    /// Bracket of two currents. Distinct directions close on the third
    /// current at each input point; equal directions are purely central.
    pub fn bracket(&self, x: &SGen, y: &SGen) -> Result<SElem> {
        let w = self.effective_separation(x, y);
        if w.norm() < 1e-12 {
            return Err(Error::CoincidentPoints);
        }
        if x.kind == y.kind {
            return Ok(Element::central_only(self.cocycle(x, y)?));
        }
        let (third, eps) = x.kind.completes(y.kind).expect("distinct kinds");
        if eps < 0.0 {
            return Ok(self.bracket(y, x)?.scale(c64(-1.0, 0.0)));
        }
        let wa = self.omega(x.kind, w)?;
        let wb = self.omega(y.kind, w)?;
        let two_i = 2.0 * I;
        let mut out = Element::zero();
        out.push(two_i * wa, Generator::new(third, y.branch, y.point));
        out.push(-(two_i * wb), Generator::new(third, x.branch, x.point));
        Ok(out)
    }

    /// Bracket extended bilinearly to elements; input central parts drop.
    pub fn bracket_elements(&self, x: &SElem, y: &SElem) -> Result<SElem> {
        let mut out = Element::zero();
        for tx in &x.terms {
            for ty in &y.terms {
                let b = self.bracket(&tx.gen, &ty.gen)?;
                out = out.add(&b.scale(tx.coeff * ty.coeff));
            }
        }
        Ok(out)
    }

    /// Max coefficient of the cyclic Jacobi sum, centrals included, so it
    /// also exercises the cocycle identity.
    pub fn jacobi_residual(&self, x: &SGen, y: &SGen, z: &SGen) -> Result<f64> {
        let xe = Element::from_term(c64(1.0, 0.0), *x);
        let ye = Element::from_term(c64(1.0, 0.0), *y);
        let ze = Element::from_term(c64(1.0, 0.0), *z);
        let mut acc = self.bracket_elements(&xe, &self.bracket(y, z)?)?;
        acc = acc.add(&self.bracket_elements(&ye, &self.bracket(z, x)?)?);
        acc = acc.add(&self.bracket_elements(&ze, &self.bracket(x, y)?)?);
        Ok(acc.canonical(1e-9).norm_max())
    }

    /// Cobracket of one current: the wedge of the other two directions at
    /// the same point and branch.
    pub fn cobracket(&self, a: SigmaKind, branch: Branch, u: C64) -> Wedge {
        let (b, c) = a.cyclic_successors();
        Wedge {
            left: Generator::new(b, branch, u),
            right: Generator::new(c, branch, u),
        }
    }

    /// Classical r-matrix: sum of omega_a(u) sigma_a (x) sigma_a.
    pub fn r_matrix(&self, u: C64) -> Result<CMat> {
        let mut r = CMat::zeros(4);
        for a in SigmaKind::ALL {
            let s = sigma(a.index());
            r = r.add(&s.kron(&s).scale(self.omega(a, u)?));
        }
        Ok(r)
    }

    /// Fixed-argument tau-derivative of [`r_matrix`](Self::r_matrix).
    pub fn r_matrix_dtau(&self, u: C64) -> Result<CMat> {
        let mut r = CMat::zeros(4);
        for a in SigmaKind::ALL {
            let s = sigma(a.index());
            r = r.add(&s.kron(&s).scale(self.omega_dtau(a, u)?));
        }
        Ok(r)
    }

    /// Classical Yang-Baxter residual of the r-matrix on three factors.
    pub fn cybe_residual(&self, u: C64, v: C64) -> Result<f64> {
        let r12 = self.r_matrix(u - v)?.embed_pair(0, 1, 3);
        let r13 = self.r_matrix(u)?.embed_pair(0, 2, 3);
        let r23 = self.r_matrix(v)?.embed_pair(1, 2, 3);
        let sum = r12
            .commutator(&r13)
            .add(&r12.commutator(&r23))
            .add(&r13.commutator(&r23));
        Ok(sum.norm_max())
    }

    /// Operator matrix with the plus currents in Pauli positions.
    pub fn l_plus(&self, u: C64) -> ElementMat<SigmaKind> {
        let g = |kind| Generator::new(kind, Branch::Plus, u);
        let one = c64(1.0, 0.0);
        let mut m = ElementMat::zeros(2);
        m.set(0, 0, Element::from_term(one, g(SigmaKind::S3)));
        let mut b = Element::from_term(one, g(SigmaKind::S1));
        b.push(-I, g(SigmaKind::S2));
        m.set(0, 1, b);
        let mut c = Element::from_term(one, g(SigmaKind::S1));
        c.push(I, g(SigmaKind::S2));
        m.set(1, 0, c);
        m.set(1, 1, Element::from_term(-one, g(SigmaKind::S3)));
        m
    }

    /// Worst entry distance in the matrix identity
    /// [L1(u1), L2(u2)] = [L1 + L2, r(u1-u2)] + (c/K) dr/dtau (u1-u2),
    /// with the bracket centrals weighted by `charge`.
    pub fn ll_residual(&self, u1: C64, u2: C64, charge: f64) -> Result<f64> {
        let l1 = self.l_plus(u1);
        let l2 = self.l_plus(u2);
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
        let rhs_current = m.commutator_scalar(&self.r_matrix(u12)?);
        let rdot = self.r_matrix_dtau(u12)?;

        let mut worst = 0.0f64;
        for row in 0..4 {
            for col in 0..4 {
                let (i, k) = (row / 2, row % 2);
                let (j, l) = (col / 2, col % 2);
                let mut lhs = self.bracket_elements(l1.get(i, j), l2.get(k, l))?;
                lhs.central *= c64(charge, 0.0);
                let mut rhs = rhs_current.get(row, col).clone();
                rhs.central += charge * rdot.get(row, col) / self.lat.big_k;
                let d = lhs.distance(&rhs, 1e-9);
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }
}
