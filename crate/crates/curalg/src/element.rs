//! Generator-valued elements: finite sums of currents evaluated at points,
//! plus a central coefficient. Shared by the trigonometric, rational and
//! elliptic families through the kind parameter.

use crate::C64;
use alloc::vec::Vec;

/// Analyticity branch of a current.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// A current of some kind on a branch, evaluated at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Generator<K> {
    pub kind: K,
    pub branch: Branch,
    pub point: C64,
}

impl<K> Generator<K> {
    pub fn new(kind: K, branch: Branch, point: C64) -> Self {
        Generator { kind, branch, point }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Term<K> {
    pub coeff: C64,
    pub gen: Generator<K>,
}

/// Finite linear combination of generators plus a central part.
#[derive(Clone, Debug)]
pub struct Element<K> {
    pub terms: Vec<Term<K>>,
    pub central: C64,
}

impl<K: Copy + PartialEq> Element<K> {
    pub fn zero() -> Self {
        Element {
            terms: Vec::new(),
            central: C64::new(0.0, 0.0),
        }
    }

    pub fn from_term(coeff: C64, gen: Generator<K>) -> Self {
        let mut e = Element::zero();
        e.push(coeff, gen);
        e
    }

    pub fn central_only(c: C64) -> Self {
        let mut e = Element::zero();
        e.central = c;
        e
    }

    pub fn push(&mut self, coeff: C64, gen: Generator<K>) {
        self.terms.push(Term { coeff, gen });
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.terms.extend_from_slice(&other.terms);
        out.central += other.central;
        out
    }

    pub fn scale(&self, c: C64) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: c * t.coeff,
                    gen: t.gen,
                })
                .collect(),
            central: c * self.central,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Merge terms whose generators agree in kind and branch and whose
    /// points differ by less than `point_tol`; drop negligible terms.
    pub fn canonical(&self, point_tol: f64) -> Self {
        let mut merged: Vec<Term<K>> = Vec::new();
        for t in &self.terms {
            let mut absorbed = false;
            for m in merged.iter_mut() {
                if m.gen.kind == t.gen.kind
                    && m.gen.branch == t.gen.branch
                    && (m.gen.point - t.gen.point).norm() < point_tol
                {
                    m.coeff += t.coeff;
                    absorbed = true;
                    break;
                }
            }
            if !absorbed {
                merged.push(*t);
            }
        }
        merged.retain(|t| t.coeff.norm() > 0.0);
        Element {
            terms: merged,
            central: self.central,
        }
    }

    /// Largest coefficient magnitude after merging with `other` negated;
    /// zero means the elements agree.
    pub fn distance(&self, other: &Self, point_tol: f64) -> f64 {
        let d = self.sub(other).canonical(point_tol);
        let mut m = d.central.norm();
        for t in &d.terms {
            m = m.max(t.coeff.norm());
        }
        m
    }

    pub fn norm_max(&self) -> f64 {
        let mut m = self.central.norm();
        for t in &self.terms {
            m = m.max(t.coeff.norm());
        }
        m
    }
}

/// Square matrix with element entries, used for operator-valued relation
/// checks. Indexed row-major.
#[derive(Clone, Debug)]
pub struct ElementMat<K> {
    pub n: usize,
    pub entries: Vec<Element<K>>,
}

impl<K: Copy + PartialEq> ElementMat<K> {
    pub fn zeros(n: usize) -> Self {
        ElementMat {
            n,
            entries: alloc::vec![Element::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Element<K>) -> Self {
        ElementMat {
            n,
            entries: (0..n * n).map(|i| f(i / n, i % n)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Element<K> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Element<K>) {
        self.entries[i * self.n + j] = e;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        ElementMat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        ElementMat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Commutator with a scalar matrix: `self * r - r * self`.
    pub fn commutator_scalar(&self, r: &crate::mat::CMat) -> Self {
        assert_eq!(self.n, r.dim());
        let n = self.n;
        ElementMat::from_fn(n, |i, j| {
            let mut acc = Element::zero();
            for k in 0..n {
                acc = acc.add(&self.get(i, k).scale(r.get(k, j)));
                acc = acc.add(&self.get(k, j).scale(-r.get(i, k)));
            }
            acc
        })
    }

    /// Largest entry distance to another matrix.
    pub fn distance(&self, other: &Self, point_tol: f64) -> f64 {
        assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.distance(b, point_tol))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[derive(Clone, Copy, Debug, PartialEq)]
    enum K3 {
        A,
        B,
    }

    #[test]
    fn merge_and_distance() {
        let g1 = Generator::new(K3::A, Branch::Plus, c64(0.3, -0.1));
        let g2 = Generator::new(K3::A, Branch::Plus, c64(0.3, -0.1 + 1e-12));
        let g3 = Generator::new(K3::B, Branch::Plus, c64(0.3, -0.1));

        let mut x = Element::zero();
        x.push(c64(2.0, 0.0), g1);
        x.push(c64(1.0, 1.0), g3);

        let mut y = Element::zero();
        y.push(c64(1.0, 1.0), g3);
        y.push(c64(2.0, 0.0), g2);

        assert!(x.distance(&y, 1e-9) < 1e-11);
        assert!(x.distance(&y.scale(c64(1.0, 1e-3)), 1e-9) > 1e-4);
    }

    #[test]
    fn branch_separates_terms() {
        let gp = Generator::new(K3::A, Branch::Plus, c64(0.0, 0.0));
        let gm = Generator::new(K3::A, Branch::Minus, c64(0.0, 0.0));
        let x = Element::from_term(c64(1.0, 0.0), gp);
        let y = Element::from_term(c64(1.0, 0.0), gm);
        assert!(x.distance(&y, 1e-9) > 0.9);
    }

    #[test]
    fn cancellation_leaves_central() {
        let g = Generator::new(K3::B, Branch::Minus, c64(1.0, 2.0));
        let mut x = Element::from_term(c64(3.0, 0.0), g);
        x.central = c64(0.0, 5.0);
        let d = x.sub(&x).canonical(1e-9);
        assert!(d.terms.is_empty());
        assert_eq!(d.central, c64(0.0, 0.0));
    }

    #[test]
    fn matrix_commutator_with_scalar() {
        use crate::mat::CMat;
        // non-commuting scalar pattern: entries must pick up both sides
        let g = Generator::new(K3::A, Branch::Plus, c64(0.5, 0.0));
        let mut m = ElementMat::zeros(2);
        m.set(0, 0, Element::from_term(c64(1.0, 0.0), g));
        let r = CMat::from_rows(
            2,
            &[c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
        );
        let c = m.commutator_scalar(&r);
        // [diag(x,0), e01] = x e01 - e01 * 0 -> entry (0,1) is +x
        assert!((c.get(0, 1).terms[0].coeff - c64(1.0, 0.0)).norm() < 1e-15);
        assert!(c.get(0, 0).terms.is_empty() || c.get(0, 0).canonical(1e-9).terms.is_empty());
    }
}
