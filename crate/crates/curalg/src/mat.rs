//! Small dense complex matrices.
//!
//! Dimensions here are tiny (2, 4, 8), so everything is row-major `Vec`
//! storage with straightforward loops. The tensor helpers ([`CMat::kron`],
//! [`CMat::embed_pair`]) are what the r-matrix checks actually need.

use crate::{c64, C64};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    n: usize,
    a: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            a: vec![c64(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m.set(i, i, c64(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from a flat row-major slice of length `n * n`.
    pub fn from_rows(n: usize, vals: &[C64]) -> Self {
        assert_eq!(vals.len(), n * n, "need n*n entries");
        CMat { n, a: vals.to_vec() }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.a[i * self.n + j] = v;
    }

    pub fn add(&self, o: &CMat) -> CMat {
        assert_eq!(self.n, o.n);
        CMat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, o: &CMat) -> CMat {
        assert_eq!(self.n, o.n);
        CMat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> CMat {
        CMat {
            n: self.n,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, o: &CMat) -> CMat {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == c64(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = m.get(i, j) + aik * o.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn commutator(&self, o: &CMat) -> CMat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> C64 {
        let mut t = c64(0.0, 0.0);
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> f64 {
        self.a.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product: `self` acts on the first factor.
    pub fn kron(&self, o: &CMat) -> CMat {
        let (p, q) = (self.n, o.n);
        CMat::from_fn(p * q, |i, j| {
            self.get(i / q, j / q) * o.get(i % q, j % q)
        })
    }

    /// Embed a matrix on two 2-dimensional factors into a chain of
    /// `factors` such slots. `self` must be 4x4, read as slot_a (x) slot_b.
    pub fn embed_pair(&self, slot_a: usize, slot_b: usize, factors: usize) -> CMat {
        assert_eq!(self.n, 4, "embed_pair takes a 4x4 matrix");
        assert!(slot_a != slot_b && slot_a < factors && slot_b < factors);
        let dim = 1usize << factors;
        let bit = |idx: usize, slot: usize| (idx >> (factors - 1 - slot)) & 1;
        CMat::from_fn(dim, |i, j| {
            for s in 0..factors {
                if s != slot_a && s != slot_b && bit(i, s) != bit(j, s) {
                    return c64(0.0, 0.0);
                }
            }
            let r = bit(i, slot_a) * 2 + bit(i, slot_b);
            let c = bit(j, slot_a) * 2 + bit(j, slot_b);
            self.get(r, c)
        })
    }
}

/// Pauli matrix with index 1, 2 or 3.
pub fn sigma(a: usize) -> CMat {
    let o = c64(0.0, 0.0);
    let e = c64(1.0, 0.0);
    let i = c64(0.0, 1.0);
    match a {
        1 => CMat::from_rows(2, &[o, e, e, o]),
        2 => CMat::from_rows(2, &[o, -i, i, o]),
        3 => CMat::from_rows(2, &[e, o, o, -e]),
        _ => panic!("pauli index must be 1, 2 or 3"),
    }
}
