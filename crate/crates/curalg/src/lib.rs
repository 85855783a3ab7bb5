//! Numerical toolkit for current algebras on a complex strip.
//!
//! The crate covers three kernel families (trigonometric, rational,
//! elliptic) together with the machinery needed to check their structure
//! numerically: contour quadrature, special functions, generator-valued
//! distributions with brackets / cocycles / invariant pairings, classical
//! r-matrices, and a free-field (Fock) realization.
//!
//! Everything here is `no_std`-compatible (with `alloc`); IO, config and
//! reporting live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;

pub mod element;
pub mod elliptic;
pub mod error;
pub mod fock;
pub mod mat;
pub mod quad;
pub mod rational;
pub mod rmatrix;
pub mod specfun;
pub mod trig;

/// Complex double, the scalar type used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Shorthand for `C64::new`.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);
