//! Seeded point sampling. Every case owns an independent substream keyed
//! by its full name, so reports do not depend on evaluation order. Points
//! are drawn from the inner 80% of their validity regions, with real
//! parts kept pairwise separated to stay clear of kernel poles.

use curalg::element::Branch;
use curalg::{c64, C64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::fnv1a;

pub fn case_rng(seed: u64, case: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(case.as_bytes()))
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

pub fn strip_point(rng: &mut ChaCha8Rng, eta: f64, branch: Branch) -> C64 {
    let im = uniform(rng, 0.1 / eta, 0.9 / eta);
    c64(uniform(rng, -2.0, 2.0), -branch.sign() * im)
}

/// Real parts pairwise at least `gap` apart, by rejection.
pub fn separated(rng: &mut ChaCha8Rng, pts: &mut [C64], gap: f64) {
    loop {
        let mut ok = true;
        'outer: for i in 0..pts.len() {
            for j in 0..i {
                if (pts[i].re - pts[j].re).abs() < gap {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return;
        }
        for p in pts.iter_mut() {
            p.re = uniform(rng, -2.0, 2.0);
        }
    }
}

pub fn branch(rng: &mut ChaCha8Rng) -> Branch {
    if rng.gen::<bool>() {
        Branch::Plus
    } else {
        Branch::Minus
    }
}

/// Point on an elliptic branch row: the inner window of one real period,
/// on the lower carrier row for plus labels and half a period up for
/// minus labels.
pub fn elliptic_point(
    rng: &mut ChaCha8Rng,
    big_k: f64,
    half_period_im: f64,
    b: Branch,
) -> C64 {
    let re = uniform(rng, 0.15 * big_k, 1.85 * big_k);
    let im = match b {
        Branch::Plus => -uniform(rng, 0.25, 0.70) * half_period_im,
        Branch::Minus => uniform(rng, 0.30, 0.75) * half_period_im,
    };
    c64(re, im)
}

/// Re-draw real parts inside the elliptic window until pairwise separated.
pub fn elliptic_separated(rng: &mut ChaCha8Rng, big_k: f64, pts: &mut [C64], gap: f64) {
    loop {
        let mut ok = true;
        'outer: for i in 0..pts.len() {
            for j in 0..i {
                if (pts[i].re - pts[j].re).abs() < gap {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return;
        }
        for p in pts.iter_mut() {
            p.re = uniform(rng, 0.15 * big_k, 1.85 * big_k);
        }
    }
}
