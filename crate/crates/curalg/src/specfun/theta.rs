//! Jacobi functions from their nome series, for a complex period ratio.
//!
//! Given tau with Im tau > 0, the lattice caches the nome, modulus and
//! quarter period, and evaluates sn, cn, dn and the quotients ns, ds, cs
//! along with their analytic tau-derivatives at fixed argument. This is the
//! route that stays valid when tau moves off the imaginary axis and the
//! modulus becomes complex, where the real-modulus AGM evaluator does not
//! apply.
//!
//! Every series term is assembled from powers of `q e^{iv}` and `q e^{-iv}`
//! whose moduli are both below one inside the convergence band, so partial
//! terms never overflow even close to the band edge.

use crate::error::{Error, Result};
use crate::specfun::carlson::elliptic_k;
use crate::{c64, C64};
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

const MAX_TERMS: usize = 600;
const DECAY_GUARD: f64 = 0.95;

#[derive(Clone, Debug)]
pub struct ThetaLattice {
    pub tau: C64,
    /// Nome exp(i pi tau).
    pub q: C64,
    half_q: C64,
    pub k: C64,
    pub kprime: C64,
    /// Quarter period K.
    pub big_k: C64,
    pub dk_dtau: C64,
    pub dbig_k_dtau: C64,
}

impl ThetaLattice {
    pub fn from_tau(tau: C64) -> Result<Self> {
        let q = (c64(0.0, PI) * tau).exp();
        if q.norm() > 0.85 {
            return Err(Error::Domain {
                what: "period ratio too close to the real axis",
            });
        }
        let quarter_q = (c64(0.0, PI / 4.0) * tau).exp();
        let half_q = quarter_q * quarter_q;

        // theta constants and their tau-derivatives, term by term
        let mut th2 = c64(0.0, 0.0);
        let mut dth2 = c64(0.0, 0.0);
        let mut qpow = c64(1.0, 0.0);
        for n in 0..40 {
            let e = (n * (n + 1)) as f64;
            let term = qpow;
            th2 += term;
            dth2 += (e + 0.25) * term;
            if term.norm() < 1e-18 * th2.norm() {
                break;
            }
            qpow *= q.powi(2 * (n as i32) + 2);
        }
        th2 *= 2.0 * quarter_q;
        dth2 *= c64(0.0, 2.0 * PI) * quarter_q;

        let mut th3 = c64(1.0, 0.0);
        let mut th4 = c64(1.0, 0.0);
        let mut dth3 = c64(0.0, 0.0);
        let mut dth4 = c64(0.0, 0.0);
        for n in 1..40 {
            let term = q.powi((n * n) as i32);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            th3 += 2.0 * term;
            th4 += 2.0 * sign * term;
            dth3 += 2.0 * (n * n) as f64 * term;
            dth4 += 2.0 * sign * (n * n) as f64 * term;
            if term.norm() < 1e-18 {
                break;
            }
        }
        dth3 *= c64(0.0, PI);
        dth4 *= c64(0.0, PI);

        let r = th2 / th3;
        let k = r * r;
        let kprime = (th4 / th3) * (th4 / th3);
        let big_k = 0.5 * PI * th3 * th3;
        let dk_dtau = 2.0 * r * (dth2 * th3 - th2 * dth3) / (th3 * th3);
        let dbig_k_dtau = PI * th3 * dth3;

        Ok(ThetaLattice {
            tau,
            q,
            half_q,
            k,
            kprime,
            big_k,
            dk_dtau,
            dbig_k_dtau,
        })
    }

    /// Lattice with a purely imaginary period ratio from a real modulus.
    pub fn from_modulus(k: f64) -> Result<Self> {
        Self::from_tau(tau_from_modulus(k)?)
    }

    #[inline]
    fn v_of(&self, w: C64) -> C64 {
        0.5 * PI * w / self.big_k
    }

    // --- quotient family: ns, ds, cs -----------------------------------

    fn quotient_full(&self, w: C64, fam: Quot) -> Result<(C64, C64)> {
        let v = self.v_of(w);
        let sv = v.sin();
        if sv.norm() < 1e-12 {
            return Err(Error::Pole {
                what: "quotient function at a lattice zero",
            });
        }
        let decay = self.q.norm() * v.im.abs().exp();
        if decay > DECAY_GUARD {
            return Err(Error::NonConvergent {
                what: "argument outside the series band",
            });
        }

        let cv = v.cos();
        let (base, dbase_dv) = match fam {
            Quot::Ns | Quot::Ds => (1.0 / sv, -cv / (sv * sv)),
            Quot::Cs => (cv / sv, -1.0 / (sv * sv)),
        };
        let (sign, denom_sign) = match fam {
            Quot::Ns => (1.0, -1.0), // + series, denominator 1 - q^j
            Quot::Ds => (-1.0, 1.0), // - series, denominator 1 + q^j
            Quot::Cs => (-1.0, 1.0),
        };

        let a = self.q * (c64(0.0, 1.0) * v).exp();
        let b = self.q * (c64(0.0, -1.0) * v).exp();
        let (start, step) = match fam {
            Quot::Cs => (2, 2),
            _ => (1, 2),
        };
        let mut aj = a.powi(start);
        let mut bj = b.powi(start);
        let mut qj = self.q.powi(start);
        let astep = a.powi(step);
        let bstep = b.powi(step);
        let qstep = self.q.powi(step);

        let mut series = c64(0.0, 0.0);
        let mut dseries = c64(0.0, 0.0);
        let half_i = c64(0.0, -0.5); // 1/(2i)

        let kdot_over_k = self.dbig_k_dtau / self.big_k;
        let vdot = -v * kdot_over_k;

        let mut j = start;
        let mut converged = false;
        for _ in 0..MAX_TERMS {
            let den = 1.0 + denom_sign * qj;
            let sin_jv_qj = (aj - bj) * half_i; // q^j sin(jv)
            let cos_jv_qj = 0.5 * (aj + bj); // q^j cos(jv)
            let cj_sin = sin_jv_qj / den;
            series += cj_sin;
            // d/dtau of c_j sin(jv): c_j' sin + c_j j cos(jv) v'
            let cdot_sin = c64(0.0, PI) * j as f64 * sin_jv_qj / (den * den);
            dseries += cdot_sin + j as f64 * cos_jv_qj / den * vdot;

            let bound = aj.norm().max(bj.norm());
            if bound < 1e-17 * (1.0 + series.norm()) {
                converged = true;
                break;
            }
            aj *= astep;
            bj *= bstep;
            qj *= qstep;
            j += step;
        }
        if !converged {
            return Err(Error::NonConvergent {
                what: "quotient series",
            });
        }

        let p = 0.5 * PI / self.big_k;
        let value = p * (base + 4.0 * sign * series);
        let dvalue = -kdot_over_k * value
            + p * (dbase_dv * vdot + 4.0 * sign * dseries);
        Ok((value, dvalue))
    }

    /// 1/sn.
    pub fn ns(&self, w: C64) -> Result<C64> {
        Ok(self.quotient_full(w, Quot::Ns)?.0)
    }

    /// dn/sn.
    pub fn ds(&self, w: C64) -> Result<C64> {
        Ok(self.quotient_full(w, Quot::Ds)?.0)
    }

    /// cn/sn.
    pub fn cs(&self, w: C64) -> Result<C64> {
        Ok(self.quotient_full(w, Quot::Cs)?.0)
    }

    /// d(1/sn)/dtau at fixed argument.
    pub fn dns_dtau(&self, w: C64) -> Result<C64> {
        Ok(self.quotient_full(w, Quot::Ns)?.1)
    }

    pub fn dds_dtau(&self, w: C64) -> Result<C64> {
        Ok(self.quotient_full(w, Quot::Ds)?.1)
    }

    pub fn dcs_dtau(&self, w: C64) -> Result<C64> {
        Ok(self.quotient_full(w, Quot::Cs)?.1)
    }

    // --- kernel family: k sn, k cn, dn ----------------------------------

    fn kernel_full(&self, w: C64, fam: Kern) -> Result<(C64, C64)> {
        let v = self.v_of(w);
        let decay_half = self.q.norm().sqrt() * v.im.abs().exp();
        if decay_half > DECAY_GUARD {
            return Err(Error::NonConvergent {
                what: "argument outside the half band",
            });
        }

        let kdot_over_k = self.dbig_k_dtau / self.big_k;
        let vdot = -v * kdot_over_k;
        let i_pi = c64(0.0, PI);
        let half_i = c64(0.0, -0.5);

        // s = q^(1/2) e^(iv), t = q^(1/2) e^(-iv); both below one in modulus
        let s = self.half_q * (c64(0.0, 1.0) * v).exp();
        let t = self.half_q * (c64(0.0, -1.0) * v).exp();

        let mut series = c64(0.0, 0.0);
        let mut dseries = c64(0.0, 0.0);
        let mut converged = false;

        match fam {
            Kern::Ksn | Kern::Kcn => {
                let mut sj = s; // s^(2n+1)
                let mut tj = t;
                let mut qodd = self.q; // q^(2n+1), here starting value q^1
                let s2 = s * s;
                let t2 = t * t;
                let q2 = self.q * self.q;
                let mut n = 0usize;
                for _ in 0..MAX_TERMS {
                    let m = 2 * n + 1;
                    let half = n as f64 + 0.5;
                    let sin_part = (sj - tj) * half_i; // q^(n+1/2) sin(mv)
                    let cos_part = 0.5 * (sj + tj);
                    match fam {
                        Kern::Ksn => {
                            let den = 1.0 - qodd;
                            series += sin_part / den;
                            let bdot =
                                i_pi * half * (1.0 + qodd) / (den * den) * sin_part;
                            dseries += bdot + m as f64 * cos_part / den * vdot;
                        }
                        Kern::Kcn => {
                            let den = 1.0 + qodd;
                            series += cos_part / den;
                            let bdot =
                                i_pi * half * (1.0 - qodd) / (den * den) * cos_part;
                            dseries += bdot - m as f64 * sin_part / den * vdot;
                        }
                        Kern::Dn => unreachable!(),
                    }
                    let bound = sj.norm().max(tj.norm());
                    if bound < 1e-17 * (1.0 + series.norm()) {
                        converged = true;
                        break;
                    }
                    sj *= s2;
                    tj *= t2;
                    qodd *= q2;
                    n += 1;
                }
            }
            Kern::Dn => {
                // dn = pi/(2K) + (2 pi / K) sum q^n cos(2nv)/(1+q^(2n))
                let s2 = s * s; // q e^(2iv)
                let t2 = t * t;
                let q2 = self.q * self.q;
                let mut sj = s2;
                let mut tj = t2;
                let mut qeven = q2;
                let mut n = 1usize;
                for _ in 0..MAX_TERMS {
                    let den = 1.0 + qeven;
                    let sin_part = (sj - tj) * half_i;
                    let cos_part = 0.5 * (sj + tj); // q^n cos(2nv)
                    series += cos_part / den;
                    let ddot = i_pi * n as f64 * (1.0 - qeven) / (den * den) * cos_part;
                    dseries += ddot - (2 * n) as f64 * sin_part / den * vdot;
                    let bound = sj.norm().max(tj.norm());
                    if bound < 1e-17 * (1.0 + series.norm()) {
                        converged = true;
                        break;
                    }
                    sj *= s2;
                    tj *= t2;
                    qeven *= q2;
                    n += 1;
                }
            }
        }
        if !converged {
            return Err(Error::NonConvergent { what: "kernel series" });
        }

        let two_p = 2.0 * PI / self.big_k;
        match fam {
            Kern::Dn => {
                let value = 0.25 * two_p + two_p * series;
                let dvalue = -kdot_over_k * value + two_p * dseries;
                Ok((value, dvalue))
            }
            _ => {
                let value = two_p * series;
                let dvalue = -kdot_over_k * value + two_p * dseries;
                Ok((value, dvalue))
            }
        }
    }

    /// k sn(w), which stays finite as the modulus degenerates.
    pub fn ksn(&self, w: C64) -> Result<C64> {
        Ok(self.kernel_full(w, Kern::Ksn)?.0)
    }

    pub fn kcn(&self, w: C64) -> Result<C64> {
        Ok(self.kernel_full(w, Kern::Kcn)?.0)
    }

    pub fn dn(&self, w: C64) -> Result<C64> {
        Ok(self.kernel_full(w, Kern::Dn)?.0)
    }

    pub fn dksn_dtau(&self, w: C64) -> Result<C64> {
        Ok(self.kernel_full(w, Kern::Ksn)?.1)
    }

    pub fn dkcn_dtau(&self, w: C64) -> Result<C64> {
        Ok(self.kernel_full(w, Kern::Kcn)?.1)
    }

    pub fn ddn_dtau(&self, w: C64) -> Result<C64> {
        Ok(self.kernel_full(w, Kern::Dn)?.1)
    }

    pub fn sn(&self, w: C64) -> Result<C64> {
        Ok(self.ksn(w)? / self.k)
    }

    pub fn cn(&self, w: C64) -> Result<C64> {
        Ok(self.kcn(w)? / self.k)
    }

    /// d sn/dtau at fixed argument (quotient rule through k).
    pub fn dsn_dtau(&self, w: C64) -> Result<C64> {
        let (v, dv) = self.kernel_full(w, Kern::Ksn)?;
        Ok((dv * self.k - v * self.dk_dtau) / (self.k * self.k))
    }

    pub fn dcn_dtau(&self, w: C64) -> Result<C64> {
        let (v, dv) = self.kernel_full(w, Kern::Kcn)?;
        Ok((dv * self.k - v * self.dk_dtau) / (self.k * self.k))
    }
}

enum Quot {
    Ns,
    Ds,
    Cs,
}

enum Kern {
    Ksn,
    Kcn,
    Dn,
}

/// Modulus for a given period ratio; errors unless it lands on (0, 1).
pub fn modulus_from_tau(tau: C64) -> Result<f64> {
    let lat = ThetaLattice::from_tau(tau)?;
    let k = lat.k;
    if k.im.abs() > 1e-8 * (1.0 + k.norm()) || k.re <= 0.0 || k.re >= 1.0 {
        return Err(Error::InvalidModulus);
    }
    Ok(k.re)
}

/// Purely imaginary period ratio i K'/K for a real modulus.
pub fn tau_from_modulus(k: f64) -> Result<C64> {
    if !(0.0 < k && k < 1.0) {
        return Err(Error::InvalidModulus);
    }
    let kp = (1.0 - k * k).sqrt();
    Ok(c64(0.0, elliptic_k(kp)? / elliptic_k(k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::jacobi::sncndn_c;

    fn lat(k: f64) -> ThetaLattice {
        ThetaLattice::from_modulus(k).unwrap()
    }

    #[test]
    fn lattice_constants_match_agm() {
        for k in [0.15, 0.3, 0.6, 0.85] {
            let l = lat(k);
            assert!((l.k - c64(k, 0.0)).norm() < 1e-12, "k = {k}");
            let want = elliptic_k(k).unwrap();
            assert!((l.big_k - c64(want, 0.0)).norm() < 1e-12);
            let roundtrip = modulus_from_tau(l.tau).unwrap();
            assert!((roundtrip - k).abs() < 1e-12);
        }
    }

    #[test]
    fn series_match_agm_evaluator() {
        let k = 0.3;
        let l = lat(k);
        for w in [c64(0.7, 0.0), c64(0.4, 0.2), c64(-1.1, -0.35), c64(0.05, 0.5)] {
            let (s, c, d) = sncndn_c(w, k).unwrap();
            assert!((l.sn(w).unwrap() - s).norm() < 1e-11, "sn at {w}");
            assert!((l.cn(w).unwrap() - c).norm() < 1e-11, "cn at {w}");
            assert!((l.dn(w).unwrap() - d).norm() < 1e-11, "dn at {w}");
            assert!((l.ns(w).unwrap() - 1.0 / s).norm() < 1e-10, "ns at {w}");
            assert!((l.ds(w).unwrap() - d / s).norm() < 1e-10, "ds at {w}");
            assert!((l.cs(w).unwrap() - c / s).norm() < 1e-10, "cs at {w}");
        }
    }

    #[test]
    fn quotients_are_consistent_at_complex_tau() {
        let l = ThetaLattice::from_tau(c64(0.13, 0.9)).unwrap();
        for w in [c64(0.6, 0.1), c64(-0.8, -0.2)] {
            let sn = l.sn(w).unwrap();
            let cn = l.cn(w).unwrap();
            let dn = l.dn(w).unwrap();
            let one = c64(1.0, 0.0);
            assert!((sn * sn + cn * cn - one).norm() < 1e-10);
            assert!((dn * dn + l.k * l.k * sn * sn - one).norm() < 1e-10);
            assert!((l.ns(w).unwrap() * sn - one).norm() < 1e-10);
            assert!((l.ds(w).unwrap() * sn - dn).norm() < 1e-10);
            assert!((l.cs(w).unwrap() * sn - cn).norm() < 1e-10);
        }
        assert!(matches!(
            modulus_from_tau(c64(0.13, 0.9)),
            Err(Error::InvalidModulus)
        ));
    }

    fn fd_tau(tau: C64, h: f64, f: impl Fn(&ThetaLattice) -> C64) -> C64 {
        let d = |hh: f64| {
            let lp = ThetaLattice::from_tau(tau + hh).unwrap();
            let lm = ThetaLattice::from_tau(tau - hh).unwrap();
            (f(&lp) - f(&lm)) / (2.0 * hh)
        };
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    #[test]
    fn tau_derivatives_match_finite_differences() {
        let tau = c64(0.05, 1.1);
        let l0 = ThetaLattice::from_tau(tau).unwrap();
        let w = c64(0.62, -0.07);
        let h = 1e-4;
        let check = |numeric: C64, analytic: C64, name: &str| {
            assert!(
                (numeric - analytic).norm() < 1e-8 * (1.0 + analytic.norm()),
                "{name}: fd {numeric} vs analytic {analytic}"
            );
        };
        check(fd_tau(tau, h, |l| l.ns(w).unwrap()), l0.dns_dtau(w).unwrap(), "ns");
        check(fd_tau(tau, h, |l| l.ds(w).unwrap()), l0.dds_dtau(w).unwrap(), "ds");
        check(fd_tau(tau, h, |l| l.cs(w).unwrap()), l0.dcs_dtau(w).unwrap(), "cs");
        check(fd_tau(tau, h, |l| l.ksn(w).unwrap()), l0.dksn_dtau(w).unwrap(), "ksn");
        check(fd_tau(tau, h, |l| l.kcn(w).unwrap()), l0.dkcn_dtau(w).unwrap(), "kcn");
        check(fd_tau(tau, h, |l| l.dn(w).unwrap()), l0.ddn_dtau(w).unwrap(), "dn");
        check(fd_tau(tau, h, |l| l.sn(w).unwrap()), l0.dsn_dtau(w).unwrap(), "sn");
        check(fd_tau(tau, h, |l| l.cn(w).unwrap()), l0.dcn_dtau(w).unwrap(), "cn");
        check(fd_tau(tau, h, |l| l.k), l0.dk_dtau, "modulus");
        check(fd_tau(tau, h, |l| l.big_k), l0.dbig_k_dtau, "quarter period");
    }

    #[test]
    fn rejects_real_axis_tau() {
        assert!(ThetaLattice::from_tau(c64(0.5, 0.01)).is_err());
    }

    #[test]
    fn pole_and_band_guards() {
        let l = lat(0.4);
        assert!(matches!(l.ns(c64(0.0, 0.0)), Err(Error::Pole { .. })));
        let kp = l.tau.im * l.big_k.re; // K' as Im tau * K
        assert!(l.ns(c64(0.3, 3.0 * kp)).is_err());
    }
}
