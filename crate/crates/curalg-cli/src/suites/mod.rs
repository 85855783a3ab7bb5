//! Named verification suites. Each case draws its own random substream
//! keyed by the full case name, so residuals are identical whether a
//! suite runs alone or as part of `all`.

use crate::config::SuiteConfig;
use crate::report::{CaseReport, Report};
use crate::sample::case_rng;
use curalg::error::Result as AlgResult;
use rand_chacha::ChaCha8Rng;

mod elliptic;
mod fock;
mod rational;
mod rmatrix;
mod trig;

type SuiteFn = fn(&mut CaseSet);

const REGISTRY: &[(&str, SuiteFn)] = &[
    ("baxter-sklyanin", elliptic::baxter_sklyanin),
    ("cybe-elliptic", elliptic::cybe),
    ("cybe-trig", rmatrix::cybe),
    ("elliptic-cocycle", elliptic::cocycle),
    ("elliptic-jacobi", elliptic::jacobi),
    ("elliptic-limit", elliptic::limit),
    ("elliptic-ll", elliptic::ll),
    ("elliptic-series", elliptic::series),
    ("eta-derivative", rmatrix::eta_derivative),
    ("fock-commutator", fock::commutator),
    ("fock-h-kernel", fock::h_kernel),
    ("fock-two-point", fock::two_point),
    ("fourier-kernels", trig::fourier),
    ("gauge", trig::gauge),
    ("ll-structure", rmatrix::ll),
    ("modes-cobracket", trig::modes),
    ("rational-double", rational::double),
    ("rational-limit", rational::limit),
    ("rmatrix-expansion", rmatrix::expansion),
    ("sokhotsky", trig::sokhotsky),
    ("trig-cocycle", trig::cocycle),
    ("trig-jacobi", trig::jacobi),
];

pub fn names() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = REGISTRY.iter().map(|(n, _)| *n).collect();
    v.push("all");
    v
}

/// Run one suite (or `all`); `None` for an unknown name.
pub fn run(name: &str, cfg: &SuiteConfig) -> Option<Report> {
    let mut cases = Vec::new();
    if name == "all" {
        for (suite, f) in REGISTRY {
            let mut set = CaseSet::new(suite, cfg);
            f(&mut set);
            cases.extend(set.cases);
        }
    } else {
        let (suite, f) = REGISTRY.iter().find(|(n, _)| *n == name)?;
        let mut set = CaseSet::new(suite, cfg);
        f(&mut set);
        cases = set.cases;
    }
    Some(Report::new(name, cfg.seed, cfg.digest(), cases))
}

/// Accumulates case results for one suite.
pub struct CaseSet<'a> {
    suite: &'static str,
    pub cfg: &'a SuiteConfig,
    cases: Vec<CaseReport>,
}

impl<'a> CaseSet<'a> {
    fn new(suite: &'static str, cfg: &'a SuiteConfig) -> Self {
        CaseSet {
            suite,
            cfg,
            cases: Vec::new(),
        }
    }

    pub fn rng(&self, case: &str) -> ChaCha8Rng {
        case_rng(self.cfg.seed, &format!("{}/{}", self.suite, case))
    }

    /// Record a case. Evaluation errors are reported as failures with an
    /// infinite residual, never as a process error.
    pub fn push(&mut self, case: &str, inputs: String, residual: AlgResult<f64>, default_tol: f64) {
        let name = format!("{}/{}", self.suite, case);
        let tolerance = self.cfg.tolerance(&name, default_tol);
        let (residual, inputs) = match residual {
            Ok(r) => (r, inputs),
            Err(e) => (f64::INFINITY, format!("{inputs} [{e}]")),
        };
        self.cases.push(CaseReport {
            name,
            inputs,
            residual,
            tolerance,
            pass: residual <= tolerance,
        });
    }
}
