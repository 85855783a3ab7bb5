//! Plain-text key=value configuration with defaults and a stable digest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Per-suite sample count override; each suite has its own default.
    pub samples: Option<usize>,
    /// Tolerance overrides keyed by full case name (`suite/case`).
    pub tolerances: BTreeMap<String, f64>,
    pub eta: f64,
    pub modulus: f64,
    /// Imaginary part of the period ratio; when set it takes precedence
    /// over `modulus` for building the elliptic algebra.
    pub tau: Option<f64>,
    pub hbar_grid: Vec<f64>,
    pub zeta_grid: Vec<f64>,
    /// Truncation of the normalization product.
    pub pmax: usize,
    /// Truncation of the harmonic series.
    pub ncut: i64,
    pub quad_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            samples: None,
            tolerances: BTreeMap::new(),
            eta: 0.8,
            modulus: 0.35,
            tau: None,
            hbar_grid: vec![1e-2, 5e-3, 2.5e-3],
            zeta_grid: vec![2e-2, 1e-2, 5e-3],
            pmax: 400,
            ncut: 80,
            quad_tol: 1e-10,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn parse_f64(key: &str, v: &str) -> Result<f64, ConfigError> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| ConfigError(format!("{key}: not a number: {v:?}")))
}

fn parse_grid(key: &str, v: &str) -> Result<Vec<f64>, ConfigError> {
    let vals = v
        .split(',')
        .map(|s| parse_f64(key, s))
        .collect::<Result<Vec<f64>, _>>()?;
    if vals.is_empty() {
        return Err(ConfigError(format!("{key}: empty grid")));
    }
    for w in vals.windows(2) {
        if w[1] >= w[0] {
            return Err(ConfigError(format!("{key}: grid must strictly decrease")));
        }
    }
    if vals.iter().any(|&x| x <= 0.0) {
        return Err(ConfigError(format!("{key}: grid values must be positive")));
    }
    Ok(vals)
}

impl SuiteConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = SuiteConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => {
                    cfg.seed = value
                        .parse::<u64>()
                        .map_err(|_| ConfigError(format!("seed: not an integer: {value:?}")))?;
                }
                "samples" => {
                    let n = value
                        .parse::<usize>()
                        .map_err(|_| ConfigError(format!("samples: not a count: {value:?}")))?;
                    if n == 0 {
                        return Err(ConfigError("samples: must be positive".into()));
                    }
                    cfg.samples = Some(n);
                }
                "eta" => {
                    cfg.eta = parse_f64(key, value)?;
                    if cfg.eta <= 0.0 {
                        return Err(ConfigError("eta: must be positive".into()));
                    }
                }
                "k" => {
                    cfg.modulus = parse_f64(key, value)?;
                    if !(cfg.modulus > 0.0 && cfg.modulus < 1.0) {
                        return Err(ConfigError("k: must lie in (0, 1)".into()));
                    }
                }
                "tau" => {
                    let t = parse_f64(key, value)?;
                    if t <= 0.0 {
                        return Err(ConfigError("tau: must be positive".into()));
                    }
                    cfg.tau = Some(t);
                }
                "hbar_grid" => cfg.hbar_grid = parse_grid(key, value)?,
                "zeta_grid" => cfg.zeta_grid = parse_grid(key, value)?,
                "pmax" => {
                    cfg.pmax = value
                        .parse::<usize>()
                        .map_err(|_| ConfigError(format!("pmax: not a count: {value:?}")))?;
                    if cfg.pmax == 0 {
                        return Err(ConfigError("pmax: must be positive".into()));
                    }
                }
                "ncut" => {
                    cfg.ncut = value
                        .parse::<i64>()
                        .map_err(|_| ConfigError(format!("ncut: not a count: {value:?}")))?;
                    if cfg.ncut <= 0 {
                        return Err(ConfigError("ncut: must be positive".into()));
                    }
                }
                "quad_tol" => {
                    cfg.quad_tol = parse_f64(key, value)?;
                    if cfg.quad_tol <= 0.0 {
                        return Err(ConfigError("quad_tol: must be positive".into()));
                    }
                }
                _ => {
                    if let Some(case) = key.strip_prefix("tolerance.") {
                        let tol = parse_f64(key, value)?;
                        if tol <= 0.0 {
                            return Err(ConfigError(format!("{key}: must be positive")));
                        }
                        cfg.tolerances.insert(case.to_string(), tol);
                    } else {
                        return Err(ConfigError(format!("unknown key: {key}")));
                    }
                }
            }
        }
        Ok(cfg)
    }

    /// Override tolerance for a case, falling back to the suite default.
    pub fn tolerance(&self, case: &str, default: f64) -> f64 {
        self.tolerances.get(case).copied().unwrap_or(default)
    }

    /// Effective sample count for a suite with the given default.
    pub fn n(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// Canonical rendering of everything except the seed; the digest is
    /// taken over this, so a seed override keeps the config identity.
    fn canonical(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "eta={:.17e}\n", self.eta);
        let _ = write!(s, "k={:.17e}\n", self.modulus);
        if let Some(t) = self.tau {
            let _ = write!(s, "tau={t:.17e}\n");
        }
        let grid = |s: &mut String, name: &str, g: &[f64]| {
            let _ = write!(s, "{name}=");
            for (i, v) in g.iter().enumerate() {
                let _ = write!(s, "{}{v:.17e}", if i > 0 { "," } else { "" });
            }
            s.push('\n');
        };
        grid(&mut s, "hbar_grid", &self.hbar_grid);
        grid(&mut s, "zeta_grid", &self.zeta_grid);
        let _ = write!(s, "pmax={}\n", self.pmax);
        let _ = write!(s, "ncut={}\n", self.ncut);
        let _ = write!(s, "quad_tol={:.17e}\n", self.quad_tol);
        if let Some(n) = self.samples {
            let _ = write!(s, "samples={n}\n");
        }
        for (k, v) in &self.tolerances {
            let _ = write!(s, "tolerance.{k}={v:.17e}\n");
        }
        s
    }

    pub fn digest(&self) -> String {
        format!("{:016x}", fnv1a(self.canonical().as_bytes()))
    }
}

/// FNV-1a, 64 bit; also used to derive per-case seed substreams.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
