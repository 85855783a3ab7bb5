//! Verification report assembly and emission.

use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub name: String,
    pub inputs: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub config_digest: String,
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn new(suite: &str, seed: u64, config_digest: String, mut cases: Vec<CaseReport>) -> Self {
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            suite: suite.to_string(),
            seed,
            config_digest,
            cases,
        }
    }

    pub fn total(&self) -> usize {
        self.cases.len()
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn max_residual(&self) -> f64 {
        self.cases.iter().fold(0.0, |m, c| m.max(c.residual))
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.total()
    }

    /// JSON emission; 17 significant digits so every float survives a
    /// parse round trip.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = write!(s, "  \"suite\": {},\n", json_str(&self.suite));
        let _ = write!(s, "  \"seed\": {},\n", self.seed);
        let _ = write!(s, "  \"config_digest\": {},\n", json_str(&self.config_digest));
        s.push_str("  \"cases\": [\n");
        for (i, c) in self.cases.iter().enumerate() {
            let _ = write!(
                s,
                "    {{\"name\": {}, \"inputs\": {}, \"residual\": {:.16e}, \"tolerance\": {:.16e}, \"pass\": {}}}{}\n",
                json_str(&c.name),
                json_str(&c.inputs),
                c.residual,
                c.tolerance,
                c.pass,
                if i + 1 < self.cases.len() { "," } else { "" },
            );
        }
        s.push_str("  ],\n");
        let _ = write!(
            s,
            "  \"summary\": {{\"total\": {}, \"passed\": {}, \"max_residual\": {:.16e}}}\n",
            self.total(),
            self.passed(),
            self.max_residual(),
        );
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "suite {} seed {} config {}",
            self.suite, self.seed, self.config_digest
        );
        for c in &self.cases {
            let _ = writeln!(
                s,
                "{} {}: residual {:.6e} tolerance {:.1e} ({})",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance,
                c.inputs,
            );
        }
        let _ = writeln!(
            s,
            "{} {}/{} max residual {:.6e}",
            if self.all_pass() { "PASS" } else { "FAIL" },
            self.passed(),
            self.total(),
            self.max_residual(),
        );
        s
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(name: &str, residual: f64, tolerance: f64) -> CaseReport {
        CaseReport {
            name: name.into(),
            inputs: "n=2".into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    #[test]
    fn cases_are_sorted_and_summarized() {
        let r = Report::new(
            "demo",
            3,
            "abc".into(),
            vec![case("b", 1e-12, 1e-9), case("a", 2.0, 1e-9)],
        );
        assert_eq!(r.cases[0].name, "a");
        assert_eq!(r.total(), 2);
        assert_eq!(r.passed(), 1);
        assert!(!r.all_pass());
        assert_eq!(r.max_residual(), 2.0);
    }

    #[test]
    fn empty_report_summary_is_zero() {
        let r = Report::new("demo", 1, "d".into(), Vec::new());
        assert!(r.to_json().contains("\"total\": 0, \"passed\": 0"));
        assert!(r.all_pass());
    }

    #[test]
    fn text_has_one_line_per_case_and_a_verdict() {
        let r = Report::new("demo", 1, "d".into(), vec![case("a", 0.0, 1.0)]);
        let t = r.to_text();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("PASS"));
    }

    #[test]
    fn json_escapes_are_applied() {
        assert_eq!(json_str("a\"b\\c"), "\"a\\\"b\\\\c\"");
    }
}
