//! Pass/fail findings shared by the verifiers.

use std::fmt;

use serde::Serialize;

/// Witnesses kept per finding; further failures are only counted.
pub const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub claim: String,
    pub passed: bool,
    /// Number of instances of the claim that were evaluated.
    pub checked: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
}

impl Finding {
    pub fn new(claim: impl Into<String>) -> Self {
        Finding { claim: claim.into(), passed: true, checked: 0, failures: 0, witnesses: Vec::new() }
    }

    /// Records one evaluation; `witness` is only rendered on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub passed: bool,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(title: impl Into<String>, findings: Vec<Finding>) -> Self {
        let passed = findings.iter().all(|f| f.passed);
        Report { title: title.into(), passed, findings }
    }

    pub fn finding(&self, claim: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.claim == claim)
    }

    pub fn counterexamples(&self) -> u64 {
        self.findings.iter().map(|f| f.failures).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.title, if self.passed { "PASS" } else { "FAIL" })?;
        for finding in &self.findings {
            writeln!(
                f,
                "  [{}] {} ({} checked, {} failed)",
                if finding.passed { "ok" } else { "FAIL" },
                finding.claim,
                finding.checked,
                finding.failures
            )?;
            for w in &finding.witnesses {
                writeln!(f, "      witness: {w}")?;
            }
        }
        Ok(())
    }
}

/// How the verifiers cover quantifier domains that are too large to
/// enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub seed: u64,
    /// Collections of at most this many elements are checked on every subset.
    pub exhaustive_limit: usize,
    /// Seeded random subsets drawn in addition to all pairs and triples.
    pub random_subsets: usize,
    /// Largest tuple product enumerated exhaustively.
    pub tuple_limit: u64,
    /// Tuples drawn when the product exceeds `tuple_limit`.
    pub tuple_samples: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            seed: 0x05EE_D0FC_1A55,
            exhaustive_limit: 12,
            random_subsets: 1000,
            tuple_limit: 100_000,
            tuple_samples: 10_000,
        }
    }
}
