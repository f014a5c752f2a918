//! Pass/fail reports for structure verification.
//!
//! Every verifier in this crate runs a fixed list of named checks and
//! records, for each failing check, the first basis tuple (in lexicographic
//! order) where the identity broke. Reports are values, not errors:
//! verifying an invalid structure is a successful computation whose result
//! says "invalid".

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    /// Stable identifier for the check, e.g. "associativity".
    pub name: String,
    pub passed: bool,
    /// First failing basis tuple, rendered with basis labels.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// What was verified, e.g. the algebra or system name.
    pub subject: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Absorbs another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for c in other.checks {
            self.checks.push(CheckResult {
                name: format!("{prefix}{}", c.name),
                passed: c.passed,
                witness: c.witness,
            });
        }
    }

    /// One line per check, stable order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {}\n",
            self.subject,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<30} {}{}\n",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                match &c.witness {
                    Some(w) => format!("  at {w}"),
                    None => String::new(),
                }
            ));
        }
        out
    }
}
