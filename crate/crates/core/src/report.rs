//! Verification reports: named checks with the identity they certify, a
//! pass/fail status and the residual printout, plus JSON rendering with a
//! stable field layout.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// the identity or display the check certifies, by its conventional name
    pub anchor: String,
    pub status: bool,
    pub residual: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: true,
            residual: "0".into(),
        }
    }

    pub fn of(name: impl Into<String>, anchor: impl Into<String>, ok: bool, residual: String) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: ok,
            residual: if ok { "0".into() } else { residual },
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.status).count()
    }

    pub fn fail_count(&self) -> usize {
        self.checks.len() - self.pass_count()
    }

    pub fn all_pass(&self) -> bool {
        self.fail_count() == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "name": c.name,
                "anchor": c.anchor,
                "status": if c.status { "pass" } else { "fail" },
                "residual": c.residual,
            })).collect::<Vec<_>>(),
            "summary": { "pass": self.pass_count(), "fail": self.fail_count() },
            "wall_ms": self.wall_ms,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("# suite `{}`\n\n", self.suite);
        for c in &self.checks {
            out.push_str(&format!(
                "- [{}] {} ({})\n",
                if c.status { "pass" } else { "FAIL" },
                c.name,
                c.anchor,
            ));
            if !c.status {
                out.push_str(&format!("      residual: {}\n", c.residual));
            }
        }
        out.push_str(&format!(
            "\n{} checks: {} pass, {} fail ({} ms)\n",
            self.checks.len(),
            self.pass_count(),
            self.fail_count(),
            self.wall_ms
        ));
        out
    }
}
