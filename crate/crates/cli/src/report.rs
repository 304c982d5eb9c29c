use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use bihar_core::framecalc::StepReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Verified,
    Failed,
    Error,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Verified => 0,
            RunStatus::Failed => 1,
            RunStatus::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            RunStatus::Verified => "verified",
            RunStatus::Failed => "failed",
            RunStatus::Error => "error",
        }
    }
}

/// Machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: RunStatus,
    pub steps: Vec<StepReport>,
    pub timing_ms: u64,
    pub seed: u64,
}

impl Report {
    /// Status is `verified` iff no step is a mismatch.
    pub fn from_steps(command: String, steps: Vec<StepReport>, seed: u64) -> Self {
        let status = if steps.iter().any(|s| s.status.is_fatal()) {
            RunStatus::Failed
        } else {
            RunStatus::Verified
        };
        Report {
            command,
            status,
            steps,
            timing_ms: 0,
            seed,
        }
    }

    pub fn error(command: String, seed: u64) -> Self {
        Report {
            command,
            status: RunStatus::Error,
            steps: Vec::new(),
            timing_ms: 0,
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for s in &self.steps {
            writeln!(out, "[{}] {}: {}", s.status, s.name, s.claim).unwrap();
            writeln!(out, "    witness: {}", s.witness).unwrap();
            if !s.paper_ref.is_empty() {
                writeln!(out, "    ref: {}", s.paper_ref).unwrap();
            }
        }
        let verified = self.steps.iter().filter(|s| !s.status.is_fatal()).count();
        writeln!(
            out,
            "status: {} ({verified}/{} steps)",
            self.status.as_str(),
            self.steps.len()
        )
        .unwrap();
        writeln!(out, "seed: {}", self.seed).unwrap();
        writeln!(out, "timing_ms: {}", self.timing_ms).unwrap();
        out
    }
}
