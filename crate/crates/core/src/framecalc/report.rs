use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one verification step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepStatus {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "mismatch")]
    Mismatch,
    /// A printed intermediate differs from the recomputation while the
    /// conclusion it feeds is still established from the base rules.
    #[serde(rename = "paper-text mismatch")]
    PaperTextMismatch,
}

impl StepStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            StepStatus::Verified
        } else {
            StepStatus::Mismatch
        }
    }

    /// Whether this status fails the enclosing certificate.
    pub fn is_fatal(self) -> bool {
        self == StepStatus::Mismatch
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StepStatus::Verified => "verified",
            StepStatus::Mismatch => "mismatch",
            StepStatus::PaperTextMismatch => "paper-text mismatch",
        }
    }
}

impl fmt::Display for StepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked claim with its witness.
///
/// The witness is the reduced residual (`"0"` on success) or a rendered
/// comparison list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub name: String,
    pub claim: String,
    pub paper_ref: String,
    pub status: StepStatus,
    pub witness: String,
}

impl StepReport {
    pub fn new(
        name: impl Into<String>,
        claim: impl Into<String>,
        paper_ref: impl Into<String>,
        status: StepStatus,
        witness: impl Into<String>,
    ) -> Self {
        StepReport {
            name: name.into(),
            claim: claim.into(),
            paper_ref: paper_ref.into(),
            status,
            witness: witness.into(),
        }
    }

    pub fn verified(&self) -> bool {
        self.status == StepStatus::Verified
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertStatus {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "failed")]
    Failed,
}

impl fmt::Display for CertStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertStatus::Verified => "verified",
            CertStatus::Failed => "failed",
        })
    }
}

/// Ordered list of steps with a conclusion that holds iff no step failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub steps: Vec<StepReport>,
    pub conclusion: String,
    pub status: CertStatus,
}

impl Certificate {
    pub fn new(name: impl Into<String>, steps: Vec<StepReport>, conclusion: impl Into<String>) -> Self {
        let status = if steps.iter().any(|s| s.status.is_fatal()) {
            CertStatus::Failed
        } else {
            CertStatus::Verified
        };
        Certificate {
            name: name.into(),
            steps,
            conclusion: conclusion.into(),
            status,
        }
    }

    pub fn verified(&self) -> bool {
        self.status == CertStatus::Verified
    }

    pub fn step(&self, name: &str) -> Option<&StepReport> {
        self.steps.iter().find(|s| s.name == name)
    }
}

/// Renders a coefficient comparison `name: got vs expected` list.
pub(crate) fn comparison<T: fmt::Display>(items: &[(&str, T, T)]) -> String {
    items
        .iter()
        .map(|(n, got, want)| format!("{n}: {got} vs {want}"))
        .collect::<Vec<_>>()
        .join("; ")
}
