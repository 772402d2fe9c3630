use serde::{Deserialize, Serialize};

/// One named pass/fail line of a validation or verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl CheckResult {
    pub fn new(name: &str, pass: bool, details: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), pass, details: details.into() }
    }
}
