//! Pass/fail reports produced by the verifier suites.

/// One checked case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckCase {
    pub label: String,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Outcome of a verifier suite: every case in evaluation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    pub cases: Vec<CheckCase>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport { suite: suite.into(), cases: Vec::new() }
    }

    pub fn record(&mut self, label: impl Into<String>, passed: bool) {
        self.cases.push(CheckCase { label: label.into(), passed, detail: None });
    }

    pub fn record_with(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.cases.push(CheckCase { label: label.into(), passed, detail: Some(detail.into()) });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.cases.extend(other.cases);
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckCase> {
        self.cases.iter().find(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }
}
