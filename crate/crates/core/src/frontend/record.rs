use std::fmt;

/// One line of machine-readable output: tab-separated `key=value` fields in the
/// fixed order `kind`, parameters (in insertion order), `verdict`, `payload`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub kind: String,
    pub params: Vec<(String, String)>,
    pub verdict: String,
    pub payload: String,
}

impl OutputRecord {
    pub fn new(kind: impl Into<String>) -> Self {
        OutputRecord { kind: kind.into(), params: Vec::new(), verdict: String::new(), payload: String::new() }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn verdict(mut self, verdict: impl Into<String>) -> Self {
        self.verdict = verdict.into();
        self
    }

    pub fn payload(mut self, payload: impl Into<String>) -> Self {
        self.payload = payload.into();
        self
    }
}

// tabs and newlines would break the one-record-per-line format
fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

impl fmt::Display for OutputRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind={}", clean(&self.kind))?;
        for (k, v) in &self.params {
            write!(f, "\t{}={}", clean(k), clean(v))?;
        }
        write!(f, "\tverdict={}\tpayload={}", clean(&self.verdict), clean(&self.payload))
    }
}
