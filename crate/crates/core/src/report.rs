use std::fmt::Display;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Outcome of one verification run. Mathematical failures are data here,
/// never errors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub claim: String,
    pub group: String,
    pub verdict: Verdict,
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(claim: &str, group: &str, verdict: Verdict, details: impl Serialize) -> Self {
        Report {
            claim: claim.to_string(),
            group: group.to_string(),
            verdict,
            details: serde_json::to_value(details).expect("report details serialize"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub(crate) fn serialize_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
