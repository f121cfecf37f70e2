//! Pass/fail reports produced by the verification suites.
//!
//! A failed check is data, not an error: suites always return a report and
//! callers decide how to surface it (the CLI maps `pass = false` to exit
//! code 1).

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CaseReport {
    pub fn new(
        id: impl Into<String>,
        params: impl IntoIterator<Item = (String, String)>,
        pass: bool,
        first_failure: Option<String>,
    ) -> Self {
        CaseReport {
            id: id.into(),
            params: params.into_iter().collect(),
            pass,
            first_failure,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, cases: Vec<CaseReport>) -> Self {
        let pass = cases.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.into(),
            cases,
            pass,
        }
    }

    pub fn merge(suite: impl Into<String>, parts: Vec<SuiteReport>) -> Self {
        let cases = parts.into_iter().flat_map(|p| p.cases).collect();
        SuiteReport::new(suite, cases)
    }
}
