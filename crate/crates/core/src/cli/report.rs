//! Pass/fail records for the `verify` suites.

use std::fmt::Display;

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub id: String,
    pub params: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(suite: &str) -> Self {
        CheckReport { suite: suite.to_string(), items: Vec::new() }
    }

    /// Records a check that `actual` equals `expected`, compared as decimal text.
    pub fn check(&mut self, id: &str, params: impl Display, expected: impl Display, actual: impl Display) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        self.items.push(CheckItem {
            id: id.to_string(),
            params: params.to_string(),
            pass: expected == actual,
            expected,
            actual,
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn passed(&self) -> usize {
        self.items.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.items.len() - self.passed()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .items
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "params": c.params,
                    "status": if c.pass { "pass" } else { "fail" },
                    "expected": c.expected,
                    "actual": c.actual,
                })
            })
            .collect();
        json!({
            "suite": self.suite,
            "passed": self.passed().to_string(),
            "failed": self.failed().to_string(),
            "checks": checks,
        })
    }
}
