//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "qhowe-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub values: Option<serde_json::Value>,
}

impl Item {
    pub fn pass(name: impl Into<String>) -> Self {
        Item { name: name.into(), status: Status::Pass, witness: None, values: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Item { name: name.into(), status: Status::Fail, witness: Some(witness.into()), values: None }
    }

    pub fn skip(name: impl Into<String>, why: impl Into<String>) -> Self {
        Item { name: name.into(), status: Status::Skip, witness: Some(why.into()), values: None }
    }

    pub fn with_values(mut self, v: serde_json::Value) -> Self {
        self.values = Some(v);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub items: Vec<Item>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), items: Vec::new() }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.items.extend(other.items);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for it in &self.items {
            match it.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }
}

/// Run metadata kept apart from the comparable body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Meta {
    pub version: String,
    pub jobs: usize,
    pub elapsed_ms: u128,
}

/// The full document written by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub config: serde_json::Value,
    pub suite: String,
    pub items: Vec<Item>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
}

impl Report {
    pub fn new(config: serde_json::Value, suite: SuiteReport) -> Self {
        let summary = suite.summary();
        Report { schema: SCHEMA.into(), config, suite: suite.suite, items: suite.items, summary, meta: None }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    /// Serialization without the metadata block; identical inputs give
    /// identical bodies.
    pub fn body_json(&self) -> String {
        let mut body = self.clone();
        body.meta = None;
        serde_json::to_string_pretty(&body).expect("reports serialize")
    }
}
