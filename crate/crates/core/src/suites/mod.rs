//! Named experiment bundles. Each run is a pure function of its
//! configuration: the same seed gives byte-identical JSON at any thread
//! count.

mod flows;
mod groups;
mod linear;
mod sampling;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abelian::DEFAULT_ELEMENT_LIMIT;
use crate::covering::SearchBudget;
use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;

pub const SUITE_NAMES: [&str; 7] = [
    "phi-table",
    "fedthm-scan",
    "criterion-equiv",
    "ajt-equiv",
    "packing",
    "flows",
    "hyperplane-min",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub element_limit: usize,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            element_limit: DEFAULT_ELEMENT_LIMIT,
            node_limit: None,
            time_limit: None,
        }
    }
}

impl SuiteConfig {
    pub(crate) fn adjust(&self, mut b: SearchBudget) -> SearchBudget {
        if let Some(n) = self.node_limit {
            b.node_limit = n;
        }
        b.time_limit = self.time_limit;
        b
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteItem {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub failures: usize,
    /// Searches that ran out of budget. Their items still pass when a
    /// proven lower bound settles the check.
    pub inconclusive: usize,
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn item(&self, name: &str) -> Option<&SuiteItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn items_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a SuiteItem> + 'a {
        self.items.iter().filter(move |i| i.name.starts_with(prefix))
    }
}

pub(crate) struct Collector {
    items: Vec<SuiteItem>,
    inconclusive: usize,
}

impl Collector {
    fn new() -> Self {
        Collector {
            items: Vec::new(),
            inconclusive: 0,
        }
    }

    pub(crate) fn push(&mut self, name: impl Into<String>, pass: bool, detail: Value) {
        self.items.push(SuiteItem {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub(crate) fn mark_inconclusive(&mut self) {
        self.inconclusive += 1;
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut c = Collector::new();
    match name {
        "phi-table" => groups::phi_table(cfg, &mut c)?,
        "fedthm-scan" => groups::fedthm_scan(cfg, &mut c)?,
        "criterion-equiv" => sampling::criterion_equiv(cfg, &mut c)?,
        "ajt-equiv" => sampling::ajt_equiv(cfg, &mut c)?,
        "packing" => linear::packing(cfg, &mut c)?,
        "flows" => flows::flows(cfg, &mut c)?,
        "hyperplane-min" => linear::hyperplane_min(cfg, &mut c)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; known: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    }
    let failures = c.items.iter().filter(|i| !i.pass).count();
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: name.to_string(),
        seed: cfg.seed,
        passed: failures == 0,
        failures,
        inconclusive: c.inconclusive,
        items: c.items,
    })
}
