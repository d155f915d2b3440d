//! Consolidated finite evidence for the open conjectures, assembled from
//! suite reports. Entries record what was checked and found; none of them
//! settles a conjecture.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::suites::{SuiteReport, SCHEMA};

pub const NOT_YET_COMPUTED: &str = "not yet computed";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvidenceEntry {
    pub id: String,
    pub title: String,
    pub statement: String,
    /// `computed` or [`NOT_YET_COMPUTED`].
    pub status: String,
    pub instances_checked: Option<usize>,
    pub counterexamples_found: Option<usize>,
    pub bounds: Vec<String>,
    pub commands: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub schema: u32,
    pub suites_used: Vec<String>,
    pub entries: Vec<EvidenceEntry>,
    /// `l_q(n)/n` values, whose infimum over `n` is `1 + ε_q`.
    pub l_ratio_table: Option<Value>,
}

impl EvidenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn entry(&self, id: &str) -> Option<&EvidenceEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

fn num(v: &Value, key: &str) -> usize {
    v.get(key).and_then(Value::as_u64).unwrap_or(0) as usize
}

struct Spec {
    id: &'static str,
    title: &'static str,
    statement: &'static str,
    suites: &'static [&'static str],
}

const SPECS: [Spec; 8] = [
    Spec {
        id: "pyber-1",
        title: "Pyber's conjecture",
        statement: "g(A) > log_c|A| for a fixed c > 1 and all finite abelian A",
        suites: &["fedthm-scan"],
    },
    Spec {
        id: "pyber-2",
        title: "Coset version",
        statement: "f(A) > log_c2|A| for a fixed c2 > 1 and all finite abelian A",
        suites: &["fedthm-scan", "phi-table"],
    },
    Spec {
        id: "ajt",
        title: "Alon-Jaeger-Tarsi",
        statement: "for q > 3 and nonsingular M over GF(q) some nowhere-zero x has Mx also nowhere zero",
        suites: &["ajt-equiv"],
    },
    Spec {
        id: "c-ajt",
        title: "Choosability version",
        statement: "for nonsingular M and any v some nowhere-zero x has Mx - v nowhere zero",
        suites: &["hyperplane-min"],
    },
    Spec {
        id: "ab",
        title: "Additive basis conjecture",
        statement: "c(p) bases of GF(p)^n give every vector as a zero-one linear combination",
        suites: &["hyperplane-min"],
    },
    Spec {
        id: "w",
        title: "Weak conjecture",
        statement: "c2(p) bases of GF(p)^n give every vector as a nowhere zero linear combination",
        suites: &["hyperplane-min"],
    },
    Spec {
        id: "wt",
        title: "Weak three-flow conjecture",
        statement: "graphs of high enough fixed connectivity admit a nowhere-zero 3-flow",
        suites: &["flows"],
    },
    Spec {
        id: "thecon",
        title: "Codimension of irredundant affine coverings",
        statement: "codimension of the intersection is at most k/(1+eps_q) for some eps_q > 0, q > 2",
        suites: &["hyperplane-min"],
    },
];

/// Builds the report from whatever suite reports are available. Entries
/// whose suites are missing carry the "not yet computed" marker.
pub fn evidence_report(reports: &[SuiteReport]) -> EvidenceReport {
    let find = |name: &str| reports.iter().find(|r| r.suite == name);
    let mut entries = Vec::new();
    for spec in &SPECS {
        let present: Vec<&SuiteReport> = spec.suites.iter().filter_map(|s| find(s)).collect();
        let mut e = EvidenceEntry {
            id: spec.id.into(),
            title: spec.title.into(),
            statement: spec.statement.into(),
            status: NOT_YET_COMPUTED.into(),
            instances_checked: None,
            counterexamples_found: None,
            bounds: Vec::new(),
            commands: spec.suites.iter().map(|s| format!("covercraft suite {s}")).collect(),
        };
        if present.len() == spec.suites.len() {
            e.status = "computed".into();
            fill(&mut e, &present);
        }
        entries.push(e);
    }
    let l_ratio_table = find("hyperplane-min")
        .and_then(|r| r.item("hyperplane/l-table"))
        .map(|i| i.detail.clone());
    let mut suites_used: Vec<String> = reports.iter().map(|r| r.suite.clone()).collect();
    suites_used.sort();
    suites_used.dedup();
    EvidenceReport {
        schema: SCHEMA,
        suites_used,
        entries,
        l_ratio_table,
    }
}

fn fill(e: &mut EvidenceEntry, reports: &[&SuiteReport]) {
    let r = reports[0];
    match e.id.as_str() {
        "pyber-1" | "pyber-2" => {
            let key = if e.id == "pyber-1" { "g" } else { "f" };
            let items: Vec<_> = r.items_with_prefix("fedthm/").collect();
            e.instances_checked = Some(items.len());
            e.counterexamples_found = Some(items.iter().filter(|i| !i.pass).count());
            let max_order = items.iter().map(|i| num(&i.detail, "order")).max().unwrap_or(0);
            e.bounds.push(format!("{key}(A) >= 1 + lambda(|A|) for every decomposition with |A| <= {max_order}"));
            let values: Vec<String> = items
                .iter()
                .map(|i| format!("{}={}", i.name.trim_start_matches("fedthm/"), i.detail[key]))
                .collect();
            e.bounds.push(format!("{key} values: {}", values.join(", ")));
            if e.id == "pyber-2" {
                let elem: Vec<_> = r.items_with_prefix("f-elementary/").filter(|i| i.pass).collect();
                if !elem.is_empty() {
                    e.bounds.push(format!(
                        "f((C2)^n) = n+1 confirmed for n in {{{}}}",
                        elem.iter().map(|i| num(&i.detail, "n").to_string()).collect::<Vec<_>>().join(",")
                    ));
                }
                if let Some(phi) = reports.get(1) {
                    let n = phi.items_with_prefix("phi/").filter(|i| i.pass).count();
                    e.bounds.push(format!("phi(A) = tau(|A|) on {n} groups"));
                }
            }
        }
        "ajt" => {
            let mut checked = 0;
            let mut nonsingular_fail = 0;
            for q in [3, 5] {
                if let Some(i) = r.item(&format!("ajt/GF({q})/triple")) {
                    checked += num(&i.detail, "nonsingular");
                    let bad = num(&i.detail, "nonsingular_non_ajt");
                    if q > 3 {
                        nonsingular_fail += bad;
                    } else {
                        e.bounds.push(format!("{bad} sampled nonsingular non-AJT matrices over GF(3), outside the q > 3 range"));
                    }
                }
            }
            e.instances_checked = Some(checked);
            e.counterexamples_found = Some(nonsingular_fail);
            e.bounds.push("three characterizations agree on every sampled matrix over GF(3) and GF(5)".into());
            if r.item("two-family/GF(3)^2").is_some_and(|i| i.pass) {
                e.bounds.push("the GF(3) plane has a nonsingular non-AJT matrix from two covering families".into());
            }
        }
        "c-ajt" => {
            let items: Vec<_> = r.items_with_prefix("nowhere-zero/").collect();
            e.instances_checked = Some(items.iter().map(|i| num(&i.detail, "checked")).sum());
            e.counterexamples_found = Some(items.iter().map(|i| i.detail["failures"].as_array().map_or(0, Vec::len)).sum());
            e.bounds.push("only non-prime fields GF(4), GF(9) checked; prime fields not computed".into());
        }
        "ab" | "w" => {
            let prefix = if e.id == "ab" { "additive-basis/" } else { "weak/" };
            let items: Vec<_> = r.items_with_prefix(prefix).collect();
            e.instances_checked = Some(items.iter().map(|i| num(&i.detail, "samples")).sum());
            e.counterexamples_found = Some(items.iter().map(|i| num(&i.detail, "unresolved")).sum());
            for i in items {
                e.bounds.push(format!(
                    "{}: at most {} bases needed on every sample",
                    i.name.trim_start_matches(prefix).trim_end_matches("/sampled"),
                    i.detail["max_needed"]
                ));
            }
        }
        "wt" => {
            if let Some(i) = r.item("flow/oracles") {
                e.instances_checked = Some(num(&i.detail, "graphs"));
            }
            e.counterexamples_found = None;
            if r.item("flow/K4/C3").is_some_and(|i| i.pass) {
                e.bounds.push("K4 is 3-connected without a nowhere-zero 3-flow, so the connectivity must exceed 3".into());
            }
        }
        "thecon" => {
            let codim = r.item("codim-ratio/GF(4)^2");
            if let Some(i) = codim {
                e.instances_checked = Some(num(&i.detail, "covers_checked"));
                e.counterexamples_found = Some(i.detail["failures"].as_array().map_or(0, Vec::len));
                if i.pass {
                    e.bounds.push("codim < 2k/3 holds on all found instances over GF(4)^2".into());
                }
            }
            if let Some(t) = r.item("hyperplane/l-table").and_then(|i| i.detail.as_array().cloned()) {
                for q in [2u64, 3, 4, 5] {
                    let best = t
                        .iter()
                        .filter(|row| row["q"].as_u64() == Some(q))
                        .filter_map(|row| row["ratio"].as_f64())
                        .fold(f64::INFINITY, f64::min);
                    if best.is_finite() {
                        e.bounds.push(format!("1 + eps_{q} <= {best:.4} from the computed l_{q}(n)/n"));
                    }
                }
            }
        }
        _ => unreachable!("unknown evidence entry"),
    }
}
