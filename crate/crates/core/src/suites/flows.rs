use serde_json::json;

use super::{Collector, SuiteConfig};
use crate::abelian::FiniteAbelianGroup;
use crate::error::Result;
use crate::graph::{colorable_naive, colorable_via_cover, colorable_via_parity, flow_space, nz_flow_exists, Graph};
use crate::par;

pub const ORACLE_MAX_VERTICES: usize = 5;
pub const FLOW_ORACLE_MAX_VERTICES: usize = 4;

/// Every simple graph on `n` labelled vertices, by edge subset of `K_n`.
fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            Graph::new(n, &edges).expect("simple graph")
        })
        .collect()
}

/// Nowhere-zero flow by trying every edge labelling.
fn brute_flow_exists(g: &Graph, a: &FiniteAbelianGroup) -> bool {
    let m = g.edge_count();
    let nz = a.order() - 1;
    let total = nz.pow(m as u32);
    (0..total).any(|mut i| {
        let mut bal = vec![0usize; g.vertex_count()];
        for &(u, v) in g.edges() {
            let x = 1 + i % nz;
            i /= nz;
            bal[u] = a.add(bal[u], x);
            bal[v] = a.sub(bal[v], x);
        }
        bal.iter().all(|&b| b == 0)
    })
}

fn colorings(g: &Graph, q: u32, limit: usize) -> Result<[Option<bool>; 3]> {
    let naive = colorable_naive(g, q).is_some();
    let cover = colorable_via_cover(g, q, limit)?.witness.is_some();
    let parity = if q % 2 == 1 { Some(colorable_via_parity(g, q, None, limit)?) } else { None };
    Ok([Some(naive), Some(cover), parity])
}

pub(crate) fn flows(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    let limit = cfg.element_limit;
    let grp = |s: &str| FiniteAbelianGroup::parse(s, limit);

    let tri = colorings(&Graph::complete(3), 3, limit)?;
    c.push("color/triangle/3", tri.iter().all(|v| *v == Some(true)), json!({ "naive_cover_parity": tri }));
    let k4 = colorings(&Graph::complete(4), 3, limit)?;
    c.push("color/K4/3", k4.iter().all(|v| *v == Some(false)), json!({ "naive_cover_parity": k4 }));

    let facts = [
        ("K4", Graph::complete(4), "C3", false),
        ("K4", Graph::complete(4), "C4", true),
        ("K4", Graph::complete(4), "C2*C2", true),
        ("Petersen", Graph::petersen(), "C4", false),
        ("Petersen", Graph::petersen(), "C2*C2", false),
    ];
    for (gname, g, aname, expect) in facts {
        let r = nz_flow_exists(&g, &grp(aname)?, limit)?;
        let ok = r.flow.is_some() == expect && r.subgroups_cover != expect && r.intersection_trivial;
        c.push(format!("flow/{gname}/{aname}"), ok, serde_json::to_value(&r).expect("plain data"));
    }

    // every single-edge deletion, reported for the two flow-free cases
    for (gname, g, aname) in [("K4", Graph::complete(4), "C3"), ("Petersen", Graph::petersen(), "C4")] {
        let a = grp(aname)?;
        let after: Vec<bool> = (0..g.edge_count())
            .map(|e| nz_flow_exists(&g.without_edge(e), &a, limit).map(|r| r.flow.is_some()))
            .collect::<Result<_>>()?;
        c.push(
            format!("flow/{gname}/{aname}/edge-deletions"),
            true,
            json!({ "flow_after_deleting_edge": after }),
        );
    }

    for q in [2u32, 3] {
        let mut checked = 0usize;
        let mut bad = Vec::new();
        for n in 1..=ORACLE_MAX_VERTICES {
            let graphs = all_graphs(n);
            let verdicts = par::map_slice(&graphs, |g| colorings(g, q, limit));
            for (g, v) in graphs.iter().zip(verdicts) {
                let v = v?;
                checked += 1;
                if v.iter().flatten().any(|&x| Some(x) != v[0]) && bad.len() < 5 {
                    bad.push(json!({ "graph": g.to_text(), "naive_cover_parity": v }));
                }
            }
        }
        c.push(format!("color/oracles/{q}"), bad.is_empty(), json!({ "graphs": checked, "disagreements": bad }));
    }

    let groups = [grp("C2")?, grp("C3")?, grp("C4")?, grp("C2*C2")?, grp("C5")?];
    let mut graphs = Vec::new();
    for n in 1..=FLOW_ORACLE_MAX_VERTICES {
        graphs.extend(all_graphs(n));
    }
    let rows = par::map_slice(&graphs, |g| -> Result<serde_json::Value> {
        let mut mismatch = Vec::new();
        let mut counts = Vec::new();
        for a in &groups {
            let r = nz_flow_exists(g, a, limit)?;
            let fs = flow_space(g, a, limit)?;
            let expected_dim = g.edge_count() + g.components() - g.vertex_count();
            let brute = brute_flow_exists(g, a);
            let flipped = (0..g.edge_count()).all(|e| {
                nz_flow_exists(&g.flip(e), a, limit).is_ok_and(|f| f.flow.is_some() == brute)
            });
            if r.flow.is_some() != brute || !flipped || fs.dimension() != expected_dim {
                mismatch.push(a.to_string());
            }
            counts.push(fs.nowhere_zero_count());
        }
        // the count depends only on |A|: C4 and C2*C2 agree
        if counts[2] != counts[3] {
            mismatch.push("count C4 vs C2*C2".to_string());
        }
        Ok(json!({ "graph": g.to_text(), "mismatch": mismatch, "counts": counts }))
    });
    let mut bad = Vec::new();
    for r in rows {
        let r = r?;
        if r["mismatch"].as_array().is_some_and(|m| !m.is_empty()) && bad.len() < 5 {
            bad.push(r);
        }
    }
    c.push(
        "flow/oracles",
        bad.is_empty(),
        json!({ "graphs": graphs.len(), "groups": groups.iter().map(|g| g.to_string()).collect::<Vec<_>>(), "disagreements": bad }),
    );
    Ok(())
}
