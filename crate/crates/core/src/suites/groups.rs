use serde_json::json;

use super::{Collector, SuiteConfig};
use crate::abelian::{arith::gcd, decompositions_up_to, lambda_of, tau_of, FiniteAbelianGroup};
use crate::covering::{
    audit, blocking_number, default_blocking_budget, default_budget, min_trivial_intersection_cover,
    phi, punctured_cover_construct, verify_coset_index_bound, CoverMode, InvariantOutcome,
    InvariantValue, SearchStatus,
};
use crate::bitset::BitSet;
use crate::error::Result;

pub const TABLE_MAX_ORDER: usize = 16;

fn value_json(o: &InvariantOutcome) -> serde_json::Value {
    serde_json::to_value(o.value).expect("plain data")
}

/// φ(A) = τ(|A|) for every decomposition of order ≤ 16, the construction,
/// superadditivity over coprime products, and affine blocking numbers.
pub(crate) fn phi_table(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    let groups: Vec<FiniteAbelianGroup> = decompositions_up_to(TABLE_MAX_ORDER)
        .into_iter()
        .map(|o| FiniteAbelianGroup::new(o, cfg.element_limit))
        .collect::<Result<_>>()?;
    let mut phis = Vec::new();
    for g in &groups {
        let tau = tau_of(g.order() as i64)? as usize;
        let r = phi(g, &cfg.adjust(default_budget(g)))?;
        if r.status == SearchStatus::Inconclusive {
            c.mark_inconclusive();
        }
        let built = punctured_cover_construct(g)?;
        let union = built.union();
        let construct_ok = built.len() == tau && !union.contains(0) && union.count() == g.order() - 1;
        c.push(
            format!("phi/{g}"),
            r.finite() == Some(tau) && construct_ok,
            json!({
                "order": g.order(),
                "tau": tau,
                "phi": value_json(&r),
                "lower_bound": r.lower_bound,
                "nodes_expanded": r.nodes_expanded,
                "construction_size": built.len(),
                "construction_ok": construct_ok,
            }),
        );
        phis.push((g.clone(), r.finite()));
    }
    // φ(B×C) ≥ φ(B) + φ(C) for coprime orders, from independent searches
    for (b, pb) in &phis {
        for (cc, pc) in &phis {
            let (nb, nc) = (b.order(), cc.order());
            if nb < 2 || nc < 2 || nb > nc || nb * nc > TABLE_MAX_ORDER || gcd(nb as u64, nc as u64) != 1 {
                continue;
            }
            let prod = b.direct_product(cc)?;
            let r = phi(&prod, &cfg.adjust(default_budget(&prod)))?;
            let ok = matches!((r.finite(), pb, pc), (Some(x), Some(y), Some(z)) if x >= y + z);
            c.push(
                format!("phi-product/{b}x{cc}"),
                ok,
                json!({ "phi_product": value_json(&r), "phi_left": pb, "phi_right": pc }),
            );
        }
    }
    for (n, p) in [(2usize, 2u32), (3, 2), (2, 3), (1, 3), (4, 2), (1, 5)] {
        let r = blocking_number(n, p, &cfg.adjust(default_blocking_budget(n, p)), cfg.element_limit)?;
        if r.status == SearchStatus::Inconclusive {
            c.mark_inconclusive();
        }
        c.push(
            format!("blocking/AG({n},{p})"),
            r.value == Some(r.formula),
            serde_json::to_value(&r).expect("plain data"),
        );
    }
    Ok(())
}

/// f and g for every decomposition of order ≤ 16 against `1 + λ`, the
/// elementary abelian values, and the index bound on every witness.
pub(crate) fn fedthm_scan(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    let groups: Vec<FiniteAbelianGroup> = decompositions_up_to(TABLE_MAX_ORDER)
        .into_iter()
        .filter(|o| !o.is_empty())
        .map(|o| FiniteAbelianGroup::new(o, cfg.element_limit))
        .collect::<Result<_>>()?;
    for g in &groups {
        let bound = 1 + lambda_of(g.order() as i64)? as usize;
        let budget = cfg.adjust(default_budget(g));
        let f = min_trivial_intersection_cover(g, CoverMode::Cosets, &budget)?;
        let gg = min_trivial_intersection_cover(g, CoverMode::Subgroups, &budget)?;
        for o in [&f, &gg] {
            if o.status == SearchStatus::Inconclusive {
                c.mark_inconclusive();
            }
        }
        let f_ok = matches!(f.finite(), Some(k) if k >= bound);
        let g_ok = match gg.value {
            Some(InvariantValue::Finite(k)) => k >= bound && f.finite().is_some_and(|fv| k >= fv),
            Some(InvariantValue::Unattainable) => true,
            None => gg.lower_bound >= bound,
        };
        c.push(
            format!("fedthm/{g}"),
            f_ok && g_ok,
            json!({
                "order": g.order(),
                "bound": bound,
                "f": value_json(&f),
                "g": value_json(&gg),
                "g_status": gg.status,
                "g_lower_bound": gg.lower_bound,
                "nodes_expanded": f.nodes_expanded + gg.nodes_expanded,
            }),
        );
        for (label, o) in [("f", &f), ("g", &gg)] {
            let Some(w) = &o.witness else { continue };
            let report = audit(w, &BitSet::full(g.order()));
            let admissible = report.covers_target && report.is_irredundant() && report.subgroup_intersection.is_trivial();
            let idx = verify_coset_index_bound(w);
            let ok = admissible && idx.as_ref().is_ok_and(|i| i.holds());
            c.push(
                format!("index-bound/{label}/{g}"),
                ok,
                json!({
                    "witness_admissible": admissible,
                    "check": idx.ok(),
                    "witness": w.to_wire(),
                }),
            );
        }
    }
    for n in [2usize, 3] {
        let g = FiniteAbelianGroup::elementary(2, n, cfg.element_limit)?;
        let f = min_trivial_intersection_cover(&g, CoverMode::Cosets, &cfg.adjust(default_budget(&g)))?;
        c.push(
            format!("f-elementary/{g}"),
            f.finite() == Some(n + 1),
            json!({ "n": n, "f": value_json(&f), "expected": n + 1 }),
        );
    }
    Ok(())
}
