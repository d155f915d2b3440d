use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Collector, SuiteConfig};
use crate::covering::{InvariantValue, SearchStatus};
use crate::error::Result;
use crate::gf::linalg::{index_vec, Matrix};
use crate::gf::{
    audit_hyperplanes, bases_to_affine_cover, codim_ratio_check, default_hyperplane_budget,
    irredundant_affine_covers, min_hyperplane_cover, nowhere_zero, nowhere_zero_combination, zero_one_representable,
    Field,
};
use crate::matroid::{brute_force_packing, max_disjoint_bases, minimality_holds, packing_subset, LinearMatroid};
use crate::par;

pub const MAX_GROUND: usize = 6;
pub const BRUMM_SAMPLES: usize = 200;
pub const PREFIX_BASES: usize = 4;

/// Canonical representatives (first nonzero coordinate 1) plus the zero
/// vector. Rescaling a vector does not change the matroid.
fn vector_types(f: &Field, n: usize) -> Vec<Vec<u32>> {
    let size = (f.q() as usize).pow(n as u32);
    (0..size)
        .map(|i| index_vec(f.q(), n, i))
        .filter(|v| v.iter().find(|&&x| x != 0).is_none_or(|&x| x == 1))
        .collect()
}

/// All multisets of size `1..=max` over `types`, as sorted index lists.
fn multisets(types: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, types: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for t in start..types {
            cur.push(t);
            rec(t, types, max, cur, out);
            cur.pop();
        }
    }
    rec(0, types, max, &mut cur, &mut out);
    out
}

#[derive(Default)]
struct PackingTally {
    matroids: usize,
    value_mismatch: usize,
    hypothesis_cases: usize,
    hypothesis_failures: usize,
    minimality_failures: usize,
    /// `|E| ≥ r(E)·k` counted with loops but failing without them.
    loop_counterexamples: usize,
    examples: Vec<serde_json::Value>,
}

fn check_matroid(m: &LinearMatroid) -> Result<PackingTally> {
    let mut t = PackingTally {
        matroids: 1,
        ..Default::default()
    };
    let all: Vec<usize> = (0..m.len()).collect();
    let r = m.full_rank();
    if r == 0 {
        return Ok(t);
    }
    let packed = max_disjoint_bases(m, &all)?;
    let disjoint_bases = packed.bases.iter().all(|b| b.len() == r && m.is_independent(b))
        && {
            let mut used: Vec<usize> = packed.bases.concat();
            used.sort_unstable();
            used.windows(2).all(|w| w[0] != w[1])
        };
    let brute = brute_force_packing(m, &all);
    if packed.count() != brute || !disjoint_bases {
        t.value_mismatch += 1;
        t.examples.push(json!({ "ground": m_ground(m), "packing": packed.count(), "brute": brute }));
    }
    let loopless = (0..m.len()).filter(|&i| !m.is_loop(i)).count();
    for k in 1..=m.len() {
        if m.len() < r * k {
            break;
        }
        if loopless < r * k {
            t.loop_counterexamples += 1;
            continue;
        }
        t.hypothesis_cases += 1;
        match packing_subset(m, k)? {
            Some(p) if p.count() == k => {
                if !minimality_holds(m, &p.subset, k) {
                    t.minimality_failures += 1;
                }
            }
            _ => {
                t.hypothesis_failures += 1;
                t.examples.push(json!({ "ground": m_ground(m), "k": k }));
            }
        }
    }
    Ok(t)
}

fn m_ground(m: &LinearMatroid) -> Vec<Vec<u32>> {
    (0..m.len()).map(|i| m.vector(i).to_vec()).collect()
}

/// Partition-based packing against brute force, and the packing subset
/// under `|E| ≥ r(E)·k`, for every small multiset of plane vectors.
pub(crate) fn packing(_cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    for q in [2u32, 3] {
        let f = Field::new(q)?;
        let types = vector_types(&f, 2);
        let grounds = multisets(types.len(), MAX_GROUND);
        let results = par::map_slice(&grounds, |g| {
            let ground = g.iter().map(|&i| types[i].clone()).collect();
            check_matroid(&LinearMatroid::new(f.clone(), 2, ground)?)
        });
        let mut total = PackingTally::default();
        for r in results {
            let r = r?;
            total.matroids += r.matroids;
            total.value_mismatch += r.value_mismatch;
            total.hypothesis_cases += r.hypothesis_cases;
            total.hypothesis_failures += r.hypothesis_failures;
            total.minimality_failures += r.minimality_failures;
            total.loop_counterexamples += r.loop_counterexamples;
            total.examples.extend(r.examples);
        }
        total.examples.truncate(5);
        c.push(
            format!("packing/GF({q})^2/edmonds"),
            total.value_mismatch == 0,
            json!({ "matroids": total.matroids, "mismatches": total.value_mismatch }),
        );
        c.push(
            format!("packing/GF({q})^2/packing-subset"),
            total.hypothesis_failures == 0 && total.minimality_failures == 0,
            json!({
                "cases": total.hypothesis_cases,
                "failures": total.hypothesis_failures,
                "minimality_failures": total.minimality_failures,
                "excluded_by_loops": total.loop_counterexamples,
                "examples": total.examples,
            }),
        );
    }
    Ok(())
}

/// Sizes for which `l` and `h` are searched.
pub const HYPERPLANE_CASES: [(u32, usize); 8] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2)];

/// Minimal hyperplane coverings, the `l_q(n)/n` table, the codimension
/// test over GF(4)², nowhere-zero combinations for two bases over
/// non-prime fields, and the bases-to-covering construction.
pub(crate) fn hyperplane_min(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    let mut table = Vec::new();
    for (q, n) in HYPERPLANE_CASES {
        let f = Field::new(q)?;
        for affine in [false, true] {
            let budget = cfg.adjust(default_hyperplane_budget(&f, n, affine));
            let r = min_hyperplane_cover(&f, n, affine, &budget, cfg.element_limit)?;
            if r.status == SearchStatus::Inconclusive {
                c.mark_inconclusive();
            }
            let admissible = match r.value {
                Some(InvariantValue::Finite(_)) => {
                    audit_hyperplanes(&f, n, &r.witness, cfg.element_limit)?.is_admissible()
                }
                Some(InvariantValue::Unattainable) => true,
                None => false,
            };
            let known = match (affine, n, r.value) {
                (false, 2, v) => v == Some(InvariantValue::Finite(q as usize + 1)),
                (true, 1, v) => v == Some(InvariantValue::Finite(q as usize)),
                _ => true,
            };
            let name = if affine { "l" } else { "h" };
            if affine {
                if let Some(k) = r.value.and_then(InvariantValue::finite) {
                    table.push(json!({ "q": q, "n": n, "l": k, "ratio": k as f64 / n as f64 }));
                }
            }
            c.push(
                format!("hyperplane/{name}_{q}({n})"),
                admissible && known,
                serde_json::to_value(r.to_wire()).expect("plain data"),
            );
        }
    }
    c.push("hyperplane/l-table", true, json!(table));

    let f4 = Field::new(4)?;
    let l42 = min_hyperplane_cover(&f4, 2, true, &cfg.adjust(default_hyperplane_budget(&f4, 2, true)), cfg.element_limit)?;
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let mut systems = irredundant_affine_covers(&f4, 2, 20, cfg.element_limit)?;
    if !l42.witness.is_empty() {
        systems.insert(0, l42.witness.clone());
    }
    let checks = par::map_slice(&systems, |s| codim_ratio_check(&f4, 2, s, cfg.element_limit));
    for (s, r) in systems.iter().zip(checks) {
        let r = r?;
        checked += 1;
        if !r.holds {
            failures.push(json!({ "k": r.k, "codim": r.codim, "members": s.iter().map(|h| h.to_wire()).collect::<Vec<_>>() }));
        }
    }
    c.push(
        "codim-ratio/GF(4)^2",
        checked > 1 && failures.is_empty(),
        json!({ "covers_checked": checked, "min_cover_size": l42.witness.len(), "failures": failures }),
    );

    brumm(cfg, c)?;
    basis_prefixes(cfg, c)?;

    let f2 = Field::new(2)?;
    let id = Matrix::identity(f2.clone(), 2);
    let inst = bases_to_affine_cover(&[id.clone(), id.clone(), id], &[0, 0], cfg.element_limit)?;
    c.push(
        "to-affine-cover/GF(2)/three-copies",
        inst.covers && inst.irredundant && inst.dim_u == 4,
        serde_json::to_value(&inst).expect("plain data"),
    );
    let f3 = Field::new(3)?;
    let inst = bases_to_affine_cover(&[Matrix::identity(f3, 1)], &[0], cfg.element_limit)?;
    c.push(
        "to-affine-cover/GF(3)/single",
        inst.covers && inst.irredundant,
        serde_json::to_value(&inst).expect("plain data"),
    );
    Ok(())
}

fn nonsingular(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Result<Matrix> {
    loop {
        let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..f.q())).collect()).collect();
        let m = Matrix::from_rows(f.clone(), &rows)?;
        if m.is_nonsingular() {
            return Ok(m);
        }
    }
}

fn brumm_check(pair: &[Matrix; 2], v: &[u32]) -> Result<bool> {
    Ok(nowhere_zero_combination(pair, v)?.is_some_and(|x| nowhere_zero(&x) && combination_hits(pair, &x, v)))
}

fn combination_hits(pair: &[Matrix; 2], x: &[u32], v: &[u32]) -> bool {
    let f = pair[0].field();
    let n = v.len();
    let a = pair[0].mul_vec(&x[..n]);
    let b = pair[1].mul_vec(&x[n..]);
    a.iter().zip(&b).zip(v).all(|((&s, &t), &w)| f.add(s, t) == w)
}

fn brumm(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    for q in [4u32, 9] {
        let f = Field::new(q)?;
        let mut cases = Vec::new();
        for a in 1..q {
            for b in 1..q {
                for v in 0..q {
                    cases.push(([Matrix::new(f.clone(), 1, 1, vec![a])?, Matrix::new(f.clone(), 1, 1, vec![b])?], vec![v]));
                }
            }
        }
        push_brumm(c, format!("nowhere-zero/GF({q})^1/exhaustive"), &cases)?;
    }
    let f = Field::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(32);
    let mut cases = Vec::with_capacity(BRUMM_SAMPLES);
    for _ in 0..BRUMM_SAMPLES {
        let pair = [nonsingular(&f, 2, &mut rng)?, nonsingular(&f, 2, &mut rng)?];
        let v: Vec<u32> = (0..2).map(|_| rng.gen_range(0..4)).collect();
        cases.push((pair, v));
    }
    push_brumm(c, "nowhere-zero/GF(4)^2/sampled".to_string(), &cases)
}

fn push_brumm(c: &mut Collector, name: String, cases: &[([Matrix; 2], Vec<u32>)]) -> Result<()> {
    let verdicts = par::map_slice(cases, |(pair, v)| brumm_check(pair, v));
    let mut failures = Vec::new();
    for ((pair, v), ok) in cases.iter().zip(verdicts) {
        if !ok? && failures.len() < 5 {
            failures.push(json!({ "bases": [pair[0].row_vecs(), pair[1].row_vecs()], "target": v }));
        }
    }
    c.push(name, failures.is_empty(), json!({ "checked": cases.len(), "failures": failures }));
    Ok(())
}

/// Fewest leading bases whose union represents every target, or `None`.
fn shortest_prefix(bases: &[Matrix], f: &Field, n: usize, zero_one: bool) -> Result<Option<usize>> {
    let targets: Vec<Vec<u32>> = (0..(f.q() as usize).pow(n as u32)).map(|i| index_vec(f.q(), n, i)).collect();
    for c in 1..=bases.len() {
        let mut all = true;
        for v in &targets {
            let hit = if zero_one {
                let vectors: Vec<Vec<u32>> = bases[..c].iter().flat_map(Matrix::columns).collect();
                zero_one_representable(f, &vectors, v)?.is_some()
            } else {
                nowhere_zero_combination(&bases[..c], v)?.is_some()
            };
            if !hit {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// For sampled lists of bases, how many leading bases already give every
/// vector as a 0-1 combination (resp. a nowhere-zero combination).
fn basis_prefixes(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    let runs = [("additive-basis", 3u32, true, 200usize, PREFIX_BASES), ("weak", 3, false, 200, PREFIX_BASES), ("weak", 5, false, 50, 3)];
    for (stream, (label, q, zero_one, samples, count)) in runs.into_iter().enumerate() {
        let f = Field::new(q)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(48 + stream as u64);
        let lists: Vec<Vec<Matrix>> = (0..samples)
            .map(|_| (0..count).map(|_| nonsingular(&f, 2, &mut rng)).collect())
            .collect::<Result<_>>()?;
        let prefixes = par::map_slice(&lists, |bs| shortest_prefix(bs, &f, 2, zero_one));
        let mut histogram = vec![0usize; count + 1];
        let mut unresolved = 0;
        for p in prefixes {
            match p? {
                Some(k) => histogram[k] += 1,
                None => unresolved += 1,
            }
        }
        c.push(
            format!("{label}/GF({q})^2/sampled"),
            unresolved == 0,
            json!({
                "samples": samples,
                "bases_per_sample": count,
                "prefix_histogram": histogram,
                "max_needed": histogram.iter().rposition(|&h| h > 0),
                "unresolved": unresolved,
            }),
        );
    }
    Ok(())
}
