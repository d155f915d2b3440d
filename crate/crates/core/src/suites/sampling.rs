use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Collector, SuiteConfig};
use crate::error::Result;
use crate::gf::linalg::Matrix;
use crate::gf::nowhere_zero;
use crate::par;
use crate::parity::{
    ajt_brute, ajt_cube, ajt_parity, cover_product_zero, naive_uncovered, parity_cover_check,
    rows_cover_nowhere_zero, two_family_cover_search, ElementaryGroup,
};

pub const CRITERION_SAMPLES: usize = 500;
pub const MAX_MULTISET: usize = 12;
pub const AJT_SAMPLES: usize = 200;
const REPORTED_DISAGREEMENTS: usize = 5;

/// Per-field seed so that adding a field never shifts another's samples.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

struct Tally {
    checked: usize,
    covering: usize,
    disagreements: Vec<serde_json::Value>,
}

fn criterion_batch(g: &ElementaryGroup, batch: &[Vec<Vec<u32>>]) -> Result<Tally> {
    let verdicts = par::map_slice(batch, |xs| -> Result<[bool; 3]> {
        Ok([
            naive_uncovered(g, xs)?.is_none(),
            cover_product_zero(g, xs)?,
            parity_cover_check(g, xs)?,
        ])
    });
    let mut t = Tally {
        checked: 0,
        covering: 0,
        disagreements: Vec::new(),
    };
    for (xs, v) in batch.iter().zip(verdicts) {
        let v = v?;
        t.checked += 1;
        if v[0] {
            t.covering += 1;
        }
        if v[0] != v[1] || v[0] != v[2] {
            if t.disagreements.len() < REPORTED_DISAGREEMENTS {
                t.disagreements.push(json!({ "normals": xs, "naive": v[0], "product": v[1], "parity": v[2] }));
            } else {
                t.disagreements.push(serde_json::Value::Null);
            }
        }
    }
    Ok(t)
}

fn push_tally(c: &mut Collector, name: String, t: Tally) {
    let count = t.disagreements.len();
    let shown: Vec<_> = t.disagreements.into_iter().filter(|d| !d.is_null()).collect();
    c.push(
        name,
        count == 0,
        json!({ "checked": t.checked, "covering": t.covering, "disagreements": count, "examples": shown }),
    );
}

/// Naive coverage, the group-algebra product and the cube parity agree on
/// sampled and small exhaustive hyperplane multisets.
pub(crate) fn criterion_equiv(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    for (stream, (p, n)) in [(3u32, 3usize), (5, 2)].into_iter().enumerate() {
        let g = ElementaryGroup::new(p, n, cfg.element_limit)?;
        let mut rng = rng_for(cfg.seed, stream as u64);
        let sampled: Vec<Vec<Vec<u32>>> = (0..CRITERION_SAMPLES)
            .map(|_| {
                let len = rng.gen_range(1..=MAX_MULTISET);
                (0..len).map(|_| g.vector(rng.gen_range(1..g.size()))).collect()
            })
            .collect();
        push_tally(c, format!("criterion/GF({p})^{n}/sampled"), criterion_batch(&g, &sampled)?);

        let nonzero: Vec<Vec<u32>> = (1..g.size()).map(|i| g.vector(i)).collect();
        let mut small: Vec<Vec<Vec<u32>>> = nonzero.iter().map(|x| vec![x.clone()]).collect();
        for (i, a) in nonzero.iter().enumerate() {
            for b in &nonzero[i..] {
                small.push(vec![a.clone(), b.clone()]);
            }
        }
        push_tally(c, format!("criterion/GF({p})^{n}/singletons-pairs"), criterion_batch(&g, &small)?);
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, p: u32, n: usize, g: &ElementaryGroup) -> Result<Matrix> {
    let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
    Matrix::from_rows(g.field().clone(), &rows)
}

#[derive(Clone)]
struct AjtVerdict {
    brute: bool,
    parity: bool,
    cube: bool,
    covers: bool,
    rescaled: bool,
    nonsingular: bool,
}

fn ajt_verdict(m: &Matrix, scales: &[u32], limit: usize) -> Result<AjtVerdict> {
    let f = m.field();
    let scaled: Vec<Vec<u32>> = m
        .row_vecs()
        .into_iter()
        .zip(scales)
        .map(|(r, &s)| r.into_iter().map(|x| f.mul(x, s)).collect())
        .collect();
    let scaled = Matrix::from_rows(f.clone(), &scaled)?;
    Ok(AjtVerdict {
        brute: ajt_brute(m)?.is_some(),
        parity: ajt_parity(m, limit)?.is_some(),
        cube: ajt_cube(m, limit)?.is_some(),
        covers: rows_cover_nowhere_zero(m, limit)?,
        rescaled: ajt_brute(&scaled)?.is_some(),
        nonsingular: m.is_nonsingular(),
    })
}

/// Brute force, shifted-cube parity and combinatorial cubes agree on
/// sampled matrices; row rescaling preserves the answer; non-AJT matches
/// the row hyperplanes covering every nowhere-zero vector.
pub(crate) fn ajt_equiv(cfg: &SuiteConfig, c: &mut Collector) -> Result<()> {
    for (stream, p) in [3u32, 5].into_iter().enumerate() {
        let mut rng = rng_for(cfg.seed, 16 + stream as u64);
        let groups: Vec<ElementaryGroup> =
            (1..=3).map(|n| ElementaryGroup::new(p, n, cfg.element_limit)).collect::<Result<_>>()?;
        let mut cases = Vec::with_capacity(AJT_SAMPLES);
        for _ in 0..AJT_SAMPLES {
            let n = rng.gen_range(1..=3usize);
            let m = random_matrix(&mut rng, p, n, &groups[n - 1])?;
            let scales: Vec<u32> = (0..n).map(|_| rng.gen_range(1..p)).collect();
            cases.push((m, scales));
        }
        let verdicts = par::map_slice(&cases, |(m, s)| ajt_verdict(m, s, cfg.element_limit));
        let (mut ajt, mut triple, mut rescale, mut cover) = (0, 0usize, 0usize, 0usize);
        let (mut nonsingular, mut nonsingular_non_ajt) = (0usize, 0usize);
        let mut examples = Vec::new();
        for ((m, _), v) in cases.iter().zip(verdicts) {
            let v = v?;
            ajt += v.brute as usize;
            nonsingular += v.nonsingular as usize;
            nonsingular_non_ajt += (v.nonsingular && !v.brute) as usize;
            let t = v.brute != v.parity || v.brute != v.cube;
            let r = v.brute != v.rescaled;
            let k = v.brute == v.covers;
            triple += t as usize;
            rescale += r as usize;
            cover += k as usize;
            if (t || r || k) && examples.len() < REPORTED_DISAGREEMENTS {
                examples.push(json!({
                    "rows": m.row_vecs(),
                    "brute": v.brute, "parity": v.parity, "cube": v.cube,
                    "rows_cover": v.covers, "rescaled": v.rescaled,
                }));
            }
        }
        c.push(
            format!("ajt/GF({p})/triple"),
            triple == 0,
            json!({
                "checked": cases.len(),
                "ajt": ajt,
                "nonsingular": nonsingular,
                "nonsingular_non_ajt": nonsingular_non_ajt,
                "disagreements": triple,
                "examples": examples,
            }),
        );
        c.push(format!("ajt/GF({p})/row-rescaling"), rescale == 0, json!({ "checked": cases.len(), "disagreements": rescale }));
        c.push(format!("ajt/GF({p})/non-ajt-iff-cover"), cover == 0, json!({ "checked": cases.len(), "disagreements": cover }));
    }

    for (p, expect) in [(3u32, false), (5, true)] {
        let g = ElementaryGroup::new(p, 2, cfg.element_limit)?;
        let m = Matrix::from_rows(g.field().clone(), &[vec![1, 1], vec![1, 2]])?;
        let v = ajt_verdict(&m, &[1, 1], cfg.element_limit)?;
        let witness = ajt_brute(&m)?;
        let ok = v.brute == expect && v.parity == expect && v.cube == expect && v.covers != expect
            && witness.as_ref().is_none_or(|x| nowhere_zero(x) && nowhere_zero(&m.mul_vec(x)));
        c.push(
            format!("ajt/fixed/GF({p})"),
            ok,
            json!({ "rows": [[1, 1], [1, 2]], "ajt": v.brute, "methods_agree": v.brute == v.parity && v.brute == v.cube, "witness": witness }),
        );
    }

    // GF(3)² has two independent lines through the four nowhere-zero
    // points; GF(5)² needs four lines for its sixteen.
    for (p, expect) in [(3u32, true), (5, false)] {
        let r = two_family_cover_search(p, 2, cfg.element_limit)?;
        let ok = match &r {
            Some(t) => {
                let f = ElementaryGroup::new(p, 2, cfg.element_limit)?.field().clone();
                let m = Matrix::from_rows(f, &t.matrix_rows)?;
                expect
                    && m.is_nonsingular()
                    && t.brute_force_witness.is_none()
                    && rows_cover_nowhere_zero(&m, cfg.element_limit)?
            }
            None => !expect,
        };
        c.push(format!("two-family/GF({p})^2"), ok, serde_json::to_value(&r).expect("plain data"));
    }
    for p in [3u32, 5] {
        let r = two_family_cover_search(p, 1, cfg.element_limit)?;
        c.push(format!("two-family/GF({p})^1"), r.is_none(), json!({ "found": r.is_some() }));
    }
    Ok(())
}
