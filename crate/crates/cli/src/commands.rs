use std::io::Read;
use std::path::Path;
use std::time::Duration;

use covercraft::abelian::{FiniteAbelianGroup, DEFAULT_ELEMENT_LIMIT};
use covercraft::bitset::BitSet;
use covercraft::covering::{
    audit, blocking_number, default_blocking_budget, default_budget, min_trivial_intersection_cover, phi,
    verify_coset_index_bound, CosetSystem, CoverMode, InvariantOutcome, SearchBudget, SearchStatus,
};
use covercraft::abelian::CosetWire;
use covercraft::evidence::evidence_report;
use covercraft::gf::linalg::Matrix;
use covercraft::gf::{
    audit_hyperplanes, bases_to_affine_cover, codim_ratio_check, default_hyperplane_budget, min_hyperplane_cover,
    nowhere_zero_combination, parse_hyperplane_system, parse_matrix, parse_matrix_list, zero_one_representable,
    Field,
};
use covercraft::graph::{colorable_naive, colorable_via_cover, colorable_via_parity, nz_flow_exists, Graph};
use covercraft::matroid::{max_disjoint_bases, packing_subset, LinearMatroid};
use covercraft::parity::{ajt_brute, ajt_cube, ajt_parity, rows_cover_nowhere_zero, two_family_cover_search};
use covercraft::suites::{run_suite, SuiteConfig, SuiteReport, SUITE_NAMES};
use covercraft::{Error, Result};
use serde_json::{json, Value};

use crate::output::{Outcome, Output};
use crate::{AjtCmd, BasisCmd, Cli, Command, CoverCmd, GraphCmd, GroupCmd, HyperplaneCmd, MatroidCmd, Mode, Target};

const LIMIT_VAR: &str = "COVERCRAFT_LIMIT";

fn element_limit() -> Result<usize> {
    match std::env::var(LIMIT_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| Error::InvalidArgument(format!("{LIMIT_VAR}={s:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_ELEMENT_LIMIT),
    }
}

/// File contents, or standard input for `-`.
fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    let r = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    r.map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    Ok(s)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|w| !w.trim().is_empty())
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} entry {w:?}")))
        })
        .collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data")
}

struct Ctx<'a> {
    cli: &'a Cli,
    limit: usize,
}

impl Ctx<'_> {
    fn adjust(&self, mut b: SearchBudget) -> Result<SearchBudget> {
        let g = &self.cli.global;
        if let Some(m) = g.max_cosets {
            b.max_cosets = m;
        }
        if let Some(n) = g.node_limit {
            b.node_limit = n;
        }
        if let Some(t) = g.time_limit_sec {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidArgument("--time-limit-sec must be positive".into()));
            }
            b.time_limit = Some(Duration::from_secs_f64(t));
        }
        b.validate()?;
        Ok(b)
    }

    fn suite_config(&self) -> SuiteConfig {
        let g = &self.cli.global;
        SuiteConfig {
            seed: g.seed,
            element_limit: self.limit,
            node_limit: g.node_limit,
            time_limit: g.time_limit_sec.filter(|t| t.is_finite() && *t > 0.0).map(Duration::from_secs_f64),
        }
    }

    fn group(&self, spec: &str) -> Result<FiniteAbelianGroup> {
        FiniteAbelianGroup::parse(spec, self.limit)
    }
}

fn by_status(body: Value, status: SearchStatus) -> Output {
    let out = Output::new(body);
    match status {
        SearchStatus::Complete => out,
        SearchStatus::Inconclusive => out.with(Outcome::Exhausted),
    }
}

fn invariant(o: &InvariantOutcome, g: &FiniteAbelianGroup) -> Output {
    by_status(to_value(&o.to_wire(g)), o.status)
}

pub fn run(cli: &Cli) -> Result<Output> {
    let ctx = Ctx {
        cli,
        limit: element_limit()?,
    };
    match &cli.command {
        Command::Group(c) => group(&ctx, c),
        Command::Cover(c) => cover(&ctx, c),
        Command::Ajt(c) => ajt(&ctx, c),
        Command::Hyperplane(c) => hyperplane(&ctx, c),
        Command::Basis(c) => basis(&ctx, c),
        Command::Matroid(c) => matroid(&ctx, c),
        Command::Graph(c) => graph(&ctx, c),
        Command::Suite { name, cache_dir } => suite(&ctx, name, cache_dir.as_deref()),
        Command::Evidence { cache_dir, run } => evidence(&ctx, cache_dir.as_deref(), *run),
    }
}

fn group(ctx: &Ctx, c: &GroupCmd) -> Result<Output> {
    match c {
        GroupCmd::Phi { group } => {
            let g = ctx.group(group)?;
            let o = phi(&g, &ctx.adjust(default_budget(&g))?)?;
            Ok(invariant(&o, &g))
        }
        GroupCmd::Fmin { group, mode } => {
            let g = ctx.group(group)?;
            let mode = match mode {
                Mode::Cosets => CoverMode::Cosets,
                Mode::Subgroups => CoverMode::Subgroups,
            };
            let o = min_trivial_intersection_cover(&g, mode, &ctx.adjust(default_budget(&g))?)?;
            Ok(invariant(&o, &g))
        }
        GroupCmd::Gmin { group } => {
            let g = ctx.group(group)?;
            let o = min_trivial_intersection_cover(&g, CoverMode::Subgroups, &ctx.adjust(default_budget(&g))?)?;
            Ok(invariant(&o, &g))
        }
        GroupCmd::Blocking { n, p } => {
            if *p < 2 {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            let o = blocking_number(*n, *p, &ctx.adjust(default_blocking_budget(*n, *p))?, ctx.limit)?;
            Ok(by_status(to_value(&o), o.status))
        }
    }
}

fn cover(ctx: &Ctx, c: &CoverCmd) -> Result<Output> {
    let CoverCmd::Audit { group, file, target } = c;
    let g = ctx.group(group)?;
    let text = read_input(file)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = match v {
        Value::Object(mut m) => m.remove("cosets").unwrap_or(Value::Null),
        other => other,
    };
    let wires: Vec<CosetWire> = serde_json::from_value(list).map_err(|e| Error::Parse(e.to_string()))?;
    let system = CosetSystem::from_wire(g.clone(), &wires)?;
    let mut t = BitSet::full(g.order());
    if matches!(target, Target::Punctured) {
        t.remove(g.identity());
    }
    let report = audit(&system, &t);
    let index_bound = match target {
        Target::All => verify_coset_index_bound(&system).ok(),
        Target::Punctured => None,
    };
    Ok(Output::new(json!({
        "group": g.to_string(),
        "k": system.len(),
        "report": report.to_wire(),
        "subgroup_intersection_trivial": report.subgroup_intersection.is_trivial(),
        "index_bound": index_bound,
    })))
}

fn ajt(ctx: &Ctx, c: &AjtCmd) -> Result<Output> {
    match c {
        AjtCmd::Check { file } => {
            let m = parse_matrix(&read_input(file)?)?;
            if !m.is_square() || m.rows() == 0 {
                return Err(Error::InvalidArgument("AJT check needs a nonempty square matrix".into()));
            }
            let brute = ajt_brute(&m)?;
            let covers = rows_cover_nowhere_zero(&m, ctx.limit)?;
            let f = m.field();
            let parity_ok = f.is_prime_field() && f.q() % 2 == 1;
            let (parity, cube) = if parity_ok {
                (Some(ajt_parity(&m, ctx.limit)?), Some(ajt_cube(&m, ctx.limit)?))
            } else {
                (None, None)
            };
            let is_ajt = brute.is_some();
            let mut agree = covers != is_ajt;
            if let (Some(p), Some(cb)) = (&parity, &cube) {
                agree &= p.is_some() == is_ajt && cb.is_some() == is_ajt;
            }
            let mut methods = vec!["brute", "hyperplane-cover"];
            if parity_ok {
                methods.extend(["shift-parity", "combinatorial-cube"]);
            }
            let out = Output::new(json!({
                "q": f.q(),
                "n": m.rows(),
                "nonsingular": m.is_nonsingular(),
                "ajt": is_ajt,
                "methods": methods,
                "methods_agree": agree,
                "witness": brute,
                "parity_shift": parity.flatten(),
                "cube": cube.flatten(),
                "rows_cover_nowhere_zero": covers,
            }));
            Ok(if agree { out } else { out.with(Outcome::Counterexample) })
        }
        AjtCmd::Scan { p, n } => {
            let r = two_family_cover_search(*p, *n, ctx.limit)?;
            let mut body = json!({ "p": p, "n": n, "found": r.is_some() });
            if let Some(t) = &r {
                body["cover"] = to_value(t);
            }
            Ok(Output::new(body))
        }
    }
}

fn hyperplane(ctx: &Ctx, c: &HyperplaneCmd) -> Result<Output> {
    match c {
        HyperplaneCmd::CoverCheck { file } => {
            let (f, n, hs) = parse_hyperplane_system(&read_input(file)?)?;
            let a = audit_hyperplanes(&f, n, &hs, ctx.limit)?;
            let mut body = to_value(&a);
            body["q"] = json!(f.q());
            body["k"] = json!(hs.len());
            body["irredundant"] = json!(a.is_irredundant());
            body["admissible"] = json!(a.is_admissible());
            Ok(Output::new(body))
        }
        HyperplaneCmd::Min { q, n, affine } => {
            let f = Field::new(*q)?;
            let o = min_hyperplane_cover(&f, *n, *affine, &ctx.adjust(default_hyperplane_budget(&f, *n, *affine))?, ctx.limit)?;
            Ok(by_status(to_value(&o.to_wire()), o.status))
        }
        HyperplaneCmd::Ratio { file } => {
            let (f, n, hs) = parse_hyperplane_system(&read_input(file)?)?;
            let r = codim_ratio_check(&f, n, &hs, ctx.limit)?;
            let out = Output::new(json!({ "q": f.q(), "n": n, "check": r }));
            Ok(if r.hypothesis_applies && !r.holds { out.with(Outcome::Counterexample) } else { out })
        }
    }
}

fn bases(file: &str) -> Result<Vec<Matrix>> {
    parse_matrix_list(&read_input(file)?)
}

fn basis(ctx: &Ctx, c: &BasisCmd) -> Result<Output> {
    match c {
        BasisCmd::Additive { file, target } => {
            let ms = bases(file)?;
            let f = ms[0].field().clone();
            let v: Vec<u32> = parse_list(target, "target")?;
            let vectors: Vec<Vec<u32>> = ms.iter().flat_map(Matrix::columns).collect();
            let r = zero_one_representable(&f, &vectors, &v)?;
            Ok(Output::new(json!({ "q": f.q(), "target": v, "representable": r.is_some(), "subset": r })))
        }
        BasisCmd::NowhereZero { file, target } => {
            let ms = bases(file)?;
            let v: Vec<u32> = parse_list(target, "target")?;
            let r = nowhere_zero_combination(&ms, &v)?;
            Ok(Output::new(json!({ "q": ms[0].field().q(), "target": v, "exists": r.is_some(), "coefficients": r })))
        }
        BasisCmd::ToAffineCover { file, target } => {
            let ms = bases(file)?;
            let v: Vec<u32> = parse_list(target, "target")?;
            let inst = bases_to_affine_cover(&ms, &v, ctx.limit)?;
            let out = Output::new(to_value(&inst));
            Ok(if inst.covers && inst.irredundant { out } else { out.with(Outcome::Counterexample) })
        }
    }
}

fn matroid(_ctx: &Ctx, c: &MatroidCmd) -> Result<Output> {
    let (file, subset) = match c {
        MatroidCmd::Rank { file, subset } | MatroidCmd::Pack { file, subset, .. } => (file, subset),
    };
    let m = LinearMatroid::from_matrix(&parse_matrix(&read_input(file)?)?);
    let x: Vec<usize> = match subset {
        Some(s) => parse_list(s, "subset")?,
        None => (0..m.len()).collect(),
    };
    if let Some(&bad) = x.iter().find(|&&i| i >= m.len()) {
        return Err(Error::InvalidArgument(format!("column {bad} out of range")));
    }
    match c {
        MatroidCmd::Rank { .. } => Ok(Output::new(json!({
            "subset": x,
            "rank": m.rank_subset(&x),
            "independent": m.is_independent(&x),
        }))),
        MatroidCmd::Pack { k, .. } => {
            let packing = max_disjoint_bases(&m, &x)?;
            let mut body = json!({ "packing": packing, "count": packing.count() });
            if let Some(k) = k {
                body["packing_subset"] = to_value(&packing_subset(&m, *k)?);
            }
            Ok(Output::new(body))
        }
    }
}

fn graph(ctx: &Ctx, c: &GraphCmd) -> Result<Output> {
    match c {
        GraphCmd::Color { q, file } => {
            let g = Graph::parse(&read_input(file)?)?;
            if *q == 0 {
                return Err(Error::InvalidArgument("q must be positive".into()));
            }
            let naive = colorable_naive(&g, *q);
            let cover = colorable_via_cover(&g, *q, ctx.limit)?;
            let parity = if *q > 2 && covercraft::abelian::arith::is_prime(*q as u64) {
                Some(colorable_via_parity(&g, *q, None, ctx.limit)?)
            } else {
                None
            };
            let colorable = naive.is_some();
            let agree = cover.witness.is_some() == colorable && parity.is_none_or(|p| p == colorable);
            let out = Output::new(json!({
                "q": q,
                "colorable": colorable,
                "coloring": naive,
                "cover": cover,
                "parity": parity,
                "methods_agree": agree,
            }));
            Ok(if agree { out } else { out.with(Outcome::Counterexample) })
        }
        GraphCmd::Flow { group, file } => {
            let g = Graph::parse(&read_input(file)?)?;
            let a = ctx.group(group)?;
            let r = nz_flow_exists(&g, &a, ctx.limit)?;
            Ok(Output::new(to_value(&r)))
        }
    }
}

fn suite(ctx: &Ctx, name: &str, cache: Option<&Path>) -> Result<Output> {
    let r = run_suite(name, &ctx.suite_config())?;
    if let Some(dir) = cache {
        write_cache(dir, &r)?;
    }
    let passed = r.passed;
    let out = Output::new(to_value(&r));
    Ok(if passed { out } else { out.with(Outcome::Counterexample) })
}

fn write_cache(dir: &Path, r: &SuiteReport) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write to {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(dir.join(format!("{}.json", r.suite)), r.to_json()).map_err(io)
}

fn evidence(ctx: &Ctx, cache: Option<&Path>, run: bool) -> Result<Output> {
    let mut reports = Vec::new();
    for name in SUITE_NAMES {
        let cached = cache.map(|d| d.join(format!("{name}.json"))).filter(|p| p.exists());
        if let Some(p) = cached {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
            let r: SuiteReport =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            reports.push(r);
        } else if run {
            let r = run_suite(name, &ctx.suite_config())?;
            if let Some(dir) = cache {
                write_cache(dir, &r)?;
            }
            reports.push(r);
        }
    }
    Ok(Output::new(to_value(&evidence_report(&reports))))
}
