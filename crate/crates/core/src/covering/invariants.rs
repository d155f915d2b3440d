//! φ(A), f(A), g(A) and the bounds relating them to λ and τ.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::search::{min_cover, CoverProblem, SearchBudget, SearchStatus};
use super::system::{audit, CosetSystem};
use crate::abelian::{enumerate_subgroups, lambda_of, tau_of, Coset, CosetWire, FiniteAbelianGroup, Subgroup};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Value of a covering invariant. `Unattainable` stands for the infinite
/// value given to g(G) when no admissible subgroup covering exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantValue {
    Finite(usize),
    Unattainable,
}

impl InvariantValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            InvariantValue::Finite(k) => Some(k),
            InvariantValue::Unattainable => None,
        }
    }
}

impl Serialize for InvariantValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InvariantValue::Finite(k) => s.serialize_u64(*k as u64),
            InvariantValue::Unattainable => s.serialize_str("unattainable"),
        }
    }
}

/// Result of one invariant search. `value` is absent when the budget ran
/// out; `lower_bound` is always proven.
#[derive(Clone, Debug)]
pub struct InvariantOutcome {
    pub invariant: &'static str,
    pub value: Option<InvariantValue>,
    pub witness: Option<CosetSystem>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub nodes_expanded: u64,
    pub status: SearchStatus,
}

#[derive(Serialize)]
pub struct InvariantOutcomeWire<'a> {
    pub invariant: &'a str,
    pub group: String,
    pub value: Option<InvariantValue>,
    pub witness: Vec<CosetWire>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub nodes_expanded: u64,
    pub status: SearchStatus,
}

impl InvariantOutcome {
    pub fn finite(&self) -> Option<usize> {
        self.value.and_then(InvariantValue::finite)
    }

    pub fn to_wire(&self, g: &FiniteAbelianGroup) -> InvariantOutcomeWire<'_> {
        InvariantOutcomeWire {
            invariant: self.invariant,
            group: g.to_string(),
            value: self.value,
            witness: self.witness.as_ref().map(CosetSystem::to_wire).unwrap_or_default(),
            lower_bound: self.lower_bound,
            upper_bound: self.upper_bound,
            nodes_expanded: self.nodes_expanded,
            status: self.status,
        }
    }
}

/// Default budget: `max_cosets = τ(|G|) + 2`, `node_limit = 10⁷`.
pub fn default_budget(g: &FiniteAbelianGroup) -> SearchBudget {
    SearchBudget::with_max(tau_of(g.order() as i64).expect("order ≥ 1") as usize + 2)
}

struct Family {
    sets: Vec<BitSet>,
    origin: Vec<(usize, usize)>,
}

impl Family {
    fn from_cosets(cosets: BTreeMap<BitSet, (usize, usize)>) -> Self {
        let (sets, origin) = cosets.into_iter().unzip();
        Family { sets, origin }
    }

    fn system(&self, g: &FiniteAbelianGroup, subs: &[Subgroup], idx: &[usize]) -> CosetSystem {
        let cosets = idx
            .iter()
            .map(|&i| {
                let (h, x) = self.origin[i];
                Coset::new(g, subs[h].clone(), x)
            })
            .collect();
        CosetSystem::new(g.clone(), cosets).expect("same group")
    }
}

/// φ(G): fewest cosets whose union is exactly `G ∖ {0}`.
///
/// Only cosets maximal among those avoiding the identity are offered to the
/// search; any cover can be enlarged member-wise to one of these without
/// changing its size or its union.
pub fn phi(g: &FiniteAbelianGroup, budget: &SearchBudget) -> Result<InvariantOutcome> {
    budget.validate()?;
    let n = g.order();
    let subs = enumerate_subgroups(g)?;
    if n == 1 {
        return Ok(InvariantOutcome {
            invariant: "phi",
            value: Some(InvariantValue::Finite(0)),
            witness: Some(CosetSystem::new(g.clone(), vec![])?),
            lower_bound: 0,
            upper_bound: Some(0),
            nodes_expanded: 0,
            status: SearchStatus::Complete,
        });
    }
    let mut cosets: BTreeMap<BitSet, (usize, usize)> = BTreeMap::new();
    for u in 1..n {
        let avoiding: Vec<usize> = (0..subs.len()).filter(|&h| !subs[h].contains(u)).collect();
        for &h in &avoiding {
            let maximal = !avoiding.iter().any(|&k| {
                k != h && subs[h].is_subgroup_of(&subs[k]) && subs[k].size() > subs[h].size()
            });
            if maximal {
                cosets
                    .entry(g.translate(subs[h].members(), u))
                    .or_insert((h, u));
            }
        }
    }
    let family = Family::from_cosets(cosets);
    let mut target = BitSet::full(n);
    target.remove(0);
    let problem = CoverProblem {
        target,
        sets: family.sets.clone(),
        directions: None,
        forced: vec![],
    };
    let r = min_cover(&problem, 1, budget.max_cosets, budget);
    let witness = r.cover.as_ref().map(|c| family.system(g, &subs, c));
    Ok(InvariantOutcome {
        invariant: "phi",
        value: r.cover.as_ref().map(|c| InvariantValue::Finite(c.len())),
        witness,
        lower_bound: r.lower_bound,
        upper_bound: Some(tau_of(n as i64)? as usize),
        nodes_expanded: r.nodes,
        status: if r.cover.is_some() {
            SearchStatus::Complete
        } else {
            SearchStatus::Inconclusive
        },
    })
}

/// Builds `τ(|G|)` cosets covering `G ∖ {0}` by repeatedly splitting off
/// the nontrivial cosets of a prime-index subgroup.
///
/// The current subgroup is `{x : dᵢ | xᵢ}`; each step multiplies one `dᵢ`
/// by the smallest prime `p` dividing the current order (taking the last
/// eligible coordinate) and emits the `p − 1` cosets that leave.
pub fn punctured_cover_construct(g: &FiniteAbelianGroup) -> Result<CosetSystem> {
    if g.order() < 2 {
        return Err(Error::Precondition("group must have order ≥ 2".into()));
    }
    let orders = g.cyclic_orders();
    let mut d = vec![1u32; orders.len()];
    let members_of = |d: &[u32]| {
        BitSet::from_indices(
            g.order(),
            (0..g.order()).filter(|&x| g.coords(x).iter().zip(d).all(|(&c, &di)| c % di == 0)),
        )
    };
    let mut cosets = Vec::new();
    loop {
        let size: u64 = orders.iter().zip(&d).map(|(&k, &di)| (k / di) as u64).product();
        if size == 1 {
            break;
        }
        let p = crate::abelian::arith::factorize(size)[0].0 as u32;
        let i = (0..orders.len())
            .rev()
            .find(|&i| (orders[i] / d[i]).is_multiple_of(p))
            .expect("some coordinate carries p");
        let step = d[i];
        d[i] *= p;
        let smaller = Subgroup::from_bits(g, members_of(&d))?;
        for j in 1..p {
            let mut c = vec![0u32; orders.len()];
            c[i] = j * step;
            cosets.push(Coset::new(g, smaller.clone(), g.index_of_coords(&c)));
        }
    }
    CosetSystem::new(g.clone(), cosets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    Cosets,
    Subgroups,
}

/// f(G) (coset mode) or g(G) (subgroup mode): fewest members of an
/// irredundant covering of G whose subgroup intersection is trivial.
pub fn min_trivial_intersection_cover(
    g: &FiniteAbelianGroup,
    mode: CoverMode,
    budget: &SearchBudget,
) -> Result<InvariantOutcome> {
    budget.validate()?;
    let n = g.order();
    let subs = enumerate_subgroups(g)?;
    let invariant = match mode {
        CoverMode::Cosets => "f",
        CoverMode::Subgroups => "g",
    };
    let usable: Vec<usize> = (0..subs.len()).filter(|&h| n == 1 || subs[h].size() < n).collect();

    let mut union_of_proper = BitSet::new(n);
    for &h in &usable {
        union_of_proper.union_with(subs[h].members());
    }
    if mode == CoverMode::Subgroups && !union_of_proper.is_full() {
        return Ok(InvariantOutcome {
            invariant,
            value: Some(InvariantValue::Unattainable),
            witness: None,
            lower_bound: usize::MAX,
            upper_bound: None,
            nodes_expanded: 0,
            status: SearchStatus::Complete,
        });
    }

    let mut cosets: BTreeMap<BitSet, (usize, usize)> = BTreeMap::new();
    for &h in &usable {
        match mode {
            CoverMode::Subgroups => {
                cosets.insert(subs[h].members().clone(), (h, 0));
            }
            CoverMode::Cosets => {
                let mut seen = BitSet::new(n);
                for x in 0..n {
                    if !seen.contains(x) {
                        let c = g.translate(subs[h].members(), x);
                        seen.union_with(&c);
                        cosets.insert(c, (h, x));
                    }
                }
            }
        }
    }
    let family = Family::from_cosets(cosets);
    let dirs: Vec<BitSet> = family.origin.iter().map(|&(h, _)| subs[h].members().clone()).collect();
    let problem = CoverProblem {
        target: BitSet::full(n),
        sets: family.sets.clone(),
        directions: Some((dirs, BitSet::from_indices(n, [0]))),
        forced: vec![],
    };
    // Every member of an irredundant cover owns a private element, and for
    // two or more subgroups the identity is never private.
    let absolute_max = match mode {
        CoverMode::Cosets => n,
        CoverMode::Subgroups => (n - 1).max(1),
    };
    let k_hi = budget.max_cosets.min(absolute_max);
    let r = min_cover(&problem, 1, k_hi, budget);
    let upper_bound = match mode {
        CoverMode::Cosets => Some(tau_of(n as i64)? as usize + 1),
        CoverMode::Subgroups => None,
    };
    let (value, status) = match (&r.cover, r.status) {
        (Some(c), _) => (Some(InvariantValue::Finite(c.len())), SearchStatus::Complete),
        (None, SearchStatus::Complete) if k_hi == absolute_max => {
            (Some(InvariantValue::Unattainable), SearchStatus::Complete)
        }
        _ => (None, SearchStatus::Inconclusive),
    };
    let witness = r.cover.as_ref().map(|c| family.system(g, &subs, c));
    Ok(InvariantOutcome {
        invariant,
        value,
        witness,
        lower_bound: r.lower_bound,
        upper_bound,
        nodes_expanded: r.nodes,
        status,
    })
}

/// Check of `g(G) ≥ f(G) ≥ 1 + λ(|G|)` against computed values.
#[derive(Clone, Debug)]
pub struct FedthmCheck {
    pub bound: usize,
    pub f: InvariantOutcome,
    pub g: InvariantOutcome,
    /// `None` when a budget ran out before the bound was settled.
    pub holds: Option<bool>,
}

/// Computes f and g and compares them with `1 + λ(|G|)`. An inconclusive
/// search still settles the bound when its proven lower bound reaches it.
pub fn verify_fedthm(g: &FiniteAbelianGroup, budget: &SearchBudget) -> Result<FedthmCheck> {
    let bound = 1 + lambda_of(g.order() as i64)? as usize;
    let f = min_trivial_intersection_cover(g, CoverMode::Cosets, budget)?;
    let gg = min_trivial_intersection_cover(g, CoverMode::Subgroups, budget)?;
    let side = |o: &InvariantOutcome| match o.value {
        Some(InvariantValue::Finite(k)) => Some(k >= bound),
        Some(InvariantValue::Unattainable) => Some(true),
        None => (o.lower_bound >= bound).then_some(true),
    };
    let ordered = match (f.finite(), gg.value) {
        (Some(fv), Some(InvariantValue::Finite(gv))) => Some(gv >= fv),
        _ => Some(true),
    };
    let holds = match (side(&f), side(&gg), ordered) {
        (Some(a), Some(b), Some(c)) => Some(a && b && c),
        (Some(false), _, _) | (_, Some(false), _) => Some(false),
        _ => None,
    };
    Ok(FedthmCheck {
        bound,
        f,
        g: gg,
        holds,
    })
}

/// Per-member comparison of `k` with `1 + log₂|G:Hᵢ|` and `1 + τ(|G:Hᵢ|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexBoundCheck {
    pub k: usize,
    pub indices: Vec<usize>,
    pub log_bound_holds: bool,
    pub tau_bound_holds: bool,
}

impl IndexBoundCheck {
    pub fn holds(&self) -> bool {
        self.log_bound_holds && self.tau_bound_holds
    }
}

/// Requires `system` to be an irredundant covering of its group.
pub fn verify_coset_index_bound(system: &CosetSystem) -> Result<IndexBoundCheck> {
    let g = system.group();
    let r = audit(system, &BitSet::full(g.order()));
    if !r.covers_target || !r.is_irredundant() {
        return Err(Error::Precondition(
            "system is not an irredundant covering".into(),
        ));
    }
    let k = system.len();
    let indices: Vec<usize> = system.cosets().iter().map(|c| c.subgroup().index_in(g)).collect();
    // k ≥ 1 + log₂ m  ⟺  m ≤ 2^(k−1)
    let log_bound_holds = indices
        .iter()
        .all(|&m| k >= 1 && (m as u128) <= 1u128 << (k - 1).min(127));
    let tau_bound_holds = indices
        .iter()
        .all(|&m| k as u64 > tau_of(m as i64).expect("index ≥ 1"));
    Ok(IndexBoundCheck {
        k,
        indices,
        log_bound_holds,
        tau_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::DEFAULT_ELEMENT_LIMIT;

    fn grp(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s, DEFAULT_ELEMENT_LIMIT).unwrap()
    }

    fn punctured_ok(sys: &CosetSystem) -> bool {
        let u = sys.union();
        !u.contains(0) && u.count() == sys.group().order() - 1
    }

    #[test]
    fn phi_examples() {
        let r = phi(&grp("C2"), &default_budget(&grp("C2"))).unwrap();
        assert_eq!(r.finite(), Some(1));
        let g = grp("C6");
        let r = phi(&g, &default_budget(&g)).unwrap();
        assert_eq!(r.finite(), Some(3));
        assert!(punctured_ok(r.witness.as_ref().unwrap()));
        let g = grp("C2*C2*C3");
        let r = phi(&g, &default_budget(&g)).unwrap();
        assert_eq!(r.finite(), Some(4));
        assert!(punctured_ok(r.witness.as_ref().unwrap()));
    }

    #[test]
    fn phi_of_trivial_group_is_zero() {
        let r = phi(&FiniteAbelianGroup::trivial(), &SearchBudget::with_max(2)).unwrap();
        assert_eq!(r.finite(), Some(0));
    }

    #[test]
    fn phi_budget_too_small_is_inconclusive() {
        let g = grp("C7");
        let r = phi(&g, &SearchBudget::with_max(3)).unwrap();
        assert_eq!(r.status, SearchStatus::Inconclusive);
        assert_eq!(r.value, None);
        assert_eq!(r.lower_bound, 4);
    }

    #[test]
    fn punctured_construction_examples() {
        let c4 = grp("C4");
        let s = punctured_cover_construct(&c4).unwrap();
        let wire: Vec<(Vec<usize>, usize)> = s
            .cosets()
            .iter()
            .map(|c| (c.subgroup().members().to_vec(), c.representative()))
            .collect();
        assert_eq!(wire, vec![(vec![0, 2], 1), (vec![0], 2)]);

        let c3 = grp("C3");
        let s = punctured_cover_construct(&c3).unwrap();
        let members: Vec<Vec<usize>> = s.cosets().iter().map(|c| c.members().to_vec()).collect();
        assert_eq!(members, vec![vec![1], vec![2]]);

        let v4 = grp("C2*C2");
        let s = punctured_cover_construct(&v4).unwrap();
        let members: Vec<Vec<usize>> = s.cosets().iter().map(|c| c.members().to_vec()).collect();
        // (0,1)+{(0,0),(1,0)} = indices {2,3}; then {(1,0)} = {1}
        assert_eq!(members, vec![vec![2, 3], vec![1]]);

        assert!(punctured_cover_construct(&FiniteAbelianGroup::trivial()).is_err());
    }

    #[test]
    fn punctured_construction_has_tau_members_up_to_64() {
        for orders in crate::abelian::decompositions_up_to(64) {
            let g = FiniteAbelianGroup::new(orders, DEFAULT_ELEMENT_LIMIT).unwrap();
            let s = punctured_cover_construct(&g).unwrap();
            assert_eq!(s.len() as u64, tau_of(g.order() as i64).unwrap(), "{g}");
            assert!(punctured_ok(&s), "{g}");
        }
    }

    #[test]
    fn fmin_examples() {
        let v4 = grp("C2*C2");
        let r = min_trivial_intersection_cover(&v4, CoverMode::Cosets, &default_budget(&v4)).unwrap();
        assert_eq!(r.finite(), Some(3));

        let c4 = grp("C4");
        let r = min_trivial_intersection_cover(&c4, CoverMode::Cosets, &default_budget(&c4)).unwrap();
        assert_eq!(r.finite(), Some(3));
        let w = r.witness.unwrap();
        let rep = audit(&w, &BitSet::full(4));
        assert!(rep.covers_target && rep.is_irredundant() && rep.subgroup_intersection.is_trivial());
        assert_eq!(w.len(), 3);

        let r = min_trivial_intersection_cover(&c4, CoverMode::Subgroups, &default_budget(&c4)).unwrap();
        assert_eq!(r.value, Some(InvariantValue::Unattainable));
    }

    #[test]
    fn g_of_klein_four_is_three() {
        let v4 = grp("C2*C2");
        let r = min_trivial_intersection_cover(&v4, CoverMode::Subgroups, &default_budget(&v4)).unwrap();
        assert_eq!(r.finite(), Some(3));
        for c in r.witness.unwrap().cosets() {
            assert_eq!(c.representative(), 0);
        }
    }

    #[test]
    fn fedthm_examples() {
        for spec in ["C2*C2", "C6", "C8"] {
            let g = grp(spec);
            let c = verify_fedthm(&g, &default_budget(&g)).unwrap();
            assert_eq!(c.holds, Some(true), "{spec}");
        }
        let c8 = grp("C8");
        let c = verify_fedthm(&c8, &default_budget(&c8)).unwrap();
        assert!(c.f.finite().unwrap() >= 4);
    }

    #[test]
    fn index_bound_examples() {
        let c4 = grp("C4");
        let r = min_trivial_intersection_cover(&c4, CoverMode::Cosets, &default_budget(&c4)).unwrap();
        let chk = verify_coset_index_bound(r.witness.as_ref().unwrap()).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.k, 3);

        let whole = CosetSystem::new(c4.clone(), vec![Coset::new(&c4, Subgroup::whole(&c4), 0)]).unwrap();
        assert!(verify_coset_index_bound(&whole).unwrap().holds());

        // (C2)^3: coordinate hyperplanes plus the all-ones singleton.
        let g = grp("C2*C2*C2");
        let mut cosets: Vec<Coset> = (0..3)
            .map(|i| {
                let bits = BitSet::from_indices(8, (0..8).filter(|&x| g.coords(x)[i] == 0));
                Coset::new(&g, Subgroup::from_bits(&g, bits).unwrap(), 0)
            })
            .collect();
        cosets.push(Coset::new(&g, Subgroup::trivial(&g), 7));
        let sys = CosetSystem::new(g.clone(), cosets).unwrap();
        let chk = verify_coset_index_bound(&sys).unwrap();
        assert_eq!(chk.k, 4);
        assert_eq!(chk.indices, vec![2, 2, 2, 8]);
        assert!(chk.holds());

        let redundant = CosetSystem::new(
            c4.clone(),
            vec![Coset::new(&c4, Subgroup::whole(&c4), 0), Coset::new(&c4, Subgroup::trivial(&c4), 1)],
        )
        .unwrap();
        assert!(verify_coset_index_bound(&redundant).is_err());
    }
}
