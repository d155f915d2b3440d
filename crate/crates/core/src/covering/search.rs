//! Exhaustive minimum irredundant set-cover search.
//!
//! Branches on the minimal-index uncovered target element; candidates are
//! the sets containing it, by decreasing size then bitset order. Partial
//! states in which some chosen set has no private element are cut, since
//! they can only complete to redundant covers. Iterative deepening on the
//! number of sets makes the first hit minimal.
//!
//! The first branching level is mapped over the worker pool and reduced by
//! candidate position, so the witness and node counts do not depend on the
//! thread count.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::par;

/// Limits for one exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Largest cover size tried.
    pub max_cosets: usize,
    /// Node cap for each first-level branch.
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

    pub fn with_max(max_cosets: usize) -> Self {
        SearchBudget {
            max_cosets,
            node_limit: Self::DEFAULT_NODE_LIMIT,
            time_limit: None,
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.max_cosets == 0 || self.node_limit == 0 || self.time_limit == Some(Duration::ZERO)
        {
            return Err(crate::Error::InvalidArgument(
                "search budget fields must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    Inconclusive,
}

/// Cover instance: a target set and candidate sets, each optionally tagged
/// with a direction subgroup whose intersection over the cover must equal
/// `trivial`.
pub(crate) struct CoverProblem {
    pub target: BitSet,
    pub sets: Vec<BitSet>,
    pub directions: Option<(Vec<BitSet>, BitSet)>,
    pub forced: Vec<usize>,
}

pub(crate) struct CoverSearch {
    /// Minimal cover, by set index, in the order chosen.
    pub cover: Option<Vec<usize>>,
    /// Every size below this has been refuted.
    pub lower_bound: usize,
    pub nodes: u64,
    pub status: SearchStatus,
}

struct Prepared<'a> {
    problem: &'a CoverProblem,
    /// sets restricted to the target
    local: Vec<BitSet>,
    /// candidate set indices per target element
    by_element: Vec<Vec<usize>>,
    max_size: usize,
}

impl<'a> Prepared<'a> {
    fn new(problem: &'a CoverProblem) -> Self {
        let local: Vec<BitSet> = problem
            .sets
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.intersect_with(&problem.target);
                s
            })
            .collect();
        let n = problem.target.len();
        let mut by_element: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, s) in local.iter().enumerate() {
            for e in s.iter() {
                by_element[e].push(i);
            }
        }
        for list in &mut by_element {
            list.sort_by(|&a, &b| {
                local[b]
                    .count()
                    .cmp(&local[a].count())
                    .then_with(|| problem.sets[a].cmp(&problem.sets[b]))
                    .then(a.cmp(&b))
            });
        }
        let max_size = local.iter().map(BitSet::count).max().unwrap_or(0);
        Prepared {
            problem,
            local,
            by_element,
            max_size,
        }
    }
}

#[derive(Clone)]
struct State {
    counts: Vec<u16>,
    uncovered: usize,
    chosen: Vec<usize>,
    private: Vec<usize>,
}

impl State {
    fn new(target: &BitSet) -> Self {
        State {
            counts: vec![0; target.len()],
            uncovered: target.count(),
            chosen: Vec::new(),
            private: Vec::new(),
        }
    }

    fn push(&mut self, prep: &Prepared, s: usize) {
        let mut own = 0;
        for e in prep.local[s].iter() {
            self.counts[e] += 1;
            match self.counts[e] {
                1 => {
                    own += 1;
                    self.uncovered -= 1;
                }
                2 => {
                    let pos = self
                        .chosen
                        .iter()
                        .position(|&c| prep.local[c].contains(e))
                        .expect("owner exists");
                    self.private[pos] -= 1;
                }
                _ => {}
            }
        }
        self.chosen.push(s);
        self.private.push(own);
    }

    fn pop(&mut self, prep: &Prepared) {
        let s = self.chosen.pop().expect("nonempty");
        self.private.pop();
        for e in prep.local[s].iter() {
            self.counts[e] -= 1;
            match self.counts[e] {
                0 => self.uncovered += 1,
                1 => {
                    let pos = self
                        .chosen
                        .iter()
                        .position(|&c| prep.local[c].contains(e))
                        .expect("owner exists");
                    self.private[pos] += 1;
                }
                _ => {}
            }
        }
    }

    fn irredundant(&self) -> bool {
        self.private.iter().all(|&p| p > 0)
    }

    fn first_uncovered(&self, target: &BitSet) -> Option<usize> {
        target.iter().find(|&e| self.counts[e] == 0)
    }
}

struct Walker<'p, 'a> {
    prep: &'p Prepared<'a>,
    k: usize,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Walker<'_, '_> {
    fn leaf_ok(&self, state: &State) -> bool {
        match &self.prep.problem.directions {
            None => true,
            Some((dirs, trivial)) => {
                let mut acc = dirs[state.chosen[0]].clone();
                for &c in &state.chosen[1..] {
                    acc.intersect_with(&dirs[c]);
                }
                &acc == trivial
            }
        }
    }

    fn dfs(&mut self, state: &mut State) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return false;
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.aborted = true;
                    return false;
                }
            }
        }
        if state.uncovered == 0 {
            return !state.chosen.is_empty() && self.leaf_ok(state);
        }
        let slots = self.k - state.chosen.len();
        if slots == 0 || self.prep.max_size * slots < state.uncovered {
            return false;
        }
        let u = state.first_uncovered(&self.prep.problem.target).expect("uncovered");
        for &c in &self.prep.by_element[u] {
            state.push(self.prep, c);
            if state.irredundant() && self.dfs(state) {
                return true;
            }
            state.pop(self.prep);
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Searches sizes `k_lo..=k_hi` for an irredundant cover meeting the
/// direction constraint.
pub(crate) fn min_cover(
    problem: &CoverProblem,
    k_lo: usize,
    k_hi: usize,
    budget: &SearchBudget,
) -> CoverSearch {
    let prep = Prepared::new(problem);
    let deadline = budget.time_limit.map(|t| Instant::now() + t);
    let mut root = State::new(&problem.target);
    for &f in &problem.forced {
        root.push(&prep, f);
    }
    let mut nodes = 0u64;
    let k_lo = k_lo.max(problem.forced.len()).max(1);
    for k in k_lo..=k_hi {
        if !root.irredundant() {
            return CoverSearch {
                cover: None,
                lower_bound: k_hi + 1,
                nodes,
                status: SearchStatus::Complete,
            };
        }
        let (hit, n, aborted) = exists_cover(&prep, &root, k, budget.node_limit, deadline);
        nodes += n;
        if let Some(c) = hit {
            return CoverSearch {
                cover: Some(c),
                lower_bound: k,
                nodes,
                status: SearchStatus::Complete,
            };
        }
        if aborted {
            return CoverSearch {
                cover: None,
                lower_bound: k,
                nodes,
                status: SearchStatus::Inconclusive,
            };
        }
    }
    CoverSearch {
        cover: None,
        lower_bound: k_hi + 1,
        nodes,
        status: SearchStatus::Complete,
    }
}

fn exists_cover(
    prep: &Prepared,
    root: &State,
    k: usize,
    node_limit: u64,
    deadline: Option<Instant>,
) -> (Option<Vec<usize>>, u64, bool) {
    let mut walker = Walker {
        prep,
        k,
        nodes: 0,
        node_limit,
        deadline,
        aborted: false,
    };
    let Some(u) = root.first_uncovered(&prep.problem.target) else {
        let mut st = root.clone();
        let ok = walker.dfs(&mut st);
        return (ok.then(|| st.chosen.clone()), walker.nodes, walker.aborted);
    };
    if root.chosen.len() >= k {
        return (None, 1, false);
    }
    let branches = &prep.by_element[u];
    let results = par::map_slice(branches, |&c| {
        let mut st = root.clone();
        st.push(prep, c);
        let mut w = Walker {
            prep,
            k,
            nodes: 0,
            node_limit,
            deadline,
            aborted: false,
        };
        if !st.irredundant() {
            return (None, 1, false);
        }
        let ok = w.dfs(&mut st);
        (ok.then(|| st.chosen.clone()), w.nodes, w.aborted)
    });
    let mut nodes = 1;
    let mut aborted = false;
    let mut hit = None;
    for (h, n, a) in results {
        nodes += n;
        if hit.is_none() {
            if let Some(c) = h {
                hit = Some(c);
            } else if a {
                aborted = true;
            }
        }
    }
    if hit.is_some() {
        aborted = false;
    }
    (hit, nodes, aborted)
}

/// All irredundant covers meeting the direction constraint, as sorted
/// index lists in lexicographic order. Used for small exhaustive audits.
pub(crate) fn all_irredundant_covers(problem: &CoverProblem, max_size: usize) -> Vec<Vec<usize>> {
    let prep = Prepared::new(problem);
    let mut out = std::collections::BTreeSet::new();
    let mut state = State::new(&problem.target);
    fn rec(
        prep: &Prepared,
        state: &mut State,
        max_size: usize,
        out: &mut std::collections::BTreeSet<Vec<usize>>,
    ) {
        if state.uncovered == 0 {
            let ok = match &prep.problem.directions {
                None => true,
                Some((dirs, trivial)) => {
                    let mut acc = dirs[state.chosen[0]].clone();
                    for &c in &state.chosen[1..] {
                        acc.intersect_with(&dirs[c]);
                    }
                    &acc == trivial
                }
            };
            if ok {
                let mut c = state.chosen.clone();
                c.sort_unstable();
                out.insert(c);
            }
            return;
        }
        if state.chosen.len() == max_size {
            return;
        }
        let u = state.first_uncovered(&prep.problem.target).expect("uncovered");
        for &c in &prep.by_element[u] {
            state.push(prep, c);
            if state.irredundant() {
                rec(prep, state, max_size, out);
            }
            state.pop(prep);
        }
    }
    rec(&prep, &mut state, max_size, &mut out);
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(n: usize, sets: &[&[usize]]) -> CoverProblem {
        CoverProblem {
            target: BitSet::full(n),
            sets: sets.iter().map(|s| BitSet::from_indices(n, s.iter().copied())).collect(),
            directions: None,
            forced: vec![],
        }
    }

    /// Oracle: smallest irredundant cover by subset enumeration.
    fn brute_min(p: &CoverProblem) -> Option<usize> {
        let m = p.sets.len();
        (1u32..(1 << m))
            .filter(|mask| {
                let mut u = BitSet::new(p.target.len());
                for i in 0..m {
                    if mask >> i & 1 == 1 {
                        u.union_with(&p.sets[i]);
                    }
                }
                p.target.is_subset(&u)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
    }

    #[test]
    fn finds_minimum_cover() {
        let p = problem(6, &[&[0, 1, 2], &[3, 4, 5], &[0, 3], &[1, 4], &[2, 5], &[0, 1, 2, 3]]);
        let r = min_cover(&p, 1, 6, &SearchBudget::with_max(6));
        assert_eq!(r.cover.as_ref().map(Vec::len), Some(2));
        assert_eq!(r.status, SearchStatus::Complete);
    }

    #[test]
    fn reports_no_cover() {
        let p = problem(3, &[&[0], &[1]]);
        let r = min_cover(&p, 1, 3, &SearchBudget::with_max(3));
        assert!(r.cover.is_none());
        assert_eq!(r.lower_bound, 4);
    }

    #[test]
    fn node_limit_is_inconclusive() {
        let sets: Vec<Vec<usize>> = (0..12).map(|i| vec![i]).collect();
        let refs: Vec<&[usize]> = sets.iter().map(Vec::as_slice).collect();
        let p = problem(12, &refs);
        let b = SearchBudget {
            max_cosets: 12,
            node_limit: 3,
            time_limit: None,
        };
        let r = min_cover(&p, 12, 12, &b);
        assert_eq!(r.status, SearchStatus::Inconclusive);
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..8);
            let m = rng.gen_range(1..9);
            let sets: Vec<Vec<usize>> = (0..m)
                .map(|_| (0..n).filter(|_| rng.gen_bool(0.35)).collect())
                .collect();
            let refs: Vec<&[usize]> = sets.iter().map(Vec::as_slice).collect();
            let p = problem(n, &refs);
            let r = min_cover(&p, 1, m, &SearchBudget::with_max(m));
            assert_eq!(r.cover.as_ref().map(Vec::len), brute_min(&p), "{sets:?}");
        }
    }
}
