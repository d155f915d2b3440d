//! Smallest point sets of `AG(n, p)` meeting every affine hyperplane.

use serde::Serialize;

use super::search::{min_cover, CoverProblem, SearchBudget, SearchStatus};
use crate::abelian::arith::is_prime;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::linalg::{index_vec, space_size};
use crate::gf::{all_affine_hyperplanes, Field};

#[derive(Clone, Debug, Serialize)]
pub struct BlockingOutcome {
    pub invariant: &'static str,
    pub n: usize,
    pub p: u32,
    pub value: Option<usize>,
    pub witness: Vec<Vec<u32>>,
    /// `1 + n(p−1)`
    pub formula: usize,
    pub lower_bound: usize,
    pub nodes_expanded: u64,
    pub status: SearchStatus,
}

pub fn default_blocking_budget(n: usize, p: u32) -> SearchBudget {
    SearchBudget::with_max(n * (p as usize - 1) + 2)
}

/// Hyperplanes are the elements to cover and each point is the set of
/// hyperplanes through it. The origin is fixed as a member, which loses
/// nothing because translates of blocking sets are blocking sets.
pub fn blocking_number(n: usize, p: u32, budget: &SearchBudget, limit: usize) -> Result<BlockingOutcome> {
    budget.validate()?;
    if !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let f = Field::new(p)?;
    let size = space_size(p, n, limit)?;
    let hyps = all_affine_hyperplanes(&f, n, limit)?;
    let members: Vec<BitSet> = hyps.iter().map(|h| h.points(&f)).collect();
    let sets: Vec<BitSet> = (0..size)
        .map(|x| BitSet::from_indices(hyps.len(), (0..hyps.len()).filter(|&h| members[h].contains(x))))
        .collect();
    let problem = CoverProblem {
        target: BitSet::full(hyps.len()),
        sets,
        directions: None,
        forced: vec![0],
    };
    let k_hi = budget.max_cosets.min(size);
    let r = min_cover(&problem, 1, k_hi, budget);
    let formula = 1 + n * (p as usize - 1);
    let value = r.cover.as_ref().map(Vec::len);
    if let (Some(v), SearchStatus::Complete) = (value, r.status) {
        assert_eq!(v, formula, "blocking number of AG({n},{p})");
    }
    let mut witness: Vec<Vec<u32>> = r.cover.iter().flatten().map(|&x| index_vec(p, n, x)).collect();
    witness.sort();
    Ok(BlockingOutcome {
        invariant: "blocking",
        n,
        p,
        value,
        witness,
        formula,
        lower_bound: r.lower_bound,
        nodes_expanded: r.nodes,
        status: if value.is_some() { SearchStatus::Complete } else { SearchStatus::Inconclusive },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::DEFAULT_ELEMENT_LIMIT as L;

    fn run(n: usize, p: u32) -> BlockingOutcome {
        blocking_number(n, p, &default_blocking_budget(n, p), L).unwrap()
    }

    #[test]
    fn small_affine_spaces() {
        for (n, p, want) in [(2, 2, 3), (3, 2, 4), (2, 3, 5), (1, 3, 3), (1, 5, 5), (2, 5, 9)] {
            let r = run(n, p);
            assert_eq!(r.value, Some(want), "AG({n},{p})");
            assert_eq!(r.witness.len(), want);
            let f = Field::new(p).unwrap();
            for h in all_affine_hyperplanes(&f, n, L).unwrap() {
                assert!(r.witness.iter().any(|x| h.contains(&f, x)));
            }
        }
    }

    #[test]
    fn tight_budget_is_inconclusive() {
        let r = blocking_number(2, 3, &SearchBudget::with_max(4), L).unwrap();
        assert_eq!(r.value, None);
        assert_eq!(r.lower_bound, 5);
    }

    #[test]
    fn rejects_non_prime() {
        assert!(blocking_number(2, 4, &SearchBudget::with_max(5), L).is_err());
    }
}
