//! Linear matroids over GF(q) and disjoint-base packing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, Matrix};

/// Column matroid of an ordered multiset of vectors.
#[derive(Clone, Debug)]
pub struct LinearMatroid {
    field: Field,
    n: usize,
    ground: Vec<Vec<u32>>,
}

impl LinearMatroid {
    pub fn new(field: Field, n: usize, ground: Vec<Vec<u32>>) -> Result<Self> {
        for v in &ground {
            if v.len() != n {
                return Err(Error::Mismatch);
            }
            crate::gf::linalg::check_vector(&field, v)?;
        }
        Ok(LinearMatroid { field, n, ground })
    }

    /// Ground set = the columns of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        LinearMatroid {
            field: m.field().clone(),
            n: m.rows(),
            ground: m.columns(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[u32] {
        &self.ground[i]
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.ground[i].iter().all(|&x| x == 0)
    }

    pub fn rank_subset(&self, s: &[usize]) -> usize {
        if s.is_empty() || self.n == 0 {
            return 0;
        }
        let rows: Vec<Vec<u32>> = s.iter().map(|&i| self.ground[i].clone()).collect();
        Matrix::from_rows(self.field.clone(), &rows).expect("checked vectors").rank()
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        self.rank_subset(s) == s.len()
    }

    pub fn full_rank(&self) -> usize {
        self.rank_subset(&(0..self.len()).collect::<Vec<_>>())
    }

    fn check_indices(&self, s: &[usize]) -> Result<()> {
        if let Some(&i) = s.iter().find(|&&i| i >= self.len()) {
            return Err(Error::InvalidArgument(format!("index {i} outside the ground set")));
        }
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() {
            return Err(Error::InvalidArgument("repeated index".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePacking {
    pub subset: Vec<usize>,
    pub rank: usize,
    pub bases: Vec<Vec<usize>>,
    /// `min ⌊(|X|−|Y|)/(r(X)−r(Y))⌋` over `Y ⊆ X` with `r(Y) < r(X)`;
    /// computed for `|X| ≤ 12`.
    pub edmonds_bound: Option<usize>,
}

impl BasePacking {
    pub fn count(&self) -> usize {
        self.bases.len()
    }
}

pub const EDMONDS_ENUMERATION_LIMIT: usize = 12;

/// Splits `x` into `k` disjoint independent sets of maximum total size by
/// augmenting paths (matroid partition). Elements are inserted in the
/// order given.
fn partition(m: &LinearMatroid, x: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); k];
    // owner[e] = Some(set index)
    let mut owner: Vec<Option<usize>> = vec![None; m.len()];
    for &s in x {
        if m.is_loop(s) {
            continue;
        }
        // BFS over elements; parent[e] = (previous element, set it moves into)
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; m.len()];
        let mut visited = vec![false; m.len()];
        visited[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        let mut end = None;
        'bfs: while let Some(y) = queue.pop_front() {
            for (i, set) in sets.iter().enumerate() {
                if owner[y] == Some(i) {
                    continue;
                }
                let mut with = set.clone();
                with.push(y);
                if m.is_independent(&with) {
                    end = Some((y, i));
                    break 'bfs;
                }
                for (pos, &z) in set.iter().enumerate() {
                    if visited[z] {
                        continue;
                    }
                    let mut swapped = with.clone();
                    swapped.swap_remove(pos);
                    if m.is_independent(&swapped) {
                        visited[z] = true;
                        parent[z] = Some((y, i));
                        queue.push_back(z);
                    }
                }
            }
        }
        let Some((mut y, mut into)) = end else {
            continue;
        };
        loop {
            if let Some(from) = owner[y] {
                sets[from].retain(|&e| e != y);
            }
            sets[into].push(y);
            owner[y] = Some(into);
            match parent[y] {
                // y was displaced from `into_prev` by `prev`
                Some((prev, into_prev)) => {
                    y = prev;
                    into = into_prev;
                }
                None => break,
            }
        }
        debug_assert!(sets.iter().all(|s| m.is_independent(s)));
    }
    for s in &mut sets {
        s.sort_unstable();
    }
    sets
}

fn edmonds_minimum(m: &LinearMatroid, x: &[usize], rx: usize) -> usize {
    let mut best = usize::MAX;
    for mask in 0u32..(1 << x.len()) {
        let y: Vec<usize> = (0..x.len()).filter(|b| mask >> b & 1 == 1).map(|b| x[b]).collect();
        let ry = m.rank_subset(&y);
        if ry < rx {
            best = best.min((x.len() - y.len()) / (rx - ry));
        }
    }
    best
}

/// Largest number of pairwise disjoint bases of `X`, with a packing.
pub fn max_disjoint_bases(m: &LinearMatroid, x: &[usize]) -> Result<BasePacking> {
    m.check_indices(x)?;
    let rx = m.rank_subset(x);
    if rx == 0 {
        return Err(Error::Precondition("subset has rank 0".into()));
    }
    let mut best: Vec<Vec<usize>> = Vec::new();
    for k in 1..=x.len() / rx {
        let sets = partition(m, x, k);
        if sets.iter().all(|s| s.len() == rx) {
            best = sets;
        } else {
            break;
        }
    }
    best.sort();
    let edmonds_bound = (x.len() <= EDMONDS_ENUMERATION_LIMIT).then(|| edmonds_minimum(m, x, rx));
    if let Some(b) = edmonds_bound {
        assert_eq!(b, best.len(), "packing disagrees with the min-max formula");
    }
    let mut subset = x.to_vec();
    subset.sort_unstable();
    Ok(BasePacking {
        subset,
        rank: rx,
        bases: best,
        edmonds_bound,
    })
}

pub const PACKING_SUBSET_LIMIT: usize = 24;

/// A smallest `X` (by size, then lexicographically) with `r(X) ≥ 1` and
/// `|X| ≥ r(X)·k`, together with `k` disjoint bases of it.
///
/// Being smallest, `X` is inclusion-minimal among such sets, which is the
/// choice that forces the packing to exist. Loops are never chosen. At most
/// 24 non-loop elements are accepted.
pub fn packing_subset(m: &LinearMatroid, k: usize) -> Result<Option<BasePacking>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let pool: Vec<usize> = (0..m.len()).filter(|&i| !m.is_loop(i)).collect();
    if pool.len() > PACKING_SUBSET_LIMIT {
        return Err(Error::LimitExceeded {
            order: 1u128 << pool.len(),
            limit: 1 << PACKING_SUBSET_LIMIT,
        });
    }
    for size in k..=pool.len() {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let x: Vec<usize> = pick.iter().map(|&i| pool[i]).collect();
            let r = m.rank_subset(&x);
            if r >= 1 && size >= r * k {
                let mut bases = partition(m, &x, k);
                assert!(bases.iter().all(|b| b.len() == r), "minimal subset without packing");
                bases.sort();
                return Ok(Some(BasePacking {
                    subset: x,
                    rank: r,
                    bases,
                    edmonds_bound: None,
                }));
            }
            if !next_combination(&mut pick, pool.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive oracle: the most pairwise disjoint bases of `X`, found by
/// trying every family of bases. Exponential; for small `X` only.
pub fn brute_force_packing(m: &LinearMatroid, x: &[usize]) -> usize {
    let rx = m.rank_subset(x);
    if rx == 0 {
        return 0;
    }
    let bases: Vec<u64> = (0u64..1 << x.len())
        .filter(|mask| mask.count_ones() as usize == rx)
        .filter(|mask| {
            let s: Vec<usize> = (0..x.len()).filter(|b| mask >> b & 1 == 1).map(|b| x[b]).collect();
            m.is_independent(&s)
        })
        .collect();
    fn best(bases: &[u64], used: u64) -> usize {
        let mut top = 0;
        for (i, &b) in bases.iter().enumerate() {
            if b & used == 0 {
                top = top.max(1 + best(&bases[i + 1..], used | b));
            }
        }
        top
    }
    best(&bases, 0)
}

/// `|Y| < r(Y)·k` for every nonempty proper `Y ⊂ X` with `r(Y) < r(X)`.
pub fn minimality_holds(m: &LinearMatroid, x: &[usize], k: usize) -> bool {
    let rx = m.rank_subset(x);
    (1u64..(1 << x.len()) - 1).all(|mask| {
        let y: Vec<usize> = (0..x.len()).filter(|b| mask >> b & 1 == 1).map(|b| x[b]).collect();
        let ry = m.rank_subset(&y);
        ry >= rx || y.len() < ry * k
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(q: u32, n: usize, vs: &[&[u32]]) -> LinearMatroid {
        LinearMatroid::new(Field::new(q).unwrap(), n, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn ranks() {
        let m = lm(2, 2, &[&[1, 0], &[0, 1], &[1, 0]]);
        assert_eq!(m.rank_subset(&[]), 0);
        assert_eq!(m.rank_subset(&[0, 1]), 2);
        assert_eq!(m.rank_subset(&[0, 2]), 1);
    }

    #[test]
    fn packing_examples() {
        let m = lm(2, 2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 0], &[0, 1], &[1, 1]]);
        let all: Vec<usize> = (0..6).collect();
        let p = max_disjoint_bases(&m, &all).unwrap();
        assert_eq!(p.count(), 3);
        assert_eq!(p.edmonds_bound, Some(3));
        assert_eq!(packing_subset(&m, 3).unwrap().unwrap().subset, all);
        assert_eq!(max_disjoint_bases(&m, &[0, 1]).unwrap().count(), 1);
        let ones = lm(2, 1, &[&[1], &[1], &[1], &[1]]);
        assert_eq!(max_disjoint_bases(&ones, &[0, 1, 2, 3]).unwrap().count(), 4);
    }

    #[test]
    fn agrees_with_oracle_on_plane_multisets() {
        let f = Field::new(3).unwrap();
        let vecs: Vec<Vec<u32>> = (0..9).map(|i| vec![i % 3, i / 3]).collect();
        // all 5-element sequences over five nonzero vectors
        for code in 0..5u32.pow(5) {
            let pick: Vec<usize> = (0..5).map(|i| (code / 5u32.pow(i) % 5) as usize).collect();
            let ground: Vec<Vec<u32>> = pick.iter().map(|&i| vecs[i + 1].clone()).collect();
            let m = LinearMatroid::new(f.clone(), 2, ground).unwrap();
            let all: Vec<usize> = (0..5).collect();
            let p = max_disjoint_bases(&m, &all).unwrap();
            assert_eq!(p.count(), brute_force_packing(&m, &all));
            for k in 1..=3 {
                if let Some(x) = packing_subset(&m, k).unwrap() {
                    assert!(minimality_holds(&m, &x.subset, k));
                    assert_eq!(x.bases.len(), k);
                }
            }
        }
    }

    #[test]
    fn rank_zero_rejected() {
        let m = lm(3, 2, &[&[0, 0]]);
        assert!(max_disjoint_bases(&m, &[0]).is_err());
        assert_eq!(packing_subset(&m, 1).unwrap(), None);
    }

    #[test]
    fn k_one_gives_a_basis() {
        let m = lm(3, 2, &[&[1, 1], &[2, 2], &[1, 0], &[0, 1]]);
        let p = packing_subset(&m, 1).unwrap().unwrap();
        // inclusion-minimal: a single non-loop element is its own basis
        assert_eq!(p.subset.len(), 1);
        assert_eq!(p.bases, vec![p.subset.clone()]);
    }

    #[test]
    fn hypothesis_can_fail_without_packing() {
        // |E| = 3 < r(E)·2 and no two disjoint bases of any positive-rank subset
        let m = lm(3, 2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(packing_subset(&m, 2).unwrap(), None);
    }
}
