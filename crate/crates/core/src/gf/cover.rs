//! Minimal irredundant hyperplane coverings of `GF(q)^n` with trivial
//! direction intersection, and the codimension test on affine coverings.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::covering::{all_irredundant_covers, min_cover, CoverProblem, InvariantValue, SearchBudget, SearchStatus};
use crate::error::{Error, Result};
use crate::gf::hyperplane::{all_affine_hyperplanes, all_hyperplanes, AffineHyperplane, AffineHyperplaneWire};
use crate::gf::linalg::{space_size, Matrix};
use crate::gf::Field;

#[derive(Clone, Debug)]
pub struct HyperplaneCoverOutcome {
    pub q: u32,
    pub n: usize,
    pub affine: bool,
    /// `h_q(n)` or `l_q(n)`; absent when the budget ran out.
    pub value: Option<InvariantValue>,
    pub witness: Vec<AffineHyperplane>,
    pub lower_bound: usize,
    pub nodes_expanded: u64,
    pub status: SearchStatus,
}

#[derive(Serialize)]
pub struct HyperplaneCoverWire {
    pub invariant: &'static str,
    pub q: u32,
    pub n: usize,
    pub value: Option<InvariantValue>,
    pub witness: Vec<AffineHyperplaneWire>,
    pub lower_bound: usize,
    pub nodes_expanded: u64,
    pub status: SearchStatus,
}

impl HyperplaneCoverOutcome {
    pub fn to_wire(&self) -> HyperplaneCoverWire {
        HyperplaneCoverWire {
            invariant: if self.affine { "l" } else { "h" },
            q: self.q,
            n: self.n,
            value: self.value,
            witness: self.witness.iter().map(AffineHyperplane::to_wire).collect(),
            lower_bound: self.lower_bound,
            nodes_expanded: self.nodes_expanded,
            status: self.status,
        }
    }
}

fn candidates(f: &Field, n: usize, affine: bool, limit: usize) -> Result<Vec<AffineHyperplane>> {
    if affine {
        all_affine_hyperplanes(f, n, limit)
    } else {
        Ok(all_hyperplanes(f, n, limit)?.into_iter().map(AffineHyperplane::linear).collect())
    }
}

fn problem(f: &Field, n: usize, family: &[AffineHyperplane], limit: usize) -> Result<CoverProblem> {
    let size = space_size(f.q(), n, limit)?;
    let sets = family.iter().map(|h| h.points(f)).collect();
    let dirs = family.iter().map(|h| h.hyperplane().points(f)).collect();
    Ok(CoverProblem {
        target: BitSet::full(size),
        sets,
        directions: Some((dirs, BitSet::from_indices(size, [0]))),
        forced: vec![],
    })
}

/// `h_q(n)` (linear) or `l_q(n)` (affine) by exhaustive search.
///
/// Sizes up to `budget.max_cosets` are tried; when that reaches the number
/// of candidate hyperplanes a miss is reported as unattainable (as for
/// `h_q(1)`, where `{0}` is the only hyperplane).
pub fn min_hyperplane_cover(
    f: &Field,
    n: usize,
    affine: bool,
    budget: &SearchBudget,
    limit: usize,
) -> Result<HyperplaneCoverOutcome> {
    budget.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let family = candidates(f, n, affine, limit)?;
    let p = problem(f, n, &family, limit)?;
    let k_hi = budget.max_cosets.min(family.len());
    let r = min_cover(&p, 1, k_hi, budget);
    let (value, status) = match (&r.cover, r.status) {
        (Some(c), _) => (Some(InvariantValue::Finite(c.len())), SearchStatus::Complete),
        (None, SearchStatus::Complete) if k_hi == family.len() => {
            (Some(InvariantValue::Unattainable), SearchStatus::Complete)
        }
        _ => (None, SearchStatus::Inconclusive),
    };
    let witness: Vec<AffineHyperplane> = r
        .cover
        .iter()
        .flatten()
        .map(|&i| family[i].clone())
        .collect();
    if let Some(InvariantValue::Finite(k)) = value {
        assert!(k > n, "covering of size {k} in dimension {n}");
        debug_assert!(audit_hyperplanes(f, n, &witness, limit)?.is_admissible());
    }
    Ok(HyperplaneCoverOutcome {
        q: f.q(),
        n,
        affine,
        value,
        witness,
        lower_bound: r.lower_bound,
        nodes_expanded: r.nodes,
        status,
    })
}

/// Default budget for hyperplane searches: every candidate may be used.
pub fn default_hyperplane_budget(f: &Field, n: usize, affine: bool) -> SearchBudget {
    let q = f.q() as usize;
    let lines = (q.pow(n as u32) - 1) / (q - 1);
    SearchBudget::with_max(if affine { lines * q } else { lines })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneAudit {
    pub covers: bool,
    pub uncovered_witness: Option<Vec<u32>>,
    pub removable_indices: Vec<usize>,
    /// Codimension of the intersection of the corresponding hyperplanes.
    pub codim: usize,
    pub dim: usize,
}

impl HyperplaneAudit {
    pub fn is_irredundant(&self) -> bool {
        self.removable_indices.is_empty()
    }

    /// Covering, irredundant, directions meeting in `{0}`.
    pub fn is_admissible(&self) -> bool {
        self.covers && self.is_irredundant() && self.codim == self.dim
    }
}

pub fn audit_hyperplanes(
    f: &Field,
    n: usize,
    system: &[AffineHyperplane],
    limit: usize,
) -> Result<HyperplaneAudit> {
    let size = space_size(f.q(), n, limit)?;
    if system.iter().any(|h| h.hyperplane().dim() != n) {
        return Err(Error::Mismatch);
    }
    let sets: Vec<BitSet> = system.iter().map(|h| h.points(f)).collect();
    let mut union = BitSet::new(size);
    for s in &sets {
        union.union_with(s);
    }
    let missing = union.first_unset();
    let removable_indices = (0..sets.len())
        .filter(|&i| {
            let mut u = BitSet::new(size);
            for (j, s) in sets.iter().enumerate() {
                if j != i {
                    u.union_with(s);
                }
            }
            u.is_full()
        })
        .collect();
    let codim = if system.is_empty() {
        0
    } else {
        let rows: Vec<Vec<u32>> = system.iter().map(|h| h.normal().to_vec()).collect();
        Matrix::from_rows(f.clone(), &rows)?.rank()
    };
    Ok(HyperplaneAudit {
        covers: missing.is_none(),
        uncovered_witness: missing.map(|i| crate::gf::linalg::index_vec(f.q(), n, i)),
        removable_indices,
        codim,
        dim: n,
    })
}

/// Every irredundant affine covering of `GF(q)^n` with at most `max_size`
/// members, with no condition on the directions.
pub fn irredundant_affine_covers(
    f: &Field,
    n: usize,
    max_size: usize,
    limit: usize,
) -> Result<Vec<Vec<AffineHyperplane>>> {
    let family = all_affine_hyperplanes(f, n, limit)?;
    let mut p = problem(f, n, &family, limit)?;
    p.directions = None;
    Ok(all_irredundant_covers(&p, max_size)
        .into_iter()
        .map(|c| c.into_iter().map(|i| family[i].clone()).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimCheck {
    pub k: usize,
    pub codim: usize,
    /// `3·codim < 2·k`
    pub holds: bool,
    /// The bound is claimed only for fields of non-prime order.
    pub hypothesis_applies: bool,
}

/// Codimension of `⋂ Hᵢ` against `⅔k` for an irredundant affine covering.
pub fn codim_ratio_check(
    f: &Field,
    n: usize,
    system: &[AffineHyperplane],
    limit: usize,
) -> Result<CodimCheck> {
    let a = audit_hyperplanes(f, n, system, limit)?;
    if !a.covers || !a.is_irredundant() {
        return Err(Error::Precondition("system is not an irredundant covering".into()));
    }
    let k = system.len();
    Ok(CodimCheck {
        k,
        codim: a.codim,
        holds: 3 * a.codim < 2 * k,
        hypothesis_applies: !f.is_prime_field(),
    })
}
