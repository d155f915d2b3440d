//! From bases with a target admitting no nowhere-zero combination to an
//! irredundant covering of an affine space by coordinate hyperplanes.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::hyperplane::{AffineHyperplane, AffineHyperplaneWire};
use crate::gf::linalg::{dot, index_vec, space_size, Matrix};
use crate::gf::nowhere::nowhere_zero_combination;

/// Trace of the hyperplane `xⱼ = 0` on `U`, in the parameter coordinates
/// `t` of `U = {x₀ + Σ tᵢ nᵢ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RestrictedHyperplane {
    /// `xⱼ` vanishes on all of `U`.
    Whole { coordinate: usize },
    Proper {
        coordinate: usize,
        #[serde(flatten)]
        hyperplane: AffineHyperplaneWire,
    },
}

impl RestrictedHyperplane {
    pub fn coordinate(&self) -> usize {
        match self {
            RestrictedHyperplane::Whole { coordinate } | RestrictedHyperplane::Proper { coordinate, .. } => {
                *coordinate
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineCoverInstance {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// `dim U = n(k−1)`
    pub dim_u: usize,
    pub particular: Vec<u32>,
    pub direction_basis: Vec<Vec<u32>>,
    pub members: Vec<RestrictedHyperplane>,
    pub covers: bool,
    pub irredundant: bool,
    /// Codimension in `U` of the intersection of the corresponding
    /// hyperplanes of the proper members.
    pub codim: usize,
    /// `k/(k−1)`, to be compared with `1 + ε_q`.
    pub ratio: Option<f64>,
}

/// Builds `U = {x : Mx = v}` for `M = [B₁ | … | B_k]`, restricts the `nk`
/// coordinate hyperplanes to `U`, and drops members greedily (in coordinate
/// order) while the rest still covers `U`.
pub fn bases_to_affine_cover(bases: &[Matrix], v: &[u32], limit: usize) -> Result<AffineCoverInstance> {
    if nowhere_zero_combination(bases, v)?.is_some() {
        return Err(Error::Precondition(
            "target has a nowhere-zero combination of the bases".into(),
        ));
    }
    let f = bases[0].field().clone();
    let n = bases[0].rows();
    let k = bases.len();
    let cols: Vec<Vec<u32>> = bases.iter().flat_map(Matrix::columns).collect();
    let m = Matrix::from_columns(f.clone(), n, &cols)?;
    let (x0, basis) = m.solve(v).expect("columns span the space");
    let d = basis.len();
    let size = space_size(f.q(), d, limit)?;
    let params: Vec<Vec<u32>> = (0..size).map(|i| index_vec(f.q(), d, i)).collect();

    // coordinate j as an affine function of t: a_j·t + x0_j
    let funcs: Vec<Vec<u32>> = (0..n * k).map(|j| basis.iter().map(|b| b[j]).collect()).collect();
    let traces: Vec<BitSet> = (0..n * k)
        .map(|j| {
            BitSet::from_indices(
                size,
                (0..size).filter(|&i| f.add(dot(&f, &funcs[j], &params[i]), x0[j]) == 0),
            )
        })
        .collect();

    let mut kept: Vec<usize> = (0..n * k).filter(|&j| !traces[j].is_empty()).collect();
    let union_of = |idx: &[usize]| {
        let mut u = BitSet::new(size);
        for &j in idx {
            u.union_with(&traces[j]);
        }
        u
    };
    let covers = union_of(&kept).is_full();
    if covers {
        let mut pos = 0;
        while pos < kept.len() {
            let mut rest = kept.clone();
            rest.remove(pos);
            if union_of(&rest).is_full() {
                kept = rest;
            } else {
                pos += 1;
            }
        }
    }
    let irredundant = (0..kept.len()).all(|p| {
        let mut rest = kept.clone();
        rest.remove(p);
        !union_of(&rest).is_full()
    });

    let mut members = Vec::new();
    let mut normals = Vec::new();
    for &j in &kept {
        if funcs[j].iter().all(|&c| c == 0) {
            members.push(RestrictedHyperplane::Whole { coordinate: j });
        } else {
            let h = AffineHyperplane::new(&f, &funcs[j], f.neg(x0[j]))?;
            normals.push(h.normal().to_vec());
            members.push(RestrictedHyperplane::Proper {
                coordinate: j,
                hyperplane: h.to_wire(),
            });
        }
    }
    let codim = if normals.is_empty() {
        0
    } else {
        Matrix::from_rows(f.clone(), &normals)?.rank()
    };
    Ok(AffineCoverInstance {
        q: f.q(),
        n,
        k,
        dim_u: d,
        particular: x0,
        direction_basis: basis,
        members,
        covers,
        irredundant,
        codim,
        ratio: (k > 1).then(|| k as f64 / (k - 1) as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::DEFAULT_ELEMENT_LIMIT as L;
    use crate::gf::Field;

    fn m1(f: &Field, x: u32) -> Matrix {
        Matrix::from_rows(f.clone(), &[vec![x]]).unwrap()
    }

    #[test]
    fn single_basis_over_gf3() {
        let f = Field::new(3).unwrap();
        let r = bases_to_affine_cover(&[m1(&f, 1)], &[0], L).unwrap();
        assert_eq!(r.dim_u, 0);
        assert_eq!(r.members, vec![RestrictedHyperplane::Whole { coordinate: 0 }]);
        assert!(r.covers && r.irredundant);
        assert_eq!(r.ratio, None);
    }

    #[test]
    fn two_bases_over_gf3_never_qualify() {
        let f = Field::new(3).unwrap();
        for v in 0..3 {
            let r = bases_to_affine_cover(&[m1(&f, 1), m1(&f, 1)], &[v], L);
            assert!(matches!(r, Err(Error::Precondition(_))));
        }
    }

    #[test]
    fn binary_instance() {
        let f = Field::new(2).unwrap();
        let r = bases_to_affine_cover(&[m1(&f, 1)], &[0], L).unwrap();
        assert!(r.covers && r.irredundant);
        assert_eq!(r.members.len(), 1);
    }

    #[test]
    fn binary_three_bases_give_a_proper_cover() {
        // over GF(2) only all-ones coefficients are nowhere zero, so
        // three copies of I₂ sum to (1,1) and v = 0 qualifies
        let f = Field::new(2).unwrap();
        let id = Matrix::identity(f.clone(), 2);
        let r = bases_to_affine_cover(&[id.clone(), id.clone(), id], &[0, 0], L).unwrap();
        assert_eq!(r.dim_u, 4);
        assert!(r.covers && r.irredundant);
        assert!(r.members.iter().all(|m| matches!(m, RestrictedHyperplane::Proper { .. })));
        assert_eq!(r.ratio, Some(1.5));
    }
}
