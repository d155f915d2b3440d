use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::linalg::{check_vector, dot, index_vec, space_size, vec_scale};
use crate::gf::Field;

/// `x^⊥` stored by its canonical normal (first nonzero coordinate 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<u32>,
}

impl Hyperplane {
    pub fn new(f: &Field, normal: &[u32]) -> Result<Self> {
        check_vector(f, normal)?;
        let lead = normal
            .iter()
            .find(|&&x| x != 0)
            .ok_or_else(|| Error::InvalidArgument("hyperplane normal is zero".into()))?;
        Ok(Hyperplane {
            normal: vec_scale(f, f.inv(*lead), normal),
        })
    }

    pub fn normal(&self) -> &[u32] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains(&self, f: &Field, x: &[u32]) -> bool {
        dot(f, &self.normal, x) == 0
    }

    pub fn points(&self, f: &Field) -> BitSet {
        AffineHyperplane::linear(self.clone()).points(f)
    }
}

/// `{x : (normal, x) = offset}`; its direction is [`Self::hyperplane`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineHyperplane {
    hyperplane: Hyperplane,
    offset: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineHyperplaneWire {
    pub normal: Vec<u32>,
    pub offset: u32,
}

impl AffineHyperplane {
    /// Normalizes `(a, c)` to the canonical normal, scaling `c` along.
    pub fn new(f: &Field, normal: &[u32], offset: u32) -> Result<Self> {
        check_vector(f, &[offset])?;
        let h = Hyperplane::new(f, normal)?;
        let lead = *normal.iter().find(|&&x| x != 0).unwrap();
        Ok(AffineHyperplane {
            hyperplane: h,
            offset: f.div(offset, lead),
        })
    }

    pub fn linear(h: Hyperplane) -> Self {
        AffineHyperplane {
            hyperplane: h,
            offset: 0,
        }
    }

    pub fn hyperplane(&self) -> &Hyperplane {
        &self.hyperplane
    }

    pub fn normal(&self) -> &[u32] {
        self.hyperplane.normal()
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    pub fn contains(&self, f: &Field, x: &[u32]) -> bool {
        dot(f, self.normal(), x) == self.offset
    }

    /// Member set over the point indices of `GF(q)^n`.
    pub fn points(&self, f: &Field) -> BitSet {
        let n = self.hyperplane.dim();
        let size = (f.q() as usize).pow(n as u32);
        BitSet::from_indices(
            size,
            (0..size).filter(|&i| self.contains(f, &index_vec(f.q(), n, i))),
        )
    }

    pub fn to_wire(&self) -> AffineHyperplaneWire {
        AffineHyperplaneWire {
            normal: self.normal().to_vec(),
            offset: self.offset,
        }
    }

    pub fn from_wire(f: &Field, w: &AffineHyperplaneWire) -> Result<Self> {
        Self::new(f, &w.normal, w.offset)
    }
}

/// All hyperplanes of `GF(q)^n`, in increasing index order of their
/// canonical normals.
pub fn all_hyperplanes(f: &Field, n: usize, limit: usize) -> Result<Vec<Hyperplane>> {
    let size = space_size(f.q(), n, limit)?;
    Ok((1..size)
        .map(|i| index_vec(f.q(), n, i))
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .map(|v| Hyperplane { normal: v })
        .collect())
}

/// All affine hyperplanes, grouped by direction, offsets ascending.
pub fn all_affine_hyperplanes(f: &Field, n: usize, limit: usize) -> Result<Vec<AffineHyperplane>> {
    Ok(all_hyperplanes(f, n, limit)?
        .into_iter()
        .flat_map(|h| {
            (0..f.q()).map(move |c| AffineHyperplane {
                hyperplane: h.clone(),
                offset: c,
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        let f = Field::new(3).unwrap();
        assert_eq!(all_hyperplanes(&f, 2, 4096).unwrap().len(), 4);
        assert_eq!(all_affine_hyperplanes(&f, 2, 4096).unwrap().len(), 12);
        let f4 = Field::new(4).unwrap();
        assert_eq!(all_affine_hyperplanes(&f4, 2, 4096).unwrap().len(), 20);
        assert_eq!(all_hyperplanes(&f4, 3, 4096).unwrap().len(), 21);
    }

    #[test]
    fn zero_normal_rejected() {
        let f = Field::new(5).unwrap();
        assert!(Hyperplane::new(&f, &[0, 0]).is_err());
    }

    #[test]
    fn affine_scaling_keeps_point_set() {
        let f = Field::new(5).unwrap();
        let a = AffineHyperplane::new(&f, &[2, 3], 4).unwrap();
        let b = AffineHyperplane::new(&f, &[1, 4], 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points(&f).count(), 5);
    }

    proptest! {
        #[test]
        fn canonical_form_is_scale_invariant(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), raw in prop::collection::vec(0u32..9, 1..4), c in 1u32..9) {
            let f = Field::new(q).unwrap();
            let v: Vec<u32> = raw.iter().map(|x| x % q).collect();
            let c = 1 + (c - 1) % (q - 1);
            prop_assume!(v.iter().any(|&x| x != 0));
            let h1 = Hyperplane::new(&f, &v).unwrap();
            let h2 = Hyperplane::new(&f, &vec_scale(&f, c, &v)).unwrap();
            prop_assert_eq!(&h1, &h2);
            prop_assert_eq!(h1.points(&f), h2.points(&f));
        }
    }
}
