use crate::abelian::arith::is_prime;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::linalg::{dot, index_vec, space_size, vec_index};
use crate::gf::Field;

/// `(C_p)^n` viewed as `GF(p)^n`, elements indexed mixed-radix with
/// coordinate 0 least significant.
#[derive(Clone, Debug)]
pub struct ElementaryGroup {
    field: Field,
    n: usize,
    size: usize,
}

impl PartialEq for ElementaryGroup {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.n == other.n
    }
}

impl Eq for ElementaryGroup {}

impl ElementaryGroup {
    pub fn new(p: u32, n: usize, limit: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let size = space_size(p, n, limit)?;
        Ok(ElementaryGroup {
            field: Field::new(p)?,
            n,
            size,
        })
    }

    pub fn p(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn index(&self, v: &[u32]) -> usize {
        vec_index(self.p(), v)
    }

    pub fn vector(&self, i: usize) -> Vec<u32> {
        index_vec(self.p(), self.n, i)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let p = self.p() as usize;
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.n {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn check(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.n || v.iter().any(|&x| x >= self.p()) {
            return Err(Error::InvalidArgument(format!(
                "{v:?} is not a vector of GF({})^{}",
                self.p(),
                self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn require_odd(&self) -> Result<()> {
        if self.p() == 2 {
            return Err(Error::Unsupported(
                "parity criteria need an odd prime; use the direct check for p = 2".into(),
            ));
        }
        Ok(())
    }
}

/// Element of the group algebra of `(C_p)^n` over the two-element field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2GroupAlgebraElement {
    group: ElementaryGroup,
    coeff_bits: BitSet,
}

impl F2GroupAlgebraElement {
    pub fn zero(g: &ElementaryGroup) -> Self {
        F2GroupAlgebraElement {
            group: g.clone(),
            coeff_bits: BitSet::new(g.size()),
        }
    }

    /// `δ₀`, the multiplicative identity.
    pub fn one(g: &ElementaryGroup) -> Self {
        Self::delta(g, 0)
    }

    pub fn delta(g: &ElementaryGroup, v: usize) -> Self {
        F2GroupAlgebraElement {
            group: g.clone(),
            coeff_bits: BitSet::from_indices(g.size(), [v]),
        }
    }

    pub fn from_bits(g: &ElementaryGroup, bits: BitSet) -> Result<Self> {
        if bits.len() != g.size() {
            return Err(Error::Mismatch);
        }
        Ok(F2GroupAlgebraElement {
            group: g.clone(),
            coeff_bits: bits,
        })
    }

    pub fn group(&self) -> &ElementaryGroup {
        &self.group
    }

    pub fn bits(&self) -> &BitSet {
        &self.coeff_bits
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_bits.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Mismatch);
        }
        let mut bits = self.coeff_bits.clone();
        bits.xor_with(&other.coeff_bits);
        Ok(F2GroupAlgebraElement {
            group: self.group.clone(),
            coeff_bits: bits,
        })
    }
}

/// Convolution product with coefficients mod 2.
pub fn ga_multiply(a: &F2GroupAlgebraElement, b: &F2GroupAlgebraElement) -> Result<F2GroupAlgebraElement> {
    if a.group != b.group {
        return Err(Error::Mismatch);
    }
    let g = &a.group;
    let mut out = BitSet::new(g.size());
    for u in a.coeff_bits.iter() {
        for v in b.coeff_bits.iter() {
            out.toggle(g.add(u, v));
        }
    }
    Ok(F2GroupAlgebraElement {
        group: g.clone(),
        coeff_bits: out,
    })
}

/// Whether `Π (δ_{xᵢ} + δ₀)` vanishes, computed by repeated [`ga_multiply`].
pub fn cover_product_zero(g: &ElementaryGroup, xs: &[Vec<u32>]) -> Result<bool> {
    g.require_odd()?;
    let mut acc = F2GroupAlgebraElement::one(g);
    for x in xs {
        g.check(x)?;
        let factor = F2GroupAlgebraElement::delta(g, g.index(x)).add(&F2GroupAlgebraElement::one(g))?;
        acc = ga_multiply(&acc, &factor)?;
    }
    Ok(acc.is_zero())
}

/// Direct check that the hyperplanes `xᵢ^⊥` cover the whole space; returns
/// the first uncovered vector otherwise.
pub fn naive_uncovered(g: &ElementaryGroup, xs: &[Vec<u32>]) -> Result<Option<Vec<u32>>> {
    for x in xs {
        g.check(x)?;
    }
    let f = g.field();
    Ok((0..g.size())
        .map(|i| g.vector(i))
        .find(|v| xs.iter().all(|x| dot(f, x, v) != 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grp(p: u32, n: usize) -> ElementaryGroup {
        ElementaryGroup::new(p, n, 4096).unwrap()
    }

    #[test]
    fn identity_and_squares() {
        let g = grp(2, 1);
        let a = F2GroupAlgebraElement::delta(&g, 1).add(&F2GroupAlgebraElement::one(&g)).unwrap();
        assert!(ga_multiply(&a, &a).unwrap().is_zero());
        assert_eq!(ga_multiply(&F2GroupAlgebraElement::one(&g), &a).unwrap(), a);
        let g3 = grp(3, 2);
        let u = g3.index(&[1, 2]);
        let v = g3.index(&[2, 2]);
        let prod = ga_multiply(&F2GroupAlgebraElement::delta(&g3, u), &F2GroupAlgebraElement::delta(&g3, v)).unwrap();
        assert_eq!(prod, F2GroupAlgebraElement::delta(&g3, g3.index(&[0, 1])));
    }

    #[test]
    fn product_examples() {
        let g = grp(3, 2);
        let all = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]];
        assert!(cover_product_zero(&g, &all).unwrap());
        assert_eq!(naive_uncovered(&g, &all).unwrap(), None);
        assert!(!cover_product_zero(&g, &[vec![1, 0]]).unwrap());
        assert_eq!(naive_uncovered(&g, &[vec![1, 0]]).unwrap(), Some(vec![1, 0]));
        assert!(!cover_product_zero(&g, &[]).unwrap());
    }

    #[test]
    fn binary_is_unsupported() {
        let g = grp(2, 2);
        assert!(matches!(cover_product_zero(&g, &[]), Err(Error::Unsupported(_))));
    }

    fn elem(g: &ElementaryGroup, bits: &[usize]) -> F2GroupAlgebraElement {
        F2GroupAlgebraElement::from_bits(g, BitSet::from_indices(g.size(), bits.iter().map(|b| b % g.size()))).unwrap()
    }

    proptest! {
        #[test]
        fn algebra_laws(a in prop::collection::vec(0usize..27, 0..8), b in prop::collection::vec(0usize..27, 0..8), c in prop::collection::vec(0usize..27, 0..8)) {
            let g = grp(3, 3);
            let (a, b, c) = (elem(&g, &a), elem(&g, &b), elem(&g, &c));
            let ab = ga_multiply(&a, &b).unwrap();
            prop_assert_eq!(&ab, &ga_multiply(&b, &a).unwrap());
            prop_assert_eq!(ga_multiply(&ab, &c).unwrap(), ga_multiply(&a, &ga_multiply(&b, &c).unwrap()).unwrap());
            let lhs = ga_multiply(&a.add(&b).unwrap(), &c).unwrap();
            let rhs = ga_multiply(&a, &c).unwrap().add(&ga_multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
