use std::collections::HashSet;

use serde::Serialize;

use super::group::{FiniteAbelianGroup, GroupElement};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A subgroup stored as the full membership bitset over element indices.
///
/// Equality and hashing look at the members only; recorded generators are
/// informational.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: BitSet,
    generators: Option<Vec<GroupElement>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    /// Validates closure and Lagrange before accepting `members`.
    pub fn from_bits(g: &FiniteAbelianGroup, members: BitSet) -> Result<Self> {
        if members.len() != g.order() {
            return Err(Error::Mismatch);
        }
        if !members.contains(0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let elems = members.to_vec();
        for &a in &elems {
            for &b in &elems {
                if !members.contains(g.add(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a} + {b} escapes")));
                }
            }
        }
        assert_eq!(g.order() % elems.len(), 0, "Lagrange violated");
        Ok(Subgroup {
            members,
            generators: None,
        })
    }

    pub(crate) fn from_bits_unchecked(members: BitSet) -> Self {
        Subgroup {
            members,
            generators: None,
        }
    }

    pub fn trivial(g: &FiniteAbelianGroup) -> Self {
        Self::from_bits_unchecked(BitSet::from_indices(g.order(), [0]))
    }

    pub fn whole(g: &FiniteAbelianGroup) -> Self {
        Self::from_bits_unchecked(BitSet::full(g.order()))
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn generators(&self) -> Option<&[GroupElement]> {
        self.generators.as_deref()
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.contains(idx)
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn index_in(&self, g: &FiniteAbelianGroup) -> usize {
        g.order() / self.size()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// A small generating set found greedily in index order.
    pub fn greedy_generators(&self, g: &FiniteAbelianGroup) -> Vec<usize> {
        let mut cur = BitSet::from_indices(g.order(), [0]);
        let mut gens = Vec::new();
        for x in self.members.iter() {
            if !cur.contains(x) {
                cur = extend(g, &cur, x);
                gens.push(x);
            }
        }
        gens
    }
}

/// `⟨H, x⟩ = ⋃ₖ (H + kx)` for a subgroup bitset `h`.
pub(crate) fn extend(g: &FiniteAbelianGroup, h: &BitSet, x: usize) -> BitSet {
    let mut out = h.clone();
    let mut cur = x;
    while !out.contains(cur) {
        out.union_with(&g.translate(h, cur));
        cur = g.add(cur, x);
    }
    out
}

/// Smallest subgroup containing `gens`, by additive closure.
pub fn subgroup_generated(g: &FiniteAbelianGroup, gens: &[GroupElement]) -> Result<Subgroup> {
    let mut bits = BitSet::from_indices(g.order(), [0]);
    for e in gens {
        let x = g.index_of(e)?;
        bits = extend(g, &bits, x);
    }
    Ok(Subgroup {
        members: bits,
        generators: Some(gens.to_vec()),
    })
}

/// Every subgroup exactly once, sorted by (size, member bits).
pub fn enumerate_subgroups(g: &FiniteAbelianGroup) -> Result<Vec<Subgroup>> {
    if g.order() > g.element_count_limit() {
        return Err(Error::LimitExceeded {
            order: g.order() as u128,
            limit: g.element_count_limit(),
        });
    }
    let trivial = BitSet::from_indices(g.order(), [0]);
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(trivial.clone());
    let mut queue = vec![trivial];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head].clone();
        head += 1;
        let mut tried = h.clone();
        for x in 0..g.order() {
            if tried.contains(x) {
                continue;
            }
            tried.union_with(&g.translate(&h, x));
            let k = extend(g, &h, x);
            if seen.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut subs: Vec<BitSet> = queue;
    subs.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
    Ok(subs.into_iter().map(Subgroup::from_bits_unchecked).collect())
}

/// Bitwise intersection of subgroups of the same group.
pub fn intersect_subgroups(hs: &[Subgroup]) -> Result<Subgroup> {
    let first = hs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty subgroup list".into()))?;
    let mut bits = first.members.clone();
    for h in &hs[1..] {
        if h.members.len() != bits.len() {
            return Err(Error::Mismatch);
        }
        bits.intersect_with(&h.members);
    }
    Ok(Subgroup::from_bits_unchecked(bits))
}

/// A coset `H + x` with canonical representative (its minimal index).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    subgroup: Subgroup,
    representative: usize,
    members: BitSet,
}

impl Coset {
    pub fn new(g: &FiniteAbelianGroup, subgroup: Subgroup, x: usize) -> Self {
        let members = g.translate(subgroup.members(), x);
        let representative = members.first().expect("cosets are nonempty");
        Coset {
            subgroup,
            representative,
            members,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn representative(&self) -> usize {
        self.representative
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn translate(&self, g: &FiniteAbelianGroup, t: usize) -> Coset {
        Coset::new(g, self.subgroup.clone(), g.add(self.representative, t))
    }

    pub fn to_wire(&self) -> CosetWire {
        CosetWire {
            subgroup_elements: self.subgroup.members().to_vec(),
            representative: self.representative,
        }
    }
}

/// JSON shape of a coset: `{subgroup_elements:[...], representative:idx}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CosetWire {
    pub subgroup_elements: Vec<usize>,
    pub representative: usize,
}

impl CosetWire {
    pub fn to_coset(&self, g: &FiniteAbelianGroup) -> Result<Coset> {
        if let Some(&bad) = self
            .subgroup_elements
            .iter()
            .chain([&self.representative])
            .find(|&&i| i >= g.order())
        {
            return Err(Error::InvalidArgument(format!("index {bad} outside {g}")));
        }
        let bits = BitSet::from_indices(g.order(), self.subgroup_elements.iter().copied());
        let h = Subgroup::from_bits(g, bits)?;
        Ok(Coset::new(g, h, self.representative))
    }
}
