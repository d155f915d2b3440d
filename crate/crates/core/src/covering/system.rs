use serde::Serialize;

use crate::abelian::{Coset, CosetWire, FiniteAbelianGroup, Subgroup};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// An ordered list of cosets of one group. Repeated subgroups with
/// different representatives are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSystem {
    group: FiniteAbelianGroup,
    cosets: Vec<Coset>,
}

impl CosetSystem {
    pub fn new(group: FiniteAbelianGroup, cosets: Vec<Coset>) -> Result<Self> {
        if cosets.iter().any(|c| c.members().len() != group.order()) {
            return Err(Error::Mismatch);
        }
        Ok(CosetSystem { group, cosets })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn union(&self) -> BitSet {
        let mut u = BitSet::new(self.group.order());
        for c in &self.cosets {
            u.union_with(c.members());
        }
        u
    }

    /// `Ω + t`.
    pub fn translate(&self, t: usize) -> CosetSystem {
        CosetSystem {
            group: self.group.clone(),
            cosets: self.cosets.iter().map(|c| c.translate(&self.group, t)).collect(),
        }
    }

    pub fn to_wire(&self) -> Vec<CosetWire> {
        self.cosets.iter().map(Coset::to_wire).collect()
    }

    pub fn from_wire(group: FiniteAbelianGroup, wire: &[CosetWire]) -> Result<Self> {
        let cosets = wire
            .iter()
            .map(|w| w.to_coset(&group))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, cosets)
    }
}

/// Full audit of a coset system against a target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub covers_target: bool,
    pub uncovered_witness: Option<usize>,
    pub removable_indices: Vec<usize>,
    pub subgroup_intersection: Subgroup,
}

impl CoverReport {
    pub fn is_irredundant(&self) -> bool {
        self.removable_indices.is_empty()
    }

    pub fn to_wire(&self) -> CoverReportWire {
        CoverReportWire {
            covers_target: self.covers_target,
            uncovered_witness: self.uncovered_witness,
            removable_indices: self.removable_indices.clone(),
            irredundant: self.is_irredundant(),
            subgroup_intersection: self.subgroup_intersection.members().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReportWire {
    pub covers_target: bool,
    pub uncovered_witness: Option<usize>,
    pub removable_indices: Vec<usize>,
    pub irredundant: bool,
    pub subgroup_intersection: Vec<usize>,
}

/// Coverage, removable members and subgroup intersection of `system`
/// relative to `target`. The intersection of an empty system is the whole
/// group.
pub fn audit(system: &CosetSystem, target: &BitSet) -> CoverReport {
    let g = system.group();
    assert_eq!(target.len(), g.order(), "target lives in another group");
    let union = system.union();
    let mut missing = target.clone();
    missing.difference_with(&union);
    let uncovered_witness = missing.first();

    let removable_indices = (0..system.len())
        .filter(|&i| {
            let mut others = BitSet::new(g.order());
            for (j, c) in system.cosets().iter().enumerate() {
                if j != i {
                    others.union_with(c.members());
                }
            }
            target.is_subset(&others)
        })
        .collect();

    let mut inter = BitSet::full(g.order());
    for c in system.cosets() {
        inter.intersect_with(c.subgroup().members());
    }
    CoverReport {
        covers_target: uncovered_witness.is_none(),
        uncovered_witness,
        removable_indices,
        subgroup_intersection: Subgroup::from_bits(g, inter).expect("intersection of subgroups"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{subgroup_generated, GroupElement, DEFAULT_ELEMENT_LIMIT};
    use proptest::prelude::*;

    fn grp(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s, DEFAULT_ELEMENT_LIMIT).unwrap()
    }

    #[test]
    fn punctured_c6_example() {
        let g = grp("C6");
        let h = subgroup_generated(&g, &[GroupElement::new(vec![3])]).unwrap();
        let sys = CosetSystem::new(
            g.clone(),
            vec![
                Coset::new(&g, h.clone(), 1),
                Coset::new(&g, h, 2),
                Coset::new(&g, Subgroup::trivial(&g), 3),
            ],
        )
        .unwrap();
        let target = BitSet::from_indices(6, 1..6);
        let r = audit(&sys, &target);
        assert!(r.covers_target);
        assert!(r.is_irredundant());
        assert!(r.subgroup_intersection.is_trivial());
        assert!(!sys.union().contains(0));
    }

    #[test]
    fn empty_system_misses_identity() {
        let g = grp("C4");
        let sys = CosetSystem::new(g.clone(), vec![]).unwrap();
        let r = audit(&sys, &BitSet::from_indices(4, [0]));
        assert!(!r.covers_target);
        assert_eq!(r.uncovered_witness, Some(0));
        assert_eq!(r.subgroup_intersection.size(), 4);
    }

    #[test]
    fn whole_group_member_makes_others_removable() {
        let g = grp("C2*C2");
        let sys = CosetSystem::new(
            g.clone(),
            vec![
                Coset::new(&g, Subgroup::trivial(&g), 1),
                Coset::new(&g, Subgroup::whole(&g), 0),
                Coset::new(&g, Subgroup::trivial(&g), 3),
            ],
        )
        .unwrap();
        let r = audit(&sys, &BitSet::full(4));
        assert!(r.covers_target);
        assert_eq!(r.removable_indices, vec![0, 2]);
    }

    fn arb_system() -> impl Strategy<Value = (Vec<u32>, Vec<(usize, usize)>, Vec<usize>, usize)> {
        (
            prop_oneof![Just(vec![6]), Just(vec![2, 4]), Just(vec![2, 2, 2]), Just(vec![3, 3]), Just(vec![12])],
            proptest::collection::vec((0usize..64, 0usize..64), 0..6),
            proptest::collection::vec(0usize..64, 0..10),
            0usize..64,
        )
    }

    proptest! {
        #[test]
        fn audit_is_translation_invariant((orders, picks, target, t) in arb_system()) {
            let g = FiniteAbelianGroup::new(orders, DEFAULT_ELEMENT_LIMIT).unwrap();
            let subs = crate::abelian::enumerate_subgroups(&g).unwrap();
            let cosets = picks.iter().map(|&(h, x)| Coset::new(&g, subs[h % subs.len()].clone(), x % g.order())).collect();
            let sys = CosetSystem::new(g.clone(), cosets).unwrap();
            let t = t % g.order();
            let target = BitSet::from_indices(g.order(), target.iter().map(|x| x % g.order()));
            let r0 = audit(&sys, &target);
            let r1 = audit(&sys.translate(t), &g.translate(&target, t));
            prop_assert_eq!(r0.covers_target, r1.covers_target);
            prop_assert_eq!(&r0.removable_indices, &r1.removable_indices);
            prop_assert_eq!(&r0.subgroup_intersection, &r1.subgroup_intersection);
            if let Some(w) = r1.uncovered_witness {
                let untranslated = g.sub(w, t);
                prop_assert!(target.contains(untranslated) && !sys.union().contains(untranslated));
            }
        }
    }
}
