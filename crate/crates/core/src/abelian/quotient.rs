//! Quotient maps `G → G/M` and the maximal separating subgroups used to
//! reduce arbitrary cosets to ones with cyclic prime-power quotient.

use super::arith::prime_power;
use super::group::FiniteAbelianGroup;
use super::subgroup::{extend, Coset, Subgroup};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A surjective homomorphism `source → target` with kernel `kernel`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: FiniteAbelianGroup,
    kernel: Subgroup,
    target: FiniteAbelianGroup,
    table: Vec<usize>,
}

impl QuotientMap {
    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn image(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn image_set(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.target.order(), set.iter().map(|x| self.table[x]))
    }

    pub fn image_subgroup(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_bits_unchecked(self.image_set(h.members()))
    }

    pub fn image_coset(&self, c: &Coset) -> Coset {
        Coset::new(
            &self.target,
            self.image_subgroup(c.subgroup()),
            self.table[c.representative()],
        )
    }

    /// Full preimage of a target subgroup.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_bits_unchecked(BitSet::from_indices(
            self.source.order(),
            (0..self.source.order()).filter(|&x| h.contains(self.table[x])),
        ))
    }
}

/// Builds `G/M` with a cyclic decomposition read off a diagonal form of the
/// relation lattice `⟨orderᵢ·eᵢ⟩ + M`.
pub fn quotient(g: &FiniteAbelianGroup, m: &Subgroup) -> Result<QuotientMap> {
    let m = Subgroup::from_bits(g, m.members().clone())?;
    let r = g.cyclic_orders().len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, &k) in g.cyclic_orders().iter().enumerate() {
        let mut row = vec![0i64; r];
        row[i] = k as i64;
        rows.push(row);
    }
    for x in m.greedy_generators(g) {
        rows.push(g.coords(x).into_iter().map(|c| c as i64).collect());
    }
    let (diag, v) = diagonalize(rows, r);

    let kept: Vec<usize> = (0..r).filter(|&i| diag[i] > 1).collect();
    let orders: Vec<u32> = kept.iter().map(|&i| diag[i] as u32).collect();
    let target = if orders.is_empty() {
        FiniteAbelianGroup::trivial()
    } else {
        FiniteAbelianGroup::new(orders, g.element_count_limit())?
    };

    let table = (0..g.order())
        .map(|x| {
            let c = g.coords(x);
            let y: Vec<u32> = kept
                .iter()
                .map(|&j| {
                    let s: i64 = (0..r).map(|i| c[i] as i64 * v[i][j]).sum();
                    s.rem_euclid(diag[j]) as u32
                })
                .collect();
            target.index_of_coords(&y)
        })
        .collect::<Vec<_>>();

    debug_assert_eq!(target.order() * m.size(), g.order());
    Ok(QuotientMap {
        source: g.clone(),
        kernel: m,
        target,
        table,
    })
}

/// Reduces the integer relation matrix (rows span the lattice) to diagonal
/// form with row and column operations. Returns the diagonal and the
/// accumulated column transform `V`, so `x ↦ x·V` carries the lattice onto
/// the diagonal one.
fn diagonalize(mut a: Vec<Vec<i64>>, r: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = a.len();
    let mut v: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    for t in 0..r {
        loop {
            // smallest nonzero pivot in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t];
            let mut clean = true;
            for i in (t + 1)..rows {
                let q = a[i][t].div_euclid(piv);
                if q != 0 {
                    for j in t..r {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in (t + 1)..r {
                let q = a[t][j].div_euclid(piv);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..r).map(|t| a[t][t].abs()).collect();
    (diag, v)
}

/// Greedily grows `H` to a subgroup `K` maximal with `g ∉ K`, then checks
/// that `G/K` is cyclic of prime-power order.
pub fn cyclic_prime_power_separator(
    grp: &FiniteAbelianGroup,
    h: &Subgroup,
    g: usize,
) -> Result<Subgroup> {
    if h.contains(g) {
        return Err(Error::Precondition(format!("{g} lies in H")));
    }
    let mut k = h.members().clone();
    'grow: loop {
        for x in 0..grp.order() {
            if k.contains(x) {
                continue;
            }
            let bigger = extend(grp, &k, x);
            if !bigger.contains(g) {
                k = bigger;
                continue 'grow;
            }
        }
        break;
    }
    let k = Subgroup::from_bits_unchecked(k);
    let q = quotient(grp, &k)?;
    let t = q.target();
    assert!(
        t.cyclic_orders().len() <= 1 && prime_power(t.order() as u64).is_some(),
        "G/K = {t} is not cyclic of prime-power order"
    );
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::group::{GroupElement, DEFAULT_ELEMENT_LIMIT};
    use crate::abelian::subgroup::{enumerate_subgroups, intersect_subgroups, subgroup_generated};

    fn grp(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s, DEFAULT_ELEMENT_LIMIT).unwrap()
    }

    fn sub(g: &FiniteAbelianGroup, gens: &[&[u32]]) -> Subgroup {
        let gens: Vec<GroupElement> = gens.iter().map(|c| GroupElement::new(c.to_vec())).collect();
        subgroup_generated(g, &gens).unwrap()
    }

    fn check_quotient(q: &QuotientMap) {
        let g = q.source();
        let t = q.target();
        assert_eq!(t.order() * q.kernel().size(), g.order());
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(q.image(g.add(a, b)), t.add(q.image(a), q.image(b)));
            }
        }
        let img = BitSet::from_indices(t.order(), q.table().iter().copied());
        assert!(img.is_full(), "surjective");
        let ker = BitSet::from_indices(g.order(), (0..g.order()).filter(|&x| q.image(x) == 0));
        assert_eq!(&ker, q.kernel().members());
    }

    #[test]
    fn quotient_examples() {
        let c4 = grp("C4");
        let q = quotient(&c4, &sub(&c4, &[&[2]])).unwrap();
        assert_eq!(q.target().cyclic_orders(), &[2]);
        assert_eq!(q.table(), &[0, 1, 0, 1]);

        let g = grp("C2*C3*C4");
        let q = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.target().order(), 24);
        check_quotient(&q);

        let v4 = grp("C2*C2");
        let q = quotient(&v4, &sub(&v4, &[&[1, 1]])).unwrap();
        assert_eq!(q.target().cyclic_orders(), &[2]);
        check_quotient(&q);
    }

    #[test]
    fn quotient_rejects_non_subgroup() {
        let c4 = grp("C4");
        let bogus = Subgroup::from_bits_unchecked(BitSet::from_indices(4, [0, 1]));
        assert!(quotient(&c4, &bogus).is_err());
    }

    #[test]
    fn every_quotient_up_to_24_is_a_valid_map() {
        for orders in crate::abelian::group::decompositions_up_to(24) {
            let g = FiniteAbelianGroup::new(orders, DEFAULT_ELEMENT_LIMIT).unwrap();
            for m in enumerate_subgroups(&g).unwrap() {
                check_quotient(&quotient(&g, &m).unwrap());
            }
        }
    }

    #[test]
    fn image_of_intersection_commutes_when_kernel_below() {
        for spec in ["C2*C2*C2", "C2*C4", "C3*C3", "C2*C6", "C12", "C2*C2*C4"] {
            let g = grp(spec);
            let subs = enumerate_subgroups(&g).unwrap();
            for m in &subs {
                let q = quotient(&g, m).unwrap();
                let above: Vec<&Subgroup> = subs.iter().filter(|h| m.is_subgroup_of(h)).collect();
                for a in &above {
                    for b in &above {
                        let meet = intersect_subgroups(&[(*a).clone(), (*b).clone()]).unwrap();
                        let lhs = q.image_subgroup(&meet);
                        let rhs = intersect_subgroups(&[q.image_subgroup(a), q.image_subgroup(b)]).unwrap();
                        assert_eq!(lhs, rhs, "{spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn pushed_cosets_are_cosets() {
        let g = grp("C2*C4");
        let subs = enumerate_subgroups(&g).unwrap();
        for m in &subs {
            let q = quotient(&g, m).unwrap();
            for h in &subs {
                for x in 0..g.order() {
                    let c = Coset::new(&g, h.clone(), x);
                    let img = q.image_coset(&c);
                    assert_eq!(img.members(), &q.image_set(c.members()));
                }
            }
        }
    }

    #[test]
    fn separator_examples() {
        let v4 = grp("C2*C2");
        let k = cyclic_prime_power_separator(&v4, &Subgroup::trivial(&v4), 1).unwrap();
        assert_eq!(k.members().to_vec(), vec![0, 2]);

        let c6 = grp("C6");
        let k = cyclic_prime_power_separator(&c6, &Subgroup::trivial(&c6), 3).unwrap();
        assert_eq!(k.members().to_vec(), vec![0, 2, 4]);

        let c4 = grp("C4");
        let k = cyclic_prime_power_separator(&c4, &Subgroup::trivial(&c4), 2).unwrap();
        assert!(k.is_trivial());
        assert_eq!(quotient(&c4, &k).unwrap().target().cyclic_orders(), &[4]);

        assert!(cyclic_prime_power_separator(&c4, &Subgroup::whole(&c4), 2).is_err());
    }

    #[test]
    fn separator_satisfies_all_clauses_up_to_24() {
        for orders in crate::abelian::group::decompositions_up_to(24) {
            let g = FiniteAbelianGroup::new(orders, DEFAULT_ELEMENT_LIMIT).unwrap();
            for h in enumerate_subgroups(&g).unwrap() {
                for x in (0..g.order()).filter(|&x| !h.contains(x)) {
                    let k = cyclic_prime_power_separator(&g, &h, x).unwrap();
                    assert!(h.is_subgroup_of(&k));
                    assert!(!k.contains(x));
                    let t = quotient(&g, &k).unwrap();
                    assert!(t.target().cyclic_orders().len() == 1);
                    assert!(prime_power(t.target().order() as u64).is_some());
                }
            }
        }
    }
}
