use serde::{Deserialize, Serialize};

use super::algebra::ElementaryGroup;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::gray_walk;

pub const CUBE_SET_LIMIT: usize = 24;

/// `C(X)`: vectors reached by an odd number of 0-1 combinations of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSet {
    group: ElementaryGroup,
    parity_bits: BitSet,
    source: Vec<Vec<u32>>,
}

impl CubeSet {
    pub fn group(&self) -> &ElementaryGroup {
        &self.group
    }

    pub fn bits(&self) -> &BitSet {
        &self.parity_bits
    }

    pub fn source(&self) -> &[Vec<u32>] {
        &self.source
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.parity_bits.contains(self.group.index(v))
    }

    pub fn members(&self) -> Vec<Vec<u32>> {
        self.parity_bits.iter().map(|i| self.group.vector(i)).collect()
    }

    /// `p n hex`, the hex digits of the parity bitset.
    pub fn to_text(&self) -> String {
        format!("{} {} {}", self.group.p(), self.group.n(), self.parity_bits.to_hex())
    }
}

/// Parity bitset with a `p n` header, as read back from [`CubeSet::to_text`].
pub fn parse_parity_bits(text: &str, limit: usize) -> Result<(ElementaryGroup, BitSet)> {
    let w: Vec<&str> = text.split_whitespace().collect();
    let [p, n, hex] = w[..] else {
        return Err(Error::Parse("expected `p n hex`".into()));
    };
    let p = p.parse().map_err(|_| Error::Parse(format!("bad p {p:?}")))?;
    let n = n.parse().map_err(|_| Error::Parse(format!("bad n {n:?}")))?;
    let g = ElementaryGroup::new(p, n, limit)?;
    let bits = BitSet::from_hex(g.size(), hex).ok_or_else(|| Error::Parse("bad hex bitset".into()))?;
    Ok((g, bits))
}

/// Builds `C(X)` by a Gray-code walk over all `2^|X|` sub-multisets.
pub fn cube_set(g: &ElementaryGroup, xs: &[Vec<u32>]) -> Result<CubeSet> {
    if xs.len() > CUBE_SET_LIMIT {
        return Err(Error::LimitExceeded {
            order: 1u128 << xs.len().min(127),
            limit: 1 << CUBE_SET_LIMIT,
        });
    }
    for x in xs {
        g.check(x)?;
    }
    let mut bits = BitSet::new(g.size());
    gray_walk(g.field(), xs, g.n(), |_, s| {
        bits.toggle(g.index(s));
        true
    });
    Ok(CubeSet {
        group: g.clone(),
        parity_bits: bits,
        source: xs.to_vec(),
    })
}

/// The `xᵢ^⊥` cover the space iff every vector has an even number of 0-1
/// representations.
pub fn parity_cover_check(g: &ElementaryGroup, xs: &[Vec<u32>]) -> Result<bool> {
    g.require_odd()?;
    Ok(cube_set(g, xs)?.bits().is_empty())
}

/// `{(a₁,…,aₙ) : aᵢ ∈ Aᵢ}` for two-element sets `Aᵢ ⊂ GF(p)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialCube {
    sets: Vec<[u32; 2]>,
}

impl CombinatorialCube {
    pub fn new(p: u32, sets: Vec<[u32; 2]>) -> Result<Self> {
        let mut sets = sets;
        for s in &mut sets {
            if s[0] == s[1] || s[0] >= p || s[1] >= p {
                return Err(Error::InvalidArgument(format!("{s:?} is not a 2-subset of GF({p})")));
            }
            s.sort_unstable();
        }
        Ok(CombinatorialCube { sets })
    }

    pub fn sets(&self) -> &[[u32; 2]] {
        &self.sets
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.sets.len() && v.iter().zip(&self.sets).all(|(x, s)| s.contains(x))
    }

    pub fn points(&self, g: &ElementaryGroup) -> BitSet {
        let n = self.sets.len();
        BitSet::from_indices(
            g.size(),
            (0..1usize << n).map(|m| {
                let v: Vec<u32> = (0..n).map(|i| self.sets[i][(m >> i) & 1]).collect();
                g.index(&v)
            }),
        )
    }

    /// Every cube of `GF(p)^n`, coordinate 0 varying fastest.
    pub fn all(p: u32, n: usize) -> Vec<CombinatorialCube> {
        let pairs: Vec<[u32; 2]> = (0..p).flat_map(|a| (a + 1..p).map(move |b| [a, b])).collect();
        let total = pairs.len().pow(n as u32);
        (0..total)
            .map(|mut i| {
                let sets = (0..n)
                    .map(|_| {
                        let s = pairs[i % pairs.len()];
                        i /= pairs.len();
                        s
                    })
                    .collect();
                CombinatorialCube { sets }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(p: u32, n: usize) -> ElementaryGroup {
        ElementaryGroup::new(p, n, 4096).unwrap()
    }

    #[test]
    fn cube_examples() {
        let g = grp(3, 2);
        let c = cube_set(&g, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(c.members(), vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let d = cube_set(&g, &[vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(d.members(), vec![vec![0, 0], vec![2, 1]]);
        assert_eq!(cube_set(&g, &[]).unwrap().members(), vec![vec![0, 0]]);
    }

    #[test]
    fn parity_examples() {
        let g = grp(3, 2);
        let all = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]];
        assert!(parity_cover_check(&g, &all).unwrap());
        assert!(!parity_cover_check(&g, &[]).unwrap());
        assert!(!parity_cover_check(&g, &[vec![2, 1]]).unwrap());
        assert!(parity_cover_check(&grp(2, 1), &[]).is_err());
    }

    #[test]
    fn size_limit() {
        let g = grp(3, 1);
        assert!(cube_set(&g, &vec![vec![1]; 25]).is_err());
    }

    #[test]
    fn hex_round_trip() {
        let g = grp(5, 2);
        let c = cube_set(&g, &[vec![1, 3], vec![2, 2], vec![4, 0]]).unwrap();
        let (g2, bits) = parse_parity_bits(&c.to_text(), 4096).unwrap();
        assert_eq!(g2, g);
        assert_eq!(&bits, c.bits());
        assert!(parse_parity_bits("5 2", 4096).is_err());
    }

    #[test]
    fn combinatorial_cubes() {
        let cubes = CombinatorialCube::all(3, 2);
        assert_eq!(cubes.len(), 9);
        let g = grp(3, 2);
        for c in &cubes {
            assert_eq!(c.points(&g).count(), 4);
        }
        assert!(CombinatorialCube::new(3, vec![[1, 1]]).is_err());
        assert!(CombinatorialCube::new(3, vec![[2, 0]]).unwrap().contains(&[0]));
    }
}
