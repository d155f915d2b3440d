use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default maximum group order for exhaustive operations.
pub const DEFAULT_ELEMENT_LIMIT: usize = 4096;

/// A finite abelian group given as a direct product of cyclic groups.
///
/// Elements are addressed by their mixed-radix index
/// `Σ eᵢ·Πⱼ<ᵢ orderⱼ`, so coordinate 0 varies fastest. The identity has
/// index 0 (the multiplicative "1" of the group in product notation).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<u32>,
    order: usize,
    element_count_limit: usize,
}

/// A group element as a tuple of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coordinates: Vec<u32>,
}

impl GroupElement {
    pub fn new(coordinates: Vec<u32>) -> Self {
        GroupElement { coordinates }
    }
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_orders: Vec<u32>, element_count_limit: usize) -> Result<Self> {
        if let Some(&bad) = cyclic_orders.iter().find(|&&k| k < 2) {
            return Err(Error::Parse(format!("cyclic order {bad} is below 2")));
        }
        let order: u128 = cyclic_orders.iter().map(|&k| k as u128).product();
        if order > element_count_limit as u128 {
            return Err(Error::LimitExceeded {
                order,
                limit: element_count_limit,
            });
        }
        Ok(FiniteAbelianGroup {
            cyclic_orders,
            order: order as usize,
            element_count_limit,
        })
    }

    /// The trivial group (empty product).
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            cyclic_orders: Vec::new(),
            order: 1,
            element_count_limit: DEFAULT_ELEMENT_LIMIT,
        }
    }

    /// `(C_p)^n`.
    pub fn elementary(p: u32, n: usize, limit: usize) -> Result<Self> {
        Self::new(vec![p; n], limit)
    }

    /// Parses `C2*C2*C3` or `2,2,3`. Whitespace is ignored.
    pub fn parse(spec: &str, limit: usize) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty group spec".into()));
        }
        let parts: Vec<&str> = if s.contains('*') || s.starts_with('C') {
            s.split('*')
                .map(|t| {
                    t.strip_prefix('C')
                        .ok_or_else(|| Error::Parse(format!("expected C<k>, got {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.split(',').collect()
        };
        let orders = parts
            .iter()
            .map(|t| {
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad cyclic order {t:?}")));
                }
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad cyclic order {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders, limit)
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element_count_limit(&self) -> usize {
        self.element_count_limit
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_cyclic_decomposition_trivial(&self) -> bool {
        self.cyclic_orders.is_empty()
    }

    pub fn coords(&self, mut idx: usize) -> Vec<u32> {
        self.cyclic_orders
            .iter()
            .map(|&k| {
                let c = (idx % k as usize) as u32;
                idx /= k as usize;
                c
            })
            .collect()
    }

    pub fn index_of_coords(&self, coords: &[u32]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (&c, &k) in coords.iter().zip(&self.cyclic_orders) {
            idx += (c % k) as usize * stride;
            stride *= k as usize;
        }
        idx
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        GroupElement::new(self.coords(idx))
    }

    /// Validates and indexes an element.
    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        if e.coordinates.len() != self.cyclic_orders.len()
            || e.coordinates
                .iter()
                .zip(&self.cyclic_orders)
                .any(|(&c, &k)| c >= k)
        {
            return Err(Error::InvalidArgument(format!(
                "{:?} is not an element of {}",
                e.coordinates, self
            )));
        }
        Ok(self.index_of_coords(&e.coordinates))
    }

    pub fn add(&self, mut a: usize, mut b: usize) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for &k in &self.cyclic_orders {
            let k = k as usize;
            let s = (a % k + b % k) % k;
            a /= k;
            b /= k;
            idx += s * stride;
            stride *= k;
        }
        idx
    }

    pub fn neg(&self, mut a: usize) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for &k in &self.cyclic_orders {
            let k = k as usize;
            let c = a % k;
            a /= k;
            idx += ((k - c) % k) * stride;
            stride *= k;
        }
        idx
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, m: usize, a: usize) -> usize {
        let c: Vec<u32> = self
            .coords(a)
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &k)| ((x as usize * m) % k as usize) as u32)
            .collect();
        self.index_of_coords(&c)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut ord = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            ord += 1;
        }
        ord
    }

    /// `set + x`.
    pub fn translate(&self, set: &BitSet, x: usize) -> BitSet {
        BitSet::from_indices(self.order, set.iter().map(|s| self.add(s, x)))
    }

    /// `(C_p)^n` when every cyclic order equals the same prime `p`.
    pub fn elementary_prime(&self) -> Option<u32> {
        let p = *self.cyclic_orders.first()?;
        (crate::abelian::arith::is_prime(p as u64) && self.cyclic_orders.iter().all(|&k| k == p))
            .then_some(p)
    }

    pub fn direct_product(&self, other: &FiniteAbelianGroup) -> Result<FiniteAbelianGroup> {
        let mut orders = self.cyclic_orders.clone();
        orders.extend_from_slice(&other.cyclic_orders);
        Self::new(orders, self.element_count_limit.max(other.element_count_limit))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return write!(f, "C1");
        }
        let parts: Vec<String> = self.cyclic_orders.iter().map(|k| format!("C{k}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All cyclic decompositions with non-decreasing factors ≥ 2 and product at
/// most `max_order`, ordered by (order, factor list).
pub fn decompositions_up_to(max_order: usize) -> Vec<Vec<u32>> {
    fn rec(min: u32, prod: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let mut k = min;
        while prod * k as usize <= max {
            cur.push(k);
            rec(k, prod * k as usize, max, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(2, 1, max_order, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let pa: u32 = a.iter().product();
        let pb: u32 = b.iter().product();
        pa.cmp(&pb).then_with(|| a.cmp(b))
    });
    out
}
