use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::linalg::{axpy, check_vector, vec_sub, Matrix};
use crate::gf::Field;

/// Largest half-table kept in memory by the split searches.
const HALF_TABLE_LIMIT: u128 = 1 << 24;
/// Plain enumeration is used up to this many candidates.
const PLAIN_LIMIT: u128 = 1_000_000;
const GRAY_LIMIT: usize = 24;

pub fn nowhere_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x != 0)
}

/// Coefficients over the concatenated columns of `bases`, all nonzero, with
/// `Σ cⱼ colⱼ = v`.
///
/// Candidates are ordered mixed-radix over `1..q`, first coefficient
/// fastest; the first solution in that order is returned whichever strategy
/// runs.
pub fn nowhere_zero_combination(bases: &[Matrix], v: &[u32]) -> Result<Option<Vec<u32>>> {
    let Some(first) = bases.first() else {
        return Err(Error::InvalidArgument("no bases given".into()));
    };
    let f = first.field().clone();
    let n = first.rows();
    check_vector(&f, v)?;
    if v.len() != n {
        return Err(Error::Mismatch);
    }
    for b in bases {
        if b.field() != &f || b.rows() != n || !b.is_square() {
            return Err(Error::Mismatch);
        }
        if !b.is_nonsingular() {
            return Err(Error::Singular);
        }
    }
    let cols: Vec<Vec<u32>> = bases.iter().flat_map(Matrix::columns).collect();
    let radix = (f.q() - 1) as u128;
    let total = radix.checked_pow(cols.len() as u32).unwrap_or(u128::MAX);
    if total <= PLAIN_LIMIT {
        Ok(plain_search(&f, &cols, v))
    } else {
        split_search(&f, &cols, v)
    }
}

/// Odometer over `1..q` per position, position 0 fastest.
fn advance(f: &Field, digits: &mut [u32]) -> bool {
    for d in digits.iter_mut() {
        if *d + 1 < f.q() {
            *d += 1;
            return true;
        }
        *d = 1;
    }
    false
}

fn combine(f: &Field, cols: &[Vec<u32>], coeffs: &[u32], n: usize) -> Vec<u32> {
    let mut s = vec![0; n];
    for (c, col) in coeffs.iter().zip(cols) {
        axpy(f, &mut s, *c, col);
    }
    s
}

fn plain_search(f: &Field, cols: &[Vec<u32>], v: &[u32]) -> Option<Vec<u32>> {
    let mut coeffs = vec![1; cols.len()];
    loop {
        if combine(f, cols, &coeffs, v.len()) == v {
            return Some(coeffs);
        }
        if !advance(f, &mut coeffs) {
            return None;
        }
    }
}

fn split_search(f: &Field, cols: &[Vec<u32>], v: &[u32]) -> Result<Option<Vec<u32>>> {
    let n = v.len();
    let h = cols.len() / 2;
    let radix = (f.q() - 1) as u128;
    let low_size = radix.pow(h as u32);
    if low_size > HALF_TABLE_LIMIT || radix.pow((cols.len() - h) as u32) > HALF_TABLE_LIMIT * 64 {
        return Err(Error::LimitExceeded {
            order: radix.saturating_pow(cols.len() as u32),
            limit: HALF_TABLE_LIMIT as usize,
        });
    }
    let (low, high) = cols.split_at(h);
    let mut table: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    let mut lc = vec![1; h];
    loop {
        table.entry(combine(f, low, &lc, n)).or_insert_with(|| lc.clone());
        if !advance(f, &mut lc) {
            break;
        }
    }
    let mut hc = vec![1; high.len()];
    loop {
        let need = vec_sub(f, v, &combine(f, high, &hc, n));
        if let Some(l) = table.get(&need) {
            let mut out = l.clone();
            out.extend_from_slice(&hc);
            return Ok(Some(out));
        }
        if !advance(f, &mut hc) {
            return Ok(None);
        }
    }
}

/// A sub-multiset (as sorted positions) of `vectors` summing to `v`.
///
/// Subsets are walked in Gray-code order from the empty set, so `v = 0`
/// always yields the empty subset. Above 24 vectors the walk is split in
/// two halves joined through a table; at most 48 vectors are accepted.
pub fn zero_one_representable(f: &Field, vectors: &[Vec<u32>], v: &[u32]) -> Result<Option<Vec<usize>>> {
    check_vector(f, v)?;
    for x in vectors {
        check_vector(f, x)?;
        if x.len() != v.len() {
            return Err(Error::Mismatch);
        }
    }
    let m = vectors.len();
    if m > 2 * GRAY_LIMIT {
        return Err(Error::LimitExceeded {
            order: 1u128 << m.min(127),
            limit: 1 << GRAY_LIMIT,
        });
    }
    if m <= GRAY_LIMIT {
        let mut hit = None;
        gray_walk(f, vectors, v.len(), |mask, s| {
            if s == v {
                hit = Some(mask);
                false
            } else {
                true
            }
        });
        return Ok(hit.map(|mask| mask_positions(mask, 0)));
    }
    let h = m / 2;
    let (low, high) = vectors.split_at(h);
    let mut table: HashMap<Vec<u32>, u64> = HashMap::new();
    gray_walk(f, low, v.len(), |mask, s| {
        table.entry(s.to_vec()).or_insert(mask);
        true
    });
    let mut hit = None;
    gray_walk(f, high, v.len(), |mask, s| {
        if let Some(&lm) = table.get(&vec_sub(f, v, s)) {
            hit = Some((lm, mask));
            false
        } else {
            true
        }
    });
    Ok(hit.map(|(lm, hm)| {
        let mut p = mask_positions(lm, 0);
        p.extend(mask_positions(hm, h));
        p
    }))
}

fn mask_positions(mask: u64, offset: usize) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + offset).collect()
}

/// Visits every subset once with its running sum; stops when `visit`
/// returns false.
pub(crate) fn gray_walk<F>(f: &Field, vectors: &[Vec<u32>], n: usize, mut visit: F)
where
    F: FnMut(u64, &[u32]) -> bool,
{
    let m = vectors.len();
    let mut sum = vec![0; n];
    let mut mask = 0u64;
    if !visit(mask, &sum) {
        return;
    }
    for i in 1u64..(1u64 << m) {
        let b = i.trailing_zeros() as usize;
        mask ^= 1 << b;
        if mask >> b & 1 == 1 {
            axpy(f, &mut sum, 1, &vectors[b]);
        } else {
            axpy(f, &mut sum, f.neg(1), &vectors[b]);
        }
        if !visit(mask, &sum) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::linalg::index_vec;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn m1(f: &Field, x: u32) -> Matrix {
        Matrix::from_rows(f.clone(), &[vec![x]]).unwrap()
    }

    #[test]
    fn nowhere_zero_predicate() {
        assert!(nowhere_zero(&[1, 1, 1]));
        assert!(!nowhere_zero(&[0, 0]));
        assert!(!nowhere_zero(&[1, 0, 2]));
    }

    #[test]
    fn combination_examples() {
        let f4 = gf(4);
        assert_eq!(
            nowhere_zero_combination(&[m1(&f4, 1), m1(&f4, 1)], &[0]).unwrap(),
            Some(vec![1, 1])
        );
        let f3 = gf(3);
        assert_eq!(
            nowhere_zero_combination(&[m1(&f3, 1), m1(&f3, 2)], &[1]).unwrap(),
            Some(vec![2, 1])
        );
        assert_eq!(nowhere_zero_combination(&[m1(&f3, 1)], &[0]).unwrap(), None);
    }

    #[test]
    fn singular_basis_is_an_error() {
        let f = gf(3);
        let s = Matrix::from_rows(f.clone(), &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(nowhere_zero_combination(&[s], &[0, 0]), Err(Error::Singular));
    }

    #[test]
    fn split_search_matches_plain_order() {
        let f = gf(5);
        let b1 = Matrix::from_rows(f.clone(), &[vec![1, 2], vec![3, 1]]).unwrap();
        let b2 = Matrix::from_rows(f.clone(), &[vec![2, 0], vec![1, 4]]).unwrap();
        let b3 = Matrix::identity(f.clone(), 2);
        let cols: Vec<Vec<u32>> = [&b1, &b2, &b3].iter().flat_map(|b| b.columns()).collect();
        for i in 0..25 {
            let v = index_vec(5, 2, i);
            let plain = plain_search(&f, &cols, &v);
            assert_eq!(split_search(&f, &cols, &v).unwrap(), plain);
        }
    }

    #[test]
    fn large_instance_uses_split_search() {
        let f = gf(9);
        let bases = vec![Matrix::identity(f.clone(), 2); 4];
        // 8^8 candidates: above the plain threshold
        let v = vec![0, 5];
        let c = nowhere_zero_combination(&bases, &v).unwrap().unwrap();
        assert!(nowhere_zero(&c));
        let cols: Vec<Vec<u32>> = bases.iter().flat_map(|b| b.columns()).collect();
        assert_eq!(combine(&f, &cols, &c, 2), v);
    }

    #[test]
    fn zero_one_examples() {
        let f = gf(3);
        assert_eq!(zero_one_representable(&f, &[vec![1], vec![2]], &[0]).unwrap(), Some(vec![]));
        assert_eq!(zero_one_representable(&f, &[vec![1], vec![2]], &[2]).unwrap(), Some(vec![1]));
        assert_eq!(zero_one_representable(&f, &[vec![1]], &[2]).unwrap(), None);
    }

    #[test]
    fn zero_one_split_walk() {
        let f = gf(7);
        let vectors: Vec<Vec<u32>> = (0..30).map(|i| vec![if i == 29 { 3 } else { 0 }]).collect();
        let r = zero_one_representable(&f, &vectors, &[3]).unwrap().unwrap();
        assert!(r.contains(&29) && r.iter().all(|&i| i >= 15));
        assert_eq!(zero_one_representable(&f, &vectors, &[4]).unwrap(), None);
    }

    #[test]
    fn gray_walk_sums_match_masks() {
        let f = gf(5);
        let xs = vec![vec![1, 2], vec![3, 3], vec![4, 0], vec![2, 2]];
        let mut seen = std::collections::HashSet::new();
        gray_walk(&f, &xs, 2, |mask, s| {
            let want = combine(&f, &xs, &(0..4).map(|b| (mask >> b & 1) as u32).collect::<Vec<_>>(), 2);
            assert_eq!(s, &want[..]);
            seen.insert(mask);
            true
        });
        assert_eq!(seen.len(), 16);
    }
}
