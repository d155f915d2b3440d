//! AJT matrices: a nowhere-zero `x` with `Mx` nowhere zero. Three
//! characterizations are offered and cross-checked by the test suites.

use serde::Serialize;

use super::algebra::ElementaryGroup;
use super::cube::{cube_set, CombinatorialCube};
use crate::error::{Error, Result};
use crate::gf::linalg::{dot, Matrix};
use crate::gf::{all_hyperplanes, nowhere_zero, Hyperplane};

fn require_square(m: &Matrix) -> Result<()> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::InvalidArgument("AJT tests need a nonempty square matrix".into()));
    }
    Ok(())
}

fn parity_group(m: &Matrix, limit: usize) -> Result<ElementaryGroup> {
    require_square(m)?;
    if !m.field().is_prime_field() {
        return Err(Error::Unsupported("parity tests need a prime field".into()));
    }
    let g = ElementaryGroup::new(m.field().q(), m.rows(), limit)?;
    g.require_odd()?;
    Ok(g)
}

/// First nowhere-zero `x` (coordinate 0 fastest over `1..q`) with `Mx`
/// nowhere zero.
pub fn ajt_brute(m: &Matrix) -> Result<Option<Vec<u32>>> {
    require_square(m)?;
    let q = m.field().q();
    let mut x = vec![1; m.cols()];
    loop {
        if nowhere_zero(&m.mul_vec(&x)) {
            return Ok(Some(x));
        }
        let mut i = 0;
        loop {
            if i == x.len() {
                return Ok(None);
            }
            if x[i] + 1 < q {
                x[i] += 1;
                break;
            }
            x[i] = 1;
            i += 1;
        }
    }
}

/// First shift `v` (in index order) with `|C(X) ∩ (C(B) + v)|` odd, where
/// `X` are the rows of `M` and `B` the standard basis.
pub fn ajt_parity(m: &Matrix, limit: usize) -> Result<Option<Vec<u32>>> {
    let g = parity_group(m, limit)?;
    let cx = cube_set(&g, &m.row_vecs())?;
    let basis = Matrix::identity(m.field().clone(), m.rows()).row_vecs();
    let cb = cube_set(&g, &basis)?;
    for v in 0..g.size() {
        let shifted = cb.bits().iter().map(|b| g.add(b, v));
        if shifted.filter(|&i| cx.bits().contains(i)).count() % 2 == 1 {
            return Ok(Some(g.vector(v)));
        }
    }
    Ok(None)
}

/// First combinatorial cube (in [`CombinatorialCube::all`] order) meeting
/// `C(X)` in an odd number of points.
///
/// A cube `∏{aᵢ, bᵢ}` is `C(B') + a` for the basis `B'` rescaled by
/// `bᵢ − aᵢ`, so scanning all cubes covers every rescaling of every shift.
pub fn ajt_cube(m: &Matrix, limit: usize) -> Result<Option<CombinatorialCube>> {
    let g = parity_group(m, limit)?;
    let cx = cube_set(&g, &m.row_vecs())?;
    Ok(CombinatorialCube::all(g.p(), g.n())
        .into_iter()
        .find(|c| c.points(&g).intersection_count(cx.bits()) % 2 == 1))
}

/// The rows' orthogonal hyperplanes contain every nowhere-zero vector.
pub fn rows_cover_nowhere_zero(m: &Matrix, limit: usize) -> Result<bool> {
    require_square(m)?;
    let f = m.field();
    let size = crate::gf::linalg::space_size(f.q(), m.cols(), limit)?;
    let rows = m.row_vecs();
    Ok((0..size)
        .map(|i| crate::gf::linalg::index_vec(f.q(), m.cols(), i))
        .filter(|v| nowhere_zero(v))
        .all(|v| rows.iter().any(|r| dot(f, r, &v) == 0)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoFamilyCover {
    pub p: u32,
    pub n: usize,
    /// Normals of the first family: the coordinate hyperplanes.
    pub family1: Vec<Vec<u32>>,
    pub family2: Vec<Vec<u32>>,
    /// Rows are the second family's normals; nonsingular and not AJT.
    pub matrix_rows: Vec<Vec<u32>>,
    pub brute_force_witness: Option<Vec<u32>>,
}

/// Two independent hyperplane families covering `GF(p)^n`.
///
/// Any independent family is the coordinate family in a suitable basis, so
/// the first family is fixed to `eᵢ^⊥`. The second ranges over `n`-subsets
/// of canonical normals in lexicographic index order; it must be
/// independent and cover all nowhere-zero vectors.
pub fn two_family_cover_search(p: u32, n: usize, limit: usize) -> Result<Option<TwoFamilyCover>> {
    let g = ElementaryGroup::new(p, n, limit)?;
    let f = g.field().clone();
    let normals: Vec<Vec<u32>> = all_hyperplanes(&f, n, limit)?
        .iter()
        .map(|h: &Hyperplane| h.normal().to_vec())
        .collect();
    let nowhere: Vec<Vec<u32>> = (0..g.size()).map(|i| g.vector(i)).filter(|v| nowhere_zero(v)).collect();
    let mut pick: Vec<usize> = (0..n).collect();
    if normals.len() < n {
        return Ok(None);
    }
    loop {
        let rows: Vec<Vec<u32>> = pick.iter().map(|&i| normals[i].clone()).collect();
        let covers = nowhere.iter().all(|v| rows.iter().any(|r| dot(&f, r, v) == 0));
        if covers {
            let m = Matrix::from_rows(f.clone(), &rows)?;
            if m.is_nonsingular() {
                let witness = ajt_brute(&m)?;
                return Ok(Some(TwoFamilyCover {
                    p,
                    n,
                    family1: Matrix::identity(f.clone(), n).row_vecs(),
                    family2: rows.clone(),
                    matrix_rows: rows,
                    brute_force_witness: witness,
                }));
            }
        }
        // next n-combination in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if pick[i] < normals.len() - n + i {
                pick[i] += 1;
                for j in i + 1..n {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    const L: usize = 4096;

    fn mat(q: u32, rows: &[Vec<u32>]) -> Matrix {
        Matrix::from_rows(Field::new(q).unwrap(), rows).unwrap()
    }

    #[test]
    fn brute_examples() {
        assert_eq!(ajt_brute(&Matrix::identity(Field::new(3).unwrap(), 2)).unwrap(), Some(vec![1, 1]));
        assert_eq!(ajt_brute(&mat(3, &[vec![1, 1], vec![1, 2]])).unwrap(), None);
        let w = ajt_brute(&mat(5, &[vec![1, 1], vec![1, 4]])).unwrap().unwrap();
        assert!(nowhere_zero(&mat(5, &[vec![1, 1], vec![1, 4]]).mul_vec(&w)));
    }

    #[test]
    fn parity_examples() {
        let id = Matrix::identity(Field::new(3).unwrap(), 1);
        assert_eq!(ajt_parity(&id, L).unwrap(), Some(vec![1]));
        let bad = mat(3, &[vec![1, 1], vec![1, 2]]);
        assert_eq!(ajt_parity(&bad, L).unwrap(), None);
        assert!(ajt_parity(&mat(2, &[vec![1]]), L).is_err());
        assert!(ajt_parity(&mat(4, &[vec![1]]), L).is_err());
    }

    #[test]
    fn cube_examples() {
        let id = Matrix::identity(Field::new(3).unwrap(), 1);
        let c = ajt_cube(&id, L).unwrap().unwrap();
        assert_eq!(c.sets(), &[[0, 2]]);
        let bad = mat(3, &[vec![1, 1], vec![1, 2]]);
        assert_eq!(ajt_cube(&bad, L).unwrap(), None);
        assert!(rows_cover_nowhere_zero(&bad, L).unwrap());
    }

    #[test]
    fn two_families_in_the_plane() {
        let r = two_family_cover_search(3, 2, L).unwrap().unwrap();
        assert_eq!(r.family2, vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(r.brute_force_witness, None);
        for p in [2, 3, 5] {
            assert!(two_family_cover_search(p, 1, L).unwrap().is_none());
        }
    }

    #[test]
    fn non_ajt_iff_rows_cover_nowhere_zero_vectors() {
        let f = Field::new(3).unwrap();
        for code in 0..81u32 {
            let d: Vec<u32> = (0..4).map(|i| code / 3u32.pow(i) % 3).collect();
            let m = Matrix::from_rows(f.clone(), &[d[..2].to_vec(), d[2..].to_vec()]).unwrap();
            let brute = ajt_brute(&m).unwrap().is_some();
            assert_eq!(!brute, rows_cover_nowhere_zero(&m, L).unwrap());
            assert_eq!(brute, ajt_parity(&m, L).unwrap().is_some(), "{m:?}");
            assert_eq!(brute, ajt_cube(&m, L).unwrap().is_some(), "{m:?}");
        }
    }
}
