use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Field;

pub fn dot(f: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn vec_add(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &Field, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// `acc += c·a`
pub fn axpy(f: &Field, acc: &mut [u32], c: u32, a: &[u32]) {
    for (x, &y) in acc.iter_mut().zip(a) {
        *x = f.add(*x, f.mul(c, y));
    }
}

/// Mixed-radix index of a vector, coordinate 0 least significant.
pub fn vec_index(q: u32, v: &[u32]) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

pub fn index_vec(q: u32, n: usize, mut idx: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (idx % q as usize) as u32;
            idx /= q as usize;
            d
        })
        .collect()
}

/// `qⁿ`, checked against an element limit.
pub fn space_size(q: u32, n: usize, limit: usize) -> Result<usize> {
    let mut s: u128 = 1;
    for _ in 0..n {
        s *= q as u128;
        if s > limit as u128 {
            return Err(Error::LimitExceeded {
                order: s,
                limit,
            });
        }
    }
    Ok(s as usize)
}

pub fn check_vector(f: &Field, v: &[u32]) -> Result<()> {
    match v.iter().find(|&&x| x >= f.q()) {
        Some(x) => Err(Error::InvalidArgument(format!("entry {x} not in GF({})", f.q()))),
        None => Ok(()),
    }
}

/// Dense row-major matrix over GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        check_vector(&field, &data)?;
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, n: usize, cols: &[Vec<u32>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidArgument("column length mismatch".into()));
        }
        let mut data = vec![0; n * cols.len()];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                data[i * cols.len() + j] = c[i];
            }
        }
        Self::new(field, n, cols.len(), data)
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        assert!(x < self.field.q());
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_columns(self.field.clone(), self.cols, &self.row_vecs()).expect("shape")
    }

    /// `M·x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(&self.field, self.row(i), x)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Mismatch);
        }
        let cols = other.columns();
        let data = (0..self.rows)
            .flat_map(|i| cols.iter().map(move |c| dot(&self.field, self.row(i), c)))
            .collect();
        Matrix::new(self.field.clone(), self.rows, other.cols, data)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let x = f.mul(inv, m.get(r, j));
                m.data[r * m.cols + j] = x;
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    let row = &mut m.data[i * m.cols..(i + 1) * m.cols];
                    axpy(f, row, f.neg(factor), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of `{x : Mx = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0; self.cols];
                x[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(r.get(i, fc));
                }
                x
            })
            .collect()
    }

    /// Solution set of `Mx = v` as a particular solution and a nullspace
    /// basis, or `None` when inconsistent.
    pub fn solve(&self, v: &[u32]) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
        assert_eq!(v.len(), self.rows);
        let mut aug = Matrix::zero(self.field.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = v[i];
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Some((x, self.nullspace()))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(gf(3), 2).rank(), 2);
        assert_eq!(Matrix::zero(gf(3), 2, 3).rank(), 0);
        let m = Matrix::from_rows(gf(3), &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(Matrix::from_rows(gf(3), &[vec![3]]).is_err());
        assert!(Matrix::from_rows(gf(3), &[vec![1, 2], vec![1]]).is_err());
    }

    #[test]
    fn solve_and_nullspace_agree_with_enumeration() {
        let f = gf(4);
        let m = Matrix::from_rows(f.clone(), &[vec![1, 2, 3], vec![2, 2, 0]]).unwrap();
        for vi in 0..16 {
            let v = index_vec(4, 2, vi);
            let sols: Vec<Vec<u32>> = (0..64)
                .map(|i| index_vec(4, 3, i))
                .filter(|x| m.mul_vec(x) == v)
                .collect();
            match m.solve(&v) {
                None => assert!(sols.is_empty()),
                Some((x0, basis)) => {
                    assert_eq!(m.mul_vec(&x0), v);
                    assert_eq!(sols.len(), 4usize.pow(basis.len() as u32));
                    for b in &basis {
                        assert!(m.mul_vec(b).iter().all(|&c| c == 0));
                    }
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        for i in 0..125 {
            assert_eq!(vec_index(5, &index_vec(5, 3, i)), i);
        }
        assert_eq!(vec_index(3, &[1, 2]), 7);
    }

    #[test]
    fn product_of_inverse_pair() {
        let f = gf(5);
        let a = Matrix::from_rows(f.clone(), &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(a.is_nonsingular());
        let at = a.transpose();
        assert_eq!(at.get(0, 1), 3);
        assert_eq!(a.mul(&Matrix::identity(f, 2)).unwrap(), a);
    }
}
