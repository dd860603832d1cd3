use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{Field, Scalar};
use super::subspace::{RowReducer, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entries length must equal rows * cols");
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from row vectors. `cols` is needed when `rows` is empty.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| if r == c { self[(r, c)].is_one() } else { self[(r, c)].is_zero() }))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + c];
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// `self += factor * rhs`.
    pub fn add_scaled(&mut self, factor: &Scalar, rhs: &Matrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        if factor.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                a.add_mul(factor, b);
            }
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), rhs);
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&self.field.from_i64(-1), rhs);
        out
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        let data = self.data.iter().map(|x| x * factor).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(r)) {
                if !b.is_zero() {
                    o.add_mul(a, b);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let rows = (0..self.rows).map(|r| self.row(r).iter().chain(rhs.row(r)).cloned().collect()).collect();
        Matrix::from_rows(self.field, self.cols + rhs.cols, rows)
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// Gauss-Jordan elimination to the unique reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m[(pivot_row, col)].inv().expect("nonzero pivot");
            let cols = m.cols;
            let support: Vec<usize> = (col..cols).filter(|&c| !m[(pivot_row, c)].is_zero()).collect();
            for &c in &support {
                m.data[pivot_row * cols + c] *= &inv;
            }
            for r in 0..m.rows {
                if r == pivot_row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for &c in &support {
                    let (target, source) = if r < pivot_row {
                        let (lo, hi) = m.data.split_at_mut(pivot_row * cols);
                        (&mut lo[r * cols + c], &hi[c])
                    } else {
                        let (lo, hi) = m.data.split_at_mut(r * cols);
                        (&mut hi[c], &lo[pivot_row * cols + c])
                    };
                    target.sub_mul(&factor, source);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut reducer = RowReducer::new(self.field, self.cols);
        for r in 0..self.rows {
            reducer.insert(self.row(r).to_vec());
        }
        reducer.rank()
    }

    /// Basis of `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let mut reducer = RowReducer::new(self.field, self.cols);
        for r in 0..self.rows {
            reducer.insert(self.row(r).to_vec());
        }
        reducer.kernel()
    }

    /// Some `x` with `self * x = b`, free variables zero; `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_flat(self.field, self.rows, 1, b.to_vec());
        let aug = self.hstack(&rhs).rref();
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in aug.pivots.iter().enumerate() {
            if p == self.cols {
                return Ok(None);
            }
            x[p] = aug.matrix[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Integer entries as text rows, for JSON output.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(Scalar::to_text).collect()).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(Scalar::to_text).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let m = Matrix::from_i64(Q, &[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);

        let z = Matrix::zeros(Q, 2, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 4).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel().dim(), 3);
        let m = Matrix::from_i64(Q, &[&[1, 0, 2], &[0, 1, 3]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        let v = k.basis().row(0).to_vec();
        assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_examples() {
        let q = |x: i64| Q.from_i64(x);
        let id = Matrix::identity(Q, 2);
        assert_eq!(id.solve(&[q(3), q(5)]).unwrap(), Some(vec![q(3), q(5)]));
        let m = Matrix::from_i64(Q, &[&[1, 1]]);
        assert_eq!(m.solve(&[q(2)]).unwrap(), Some(vec![q(2), q(0)]));
        let z = Matrix::from_i64(Q, &[&[0]]);
        assert_eq!(z.solve(&[q(1)]).unwrap(), None);
        assert!(matches!(id.solve(&[q(1)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn solve_over_prime_field() {
        let f = Field::Prime(5);
        let m = Matrix::from_i64(f, &[&[2, 1], &[1, 4]]);
        let b = vec![f.from_i64(1), f.from_i64(0)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }
}
