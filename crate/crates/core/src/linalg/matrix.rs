use std::fmt;
use std::hash::{Hash, Hasher};

use super::Subspace;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

// Equality and hashing ignore the field handle: matrices compared against
// each other always come from one group over one field.
impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.render(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, Elem::ONE)
    }

    pub fn scalar(field: &Field, n: usize, c: Elem) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_data(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Rows must all have the same length.
    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() }
    }

    /// Convenience constructor from integer residues.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_rows(field, &rows)
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(field: &Field, cols: &[Vec<Elem>]) -> Matrix {
        Matrix::from_rows(field, cols).transpose()
    }

    /// Permutation matrix sending e_i to e_{perm[i]}.
    pub fn permutation(field: &Field, perm: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(field, perm.len(), perm.len());
        for (i, &j) in perm.iter().enumerate() {
            m.set(j, i, Elem::ONE);
        }
        m
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

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { Elem::ONE } else { Elem::ZERO }))
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field.clone();
        self.map(|x| f.neg(x))
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = self.field.clone();
        self.map(|x| f.mul(x, c))
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right kernel {v : self * v = 0}.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, rank, pivots } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut vecs = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Elem::ZERO; self.cols];
            v[fc] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(matrix.get(r, fc));
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, self.cols, &vecs)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(Elem::ZERO) };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entries mapped through the embedding of this matrix's field into `ext`.
    pub fn extend_scalars(&self, ext: &Field) -> Result<Matrix> {
        let data = self.data.iter().map(|&x| ext.embed(&self.field, x)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field: ext.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Exactly one nonzero entry per row and per column.
    pub fn is_monomial(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.row(i).iter().filter(|x| !x.is_zero()).count() == 1)
            && (0..self.cols).all(|j| (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).count() == 1)
    }

    /// For a monomial matrix with entries ±1: the column permutation
    /// (column j has its entry in row perm[j]) and the signs of those entries.
    pub fn signed_permutation(&self) -> Option<(Vec<usize>, Vec<i8>)> {
        if !self.is_monomial() {
            return None;
        }
        let minus_one = self.field.neg(Elem::ONE);
        let mut perm = Vec::with_capacity(self.cols);
        let mut signs = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let i = (0..self.rows).find(|&i| !self.get(i, j).is_zero())?;
            let v = self.get(i, j);
            let s = if v == Elem::ONE {
                1
            } else if v == minus_one {
                -1
            } else {
                return None;
            };
            perm.push(i);
            signs.push(s);
        }
        Some((perm, signs))
    }

    /// Commutator g^-1 h^-1 g h.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        let gi = self.inverse().expect("invertible");
        let hi = other.inverse().expect("invertible");
        gi.mul(&hi).mul(self).mul(other)
    }
}
