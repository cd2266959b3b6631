use std::cmp::Ordering;
use std::fmt;

use super::Matrix;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A subspace of F^n held by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.basis.field();
        let rows: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|r| format!("({})", r.iter().map(|&x| field.render(x)).collect::<Vec<_>>().join(" ")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// Lexicographic order on the canonical basis data, smaller dimension first.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), self.basis.data()).cmp(&(other.ambient, other.dim(), other.basis.data()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn from_rows(field: &Field, ambient: usize, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), ambient);
        let r = m.rref();
        let rows: Vec<Vec<Elem>> = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        let basis = if rows.is_empty() { Matrix::zeros(field, 0, ambient) } else { Matrix::from_rows(field, &rows) };
        Subspace { ambient, basis, pivots: r.pivots }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        Subspace::from_rows(field, ambient, &Matrix::from_rows(field, vectors))
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` with respect to the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let f = self.field();
        let coords: Vec<Elem> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut recon = vec![Elem::ZERO; self.ambient];
        for (i, &c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &b) in self.basis.row(i).iter().enumerate() {
                recon[j] = f.add(recon[j], f.mul(c, b));
            }
        }
        (recon == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Subspace::from_vectors(self.field(), self.ambient, &vecs)
    }

    /// {v : w . v = 0 for all w in self} with the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(f, self.ambient);
        }
        let ann = other.annihilator();
        if ann.is_zero() {
            return self.clone();
        }
        // v = a * U lies in other iff a * U * N^T = 0.
        let m = ann.basis.mul(&self.basis.transpose());
        let coeffs = m.kernel();
        let vecs: Vec<Vec<Elem>> = coeffs
            .basis_vectors()
            .iter()
            .map(|a| self.basis.transpose().apply(a))
            .collect();
        Subspace::from_vectors(f, self.ambient, &vecs)
    }

    /// Image under a square matrix acting on column vectors.
    pub fn image(&self, g: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Elem>> = self.basis_vectors().iter().map(|v| g.apply(v)).collect();
        Subspace::from_vectors(self.field(), self.ambient, &vecs)
    }

    pub fn is_invariant(&self, g: &Matrix) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&g.apply(v)))
    }

    /// Orthogonal complement with respect to the bilinear form with Gram matrix `gram`.
    pub fn perp(&self, gram: &Matrix) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.mul(gram).kernel()
    }

    /// Action of `g` on this invariant subspace, in canonical-basis coordinates
    /// (column convention).
    pub fn restrict(&self, g: &Matrix) -> Result<Matrix> {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        for v in self.basis_vectors() {
            let image = g.apply(&v);
            cols.push(self.coordinates(&image).ok_or_else(|| Error::NotInvariant("subspace not invariant".into()))?);
        }
        if d == 0 {
            return Ok(Matrix::zeros(self.field(), 0, 0));
        }
        Ok(Matrix::from_columns(self.field(), &cols))
    }

    /// Vector in the ambient space with the given coordinates.
    pub fn vector_from_coordinates(&self, coords: &[Elem]) -> Vec<Elem> {
        self.basis.transpose().apply(coords)
    }

    /// Canonical representative of a line: first nonzero coordinate scaled to 1.
    pub fn normalize_vector(field: &Field, v: &[Elem]) -> Result<Vec<Elem>> {
        let lead = v.iter().copied().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = field.inv(lead)?;
        Ok(v.iter().map(|&x| field.mul(x, inv)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersections_and_sums() {
        let f = Field::prime(5).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        let u = Subspace::from_vectors(&f, 3, &[e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let w = Subspace::from_vectors(&f, 3, &[e(&[0, 1, 0]), e(&[0, 0, 1])]);
        let i = u.intersect(&w);
        assert_eq!(i, Subspace::from_vectors(&f, 3, &[e(&[0, 1, 0])]));
        assert!(u.sum(&w).is_full());
        assert_eq!(u.annihilator(), Subspace::from_vectors(&f, 3, &[e(&[0, 0, 1])]));
    }

    #[test]
    fn canonical_equality() {
        let f = Field::prime(7).unwrap();
        let a = Subspace::from_vectors(&f, 2, &[vec![Elem(2), Elem(4)]]);
        let b = Subspace::from_vectors(&f, 2, &[vec![Elem(1), Elem(2)]]);
        assert_eq!(a, b);
        assert_eq!(a.coordinates(&[Elem(3), Elem(6)]), Some(vec![Elem(3)]));
        assert_eq!(a.coordinates(&[Elem(3), Elem(5)]), None);
    }
}
