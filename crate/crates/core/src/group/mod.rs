//! Finite matrix and permutation groups at desk scale.
//!
//! Everything is built on full element enumeration: a group is a generator
//! list plus a lazily computed, immutable element list with a hash index.

pub mod generic;
pub mod indexed;
mod perm;

use std::sync::OnceLock;

pub use generic::{Enumeration, GroupElement};
pub use indexed::{Bitset, IndexedGroup, SubgroupRecord};
pub use perm::{transitivity, Perm, PermGroup};

use crate::error::{Error, Hypothesis, Result};
use crate::field::{Elem, Field};
use crate::form::{validate_decomposition, OrthoDecomposition};
use crate::linalg::{Matrix, Subspace};

/// Default cap on enumerated group orders.
pub const DEFAULT_BOUND: usize = 1_000_000;

impl GroupElement for Matrix {
    fn compose(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn invert(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }

    fn identity_like(&self) -> Self {
        Matrix::identity(self.field(), self.rows())
    }

    fn is_identity(&self) -> bool {
        Matrix::is_identity(self)
    }
}

/// A finite subgroup of GL_n(F) given by generators.
#[derive(Debug)]
pub struct MatrixGroup {
    field: Field,
    dim: usize,
    gens: Vec<Matrix>,
    bound: usize,
    enumeration: OnceLock<Enumeration<Matrix>>,
}

impl Clone for MatrixGroup {
    fn clone(&self) -> Self {
        MatrixGroup {
            field: self.field.clone(),
            dim: self.dim,
            gens: self.gens.clone(),
            bound: self.bound,
            enumeration: self.enumeration.clone(),
        }
    }
}

impl MatrixGroup {
    /// Generators must be invertible `dim x dim` matrices over `field`.
    pub fn new(field: &Field, dim: usize, gens: Vec<Matrix>) -> Result<MatrixGroup> {
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.rows() });
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !g.is_invertible() {
                return Err(Error::InvalidInput("generator is not invertible".into()));
            }
        }
        Ok(MatrixGroup { field: field.clone(), dim, gens, bound: DEFAULT_BOUND, enumeration: OnceLock::new() })
    }

    pub fn trivial(field: &Field, dim: usize) -> MatrixGroup {
        MatrixGroup::new(field, dim, vec![]).unwrap()
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self.enumeration = OnceLock::new();
        self
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(&self.field, self.dim)
    }

    fn sibling(&self, gens: Vec<Matrix>) -> MatrixGroup {
        MatrixGroup { field: self.field.clone(), dim: self.dim, gens, bound: self.bound, enumeration: OnceLock::new() }
    }

    /// Full element list (identity first), computed once.
    pub fn enumerate(&self) -> Result<&Enumeration<Matrix>> {
        if let Some(e) = self.enumeration.get() {
            return Ok(e);
        }
        let e = generic::closure(&self.identity(), &self.gens, self.bound)?;
        let _ = self.enumeration.set(e);
        Ok(self.enumeration.get().unwrap())
    }

    pub fn elements(&self) -> Result<&[Matrix]> {
        Ok(self.enumerate()?.elements())
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.enumerate()?.len())
    }

    pub fn contains(&self, g: &Matrix) -> Result<bool> {
        Ok(self.enumerate()?.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(|g| g.is_identity())
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Subgroup generated by a subset of elements, with a short generating set.
    pub fn subgroup_from_elements(&self, elements: &[Matrix]) -> Result<MatrixGroup> {
        let gens = generic::generators_for(&self.identity(), elements, self.bound)?;
        Ok(self.sibling(gens))
    }

    /// Derived series G = G^(0) > G^(1) > ... until it stabilizes.
    pub fn derived_series(&self) -> Result<Vec<MatrixGroup>> {
        Ok(generic::derived_series_gens(&self.identity(), &self.gens, self.bound)?
            .into_iter()
            .map(|gens| self.sibling(gens))
            .collect())
    }

    pub fn derived_subgroup(&self) -> Result<MatrixGroup> {
        let (gens, _) = generic::derived_subgroup(&self.identity(), &self.gens, self.bound)?;
        Ok(self.sibling(gens))
    }

    pub fn is_solvable(&self) -> Result<bool> {
        let series = self.derived_series()?;
        Ok(series.last().unwrap().order()? == 1)
    }

    pub fn center(&self) -> Result<MatrixGroup> {
        let central: Vec<Matrix> = self
            .elements()?
            .iter()
            .filter(|z| self.gens.iter().all(|g| g.mul(z) == z.mul(g)))
            .cloned()
            .collect();
        self.subgroup_from_elements(&central)
    }

    /// The last nontrivial term of the derived series: abelian, normal
    /// (characteristic), and inside [G, G] when the derived length is at least 2.
    pub fn abelian_normal_term(&self) -> Result<MatrixGroup> {
        if self.order()? == 1 {
            return Err(Error::TrivialGroup);
        }
        let series = self.derived_series()?;
        if series.last().unwrap().order()? != 1 {
            return Err(Error::HypothesisViolated(Hypothesis::NotSolvable));
        }
        Ok(series[series.len() - 2].clone())
    }

    /// Common fixed vectors of all generators.
    pub fn fixed_space(&self) -> Subspace {
        if self.gens.is_empty() {
            return Subspace::full(&self.field, self.dim);
        }
        let id = self.identity();
        let rows: Vec<Vec<Elem>> = self.gens.iter().flat_map(|g| g.sub(&id).row_vectors()).collect();
        Matrix::from_rows(&self.field, &rows).kernel()
    }

    /// {g in G : g(W_i) = W_i}, by filtering the enumerated elements.
    pub fn setwise_stabilizer(&self, d: &OrthoDecomposition, part: usize) -> Result<MatrixGroup> {
        validate_decomposition(d, self)?;
        let w = d.parts().get(part).ok_or_else(|| Error::InvalidInput(format!("no part {part}")))?;
        let stab: Vec<Matrix> = self.elements()?.iter().filter(|g| w.image(g) == *w).cloned().collect();
        self.subgroup_from_elements(&stab)
    }

    /// Permutation representation on the parts of an invariant decomposition.
    pub fn perm_image(&self, d: &OrthoDecomposition) -> Result<PermGroup> {
        validate_decomposition(d, self)
    }

    /// Action on an invariant subspace, in its canonical-basis coordinates.
    pub fn restrict(&self, w: &Subspace) -> Result<MatrixGroup> {
        let gens = self.gens.iter().map(|g| w.restrict(g)).collect::<Result<Vec<_>>>()?;
        Ok(MatrixGroup::new(&self.field, w.dim(), gens)?.with_bound(self.bound))
    }

    /// The group {P^-1 g P}.
    pub fn conjugate(&self, p: &Matrix) -> Result<MatrixGroup> {
        let pinv = p.inverse().ok_or_else(|| Error::InvalidInput("base change is singular".into()))?;
        Ok(self.sibling(self.gens.iter().map(|g| pinv.mul(g).mul(p)).collect()))
    }

    /// Indexed (Cayley table) view for subgroup-lattice work.
    pub fn indexed(&self) -> Result<IndexedGroup> {
        IndexedGroup::from_enumeration(self.enumerate()?)
    }

    /// The subgroup on the given element indices of [`MatrixGroup::indexed`].
    pub fn subgroup_from_indices(&self, idx: &[u16]) -> Result<MatrixGroup> {
        let els = self.elements()?;
        let gens = idx.iter().map(|&i| els[i as usize].clone()).collect();
        Ok(self.sibling(gens))
    }
}

pub fn element_order(g: &Matrix) -> u64 {
    g.order()
}

pub fn det(g: &Matrix) -> Result<Elem> {
    g.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::QuadraticSpace;

    fn o3(q: u32) -> MatrixGroup {
        QuadraticSpace::standard(&Field::prime(q).unwrap(), 3).unwrap().isometry_group().unwrap()
    }

    /// Brute-force oracle: every matrix over GF(p)^{3x3} with g^T g = I.
    fn brute_force_o3(p: u32) -> Vec<Matrix> {
        let f = Field::prime(p).unwrap();
        let total = (p as u64).pow(9);
        let id = Matrix::identity(&f, 3);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let data: Vec<Elem> = (0..9)
                .map(|_| {
                    let d = (c % p as u64) as u32;
                    c /= p as u64;
                    Elem(d)
                })
                .collect();
            let g = Matrix::from_data(&f, 3, 3, data).unwrap();
            if g.transpose().mul(&g) == id {
                out.push(g);
            }
        }
        out
    }

    #[test]
    fn small_enumerations() {
        let f5 = Field::prime(5).unwrap();
        let minus = Matrix::scalar(&f5, 3, f5.from_int(-1));
        assert_eq!(MatrixGroup::new(&f5, 3, vec![minus]).unwrap().order().unwrap(), 2);
        let c = Matrix::permutation(&f5, &[1, 2, 0]);
        assert_eq!(MatrixGroup::new(&f5, 3, vec![c.clone()]).unwrap().order().unwrap(), 3);
        assert_eq!(element_order(&c), 3);
        let big = MatrixGroup::new(&f5, 3, vec![c]).unwrap().with_bound(2);
        assert_eq!(big.order().unwrap_err(), Error::BoundExceeded(2));
    }

    #[test]
    fn o3_3_matches_brute_force() {
        let g = o3(3);
        let brute = brute_force_o3(3);
        assert_eq!(brute.len(), 48);
        assert_eq!(g.order().unwrap(), 48);
        assert!(brute.iter().all(|x| g.contains(x).unwrap()));
        assert!(g.is_solvable().unwrap());
    }

    #[test]
    fn o3_5_and_7_orders() {
        let g5 = o3(5);
        assert_eq!(g5.order().unwrap(), brute_force_o3(5).len());
        assert_eq!(g5.order().unwrap(), 240);
        assert_eq!(o3(7).order().unwrap(), 672);
    }

    #[test]
    fn derived_series_s3() {
        let f = Field::prime(5).unwrap();
        let s3 = MatrixGroup::new(&f, 3, vec![Matrix::permutation(&f, &[1, 2, 0]), Matrix::permutation(&f, &[1, 0, 2])]).unwrap();
        let orders: Vec<usize> = s3.derived_series().unwrap().iter().map(|g| g.order().unwrap()).collect();
        assert_eq!(orders, vec![6, 3, 1]);
        assert_eq!(s3.abelian_normal_term().unwrap().order().unwrap(), 3);
        let abelian = MatrixGroup::new(&f, 3, vec![Matrix::permutation(&f, &[1, 2, 0])]).unwrap();
        let orders: Vec<usize> = abelian.derived_series().unwrap().iter().map(|g| g.order().unwrap()).collect();
        assert_eq!(orders, vec![3, 1]);
        assert_eq!(abelian.abelian_normal_term().unwrap().order().unwrap(), 3);
        assert_eq!(MatrixGroup::trivial(&f, 3).abelian_normal_term().unwrap_err(), Error::TrivialGroup);
    }

    #[test]
    fn so3_5_is_not_solvable() {
        let g = o3(5);
        let so: Vec<Matrix> = g.elements().unwrap().iter().filter(|x| x.det().unwrap() == Elem::ONE).cloned().collect();
        assert_eq!(so.len(), 120);
        let so3 = g.subgroup_from_elements(&so).unwrap();
        assert!(!so3.is_solvable().unwrap());
        let series = so3.derived_series().unwrap();
        assert!(series.last().unwrap().order().unwrap() > 1);
    }

    #[test]
    fn determinant_of_minus_identity() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(det(&Matrix::scalar(&f7, 3, f7.from_int(-1))).unwrap(), Elem(6));
    }

    #[test]
    fn o3_3_last_derived_term_has_det_one() {
        let g = o3(3);
        let l = g.abelian_normal_term().unwrap();
        assert!(l.is_abelian());
        for x in l.elements().unwrap() {
            assert_eq!(x.det().unwrap(), Elem::ONE);
            for h in g.gens() {
                assert!(l.contains(&x.conjugate_by(h)).unwrap());
            }
        }
        // Every derived-series term is normal in G.
        for term in g.derived_series().unwrap() {
            for x in term.gens() {
                for h in g.gens() {
                    assert!(term.contains(&x.conjugate_by(h)).unwrap());
                }
            }
        }
    }

    #[test]
    fn fixed_spaces() {
        let f3 = Field::prime(3).unwrap();
        assert!(MatrixGroup::trivial(&f3, 3).fixed_space().is_full());
        let minus = Matrix::scalar(&f3, 3, f3.from_int(-1));
        assert!(MatrixGroup::new(&f3, 3, vec![minus]).unwrap().fixed_space().is_zero());
        let u = Matrix::from_ints(&f3, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let p = MatrixGroup::new(&f3, 3, vec![u]).unwrap();
        assert_eq!(p.order().unwrap(), 3);
        assert!(!p.fixed_space().is_zero());
    }

    #[test]
    fn center_of_o3() {
        let g = o3(5);
        assert_eq!(g.center().unwrap().order().unwrap(), 2);
    }
}
