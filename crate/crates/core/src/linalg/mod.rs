//! Exact dense linear algebra over [`Field`].
//!
//! Vectors are plain `Vec<Elem>`; matrices act on column vectors. Subspaces
//! are stored by their reduced row echelon basis, so structural equality is
//! subspace equality.

mod matrix;
mod poly_ops;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use poly_ops::{charpoly, eval_at as eval_poly, minpoly, primary_components, PrimaryComponent};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::field::Field;

/// Extends a subspace over F to the field `ext` containing F.
pub fn extend_subspace(s: &Subspace, ext: &Field) -> Result<Subspace> {
    Ok(Subspace::from_rows(ext, s.ambient_dim(), &s.basis().extend_scalars(ext)?))
}

/// Descends a Frobenius-stable subspace over K to the subfield F.
///
/// The reduced echelon basis of a subspace is unique, and the entrywise
/// Frobenius map x -> x^|F| sends a reduced echelon basis to another with
/// the same pivots. So stability forces every basis entry to be fixed,
/// which puts the basis over F.
pub fn rational_form(s: &Subspace, base: &Field) -> Result<Subspace> {
    let ext = s.field();
    if !ext.has_subfield(base) {
        return Err(Error::NoEmbedding);
    }
    let qf = base.order() as u64;
    let frob = s.basis().map(|x| ext.pow(x, qf));
    if Subspace::from_rows(ext, s.ambient_dim(), &frob) != *s {
        return Err(Error::NotGaloisStable);
    }
    let basis = s.basis();
    let mut rows = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let row = basis
            .row(i)
            .iter()
            .map(|&x| ext.restrict(base, x)?.ok_or(Error::NotGaloisStable))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Subspace::from_vectors(base, s.ambient_dim(), &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Elem;

    #[test]
    fn rational_form_examples() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension_of(&f3, 2).unwrap();
        let full = Subspace::full(&f9, 2);
        assert_eq!(rational_form(&full, &f3).unwrap(), Subspace::full(&f3, 2));

        let r = f9.generator();
        let line = Subspace::from_vectors(&f9, 2, &[vec![Elem::ONE, r]]);
        assert_eq!(rational_form(&line, &f3).unwrap_err(), Error::NotGaloisStable);

        // Brute-force check of the same fact: Frobenius of (1, r) is (1, r^3) = (1, -r).
        assert_eq!(f9.pow(r, 3), f9.neg(r));
        assert!(!line.contains(&[Elem::ONE, f9.neg(r)]));

        let rational = Subspace::from_vectors(&f9, 3, &[vec![Elem::ONE, Elem(2), Elem::ZERO]]);
        let z = rational_form(&rational, &f3).unwrap();
        assert_eq!(extend_subspace(&z, &f9).unwrap(), rational);
    }
}
