use super::{Matrix, Subspace};
use crate::error::{Error, Result};
use crate::field::{poly_factor, Elem, Poly};

/// det(xI - m) by fraction-free (Bareiss) elimination over F[x].
pub fn charpoly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NonSquare);
    }
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::one(f));
    }
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = f.neg(m.get(i, j));
                    if i == j {
                        Poly::new(f, vec![c, Elem::ONE])
                    } else {
                        Poly::constant(f, c)
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = Poly::one(f);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero(f));
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Evaluates `p` at the square matrix `m` (Horner).
pub fn eval_at(p: &Poly, m: &Matrix) -> Matrix {
    let f = m.field();
    let n = m.rows();
    let mut acc = Matrix::zeros(f, n, n);
    for &c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&Matrix::scalar(f, n, c));
    }
    acc
}

/// Least common multiple of the Krylov annihilators of the standard basis vectors.
pub fn minpoly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NonSquare);
    }
    let f = m.field();
    let n = m.rows();
    let mut result = Poly::one(f);
    for i in 0..n {
        let mut v = vec![Elem::ZERO; n];
        v[i] = Elem::ONE;
        let mut krylov = vec![v];
        loop {
            let next = m.apply(krylov.last().unwrap());
            krylov.push(next);
            let cols = Matrix::from_columns(f, &krylov);
            let ker = cols.kernel();
            if ker.dim() > 0 {
                // The first len-1 columns are independent, so the kernel is a line
                // whose last coordinate is nonzero.
                let c = &ker.basis_vectors()[0];
                let local = Poly::new(f, c.clone()).monic();
                result = result.lcm(&local);
                break;
            }
        }
    }
    Ok(result)
}

/// One primary component of a linear map.
#[derive(Clone, Debug)]
pub struct PrimaryComponent {
    pub factor: Poly,
    pub multiplicity: usize,
    pub subspace: Subspace,
}

/// ker q_i(m)^{e_i} for each irreducible factor q_i of the characteristic polynomial.
pub fn primary_components(m: &Matrix) -> Result<Vec<PrimaryComponent>> {
    let cp = charpoly(m)?;
    Ok(poly_factor(&cp)
        .into_iter()
        .map(|(q, e)| {
            let subspace = eval_at(&q.pow(e as u64), m).kernel();
            PrimaryComponent { factor: q, multiplicity: e, subspace }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn companion_charpoly() {
        let f7 = Field::prime(7).unwrap();
        // companion of x^3 - 1
        let c = Matrix::from_ints(&f7, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(charpoly(&c).unwrap(), Poly::from_ints(&f7, &[-1, 0, 0, 1]));
    }

    #[test]
    fn minus_identity() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::scalar(&f5, 3, f5.from_int(-1));
        assert_eq!(charpoly(&m).unwrap(), Poly::from_ints(&f5, &[1, 1]).pow(3));
        assert_eq!(minpoly(&m).unwrap(), Poly::from_ints(&f5, &[1, 1]));
    }

    #[test]
    fn rotation_charpoly() {
        let f3 = Field::prime(3).unwrap();
        let r = Matrix::from_ints(&f3, &[&[0, 1], &[-1, 0]]);
        assert_eq!(charpoly(&r).unwrap(), Poly::from_ints(&f3, &[1, 0, 1]));
        assert_eq!(charpoly(&Matrix::from_ints(&f3, &[&[1, 2], &[3, 4]]).transpose()).unwrap().degree(), Some(2));
        assert_eq!(charpoly(&Matrix::zeros(&f3, 2, 3)).unwrap_err(), Error::NonSquare);
    }

    #[test]
    fn charpoly_needs_pivoting() {
        let f5 = Field::prime(5).unwrap();
        // Zero top-left entry of xI - m only at x = 0; exercise a row swap path with a
        // nilpotent block.
        let m = Matrix::from_ints(&f5, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(charpoly(&m).unwrap(), Poly::x(&f5).pow(3));
        assert_eq!(minpoly(&m).unwrap(), Poly::x(&f5).pow(3));
    }

    #[test]
    fn three_cycle_components() {
        let f7 = Field::prime(7).unwrap();
        let c7 = Matrix::permutation(&f7, &[1, 2, 0]);
        let comps = primary_components(&c7).unwrap();
        assert_eq!(comps.len(), 3);
        let roots: Vec<u32> = comps.iter().map(|c| f7.neg(c.factor.coeff(0)).0).collect();
        let mut sorted = roots.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 4]);
        assert!(comps.iter().all(|c| c.subspace.dim() == 1));

        let f5 = Field::prime(5).unwrap();
        let c5 = Matrix::permutation(&f5, &[1, 2, 0]);
        let comps = primary_components(&c5).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].factor, Poly::from_ints(&f5, &[-1, 1]));
        assert_eq!(comps[0].subspace.dim(), 1);
        assert_eq!(comps[1].factor, Poly::from_ints(&f5, &[1, 1, 1]));
        assert_eq!(comps[1].subspace.dim(), 2);
        // x^2 + x + 1 has no root mod 5.
        assert!((0..5).all(|x| (x * x + x + 1) % 5 != 0));

        let id = Matrix::identity(&f5, 4);
        let comps = primary_components(&id).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].subspace.is_full());
    }

    #[test]
    fn charpoly_commutes_with_extension() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension_of(&f3, 2).unwrap();
        let m = Matrix::from_ints(&f3, &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 2]]);
        let ext = m.extend_scalars(&f9).unwrap();
        assert_eq!(charpoly(&ext).unwrap(), charpoly(&m).unwrap().extend(&f9).unwrap());
    }

    proptest::proptest! {
        #[test]
        fn cayley_hamilton_and_components(entries in proptest::collection::vec(0u32..3, 16)) {
            let f = Field::prime(3).unwrap();
            let m = Matrix::from_data(&f, 4, 4, entries.into_iter().map(Elem).collect()).unwrap();
            let cp = charpoly(&m).unwrap();
            proptest::prop_assert!(eval_at(&cp, &m).is_zero());
            let mp = minpoly(&m).unwrap();
            proptest::prop_assert!(eval_at(&mp, &m).is_zero());
            proptest::prop_assert!(cp.rem(&mp).unwrap().is_zero());
            let comps = primary_components(&m).unwrap();
            let total: usize = comps.iter().map(|c| c.subspace.dim()).sum();
            proptest::prop_assert_eq!(total, 4);
            let mut acc = Subspace::zero(&f, 4);
            for c in &comps {
                proptest::prop_assert!(c.subspace.is_invariant(&m));
                proptest::prop_assert!(acc.intersect(&c.subspace).is_zero());
                acc = acc.sum(&c.subspace);
            }
            proptest::prop_assert!(acc.is_full());
        }
    }
}
