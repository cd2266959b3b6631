//! Signed-permutation groups O_1(F) ≀ K, transitive solvable subgroups of
//! S_n, maximality by single-element extensions, and groups marking the
//! boundary of the monomialization theorem.

use std::collections::HashSet;

use crate::error::{Error, Hypothesis, Result};
use crate::field::{Elem, Field};
use crate::form::{invariant_line_decompositions, invariant_symmetric_forms, QuadraticSpace, DEFAULT_LINE_ENUMERATION_LIMIT};
use crate::group::{IndexedGroup, MatrixGroup, Perm, PermGroup, SubgroupRecord};
use crate::linalg::Matrix;
use crate::modrep::is_irreducible;
use crate::monomial::{monomialize, MonomialCertificate, SignedPerm};

/// O_1(F) ≀ K acting on a space with Gram matrix c I_n.
#[derive(Clone, Debug)]
pub struct WreathSpec {
    pub space: QuadraticSpace,
    pub k: PermGroup,
    pub group: MatrixGroup,
}

/// Sign changes on each coordinate followed by the permutation matrices of K's generators.
pub fn signed_permutation_group(field: &Field, k: &PermGroup) -> Result<MatrixGroup> {
    let n = k.degree();
    let mut gens: Vec<Matrix> = (0..n)
        .map(|i| {
            let mut d = vec![Elem::ONE; n];
            d[i] = field.neg(Elem::ONE);
            Matrix::diagonal(field, &d)
        })
        .collect();
    gens.extend(k.gens().iter().map(|p| Matrix::permutation(field, p.images())));
    MatrixGroup::new(field, n, gens)
}

pub fn wreath_construct(k: &PermGroup, space: &QuadraticSpace) -> Result<WreathSpec> {
    let n = space.dim();
    let f = space.field();
    let c = space.gram().get(0, 0);
    if *space.gram() != Matrix::scalar(f, n, c) {
        return Err(Error::NonScalarForm);
    }
    if k.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, got: k.degree() });
    }
    let group = signed_permutation_group(f, k)?;
    let expected = (1usize << n) * k.order()?;
    if group.order()? != expected {
        return Err(Error::InvariantViolation(format!("wreath product has order {} instead of {expected}", group.order()?)));
    }
    if !group.gens().iter().all(|g| space.is_isometry(g).unwrap_or(false)) {
        return Err(Error::InvariantViolation("signed permutation is not an isometry of a scalar form".into()));
    }
    Ok(WreathSpec { space: space.clone(), k: k.clone(), group })
}

/// A conjugacy class of transitive solvable subgroups of S_n.
#[derive(Clone, Debug)]
pub struct TransitiveClass {
    pub group: PermGroup,
    pub order: usize,
    /// Not conjugate into any larger class of the list.
    pub maximal: bool,
}

/// Conjugacy classes of transitive solvable subgroups of S_n, sorted by
/// order, from the cyclic-extension enumeration of all solvable subgroup
/// classes of S_n. `bound` caps n!.
pub fn transitive_solvable_subgroups(n: usize, bound: usize) -> Result<Vec<TransitiveClass>> {
    if n <= 1 {
        return Ok(vec![TransitiveClass { group: PermGroup::trivial(n), order: 1, maximal: true }]);
    }
    let factorial = (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i)).unwrap_or(usize::MAX);
    if factorial > bound.min(crate::group::indexed::MAX_INDEXED_ORDER) {
        return Err(Error::BoundExceeded(bound.min(crate::group::indexed::MAX_INDEXED_ORDER)));
    }
    let sn = PermGroup::symmetric(n);
    let elements = sn.elements()?.to_vec();
    let ig = IndexedGroup::from_enumeration(sn.enumerate()?)?;
    let to_perm_group = |rec: &SubgroupRecord| -> Result<PermGroup> {
        PermGroup::new(n, rec.gens.iter().map(|&i| elements[i as usize].clone()).collect())
    };
    let mut records = Vec::new();
    for rec in ig.solvable_subgroup_classes() {
        let g = to_perm_group(&rec)?;
        if g.is_transitive() {
            records.push((rec, g));
        }
    }
    let mut out = Vec::new();
    for (i, (rec, g)) in records.iter().enumerate() {
        let maximal = !records
            .iter()
            .enumerate()
            .any(|(j, (other, _))| j != i && other.order > rec.order && ig.is_subconjugate(rec, other));
        out.push(TransitiveClass { group: g.clone(), order: rec.order, maximal });
    }
    Ok(out)
}

/// Base change into a signed-permutation group, read off a monomial certificate.
#[derive(Clone, Debug)]
pub struct WreathEmbedding {
    pub certificate: MonomialCertificate,
    /// Columns are the certificate basis; P^-1 G P consists of signed permutations.
    pub base_change: Matrix,
    /// The permutation image of G on the certificate lines.
    pub k: PermGroup,
    /// |G| = 2^n |K|, i.e. G is all of O_1(F) ≀ K in the new basis.
    pub is_full_wreath: bool,
}

pub fn conjugate_into_wreath(group: &MatrixGroup, space: &QuadraticSpace) -> Result<WreathEmbedding> {
    let cert = monomialize(group, space)?;
    let n = space.dim();
    let p = cert.basis_matrix();
    let pinv = p.inverse().ok_or_else(|| Error::CertificateCheckFailed("basis is singular".into()))?;
    let k = PermGroup::new(n, cert.generator_images.iter().map(|s| Perm::new(s.perm.clone())).collect::<Result<_>>()?)?;
    let k_elements: HashSet<Perm> = k.elements()?.iter().cloned().collect();
    for g in group.elements()? {
        let sp = SignedPerm::from_matrix(&pinv.mul(g).mul(&p))
            .ok_or_else(|| Error::CertificateCheckFailed("conjugated element is not a signed permutation".into()))?;
        if !k_elements.contains(&Perm::new(sp.perm)?) {
            return Err(Error::CertificateCheckFailed("permutation part lies outside K".into()));
        }
    }
    let is_full_wreath = group.order()? == (1usize << n) * k.order()?;
    Ok(WreathEmbedding { certificate: cert, base_change: p, k, is_full_wreath })
}

/// Outcome of [`maximality_check`].
#[derive(Clone, Debug)]
pub struct MaximalityReport {
    /// A solvable irreducible group strictly containing W, if one exists.
    pub counterexample: Option<MatrixGroup>,
    /// Number of double cosets W x W whose extension was examined.
    pub extensions_tested: usize,
    pub ambient_order: usize,
}

impl MaximalityReport {
    pub fn is_maximal(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Is W maximal among the solvable irreducible subgroups of O(V, Q)?
///
/// Any strictly larger such group contains some ⟨W, x⟩ with x outside W,
/// and ⟨W, x⟩ only depends on the double coset W x W, so one extension per
/// double coset is tested.
pub fn maximality_check(w: &WreathSpec, bound: usize) -> Result<MaximalityReport> {
    let ambient = w.space.isometry_group_with_bound(bound)?;
    let en = ambient.enumerate()?;
    let inner = w.group.elements()?;
    let mut done = vec![false; en.len()];
    for x in inner {
        let i = en.index_of(x).ok_or_else(|| Error::InvariantViolation("wreath group is not inside the isometry group".into()))?;
        done[i] = true;
    }
    let mut tested = 0;
    for (i, x) in en.elements().iter().enumerate() {
        if done[i] {
            continue;
        }
        for a in inner {
            let ax = a.mul(x);
            for b in inner {
                if let Some(j) = en.index_of(&ax.mul(b)) {
                    done[j] = true;
                }
            }
        }
        tested += 1;
        let mut gens = w.group.gens().to_vec();
        gens.push(x.clone());
        let h = MatrixGroup::new(w.space.field(), w.space.dim(), gens)?.with_bound(bound);
        if h.is_solvable()? && is_irreducible(&h)?.is_irreducible() {
            return Ok(MaximalityReport { counterexample: Some(h), extensions_tested: tested, ambient_order: en.len() });
        }
    }
    Ok(MaximalityReport { counterexample: None, extensions_tested: tested, ambient_order: en.len() })
}

/// Number of orthogonal line decompositions preserved by an irreducible group.
pub fn uniqueness_oracle(group: &MatrixGroup, space: &QuadraticSpace) -> Result<usize> {
    if space.dim().is_multiple_of(2) {
        return Err(Error::HypothesisViolated(Hypothesis::EvenDimension));
    }
    if !is_irreducible(group)?.is_irreducible() {
        return Err(Error::HypothesisViolated(Hypothesis::NotIrreducible));
    }
    Ok(invariant_line_decompositions(group, space, DEFAULT_LINE_ENUMERATION_LIMIT)?.len())
}

fn prime_field(q: u32) -> Result<Field> {
    if q == 2 {
        return Err(Error::CharacteristicTwo);
    }
    Field::prime(q)
}

/// The norm form N(u + v w) of GF(q^2) over GF(q), q an odd prime, and its
/// full isometry group O_2^-(q) of order 2(q + 1).
pub fn o2minus(q: u32) -> Result<(QuadraticSpace, MatrixGroup)> {
    let f = prime_field(q)?;
    let k = Field::new(q, 2)?;
    // w is a root of x^2 + m1 x + m0, so N(u + v w) = u^2 - m1 u v + m0 v^2.
    let m = k.modulus();
    let (m0, m1) = (Elem(m[0]), Elem(m[1]));
    let half = f.inv(f.from_int(2))?;
    let off = f.neg(f.mul(m1, half));
    let gram = Matrix::from_rows(&f, &[vec![Elem::ONE, off], vec![off, m0]]);
    let space = QuadraticSpace::new(gram)?;
    let group = space.isometry_group()?;
    Ok((space, group))
}

/// ΓL_1(q^n) as GF(q)-linear maps of GF(q^n), q an odd prime: multiplication
/// by a primitive element and the Frobenius map x -> x^q, in the
/// coefficient basis 1, x, ..., x^{n-1}. Order (q^n - 1) n.
pub fn gamma_l1(q: u32, n: u32) -> Result<MatrixGroup> {
    let f = prime_field(q)?;
    let k = Field::new(q, n)?;
    let dim = n as usize;
    let unit = |j: usize| -> Result<Elem> {
        let mut c = vec![0u32; dim];
        c[j] = 1;
        k.from_coeffs(&c)
    };
    let column = |z: Elem| -> Vec<Elem> { k.coeffs(z).into_iter().map(Elem).collect() };
    let zeta = k.primitive_element();
    let mult_cols = (0..dim).map(|j| Ok(column(k.mul(zeta, unit(j)?)))).collect::<Result<Vec<_>>>()?;
    let frob_cols = (0..dim).map(|j| Ok(column(k.frobenius(unit(j)?, 1)))).collect::<Result<Vec<_>>>()?;
    MatrixGroup::new(&f, dim, vec![Matrix::from_columns(&f, &mult_cols), Matrix::from_columns(&f, &frob_cols)])
}

/// The error raised for a quadratic space in characteristic 2 and odd dimension.
pub fn char2_rejection() -> Error {
    match QuadraticSpace::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]) {
        Err(e) => e,
        Ok(_) => Error::InvariantViolation("characteristic 2 was accepted".into()),
    }
}

/// Summary of a boundary fixture.
#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub order: usize,
    pub solvable: bool,
    pub irreducible: bool,
    /// Orthogonal line decompositions preserved (for a form-preserving fixture).
    pub invariant_line_decompositions: Option<usize>,
    /// Dimension of the space of invariant symmetric bilinear forms.
    pub invariant_forms: usize,
}

pub fn fixture_report(group: &MatrixGroup, space: Option<&QuadraticSpace>) -> Result<FixtureReport> {
    let lines = match space {
        Some(s) => Some(invariant_line_decompositions(group, s, DEFAULT_LINE_ENUMERATION_LIMIT)?.len()),
        None => None,
    };
    Ok(FixtureReport {
        order: group.order()?,
        solvable: group.is_solvable()?,
        irreducible: is_irreducible(group)?.is_irreducible(),
        invariant_line_decompositions: lines,
        invariant_forms: invariant_symmetric_forms(group.field(), group.dim(), group.gens()).len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn wreath_orders() {
        let s1 = QuadraticSpace::standard(&f(5), 1).unwrap();
        assert_eq!(wreath_construct(&PermGroup::trivial(1), &s1).unwrap().group.order().unwrap(), 2);
        let s3 = QuadraticSpace::standard(&f(3), 3).unwrap();
        let w = wreath_construct(&PermGroup::symmetric(3), &s3).unwrap();
        assert_eq!(w.group.order().unwrap(), 48);
        let o3: HashSet<Matrix> = s3.isometry_group().unwrap().elements().unwrap().iter().cloned().collect();
        let ws: HashSet<Matrix> = w.group.elements().unwrap().iter().cloned().collect();
        assert_eq!(o3, ws);
        let s35 = QuadraticSpace::standard(&f(5), 3).unwrap();
        let c3 = wreath_construct(&PermGroup::cyclic(3), &s35).unwrap();
        assert_eq!(c3.group.order().unwrap(), 24);
        assert!(is_irreducible(&c3.group).unwrap().is_irreducible());
        let skew = QuadraticSpace::from_ints(5, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(wreath_construct(&PermGroup::cyclic(3), &skew).unwrap_err(), Error::NonScalarForm);
    }

    #[test]
    fn irreducible_iff_transitive() {
        let fl = f(5);
        for n in [3usize, 5] {
            let s = QuadraticSpace::standard(&fl, n).unwrap();
            let mut ks = vec![PermGroup::cyclic(n), PermGroup::trivial(n), PermGroup::new(n, vec![Perm::cycle(n, &[0, 1])]).unwrap()];
            if n == 5 {
                ks.push(PermGroup::dihedral(5));
                ks.push(PermGroup::new(5, vec![Perm::cycle(5, &[0, 1, 2]), Perm::cycle(5, &[3, 4])]).unwrap());
            }
            for k in ks {
                let w = wreath_construct(&k, &s).unwrap();
                assert_eq!(is_irreducible(&w.group).unwrap().is_irreducible(), k.is_transitive(), "{:?}", k.gens());
            }
        }
    }

    #[test]
    fn transitive_classes_small() {
        let t3 = transitive_solvable_subgroups(3, 1000).unwrap();
        assert_eq!(t3.iter().map(|c| c.order).collect::<Vec<_>>(), vec![3, 6]);
        assert_eq!(t3.iter().map(|c| c.maximal).collect::<Vec<_>>(), vec![false, true]);
        let t5 = transitive_solvable_subgroups(5, 1000).unwrap();
        assert_eq!(t5.iter().map(|c| c.order).collect::<Vec<_>>(), vec![5, 10, 20]);
        assert_eq!(t5.iter().filter(|c| c.maximal).count(), 1);
        let t1 = transitive_solvable_subgroups(1, 1000).unwrap();
        assert!(t1[0].maximal);
        assert!(matches!(transitive_solvable_subgroups(9, 1_000_000), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn o3_3_into_wreath() {
        let s = QuadraticSpace::standard(&f(3), 3).unwrap();
        let g = s.isometry_group().unwrap();
        let e = conjugate_into_wreath(&g, &s).unwrap();
        assert_eq!(e.k.order().unwrap(), 6);
        assert!(e.is_full_wreath);
        let s1 = QuadraticSpace::standard(&f(7), 1).unwrap();
        let minus = MatrixGroup::new(&f(7), 1, vec![Matrix::scalar(&f(7), 1, Elem(6))]).unwrap();
        let e = conjugate_into_wreath(&minus, &s1).unwrap();
        assert_eq!(e.k.order().unwrap(), 1);
    }

    #[test]
    fn maximality_examples() {
        let s5 = QuadraticSpace::standard(&f(5), 3).unwrap();
        let w = wreath_construct(&PermGroup::symmetric(3), &s5).unwrap();
        let r = maximality_check(&w, 10_000).unwrap();
        assert!(r.is_maximal());
        assert_eq!(r.ambient_order, 240);
        let c3 = wreath_construct(&PermGroup::cyclic(3), &s5).unwrap();
        let r = maximality_check(&c3, 10_000).unwrap();
        let h = r.counterexample.unwrap();
        assert!(h.order().unwrap() > 24);
        assert!(h.is_solvable().unwrap());
        let s3 = QuadraticSpace::standard(&f(3), 3).unwrap();
        let full = wreath_construct(&PermGroup::symmetric(3), &s3).unwrap();
        let r = maximality_check(&full, 10_000).unwrap();
        assert!(r.is_maximal());
        assert_eq!(r.extensions_tested, 0);
    }

    #[test]
    fn uniqueness_examples() {
        let s3 = QuadraticSpace::standard(&f(3), 3).unwrap();
        let w = wreath_construct(&PermGroup::symmetric(3), &s3).unwrap();
        assert_eq!(uniqueness_oracle(&w.group, &s3).unwrap(), 1);
        let s5 = QuadraticSpace::standard(&f(5), 3).unwrap();
        let w = wreath_construct(&PermGroup::cyclic(3), &s5).unwrap();
        assert_eq!(uniqueness_oracle(&w.group, &s5).unwrap(), 1);
        let minus = MatrixGroup::new(&f(5), 3, vec![Matrix::scalar(&f(5), 3, Elem(4))]).unwrap();
        assert_eq!(uniqueness_oracle(&minus, &s5).unwrap_err(), Error::HypothesisViolated(Hypothesis::NotIrreducible));
    }

    /// Oracle: isometries of the norm form by brute force over all 2x2 matrices.
    #[test]
    fn o2minus_fixture() {
        let (s, g) = o2minus(5).unwrap();
        let fl = f(5);
        let mut brute = 0;
        for code in 0..625u32 {
            let d: Vec<Elem> = (0..4).map(|i| Elem(code / 5u32.pow(i) % 5)).collect();
            let m = Matrix::from_data(&fl, 2, 2, d).unwrap();
            if m.is_invertible() && s.is_isometry(&m).unwrap() {
                brute += 1;
                assert!(g.contains(&m).unwrap());
            }
        }
        assert_eq!(brute, 12);
        let r = fixture_report(&g, Some(&s)).unwrap();
        assert_eq!(r.order, 12);
        assert!(r.solvable && r.irreducible);
        assert_eq!(r.invariant_line_decompositions, Some(0));
        // Anisotropic: Q(v) != 0 for v != 0.
        for code in 1..25u32 {
            assert!(!s.q(&[Elem(code % 5), Elem(code / 5)]).is_zero());
        }
    }

    #[test]
    fn gamma_l1_fixture() {
        let g = gamma_l1(3, 3).unwrap();
        let r = fixture_report(&g, None).unwrap();
        assert_eq!(r.order, 78);
        assert!(r.solvable && r.irreducible);
        assert_eq!(r.invariant_forms, 0);
        assert_eq!(char2_rejection(), Error::CharacteristicTwo);
    }
}
