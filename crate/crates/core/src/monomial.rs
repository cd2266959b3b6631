//! Monomial bases for odd-dimensional solvable irreducible isometry groups.
//!
//! The recursion: the last nontrivial derived term L of G is abelian and
//! normal, its homogeneous components form a G-invariant orthogonal
//! decomposition V = Z_1 ⊥ ... ⊥ Z_k with k > 1, the stabilizer of Z_1 acts
//! irreducibly on Z_1, and a basis found there is carried to the other parts
//! by coset representatives.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Hypothesis, Result};
use crate::field::{Elem, Field};
use crate::form::{validate_decomposition, OrthoDecomposition, QuadraticSpace};
use crate::group::{IndexedGroup, MatrixGroup, SubgroupRecord};
use crate::linalg::{Matrix, Subspace};
use crate::modrep::{eigen_components, homogeneous_components, is_irreducible, zalesski_dichotomy_check};

/// g w_i = signs[i] w_{perm[i]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    /// Reads the signed permutation off a monomial matrix with entries ±1.
    pub fn from_matrix(m: &Matrix) -> Option<SignedPerm> {
        m.signed_permutation().map(|(perm, signs)| SignedPerm { perm, signs })
    }

    pub fn to_matrix(&self, field: &Field) -> Matrix {
        let n = self.perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for j in 0..n {
            let v = if self.signs[j] < 0 { field.neg(Elem::ONE) } else { Elem::ONE };
            m.set(self.perm[j], j, v);
        }
        m
    }
}

impl fmt::Display for SignedPerm {
    /// `2+ 3+ 1-`: image index (1-based) and sign for each basis vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| format!("{}{}", p + 1, if s < 0 { '-' } else { '+' }))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Coset representatives of one recursion level: `words[i]` maps the first
/// part onto part i + 2, as generator indices in order of application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportLevel {
    pub dim: usize,
    pub part_dim: usize,
    pub words: Vec<Vec<usize>>,
}

/// A basis in which every element of the group is a signed permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCertificate {
    pub space: QuadraticSpace,
    pub basis: Vec<Vec<Elem>>,
    /// Common value Q(w_i).
    pub scalar: Elem,
    /// One entry per generator of the input group.
    pub generator_images: Vec<SignedPerm>,
    /// Outermost level first.
    pub transport: Vec<TransportLevel>,
}

impl MonomialCertificate {
    /// Base change matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.space.field(), &self.basis)
    }

    /// The lines spanned by the basis vectors, in basis order.
    pub fn lines(&self) -> Vec<Subspace> {
        let f = self.space.field();
        self.basis.iter().map(|w| Subspace::from_vectors(f, w.len(), std::slice::from_ref(w))).collect()
    }

    /// The lines as an orthogonal decomposition (parts sorted canonically).
    pub fn decomposition(&self) -> Result<OrthoDecomposition> {
        OrthoDecomposition::new(&self.space, self.lines())
    }
}

/// Result of [`check_certificate`]: `failure` holds the first failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub ok: bool,
    pub failure: Option<String>,
    pub elements_checked: usize,
}

impl CheckOutcome {
    fn fail(msg: String, checked: usize) -> CheckOutcome {
        CheckOutcome { ok: false, failure: Some(msg), elements_checked: checked }
    }
}

/// Checks every hypothesis of the monomialization theorem.
pub fn check_hypotheses(group: &MatrixGroup, space: &QuadraticSpace) -> Result<()> {
    let n = space.dim();
    if space.field().characteristic() == 2 {
        return Err(Error::HypothesisViolated(Hypothesis::CharacteristicTwo));
    }
    if n.is_multiple_of(2) {
        return Err(Error::HypothesisViolated(Hypothesis::EvenDimension));
    }
    if group.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: group.dim() });
    }
    for g in group.gens() {
        if !space.is_isometry(g)? {
            return Err(Error::HypothesisViolated(Hypothesis::NotIsometries));
        }
    }
    if !group.is_solvable()? {
        return Err(Error::HypothesisViolated(Hypothesis::NotSolvable));
    }
    if !is_irreducible(group)?.is_irreducible() {
        return Err(Error::HypothesisViolated(Hypothesis::NotIrreducible));
    }
    Ok(())
}

/// A G-invariant orthogonal decomposition with more than one part, from
/// the homogeneous components of the last nontrivial derived term.
pub fn find_invariant_decomposition(group: &MatrixGroup, space: &QuadraticSpace) -> Result<OrthoDecomposition> {
    check_hypotheses(group, space)?;
    let n = space.dim();
    if n == 1 {
        return Err(Error::InvalidInput("a line has no proper decomposition".into()));
    }
    decomposition_from_derived_term(group, space)
}

fn decomposition_from_derived_term(group: &MatrixGroup, space: &QuadraticSpace) -> Result<OrthoDecomposition> {
    let n = space.dim();
    let series = group.derived_series()?;
    if series.len() < 2 || series.last().unwrap().order()? != 1 {
        return Err(Error::HypothesisViolated(Hypothesis::NotSolvable));
    }
    if series.len() == 2 {
        return Err(Error::InvariantViolation("abelian group acting irreducibly in odd dimension > 1".into()));
    }
    let l = &series[series.len() - 2];
    let minus = Matrix::scalar(space.field(), n, space.field().neg(Elem::ONE));
    if l.contains(&minus)? {
        return Err(Error::InvariantViolation("-I lies in the derived subgroup".into()));
    }
    let comps = homogeneous_components(l)?;
    if comps.len() == 1 {
        return Err(Error::InvariantViolation("derived term acts homogeneously".into()));
    }
    let d = zalesski_dichotomy_check(&comps, space, n % 2 == 1)?;
    validate_decomposition(&d, group)
        .map_err(|e| Error::InvariantViolation(format!("components are not permuted by the group: {e}")))?;
    Ok(d)
}

/// Breadth-first search over generator words for elements carrying part 0
/// to every other part; the first word found wins.
fn coset_representatives(group: &MatrixGroup, d: &OrthoDecomposition) -> Result<Vec<(Matrix, Vec<usize>)>> {
    let k = d.len();
    let perms: Vec<Vec<usize>> = group
        .gens()
        .iter()
        .map(|g| d.induced_permutation(g).map(|p| p.images().to_vec()))
        .collect::<Result<_>>()?;
    let mut reps: Vec<Option<(Matrix, Vec<usize>)>> = vec![None; k];
    reps[0] = Some((group.identity(), vec![]));
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        let (x, word) = reps[j].clone().unwrap();
        for (gi, g) in group.gens().iter().enumerate() {
            let t = perms[gi][j];
            if reps[t].is_none() {
                let mut w = word.clone();
                w.push(gi);
                reps[t] = Some((g.mul(&x), w));
                queue.push_back(t);
            }
        }
    }
    reps.into_iter()
        .map(|r| r.ok_or_else(|| Error::InvariantViolation("group is not transitive on the parts".into())))
        .collect()
}

/// A monomial certificate for a solvable irreducible isometry group of an
/// odd-dimensional quadratic space.
pub fn monomialize(group: &MatrixGroup, space: &QuadraticSpace) -> Result<MonomialCertificate> {
    check_hypotheses(group, space)?;
    let cert = monomialize_unchecked(group, space)?;
    let outcome = check_generators(&cert, group);
    if let Some(msg) = outcome.failure {
        return Err(Error::CertificateCheckFailed(msg));
    }
    Ok(cert)
}

fn monomialize_unchecked(group: &MatrixGroup, space: &QuadraticSpace) -> Result<MonomialCertificate> {
    let n = space.dim();
    if n == 1 {
        let w = vec![Elem::ONE];
        let images = group
            .gens()
            .iter()
            .map(|g| SignedPerm::from_matrix(g).ok_or_else(|| Error::InvariantViolation("isometry of a line is not ±1".into())))
            .collect::<Result<Vec<_>>>()?;
        return Ok(MonomialCertificate {
            space: space.clone(),
            scalar: space.q(&w),
            basis: vec![w],
            generator_images: images,
            transport: vec![],
        });
    }
    let d = decomposition_from_derived_term(group, space)?;
    let z1 = d.parts()[0].clone();
    let h = group.setwise_stabilizer(&d, 0)?;
    let h1 = h.restrict(&z1)?;
    let s1 = space.restrict(&z1)?;
    if !is_irreducible(&h1)?.is_irreducible() {
        return Err(Error::InvariantViolation("stabilizer of a part acts reducibly on it".into()));
    }
    let inner = monomialize_unchecked(&h1, &s1)?;
    let reps = coset_representatives(group, &d)?;
    let inner_vectors: Vec<Vec<Elem>> = inner.basis.iter().map(|c| z1.vector_from_coordinates(c)).collect();
    let mut basis = Vec::with_capacity(n);
    for (i, (g, _)) in reps.iter().enumerate() {
        for w in &inner_vectors {
            let v = g.apply(w);
            debug_assert!(d.parts()[i].contains(&v));
            basis.push(v);
        }
    }
    let mut transport = vec![TransportLevel { dim: n, part_dim: z1.dim(), words: reps[1..].iter().map(|(_, w)| w.clone()).collect() }];
    transport.extend(inner.transport);
    let mut cert = MonomialCertificate { space: space.clone(), basis, scalar: inner.scalar, generator_images: vec![], transport };
    let p = cert.basis_matrix();
    let pinv = p.inverse().ok_or_else(|| Error::CertificateCheckFailed("basis is singular".into()))?;
    cert.generator_images = group
        .gens()
        .iter()
        .map(|g| {
            SignedPerm::from_matrix(&pinv.mul(g).mul(&p))
                .ok_or_else(|| Error::CertificateCheckFailed("generator is not a signed permutation in the basis".into()))
        })
        .collect::<Result<_>>()?;
    Ok(cert)
}

fn check_basis(cert: &MonomialCertificate) -> Option<String> {
    let s = &cert.space;
    let n = s.dim();
    if cert.basis.len() != n || cert.basis.iter().any(|w| w.len() != n) {
        return Some("basis has the wrong shape".into());
    }
    if !cert.basis_matrix().is_invertible() {
        return Some("basis vectors are linearly dependent".into());
    }
    if cert.scalar.is_zero() {
        return Some("scalar is zero".into());
    }
    for i in 0..n {
        if s.q(&cert.basis[i]) != cert.scalar {
            return Some(format!("Q(w{}) differs from the scalar", i + 1));
        }
        for j in i + 1..n {
            if !s.b(&cert.basis[i], &cert.basis[j]).is_zero() {
                return Some(format!("w{} and w{} are not orthogonal", i + 1, j + 1));
            }
        }
    }
    None
}

fn check_generators(cert: &MonomialCertificate, group: &MatrixGroup) -> CheckOutcome {
    if let Some(msg) = check_basis(cert) {
        return CheckOutcome::fail(msg, 0);
    }
    if cert.generator_images.len() != group.gens().len() {
        return CheckOutcome::fail("one signed permutation per generator is required".into(), 0);
    }
    let p = cert.basis_matrix();
    let pinv = p.inverse().unwrap();
    for (i, (g, claimed)) in group.gens().iter().zip(&cert.generator_images).enumerate() {
        match SignedPerm::from_matrix(&pinv.mul(g).mul(&p)) {
            Some(actual) if actual == *claimed => {}
            Some(_) => return CheckOutcome::fail(format!("recorded image of generator {} is wrong", i + 1), i),
            None => return CheckOutcome::fail(format!("generator {} is not a signed permutation in the basis", i + 1), i),
        }
    }
    CheckOutcome { ok: true, failure: None, elements_checked: group.gens().len() }
}

/// Independent verification: orthogonality, equal Q-values, the recorded
/// generator images, and that every element of the group is a signed
/// permutation with entries ±1 in the certificate basis.
pub fn check_certificate(cert: &MonomialCertificate, group: &MatrixGroup) -> CheckOutcome {
    let outcome = check_generators(cert, group);
    if !outcome.ok {
        return outcome;
    }
    let elements = match group.elements() {
        Ok(e) => e,
        Err(e) => return CheckOutcome::fail(format!("group enumeration failed: {e}"), 0),
    };
    let p = cert.basis_matrix();
    let pinv = p.inverse().unwrap();
    for (i, g) in elements.iter().enumerate() {
        if SignedPerm::from_matrix(&pinv.mul(g).mul(&p)).is_none() {
            return CheckOutcome::fail(format!("element {} is not a signed permutation in the basis", i + 1), i);
        }
    }
    CheckOutcome { ok: true, failure: None, elements_checked: elements.len() }
}

/// One subgroup class of the sweep.
#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub order: usize,
    pub irreducible: bool,
    /// Present for irreducible classes.
    pub outcome: Option<std::result::Result<CheckOutcome, Error>>,
    /// Homogeneous components of the last derived term agree between the
    /// algebra method and the splitting-field method.
    pub components_agree: Option<bool>,
    /// Every element of [G, G] has determinant 1.
    pub derived_det_one: bool,
}

/// Theorem sweep over the solvable subgroups of O_n(q), up to conjugacy.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub n: usize,
    pub q: u32,
    pub ambient_order: usize,
    pub ambient_solvable: bool,
    pub entries: Vec<SweepEntry>,
    /// Abelian classes of order prime to p where both component methods agree.
    pub abelian_agreements: usize,
    pub abelian_checked: usize,
    pub minus_identity_det: Elem,
}

impl SweepReport {
    pub fn solvable_classes(&self) -> usize {
        self.entries.len()
    }

    pub fn irreducible_classes(&self) -> usize {
        self.entries.iter().filter(|e| e.irreducible).count()
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| matches!(&e.outcome, Some(Ok(o)) if o.ok)).count()
    }

    pub fn failures(&self) -> usize {
        self.irreducible_classes() - self.passed()
    }

    pub fn all_components_agree(&self) -> bool {
        self.entries.iter().all(|e| e.components_agree != Some(false)) && self.abelian_agreements == self.abelian_checked
    }

    pub fn all_derived_det_one(&self) -> bool {
        self.entries.iter().all(|e| e.derived_det_one)
    }
}

/// The isometry group of the standard form on GF(q)^n.
pub fn orthogonal_group(n: usize, q: u32, bound: usize) -> Result<(QuadraticSpace, MatrixGroup)> {
    if n.is_multiple_of(2) {
        return Err(Error::HypothesisViolated(Hypothesis::EvenDimension));
    }
    let p = crate::field::prime_power(q).ok_or(Error::InvalidInput(format!("{q} is not a prime power")))?;
    if p.0 == 2 {
        return Err(Error::HypothesisViolated(Hypothesis::CharacteristicTwo));
    }
    let field = Field::new(p.0, p.1)?;
    let space = QuadraticSpace::standard(&field, n)?;
    let group = space.isometry_group_with_bound(bound)?;
    Ok((space, group))
}

fn sweep_entry(group: &MatrixGroup, space: &QuadraticSpace) -> Result<SweepEntry> {
    let order = group.order()?;
    let derived = group.derived_subgroup()?;
    let derived_det_one = derived.elements()?.iter().all(|x| x.det() == Ok(Elem::ONE));
    let irreducible = is_irreducible(group)?.is_irreducible();
    if !irreducible {
        return Ok(SweepEntry { order, irreducible, outcome: None, components_agree: None, derived_det_one });
    }
    let outcome = monomialize(group, space).map(|cert| check_certificate(&cert, group));
    let components_agree = match group.abelian_normal_term() {
        Ok(l) => Some(homogeneous_components(&l)? == eigen_components(&l)?),
        Err(_) => None,
    };
    Ok(SweepEntry { order, irreducible, outcome: Some(outcome), components_agree, derived_det_one })
}

/// Runs [`monomialize`] and [`check_certificate`] on every irreducible class
/// of solvable subgroups of O_n(q), with the two component computations and
/// the determinant argument checked along the way.
pub fn theorem_sweep(n: usize, q: u32, bound: usize) -> Result<SweepReport> {
    let (space, ambient) = orthogonal_group(n, q, bound)?;
    let ig: IndexedGroup = ambient.indexed()?;
    let classes: Vec<SubgroupRecord> = ig.solvable_subgroup_classes();
    let p = space.field().characteristic() as usize;
    let mut entries = Vec::new();
    let mut abelian_checked = 0;
    let mut abelian_agreements = 0;
    for rec in &classes {
        let g = ambient.subgroup_from_indices(&rec.gens)?;
        entries.push(sweep_entry(&g, &space)?);
        if rec.order > 1 && rec.order % p != 0 && g.is_abelian() {
            abelian_checked += 1;
            if homogeneous_components(&g)? == eigen_components(&g)? {
                abelian_agreements += 1;
            }
        }
    }
    let f = space.field();
    let minus_identity_det = Matrix::scalar(f, n, f.neg(Elem::ONE)).det()?;
    Ok(SweepReport {
        n,
        q,
        ambient_order: ambient.order()?,
        ambient_solvable: ambient.is_solvable()?,
        entries,
        abelian_agreements,
        abelian_checked,
        minus_identity_det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    pub(crate) fn signed_perm_group(field: &Field, k: &PermGroup) -> MatrixGroup {
        let n = k.degree();
        let mut gens: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut d = vec![Elem::ONE; n];
                d[i] = field.neg(Elem::ONE);
                Matrix::diagonal(field, &d)
            })
            .collect();
        gens.extend(k.gens().iter().map(|p| Matrix::permutation(field, p.images())));
        MatrixGroup::new(field, n, gens).unwrap()
    }

    #[test]
    fn o3_3_is_the_signed_permutation_group() {
        let (s, g) = orthogonal_group(3, 3, 1000).unwrap();
        let d = find_invariant_decomposition(&g, &s).unwrap();
        assert_eq!(d.len(), 3);
        // Oracle: the axes are the only orthogonal line decomposition fixed by O3(3).
        let axes = crate::form::invariant_line_decompositions(&g, &s, 1_000_000).unwrap();
        assert_eq!(axes.len(), 1);
        assert_eq!(axes[0], d);
        let cert = monomialize(&g, &s).unwrap();
        let out = check_certificate(&cert, &g);
        assert!(out.ok, "{:?}", out.failure);
        assert_eq!(out.elements_checked, 48);
        assert_eq!(cert.scalar, Elem::ONE);
    }

    #[test]
    fn line_case() {
        let fl = f(5);
        let s = QuadraticSpace::from_ints(5, &[&[2]]).unwrap();
        let g = MatrixGroup::new(&fl, 1, vec![Matrix::scalar(&fl, 1, fl.neg(Elem::ONE))]).unwrap();
        let cert = monomialize(&g, &s).unwrap();
        assert_eq!(cert.basis, vec![vec![Elem::ONE]]);
        assert_eq!(cert.scalar, Elem(2));
        assert_eq!(cert.generator_images[0].to_string(), "1-");
    }

    #[test]
    fn hypothesis_failures() {
        let fl = f(5);
        let s = QuadraticSpace::standard(&fl, 3).unwrap();
        let minus = MatrixGroup::new(&fl, 3, vec![Matrix::scalar(&fl, 3, fl.neg(Elem::ONE))]).unwrap();
        assert_eq!(monomialize(&minus, &s).unwrap_err(), Error::HypothesisViolated(Hypothesis::NotIrreducible));
        let (_, o35) = orthogonal_group(3, 5, 1000).unwrap();
        assert_eq!(monomialize(&o35, &s).unwrap_err(), Error::HypothesisViolated(Hypothesis::NotSolvable));
        let scale = MatrixGroup::new(&fl, 3, vec![Matrix::scalar(&fl, 3, Elem(2))]).unwrap();
        assert_eq!(monomialize(&scale, &s).unwrap_err(), Error::HypothesisViolated(Hypothesis::NotIsometries));
        let s2 = QuadraticSpace::standard(&fl, 2).unwrap();
        let g2 = MatrixGroup::trivial(&fl, 2);
        assert_eq!(monomialize(&g2, &s2).unwrap_err(), Error::HypothesisViolated(Hypothesis::EvenDimension));
    }

    #[test]
    fn signed_c3_and_c5() {
        let fl = f(5);
        let s = QuadraticSpace::standard(&fl, 3).unwrap();
        let g = signed_perm_group(&fl, &PermGroup::cyclic(3));
        assert_eq!(g.order().unwrap(), 24);
        let d = find_invariant_decomposition(&g, &s).unwrap();
        assert_eq!(d.len(), 3);
        let cert = monomialize(&g, &s).unwrap();
        assert!(check_certificate(&cert, &g).ok);

        let s5 = QuadraticSpace::standard(&fl, 5).unwrap();
        let g5 = signed_perm_group(&fl, &PermGroup::cyclic(5));
        let cert = monomialize(&g5, &s5).unwrap();
        assert!(check_certificate(&cert, &g5).ok);
        let k = crate::form::validate_decomposition(&cert.decomposition().unwrap(), &g5).unwrap();
        assert!(k.is_transitive());
        assert_eq!(k.order().unwrap(), 5);
    }

    #[test]
    fn hidden_basis_is_recovered() {
        // Conjugate the signed S3 group by a non-monomial isometry of I_3.
        let fl = f(7);
        let s = QuadraticSpace::standard(&fl, 3).unwrap();
        let o3 = s.isometry_group().unwrap();
        let t = o3.elements().unwrap().iter().find(|x| !x.is_monomial()).unwrap().clone();
        let base = signed_perm_group(&fl, &PermGroup::symmetric(3));
        let hidden = base.conjugate(&t).unwrap();
        assert!(hidden.gens().iter().all(|g| s.is_isometry(g).unwrap()));
        let cert = monomialize(&hidden, &s).unwrap();
        assert!(check_certificate(&cert, &hidden).ok);
        assert!(!cert.basis_matrix().is_monomial());
    }

    #[test]
    fn tampered_certificates_fail() {
        let (s, g) = orthogonal_group(3, 3, 1000).unwrap();
        let cert = monomialize(&g, &s).unwrap();
        let mut flipped = cert.clone();
        flipped.generator_images[0].signs[0] *= -1;
        assert!(!check_certificate(&flipped, &g).ok);
        let mut skewed = cert.clone();
        let f3 = s.field().clone();
        skewed.basis[1] = skewed.basis[0].iter().zip(&cert.basis[1]).map(|(&a, &b)| f3.add(a, b)).collect();
        assert!(!check_certificate(&skewed, &g).ok);
    }

    #[test]
    fn sweep_q3() {
        let r = theorem_sweep(3, 3, 1000).unwrap();
        assert_eq!(r.ambient_order, 48);
        assert!(r.irreducible_classes() > 0);
        assert_eq!(r.failures(), 0);
        assert!(r.all_components_agree());
        assert!(r.all_derived_det_one());
        assert_eq!(r.minus_identity_det, Elem(2));
    }
}

