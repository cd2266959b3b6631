//! Module-theoretic analysis of matrix groups: spinning, irreducibility,
//! homogeneous components under an abelian subgroup, eigenspaces over a
//! splitting field, and the pairing of eigenspaces by an invariant form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{frobenius_orbit, gcd, lcm, poly_factor, Elem, Field, Poly};
use crate::form::{projective_points, OrthoDecomposition, QuadraticSpace};
use crate::group::{GroupElement, MatrixGroup};
use crate::linalg::{charpoly, minpoly, primary_components, rational_form, Matrix, Subspace};

/// Largest q^n for which the exhaustive irreducibility fallback runs.
pub const EXHAUSTIVE_SPIN_LIMIT: u64 = 1_000_000;

/// Smallest subspace containing `v` and invariant under every matrix in `gens`.
pub fn spin(v: &[Elem], gens: &[Matrix]) -> Result<Subspace> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let f = gens.first().map(|g| g.field().clone());
    let n = v.len();
    let field = match f {
        Some(f) => f,
        None => return Err(Error::InvalidInput("spin needs the field of at least one generator".into())),
    };
    let mut span = Subspace::from_vectors(&field, n, &[v.to_vec()]);
    let mut queue = vec![v.to_vec()];
    while let Some(u) = queue.pop() {
        for g in gens {
            let w = g.apply(&u);
            if !span.contains(&w) {
                span = span.sum(&Subspace::from_vectors(&field, n, std::slice::from_ref(&w)));
                queue.push(w);
            }
        }
    }
    Ok(span)
}

/// [`spin`] under the generators of a group. The trivial group spins to the line.
pub fn spin_group(v: &[Elem], group: &MatrixGroup) -> Result<Subspace> {
    if group.gens().is_empty() {
        return spin(v, &[group.identity()]);
    }
    spin(v, group.gens())
}

/// Outcome of an irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// The fixed sequence of algebra elements tried by [`is_irreducible`]:
/// generators, products g_i g_j, sums g_i + g_j, sums g_i + g_j + g_l.
pub fn test_words(gens: &[Matrix]) -> Vec<Matrix> {
    let k = gens.len();
    let mut words: Vec<Matrix> = gens.to_vec();
    for i in 0..k {
        for j in 0..k {
            words.push(gens[i].mul(&gens[j]));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            words.push(gens[i].add(&gens[j]));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                words.push(gens[i].add(&gens[j]).add(&gens[l]));
            }
        }
    }
    words
}

/// Irreducibility of the natural module of `group`.
///
/// For each test word a and each irreducible factor p of its characteristic
/// polynomial with dim ker p(a) = deg p, a nonzero vector of ker p(a) is spun
/// under G and a nonzero vector of ker p(a^T) is spun under G^T. If both
/// spins are the whole space the module is irreducible; a proper spin gives
/// the witness directly, a proper transposed spin through its annihilator.
/// When no word qualifies, every line of the projective space is spun.
pub fn is_irreducible(group: &MatrixGroup) -> Result<Irreducibility> {
    let n = group.dim();
    let f = group.field().clone();
    if n <= 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let gens: Vec<Matrix> = if group.gens().is_empty() { vec![group.identity()] } else { group.gens().to_vec() };
    let gens_t: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    for a in test_words(&gens) {
        for (p, _) in poly_factor(&charpoly(&a)?) {
            let deg = p.degree().unwrap_or(0);
            let pa = crate::linalg::eval_poly(&p, &a);
            let null = pa.kernel();
            if null.dim() != deg {
                continue;
            }
            let v = &null.basis_vectors()[0];
            let s = spin(v, &gens)?;
            if !s.is_full() {
                return Ok(Irreducibility::Reducible(s));
            }
            let null_t = pa.transpose().kernel();
            let w = &null_t.basis_vectors()[0];
            let st = spin(w, &gens_t)?;
            if !st.is_full() {
                return Ok(Irreducibility::Reducible(st.annihilator()));
            }
            return Ok(Irreducibility::Irreducible);
        }
    }
    match exhaustive_invariant_subspace(&gens, &f, n)? {
        Some(w) => Ok(Irreducibility::Reducible(w)),
        None => Ok(Irreducibility::Irreducible),
    }
}

/// Spins every line of PG(n-1, q); any proper invariant subspace contains
/// a minimal one, which is the spin of each of its vectors.
pub fn exhaustive_invariant_subspace(gens: &[Matrix], field: &Field, n: usize) -> Result<Option<Subspace>> {
    let points = projective_points(field, n, EXHAUSTIVE_SPIN_LIMIT).map_err(|_| Error::NoSuitableWord)?;
    let gens: Vec<Matrix> = if gens.is_empty() { vec![Matrix::identity(field, n)] } else { gens.to_vec() };
    for v in points {
        let s = spin(&v, &gens)?;
        if !s.is_full() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// The F-span of the matrices of a group, as a subspace of F^{n x n}.
#[derive(Clone, Debug)]
pub struct AlgebraSpan {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
    span: Subspace,
}

fn flatten(m: &Matrix) -> Vec<Elem> {
    m.data().to_vec()
}

impl AlgebraSpan {
    /// Spin of I under left multiplication by the generators. For a finite
    /// group this is the span of all group elements, which is the
    /// enveloping algebra.
    pub fn of_group(group: &MatrixGroup) -> AlgebraSpan {
        let n = group.dim();
        let f = group.field().clone();
        let id = group.identity();
        let mut basis = vec![id.clone()];
        let mut span = Subspace::from_vectors(&f, n * n, &[flatten(&id)]);
        let mut i = 0;
        while i < basis.len() {
            let x = basis[i].clone();
            for g in group.gens() {
                let y = g.mul(&x);
                let v = flatten(&y);
                if !span.contains(&v) {
                    span = span.sum(&Subspace::from_vectors(&f, n * n, &[v]));
                    basis.push(y);
                }
            }
            i += 1;
        }
        AlgebraSpan { field: f, n, basis, span }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.span.contains(&flatten(m))
    }

    /// Coordinates of `m` in [`AlgebraSpan::basis`].
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Elem>> {
        if !self.contains(m) {
            return None;
        }
        let cols: Vec<Vec<Elem>> = self.basis.iter().map(flatten).collect();
        // A c - t m = 0 with t != 0 gives c / t.
        let f = &self.field;
        let target = flatten(m);
        let mut aug_cols = cols.clone();
        aug_cols.push(target.iter().map(|&x| f.neg(x)).collect());
        let ker = Matrix::from_columns(f, &aug_cols).kernel();
        let k = self.basis.len();
        let v = ker.basis_vectors().into_iter().find(|v| !v[k].is_zero())?;
        let s = f.inv(v[k]).ok()?;
        Some(v[..k].iter().map(|&x| f.mul(x, s)).collect())
    }

    /// Products of basis elements stay in the span.
    pub fn is_closed(&self) -> bool {
        self.basis.iter().all(|a| self.basis.iter().all(|b| self.contains(&a.mul(b))))
    }

    /// Basis of {x in A : x^q = x}. On a commutative algebra over GF(q)
    /// the map x -> x^q - x is linear.
    pub fn frobenius_fixed(&self) -> Vec<Matrix> {
        let f = &self.field;
        let q = f.order() as u64;
        let k = self.basis.len();
        let image_cols: Vec<Vec<Elem>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&b.pow(q).sub(b)).expect("algebra is closed under powers"))
            .collect();
        let m = Matrix::from_columns(f, &image_cols);
        m.kernel()
            .basis_vectors()
            .into_iter()
            .map(|c| {
                let mut acc = Matrix::zeros(f, self.n, self.n);
                for (i, &ci) in c.iter().enumerate().take(k) {
                    if !ci.is_zero() {
                        acc = acc.add(&self.basis[i].scale(ci));
                    }
                }
                acc
            })
            .collect()
    }
}

/// The Sylow p-part of an abelian group acts trivially, or `NotCoprime`.
pub fn check_coprime(l: &MatrixGroup) -> Result<()> {
    let p = l.field().characteristic() as u64;
    let sylow: Vec<Matrix> = l
        .elements()?
        .iter()
        .filter(|x| {
            let mut o = x.order();
            while o % p == 0 {
                o /= p;
            }
            o == 1
        })
        .cloned()
        .collect();
    let sp = l.subgroup_from_elements(&sylow)?;
    if !sp.fixed_space().is_full() {
        return Err(Error::NotCoprime);
    }
    Ok(())
}

/// Homogeneous components of the natural module restricted to an abelian
/// group of order prime to p, sorted canonically.
///
/// The Frobenius-fixed part of the enveloping algebra is spanned by the
/// primitive idempotents. Its basis elements act with distinct eigenvalues
/// in F on distinct components, so splitting along their eigenspaces
/// until each acts as a scalar on every block yields the components.
pub fn homogeneous_components(l: &MatrixGroup) -> Result<Vec<Subspace>> {
    if !l.is_abelian() {
        return Err(Error::NotAbelian);
    }
    check_coprime(l)?;
    let f = l.field().clone();
    let n = l.dim();
    let fixed = AlgebraSpan::of_group(l).frobenius_fixed();
    let mut blocks = vec![Subspace::full(&f, n)];
    for e in &fixed {
        let mut next = Vec::new();
        for w in blocks {
            let r = w.restrict(e)?;
            let comps = primary_components(&r)?;
            if comps.len() == 1 {
                next.push(w);
                continue;
            }
            for c in comps {
                if c.factor.degree() != Some(1) || c.subspace.dim() == 0 {
                    return Err(Error::InvariantViolation("fixed algebra element is not split semisimple".into()));
                }
                let vecs: Vec<Vec<Elem>> = c.subspace.basis_vectors().iter().map(|x| w.vector_from_coordinates(x)).collect();
                next.push(Subspace::from_vectors(&f, n, &vecs));
            }
        }
        blocks = next;
    }
    blocks.sort();
    Ok(blocks)
}

/// Eigen-structure of a semisimple matrix over the splitting field of its
/// characteristic polynomial.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub element: Matrix,
    pub split: Field,
    /// Eigenvalues in `split` with algebraic multiplicities, sorted by code.
    pub eigenvalues: Vec<(Elem, usize)>,
    /// Eigenspaces over `split`, aligned with `eigenvalues`.
    pub eigenspaces: Vec<Subspace>,
    /// Indices into `eigenvalues`, one list per Frobenius orbit.
    pub galois_orbits: Vec<Vec<usize>>,
    /// Per orbit: the sum of its eigenspaces over `split`.
    pub orbit_sums: Vec<Subspace>,
    /// Per orbit: the same subspace descended to the base field.
    pub rational: Vec<Subspace>,
}

impl EigenData {
    pub fn index_of(&self, alpha: Elem) -> Option<usize> {
        self.eigenvalues.iter().position(|&(a, _)| a == alpha)
    }
}

fn is_squarefree(p: &Poly) -> bool {
    p.gcd(&p.derivative()).degree() == Some(0)
}

/// Eigenvalues, eigenspaces and Galois orbits of `f`. The form is only
/// used for a dimension check; see [`pairing_check`].
pub fn eigen_analysis(f: &Matrix, space: &QuadraticSpace) -> Result<EigenData> {
    if f.rows() != space.dim() || !f.is_square() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: f.rows() });
    }
    if !f.is_invertible() {
        return Err(Error::InvalidInput("element is singular".into()));
    }
    let base = f.field().clone();
    if !is_squarefree(&minpoly(f)?) {
        return Err(Error::NotSemisimple);
    }
    let cp = charpoly(f)?;
    let split = crate::field::splitting_field(&cp)?;
    let fk = f.extend_scalars(&split)?;
    let cpk = cp.extend(&split)?;
    let mut eigenvalues: Vec<(Elem, usize)> = poly_factor(&cpk)
        .into_iter()
        .map(|(lin, e)| (split.neg(lin.coeff(0)), e))
        .collect();
    eigenvalues.sort_by_key(|&(a, _)| a.0);
    let n = f.rows();
    let eigenspaces: Vec<Subspace> = eigenvalues
        .iter()
        .map(|&(a, _)| fk.sub(&Matrix::scalar(&split, n, a)).kernel())
        .collect();
    let mut galois_orbits: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; eigenvalues.len()];
    for i in 0..eigenvalues.len() {
        if assigned[i] {
            continue;
        }
        let orbit = frobenius_orbit(&split, eigenvalues[i].0, &base)?;
        let mut idx: Vec<usize> = orbit
            .iter()
            .map(|&a| eigenvalues.iter().position(|&(b, _)| b == a).ok_or_else(|| Error::InvariantViolation("eigenvalue orbit leaves the spectrum".into())))
            .collect::<Result<_>>()?;
        idx.sort();
        for &j in &idx {
            assigned[j] = true;
        }
        galois_orbits.push(idx);
    }
    let mut orbit_sums = Vec::new();
    let mut rational = Vec::new();
    for orbit in &galois_orbits {
        let sum = orbit.iter().fold(Subspace::zero(&split, n), |acc, &j| acc.sum(&eigenspaces[j]));
        rational.push(rational_form(&sum, &base)?);
        orbit_sums.push(sum);
    }
    Ok(EigenData { element: f.clone(), split, eigenvalues, eigenspaces, galois_orbits, orbit_sums, rational })
}

/// Pairs (alpha, beta) of eigenvalues with b(W_alpha, W_beta) != 0.
///
/// Fails with `PairingViolation` if such a pair has alpha beta != 1, or if
/// b restricted to W_alpha x W_{alpha^-1} is not a perfect pairing.
pub fn pairing_check(e: &EigenData, space: &QuadraticSpace) -> Result<Vec<(Elem, Elem)>> {
    if !space.is_isometry(&e.element)? {
        return Err(Error::NotIsometry);
    }
    let k = &e.split;
    let gram = space.gram().extend_scalars(k)?;
    let mut pairs = Vec::new();
    for (i, &(a, _)) in e.eigenvalues.iter().enumerate() {
        for (j, &(b, _)) in e.eigenvalues.iter().enumerate() {
            let m = e.eigenspaces[i].basis().mul(&gram).mul(&e.eigenspaces[j].basis().transpose());
            let product_is_one = k.mul(a, b) == Elem::ONE;
            if product_is_one {
                if !m.is_square() || !m.is_invertible() {
                    return Err(Error::PairingViolation(format!(
                        "b is degenerate on W_{} x W_{}",
                        k.render(a),
                        k.render(b)
                    )));
                }
                pairs.push((a, b));
            } else if !m.is_zero() {
                return Err(Error::PairingViolation(format!(
                    "b(W_{}, W_{}) != 0 although the eigenvalue product is not 1",
                    k.render(a),
                    k.render(b)
                )));
            }
        }
        if e.index_of(k.inv(a)?).is_none() {
            return Err(Error::PairingViolation(format!("inverse of eigenvalue {} is not an eigenvalue", k.render(a))));
        }
    }
    Ok(pairs)
}

/// Homogeneous components through the splitting field: joint eigenspaces of
/// the generators over a common splitting field, grouped by Frobenius orbits
/// of their character tuples and descended to the base field.
pub fn eigen_components(l: &MatrixGroup) -> Result<Vec<Subspace>> {
    if !l.is_abelian() {
        return Err(Error::NotAbelian);
    }
    check_coprime(l)?;
    let base = l.field().clone();
    let n = l.dim();
    let gens = l.gens();
    if gens.is_empty() {
        return Ok(vec![Subspace::full(&base, n)]);
    }
    let mut degree = 1u64;
    for g in gens {
        for (p, _) in poly_factor(&charpoly(g)?) {
            degree = lcm(degree, p.degree().unwrap_or(1) as u64);
        }
    }
    let k = Field::extension_of(&base, degree as u32)?;
    let gk: Vec<Matrix> = gens.iter().map(|g| g.extend_scalars(&k)).collect::<Result<_>>()?;
    // Joint eigenspaces keyed by character tuples.
    let mut joint: BTreeMap<Vec<u32>, Subspace> = BTreeMap::new();
    joint.insert(vec![], Subspace::full(&k, n));
    for (g, gb) in gk.iter().zip(gens) {
        let cp = charpoly(gb)?.extend(&k)?;
        let roots: Vec<Elem> = poly_factor(&cp).into_iter().map(|(lin, _)| k.neg(lin.coeff(0))).collect();
        let mut next = BTreeMap::new();
        for (key, w) in joint {
            for &a in &roots {
                let e = g.sub(&Matrix::scalar(&k, n, a)).kernel();
                let part = w.intersect(&e);
                if !part.is_zero() {
                    let mut key2 = key.clone();
                    key2.push(a.0);
                    next.insert(key2, part);
                }
            }
        }
        joint = next;
    }
    let total: usize = joint.values().map(|w| w.dim()).sum();
    if total != n {
        return Err(Error::NotSemisimple);
    }
    let q = base.order() as u64;
    let mut done: Vec<Vec<u32>> = Vec::new();
    let mut comps = Vec::new();
    for key in joint.keys() {
        if done.contains(key) {
            continue;
        }
        let mut sum = Subspace::zero(&k, n);
        let mut cur = key.clone();
        loop {
            done.push(cur.clone());
            sum = sum.sum(&joint[&cur]);
            cur = cur.iter().map(|&a| k.pow(Elem(a), q).0).collect();
            if cur == *key {
                break;
            }
        }
        comps.push(rational_form(&sum, &base)?);
    }
    comps.sort();
    Ok(comps)
}

/// Turns homogeneous components into an orthogonal decomposition, or
/// reports how they fail to be one.
///
/// A single component gives the trivial decomposition. Several components
/// must each be nondegenerate and pairwise orthogonal; isotropic components
/// (V = W + W*) are a `ParityViolation`, which cannot happen for odd n.
pub fn zalesski_dichotomy_check(components: &[Subspace], space: &QuadraticSpace, n_odd: bool) -> Result<OrthoDecomposition> {
    if components.is_empty() {
        return Err(Error::InvalidDecomposition("no components".into()));
    }
    if components.len() == 1 {
        return Ok(OrthoDecomposition::trivial(space));
    }
    for (i, w) in components.iter().enumerate() {
        if !space.is_nondegenerate_on(w) {
            let partner = components.iter().position(|u| u != w && !space.are_orthogonal(w, u));
            let msg = match partner {
                Some(j) => format!("component {} is degenerate and pairs with component {}", i + 1, j + 1),
                None => format!("component {} is degenerate", i + 1),
            };
            let msg = if n_odd { format!("{msg}; impossible in odd dimension") } else { msg };
            return Err(Error::ParityViolation(msg));
        }
        for (j, u) in components.iter().enumerate().skip(i + 1) {
            if !space.are_orthogonal(w, u) {
                return Err(Error::ParityViolation(format!("components {} and {} are not orthogonal", i + 1, j + 1)));
            }
        }
    }
    OrthoDecomposition::new(space, components.to_vec())
}

/// gcd of the element orders of a group, and whether it is prime to p.
pub fn is_coprime_order(group: &MatrixGroup) -> Result<bool> {
    let p = group.field().characteristic() as u64;
    Ok(gcd(group.order()? as u64, p) == 1)
}
