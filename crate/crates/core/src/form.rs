//! Quadratic spaces over GF(q), q odd, and orthogonal decompositions.
//!
//! The polarization convention is b(u, v) = (Q(u+v) - Q(u) - Q(v)) / 2, so
//! Q(v) = b(v, v) = v^T B v and the Gram matrix carries Q on its diagonal.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::group::{MatrixGroup, Perm, PermGroup};
use crate::linalg::{Matrix, Subspace};

/// Default cap on q^n for the line-decomposition enumerator.
pub const DEFAULT_LINE_ENUMERATION_LIMIT: u64 = 1_000_000;

/// A nondegenerate quadratic space (F^n, Q) given by its symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpace {
    gram: Matrix,
}

impl QuadraticSpace {
    pub fn new(gram: Matrix) -> Result<QuadraticSpace> {
        if gram.field().characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(QuadraticSpace { gram })
    }

    /// Gram matrix from integer rows over GF(p). Characteristic 2 is refused
    /// before any field is built.
    pub fn from_ints(p: u32, rows: &[&[i64]]) -> Result<QuadraticSpace> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let f = Field::prime(p)?;
        QuadraticSpace::new(Matrix::from_ints(&f, rows))
    }

    /// The form with Gram matrix I_n.
    pub fn standard(field: &Field, n: usize) -> Result<QuadraticSpace> {
        QuadraticSpace::new(Matrix::identity(field, n))
    }

    /// The form with Gram matrix c I_n.
    pub fn scalar(field: &Field, n: usize, c: Elem) -> Result<QuadraticSpace> {
        QuadraticSpace::new(Matrix::scalar(field, n, c))
    }

    pub fn field(&self) -> &Field {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn b(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = self.field();
        u.iter().zip(self.gram.apply(v)).fold(Elem::ZERO, |acc, (&a, b)| f.add(acc, f.mul(a, b)))
    }

    pub fn q(&self, v: &[Elem]) -> Elem {
        self.b(v, v)
    }

    /// g^T B g = B, which in odd characteristic is Q(gv) = Q(v) for all v.
    pub fn is_isometry(&self, g: &Matrix) -> Result<bool> {
        if g.rows() != self.dim() || g.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: g.rows() });
        }
        Ok(g.transpose().mul(&self.gram).mul(g) == self.gram)
    }

    /// Always zero for a constructed space; see [`radical`] for raw Gram matrices.
    pub fn radical(&self) -> Subspace {
        radical(&self.gram)
    }

    /// Gram matrix of the restriction to `w` in its canonical basis.
    pub fn restrict(&self, w: &Subspace) -> Result<QuadraticSpace> {
        let basis = w.basis();
        QuadraticSpace::new(basis.mul(&self.gram).mul(&basis.transpose()))
    }

    pub fn is_nondegenerate_on(&self, w: &Subspace) -> bool {
        let basis = w.basis();
        basis.mul(&self.gram).mul(&basis.transpose()).is_invertible()
    }

    pub fn are_orthogonal(&self, u: &Subspace, w: &Subspace) -> bool {
        u.basis().mul(&self.gram).mul(&w.basis().transpose()).is_zero()
    }

    /// Same Gram matrix over an extension field (nondegeneracy is preserved).
    pub fn extend_scalars(&self, ext: &Field) -> Result<QuadraticSpace> {
        Ok(QuadraticSpace { gram: self.gram.extend_scalars(ext)? })
    }

    /// Reflection in an anisotropic vector: x -> x - 2 b(x,v)/Q(v) v.
    pub fn reflection(&self, v: &[Elem]) -> Result<Matrix> {
        let f = self.field();
        let qv = self.q(v);
        if qv.is_zero() {
            return Err(Error::InvalidInput("reflection vector is isotropic".into()));
        }
        let n = self.dim();
        let coef = f.div(f.from_int(2), qv)?;
        // columns: r(e_j) = e_j - coef * b(e_j, v) * v
        let bv = self.gram.apply(v);
        let mut m = Matrix::identity(f, n);
        for j in 0..n {
            let s = f.mul(coef, bv[j]);
            for i in 0..n {
                let val = f.sub(m.get(i, j), f.mul(s, v[i]));
                m.set(i, j, val);
            }
        }
        Ok(m)
    }

    /// The full isometry group, generated by reflections in the anisotropic
    /// vectors (canonical line representatives).
    pub fn isometry_group(&self) -> Result<MatrixGroup> {
        self.isometry_group_with_bound(crate::group::DEFAULT_BOUND)
    }

    pub fn isometry_group_with_bound(&self, bound: usize) -> Result<MatrixGroup> {
        let f = self.field();
        let n = self.dim();
        // Greedy: keep a reflection only if it enlarges the group so far.
        let id = Matrix::identity(f, n);
        let mut gens: Vec<Matrix> = Vec::new();
        let mut current = crate::group::generic::closure(&id, &gens, bound)?;
        for v in projective_points(f, n, DEFAULT_LINE_ENUMERATION_LIMIT)? {
            if self.q(&v).is_zero() {
                continue;
            }
            let r = self.reflection(&v)?;
            if !current.contains(&r) {
                gens.push(r);
                current = crate::group::generic::closure(&id, &gens, bound)?;
            }
        }
        let g = MatrixGroup::new(f, n, gens)?.with_bound(bound);
        g.order()?;
        Ok(g)
    }

    /// Returns (P, c) with P^T B P = c I_n.
    ///
    /// Orthogonal basis by Gram-Schmidt (candidates: the current complement's
    /// basis vectors, then pairwise sums), each vector rescaled so its Q-value
    /// is 1 or the least non-square, then pairs in the wrong square class
    /// are rotated into the target class. The target c is 1 when the
    /// discriminant is a square and the least non-square otherwise.
    pub fn diagonalize_scalar(&self) -> Result<(Matrix, Elem)> {
        let n = self.dim();
        if n.is_multiple_of(2) {
            return Err(Error::EvenDimension);
        }
        let f = self.field().clone();
        let mut complement = Subspace::full(&f, n);
        let mut basis: Vec<Vec<Elem>> = Vec::new();
        while !complement.is_zero() {
            let cand = complement.basis_vectors();
            let mut pick = cand.iter().find(|v| !self.q(v).is_zero()).cloned();
            if pick.is_none() {
                'outer: for i in 0..cand.len() {
                    for j in i + 1..cand.len() {
                        let s: Vec<Elem> = cand[i].iter().zip(&cand[j]).map(|(&a, &b)| f.add(a, b)).collect();
                        if !self.q(&s).is_zero() {
                            pick = Some(s);
                            break 'outer;
                        }
                    }
                }
            }
            let v = pick.ok_or(Error::DegenerateForm)?;
            let line = Subspace::from_vectors(&f, n, std::slice::from_ref(&v));
            complement = complement.intersect(&line.perp(&self.gram));
            basis.push(v);
        }
        let nu = f.least_nonsquare();
        // Normalize each Q-value to 1 or nu.
        for v in basis.iter_mut() {
            let a = self.q(v);
            let target = if f.is_square(a)? { Elem::ONE } else { nu };
            let t = f.sqrt(f.div(target, a)?).expect("same square class");
            for x in v.iter_mut() {
                *x = f.mul(*x, t);
            }
        }
        let disc = basis.iter().fold(Elem::ONE, |acc, v| f.mul(acc, self.q(v)));
        let c = if f.is_square(disc)? { Elem::ONE } else { nu };
        let other = if c == Elem::ONE { nu } else { Elem::ONE };
        // Solve other * (x^2 + y^2) = c once; (x, y) and (-y, x) then map a
        // pair <other, other> to <c, c>.
        let ratio = f.div(c, other)?;
        let (x, y) = f
            .elements()
            .find_map(|x| f.sqrt(f.sub(ratio, f.mul(x, x))).map(|y| (x, y)))
            .expect("every element is a sum of two squares in a finite field");
        let wrong: Vec<usize> = (0..n).filter(|&i| self.q(&basis[i]) != c).collect();
        debug_assert!(wrong.len().is_multiple_of(2));
        for pair in wrong.chunks(2) {
            let (u, w) = (basis[pair[0]].clone(), basis[pair[1]].clone());
            let comb = |a: Elem, b: Elem| -> Vec<Elem> { u.iter().zip(&w).map(|(&s, &t)| f.add(f.mul(a, s), f.mul(b, t))).collect() };
            basis[pair[0]] = comb(x, y);
            basis[pair[1]] = comb(f.neg(y), x);
        }
        let p = Matrix::from_columns(&f, &basis);
        debug_assert_eq!(p.transpose().mul(&self.gram).mul(&p), Matrix::scalar(&f, n, c));
        Ok((p, c))
    }
}

/// Kernel of a (possibly degenerate) symmetric Gram matrix.
pub fn radical(gram: &Matrix) -> Subspace {
    gram.kernel()
}

/// Canonical representatives of the points of PG(n-1, q): first nonzero
/// coordinate 1, in lexicographic order.
pub fn projective_points(field: &Field, n: usize, limit: u64) -> Result<Vec<Vec<Elem>>> {
    let q = field.order() as u64;
    let total = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > limit {
        return Err(Error::TooLarge(format!("q^n = {total} exceeds {limit}")));
    }
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        for code in 0..q.pow(tail as u32) {
            let mut v = vec![Elem::ZERO; n];
            v[lead] = Elem::ONE;
            let mut c = code;
            for i in (lead + 1..n).rev() {
                v[i] = Elem((c % q) as u32);
                c /= q;
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// V = W_1 ⊥ ... ⊥ W_k with nondegenerate parts of equal dimension, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoDecomposition {
    space: QuadraticSpace,
    parts: Vec<Subspace>,
}

impl OrthoDecomposition {
    pub fn new(space: &QuadraticSpace, mut parts: Vec<Subspace>) -> Result<OrthoDecomposition> {
        let n = space.dim();
        if parts.is_empty() {
            return Err(Error::InvalidDecomposition("no parts".into()));
        }
        let d = parts[0].dim();
        if d == 0 || parts.iter().any(|w| w.dim() != d || w.ambient_dim() != n) || d * parts.len() != n {
            return Err(Error::InvalidDecomposition("parts must share one positive dimension d with d k = n".into()));
        }
        for (i, w) in parts.iter().enumerate() {
            if !space.is_nondegenerate_on(w) {
                return Err(Error::InvalidDecomposition(format!("part {i} is degenerate")));
            }
            for u in &parts[i + 1..] {
                if !space.are_orthogonal(w, u) {
                    return Err(Error::InvalidDecomposition("parts are not pairwise orthogonal".into()));
                }
            }
        }
        // Orthogonal nondegenerate parts of total dimension n sum directly to V.
        parts.sort();
        Ok(OrthoDecomposition { space: space.clone(), parts })
    }

    pub fn trivial(space: &QuadraticSpace) -> OrthoDecomposition {
        OrthoDecomposition { space: space.clone(), parts: vec![Subspace::full(space.field(), space.dim())] }
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_dim(&self) -> usize {
        self.parts[0].dim()
    }

    /// Index j with g(W_i) = W_j.
    pub fn image_index(&self, g: &Matrix, i: usize) -> Option<usize> {
        let img = self.parts[i].image(g);
        self.parts.binary_search(&img).ok()
    }

    /// The permutation induced by `g` on the parts.
    pub fn induced_permutation(&self, g: &Matrix) -> Result<Perm> {
        let images = (0..self.parts.len())
            .map(|i| self.image_index(g, i).ok_or_else(|| Error::NotInvariant(format!("image of part {} is not a part", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Perm::new(images)
    }
}

/// Checks that every generator permutes the parts; returns the induced
/// permutation group with generator images aligned to `group.gens()`.
pub fn validate_decomposition(d: &OrthoDecomposition, group: &MatrixGroup) -> Result<PermGroup> {
    if group.dim() != d.space().dim() {
        return Err(Error::DimensionMismatch { expected: d.space().dim(), got: group.dim() });
    }
    let images = group.gens().iter().map(|g| d.induced_permutation(g)).collect::<Result<Vec<_>>>()?;
    PermGroup::new(d.len(), images)
}

/// Every unordered set of n pairwise orthogonal anisotropic lines (each
/// reported once, parts sorted canonically), by clique search over PG(n-1, q).
pub fn all_ortho_line_decompositions(space: &QuadraticSpace, limit: u64) -> Result<Vec<OrthoDecomposition>> {
    let f = space.field();
    let n = space.dim();
    let lines: Vec<Vec<Elem>> = projective_points(f, n, limit)?.into_iter().filter(|v| !space.q(v).is_zero()).collect();
    let m = lines.len();
    let adj: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| i != j && space.b(&lines[i], &lines[j]).is_zero()).collect()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend(adj: &[Vec<bool>], n: usize, start: usize, stack: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        if stack.len() == n {
            found.push(stack.clone());
            return;
        }
        for c in start..adj.len() {
            if stack.iter().all(|&s| adj[s][c]) {
                stack.push(c);
                extend(adj, n, c + 1, stack, found);
                stack.pop();
            }
        }
    }
    let mut found = Vec::new();
    extend(&adj, n, 0, &mut stack, &mut found);
    for clique in found {
        let parts = clique.iter().map(|&i| Subspace::from_vectors(f, n, &[lines[i].clone()])).collect();
        out.push(OrthoDecomposition::new(space, parts)?);
    }
    Ok(out)
}

/// Basis of the space of symmetric matrices B with g^T B g = B for every g.
pub fn invariant_symmetric_forms(field: &Field, n: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let mut unknowns = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = Matrix::zeros(field, n, n);
            e.set(i, j, Elem::ONE);
            e.set(j, i, Elem::ONE);
            unknowns.push(e);
        }
    }
    if gens.is_empty() {
        return unknowns;
    }
    let cols: Vec<Vec<Elem>> = unknowns
        .iter()
        .map(|e| gens.iter().flat_map(|g| g.transpose().mul(e).mul(g).sub(e).data().to_vec()).collect())
        .collect();
    Matrix::from_columns(field, &cols)
        .kernel()
        .basis_vectors()
        .into_iter()
        .map(|c| {
            c.iter().zip(&unknowns).fold(Matrix::zeros(field, n, n), |acc, (&ci, e)| if ci.is_zero() { acc } else { acc.add(&e.scale(ci)) })
        })
        .collect()
}

/// An invariant nondegenerate symmetric form, searching the solution space
/// of [`invariant_symmetric_forms`] exhaustively (at most `limit` candidates).
pub fn find_invariant_form(field: &Field, n: usize, gens: &[Matrix], limit: u64) -> Result<Option<Matrix>> {
    let basis = invariant_symmetric_forms(field, n, gens);
    if let Some(b) = basis.iter().find(|b| b.is_invertible()) {
        return Ok(Some(b.clone()));
    }
    let q = field.order() as u64;
    let total = q.checked_pow(basis.len() as u32).unwrap_or(u64::MAX);
    if total > limit {
        return Err(Error::TooLarge(format!("{total} candidate forms exceed {limit}")));
    }
    for code in 1..total {
        let mut c = code;
        let mut acc = Matrix::zeros(field, n, n);
        for b in &basis {
            acc = acc.add(&b.scale(Elem((c % q) as u32)));
            c /= q;
        }
        if acc.is_invertible() {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

/// The orthogonal line decompositions preserved by `group`.
pub fn invariant_line_decompositions(group: &MatrixGroup, space: &QuadraticSpace, limit: u64) -> Result<Vec<OrthoDecomposition>> {
    Ok(all_ortho_line_decompositions(space, limit)?
        .into_iter()
        .filter(|d| validate_decomposition(d, group).is_ok())
        .collect())
}
