use std::fmt;
use std::sync::OnceLock;

use super::generic::{self, Enumeration, GroupElement};
use crate::error::{Error, Result};

/// A permutation of {0, ..., n-1}; `images[i]` is the image of i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// Single cycle on the given points.
    pub fn cycle(n: usize, points: &[usize]) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &a) in points.iter().enumerate() {
            images[a] = points[(i + 1) % points.len()];
        }
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Disjoint cycle notation, 1-based.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![];
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push((x + 1).to_string());
                x = self.0[x];
            }
            out.push_str(&format!("({})", cyc.join(",")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

impl GroupElement for Perm {
    /// Functions compose right to left: (a * b)(i) = a(b(i)), matching
    /// matrix multiplication of permutation matrices.
    fn compose(&self, rhs: &Self) -> Self {
        Perm(rhs.0.iter().map(|&i| self.0[i]).collect())
    }

    fn invert(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.0.len())
    }
}

/// A permutation group on {0, ..., degree-1} given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    bound: usize,
    enumeration: OnceLock<Enumeration<Perm>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup { degree: self.degree, gens: self.gens.clone(), bound: self.bound, enumeration: self.enumeration.clone() }
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch { expected: degree, got: g.degree() });
        }
        Ok(PermGroup { degree, gens, bound: super::DEFAULT_BOUND, enumeration: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![]).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let pts: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![Perm::cycle(n, &pts)]).unwrap()
    }

    pub fn dihedral(n: usize) -> PermGroup {
        let pts: Vec<usize> = (0..n).collect();
        let refl = Perm((0..n).map(|i| (n - i) % n).collect());
        PermGroup::new(n, vec![Perm::cycle(n, &pts), refl]).unwrap()
    }

    pub fn symmetric(n: usize) -> PermGroup {
        if n < 2 {
            return PermGroup::trivial(n);
        }
        let pts: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![Perm::cycle(n, &pts), Perm::cycle(n, &[0, 1])]).unwrap()
    }

    /// x -> a x + b on Z/p with a ranging over the subgroup of order `a_order`.
    pub fn affine(p: usize, a_order: usize) -> Result<PermGroup> {
        if !crate::field::is_prime(p as u32) || !(p - 1).is_multiple_of(a_order) {
            return Err(Error::InvalidInput(format!("no affine group of degree {p} with multiplier order {a_order}")));
        }
        let translation = Perm((0..p).map(|x| (x + 1) % p).collect());
        let a = (1..p).find(|&a| (1..=a_order).find(|&k| mod_pow(a, k, p) == 1) == Some(a_order)).unwrap();
        let mult = Perm((0..p).map(|x| (a * x) % p).collect());
        PermGroup::new(p, vec![translation, mult])
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self.enumeration = OnceLock::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn enumerate(&self) -> Result<&Enumeration<Perm>> {
        if let Some(e) = self.enumeration.get() {
            return Ok(e);
        }
        let e = generic::closure(&self.identity(), &self.gens, self.bound)?;
        let _ = self.enumeration.set(e);
        Ok(self.enumeration.get().unwrap())
    }

    pub fn elements(&self) -> Result<&[Perm]> {
        Ok(self.enumerate()?.elements())
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.enumerate()?.len())
    }

    pub fn contains(&self, x: &Perm) -> Result<bool> {
        Ok(self.enumerate()?.contains(x))
    }

    /// Orbit of a point under the generators.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.gens {
                let y = g.apply(x);
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        generic::derived_series_gens(&self.identity(), &self.gens, self.bound)?
            .into_iter()
            .map(|gens| PermGroup::new(self.degree, gens).map(|g| g.with_bound(self.bound)))
            .collect()
    }

    pub fn is_solvable(&self) -> Result<bool> {
        let series = self.derived_series()?;
        Ok(series.last().unwrap().order()? == 1)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|a| self.gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

fn mod_pow(a: usize, k: usize, p: usize) -> usize {
    (0..k).fold(1, |acc, _| acc * a % p)
}

/// The transitive-permutation check on a bare generator list.
pub fn transitivity(k: &PermGroup) -> bool {
    k.is_transitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        assert_eq!(PermGroup::symmetric(3).order().unwrap(), 6);
        assert_eq!(PermGroup::symmetric(5).order().unwrap(), 120);
        assert_eq!(PermGroup::dihedral(5).order().unwrap(), 10);
        assert_eq!(PermGroup::affine(5, 4).unwrap().order().unwrap(), 20);
        assert_eq!(PermGroup::affine(7, 3).unwrap().order().unwrap(), 21);
        assert!(PermGroup::cyclic(3).is_transitive());
        assert!(!PermGroup::trivial(3).is_transitive());
    }

    #[test]
    fn solvability() {
        assert!(PermGroup::symmetric(4).is_solvable().unwrap());
        assert!(!PermGroup::symmetric(5).is_solvable().unwrap());
        let series = PermGroup::symmetric(3).derived_series().unwrap();
        let orders: Vec<usize> = series.iter().map(|g| g.order().unwrap()).collect();
        assert_eq!(orders, vec![6, 3, 1]);
    }

    #[test]
    fn composition_matches_matrices() {
        use crate::field::Field;
        use crate::linalg::Matrix;
        let f = Field::prime(5).unwrap();
        let a = Perm::cycle(3, &[0, 1, 2]);
        let b = Perm::cycle(3, &[0, 1]);
        let ab = a.compose(&b);
        let ma = Matrix::permutation(&f, a.images());
        let mb = Matrix::permutation(&f, b.images());
        assert_eq!(Matrix::permutation(&f, ab.images()), ma.mul(&mb));
        assert_eq!(a.cycle_string(), "(1,2,3)");
    }
}
