use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Elements of a finite group that can be multiplied, inverted and hashed.
pub trait GroupElement: Clone + Eq + Hash + Debug {
    /// `self * rhs`
    fn compose(&self, rhs: &Self) -> Self;
    fn invert(&self) -> Self;
    fn identity_like(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    fn conjugate_by(&self, x: &Self) -> Self {
        x.invert().compose(self).compose(x)
    }

    fn commutator(&self, other: &Self) -> Self {
        self.invert().compose(&other.invert()).compose(self).compose(other)
    }

    fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.compose(self);
            k += 1;
        }
        k
    }
}

/// Full element list of a finite group with a membership index.
#[derive(Clone, Debug)]
pub struct Enumeration<T: GroupElement> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    /// For every element but the identity: (i, k) with element = elements[i] * gens[k].
    parents: Vec<(usize, usize)>,
    /// `right[x * ngens + k]` is the index of elements[x] * gens[k].
    right: Vec<usize>,
    ngens: usize,
}

impl<T: GroupElement> Enumeration<T> {
    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index.contains_key(x)
    }

    /// (parent index, generator index) for element `i > 0`.
    pub fn parent(&self, i: usize) -> (usize, usize) {
        self.parents[i]
    }

    /// Index of elements[x] * gens[k].
    pub fn right_mul(&self, x: usize, k: usize) -> usize {
        self.right[x * self.ngens + k]
    }

    pub fn num_gens(&self) -> usize {
        self.ngens
    }
}

/// Breadth-first closure of `gens` under right multiplication. In a finite
/// group this is the generated subgroup; the identity comes first.
pub fn closure<T: GroupElement>(identity: &T, gens: &[T], bound: usize) -> Result<Enumeration<T>> {
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut parents = vec![(0, 0)];
    let mut right = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        for (k, g) in gens.iter().enumerate() {
            let y = x.compose(g);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elements.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    let j = elements.len();
                    index.insert(y.clone(), j);
                    elements.push(y);
                    parents.push((head, k));
                    j
                }
            };
            right.push(j);
        }
        head += 1;
    }
    Ok(Enumeration { elements, index, parents, right, ngens: gens.len() })
}

/// Normal closure of ⟨seeds⟩ under conjugation by `conj_by`. Returns a
/// generating set and the enumeration.
pub fn normal_closure<T: GroupElement>(
    identity: &T,
    seeds: &[T],
    conj_by: &[T],
    bound: usize,
) -> Result<(Vec<T>, Enumeration<T>)> {
    let mut gens: Vec<T> = Vec::new();
    let mut current = closure(identity, &gens, bound)?;
    for s in seeds {
        if !current.contains(s) {
            gens.push(s.clone());
            current = closure(identity, &gens, bound)?;
        }
    }
    let mut i = 0;
    while i < gens.len() {
        let h = gens[i].clone();
        for x in conj_by {
            let c = h.conjugate_by(x);
            if !current.contains(&c) {
                gens.push(c);
                current = closure(identity, &gens, bound)?;
            }
        }
        i += 1;
    }
    Ok((gens, current))
}

/// Commutator subgroup: normal closure of the generator commutators.
pub fn derived_subgroup<T: GroupElement>(identity: &T, gens: &[T], bound: usize) -> Result<(Vec<T>, Enumeration<T>)> {
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure(identity, &comms, gens, bound)
}

/// Generating sets of the derived series down to where it stabilizes.
pub fn derived_series_gens<T: GroupElement>(identity: &T, gens: &[T], bound: usize) -> Result<Vec<Vec<T>>> {
    let mut series = vec![gens.to_vec()];
    let mut order = closure(identity, gens, bound)?.len();
    loop {
        let (next, en) = derived_subgroup(identity, series.last().unwrap(), bound)?;
        if en.len() == order {
            break;
        }
        order = en.len();
        series.push(next);
    }
    Ok(series)
}

/// Greedy generating set for a subgroup given by its element list.
pub fn generators_for<T: GroupElement>(identity: &T, elements: &[T], bound: usize) -> Result<Vec<T>> {
    let mut gens = Vec::new();
    let mut current = closure(identity, &gens, bound)?;
    // Prefer elements of large order to keep the set short.
    let mut order_sorted: Vec<&T> = elements.iter().collect();
    order_sorted.sort_by_key(|x| std::cmp::Reverse(x.order()));
    for x in order_sorted {
        if current.len() == elements.len() {
            break;
        }
        if !current.contains(x) {
            gens.push(x.clone());
            current = closure(identity, &gens, bound)?;
        }
    }
    Ok(gens)
}
