//! Groups as multiplication tables over element indices, used for sweeps over
//! the subgroup lattice (conjugacy classes of solvable subgroups, single
//! element overgroups).

use std::collections::{HashSet, VecDeque};

use super::generic::{Enumeration, GroupElement};
use crate::error::{Error, Result};
use crate::field::is_prime;

/// Largest group with a Cayley table.
pub const MAX_INDEXED_ORDER: usize = u16::MAX as usize;

/// Fixed-size set of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bitset(Vec<u64>);

impl Bitset {
    pub fn new(n: usize) -> Bitset {
        Bitset(vec![0; n.div_ceil(64)])
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// A subgroup of an [`IndexedGroup`]: generators plus element set.
#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub gens: Vec<u16>,
    pub set: Bitset,
    pub order: usize,
}

/// Multiplication table of a finite group; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct IndexedGroup {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<u16>,
}

impl IndexedGroup {
    /// Builds the table from an enumeration whose first element is the identity.
    pub fn from_enumeration<T: GroupElement>(en: &Enumeration<T>) -> Result<IndexedGroup> {
        let n = en.len();
        if n > MAX_INDEXED_ORDER {
            return Err(Error::BoundExceeded(MAX_INDEXED_ORDER));
        }
        debug_assert!(en.elements()[0].is_identity());
        // Element j > 0 is parent(j) * g_k, so a_i a_j = (a_i a_parent) g_k:
        // each column follows from an earlier one by right multiplication.
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            table[i * n] = i as u16;
        }
        for j in 1..n {
            let (pj, k) = en.parent(j);
            for i in 0..n {
                let x = table[i * n + pj] as usize;
                table[i * n + j] = en.right_mul(x, k) as u16;
            }
        }
        let mut inv = vec![0u16; n];
        for i in 0..n {
            let j = (0..n).find(|&j| table[i * n + j] == 0).unwrap();
            inv[i] = j as u16;
        }
        let gens = (0..en.num_gens()).map(|k| en.right_mul(0, k) as u16).collect();
        Ok(IndexedGroup { n, table, inv, gens })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Indices of the generators the group was enumerated from.
    pub fn generators(&self) -> &[u16] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// c^-1 a c
    #[inline]
    pub fn conj(&self, a: u16, c: u16) -> u16 {
        self.mul(self.mul(self.inv(c), a), c)
    }

    pub fn element_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn closure(&self, gens: &[u16]) -> SubgroupRecord {
        let mut set = Bitset::new(self.n);
        set.insert(0);
        let mut list = vec![0u16];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y as usize) {
                    list.push(y);
                }
            }
        }
        SubgroupRecord { gens: gens.to_vec(), order: list.len(), set }
    }

    pub fn whole(&self) -> SubgroupRecord {
        let gens: Vec<u16> = (0..self.n as u16).collect();
        let mut rec = self.closure(&[]);
        for g in gens {
            if !rec.set.contains(g as usize) {
                let mut gs = rec.gens.clone();
                gs.push(g);
                rec = self.closure(&gs);
            }
        }
        rec
    }

    pub fn conjugate_set(&self, set: &Bitset, c: u16) -> Bitset {
        let mut out = Bitset::new(self.n);
        for a in set.iter() {
            out.insert(self.conj(a as u16, c) as usize);
        }
        out
    }

    pub fn normalizes(&self, x: u16, h: &SubgroupRecord) -> bool {
        h.gens.iter().all(|&g| h.set.contains(self.conj(g, x) as usize))
    }

    /// Normal closure of `seeds` under conjugation by `by`.
    pub fn normal_closure(&self, seeds: &[u16], by: &[u16]) -> SubgroupRecord {
        let mut rec = self.closure(&[]);
        for &s in seeds {
            if !rec.set.contains(s as usize) {
                let mut gs = rec.gens.clone();
                gs.push(s);
                rec = self.closure(&gs);
            }
        }
        let mut i = 0;
        while i < rec.gens.len() {
            let h = rec.gens[i];
            for &x in by {
                let c = self.conj(h, x);
                if !rec.set.contains(c as usize) {
                    let mut gs = rec.gens.clone();
                    gs.push(c);
                    rec = self.closure(&gs);
                }
            }
            i += 1;
        }
        rec
    }

    pub fn derived_subgroup(&self, h: &SubgroupRecord) -> SubgroupRecord {
        let mut comms = Vec::new();
        for (i, &a) in h.gens.iter().enumerate() {
            for &b in &h.gens[i + 1..] {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms, &h.gens)
    }

    pub fn is_solvable(&self, h: &SubgroupRecord) -> bool {
        let mut cur = h.clone();
        while cur.order > 1 {
            let next = self.derived_subgroup(&cur);
            if next.order == cur.order {
                return false;
            }
            cur = next;
        }
        true
    }

    /// Conjugacy class representatives of all solvable subgroups, found by
    /// cyclic extension: every solvable K has a normal subgroup H of prime
    /// index, and K = <H, x> for any x in K \ H. Extending class
    /// representatives by normalizing elements of prime order modulo H
    /// therefore reaches every class. Sorted by order.
    pub fn solvable_subgroup_classes(&self) -> Vec<SubgroupRecord> {
        let trivial = self.closure(&[]);
        let mut seen: HashSet<Bitset> = HashSet::new();
        seen.insert(trivial.set.clone());
        let mut reps = vec![trivial.clone()];
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for x in 0..self.n as u16 {
                if h.set.contains(x as usize) || !self.normalizes(x, &h) {
                    continue;
                }
                let mut m = 1;
                let mut y = x;
                while !h.set.contains(y as usize) {
                    y = self.mul(y, x);
                    m += 1;
                }
                if !is_prime(m as u32) {
                    continue;
                }
                let mut gens = h.gens.clone();
                gens.push(x);
                let k = self.closure(&gens);
                if seen.contains(&k.set) {
                    continue;
                }
                // The conjugacy class of K is its orbit under conjugation by the generators.
                let mut orbit = vec![k.set.clone()];
                seen.insert(k.set.clone());
                while let Some(set) = orbit.pop() {
                    for &c in &self.gens {
                        let next = self.conjugate_set(&set, c);
                        if seen.insert(next.clone()) {
                            orbit.push(next);
                        }
                    }
                }
                reps.push(k.clone());
                queue.push_back(k);
            }
        }
        reps.sort_by_key(|r| r.order);
        reps
    }

    /// Is some conjugate of `a` contained in `b`?
    pub fn is_subconjugate(&self, a: &SubgroupRecord, b: &SubgroupRecord) -> bool {
        if !b.order.is_multiple_of(a.order) {
            return false;
        }
        (0..self.n as u16).any(|c| a.gens.iter().all(|&g| b.set.contains(self.conj(g, c) as usize)))
    }

    pub fn are_conjugate(&self, a: &SubgroupRecord, b: &SubgroupRecord) -> bool {
        a.order == b.order && self.is_subconjugate(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Perm, PermGroup};

    fn indexed(g: &PermGroup) -> IndexedGroup {
        IndexedGroup::from_enumeration(g.enumerate().unwrap()).unwrap()
    }

    #[test]
    fn s4_solvable_subgroup_classes() {
        // S4 has 11 conjugacy classes of subgroups, all solvable.
        let s4 = PermGroup::symmetric(4);
        let ig = indexed(&s4);
        let classes = ig.solvable_subgroup_classes();
        assert_eq!(classes.len(), 11);
        let orders: Vec<usize> = classes.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
    }

    #[test]
    fn s5_solvable_classes_exclude_a5() {
        // S5 has 19 subgroup classes; A5 and S5 are the non-solvable ones.
        let ig = indexed(&PermGroup::symmetric(5));
        let classes = ig.solvable_subgroup_classes();
        assert_eq!(classes.len(), 17);
        assert!(classes.iter().all(|c| c.order < 60));
        assert!(!ig.is_solvable(&ig.whole()));
    }

    #[test]
    fn conjugacy_tests() {
        let s3 = PermGroup::symmetric(3);
        let ig = indexed(&s3);
        let els = s3.elements().unwrap();
        let idx = |p: &Perm| els.iter().position(|x| x == p).unwrap() as u16;
        let t1 = ig.closure(&[idx(&Perm::cycle(3, &[0, 1]))]);
        let t2 = ig.closure(&[idx(&Perm::cycle(3, &[1, 2]))]);
        assert!(ig.are_conjugate(&t1, &t2));
        let c3 = ig.closure(&[idx(&Perm::cycle(3, &[0, 1, 2]))]);
        assert!(!ig.are_conjugate(&t1, &c3));
        assert!(ig.is_subconjugate(&t1, &ig.whole()));
    }
}
