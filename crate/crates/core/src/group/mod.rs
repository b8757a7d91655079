//! Finite groups as Cayley tables.
//!
//! Elements are dense indices `0..n`. The full `n × n` product table is
//! stored with 16-bit entries, so `n` is limited to 65535. A [`Group`] is an
//! immutable, reference-counted value: cloning it is cheap and clones share
//! the same table.

mod families;
mod ingest;
mod structure;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub use families::{
    construct_family, cyclic_semidirect, direct_product, semidirect_product, Family, NAMED_GROUPS,
};
pub use ingest::{parse_cycles, GroupSource, Permutation};
pub use structure::{
    center, derived_length, derived_series, derived_subgroup, is_solvable, quotient,
    solvable_radical, structural_invariants, upper_central_series, DerivedSeries, Quotient,
    StructuralInvariants,
};

/// Element index.
pub type Elem = usize;

pub const MAX_TABLE_ORDER: usize = u16::MAX as usize;

/// Associativity checking policy for tables that do not come from a formula.
#[derive(Clone, Copy, Debug)]
pub struct Validation {
    /// Orders up to this are checked on all `n³` triples.
    pub full_assoc_limit: usize,
    /// Number of random triples checked above the limit.
    pub spot_checks: usize,
    pub seed: u64,
}

impl Default for Validation {
    fn default() -> Self {
        Self {
            full_assoc_limit: 256,
            spot_checks: 100_000,
            seed: 0x5eed_a1f1,
        }
    }
}

struct Inner {
    label: String,
    n: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<u16>,
    orders: Vec<u32>,
    assoc_seed: Option<u64>,
}

#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({:?}, order {})", self.inner.label, self.inner.n)
    }
}

impl Group {
    /// Builds a group from a row-major product table and validates every
    /// group axiom.
    pub fn from_table(
        label: impl Into<String>,
        n: usize,
        table: &[Elem],
        v: Validation,
    ) -> Result<Self> {
        let label = label.into();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {n} outside 1..={MAX_TABLE_ORDER}"
            )));
        }
        if table.len() != n * n {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let t: Vec<u16> = table.iter().map(|&x| x as u16).collect();
        let at = |a: usize, b: usize| t[a * n + b] as usize;

        // Latin square.
        let mut seen = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let k = at(i, j);
                if seen[k] == 2 * i + 1 {
                    return Err(Error::InvalidGroup(format!("row {i} repeats {k}")));
                }
                seen[k] = 2 * i + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for j in 0..n {
            for i in 0..n {
                let k = at(i, j);
                if seen[k] == 2 * j + 2 {
                    return Err(Error::InvalidGroup(format!("column {j} repeats {k}")));
                }
                seen[k] = 2 * j + 2;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverse = vec![0u16; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            let y = (0..n)
                .find(|&y| at(x, y) == identity)
                .expect("latin row contains identity");
            if at(y, x) != identity {
                return Err(Error::InvalidGroup(format!("inverse of {x} is one-sided")));
            }
            *inv = y as u16;
        }

        let assoc_seed = if n <= v.full_assoc_limit {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
            None
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(v.seed);
            for _ in 0..v.spot_checks {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::InvalidGroup(format!(
                        "not associative at ({a},{b},{c})"
                    )));
                }
            }
            Some(v.seed)
        };

        let mut orders = vec![0u32; n];
        for (x, ord) in orders.iter_mut().enumerate() {
            let mut y = x;
            let mut k = 1;
            while y != identity {
                y = at(y, x);
                k += 1;
            }
            *ord = k;
        }

        Ok(Self {
            inner: Arc::new(Inner {
                label,
                n,
                table: t,
                identity,
                inverse,
                orders,
                assoc_seed,
            }),
        })
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Same table under a different label.
    pub fn relabel(&self, label: impl Into<String>) -> Self {
        let i = &self.inner;
        Self {
            inner: Arc::new(Inner {
                label: label.into(),
                n: i.n,
                table: i.table.clone(),
                identity: i.identity,
                inverse: i.inverse.clone(),
                orders: i.orders.clone(),
                assoc_seed: i.assoc_seed,
            }),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.n
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.inner.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.table[a * self.inner.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inner.inverse[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> u64 {
        self.inner.orders[a] as u64
    }

    /// Seed of the randomized associativity spot-check, if one was used.
    pub fn assoc_seed(&self) -> Option<u64> {
        self.inner.assoc_seed
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.inner.n
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let k = k % self.elem_order(a);
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `x^g = g⁻¹·x·g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x⁻¹·y⁻¹·x·y`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Row-major table as plain indices.
    pub fn table(&self) -> Vec<Elem> {
        self.inner.table.iter().map(|&x| x as usize).collect()
    }

    pub fn same_table(&self, other: &Group) -> bool {
        self.inner.n == other.inner.n && self.inner.table == other.inner.table
    }

    /// Exponent: lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.elements()
            .fold(1, |acc, x| crate::numtheory::lcm(acc, self.elem_order(x)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements()
            .any(|x| self.elem_order(x) as usize == self.order())
    }

    /// Conjugacy class of `x`, sorted.
    pub fn conjugacy_class(&self, x: Elem) -> Vec<Elem> {
        let mut mark = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            let y = self.conj(x, g);
            if !mark[y] {
                mark[y] = true;
                out.push(y);
            }
        }
        out.sort_unstable();
        out
    }

    /// All conjugacy classes, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut done = vec![false; self.order()];
        let mut out = Vec::new();
        for x in self.elements() {
            if !done[x] {
                let c = self.conjugacy_class(x);
                c.iter().for_each(|&y| done[y] = true);
                out.push(c);
            }
        }
        out
    }
}

/// Subgroup of a parent group, stored as a sorted member list plus a
/// membership mask.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Group,
    members: Vec<Elem>,
    mask: Vec<bool>,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.parent.same_table(&other.parent)
    }
}

impl Subgroup {
    pub fn trivial(g: &Group) -> Self {
        Self::from_sorted(g, vec![g.identity()])
    }

    pub fn whole(g: &Group) -> Self {
        Self::from_sorted(g, g.elements().collect())
    }

    fn from_sorted(g: &Group, members: Vec<Elem>) -> Self {
        let mut mask = vec![false; g.order()];
        members.iter().for_each(|&x| mask[x] = true);
        let gens = members
            .iter()
            .copied()
            .filter(|&x| x != g.identity())
            .collect();
        Self {
            parent: g.clone(),
            members,
            mask,
            gens,
        }
    }

    /// Checks closure and returns the subgroup with the given members.
    pub fn from_members(g: &Group, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut m: Vec<Elem> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        let s = Self::from_sorted(g, m);
        if !s.contains(g.identity()) {
            return Err(Error::InvalidGroup("subgroup misses the identity".into()));
        }
        for &a in &s.members {
            if !s.contains(g.inv(a)) || s.members.iter().any(|&b| !s.contains(g.mul(a, b))) {
                return Err(Error::InvalidGroup("member set is not closed".into()));
            }
        }
        if !g.order().is_multiple_of(s.order()) {
            return Err(Error::InvalidGroup(
                "subgroup order does not divide group order".into(),
            ));
        }
        Ok(s)
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &Group, gens: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::from_sorted(g, vec![g.identity()]);
        s.extend(gens);
        s
    }

    /// Enlarges `self` to the subgroup generated by it and `extra`
    /// (Dimino's coset closure).
    pub fn extend(&mut self, extra: impl IntoIterator<Item = Elem>) {
        let g = self.parent.clone();
        for s in extra {
            if self.mask[s] {
                continue;
            }
            self.gens.push(s);
            let base: Vec<Elem> = self.members.clone();
            let mut reps = vec![g.identity()];
            let mut head = 0;
            let add_coset = |r: Elem, mask: &mut Vec<bool>, members: &mut Vec<Elem>| {
                for &h in &base {
                    let y = g.mul(h, r);
                    mask[y] = true;
                    members.push(y);
                }
            };
            add_coset(s, &mut self.mask, &mut self.members);
            reps.push(s);
            while head < reps.len() {
                let r = reps[head];
                head += 1;
                for i in 0..self.gens.len() {
                    let y = g.mul(r, self.gens[i]);
                    if !self.mask[y] {
                        add_coset(y, &mut self.mask, &mut self.members);
                        reps.push(y);
                    }
                }
            }
        }
        self.members.sort_unstable();
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.elements()
            .all(|x| self.members.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    /// Smallest normal subgroup of the parent containing `self`.
    pub fn normal_closure(&self) -> Subgroup {
        normal_closure(&self.parent, self.members.iter().copied())
    }

    /// The subgroup as a group in its own right, with elements re-indexed in
    /// increasing parent order. Returns the group and the embedding table.
    pub fn as_group(&self) -> (Group, Vec<Elem>) {
        let g = &self.parent;
        let m = self.order();
        let mut index = vec![usize::MAX; g.order()];
        for (i, &x) in self.members.iter().enumerate() {
            index[x] = i;
        }
        let mut table = Vec::with_capacity(m * m);
        for &a in &self.members {
            for &b in &self.members {
                table.push(index[g.mul(a, b)]);
            }
        }
        let label = format!("{}<{}>", g.label(), m);
        let sub = Group::from_table(
            label,
            m,
            &table,
            Validation {
                full_assoc_limit: 0,
                spot_checks: 0,
                seed: 0,
            },
        )
        .expect("closed subset of a group is a group");
        (sub, self.members.clone())
    }
}

/// Normal closure of a set of elements.
pub fn normal_closure(g: &Group, elems: impl IntoIterator<Item = Elem>) -> Subgroup {
    let mut s = Subgroup::trivial(g);
    for x in elems {
        if s.contains(x) {
            continue;
        }
        let conjugates: Vec<Elem> = g.elements().map(|h| g.conj(x, h)).collect();
        s.extend(conjugates);
    }
    s
}

/// Homomorphism given by an image table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Group,
    pub target: Group,
    pub images: Vec<Elem>,
}

impl GroupHom {
    pub fn new(source: &Group, target: &Group, images: Vec<Elem>) -> Result<Self> {
        let h = Self {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        h.verify()?;
        Ok(h)
    }

    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.images.len() != s.order() || self.images.iter().any(|&y| y >= t.order()) {
            return Err(Error::NotHomomorphism(
                "image table has the wrong shape".into(),
            ));
        }
        if self.images[s.identity()] != t.identity() {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for x in s.elements() {
            for y in s.elements() {
                if self.images[s.mul(x, y)] != t.mul(self.images[x], self.images[y]) {
                    return Err(Error::NotHomomorphism(format!("fails at ({x},{y})")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.target.identity();
        Subgroup::from_sorted(
            &self.source,
            self.source
                .elements()
                .filter(|&x| self.images[x] == e)
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Group {
        let t: Vec<Elem> = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Group::from_table(format!("C{n}"), n, &t, Validation::default()).unwrap()
    }

    #[test]
    fn rejects_non_latin() {
        let err = Group::from_table("bad", 2, &[0, 1, 1, 1], Validation::default());
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_associative() {
        // Latin square of order 5 with identity 0 that is not a group.
        let rows = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let t: Vec<Elem> = rows.iter().flatten().copied().collect();
        assert!(Group::from_table("quasi", 5, &t, Validation::default()).is_err());
    }

    #[test]
    fn randomized_assoc_records_seed() {
        let n = 300;
        let t: Vec<Elem> = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let g = Group::from_table("C300", n, &t, Validation::default()).unwrap();
        assert_eq!(g.assoc_seed(), Some(Validation::default().seed));
        assert_eq!(cyc(8).assoc_seed(), None);
    }

    #[test]
    fn subgroup_generation() {
        let g = cyc(12);
        let s = Subgroup::generated(&g, [8]);
        assert_eq!(s.members(), &[0, 4, 8]);
        let s = Subgroup::generated(&g, [8, 6]);
        assert_eq!(s.order(), 6);
        assert!(s.is_normal());
        assert!(Subgroup::from_members(&g, [0, 1]).is_err());
    }

    #[test]
    fn subgroup_as_group() {
        let g = cyc(12);
        let (h, emb) = Subgroup::generated(&g, [3]).as_group();
        assert_eq!(h.order(), 4);
        assert_eq!(emb, vec![0, 3, 6, 9]);
        assert!(h.is_cyclic());
    }
}
