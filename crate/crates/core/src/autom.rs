//! Automorphism groups of Cayley-table groups.
//!
//! [`automorphism_group`] enumerates `Aut(G)` by backtracking over the images
//! of a small generating set. Candidate images are pruned by a fingerprint
//! (element order, conjugacy class size, centralizer order), and every partial
//! assignment is checked by extending it to the subgroup generated so far.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::group::{Elem, Group, Quotient, Subgroup};
use crate::numtheory::lcm;
use crate::{Error, Result};

/// Automorphism stored as a full image table. The group it acts on is
/// implied by context (the [`AutGroup`] or caller that owns it).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    images: Vec<u16>,
    order: u32,
}

fn perm_order(images: &[u16]) -> u64 {
    let mut seen = vec![false; images.len()];
    let mut acc = 1u64;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        acc = lcm(acc, len);
    }
    acc
}

impl Automorphism {
    pub fn identity(g: &Group) -> Self {
        Self {
            images: (0..g.order() as u16).collect(),
            order: 1,
        }
    }

    /// Checks that `images` is a bijective endomorphism of `g`.
    pub fn from_images(g: &Group, images: Vec<Elem>) -> Result<Self> {
        let a = Self::from_images_unchecked(images);
        a.verify(g)?;
        Ok(a)
    }

    pub(crate) fn from_images_unchecked(images: Vec<Elem>) -> Self {
        let images: Vec<u16> = images.into_iter().map(|x| x as u16).collect();
        let order = perm_order(&images) as u32;
        Self { images, order }
    }

    pub fn verify(&self, g: &Group) -> Result<()> {
        let n = g.order();
        if self.images.len() != n {
            return Err(Error::NotHomomorphism(
                "image table has the wrong length".into(),
            ));
        }
        let mut hit = vec![false; n];
        for &y in &self.images {
            let y = y as usize;
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return Err(Error::NotHomomorphism(
                    "images are not a permutation".into(),
                ));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.apply(g.mul(x, y)) != g.mul(self.apply(x), self.apply(y)) {
                    return Err(Error::NotHomomorphism(format!(
                        "product not preserved at ({x},{y})"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<Elem> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn raw_images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `self` then `other`: `x^{αβ} = (x^α)^β`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let images: Vec<u16> = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        let order = perm_order(&images) as u32;
        Automorphism { images, order }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![0u16; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        Automorphism {
            images,
            order: self.order,
        }
    }

    pub fn pow(&self, k: u64) -> Automorphism {
        let k = k % self.order();
        let n = self.images.len();
        let images: Vec<u16> = (0..n)
            .map(|x| {
                let mut y = x;
                for _ in 0..k {
                    y = self.images[y] as usize;
                }
                y as u16
            })
            .collect();
        let order = perm_order(&images) as u32;
        Automorphism { images, order }
    }

    pub fn fixed_points(&self) -> Vec<Elem> {
        (0..self.images.len())
            .filter(|&x| self.apply(x) == x)
            .collect()
    }
}

/// Inner automorphism `x ↦ g⁻¹·x·g`.
pub fn conjugation_automorphism(group: &Group, g: Elem) -> Automorphism {
    Automorphism::from_images_unchecked(group.elements().map(|x| group.conj(x, g)).collect())
}

#[derive(Clone, Copy, Debug)]
pub struct AutOptions {
    /// Abort once more than this many automorphisms have been found.
    pub max_size: usize,
    pub timeout: Option<Duration>,
}

impl Default for AutOptions {
    fn default() -> Self {
        Self {
            max_size: 100_000,
            timeout: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutGroup {
    group: Group,
    elements: Vec<Automorphism>,
    generators: Vec<usize>,
    inner: Vec<bool>,
    inner_count: usize,
}

impl AutGroup {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Automorphisms sorted lexicographically by image table; index 0 is the
    /// identity.
    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices into [`Self::elements`] of a generating set.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_inner(&self, idx: usize) -> bool {
        self.inner[idx]
    }

    /// `|Inn(G)| = |G/ζG|`.
    pub fn inner_count(&self) -> usize {
        self.inner_count
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.elements
            .binary_search_by(|b| b.images.cmp(&a.images))
            .ok()
    }

    /// Closure of a set of elements under composition, as a sorted index list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.len()];
        let id = 0;
        mask[id] = true;
        let mut members = vec![id];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in gens {
                let y = self
                    .index_of(&self.elements[x].compose(&self.elements[s]))
                    .expect("closed");
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderStats {
    pub ord_set: BTreeSet<u64>,
    pub mao: u64,
}

pub fn order_statistics(a: &AutGroup) -> OrderStats {
    let ord_set: BTreeSet<u64> = a.elements.iter().map(|x| x.order()).collect();
    let mao = *ord_set.iter().next_back().unwrap_or(&1);
    OrderStats { ord_set, mao }
}

type Fingerprint = (u64, usize);

/// (element order, conjugacy class size); the centralizer order is
/// `|G| / class size`, so it adds no information within one group.
fn fingerprints(g: &Group) -> Vec<Fingerprint> {
    let mut fp = vec![(0, 0); g.order()];
    for class in g.conjugacy_classes() {
        for &x in &class {
            fp[x] = (g.elem_order(x), class.len());
        }
    }
    fp
}

/// Greedy generating set: repeatedly add the element whose closure with the
/// current generators is largest; ties go to the element with the fewest
/// fingerprint matches, then the lowest index.
fn greedy_generators(g: &Group, fp: &[Fingerprint]) -> Vec<Elem> {
    let mut count = std::collections::HashMap::new();
    for f in fp {
        *count.entry(*f).or_insert(0usize) += 1;
    }
    let mut gens = Vec::new();
    let mut cur = Subgroup::trivial(g);
    while !cur.is_whole() {
        let mut best: Option<(usize, usize, Elem)> = None;
        for x in g.elements().filter(|&x| !cur.contains(x)) {
            let mut s = cur.clone();
            s.extend([x]);
            let key = (s.order(), usize::MAX - count[&fp[x]], x);
            let better = match best {
                None => true,
                Some((o, c, _)) => (key.0, key.1) > (o, c),
            };
            if better {
                best = Some(key);
            }
        }
        let (_, _, x) = best.expect("some element outside a proper subgroup");
        cur.extend([x]);
        gens.push(x);
    }
    gens
}

/// Extends `gens[i] ↦ imgs[i]` to `⟨gens⟩`, returning `None` if the
/// assignment is not a well-defined injective homomorphism there.
fn extend_map(
    src: &Group,
    dst: &Group,
    gens: &[Elem],
    imgs: &[Elem],
    map: &mut Vec<u16>,
    used: &mut Vec<bool>,
) -> bool {
    const UNSET: u16 = u16::MAX;
    map.clear();
    map.resize(src.order(), UNSET);
    used.clear();
    used.resize(dst.order(), false);
    map[src.identity()] = dst.identity() as u16;
    used[dst.identity()] = true;
    let mut queue = vec![src.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x] as usize;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = src.mul(x, s);
            let v = dst.mul(fx, t);
            if map[y] == UNSET {
                if used[v] {
                    return false;
                }
                used[v] = true;
                map[y] = v as u16;
                queue.push(y);
            } else if map[y] as usize != v {
                return false;
            }
        }
    }
    true
}

struct Search<'a> {
    src: &'a Group,
    dst: &'a Group,
    gens: Vec<Elem>,
    cands: Vec<Vec<Elem>>,
    imgs: Vec<Elem>,
    map: Vec<u16>,
    used: Vec<bool>,
    nodes: u64,
    started: Instant,
    timeout: Option<Duration>,
}

enum Flow {
    Continue,
    Stop,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[u16]) -> Result<Flow>) -> Result<Flow> {
        for ci in 0..self.cands[depth].len() {
            self.nodes += 1;
            if self.nodes.is_multiple_of(256) {
                if let Some(t) = self.timeout {
                    if self.started.elapsed() > t {
                        return Err(Error::AutTimeout {
                            label: self.src.label().into(),
                            secs: t.as_secs_f64(),
                        });
                    }
                }
            }
            self.imgs[depth] = self.cands[depth][ci];
            let ok = extend_map(
                self.src,
                self.dst,
                &self.gens[..=depth],
                &self.imgs[..=depth],
                &mut self.map,
                &mut self.used,
            );
            if !ok {
                continue;
            }
            let flow = if depth + 1 == self.gens.len() {
                visit(&self.map)?
            } else {
                self.run(depth + 1, visit)?
            };
            if let Flow::Stop = flow {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

fn build_search<'a>(
    src: &'a Group,
    dst: &'a Group,
    timeout: Option<Duration>,
) -> Option<Search<'a>> {
    if src.order() != dst.order() {
        return None;
    }
    let fs = fingerprints(src);
    let fd = if std::ptr::eq(src, dst) {
        fs.clone()
    } else {
        fingerprints(dst)
    };
    let mut a = fs.clone();
    let mut b = fd.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let gens = greedy_generators(src, &fs);
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| dst.elements().filter(|&y| fd[y] == fs[x]).collect())
        .collect();
    let k = gens.len();
    Some(Search {
        src,
        dst,
        gens,
        cands,
        imgs: vec![0; k],
        map: Vec::new(),
        used: Vec::new(),
        nodes: 0,
        started: Instant::now(),
        timeout,
    })
}

/// An isomorphism `src → dst` as an image table, if one exists.
pub fn find_isomorphism(src: &Group, dst: &Group) -> Option<Vec<Elem>> {
    if src.order() == 1 && dst.order() == 1 {
        return Some(vec![dst.identity()]);
    }
    let mut search = build_search(src, dst, None)?;
    let mut found = None;
    let _ = search.run(0, &mut |map| {
        found = Some(map.iter().map(|&x| x as usize).collect());
        Ok(Flow::Stop)
    });
    found
}

pub fn is_isomorphic(a: &Group, b: &Group) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Full automorphism group.
pub fn automorphism_group(g: &Group, opts: AutOptions) -> Result<AutGroup> {
    let mut elements: Vec<Automorphism> = Vec::new();
    if g.order() == 1 {
        elements.push(Automorphism::identity(g));
    } else {
        let mut search = build_search(g, g, opts.timeout).expect("a group is isomorphic to itself");
        let label = g.label().to_string();
        search.run(0, &mut |map| {
            if elements.len() >= opts.max_size {
                return Err(Error::AutCap {
                    label: label.clone(),
                    cap: opts.max_size,
                });
            }
            let order = perm_order(map) as u32;
            elements.push(Automorphism {
                images: map.to_vec(),
                order,
            });
            Ok(Flow::Continue)
        })?;
    }
    elements.sort_unstable();

    let mut inner = vec![false; elements.len()];
    let find = |a: &Automorphism| elements.binary_search_by(|b| b.images.cmp(&a.images)).ok();
    for x in g.elements() {
        let c = conjugation_automorphism(g, x);
        inner[find(&c).expect("inner automorphisms are automorphisms")] = true;
    }
    let inner_count = inner.iter().filter(|&&b| b).count();

    let mut out = AutGroup {
        group: g.clone(),
        elements,
        generators: Vec::new(),
        inner,
        inner_count,
    };
    let mut covered = vec![false; out.len()];
    covered[0] = true;
    for i in 0..out.len() {
        if !covered[i] {
            out.generators.push(i);
            for j in out.closure(&out.generators) {
                covered[j] = true;
            }
        }
    }
    Ok(out)
}

/// A subgroup together with its structure as a standalone group.
#[derive(Clone, Debug)]
pub struct EmbeddedSubgroup {
    pub subgroup: Subgroup,
    pub group: Group,
    /// `embed[i]` is the parent element for subgroup element `i`.
    pub embed: Vec<Elem>,
    index: Vec<usize>,
}

impl EmbeddedSubgroup {
    pub fn new(subgroup: &Subgroup) -> Self {
        let (group, embed) = subgroup.as_group();
        let mut index = vec![usize::MAX; subgroup.parent().order()];
        for (i, &x) in embed.iter().enumerate() {
            index[x] = i;
        }
        Self {
            subgroup: subgroup.clone(),
            group,
            embed,
            index,
        }
    }

    /// Subgroup index of a parent element, if it is a member.
    pub fn local(&self, x: Elem) -> Option<usize> {
        self.index.get(x).copied().filter(|&i| i != usize::MAX)
    }
}

pub fn is_invariant(alpha: &Automorphism, n: &Subgroup) -> bool {
    n.members().iter().all(|&x| n.contains(alpha.apply(x)))
}

/// `α|N` as an automorphism of `N` in its own indexing.
pub fn restrict(alpha: &Automorphism, n: &EmbeddedSubgroup) -> Result<Automorphism> {
    if !is_invariant(alpha, &n.subgroup) {
        return Err(Error::NotInvariant);
    }
    Ok(Automorphism::from_images_unchecked(
        n.embed
            .iter()
            .map(|&x| n.local(alpha.apply(x)).expect("invariant"))
            .collect(),
    ))
}

/// The automorphism of `G/N` induced by `α`. Checks that it commutes with
/// the projection.
pub fn induce_on_quotient(alpha: &Automorphism, q: &Quotient) -> Result<Automorphism> {
    if !is_invariant(alpha, &q.kernel) {
        return Err(Error::NotInvariant);
    }
    let pi = &q.projection;
    let induced = Automorphism::from_images_unchecked(
        q.reps.iter().map(|&r| pi.apply(alpha.apply(r))).collect(),
    );
    for x in pi.source.elements() {
        if pi.apply(alpha.apply(x)) != induced.apply(pi.apply(x)) {
            return Err(Error::NotHomomorphism(
                "induced map does not commute with the projection".into(),
            ));
        }
    }
    Ok(induced)
}

/// Checks `(g^γ)^{α|N} = (g^α)^γ` for every `g ∈ G`, where `γ: G → Aut(N)` is
/// the conjugation action and `Aut(N)` acts on itself by conjugation
/// (`β^δ = δ⁻¹βδ`).
pub fn equivariance_check(
    group: &Group,
    alpha: &Automorphism,
    n: &EmbeddedSubgroup,
) -> Result<bool> {
    if !n.subgroup.is_normal() {
        return Err(Error::NotNormal);
    }
    let a_n = restrict(alpha, n)?;
    let a_n_inv = a_n.inverse();
    let gamma = |g: Elem| -> Vec<Elem> {
        n.embed
            .iter()
            .map(|&x| n.local(group.conj(x, g)).expect("normal"))
            .collect()
    };
    for g in group.elements() {
        let cg = gamma(g);
        let lhs: Vec<Elem> = (0..n.embed.len())
            .map(|v| a_n.apply(cg[a_n_inv.apply(v)]))
            .collect();
        if lhs != gamma(alpha.apply(g)) {
            return Ok(false);
        }
    }
    Ok(true)
}
