//! Derived series, quotients, the solvable radical and other structural data.

use num_rational::Ratio;

use super::{normal_closure, Elem, Group, GroupHom, Subgroup, Validation};
use crate::{Error, Result};

/// Commutator subgroup `[H, H]` of a subgroup `H`, inside the same parent.
pub fn derived_subgroup(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let mut d = Subgroup::trivial(g);
    for &x in h.members() {
        for &y in h.members() {
            let c = g.commutator(x, y);
            if !d.contains(c) {
                d.extend([c]);
            }
        }
    }
    d
}

#[derive(Clone, Debug)]
pub struct DerivedSeries {
    /// `G = G^(0) ≥ G^(1) ≥ …`, ending at the first repeated term.
    pub terms: Vec<Subgroup>,
    /// Index of the first trivial term; `None` if the series stabilizes at a
    /// nontrivial (perfect) subgroup.
    pub derived_length: Option<usize>,
}

impl DerivedSeries {
    pub fn is_solvable(&self) -> bool {
        self.derived_length.is_some()
    }
}

/// Derived series of a subgroup (pass `Subgroup::whole(g)` for the group).
pub fn derived_series_of(h: &Subgroup) -> DerivedSeries {
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_trivial() {
            let len = terms.len() - 1;
            return DerivedSeries {
                terms,
                derived_length: Some(len),
            };
        }
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            return DerivedSeries {
                terms,
                derived_length: None,
            };
        }
        terms.push(next);
    }
}

pub fn derived_series(g: &Group) -> DerivedSeries {
    derived_series_of(&Subgroup::whole(g))
}

pub fn derived_length(h: &Subgroup) -> Option<usize> {
    derived_series_of(h).derived_length
}

pub fn is_solvable(h: &Subgroup) -> bool {
    derived_length(h).is_some()
}

/// Quotient by a normal subgroup. Cosets are represented by their least
/// element index and numbered in increasing order of representative.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub projection: GroupHom,
    /// `reps[i]` is the least element of coset `i`.
    pub reps: Vec<Elem>,
    pub kernel: Subgroup,
}

impl Quotient {
    /// Preimage of a subgroup of the quotient.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let g = &self.projection.source;
        Subgroup::from_sorted(
            g,
            g.elements()
                .filter(|&x| s.contains(self.projection.apply(x)))
                .collect(),
        )
    }
}

pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &k in n.members() {
                coset[g.mul(x, k)] = id;
            }
        }
    }
    let m = reps.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)]);
        }
    }
    let label = format!("{}/{}", g.label(), n.order());
    let q = Group::from_table(
        label,
        m,
        &table,
        Validation {
            full_assoc_limit: 0,
            spot_checks: 0,
            seed: 0,
        },
    )?;
    let projection = GroupHom {
        source: g.clone(),
        target: q.clone(),
        images: coset,
    };
    Ok(Quotient {
        group: q,
        projection,
        reps,
        kernel: n.clone(),
    })
}

/// Largest solvable normal subgroup.
///
/// Starting from the trivial subgroup `R`, repeatedly looks in `G/R` for a
/// conjugacy class whose normal closure is nontrivial and solvable, and
/// replaces `R` by its preimage. When no such class remains, `G/R` has no
/// nontrivial solvable normal subgroup (any such subgroup would contain a
/// minimal normal one, which is abelian), so `R = Rad(G)`.
pub fn solvable_radical(g: &Group) -> Subgroup {
    let mut rad = Subgroup::trivial(g);
    'outer: loop {
        if rad.is_whole() {
            return rad;
        }
        let q = quotient(g, &rad).expect("radical candidates are normal");
        for class in q.group.conjugacy_classes() {
            let c = class[0];
            if c == q.group.identity() {
                continue;
            }
            let nc = normal_closure(&q.group, [c]);
            if is_solvable(&nc) {
                rad = q.preimage(&nc);
                continue 'outer;
            }
        }
        return rad;
    }
}

pub fn center(g: &Group) -> Subgroup {
    let members = g
        .elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::from_sorted(g, members)
}

/// Upper central series `1 = Z₀ ≤ Z₁ = ζG ≤ …` until it stabilizes.
pub fn upper_central_series(g: &Group) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::trivial(g)];
    loop {
        let z = series.last().expect("nonempty");
        let next: Vec<Elem> = g
            .elements()
            .filter(|&x| g.elements().all(|y| z.contains(g.commutator(x, y))))
            .collect();
        if next.len() == z.order() {
            return series;
        }
        series.push(Subgroup::from_sorted(g, next));
    }
}

#[derive(Clone, Debug)]
pub struct StructuralInvariants {
    pub exponent: u64,
    pub center: Subgroup,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub element_orders: Vec<u64>,
    pub conjugacy_classes: Vec<Vec<Elem>>,
    /// `|{(x, y) : xy = yx}| / |G|²`, reduced.
    pub commuting_probability: Ratio<u64>,
}

pub fn structural_invariants(g: &Group) -> StructuralInvariants {
    let n = g.order();
    let mut commuting = 0u64;
    for x in 0..n {
        for y in 0..n {
            if g.mul(x, y) == g.mul(y, x) {
                commuting += 1;
            }
        }
    }
    let ucs = upper_central_series(g);
    StructuralInvariants {
        exponent: g.exponent(),
        center: center(g),
        is_abelian: g.is_abelian(),
        is_nilpotent: ucs.last().expect("nonempty").is_whole(),
        element_orders: g.elements().map(|x| g.elem_order(x)).collect(),
        conjugacy_classes: g.conjugacy_classes(),
        commuting_probability: Ratio::new(commuting, (n * n) as u64),
    }
}
