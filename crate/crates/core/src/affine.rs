//! Affine maps `x ↦ x^α·g`, shifts, and the invariants 𝔉, 𝔣 and maffo.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::autom::{
    automorphism_group, conjugation_automorphism, AutGroup, AutOptions, Automorphism,
};
use crate::group::{center, Elem, Group};
use crate::numtheory::{lcm, FactoredLcm};
use crate::{par, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub alpha: Automorphism,
    pub g: Elem,
}

impl AffineMap {
    pub fn new(alpha: Automorphism, g: Elem) -> Self {
        Self { alpha, g }
    }

    pub fn translation(group: &Group, g: Elem) -> Self {
        Self {
            alpha: Automorphism::identity(group),
            g,
        }
    }

    #[inline]
    pub fn apply(&self, group: &Group, x: Elem) -> Elem {
        group.mul(self.alpha.apply(x), self.g)
    }

    /// `self` then `other`: `A_{α,g} ∘ A_{β,h} = A_{αβ, g^β·h}`.
    pub fn compose(&self, group: &Group, other: &AffineMap) -> AffineMap {
        AffineMap {
            alpha: self.alpha.compose(&other.alpha),
            g: group.mul(other.alpha.apply(self.g), other.g),
        }
    }

    pub fn as_permutation(&self, group: &Group) -> Vec<Elem> {
        group.elements().map(|x| self.apply(group, x)).collect()
    }
}

/// `σ_α(x) = x^{α^{k−1}}···x^α·x` with `k = ord(α)`.
pub fn shift(group: &Group, alpha: &Automorphism, x: Elem) -> Elem {
    let mut power = x;
    let mut acc = x;
    for _ in 1..alpha.order() {
        power = alpha.apply(power);
        acc = group.mul(power, acc);
    }
    acc
}

/// `σ_α` for every element at once.
pub fn shift_table(group: &Group, alpha: &Automorphism) -> Vec<Elem> {
    let mut power: Vec<Elem> = group.elements().collect();
    let mut acc = power.clone();
    for _ in 1..alpha.order() {
        for (p, a) in power.iter_mut().zip(acc.iter_mut()) {
            *p = alpha.apply(*p);
            *a = group.mul(*p, *a);
        }
    }
    acc
}

/// `ord(α)·ord(σ_α(g))`.
pub fn affine_order(group: &Group, a: &AffineMap) -> u64 {
    a.alpha.order() * group.elem_order(shift(group, &a.alpha, a.g))
}

/// Lcm of the cycle lengths of `A` acting on `G`.
pub fn affine_order_oracle(group: &Group, a: &AffineMap) -> u64 {
    let perm = a.as_permutation(group);
    cycle_lengths(&perm)
        .into_iter()
        .fold(1, |acc, (len, _)| lcm(acc, len))
}

fn cycle_lengths(perm: &[Elem]) -> BTreeMap<u64, usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = BTreeMap::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        *out.entry(len).or_insert(0) += 1;
    }
    out
}

/// Per-automorphism scan: 𝔉(α) and the largest affine order `A_{α,g}`
/// together with the first `g` attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutScan {
    pub ffrak: u64,
    pub max_affine: u64,
    pub max_g: Elem,
}

pub fn scan_aut(group: &Group, alpha: &Automorphism) -> AutScan {
    let sigma = shift_table(group, alpha);
    let mut acc = FactoredLcm::new();
    let mut best = (0, 0);
    for (x, &s) in sigma.iter().enumerate() {
        let o = group.elem_order(s);
        acc.include(o);
        if o > best.0 {
            best = (o, x);
        }
    }
    let k = alpha.order();
    AutScan {
        ffrak: k * acc.value().expect("bounded by |G|"),
        max_affine: k * best.0,
        max_g: best.1,
    }
}

/// `𝔉(α) = lcm_x ord(A_{α,x})`.
pub fn ffrak_of_aut(group: &Group, alpha: &Automorphism) -> u64 {
    scan_aut(group, alpha).ffrak
}

/// `𝔣(α) = 𝔉(α)/|G|`.
pub fn f_of_aut(group: &Group, alpha: &Automorphism) -> Ratio<u64> {
    Ratio::new(ffrak_of_aut(group, alpha), group.order() as u64)
}

fn ratio_str<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub alpha_images: Vec<Elem>,
    pub g: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub label: String,
    pub order: usize,
    pub ffrak: u64,
    #[serde(serialize_with = "ratio_str")]
    pub f: Ratio<u64>,
    pub maffo: u64,
    /// First `(α, g)` in enumeration order with `ord(A_{α,g}) = maffo`.
    pub witness: Witness,
    /// Index in `Aut(G)` of the first α with `𝔉(α) = 𝔉(G)`.
    pub ffrak_alpha: usize,
    #[serde(skip)]
    pub maffo_alpha: usize,
}

/// Scans every automorphism in parallel and folds in index order.
pub fn ffrak_scan(aut: &AutGroup) -> Vec<AutScan> {
    let g = aut.group();
    par::map_slice(aut.elements(), |a| scan_aut(g, a))
}

pub fn report_from_scans(aut: &AutGroup, scans: &[AutScan]) -> InvariantReport {
    let g = aut.group();
    let (mut ffrak_alpha, mut maffo_alpha) = (0, 0);
    for (i, s) in scans.iter().enumerate() {
        if s.ffrak > scans[ffrak_alpha].ffrak {
            ffrak_alpha = i;
        }
        if s.max_affine > scans[maffo_alpha].max_affine {
            maffo_alpha = i;
        }
    }
    let ffrak = scans[ffrak_alpha].ffrak;
    InvariantReport {
        label: g.label().to_string(),
        order: g.order(),
        ffrak,
        f: Ratio::new(ffrak, g.order() as u64),
        maffo: scans[maffo_alpha].max_affine,
        witness: Witness {
            alpha_images: aut.elements()[maffo_alpha].images(),
            g: scans[maffo_alpha].max_g,
        },
        ffrak_alpha,
        maffo_alpha,
    }
}

pub fn ffrak_of_autgroup(aut: &AutGroup) -> InvariantReport {
    report_from_scans(aut, &ffrak_scan(aut))
}

/// `𝔉(G) = max_α 𝔉(α)`, `𝔣(G)` and `maffo(G)`.
pub fn ffrak_of_group(group: &Group, opts: AutOptions) -> Result<InvariantReport> {
    Ok(ffrak_of_autgroup(&automorphism_group(group, opts)?))
}

/// `lcm(ord r, ord xr)`, the order of `A_{conj(r),x}` in a centerless group.
pub fn centerless_inner_order(group: &Group, r: Elem, x: Elem) -> Result<u64> {
    if !center(group).is_trivial() {
        return Err(Error::NontrivialCenter);
    }
    Ok(lcm(group.elem_order(r), group.elem_order(group.mul(x, r))))
}

/// Same value through the oracle, for cross-checking.
pub fn centerless_inner_order_oracle(group: &Group, r: Elem, x: Elem) -> u64 {
    affine_order_oracle(
        group,
        &AffineMap::new(conjugation_automorphism(group, r), x),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStats {
    /// Orbit length ↦ number of orbits of that length.
    pub lengths: BTreeMap<u64, usize>,
    pub min: u64,
    pub max: u64,
}

pub fn orbit_statistics(group: &Group, a: &AffineMap) -> OrbitStats {
    let lengths = cycle_lengths(&a.as_permutation(group));
    let min = *lengths.keys().next().expect("nonempty group");
    let max = *lengths.keys().next_back().expect("nonempty group");
    OrbitStats { lengths, min, max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autom::automorphism_group;
    use crate::group::{construct_family, Family};

    fn fam(s: &str) -> Group {
        construct_family(&s.parse::<Family>().unwrap()).unwrap()
    }

    fn report(s: &str) -> InvariantReport {
        ffrak_of_group(&fam(s), AutOptions::default()).unwrap()
    }

    #[test]
    fn shift_of_identity_is_x() {
        let g = fam("symmetric:3");
        let id = Automorphism::identity(&g);
        for x in g.elements() {
            assert_eq!(shift(&g, &id, x), x);
        }
    }

    #[test]
    fn shift_additive_on_abelian() {
        let g = fam("cyclic:12");
        let aut = automorphism_group(&g, AutOptions::default()).unwrap();
        for a in aut.elements() {
            let t = shift_table(&g, a);
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(t[g.mul(x, y)], g.mul(t[x], t[y]));
                }
                assert_eq!(a.apply(t[x]), t[x]);
            }
        }
    }

    #[test]
    fn translation_orders() {
        let g = fam("cyclic:9");
        let a = AffineMap::translation(&g, 1);
        assert_eq!(affine_order(&g, &a), 9);
        assert_eq!(affine_order_oracle(&g, &a), 9);
        let st = orbit_statistics(&g, &a);
        assert_eq!(st.lengths, BTreeMap::from([(9, 1)]));
        let id = AffineMap::translation(&g, 0);
        assert_eq!(affine_order_oracle(&g, &id), 1);
        assert_eq!(orbit_statistics(&g, &id).max, 1);
    }

    #[test]
    fn cyclic6_inversion() {
        let g = fam("cyclic:6");
        let inv = Automorphism::from_images(&g, vec![0, 5, 4, 3, 2, 1]).unwrap();
        let a = AffineMap::new(inv, 1);
        assert_eq!(affine_order(&g, &a), affine_order_oracle(&g, &a));
        assert_eq!(affine_order(&g, &a), 2);
    }

    #[test]
    fn composition_law() {
        let g = fam("dihedral:4");
        let aut = automorphism_group(&g, AutOptions::default()).unwrap();
        for a in aut.elements() {
            for b in aut.elements().iter().step_by(3) {
                for (x, y) in [(1, 5), (6, 2), (0, 7)] {
                    let p = AffineMap::new(a.clone(), x);
                    let q = AffineMap::new(b.clone(), y);
                    let c = p.compose(&g, &q);
                    for z in g.elements() {
                        assert_eq!(c.apply(&g, z), q.apply(&g, p.apply(&g, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn known_reports() {
        let r = report("cyclic:10");
        assert_eq!((r.ffrak, r.maffo, r.f), (10, 10, Ratio::new(1, 1)));
        let r = report("alternating:5");
        assert_eq!(r.ffrak, 30);
        assert_eq!(r.f, Ratio::new(1, 2));
        let r = report("dihedral:5");
        assert_eq!((r.ffrak, r.maffo), (10, 10));
        let json = serde_json::to_value(report("symmetric:3")).unwrap();
        assert_eq!(json["f"], "1/1");
        assert!(json["witness"]["alpha_images"].is_array());
    }

    #[test]
    fn ffrak_identity_is_exponent() {
        for s in ["symmetric:4", "dicyclic:3", "alternating:4"] {
            let g = fam(s);
            assert_eq!(ffrak_of_aut(&g, &Automorphism::identity(&g)), g.exponent());
        }
    }

    #[test]
    fn a5_inner_and_outer() {
        let g = fam("alternating:5");
        let aut = automorphism_group(&g, AutOptions::default()).unwrap();
        for (i, a) in aut.elements().iter().enumerate() {
            let v = ffrak_of_aut(&g, a);
            if aut.is_inner(i) {
                assert_eq!(v, 30);
            } else {
                assert!(v <= 12);
            }
        }
    }

    #[test]
    fn centerless() {
        let s3 = fam("symmetric:3");
        let r = s3.elements().find(|&x| s3.elem_order(x) == 3).unwrap();
        let x = s3
            .elements()
            .find(|&x| s3.elem_order(x) == 2 && s3.elem_order(s3.mul(x, r)) == 2)
            .unwrap();
        assert_eq!(centerless_inner_order(&s3, r, x).unwrap(), 6);
        assert_eq!(centerless_inner_order_oracle(&s3, r, x), 6);
        assert_eq!(centerless_inner_order(&s3, 0, x).unwrap(), s3.elem_order(x));
        let s4 = fam("symmetric:4");
        let mut best = 0;
        for r in s4.elements() {
            for x in s4.elements() {
                let v = centerless_inner_order(&s4, r, x).unwrap();
                assert_eq!(v, centerless_inner_order_oracle(&s4, r, x));
                best = best.max(v);
            }
        }
        assert_eq!(best, 12);
        assert!(matches!(
            centerless_inner_order(&fam("dihedral:4"), 1, 1),
            Err(Error::NontrivialCenter)
        ));
    }
}
