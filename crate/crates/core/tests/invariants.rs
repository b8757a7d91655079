use std::sync::OnceLock;

use holaff_core::affine::{affine_order, affine_order_oracle, ffrak_of_autgroup, shift, AffineMap};
use holaff_core::autom::{automorphism_group, conjugation_automorphism, AutGroup, AutOptions};
use holaff_core::group::{center, construct_family, derived_series, quotient, Family};
use holaff_core::linfp::{
    classify_f_large, classify_large_order, mat_ffrak, matrix_order, primary_rcf, rcf_key, MatFp,
    PolyFp,
};
use holaff_core::verify::Config;
use holaff_core::{Group, Subgroup};
use proptest::prelude::*;

const SUBJECTS: &[&str] = &[
    "cyclic:1",
    "cyclic:7",
    "cyclic:12",
    "elementary_abelian:2:3",
    "dihedral:5",
    "dihedral:8",
    "dicyclic:3",
    "symmetric:3",
    "symmetric:4",
    "alternating:4",
    "semidirect:7:3:2",
    "sl2_3",
    "cyclic:2*symmetric:3",
];

fn fixtures() -> &'static [(Group, AutGroup)] {
    static F: OnceLock<Vec<(Group, AutGroup)>> = OnceLock::new();
    F.get_or_init(|| {
        SUBJECTS
            .iter()
            .map(|s| {
                let g = construct_family(&s.parse::<Family>().unwrap()).unwrap();
                let a = automorphism_group(&g, AutOptions::default()).unwrap();
                (g, a)
            })
            .collect()
    })
}

/// `(group index, automorphism seed, element seeds)`.
fn pick() -> impl Strategy<Value = (usize, usize, [usize; 3])> {
    (0..SUBJECTS.len(), any::<usize>(), any::<[usize; 3]>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_axioms((gi, _, [a, b, c]) in pick()) {
        let g = &fixtures()[gi].0;
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.conj(a, b), g.mul(g.mul(g.inv(b), a), b));
    }

    #[test]
    fn generated_subgroups_are_subgroups((gi, _, [a, b, _]) in pick()) {
        let g = &fixtures()[gi].0;
        let n = g.order();
        let h = Subgroup::generated(g, [a % n, b % n]);
        prop_assert!(h.contains(g.identity()));
        prop_assert_eq!(n % h.order(), 0);
        for &x in h.members() {
            prop_assert!(h.contains(g.inv(x)));
            for &y in h.members() {
                prop_assert!(h.contains(g.mul(x, y)));
            }
        }
        let closure = h.normal_closure();
        prop_assert!(closure.is_normal() && h.is_subset_of(&closure));
    }

    #[test]
    fn quotient_projection_is_a_homomorphism((gi, _, [a, b, _]) in pick()) {
        let g = &fixtures()[gi].0;
        let n = g.order();
        let ds = derived_series(g);
        let q = quotient(g, &ds.terms[1.min(ds.terms.len() - 1)]).unwrap();
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(q.projection.apply(g.mul(a, b)), q.group.mul(q.projection.apply(a), q.projection.apply(b)));
        prop_assert_eq!(q.group.order() * q.kernel.order(), n);
        prop_assert_eq!(q.reps[q.projection.apply(a)], *q.kernel.members().iter().map(|&k| g.mul(k, a)).collect::<Vec<_>>().iter().min().unwrap());
    }

    #[test]
    fn automorphisms_preserve_products((gi, ai, [a, b, _]) in pick()) {
        let (g, aut) = &fixtures()[gi];
        let alpha = &aut.elements()[ai % aut.len()];
        let n = g.order();
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(alpha.apply(g.mul(a, b)), g.mul(alpha.apply(a), alpha.apply(b)));
        prop_assert_eq!(alpha.apply(g.identity()), g.identity());
        let ord = alpha.order();
        prop_assert!(ord <= n as u64);
        prop_assert!(alpha.pow(ord).is_identity());
        prop_assert!((1..ord).all(|k| !alpha.pow(k).is_identity()));
    }

    #[test]
    fn aut_group_is_closed((gi, ai, [bi, _, _]) in pick()) {
        let (g, aut) = &fixtures()[gi];
        let (x, y) = (&aut.elements()[ai % aut.len()], &aut.elements()[bi % aut.len()]);
        prop_assert!(aut.index_of(&x.compose(y)).is_some());
        prop_assert!(aut.index_of(&x.inverse()).is_some());
        prop_assert_eq!(aut.inner_count() * center(g).order(), g.order());
        let inner = conjugation_automorphism(g, bi % g.order());
        prop_assert!(aut.index_of(&inner).map(|i| aut.is_inner(i)).unwrap_or(false));
    }

    #[test]
    fn affine_maps_compose((gi, ai, [bi, x, y]) in pick()) {
        let (g, aut) = &fixtures()[gi];
        let n = g.order();
        let (alpha, beta) = (aut.elements()[ai % aut.len()].clone(), aut.elements()[bi % aut.len()].clone());
        let (x, y) = (x % n, y % n);
        let a = AffineMap::new(alpha.clone(), x);
        let b = AffineMap::new(beta.clone(), y);
        let ab = a.compose(g, &b);
        let expected = AffineMap::new(alpha.compose(&beta), g.mul(beta.apply(x), y));
        for z in g.elements() {
            prop_assert_eq!(ab.apply(g, z), b.apply(g, a.apply(g, z)));
            prop_assert_eq!(ab.apply(g, z), expected.apply(g, z));
        }
        let mut perm = a.as_permutation(g);
        perm.sort_unstable();
        prop_assert_eq!(perm, g.elements().collect::<Vec<_>>());
    }

    #[test]
    fn affine_order_formula((gi, ai, [x, _, _]) in pick()) {
        let (g, aut) = &fixtures()[gi];
        let alpha = aut.elements()[ai % aut.len()].clone();
        let x = x % g.order();
        let sigma = shift(g, &alpha, x);
        let a = AffineMap::new(alpha.clone(), x);
        prop_assert_eq!(affine_order(g, &a), alpha.order() * g.elem_order(sigma));
        prop_assert_eq!(affine_order(g, &a), affine_order_oracle(g, &a));
        prop_assert_eq!(alpha.apply(sigma), g.conj(sigma, g.inv(x)));
    }

    #[test]
    fn invariant_chain(gi in 0..SUBJECTS.len()) {
        let (g, aut) = &fixtures()[gi];
        let r = ffrak_of_autgroup(aut);
        prop_assert!(r.maffo <= r.ffrak && r.ffrak <= g.order() as u64);
        prop_assert!(*r.f.numer() <= *r.f.denom());
    }
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn matrix(p: u64, n: usize) -> impl Strategy<Value = MatFp> {
    prop::collection::vec(-20i64..20, n * n).prop_map(move |e| MatFp::new(p, n, &e).unwrap())
}

fn invertible() -> impl Strategy<Value = MatFp> {
    (prime(), 1usize..=4)
        .prop_flat_map(|(p, n)| matrix(p, n))
        .prop_filter("invertible", |m| m.is_invertible())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn poly_division(p in prime(), a in prop::collection::vec(-9i64..9, 0..8), b in prop::collection::vec(-9i64..9, 1..5)) {
        let (a, b) = (PolyFp::new(p, &a).unwrap(), PolyFp::new(p, &b).unwrap());
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a.clone());
        prop_assert!(r.is_zero() || r.deg() < b.deg());
        prop_assert!(a.is_zero() || a.lead() != 0);
        prop_assert!(a.coeffs().iter().all(|&c| (c as u64) < p));
    }

    #[test]
    fn matrix_entries_reduced(m in (prime(), 1usize..=4).prop_flat_map(|(p, n)| matrix(p, n))) {
        prop_assert!(m.entries().iter().all(|&c| c < m.p()));
    }

    #[test]
    fn primary_form_invariants(m in invertible()) {
        let rcf = primary_rcf(&m).unwrap();
        prop_assert_eq!(rcf.blocks().iter().map(|b| b.e as usize * b.poly.deg()).sum::<usize>(), m.n());
        prop_assert!(rcf.blocks().iter().all(|b| b.poly.is_irreducible() && b.poly.is_monic()));
        let again = primary_rcf(&rcf.to_matrix()).unwrap();
        prop_assert_eq!(rcf_key(&again), rcf_key(&rcf));
        prop_assert_eq!(matrix_order(&m).unwrap(), m.order_bruteforce().unwrap());
    }

    #[test]
    fn primary_form_is_a_similarity_invariant(m in invertible(), s_entries in prop::collection::vec(-20i64..20, 16)) {
        let s = MatFp::new(m.p() as u64, m.n(), &s_entries[..m.n() * m.n()]).unwrap();
        prop_assume!(s.is_invertible());
        let conj = s.inverse().unwrap().mul(&m).unwrap().mul(&s).unwrap();
        prop_assert_eq!(rcf_key(&primary_rcf(&conj).unwrap()), rcf_key(&primary_rcf(&m).unwrap()));
    }

    #[test]
    fn verdicts_match_direct_values(m in invertible()) {
        let ord = matrix_order(&m).unwrap();
        let v = classify_large_order(&m).unwrap();
        if !v.is_none() {
            prop_assert_eq!(v.predicted_order, Some(ord));
        }
        if m.n() >= 2 {
            let f = classify_f_large(&m).unwrap();
            if !f.is_none() {
                prop_assert_eq!(f.predicted_ffrak, Some(mat_ffrak(&m).unwrap()));
            }
        }
    }

    #[test]
    fn config_caps_must_be_positive(max_order in 0usize..3, aut_cap in 0usize..3, samples in 0usize..3) {
        let cfg = Config { max_order, aut_cap, oracle_samples: samples, ..Config::default() };
        prop_assert_eq!(cfg.validate().is_ok(), max_order > 0 && aut_cap > 0 && samples > 0);
    }
}
