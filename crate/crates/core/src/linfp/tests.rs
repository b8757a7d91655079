use super::*;
use crate::affine::{ffrak_of_aut, shift_table};
use crate::group::{construct_family, Family};

fn lin(p: u32, a: u32) -> PolyFp {
    PolyFp::linear(p, a)
}

fn primitive_root(p: u32) -> u32 {
    (1..p)
        .find(|&a| crate::numtheory::mult_order_mod(a as u64, p as u64) == Some(p as u64 - 1))
        .unwrap()
}

fn blocks(p: u32, parts: &[(PolyFp, u32)]) -> MatFp {
    let comps: Vec<MatFp> = parts.iter().map(|(q, e)| companion(q, *e)).collect();
    MatFp::block_diag(p, &comps)
}

#[test]
fn unipotent_orders() {
    for p in [3, 5, 7] {
        let c = companion(&lin(p, 1), 2);
        assert_eq!(matrix_order(&c).unwrap(), p as u64);
        assert_eq!(c.order_bruteforce().unwrap(), p as u64);
    }
    let c = companion(&lin(2, 1), 3);
    assert_eq!(matrix_order(&c).unwrap(), 4);
    assert_eq!(c.order_bruteforce().unwrap(), 4);
}

#[test]
fn jordan_pair_order() {
    for p in [3, 5, 7, 11] {
        let a = primitive_root(p);
        let c = companion(&lin(p, a), 2);
        let expect = (p * (p - 1)) as u64;
        assert_eq!(matrix_order(&c).unwrap(), expect);
        assert_eq!(c.order_bruteforce().unwrap(), expect);
        assert_eq!(centralizer_exponent(&c).unwrap(), expect);
    }
}

#[test]
fn singer_examples() {
    assert_eq!(singer(2, 2).unwrap(), MatFp::parse(2, "0,1;1,1").unwrap());
    assert_eq!(
        singer_poly(3, 2).unwrap(),
        PolyFp::parse(3, "2,1,1").unwrap()
    );
    assert_eq!(matrix_order(&singer(2, 2).unwrap()).unwrap(), 3);
    assert_eq!(matrix_order(&singer(3, 2).unwrap()).unwrap(), 8);
    for p in [2u64, 3, 5, 7, 13] {
        let s = singer(p, 1).unwrap();
        assert_eq!(s.order_bruteforce().unwrap(), p - 1);
    }
    assert!(singer(4, 2).is_err());
    assert!(singer(2, 0).is_err());
}

#[test]
fn singular_matrices_rejected() {
    let m = MatFp::parse(3, "1,0;0,0").unwrap();
    assert!(matches!(matrix_order(&m), Err(crate::Error::Singular)));
    assert!(matches!(
        classify_large_order(&m),
        Err(crate::Error::Singular)
    ));
}

#[test]
fn centralizer_examples() {
    let s = singer(3, 2).unwrap();
    assert_eq!(centralizer_exponent(&s).unwrap(), 8);
    assert!(matches!(
        centralizer_exponent(&MatFp::identity(3, 2)),
        Err(crate::Error::RepeatedBlock(_))
    ));
}

#[test]
fn unit_exponent_small_rings() {
    for (p, d, e) in ring_shapes(81) {
        let q = irreducibles(p as u32, d as usize)[0].pow(e as u64);
        assert_eq!(
            unit_exponent_bruteforce(&q).unwrap(),
            unit_exponent_formula(p, d, e),
            "p={p} d={d} e={e}"
        );
    }
}

#[test]
fn proper_roots() {
    assert!(has_proper_root(&MatFp::identity(3, 1), RootSearch::Centralizer).unwrap());
    assert!(!has_proper_root(&singer(2, 3).unwrap(), RootSearch::Centralizer).unwrap());
    let c = companion(&lin(3, 1), 2);
    assert_eq!(
        has_proper_root(&c, RootSearch::Centralizer).unwrap(),
        has_proper_root(&c, RootSearch::FullGl).unwrap()
    );
    for m in [
        MatFp::identity(2, 2),
        singer(3, 2).unwrap(),
        companion(&lin(5, 2), 2),
    ] {
        assert_eq!(
            has_proper_root(&m, RootSearch::Centralizer).unwrap(),
            has_proper_root(&m, RootSearch::FullGl).unwrap(),
            "{m:?}"
        );
    }
}

#[test]
fn commutant_of_cyclic_matrix_has_dimension_n() {
    let s = singer(2, 4).unwrap();
    assert_eq!(commutant_basis(&s).len(), 4);
    assert_eq!(commutant_basis(&MatFp::identity(3, 3)).len(), 9);
    for b in commutant_basis(&s) {
        assert_eq!(b.mul(&s).unwrap(), s.mul(&b).unwrap());
    }
}

#[test]
fn large_order_examples() {
    let v = classify_large_order(&singer(3, 2).unwrap()).unwrap();
    assert_eq!((v.kind, v.predicted_order), (VerdictKind::Singer, Some(8)));
    let m = MatFp::block_diag(2, &[singer(2, 2).unwrap(), singer(2, 3).unwrap()]);
    let v = classify_large_order(&m).unwrap();
    assert_eq!(
        (v.kind, v.predicted_order),
        (VerdictKind::P2CoprimeSingers, Some(21))
    );
    assert_eq!(m.order_bruteforce().unwrap(), 21);
    assert!(classify_large_order(&MatFp::identity(3, 2))
        .unwrap()
        .is_none());
    let a = primitive_root(5);
    let v = classify_large_order(&companion(&lin(5, a), 2)).unwrap();
    assert_eq!(
        (v.kind, v.predicted_order),
        (VerdictKind::POddJordanPair, Some(20))
    );
}

#[test]
fn f_large_examples() {
    let m = MatFp::block_diag(3, &[companion(&lin(3, 1), 1), singer(3, 2).unwrap()]);
    let v = classify_f_large(&m).unwrap();
    assert_eq!(
        (v.kind, v.predicted_ffrak),
        (VerdictKind::FixPlusSinger, Some(24))
    );
    assert_eq!(mat_ffrak(&m).unwrap(), 24);

    let m = MatFp::block_diag(
        2,
        &[
            companion(&lin(2, 1), 2),
            singer(2, 2).unwrap(),
            singer(2, 3).unwrap(),
        ],
    );
    let v = classify_f_large(&m).unwrap();
    assert_eq!(
        (v.kind, v.predicted_order, v.predicted_ffrak),
        (VerdictKind::TwoUnipotentPlusSingers, Some(42), Some(84))
    );
    assert_eq!(mat_ffrak(&m).unwrap(), 84);
    assert_eq!(m.order_bruteforce().unwrap(), 42);

    for p in [3, 5, 7] {
        let a = primitive_root(p);
        let m = blocks(p, &[(lin(p, a), 2), (lin(p, 1), 1)]);
        assert!(classify_f_large(&m).unwrap().is_none());
        assert_eq!(mat_ffrak(&m).unwrap(), (p * (p - 1)) as u64);
    }
    assert!(classify_f_large(&MatFp::identity(3, 1)).is_err());
}

#[test]
fn mat_ffrak_examples() {
    for p in [2, 3, 5] {
        assert_eq!(mat_ffrak(&MatFp::identity(p, 2)).unwrap(), p as u64);
    }
    assert_eq!(mat_ffrak(&companion(&lin(3, 1), 2)).unwrap(), 3);
    // Fixed-point-free, so every shift vanishes and 𝔉 is the order.
    assert_eq!(mat_ffrak(&singer(2, 3).unwrap()).unwrap(), 7);
}

#[test]
fn mat_ffrak_agrees_with_group_scan() {
    for (p, n) in [(2u32, 3usize), (3, 2)] {
        let g = construct_family(&Family::ElementaryAbelian {
            p: p as usize,
            k: n as u32,
        })
        .unwrap();
        for_each_gl(p, n, SWEEP_CAP, |m| {
            let alpha = matrix_to_automorphism(m, &g).unwrap();
            assert_eq!(automorphism_to_matrix(&alpha, p, n), *m);
            assert_eq!(ffrak_of_aut(&g, &alpha), mat_ffrak(m).unwrap());
            // Shift equals (I + M + … + M^{k−1})·x.
            let k = m.order_bruteforce().unwrap();
            let mut s = MatFp::zero(p, n);
            for i in 0..k {
                s = s.add(&m.pow(i)).unwrap();
            }
            let table = shift_table(&g, &alpha);
            for x in g.elements() {
                assert_eq!(
                    table[x] as u64,
                    index_of(p, &s.mat_vec(&vector_of(p, n, x as u64)))
                );
            }
            true
        })
        .unwrap();
    }
}

#[test]
fn gl_enumeration_counts() {
    for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4)] {
        let mut count = 0u64;
        for_each_gl(p, n, SWEEP_CAP, |m| {
            assert!(m.is_invertible());
            count += 1;
            true
        })
        .unwrap();
        assert_eq!(Some(count), gl_order(p as u64, n as u32));
        let parts = gl_partitioned(p, n, SWEEP_CAP, || 0u64, |c, _| *c += 1).unwrap();
        assert_eq!(parts.iter().sum::<u64>(), count);
    }
    assert_eq!(gl_order(2, 5), Some(9_999_360));
    assert!(for_each_gl(2, 6, 1000, |_| true).is_err());
}

#[test]
fn geometric_sum_vanishes_mod_unipotent_square() {
    for p in (3..=97u32).filter(|&p| crate::numtheory::is_prime(p as u64)) {
        let sum = PolyFp::new(p as u64, &vec![1; p as usize]).unwrap();
        let sq = lin(p, 1).pow(2);
        assert!(sum.rem(&sq).unwrap().is_zero(), "p={p}");
    }
}
