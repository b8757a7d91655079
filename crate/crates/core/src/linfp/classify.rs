//! Predicates for large automorphism order and large 𝔣 on `𝔽_p^n`, read
//! off the primary rational canonical form.

use serde::Serialize;

use super::mat::MatFp;
use super::poly::PolyFp;
use super::rcf::{primary_rcf, PrimaryBlock, PrimaryRcf};
use crate::numtheory::gcd;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    /// A single primitive block of full dimension.
    Singer,
    /// `p` odd, `n = 2`, single block `Comp((X − a)²)` with `a` primitive.
    POddJordanPair,
    /// `p = 2`, at least two Singer blocks in pairwise coprime dimensions.
    P2CoprimeSingers,
    /// `p` odd, blocks `Comp(X − 1)` and a Singer cycle in dimension `n − 1`.
    FixPlusSinger,
    /// `p = 2`, one block `Comp(X − 1)` or `Comp((X − 1)²)` next to Singer
    /// blocks in pairwise coprime dimensions.
    TwoUnipotentPlusSingers,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationVerdict {
    pub kind: VerdictKind,
    pub predicted_order: Option<u64>,
    pub predicted_ffrak: Option<u64>,
}

impl ClassificationVerdict {
    fn none() -> Self {
        Self {
            kind: VerdictKind::None,
            predicted_order: None,
            predicted_ffrak: None,
        }
    }

    fn fixed_point_free(kind: VerdictKind, order: u64) -> Self {
        Self {
            kind,
            predicted_order: Some(order),
            predicted_ffrak: Some(order),
        }
    }

    pub fn is_none(&self) -> bool {
        self.kind == VerdictKind::None
    }
}

fn is_singer_block(b: &PrimaryBlock) -> bool {
    b.e == 1 && b.poly.coeff(0) != 0 && b.poly.is_primitive().unwrap_or(false)
}

/// For `p = 2`: Singer blocks of dimension > 1 in pairwise coprime
/// dimensions with `∏(1 − 2^{−d}) > ½`. Returns `∏(2^d − 1)`.
fn coprime_singers_p2(blocks: &[&PrimaryBlock]) -> Option<u64> {
    let mut dims = Vec::new();
    for b in blocks {
        let d = b.poly.deg() as u64;
        if d < 2 || !is_singer_block(b) {
            return None;
        }
        if dims.iter().any(|&e| gcd(e, d) != 1) {
            return None;
        }
        dims.push(d);
    }
    let total: u32 = dims.iter().sum::<u64>() as u32;
    let prod: u64 = dims.iter().map(|&d| (1u64 << d) - 1).product();
    // ∏(1 − 2^{−d}) > ½  ⇔  2·∏(2^d − 1) > 2^{Σd}
    (2 * prod as u128 > 1u128 << total).then_some(prod)
}

fn large_order(rcf: &PrimaryRcf) -> ClassificationVerdict {
    let (p, n) = (rcf.p() as u64, rcf.n() as u32);
    let blocks = rcf.blocks();
    if p == 2 {
        let refs: Vec<&PrimaryBlock> = blocks.iter().collect();
        return match coprime_singers_p2(&refs) {
            Some(ord) if refs.len() == 1 => {
                ClassificationVerdict::fixed_point_free(VerdictKind::Singer, ord)
            }
            Some(ord) => {
                ClassificationVerdict::fixed_point_free(VerdictKind::P2CoprimeSingers, ord)
            }
            None => ClassificationVerdict::none(),
        };
    }
    if let [b] = blocks {
        if b.poly.deg() as u32 == n && is_singer_block(b) {
            return ClassificationVerdict::fixed_point_free(VerdictKind::Singer, p.pow(n) - 1);
        }
        if n == 2
            && b.e == 2
            && b.poly.deg() == 1
            && is_singer_block(&PrimaryBlock {
                poly: b.poly.clone(),
                e: 1,
            })
        {
            return ClassificationVerdict::fixed_point_free(
                VerdictKind::POddJordanPair,
                p * (p - 1),
            );
        }
    }
    ClassificationVerdict::none()
}

fn check_invertible(rcf: &PrimaryRcf) -> Result<()> {
    if rcf.blocks().iter().any(|b| b.poly.coeff(0) == 0) {
        return Err(Error::Singular);
    }
    Ok(())
}

/// Whether `ord(M) > ½pⁿ`, with the predicted order.
pub fn classify_large_order_rcf(rcf: &PrimaryRcf) -> Result<ClassificationVerdict> {
    check_invertible(rcf)?;
    Ok(large_order(rcf))
}

pub fn classify_large_order(m: &MatFp) -> Result<ClassificationVerdict> {
    classify_large_order_rcf(&primary_rcf(m)?)
}

/// Whether `𝔣(M) > ½` on `𝔽_p^n` (`n > 1`), with predicted order and 𝔉.
pub fn classify_f_large_rcf(rcf: &PrimaryRcf) -> Result<ClassificationVerdict> {
    check_invertible(rcf)?;
    let (p, n) = (rcf.p(), rcf.n());
    if n <= 1 {
        return Err(Error::OutOfRange(
            "the 𝔣 > ½ classification needs n > 1".into(),
        ));
    }
    let large = large_order(rcf);
    if !large.is_none() {
        return Ok(large);
    }
    let one = PolyFp::linear(p, 1);
    let (unipotent, rest): (Vec<&PrimaryBlock>, Vec<&PrimaryBlock>) =
        rcf.blocks().iter().partition(|b| b.poly == one);
    let [u] = unipotent.as_slice() else {
        return Ok(ClassificationVerdict::none());
    };
    let p64 = p as u64;
    if p > 2 {
        if let [s] = rest.as_slice() {
            if u.e == 1 && s.poly.deg() == n - 1 && is_singer_block(s) {
                let ord = p64.pow(n as u32 - 1) - 1;
                return Ok(ClassificationVerdict {
                    kind: VerdictKind::FixPlusSinger,
                    predicted_order: Some(ord),
                    predicted_ffrak: Some(ord * p64),
                });
            }
        }
        return Ok(ClassificationVerdict::none());
    }
    if u.e > 2 {
        return Ok(ClassificationVerdict::none());
    }
    let Some(ord_gamma) = coprime_singers_p2(&rest) else {
        return Ok(ClassificationVerdict::none());
    };
    let (order, ffrak) = if u.e == 1 {
        (ord_gamma, 2 * ord_gamma)
    } else {
        (2 * ord_gamma, 4 * ord_gamma)
    };
    Ok(ClassificationVerdict {
        kind: VerdictKind::TwoUnipotentPlusSingers,
        predicted_order: Some(order),
        predicted_ffrak: Some(ffrak),
    })
}

pub fn classify_f_large(m: &MatFp) -> Result<ClassificationVerdict> {
    classify_f_large_rcf(&primary_rcf(m)?)
}
