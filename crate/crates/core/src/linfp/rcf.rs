use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::mat::{companion, MatFp};
use super::poly::{canonical_cmp, PolyFp};
use crate::{Error, Result};

/// One primary Frobenius block `Comp(P^e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimaryBlock {
    pub poly: PolyFp,
    pub e: u32,
}

impl PrimaryBlock {
    pub fn dim(&self) -> usize {
        self.poly.deg() * self.e as usize
    }

    pub fn companion(&self) -> MatFp {
        companion(&self.poly, self.e)
    }
}

impl fmt::Display for PrimaryBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "({})", self.poly)
        } else {
            write!(f, "({})^{}", self.poly, self.e)
        }
    }
}

/// Multiset of primary blocks, sorted by (degree, coefficients, e).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimaryRcf {
    p: u32,
    n: usize,
    blocks: Vec<PrimaryBlock>,
}

impl PrimaryRcf {
    pub fn from_blocks(p: u32, mut blocks: Vec<PrimaryBlock>) -> Self {
        blocks.sort_by(|a, b| canonical_cmp(&a.poly, &b.poly).then(a.e.cmp(&b.e)));
        let n = blocks.iter().map(PrimaryBlock::dim).sum();
        Self { p, n, blocks }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[PrimaryBlock] {
        &self.blocks
    }

    /// Block-diagonal companion form.
    pub fn to_matrix(&self) -> MatFp {
        let comps: Vec<MatFp> = self.blocks.iter().map(PrimaryBlock::companion).collect();
        MatFp::block_diag(self.p, &comps)
    }

    pub fn has_distinct_polys(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].poly != w[1].poly)
    }

    /// Largest exponent per distinct block polynomial.
    fn max_exponents(&self) -> BTreeMap<Vec<u32>, (PolyFp, u32)> {
        let mut out: BTreeMap<Vec<u32>, (PolyFp, u32)> = BTreeMap::new();
        for b in &self.blocks {
            let entry = out
                .entry(b.poly.coeffs().to_vec())
                .or_insert((b.poly.clone(), 0));
            entry.1 = entry.1.max(b.e);
        }
        out
    }

    /// Checks similarity with `m` by comparing `dim ker P(M)^j` against the
    /// block-diagonal reconstruction for every block polynomial `P` and
    /// `j ≤ e_max + 1`, plus that the generalized kernels exhaust the space.
    pub fn verify_against(&self, m: &MatFp) -> Result<()> {
        let r = self.to_matrix();
        if r.n() != m.n() {
            return Err(Error::OutOfRange(format!(
                "blocks span dimension {} but matrix has {}",
                r.n(),
                m.n()
            )));
        }
        let mut generalized = 0;
        for (poly, emax) in self.max_exponents().into_values() {
            let pm = m.eval_poly(&poly);
            let pr = r.eval_poly(&poly);
            let (mut am, mut ar) = (pm.clone(), pr.clone());
            for j in 1..=emax + 1 {
                let (km, kr) = (am.kernel_dim(), ar.kernel_dim());
                if km != kr {
                    return Err(Error::OutOfRange(format!(
                        "rank fingerprint mismatch for {poly} at power {j}: {km} vs {kr}"
                    )));
                }
                if j == emax {
                    generalized += km;
                }
                am = am.mul_raw(&pm);
                ar = ar.mul_raw(&pr);
            }
        }
        if generalized != m.n() {
            return Err(Error::OutOfRange(
                "generalized kernels do not span the space".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for PrimaryRcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Diagonal of a Smith-style reduction of `XI − M` over 𝔽_p[X], monic and
/// in divisibility order. Pivots are chosen by lowest degree, then lowest
/// row, then lowest column.
pub fn smith_diagonal(m: &MatFp) -> Vec<PolyFp> {
    let n = m.n();
    let p = m.p();
    let mut a: Vec<PolyFp> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let c = (p - m.get(i, j)) % p;
            PolyFp::from_raw(p, if i == j { vec![c, 1] } else { vec![c] })
        })
        .collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let e = &a[i * n + j];
                    if !e.is_zero() {
                        let key = (e.deg(), i, j);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                diag.resize(n, PolyFp::zero(p));
                return diag;
            };
            if pi != k {
                for j in k..n {
                    a.swap(pi * n + j, k * n + j);
                }
            }
            if pj != k {
                for i in k..n {
                    a.swap(i * n + pj, i * n + k);
                }
            }
            let mut dirty = false;
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let (q, r) = a[i * n + k].div_rem_raw(&a[k * n + k]);
                for j in k + 1..n {
                    if !a[k * n + j].is_zero() {
                        a[i * n + j] = a[i * n + j].sub_raw(&q.mul_raw(&a[k * n + j]));
                    }
                }
                dirty |= !r.is_zero();
                a[i * n + k] = r;
            }
            for j in k + 1..n {
                if a[k * n + j].is_zero() {
                    continue;
                }
                let (q, r) = a[k * n + j].div_rem_raw(&a[k * n + k]);
                for i in k + 1..n {
                    if !a[i * n + k].is_zero() {
                        a[i * n + j] = a[i * n + j].sub_raw(&q.mul_raw(&a[i * n + k]));
                    }
                }
                dirty |= !r.is_zero();
                a[k * n + j] = r;
            }
            if dirty {
                continue;
            }
            let piv = &a[k * n + k];
            let bad =
                (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[i * n + j].rem_raw(piv).is_zero()));
            match bad {
                Some(i) => {
                    for j in k + 1..n {
                        a[k * n + j] = a[k * n + j].add_raw(&a[i * n + j]);
                    }
                }
                None => break,
            }
        }
        diag.push(a[k * n + k].monic());
    }
    diag
}

/// Invariant factors of degree ≥ 1, each dividing the next.
pub fn invariant_factors(m: &MatFp) -> Vec<PolyFp> {
    smith_diagonal(m)
        .into_iter()
        .filter(|d| d.deg() >= 1)
        .collect()
}

/// Primary rational canonical form without the similarity check.
pub fn primary_rcf_unchecked(m: &MatFp) -> PrimaryRcf {
    let mut blocks = Vec::new();
    for d in invariant_factors(m) {
        for (poly, e) in d.factor() {
            blocks.push(PrimaryBlock { poly, e });
        }
    }
    PrimaryRcf::from_blocks(m.p(), blocks)
}

/// Primary rational canonical form, verified against `m` by rank
/// fingerprints.
pub fn primary_rcf(m: &MatFp) -> Result<PrimaryRcf> {
    let rcf = primary_rcf_unchecked(m);
    rcf.verify_against(m)?;
    Ok(rcf)
}

/// Characteristic polynomial as the product of the invariant factors.
pub fn char_poly(m: &MatFp) -> PolyFp {
    invariant_factors(m)
        .iter()
        .fold(PolyFp::one(m.p()), |acc, d| acc.mul_raw(d))
}
