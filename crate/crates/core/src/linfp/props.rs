use super::gl::for_each_gl;
use super::mat::{companion, MatFp};
use super::poly::{check_prime, inv_mod, mul_mod, sub_mod, PolyFp};
use super::rcf::{primary_rcf, PrimaryRcf};
use crate::numtheory::{ceil_log, lcm};
use crate::{Error, Result};

/// Largest number of vectors or matrices an exhaustive sweep here will visit.
pub const SWEEP_CAP: u64 = 1 << 24;

fn block_orders(rcf: &PrimaryRcf) -> Result<Vec<u64>> {
    let p = rcf.p() as u64;
    rcf.blocks()
        .iter()
        .map(|b| {
            if b.poly.coeff(0) == 0 {
                return Err(Error::Singular);
            }
            Ok(b.poly.root_order()? * p.pow(ceil_log(p, b.e as u64)))
        })
        .collect()
}

/// Order from the primary blocks: lcm of `ord(root of P)·p^{⌈log_p e⌉}`.
pub fn matrix_order_rcf(rcf: &PrimaryRcf) -> Result<u64> {
    Ok(block_orders(rcf)?.into_iter().fold(1, lcm))
}

pub fn matrix_order(m: &MatFp) -> Result<u64> {
    matrix_order_rcf(&primary_rcf(m)?)
}

/// Companion matrix of the least primitive polynomial of degree `n`, with
/// coefficient vectors compared constant term first.
pub fn singer_poly(p: u64, n: usize) -> Result<PolyFp> {
    let p = check_prime(p)?;
    if n == 0 {
        return Err(Error::OutOfRange("Singer cycles need n ≥ 1".into()));
    }
    for q in PolyFp::monic_of_degree(p, n) {
        if q.coeff(0) != 0 && q.is_primitive()? {
            return Ok(q);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

pub fn singer(p: u64, n: usize) -> Result<MatFp> {
    Ok(companion(&singer_poly(p, n)?, 1))
}

/// Exponent of the centralizer of `M` in `GL(n,p)`, for block polynomials
/// that are pairwise distinct: lcm of `(p^d − 1)·p^{⌈log_p e⌉}`.
pub fn centralizer_exponent_rcf(rcf: &PrimaryRcf) -> Result<u64> {
    if !rcf.has_distinct_polys() {
        return Err(Error::RepeatedBlock(rcf.to_string()));
    }
    let p = rcf.p() as u64;
    let mut acc = 1;
    for b in rcf.blocks() {
        if b.poly.coeff(0) == 0 {
            return Err(Error::Singular);
        }
        acc = lcm(acc, unit_exponent_formula(p, b.poly.deg() as u32, b.e));
    }
    Ok(acc)
}

pub fn centralizer_exponent(m: &MatFp) -> Result<u64> {
    centralizer_exponent_rcf(&primary_rcf(m)?)
}

/// `(p^d − 1)·p^{⌈log_p e⌉}`, the exponent of `(𝔽_p[X]/(P^e))^*` for
/// irreducible `P` of degree `d`.
pub fn unit_exponent_formula(p: u64, d: u32, e: u32) -> u64 {
    (p.pow(d) - 1) * p.pow(ceil_log(p, e as u64))
}

/// Exponent of `(𝔽_p[X]/(Q))^*` by enumerating every residue. Each unit's
/// order is found by walking its powers; the powers then inherit their
/// orders as `ord(u)/gcd(k, ord(u))`, so each cyclic subgroup is walked once.
pub fn unit_exponent_bruteforce(q: &PolyFp) -> Result<u64> {
    let ring = Residues::new(q)?;
    let size = ring.size as usize;
    let mut order = vec![0u64; size];
    let mut acc = 1;
    let mut powers = Vec::new();
    for k in 0..size {
        if order[k] != 0 {
            continue;
        }
        let u = ring.decode(k as u64);
        if !u.gcd_raw(q).is_one() {
            continue;
        }
        powers.clear();
        let mut x = ring.digits(k as u64);
        let ud = x.clone();
        loop {
            let idx = ring.encode(&x);
            powers.push(idx);
            if idx == ring.one {
                break;
            }
            x = ring.mul(&x, &ud);
        }
        let ord = powers.len() as u64;
        for (i, &idx) in powers.iter().enumerate() {
            let e = i as u64 + 1;
            order[idx as usize] = ord / crate::numtheory::gcd(e, ord);
        }
        acc = lcm(acc, ord);
    }
    Ok(acc)
}

/// Residues mod a monic `Q`, coded as base-`p` digit strings.
struct Residues {
    p: u32,
    q: Vec<u32>,
    m: usize,
    size: u64,
    one: u64,
}

impl Residues {
    fn new(q: &PolyFp) -> Result<Self> {
        let q = q.monic();
        let m = q.deg();
        let p = q.p();
        let size = (p as u64)
            .checked_pow(m as u32)
            .filter(|&s| s <= SWEEP_CAP)
            .ok_or_else(|| Error::SearchCap(format!("ring of {q}")))?;
        Ok(Self {
            p,
            q: q.coeffs().to_vec(),
            m,
            size,
            one: if m == 0 { 0 } else { 1 },
        })
    }

    fn digits(&self, mut k: u64) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = (k % self.p as u64) as u32;
                k /= self.p as u64;
                d
            })
            .collect()
    }

    fn decode(&self, k: u64) -> PolyFp {
        PolyFp::from_raw(self.p, self.digits(k))
    }

    fn encode(&self, x: &[u32]) -> u64 {
        x.iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p as u64 + d as u64)
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (m, p) = (self.m, self.p as u64);
        let mut t = vec![0u64; 2 * m];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                t[i + j] = (t[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        // Reduce with X^m = −(q_0 + … + q_{m−1} X^{m−1}).
        for k in (m..2 * m).rev() {
            let c = t[k];
            if c == 0 {
                continue;
            }
            t[k] = 0;
            for i in 0..m {
                t[k - m + i] = (t[k - m + i] + (p - self.q[i] as u64) * c) % p;
            }
        }
        t[..m].iter().map(|&v| v as u32).collect()
    }
}

/// `𝔉` of `M` as an automorphism of `𝔽_p^n`: `ord(M)·lcm_x ord(S·x)` with
/// `S = Σ_{i<ord(M)} M^i`, by repeated multiplication and a sweep over the
/// vectors. Every nonzero vector has additive order `p`, so the sweep stops at
/// the first `x` with `S·x ≠ 0`.
pub fn mat_ffrak(m: &MatFp) -> Result<u64> {
    Ok(mat_order_and_ffrak(m)?.1)
}

/// Brute-force `(ord(M), 𝔉(M))`.
pub fn mat_order_and_ffrak(m: &MatFp) -> Result<(u64, u64)> {
    let (p, n) = (m.p(), m.n());
    let count = (p as u64)
        .checked_pow(n as u32)
        .filter(|&c| c <= SWEEP_CAP)
        .ok_or_else(|| Error::SearchCap(format!("{p}^{n} vectors")))?;
    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    let mut s = MatFp::identity(p, n);
    let mut power = m.clone();
    let mut ord = 1;
    while !power.is_identity() {
        s = s.add_raw(&power);
        power = power.mul_raw(m);
        ord += 1;
    }
    let mut x = vec![0u32; n];
    for _ in 0..count {
        if s.mat_vec(&x).iter().any(|&c| c != 0) {
            return Ok((ord, ord * p as u64));
        }
        increment(&mut x, p);
    }
    Ok((ord, ord))
}

pub(crate) fn increment(x: &mut [u32], p: u32) {
    for c in x.iter_mut() {
        *c += 1;
        if *c < p {
            return;
        }
        *c = 0;
    }
}

/// Number of vectors fixed by `M`.
pub fn fixed_vector_count(m: &MatFp) -> u64 {
    let dim = m
        .sub(&MatFp::identity(m.p(), m.n()))
        .expect("same shape")
        .kernel_dim();
    (m.p() as u64).pow(dim as u32)
}

/// Basis of the null space of a `rows × cols` system.
fn nullspace(mut a: Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let s = inv_mod(a[r][c], p);
        for v in a[r].iter_mut() {
            *v = mul_mod(*v, s, p);
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != 0 {
                for (v, &pv) in row.iter_mut().zip(&pivot).take(cols) {
                    *v = sub_mod(*v, mul_mod(f, pv, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Basis of `{X : XM = MX}`.
pub fn commutant_basis(m: &MatFp) -> Vec<MatFp> {
    let (n, p) = (m.n(), m.p());
    let mut eqs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // (XM − MX)_{ij} = Σ_k X_{ik} M_{kj} − M_{ik} X_{kj}
            let mut row = vec![0u32; n * n];
            for k in 0..n {
                row[i * n + k] = (row[i * n + k] + m.get(k, j)) % p;
                row[k * n + j] = sub_mod(row[k * n + j], m.get(i, k), p);
            }
            eqs.push(row);
        }
    }
    nullspace(eqs, n * n, p)
        .into_iter()
        .map(|v| MatFp::from_raw(p, n, v))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootSearch {
    /// Only candidates commuting with `M`; every root does.
    #[default]
    Centralizer,
    /// All of `GL(n,p)`, for auditing the restriction.
    FullGl,
}

fn is_proper_root(beta: &MatFp, m: &MatFp, ord_m: u64) -> bool {
    let Ok(ord_b) = beta.order_bruteforce() else {
        return false;
    };
    if ord_b <= ord_m {
        return false;
    }
    let mut power = beta.mul_raw(beta);
    for _ in 2..=ord_b {
        if &power == m {
            return true;
        }
        power = power.mul_raw(beta);
    }
    false
}

/// Whether some `β` and `k ≥ 2` satisfy `β^k = M` with `ord(β) > ord(M)`.
pub fn has_proper_root(m: &MatFp, search: RootSearch) -> Result<bool> {
    let ord_m = m.order_bruteforce()?;
    let (p, n) = (m.p(), m.n());
    match search {
        RootSearch::Centralizer => {
            let basis = commutant_basis(m);
            let total = (p as u64)
                .checked_pow(basis.len() as u32)
                .filter(|&t| t <= SWEEP_CAP);
            let total = total.ok_or_else(|| {
                Error::SearchCap(format!("commutant of dimension {}", basis.len()))
            })?;
            let mut coeffs = vec![0u32; basis.len()];
            for _ in 0..total {
                let mut beta = MatFp::zero(p, n);
                for (c, b) in coeffs.iter().zip(&basis) {
                    for _ in 0..*c {
                        beta = beta.add_raw(b);
                    }
                }
                if is_proper_root(&beta, m, ord_m) {
                    return Ok(true);
                }
                increment(&mut coeffs, p);
            }
            Ok(false)
        }
        RootSearch::FullGl => {
            let mut found = false;
            for_each_gl(p, n, SWEEP_CAP, |beta| {
                found |= is_proper_root(beta, m, ord_m);
                !found
            })?;
            Ok(found)
        }
    }
}

/// Distinct block polynomials, used to key caches of class functions.
pub fn rcf_key(rcf: &PrimaryRcf) -> Vec<(Vec<u32>, u32)> {
    rcf.blocks()
        .iter()
        .map(|b| (b.poly.coeffs().to_vec(), b.e))
        .collect()
}

/// Every triple `(p, d, e)` with `p^{de} ≤ limit`, for the unit-group
/// exponent cross-check.
pub fn ring_shapes(limit: u64) -> Vec<(u64, u32, u32)> {
    let mut out = Vec::new();
    for p in (2..=limit).filter(|&p| crate::numtheory::is_prime(p)) {
        let mut de = 1u32;
        while p.checked_pow(de).is_some_and(|s| s <= limit) {
            for d in (1..=de).filter(|d| de.is_multiple_of(*d)) {
                out.push((p, d, de / d));
            }
            de += 1;
        }
    }
    out
}

/// Irreducible monic polynomials of degree `d`, including `X` when `d = 1`.
pub fn irreducibles(p: u32, d: usize) -> Vec<PolyFp> {
    PolyFp::monic_of_degree(p, d)
        .filter(|q| q.is_irreducible())
        .collect()
}
