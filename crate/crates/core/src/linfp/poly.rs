use std::fmt;

use serde::Serialize;

use crate::numtheory::{factorize, is_prime};
use crate::{Error, Result};

/// Polynomial over 𝔽_p, coefficients constant-first with no trailing zeros
/// (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PolyFp {
    p: u32,
    c: Vec<u32>,
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    crate::numtheory::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// Largest supported field characteristic; keeps every dot product of
/// reduced entries inside a `u64`.
pub const MAX_P: u64 = 65_521;

pub(crate) fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_P {
        return Err(Error::OutOfRange(format!("p = {p} exceeds {MAX_P}")));
    }
    Ok(p as u32)
}

impl PolyFp {
    /// Reduces integer coefficients (constant first) mod `p`.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self> {
        let p = check_prime(p)?;
        let c = coeffs
            .iter()
            .map(|&a| a.rem_euclid(p as i64) as u32)
            .collect();
        Ok(Self::from_raw(p, c))
    }

    pub(crate) fn from_raw(p: u32, mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    /// Parses a constant-first list such as `"1,1,1"` (= 1 + X + X²).
    pub fn parse(p: u64, s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, &coeffs)
    }

    pub fn zero(p: u32) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, a: u32) -> Self {
        Self::from_raw(p, vec![a % p])
    }

    pub fn x(p: u32) -> Self {
        Self::from_raw(p, vec![0, 1])
    }

    /// `X − a`.
    pub fn linear(p: u32, a: u32) -> Self {
        Self::from_raw(p, vec![(p - a % p) % p, 1])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p as u64, other.p as u64));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        Self::from_raw(
            self.p,
            (0..n)
                .map(|i| add_mod(self.coeff(i), other.coeff(i), self.p))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.sub_raw(other))
    }

    pub(crate) fn sub_raw(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        Self::from_raw(
            self.p,
            (0..n)
                .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(
            self.p,
            self.c.iter().map(|&a| (self.p - a) % self.p).collect(),
        )
    }

    pub fn scale(&self, k: u32) -> Self {
        Self::from_raw(
            self.p,
            self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_raw(self.p, out.into_iter().map(|v| v as u32).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            base = base.mul_raw(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.div_rem_raw(d))
    }

    pub(crate) fn div_rem_raw(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.deg();
        if self.c.len() < d.c.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = mul_mod(r[k + dd], inv, p);
            q[k] = t;
            if t != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = sub_mod(r[k + j], mul_mod(t, b, p), p);
                }
            }
        }
        r.truncate(dd);
        (Self::from_raw(p, q), Self::from_raw(p, r))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    pub(crate) fn rem_raw(&self, d: &Self) -> Self {
        self.div_rem_raw(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.gcd_raw(other))
    }

    pub(crate) fn gcd_raw(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_raw(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| add_mod(mul_mod(acc, x, self.p), a, self.p))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem_raw(m);
        let mut base = self.rem_raw(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base).rem_raw(m);
            }
            base = base.mul_raw(&base).rem_raw(m);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility of a polynomial of degree ≥ 1, via
    /// `gcd(X^{p^i} − X, P) = 1` for `1 ≤ i ≤ deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        let x = Self::x(self.p);
        let mut h = x.rem_raw(self);
        for _ in 1..=d / 2 {
            h = h.pow_mod(self.p as u64, self);
            if !h.sub_raw(&x).gcd_raw(self).is_one() {
                return false;
            }
        }
        true
    }

    /// Multiplicative order of `X` modulo an irreducible `P` with `P(0) ≠ 0`,
    /// i.e. the order of any root of `P`.
    pub fn root_order(&self) -> Result<u64> {
        if !self.is_irreducible() || self.coeff(0) == 0 {
            return Err(Error::OutOfRange(format!(
                "{self} is not irreducible with nonzero constant term"
            )));
        }
        let n = (self.p as u64)
            .checked_pow(self.deg() as u32)
            .map(|q| q - 1)
            .ok_or_else(|| Error::SearchCap(format!("{}^{} overflows", self.p, self.deg())))?;
        let x = Self::x(self.p);
        let mut ord = n;
        for (q, _) in factorize(n)? {
            while ord % q == 0 && x.pow_mod(ord / q, self).is_one() {
                ord /= q;
            }
        }
        Ok(ord)
    }

    /// Irreducible with roots generating `𝔽_{p^d}^*`.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_irreducible() || self.coeff(0) == 0 {
            return Ok(false);
        }
        let full = (self.p as u64).pow(self.deg() as u32) - 1;
        Ok(self.root_order()? == full)
    }

    /// All monic polynomials of degree `d`, in lexicographic order of the
    /// constant-first coefficient vector (constant term most significant).
    pub fn monic_of_degree(p: u32, d: usize) -> impl Iterator<Item = PolyFp> {
        let total = (p as u64).pow(d as u32);
        (0..total).map(move |mut k| {
            let mut c = vec![0u32; d + 1];
            for i in (0..d).rev() {
                c[i] = (k % p as u64) as u32;
                k /= p as u64;
            }
            c[d] = 1;
            PolyFp { p, c }
        })
    }

    /// Factorization of a monic polynomial into monic irreducible powers,
    /// by trial division with monic polynomials of increasing degree.
    pub fn factor(&self) -> Vec<(PolyFp, u32)> {
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg() >= 2 * d {
            for q in Self::monic_of_degree(self.p, d) {
                let mut e = 0;
                loop {
                    let (quo, r) = rest.div_rem_raw(&q);
                    if !r.is_zero() {
                        break;
                    }
                    rest = quo;
                    e += 1;
                }
                if e > 0 {
                    out.push((q, e));
                }
                if rest.deg() < 2 * d {
                    break;
                }
            }
            d += 1;
        }
        if rest.deg() >= 1 {
            match out.iter_mut().find(|(q, _)| *q == rest) {
                Some(entry) => entry.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        out
    }
}

/// Degree first, then constant-first coefficients lexicographically.
pub fn canonical_cmp(a: &PolyFp, b: &PolyFp) -> std::cmp::Ordering {
    a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c))
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{a}X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{a}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> PolyFp {
        PolyFp::new(p, c).unwrap()
    }

    #[test]
    fn arithmetic() {
        let x1 = poly(2, &[-1, 1]);
        assert_eq!(x1.mul(&x1).unwrap(), poly(2, &[1, 0, 1]));
        assert_eq!(
            poly(2, &[1, 1, 1]).mul(&poly(2, &[1, 1])).unwrap(),
            poly(2, &[1, 0, 0, 1])
        );
        let a = poly(5, &[3, 0, 2, 4]);
        let b = poly(5, &[1, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
        assert!(r.deg() < b.deg() || r.is_zero());
        assert_eq!(a.gcd(&PolyFp::zero(5)).unwrap(), a.monic());
        assert!(matches!(
            a.div_rem(&PolyFp::zero(5)),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(a.add(&x1), Err(Error::FieldMismatch(5, 2))));
        assert!(matches!(PolyFp::new(4, &[1]), Err(Error::NotPrime(4))));
        assert_eq!(
            poly(7, &[1, 1]).sub(&poly(7, &[1, 1])).unwrap(),
            PolyFp::zero(7)
        );
    }

    #[test]
    fn irreducible_and_primitive() {
        let p = poly(2, &[1, 1, 1]);
        assert!(p.is_irreducible());
        assert!(p.is_primitive().unwrap());
        assert_eq!(p.root_order().unwrap(), 3);
        let q = poly(3, &[1, 0, 1]);
        assert!(q.is_irreducible());
        assert!(!q.is_primitive().unwrap());
        assert_eq!(q.root_order().unwrap(), 4);
        assert!(PolyFp::linear(2, 1).is_primitive().unwrap());
        for p in [3, 5, 7] {
            assert!(!PolyFp::linear(p, 1).is_primitive().unwrap());
        }
        assert!(!poly(2, &[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree d over 𝔽_p, by Möbius.
        let expect = [
            (2, 1, 2),
            (2, 2, 1),
            (2, 3, 2),
            (2, 4, 3),
            (2, 5, 6),
            (3, 2, 3),
            (3, 3, 8),
            (5, 2, 10),
        ];
        for (p, d, n) in expect {
            let count = PolyFp::monic_of_degree(p, d)
                .filter(|q| q.is_irreducible())
                .count();
            assert_eq!(count, n, "p={p} d={d}");
        }
    }

    #[test]
    fn factoring() {
        let f = poly(2, &[1, 0, 0, 1]);
        let fs = f.factor();
        assert_eq!(fs, vec![(poly(2, &[1, 1]), 1), (poly(2, &[1, 1, 1]), 1)]);
        let g = poly(3, &[1, 1]).pow(3).mul(&poly(3, &[1, 0, 1])).unwrap();
        assert_eq!(
            g.factor(),
            vec![(poly(3, &[1, 1]), 3), (poly(3, &[1, 0, 1]), 1)]
        );
        let h = poly(5, &[2, 0, 1]).pow(2);
        assert_eq!(h.factor(), vec![(poly(5, &[2, 0, 1]), 2)]);
    }

    #[test]
    fn display_and_parse() {
        let p = PolyFp::parse(3, "2,1,1").unwrap();
        assert_eq!(p.to_string(), "X^2 + X + 2");
        assert!(PolyFp::parse(3, "a").is_err());
    }
}
