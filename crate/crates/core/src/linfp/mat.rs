use std::fmt;

use serde::Serialize;

use super::poly::{add_mod, check_prime, inv_mod, mul_mod, sub_mod, PolyFp};
use crate::{Error, Result};

/// Square matrix over 𝔽_p, row-major. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatFp {
    p: u32,
    n: usize,
    a: Vec<u32>,
}

impl MatFp {
    /// Row-major integer entries, reduced mod `p`.
    pub fn new(p: u64, n: usize, entries: &[i64]) -> Result<Self> {
        let p = check_prime(p)?;
        if entries.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(Self {
            p,
            n,
            a: entries
                .iter()
                .map(|&x| x.rem_euclid(p as i64) as u32)
                .collect(),
        })
    }

    pub(crate) fn from_raw(p: u32, n: usize, a: Vec<u32>) -> Self {
        debug_assert_eq!(a.len(), n * n);
        Self { p, n, a }
    }

    /// Parses `"a,b;c,d"` (rows separated by `;`).
    pub fn parse(p: u64, s: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::Parse(format!("entry {t:?}: {e}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("matrix {s:?} is not square")));
        }
        Self::new(p, n, &rows.concat())
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Self {
            p,
            n,
            a: vec![0; n * n],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Self::zero(p, n);
        for i in 0..n {
            m.a[i * n + i] = c % p;
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[i * self.n + j] = v % self.p;
    }

    pub fn entries(&self) -> &[u32] {
        &self.a
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == (i == j) as u32))
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p as u64, other.p as u64));
        }
        if self.n != other.n {
            return Err(Error::OutOfRange(format!(
                "dimension {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        let n = self.n;
        let p = self.p as u64;
        let mut out = vec![0u32; n * n];
        // Accumulate in u64; n·(p−1)² fits comfortably for desk-scale p.
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += self.a[i * n + k] as u64 * other.a[k * n + j] as u64;
                }
                out[i * n + j] = (s % p) as u32;
            }
        }
        Self {
            p: self.p,
            n,
            a: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_raw(other))
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        Self {
            p: self.p,
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(&x, &y)| add_mod(x, y, self.p))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            p: self.p,
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(&x, &y)| sub_mod(x, y, self.p))
                .collect(),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.p, self.n);
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

    pub fn mat_vec(&self, x: &[u32]) -> Vec<u32> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let s: u64 = (0..n).map(|k| self.a[i * n + k] as u64 * x[k] as u64).sum();
                (s % self.p as u64) as u32
            })
            .collect()
    }

    /// `P(M)` by Horner's rule.
    pub fn eval_poly(&self, poly: &PolyFp) -> Self {
        let mut acc = Self::zero(self.p, self.n);
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mul_raw(self);
            for i in 0..self.n {
                acc.a[i * self.n + i] = add_mod(acc.a[i * self.n + i], c, self.p);
            }
        }
        acc
    }

    /// Row echelon rank.
    pub fn rank(&self) -> usize {
        let (n, p) = (self.n, self.p);
        let mut a = self.a.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                a.swap(piv * n + j, rank * n + j);
            }
            let inv = inv_mod(a[rank * n + col], p);
            for r in rank + 1..n {
                let f = mul_mod(a[r * n + col], inv, p);
                if f != 0 {
                    for j in col..n {
                        a[r * n + j] = sub_mod(a[r * n + j], mul_mod(f, a[rank * n + j], p), p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.n - self.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn inverse(&self) -> Result<Self> {
        let (n, p) = (self.n, self.p);
        let mut a = self.a.clone();
        let mut inv = Self::identity(p, n).a;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(Error::Singular)?;
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let s = inv_mod(a[col * n + col], p);
            for j in 0..n {
                a[col * n + j] = mul_mod(a[col * n + j], s, p);
                inv[col * n + j] = mul_mod(inv[col * n + j], s, p);
            }
            for r in 0..n {
                let f = a[r * n + col];
                if r != col && f != 0 {
                    for j in 0..n {
                        a[r * n + j] = sub_mod(a[r * n + j], mul_mod(f, a[col * n + j], p), p);
                        inv[r * n + j] =
                            sub_mod(inv[r * n + j], mul_mod(f, inv[col * n + j], p), p);
                    }
                }
            }
        }
        Ok(Self { p, n, a: inv })
    }

    pub fn block_diag(p: u32, blocks: &[MatFp]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zero(p, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.a[(off + i) * n + off + j] = b.get(i, j);
                }
            }
            off += b.n;
        }
        m
    }

    /// Multiplicative order by repeated multiplication.
    pub fn order_bruteforce(&self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::Singular);
        }
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.mul_raw(self);
            k += 1;
        }
        Ok(k)
    }
}

/// Companion matrix of `P^e`: ones on the subdiagonal, last column the
/// negated coefficients `−a_0, …, −a_{m−1}`.
pub fn companion(poly: &PolyFp, e: u32) -> MatFp {
    let q = poly.monic().pow(e as u64);
    let m = q.deg();
    let p = q.p();
    let mut out = MatFp::zero(p, m);
    for i in 0..m {
        if i + 1 < m {
            out.a[(i + 1) * m + i] = 1;
        }
        out.a[i * m + m - 1] = (p - q.coeff(i)) % p;
    }
    out
}

impl fmt::Display for MatFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MatFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}] mod {}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let m = MatFp::parse(3, "0,2;1,2").unwrap();
        assert_eq!(m.to_string(), "0,2;1,2");
        assert!(MatFp::parse(3, "1,2;3").is_err());
        assert!(MatFp::parse(6, "1").is_err());
    }

    #[test]
    fn companion_layout() {
        assert_eq!(
            companion(&PolyFp::linear(5, 1), 1),
            MatFp::parse(5, "1").unwrap()
        );
        assert_eq!(
            companion(&PolyFp::linear(3, 1), 2),
            MatFp::parse(3, "0,-1;1,2").unwrap()
        );
        assert_eq!(
            companion(&PolyFp::new(2, &[1, 1, 1]).unwrap(), 1),
            MatFp::parse(2, "0,1;1,1").unwrap()
        );
    }

    #[test]
    fn inverse_and_rank() {
        let m = MatFp::parse(7, "1,2,3;0,1,4;5,6,0").unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = MatFp::parse(5, "1,2;2,4").unwrap();
        assert_eq!(s.rank(), 1);
        assert!(matches!(s.inverse(), Err(Error::Singular)));
        assert!(matches!(s.order_bruteforce(), Err(Error::Singular)));
    }

    #[test]
    fn companion_annihilated_by_its_polynomial() {
        let q = PolyFp::new(3, &[2, 1, 0, 1]).unwrap();
        let c = companion(&q, 2);
        assert!(c.eval_poly(&q.pow(2)).is_zero());
        assert!(!c.eval_poly(&q).is_zero());
    }
}
