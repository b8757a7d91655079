//! Small integer helpers: gcd/lcm, primality, trial-division factoring and a
//! factored lcm accumulator.

use std::collections::BTreeMap;

use crate::{Error, Result};

/// Largest integer [`factorize`] accepts.
pub const FACTOR_CAP: u64 = 1_000_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Panics on overflow; callers only combine orders bounded by a group order.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflow")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 || n > FACTOR_CAP {
        return Err(Error::SearchCap(format!(
            "cannot factor {n} (cap {FACTOR_CAP})"
        )));
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

/// Smallest `k` with `p^k >= e`, i.e. `⌈log_p e⌉` for `e >= 1`.
pub fn ceil_log(p: u64, e: u64) -> u32 {
    let mut k = 0;
    let mut pk = 1u64;
    while pk < e {
        pk *= p;
        k += 1;
    }
    k
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Modular exponentiation with 128-bit intermediates.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn mult_order_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Least common multiple kept as a prime-exponent map, so that long folds
/// never overflow before the final value is requested.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredLcm {
    exps: BTreeMap<u64, u32>,
}

impl FactoredLcm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn include(&mut self, n: u64) {
        let factors = factorize(n).expect("lcm operand within factoring cap");
        for (q, e) in factors {
            let slot = self.exps.entry(q).or_insert(0);
            *slot = (*slot).max(e);
        }
    }

    pub fn merge(&mut self, other: &FactoredLcm) {
        for (&q, &e) in &other.exps {
            let slot = self.exps.entry(q).or_insert(0);
            *slot = (*slot).max(e);
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.exps.iter().map(|(&q, &e)| (q, e))
    }

    /// `None` if the value does not fit in a `u64`.
    pub fn value(&self) -> Option<u64> {
        self.exps
            .iter()
            .try_fold(1u64, |acc, (&q, &e)| acc.checked_mul(q.checked_pow(e)?))
    }
}

impl FromIterator<u64> for FactoredLcm {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut acc = FactoredLcm::new();
        for n in iter {
            acc.include(n);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(360).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(997).unwrap(), vec![(997, 1)]);
        assert!(factorize(FACTOR_CAP + 1).is_err());
    }

    #[test]
    fn ceil_log_values() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 3), 2);
        assert_eq!(ceil_log(3, 3), 1);
        assert_eq!(ceil_log(3, 4), 2);
    }

    #[test]
    fn factored_lcm_matches_plain() {
        let xs = [4u64, 6, 10, 7, 1];
        let f: FactoredLcm = xs.iter().copied().collect();
        assert_eq!(f.value(), Some(xs.iter().fold(1, |a, &b| lcm(a, b))));
    }

    #[test]
    fn orders_mod() {
        assert_eq!(mult_order_mod(2, 7), Some(3));
        assert_eq!(mult_order_mod(3, 7), Some(6));
        assert_eq!(mult_order_mod(2, 4), None);
    }
}
