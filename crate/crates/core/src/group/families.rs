//! Built-in group families and product constructions.
//!
//! Element orderings:
//! - `cyclic:n`: element `i` is `i mod n`, so `i·j = (i + j) mod n`.
//! - `elementary_abelian:p:k`: element `i` is the vector of base-`p` digits of
//!   `i` (digit `t` is coordinate `t`); the product adds digitwise mod `p`.
//! - `dihedral:n` (order `2n`): index `i + n·j` is `r^i s^j`, with `s r s = r⁻¹`.
//! - `dicyclic:n` (order `4n`): index `i + 2n·j` is `a^i x^j`, with
//!   `a^{2n} = 1`, `x² = a^n`, `x⁻¹ a x = a⁻¹`.
//! - `symmetric:n`, `alternating:n`: permutations of `1..=n` in lexicographic
//!   order of their image tuples; `σ·τ` applies `σ` first.
//! - products: `(a, b) ↦ a·|B| + b`.

use std::fmt;
use std::str::FromStr;

use super::ingest::{permutation_closure, GroupSource};
use super::{Elem, Group, Validation};
use crate::autom::Automorphism;
use crate::numtheory::{gcd, is_prime, pow_mod};
use crate::{Error, Result};

/// Groups shipped as permutation generators.
pub const NAMED_GROUPS: &[(&str, &str)] = &[
    ("psl2_7", include_str!("../../data/psl2_7.json")),
    ("sl2_3", include_str!("../../data/sl2_3.json")),
    ("gl2_3", include_str!("../../data/gl2_3.json")),
    ("agl1_8", include_str!("../../data/agl1_8.json")),
    ("agl1_9", include_str!("../../data/agl1_9.json")),
    ("c3sq_c4", include_str!("../../data/c3sq_c4.json")),
    ("c3sq_q8", include_str!("../../data/c3sq_q8.json")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    ElementaryAbelian {
        p: usize,
        k: u32,
    },
    Dihedral(usize),
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    /// `C_m ⋊ C_n`, the generator of `C_n` acting by `x ↦ x^r`.
    CyclicSemidirect {
        m: usize,
        n: usize,
        r: usize,
    },
    /// One of [`NAMED_GROUPS`].
    Named(&'static str),
    Product(Box<Family>, Box<Family>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::ElementaryAbelian { p, k } => write!(f, "elementary_abelian:{p}:{k}"),
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            Family::Symmetric(n) => write!(f, "symmetric:{n}"),
            Family::Alternating(n) => write!(f, "alternating:{n}"),
            Family::CyclicSemidirect { m, n, r } => write!(f, "semidirect:{m}:{n}:{r}"),
            Family::Named(name) => write!(f, "{name}"),
            Family::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name:params`, with `*` separating direct-product factors.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.rsplit_once('*') {
            return Ok(Family::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let nums: Vec<usize> = parts
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad parameter {x:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        let want = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{name} takes {k} parameter(s), got {}",
                    nums.len()
                )))
            }
        };
        Ok(match name {
            "cyclic" => {
                want(1)?;
                Family::Cyclic(nums[0])
            }
            "elementary_abelian" => {
                want(2)?;
                Family::ElementaryAbelian {
                    p: nums[0],
                    k: nums[1] as u32,
                }
            }
            "dihedral" => {
                want(1)?;
                Family::Dihedral(nums[0])
            }
            "dicyclic" => {
                want(1)?;
                Family::Dicyclic(nums[0])
            }
            "symmetric" => {
                want(1)?;
                Family::Symmetric(nums[0])
            }
            "alternating" => {
                want(1)?;
                Family::Alternating(nums[0])
            }
            "semidirect" => {
                want(3)?;
                Family::CyclicSemidirect {
                    m: nums[0],
                    n: nums[1],
                    r: nums[2],
                }
            }
            _ => match NAMED_GROUPS.iter().find(|(n, _)| *n == name) {
                Some((n, _)) => {
                    want(0)?;
                    Family::Named(n)
                }
                None => return Err(Error::Parse(format!("unknown family {name:?}"))),
            },
        })
    }
}

fn formula_group(label: String, n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Group> {
    let table: Vec<Elem> = (0..n * n).map(|k| mul(k / n, k % n)).collect();
    Group::from_table(label, n, &table, Validation::default())
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > super::MAX_TABLE_ORDER {
        Err(Error::OutOfRange(format!("group order {n}")))
    } else {
        Ok(())
    }
}

pub fn construct_family(spec: &Family) -> Result<Group> {
    let label = spec.to_string();
    match *spec {
        Family::Cyclic(n) => {
            check_order(n)?;
            formula_group(label, n, |a, b| (a + b) % n)
        }
        Family::ElementaryAbelian { p, k } => {
            if !is_prime(p as u64) {
                return Err(Error::NotPrime(p as u64));
            }
            let n = p
                .checked_pow(k)
                .filter(|&n| k >= 1 && n <= super::MAX_TABLE_ORDER)
                .ok_or_else(|| Error::OutOfRange(format!("{p}^{k}")))?;
            formula_group(label, n, |a, b| {
                let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
                for _ in 0..k {
                    out += ((a % p + b % p) % p) * w;
                    a /= p;
                    b /= p;
                    w *= p;
                }
                out
            })
        }
        Family::Dihedral(n) => {
            check_order(2 * n)?;
            formula_group(label, 2 * n, |x, y| {
                let (a, b) = (x % n, x / n);
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                rot + n * ((b + d) % 2)
            })
        }
        Family::Dicyclic(n) => {
            check_order(4 * n)?;
            let m = 2 * n;
            formula_group(label, 4 * n, |x, y| {
                let (i, j) = (x % m, x / m);
                let (k, l) = (y % m, y / m);
                if j == 0 {
                    (i + k) % m + m * l
                } else if l == 0 {
                    (i + m - k) % m + m
                } else {
                    (i + m - k + n) % m
                }
            })
        }
        Family::Symmetric(n) => {
            if !(1..=5).contains(&n) {
                return Err(Error::OutOfRange(format!(
                    "symmetric({n}) supports 1 <= n <= 5"
                )));
            }
            permutation_family(label, n, false)
        }
        Family::Alternating(n) => {
            if !(1..=6).contains(&n) {
                return Err(Error::OutOfRange(format!(
                    "alternating({n}) supports 1 <= n <= 6"
                )));
            }
            permutation_family(label, n, true)
        }
        Family::CyclicSemidirect { m, n, r } => cyclic_semidirect(m, n, r),
        Family::Named(name) => {
            let (_, json) = NAMED_GROUPS
                .iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| Error::Parse(name.into()))?;
            let src: GroupSource = serde_json::from_str(json)?;
            src.build(super::MAX_TABLE_ORDER, Validation::default())
        }
        Family::Product(ref a, ref b) => {
            let (ga, gb) = (construct_family(a)?, construct_family(b)?);
            check_order(ga.order() * gb.order())?;
            Ok(direct_product(&ga, &gb).relabel(label))
        }
    }
}

fn permutation_family(label: String, n: usize, even_only: bool) -> Result<Group> {
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        if !even_only || parity(&cur) == 0 {
            perms.push(cur.clone());
        }
        if !next_permutation(&mut cur) {
            break;
        }
    }
    permutation_closure(label, n, perms, usize::MAX, Validation::default())
}

fn parity(p: &[u8]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn direct_product(a: &Group, b: &Group) -> Group {
    let nb = b.order();
    let n = a.order() * nb;
    let table: Vec<Elem> = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
        .collect();
    let label = format!("{}*{}", a.label(), b.label());
    Group::from_table(
        label,
        n,
        &table,
        Validation {
            full_assoc_limit: 0,
            spot_checks: 0,
            seed: 0,
        },
    )
    .expect("direct product of groups is a group")
}

/// External semidirect product with elements `(n, h)` at index `n·|H| + h`
/// and product `(n₁, h₁)(n₂, h₂) = (n₁^{action(h₂)}·n₂, h₁h₂)`.
///
/// `action[h]` is an automorphism of `N`; the map `h ↦ action[h]` must be a
/// homomorphism for right actions: `action[h₁h₂] = action[h₁]` then
/// `action[h₂]`.
pub fn semidirect_product(n: &Group, h: &Group, action: &[Automorphism]) -> Result<Group> {
    if action.len() != h.order() {
        return Err(Error::NotHomomorphism(
            "action table length differs from |H|".into(),
        ));
    }
    for a in action {
        a.verify(n)
            .map_err(|e| Error::NotHomomorphism(format!("action entry: {e}")))?;
    }
    for x in h.elements() {
        for y in h.elements() {
            let xy = &action[h.mul(x, y)];
            if n.elements()
                .any(|v| xy.apply(v) != action[y].apply(action[x].apply(v)))
            {
                return Err(Error::NotHomomorphism(format!("action fails at ({x},{y})")));
            }
        }
    }
    let nh = h.order();
    let total = n.order() * nh;
    check_order(total)?;
    let table: Vec<Elem> = (0..total * total)
        .map(|k| {
            let (x, y) = (k / total, k % total);
            let (n1, h1, n2, h2) = (x / nh, x % nh, y / nh, y % nh);
            n.mul(action[h2].apply(n1), n2) * nh + h.mul(h1, h2)
        })
        .collect();
    let label = format!("{}:{}", n.label(), h.label());
    Group::from_table(
        label,
        total,
        &table,
        Validation {
            full_assoc_limit: 0,
            spot_checks: 0,
            seed: 0,
        },
    )
}

/// `C_m ⋊ C_n` where the generator of `C_n` acts by `x ↦ x^r`.
pub fn cyclic_semidirect(m: usize, n: usize, r: usize) -> Result<Group> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange(
            "cyclic factors must be nontrivial".into(),
        ));
    }
    if gcd(r as u64, m as u64) != 1 || pow_mod(r as u64, n as u64, m as u64) != 1 % m as u64 {
        return Err(Error::OutOfRange(format!(
            "x -> x^{r} is not an automorphism of C_{m} of order dividing {n}"
        )));
    }
    let cm = construct_family(&Family::Cyclic(m))?;
    let cn = construct_family(&Family::Cyclic(n))?;
    let action: Vec<Automorphism> = (0..n)
        .map(|i| {
            let e = pow_mod(r as u64, i as u64, m as u64) as usize;
            Automorphism::from_images_unchecked((0..m).map(|x| x * e % m).collect())
        })
        .collect();
    Ok(semidirect_product(&cm, &cn, &action)?.relabel(format!("semidirect:{m}:{n}:{r}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> Group {
        construct_family(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(fam("cyclic:1").order(), 1);
        assert_eq!(fam("elementary_abelian:3:2").order(), 9);
        assert_eq!(fam("dihedral:6").order(), 12);
        assert_eq!(fam("dicyclic:3").order(), 12);
        assert_eq!(fam("symmetric:4").order(), 24);
        assert_eq!(fam("alternating:5").order(), 60);
        assert_eq!(fam("psl2_7").order(), 168);
        for (name, order) in [
            ("sl2_3", 24),
            ("gl2_3", 48),
            ("agl1_8", 56),
            ("agl1_9", 72),
            ("c3sq_c4", 36),
            ("c3sq_q8", 72),
        ] {
            assert_eq!(fam(name).order(), order);
        }
        assert_eq!(fam("cyclic:2*symmetric:3").order(), 12);
    }

    #[test]
    fn canonical_orderings() {
        let c = fam("cyclic:7");
        assert_eq!(c.mul(5, 4), 2);
        let d = fam("dihedral:5");
        // s·r = r⁻¹·s
        assert_eq!(d.mul(5, 1), d.mul(4, 5));
        assert_eq!(d.elem_order(5), 2);
        let q = fam("dicyclic:2");
        assert_eq!(q.elements().filter(|&x| q.elem_order(x) == 2).count(), 1);
        let s = fam("symmetric:3");
        assert_eq!(s.identity(), 0);
    }

    #[test]
    fn family_errors() {
        assert!(construct_family(&"elementary_abelian:4:2".parse().unwrap()).is_err());
        assert!(construct_family(&"symmetric:6".parse().unwrap()).is_err());
        assert!(construct_family(&"alternating:7".parse().unwrap()).is_err());
        assert!("bogus:3".parse::<Family>().is_err());
        assert!("dihedral".parse::<Family>().is_err());
        assert!(cyclic_semidirect(7, 3, 3).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "cyclic:6",
            "dihedral:4*cyclic:3",
            "semidirect:7:3:2",
            "psl2_7",
            "elementary_abelian:2:3",
        ] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
    }
}
