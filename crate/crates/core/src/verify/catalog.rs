//! Check subjects and the default catalog.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Config;
use crate::group::{construct_family, Family, GroupSource, Validation, NAMED_GROUPS};
use crate::numtheory::{gcd, is_prime, mult_order_mod};
use crate::{Error, Group, Result};

/// A group to check: `family:<spec>` or a path to a group file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Family(Family),
    File(PathBuf),
}

impl FromStr for Subject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("family:") {
            Some(spec) => Ok(Subject::Family(spec.parse()?)),
            None if s.is_empty() => Err(Error::Parse("empty subject".into())),
            None => Ok(Subject::File(PathBuf::from(s))),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Family(fam) => write!(f, "family:{fam}"),
            Subject::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl Serialize for Subject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Subject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Subject {
    pub fn family(&self) -> Option<&Family> {
        match self {
            Subject::Family(f) => Some(f),
            Subject::File(_) => None,
        }
    }

    /// Builds the group, failing with [`Error::OrderCap`] above `cap`.
    pub fn load(&self, cap: usize) -> Result<Group> {
        match self {
            Subject::Family(f) => {
                let g = construct_family(f)?;
                if g.order() > cap {
                    return Err(Error::OrderCap {
                        order: g.order(),
                        cap,
                    });
                }
                Ok(g)
            }
            Subject::File(p) => GroupSource::from_path(p)?.build(cap, Validation::default()),
        }
    }
}

/// Reads a JSON array of subject strings.
pub fn load_catalog(path: impl AsRef<std::path::Path>) -> Result<Vec<Subject>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn fam(s: &str) -> Subject {
    Subject::Family(s.parse().expect("built-in family spec"))
}

/// Least `r` whose multiplicative order mod `m` is exactly `d`.
fn unit_of_order(m: usize, d: usize) -> Option<usize> {
    (2..m).find(|&r| {
        gcd(r as u64, m as u64) == 1 && mult_order_mod(r as u64, m as u64) == Some(d as u64)
    })
}

/// Families up to `config.family_order`, the shipped named groups, and the
/// heavy groups when `config.heavy` is set.
pub fn default_catalog(config: &Config) -> Vec<Subject> {
    let max = config.family_order;
    let mut out = Vec::new();
    for n in 1..=max.min(64) {
        out.push(fam(&format!("cyclic:{n}")));
    }
    for p in (2..=max).filter(|&p| is_prime(p as u64)) {
        let mut k = 2u32;
        while p.pow(k) <= max {
            out.push(fam(&format!("elementary_abelian:{p}:{k}")));
            k += 1;
        }
    }
    for n in 3..=max / 2 {
        out.push(fam(&format!("dihedral:{n}")));
    }
    for n in 2..=max / 4 {
        out.push(fam(&format!("dicyclic:{n}")));
    }
    for (s, order) in [
        ("symmetric:3", 6),
        ("symmetric:4", 24),
        ("alternating:4", 12),
        ("alternating:5", 60),
    ] {
        if order <= max {
            out.push(fam(s));
        }
    }
    for a in 2..=max {
        for b in (a..=max / a).filter(|b| b % a == 0) {
            if !(a == b && is_prime(a as u64)) {
                out.push(fam(&format!("cyclic:{a}*cyclic:{b}")));
            }
        }
    }
    let bases = [
        ("symmetric:3", 6),
        ("dihedral:4", 8),
        ("dicyclic:2", 8),
        ("dihedral:5", 10),
        ("alternating:4", 12),
        ("dicyclic:3", 12),
        ("symmetric:4", 24),
        ("sl2_3", 24),
        ("alternating:5", 60),
    ];
    for (b, order) in bases {
        for k in 2..=5 {
            if order * k <= max {
                out.push(fam(&format!("{b}*cyclic:{k}")));
            }
        }
    }
    for (a, b, order) in [
        ("symmetric:3", "symmetric:3", 36),
        ("symmetric:3", "dihedral:4", 48),
        ("symmetric:3", "alternating:4", 72),
        ("dihedral:4", "dihedral:4", 64),
        ("dicyclic:2", "dicyclic:2", 64),
        ("dihedral:4", "dicyclic:2", 64),
        ("symmetric:3", "elementary_abelian:2:2", 24),
        ("dicyclic:2", "elementary_abelian:2:2", 32),
        ("symmetric:4", "elementary_abelian:2:2", 96),
    ] {
        if order <= max {
            out.push(fam(&format!("{a}*{b}")));
        }
    }
    for m in 3..=max / 2 {
        for n in 2..=max / m {
            for d in (2..=n).filter(|d| n % d == 0) {
                let Some(r) = unit_of_order(m, d) else {
                    continue;
                };
                if n == 2 && r == m - 1 {
                    continue;
                }
                out.push(fam(&format!("semidirect:{m}:{n}:{r}")));
            }
        }
    }
    for (name, _) in NAMED_GROUPS {
        out.push(fam(name));
    }
    if config.heavy {
        out.push(fam("symmetric:5"));
        out.push(fam("alternating:6"));
    }
    out
}
