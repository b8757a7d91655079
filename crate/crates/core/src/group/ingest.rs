//! Group ingestion: JSON Cayley tables and permutation generators.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Elem, Group, Validation};
use crate::{Error, Result};

/// Permutation of `0..degree` as an image table.
pub type Permutation = Vec<u8>;

/// On-disk group description.
///
/// Either `{"label", "cayley": [[...], ...]}` with 0-based indices, or
/// `{"label", "degree", "generators": ["(1 2 3)(4 5)", ...]}` with 1-based
/// disjoint cycle notation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Cayley {
        label: String,
        cayley: Vec<Vec<usize>>,
    },
    Permutations {
        label: String,
        degree: usize,
        generators: Vec<String>,
    },
}

impl GroupSource {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn label(&self) -> &str {
        match self {
            GroupSource::Cayley { label, .. } | GroupSource::Permutations { label, .. } => label,
        }
    }

    /// Builds the group, failing if its order exceeds `cap`.
    pub fn build(&self, cap: usize, v: Validation) -> Result<Group> {
        match self {
            GroupSource::Cayley { label, cayley } => {
                let n = cayley.len();
                if n > cap {
                    return Err(Error::OrderCap { order: n, cap });
                }
                if cayley.iter().any(|row| row.len() != n) {
                    return Err(Error::InvalidGroup("Cayley table is not square".into()));
                }
                let flat: Vec<Elem> = cayley.iter().flatten().copied().collect();
                Group::from_table(label.clone(), n, &flat, v)
            }
            GroupSource::Permutations {
                label,
                degree,
                generators,
            } => {
                if *degree == 0 || *degree > 255 {
                    return Err(Error::OutOfRange(format!("permutation degree {degree}")));
                }
                let gens = generators
                    .iter()
                    .map(|s| parse_cycles(s, *degree))
                    .collect::<Result<Vec<_>>>()?;
                permutation_closure(label.clone(), *degree, gens, cap, v)
            }
        }
    }
}

/// Parses 1-based disjoint cycle notation such as `(1 2 3)(4 5)`; commas are
/// accepted as separators and `()` is the identity.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
    let mut perm: Permutation = (0..degree as u8).collect();
    let mut seen = vec![false; degree];
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let points: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        for &pt in &points {
            if pt == 0 || pt > degree {
                return Err(Error::Parse(format!("point {pt} outside 1..={degree}")));
            }
            if std::mem::replace(&mut seen[pt - 1], true) {
                return Err(Error::Parse(format!("point {pt} repeated in {s:?}")));
            }
        }
        for (i, &pt) in points.iter().enumerate() {
            perm[pt - 1] = (points[(i + 1) % points.len()] - 1) as u8;
        }
    }
    Ok(perm)
}

/// Closes a set of permutations into a group, orders the elements
/// lexicographically by image tuple and builds the Cayley table. The product
/// `σ·τ` applies `σ` first.
pub(crate) fn permutation_closure(
    label: String,
    degree: usize,
    gens: Vec<Permutation>,
    cap: usize,
    v: Validation,
) -> Result<Group> {
    let compose =
        |a: &[u8], b: &[u8]| -> Permutation { a.iter().map(|&x| b[x as usize]).collect() };
    let id: Permutation = (0..degree as u8).collect();
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elems = vec![id.clone()];
    index.insert(id, 0);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in &gens {
            let y = compose(&x, g);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::OrderCap {
                        order: elems.len() + 1,
                        cap,
                    });
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    elems.sort();
    let index: HashMap<&[u8], usize> = elems
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            table.push(index[compose(a, b).as_slice()]);
        }
    }
    Group::from_table(label, n, &table, v)
}
