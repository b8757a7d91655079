//! Enumeration of `GL(n,p)` and the dictionary between matrices and
//! automorphisms of the elementary abelian group of order `pⁿ`.

use super::mat::MatFp;
use super::poly::check_prime;
use crate::autom::Automorphism;
use crate::group::Group;
use crate::{par, Error, Result};

/// `|GL(n,p)| = ∏_{i<n} (pⁿ − pⁱ)`, if it fits.
pub fn gl_order(p: u64, n: u32) -> Option<u64> {
    let q = p.checked_pow(n)?;
    (0..n).try_fold(1u64, |acc, i| acc.checked_mul(q - p.pow(i)))
}

/// Coordinates of vector number `idx`: digit `t` in base `p` is coordinate `t`.
pub fn vector_of(p: u32, n: usize, mut idx: u64) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (idx % p as u64) as u32;
            idx /= p as u64;
            d
        })
        .collect()
}

pub fn index_of(p: u32, v: &[u32]) -> u64 {
    v.iter().rev().fold(0, |acc, &d| acc * p as u64 + d as u64)
}

struct Enumerator {
    p: u32,
    n: usize,
    size: u64,
    rows: Vec<u64>,
    mat: MatFp,
}

impl Enumerator {
    fn new(p: u32, n: usize) -> Self {
        Self {
            p,
            n,
            size: (p as u64).pow(n as u32),
            rows: vec![0; n],
            mat: MatFp::zero(p, n),
        }
    }

    fn extend_span(&self, span: &[u64], r: u64) -> Vec<u64> {
        let rv = vector_of(self.p, self.n, r);
        let mut out = Vec::with_capacity(span.len() * self.p as usize);
        for &s in span {
            let sv = vector_of(self.p, self.n, s);
            for c in 0..self.p {
                let w: Vec<u32> = sv
                    .iter()
                    .zip(&rv)
                    .map(|(&a, &b)| (a + c * b) % self.p)
                    .collect();
                out.push(index_of(self.p, &w));
            }
        }
        out
    }

    /// Depth-first over rows outside the span of the previous ones.
    fn run(&mut self, depth: usize, span: &[u64], f: &mut dyn FnMut(&MatFp) -> bool) -> bool {
        let mut member = vec![false; self.size as usize];
        for &s in span {
            member[s as usize] = true;
        }
        for r in 0..self.size {
            if member[r as usize] {
                continue;
            }
            self.rows[depth] = r;
            let v = vector_of(self.p, self.n, r);
            for (j, &d) in v.iter().enumerate() {
                self.mat.set(depth, j, d);
            }
            let go_on = if depth + 1 == self.n {
                f(&self.mat)
            } else {
                let next = self.extend_span(span, r);
                self.run(depth + 1, &next, f)
            };
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn check_size(p: u32, n: usize, cap: u64) -> Result<()> {
    match gl_order(p as u64, n as u32) {
        Some(k) if k <= cap => Ok(()),
        _ => Err(Error::SearchCap(format!("|GL({n},{p})| exceeds {cap}"))),
    }
}

/// Visits `GL(n,p)` in lexicographic order of row indices. The callback
/// returns `false` to stop early.
pub fn for_each_gl(p: u32, n: usize, cap: u64, mut f: impl FnMut(&MatFp) -> bool) -> Result<()> {
    check_prime(p as u64)?;
    check_size(p, n, cap)?;
    if n == 0 {
        return Ok(());
    }
    Enumerator::new(p, n).run(0, &[0], &mut f);
    Ok(())
}

/// Visits the invertible matrices whose first row is vector number `first`.
pub fn for_each_gl_with_first_row(p: u32, n: usize, first: u64, mut f: impl FnMut(&MatFp) -> bool) {
    let mut e = Enumerator::new(p, n);
    if first == 0 || first >= e.size {
        return;
    }
    e.rows[0] = first;
    for (j, d) in vector_of(p, n, first).into_iter().enumerate() {
        e.mat.set(0, j, d);
    }
    if n == 1 {
        f(&e.mat);
        return;
    }
    let span = e.extend_span(&[0], first);
    e.run(1, &span, &mut f);
}

/// Folds over `GL(n,p)` with one accumulator per nonzero first row; the
/// partitions run in parallel and come back in first-row order.
pub fn gl_partitioned<A, I, S>(p: u32, n: usize, cap: u64, init: I, step: S) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &MatFp) + Sync + Send,
{
    check_prime(p as u64)?;
    check_size(p, n, cap)?;
    let rows = (p as u64).pow(n as u32) as usize;
    Ok(par::map_range(rows.saturating_sub(1), |r| {
        let mut acc = init();
        for_each_gl_with_first_row(p, n, r as u64 + 1, |m| {
            step(&mut acc, m);
            true
        });
        acc
    }))
}

/// The automorphism `x ↦ Mx` of `elementary_abelian(p, n)`.
pub fn matrix_to_automorphism(m: &MatFp, group: &Group) -> Result<Automorphism> {
    let (p, n) = (m.p(), m.n());
    if group.order() as u64 != (p as u64).pow(n as u32) {
        return Err(Error::OutOfRange(format!(
            "group of order {} is not {p}^{n}",
            group.order()
        )));
    }
    let images = (0..group.order() as u64)
        .map(|x| index_of(p, &m.mat_vec(&vector_of(p, n, x))) as usize)
        .collect();
    Automorphism::from_images(group, images)
}

/// Matrix of an automorphism of `elementary_abelian(p, n)`: column `j` is the
/// image of basis vector `e_j` (element `p^j`).
pub fn automorphism_to_matrix(alpha: &Automorphism, p: u32, n: usize) -> MatFp {
    let mut m = MatFp::zero(p, n);
    for j in 0..n {
        let img = vector_of(p, n, alpha.apply((p as usize).pow(j as u32)) as u64);
        for (i, d) in img.into_iter().enumerate() {
            m.set(i, j, d);
        }
    }
    m
}
