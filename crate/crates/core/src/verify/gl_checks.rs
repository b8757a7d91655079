//! Global checks over `GL(n, p)` and finite rings.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde_json::json;

use super::{job_rng, CheckId, CheckResult, Config};
use crate::linfp::{
    centralizer_exponent_rcf, classify_f_large_rcf, classify_large_order_rcf, companion,
    fixed_vector_count, gl_partitioned, has_proper_root, irreducibles, mat_order_and_ffrak,
    matrix_order, matrix_order_rcf, primary_rcf, primary_rcf_unchecked, rcf_key, ring_shapes,
    singer, unit_exponent_bruteforce, unit_exponent_formula, ClassificationVerdict, MatFp, PolyFp,
    PrimaryRcf, RootSearch, VerdictKind, SWEEP_CAP,
};
use crate::Result;

/// `(p, n)` pairs for the random matrix-order suite.
pub const RANDOM_CASES: &[(u32, usize)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (5, 1),
    (5, 2),
    (5, 3),
];

/// Class functions of one similarity class, computed once per sweep
/// partition.
struct ClassData {
    order_verdict: ClassificationVerdict,
    f_verdict: ClassificationVerdict,
    rcf_order: Result<u64>,
    centralizer_exponent: Option<u64>,
    proper_root: Option<bool>,
}

impl ClassData {
    fn new(rcf: &PrimaryRcf) -> Result<Self> {
        Ok(Self {
            order_verdict: classify_large_order_rcf(rcf)?,
            f_verdict: classify_f_large_rcf(rcf)?,
            rcf_order: matrix_order_rcf(rcf),
            centralizer_exponent: centralizer_exponent_rcf(rcf).ok(),
            proper_root: None,
        })
    }
}

#[derive(Default)]
struct Sweep {
    classes: HashMap<Vec<(Vec<u32>, u32)>, ClassData>,
    stats: BTreeMap<String, u64>,
    failure: Option<(String, MatFp)>,
}

impl Sweep {
    fn bump(&mut self, key: &str) {
        *self.stats.entry(key.to_string()).or_insert(0) += 1;
    }

    fn fail(&mut self, reason: &str, m: &MatFp) {
        if self.failure.is_none() {
            self.failure = Some((reason.to_string(), m.clone()));
        }
    }

    fn step(&mut self, m: &MatFp) {
        if self.failure.is_some() {
            return;
        }
        let p = m.p() as u64;
        let size = p.pow(m.n() as u32);
        self.bump("matrices");
        let rcf = primary_rcf_unchecked(m);
        let key = rcf_key(&rcf);
        if !self.classes.contains_key(&key) {
            match ClassData::new(&rcf) {
                Ok(c) => {
                    self.classes.insert(key.clone(), c);
                }
                Err(e) => return self.fail(&format!("classification failed: {e}"), m),
            }
        }
        let (ord, ff) = match mat_order_and_ffrak(m) {
            Ok(x) => x,
            Err(e) => return self.fail(&format!("brute force failed: {e}"), m),
        };
        let class = &self.classes[&key];
        let rcf_order = class.rcf_order.as_ref().ok().copied();
        let (order_verdict, f_verdict) = (class.order_verdict.clone(), class.f_verdict.clone());
        let (centralizer_exponent, cached_root) = (class.centralizer_exponent, class.proper_root);
        if rcf_order != Some(ord) {
            return self.fail(
                "order from the primary blocks differs from repeated multiplication",
                m,
            );
        }
        let (big_order, pred_order) = (2 * ord > size, !order_verdict.is_none());
        let (big_f, pred_f) = (2 * ff > size, !f_verdict.is_none());
        if big_order {
            self.bump("large_order");
        }
        if big_f {
            self.bump("large_f");
            self.bump(&format!("kind_{}", kind_name(f_verdict.kind)));
        }
        if big_order != pred_order {
            return self.fail("large-order predicate differs from brute force", m);
        }
        if big_f != pred_f {
            return self.fail("large-f predicate differs from brute force", m);
        }
        if pred_order && order_verdict.predicted_order != Some(ord) {
            return self.fail("predicted order differs from brute force", m);
        }
        if pred_f && f_verdict.predicted_ffrak != Some(ff) {
            return self.fail("predicted F differs from brute force", m);
        }
        if !big_f {
            return;
        }
        if fixed_vector_count(m) > p {
            return self.fail("more than p fixed vectors", m);
        }
        if centralizer_exponent != Some(ord) {
            return self.fail("centralizer exponent differs from the order", m);
        }
        let root = match cached_root {
            Some(r) => r,
            None => match has_proper_root(m, RootSearch::Centralizer) {
                Ok(r) => {
                    self.classes.get_mut(&key).expect("present").proper_root = Some(r);
                    r
                }
                Err(e) => return self.fail(&format!("root search failed: {e}"), m),
            },
        };
        if root {
            return self.fail("has a proper root", m);
        }
        self.bump("members_checked");
    }
}

fn kind_name(k: VerdictKind) -> String {
    serde_json::to_value(k)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn matrix_json(m: &MatFp) -> serde_json::Value {
    json!({"p": m.p(), "matrix": m.to_string()})
}

/// Exhaustive comparison of both large-value predicates against brute force
/// on `GL(n, p)`, plus the member properties of the large-𝔣 set.
pub fn gl_classification(p: u32, n: usize, label: &str, config: &Config) -> Result<CheckResult> {
    let mut r = CheckResult::new(CheckId::GlClassification.as_str(), label, config.seed);
    if n < 2 {
        return Ok(r.skip("the large-f classification needs n >= 2"));
    }
    let parts = match gl_partitioned(p, n, SWEEP_CAP, Sweep::default, |acc, m| acc.step(m)) {
        Ok(parts) => parts,
        Err(e) => return Ok(r.skip(e.to_string())),
    };
    let mut classes = 0u64;
    for part in parts {
        classes += part.classes.len() as u64;
        for (k, v) in part.stats {
            r.bump(&k, v);
        }
        if r.witness.is_none() {
            if let Some((reason, m)) = part.failure {
                r = r.fail(reason, matrix_json(&m));
            }
        }
    }
    r.stat("class_cache_entries", classes);
    Ok(r)
}

fn random_invertible(p: u32, n: usize, rng: &mut impl Rng) -> MatFp {
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..p as i64)).collect();
        let m = MatFp::new(p as u64, n, &entries).expect("valid shape");
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random invertible matrices: the primary form round trip and the order from
/// the blocks against repeated multiplication.
pub fn matrix_order_random(p: u32, n: usize, label: &str, config: &Config) -> Result<CheckResult> {
    let mut r = CheckResult::new(CheckId::MatrixOrderRandom.as_str(), label, config.seed);
    let mut rng = job_rng(config.seed, CheckId::MatrixOrderRandom, label);
    for _ in 0..config.random_matrices {
        let m = random_invertible(p, n, &mut rng);
        if let Err(e) = primary_rcf(&m) {
            return Ok(r.fail(
                format!("primary form round trip failed: {e}"),
                matrix_json(&m),
            ));
        }
        let (fast, slow) = (matrix_order(&m)?, m.order_bruteforce()?);
        if fast != slow {
            return Ok(r.fail(
                "order from the primary blocks differs from repeated multiplication",
                matrix_json(&m),
            ));
        }
    }
    r.stat("matrices", config.random_matrices as u64);
    Ok(r)
}

/// Unipotent companions and Singer cycles with known orders.
pub fn matrix_order_examples(label: &str, config: &Config) -> Result<CheckResult> {
    let mut r = CheckResult::new(CheckId::MatrixOrderExamples.as_str(), label, config.seed);
    let mut cases: Vec<(MatFp, u64)> = Vec::new();
    for p in [3u32, 5, 7] {
        cases.push((companion(&PolyFp::linear(p, 1), 2), p as u64));
    }
    cases.push((companion(&PolyFp::linear(2, 1), 3), 4));
    let singers = [
        (2u64, 2usize),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (7, 2),
    ];
    for (p, n) in singers {
        cases.push((singer(p, n)?, p.pow(n as u32) - 1));
    }
    for (m, want) in &cases {
        let (fast, slow) = (matrix_order(m)?, m.order_bruteforce()?);
        if fast != *want || slow != *want {
            return Ok(r.fail(
                "matrix order differs from the expected value",
                json!({"p": m.p(), "matrix": m.to_string(), "expected": want, "blocks": fast, "brute": slow}),
            ));
        }
    }
    r.stat("matrices", cases.len() as u64);
    Ok(r)
}

/// Unit-group exponent formula against enumeration of `𝔽_p[X]/(P^e)` for
/// every irreducible `P` and every ring up to `config.unit_ring_limit`.
pub fn unit_exponent(label: &str, config: &Config) -> Result<CheckResult> {
    let mut r = CheckResult::new(CheckId::UnitExponent.as_str(), label, config.seed);
    let shapes = ring_shapes(config.unit_ring_limit);
    let results = crate::par::map_slice(
        &shapes,
        |&(p, d, e)| -> Result<Option<serde_json::Value>> {
            for poly in irreducibles(p as u32, d as usize) {
                let want = unit_exponent_formula(p, d, e);
                let got = unit_exponent_bruteforce(&poly.pow(e as u64))?;
                if want != got {
                    return Ok(Some(
                        json!({"p": p, "poly": poly.to_string(), "e": e, "formula": want, "enumerated": got}),
                    ));
                }
            }
            Ok(None)
        },
    );
    let mut rings = 0u64;
    for (res, &(p, d, _)) in results.into_iter().zip(&shapes) {
        if let Some(w) = res? {
            return Ok(r.fail("unit-group exponent formula differs from enumeration", w));
        }
        rings += irreducibles(p as u32, d as usize).len() as u64;
    }
    r.stat("shapes", shapes.len() as u64);
    r.stat("rings", rings);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let cfg = Config::default();
        for (p, n) in [(2, 2), (2, 3), (3, 2)] {
            let r = gl_classification(p, n, "t", &cfg).unwrap();
            assert_eq!(r.status, super::super::Status::Pass, "{r:?}");
            assert_eq!(
                r.stats["matrices"],
                crate::linfp::gl_order(p as u64, n as u32).unwrap()
            );
        }
    }

    #[test]
    fn gl_3_2_counts() {
        let r = gl_classification(3, 2, "t", &Config::default()).unwrap();
        // GL(2,3) has 12 elements of order 8 and 8 of order 6.
        assert_eq!(r.stats["large_order"], 12 + 8);
    }

    #[test]
    fn dimension_one_is_skipped() {
        let r = gl_classification(2, 1, "t", &Config::default()).unwrap();
        assert_eq!(r.status, super::super::Status::Skipped);
    }

    #[test]
    fn examples_pass() {
        let r = matrix_order_examples("examples", &Config::default()).unwrap();
        assert_eq!(r.status, super::super::Status::Pass, "{r:?}");
    }

    #[test]
    fn random_suite_small() {
        let cfg = Config {
            random_matrices: 50,
            ..Config::default()
        };
        let r = matrix_order_random(3, 3, "gl:3:3", &cfg).unwrap();
        assert_eq!(r.status, super::super::Status::Pass, "{r:?}");
    }
}
