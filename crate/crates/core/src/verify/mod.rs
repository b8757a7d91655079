//! Verification harness.
//!
//! Every check is a job over a subject: a catalog group, or a global case such
//! as one `GL(n, p)` sweep. Jobs run on the data-parallel pool and their
//! results are merged in canonical order (check registry order, then subject
//! order), so a run with the same configuration and seed always produces the
//! same report.
//!
//! Theorem checks report `pass`, `fail` (with a replayable witness) or
//! `skipped` when the hypothesis does not apply or a cap was hit. Open
//! question experiments report `discovery` instead of `fail`.

mod analysis;
mod catalog;
mod experiments;
mod gl_checks;
mod group_checks;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autom::AutOptions;
use crate::numtheory::is_prime;
use crate::{par, Error, Result};

pub use analysis::{Analysis, AutData};
pub use catalog::{default_catalog, load_catalog, Subject};
pub use report::{render, render_csv, summarize, CheckResult, Format, Status};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Subjects above this order are skipped.
    pub max_order: usize,
    /// Largest order generated by the default catalog's families.
    pub family_order: usize,
    pub aut_cap: usize,
    pub aut_timeout_secs: Option<f64>,
    /// Worker threads; 0 uses the default pool.
    pub jobs: usize,
    pub format: Format,
    pub seed: u64,
    /// Adds `symmetric:5` and `alternating:6` to the default catalog.
    pub heavy: bool,
    /// `(p, n)` cases for exhaustive `GL(n, p)` sweeps.
    pub gl_cases: Vec<(u32, usize)>,
    /// Groups up to this order get the exhaustive shift oracle comparison.
    pub exhaustive_oracle_order: usize,
    /// Random `(α, g)` samples for larger groups.
    pub oracle_samples: usize,
    pub composition_samples: usize,
    pub equivariance_order: usize,
    pub characteristic_order: usize,
    /// Random invertible matrices per `(p, n)` in the order suite.
    pub random_matrices: usize,
    /// Largest ring size for the unit-group exponent comparison.
    pub unit_ring_limit: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_order: 512,
            family_order: 128,
            aut_cap: 100_000,
            aut_timeout_secs: None,
            jobs: 0,
            format: Format::Json,
            seed: 0x5eed,
            heavy: false,
            gl_cases: vec![
                (2, 2),
                (2, 3),
                (2, 4),
                (2, 5),
                (3, 2),
                (3, 3),
                (5, 2),
                (7, 2),
            ],
            exhaustive_oracle_order: 24,
            oracle_samples: 500,
            composition_samples: 200,
            equivariance_order: 48,
            characteristic_order: 64,
            random_matrices: 1000,
            unit_ring_limit: 729,
        }
    }
}

impl Config {
    pub fn from_path(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let cfg: Config = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("max_order", self.max_order as u64),
            ("family_order", self.family_order as u64),
            ("aut_cap", self.aut_cap as u64),
            ("oracle_samples", self.oracle_samples as u64),
            ("composition_samples", self.composition_samples as u64),
            ("random_matrices", self.random_matrices as u64),
            ("unit_ring_limit", self.unit_ring_limit),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::OutOfRange(format!("{name} must be positive")));
            }
        }
        if let Some(t) = self.aut_timeout_secs {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::OutOfRange(
                    "aut_timeout_secs must be positive".into(),
                ));
            }
        }
        for &(p, n) in &self.gl_cases {
            if !is_prime(p as u64) {
                return Err(Error::NotPrime(p as u64));
            }
            if n == 0 {
                return Err(Error::OutOfRange("GL dimension must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn aut_options(&self) -> AutOptions {
        AutOptions {
            max_size: self.aut_cap,
            timeout: self.aut_timeout_secs.map(Duration::from_secs_f64),
        }
    }
}

macro_rules! check_ids {
    ($($variant:ident => $name:literal, $scope:ident;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId { $($variant),* }

        impl CheckId {
            /// Registry order, which is also the report order.
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $(CheckId::$variant => $name),* }
            }

            pub fn scope(self) -> Scope {
                match self { $(CheckId::$variant => Scope::$scope),* }
            }
        }
    };
}

/// Whether a check runs once per catalog group, once per global case, or is
/// an open-question experiment over the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Group,
    Global,
    Experiment,
}

check_ids! {
    LargeMaffoSolvable => "large-maffo-solvable", Group;
    RadicalDerivedLength => "radical-derived-length", Group;
    LargeFDerivedLength => "large-f-derived-length", Group;
    LargeFCyclicCommutator => "large-f-cyclic-commutator", Group;
    MetacyclicComplement => "metacyclic-complement", Group;
    DerivedFactorsNotAllCyclic => "derived-factors-not-all-cyclic", Group;
    ShiftOracle => "shift-oracle", Group;
    ShiftEquivariance => "shift-equivariance", Group;
    CompositionLaw => "composition-law", Group;
    CenterlessInner => "centerless-inner", Group;
    Sandwich => "sandwich", Group;
    Monotonicity => "monotonicity", Group;
    ConjugationEquivariance => "conjugation-equivariance", Group;
    CharacteristicSeries => "characteristic-series", Group;
    InvariantBounds => "invariant-bounds", Group;
    AutStructure => "aut-structure", Group;
    SimpleGroupBounds => "simple-group-bounds", Group;
    DihedralFullCycle => "dihedral-full-cycle", Group;
    GlClassification => "gl-classification", Global;
    MatrixOrderRandom => "matrix-order-random", Global;
    MatrixOrderExamples => "matrix-order-examples", Global;
    UnitExponent => "unit-exponent", Global;
    Q1Metabelian => "q1-metabelian", Experiment;
    Q2Commuting => "q2-commuting", Experiment;
    Q3CycleLength => "q3-cycle-length", Experiment;
}

impl CheckId {
    /// Everything except the experiments.
    pub fn theorem_checks() -> Vec<CheckId> {
        Self::ALL
            .iter()
            .copied()
            .filter(|c| c.scope() != Scope::Experiment)
            .collect()
    }

    pub fn experiments() -> Vec<CheckId> {
        Self::ALL
            .iter()
            .copied()
            .filter(|c| c.scope() == Scope::Experiment)
            .collect()
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// FNV-1a, used to derive per-job seeds from labels.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// The generator for one `(check, subject)` job.
pub fn job_rng(seed: u64, check: CheckId, subject: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv(check.as_str()) ^ fnv(subject).rotate_left(17))
}

enum Job<'a> {
    Subject(usize, &'a Subject),
    Global(CheckId, usize),
}

/// Global cases for a check, as subject labels.
fn global_cases(check: CheckId, config: &Config) -> Vec<String> {
    match check {
        CheckId::GlClassification => config
            .gl_cases
            .iter()
            .map(|(p, n)| format!("gl:{p}:{n}"))
            .collect(),
        CheckId::MatrixOrderRandom => gl_checks::RANDOM_CASES
            .iter()
            .map(|(p, n)| format!("gl:{p}:{n}"))
            .collect(),
        CheckId::MatrixOrderExamples => vec!["examples".into()],
        CheckId::UnitExponent => vec![format!("rings:{}", config.unit_ring_limit)],
        _ => Vec::new(),
    }
}

fn run_global(check: CheckId, case: usize, config: &Config) -> Result<CheckResult> {
    let label = &global_cases(check, config)[case];
    match check {
        CheckId::GlClassification => {
            let (p, n) = config.gl_cases[case];
            gl_checks::gl_classification(p, n, label, config)
        }
        CheckId::MatrixOrderRandom => {
            let (p, n) = gl_checks::RANDOM_CASES[case];
            gl_checks::matrix_order_random(p, n, label, config)
        }
        CheckId::MatrixOrderExamples => gl_checks::matrix_order_examples(label, config),
        CheckId::UnitExponent => gl_checks::unit_exponent(label, config),
        _ => unreachable!("not a global check"),
    }
}

fn run_subject(subject: &Subject, checks: &[CheckId], config: &Config) -> Result<Vec<CheckResult>> {
    let label = subject.to_string();
    let group = match subject.load(config.max_order) {
        Ok(g) => g,
        Err(e @ Error::OrderCap { .. }) => {
            return Ok(checks
                .iter()
                .map(|c| CheckResult::new(c.as_str(), &label, config.seed).skip(e.to_string()))
                .collect());
        }
        Err(e) => return Err(e),
    };
    let analysis = Analysis::new(subject, group, config);
    Ok(checks
        .iter()
        .map(|&c| run_on_analysis(c, &analysis, config))
        .collect())
}

fn run_on_analysis(check: CheckId, a: &Analysis, config: &Config) -> CheckResult {
    use group_checks as g;
    match check {
        CheckId::LargeMaffoSolvable => g::large_maffo_solvable(a, config),
        CheckId::RadicalDerivedLength => g::radical_derived_length(a, config),
        CheckId::LargeFDerivedLength => g::large_f_derived_length(a, config),
        CheckId::LargeFCyclicCommutator => g::large_f_cyclic_commutator(a, config),
        CheckId::MetacyclicComplement => g::metacyclic_complement(a, config),
        CheckId::DerivedFactorsNotAllCyclic => g::derived_factors_not_all_cyclic(a, config),
        CheckId::ShiftOracle => g::shift_oracle(a, config),
        CheckId::ShiftEquivariance => g::shift_equivariance(a, config),
        CheckId::CompositionLaw => g::composition_law(a, config),
        CheckId::CenterlessInner => g::centerless_inner(a, config),
        CheckId::Sandwich => g::sandwich(a, config),
        CheckId::Monotonicity => g::monotonicity(a, config),
        CheckId::ConjugationEquivariance => g::conjugation_equivariance(a, config),
        CheckId::CharacteristicSeries => g::characteristic_series(a, config),
        CheckId::InvariantBounds => g::invariant_bounds(a, config),
        CheckId::AutStructure => g::aut_structure(a, config),
        CheckId::SimpleGroupBounds => g::simple_group_bounds(a, config),
        CheckId::DihedralFullCycle => g::dihedral_full_cycle(a, config),
        CheckId::Q1Metabelian => experiments::q1_metabelian(a, config),
        CheckId::Q2Commuting => experiments::q2_commuting(a, config),
        CheckId::Q3CycleLength => experiments::q3_cycle_length(a, config),
        _ => unreachable!("not a per-group check"),
    }
}

/// Runs `checks` over `catalog` and the global cases.
pub fn run(config: &Config, checks: &[CheckId], catalog: &[Subject]) -> Result<Vec<CheckResult>> {
    run_with_progress(config, checks, catalog, &|_| {})
}

/// Like [`run`], calling `progress` with a label as each job finishes.
pub fn run_with_progress(
    config: &Config,
    checks: &[CheckId],
    catalog: &[Subject],
    progress: &(dyn Fn(&str) + Sync),
) -> Result<Vec<CheckResult>> {
    config.validate()?;
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let per_group: Vec<CheckId> = checks
        .iter()
        .copied()
        .filter(|c| c.scope() != Scope::Global)
        .collect();
    let mut jobs = Vec::new();
    for &c in checks.iter().filter(|c| c.scope() == Scope::Global) {
        jobs.extend((0..global_cases(c, config).len()).map(|i| Job::Global(c, i)));
    }
    if !per_group.is_empty() {
        jobs.extend(catalog.iter().enumerate().map(|(i, s)| Job::Subject(i, s)));
    }
    let outcomes = par::with_jobs(config.jobs, || {
        par::map_slice(&jobs, |job| -> Result<Vec<(usize, CheckResult)>> {
            let out = match *job {
                Job::Global(c, i) => {
                    let r = run_global(c, i, config)?;
                    progress(&format!("{c} {}", r.subject));
                    vec![(i, r)]
                }
                Job::Subject(i, s) => {
                    let rs = run_subject(s, &per_group, config)?;
                    progress(&s.to_string());
                    rs.into_iter().map(|r| (i, r)).collect()
                }
            };
            Ok(out)
        })
    });
    let mut keyed = Vec::new();
    for o in outcomes {
        for (i, r) in o? {
            let c: CheckId = r.check.parse()?;
            keyed.push(((c, i), r));
        }
    }
    keyed.sort_by_key(|(k, _)| *k);
    Ok(keyed.into_iter().map(|(_, r)| r).collect())
}

/// Re-runs the job that produced `result` and returns the fresh result, which
/// matches the original whenever the configuration and seed match.
pub fn replay(result: &CheckResult, config: &Config) -> Result<CheckResult> {
    let check: CheckId = result.check.parse()?;
    let config = Config {
        seed: result.seed,
        ..config.clone()
    };
    if check.scope() == Scope::Global {
        let cases = global_cases(check, &config);
        let i = cases
            .iter()
            .position(|c| *c == result.subject)
            .ok_or_else(|| {
                Error::Parse(format!("unknown case {:?} for {check}", result.subject))
            })?;
        return run_global(check, i, &config);
    }
    let subject: Subject = result.subject.parse()?;
    Ok(run_subject(&subject, &[check], &config)?.remove(0))
}
