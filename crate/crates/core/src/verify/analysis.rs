//! Per-group data shared by all checks on one subject.

use std::sync::OnceLock;

use super::{Config, Subject};
use crate::affine::{ffrak_scan, report_from_scans, AutScan, InvariantReport};
use crate::autom::{automorphism_group, AutGroup};
use crate::group::{
    center, derived_length, derived_series, solvable_radical, upper_central_series, DerivedSeries,
    Family,
};
use crate::{Group, Subgroup};

pub struct AutData {
    pub aut: AutGroup,
    pub scans: Vec<AutScan>,
    pub report: InvariantReport,
}

pub struct Analysis {
    pub label: String,
    pub family: Option<Family>,
    pub group: Group,
    pub derived: DerivedSeries,
    pub center: Subgroup,
    pub radical: Subgroup,
    pub radical_length: usize,
    aut: OnceLock<Result<AutData, String>>,
    aut_options: crate::autom::AutOptions,
}

impl Analysis {
    pub fn new(subject: &Subject, group: Group, config: &Config) -> Self {
        let derived = derived_series(&group);
        let radical = solvable_radical(&group);
        let radical_length = derived_length(&radical).expect("the radical is solvable");
        Self {
            label: subject.to_string(),
            family: subject.family().cloned(),
            center: center(&group),
            group,
            derived,
            radical,
            radical_length,
            aut: OnceLock::new(),
            aut_options: config.aut_options(),
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `Aut(G)` and the 𝔉 scan, computed on first use. The error is the
    /// reason the checks needing it are skipped.
    pub fn aut(&self) -> Result<&AutData, &str> {
        self.aut
            .get_or_init(|| {
                let aut =
                    automorphism_group(&self.group, self.aut_options).map_err(|e| e.to_string())?;
                let scans = ffrak_scan(&aut);
                let report = report_from_scans(&aut, &scans);
                Ok(AutData { aut, scans, report })
            })
            .as_ref()
            .map_err(|e| e.as_str())
    }

    pub fn derived_length(&self) -> Option<usize> {
        self.derived.derived_length
    }

    pub fn is_metabelian(&self) -> bool {
        self.derived_length().is_some_and(|l| l <= 2)
    }

    pub fn is_nilpotent(&self) -> bool {
        upper_central_series(&self.group)
            .last()
            .is_some_and(|z| z.is_whole())
    }

    /// Distinct proper nontrivial subgroups among the derived terms, the
    /// center and the radical. All are characteristic.
    pub fn characteristic_candidates(&self) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = Vec::new();
        let all = self
            .derived
            .terms
            .iter()
            .chain([&self.center, &self.radical]);
        for s in all {
            if !s.is_trivial() && !s.is_whole() && !out.contains(s) {
                out.push(s.clone());
            }
        }
        out
    }
}
