//! Open-question experiments. Finds are reported as discoveries.

use num_rational::Ratio;
use serde_json::json;

use super::group_checks::ratio_str;
use super::{Analysis, CheckId, CheckResult, Config};
use crate::affine::{affine_order, orbit_statistics, AffineMap};

fn start(check: CheckId, a: &Analysis, config: &Config) -> CheckResult {
    let mut r = CheckResult::new(check.as_str(), &a.label, config.seed);
    r.stat("order", a.order() as u64);
    r
}

/// Looks for non-metabelian groups with `maffo(G) > |G|/2`.
pub fn q1_metabelian(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::Q1Metabelian, a, config);
    let d = match a.aut() {
        Ok(d) => d,
        Err(e) => return r.skip(e.to_string()),
    };
    r.stat("maffo", d.report.maffo);
    if 2 * d.report.maffo <= a.order() as u64 {
        return r.skip("maffo(G) <= |G|/2");
    }
    if a.is_metabelian() {
        return r;
    }
    let w = &d.report.witness;
    r.discovery(
        "maffo(G) > |G|/2 and G is not metabelian",
        json!({"alpha": w.alpha_images, "g": w.g, "maffo": d.report.maffo, "derived_length": a.derived_length()}),
    )
}

/// Data point `(𝔣(G), maffo(G)/|G|, commuting probability)`.
pub fn q2_commuting(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::Q2Commuting, a, config);
    let d = match a.aut() {
        Ok(d) => d,
        Err(e) => return r.skip(e.to_string()),
    };
    let n = a.order() as u64;
    let classes = a.group.conjugacy_classes().len() as u64;
    r.stat("maffo", d.report.maffo);
    r.stat("classes", classes);
    r.value("f", ratio_str(d.report.f));
    r.value("rho", ratio_str(Ratio::new(d.report.maffo, n)));
    r.value("commuting_probability", ratio_str(Ratio::new(classes, n)));
    r
}

/// For nilpotent groups, compares every affine map's order with its longest
/// cycle.
pub fn q3_cycle_length(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::Q3CycleLength, a, config);
    if !a.is_nilpotent() {
        return r.skip("G is not nilpotent");
    }
    let d = match a.aut() {
        Ok(d) => d,
        Err(e) => return r.skip(e.to_string()),
    };
    let g = &a.group;
    let mut maps = 0u64;
    for alpha in d.aut.elements() {
        for x in g.elements() {
            let m = AffineMap::new(alpha.clone(), x);
            let (ord, longest) = (affine_order(g, &m), orbit_statistics(g, &m).max);
            maps += 1;
            if ord != longest {
                r.stat("maps", maps);
                return r.discovery(
                    "affine map whose order exceeds its longest cycle",
                    json!({"alpha": alpha.images(), "g": x, "order": ord, "longest_cycle": longest}),
                );
            }
        }
    }
    r.stat("maps", maps);
    r
}
