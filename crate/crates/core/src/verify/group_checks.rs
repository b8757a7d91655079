//! Checks that run once per catalog group.

use num_rational::Ratio;
use rand::Rng;
use serde_json::json;

use super::{job_rng, Analysis, AutData, CheckId, CheckResult, Config};
use crate::affine::{
    affine_order, affine_order_oracle, centerless_inner_order, centerless_inner_order_oracle,
    ffrak_of_aut, ffrak_of_group, orbit_statistics, shift_table, AffineMap,
};
use crate::autom::{
    conjugation_automorphism, equivariance_check, induce_on_quotient, is_invariant, restrict,
    EmbeddedSubgroup,
};
use crate::group::{normal_closure, quotient, upper_central_series, Family};
use crate::linfp::gl_order;
use crate::numtheory::{gcd, lcm};
use crate::{Elem, Group, Subgroup};

fn start(check: CheckId, a: &Analysis, config: &Config) -> CheckResult {
    let mut r = CheckResult::new(check.as_str(), &a.label, config.seed);
    r.stat("order", a.order() as u64);
    r
}

/// Starts a result for a check that needs `Aut(G)`; skipped if unavailable.
fn start_aut<'a>(
    check: CheckId,
    a: &'a Analysis,
    config: &Config,
) -> Result<(CheckResult, &'a AutData), Box<CheckResult>> {
    let r = start(check, a, config);
    match a.aut() {
        Ok(d) => Ok((r, d)),
        Err(e) => Err(Box::new(r.skip(e.to_string()))),
    }
}

macro_rules! with_aut {
    ($check:expr, $a:expr, $config:expr) => {
        match start_aut($check, $a, $config) {
            Ok(x) => x,
            Err(skipped) => return *skipped,
        }
    };
}

/// Like `with_aut!`, but when `Aut(G)` is unavailable and `$holds` says the
/// conclusion is true for every value of the invariant, passes instead of
/// skipping.
macro_rules! with_aut_or_unconditional {
    ($check:expr, $a:expr, $config:expr, $holds:expr) => {
        match start_aut($check, $a, $config) {
            Ok(x) => x,
            Err(mut skipped) if $holds => {
                skipped.status = super::Status::Pass;
                skipped.value(
                    "unconditional",
                    "automorphism group not computed; conclusion holds for every value",
                );
                return *skipped;
            }
            Err(skipped) => return *skipped,
        }
    };
}

fn alpha_witness(d: &AutData, idx: usize) -> serde_json::Value {
    json!(d.aut.elements()[idx].images())
}

/// Whether `upper / lower` is cyclic, for `lower ≤ upper` normal in `upper`.
pub(super) fn factor_is_cyclic(upper: &Subgroup, lower: &Subgroup) -> bool {
    let emb = EmbeddedSubgroup::new(upper);
    let local = Subgroup::from_members(
        &emb.group,
        lower
            .members()
            .iter()
            .map(|&x| emb.local(x).expect("lower ≤ upper")),
    )
    .expect("subgroup of a subgroup");
    quotient(&emb.group, &local)
        .expect("derived terms are normal")
        .group
        .is_cyclic()
}

/// Largest `k` with `m·2^k ≤ n`, for `1 ≤ m ≤ n`.
fn floor_log2_ratio(n: u64, m: u64) -> u32 {
    let mut k = 0;
    while m << (k + 1) <= n {
        k += 1;
    }
    k
}

pub fn large_maffo_solvable(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut_or_unconditional!(
        CheckId::LargeMaffoSolvable,
        a,
        config,
        a.derived_length().is_some_and(|l| l <= 3)
    );
    let (n, maffo) = (a.order() as u64, d.report.maffo);
    r.stat("maffo", maffo);
    if 2 * maffo <= n {
        return r.skip("maffo(G) <= |G|/2");
    }
    match a.derived_length() {
        Some(l) if l <= 3 => {
            r.stat("derived_length", l as u64);
            r
        }
        l => r.fail(
            "maffo(G) > |G|/2 but G is not solvable of derived length <= 3",
            json!({"alpha": d.report.witness.alpha_images, "g": d.report.witness.g, "maffo": maffo, "derived_length": l}),
        ),
    }
}

pub fn radical_derived_length(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut_or_unconditional!(
        CheckId::RadicalDerivedLength,
        a,
        config,
        a.radical_length <= 3
    );
    let (n, maffo) = (a.order() as u64, d.report.maffo);
    r.stat("maffo", maffo);
    r.stat("radical_order", a.radical.order() as u64);
    r.stat("radical_derived_length", a.radical_length as u64);
    if maffo == 0 || maffo > n {
        return r.fail("maffo(G) outside [1, |G|]", json!({"maffo": maffo}));
    }
    let bound = 4 * floor_log2_ratio(n, maffo) as usize + 3;
    r.stat("bound", bound as u64);
    if a.radical_length > bound {
        return r.fail(
            "derived length of Rad(G) exceeds the bound",
            json!({"maffo": maffo, "radical_members": a.radical.members(), "bound": bound}),
        );
    }
    r
}

pub fn large_f_derived_length(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut_or_unconditional!(
        CheckId::LargeFDerivedLength,
        a,
        config,
        a.derived_length().is_some_and(|l| l <= 3)
    );
    r.stat("ffrak", d.report.ffrak);
    let Some(l) = a.derived_length() else {
        return r.skip("G is not solvable");
    };
    if 2 * d.report.ffrak <= a.order() as u64 {
        return r.skip("f(G) <= 1/2");
    }
    r.stat("derived_length", l as u64);
    if l > 3 {
        return r.fail(
            "solvable with f(G) > 1/2 but derived length > 3",
            json!({"alpha": alpha_witness(d, d.report.ffrak_alpha), "ffrak": d.report.ffrak, "derived_length": l}),
        );
    }
    r
}

pub fn large_f_cyclic_commutator(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut_or_unconditional!(
        CheckId::LargeFCyclicCommutator,
        a,
        config,
        a.is_metabelian()
            && a.derived.terms[a.derived.terms.len().min(2) - 1]
                .as_group()
                .0
                .is_cyclic()
    );
    r.stat("ffrak", d.report.ffrak);
    if !a.is_metabelian() {
        return r.skip("G is not metabelian");
    }
    if 2 * d.report.ffrak <= a.order() as u64 {
        return r.skip("f(G) <= 1/2");
    }
    let gp = &a.derived.terms[a.derived.terms.len().min(2) - 1];
    r.stat("derived_order", gp.order() as u64);
    if !gp.as_group().0.is_cyclic() {
        return r.fail(
            "metabelian with f(G) > 1/2 but G' is not cyclic",
            json!({"alpha": alpha_witness(d, d.report.ffrak_alpha), "derived_members": gp.members()}),
        );
    }
    r
}

/// First `g` with `⟨g⟩ ∩ N = 1`, `|⟨g⟩|·|N| = |G|` and `C_N(g) = 1`.
pub(super) fn fixed_point_free_complement(group: &Group, n: &Subgroup) -> Option<Elem> {
    group.elements().find(|&g| {
        if group.elem_order(g) as usize * n.order() != group.order() {
            return false;
        }
        let cyclic = Subgroup::generated(group, [g]);
        cyclic
            .members()
            .iter()
            .all(|&x| x == group.identity() || !n.contains(x))
            && n.members()
                .iter()
                .all(|&h| h == group.identity() || group.conj(h, g) != h)
    })
}

pub fn metacyclic_complement(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::MetacyclicComplement, a, config);
    if a.group.is_abelian() {
        return r.skip("G is abelian");
    }
    if !a.is_metabelian() {
        return r.skip("G is not metabelian");
    }
    let whole = &a.derived.terms[0];
    let gp = &a.derived.terms[1];
    if !gp.as_group().0.is_cyclic() || !factor_is_cyclic(whole, gp) {
        return r.skip("G' or G/G' is not cyclic");
    }
    r.stat("derived_order", gp.order() as u64);
    match fixed_point_free_complement(&a.group, gp) {
        Some(g) => {
            r.stat("complement_generator", g as u64);
            r
        }
        None => r.fail(
            "no fixed-point-free cyclic complement to G'",
            json!({"derived_members": gp.members()}),
        ),
    }
}

pub fn derived_factors_not_all_cyclic(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::DerivedFactorsNotAllCyclic, a, config);
    if a.derived_length() != Some(3) {
        return r.skip("derived length is not 3");
    }
    let t = &a.derived.terms;
    let cyclic = [
        factor_is_cyclic(&t[2], &t[3]),
        factor_is_cyclic(&t[1], &t[2]),
        factor_is_cyclic(&t[0], &t[1]),
    ];
    r.stat(
        "cyclic_factors",
        cyclic.iter().filter(|&&c| c).count() as u64,
    );
    if cyclic.iter().all(|&c| c) {
        return r.fail(
            "G'', G'/G'' and G/G' are all cyclic",
            json!({"orders": [t[1].order(), t[2].order()]}),
        );
    }
    r
}

pub fn shift_oracle(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::ShiftOracle, a, config);
    let g = &a.group;
    let elems = d.aut.elements();
    let compare = |ai: usize, x: Elem| -> Option<serde_json::Value> {
        let m = AffineMap::new(elems[ai].clone(), x);
        let (fast, slow) = (affine_order(g, &m), affine_order_oracle(g, &m));
        (fast != slow).then(|| json!({"alpha": elems[ai].images(), "g": x, "shift_order": fast, "oracle_order": slow}))
    };
    let mut cases = 0u64;
    let mut bad = None;
    if a.order() <= config.exhaustive_oracle_order {
        r.value("mode", "exhaustive");
        'outer: for ai in 0..elems.len() {
            for x in g.elements() {
                cases += 1;
                if let Some(w) = compare(ai, x) {
                    bad = Some(w);
                    break 'outer;
                }
            }
        }
    } else {
        r.value("mode", "sampled");
        let mut rng = job_rng(config.seed, CheckId::ShiftOracle, &a.label);
        for _ in 0..config.oracle_samples {
            let (ai, x) = (rng.gen_range(0..elems.len()), rng.gen_range(0..g.order()));
            cases += 1;
            if let Some(w) = compare(ai, x) {
                bad = Some(w);
                break;
            }
        }
    }
    r.stat("cases", cases);
    match bad {
        Some(w) => r.fail("shift-formula order differs from the cycle oracle", w),
        None => r,
    }
}

/// Checks `σ_α(x)^α = x·σ_α(x)·x⁻¹`, conjugation of `σ_α(x)` by `x⁻¹`.
pub fn shift_equivariance(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::ShiftEquivariance, a, config);
    let g = &a.group;
    let mut cases = 0u64;
    for alpha in d.aut.elements() {
        let sigma = shift_table(g, alpha);
        for x in g.elements() {
            cases += 1;
            if alpha.apply(sigma[x]) != g.conj(sigma[x], g.inv(x)) {
                r.stat("cases", cases);
                return r.fail(
                    "shift is not twisted-equivariant",
                    json!({"alpha": alpha.images(), "x": x, "shift": sigma[x]}),
                );
            }
        }
    }
    r.stat("cases", cases);
    r
}

pub fn composition_law(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::CompositionLaw, a, config);
    let g = &a.group;
    let elems = d.aut.elements();
    let mut rng = job_rng(config.seed, CheckId::CompositionLaw, &a.label);
    for _ in 0..config.composition_samples {
        let (al, be) = (
            &elems[rng.gen_range(0..elems.len())],
            &elems[rng.gen_range(0..elems.len())],
        );
        let (x, y) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
        let (first, second) = (AffineMap::new(al.clone(), x), AffineMap::new(be.clone(), y));
        let composed = first.compose(g, &second);
        let formula_ok = composed.alpha == al.compose(be) && composed.g == g.mul(be.apply(x), y);
        let pointwise_ok = g
            .elements()
            .all(|z| composed.apply(g, z) == second.apply(g, first.apply(g, z)));
        if !formula_ok || !pointwise_ok {
            return r.fail(
                "composition of affine maps disagrees with A_{ab, g^b h}",
                json!({"alpha": al.images(), "g": x, "beta": be.images(), "h": y}),
            );
        }
    }
    r.stat("cases", config.composition_samples as u64);
    r
}

pub fn centerless_inner(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::CenterlessInner, a, config);
    let g = &a.group;
    if a.order() == 1 || !a.center.is_trivial() {
        return r.skip("G has a nontrivial center or is trivial");
    }
    let exp = g.exponent();
    r.stat("exponent", exp);
    for rr in g.elements() {
        let mut acc = 1;
        for x in g.elements() {
            let formula = centerless_inner_order(g, rr, x).expect("centerless");
            if formula != centerless_inner_order_oracle(g, rr, x) {
                return r.fail(
                    "lcm(ord r, ord xr) differs from the affine order",
                    json!({"r": rr, "x": x}),
                );
            }
            acc = lcm(acc, formula);
        }
        if acc != exp || ffrak_of_aut(g, &conjugation_automorphism(g, rr)) != exp {
            return r.fail(
                "F(conj r) differs from Exp(G)",
                json!({"r": rr, "ffrak": acc}),
            );
        }
    }
    r.stat("cases", (a.order() * a.order()) as u64);
    r
}

pub fn sandwich(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::Sandwich, a, config);
    let subs = a.characteristic_candidates();
    if subs.is_empty() {
        return r.skip("no proper nontrivial subgroup among derived terms, center and radical");
    }
    let mut cases = 0u64;
    for n in &subs {
        let q = quotient(&a.group, n).expect("characteristic subgroups are normal");
        let emb = EmbeddedSubgroup::new(n);
        for (i, alpha) in d.aut.elements().iter().enumerate() {
            let big = d.scans[i].ffrak;
            let tilde = ffrak_of_aut(&q.group, &induce_on_quotient(alpha, &q).expect("invariant"));
            let inner = ffrak_of_aut(
                &emb.group,
                &restrict(alpha, &emb).expect("invariant").pow(tilde),
            );
            cases += 1;
            if big % tilde != 0 || big > tilde * inner {
                return r.fail(
                    "F(a~) | F(a) <= F(a~)·F((a|N)^F(a~)) violated",
                    json!({"alpha": alpha.images(), "n_members": n.members(), "ffrak": big, "quotient_ffrak": tilde, "restricted_ffrak": inner}),
                );
            }
        }
    }
    r.stat("subgroups", subs.len() as u64);
    r.stat("cases", cases);
    r
}

pub fn monotonicity(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::Monotonicity, a, config);
    let subs = a.characteristic_candidates();
    if subs.is_empty() {
        return r.skip("no proper nontrivial subgroup among derived terms, center and radical");
    }
    let fg = d.report.f;
    let (mut checked, mut capped) = (0u64, 0u64);
    for n in &subs {
        let q = quotient(&a.group, n).expect("normal");
        let ng = n.as_group().0;
        let (Ok(fnn), Ok(fq)) = (
            ffrak_of_group(&ng, config.aut_options()),
            ffrak_of_group(&q.group, config.aut_options()),
        ) else {
            capped += 1;
            continue;
        };
        checked += 1;
        let prod = fnn.f * fq.f;
        if fg > prod || prod > fnn.f.min(fq.f) {
            return r.fail(
                "f(G) <= f(N)·f(G/N) <= min(f(N), f(G/N)) violated",
                json!({"n_members": n.members(), "f_g": ratio_str(fg), "f_n": ratio_str(fnn.f), "f_q": ratio_str(fq.f)}),
            );
        }
    }
    r.stat("subgroups", checked);
    r.stat("capped", capped);
    if checked == 0 {
        return r.skip("automorphism groups of every N or G/N exceed the caps");
    }
    r
}

pub fn conjugation_equivariance(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::ConjugationEquivariance, a, config);
    if a.order() > config.equivariance_order {
        return r.skip(format!("|G| > {}", config.equivariance_order));
    }
    let subs = a.characteristic_candidates();
    if subs.is_empty() {
        return r.skip("no proper nontrivial subgroup among derived terms, center and radical");
    }
    let mut cases = 0u64;
    for n in &subs {
        let emb = EmbeddedSubgroup::new(n);
        for alpha in d.aut.elements() {
            cases += 1;
            if !equivariance_check(&a.group, alpha, &emb)
                .expect("characteristic subgroups are invariant and normal")
            {
                return r.fail(
                    "conjugation action is not equivariant",
                    json!({"alpha": alpha.images(), "n_members": n.members()}),
                );
            }
        }
    }
    r.stat("cases", cases);
    r
}

pub fn characteristic_series(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::CharacteristicSeries, a, config);
    if a.order() > config.characteristic_order {
        return r.skip(format!("|G| > {}", config.characteristic_order));
    }
    let mut subs: Vec<Subgroup> = a.derived.terms.clone();
    subs.push(a.center.clone());
    subs.push(a.radical.clone());
    subs.extend(upper_central_series(&a.group));
    for s in &subs {
        if let Some(alpha) = d.aut.elements().iter().find(|al| !is_invariant(al, s)) {
            return r.fail(
                "subgroup is not characteristic",
                json!({"alpha": alpha.images(), "members": s.members()}),
            );
        }
    }
    r.stat("subgroups", subs.len() as u64);
    r
}

pub fn invariant_bounds(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::InvariantBounds, a, config);
    let n = a.order() as u64;
    let rep = &d.report;
    r.stat("ffrak", rep.ffrak);
    r.stat("maffo", rep.maffo);
    r.value("f", ratio_str(rep.f));
    if !(rep.maffo <= rep.ffrak && rep.ffrak <= n) {
        return r.fail(
            "maffo(G) <= F(G) <= |G| violated",
            json!({"maffo": rep.maffo, "ffrak": rep.ffrak}),
        );
    }
    if d.scans[0].ffrak != a.group.exponent() {
        return r.fail(
            "F(id) differs from Exp(G)",
            json!({"ffrak_identity": d.scans[0].ffrak}),
        );
    }
    for (i, s) in d.scans.iter().enumerate() {
        let k = d.aut.elements()[i].order();
        if s.ffrak > n || s.ffrak % s.max_affine != 0 || s.max_affine % k != 0 {
            return r.fail(
                "per-automorphism bound violated",
                json!({"alpha": alpha_witness(d, i), "ffrak": s.ffrak}),
            );
        }
    }
    let w = &rep.witness;
    let alpha = &d.aut.elements()[rep.maffo_alpha];
    if alpha.images() != w.alpha_images
        || affine_order(&a.group, &AffineMap::new(alpha.clone(), w.g)) != rep.maffo
    {
        return r.fail(
            "maffo witness does not replay",
            json!({"alpha": w.alpha_images, "g": w.g}),
        );
    }
    r.stat("automorphisms", d.aut.len() as u64);
    r
}

pub(super) fn ratio_str(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// `|Aut|` for families where it has a closed form.
fn known_aut_order(f: &Family) -> Option<u64> {
    Some(match *f {
        Family::Cyclic(n) => totient(n as u64),
        Family::ElementaryAbelian { p, k } => gl_order(p as u64, k)?,
        Family::Dihedral(n) if n >= 3 => n as u64 * totient(n as u64),
        Family::Dicyclic(2) => 24,
        Family::Symmetric(n) if n <= 2 => 1,
        Family::Symmetric(n) => (1..=n as u64).product(),
        Family::Alternating(n) if n <= 2 => 1,
        Family::Alternating(3) => 2,
        Family::Alternating(4) => 24,
        Family::Alternating(5) => 120,
        Family::Alternating(6) => 1440,
        Family::Named("psl2_7") => 336,
        Family::Named("sl2_3") => 24,
        _ => return None,
    })
}

pub fn aut_structure(a: &Analysis, config: &Config) -> CheckResult {
    let (mut r, d) = with_aut!(CheckId::AutStructure, a, config);
    let size = d.aut.len() as u64;
    r.stat("automorphisms", size);
    r.stat("inner", d.aut.inner_count() as u64);
    if d.aut.inner_count() * a.center.order() != a.order() {
        return r.fail(
            "|Inn(G)|·|Z(G)| != |G|",
            json!({"inner": d.aut.inner_count(), "center": a.center.order()}),
        );
    }
    if d.aut.closure(d.aut.generators()).len() != d.aut.len() {
        return r.fail(
            "generators do not generate Aut(G)",
            json!({"generators": d.aut.generators()}),
        );
    }
    for &gi in d.aut.generators() {
        if d.aut.elements()[gi].verify(&a.group).is_err() {
            return r.fail(
                "generator is not an automorphism",
                json!({"alpha": alpha_witness(d, gi)}),
            );
        }
    }
    if let Some(want) = a.family.as_ref().and_then(known_aut_order) {
        r.stat("expected", want);
        if want != size {
            return r.fail(
                "|Aut(G)| differs from the closed form",
                json!({"found": size, "expected": want}),
            );
        }
    }
    r
}

fn is_nonabelian_simple(g: &Group) -> bool {
    !g.is_abelian()
        && g.conjugacy_classes()
            .iter()
            .all(|c| c[0] == g.identity() || normal_closure(g, [c[0]]).is_whole())
}

pub fn simple_group_bounds(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::SimpleGroupBounds, a, config);
    if !is_nonabelian_simple(&a.group) {
        return r.skip("G is not nonabelian simple");
    }
    let d = match a.aut() {
        Ok(d) => d,
        Err(e) => return r.skip(e.to_string()),
    };
    let (n, exp) = (a.order() as u64, a.group.exponent());
    let outer_lcm = (0..d.aut.len())
        .filter(|&i| !d.aut.is_inner(i))
        .map(|i| d.aut.elements()[i].order())
        .fold(1, lcm);
    r.stat("exponent", exp);
    r.stat("outer_order_lcm", outer_lcm);
    r.stat("ffrak", d.report.ffrak);
    let mut outer_max = 0;
    for (i, s) in d.scans.iter().enumerate() {
        let ok = if d.aut.is_inner(i) {
            s.ffrak == exp
        } else {
            outer_max = outer_max.max(s.ffrak);
            outer_lcm % s.ffrak == 0 && 2 * s.ffrak <= n
        };
        if !ok {
            return r.fail(
                "automorphism violates the simple-group bound",
                json!({"alpha": alpha_witness(d, i), "ffrak": s.ffrak}),
            );
        }
    }
    r.stat("outer_max_ffrak", outer_max);
    if 2 * d.report.ffrak > n {
        return r.fail("F(S) > |S|/2", json!({"ffrak": d.report.ffrak}));
    }
    r
}

pub fn dihedral_full_cycle(a: &Analysis, config: &Config) -> CheckResult {
    let mut r = start(CheckId::DihedralFullCycle, a, config);
    let Some(Family::Dihedral(n)) = a.family else {
        return r.skip("not a dihedral family subject");
    };
    if n < 3 {
        return r.skip("dihedral:n with n < 3");
    }
    let d = match a.aut() {
        Ok(d) => d,
        Err(e) => return r.skip(e.to_string()),
    };
    let w = &d.report.witness;
    let alpha = d.aut.elements()[d.report.maffo_alpha].clone();
    let orbits = orbit_statistics(&a.group, &AffineMap::new(alpha, w.g));
    r.stat("maffo", d.report.maffo);
    r.stat("witness_longest_cycle", orbits.max);
    if d.report.maffo != 2 * n as u64 || orbits.max != 2 * n as u64 {
        return r.fail(
            "no affine map of order 2n moving all elements in one cycle",
            json!({"alpha": w.alpha_images, "g": w.g}),
        );
    }
    r.values.insert(
        "witness".into(),
        json!({"alpha": w.alpha_images, "g": w.g}).to_string(),
    );
    r
}
