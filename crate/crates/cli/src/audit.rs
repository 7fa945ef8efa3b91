//! `cubemob audit`: every cross-check, aggregated.

use std::collections::{BTreeMap, BTreeSet};

use cubemob_core::aut::enumerate_aut;
use cubemob_core::census::{
    derangements, formula_checks, formula_identities, im_rho_block_criterion, is_subgroup, orbit_partition,
    s_table, sample_subalgebras, stabilizer_groups, Method,
};
use cubemob_core::face::axioms::{check_exhaustive, check_sampled, corank_census};
use cubemob_core::mobius::{
    adjudication_audit, boolean_locator_census, boolean_locator_formula, imp_poset, impl_formula_audit,
    mobius_audit, mr_closure_audit, mr_poset, top_fiber_count,
};
use cubemob_core::numbers::{binomial, hyperoctahedral_order, pow2};
use cubemob_core::subalgebra::{enumerate_by_closure, enumerate_subalgebras};
use cubemob_core::{Face, LocatorPair, MRSubalgebra, Result};
use num_bigint::BigUint;
use serde_json::json;

use crate::report::Report;

pub const MAX_AUDIT_N: usize = 4;
const SAMPLE_SIZE: usize = 50;
const AXIOM_SAMPLES: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditOutcome {
    pub checks: Vec<Check>,
    pub discrepancies: Vec<String>,
}

impl AuditOutcome {
    pub fn clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn report(&self, k: usize, seed: u64) -> Report {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({"module": c.module, "check": c.name, "n": c.n, "passed": c.passed, "detail": c.detail}))
            .collect();
        let json = json!({
            "n": k,
            "seed": seed,
            "checks": checks,
            "checks_passed": self.checks.iter().filter(|c| c.passed).count(),
            "checks_total": self.checks.len(),
            "discrepancies": self.discrepancies,
        });
        let rows = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.module.to_string(),
                    c.name.to_string(),
                    c.n.to_string(),
                    if c.passed { "pass" } else { "FAIL" }.to_string(),
                    c.detail.clone(),
                ]
            })
            .collect();
        Report::new(json, &["module", "check", "n", "result", "detail"], rows)
    }
}

struct Auditor {
    checks: Vec<Check>,
}

impl Auditor {
    fn run(&mut self, module: &'static str, name: &'static str, n: usize, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(outcome) => outcome,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check {
            module,
            name,
            n,
            passed,
            detail,
        });
    }
}

fn agree(ok: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((ok, detail.into()))
}

pub fn run_audit(k: usize, seed: u64) -> AuditOutcome {
    let mut a = Auditor { checks: Vec::new() };
    let mut discrepancies = Vec::new();
    for n in 1..=k {
        a.run("face-core", "cubic axioms, MR-axiom, caret totality", n, || {
            let report = if n <= 3 { check_exhaustive(n) } else { check_sampled(n, AXIOM_SAMPLES, seed) };
            let failing: Vec<&str> = report.laws.iter().filter(|l| !l.holds()).map(|l| l.name).collect();
            agree(
                failing.is_empty(),
                format!(
                    "{} laws{}; failing: {:?}",
                    report.laws.len(),
                    if report.exhaustive { " exhaustive" } else { " sampled" },
                    failing
                ),
            )
        });
        a.run("face-core", "corank census 2^r C(n,r)", n, || {
            let census = corank_census(n);
            let ok = census
                .iter()
                .enumerate()
                .all(|(r, &c)| BigUint::from(c) == pow2(r) * binomial(n, r));
            agree(ok, format!("{census:?}"))
        });
        a.run("autgroup", "|Aut(L_n)| = 2^n n!", n, || {
            let count = enumerate_aut(n)?.count();
            agree(BigUint::from(count) == hyperoctahedral_order(n), count.to_string())
        });
        if n <= 3 {
            a.run("subalgebra", "structural enumeration = closure oracle", n, || {
                let structural: BTreeSet<BTreeSet<Face>> =
                    enumerate_subalgebras(n)?.iter().map(MRSubalgebra::materialize_set).collect();
                let oracle: BTreeSet<BTreeSet<Face>> = enumerate_by_closure(n)?.into_iter().collect();
                agree(structural == oracle, format!("{} subalgebras", structural.len()))
            });
            a.run("subalgebra", "locator order = inclusion of located sets", n, || {
                let pairs = LocatorPair::enumerate(n)?;
                let located: Vec<BTreeSet<Face>> = pairs.iter().map(|p| p.locate().materialize_set()).collect();
                let mut bad = 0;
                for (p, x) in pairs.iter().zip(&located) {
                    for (q, y) in pairs.iter().zip(&located) {
                        if p.pair_leq(q)? != x.is_subset(y) {
                            bad += 1;
                        }
                    }
                }
                agree(bad == 0, format!("{} pairs, {bad} mismatches", pairs.len()))
            });
        }
        a.run("census", "orbit/stab/fr/im_rho formulas = brute force", n, || {
            let subjects = if n <= 3 { enumerate_subalgebras(n)? } else { sample_subalgebras(n, SAMPLE_SIZE, seed)? };
            let checks = formula_checks(&subjects)?;
            let bad: Vec<&str> = checks.iter().filter(|c| !c.agrees()).map(|c| c.subalgebra.as_str()).collect();
            agree(bad.is_empty(), format!("{} subalgebras; mismatches: {bad:?}", checks.len()))
        });
        a.run("census", "stab·orbit = 2^n n! and stab = fr·im_rho", n, || {
            let types = formula_identities(n)?;
            agree(true, format!("{types} types"))
        });
        a.run("census", "orbits = same-type classes", n, || {
            let orbits: BTreeSet<BTreeSet<MRSubalgebra>> = orbit_partition(n)?.into_iter().collect();
            let mut by_type: BTreeMap<_, BTreeSet<MRSubalgebra>> = BTreeMap::new();
            for s in enumerate_subalgebras(n)? {
                by_type.entry(s.type_vector()).or_default().insert(s);
            }
            let types: BTreeSet<BTreeSet<MRSubalgebra>> = by_type.into_values().collect();
            agree(orbits == types, format!("{} orbits", orbits.len()))
        });
        if n <= 3 {
            a.run("census", "Fr ≤ Stab and Im(ρ) block criterion", n, || {
                let mut bad = Vec::new();
                for s in enumerate_subalgebras(n)? {
                    let (stab, fr) = stabilizer_groups(&s)?;
                    let (_, _, same) = im_rho_block_criterion(&s)?;
                    if !is_subgroup(&fr, &stab) || !same {
                        bad.push(s.to_string());
                    }
                }
                agree(bad.is_empty(), format!("failing: {bad:?}"))
            });
        }
        a.run("census", "derangements: inversion = direct; re-summation", n, || {
            let report = derangements(n, Method::Both)?;
            let table = s_table(n)?;
            agree(
                report.agree == Some(true),
                format!(
                    "inversion {:?}, direct {:?}, {} rows re-summed",
                    report.inversion.map(|v| v.to_string()),
                    report.direct,
                    table.len()
                ),
            )
        });
        a.run("mobius", "Möbius identity on implication and MR posets", n, || {
            let imp = imp_poset(n)?.check_mobius_identity()?;
            let mr = mr_poset(n)?.check_mobius_identity()?;
            agree(true, format!("{imp} + {mr} intervals"))
        });
        a.run("mobius", "implication formula = poset oracle", n, || {
            let audit = impl_formula_audit(n)?;
            agree(
                audit.formula_agrees(),
                format!("{} intervals; mu({{1}}, B_{n}) = {}", audit.rows.len(), audit.mu_one_oracle),
            )
        });
        a.run("mobius", "closure fibers = closed-poset Möbius values", n, || {
            let report = mr_closure_audit(n)?;
            agree(report.all_match(), format!("{} fibers", report.fibers.len()))
        });
        a.run("mobius", "Boolean-locator counts = 2^(n-m) S(n,m)", n, || {
            let mut detail = Vec::new();
            let mut ok = true;
            for m in 0..=n {
                let c = boolean_locator_census(n, m)?;
                ok &= BigUint::from(c.total) == boolean_locator_formula(n, m)?;
                ok &= BigUint::from(c.closure_is_top) == top_fiber_count(n, m);
                detail.push(format!("m={m}: {} ({} close to L_n)", c.total, c.closure_is_top));
            }
            agree(ok, detail.join("; "))
        });
        a.run("mobius", "adjudicated recurrence = brute force", n, || {
            let audit = mobius_audit(n)?;
            let adjudication = adjudication_audit(n)?;
            let ok = audit.mu_bruteforce.as_ref() == Some(&audit.mu_recurrence_adjudicated) && adjudication.all_ok();
            discrepancies.extend(audit.discrepancies.iter().cloned());
            agree(
                ok,
                format!(
                    "brute {}, adjudicated {}, printed {}",
                    audit.mu_bruteforce.map(|v| v.to_string()).unwrap_or_default(),
                    audit.mu_recurrence_adjudicated,
                    audit.mu_recurrence_paper
                ),
            )
        });
    }
    for c in a.checks.iter().filter(|c| !c.passed) {
        discrepancies.push(format!("{} check failed at n = {}: {} ({})", c.module, c.n, c.name, c.detail));
    }
    AuditOutcome {
        checks: a.checks,
        discrepancies,
    }
}
