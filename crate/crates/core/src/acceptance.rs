//! End-to-end acceptance checks: oracle agreement, chain sanity, the
//! renormalization inequalities on bounded sweeps, chain transport and
//! validation of every built-in renormalization.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::charoracle::{tensor_decompose_oracle, weyl_dim};
use crate::error::{Error, Result};
use crate::invariants::{
    dominant_pool_by_eps_height, frobenius_check, saturation_scan, tuples_from, verify_inequality, Method,
    VerificationReport,
};
use crate::pathmodel::{chain_depth, chain_endpoint, chain_set, distinct_count, tensor_decompose, validate_chain};
use crate::renorm::{builtin, builtin_catalog, Lattice, Renormalization};
use crate::rootsys::RootSystem;
use crate::weight::Weight;

/// Identifiers and names of all criteria, in execution order.
pub const CRITERIA: &[(u8, &str)] = &[
    (1, "oracle equivalence"),
    (2, "LS-chain sanity"),
    (3, "Sp <= SO(odd)"),
    (4, "Spin <= Sp doubled"),
    (5, "G2 special isomorphism"),
    (6, "F4 special isomorphism"),
    (7, "chain transport"),
    (8, "Frobenius inequality"),
    (9, "saturation scan"),
    (10, "renormalization validation"),
];

/// Sweep configuration. `bound` replaces every sweep bound and height when
/// set; `criteria` restricts the run to the listed identifiers.
#[derive(Debug, Clone, Default)]
pub struct AcceptanceConfig {
    pub bound: Option<i64>,
    pub criteria: Option<Vec<u8>>,
    pub method: Method,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct AcceptanceReport {
    pub results: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

impl fmt::Display for AcceptanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(
                f,
                "{} {:>2} {:<28} {:>8}ms  {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.name,
                r.elapsed_ms,
                r.detail
            )?;
        }
        Ok(())
    }
}

/// Runs the selected criteria. Errors raised inside a criterion mark it as
/// failed; only a malformed configuration is returned as an error.
pub fn run_acceptance(config: &AcceptanceConfig) -> Result<AcceptanceReport> {
    let selected: Vec<u8> = match &config.criteria {
        None => CRITERIA.iter().map(|c| c.0).collect(),
        Some(ids) => {
            for id in ids {
                if !CRITERIA.iter().any(|c| c.0 == *id) {
                    return Err(Error::input(format!("unknown criterion {id}; valid ids are 1..=10")));
                }
            }
            ids.clone()
        }
    };
    if config.bound.is_some_and(|b| b < 0) {
        return Err(Error::input("bound must be nonnegative"));
    }
    let mut results = Vec::new();
    for id in selected {
        let name = CRITERIA.iter().find(|c| c.0 == id).expect("checked above").1;
        let start = Instant::now();
        let outcome = run_criterion(id, config);
        let elapsed_ms = start.elapsed().as_millis();
        let (passed, detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        results.push(CriterionResult { id, name: name.to_string(), passed, detail, elapsed_ms });
    }
    Ok(AcceptanceReport { results })
}

/// Runs a single criterion, returning `(passed, detail)`.
pub fn run_criterion(id: u8, config: &AcceptanceConfig) -> Result<(bool, String)> {
    let bound = |default: i64| config.bound.unwrap_or(default);
    match id {
        1 => oracle_equivalence(config),
        2 => chain_sanity(config),
        3 => {
            let rn = builtin("so_to_sp", &["2"])?;
            let mut h = bound(2);
            let mut rep = eps_sweep(&rn, h, config.method)?;
            if rep.strict_count == 0 && config.bound.is_none() {
                h = 3;
                rep = eps_sweep(&rn, h, config.method)?;
            }
            Ok(inequality_outcome(&rep, &format!("height <= {h}")))
        }
        4 => {
            let rn = builtin("sp_to_spin", &["2"])?;
            let h = bound(2);
            let rep = eps_sweep(&rn, h, config.method)?;
            Ok(inequality_outcome(&rep, &format!("height <= {h}")))
        }
        5 => {
            let rn = builtin("g2", &[])?;
            let b = bound(2);
            let pool = rn.source.dominant_weights_up_to(b);
            let rep = verify_inequality(&rn, &tuples_from(&pool, 3), config.method)?;
            Ok(inequality_outcome(&rep, &format!("coordinates <= {b}")))
        }
        6 => {
            let rn = builtin("f4", &[])?;
            let mut pool = vec![Weight::zero(4)];
            if bound(1) >= 1 {
                pool.push(Weight::fundamental(4, 2));
                pool.push(Weight::fundamental(4, 3));
            }
            let rep = verify_inequality(&rn, &tuples_from(&pool, 3), config.method)?;
            Ok(inequality_outcome(&rep, "tuples over {0, w3, w4}"))
        }
        7 => chain_transport(config),
        8 => {
            let b = bound(2);
            let mut detail = Vec::new();
            let mut ok = true;
            for label in ["A2", "B2"] {
                let rs = RootSystem::from_label(label)?;
                let tuples = tuples_from(&rs.dominant_weights_up_to(b), 3);
                for p in [2, 3] {
                    let rep = frobenius_check(&rs, &tuples, p, config.method)?;
                    ok &= rep.holds();
                    detail.push(format!("{label} p={p}: {} violations/{}", rep.violations.len(), rep.rows.len()));
                }
            }
            Ok((ok, detail.join("; ")))
        }
        9 => {
            let rep = saturation_scan(2, 3, bound(1), config.method)?;
            let n2 = rep.rows.iter().filter(|r| r.witness == Some(2)).count();
            Ok((
                rep.holds(),
                format!(
                    "{} tuples, {} Sp=>B and {} Spin=>Sp counterexamples, {} need N=2, {} saturation witnesses",
                    rep.rows.len(),
                    rep.sp_to_b_counterexamples.len(),
                    rep.spin_to_sp_counterexamples.len(),
                    n2,
                    rep.saturation_witnesses.len()
                ),
            ))
        }
        10 => {
            let catalog = builtin_catalog();
            let reports: Vec<_> = catalog.par_iter().map(|r| r.validate()).collect();
            let failed: Vec<String> = reports
                .iter()
                .flat_map(|rep| rep.failures().map(move |c| format!("{}:{}", rep.renormalization, c.name)))
                .collect();
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            let detail = if failed.is_empty() {
                format!("{} built-ins, {checks} checks", reports.len())
            } else {
                format!("failed: {}", failed.join(", "))
            };
            Ok((failed.is_empty(), detail))
        }
        _ => Err(Error::input(format!("unknown criterion {id}"))),
    }
}

/// Types and bounds of the oracle sweep.
fn oracle_sweep(config: &AcceptanceConfig) -> Vec<(&'static str, i64)> {
    [("A1", 2), ("A2", 2), ("B2", 2), ("G2", 2), ("A3", 1), ("B3", 1), ("C3", 1)]
        .into_iter()
        .map(|(l, b)| (l, config.bound.map_or(b, |o| o.min(b))))
        .collect()
}

fn oracle_equivalence(config: &AcceptanceConfig) -> Result<(bool, String)> {
    let mut pairs = 0;
    let mut mismatches = Vec::new();
    for (label, b) in oracle_sweep(config) {
        let rs = RootSystem::from_label(label)?;
        let pool = rs.dominant_weights_up_to(b);
        let all: Vec<(Weight, Weight)> =
            pool.iter().flat_map(|m| pool.iter().map(move |n| (m.clone(), n.clone()))).collect();
        let bad: Vec<String> = all
            .par_iter()
            .map(|(m, n)| {
                let path = tensor_decompose(&rs, m, n)?;
                let oracle = tensor_decompose_oracle(&rs, m, n)?;
                Ok((path.components != oracle.components).then(|| format!("{label} ({m})x({n})")))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        pairs += all.len();
        mismatches.extend(bad);
    }
    let detail = if mismatches.is_empty() {
        format!("{pairs} pairs agree")
    } else {
        format!("{} of {pairs} pairs differ: {}", mismatches.len(), mismatches.join(", "))
    };
    Ok((mismatches.is_empty(), detail))
}

fn chain_sanity(config: &AcceptanceConfig) -> Result<(bool, String)> {
    let a1 = RootSystem::from_label("A1")?;
    let mut problems = Vec::new();
    for m in 0..=6 {
        let n = chain_set(&a1, &Weight(vec![m]))?.len();
        if n != m as usize + 1 {
            problems.push(format!("|LS(A1, {m}w1)| = {n}"));
        }
    }
    let mut chains = 0;
    for (label, b) in oracle_sweep(config) {
        let rs = RootSystem::from_label(label)?;
        for shape in rs.dominant_weights_up_to(b) {
            let set = chain_set(&rs, &shape)?;
            chains += set.len();
            if set.len() as u128 != weyl_dim(&rs, &shape)? {
                problems.push(format!("{label} {shape}: {} chains", set.len()));
            }
            let bad: Vec<String> = set
                .chains
                .par_iter()
                .filter_map(|c| {
                    validate_chain(&rs, c)
                        .and_then(|_| chain_depth(c))
                        .and_then(|_| chain_endpoint(c))
                        .err()
                        .map(|e| format!("{label} {shape}: {e}"))
                })
                .collect();
            problems.extend(bad);
        }
    }
    let detail = if problems.is_empty() {
        format!("A1 counts m+1 for m=0..6; {chains} chains with integral depth and endpoint")
    } else {
        problems.join("; ")
    };
    Ok((problems.is_empty(), detail))
}

fn chain_transport(config: &AcceptanceConfig) -> Result<(bool, String)> {
    let b = config.bound.unwrap_or(2);
    let mut total = 0;
    let mut problems = Vec::new();
    for rn in [builtin("g2", &[])?, builtin("frobenius", &["A2", "2"])?] {
        for shape in rn.source.dominant_weights_up_to(b) {
            let set = chain_set(&rn.source, &shape)?;
            let images = set
                .chains
                .par_iter()
                .map(|c| {
                    let img = rn.transport_chain(c)?;
                    rn.check_transport_equivariance(c, &img)?;
                    Ok(img)
                })
                .collect::<Result<Vec<_>>>();
            match images {
                Ok(images) => {
                    total += images.len();
                    if distinct_count(&images) != images.len() {
                        problems.push(format!("{} {shape}: transport not injective", rn.name));
                    }
                }
                Err(e) => problems.push(format!("{} {shape}: {e}", rn.name)),
            }
        }
    }
    let detail = if problems.is_empty() {
        format!("{total} chains transported injectively and equivariantly")
    } else {
        problems.join("; ")
    };
    Ok((problems.is_empty(), detail))
}

fn eps_sweep(rn: &Renormalization, height: i64, method: Method) -> Result<VerificationReport> {
    let pool = dominant_pool_by_eps_height(&rn.source, height, Lattice::Full)?;
    verify_inequality(rn, &tuples_from(&pool, 3), method)
}

fn inequality_outcome(rep: &VerificationReport, scope: &str) -> (bool, String) {
    let mut detail = format!(
        "{}: {} tuples, {} violations, {} strict",
        scope,
        rep.rows.len(),
        rep.violations.len(),
        rep.strict_count
    );
    if let Some(&i) = rep.violations.first() {
        let r = &rep.rows[i];
        let tuple: Vec<String> = r.tuple.iter().map(|w| format!("({w})")).collect();
        detail.push_str(&format!("; first violation {} with {} > {}", tuple.join(" "), r.lhs, r.rhs));
    }
    (rep.holds(), detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_criterion_is_input_error() {
        let cfg = AcceptanceConfig { criteria: Some(vec![11]), ..Default::default() };
        assert!(run_acceptance(&cfg).unwrap_err().is_input());
    }

    #[test]
    fn bound_zero_is_vacuous() {
        let cfg = AcceptanceConfig { bound: Some(0), ..Default::default() };
        let rep = run_acceptance(&cfg).unwrap();
        assert_eq!(rep.results.len(), 10);
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn negative_bound_rejected() {
        let cfg = AcceptanceConfig { bound: Some(-1), ..Default::default() };
        assert!(run_acceptance(&cfg).is_err());
    }
}
