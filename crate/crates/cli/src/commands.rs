use std::fmt::Write as _;

use lsmult::acceptance::{run_acceptance, AcceptanceConfig};
use lsmult::charoracle::{tensor_decompose_oracle, weyl_dim};
use lsmult::invariants::{
    frobenius_check, saturation_scan, tuples_from, verify_inequality, InvariantCalculator, Method,
    VerificationReport,
};
use lsmult::pathmodel::{chain_set, tensor_decompose, tensor_multiplicity};
use lsmult::renorm::{parse_builtin, Renormalization, BUILTINS};
use lsmult::{Error, Result, RootSystem, TensorDecomposition, Weight};
use serde_json::{json, Value};

use crate::parse;
use crate::{Command, RenormAction, SweepArgs};

/// Result of a command: a JSON payload, its table rendering, and whether a
/// verification failed.
pub struct Outcome {
    pub command: &'static str,
    pub json: Value,
    pub text: String,
    pub violation: bool,
}

impl Outcome {
    fn ok(command: &'static str, json: Value, text: String) -> Self {
        Self { command, json, text, violation: false }
    }
}

fn method(oracle: bool) -> Method {
    if oracle {
        Method::Oracle
    } else {
        Method::PathModel
    }
}

fn tuple_text(t: &[Weight]) -> String {
    t.iter().map(|w| format!("({w})")).collect::<Vec<_>>().join(" ")
}

pub fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Roots { r#type } => roots(r#type),
        Command::Chains { r#type, shape } => chains(r#type, shape),
        Command::Mult { r#type, lambda, factors, oracle } => mult(r#type, lambda, &factors[0], &factors[1], *oracle),
        Command::Tensor { r#type, mu, nu, oracle } => tensor(r#type, mu, nu, *oracle),
        Command::Invdim { r#type, weights, oracle } => invdim(r#type, weights, *oracle),
        Command::Renorm { action } => renorm(action),
        Command::Verify { name, weights, sweep } => {
            let rn = parse_builtin(name)?;
            let tuples = tuples_for(&rn.source, &rn, weights, sweep)?;
            let rep = verify_inequality(&rn, &tuples, method(sweep.oracle))?;
            Ok(report_outcome("verify", &rep))
        }
        Command::Frobenius { r#type, p, weights, sweep } => {
            let rs = RootSystem::from_label(r#type)?;
            let rn = parse_builtin(&format!("frobenius:{type}:{p}"))?;
            let tuples = tuples_for(&rs, &rn, weights, sweep)?;
            let rep = frobenius_check(&rs, &tuples, *p, method(sweep.oracle))?;
            Ok(report_outcome("frobenius", &rep))
        }
        Command::Saturation { rank, n, bound, oracle } => saturation(*rank, *n, *bound, *oracle),
        Command::Accept { bound, criteria, oracle } => {
            let cfg = AcceptanceConfig { bound: *bound, criteria: criteria.clone(), method: method(*oracle) };
            let rep = run_acceptance(&cfg)?;
            let mut out = Outcome::ok("accept", json!({ "results": rep.results }), rep.to_string());
            out.violation = !rep.all_passed();
            Ok(out)
        }
    }
}

fn roots(label: &str) -> Result<Outcome> {
    let rs = RootSystem::from_label(label)?;
    let mut text = format!("type {}  rank {}  |W| = {}\n", rs.label(), rs.rank(), rs.weyl_group_order());
    text.push_str("cartan matrix <alpha_i, alpha_j^vee>:\n");
    for row in rs.cartan() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        writeln!(text, "  {}", cells.join("")).unwrap();
    }
    writeln!(text, "symmetrizer: {:?}", rs.symmetrizer()).unwrap();
    writeln!(text, "{:<4} {:<20} {:<16} {:<16} |a|^2/2", "#", "simple coords", "weight", "coroot coords").unwrap();
    for (i, r) in rs.positive_roots().iter().enumerate() {
        let sc: Vec<String> = r.simple_coeffs.iter().map(|x| x.to_string()).collect();
        let cc: Vec<String> = r.coroot_coeffs.iter().map(|x| x.to_string()).collect();
        writeln!(text, "{:<4} {:<20} {:<16} {:<16} {}", i, sc.join(","), r.weight.to_string(), cc.join(","), r.half_norm)
            .unwrap();
    }
    let json = json!({
        "type": rs.label(),
        "rank": rs.rank(),
        "weyl_group_order": rs.weyl_group_order().to_string(),
        "cartan": rs.cartan(),
        "symmetrizer": rs.symmetrizer(),
        "positive_roots": rs.positive_roots(),
    });
    Ok(Outcome::ok("roots", json, text))
}

fn chains(label: &str, shape: &str) -> Result<Outcome> {
    let rs = RootSystem::from_label(label)?;
    let mu = parse::dominant(&rs, shape)?;
    let set = chain_set(&rs, &mu)?;
    let records = set.chains.iter().map(|c| c.record()).collect::<Result<Vec<_>>>()?;
    let mut text = format!("{} LS chains of shape ({mu}) in {}\n", records.len(), rs.label());
    writeln!(text, "{:<40} {:<24} {:<12} depth", "steps", "cuts", "endpoint").unwrap();
    for r in &records {
        let steps: Vec<String> = r.steps.iter().map(|s| format!("({s})")).collect();
        writeln!(text, "{:<40} {:<24} {:<12} {}", steps.join(" "), r.cuts.join(" "), r.omega.to_string(), r.delta)
            .unwrap();
    }
    let json = json!({ "type": rs.label(), "shape": mu, "count": records.len(), "chains": records });
    Ok(Outcome::ok("chains", json, text))
}

fn mult(label: &str, lambda: &str, mu: &str, nu: &str, oracle: bool) -> Result<Outcome> {
    let rs = RootSystem::from_label(label)?;
    let (l, m, n) = (parse::dominant(&rs, lambda)?, parse::dominant(&rs, mu)?, parse::dominant(&rs, nu)?);
    let value = tensor_multiplicity(&rs, &l, &m, &n)?;
    let mut json = json!({ "type": rs.label(), "lambda": l, "mu": m, "nu": n, "multiplicity": value });
    let mut text = format!("{value}\n");
    let mut violation = false;
    if oracle {
        let o = tensor_decompose_oracle(&rs, &m, &n)?.multiplicity(&l);
        json["oracle"] = json!(o);
        violation = o != value;
        writeln!(text, "oracle: {o}{}", if violation { "  MISMATCH" } else { "" }).unwrap();
    }
    Ok(Outcome { command: "mult", json, text, violation })
}

fn decomposition_text(rs: &RootSystem, d: &TensorDecomposition) -> Result<String> {
    let mut text = format!("V({}) (x) V({}) in {}\n", d.left, d.right, rs.label());
    writeln!(text, "{:<16} {:>6} {:>10}", "lambda", "mult", "dim").unwrap();
    for (l, m) in &d.components {
        writeln!(text, "{:<16} {:>6} {:>10}", l.to_string(), m, weyl_dim(rs, l)?).unwrap();
    }
    Ok(text)
}

fn components_json(d: &TensorDecomposition) -> Value {
    Value::Array(d.components.iter().map(|(l, m)| json!({ "lambda": l, "multiplicity": m })).collect())
}

fn tensor(label: &str, mu: &str, nu: &str, oracle: bool) -> Result<Outcome> {
    let rs = RootSystem::from_label(label)?;
    let (m, n) = (parse::dominant(&rs, mu)?, parse::dominant(&rs, nu)?);
    let d = tensor_decompose(&rs, &m, &n)?;
    let mut text = decomposition_text(&rs, &d)?;
    let mut json = json!({ "type": rs.label(), "mu": m, "nu": n, "components": components_json(&d) });
    let mut violation = false;
    if oracle {
        let o = tensor_decompose_oracle(&rs, &m, &n)?;
        violation = o.components != d.components;
        json["oracle_agrees"] = json!(!violation);
        if violation {
            json["oracle_components"] = components_json(&o);
            text.push_str("oracle: MISMATCH\n");
            text.push_str(&decomposition_text(&rs, &o)?);
        } else {
            text.push_str("oracle: agrees\n");
        }
    }
    Ok(Outcome { command: "tensor", json, text, violation })
}

fn invdim(label: &str, weights: &[String], oracle: bool) -> Result<Outcome> {
    let rs = RootSystem::from_label(label)?;
    let ws = parse::dominant_list(&rs, weights)?;
    let value = InvariantCalculator::new(&rs, Method::PathModel).invariant_dim(&ws)?;
    let mut json = json!({ "type": rs.label(), "weights": ws, "invariant_dim": value });
    let mut text = format!("{value}\n");
    let mut violation = false;
    if oracle {
        let o = InvariantCalculator::new(&rs, Method::Oracle).invariant_dim(&ws)?;
        json["oracle"] = json!(o);
        violation = o != value;
        writeln!(text, "oracle: {o}{}", if violation { "  MISMATCH" } else { "" }).unwrap();
    }
    Ok(Outcome { command: "invdim", json, text, violation })
}

fn renorm(action: &RenormAction) -> Result<Outcome> {
    match action {
        RenormAction::List => {
            let mut text = String::new();
            for (name, syntax) in BUILTINS {
                writeln!(text, "{name:<14} {syntax}").unwrap();
            }
            let list: Vec<Value> = BUILTINS.iter().map(|(n, s)| json!({ "name": n, "syntax": s })).collect();
            Ok(Outcome::ok("renorm list", json!({ "builtins": list }), text))
        }
        RenormAction::Check { name } => {
            let rn = parse_builtin(name)?;
            let rep = rn.validate();
            let mut out = Outcome::ok("renorm check", json!({ "report": rep, "phi": describe(&rn) }), rep.to_string());
            out.violation = !rep.all_passed();
            Ok(out)
        }
        RenormAction::Map { name, weight } => {
            let rn = parse_builtin(name)?;
            let w = parse::dominant(&rn.source, weight)?;
            let img = rn.map_weight(&w)?;
            let json = json!({ "renormalization": rn.name, "weight": w, "image": img });
            Ok(Outcome::ok("renorm map", json, format!("{img}\n")))
        }
    }
}

fn describe(rn: &Renormalization) -> Value {
    json!({
        "name": rn.name,
        "source": rn.source.label(),
        "target": rn.target.label(),
        "matrix": rn.phi,
        "c": rn.c,
        "source_lattice": rn.source_lattice,
        "target_lattice": rn.target_lattice,
        "prime": rn.prime,
    })
}

fn tuples_for(rs: &RootSystem, rn: &Renormalization, weights: &[String], sweep: &SweepArgs) -> Result<Vec<Vec<Weight>>> {
    if !weights.is_empty() {
        return Ok(vec![parse::dominant_list(rs, weights)?]);
    }
    if sweep.bound < 0 {
        return Err(Error::input("--bound must be nonnegative"));
    }
    if sweep.n == 0 {
        return Err(Error::input("--n must be positive"));
    }
    let pool: Vec<Weight> =
        rs.dominant_weights_up_to(sweep.bound).into_iter().filter(|w| rn.source_lattice.contains(w)).collect();
    Ok(tuples_from(&pool, sweep.n))
}

fn report_outcome(command: &'static str, rep: &VerificationReport) -> Outcome {
    let mut text = format!("{}\n", rep.renormalization);
    writeln!(text, "{:<36} {:<36} {:>6} {:>6}", "tuple", "image", "lhs", "rhs").unwrap();
    for (i, r) in rep.rows.iter().enumerate() {
        let flag = if rep.violations.contains(&i) { "  VIOLATION" } else { "" };
        writeln!(text, "{:<36} {:<36} {:>6} {:>6}{flag}", tuple_text(&r.tuple), tuple_text(&r.image), r.lhs, r.rhs)
            .unwrap();
    }
    writeln!(
        text,
        "{} tuples, {} violations, {} strict",
        rep.rows.len(),
        rep.violations.len(),
        rep.strict_count
    )
    .unwrap();
    Outcome { command, json: json!({ "report": rep }), text, violation: !rep.holds() }
}

fn saturation(rank: usize, n: usize, bound: i64, oracle: bool) -> Result<Outcome> {
    if bound < 0 {
        return Err(Error::input("--bound must be nonnegative"));
    }
    let rep = saturation_scan(rank, n, bound, method(oracle))?;
    let mut text = format!("Spin({}) vs Sp({}), n = {n}, bound = {bound}\n", 2 * rank + 1, 2 * rank);
    writeln!(text, "{:<36} {:>6} {:>6} {:>6} {:>4}", "tuple", "spin", "sp(1)", "sp(2)", "N").unwrap();
    for r in &rep.rows {
        let sp1 = r.sp_at_1.map_or("-".to_string(), |v| v.to_string());
        let w = r.witness.map_or("-".to_string(), |v| v.to_string());
        writeln!(text, "{:<36} {:>6} {:>6} {:>6} {:>4}", tuple_text(&r.tuple), r.spin, sp1, r.sp_at_2, w).unwrap();
    }
    writeln!(
        text,
        "{} Sp=>B counterexamples, {} Spin=>Sp counterexamples, {} saturation witnesses",
        rep.sp_to_b_counterexamples.len(),
        rep.spin_to_sp_counterexamples.len(),
        rep.saturation_witnesses.len()
    )
    .unwrap();
    let violation = !rep.holds();
    Ok(Outcome { command: "saturation", json: json!({ "report": rep }), text, violation })
}
