use std::path::Path;

use bqd_core::bqd::{apply_base_change, apply_rescale, dynkin_flip, export_presentation, full_report, Bqd, K};
use bqd_core::catalog::{detect_q_type, instantiate, CaseId, CaseSpec, CatalogError};
use bqd_core::format::{self, FormatError};
use bqd_core::hecke::{build_context, solve_p, verify_contraction_identities, verify_hecke_relations, verify_p_properties};
use bqd_core::linalg::Mat;
use bqd_core::report::Report;
use bqd_core::scalars::{guard_q, parse_scalar, BaseField, Mode, QTag, RatFunc, Rational};
use bqd_core::shape::{expected_dim, Sweep, G_BOUND};
use serde_json::{json, Value};

use crate::emit::{add_report, Output};
use crate::{CatalogCommand, Cli, Command};

/// Usage and I/O problems; the process exits with status 2.
pub type CliError = String;

macro_rules! by_mode {
    ($mode:expr, $f:ident($($arg:expr),*)) => {
        match $mode {
            Mode::Numeric => $f::<Rational>($($arg),*),
            Mode::Symbolic => $f::<RatFunc>($($arg),*),
        }
    };
}

fn session_mode(cli: &Cli, file: &Path) -> Result<Mode, CliError> {
    if let Some(m) = cli.mode {
        return Ok(m);
    }
    let s = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    format::peek_mode(&s).map_err(|e| format!("{}: {e}", file.display()))
}

fn load<B: BaseField>(file: &Path) -> Result<Bqd<B>, CliError> {
    format::load(file).map_err(|e: FormatError| format!("{}: {e}", file.display()))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Verify { file } => by_mode!(session_mode(cli, file)?, verify(file)),
        Command::Dims { file, max_total, with_g, evidence } => {
            by_mode!(session_mode(cli, file)?, dims(file, *max_total, *with_g, *evidence))
        }
        Command::Hecke { file, k, l } => by_mode!(session_mode(cli, file)?, hecke(file, *k, *l)),
        Command::Catalog { action: CatalogCommand::List } => Ok(catalog_list()),
        Command::Catalog { action: CatalogCommand::Make { case, params, output } } => {
            let case: CaseId = case.parse().map_err(|e: CatalogError| e.to_string())?;
            let named = parse_assignments(params)?;
            let mode = cli.mode.unwrap_or_else(|| default_make_mode(case, &named));
            by_mode!(mode, catalog_make(case, &named, output))
        }
        Command::Transform { file, flip, rescale, basechange, output } => {
            let op = if *flip {
                Op::Flip
            } else if let Some(v) = rescale {
                Op::Rescale(v[0].clone(), v[1].clone())
            } else {
                Op::BaseChange(basechange.clone().expect("clap enforces one operation"))
            };
            by_mode!(session_mode(cli, file)?, transform(file, &op, output))
        }
        Command::Export { file, output } => by_mode!(session_mode(cli, file)?, export(file, output)),
    }
}

fn q_type_report<B: BaseField>(bqd: &Bqd<B>) -> Report {
    let mut r = Report::new(format!("{}: Q type", bqd.name()));
    match detect_q_type(bqd) {
        Ok(qt) => {
            r.evidence("Q type", "Q normal form", qt.tag.as_str());
            let guard = guard_q(bqd.q(), qt.tag);
            r.check("q admissible", "Q normal form", guard.is_ok(), || guard.unwrap_err().to_string());
        }
        Err(e) => r.check("Q type", "Q normal form", false, || e.to_string()),
    }
    r
}

fn verify<B: BaseField>(file: &Path) -> Result<Output, CliError> {
    let bqd = load::<B>(file)?;
    let mut out = Output::new("verify", bqd.name(), true);
    out.set("mode", json!(B::MODE.to_string()));
    add_report(&mut out, "identities", &full_report(&bqd));
    add_report(&mut out, "q_type", &q_type_report(&bqd));
    out.line(if out.pass { "result: pass" } else { "result: FAIL" });
    Ok(out)
}

/// The elliptic family, recognized from the datum's name.
fn is_elliptic_name(name: &str) -> bool {
    let head = name.split('(').next().unwrap_or("");
    head.trim().parse::<CaseId>().map(CaseId::is_elliptic).unwrap_or(false)
}

fn dims<B: BaseField>(file: &Path, max_total: usize, with_g: bool, evidence: bool) -> Result<Output, CliError> {
    let bqd = load::<B>(file)?;
    let evidence = evidence || is_elliptic_name(bqd.name());
    let mut sweeps: Vec<(&str, Vec<_>)> = vec![("M", Sweep::m(&bqd).up_to(max_total)), ("N", Sweep::n(&bqd).up_to(max_total))];
    if with_g {
        let mut g = Sweep::g(&bqd).map_err(|e| e.to_string())?;
        sweeps.push(("G", g.up_to(max_total.min(G_BOUND))));
    }
    let mut out = Output::new("dims", bqd.name(), true);
    out.set("mode", json!(B::MODE.to_string()));
    out.set("evidence_only", json!(evidence));
    out.line(format!("== {} graded dimensions", bqd.name()));
    out.line(format!("{:<4}{:>3}{:>3}{:>10}{:>10}{:>10}{:>10}  status", "alg", "k", "l", "ambient", "ideal", "quotient", "expected"));
    out.csv.push(
        ["algebra", "k", "l", "ambient", "ideal_rank", "quotient", "expected", "status"].map(String::from).to_vec(),
    );
    let mut rows = Vec::new();
    for (alg, mut results) in sweeps {
        results.sort_by_key(|r| (r.k, r.l));
        for r in results {
            let d = expected_dim(r.k, r.l);
            let expected = if alg == "G" { d * d } else { d };
            let matches = r.quotient == expected;
            let status = match (evidence, matches) {
                (true, _) => "evidence",
                (false, true) => "pass",
                (false, false) => "fail",
            };
            if status == "fail" {
                out.fail();
            }
            out.line(format!(
                "{alg:<4}{:>3}{:>3}{:>10}{:>10}{:>10}{:>10}  {status}{}",
                r.k,
                r.l,
                r.ambient,
                r.ideal_rank,
                r.quotient,
                expected,
                if evidence { if matches { " (agrees)" } else { " (differs)" } } else { "" }
            ));
            out.csv.push(
                [alg.to_string(), r.k.to_string(), r.l.to_string(), r.ambient.to_string(), r.ideal_rank.to_string(),
                 r.quotient.to_string(), expected.to_string(), status.to_string()]
                .to_vec(),
            );
            rows.push(json!({
                "algebra": alg, "k": r.k, "l": r.l, "ambient": r.ambient, "ideal_rank": r.ideal_rank,
                "quotient": r.quotient, "expected": expected, "matches": matches, "status": status,
            }));
        }
    }
    out.set("rows", Value::Array(rows));
    Ok(out)
}

fn hecke<B: BaseField>(file: &Path, k: usize, l: usize) -> Result<Output, CliError> {
    let bqd = load::<B>(file)?;
    let ctx = build_context(&bqd, k, l).map_err(|e| e.to_string())?;
    let mut out = Output::new("hecke", bqd.name(), true);
    out.set("mode", json!(B::MODE.to_string()));
    out.set("k", json!(k));
    out.set("l", json!(l));
    add_report(&mut out, "relations", &verify_hecke_relations(&ctx));
    add_report(&mut out, "contractions", &verify_contraction_identities(&ctx));
    match solve_p(&ctx) {
        Ok(res) => {
            let summary = res.summary(k, l);
            out.line(format!("== projector (k,l) = ({k},{l})"));
            for (m, a) in summary.alphas.iter().enumerate() {
                out.line(format!("  alpha_{m} = {a}"));
            }
            let r1 = bqd_core::linalg::rank(&res.p.sub(&ctx.identity()));
            out.line(format!("  rank P = {} (expected {}), rank(P-1) = {r1}, dim = {}", res.rank, summary.expected, ctx.dim()));
            if res.ambiguity > 0 {
                out.line(format!("  solution space has {} free coefficients (set to zero)", res.ambiguity));
            }
            out.set("projector", serde_json::to_value(&summary).expect("serializable"));
            add_report(&mut out, "projector_checks", &verify_p_properties(&ctx, &res));
        }
        Err(e) => {
            out.fail();
            out.line(format!("projector: {e}"));
            out.set("projector", json!({ "error": e.to_string() }));
        }
    }
    out.line(if out.pass { "result: pass" } else { "result: FAIL" });
    Ok(out)
}

fn catalog_list() -> Output {
    let mut out = Output::new("catalog list", "catalog", true);
    out.csv.push(["case", "type", "params", "constraints"].map(String::from).to_vec());
    let mut rows = Vec::new();
    for case in CaseId::ALL {
        let params = case.param_names().join(",");
        let shown = if params.is_empty() { "-".to_string() } else { params.clone() };
        out.line(format!("{:<8} type {:<4} params {:<28} constraints: {}", case, case.qtag(), shown, case.constraints()));
        out.csv.push(vec![case.to_string(), case.qtag().to_string(), params.clone(), case.constraints().to_string()]);
        rows.push(json!({
            "case": case.as_str(), "type": case.qtag().as_str(), "arity": case.param_names().len(),
            "params": case.param_names(), "constraints": case.constraints(),
            "primed": case.primed(), "elliptic": case.is_elliptic(),
        }));
    }
    out.set("cases", Value::Array(rows));
    out
}

fn parse_assignments(params: &[String]) -> Result<Vec<(String, String)>, CliError> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format!("--param `{p}`: expected NAME=VALUE"))
        })
        .collect()
}

/// Symbolic when the deformation parameter of a type II case is left free.
fn default_make_mode(case: CaseId, named: &[(String, String)]) -> Mode {
    let q_param = match case {
        CaseId::IIb => "p",
        _ => "q",
    };
    if case.qtag() == QTag::II && !named.iter().any(|(k, _)| k == q_param) {
        Mode::Symbolic
    } else {
        Mode::Numeric
    }
}

fn catalog_make<B: BaseField>(case: CaseId, named: &[(String, String)], output: &Path) -> Result<Output, CliError> {
    let mut values = Vec::new();
    for (k, v) in named {
        let x = parse_scalar::<B>(v).map_err(|e| format!("--param {k}: {e}"))?;
        values.push((k.as_str(), x));
    }
    let spec = CaseSpec::<B>::with_params(case, &values).map_err(|e| e.to_string())?;
    let bqd = match instantiate(&spec) {
        Ok(b) => b,
        Err(e @ (CatalogError::CaseConditionViolated { .. } | CatalogError::Scalar(_))) => return Err(e.to_string()),
        Err(e) => {
            let mut out = Output::new("catalog make", &spec.label(), false);
            out.line(format!("{}: {e}", spec.label()));
            out.set("error", json!(e.to_string()));
            return Ok(out);
        }
    };
    format::save(&bqd, output).map_err(|e| e.to_string())?;
    let mut out = Output::new("catalog make", bqd.name(), true);
    out.set("mode", json!(B::MODE.to_string()));
    out.set("q", json!(bqd.q().to_string()));
    out.set("output", json!(output.display().to_string()));
    out.line(format!("wrote {} ({} mode, q = {}) to {}", bqd.name(), B::MODE, bqd.q(), output.display()));
    out.csv.push(["case", "mode", "q", "output"].map(String::from).to_vec());
    out.csv.push(vec![bqd.name().into(), B::MODE.to_string(), bqd.q().to_string(), output.display().to_string()]);
    Ok(out)
}

pub enum Op {
    Flip,
    Rescale(String, String),
    BaseChange(std::path::PathBuf),
}

fn matrix3<B: BaseField>(v: &Value, field: &str) -> Result<Mat<K<B>>, CliError> {
    let rows = v.get(field).and_then(Value::as_array).ok_or_else(|| format!("field `{field}` is missing"))?;
    if rows.len() != 3 {
        return Err(format!("field `{field}`: expected 3 rows"));
    }
    let mut data = Vec::with_capacity(9);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| format!("field `{field}[{i}]`: expected 3 entries"))?;
        for (j, x) in row.iter().enumerate() {
            let text = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(format!("field `{field}[{i}][{j}]`: expected a scalar literal")),
            };
            data.push(parse_scalar::<B>(&text).map_err(|e| format!("field `{field}[{i}][{j}]`: {e}"))?);
        }
    }
    Ok(Mat::from_vec(3, 3, data))
}

fn transform<B: BaseField>(file: &Path, op: &Op, output: &Path) -> Result<Output, CliError> {
    let bqd = load::<B>(file)?;
    let (label, result) = match op {
        Op::Flip => ("flip".to_string(), Ok(dynkin_flip(&bqd))),
        Op::Rescale(mu, sigma) => {
            let mu = parse_scalar::<B>(mu).map_err(|e| format!("MU: {e}"))?;
            let sigma = parse_scalar::<B>(sigma).map_err(|e| format!("SIGMA: {e}"))?;
            (format!("rescale mu = {mu}, sigma = {sigma}"), apply_rescale(&bqd, &mu, &sigma))
        }
        Op::BaseChange(g) => {
            let s = std::fs::read_to_string(g).map_err(|e| format!("{}: {e}", g.display()))?;
            let v: Value = serde_json::from_str(&s).map_err(|e| format!("{}: {e}", g.display()))?;
            let gv = matrix3::<B>(&v, "gV")?;
            let gw = matrix3::<B>(&v, "gW")?;
            ("base change".to_string(), apply_base_change(&bqd, &gv, &gw))
        }
    };
    let mut out = Output::new("transform", bqd.name(), true);
    out.set("operation", json!(label));
    match result {
        Ok(t) => {
            write(output, &format::to_string(&t))?;
            out.set("output", json!(output.display().to_string()));
            out.line(format!("{label}: wrote {}", output.display()));
        }
        Err(e) => {
            out.fail();
            out.set("error", json!(e.to_string()));
            out.line(format!("{label}: {e}"));
        }
    }
    Ok(out)
}

fn export<B: BaseField>(file: &Path, output: &Path) -> Result<Output, CliError> {
    let bqd = load::<B>(file)?;
    let doc = export_presentation(&bqd).map_err(|e| e.to_string())?;
    let mut s = serde_json::to_string_pretty(&doc.to_json()).expect("serializable");
    s.push('\n');
    write(output, &s)?;
    let mut out = Output::new("export", bqd.name(), true);
    out.set("relations", json!(doc.relations.len()));
    out.set("alt_relations", json!(doc.alt_relations.len()));
    out.set("output", json!(output.display().to_string()));
    out.line(format!(
        "wrote {} relations and {} alternative relations to {}",
        doc.relations.len(),
        doc.alt_relations.len(),
        output.display()
    ));
    Ok(out)
}
