use std::io::BufRead;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use etarho::chars::{class_space_basis, pair_phi, rank_minus, rank_plus, tau_orbits, FiniteGroup, Parity, RhoVector};
use etarho::circle::{
    eta_partial, product_with_ahat, verdict_with_ahat, QuadratureConfig, SubsetFamily, TermMode, Verdict,
};
use etarho::lens::{lens_delocalized_rho_scaled, LensSpace};
use etarho::numeric::{format_rational, parse_rational, CyclotomicValue, Rational};
use etarho::rho::{induce_rho, rho2_from_delocalized, ring_from_orders, ElementOrder, SubgroupInclusion};
use etarho::verify::{run_suites, SUITES};
use etarho::zoo::{
    class_ball, class_intersect_integers, conjugate_of_one_test, growth_classify, induce_rho_zoo, kernel_slice,
    parse_word, ZooGroup,
};
use etarho::{Error, Result};

use crate::report::Table;

/// What a subcommand hands back to the renderer.
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Vec<String>,
    pub table: Table,
    pub exit_code: i32,
}

struct Success {
    results: Value,
    table: Table,
    diagnostics: Vec<String>,
    exit_code: i32,
}

impl Success {
    fn new(results: Value, table: Table) -> Self {
        Success {
            results,
            table,
            diagnostics: Vec::new(),
            exit_code: 0,
        }
    }
}

fn finish<A: Serialize>(args: &A, run: Result<Success>) -> Outcome {
    let inputs = serde_json::to_value(args).expect("arguments serialize");
    match run {
        Ok(s) => Outcome {
            inputs,
            results: s.results,
            diagnostics: s.diagnostics,
            table: s.table,
            exit_code: s.exit_code,
        },
        Err(e) => Outcome {
            inputs,
            results: Value::Null,
            diagnostics: vec![e.to_string()],
            table: Table::default(),
            exit_code: if e.is_validation() { 1 } else { 2 },
        },
    }
}

fn exact_value(v: &CyclotomicValue) -> Value {
    let (re, im) = v.to_c64();
    json!({ "exact": v.to_string(), "re": re, "im": im })
}

fn exact_rational(q: &Rational) -> Value {
    json!({ "exact": format_rational(q), "value": etarho::numeric::rational::to_f64(q) })
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(item).collect()
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    Plus,
    Minus,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Plus => Parity::Plus,
            ParityArg::Minus => Parity::Minus,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CharsArgs {
    /// `cyclic:N` or `sym:N`.
    #[arg(long)]
    pub group: String,
    /// Which class space to list a basis of.
    #[arg(long, value_enum, default_value = "plus")]
    pub basis: ParityArg,
}

pub fn chars(a: &CharsArgs) -> Outcome {
    finish(a, chars_run(a))
}

fn chars_run(a: &CharsArgs) -> Result<Success> {
    let g = Arc::new(FiniteGroup::parse_spec(&a.group)?);
    let classes: Vec<Value> = (0..g.num_classes())
        .map(|c| {
            json!({
                "index": c,
                "size": g.class_size(c),
                "representative": g.label(g.class_representative(c)),
                "inverse_class": g.tau(c),
            })
        })
        .collect();
    let basis = class_space_basis(&g, a.basis.into());
    let mut table = Table::new(&["basis_index", "values"]);
    let functions: Vec<Vec<String>> = basis
        .iter()
        .map(|f| f.values().iter().map(|v| v.to_string()).collect())
        .collect();
    for (i, f) in functions.iter().enumerate() {
        table.push([i.to_string(), f.join(",")]);
    }
    table.note("rank_plus", rank_plus(&g));
    table.note("rank_minus", rank_minus(&g));
    let results = json!({
        "group": a.group,
        "order": g.order(),
        "classes": classes,
        "tau_orbits": tau_orbits(&g),
        "basis": { "parity": a.basis, "dimension": basis.len(), "functions": functions },
        "rank_plus": rank_plus(&g),
        "rank_minus": rank_minus(&g),
    });
    Ok(Success::new(results, table))
}

#[derive(Args, Debug, Serialize)]
pub struct InduceArgs {
    /// Source group, `cyclic:N` or `sym:N`.
    #[arg(long)]
    pub sub: String,
    /// Target: a finite group spec or a zoo group.
    #[arg(long)]
    pub target: String,
    /// Image of the generator: an element index or label for finite targets,
    /// an element string for zoo targets.
    #[arg(long)]
    pub image: String,
    /// Comma-separated rational rho values, one per source class.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: String,
}

pub fn induce(a: &InduceArgs) -> Outcome {
    finish(a, induce_run(a))
}

fn induce_run(a: &InduceArgs) -> Result<Success> {
    let sub = Arc::new(FiniteGroup::parse_spec(&a.sub)?);
    let order = sub.exponent();
    let values = parse_list(&a.rho, |t| Ok(CyclotomicValue::from_rational(order, parse_rational(t)?)))?;
    let rho = RhoVector::new(sub.clone(), values)?;
    let mut table = Table::new(&["class", "value"]);
    if let Ok(target) = FiniteGroup::parse_spec(&a.target) {
        let target = Arc::new(target);
        let image = (0..target.order())
            .find(|&x| target.label(x) == a.image)
            .or_else(|| a.image.parse::<usize>().ok())
            .ok_or_else(|| Error::invalid(format!("no element {:?} in {}", a.image, a.target)))?;
        let j = SubgroupInclusion::from_generator(sub, target.clone(), image)?;
        let out = induce_rho(&j, &rho)?;
        let rows: Vec<Value> = out
            .values()
            .iter()
            .enumerate()
            .map(|(c, v)| {
                table.push([target.label(target.class_representative(c)), v.to_string()]);
                json!({ "class": c, "representative": target.label(target.class_representative(c)), "value": exact_value(v) })
            })
            .collect();
        return Ok(Success::new(json!({ "target_kind": "finite", "classes": rows }), table));
    }
    let zoo = ZooGroup::parse(&a.target)?;
    let image = zoo.parse_element(&a.image)?;
    let out = induce_rho_zoo(&zoo, &image, &rho)?;
    let rows: Vec<Value> = out
        .iter()
        .map(|(key, v)| {
            table.push([key.to_string(), v.to_string()]);
            json!({ "class_key": key, "value": exact_value(v) })
        })
        .collect();
    let mut s = Success::new(json!({ "target_kind": "zoo", "classes": rows }), table);
    s.diagnostics.push("classes not listed carry the value 0".into());
    Ok(s)
}

#[derive(Args, Debug, Serialize)]
pub struct LensArgs {
    /// Odd order n ≥ 3 of the cyclic group.
    #[arg(long)]
    pub n: u32,
    /// Comma-separated rotation weights, each coprime to n.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: String,
    /// Overall normalization multiplying every delocalized value.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub defect_scale: String,
}

pub fn lens(a: &LensArgs) -> Outcome {
    finish(a, lens_run(a))
}

fn lens_run(a: &LensArgs) -> Result<Success> {
    let weights = parse_list(&a.weights, |t| {
        t.parse::<i64>().map_err(|_| Error::invalid(format!("bad weight {t:?}")))
    })?;
    let scale = parse_rational(&a.defect_scale)?;
    let lens = LensSpace::new(a.n, weights)?;
    let rho = lens_delocalized_rho_scaled(&lens, &scale);
    let mut table = Table::new(&["class", "rho", "re", "im"]);
    let slots: Vec<Value> = rho
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let (re, im) = v.to_c64();
            table.push([j.to_string(), v.to_string(), format!("{re:.12e}"), format!("{im:.12e}")]);
            json!({ "class": j, "value": exact_value(v) })
        })
        .collect();
    let rho2 = rho2_from_delocalized(&rho);
    let parity = lens.expected_parity();
    let pairings: Vec<Value> = class_space_basis(rho.group(), parity)
        .iter()
        .enumerate()
        .map(|(i, f)| pair_phi(f, &rho).map(|v| json!({ "basis_index": i, "value": exact_value(&v) })))
        .collect::<Result<_>>()?;
    table.note("lens", &lens);
    table.note("rho_2", &rho2);
    table.note("expected parity", if parity == Parity::Plus { "symmetric" } else { "antisymmetric" });
    let results = json!({
        "lens": lens.to_string(),
        "dimension": lens.dim(),
        "dimension_mod_4": lens.dim_mod4(),
        "defect_scale": exact_rational(&scale),
        "delocalized_rho": slots,
        "rho_2": exact_value(&rho2),
        "parity": { "expected": parity, "observed": rho.parity() },
        "basis_pairings": pairings,
    });
    Ok(Success::new(results, table))
}

#[derive(Args, Debug, Serialize)]
pub struct CircleArgs {
    /// `finite:1,2,3`, `ap:a,d`, `geo:b`, `primes` or `squares`.
    #[arg(long)]
    pub subset: String,
    /// Number of elements of the subset to sum over.
    #[arg(long, default_value_t = 100)]
    pub terms: usize,
    /// Absolute and relative quadrature tolerance (audit mode).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Integrate every term numerically instead of using the closed form.
    #[arg(long)]
    pub audit: bool,
    /// Subdivision limit per quadrature (audit mode).
    #[arg(long, default_value_t = 2000)]
    pub max_subdivisions: usize,
    /// Rational Â-genus multiplier for a product with a closed manifold.
    #[arg(long, allow_hyphen_values = true)]
    pub ahat: Option<String>,
}

pub fn circle(a: &CircleArgs) -> Outcome {
    finish(a, circle_run(a))
}

fn circle_run(a: &CircleArgs) -> Result<Success> {
    let family = SubsetFamily::parse(&a.subset)?;
    let mut cfg = QuadratureConfig::default();
    if let Some(tol) = a.tol {
        cfg.abs_tol = tol;
        cfg.rel_tol = tol;
    }
    cfg.max_subdivisions = a.max_subdivisions;
    cfg.validate()?;
    let mode = if a.audit { TermMode::Audit } else { TermMode::ClosedForm };
    let report = eta_partial(&family, a.terms, &cfg, mode)?;
    let ahat = a.ahat.as_deref().map(parse_rational).transpose()?;
    let factor = ahat.as_ref().map_or(1.0, etarho::numeric::rational::to_f64);
    let verdict = match &ahat {
        Some(q) => verdict_with_ahat(&report.verdict, q),
        None => report.verdict.clone(),
    };
    let mut table = Table::new(&["terms", "re", "im", "exact"]);
    let sums: Vec<Value> = report
        .partial_sums
        .iter()
        .map(|p| {
            let exact = p
                .exact
                .as_ref()
                .map(|e| ahat.as_ref().map_or_else(|| e.clone(), |q| product_with_ahat(e, q)));
            let (re, im) = (p.re * factor, p.im * factor);
            table.push([
                p.terms_used.to_string(),
                format!("{re:.15e}"),
                format!("{im:.15e}"),
                exact.as_ref().map_or_else(String::new, ToString::to_string),
            ]);
            json!({ "terms_used": p.terms_used, "re": re, "im": im, "exact": exact })
        })
        .collect();
    table.note("subset", &family);
    table.note("verdict", match &verdict {
        Verdict::Convergent { exact: Some(v), .. } => format!("convergent, {v}"),
        Verdict::Convergent { re, im, .. } => format!("convergent, {re} + {im}i"),
        Verdict::Divergent { certificate } => format!("divergent ({certificate})"),
        Verdict::Unknown { .. } => "unknown".to_string(),
    });
    let max_error = report.per_term_errors.iter().copied().fold(0.0, f64::max);
    let mut s = Success::new(
        json!({
            "subset": family.to_string(),
            "verdict": verdict,
            "mode": report.mode,
            "terms_used": report.terms_used,
            "partial_sums": sums,
            "max_term_error": max_error,
            "ahat": ahat.as_ref().map(exact_rational),
        }),
        table,
    );
    if let Verdict::Unknown { note } = &verdict {
        s.diagnostics.push(format!("convergence unknown: {note}"));
    }
    if report.terms_used < a.terms {
        s.diagnostics.push(format!("subset has only {} elements", report.terms_used));
    }
    Ok(s)
}

#[derive(Args, Debug, Serialize)]
pub struct GrowthArgs {
    /// `cyclic:N`, `lamplighter:N`, `qsemidirect`, `hnn` or `product(A,B)`.
    #[arg(long)]
    pub group: String,
    /// Class representative, e.g. `lamp:0` or `q:1`.
    #[arg(long)]
    pub element: String,
    /// Largest conjugator length.
    #[arg(long, default_value_t = 10)]
    pub radius: usize,
}

pub fn growth(a: &GrowthArgs) -> Outcome {
    finish(a, growth_run(a))
}

fn growth_run(a: &GrowthArgs) -> Result<Success> {
    let g = ZooGroup::parse(&a.group)?;
    let h = g.parse_element(&a.element)?;
    let report = growth_classify(&g, &h, a.radius)?;
    let mut table = Table::new(&["radius", "class_elements"]);
    for (r, c) in report.counts.iter().enumerate() {
        table.push([r, *c]);
    }
    table.note("verdict", format!("{:?}", report.verdict));
    let mut s = Success::new(
        json!({ "group": g, "element": h, "growth": report }),
        table,
    );
    if matches!(report.verdict, etarho::zoo::GrowthVerdict::Inconclusive) {
        s.diagnostics.push("growth inconclusive at this radius".into());
    }
    Ok(s)
}

#[derive(Args, Debug, Serialize)]
pub struct ZooArgs {
    /// `cyclic:N`, `lamplighter:N`, `qsemidirect`, `hnn` or `product(A,B)`.
    #[arg(long)]
    pub group: String,
    /// Export the conjugacy ball of this element instead of reading a script.
    #[arg(long)]
    pub ball: Option<String>,
    /// Radius for `--ball`.
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
}

pub fn zoo(a: &ZooArgs, input: &mut dyn BufRead) -> Outcome {
    finish(a, zoo_run(a, input))
}

fn zoo_run(a: &ZooArgs, input: &mut dyn BufRead) -> Result<Success> {
    let g = ZooGroup::parse(&a.group)?;
    if let Some(center) = &a.ball {
        let h = g.parse_element(center)?;
        let ball = class_ball(&g, &h, a.radius)?;
        let mut table = Table::new(&["normal_form", "word_length"]);
        for (x, len) in ball.entries() {
            table.push([x.to_string(), len.to_string()]);
        }
        return Ok(Success::new(json!({ "ball": ball }), table));
    }
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .map_err(|e| Error::invalid(format!("cannot read stdin: {e}")))?;
    let mut table = Table::new(&["line", "op", "result"]);
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (op, result) = zoo_line(&g, line).map_err(|e| Error::invalid(format!("line {}: {e}", i + 1)))?;
        let summary = match &result {
            Value::String(s) => s.clone(),
            other => other.get("summary").and_then(Value::as_str).unwrap_or("").to_string(),
        };
        table.push([(i + 1).to_string(), op.to_string(), summary]);
        entries.push(json!({ "line": i + 1, "op": op, "input": line, "result": result }));
    }
    Ok(Success::new(json!({ "group": g, "entries": entries }), table))
}

fn radius_and_rest(rest: &str) -> Result<(usize, &str)> {
    let rest = rest.trim();
    let (r, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let r = r
        .parse::<usize>()
        .map_err(|_| Error::invalid(format!("expected a radius, got {r:?}")))?;
    Ok((r, tail.trim()))
}

/// One script line: `[normalize] WORD`, `inverse WORD`, `conj G | H`,
/// `test WORD`, `ball R WORD`, `slice R Q` or `integers R`.
fn zoo_line(g: &ZooGroup, line: &str) -> Result<(&'static str, Value)> {
    let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let word = |s: &str| g.normalize(&parse_word(s)?);
    Ok(match head {
        "normalize" => ("normalize", json!(word(rest)?.to_string())),
        "inverse" => ("inverse", json!(g.inverse(&word(rest)?)?.to_string())),
        "conj" => {
            let (x, h) = rest
                .split_once('|')
                .ok_or_else(|| Error::invalid("conj needs `G | H`"))?;
            ("conj", json!(g.conjugate(&word(x)?, &word(h)?)?.to_string()))
        }
        "test" => {
            let x = word(rest)?;
            let conj = conjugate_of_one_test(&x)?;
            ("test", json!({ "element": x, "conjugate_to_one": conj, "summary": conj.to_string() }))
        }
        "ball" => {
            let (r, w) = radius_and_rest(rest)?;
            let ball = class_ball(g, &word(w)?, r)?;
            let summary = format!("{} elements, counts {:?}", ball.len(), ball.counts());
            ("ball", json!({ "ball": ball, "summary": summary }))
        }
        "slice" => {
            let (r, q) = radius_and_rest(rest)?;
            let ball = kernel_slice(g, &parse_rational(q)?, r)?;
            let summary = format!("{} elements in Q, counts {:?}", ball.len(), ball.counts());
            ("slice", json!({ "ball": ball, "summary": summary }))
        }
        "integers" => {
            let (r, _) = radius_and_rest(rest)?;
            let ints: Vec<String> = class_intersect_integers(g, r)?.iter().map(ToString::to_string).collect();
            let summary = ints.join(",");
            ("integers", json!({ "integers": ints, "summary": summary }))
        }
        _ => ("normalize", json!(word(line)?.to_string())),
    })
}

#[derive(Args, Debug, Serialize)]
pub struct RingcheckArgs {
    /// Comma-separated element orders; `inf` for infinite order.
    #[arg(long)]
    pub orders: String,
    /// Comma-separated rationals to test.
    #[arg(long, allow_hyphen_values = true)]
    pub values: String,
    /// Also adjoin 1/2.
    #[arg(long)]
    pub with_half: bool,
}

pub fn ringcheck(a: &RingcheckArgs) -> Outcome {
    finish(a, ringcheck_run(a))
}

fn ringcheck_run(a: &RingcheckArgs) -> Result<Success> {
    let orders = parse_list(&a.orders, |t| t.parse::<ElementOrder>())?;
    let mut ring = ring_from_orders(&orders);
    if a.with_half {
        ring = ring.with_inverse(2);
    }
    let values = parse_list(&a.values, parse_rational)?;
    let mut table = Table::new(&["value", "contained"]);
    table.note("ring", &ring);
    let checks: Vec<Value> = values
        .iter()
        .map(|q| {
            let inside = ring.contains(q);
            table.push([format_rational(q), inside.to_string()]);
            json!({ "value": exact_rational(q), "contained": inside })
        })
        .collect();
    Ok(Success::new(json!({
        "ring": ring.to_string(),
        "prime_support": ring.prime_support().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "checks": checks,
    }), table))
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Suite to run (repeatable); all suites when absent.
    #[arg(long = "suite", value_parser = clap::value_parser!(u8).range(1..=10))]
    pub suites: Vec<u8>,
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let ids: Vec<u8> = if a.suites.is_empty() {
        SUITES.iter().map(|&(id, _)| id).collect()
    } else {
        a.suites.clone()
    };
    let report = run_suites(&ids);
    let mut table = Table::new(&["suite", "name", "passed", "checks", "failed"]);
    let mut diagnostics = Vec::new();
    for s in &report.suites {
        table.push([s.id.to_string(), s.name.clone(), s.passed.to_string(), s.checks.to_string(), s.failed_checks.to_string()]);
        if !s.passed {
            diagnostics.push(format!("suite {} ({}) failed: {}", s.id, s.name, s.failures.join("; ")));
        }
    }
    let exit_code = if report.all_passed { 0 } else { 2 };
    let results = serde_json::to_value(&report).expect("report serializes");
    finish(a, Ok(Success { results, table, diagnostics, exit_code }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_script_lines() {
        let g = ZooGroup::HnnShift;
        assert_eq!(zoo_line(&g, "t e:0 T").unwrap().1, json!("e:1"));
        assert_eq!(zoo_line(&g, "conj e:0 | q:1").unwrap().1, json!("q:2"));
        assert_eq!(zoo_line(&g, "inverse q:2").unwrap().1, json!("q:-2"));
        assert!(zoo_line(&g, "ball x q:1").is_err());
        assert!(zoo_line(&g, "test t").is_err());
    }
}
