use std::fmt::Write as _;

use clap::ValueEnum;
use descent_poset::moebius::{
    alternating_kind, build_interval_with_limit, matching_cases, mobius_recursive_with_limit,
};
use descent_poset::perm::permutations_with_descents;
use descent_poset::topology::scan_disconnected_subintervals_with_limit;
use descent_poset::verify::{run_suite, Suite};
use descent_poset::word::enumerate_ahat_k;
use descent_poset::{
    betti_gf2, classify_one_descent, euler_characteristic, mobius_bottom_closed_form,
    mobius_fixed_descent, perm_to_word, word_to_perm, OrderComplex, Permutation, Word,
};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Report, Table};

/// Longest listing `enumerate` will produce; A(10, 4) is already over a million.
pub const MAX_ENUMERATE_LENGTH: usize = 10;

pub fn perm(text: &str) -> Result<Permutation, CliError> {
    Ok(text.parse::<Permutation>()?)
}

fn word(text: &str) -> Result<Word, CliError> {
    Ok(text.parse::<Word>()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Recursive,
    NormalEmbedding,
    Classifier,
    ClosedForm,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Recursive => "recursive",
            Method::NormalEmbedding => "normal-embedding",
            Method::Classifier => "classifier",
            Method::ClosedForm => "closed-form",
        }
    }
}

fn resolve(method: Method, bottom: &Permutation, top: &Permutation) -> Method {
    if method != Method::Auto {
        return method;
    }
    if bottom == top || bottom.len() > top.len() || !top.contains(bottom) {
        Method::Recursive
    } else if bottom.len() == 1 && top.len() > 2 && top.descent_count() == 1 {
        Method::Classifier
    } else if bottom.descent_count() == top.descent_count() {
        Method::NormalEmbedding
    } else {
        Method::Recursive
    }
}

pub fn mobius(
    cfg: &RunConfig,
    bottom: &str,
    top: &str,
    method: Method,
) -> Result<Report, CliError> {
    let (bottom, top) = (perm(bottom)?, perm(top)?);
    let method = resolve(method, &bottom, &top);
    let mut case = None;
    let value = match method {
        Method::Recursive | Method::Auto => {
            mobius_recursive_with_limit(&bottom, &top, cfg.max_interval_top_length)?
        }
        Method::NormalEmbedding => mobius_fixed_descent(&bottom, &top)?,
        Method::Classifier => {
            if bottom.len() != 1 {
                return Err(CliError::Precondition(format!(
                    "the classifier computes μ(1, π); bottom {bottom} is not 1"
                )));
            }
            let c = classify_one_descent(&top)?;
            case = Some(c.case.label());
            c.value
        }
        Method::ClosedForm => {
            let kind = alternating_kind(&top)
                .ok_or_else(|| CliError::Precondition(format!("{top} is neither M_n nor W_n")))?;
            mobius_bottom_closed_form(&bottom, top.len(), kind)?
        }
    };

    let mut cross_checked = false;
    if top.len() <= cfg.verify_threshold {
        let other = if method == Method::Recursive {
            mobius_fixed_descent(&bottom, &top).ok()
        } else {
            Some(mobius_recursive_with_limit(
                &bottom,
                &top,
                cfg.max_interval_top_length,
            )?)
        };
        if let Some(other) = other {
            if other != value {
                return Err(CliError::Verification(format!(
                    "μ({bottom}, {top}): {} gave {value}, cross-check gave {other}",
                    method.name()
                )));
            }
            cross_checked = true;
        }
    }

    let mut record = json!({
        "bottom": bottom,
        "top": top,
        "method_used": method.name(),
        "value": value,
        "cross_checked": cross_checked,
    });
    let mut text = format!("μ({bottom}, {top}) = {value} ({}", method.name());
    if let Some(case) = case {
        record["case"] = json!(case);
        write!(text, ", case {case}").expect("string write");
    }
    if cross_checked {
        text.push_str(", cross-checked");
    }
    text.push_str(")\n");
    Ok(Report::new(record).with_text(text))
}

pub fn bijection(to_word: Option<&str>, to_perm: Option<&str>) -> Result<Report, CliError> {
    match (to_word, to_perm) {
        (Some(p), None) => {
            let p = perm(p)?;
            let w = perm_to_word(&p);
            let text = format!("f({p}) = {w}\n");
            Ok(Report::new(json!({
                "perm": p,
                "word": w,
                "descents": p.descent_count(),
                "max_letter": w.max_letter(),
            }))
            .with_text(text))
        }
        (None, Some(w)) => {
            let w = word(w)?;
            let p = word_to_perm(&w)?;
            let text = format!("g({w}) = {p}\n");
            Ok(Report::new(json!({
                "word": w,
                "perm": p,
                "descents": p.descent_count(),
            }))
            .with_text(text))
        }
        _ => Err(CliError::Usage(
            "give exactly one of --to-word or --to-perm".into(),
        )),
    }
}

pub fn classify(cfg: &RunConfig, text: &str) -> Result<Report, CliError> {
    let p = perm(text)?;
    let c = classify_one_descent(&p)?;
    let cases: Vec<&str> = matching_cases(&p)?.iter().map(|m| m.case.label()).collect();
    let cross_checked = p.len() <= cfg.verify_threshold;
    if cross_checked {
        let oracle =
            mobius_recursive_with_limit(&Permutation::one(), &p, cfg.max_interval_top_length)?;
        if oracle != c.value {
            return Err(CliError::Verification(format!(
                "{p}: case {} gives {}, recursion gives {oracle}",
                c.case, c.value
            )));
        }
    }
    let text = format!("{p}: {}, μ(1, π) = {}\n", c.case, c.value);
    Ok(Report::new(json!({
        "perm": p,
        "case": c.case.label(),
        "value": c.value,
        "matching_cases": cases,
        "cross_checked": cross_checked,
    }))
    .with_text(text))
}

pub fn complex(
    cfg: &RunConfig,
    bottom: &str,
    top: &str,
    euler: bool,
    betti: bool,
) -> Result<Report, CliError> {
    let (bottom, top) = (perm(bottom)?, perm(top)?);
    let interval = build_interval_with_limit(&bottom, &top, cfg.max_interval_top_length)?;
    let complex = OrderComplex::from_interval(&interval)?;
    let faces = complex.face_counts();
    let mut record = json!({
        "bottom": bottom,
        "top": top,
        "dimension": complex.dimension(),
        "vertices": complex.vertices().len(),
        "facets": complex.facets().len(),
        "face_counts": faces,
        "connected": complex.is_connected(),
    });
    let mut text = format!(
        "Δ({bottom}, {top}): dimension {}, {} vertices, {} facets\nface counts from the empty face: {faces:?}\n",
        complex.dimension(),
        complex.vertices().len(),
        complex.facets().len(),
    );
    if euler {
        let chi = euler_characteristic(&complex);
        let mu = interval.mobius();
        if top.len() <= cfg.verify_threshold && chi != mu {
            return Err(CliError::Verification(format!(
                "Δ({bottom}, {top}): χ̃ = {chi} but μ = {mu}"
            )));
        }
        record["euler"] = json!(chi);
        record["mobius"] = json!(mu);
        writeln!(text, "reduced Euler characteristic {chi}, μ = {mu}").expect("string write");
    }
    if betti {
        let b = betti_gf2(&complex);
        if b.alternating_sum() != b.euler {
            return Err(CliError::Verification(format!(
                "Δ({bottom}, {top}): Betti numbers {:?} do not sum to χ̃ = {}",
                b.reduced_betti, b.euler
            )));
        }
        writeln!(
            text,
            "reduced Betti numbers over {} from dimension -1: {:?}",
            b.field, b.reduced_betti
        )
        .expect("string write");
        record["betti_field"] = json!(b.field);
        record["reduced_betti"] = json!(b.reduced_betti);
    }
    Ok(Report::new(record).with_text(text))
}

pub fn scan_disconnected(
    cfg: &RunConfig,
    bottom: &str,
    top: &str,
    min_rank: usize,
) -> Result<Report, CliError> {
    let (bottom, top) = (perm(bottom)?, perm(top)?);
    let found = scan_disconnected_subintervals_with_limit(
        &bottom,
        &top,
        min_rank,
        cfg.max_interval_top_length,
    )?;
    let table = Table {
        header: vec!["bottom".into(), "top".into(), "rank".into()],
        rows: found
            .iter()
            .map(|d| vec![d.bottom.to_string(), d.top.to_string(), d.rank.to_string()])
            .collect(),
    };
    let mut text = String::new();
    for d in &found {
        writeln!(text, "[{}, {}] rank {}", d.bottom, d.top, d.rank).expect("string write");
    }
    writeln!(text, "count {}", found.len()).expect("string write");
    Ok(Report::new(json!({
        "bottom": bottom,
        "top": top,
        "min_rank": min_rank,
        "count": found.len(),
        "subintervals": found,
    }))
    .with_table(table)
    .with_text(text))
}

pub fn enumerate(length: usize, descents: usize, words: bool) -> Result<Report, CliError> {
    if length == 0 || descents >= length {
        return Err(CliError::Precondition(format!(
            "need 0 <= descents < length, got length {length} and descents {descents}"
        )));
    }
    if length > MAX_ENUMERATE_LENGTH {
        return Err(CliError::Precondition(format!(
            "enumeration is limited to length {MAX_ENUMERATE_LENGTH}"
        )));
    }
    let items: Vec<String> = if words {
        enumerate_ahat_k(descents as u32 + 1, length)
            .iter()
            .map(ToString::to_string)
            .collect()
    } else {
        permutations_with_descents(length, descents)
            .map(|p| p.to_string())
            .collect()
    };
    let mut text: String = items.iter().map(|i| format!("{i}\n")).collect();
    writeln!(text, "count {}", items.len()).expect("string write");
    let table = Table {
        header: vec!["item".into()],
        rows: items.iter().map(|i| vec![i.clone()]).collect(),
    };
    Ok(Report::new(json!({
        "length": length,
        "descents": descents,
        "kind": if words { "words" } else { "permutations" },
        "count": items.len(),
        "items": items,
    }))
    .with_table(table)
    .with_text(text))
}

/// Returns the report and whether every suite passed.
pub fn verify(cfg: &RunConfig, suite: &str, max_length: usize) -> Result<(Report, bool), CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite
            .parse::<Suite>()
            .map_err(|e| CliError::Usage(e.to_string()))?]
    };
    if max_length == 0 || max_length > cfg.max_interval_top_length {
        return Err(CliError::Precondition(format!(
            "max length must lie in 1..={}",
            cfg.max_interval_top_length
        )));
    }
    let reports: Vec<_> = suites.iter().map(|&s| run_suite(s, max_length)).collect();
    let passed = reports.iter().all(|r| r.passed());

    let mut text = String::new();
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(
            text,
            "{status} {} (max length {}, {} checks, {} failures)",
            r.suite, r.max_length, r.checked, r.failure_count
        )
        .expect("string write");
        for f in &r.failures {
            writeln!(text, "  {}: {}", f.case, f.detail).expect("string write");
        }
        for n in &r.notes {
            writeln!(text, "  note: {n}").expect("string write");
        }
    }
    let table = Table {
        header: ["suite", "max_length", "checked", "failure_count", "passed"]
            .map(String::from)
            .to_vec(),
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    r.suite.clone(),
                    r.max_length.to_string(),
                    r.checked.to_string(),
                    r.failure_count.to_string(),
                    r.passed().to_string(),
                ]
            })
            .collect(),
    };
    let record: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("plain data");
            v["passed"] = json!(r.passed());
            v
        })
        .collect();
    Ok((
        Report::new(Value::Array(record))
            .with_table(table)
            .with_text(text),
        passed,
    ))
}
