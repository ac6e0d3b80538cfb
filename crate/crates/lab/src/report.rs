//! Report and catalog writers.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use congruence_core::identity::{IdentityReport, IntValuedClaim, IntValuedReport};
use congruence_core::{CheckRecord, Statement, Summary};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::Format;

pub fn record_json(r: &CheckRecord) -> Value {
    let extra: Map<String, Value> = r
        .extra
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let mut obj = json!({
        "stmt": r.stmt,
        "kind": r.kind.as_str(),
        "p": r.p,
        "e": r.e,
        "x": r.x,
        "extra": extra,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "pass": r.pass,
        "skip": r.skip,
    });
    if let Some(err) = &r.error {
        obj["error"] = Value::String(err.clone());
    }
    obj["us"] = json!(r.us);
    obj
}

#[derive(Serialize)]
struct CsvRow<'a> {
    stmt: &'a str,
    kind: &'a str,
    p: u64,
    e: u32,
    x: &'a str,
    extra: String,
    lhs: Option<u64>,
    rhs: Option<u64>,
    pass: bool,
    skip: bool,
    error: &'a str,
    us: u64,
}

fn extra_text(r: &CheckRecord) -> String {
    r.extra
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| String::from("-"), |v| v.to_string())
}

pub fn write_records(out: &mut dyn Write, format: Format, records: &[CheckRecord]) -> Result<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                writeln!(out, "{}", record_json(r))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(CsvRow {
                    stmt: &r.stmt,
                    kind: r.kind.as_str(),
                    p: r.p,
                    e: r.e,
                    x: r.x.as_deref().unwrap_or(""),
                    extra: extra_text(r),
                    lhs: r.lhs,
                    rhs: r.rhs,
                    pass: r.pass,
                    skip: r.skip,
                    error: r.error.as_deref().unwrap_or(""),
                    us: r.us,
                })?;
            }
            w.flush()?;
        }
        Format::Pretty => {
            let width = records
                .iter()
                .map(|r| r.stmt.len())
                .max()
                .unwrap_or(4)
                .max(4);
            writeln!(
                out,
                "{:<width$}  {:>5}  {:>1}  {:>8}  {:>14}  {:>14}  {:<6}  extra",
                "stmt", "p", "e", "x", "lhs", "rhs", "result"
            )?;
            for r in records {
                let result = if r.skip {
                    "skip"
                } else if r.error.is_some() {
                    "error"
                } else if r.pass {
                    "pass"
                } else {
                    "FAIL"
                };
                let mut extra = extra_text(r);
                if let Some(err) = &r.error {
                    extra = format!("{extra} {err}").trim().to_string();
                }
                writeln!(
                    out,
                    "{:<width$}  {:>5}  {:>1}  {:>8}  {:>14}  {:>14}  {:<6}  {}",
                    r.stmt,
                    r.p,
                    r.e,
                    r.x.as_deref().unwrap_or("-"),
                    opt(r.lhs),
                    opt(r.rhs),
                    result,
                    extra
                )?;
            }
        }
    }
    Ok(())
}

/// Per-statement tallies; conjectures are marked as findings.
pub fn write_summary(out: &mut dyn Write, summary: &Summary) -> Result<()> {
    let width = summary
        .tallies
        .iter()
        .map(|t| t.id.len())
        .max()
        .unwrap_or(9)
        .max(9);
    writeln!(
        out,
        "{:<width$}  {:<10}  {:>7}  {:>5}  {:>5}  {:>5}",
        "statement", "kind", "pass", "fail", "skip", "error"
    )?;
    for t in &summary.tallies {
        let kind = t.kind.map_or("-", |k| k.as_str());
        let mark = match (t.fail + t.error > 0, t.kind.is_some_and(|k| k.is_proven())) {
            (true, true) => "  <- failure",
            (true, false) => "  <- finding",
            _ => "",
        };
        writeln!(
            out,
            "{:<width$}  {:<10}  {:>7}  {:>5}  {:>5}  {:>5}{}",
            t.id, kind, t.pass, t.fail, t.skip, t.error, mark
        )?;
    }
    let (pass, fail, skip, error) = summary.tallies.iter().fold((0, 0, 0, 0), |a, t| {
        (a.0 + t.pass, a.1 + t.fail, a.2 + t.skip, a.3 + t.error)
    });
    writeln!(
        out,
        "total: {pass} pass, {fail} fail, {skip} skip, {error} error; {}",
        if summary.failed {
            "proven statements FAILED"
        } else {
            "no proven failures"
        }
    )?;
    Ok(())
}

/// Catalog key for grouping: `conj6.14iii/a` and `conj6.14i` share `conj6.14`.
pub fn group_of(id: &str) -> &str {
    let head = id.split('/').next().unwrap_or(id);
    if head.starts_with("conj") {
        head.trim_end_matches(|c: char| c.is_ascii_alphabetic())
    } else {
        head
    }
}

/// Sort key comparing digit runs numerically (`conj6.2` < `conj6.10`).
pub fn natural_key(id: &str) -> Vec<(u64, String)> {
    let mut out = Vec::new();
    let mut rest = id;
    while !rest.is_empty() {
        let split = rest
            .find(|c: char| c.is_ascii_digit() != rest.starts_with(|d: char| d.is_ascii_digit()))
            .unwrap_or(rest.len());
        let (run, tail) = rest.split_at(split);
        match run.parse::<u64>() {
            Ok(n) => out.push((n, String::new())),
            Err(_) => out.push((u64::MAX, run.to_string())),
        }
        rest = tail;
    }
    out
}

/// One exported catalog row.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: String,
    pub paper_ref: String,
    pub quote: String,
    pub prime_constraint: Option<String>,
    pub e: Option<u32>,
    pub param_domain: String,
    pub side_condition: Option<String>,
    pub prime_cap: Option<u64>,
    pub note: String,
}

impl CatalogEntry {
    pub fn from_statement(s: &Statement) -> Self {
        CatalogEntry {
            id: s.id.to_string(),
            kind: s.kind.as_str().to_string(),
            paper_ref: s.paper_ref.to_string(),
            quote: s.quote.to_string(),
            prime_constraint: Some(s.constraint.as_str().to_string()),
            e: Some(s.e_max),
            param_domain: s.params.as_str().to_string(),
            side_condition: Some(s.side.as_str().to_string())
                .filter(|c| !c.is_empty() && c != "none"),
            prime_cap: s.prime_cap,
            note: s.note.to_string(),
        }
    }

    /// One row per integer-valuedness family (all instances share an id).
    pub fn from_claims(claims: &[IntValuedClaim]) -> Vec<Self> {
        let mut by: BTreeMap<&str, Vec<&IntValuedClaim>> = BTreeMap::new();
        for c in claims {
            by.entry(c.id).or_default().push(c);
        }
        by.into_iter()
            .map(|(id, cs)| {
                let params: Vec<&str> = cs[0]
                    .label
                    .split(',')
                    .filter_map(|kv| kv.split_once('=').map(|(k, _)| k))
                    .collect();
                let (first, last) = (&cs[0].label, &cs[cs.len() - 1].label);
                CatalogEntry {
                    id: id.to_string(),
                    kind: String::from("conjecture"),
                    paper_ref: cs[0].reference.to_string(),
                    quote: if cs[0].one_mod_four {
                        String::from("integer-valued in x, values = 1 (mod 4)")
                    } else {
                        String::from("integer-valued in x")
                    },
                    prime_constraint: None,
                    e: None,
                    param_domain: params.join(","),
                    side_condition: None,
                    prime_cap: None,
                    note: format!("{} instances, {first} .. {last}", cs.len()),
                }
            })
            .collect()
    }
}

pub fn write_catalog(out: &mut dyn Write, format: Format, entries: &[CatalogEntry]) -> Result<()> {
    match format {
        Format::Jsonl => {
            for e in entries {
                writeln!(out, "{}", serde_json::to_string(e)?)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for e in entries {
                w.serialize(e)?;
            }
            w.flush()?;
        }
        Format::Pretty => {
            let mut groups: Vec<(&str, Vec<&CatalogEntry>)> = Vec::new();
            for e in entries {
                let g = group_of(&e.id);
                match groups.iter_mut().find(|(k, _)| *k == g) {
                    Some((_, v)) => v.push(e),
                    None => groups.push((g, vec![e])),
                }
            }
            let width = entries.iter().map(|e| e.id.len()).max().unwrap_or(2);
            for (g, es) in &groups {
                writeln!(out, "[{g}] {}", es[0].paper_ref)?;
                for e in es {
                    let e_text = e.e.map_or_else(|| String::from("-"), |e| format!("p^{e}"));
                    let mut tail = e.prime_constraint.clone().unwrap_or_default();
                    if let Some(cap) = e.prime_cap {
                        tail.push_str(&format!(", p<={cap}"));
                    }
                    if let Some(side) = &e.side_condition {
                        tail.push_str(&format!(", {side}"));
                    }
                    writeln!(
                        out,
                        "  {:<width$}  {:<10}  {:<4}  {}  [{}]",
                        e.id,
                        e.kind,
                        e_text,
                        e.quote,
                        tail.trim_start_matches(", ")
                    )?;
                }
            }
            writeln!(out, "{} entries in {} groups", entries.len(), groups.len())?;
        }
    }
    Ok(())
}

pub fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "id": r.id,
        "pass": r.pass,
        "tuples": r.tuples_checked,
        "points": r.points_checked,
        "counterexample": r.counterexample.as_ref().map(|c| json!({
            "params": c.params,
            "point": c.point.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "lhs": c.lhs.to_string(),
            "rhs": c.rhs.to_string(),
        })),
    })
}

pub fn int_valued_json(r: &IntValuedReport) -> Value {
    json!({
        "id": r.id,
        "label": r.label,
        "pass": r.pass,
        "coefficients": r.coefficients.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "detail": r.detail,
    })
}
