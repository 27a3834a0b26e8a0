use std::fmt::Write as _;

use germs::closure::{ClosureKind, GermClosure};
use germs::document::{DocumentError, DocumentKind, PosetDocument};
use germs::embed::{self, EmbedError};
use germs::enumerate::EnumError;
use germs::harness::{self, Corpus, Domain, SuiteSpec};
use germs::poset::Poset;
use germs::repdim::{self, Orientation};
use germs::{germ, ElemSet, Lattice, LatticeError};
use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Format, VerifyKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Cap(String),
    /// A verification run with failures; the payload is the report.
    #[error("verification failed")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) | CliError::Failed(_) => 1,
            CliError::Syntax(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Syntax { .. } | DocumentError::Json(_) => CliError::Syntax(e.to_string()),
            DocumentError::Poset(p) => CliError::Domain(p.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            EmbedError::Internal(_) => CliError::Domain(e.to_string()),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        CliError::Cap(e.to_string())
    }
}

pub struct Loaded {
    pub name: Option<String>,
    pub poset: Poset,
}

pub fn load(path: &str, text: &str) -> Result<Loaded, CliError> {
    let doc = PosetDocument::load(path, text)?;
    let poset = doc.to_poset()?;
    if doc.kind == Some(DocumentKind::Lattice) {
        Lattice::from_poset(poset.clone())?;
    }
    Ok(Loaded { name: doc.name, poset })
}

fn require_lattice(input: &Loaded) -> Result<Lattice, CliError> {
    Ok(Lattice::from_poset(input.poset.clone())?)
}

fn parse_subset(poset: &Poset, spec: &str) -> Result<ElemSet, CliError> {
    let inner = spec.trim().trim_start_matches('{').trim_end_matches('}');
    let labels: Vec<&str> = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    poset
        .subset_of_labels(&labels)
        .map_err(|e| CliError::Domain(e.to_string()))
}

fn labels_of(poset: &Poset, items: impl IntoIterator<Item = usize>) -> Vec<String> {
    items.into_iter().map(|i| poset.label(i).to_string()).collect()
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces, without trailing blanks.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                let pad = widths[c] - cell.chars().count();
                line.push_str(cell);
                line.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn grm(input: &Loaded, format: Format) -> Result<String, CliError> {
    let p = &input.poset;
    let germs = germ::germs(p);
    match format {
        Format::Json => Ok(pretty(json!({
            "germs": germs.iter().map(|g| json!({
                "germ": p.label(g.germ),
                "cogerm": p.label(g.cogerm),
                "chain": labels_of(p, g.chain.iter().copied()),
            })).collect::<Vec<_>>(),
        }))),
        Format::Text => {
            let mut out = format!("germs: {}\n", germs.len());
            for g in &germs {
                let _ = writeln!(
                    out,
                    "{} -> {}: {}",
                    p.label(g.germ),
                    p.label(g.cogerm),
                    labels_of(p, g.chain.iter().copied()).join(" < ")
                );
            }
            Ok(out)
        }
    }
}

fn closure_name(input: &Loaded) -> String {
    format!("G({})", input.name.as_deref().unwrap_or("U"))
}

pub fn closure(input: &Loaded, format: Format) -> Result<String, CliError> {
    let base = &input.poset;
    let c = GermClosure::new(base);
    let doc = PosetDocument::from_poset(c.poset(), Some(&closure_name(input)), Some(DocumentKind::Lattice));
    let principal = |i: usize| c.embedding().iter().position(|&e| e == i);
    match format {
        Format::Json => {
            let classes: Vec<Value> = (0..c.len())
                .map(|i| {
                    let mut v = match c.kind(i) {
                        ClosureKind::Lambda { witness } => {
                            json!({"part": "lambda", "witness": labels_of(base, witness.iter())})
                        }
                        ClosureKind::Ghat { germ } => json!({"part": "ghat", "germ": base.label(*germ)}),
                    };
                    v["element"] = json!(c.poset().label(i));
                    v["principal"] = json!(principal(i).map(|u| base.label(u)));
                    v
                })
                .collect();
            Ok(pretty(json!({
                "document": serde_json::to_value(&doc).expect("documents serialize"),
                "classification": classes,
            })))
        }
        Format::Text => {
            let mut out = doc.to_text();
            let rows: Vec<Vec<String>> = (0..c.len())
                .map(|i| {
                    let mut row = vec!["#".to_string(), c.poset().label(i).to_string()];
                    match c.kind(i) {
                        ClosureKind::Lambda { witness } => {
                            row.push("lambda".into());
                            row.push(format!("B={}", base.set_label(witness)));
                        }
                        ClosureKind::Ghat { germ } => {
                            row.push("ghat".into());
                            row.push(format!("germ={}", base.label(*germ)));
                        }
                    }
                    if let Some(u) = principal(i) {
                        row.push(format!("base={}", base.label(u)));
                    }
                    row
                })
                .collect();
            out.push_str(&table(&rows));
            Ok(out)
        }
    }
}

pub fn gt(input: &Loaded, format: Format) -> Result<String, CliError> {
    let l = require_lattice(input)?;
    let p = l.poset();
    let lambda = l.lambda_e();
    let sharp = embed::g_sharp(&l);
    let g_t = embed::g_t(&l);
    let rows: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..l.len())
        .map(|t| {
            let up = l.sigma_trace(t);
            let down = l.r_trace(*up.last().expect("trace is nonempty"));
            (t, up, down)
        })
        .collect();
    match format {
        Format::Json => Ok(pretty(json!({
            "elements": rows.iter().map(|(t, up, down)| json!({
                "element": p.label(*t),
                "irreducible": l.is_irreducible(*t),
                "lambda_e": lambda.contains(*t),
                "g_sharp": sharp.contains(*t),
                "g_t": g_t.contains(*t),
                "sigma_trace": labels_of(p, up.iter().copied()),
                "r_trace": labels_of(p, down.iter().copied()),
            })).collect::<Vec<_>>(),
            "lambda_e": labels_of(p, lambda.iter()),
            "ghat_t": labels_of(p, embed::ghat_t(&l).iter()),
            "g_t": labels_of(p, g_t.iter()),
        }))),
        Format::Text => {
            let mut table_rows = vec![vec![
                "element".to_string(),
                "irr".into(),
                "LambdaE".into(),
                "G#".into(),
                "G_T".into(),
                "sigma^inf".into(),
                "r^inf".into(),
            ]];
            for (t, up, down) in &rows {
                table_rows.push(vec![
                    p.label(*t).to_string(),
                    yes(l.is_irreducible(*t)),
                    yes(lambda.contains(*t)),
                    yes(sharp.contains(*t)),
                    yes(g_t.contains(*t)),
                    labels_of(p, up.iter().copied()).join(" < "),
                    labels_of(p, down.iter().copied()).join(" > "),
                ]);
            }
            let mut out = table(&table_rows);
            let _ = writeln!(out, "LambdaE: {}", p.set_label(&lambda));
            let _ = writeln!(out, "Ghat_T: {}", p.set_label(&embed::ghat_t(&l)));
            let _ = writeln!(out, "G_T: {}", p.set_label(&g_t));
            Ok(out)
        }
    }
}

pub fn extensible(input: &Loaded, subset: &str, format: Format) -> Result<String, CliError> {
    let l = require_lattice(input)?;
    let p = l.poset();
    let u = parse_subset(p, subset)?;
    let r = embed::is_germ_extensible(&l, &u);
    let members: Vec<usize> = u.iter().collect();
    let nu: Vec<(String, String)> = (0..r.closure.len())
        .map(|i| {
            let set = ElemSet::from_indices(p.len(), r.closure.set(i).iter().map(|k| members[k]));
            (p.set_label(&set), p.label(r.nu_image[i]).to_string())
        })
        .collect();
    match format {
        Format::Json => Ok(pretty(json!({
            "subset": labels_of(p, u.iter()),
            "extensible": r.extensible,
            "violating_germs": labels_of(p, r.violating_germs.iter().copied()),
            "g_bar": r.g_bar.as_ref().map(|s| labels_of(p, s.iter())),
            "nu": nu.iter().map(|(s, t)| json!({"set": s, "join": t})).collect::<Vec<_>>(),
        }))),
        Format::Text => {
            let mut out = format!("subset: {}\n", p.set_label(&u));
            let _ = writeln!(out, "extensible: {}", yes(r.extensible));
            let violating = labels_of(p, r.violating_germs.iter().copied());
            let _ = writeln!(
                out,
                "violating germs: {}",
                if violating.is_empty() {
                    "-".to_string()
                } else {
                    violating.join(" ")
                }
            );
            let _ = writeln!(
                out,
                "G-bar: {}",
                r.g_bar.as_ref().map_or("-".to_string(), |s| p.set_label(s))
            );
            out.push_str("nu:\n");
            let rows: Vec<Vec<String>> = nu
                .iter()
                .map(|(s, t)| vec![format!("  {s}"), "->".into(), t.clone()])
                .collect();
            out.push_str(&table(&rows));
            Ok(out)
        }
    }
}

pub fn base(input: &Loaded, subset: &str, format: Format) -> Result<String, CliError> {
    let l = require_lattice(input)?;
    let p = l.poset();
    let s = parse_subset(p, subset)?;
    let b = embed::unique_base(&l, &s)?;
    let top = embed::is_germ_extensible(&l, &b)
        .g_bar
        .expect("unique bases are germ extensible");
    match format {
        Format::Json => Ok(pretty(json!({
            "subset": labels_of(p, s.iter()),
            "base": labels_of(p, b.iter()),
            "g_bar": labels_of(p, top.iter()),
        }))),
        Format::Text => Ok(format!(
            "subset: {}\nbase: {}\nG-bar: {}\n",
            p.set_label(&s),
            p.set_label(&b),
            p.set_label(&top)
        )),
    }
}

pub fn partition(input: &Loaded, cap: usize, format: Format) -> Result<String, CliError> {
    let l = require_lattice(input)?;
    let p = l.poset();
    let cells = embed::verify_partition(&l, cap)?;
    let total: usize = cells.iter().map(|c| c.members.len()).sum();
    match format {
        Format::Json => Ok(pretty(json!({
            "cells": cells.iter().map(|c| json!({
                "base": labels_of(p, c.base.iter()),
                "top": labels_of(p, c.top.iter()),
                "members": c.members.iter().map(|m| p.set_label(m)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "subsets": total,
        }))),
        Format::Text => {
            let mut out = format!("cells: {}\n", cells.len());
            for c in &cells {
                let _ = writeln!(
                    out,
                    "[{}, {}]  {} subsets: {}",
                    p.set_label(&c.base),
                    p.set_label(&c.top),
                    c.members.len(),
                    c.members.iter().map(|m| p.set_label(m)).collect::<Vec<_>>().join(" ")
                );
            }
            let _ = writeln!(out, "subsets: {total}");
            Ok(out)
        }
    }
}

pub fn dim(
    input: &Loaded,
    x_min: u32,
    x_max: u32,
    dim_v: &str,
    orientation: Orientation,
    format: Format,
) -> Result<String, CliError> {
    let e = &input.poset;
    let dim_v: BigUint = dim_v
        .parse()
        .map_err(|_| CliError::Syntax(format!("--dim-v expects a positive integer, got `{dim_v}`")))?;
    let rows = repdim::dimension_table(e, x_min, x_max, &dim_v, orientation)
        .map_err(|err| CliError::Domain(err.to_string()))?;
    let g_e = repdim::g_size_oriented(e, Orientation::E);
    let g_eop = repdim::g_size_oriented(e, Orientation::Eop);
    let aut = e.automorphism_count();
    let orient = match orientation {
        Orientation::E => "e",
        Orientation::Eop => "eop",
    };
    match format {
        Format::Json => Ok(pretty(json!({
            "e_size": e.len(),
            "aut": aut,
            "g_size_e": g_e,
            "g_size_eop": g_eop,
            "orientation": orient,
            "dim_v": dim_v.to_string(),
            "rows": rows,
        }))),
        Format::Text => {
            let mut out = format!(
                "|E| = {}\n|Aut(E)| = {aut}\n|G(E)| = {g_e}\n|G(E^op)| = {g_eop}\n",
                e.len()
            );
            let _ = writeln!(out, "orientation: {orient}");
            let _ = writeln!(out, "dim V = {dim_v}");
            let mut t = vec![vec!["|X|".to_string(), "dimension".to_string()]];
            t.extend(rows.iter().map(|r| vec![r.x_size.to_string(), r.dimension.clone()]));
            out.push_str(&table(&t));
            Ok(out)
        }
    }
}

pub fn verify(spec: &SuiteSpec, kind: VerifyKind, names: &[String], format: Format) -> Result<String, CliError> {
    let corpus = Corpus::build(spec)?;
    let enabled = |d: &Domain| match kind {
        VerifyKind::All => true,
        VerifyKind::Posets => *d != Domain::Lattices,
        VerifyKind::Lattices => *d == Domain::Lattices,
    };
    let selection: Vec<_> = harness::select(names)
        .map_err(CliError::Domain)?
        .into_iter()
        .filter(|p| p.domains.iter().any(enabled))
        .collect();
    let reports = harness::run_suite(&corpus, &selection);
    let out = match format {
        Format::Text => harness::render_text(&reports),
        Format::Json => harness::render_json_lines(&reports),
    };
    if harness::suite_passed(&reports) {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn dot(input: &Loaded) -> Result<String, CliError> {
    let p = &input.poset;
    let germs = germ::germ_set(p);
    let irr = Lattice::from_poset(p.clone()).ok().map(|l| l.irreducibles().clone());
    let mut out = format!(
        "digraph {} {{\n  rankdir=BT;\n  node [shape=circle];\n",
        quote(input.name.as_deref().unwrap_or("poset"))
    );
    for i in 0..p.len() {
        let mut attrs = Vec::new();
        if germs.contains(i) {
            attrs.push("shape=box");
        }
        if irr.as_ref().is_some_and(|e| e.contains(i)) {
            attrs.push("style=filled");
            attrs.push("fillcolor=gray");
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {};", quote(p.label(i)));
        } else {
            let _ = writeln!(out, "  {} [{}];", quote(p.label(i)), attrs.join(", "));
        }
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  {} -> {};", quote(p.label(a)), quote(p.label(b)));
    }
    out.push_str("}\n");
    Ok(out)
}
