//! Line-oriented poset documents and their JSON equivalent.
//!
//! ```text
//! # comments run to the end of the line
//! name: vee
//! kind: poset
//! elements: a b c
//! relations: a<c b<c
//! ```
//!
//! `name:` and `kind:` are optional and may appear at most once; `elements:`
//! is required and appears once; `relations:` lines may repeat and their
//! tokens accumulate. A label is any run of characters other than whitespace,
//! `<` and `#`. Serialization writes the cover relation in index order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{Poset, PosetError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocumentKind {
    Poset,
    Lattice,
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DocumentKind::Poset => "poset",
            DocumentKind::Lattice => "lattice",
        })
    }
}

impl FromStr for DocumentKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "poset" => Ok(DocumentKind::Poset),
            "lattice" => Ok(DocumentKind::Lattice),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("invalid JSON document: {0}")]
    Json(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PosetDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<DocumentKind>,
    pub elements: Vec<String>,
    /// Pairs `(a, b)` read as `a < b`.
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

fn syntax(line: usize, column: usize, expected: impl Into<String>) -> DocumentError {
    DocumentError::Syntax {
        line,
        column,
        expected: expected.into(),
    }
}

/// Whitespace-separated tokens with their 1-based byte columns.
fn tokens(text: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((offset + s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &text[s..]));
    }
    out.into_iter()
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.contains(['<', '#']) && !s.chars().any(char::is_whitespace)
}

impl PosetDocument {
    pub fn parse(text: &str) -> Result<PosetDocument, DocumentError> {
        let mut doc = PosetDocument::default();
        let mut seen_elements = false;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            if trimmed.trim_end().is_empty() {
                continue;
            }
            let indent = content.len() - trimmed.len();
            let Some(colon) = trimmed.find(':') else {
                return Err(syntax(line, indent + 1, "`key:` (name, kind, elements or relations)"));
            };
            let key = trimmed[..colon].trim_end();
            let value = &trimmed[colon + 1..];
            let value_offset = indent + colon + 1;
            match key {
                "name" => {
                    if doc.name.is_some() {
                        return Err(syntax(line, indent + 1, "a single `name:` line"));
                    }
                    doc.name = Some(value.trim().to_string());
                }
                "kind" => {
                    if doc.kind.is_some() {
                        return Err(syntax(line, indent + 1, "a single `kind:` line"));
                    }
                    let mut toks = tokens(value, value_offset);
                    let (col, word) = toks
                        .next()
                        .ok_or_else(|| syntax(line, value_offset + value.len() + 1, "`poset` or `lattice`"))?;
                    doc.kind = Some(word.parse().map_err(|_| syntax(line, col, "`poset` or `lattice`"))?);
                    if let Some((col, _)) = toks.next() {
                        return Err(syntax(line, col, "end of line after the kind"));
                    }
                }
                "elements" => {
                    if seen_elements {
                        return Err(syntax(line, indent + 1, "a single `elements:` line"));
                    }
                    seen_elements = true;
                    for (col, tok) in tokens(value, value_offset) {
                        if !valid_label(tok) {
                            return Err(syntax(line, col, "an element label without `<`"));
                        }
                        doc.elements.push(tok.to_string());
                    }
                }
                "relations" => {
                    for (col, tok) in tokens(value, value_offset) {
                        let mut parts = tok.split('<');
                        let (a, b) = (parts.next().unwrap_or(""), parts.next());
                        match b {
                            Some(b) if parts.next().is_none() && valid_label(a) && valid_label(b) => {
                                doc.relations.push((a.to_string(), b.to_string()));
                            }
                            _ => return Err(syntax(line, col, "a relation of the form `a<b`")),
                        }
                    }
                }
                _ => {
                    return Err(syntax(
                        line,
                        indent + 1,
                        "one of `name:`, `kind:`, `elements:`, `relations:`",
                    ))
                }
            }
        }
        if !seen_elements {
            let last = text.lines().count().max(1);
            return Err(syntax(last, 1, "an `elements:` line"));
        }
        Ok(doc)
    }

    pub fn from_json(text: &str) -> Result<PosetDocument, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    /// Parses JSON when `path` ends in `.json`, the line format otherwise.
    pub fn load(path: &str, text: &str) -> Result<PosetDocument, DocumentError> {
        if path.ends_with(".json") {
            Self::from_json(text)
        } else {
            Self::parse(text)
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name: {name}\n"));
        }
        if let Some(kind) = self.kind {
            out.push_str(&format!("kind: {kind}\n"));
        }
        out.push_str("elements:");
        for e in &self.elements {
            out.push(' ');
            out.push_str(e);
        }
        out.push_str("\nrelations:");
        for (a, b) in &self.relations {
            out.push_str(&format!(" {a}<{b}"));
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn to_poset(&self) -> Result<Poset, DocumentError> {
        if let Some((a, _)) = self.relations.iter().find(|(a, b)| a == b) {
            return Err(PosetError::Cycle {
                a: a.clone(),
                b: a.clone(),
            }
            .into());
        }
        Ok(Poset::from_relations(self.elements.iter().cloned(), &self.relations)?)
    }

    /// The document of `poset` with its cover relation.
    pub fn from_poset(poset: &Poset, name: Option<&str>, kind: Option<DocumentKind>) -> PosetDocument {
        PosetDocument {
            name: name.map(str::to_string),
            kind,
            elements: poset.labels().to_vec(),
            relations: poset
                .covers()
                .into_iter()
                .map(|(a, b)| (poset.label(a).to_string(), poset.label(b).to_string()))
                .collect(),
        }
    }

    /// Re-serializes through the poset, so relations become covers.
    pub fn normalize(&self) -> Result<PosetDocument, DocumentError> {
        let p = self.to_poset()?;
        Ok(Self::from_poset(&p, self.name.as_deref(), self.kind))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vee() {
        let doc = PosetDocument::parse("elements: a b c\nrelations: a<c b<c").unwrap();
        let p = doc.to_poset().unwrap();
        assert_eq!(p.covers(), vec![(0, 2), (1, 2)]);
        assert_eq!(doc.to_text(), "elements: a b c\nrelations: a<c b<c\n");
    }

    #[test]
    fn one_point_and_comments() {
        let doc = PosetDocument::parse("# x\nname: pt  \nelements: a # trailing\nrelations:\n").unwrap();
        assert_eq!(doc.name.as_deref(), Some("pt"));
        assert_eq!(doc.to_poset().unwrap().len(), 1);
    }

    #[test]
    fn errors() {
        let err = PosetDocument::parse("elements: a b\nrelations: a<b b<a")
            .unwrap()
            .to_poset();
        assert!(matches!(err, Err(DocumentError::Poset(PosetError::Cycle { .. }))));
        assert_eq!(
            PosetDocument::parse("elements: a b\nrelations: a<b<c"),
            Err(syntax(2, 12, "a relation of the form `a<b`"))
        );
        assert_eq!(
            PosetDocument::parse("elements a"),
            Err(syntax(1, 1, "`key:` (name, kind, elements or relations)"))
        );
        assert_eq!(
            PosetDocument::parse("kind: ring\nelements: a"),
            Err(syntax(1, 7, "`poset` or `lattice`"))
        );
        assert!(matches!(
            PosetDocument::parse("elements: a\nrelations: a<z").unwrap().to_poset(),
            Err(DocumentError::Poset(PosetError::UnknownLabel(_)))
        ));
        assert!(PosetDocument::parse("relations: a<b").is_err());
    }

    #[test]
    fn json_round_trip() {
        let doc = PosetDocument::parse("name: v\nkind: lattice\nelements: a b\nrelations: a<b").unwrap();
        let back = PosetDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(PosetDocument::load("x.json", &doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn normalize_drops_transitive_edges() {
        let doc = PosetDocument::parse("elements: a b c\nrelations: a<b b<c a<c").unwrap();
        assert_eq!(
            doc.normalize().unwrap().to_text(),
            "elements: a b c\nrelations: a<b b<c\n"
        );
    }
}
