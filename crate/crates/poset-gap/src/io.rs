//! File formats: the plain-text poset format, the JSON document format, and
//! DOT export of Hasse diagrams.
//!
//! Text grammar: the first content line is `elements: <labels>`, each later
//! line is `<u> < <v>`, `#` starts a comment, and whitespace around tokens is
//! ignored. Relation lines may be any strict-order pairs; loading closes the
//! relation and re-derives the covers, and serialization emits only covers.

use serde::{Deserialize, Serialize};

use crate::chains::ChainMetrics;
use crate::error::{Error, Result};
use crate::poset::{build_poset, Poset};

/// Serde adapters for arbitrary-precision counts: emitted as JSON numbers
/// while they fit `u64`/`i64` (always the case at the supported poset sizes),
/// as decimal strings beyond that.
pub mod serde_big {
    pub mod uint {
        use num_bigint::BigUint;
        use num_traits::ToPrimitive;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
            match v.to_u64() {
                Some(small) => s.serialize_u64(small),
                None => s.serialize_str(&v.to_string()),
            }
        }
    }

    pub mod int {
        use num_bigint::BigInt;
        use num_traits::ToPrimitive;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            match v.to_i64() {
                Some(small) => s.serialize_i64(small),
                None => s.serialize_str(&v.to_string()),
            }
        }
    }
}

/// The structured (JSON) poset document: labels plus strict-order pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    pub relations: Vec<(String, String)>,
}

impl PosetDocument {
    /// Document holding the cover pairs of `p` (closure restores the rest).
    pub fn from_poset(p: &Poset) -> PosetDocument {
        PosetDocument {
            elements: p.names().to_vec(),
            relations: p
                .cover_pairs()
                .into_iter()
                .map(|(i, j)| (p.name(i).to_string(), p.name(j).to_string()))
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        build_poset(&self.elements, &self.relations)
    }
}

/// Parse the plain-text poset format.
pub fn parse_poset_text(input: &str) -> Result<Poset> {
    let mut elements: Option<Vec<String>> = None;
    let mut relations: Vec<(String, String)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if elements.is_none() {
            let rest = line.strip_prefix("elements:").ok_or_else(|| Error::Syntax {
                line: line_no,
                message: "expected `elements: <label> <label> ...` first".to_string(),
            })?;
            elements = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let mut parts = line.splitn(2, '<');
        let lo = parts.next().unwrap_or("").trim();
        let hi = parts.next().map(str::trim);
        match hi {
            Some(hi) if !lo.is_empty() && !hi.is_empty() && !hi.contains('<') => {
                relations.push((lo.to_string(), hi.to_string()));
            }
            _ => {
                return Err(Error::Syntax {
                    line: line_no,
                    message: format!("expected `<label> < <label>`, got `{line}`"),
                })
            }
        }
    }
    let elements = elements.ok_or_else(|| Error::Syntax {
        line: input.lines().count().max(1),
        message: "missing `elements:` line".to_string(),
    })?;
    build_poset(&elements, &relations)
}

/// Serialize to the plain-text format: the elements line, then one line per
/// cover pair in index order.
pub fn serialize_poset_text(p: &Poset) -> String {
    let mut out = String::from("elements:");
    for name in p.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (i, j) in p.cover_pairs() {
        out.push_str(&format!("{} < {}\n", p.name(i), p.name(j)));
    }
    out
}

/// Parse the JSON document format.
pub fn parse_poset_json(input: &str) -> Result<Poset> {
    let doc: PosetDocument = serde_json::from_str(input).map_err(|e| Error::Syntax {
        line: e.line(),
        message: e.to_string(),
    })?;
    doc.to_poset()
}

/// Serialize to the JSON document format (pretty-printed, trailing newline).
pub fn serialize_poset_json(p: &Poset) -> String {
    let mut out = serde_json::to_string_pretty(&PosetDocument::from_poset(p))
        .expect("poset documents always serialize");
    out.push('\n');
    out
}

/// Parse either supported format, deciding by the leading character.
pub fn parse_poset_auto(input: &str) -> Result<Poset> {
    if input.trim_start().starts_with('{') {
        parse_poset_json(input)
    } else {
        parse_poset_text(input)
    }
}

/// Render the Hasse diagram as a DOT digraph, one edge per cover pair,
/// oriented lower to upper. With metrics attached, each node label carries a
/// `uc/dc/crossing` line.
pub fn export_dot(p: &Poset, annotations: Option<&ChainMetrics>) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for v in 0..p.len() {
        let mut label = escape(p.name(v));
        if let Some(m) = annotations {
            label.push_str(&format!("\\n{}/{}/{}", m.uc(v), m.dc(v), m.crossing(v)));
        }
        out.push_str(&format!("  n{v} [label=\"{label}\"];\n"));
    }
    for (i, j) in p.cover_pairs() {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}
