//! Table file formats.
//!
//! Text grid: a header line `n z1 z2`, then `n` lines of `n`
//! space-separated entries (line `i` is the row of element `i`). Blank
//! lines and lines starting with `#` are ignored.
//!
//! Structured document: a JSON object with fields `name?`, `n`, `z1`, `z2`,
//! `rows`, `roles?` and `expected?`.

use serde::{Deserialize, Serialize};

use crate::capabilities::CapabilitySummary;
use crate::error::FormatError;
use crate::table::{CayleyTable, Element, MAX_ORDER};

use super::Roles;

/// A parsed table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedTable {
    pub name: Option<String>,
    pub table: CayleyTable,
    pub z1: Element,
    pub z2: Element,
    pub roles: Option<Roles>,
    pub expected: Option<CapabilitySummary>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct StructuredDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    n: usize,
    z1: Element,
    z2: Element,
    rows: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roles: Option<Roles>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected: Option<CapabilitySummary>,
}

/// Parses either format; a document whose first non-blank character is
/// `{` is read as a structured document.
pub fn load_table(source: &str) -> Result<LoadedTable, FormatError> {
    if source.trim_start().starts_with('{') {
        load_structured(source)
    } else {
        load_text(source)
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of a line with their 1-based starting columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

fn parse_uint(line: usize, column: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, column, format!("expected a non-negative integer, found {tok:?}")))
}

pub fn load_text(source: &str) -> Result<LoadedTable, FormatError> {
    let mut lines = source
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty document"))?;
    let htoks: Vec<(usize, &str)> = tokens(header).collect();
    if htoks.len() != 3 {
        return Err(parse_err(hline, 1, "header must be `n z1 z2`"));
    }
    let n = parse_uint(hline, htoks[0].0, htoks[0].1)?;
    if n == 0 || n > MAX_ORDER {
        return Err(parse_err(hline, htoks[0].0, format!("carrier size must be in 1..={MAX_ORDER}")));
    }
    let mut zs = [0usize; 2];
    for (k, &(col, tok)) in htoks[1..].iter().enumerate() {
        let z = parse_uint(hline, col, tok)?;
        if z >= n {
            return Err(FormatError::Domain {
                line: hline,
                column: col,
                value: z,
                n,
            });
        }
        zs[k] = z;
    }

    let mut entries = Vec::with_capacity(n * n);
    let mut last_line = hline;
    for _ in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(last_line + 1, 1, format!("expected {n} rows")))?;
        last_line = lno;
        let mut count = 0;
        for (col, tok) in tokens(line) {
            count += 1;
            if count > n {
                return Err(parse_err(lno, col, format!("row has more than {n} entries")));
            }
            let v = parse_uint(lno, col, tok)?;
            if v >= n {
                return Err(FormatError::Domain {
                    line: lno,
                    column: col,
                    value: v,
                    n,
                });
            }
            entries.push(v);
        }
        if count < n {
            return Err(parse_err(lno, line.len() + 1, format!("row has {count} entries, expected {n}")));
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(parse_err(lno, 1, "unexpected content after the last row"));
    }
    let table = CayleyTable::new(n, entries).expect("entries validated above");
    Ok(LoadedTable {
        name: None,
        table,
        z1: zs[0],
        z2: zs[1],
        roles: None,
        expected: None,
    })
}

/// Parses a structured document. Domain errors report the 1-based row
/// and column of the offending entry as `line` and `column`.
pub fn load_structured(source: &str) -> Result<LoadedTable, FormatError> {
    let doc: StructuredDoc = serde_json::from_str(source)
        .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let n = doc.n;
    if n == 0 || n > MAX_ORDER {
        return Err(parse_err(1, 1, format!("carrier size must be in 1..={MAX_ORDER}")));
    }
    if doc.rows.len() != n {
        return Err(parse_err(1, 1, format!("expected {n} rows, found {}", doc.rows.len())));
    }
    for (z, name) in [(doc.z1, "z1"), (doc.z2, "z2")] {
        if z >= n {
            return Err(parse_err(1, 1, format!("{name} = {z} is outside 0..{n}")));
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in doc.rows.iter().enumerate() {
        if row.len() != n {
            return Err(parse_err(i + 1, 1, format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(FormatError::Domain {
                    line: i + 1,
                    column: j + 1,
                    value: v,
                    n,
                });
            }
            entries.push(v);
        }
    }
    Ok(LoadedTable {
        name: doc.name,
        table: CayleyTable::new(n, entries).expect("entries validated above"),
        z1: doc.z1,
        z2: doc.z2,
        roles: doc.roles,
        expected: doc.expected,
    })
}

/// Canonical text grid: single spaces, every line newline-terminated.
pub fn save_table(table: &CayleyTable, z1: Element, z2: Element) -> String {
    let mut out = format!("{} {} {}\n", table.order(), z1, z2);
    out.push_str(&table.to_string());
    out
}

/// Canonical structured document, one row per line.
pub fn save_structured(doc: &LoadedTable) -> String {
    let t = &doc.table;
    let mut out = String::from("{\n");
    if let Some(name) = &doc.name {
        out.push_str(&format!("  \"name\": {},\n", serde_json::to_string(name).expect("string")));
    }
    out.push_str(&format!("  \"n\": {},\n  \"z1\": {},\n  \"z2\": {},\n", t.order(), doc.z1, doc.z2));
    out.push_str("  \"rows\": [\n");
    for (i, row) in t.rows().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let sep = if i + 1 < t.order() { "," } else { "" };
        out.push_str(&format!("    [{}]{sep}\n", cells.join(", ")));
    }
    out.push_str("  ]");
    if let Some(roles) = &doc.roles {
        out.push_str(&format!(",\n  \"roles\": {}", serde_json::to_string(roles).expect("roles")));
    }
    if let Some(expected) = &doc.expected {
        out.push_str(&format!(",\n  \"expected\": {}", serde_json::to_string(expected).expect("flags")));
    }
    out.push_str("\n}\n");
    out
}

/// Re-serializes a document in its own format's canonical form.
pub fn canonicalize(source: &str) -> Result<String, FormatError> {
    let doc = load_table(source)?;
    Ok(if source.trim_start().starts_with('{') {
        save_structured(&doc)
    } else {
        save_table(&doc.table, doc.z1, doc.z2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const KRIPKE4: &str = "4 0 1\n0 0 0 0\n1 1 1 1\n0 1 0 1\n0 0 2 3\n";

    #[test]
    fn text_roundtrip() {
        let doc = load_table(KRIPKE4).unwrap();
        assert_eq!(doc.table.op(3, 2), 2);
        assert_eq!(save_table(&doc.table, doc.z1, doc.z2), KRIPKE4);
    }

    #[test]
    fn tolerant_whitespace_canonicalizes() {
        let messy = "# kripke4\n4  0 1\n\n 0 0 0 0\n1 1 1 1   \n0\t1 0 1\n0 0 2 3";
        assert_eq!(canonicalize(messy).unwrap(), KRIPKE4);
    }

    #[test]
    fn empty_document_is_a_parse_error() {
        assert!(matches!(load_table(""), Err(FormatError::Parse { .. })));
        assert!(matches!(load_table("   \n\n"), Err(FormatError::Parse { .. })));
    }

    #[test]
    fn out_of_range_entry_is_a_domain_error() {
        let bad = "4 0 1\n0 0 0 0\n1 1 1 1\n0 1 7 1\n0 0 2 3\n";
        assert_eq!(
            load_table(bad),
            Err(FormatError::Domain {
                line: 4,
                column: 5,
                value: 7,
                n: 4
            })
        );
    }

    #[test]
    fn malformed_rows() {
        let short = "2 0 1\n0 0\n1\n";
        assert!(matches!(load_table(short), Err(FormatError::Parse { line: 3, .. })));
        let long = "2 0 1\n0 0 0\n1 1\n";
        assert!(matches!(load_table(long), Err(FormatError::Parse { line: 2, column: 5, .. })));
        let missing = "2 0 1\n0 0\n";
        assert!(matches!(load_table(missing), Err(FormatError::Parse { line: 3, .. })));
        let trailing = "1 0 0\n0\n0\n";
        assert!(matches!(load_table(trailing), Err(FormatError::Parse { line: 3, .. })));
        let word = "2 0 1\n0 x\n1 1\n";
        assert!(matches!(load_table(word), Err(FormatError::Parse { line: 2, column: 3, .. })));
        assert!(matches!(load_table("0 0 1\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(load_table("2 0 5\n0 0\n1 1\n"), Err(FormatError::Domain { value: 5, .. })));
    }

    #[test]
    fn structured_roundtrip() {
        let mut doc = load_table(KRIPKE4).unwrap();
        doc.name = Some("kripke4".into());
        let json = save_structured(&doc);
        let back = load_table(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(save_structured(&back), json);
    }

    #[test]
    fn structured_errors() {
        assert!(matches!(load_table("{"), Err(FormatError::Parse { .. })));
        let bad = r#"{"n": 2, "z1": 0, "z2": 1, "rows": [[0, 0], [1, 2]]}"#;
        assert_eq!(
            load_table(bad),
            Err(FormatError::Domain {
                line: 2,
                column: 2,
                value: 2,
                n: 2
            })
        );
        let ragged = r#"{"n": 2, "z1": 0, "z2": 1, "rows": [[0, 0], [1]]}"#;
        assert!(matches!(load_table(ragged), Err(FormatError::Parse { .. })));
    }
}
