//! JSON system files.
//!
//! ```json
//! {
//!   "rank": 1,
//!   "alphabet": ["0", "1"],
//!   "matrices": [
//!     [[1, 1], [1, 0]]
//!   ],
//!   "decorations": { "names": ["x", "y"], "delta": ["0", "0"] }
//! }
//! ```
//!
//! `matrices[j][b][a] = 1` allows the step `a -> b` in direction `j + 1`:
//! rows are indexed by the target letter, columns by the source. Loading
//! with `transpose` reads the opposite convention. `decorations` is optional
//! and defaults to one decoration per letter, named after it.

use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use crate::error::Error;
use crate::matrix::BoolMatrix;
use crate::system::{Alphabet, DecorationMap, Letter, TileSystem};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    System(#[from] Error),
}

fn field(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.into(),
    }
}

fn get<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| field(key, "missing"))
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| field(path, "expected an array of strings"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| field(format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn parse_matrix(v: &Value, j: usize, n: usize, transpose: bool) -> Result<BoolMatrix, FormatError> {
    let path = format!("matrices[{j}]");
    let rows = v
        .as_array()
        .ok_or_else(|| field(&path, "expected an array of rows"))?;
    if rows.len() != n {
        return Err(field(
            &path,
            format!("has {} rows, expected {n}", rows.len()),
        ));
    }
    let mut m = BoolMatrix::zeros(n);
    for (b, row) in rows.iter().enumerate() {
        let rpath = format!("{path}[{b}]");
        let row = row
            .as_array()
            .ok_or_else(|| field(&rpath, "expected an array of 0/1 entries"))?;
        if row.len() != n {
            return Err(field(
                &rpath,
                format!("has {} entries, expected {n}", row.len()),
            ));
        }
        for (a, x) in row.iter().enumerate() {
            let bit = match x.as_u64() {
                Some(0) => false,
                Some(1) => true,
                _ => {
                    return Err(field(
                        format!("{rpath}[{a}]"),
                        format!("entry {x} is not 0 or 1"),
                    ))
                }
            };
            if transpose {
                m.set(a, b, bit);
            } else {
                m.set(b, a, bit);
            }
        }
    }
    Ok(m)
}

/// Parses a system file from text.
pub fn load_system_str(
    text: &str,
    transpose: bool,
) -> Result<(TileSystem, DecorationMap), FormatError> {
    let root: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| field("(root)", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "rank" | "alphabet" | "matrices" | "decorations"
        ) {
            return Err(field(key.as_str(), "unknown field"));
        }
    }
    let rank = get(obj, "rank")?
        .as_u64()
        .filter(|&r| r >= 1)
        .ok_or_else(|| field("rank", "expected a positive integer"))? as usize;
    let names = string_list(get(obj, "alphabet")?, "alphabet")?;
    let alphabet = Alphabet::new(names).map_err(|e| field("alphabet", e.to_string()))?;
    let n = alphabet.len();
    let ms = get(obj, "matrices")?
        .as_array()
        .ok_or_else(|| field("matrices", "expected an array of matrices"))?;
    if ms.len() != rank {
        return Err(field(
            "matrices",
            format!("has {} matrices, rank is {rank}", ms.len()),
        ));
    }
    let matrices = ms
        .iter()
        .enumerate()
        .map(|(j, m)| parse_matrix(m, j, n, transpose))
        .collect::<Result<Vec<_>, _>>()?;
    let ts = TileSystem::new(alphabet, matrices)?;

    let dmap = match obj.get("decorations") {
        None => DecorationMap::identity(ts.alphabet()),
        Some(d) => {
            let d = d
                .as_object()
                .ok_or_else(|| field("decorations", "expected an object"))?;
            let names = string_list(
                get(d, "names").map_err(|_| field("decorations.names", "missing"))?,
                "decorations.names",
            )?;
            let delta_names = string_list(
                get(d, "delta").map_err(|_| field("decorations.delta", "missing"))?,
                "decorations.delta",
            )?;
            if names.len() != delta_names.len() {
                return Err(field(
                    "decorations.delta",
                    format!(
                        "has {} entries for {} decorations",
                        delta_names.len(),
                        names.len()
                    ),
                ));
            }
            let delta = delta_names
                .iter()
                .enumerate()
                .map(|(i, nm)| {
                    ts.alphabet().letter(nm).map_err(|_| {
                        field(
                            format!("decorations.delta[{i}]"),
                            format!("unknown letter `{nm}`"),
                        )
                    })
                })
                .collect::<Result<Vec<Letter>, _>>()?;
            DecorationMap::new(names, delta, ts.alphabet())
                .map_err(|e| field("decorations.names", e.to_string()))?
        }
    };
    Ok((ts, dmap))
}

/// Reads and parses a system file.
pub fn load_system(
    path: &Path,
    transpose: bool,
) -> Result<(TileSystem, DecorationMap), FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_system_str(&text, transpose)
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn quoted_list<'a>(items: impl Iterator<Item = &'a str>) -> String {
    let v: Vec<String> = items.map(quote).collect();
    format!("[{}]", v.join(", "))
}

/// Serializes a system, one matrix per line. Decorations are written only
/// when they differ from the identity.
pub fn save_system(ts: &TileSystem, dmap: &DecorationMap) -> String {
    let al = ts.alphabet();
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"rank\": {},\n", ts.rank()));
    out.push_str(&format!(
        "  \"alphabet\": {},\n",
        quoted_list(al.names().iter().map(String::as_str))
    ));
    out.push_str("  \"matrices\": [\n");
    for (j, m) in ts.matrices().iter().enumerate() {
        let rows: Vec<String> = m
            .rows()
            .iter()
            .map(|r| {
                let bits: Vec<&str> = r.iter().map(|&x| if x { "1" } else { "0" }).collect();
                format!("[{}]", bits.join(", "))
            })
            .collect();
        let sep = if j + 1 < ts.rank() { "," } else { "" };
        out.push_str(&format!("    [{}]{sep}\n", rows.join(", ")));
    }
    out.push_str("  ]");
    if !dmap.is_identity_on(al) {
        let delta = dmap.decorations().map(|d| al.name(dmap.delta(d)));
        out.push_str(&format!(
            ",\n  \"decorations\": {{ \"names\": {}, \"delta\": {} }}",
            quoted_list(dmap.names().iter().map(String::as_str)),
            quoted_list(delta)
        ));
    }
    out.push_str("\n}\n");
    out
}
