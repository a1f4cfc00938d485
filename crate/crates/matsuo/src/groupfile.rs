//! Text format for groups without a built-in constructor.
//!
//! ```text
//! perm <n>             | mat <q> <n>            | table <k>
//! gen (1,2)(3,4)       | gen 0 1 1 0            | row 0 1 2 ...   (k rows)
//! ...                  | ...                    | gen <index>
//! seed (1,2)           | seed 1 0 0 1           | seed <index>
//! ```
//!
//! Points are 1-based in cycle notation; matrices are `n^2` field elements
//! row-major; table rows give `a * b` for `a` the row number (0-based).
//! Blank lines and lines starting with `#` are ignored.

use std::path::Path;
use std::sync::Arc;

use matsuo_core::group::{Backend, CayleyTable, Field, GroupElement, GroupError, GroupSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cannot read group file: {0}")]
    Io(#[from] std::io::Error),
}

impl GroupFileError {
    /// Variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            GroupFileError::ParseError { .. } => "ParseError",
            GroupFileError::Group(GroupError::NotInvolution(_)) => "NotInvolution",
            GroupFileError::Group(_) => "GroupError",
            GroupFileError::Io(_) => "IoError",
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> GroupFileError {
    GroupFileError::ParseError {
        line,
        message: message.into(),
    }
}

pub fn load_group_file(path: impl AsRef<Path>) -> Result<GroupSpec, GroupFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let label = path.file_stem().map_or_else(
        || String::from("file"),
        |s| s.to_string_lossy().into_owned(),
    );
    parse_group_text(&text, &label)
}

pub fn parse_group_text(text: &str, label: &str) -> Result<GroupSpec, GroupFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty group file"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let number = |w: Option<&&str>| -> Result<usize, GroupFileError> {
        w.and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(hline, format!("bad header {header:?}")))
    };
    let (backend, mut table_rows) = match words.first().copied() {
        Some("perm") if words.len() == 2 => (
            Backend::Perm {
                degree: number(words.get(1))?,
            },
            None,
        ),
        Some("mat") if words.len() == 3 => {
            let q = number(words.get(1))?;
            let field = Field::from_order(q as u32)
                .ok_or_else(|| parse_err(hline, format!("unsupported field order {q}")))?;
            (
                Backend::Matrix {
                    field,
                    dim: number(words.get(2))?,
                },
                None,
            )
        }
        Some("table") if words.len() == 2 => (
            Backend::Perm { degree: 0 },
            Some((number(words.get(1))?, Vec::<u32>::new())),
        ),
        _ => return Err(parse_err(hline, format!("bad header {header:?}"))),
    };
    let mut backend = backend;
    let mut gens = Vec::new();
    let mut seed: Option<(usize, GroupElement)> = None;
    for (line, content) in lines {
        if let Some((at, _)) = &seed {
            return Err(parse_err(
                line,
                format!("content after the seed on line {at}"),
            ));
        }
        let (keyword, data) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        match keyword {
            "row" => {
                let Some((k, rows)) = table_rows.as_mut() else {
                    return Err(parse_err(line, "`row` outside a table file"));
                };
                let row: Vec<u32> = data
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse()
                            .map_err(|_| parse_err(line, format!("bad table entry {s:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                if row.len() != *k || rows.len() >= *k * *k {
                    return Err(parse_err(
                        line,
                        format!("table rows need {k} entries and there are {k} rows"),
                    ));
                }
                rows.extend(row);
                if rows.len() == *k * *k {
                    let table = CayleyTable::new(*k, std::mem::take(rows))
                        .map_err(|e| parse_err(line, e.to_string()))?;
                    backend = Backend::Table(Arc::new(table));
                    table_rows = None;
                }
            }
            "gen" | "seed" => {
                if table_rows.is_some() {
                    return Err(parse_err(line, "table is incomplete"));
                }
                let g = parse_element(&backend, data.trim()).map_err(|m| parse_err(line, m))?;
                if keyword == "gen" {
                    gens.push(g);
                } else {
                    seed = Some((line, g));
                }
            }
            other => return Err(parse_err(line, format!("unknown record {other:?}"))),
        }
    }
    let (_, seed) =
        seed.ok_or_else(|| parse_err(text.lines().count().max(1), "missing seed line"))?;
    Ok(GroupSpec::new(backend, gens, seed, label)?)
}

fn parse_element(backend: &Backend, data: &str) -> Result<GroupElement, String> {
    match backend {
        Backend::Perm { degree } => parse_cycles(*degree, data),
        Backend::Matrix { field, dim } => {
            let entries: Vec<u8> = data
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| format!("bad field element {s:?}")))
                .collect::<Result<_, _>>()?;
            GroupElement::matrix(*field, *dim, entries).map_err(|e| e.to_string())
        }
        Backend::Table(t) => {
            let k: u32 = data
                .parse()
                .map_err(|_| format!("bad table index {data:?}"))?;
            if k as usize >= t.order() {
                return Err(format!("table index {k} out of range"));
            }
            Ok(GroupElement::Table(k))
        }
    }
}

/// Parses cycle notation such as `(1,2)(3,4,5)`; `()` is the identity.
pub fn parse_cycles(degree: usize, data: &str) -> Result<GroupElement, String> {
    let s: String = data.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(String::from("missing element"));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' in {data:?}"))?;
        let close = body
            .find(')')
            .ok_or_else(|| format!("unclosed cycle in {data:?}"))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(format!("unclosed cycle in {data:?}"));
        }
        if !inner.is_empty() {
            let cycle = inner
                .split(',')
                .map(|p| p.parse::<usize>().map_err(|_| format!("bad point {p:?}")))
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
        }
        rest = &body[close + 1..];
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    GroupElement::from_cycles(degree, &refs).map_err(|e| e.to_string())
}
