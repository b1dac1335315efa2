//! Quandle table files and catalog names.
//!
//! Table format: first non-comment line is `n`, followed by `n` rows of `n`
//! whitespace-separated integers where row `a` column `b` holds `a * b`.
//! Lines starting with `#` are ignored.

use std::path::Path;

use super::catalog::{alexander, dihedral, s4_transpositions, takasaki, trivial};
use super::{FiniteBinaryOp, FiniteQuandle};
use crate::error::{Error, Result};

/// Parses a table file body. Line numbers in errors are 1-based.
pub fn parse_table(text: &str) -> Result<FiniteBinaryOp> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing size line".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected table size, found `{header}`"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line,
            message: "table size must be positive".into(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = line;
    for (line, body) in lines {
        last = line;
        if rows.len() == n {
            return Err(Error::Parse {
                line,
                message: format!("more than {n} rows"),
            });
        }
        let row = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{tok}` is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line,
                message: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n as u64) {
            return Err(Error::Parse {
                line,
                message: format!("entry {v} out of range 0..{n}"),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: last + 1,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    FiniteBinaryOp::from_table(n, &rows)
}

/// Renders a table in the file format; this is also the byte string hashed
/// into result records.
pub fn write_table(op: &FiniteBinaryOp) -> String {
    let mut out = format!("{}\n", op.size());
    for row in op.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Resolves a catalog name (`R<n>`, `T(<n1>x<n2>...)`, `Alex(<n>,<t>)`,
/// `ConjS4T`, `Triv<n>`) or, failing that, a path to a table file.
pub fn resolve(name: &str) -> Result<FiniteQuandle> {
    if let Some(q) = catalog(name)? {
        return Ok(q);
    }
    let path = Path::new(name);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let op = parse_table(&text)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| name.to_string());
        return FiniteQuandle::new(op, label);
    }
    Err(Error::UnknownName(name.to_string()))
}

fn catalog(name: &str) -> Result<Option<FiniteQuandle>> {
    let bad = || Error::UnknownName(name.to_string());
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    if name == "ConjS4T" {
        return s4_transpositions().map(Some);
    }
    if let Some(rest) = name.strip_prefix("Triv") {
        return trivial(int(rest)? as usize).map(Some);
    }
    if let Some(rest) = name.strip_prefix('R') {
        if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
            return dihedral(int(rest)? as usize).map(Some);
        }
    }
    if let Some(inner) = name.strip_prefix("T(").and_then(|s| s.strip_suffix(')')) {
        let factors = inner
            .split('x')
            .map(|f| int(f).and_then(|v| usize::try_from(v).map_err(|_| bad())))
            .collect::<Result<Vec<_>>>()?;
        return takasaki(&factors).map(Some);
    }
    if let Some(inner) = name.strip_prefix("Alex(").and_then(|s| s.strip_suffix(')')) {
        let (n, t) = inner.split_once(',').ok_or_else(bad)?;
        let n = usize::try_from(int(n)?).map_err(|_| bad())?;
        return alexander(n, int(t)?).map(Some);
    }
    Ok(None)
}
