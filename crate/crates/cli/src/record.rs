use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qhom::algebra::write_table;
use qhom::{FiniteBinaryOp, HomologyGroup};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash of the canonical table text of each operation, concatenated.
pub fn tables_sha256(ops: &[&FiniteBinaryOp]) -> String {
    let text: String = ops.iter().map(|op| write_table(op)).collect();
    sha256_hex(text.as_bytes())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleInfo {
    pub label: String,
    pub size: usize,
    pub table_sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub quandle: QuandleInfo,
    pub theory: String,
    pub degree: usize,
    pub free_rank: usize,
    #[serde(with = "qhom::serde_int::vec")]
    pub torsion: Vec<BigInt>,
    /// Largest invariant factor; `null` when the group is free.
    #[serde(with = "qhom::serde_int::option")]
    pub exponent: Option<BigInt>,
    pub ms: u64,
    pub engine: String,
}

impl ResultRecord {
    pub fn group(&self) -> HomologyGroup {
        HomologyGroup {
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
        }
    }

    pub fn exponent_text(&self) -> String {
        self.exponent
            .as_ref()
            .map_or_else(|| "free".to_string(), |e| e.to_string())
    }

    pub fn torsion_text(&self, sep: &str) -> String {
        let parts: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        parts.join(sep)
    }
}

pub const CSV_HEADER: &str = "label,size,table_sha256,theory,degree,free_rank,torsion,exponent,ms,engine";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(r: &ResultRecord) -> String {
    [
        csv_field(&r.quandle.label),
        r.quandle.size.to_string(),
        r.quandle.table_sha256.clone(),
        csv_field(&r.theory),
        r.degree.to_string(),
        r.free_rank.to_string(),
        r.torsion_text(";"),
        r.exponent.as_ref().map(|e| e.to_string()).unwrap_or_default(),
        r.ms.to_string(),
        r.engine.clone(),
    ]
    .join(",")
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.clone()));
        out.push('\n');
    }
    out
}
