//! Sparse exact integer matrices.
//!
//! Triplet text format: a header line `rows cols nnz` followed by one
//! `row col value` line per nonzero entry, sorted by `(row, col)`, indices
//! 0-based.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Column-major sparse matrix; each column is sorted by row and holds no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from columns; entries are sorted, merged and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|mut col| {
                assert!(col.iter().all(|(r, _)| *r < rows), "row index out of bounds");
                col.sort_by_key(|(r, _)| *r);
                let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    match merged.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => merged.push((r, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect();
        SparseIntMatrix { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let columns = (0..ncols)
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, row)| row[c] != 0)
                    .map(|(r, row)| (r, BigInt::from(row[c])))
                    .collect()
            })
            .collect();
        SparseIntMatrix {
            rows: nrows,
            columns,
        }
    }

    pub fn from_dense_big(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| !data[r][c].is_zero())
                    .map(|r| (r, data[r][c].clone()))
                    .collect()
            })
            .collect();
        SparseIntMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(usize, BigInt)]> {
        self.columns.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |(i, _)| *i)
            .map(|p| col[p].1.clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                cols[*r].push((c, v.clone()));
            }
        }
        SparseIntMatrix {
            rows: self.cols(),
            columns: cols,
        }
    }

    /// Rows as sorted `(col, value)` lists.
    pub(crate) fn row_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.transpose().columns
    }

    /// `self · v` for a sparse column vector.
    fn apply(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
        for (k, x) in v {
            for (r, a) in &self.columns[*k] {
                *acc.entry(*r).or_default() += a * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Exact product `self · rhs`.
    pub fn multiply(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols() != rhs.rows {
            return Err(Error::NotComposable {
                left_cols: self.cols(),
                right_rows: rhs.rows,
            });
        }
        Ok(SparseIntMatrix {
            rows: self.rows,
            columns: rhs.columns.iter().map(|col| self.apply(col)).collect(),
        })
    }

    /// Checks `self · rhs = 0`, returning the first column of `rhs` that
    /// survives as [`Error::BrokenComplex`].
    pub fn check_composes_to_zero(&self, rhs: &SparseIntMatrix) -> Result<()> {
        use rayon::prelude::*;
        if self.cols() != rhs.rows {
            return Err(Error::NotComposable {
                left_cols: self.cols(),
                right_rows: rhs.rows,
            });
        }
        let bad = rhs
            .columns
            .par_iter()
            .position_first(|col| !self.apply(col).is_empty());
        match bad {
            Some(column) => Err(Error::BrokenComplex { column }),
            None => Ok(()),
        }
    }

    pub fn to_triplets(&self) -> String {
        let mut entries: Vec<(usize, usize, &BigInt)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
            .collect();
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        let mut out = format!("{} {} {}\n", self.rows, self.cols(), entries.len());
        for (r, c, v) in entries {
            writeln!(out, "{r} {c} {v}").unwrap();
        }
        out
    }

    pub fn from_triplets(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, message: String| Error::Parse {
            line: line + 1,
            message,
        };
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(hl, format!("bad header token `{t}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(parse_err(hl, "header must be `rows cols nnz`".into()));
        };
        let mut columns = vec![Vec::new(); cols];
        let mut count = 0;
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = toks[..] else {
                return Err(parse_err(ln, "entry must be `row col value`".into()));
            };
            let r: usize = r.parse().map_err(|_| parse_err(ln, format!("bad row `{r}`")))?;
            let c: usize = c.parse().map_err(|_| parse_err(ln, format!("bad column `{c}`")))?;
            let v: BigInt = v.parse().map_err(|_| parse_err(ln, format!("bad value `{v}`")))?;
            if r >= rows || c >= cols {
                return Err(parse_err(ln, format!("entry ({r}, {c}) out of bounds")));
            }
            columns[c].push((r, v));
            count += 1;
        }
        if count != nnz {
            return Err(parse_err(hl, format!("header promises {nnz} entries, found {count}")));
        }
        Ok(Self::from_columns(rows, columns))
    }
}
