//! Smith normal form over the integers.
//!
//! Two routes compute the same invariant factors:
//!
//! * [`SnfStrategy::Sparse`] eliminates unit pivots on a row-sparse copy,
//!   choosing pivots by Markowitz cost `(row_len - 1) * (col_len - 1)` to
//!   limit fill-in, then finishes the residual block densely. Boundary
//!   matrices of tuple complexes reduce almost entirely by unit pivots.
//! * [`SnfStrategy::Dense`] runs the textbook dense reduction with a
//!   smallest-absolute-value pivot on the whole matrix. It is the only route
//!   that can record the unimodular transforms.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::SparseIntMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SnfStrategy {
    #[default]
    Sparse,
    Dense,
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, and optionally the
/// transforms with `left · A · right = diag(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub factors: Vec<BigInt>,
    pub left: Option<Vec<Vec<BigInt>>>,
    pub right: Option<Vec<Vec<BigInt>>>,
}

impl SmithDecomposition {
    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors exceeding one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix, keep_transforms: bool) -> SmithDecomposition {
    if keep_transforms {
        let mut dense = DenseReduction::new(m.to_dense(), m.rows(), m.cols(), true);
        dense.run();
        let factors = dense.diagonal();
        SmithDecomposition {
            factors,
            left: dense.left,
            right: dense.right,
        }
    } else {
        SmithDecomposition {
            factors: invariant_factors(m, SnfStrategy::Sparse),
            left: None,
            right: None,
        }
    }
}

/// Nonzero invariant factors of `m`.
pub fn invariant_factors(m: &SparseIntMatrix, strategy: SnfStrategy) -> Vec<BigInt> {
    match strategy {
        SnfStrategy::Dense => {
            let mut dense = DenseReduction::new(m.to_dense(), m.rows(), m.cols(), false);
            dense.run();
            dense.diagonal()
        }
        SnfStrategy::Sparse => sparse_factors(m),
    }
}

type SparseRow = Vec<(usize, BigInt)>;

fn sparse_factors(m: &SparseIntMatrix) -> Vec<BigInt> {
    // Rows are the shorter side so that scanning all rows per pivot is cheap.
    let (mut rows, ncols) = if m.rows() <= m.cols() {
        (m.row_lists(), m.cols())
    } else {
        (m.columns().map(<[_]>::to_vec).collect::<Vec<_>>(), m.rows())
    };
    let mut col_count = vec![0usize; ncols];
    for row in &rows {
        for (c, _) in row {
            col_count[*c] += 1;
        }
    }
    let mut active: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let mut units = 0usize;

    while let Some((r, c)) = pick_unit_pivot(&rows, &active, &col_count) {
        units += 1;
        let pivot_row = std::mem::take(&mut rows[r]);
        let unit = pivot_row
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, v)| v.clone())
            .expect("pivot entry");
        for &other in &active {
            if other == r {
                continue;
            }
            let Ok(pos) = rows[other].binary_search_by_key(&c, |(k, _)| *k) else {
                continue;
            };
            // Unit pivot: the multiplier a / u equals a * u.
            let factor = &rows[other][pos].1 * &unit;
            let merged = axpy(&rows[other], &factor, &pivot_row, &mut col_count);
            rows[other] = merged;
        }
        for (k, _) in &pivot_row {
            col_count[*k] -= 1;
        }
        active.retain(|&x| x != r && !rows[x].is_empty());
    }

    // Residual block: every remaining entry is a non-unit.
    let mut cols_used: Vec<usize> = active
        .iter()
        .flat_map(|&r| rows[r].iter().map(|(c, _)| *c))
        .collect();
    cols_used.sort_unstable();
    cols_used.dedup();
    let mut factors = vec![BigInt::one(); units];
    if !active.is_empty() {
        let mut dense = vec![vec![BigInt::zero(); cols_used.len()]; active.len()];
        for (i, &r) in active.iter().enumerate() {
            for (c, v) in &rows[r] {
                let j = cols_used.binary_search(c).expect("column index");
                dense[i][j] = v.clone();
            }
        }
        let mut red = DenseReduction::new(dense, active.len(), cols_used.len(), false);
        red.run();
        factors.extend(red.diagonal());
    }
    factors
}

/// Among the shortest rows holding a unit, the unit with the cheapest
/// Markowitz cost. Ties break on (row length, row index, column).
fn pick_unit_pivot(
    rows: &[SparseRow],
    active: &[usize],
    col_count: &[usize],
) -> Option<(usize, usize)> {
    const CANDIDATE_ROWS: usize = 4;
    let mut order: Vec<usize> = active.to_vec();
    order.sort_by_key(|&r| (rows[r].len(), r));
    let mut best: Option<(usize, usize, usize)> = None;
    let mut seen = 0;
    for r in order {
        let len = rows[r].len();
        let mut found = false;
        for (c, v) in &rows[r] {
            if v.magnitude().is_one() {
                found = true;
                let cost = (len - 1) * (col_count[*c] - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, *c));
                }
            }
        }
        if found {
            seen += 1;
            if seen >= CANDIDATE_ROWS || best.is_some_and(|(b, _, _)| b == 0) {
                break;
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// `target - factor * source`, keeping column counts current.
fn axpy(
    target: &[(usize, BigInt)],
    factor: &BigInt,
    source: &[(usize, BigInt)],
    col_count: &mut [usize],
) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ord = match (target.get(i), source.get(j)) {
            (Some(a), Some(b)) => a.0.cmp(&b.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push(target[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (c, v) = &source[j];
                out.push((*c, -(factor * v)));
                col_count[*c] += 1;
                j += 1;
            }
            Ordering::Equal => {
                let (c, a) = &target[i];
                let v = a - factor * &source[j].1;
                if v.is_zero() {
                    col_count[*c] -= 1;
                } else {
                    out.push((*c, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Dense Smith reduction with optional transform tracking.
struct DenseReduction {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
    done: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl DenseReduction {
    fn new(a: Vec<Vec<BigInt>>, rows: usize, cols: usize, track: bool) -> Self {
        DenseReduction {
            a,
            rows,
            cols,
            left: track.then(|| identity(rows)),
            right: track.then(|| identity(cols)),
            done: 0,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.left {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.right {
                for row in v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row[dst] -= k * row[src]
    fn row_axpy(&mut self, dst: usize, k: &BigInt, src: usize) {
        fn apply(m: &mut [Vec<BigInt>], dst: usize, k: &BigInt, src: usize) {
            let (s, d) = if src < dst {
                let (lo, hi) = m.split_at_mut(dst);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(src);
                (&hi[0], &mut lo[dst])
            };
            for (x, y) in d.iter_mut().zip(s) {
                if !y.is_zero() {
                    *x -= k * y;
                }
            }
        }
        apply(&mut self.a, dst, k, src);
        if let Some(u) = &mut self.left {
            apply(u, dst, k, src);
        }
    }

    /// col[dst] -= k * col[src]
    fn col_axpy(&mut self, dst: usize, k: &BigInt, src: usize) {
        fn apply(m: &mut [Vec<BigInt>], dst: usize, k: &BigInt, src: usize) {
            for row in m {
                if !row[src].is_zero() {
                    let t = k * &row[src];
                    row[dst] -= t;
                }
            }
        }
        apply(&mut self.a, dst, k, src);
        if let Some(v) = &mut self.right {
            apply(v, dst, k, src);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.left {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block, first in row-major order.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.magnitude() < self.a[bi][bj].magnitude()) {
                    best = Some((i, j));
                    if v.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, &q, t);
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, &q, t);
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    // Move the smallest remainder in row/column t onto the pivot.
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let v = &self.a[i][t];
                        if !v.is_zero() && v.magnitude() < self.a[best.0][best.1].magnitude() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let v = &self.a[t][j];
                        if !v.is_zero() && v.magnitude() < self.a[best.0][best.1].magnitude() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Enforce divisibility of the trailing block by the pivot.
                let p = self.a[t][t].clone();
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.row_axpy(t, &-BigInt::one(), i),
                    None => break,
                }
            }
            if self.a[t][t].sign() == Sign::Minus {
                self.negate_row(t);
            }
            t += 1;
        }
        self.done = t;
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.done).map(|i| self.a[i][i].abs()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_matrix() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        for s in [SnfStrategy::Sparse, SnfStrategy::Dense] {
            assert_eq!(invariant_factors(&m, s), big(&[1, 1, 1]));
        }
    }

    #[test]
    fn two_by_two() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        for s in [SnfStrategy::Sparse, SnfStrategy::Dense] {
            assert_eq!(invariant_factors(&m, s), big(&[2, 4]));
        }
        let d = smith_normal_form(&m, true);
        assert_eq!(d.factors, big(&[2, 4]));
    }

    #[test]
    fn zero_matrix() {
        let m = SparseIntMatrix::zero(2, 3);
        let d = smith_normal_form(&m, false);
        assert!(d.factors.is_empty());
        assert_eq!(d.rank(), 0);
        assert!(smith_normal_form(&m, true).factors.is_empty());
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) ~ diag(1, 6)
        let m = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        for s in [SnfStrategy::Sparse, SnfStrategy::Dense] {
            assert_eq!(invariant_factors(&m, s), big(&[1, 6]));
        }
    }

    #[test]
    fn tall_and_wide_agree() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(invariant_factors(&m, SnfStrategy::Sparse), big(&[1, 2]));
        assert_eq!(invariant_factors(&m.transpose(), SnfStrategy::Sparse), big(&[1, 2]));
        assert_eq!(invariant_factors(&m, SnfStrategy::Dense), big(&[1, 2]));
    }
}
