//! Smith normal form against oracles that share no code with the library.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qhom::homology::{homology, invariant_factors, smith_normal_form, SnfStrategy};
use qhom::SparseIntMatrix;

/// Fraction-free Gaussian elimination.
fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// `d_k / d_{k-1}` with `d_k` the gcd of all `k × k` minors.
fn determinantal_oracle(a: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = vec![BigInt::one()];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let minor = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| BigInt::from(a[r][c])).collect())
                    .collect();
                g = g.gcd(&det(minor));
            }
        }
        if g.is_zero() {
            break;
        }
        d.push(g);
    }
    d.windows(2).map(|w| &w[1] / &w[0]).collect()
}

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn multiply(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |s, k| s + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn to_big(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// A unimodular matrix and its inverse, from elementary row operations.
fn unimodular_pair(n: usize, ops: &[(usize, usize, i64)]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let id = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
            .collect()
    };
    let (mut w, mut inv) = (id(n), id(n));
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        // w ← E w with E = I + k e_ij; inv ← inv E^{-1}.
        let row_j = w[j].clone();
        for (x, y) in w[i].iter_mut().zip(&row_j) {
            *x += y * k;
        }
        for row in inv.iter_mut() {
            let v = row[i].clone() * k;
            row[j] -= v;
        }
    }
    (w, inv)
}

fn from_big(rows: usize, cols: usize, a: &[Vec<BigInt>]) -> SparseIntMatrix {
    SparseIntMatrix::from_dense_big(rows, cols, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn factors_match_determinantal_divisors(a in matrix(5, 5, 12)) {
        let oracle = determinantal_oracle(&a);
        let m = SparseIntMatrix::from_dense(&a);
        prop_assert_eq!(invariant_factors(&m, SnfStrategy::Sparse), oracle.clone());
        prop_assert_eq!(invariant_factors(&m, SnfStrategy::Dense), oracle);
    }

    #[test]
    fn transforms_diagonalize_exactly(a in matrix(7, 7, 20)) {
        let m = SparseIntMatrix::from_dense(&a);
        let snf = smith_normal_form(&m, true);
        let (u, v) = (snf.left.clone().unwrap(), snf.right.clone().unwrap());
        prop_assert!(det(u.clone()).abs().is_one());
        prop_assert!(det(v.clone()).abs().is_one());
        let d = multiply(&multiply(&u, &to_big(&a)), &v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < snf.factors.len() { snf.factors[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(x, &want);
            }
        }
    }

    /// `in = W · diag(t) · V` and `out = U · [0 | B] · W^{-1}` compose to zero
    /// and have homology `Z^r ⊕ ⊕ Z/t_i` in the middle.
    #[test]
    fn scrambled_complex_has_planted_homology(
        steps in prop::collection::vec(1u32..4, 0..4),
        free in 0usize..3,
        tail in 1usize..3,
        ops_w in prop::collection::vec((0usize..16, 0usize..16, -3i64..=3), 0..40),
        ops_u in prop::collection::vec((0usize..16, 0usize..16, -3i64..=3), 0..20),
        ops_v in prop::collection::vec((0usize..16, 0usize..16, -3i64..=3), 0..20),
        scale in 1i64..5,
    ) {
        let mut chain = Vec::new();
        let mut d = BigInt::one();
        for s in &steps {
            d *= BigInt::from(*s);
            chain.push(d.clone());
        }
        let k = chain.len();
        let mid = k + free + tail;
        let top = k + 1;
        let bottom = tail + 1;

        let mut in0 = vec![vec![BigInt::zero(); top]; mid];
        for (i, t) in chain.iter().enumerate() {
            in0[i][i] = t.clone();
        }
        let mut out0 = vec![vec![BigInt::zero(); mid]; bottom];
        for r in 0..tail {
            out0[r][k + free + r] = BigInt::from(scale * (r as i64 + 1));
        }
        let (w, w_inv) = unimodular_pair(mid, &ops_w);
        let (u, _) = unimodular_pair(bottom, &ops_u);
        let (v, _) = unimodular_pair(top, &ops_v);
        let b_in = multiply(&multiply(&w, &in0), &v);
        let b_out = multiply(&multiply(&u, &out0), &w_inv);

        let h = homology(&from_big(bottom, mid, &b_out), &from_big(mid, top, &b_in)).unwrap();
        let planted: Vec<BigInt> = chain.into_iter().filter(|t| !t.is_one()).collect();
        prop_assert_eq!(h.free_rank, free);
        prop_assert_eq!(h.torsion, planted);
    }
}

#[test]
fn known_small_factors() {
    assert_eq!(determinantal_oracle(&[vec![2, 4], vec![6, 8]]), vec![BigInt::from(2), BigInt::from(4)]);
    let m = SparseIntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(invariant_factors(&m, SnfStrategy::Sparse), vec![BigInt::from(2), BigInt::from(4)]);
}

#[test]
fn large_entries_stay_exact() {
    let big = 1i64 << 40;
    let a = vec![vec![big, big + 1], vec![big - 1, big]];
    // det = big^2 - (big^2 - 1) = 1.
    let f = invariant_factors(&SparseIntMatrix::from_dense(&a), SnfStrategy::Sparse);
    assert_eq!(f, vec![BigInt::one(), BigInt::one()]);
    let a = vec![vec![3 * big, 0], vec![0, 6 * big]];
    let f = invariant_factors(&SparseIntMatrix::from_dense(&a), SnfStrategy::Dense);
    assert_eq!(f, vec![BigInt::from(3 * big), BigInt::from(6 * big)]);
}
