//! Integral homology from boundary matrices.
//!
//! With `∂_n : C_n → C_{n-1}` and `∂_{n+1} : C_{n+1} → C_n`,
//!
//! ```text
//! rank H_n = (dim C_n - rank ∂_n) - rank ∂_{n+1}
//! tor  H_n = ⊕ Z/d   over the invariant factors d > 1 of ∂_{n+1}
//! ```

mod snf;

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::chains::ChainComplex;
use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;

pub use snf::{invariant_factors, smith_normal_form, SmithDecomposition, SnfStrategy};

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(with = "crate::serde_int::vec")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    /// The torsion exponent, i.e. the largest invariant factor; `None` when
    /// the group is free.
    pub fn annihilation_exponent(&self) -> Option<&BigInt> {
        self.torsion.last()
    }

    /// Whether `k` kills the torsion subgroup.
    pub fn torsion_annihilated_by(&self, k: &BigInt) -> bool {
        self.torsion.iter().all(|t| k.is_multiple_of(t))
    }

    /// Torsion as prime powers, e.g. `Z/12 → [4, 3]`, sorted ascending.
    pub fn primary_decomposition(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for t in &self.torsion {
            let mut rest = t.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= rest {
                if rest.is_multiple_of(&p) {
                    let mut q = BigInt::one();
                    while rest.is_multiple_of(&p) {
                        rest /= &p;
                        q *= &p;
                    }
                    out.push(q);
                }
                p += 1;
            }
            if rest > BigInt::one() {
                out.push(rest);
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == t).count();
            parts.push(if run == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn check_pair(boundary_out: &SparseIntMatrix, boundary_in: &SparseIntMatrix) -> Result<()> {
    boundary_out.check_composes_to_zero(boundary_in)
}

/// `H_n` from `dim C_n` and the invariant factors of `∂_n` and `∂_{n+1}`.
pub fn homology_from_factors(dim: usize, factors_out: &[BigInt], factors_in: &[BigInt]) -> HomologyGroup {
    HomologyGroup {
        free_rank: dim - factors_out.len() - factors_in.len(),
        torsion: factors_in.iter().filter(|d| !d.is_one()).cloned().collect(),
    }
}

/// `H_n` from `∂_n` (`boundary_out`) and `∂_{n+1}` (`boundary_in`).
pub fn homology(boundary_out: &SparseIntMatrix, boundary_in: &SparseIntMatrix) -> Result<HomologyGroup> {
    check_pair(boundary_out, boundary_in)?;
    let factors_out = invariant_factors(boundary_out, SnfStrategy::Sparse);
    let factors_in = invariant_factors(boundary_in, SnfStrategy::Sparse);
    Ok(homology_from_factors(boundary_out.cols(), &factors_out, &factors_in))
}

/// Homology with `Z/m` coefficients.
///
/// By universal coefficients,
/// `H_n(C; Z/m) ≅ (H_n ⊗ Z/m) ⊕ Tor(H_{n-1}, Z/m)`, which in Smith terms is
/// `(Z/m)^{rank H_n} ⊕ ⊕_{d | tor H_n} Z/gcd(d, m) ⊕ ⊕_{d | tor H_{n-1}} Z/gcd(d, m)`.
/// The torsion of `H_{n-1}` is read off the invariant factors of `∂_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModHomology {
    #[serde(with = "crate::serde_int")]
    pub modulus: BigInt,
    /// Orders of the nontrivial cyclic summands, ascending.
    #[serde(with = "crate::serde_int::vec")]
    pub summands: Vec<BigInt>,
    /// Summands coming from `H_n ⊗ Z/m` (free part first, then torsion).
    pub from_tensor: usize,
    /// Summands coming from `Tor(H_{n-1}, Z/m)`.
    pub from_tor: usize,
}

impl ModHomology {
    /// Minimal number of generators; for prime `m` this is the dimension
    /// over the field `Z/m`.
    pub fn dimension(&self) -> usize {
        self.summands.len()
    }
}

pub fn homology_mod(
    boundary_out: &SparseIntMatrix,
    boundary_in: &SparseIntMatrix,
    modulus: u64,
) -> Result<ModHomology> {
    if modulus < 2 {
        return Err(Error::InvalidParameter("modulus must be at least 2".into()));
    }
    check_pair(boundary_out, boundary_in)?;
    let factors_out = invariant_factors(boundary_out, SnfStrategy::Sparse);
    let factors_in = invariant_factors(boundary_in, SnfStrategy::Sparse);
    let h = homology_from_factors(boundary_out.cols(), &factors_out, &factors_in);
    Ok(mod_from_parts(&h, &factors_out, modulus))
}

/// Universal-coefficient bookkeeping on already computed data.
pub fn mod_from_parts(h: &HomologyGroup, factors_out: &[BigInt], modulus: u64) -> ModHomology {
    let m = BigInt::from(modulus);
    let mut summands: Vec<BigInt> = vec![m.clone(); h.free_rank];
    summands.extend(h.torsion.iter().map(|d| d.gcd(&m)).filter(|g| !g.is_one()));
    let from_tensor = summands.len();
    let tor: Vec<BigInt> = factors_out
        .iter()
        .map(|d| d.gcd(&m))
        .filter(|g| !g.is_one())
        .collect();
    let from_tor = tor.len();
    summands.extend(tor);
    summands.sort();
    ModHomology {
        modulus: m,
        summands,
        from_tensor,
        from_tor,
    }
}

/// Homology of a tuple complex over a range of degrees, sharing the
/// Smith forms of each boundary between neighbouring degrees. Every
/// consecutive boundary pair is checked to compose to zero.
pub fn complex_homology(
    cx: &ChainComplex,
    degrees: RangeInclusive<usize>,
    strategy: SnfStrategy,
) -> Result<Vec<HomologyGroup>> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo == 0 {
        return Err(Error::DegreeZero(0));
    }
    if hi < lo {
        return Ok(Vec::new());
    }
    let mats: Vec<SparseIntMatrix> = (lo..=hi + 1)
        .map(|n| cx.boundary_matrix(n))
        .collect::<Result<_>>()?;
    for pair in mats.windows(2) {
        check_pair(&pair[0], &pair[1])?;
    }
    let factors: Vec<Vec<BigInt>> = {
        use rayon::prelude::*;
        mats.par_iter().map(|m| invariant_factors(m, strategy)).collect()
    };
    Ok((0..=hi - lo)
        .map(|k| homology_from_factors(mats[k].cols(), &factors[k], &factors[k + 1]))
        .collect())
}

/// `H_n` of a tuple complex.
pub fn complex_homology_at(cx: &ChainComplex, n: usize) -> Result<HomologyGroup> {
    Ok(complex_homology(cx, n..=n, SnfStrategy::Sparse)?.remove(0))
}

/// Rank of an integer matrix modulo a prime by plain Gaussian elimination.
pub fn rank_mod_prime(m: &SparseIntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = m
        .to_dense()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| {
                    let x = v.mod_floor(&pb);
                    x.iter_u64_digits().next().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..nc {
        let Some(piv) = (rank..nr).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_pow(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..nr {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..nc {
                    let sub = (f as u128 * rows[rank][k] as u128 % p as u128) as u64;
                    rows[r][k] = (rows[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}
