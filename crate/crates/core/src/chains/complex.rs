use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{face_into, is_degenerate, rank_of, BasisTuple, Face, MultiTermSpec};
use crate::algebra::{Element, FiniteBinaryOp, FiniteQuandle};
use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;

/// Which complex to build from a quandle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplexTheory {
    Rack,
    Degenerate,
    Quandle,
    /// The quandle complex augmented by `∂_1(x) = 1` into `C_0 = Z`.
    ReducedQuandle,
    MultiTerm(MultiTermSpec),
}

impl ComplexTheory {
    /// Parses the one-quandle theories by their command-line names.
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "rack" => Some(ComplexTheory::Rack),
            "degenerate" => Some(ComplexTheory::Degenerate),
            "quandle" => Some(ComplexTheory::Quandle),
            "reduced-quandle" => Some(ComplexTheory::ReducedQuandle),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            ComplexTheory::Rack => "rack".into(),
            ComplexTheory::Degenerate => "degenerate".into(),
            ComplexTheory::Quandle => "quandle".into(),
            ComplexTheory::ReducedQuandle => "reduced-quandle".into(),
            ComplexTheory::MultiTerm(spec) => spec.theory_label(),
        }
    }
}

/// Which tuples span the chain groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// All of `X^n`.
    Full,
    /// Tuples with an adjacent repeat.
    Degenerate,
    /// Tuples without an adjacent repeat, standing for the quotient by the
    /// degenerate subcomplex.
    NonDegenerate,
}

/// A chain complex on tuples: the boundary is `Σ_k a_k ∂^{(*_k)}` on the
/// chosen basis, optionally augmented in degree 0.
///
/// Rows and columns of every boundary matrix follow the lexicographic order
/// of the tuples in the basis.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    size: usize,
    terms: Vec<(FiniteBinaryOp, i64)>,
    basis: Basis,
    augmented: bool,
    theory: ComplexTheory,
}

impl ChainComplex {
    pub fn new(q: &FiniteQuandle, theory: ComplexTheory) -> Result<Self> {
        let n = q.size();
        let rack = vec![(FiniteBinaryOp::trivial(n)?, 1), (q.op().clone(), -1)];
        let (terms, basis, augmented) = match &theory {
            ComplexTheory::Rack => (rack, Basis::Full, false),
            ComplexTheory::Degenerate => (rack, Basis::Degenerate, false),
            ComplexTheory::Quandle => (rack, Basis::NonDegenerate, false),
            ComplexTheory::ReducedQuandle => (rack, Basis::NonDegenerate, true),
            ComplexTheory::MultiTerm(spec) => {
                if spec.size() != n {
                    return Err(Error::SizeMismatch {
                        index: 0,
                        expected: n,
                        found: spec.size(),
                    });
                }
                return Ok(Self::multi_term(spec));
            }
        };
        Ok(ChainComplex {
            size: n,
            terms,
            basis,
            augmented,
            theory,
        })
    }

    pub fn multi_term(spec: &MultiTermSpec) -> Self {
        ChainComplex {
            size: spec.size(),
            terms: spec.dset.ops().iter().cloned().zip(spec.coeffs.iter().copied()).collect(),
            basis: Basis::Full,
            augmented: false,
            theory: ComplexTheory::MultiTerm(spec.clone()),
        }
    }

    pub fn theory(&self) -> &ComplexTheory {
        &self.theory
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basis_kind(&self) -> Basis {
        self.basis
    }

    fn keeps(&self, entries: &[Element]) -> bool {
        match self.basis {
            Basis::Full => true,
            Basis::Degenerate => is_degenerate(entries),
            Basis::NonDegenerate => !is_degenerate(entries),
        }
    }

    /// Lexicographic ranks of the basis tuples of degree `n`, or `None` for
    /// the full tuple basis.
    fn basis_ranks(&self, n: usize) -> Option<Vec<u64>> {
        if self.basis == Basis::Full {
            return None;
        }
        let total = (self.size as u64).pow(n as u32);
        Some(
            (0..total)
                .filter(|&r| self.keeps(BasisTuple::unrank(r, self.size, n).entries()))
                .collect(),
        )
    }

    /// Rank of `C_n`.
    pub fn dim(&self, n: usize) -> usize {
        if n == 0 {
            return usize::from(self.augmented);
        }
        let s = self.size as u64;
        let full = s.pow(n as u32);
        let nondeg = s * (s - 1).pow(n as u32 - 1);
        (match self.basis {
            Basis::Full => full,
            Basis::Degenerate => full - nondeg,
            Basis::NonDegenerate => nondeg,
        }) as usize
    }

    /// The basis tuples of `C_n` in order.
    pub fn basis(&self, n: usize) -> Vec<BasisTuple> {
        if n == 0 {
            return if self.augmented { vec![BasisTuple::new(vec![])] } else { vec![] };
        }
        match self.basis_ranks(n) {
            None => BasisTuple::all(self.size, n).collect(),
            Some(r) => r.into_iter().map(|r| BasisTuple::unrank(r, self.size, n)).collect(),
        }
    }

    /// Matrix of `∂_n : C_n → C_{n-1}`.
    pub fn boundary_matrix(&self, n: usize) -> Result<SparseIntMatrix> {
        if n == 0 {
            return Err(Error::DegreeZero(0));
        }
        let col_ranks: Vec<u64> = match self.basis_ranks(n) {
            Some(r) => r,
            None => (0..(self.size as u64).pow(n as u32)).collect(),
        };
        let rows = self.dim(n - 1);
        if n == 1 {
            let columns = col_ranks
                .iter()
                .map(|_| {
                    if self.augmented {
                        vec![(0, BigInt::from(1))]
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            return Ok(SparseIntMatrix::from_columns(rows, columns));
        }
        let row_ranks = self.basis_ranks(n - 1);
        let columns: Vec<Vec<(usize, BigInt)>> = col_ranks
            .par_iter()
            .enumerate()
            .map(|(col, &r)| self.column(n, r, row_ranks.as_deref(), col))
            .collect::<Result<_>>()?;
        Ok(SparseIntMatrix::from_columns(rows, columns))
    }

    fn column(
        &self,
        n: usize,
        rank: u64,
        row_ranks: Option<&[u64]>,
        col: usize,
    ) -> Result<Vec<(usize, BigInt)>> {
        let x = BasisTuple::unrank(rank, self.size, n);
        let mut buf = Vec::with_capacity(n);
        let mut acc: Vec<(u64, i128)> = Vec::with_capacity(2 * n * self.terms.len());
        for i in 1..=n {
            let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
            for (op, a) in &self.terms {
                face_into(Face::Star(op), i, x.entries(), &mut buf);
                acc.push((rank_of(&buf, self.size), sign * *a as i128));
            }
        }
        acc.sort_unstable_by_key(|(r, _)| *r);
        let mut out = Vec::new();
        let mut k = 0;
        while k < acc.len() {
            let r = acc[k].0;
            let mut v = 0i128;
            while k < acc.len() && acc[k].0 == r {
                v += acc[k].1;
                k += 1;
            }
            if v == 0 {
                continue;
            }
            let row = match row_ranks {
                None => r as usize,
                Some(rr) => match rr.binary_search(&r) {
                    Ok(p) => p,
                    Err(_) if self.basis == Basis::NonDegenerate => continue,
                    Err(_) => return Err(Error::DegenerateNotClosed { column: col }),
                },
            };
            out.push((row, BigInt::from(v)));
        }
        Ok(out)
    }
}
