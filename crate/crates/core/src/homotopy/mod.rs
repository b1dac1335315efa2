//! Chain maps and homotopies on the rack complex of a quasigroup quandle.
//!
//! For a basis tuple `x = (x_1, .., x_n)` over a set of size `|Q|`:
//!
//! ```text
//! f_r^j(x) = |Q| (x_j, .., x_j, x_{j+1}, .., x_n)          j copies of x_j
//! f_s^j(x) = Σ_y (y, .., y, x_{j+1}, .., x_n)               j copies of y
//! D^j(x)   = Σ_y (x_j, .., x_j, y, x_{j+1}, .., x_n)        j copies of x_j
//! F^j(x)   = Σ_y (x_j, .., x_j, y, x_j, x_{j+1}, .., x_n)   j-1 copies, then y
//! G_n      = Σ_{j=1}^n (-1)^j (D^j + F^j)
//! ```
//!
//! On a quasigroup quandle these satisfy
//! `∂D^j + D^j∂ = (-1)^j (f_s^j - f_r^j)`, `∂F^j + F^j∂ = (-1)^j (f_r^j - f_s^{j-1})`
//! and `∂G + G∂ = f_s^n - |Q| Id`. In the second summand `D^j` and `F^j` act on
//! degree `n - 1`; they are taken to be zero there when `j = n`.

mod identities;
mod precubic;
mod report;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{Element, FiniteQuandle};
use crate::chains::{BasisTuple, Chain, MultiTermSpec};
use crate::error::{Error, Result};

pub use identities::{
    verify_chain_maps, verify_composite_homotopy, verify_corollary_identities,
    verify_homotopy_identity_d, verify_homotopy_identity_f, verify_multi_term_homotopy,
};
pub use precubic::{
    verify_precubic_homotopy, verify_presimplicial_homotopy, FaceFamily, HomotopyFamily,
    PrecubicHomotopyData, PresimplicialHomotopyData,
};
pub use report::{ClauseReport, VerificationReport, VerifyOptions, Witness, DEFAULT_BUDGET};

/// A basis-level linear operator.
pub type BasisFn = dyn Fn(&BasisTuple) -> Chain + Send + Sync;

/// A named linear operator on tuple chains, given on basis tuples.
#[derive(Clone)]
pub struct ChainOperator {
    name: String,
    degree_shift: i32,
    apply: Arc<BasisFn>,
}

impl ChainOperator {
    pub fn new(
        name: impl Into<String>,
        degree_shift: i32,
        apply: impl Fn(&BasisTuple) -> Chain + Send + Sync + 'static,
    ) -> Self {
        ChainOperator {
            name: name.into(),
            degree_shift,
            apply: Arc::new(apply),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree_shift(&self) -> i32 {
        self.degree_shift
    }

    pub fn out_degree(&self, n: usize) -> usize {
        (n as i64 + self.degree_shift as i64).max(0) as usize
    }

    /// Image of one basis tuple.
    ///
    /// # Panics
    /// If the operator produces a chain of the wrong degree.
    pub fn apply_basis(&self, t: &BasisTuple) -> Chain {
        let out = (self.apply)(t);
        assert_eq!(
            out.degree(),
            self.out_degree(t.degree()),
            "operator `{}` broke its degree shift",
            self.name
        );
        out
    }

    /// Linear extension.
    pub fn apply(&self, c: &Chain) -> Chain {
        c.map(self.out_degree(c.degree()), |t| self.apply_basis(t))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainOperator) -> ChainOperator {
        let (a, b) = (self.clone(), other.clone());
        ChainOperator::new(
            format!("{} {}", other.name, self.name),
            self.degree_shift + other.degree_shift,
            move |t| b.apply(&a.apply_basis(t)),
        )
    }
}

impl fmt::Debug for ChainOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainOperator")
            .field("name", &self.name)
            .field("degree_shift", &self.degree_shift)
            .finish()
    }
}

fn check_index(j: usize, lo: usize, t: &BasisTuple) -> Result<()> {
    if j < lo || j > t.degree() {
        return Err(Error::IndexOutOfRange {
            index: j,
            degree: t.degree(),
        });
    }
    Ok(())
}

/// Tuples built from a fixed prefix, one free slot and a tail, summed over
/// the free slot.
fn sum_over_slot(size: usize, degree: usize, build: impl Fn(Element, &mut Vec<Element>)) -> Chain {
    let mut out = Chain::zero(degree);
    let mut buf = Vec::with_capacity(degree);
    for y in 0..size as Element {
        buf.clear();
        build(y, &mut buf);
        out.add_term(BasisTuple::new(buf.clone()), 1);
    }
    out
}

pub(crate) fn raw_f_r(size: usize, j: usize, t: &BasisTuple) -> Chain {
    let x = t.entries();
    let mut v = vec![x[j - 1]; j];
    v.extend_from_slice(&x[j..]);
    Chain::term(BasisTuple::new(v), size as i64)
}

pub(crate) fn raw_f_s(size: usize, j: usize, t: &BasisTuple) -> Chain {
    let x = t.entries();
    sum_over_slot(size, x.len(), |y, v| {
        v.extend(std::iter::repeat_n(y, j));
        v.extend_from_slice(&x[j..]);
    })
}

/// `D^j`, or zero when `j` exceeds the degree.
pub(crate) fn raw_d(size: usize, j: usize, t: &BasisTuple) -> Chain {
    let x = t.entries();
    if j > x.len() {
        return Chain::zero(x.len() + 1);
    }
    sum_over_slot(size, x.len() + 1, |y, v| {
        v.extend(std::iter::repeat_n(x[j - 1], j));
        v.push(y);
        v.extend_from_slice(&x[j..]);
    })
}

/// `F^j`, or zero when `j` exceeds the degree.
pub(crate) fn raw_f(size: usize, j: usize, t: &BasisTuple) -> Chain {
    let x = t.entries();
    if j > x.len() {
        return Chain::zero(x.len() + 1);
    }
    sum_over_slot(size, x.len() + 1, |y, v| {
        v.extend(std::iter::repeat_n(x[j - 1], j - 1));
        v.push(y);
        v.extend_from_slice(&x[j - 1..]);
    })
}

pub(crate) fn raw_g(size: usize, t: &BasisTuple) -> Chain {
    let mut out = Chain::zero(t.degree() + 1);
    for j in 1..=t.degree() {
        let s = BigInt::from(if j % 2 == 0 { 1 } else { -1 });
        out.add_scaled(&raw_d(size, j, t), &s);
        out.add_scaled(&raw_f(size, j, t), &s);
    }
    out
}

/// The repeater map `f_r^j`, `1 <= j <= n`.
pub fn f_r(q: &FiniteQuandle, j: usize, t: &BasisTuple) -> Result<Chain> {
    check_index(j, 1, t)?;
    Ok(raw_f_r(q.size(), j, t))
}

/// The symmetrizer map `f_s^j`, `0 <= j <= n`.
pub fn f_s(q: &FiniteQuandle, j: usize, t: &BasisTuple) -> Result<Chain> {
    check_index(j, 0, t)?;
    Ok(raw_f_s(q.size(), j, t))
}

/// `D_n^j`, raising degree by one.
pub fn homotopy_d(q: &FiniteQuandle, j: usize, t: &BasisTuple) -> Result<Chain> {
    check_index(j, 1, t)?;
    Ok(raw_d(q.size(), j, t))
}

/// `F_n^j`, raising degree by one.
pub fn homotopy_f(q: &FiniteQuandle, j: usize, t: &BasisTuple) -> Result<Chain> {
    check_index(j, 1, t)?;
    Ok(raw_f(q.size(), j, t))
}

/// `G_n = Σ_j (-1)^j (D_n^j + F_n^j)` with `n` the degree of `t`.
pub fn composite_homotopy_g(q: &FiniteQuandle, t: &BasisTuple) -> Chain {
    raw_g(q.size(), t)
}

/// `f_r^j` as an operator; zero-free only on degrees `>= j`.
pub fn f_r_operator(size: usize, j: usize) -> ChainOperator {
    ChainOperator::new(format!("f_r^{j}"), 0, move |t| raw_f_r(size, j, t))
}

pub fn f_s_operator(size: usize, j: usize) -> ChainOperator {
    ChainOperator::new(format!("f_s^{j}"), 0, move |t| raw_f_s(size, j, t))
}

/// `x ↦ f_s^n(x)` with `n` the degree of `x`, i.e. `Σ_y (y, .., y)`.
pub fn f_s_top_operator(size: usize) -> ChainOperator {
    ChainOperator::new("f_s^n", 0, move |t| raw_f_s(size, t.degree(), t))
}

pub fn scaled_identity(size: usize) -> ChainOperator {
    ChainOperator::new(format!("{size} Id"), 0, move |t| Chain::term(t.clone(), size as i64))
}

pub fn d_operator(size: usize, j: usize) -> ChainOperator {
    ChainOperator::new(format!("D^{j}"), 1, move |t| raw_d(size, j, t))
}

pub fn f_operator(size: usize, j: usize) -> ChainOperator {
    ChainOperator::new(format!("F^{j}"), 1, move |t| raw_f(size, j, t))
}

pub fn g_operator(size: usize) -> ChainOperator {
    ChainOperator::new("G", 1, move |t| raw_g(size, t))
}

/// The `D^j` and `F^j` homotopies for a multi-term complex.
///
/// Requires `Σ a_i = 0`, `a_0 ≠ 0` and every non-trivial operation a
/// quasigroup quandle. With these, `∂D^j + D^j∂ = (-1)^j a_0 (f_s^j - f_r^j)`
/// and `∂F^j + F^j∂ = (-1)^j a_0 (f_r^j - f_s^{j-1})` for the multi-term
/// boundary, so `a_0 |X| Id` and `a_0 f_s^n` are chain homotopic. The
/// operators themselves carry no coefficient: weighting the block sum by
/// `Σ a_i` would make it vanish.
pub fn multi_term_homotopies(spec: &MultiTermSpec, j: usize, t: &BasisTuple) -> Result<(Chain, Chain)> {
    if let Some(v) = spec.hypotheses().violation() {
        return Err(Error::Hypothesis(v.to_string()));
    }
    check_index(j, 1, t)?;
    Ok((raw_d(spec.size(), j, t), raw_f(spec.size(), j, t)))
}

/// The block sum weighted by `Σ a_i`, which is identically zero under the
/// coefficient-sum hypothesis. Kept for comparison with the unweighted form.
pub fn multi_term_homotopies_weighted(spec: &MultiTermSpec, j: usize, t: &BasisTuple) -> Result<(Chain, Chain)> {
    check_index(j, 1, t)?;
    let w: i64 = spec.coeffs.iter().sum();
    Ok((
        raw_d(spec.size(), j, t).scale(w),
        raw_f(spec.size(), j, t).scale(w),
    ))
}
