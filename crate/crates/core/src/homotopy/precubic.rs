//! Generic checkers for precubic and presimplicial homotopies.
//!
//! Both act on modules free on tuples over `{0, .., size-1}`. The data is
//! given as closures on basis tuples; the checker first confirms the face
//! relations, then each homotopy condition, then evaluates the alternating
//! sum of the homotopies directly against the claimed endpoints.

use std::sync::Arc;

use num_bigint::BigInt;

use super::report::{check_clause, select_ranks, VerificationReport, VerifyOptions};
use super::{f_s_top_operator, raw_d, raw_f, scaled_identity, ChainOperator};
use crate::algebra::{Element, FiniteQuandle};
use crate::chains::{face_into, BasisTuple, Chain, Face};
use crate::error::{Error, Result};

/// `(family, index, tuple) ↦ chain`, linear in the tuple.
pub type FaceFamily = Arc<dyn Fn(u8, usize, &BasisTuple) -> Chain + Send + Sync>;
/// `(family, index, tuple) ↦ chain` of one degree higher.
pub type HomotopyFamily = Arc<dyn Fn(u8, usize, &BasisTuple) -> Chain + Send + Sync>;

/// Faces `d_i^0, d_i^1` and homotopies `h_i^0, h_i^1` (`1 <= i <= n`) on
/// modules whose degree-`n` basis is the `n`-tuples, with endpoints `f'`, `g'`.
#[derive(Clone)]
pub struct PrecubicHomotopyData {
    pub label: String,
    pub size: usize,
    pub faces: FaceFamily,
    pub homotopies: HomotopyFamily,
    pub f_prime: ChainOperator,
    pub g_prime: ChainOperator,
}

impl PrecubicHomotopyData {
    /// `d^0` deletion, `d^1` the quandle face, `h^0 = D`, `h^1 = F`,
    /// `f' = |Q| Id`, `g' = f_s^n`.
    pub fn rack_instance(q: &FiniteQuandle) -> Self {
        let size = q.size();
        let op = q.op().clone();
        PrecubicHomotopyData {
            label: q.label().to_string(),
            size,
            faces: Arc::new(move |e, i, t| {
                let face = if e == 0 { Face::Trivial } else { Face::Star(&op) };
                let mut buf = Vec::with_capacity(t.degree());
                face_into(face, i, t.entries(), &mut buf);
                Chain::basis(BasisTuple::new(buf))
            }),
            homotopies: Arc::new(move |e, j, t| if e == 0 { raw_d(size, j, t) } else { raw_f(size, j, t) }),
            f_prime: scaled_identity(size),
            g_prime: f_s_top_operator(size),
        }
    }

    /// Exchanges `h_j^0` and `h_j^1`.
    pub fn swap_homotopies(mut self, j: usize) -> Self {
        let h = self.homotopies.clone();
        self.homotopies = Arc::new(move |e, k, t| if k == j { h(1 - e, k, t) } else { h(e, k, t) });
        self.label = format!("{} with h_{j} swapped", self.label);
        self
    }

    fn face(&self, e: u8, i: usize, c: &Chain) -> Chain {
        c.map(c.degree() - 1, |t| (self.faces)(e, i, t))
    }

    fn h(&self, e: u8, j: usize, c: &Chain) -> Chain {
        c.map(c.degree() + 1, |t| (self.homotopies)(e, j, t))
    }

    fn basis_face(&self, e: u8, i: usize, t: &BasisTuple) -> Chain {
        (self.faces)(e, i, t)
    }

    /// `∂' = Σ_i (-1)^i (d_i^0 - d_i^1)`; zero in degree 1.
    fn boundary(&self, c: &Chain) -> Chain {
        let m = c.degree();
        let mut out = Chain::zero(m.saturating_sub(1));
        if m <= 1 {
            return out;
        }
        for i in 1..=m {
            let s = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            out.add_scaled(&(self.face(0, i, c) - self.face(1, i, c)), &s);
        }
        out
    }

    /// `H' = Σ_i (-1)^i (h_i^0 + h_i^1)`.
    fn total_homotopy(&self, c: &Chain) -> Chain {
        let m = c.degree();
        let mut out = Chain::zero(m + 1);
        for i in 1..=m {
            let s = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            out.add_scaled(&(self.h(0, i, c) + self.h(1, i, c)), &s);
        }
        out
    }
}

/// `d_i d_j = d_{j-1} d_i` style relations on degree `m`, with sampling.
fn check_face_relations<R>(size: usize, m: usize, opts: &VerifyOptions, relations: R) -> Result<()>
where
    R: Fn(&BasisTuple) -> Option<String> + Sync,
{
    use rayon::prelude::*;
    let (ranks, _, _) = select_ranks(size, m, opts.budget);
    let bad = ranks.par_iter().find_map_first(|&r| {
        let t = BasisTuple::unrank(r, size, m);
        relations(&t).map(|rel| (rel, t))
    });
    match bad {
        Some((relation, t)) => Err(Error::FaceRelation {
            relation,
            tuple: t.to_string(),
        }),
        None => Ok(()),
    }
}

/// Checks a precubic homotopy on degree-`n` tuples.
///
/// The precubic relations `d_i^ε d_j^δ = d_{j-1}^δ d_i^ε` (`i < j`) are checked
/// first in degrees `n` and `n + 1`; a failure aborts with
/// [`Error::FaceRelation`]. Then, as separate clauses:
///
/// * lower: `d_i^δ h_j^ε = h_{j-1}^ε d_i^δ` for `i < j`;
/// * diagonal: `d_i^ε h_i^0 = d_{i+1}^ε h_i^1`, `d_i^0 h_i^1 = d_{i+1}^0 h_i^0`,
///   `d_i^1 h_i^1 = d_i^1 h_{i-1}^0`;
/// * upper: `d_i^δ h_j^ε = h_j^ε d_{i-1}^δ` for `i > j + 1`;
/// * endpoints: `d_1^1 h_1^1 = f'` and `d_{n+1}^1 h_n^0 = g'`;
/// * conclusion: `∂'H' + H'∂' = g' - f'` with `H' = Σ (-1)^i (h_i^0 + h_i^1)`.
pub fn verify_precubic_homotopy(
    data: &PrecubicHomotopyData,
    n: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::DegreeZero(0));
    }
    let size = data.size;
    for m in [n, n + 1] {
        check_face_relations(size, m, opts, |t| {
            let c = Chain::basis(t.clone());
            for j in 2..=m {
                for i in 1..j {
                    for e in 0..2u8 {
                        for d in 0..2u8 {
                            let lhs = data.face(e, i, &data.basis_face(d, j, t));
                            let rhs = data.face(d, j - 1, &data.face(e, i, &c));
                            if lhs != rhs {
                                return Some(format!("d_{i}^{e} d_{j}^{d} = d_{}^{d} d_{i}^{e}", j - 1));
                            }
                        }
                    }
                }
            }
            None
        })?;
    }

    let mut report = VerificationReport::new("precubic homotopy", data.label.clone(), n);
    let bc = |t: &BasisTuple| Chain::basis(t.clone());
    for j in 2..=n {
        for i in 1..j {
            for d in 0..2u8 {
                for e in 0..2u8 {
                    report.push(check_clause(
                        format!("lower: d_{i}^{d} h_{j}^{e} = h_{}^{e} d_{i}^{d}", j - 1),
                        false,
                        size,
                        n,
                        opts,
                        |t| data.face(d, i, &(data.homotopies)(e, j, t)),
                        |t| data.h(e, j - 1, &data.basis_face(d, i, t)),
                    ));
                }
            }
        }
    }
    for i in 1..=n {
        for e in 0..2u8 {
            report.push(check_clause(
                format!("diagonal: d_{i}^{e} h_{i}^0 = d_{}^{e} h_{i}^1", i + 1),
                false,
                size,
                n,
                opts,
                |t| data.face(e, i, &(data.homotopies)(0, i, t)),
                |t| data.face(e, i + 1, &(data.homotopies)(1, i, t)),
            ));
        }
        report.push(check_clause(
            format!("diagonal: d_{i}^0 h_{i}^1 = d_{}^0 h_{i}^0", i + 1),
            false,
            size,
            n,
            opts,
            |t| data.face(0, i, &(data.homotopies)(1, i, t)),
            |t| data.face(0, i + 1, &(data.homotopies)(0, i, t)),
        ));
        if i >= 2 {
            report.push(check_clause(
                format!("diagonal: d_{i}^1 h_{i}^1 = d_{i}^1 h_{}^0", i - 1),
                false,
                size,
                n,
                opts,
                |t| data.face(1, i, &(data.homotopies)(1, i, t)),
                |t| data.face(1, i, &(data.homotopies)(0, i - 1, t)),
            ));
        }
    }
    for j in 1..n {
        for i in j + 2..=n + 1 {
            for d in 0..2u8 {
                for e in 0..2u8 {
                    report.push(check_clause(
                        format!("upper: d_{i}^{d} h_{j}^{e} = h_{j}^{e} d_{}^{d}", i - 1),
                        false,
                        size,
                        n,
                        opts,
                        |t| data.face(d, i, &(data.homotopies)(e, j, t)),
                        |t| data.h(e, j, &data.basis_face(d, i - 1, t)),
                    ));
                }
            }
        }
    }
    report.push(check_clause(
        format!("endpoint: d_1^1 h_1^1 = {}", data.f_prime.name()),
        false,
        size,
        n,
        opts,
        |t| data.face(1, 1, &(data.homotopies)(1, 1, t)),
        |t| data.f_prime.apply_basis(t),
    ));
    report.push(check_clause(
        format!("endpoint: d_{}^1 h_{n}^0 = {}", n + 1, data.g_prime.name()),
        false,
        size,
        n,
        opts,
        |t| data.face(1, n + 1, &(data.homotopies)(0, n, t)),
        |t| data.g_prime.apply_basis(t),
    ));
    report.push(check_clause(
        format!("conclusion: ∂'H' + H'∂' = {} - {}", data.g_prime.name(), data.f_prime.name()),
        false,
        size,
        n,
        opts,
        |t| {
            let c = bc(t);
            data.boundary(&data.total_homotopy(&c)) + data.total_homotopy(&data.boundary(&c))
        },
        |t| data.g_prime.apply_basis(t) - data.f_prime.apply_basis(t),
    ));
    Ok(report)
}

/// `(i, x) ↦ m_i(x)` for a family of maps indexed by `i`.
pub type IndexedMap = Arc<dyn Fn(usize, &BasisTuple) -> Chain + Send + Sync>;

/// Faces `d_0, .., d_n` and homotopies `h_0, .., h_n` on a module whose
/// degree-`n` basis is the tuples of length `n + shift`.
#[derive(Clone)]
pub struct PresimplicialHomotopyData {
    pub label: String,
    pub size: usize,
    pub shift: usize,
    pub faces: IndexedMap,
    pub homotopies: IndexedMap,
    pub f: ChainOperator,
    pub g: ChainOperator,
}

impl PresimplicialHomotopyData {
    /// On tuples `(x_0, .., x_n)` with `d_i` deleting `x_i`, the maps
    /// `h_i(x) = (x_0, .., x_i, p(x_i), .., p(x_n))` form a presimplicial
    /// homotopy from `x ↦ (p(x_0), .., p(x_n))` to the identity.
    pub fn insertion(size: usize, p: Vec<Element>) -> Result<Self> {
        if p.len() != size || p.iter().any(|&v| v as usize >= size) {
            return Err(Error::InvalidParameter(format!("p must map 0..{size} into itself")));
        }
        let p = Arc::new(p);
        let (p1, p2) = (p.clone(), p.clone());
        Ok(PresimplicialHomotopyData {
            label: format!("insertion of {:?}", p.as_slice()),
            size,
            shift: 1,
            faces: Arc::new(|i, t| {
                let mut v = t.entries().to_vec();
                v.remove(i);
                Chain::basis(BasisTuple::new(v))
            }),
            homotopies: Arc::new(move |i, t| {
                let x = t.entries();
                let mut v = x[..=i].to_vec();
                v.extend(x[i..].iter().map(|&a| p1[a as usize]));
                Chain::basis(BasisTuple::new(v))
            }),
            f: ChainOperator::new("P", 0, move |t| {
                Chain::basis(BasisTuple::new(t.entries().iter().map(|&a| p2[a as usize]).collect()))
            }),
            g: ChainOperator::new("Id", 0, |t| Chain::basis(t.clone())),
        })
    }

    fn face(&self, i: usize, c: &Chain) -> Chain {
        c.map(c.degree() - 1, |t| (self.faces)(i, t))
    }

    fn h(&self, j: usize, c: &Chain) -> Chain {
        c.map(c.degree() + 1, |t| (self.homotopies)(j, t))
    }

    /// `∂ = Σ_{i=0}^n (-1)^i d_i` on degree `n >= 1`, zero on degree 0.
    fn boundary(&self, c: &Chain, n: usize) -> Chain {
        let mut out = Chain::zero(c.degree().saturating_sub(1));
        if n == 0 {
            return out;
        }
        for i in 0..=n {
            let s = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            out.add_scaled(&self.face(i, c), &s);
        }
        out
    }

    fn total_homotopy(&self, c: &Chain, n: usize) -> Chain {
        let mut out = Chain::zero(c.degree() + 1);
        for i in 0..=n {
            let s = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            out.add_scaled(&self.h(i, c), &s);
        }
        out
    }
}

/// Checks a presimplicial homotopy on degree `n`: the face relations
/// `d_i d_j = d_{j-1} d_i` (`i < j`) first, then
///
/// * lower: `d_i h_j = h_{j-1} d_i` for `i < j`;
/// * diagonal: `d_i h_i = d_i h_{i-1}` for `1 <= i <= n`;
/// * upper: `d_i h_j = h_j d_{i-1}` for `i > j + 1`;
/// * endpoints: `d_0 h_0 = f` and `d_{n+1} h_n = g`;
/// * conclusion: `∂H + H∂ = f - g` with `H = Σ (-1)^i h_i`.
pub fn verify_presimplicial_homotopy(
    data: &PresimplicialHomotopyData,
    n: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let size = data.size;
    let len = |m: usize| m + data.shift;
    for m in [n, n + 1] {
        if m == 0 {
            continue;
        }
        check_face_relations(size, len(m), opts, |t| {
            for j in 1..=m {
                for i in 0..j {
                    let lhs = data.face(i, &(data.faces)(j, t));
                    let rhs = data.face(j - 1, &(data.faces)(i, t));
                    if lhs != rhs {
                        return Some(format!("d_{i} d_{j} = d_{} d_{i}", j - 1));
                    }
                }
            }
            None
        })?;
    }

    let mut report = VerificationReport::new("presimplicial homotopy", data.label.clone(), n);
    for j in 1..=n {
        for i in 0..j {
            report.push(check_clause(
                format!("lower: d_{i} h_{j} = h_{} d_{i}", j - 1),
                false,
                size,
                len(n),
                opts,
                |t| data.face(i, &(data.homotopies)(j, t)),
                |t| data.h(j - 1, &(data.faces)(i, t)),
            ));
        }
    }
    for i in 1..=n {
        report.push(check_clause(
            format!("diagonal: d_{i} h_{i} = d_{i} h_{}", i - 1),
            false,
            size,
            len(n),
            opts,
            |t| data.face(i, &(data.homotopies)(i, t)),
            |t| data.face(i, &(data.homotopies)(i - 1, t)),
        ));
    }
    for j in 0..n {
        for i in j + 2..=n + 1 {
            report.push(check_clause(
                format!("upper: d_{i} h_{j} = h_{j} d_{}", i - 1),
                false,
                size,
                len(n),
                opts,
                |t| data.face(i, &(data.homotopies)(j, t)),
                |t| data.h(j, &(data.faces)(i - 1, t)),
            ));
        }
    }
    report.push(check_clause(
        format!("endpoint: d_0 h_0 = {}", data.f.name()),
        false,
        size,
        len(n),
        opts,
        |t| data.face(0, &(data.homotopies)(0, t)),
        |t| data.f.apply_basis(t),
    ));
    report.push(check_clause(
        format!("endpoint: d_{} h_{n} = {}", n + 1, data.g.name()),
        false,
        size,
        len(n),
        opts,
        |t| data.face(n + 1, &(data.homotopies)(n, t)),
        |t| data.g.apply_basis(t),
    ));
    report.push(check_clause(
        format!("conclusion: ∂H + H∂ = {} - {}", data.f.name(), data.g.name()),
        false,
        size,
        len(n),
        opts,
        |t| {
            let c = Chain::basis(t.clone());
            let lower = if n == 0 {
                Chain::zero(t.degree() + 1)
            } else {
                data.total_homotopy(&data.boundary(&c, n), n - 1)
            };
            data.boundary(&data.total_homotopy(&c, n), n + 1) + lower
        },
        |t| data.f.apply_basis(t) - data.g.apply_basis(t),
    ));
    Ok(report)
}
