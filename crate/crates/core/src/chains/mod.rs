//! Tuple bases, face maps and boundary operators.
//!
//! For an operation `*` on `X`, the faces of `(x_1, .., x_n)` are
//!
//! * `d_i^0 x = (x_1, .., x_{i-1}, x_{i+1}, .., x_n)` (delete `x_i`), and
//! * `d_i^* x = (x_1 * x_i, .., x_{i-1} * x_i, x_{i+1}, .., x_n)`,
//!
//! for `1 <= i <= n`. The one-term boundary is `∂^* = Σ_i (-1)^i d_i^*` and
//! the rack boundary is `∂^0 - ∂^*`. Degree 0 is the zero module, so every
//! boundary of a degree-1 chain vanishes.

mod chain;
mod complex;
mod tuple;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{DistributiveSet, Element, FiniteBinaryOp, FiniteQuandle};
use crate::error::{Error, Result};

pub use chain::Chain;
pub use complex::{Basis, ChainComplex, ComplexTheory};
pub use tuple::BasisTuple;
pub(crate) use tuple::{is_degenerate, rank_of};

/// Which face family to apply.
#[derive(Clone, Copy, Debug)]
pub enum Face<'a> {
    /// Deletion, `d_i^{(*_0)}`.
    Trivial,
    /// `d_i^{(*)}` for the given operation.
    Star(&'a FiniteBinaryOp),
}

/// Writes the `i`-th face of `x` into `out` (1-based `i`, unchecked).
#[inline]
pub(crate) fn face_into(face: Face<'_>, i: usize, x: &[Element], out: &mut Vec<Element>) {
    out.clear();
    let pivot = x[i - 1];
    match face {
        Face::Trivial => out.extend_from_slice(&x[..i - 1]),
        Face::Star(op) => out.extend(x[..i - 1].iter().map(|&a| op.apply(a, pivot))),
    }
    out.extend_from_slice(&x[i..]);
}

/// The face `d_i` of a basis tuple.
pub fn face(face: Face<'_>, i: usize, t: &BasisTuple) -> Result<BasisTuple> {
    let n = t.degree();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    let mut out = Vec::with_capacity(n - 1);
    face_into(face, i, t.entries(), &mut out);
    Ok(BasisTuple::new(out))
}

/// `Σ_{i=1}^n (-1)^i d_i^{(op)}` extended linearly; `op = None` is the
/// trivial operation.
pub fn one_term_boundary(op: Option<&FiniteBinaryOp>, c: &Chain) -> Chain {
    let f = match op {
        Some(op) => Face::Star(op),
        None => Face::Trivial,
    };
    combination_boundary(&[(f, BigInt::from(1))], c)
}

/// `Σ_i (-1)^i (d_i^{(*_0)} - d_i^{(*)})`.
pub fn rack_boundary(q: &FiniteQuandle, c: &Chain) -> Chain {
    combination_boundary(
        &[(Face::Trivial, BigInt::from(1)), (Face::Star(q.op()), BigInt::from(-1))],
        c,
    )
}

/// `Σ_k a_k ∂^{(*_k)}`.
pub fn multi_term_boundary(spec: &MultiTermSpec, c: &Chain) -> Chain {
    let faces: Vec<(Face<'_>, BigInt)> = spec
        .dset
        .ops()
        .iter()
        .zip(&spec.coeffs)
        .map(|(op, &a)| (Face::Star(op), BigInt::from(a)))
        .collect();
    combination_boundary(&faces, c)
}

fn combination_boundary(faces: &[(Face<'_>, BigInt)], c: &Chain) -> Chain {
    let n = c.degree();
    if n <= 1 {
        return Chain::zero(n.saturating_sub(1));
    }
    let mut out = Chain::zero(n - 1);
    let mut buf = Vec::with_capacity(n);
    for (t, coeff) in c.terms() {
        for i in 1..=n {
            let sign: BigInt = if i % 2 == 0 { coeff.clone() } else { -coeff };
            for (f, a) in faces {
                face_into(*f, i, t.entries(), &mut buf);
                out.add_term(BasisTuple::new(buf.clone()), &sign * a);
            }
        }
    }
    out
}

/// Coefficients `(a_0, .., a_k)` over a distributive set, defining
/// `∂^{(a_0, .., a_k)} = Σ a_k ∂^{(*_k)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiTermSpec {
    pub dset: DistributiveSet,
    pub coeffs: Vec<i64>,
}

/// Status of the three hypotheses of the multi-term annihilation theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiTermHypotheses {
    /// `Σ a_i = 0`.
    pub coefficient_sum_zero: bool,
    /// `a_0 != 0` (the trivial operation is always `*_0`).
    pub leading_nonzero: bool,
    /// Each `(X; *_i)`, `i >= 1`, is a quasigroup quandle.
    pub quasigroup_quandles: bool,
}

impl MultiTermHypotheses {
    pub fn all(&self) -> bool {
        self.coefficient_sum_zero && self.leading_nonzero && self.quasigroup_quandles
    }

    /// The first violated hypothesis, phrased as an error message.
    pub fn violation(&self) -> Option<&'static str> {
        if !self.coefficient_sum_zero {
            Some("coefficient sum nonzero")
        } else if !self.leading_nonzero {
            Some("coefficient a_0 of the trivial operation is zero")
        } else if !self.quasigroup_quandles {
            Some("some operation is not a quasigroup quandle")
        } else {
            None
        }
    }
}

impl MultiTermSpec {
    pub fn new(dset: DistributiveSet, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != dset.ops().len() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for {} operations",
                coeffs.len(),
                dset.ops().len()
            )));
        }
        Ok(MultiTermSpec { dset, coeffs })
    }

    /// The two-term specialization `(*_0, *)` with coefficients `(1, -1)`.
    pub fn rack(q: &FiniteQuandle) -> Result<Self> {
        Self::new(DistributiveSet::with_trivial(&[q])?, vec![1, -1])
    }

    pub fn size(&self) -> usize {
        self.dset.size()
    }

    pub fn hypotheses(&self) -> MultiTermHypotheses {
        let report = self.dset.validate();
        MultiTermHypotheses {
            coefficient_sum_zero: self.coeffs.iter().map(|&a| a as i128).sum::<i128>() == 0,
            leading_nonzero: self.coeffs[0] != 0,
            quasigroup_quandles: report.quasigroup.iter().all(|&q| q),
        }
    }

    /// A short label such as `multiterm(2,-1,-1)`.
    pub fn theory_label(&self) -> String {
        let c: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        format!("multiterm({})", c.join(","))
    }
}

/// A failing instance of `d_i^ε d_j^δ = d_{j-1}^δ d_i^ε` (`i < j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecubicViolation {
    pub epsilon: u8,
    pub delta: u8,
    pub i: usize,
    pub j: usize,
    pub tuple: BasisTuple,
}

/// Checks the precubic relations for the face pair (deletion, `op`) on every
/// tuple of `degree`, returning the first failure in
/// (tuple, ε, δ, i, j) order.
pub fn precubic_relation_failure(op: &FiniteBinaryOp, degree: usize) -> Option<PrecubicViolation> {
    use rayon::prelude::*;
    let size = op.size();
    let total = (size as u64).pow(degree as u32);
    let faces = [Face::Trivial, Face::Star(op)];
    (0..total)
        .into_par_iter()
        .find_map_first(|r| {
            let t = BasisTuple::unrank(r, size, degree);
            let x = t.entries();
            let (mut a, mut b, mut c, mut d) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for (e, fe) in faces.iter().enumerate() {
                for (dl, fd) in faces.iter().enumerate() {
                    for j in 2..=degree {
                        for i in 1..j {
                            face_into(*fd, j, x, &mut a);
                            face_into(*fe, i, &a, &mut b);
                            face_into(*fe, i, x, &mut c);
                            face_into(*fd, j - 1, &c, &mut d);
                            if b != d {
                                return Some(PrecubicViolation {
                                    epsilon: e as u8,
                                    delta: dl as u8,
                                    i,
                                    j,
                                    tuple: t.clone(),
                                });
                            }
                        }
                    }
                }
            }
            None
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alexander, dihedral, FiniteBinaryOp};
    use proptest::prelude::*;

    fn t<const N: usize>(x: [Element; N]) -> BasisTuple {
        BasisTuple::from(x)
    }

    #[test]
    fn faces() {
        let r3 = dihedral(3).unwrap();
        assert_eq!(face(Face::Trivial, 2, &t([5, 6, 7])).unwrap(), t([5, 7]));
        assert_eq!(face(Face::Star(r3.op()), 1, &t([0, 1, 2])).unwrap(), t([1, 2]));
        assert_eq!(face(Face::Star(r3.op()), 3, &t([0, 1, 2])).unwrap(), t([1, 0]));
        assert!(matches!(
            face(Face::Trivial, 4, &t([0, 1, 2])),
            Err(Error::IndexOutOfRange { index: 4, degree: 3 })
        ));
        assert!(face(Face::Trivial, 0, &t([0])).is_err());
    }

    #[test]
    fn one_term_boundaries() {
        let r3 = dihedral(3).unwrap();
        assert!(one_term_boundary(Some(r3.op()), &Chain::basis(t([1]))).is_zero());
        let expect = Chain::from_terms(1, [(t([1]), -1), (t([0]), 1)]);
        assert_eq!(one_term_boundary(None, &Chain::basis(t([0, 1]))), expect);
        let expect = Chain::from_terms(1, [(t([1]), -1), (t([2]), 1)]);
        assert_eq!(one_term_boundary(Some(r3.op()), &Chain::basis(t([0, 1]))), expect);
    }

    #[test]
    fn rack_boundary_examples() {
        let r3 = dihedral(3).unwrap();
        let expect = Chain::from_terms(1, [(t([0]), 1), (t([2]), -1)]);
        assert_eq!(rack_boundary(&r3, &Chain::basis(t([0, 1]))), expect);
        for a in 0..3 {
            assert!(rack_boundary(&r3, &Chain::basis(t([a, a]))).is_zero());
        }
    }

    #[test]
    fn multi_term_specializes_to_rack() {
        let r3 = dihedral(3).unwrap();
        let spec = MultiTermSpec::rack(&r3).unwrap();
        for x in BasisTuple::all(3, 3) {
            let c = Chain::basis(x);
            assert_eq!(multi_term_boundary(&spec, &c), rack_boundary(&r3, &c));
        }
        let triv = MultiTermSpec::new(
            DistributiveSet::new(vec![FiniteBinaryOp::trivial(3).unwrap()]).unwrap(),
            vec![1],
        )
        .unwrap();
        let expect = Chain::from_terms(1, [(t([1]), -1), (t([0]), 1)]);
        assert_eq!(multi_term_boundary(&triv, &Chain::basis(t([0, 1]))), expect);
    }

    #[test]
    fn multi_term_squares_to_zero() {
        let (a2, a3) = (alexander(5, 2).unwrap(), alexander(5, 3).unwrap());
        let spec =
            MultiTermSpec::new(DistributiveSet::with_trivial(&[&a2, &a3]).unwrap(), vec![2, -1, -1])
                .unwrap();
        for x in BasisTuple::all(5, 3) {
            let c = Chain::basis(x);
            assert!(multi_term_boundary(&spec, &multi_term_boundary(&spec, &c)).is_zero());
        }
        assert!(spec.hypotheses().all());
        let bad = MultiTermSpec::new(spec.dset.clone(), vec![1, 1, 1]).unwrap();
        assert_eq!(bad.hypotheses().violation(), Some("coefficient sum nonzero"));
    }

    #[test]
    fn precubic_relations_hold_for_catalog() {
        for q in [dihedral(3).unwrap(), dihedral(4).unwrap(), alexander(5, 2).unwrap()] {
            for n in 2..=4 {
                if q.size().pow(n as u32) <= 10_000 {
                    assert_eq!(precubic_relation_failure(q.op(), n), None, "{} n={n}", q.label());
                }
            }
        }
    }

    #[test]
    fn precubic_relations_fail_for_non_shelf() {
        let op = FiniteBinaryOp::from_fn(3, |a, b| (a + b) % 3).unwrap();
        assert!(precubic_relation_failure(&op, 3).is_some());
    }

    fn chain_strategy(size: u32, degree: usize) -> impl Strategy<Value = Chain> {
        prop::collection::vec((prop::collection::vec(0..size, degree), -5i64..=5), 0..8).prop_map(
            move |terms| {
                Chain::from_terms(degree, terms.into_iter().map(|(x, k)| (BasisTuple::new(x), k)))
            },
        )
    }

    proptest! {
        #[test]
        fn rack_boundary_squares_to_zero(c in chain_strategy(5, 4)) {
            let r5 = dihedral(5).unwrap();
            prop_assert!(rack_boundary(&r5, &rack_boundary(&r5, &c)).is_zero());
        }

        #[test]
        fn boundary_is_linear(a in chain_strategy(5, 3), b in chain_strategy(5, 3), k in -4i64..=4) {
            let r5 = dihedral(5).unwrap();
            let lhs = rack_boundary(&r5, &(a.clone() + b.clone().scale(k)));
            let rhs = rack_boundary(&r5, &a) + rack_boundary(&r5, &b).scale(k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
