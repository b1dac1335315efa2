//! Verifiers for the homotopy identities on the rack and multi-term complexes.

use num_bigint::BigInt;

use super::report::{check_clause, VerificationReport, VerifyOptions};
use super::{raw_d, raw_f, raw_f_r, raw_f_s, raw_g};
use crate::algebra::{Element, FiniteQuandle};
use crate::chains::{face_into, multi_term_boundary, rack_boundary, BasisTuple, Chain, Face, MultiTermSpec};
use crate::error::{Error, Result};

type Boundary<'a> = dyn Fn(&Chain) -> Chain + Sync + 'a;

fn sign(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn face_chain(face: Face<'_>, i: usize, c: &Chain) -> Chain {
    c.map(c.degree() - 1, |t| {
        let mut buf = Vec::with_capacity(t.degree());
        face_into(face, i, t.entries(), &mut buf);
        Chain::basis(BasisTuple::new(buf))
    })
}

/// `x ↦ ∂(h x) + h(∂ x)` for a degree-raising `h`.
fn commutator<'a>(
    boundary: &'a Boundary<'a>,
    h: impl Fn(&BasisTuple) -> Chain + Sync + 'a,
) -> impl Fn(&BasisTuple) -> Chain + Sync + 'a {
    move |t| {
        let n = t.degree();
        let up = boundary(&h(t));
        let across = boundary(&Chain::basis(t.clone())).map(n, &h);
        up + across
    }
}

/// Describes the first element whose left translation is not onto.
fn summation_lemma_note(q: &FiniteQuandle) -> Option<String> {
    let n = q.size() as Element;
    (0..n).find_map(|x| {
        let mut hit = vec![false; n as usize];
        for y in 0..n {
            hit[q.apply(x, y) as usize] = true;
        }
        hit.iter().position(|h| !h).map(|b| {
            format!("summation lemma Σ_y x*y = Σ_y y fails at x = {x}: y ↦ {x}*y never reaches {b}")
        })
    })
}

fn require_quasigroup(q: &FiniteQuandle, opts: &VerifyOptions, report: &mut VerificationReport) -> Result<()> {
    if let Some(note) = summation_lemma_note(q) {
        if !opts.expect_failure {
            return Err(Error::Hypothesis(format!(
                "{} is not a quasigroup quandle ({note})",
                q.label()
            )));
        }
        report.notes.push(note);
    }
    Ok(())
}

fn check_degree_index(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, degree: n });
    }
    Ok(())
}

fn push_d_identity(
    report: &mut VerificationReport,
    boundary: &Boundary<'_>,
    size: usize,
    a0: i64,
    j: usize,
    n: usize,
    opts: &VerifyOptions,
) {
    let scale = BigInt::from(sign(j) * a0);
    let lead = if a0 == 1 { String::new() } else { format!("{a0}") };
    report.push(check_clause(
        format!("∂D^{j} + D^{j}∂ = (-1)^{j} {lead}(f_s^{j} - f_r^{j})"),
        false,
        size,
        n,
        opts,
        commutator(boundary, move |t| raw_d(size, j, t)),
        |t| (raw_f_s(size, j, t) - raw_f_r(size, j, t)).scale(scale.clone()),
    ));
}

fn push_f_identity(
    report: &mut VerificationReport,
    boundary: &Boundary<'_>,
    size: usize,
    a0: i64,
    j: usize,
    n: usize,
    opts: &VerifyOptions,
) {
    let scale = BigInt::from(sign(j) * a0);
    let lead = if a0 == 1 { String::new() } else { format!("{a0}") };
    report.push(check_clause(
        format!("∂F^{j} + F^{j}∂ = (-1)^{j} {lead}(f_r^{j} - f_s^{})", j - 1),
        false,
        size,
        n,
        opts,
        commutator(boundary, move |t| raw_f(size, j, t)),
        |t| (raw_f_r(size, j, t) - raw_f_s(size, j - 1, t)).scale(scale.clone()),
    ));
}

fn push_g_identity(
    report: &mut VerificationReport,
    boundary: &Boundary<'_>,
    size: usize,
    a0: i64,
    n: usize,
    opts: &VerifyOptions,
) {
    let lead = if a0 == 1 { String::new() } else { format!("{a0}") };
    report.push(check_clause(
        format!("∂G + G∂ = {lead}(f_s^n - {size} Id)"),
        false,
        size,
        n,
        opts,
        commutator(boundary, move |t| raw_g(size, t)),
        |t| (raw_f_s(size, n, t) - Chain::term(t.clone(), size as i64)).scale(a0),
    ));
}

/// The `F` anchors `d_j^0 F^j = f_r^j` and `d_j^* F^j = f_s^{j-1}`, which pin
/// the position of the free slot in `F^j`.
fn push_f_anchors(report: &mut VerificationReport, q: &FiniteQuandle, j: usize, n: usize, opts: &VerifyOptions) {
    let size = q.size();
    report.push(check_clause(
        format!("d_{j}^0 F^{j} = f_r^{j}"),
        false,
        size,
        n,
        opts,
        |t| face_chain(Face::Trivial, j, &raw_f(size, j, t)),
        |t| raw_f_r(size, j, t),
    ));
    report.push(check_clause(
        format!("d_{j}^* F^{j} = f_s^{}", j - 1),
        false,
        size,
        n,
        opts,
        |t| face_chain(Face::Star(q.op()), j, &raw_f(size, j, t)),
        |t| raw_f_s(size, j - 1, t),
    ));
}

/// Checks `∂D_n^j + D_{n-1}^j ∂_n = (-1)^j (f_s^j - f_r^j)` on degree-`n` tuples.
///
/// A non-quasigroup quandle is an error unless `opts.expect_failure` is set,
/// in which case the report carries a note naming the failed summation.
pub fn verify_homotopy_identity_d(
    q: &FiniteQuandle,
    j: usize,
    n: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    check_degree_index(j, n)?;
    let mut report = VerificationReport::new(format!("D^{j} homotopy"), q.label(), n);
    require_quasigroup(q, opts, &mut report)?;
    let boundary = |c: &Chain| rack_boundary(q, c);
    push_d_identity(&mut report, &boundary, q.size(), 1, j, n, opts);
    Ok(report)
}

/// Checks `∂F_n^j + F_{n-1}^j ∂_n = (-1)^j (f_r^j - f_s^{j-1})`, after the two
/// anchor equations for `F`.
pub fn verify_homotopy_identity_f(
    q: &FiniteQuandle,
    j: usize,
    n: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    check_degree_index(j, n)?;
    let mut report = VerificationReport::new(format!("F^{j} homotopy"), q.label(), n);
    require_quasigroup(q, opts, &mut report)?;
    push_f_anchors(&mut report, q, j, n, opts);
    let boundary = |c: &Chain| rack_boundary(q, c);
    push_f_identity(&mut report, &boundary, q.size(), 1, j, n, opts);
    Ok(report)
}

/// Checks `∂G_n + G_{n-1}∂_n = f_s^n - |Q| Id`.
pub fn verify_composite_homotopy(q: &FiniteQuandle, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::DegreeZero(0));
    }
    let mut report = VerificationReport::new("G homotopy", q.label(), n);
    require_quasigroup(q, opts, &mut report)?;
    let boundary = |c: &Chain| rack_boundary(q, c);
    push_g_identity(&mut report, &boundary, q.size(), 1, n, opts);
    Ok(report)
}

/// Checks that `f_r^j` (`1 <= j < n`) and `f_s^j` (`0 <= j < n`) commute with
/// the rack boundary on degree-`n` tuples.
pub fn verify_chain_maps(q: &FiniteQuandle, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::DegreeZero(0));
    }
    let size = q.size();
    let mut report = VerificationReport::new("chain maps", q.label(), n);
    require_quasigroup(q, opts, &mut report)?;
    let bd = |t: &BasisTuple| rack_boundary(q, &Chain::basis(t.clone()));
    for j in 1..n {
        report.push(check_clause(
            format!("∂f_r^{j} = f_r^{j}∂"),
            false,
            size,
            n,
            opts,
            |t| rack_boundary(q, &raw_f_r(size, j, t)),
            |t| bd(t).map(n - 1, |u| raw_f_r(size, j, u)),
        ));
    }
    for j in 0..n {
        report.push(check_clause(
            format!("∂f_s^{j} = f_s^{j}∂"),
            false,
            size,
            n,
            opts,
            |t| rack_boundary(q, &raw_f_s(size, j, t)),
            |t| bd(t).map(n - 1, |u| raw_f_s(size, j, u)),
        ));
    }
    Ok(report)
}

/// `Σ_y (x_j, .., x_j, y, x_{j+1}, .., x_n)` with `j - 1` copies of `x_j`.
fn target_one(size: usize, j: usize, t: &BasisTuple) -> Chain {
    let x = t.entries();
    let mut out = Chain::zero(x.len());
    for y in 0..size as Element {
        let mut v = vec![x[j - 1]; j - 1];
        v.push(y);
        v.extend_from_slice(&x[j..]);
        out.add_term(BasisTuple::new(v), 1);
    }
    out
}

/// `Σ_y (x_j, .., x_j, y, x_j, x_{j+1}, .., x_n)` with `j - 2` leading copies.
fn target_two(size: usize, j: usize, t: &BasisTuple) -> Chain {
    let x = t.entries();
    let mut out = Chain::zero(x.len());
    for y in 0..size as Element {
        let mut v = vec![x[j - 1]; j - 2];
        v.push(y);
        v.extend_from_slice(&x[j - 1..]);
        out.add_term(BasisTuple::new(v), 1);
    }
    out
}

/// Checks the face identities satisfied by `D` and `F` on degree-`n` tuples,
/// one clause per equation:
///
/// * block D: `d_i D^j` (`i <= j`), `D^{j-1} d_i` (`i < j`) and `d_{j+1} F^j`
///   all equal `Σ_y (x_j, .., x_j, y, x_{j+1}, .., x_n)` with `j - 1` copies;
/// * block F: `d_i F^j` and `F^{j-1} d_i` (`i < j`) equal
///   `Σ_y (x_j, .., x_j, y, x_j, x_{j+1}, .., x_n)` with `j - 2` copies;
/// * cross: `d_{i+1}^* D^i = d_{i+1}^* F^{i+1}` and `d_{i+1}^0 D^i = d_i^0 F^i`,
///   with nearby index variants reported as informational clauses;
/// * commute: `d_{i+1} D^j = D^j d_i` and `d_{i+1} F^j = F^j d_i` for `j < i <= n`.
///
/// Each equation is checked for both face families.
pub fn verify_corollary_identities(q: &FiniteQuandle, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::DegreeZero(0));
    }
    let size = q.size();
    let mut report = VerificationReport::new("face identities of D and F", q.label(), n);
    require_quasigroup(q, opts, &mut report)?;
    let faces = [("0", Face::Trivial), ("*", Face::Star(q.op()))];
    let basis_face = |f: Face<'_>, i: usize, t: &BasisTuple| face_chain(f, i, &Chain::basis(t.clone()));

    for j in 1..=n {
        for &(e, f) in &faces {
            for i in 1..=j {
                report.push(check_clause(
                    format!("block D: d_{i}^{e} D^{j} = T_{j}"),
                    false,
                    size,
                    n,
                    opts,
                    |t| face_chain(f, i, &raw_d(size, j, t)),
                    |t| target_one(size, j, t),
                ));
            }
            for i in 1..j {
                report.push(check_clause(
                    format!("block D: D^{} d_{i}^{e} = T_{j}", j - 1),
                    false,
                    size,
                    n,
                    opts,
                    |t| basis_face(f, i, t).map(n, |u| raw_d(size, j - 1, u)),
                    |t| target_one(size, j, t),
                ));
            }
            report.push(check_clause(
                format!("block D: d_{}^{e} F^{j} = T_{j}", j + 1),
                false,
                size,
                n,
                opts,
                |t| face_chain(f, j + 1, &raw_f(size, j, t)),
                |t| target_one(size, j, t),
            ));
        }
    }

    for j in 2..=n {
        for &(e, f) in &faces {
            for i in 1..j {
                report.push(check_clause(
                    format!("block F: d_{i}^{e} F^{j} = T'_{j}"),
                    false,
                    size,
                    n,
                    opts,
                    |t| face_chain(f, i, &raw_f(size, j, t)),
                    |t| target_two(size, j, t),
                ));
                report.push(check_clause(
                    format!("block F: F^{} d_{i}^{e} = T'_{j}", j - 1),
                    false,
                    size,
                    n,
                    opts,
                    |t| basis_face(f, i, t).map(n, |u| raw_f(size, j - 1, u)),
                    |t| target_two(size, j, t),
                ));
            }
        }
    }

    let star = Face::Star(q.op());
    // A side is `d_i^{face}` applied to `D^j` (flag set) or `F^j`.
    type Side<'a> = (Face<'a>, usize, bool, usize);
    let mut pairs: Vec<(String, bool, Side<'_>, Side<'_>)> = Vec::new();
    for i in 1..=n {
        if i < n {
            pairs.push((format!("cross: d_{}^* D^{i} = d_{}^* F^{}", i + 1, i + 1, i + 1), false, (star, i + 1, true, i), (star, i + 1, false, i + 1)));
            pairs.push((format!("cross variant: d_{}^0 D^{i} = d_{}^0 F^{}", i + 1, i + 1, i + 1), true, (Face::Trivial, i + 1, true, i), (Face::Trivial, i + 1, false, i + 1)));
        }
        pairs.push((format!("cross: d_{}^0 D^{i} = d_{i}^0 F^{i}", i + 1), false, (Face::Trivial, i + 1, true, i), (Face::Trivial, i, false, i)));
        pairs.push((format!("cross variant: d_{}^* D^{i} = d_{i}^* F^{i}", i + 1), true, (star, i + 1, true, i), (star, i, false, i)));
        pairs.push((format!("cross variant: d_{i}^0 F^{i} = d_{}^0 D^{i}", i + 1), true, (Face::Trivial, i, false, i), (Face::Trivial, i + 1, true, i)));
        if i >= 2 {
            pairs.push((format!("cross variant: d_{i}^* F^{i} = d_{i}^* D^{}", i - 1), true, (star, i, false, i), (star, i, true, i - 1)));
        }
    }
    let eval = |side: &Side<'_>, t: &BasisTuple| {
        let (f, i, is_d, j) = *side;
        let h = if is_d { raw_d(size, j, t) } else { raw_f(size, j, t) };
        face_chain(f, i, &h)
    };
    for (name, informational, l, r) in &pairs {
        report.push(check_clause(name.clone(), *informational, size, n, opts, |t| eval(l, t), |t| eval(r, t)));
    }

    for j in 1..n {
        for i in j + 1..=n {
            for &(e, f) in &faces {
                report.push(check_clause(
                    format!("commute: d_{}^{e} D^{j} = D^{j} d_{i}^{e}", i + 1),
                    false,
                    size,
                    n,
                    opts,
                    |t| face_chain(f, i + 1, &raw_d(size, j, t)),
                    |t| basis_face(f, i, t).map(n, |u| raw_d(size, j, u)),
                ));
                report.push(check_clause(
                    format!("commute: d_{}^{e} F^{j} = F^{j} d_{i}^{e}", i + 1),
                    false,
                    size,
                    n,
                    opts,
                    |t| face_chain(f, i + 1, &raw_f(size, j, t)),
                    |t| basis_face(f, i, t).map(n, |u| raw_f(size, j, u)),
                ));
            }
        }
    }
    Ok(report)
}

/// Checks the multi-term homotopy identities on degree-`n` tuples:
/// `∂D^j + D^j∂ = (-1)^j a_0 (f_s^j - f_r^j)`,
/// `∂F^j + F^j∂ = (-1)^j a_0 (f_r^j - f_s^{j-1})` for every `j`, and
/// `∂G + G∂ = a_0 (f_s^n - |X| Id)`, with `∂` the multi-term boundary.
///
/// The `(Σ a_i)`-weighted homotopies are checked as informational clauses.
pub fn verify_multi_term_homotopy(spec: &MultiTermSpec, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::DegreeZero(0));
    }
    let mut report = VerificationReport::new("multi-term homotopy", spec.theory_label(), n);
    if let Some(v) = spec.hypotheses().violation() {
        if !opts.expect_failure {
            return Err(Error::Hypothesis(v.to_string()));
        }
        report.notes.push(format!("hypothesis {v}"));
    }
    let size = spec.size();
    let a0 = spec.coeffs[0];
    let weight: i64 = spec.coeffs.iter().sum();
    let boundary = |c: &Chain| multi_term_boundary(spec, c);
    for j in 1..=n {
        push_d_identity(&mut report, &boundary, size, a0, j, n, opts);
        push_f_identity(&mut report, &boundary, size, a0, j, n, opts);
        let scale = BigInt::from(sign(j) * a0);
        report.push(check_clause(
            format!("weighted: ∂({weight}D^{j}) + ({weight}D^{j})∂ = (-1)^{j} {a0}(f_s^{j} - f_r^{j})"),
            true,
            size,
            n,
            opts,
            commutator(&boundary, move |t| raw_d(size, j, t).scale(weight)),
            |t| (raw_f_s(size, j, t) - raw_f_r(size, j, t)).scale(scale.clone()),
        ));
    }
    push_g_identity(&mut report, &boundary, size, a0, n, opts);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alexander, dihedral, DistributiveSet};

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn d_and_f_identities_on_small_cases() {
        let r3 = dihedral(3).unwrap();
        let d = verify_homotopy_identity_d(&r3, 1, 2, &opts()).unwrap();
        assert!(d.passed);
        assert_eq!(d.clauses[0].checked, 9);
        assert!(verify_homotopy_identity_d(&dihedral(5).unwrap(), 2, 3, &opts()).unwrap().passed);
        for j in 1..=2 {
            assert!(verify_homotopy_identity_f(&r3, j, 2, &opts()).unwrap().passed);
        }
        assert!(verify_homotopy_identity_f(&dihedral(7).unwrap(), 1, 2, &opts()).unwrap().passed);
    }

    #[test]
    fn composite_and_chain_maps() {
        for n in 1..=3 {
            assert!(verify_composite_homotopy(&dihedral(3).unwrap(), n, &opts()).unwrap().passed);
        }
        let rep = verify_composite_homotopy(&dihedral(5).unwrap(), 2, &opts()).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.clauses[0].checked, 25);
        assert!(verify_chain_maps(&alexander(5, 2).unwrap(), 3, &opts()).unwrap().passed);
    }

    #[test]
    fn non_quasigroup_is_rejected_then_fails() {
        let r4 = dihedral(4).unwrap();
        assert!(matches!(
            verify_homotopy_identity_d(&r4, 1, 2, &opts()),
            Err(Error::Hypothesis(_))
        ));
        let o = VerifyOptions { expect_failure: true, ..opts() };
        let rep = verify_homotopy_identity_d(&r4, 1, 2, &o).unwrap();
        assert!(!rep.passed);
        assert!(rep.notes[0].contains("summation lemma"));
        let w = rep.clauses[0].witness.as_ref().unwrap();
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn index_out_of_range() {
        let r3 = dihedral(3).unwrap();
        assert!(verify_homotopy_identity_d(&r3, 0, 2, &opts()).is_err());
        assert!(verify_homotopy_identity_f(&r3, 3, 2, &opts()).is_err());
    }

    #[test]
    fn corollary_clauses() {
        let rep = verify_corollary_identities(&dihedral(3).unwrap(), 3, &opts()).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure());
        assert!(rep.clauses.iter().any(|c| c.name.starts_with("commute")));
        let rep = verify_corollary_identities(&dihedral(5).unwrap(), 2, &opts()).unwrap();
        assert!(rep.passed);
        let holds = |name: &str| rep.clause(name).unwrap().passed;
        assert!(holds("cross: d_2^* D^1 = d_2^* F^2"));
        assert!(holds("cross: d_2^0 D^1 = d_1^0 F^1"));
        assert!(holds("cross variant: d_2^* F^2 = d_2^* D^1"));
        assert!(!holds("cross variant: d_2^0 D^1 = d_2^0 F^2"));
    }

    fn alex_pair() -> MultiTermSpec {
        let a = alexander(5, 2).unwrap();
        let b = alexander(5, 3).unwrap();
        MultiTermSpec::new(DistributiveSet::with_trivial(&[&a, &b]).unwrap(), vec![2, -1, -1]).unwrap()
    }

    #[test]
    fn multi_term_identities() {
        let rep = verify_multi_term_homotopy(&alex_pair(), 2, &opts()).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure());
        assert!(rep.clauses.iter().filter(|c| c.informational).all(|c| !c.passed));

        let r3 = dihedral(3).unwrap();
        let spec = MultiTermSpec::rack(&r3).unwrap();
        let rep = verify_multi_term_homotopy(&spec, 2, &opts()).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn multi_term_hypotheses_are_named() {
        let r3 = dihedral(3).unwrap();
        let spec = MultiTermSpec::new(DistributiveSet::with_trivial(&[&r3]).unwrap(), vec![1, -2]).unwrap();
        match verify_multi_term_homotopy(&spec, 2, &opts()) {
            Err(Error::Hypothesis(m)) => assert!(m.contains("coefficient sum nonzero"), "{m}"),
            other => panic!("{other:?}"),
        }
        let t = BasisTuple::new(vec![0, 1]);
        assert!(super::super::multi_term_homotopies(&spec, 1, &t).is_err());
        let (d, f) = super::super::multi_term_homotopies(&alex_pair(), 1, &t).unwrap();
        assert_eq!((d.len(), f.len()), (5, 5));
        let (dw, _) = super::super::multi_term_homotopies_weighted(&alex_pair(), 1, &t).unwrap();
        assert!(dw.is_zero());
    }
}
