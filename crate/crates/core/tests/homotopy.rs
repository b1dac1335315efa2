use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use qhom::algebra::{alexander, dihedral, trivial};
use qhom::chains::precubic_relation_failure;
use qhom::homology::{complex_homology, SnfStrategy};
use qhom::homotopy::{
    composite_homotopy_g, f_r, f_s, homotopy_d, homotopy_f, multi_term_homotopies, verify_composite_homotopy,
    verify_homotopy_identity_d, verify_homotopy_identity_f, verify_multi_term_homotopy, verify_precubic_homotopy,
    verify_presimplicial_homotopy, PrecubicHomotopyData, PresimplicialHomotopyData, VerificationReport,
    VerifyOptions,
};
use qhom::{BasisTuple, Chain, ChainComplex, ComplexTheory, DistributiveSet, FiniteBinaryOp, FiniteQuandle, MultiTermSpec};

fn t(v: &[u32]) -> BasisTuple {
    BasisTuple::new(v.to_vec())
}

fn chain(terms: &[(&[u32], i64)]) -> Chain {
    let degree = terms[0].0.len();
    Chain::from_terms(degree, terms.iter().map(|(v, c)| (t(v), *c)))
}

fn exhaustive() -> VerifyOptions {
    VerifyOptions {
        budget: u64::MAX,
        expect_failure: false,
    }
}

/// Every non-informational clause other than the conclusion passes.
fn premises_hold(r: &VerificationReport) -> bool {
    r.clauses
        .iter()
        .filter(|c| !c.informational && !c.name.starts_with("conclusion"))
        .all(|c| c.passed)
}

fn conclusion_holds(r: &VerificationReport) -> bool {
    r.clauses.iter().filter(|c| c.name.starts_with("conclusion")).all(|c| c.passed)
}

#[test]
fn operator_examples() {
    let r3 = dihedral(3).unwrap();
    assert_eq!(f_r(&r3, 2, &t(&[0, 1, 2])).unwrap(), chain(&[(&[1, 1, 2], 3)]));
    assert_eq!(f_r(&r3, 1, &t(&[0, 1, 2])).unwrap(), chain(&[(&[0, 1, 2], 3)]));
    assert_eq!(f_r(&r3, 3, &t(&[0, 1, 2])).unwrap(), chain(&[(&[2, 2, 2], 3)]));
    assert_eq!(f_s(&r3, 0, &t(&[0, 1])).unwrap(), chain(&[(&[0, 1], 3)]));
    assert_eq!(f_s(&r3, 1, &t(&[0, 1])).unwrap(), chain(&[(&[0, 1], 1), (&[1, 1], 1), (&[2, 1], 1)]));
    assert_eq!(f_s(&r3, 2, &t(&[0, 1])).unwrap(), f_s(&r3, 2, &t(&[2, 2])).unwrap());
    assert_eq!(
        homotopy_d(&r3, 1, &t(&[0, 1])).unwrap(),
        chain(&[(&[0, 0, 1], 1), (&[0, 1, 1], 1), (&[0, 2, 1], 1)])
    );
    assert_eq!(
        homotopy_d(&r3, 2, &t(&[0, 1])).unwrap(),
        chain(&[(&[1, 1, 0], 1), (&[1, 1, 1], 1), (&[1, 1, 2], 1)])
    );
    assert_eq!(
        homotopy_f(&r3, 1, &t(&[0, 1])).unwrap(),
        chain(&[(&[0, 0, 1], 1), (&[1, 0, 1], 1), (&[2, 0, 1], 1)])
    );
    assert!(homotopy_d(&r3, 0, &t(&[0, 1])).is_err());
    let g = composite_homotopy_g(&r3, &t(&[1]));
    let expected = -(homotopy_d(&r3, 1, &t(&[1])).unwrap() + homotopy_f(&r3, 1, &t(&[1])).unwrap());
    assert_eq!(g, expected);
}

#[test]
fn identity_examples() {
    let opts = exhaustive();
    let r3 = dihedral(3).unwrap();
    let r5 = dihedral(5).unwrap();
    let r7 = dihedral(7).unwrap();
    assert!(verify_homotopy_identity_d(&r3, 1, 2, &opts).unwrap().passed);
    assert!(verify_homotopy_identity_d(&r5, 2, 3, &opts).unwrap().passed);
    assert!(verify_homotopy_identity_f(&r3, 1, 2, &opts).unwrap().passed);
    assert!(verify_homotopy_identity_f(&r3, 2, 2, &opts).unwrap().passed);
    assert!(verify_homotopy_identity_f(&r7, 1, 2, &opts).unwrap().passed);
    for n in 1..=3 {
        assert!(verify_composite_homotopy(&r3, n, &opts).unwrap().passed);
    }
    let g5 = verify_composite_homotopy(&r5, 2, &opts).unwrap();
    assert!(g5.passed);
    assert_eq!(g5.clauses[0].checked, 25);

    let r4 = dihedral(4).unwrap();
    assert!(verify_homotopy_identity_d(&r4, 1, 2, &opts).is_err());
    let failing = verify_homotopy_identity_d(
        &r4,
        1,
        2,
        &VerifyOptions {
            expect_failure: true,
            ..opts
        },
    )
    .unwrap();
    assert!(!failing.passed);
    assert!(failing.first_failure().unwrap().witness.is_some());
}

#[test]
fn precubic_examples() {
    let opts = exhaustive();
    for q in [dihedral(3).unwrap(), dihedral(5).unwrap()] {
        let report = verify_precubic_homotopy(&PrecubicHomotopyData::rack_instance(&q), 2, &opts).unwrap();
        assert!(report.passed, "{}", report.to_json());
    }
    let swapped = PrecubicHomotopyData::rack_instance(&dihedral(3).unwrap()).swap_homotopies(2);
    let report = verify_precubic_homotopy(&swapped, 2, &opts).unwrap();
    assert!(!report.passed);
    assert!(report.first_failure().unwrap().witness.is_some());
}

#[test]
fn multi_term_examples() {
    let opts = exhaustive();
    let r3 = dihedral(3).unwrap();
    let rack = MultiTermSpec::rack(&r3).unwrap();
    assert!(verify_multi_term_homotopy(&rack, 2, &opts).unwrap().passed);
    // With coefficients (1, -1) the homotopies are those of the rack complex.
    let (d, f) = multi_term_homotopies(&rack, 1, &t(&[0, 1])).unwrap();
    assert_eq!(d, homotopy_d(&r3, 1, &t(&[0, 1])).unwrap());
    assert_eq!(f, homotopy_f(&r3, 1, &t(&[0, 1])).unwrap());

    let a = alexander(5, 2).unwrap();
    let b = alexander(5, 3).unwrap();
    let spec = MultiTermSpec::new(DistributiveSet::with_trivial(&[&a, &b]).unwrap(), vec![2, -1, -1]).unwrap();
    let report = verify_multi_term_homotopy(&spec, 2, &opts).unwrap();
    assert!(report.passed);

    let bad = MultiTermSpec::new(DistributiveSet::with_trivial(&[&r3]).unwrap(), vec![1, -2]).unwrap();
    let err = verify_multi_term_homotopy(&bad, 2, &opts).unwrap_err();
    assert!(err.to_string().contains("coefficient sum nonzero"), "{err}");
}

/// Rack-complex faces of an arbitrary rack table, with the rack-complex
/// `D` and `F` as homotopies.
fn rack_data(size: usize, table: Vec<u32>, label: String) -> PrecubicHomotopyData {
    let base = PrecubicHomotopyData::rack_instance(&trivial(size).unwrap());
    let table = Arc::new(table);
    PrecubicHomotopyData {
        label,
        faces: Arc::new(move |e, i, x| {
            let mut v = x.entries().to_vec();
            let xi = v.remove(i - 1);
            if e == 1 {
                for a in &mut v[..i - 1] {
                    *a = table[*a as usize * size + xi as usize];
                }
            }
            Chain::basis(BasisTuple::new(v))
        }),
        ..base
    }
}

fn table_of(q: &FiniteQuandle) -> Vec<u32> {
    let n = q.size() as u32;
    (0..n).flat_map(|a| (0..n).map(move |b| q.apply(a, b))).collect()
}

/// `a * b = σ(a)`: a rack for every permutation `σ`, never a quasigroup
/// once `|X| > 1`.
fn permutation_rack(sigma: &[u32]) -> Vec<u32> {
    let n = sigma.len();
    (0..n * n).map(|k| sigma[k / n]).collect()
}

fn relabel(q: &FiniteQuandle, pi: &[u32]) -> FiniteQuandle {
    let mut inv = vec![0u32; pi.len()];
    for (a, &b) in pi.iter().enumerate() {
        inv[b as usize] = a as u32;
    }
    let op = FiniteBinaryOp::from_fn(q.size(), |a, b| pi[q.apply(inv[a as usize], inv[b as usize]) as usize]).unwrap();
    FiniteQuandle::new(op, format!("{} relabeled", q.label())).unwrap()
}

fn latin() -> impl Strategy<Value = (FiniteQuandle, Vec<u32>)> {
    prop_oneof![
        Just((3usize, 2i64)),
        Just((5, 2)),
        Just((5, 3)),
        Just((5, 4)),
        Just((7, 3)),
        Just((7, 6)),
    ]
    .prop_flat_map(|(p, s)| {
        let q = alexander(p, s).unwrap();
        (Just(q), Just((0..p as u32).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn precubic_premises_imply_conclusion(
        sigma in (2usize..5).prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()),
        (q, pi) in latin(),
        use_latin in any::<bool>(),
        n in 1usize..4,
    ) {
        let data = if use_latin {
            let r = relabel(&q, &pi);
            rack_data(r.size(), table_of(&r), r.label().to_string())
        } else {
            rack_data(sigma.len(), permutation_rack(&sigma), format!("permutation rack {sigma:?}"))
        };
        let report = verify_precubic_homotopy(&data, n, &exhaustive()).unwrap();
        if use_latin {
            prop_assert!(premises_hold(&report), "{}", report.to_json());
        }
        if premises_hold(&report) {
            prop_assert!(conclusion_holds(&report), "{}", report.to_json());
        }
    }

    #[test]
    fn presimplicial_premises_imply_conclusion(
        p in (2usize..5).prop_flat_map(|n| prop::collection::vec(0..n as u32, n)),
        n in 1usize..4,
    ) {
        let data = PresimplicialHomotopyData::insertion(p.len(), p).unwrap();
        let report = verify_presimplicial_homotopy(&data, n, &exhaustive()).unwrap();
        if premises_hold(&report) {
            prop_assert!(conclusion_holds(&report), "{}", report.to_json());
        }
    }

    #[test]
    fn relabeled_latin_quandles_satisfy_every_identity((q, pi) in latin()) {
        let r = relabel(&q, &pi);
        prop_assert!(r.is_quasigroup());
        prop_assert!(precubic_relation_failure(r.op(), 3).is_none());
        let opts = exhaustive();
        for j in 1..=2 {
            prop_assert!(verify_homotopy_identity_d(&r, j, 2, &opts).unwrap().passed);
            prop_assert!(verify_homotopy_identity_f(&r, j, 2, &opts).unwrap().passed);
        }
        prop_assert!(verify_composite_homotopy(&r, 2, &opts).unwrap().passed);
        let report = verify_precubic_homotopy(&PrecubicHomotopyData::rack_instance(&r), 2, &opts).unwrap();
        prop_assert!(report.passed);
    }

    #[test]
    fn relabeling_preserves_rack_homology((q, pi) in latin()) {
        let r = relabel(&q, &pi);
        let hi = if q.size() > 5 { 2 } else { 3 };
        let before = complex_homology(&ChainComplex::new(&q, ComplexTheory::Rack).unwrap(), 1..=hi, SnfStrategy::Sparse).unwrap();
        let after = complex_homology(&ChainComplex::new(&r, ComplexTheory::Rack).unwrap(), 1..=hi, SnfStrategy::Sparse).unwrap();
        prop_assert_eq!(&before, &after);
        let order = BigInt::from(q.size());
        prop_assert!(after.iter().all(|h| h.torsion_annihilated_by(&order)));
    }

    #[test]
    fn even_dihedral_quandles_break_the_d_identity(k in 2usize..5) {
        let q = dihedral(2 * k).unwrap();
        let opts = VerifyOptions { expect_failure: true, ..exhaustive() };
        let report = verify_homotopy_identity_d(&q, 1, 2, &opts).unwrap();
        prop_assert!(!report.passed);
        prop_assert!(!report.notes.is_empty());
    }
}
