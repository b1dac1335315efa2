//! Finite magmas, shelves, racks and quandles.
//!
//! Elements of an `n`-element structure are always the indices `0..n`.
//! Catalog constructors document how they enumerate the underlying set.

mod catalog;
mod group;
mod io;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::{
    alexander, conjugacy_class, conjugation, dihedral, s4_transpositions, takasaki, trivial,
    Permutation,
};
pub use group::inner_group_order;
pub use io::{parse_table, resolve, write_table};

/// An element index.
pub type Element = u32;

/// A binary operation on `{0, .., size-1}` stored as a row-major table:
/// `table[a * size + b] = a * b`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteBinaryOp {
    size: usize,
    table: Vec<Element>,
}

impl FiniteBinaryOp {
    /// Wraps a square table given as rows.
    pub fn from_table(n: usize, entries: &[Vec<u64>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySet);
        }
        if entries.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.len(),
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n as u64 {
                    return Err(Error::EntryOutOfRange {
                        row: a,
                        col: b,
                        value: v,
                        size: n,
                    });
                }
                table.push(v as Element);
            }
        }
        Ok(FiniteBinaryOp { size: n, table })
    }

    /// Builds a table from a closure; entries are reduced by the caller.
    pub fn from_fn(n: usize, f: impl Fn(Element, Element) -> Element) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySet);
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n as Element {
            for b in 0..n as Element {
                let v = f(a, b);
                if v as usize >= n {
                    return Err(Error::EntryOutOfRange {
                        row: a as usize,
                        col: b as usize,
                        value: v as u64,
                        size: n,
                    });
                }
                table.push(v);
            }
        }
        Ok(FiniteBinaryOp { size: n, table })
    }

    /// The trivial operation `a * b = a`.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::from_fn(n, |a, _| a)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, a: Element, b: Element) -> Element {
        self.table[a as usize * self.size + b as usize]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Element]> {
        self.table.chunks(self.size)
    }

    pub fn is_trivial(&self) -> bool {
        self.rows()
            .enumerate()
            .all(|(a, row)| row.iter().all(|&v| v as usize == a))
    }

    /// The right translation `a ↦ a * b` as an image vector.
    pub fn right_translation(&self, b: Element) -> Vec<Element> {
        (0..self.size as Element).map(|a| self.apply(a, b)).collect()
    }

    /// Checks every axiom exhaustively and records the first failure of each.
    pub fn validate(&self) -> AxiomReport {
        AxiomReport {
            shelf: first_failure(self.size, |a| self.shelf_failure(a)),
            rack: self.rack_check(),
            quandle: match (0..self.size as Element).find(|&a| self.apply(a, a) != a) {
                Some(a) => AxiomCheck::fail(AxiomWitness::NotIdempotent { a }),
                None => AxiomCheck::pass(),
            },
            quasigroup: self.quasigroup_check(),
        }
    }

    fn shelf_failure(&self, a: Element) -> Option<AxiomWitness> {
        distributivity_failure(self, self, a)
    }

    fn rack_check(&self) -> AxiomCheck {
        for b in 0..self.size as Element {
            if let Some(missing) = missing_value(self.size, (0..self.size as Element).map(|a| self.apply(a, b))) {
                return AxiomCheck::fail(AxiomWitness::NotBijective { b, missing });
            }
        }
        AxiomCheck::pass()
    }

    fn quasigroup_check(&self) -> AxiomCheck {
        // A row that is not onto is exactly a row where some equation a*x = b
        // fails to have a unique solution.
        for a in 0..self.size as Element {
            if let Some(b) = missing_value(self.size, (0..self.size as Element).map(|x| self.apply(a, x))) {
                return AxiomCheck::fail(AxiomWitness::NoLeftQuotient { a, b });
            }
        }
        AxiomCheck::pass()
    }
}

impl fmt::Debug for FiniteBinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

fn missing_value(n: usize, values: impl Iterator<Item = Element>) -> Option<Element> {
    let mut seen = vec![false; n];
    for v in values {
        seen[v as usize] = true;
    }
    seen.iter().position(|s| !s).map(|p| p as Element)
}

/// First `(a, b, c)` with fixed `a` violating `(a *l b) *r c = (a *r c) *l (b *r c)`.
fn distributivity_failure(
    left: &FiniteBinaryOp,
    right: &FiniteBinaryOp,
    a: Element,
) -> Option<AxiomWitness> {
    let n = left.size as Element;
    for b in 0..n {
        for c in 0..n {
            let lhs = right.apply(left.apply(a, b), c);
            let rhs = left.apply(right.apply(a, c), right.apply(b, c));
            if lhs != rhs {
                return Some(AxiomWitness::Triple { a, b, c });
            }
        }
    }
    None
}

/// Runs `probe` for every outer index in parallel and keeps the failure with
/// the smallest outer index, so the witness does not depend on scheduling.
fn first_failure(
    n: usize,
    probe: impl Fn(Element) -> Option<AxiomWitness> + Sync,
) -> AxiomCheck {
    let found = (0..n as Element)
        .into_par_iter()
        .filter_map(|a| probe(a).map(|w| (a, w)))
        .min_by_key(|(a, _)| *a);
    match found {
        Some((_, w)) => AxiomCheck::fail(w),
        None => AxiomCheck::pass(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    /// Self-distributivity fails at `(a, b, c)`.
    Triple { a: Element, b: Element, c: Element },
    /// The right translation by `b` misses `missing`.
    NotBijective { b: Element, missing: Element },
    /// `a * a != a`.
    NotIdempotent { a: Element },
    /// `a * x = b` has no solution.
    NoLeftQuotient { a: Element, b: Element },
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::Triple { a, b, c } => write!(f, "(a,b,c) = ({a},{b},{c})"),
            AxiomWitness::NotBijective { b, missing } => {
                write!(f, "translation by {b} never reaches {missing}")
            }
            AxiomWitness::NotIdempotent { a } => write!(f, "{a}*{a} != {a}"),
            AxiomWitness::NoLeftQuotient { a, b } => write!(f, "no x with {a}*x = {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub passed: bool,
    pub witness: Option<AxiomWitness>,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            passed: true,
            witness: None,
        }
    }

    fn fail(w: AxiomWitness) -> Self {
        AxiomCheck {
            passed: false,
            witness: Some(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub shelf: AxiomCheck,
    pub rack: AxiomCheck,
    pub quandle: AxiomCheck,
    pub quasigroup: AxiomCheck,
}

impl AxiomReport {
    /// Shelf, rack and idempotency all hold.
    pub fn is_quandle(&self) -> bool {
        self.shelf.passed && self.rack.passed && self.quandle.passed
    }

    fn first_quandle_failure(&self) -> Option<String> {
        [("shelf", &self.shelf), ("rack", &self.rack), ("quandle", &self.quandle)]
            .into_iter()
            .find(|(_, c)| !c.passed)
            .map(|(name, c)| match &c.witness {
                Some(w) => format!("{name} axiom fails: {w}"),
                None => format!("{name} axiom fails"),
            })
    }
}

/// A validated finite quandle together with cached structural facts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuandle {
    op: FiniteBinaryOp,
    orbits: Vec<Vec<Element>>,
    quasigroup: bool,
    label: String,
}

impl FiniteQuandle {
    pub fn new(op: FiniteBinaryOp, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let report = op.validate();
        if let Some(reason) = report.first_quandle_failure() {
            return Err(Error::NotAQuandle { label, reason });
        }
        let orbits = compute_orbits(&op);
        Ok(FiniteQuandle {
            quasigroup: report.quasigroup.passed,
            op,
            orbits,
            label,
        })
    }

    pub fn op(&self) -> &FiniteBinaryOp {
        &self.op
    }

    pub fn size(&self) -> usize {
        self.op.size
    }

    #[inline]
    pub fn apply(&self, a: Element, b: Element) -> Element {
        self.op.apply(a, b)
    }

    /// Orbits of the right action, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> &[Vec<Element>] {
        &self.orbits
    }

    pub fn is_connected(&self) -> bool {
        self.orbits.len() == 1
    }

    pub fn is_quasigroup(&self) -> bool {
        self.quasigroup
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn validate(&self) -> AxiomReport {
        self.op.validate()
    }

    pub fn inner_group_order(&self) -> u64 {
        inner_group_order(&self.op)
    }
}

/// Breadth-first closure under all right translations. The translations are
/// permutations of a finite set, so forward closure already contains the
/// inverse translations.
fn compute_orbits(op: &FiniteBinaryOp) -> Vec<Vec<Element>> {
    let n = op.size;
    let mut block = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if block[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start as Element];
        block[start] = id;
        let mut next = 0;
        while next < members.len() {
            let a = members[next];
            next += 1;
            for b in 0..n as Element {
                let c = op.apply(a, b);
                if block[c as usize] == usize::MAX {
                    block[c as usize] = id;
                    members.push(c);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// Right-distributivity status of one ordered pair of operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub left: usize,
    pub right: usize,
    pub check: AxiomCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributiveReport {
    pub pairs: Vec<PairCheck>,
    /// Per operation index `>= 1`: whether `(X; *_i)` is a quandle.
    pub quandle: Vec<bool>,
    /// Per operation index `>= 1`: whether `(X; *_i)` is a quasigroup quandle.
    pub quasigroup: Vec<bool>,
}

impl DistributiveReport {
    pub fn all_distributive(&self) -> bool {
        self.pairs.iter().all(|p| p.check.passed)
    }

    pub fn first_failure(&self) -> Option<&PairCheck> {
        self.pairs.iter().find(|p| !p.check.passed)
    }
}

/// An ordered family of operations on one set whose first member is the
/// trivial operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributiveSet {
    size: usize,
    ops: Vec<FiniteBinaryOp>,
}

impl DistributiveSet {
    /// Checks sizes and that `ops[0]` is trivial; distributivity is reported by
    /// [`DistributiveSet::validate`].
    pub fn new(ops: Vec<FiniteBinaryOp>) -> Result<Self> {
        let first = ops.first().ok_or(Error::MissingTrivialOp)?;
        let size = first.size();
        for (index, op) in ops.iter().enumerate() {
            if op.size() != size {
                return Err(Error::SizeMismatch {
                    index,
                    expected: size,
                    found: op.size(),
                });
            }
        }
        if !first.is_trivial() {
            return Err(Error::MissingTrivialOp);
        }
        Ok(DistributiveSet { size, ops })
    }

    /// Prepends the trivial operation to the given quandles.
    pub fn with_trivial(quandles: &[&FiniteQuandle]) -> Result<Self> {
        let size = quandles.first().map(|q| q.size()).ok_or(Error::EmptySet)?;
        let mut ops = vec![FiniteBinaryOp::trivial(size)?];
        ops.extend(quandles.iter().map(|q| q.op().clone()));
        Self::new(ops)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ops(&self) -> &[FiniteBinaryOp] {
        &self.ops
    }

    pub fn validate(&self) -> DistributiveReport {
        let k = self.ops.len();
        let mut pairs = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let (l, r) = (&self.ops[i], &self.ops[j]);
                let check = first_failure(self.size, |a| distributivity_failure(l, r, a));
                pairs.push(PairCheck {
                    left: i,
                    right: j,
                    check,
                });
            }
        }
        let reports: Vec<_> = self.ops[1..].iter().map(|op| op.validate()).collect();
        DistributiveReport {
            pairs,
            quandle: reports.iter().map(|r| r.is_quandle()).collect(),
            quasigroup: reports
                .iter()
                .map(|r| r.is_quandle() && r.quasigroup.passed)
                .collect(),
        }
    }
}
