//! Clause-by-clause verification over tuple bases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{BasisTuple, Chain};

/// Evaluations allowed per clause before switching to sampling.
pub const DEFAULT_BUDGET: u64 = 10_000;

const SAMPLE_SEED: u64 = 0x51ab_1e5e_ed00_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Maximum basis tuples evaluated per clause. Larger bases are sampled,
    /// one tuple per equal-width stratum of the lexicographic order.
    pub budget: u64,
    /// Run even when the hypotheses of the identity are not met.
    pub expect_failure: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            expect_failure: false,
        }
    }
}

/// A basis tuple on which the two sides differ, with both sides expanded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tuple: BasisTuple,
    pub lhs: Chain,
    pub rhs: Chain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub name: String,
    pub passed: bool,
    /// Informational clauses are reported but never fail the report.
    pub informational: bool,
    /// Tuples evaluated.
    pub checked: u64,
    /// Size of the basis the tuples were drawn from.
    pub basis_size: u64,
    pub sampled: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub subject: String,
    pub degree: usize,
    pub passed: bool,
    pub notes: Vec<String>,
    pub clauses: Vec<ClauseReport>,
}

impl VerificationReport {
    pub(crate) fn new(identity: impl Into<String>, subject: impl Into<String>, degree: usize) -> Self {
        VerificationReport {
            identity: identity.into(),
            subject: subject.into(),
            degree,
            passed: true,
            notes: Vec::new(),
            clauses: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, clause: ClauseReport) {
        if !clause.passed && !clause.informational {
            self.passed = false;
        }
        self.clauses.push(clause);
    }

    /// Appends the clauses of another report and any notes not already present.
    pub fn merge(&mut self, other: VerificationReport) {
        for note in other.notes {
            if !self.notes.contains(&note) {
                self.notes.push(note);
            }
        }
        for c in other.clauses {
            self.push(c);
        }
    }

    /// First failing non-informational clause.
    pub fn first_failure(&self) -> Option<&ClauseReport> {
        self.clauses.iter().find(|c| !c.passed && !c.informational)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseReport> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Ranks of the tuples to evaluate, and whether they are a sample.
pub(crate) fn select_ranks(size: usize, degree: usize, budget: u64) -> (Vec<u64>, u64, bool) {
    let total = (size as u128).pow(degree as u32);
    let budget = budget.max(1) as u128;
    if total <= budget {
        return ((0..total as u64).collect(), total as u64, false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ ((size as u64) << 32) ^ degree as u64);
    let ranks = (0..budget)
        .map(|k| {
            let lo = k * total / budget;
            let hi = (k + 1) * total / budget;
            rng.gen_range(lo..hi) as u64
        })
        .collect();
    (ranks, total.min(u64::MAX as u128) as u64, true)
}

/// Compares `lhs` and `rhs` on the selected degree-`degree` tuples.
/// The lexicographically first disagreement is reported.
pub(crate) fn check_clause<L, R>(
    name: impl Into<String>,
    informational: bool,
    size: usize,
    degree: usize,
    opts: &VerifyOptions,
    lhs: L,
    rhs: R,
) -> ClauseReport
where
    L: Fn(&BasisTuple) -> Chain + Sync,
    R: Fn(&BasisTuple) -> Chain + Sync,
{
    let (ranks, basis_size, sampled) = select_ranks(size, degree, opts.budget);
    let witness = ranks.par_iter().find_map_first(|&r| {
        let t = BasisTuple::unrank(r, size, degree);
        let (l, rr) = (lhs(&t), rhs(&t));
        (l != rr).then_some(Witness { tuple: t, lhs: l, rhs: rr })
    });
    ClauseReport {
        name: name.into(),
        passed: witness.is_none(),
        informational,
        checked: ranks.len() as u64,
        basis_size,
        sampled,
        witness,
    }
}
