use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Element;

/// A basis element `(x_1, .., x_n)` of `Z X^n`.
///
/// Tuples of equal degree are ordered lexicographically, which is also the
/// order of [`BasisTuple::rank`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisTuple(Vec<Element>);

impl BasisTuple {
    pub fn new(entries: Vec<Element>) -> Self {
        BasisTuple(entries)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Element] {
        &self.0
    }

    /// Entry `x_i` using 1-based indexing.
    #[inline]
    pub fn x(&self, i: usize) -> Element {
        self.0[i - 1]
    }

    /// Lexicographic index among all tuples of this degree over `size` elements.
    pub fn rank(&self, size: usize) -> u64 {
        rank_of(&self.0, size)
    }

    pub fn unrank(mut index: u64, size: usize, degree: usize) -> Self {
        let mut entries = vec![0; degree];
        for slot in entries.iter_mut().rev() {
            *slot = (index % size as u64) as Element;
            index /= size as u64;
        }
        BasisTuple(entries)
    }

    /// Some adjacent pair is equal.
    pub fn is_degenerate(&self) -> bool {
        is_degenerate(&self.0)
    }

    /// All tuples of `degree` over `size` elements in lexicographic order.
    pub fn all(size: usize, degree: usize) -> impl Iterator<Item = BasisTuple> {
        let total = (size as u64).pow(degree as u32);
        (0..total).map(move |r| BasisTuple::unrank(r, size, degree))
    }
}

impl From<Vec<Element>> for BasisTuple {
    fn from(v: Vec<Element>) -> Self {
        BasisTuple(v)
    }
}

impl<const N: usize> From<[Element; N]> for BasisTuple {
    fn from(v: [Element; N]) -> Self {
        BasisTuple(v.to_vec())
    }
}

impl fmt::Debug for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn rank_of(entries: &[Element], size: usize) -> u64 {
    entries
        .iter()
        .fold(0u64, |acc, &x| acc * size as u64 + x as u64)
}

#[inline]
pub(crate) fn is_degenerate(entries: &[Element]) -> bool {
    entries.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degeneracy() {
        assert!(BasisTuple::from([0, 0, 1]).is_degenerate());
        assert!(!BasisTuple::from([0, 1, 0]).is_degenerate());
        assert!(!BasisTuple::from([4]).is_degenerate());
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for size in 1..4 {
            for degree in 0..=4 {
                let all: Vec<_> = BasisTuple::all(size, degree).collect();
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                for (i, t) in all.iter().enumerate() {
                    assert_eq!(t.rank(size), i as u64);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn unrank_inverts_rank(size in 1usize..8, entries in prop::collection::vec(0u32..8, 0..=4)) {
            let t = BasisTuple::new(entries.into_iter().map(|x| x % size as u32).collect());
            prop_assert_eq!(BasisTuple::unrank(t.rank(size), size, t.degree()), t);
        }
    }
}
