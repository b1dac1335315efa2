use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::BasisTuple;

/// A formal integer combination of tuples of one degree. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<BasisTuple, BigInt>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(t: BasisTuple) -> Self {
        Self::term(t, BigInt::one())
    }

    pub fn term(t: BasisTuple, coeff: impl Into<BigInt>) -> Self {
        let mut c = Chain::zero(t.degree());
        c.add_term(t, coeff);
        c
    }

    /// Builds a chain from `(tuple, coefficient)` pairs; all tuples must have
    /// degree `degree`.
    pub fn from_terms<I, C>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisTuple, C)>,
        C: Into<BigInt>,
    {
        let mut c = Chain::zero(degree);
        for (t, k) in terms {
            c.add_term(t, k);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &BasisTuple) -> BigInt {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisTuple, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: BasisTuple, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        assert_eq!(t.degree(), self.degree, "tuple {t} in a degree-{} chain", self.degree);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * k);
        }
    }

    pub fn scale(mut self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        if k.is_zero() {
            self.terms.clear();
        } else {
            for c in self.terms.values_mut() {
                *c *= &k;
            }
        }
        self
    }

    /// Linear extension of a basis-level operator.
    pub fn map(&self, out_degree: usize, f: impl Fn(&BasisTuple) -> Chain) -> Chain {
        let mut out = Chain::zero(out_degree);
        for (t, c) in &self.terms {
            out.add_scaled(&f(t), c);
        }
        out
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Drops every term whose tuple fails `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&BasisTuple) -> bool) {
        self.terms.retain(|t, _| keep(t));
    }
}

impl AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        self.add_scaled(rhs, &BigInt::one());
    }
}

impl SubAssign<&Chain> for Chain {
    fn sub_assign(&mut self, rhs: &Chain) {
        self.add_scaled(rhs, &-BigInt::one());
    }
}

impl Add for Chain {
    type Output = Chain;
    fn add(mut self, rhs: Chain) -> Chain {
        self += &rhs;
        self
    }
}

impl Sub for Chain {
    type Output = Chain;
    fn sub(mut self, rhs: Chain) -> Chain {
        self -= &rhs;
        self
    }
}

impl Neg for Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scale(-1)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain[{}]({self})", self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    tuple: BasisTuple,
    #[serde(with = "crate::serde_int")]
    coeff: BigInt,
}

#[derive(Serialize, Deserialize)]
struct ChainRepr {
    degree: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Chain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChainRepr {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| TermRepr {
                    tuple: t.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ChainRepr::deserialize(d)?;
        if let Some(bad) = repr.terms.iter().find(|t| t.tuple.degree() != repr.degree) {
            return Err(serde::de::Error::custom(format!(
                "tuple {} in a degree-{} chain",
                bad.tuple, repr.degree
            )));
        }
        Ok(Chain::from_terms(
            repr.degree,
            repr.terms.into_iter().map(|t| (t.tuple, t.coeff)),
        ))
    }
}
