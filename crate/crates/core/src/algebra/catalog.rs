//! Standard finite quandles.
//!
//! Enumeration orders: cyclic groups in natural order, products of cyclic
//! groups lexicographically by coordinates (first coordinate most
//! significant), conjugation quandles in the order the class is given.

use std::collections::HashMap;

use num_integer::Integer;

use super::{Element, FiniteBinaryOp, FiniteQuandle};
use crate::error::{Error, Result};

/// `a * b = a` on `n` points.
pub fn trivial(n: usize) -> Result<FiniteQuandle> {
    FiniteQuandle::new(FiniteBinaryOp::trivial(n)?, format!("Triv{n}"))
}

/// The dihedral quandle `R_n`: `Z_n` with `a * b = 2b - a`.
pub fn dihedral(n: usize) -> Result<FiniteQuandle> {
    if n == 0 {
        return Err(Error::InvalidParameter("dihedral quandle needs n >= 1".into()));
    }
    let m = n as u64;
    let op = FiniteBinaryOp::from_fn(n, |a, b| ((2 * b as u64 + m - a as u64) % m) as Element)?;
    FiniteQuandle::new(op, format!("R{n}"))
}

/// The Takasaki quandle of `Z_{n1} x ... x Z_{nk}` with `a * b = 2b - a`.
pub fn takasaki(factors: &[usize]) -> Result<FiniteQuandle> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("takasaki quandle needs at least one factor".into()));
    }
    if factors.contains(&0) {
        return Err(Error::InvalidParameter("cyclic factor orders must be >= 1".into()));
    }
    let size: usize = factors.iter().product();
    let decode = |mut x: usize| -> Vec<usize> {
        let mut coords = vec![0; factors.len()];
        for (slot, &f) in coords.iter_mut().zip(factors).rev() {
            *slot = x % f;
            x /= f;
        }
        coords
    };
    let encode = |coords: &[usize]| -> usize {
        coords.iter().zip(factors).fold(0, |acc, (&c, &f)| acc * f + c)
    };
    let op = FiniteBinaryOp::from_fn(size, |a, b| {
        let (ca, cb) = (decode(a as usize), decode(b as usize));
        let c: Vec<usize> = ca
            .iter()
            .zip(&cb)
            .zip(factors)
            .map(|((&x, &y), &f)| (2 * y + f - x) % f)
            .collect();
        encode(&c) as Element
    })?;
    let label = factors
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("x");
    FiniteQuandle::new(op, format!("T({label})"))
}

/// The Alexander quandle on `Z_n` with `a * b = t a + (1 - t) b`.
pub fn alexander(n: usize, t: i64) -> Result<FiniteQuandle> {
    if n == 0 {
        return Err(Error::InvalidParameter("alexander quandle needs n >= 1".into()));
    }
    let m = n as i64;
    let t = t.mod_floor(&m);
    if t.gcd(&m) != 1 {
        return Err(Error::InvalidParameter(format!(
            "alexander quandle needs gcd(t, n) = 1, got t = {t}, n = {n}"
        )));
    }
    let s = (1 - t).mod_floor(&m);
    let op = FiniteBinaryOp::from_fn(n, |a, b| ((t * a as i64 + s * b as i64) % m) as Element)?;
    FiniteQuandle::new(op, format!("Alex({n},{t})"))
}

/// A permutation of `{0, .., m-1}` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<Element>);

impl Permutation {
    pub fn new(images: Vec<Element>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x as usize >= m || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((0..m as Element).collect())
    }

    /// The transposition swapping `i` and `j` on `m` points.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(m);
        p.0.swap(i, j);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[Element] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as Element;
        }
        Permutation(inv)
    }

    /// `b⁻¹ ∘ self ∘ b`.
    pub fn conjugate_by(&self, b: &Permutation) -> Permutation {
        b.inverse().compose(&self.compose(b))
    }
}

/// The conjugation quandle on a class of permutations: `a * b = b⁻¹ a b`,
/// elements indexed by position in `class`.
pub fn conjugation(class: &[Permutation], label: impl Into<String>) -> Result<FiniteQuandle> {
    let first = class
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty conjugation class".into()))?;
    if class.iter().any(|p| p.degree() != first.degree()) {
        return Err(Error::InvalidParameter("permutations of different degrees".into()));
    }
    let index: HashMap<&Permutation, usize> = class.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if index.len() != class.len() {
        return Err(Error::InvalidParameter("repeated class element".into()));
    }
    let n = class.len();
    let mut rows = vec![vec![0u64; n]; n];
    for (a, pa) in class.iter().enumerate() {
        for (b, pb) in class.iter().enumerate() {
            let c = pa.conjugate_by(pb);
            rows[a][b] = *index.get(&c).ok_or(Error::ClassNotClosed { a, b })? as u64;
        }
    }
    FiniteQuandle::new(FiniteBinaryOp::from_table(n, &rows)?, label)
}

/// The closure of `{rep}` under conjugation by `generators`, in discovery order.
pub fn conjugacy_class(generators: &[Permutation], rep: &Permutation) -> Vec<Permutation> {
    let mut class = vec![rep.clone()];
    let mut seen: std::collections::HashSet<Permutation> = class.iter().cloned().collect();
    let mut next = 0;
    while next < class.len() {
        let p = class[next].clone();
        next += 1;
        for g in generators {
            let c = p.conjugate_by(g);
            if seen.insert(c.clone()) {
                class.push(c);
            }
        }
    }
    class
}

/// The six transpositions of `S_4` under conjugation, ordered
/// `(01), (02), (03), (12), (13), (23)`.
pub fn s4_transpositions() -> Result<FiniteQuandle> {
    let class: Vec<Permutation> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| Permutation::transposition(4, i, j)))
        .collect();
    conjugation(&class, "ConjS4T")
}
