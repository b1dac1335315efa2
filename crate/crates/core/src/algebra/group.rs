//! Order of the inner automorphism group by naive closure.
//!
//! Elements are enumerated explicitly, so this is meant for groups of at
//! most a few thousand elements (quandles of order up to about 10).

use std::collections::HashSet;

use super::{Element, FiniteBinaryOp};

/// Order of the permutation group generated by the right translations of `op`.
///
/// The translations must be bijections; non-bijective translations are
/// closed under composition as a monoid, which this does not distinguish.
pub fn inner_group_order(op: &FiniteBinaryOp) -> u64 {
    let n = op.size();
    let generators: Vec<Vec<Element>> = {
        let mut g: Vec<_> = (0..n as Element).map(|b| op.right_translation(b)).collect();
        g.sort();
        g.dedup();
        g
    };
    let identity: Vec<Element> = (0..n as Element).collect();
    let mut seen: HashSet<Vec<Element>> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &generators {
            let q: Vec<Element> = p.iter().map(|&x| g[x as usize]).collect();
            if !seen.contains(&q) {
                seen.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    seen.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alexander, dihedral, s4_transpositions, trivial};

    #[test]
    fn trivial_group() {
        assert_eq!(inner_group_order(trivial(3).unwrap().op()), 1);
    }

    #[test]
    fn dihedral_r3_generates_s3() {
        // Reflections of a triangle generate all six symmetries.
        assert_eq!(inner_group_order(dihedral(3).unwrap().op()), 6);
    }

    #[test]
    fn transpositions_of_s4() {
        assert_eq!(inner_group_order(s4_transpositions().unwrap().op()), 24);
    }

    #[test]
    fn alexander_inner_group() {
        // Translations x ↦ 2x + (1-2)b generate the affine maps x ↦ 2^k x + c.
        assert_eq!(inner_group_order(alexander(5, 2).unwrap().op()), 20);
    }
}
