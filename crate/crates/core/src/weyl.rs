//! Weyl group enumeration by closure of the generator matrices.

use crate::linalg::*;
use crate::root_datum::RootDatum;
use std::collections::HashMap;
use thiserror::Error;

pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("Weyl closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
}

/// A fully enumerated Weyl group, acting on stored weight coordinates.
/// Element 0 is the identity; each element carries one generator word.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<IMat>,
    pub words: Vec<Vec<usize>>,
    index: HashMap<IMat, usize>,
}

impl WeylGroup {
    pub fn enumerate(d: &RootDatum, cap: usize) -> Result<WeylGroup, WeylError> {
        let mut elements = vec![IMat::identity(d.rank)];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            let current = elements[cursor].clone();
            let word = words[cursor].clone();
            for (gi, g) in d.weyl_generators.iter().enumerate() {
                let next = g.mul(&current);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(WeylError::CapExceeded(cap));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    let mut w = vec![gi];
                    w.extend(&word);
                    words.push(w);
                }
            }
            cursor += 1;
        }
        Ok(WeylGroup { elements, words, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &IMat {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &IMat) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the product u·v (u after v as matrices on weights).
    pub fn mul(&self, u: usize, v: usize) -> usize {
        let m = self.elements[u].mul(&self.elements[v]);
        *self.index.get(&m).expect("Weyl group not closed under multiplication")
    }

    pub fn inv(&self, u: usize) -> usize {
        let m = inverse_unimodular(&self.elements[u]).expect("Weyl matrix not unimodular");
        *self.index.get(&m).expect("Weyl group not closed under inversion")
    }

    /// The index of -identity, when the group contains it.
    pub fn minus_identity(&self) -> Option<usize> {
        let n = self.elements[0].rows;
        self.index_of(&IMat::identity(n).scale(-1))
    }

    /// Applies element `u` to a stored weight vector.
    pub fn act(&self, u: usize, v: &[i64]) -> IVec {
        self.elements[u].mul_vec(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::*;

    #[test]
    fn orders() {
        let su2 = build_simple(Family::SU, 2).unwrap();
        assert_eq!(WeylGroup::enumerate(&su2, 100).unwrap().len(), 2);
        let sp2 = build_simple(Family::Sp, 2).unwrap();
        assert_eq!(WeylGroup::enumerate(&sp2, 100).unwrap().len(), 8);
        let su4 = build_simple(Family::SU, 4).unwrap();
        assert_eq!(WeylGroup::enumerate(&su4, 100).unwrap().len(), 24);
        let spin8 = build_simple(Family::Spin, 8).unwrap();
        assert_eq!(WeylGroup::enumerate(&spin8, 1000).unwrap().len(), 192);
        let torus = build_torus(3);
        assert_eq!(WeylGroup::enumerate(&torus, 10).unwrap().len(), 1);
    }

    #[test]
    fn quotient_has_same_weyl_group() {
        let su2 = build_simple(Family::SU, 2).unwrap();
        let three = product(&product(&su2, &su2), &su2);
        let q = central_quotient(&three, &[(vec![1, 1, 0], 2), (vec![0, 1, 1], 2)]).unwrap();
        let w = WeylGroup::enumerate(&q, 100).unwrap();
        assert_eq!(w.len(), 8);
        assert!(w.minus_identity().is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let sp3 = build_simple(Family::Sp, 3).unwrap();
        assert_eq!(
            WeylGroup::enumerate(&sp3, 10).unwrap_err(),
            WeylError::CapExceeded(10)
        );
    }

    #[test]
    fn words_reconstruct_elements() {
        let sp2 = build_simple(Family::Sp, 2).unwrap();
        let w = WeylGroup::enumerate(&sp2, 100).unwrap();
        for i in 0..w.len() {
            let mut m = IMat::identity(sp2.rank);
            for &g in &w.words[i] {
                m = m.mul(&sp2.weyl_generators[g]);
            }
            assert_eq!(&m, w.element(i));
        }
    }

    #[test]
    fn product_with_sp1_doubles_order() {
        let sp1 = build_simple(Family::Sp, 1).unwrap();
        let t = build_torus(2);
        let d = product(&t, &sp1);
        assert_eq!(WeylGroup::enumerate(&d, 10).unwrap().len(), 2);
    }
}
