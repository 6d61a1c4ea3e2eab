//! Exterior-word canonicalization over the generator basis of Q(t)* tensor Q.

use crate::field::{Coords, Generator};
use crate::poly::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A strictly increasing word of basis generators.
pub type Word = Vec<Generator>;

/// Append a generator (logically at the right end) into a sorted word; the
/// sign counts the crossings as it bubbles back to its slot. None when the
/// generator repeats.
pub fn append_generator(word: &Word, g: &Generator) -> Option<(Word, i64)> {
    match word.binary_search(g) {
        Ok(_) => None,
        Err(pos) => {
            let mut w = word.clone();
            let crossings = w.len() - pos;
            w.insert(pos, g.clone());
            let sign = if crossings.is_multiple_of(2) { 1 } else { -1 };
            Some((w, sign))
        }
    }
}

/// Prepend a generator (logically at the left end) into a sorted word.
pub fn prepend_generator(word: &Word, g: &Generator) -> Option<(Word, i64)> {
    match word.binary_search(g) {
        Ok(_) => None,
        Err(pos) => {
            let mut w = word.clone();
            w.insert(pos, g.clone());
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            Some((w, sign))
        }
    }
}

/// Multilinear expansion of a wedge of coordinate vectors into canonical
/// words with antisymmetry signs applied and repeated generators dropped.
pub fn expand_wedge(slots: &[Coords]) -> BTreeMap<Word, Q> {
    let mut acc: BTreeMap<Word, Q> = BTreeMap::new();
    acc.insert(vec![], Q::from_integer(1.into()));
    for slot in slots {
        let mut next: BTreeMap<Word, Q> = BTreeMap::new();
        for (word, c) in &acc {
            for (g, e) in slot {
                if let Some((w, sign)) = append_generator(word, g) {
                    let add = c * e * Q::from_integer(sign.into());
                    let entry = next.entry(w).or_insert_with(Q::zero);
                    *entry += add;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

/// Wedge an extra vector onto the front of an existing canonical word.
pub fn prepend_vector(v: &Coords, word: &Word) -> BTreeMap<Word, Q> {
    let mut out = BTreeMap::new();
    for (g, e) in v {
        if let Some((w, sign)) = prepend_generator(word, g) {
            let entry = out.entry(w).or_insert_with(Q::zero);
            *entry += e * Q::from_integer(sign.into());
        }
    }
    out.retain(|_, c: &mut Q| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::poly::{q_int, Poly};

    #[test]
    fn wedge_of_element_with_itself_vanishes() {
        let t = FieldElement::var().coordinates();
        let out = expand_wedge(&[t.clone(), t]);
        assert!(out.is_empty());
    }

    #[test]
    fn expansion_is_antisymmetric() {
        let a = FieldElement::var().coordinates();
        let b = FieldElement::build(&q_int(1), &[(Poly::from_ints(&[-3, 1]), q_int(1))])
            .unwrap()
            .coordinates();
        let ab = expand_wedge(&[a.clone(), b.clone()]);
        let ba = expand_wedge(&[b, a]);
        for (w, c) in &ab {
            assert_eq!(ba.get(w), Some(&-c.clone()));
        }
    }

    #[test]
    fn composite_slots_expand_linearly() {
        // t/(t-3) wedge (t-3) = t ^ (t-3)  (the (t-3)^(t-3) part dies)
        let f = FieldElement::build(
            &q_int(1),
            &[
                (Poly::t(), q_int(1)),
                (Poly::from_ints(&[-3, 1]), q_int(-1)),
            ],
        )
        .unwrap();
        let g = FieldElement::build(&q_int(1), &[(Poly::from_ints(&[-3, 1]), q_int(1))]).unwrap();
        let out = expand_wedge(&[f.coordinates(), g.coordinates()]);
        assert_eq!(out.len(), 1);
        // generator order puts t-3 before t, so t ^ (t-3) = -[t-3, t]
        let word = vec![
            Generator::Poly(Poly::from_ints(&[-3, 1])),
            Generator::Poly(Poly::t()),
        ];
        assert_eq!(out.get(&word), Some(&q_int(-1)));
    }
}
