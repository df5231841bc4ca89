//! An independent word model of the Coxeter group `W'`, used as an oracle.
//!
//! Elements are canonical reduced words computed purely by string rewriting
//! with the defining braid relations, with no reference to the matrix
//! realization.  Agreement between the two models (group law, lengths,
//! canonical forms) over a breadth-first enumeration is strong evidence that
//! the matrix realization is a faithful model of the presented group.

use crate::weyl::{Element, Gen, COXETER_M, RANK};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

type Word = Vec<u8>;

/// All words obtainable from `w` by braid moves (each preserving length).
pub fn braid_closure(word: &[u8]) -> BTreeSet<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut frontier: Vec<Word> = vec![word.to_vec()];
    seen.insert(word.to_vec());
    while let Some(w) = frontier.pop() {
        for pos in 0..w.len() {
            for other in 0..RANK as u8 {
                let a = w[pos];
                if other == a {
                    continue;
                }
                let m = COXETER_M[a as usize][other as usize] as usize;
                // Does the alternating pattern a, other, a, ... of length m
                // start at pos?
                if pos + m > w.len() {
                    continue;
                }
                let matches = (0..m).all(|i| w[pos + i] == if i % 2 == 0 { a } else { other });
                if !matches {
                    continue;
                }
                let mut next = w.clone();
                for (i, slot) in next[pos..pos + m].iter_mut().enumerate() {
                    *slot = if i % 2 == 0 { other } else { a };
                }
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    seen
}

/// Canonical form of an arbitrary word: repeatedly, if any braid-equivalent
/// word contains a repeated adjacent letter, delete that pair and start over;
/// otherwise return the lexicographically smallest equivalent word.  By the
/// standard theory of Coxeter systems (Matsumoto/Tits), two words represent
/// the same group element iff they have the same canonical form, and the
/// canonical form of a reduced word is reduced.
pub fn canonical_form(word: &[u8]) -> Word {
    let mut w = word.to_vec();
    'outer: loop {
        let closure = braid_closure(&w);
        for cand in &closure {
            if let Some(i) = (1..cand.len()).find(|&i| cand[i] == cand[i - 1]) {
                let mut shorter = cand.clone();
                shorter.drain(i - 1..=i);
                w = shorter;
                continue 'outer;
            }
        }
        return closure.into_iter().next().expect("closure is never empty");
    }
}

/// Outcome of the word-model / matrix-model comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ModelComparison {
    pub max_length: u32,
    pub elements: usize,
    pub elements_by_length: Vec<usize>,
    pub products_checked: usize,
    pub mismatches: usize,
    pub pass: bool,
}

/// Enumerates `W'` up to the given length in both models simultaneously and
/// cross-checks: equal canonical forms must mean equal matrices (and
/// conversely), lengths must agree, and the two group laws must match on
/// every (element, generator) product.
pub fn compare_models(max_length: u32) -> ModelComparison {
    // Map from word-model canonical form to the matrix-model element.
    let mut table: BTreeMap<Word, Element> = BTreeMap::new();
    table.insert(Vec::new(), Element::identity());
    let mut frontier: Vec<Word> = vec![Vec::new()];
    let mut mismatches = 0usize;
    let mut products = 0usize;
    let mut by_length = vec![1usize];

    for level in 1..=max_length {
        let mut next: Vec<Word> = Vec::new();
        for w in &frontier {
            let el = table[w];
            for g in 0..RANK as u8 {
                products += 1;
                let mut extended = w.clone();
                extended.push(g);
                let nf = canonical_form(&extended);
                let el2 = el.right_mul_gen(Gen::new(g).unwrap());
                // Length agreement between the models.
                if nf.len() as u32 != el2.length() {
                    mismatches += 1;
                    continue;
                }
                // Canonical word agreement: the matrix model's canonical word
                // (smallest-descent-first) is exactly the lex-min reduced word.
                let matrix_word: Word =
                    el2.canonical_word().iter().map(|g| u8::from(*g)).collect();
                if matrix_word != nf {
                    mismatches += 1;
                    continue;
                }
                if nf.len() as u32 == level {
                    match table.get(&nf) {
                        Some(known) => {
                            if *known != el2 {
                                mismatches += 1;
                            }
                        }
                        None => {
                            table.insert(nf.clone(), el2);
                            next.push(nf);
                        }
                    }
                } else if let Some(known) = table.get(&nf) {
                    // Shorter element revisited: matrices must agree.
                    if *known != el2 {
                        mismatches += 1;
                    }
                } else {
                    // A reduced word of length < level not seen before would
                    // mean breadth-first enumeration is broken.
                    mismatches += 1;
                }
            }
        }
        by_length.push(next.len());
        frontier = next;
    }

    ModelComparison {
        max_length,
        elements: table.len(),
        elements_by_length: by_length,
        products_checked: products,
        mismatches,
        pass: mismatches == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_braid_pair() {
        // 23 and 32 are not braid-equivalent (order 4), but 2323 ~ 3232.
        let c = braid_closure(&[2, 3, 2, 3]);
        assert!(c.contains(&vec![3, 2, 3, 2]));
        assert_eq!(c.len(), 2);
        let c = braid_closure(&[2, 3]);
        assert_eq!(c.len(), 1);
        // Commuting pair.
        let c = braid_closure(&[0, 3]);
        assert!(c.contains(&vec![3, 0]));
    }

    #[test]
    fn canonical_form_reduces() {
        assert_eq!(canonical_form(&[2, 2]), Vec::<u8>::new());
        assert_eq!(canonical_form(&[0, 2, 0]), vec![0, 2, 0]);
        // s0 s2 s0 = s2 s0 s2 (order 3): lex-min is 020.
        assert_eq!(canonical_form(&[2, 0, 2]), vec![0, 2, 0]);
        // A word that reduces only after a braid move:
        // 0202 ~ 0020 -> 2 ... net length 2.
        assert_eq!(canonical_form(&[0, 2, 0, 2]).len(), 2);
        // 10 = 01 after the commuting move.
        assert_eq!(canonical_form(&[1, 0]), vec![0, 1]);
    }

    #[test]
    fn models_agree_to_length_5() {
        let report = compare_models(5);
        assert_eq!(report.mismatches, 0, "word/matrix model disagreement: {report:?}");
        assert!(report.pass);
        // Rank-4 group: exactly 4 elements of length 1; 1 of length 0.
        assert_eq!(report.elements_by_length[0], 1);
        assert_eq!(report.elements_by_length[1], 4);
        // Length 2: words ij with i != j (12 ordered pairs) minus identifications
        // from the three commuting pairs (01=10, 03=30, 13=31): 9 elements.
        assert_eq!(report.elements_by_length[2], 9);
    }
}
