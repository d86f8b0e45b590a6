//! Words over an involution alphabet and ring sets.
//!
//! A ring set collects the cyclically reduced words of a fixed length whose
//! product is the group identity and which have no trivial strict cyclic
//! subproduct. For the Pauli alphabet and length 6 this is the local model
//! of a vertex in a puzzle: the cyclic word of the six tiles around a vertex
//! must be one of these words.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::finite::FiniteGroup;

/// Index into an ordered involution alphabet; for Pauli, 0=X, 1=Y, 2=Z.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(pub u8);

/// A word over the alphabet, stored as plain letter indices.
pub type Word = Vec<Letter>;

pub fn word_from_str(s: &str) -> Word {
    s.bytes()
        .map(|b| match b {
            b'X' => Letter(0),
            b'Y' => Letter(1),
            b'Z' => Letter(2),
            b'a'..=b'h' => Letter(b - b'a'),
            _ => panic!("bad letter {}", b as char),
        })
        .collect()
}

pub fn word_to_string(w: &[Letter], alphabet_size: usize) -> String {
    w.iter()
        .map(|l| {
            if alphabet_size == 3 {
                ['X', 'Y', 'Z'][l.0 as usize]
            } else {
                (b'a' + l.0) as char
            }
        })
        .collect()
}

/// No two adjacent letters equal.
pub fn is_linear_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

/// Linear reduced and first != last.
pub fn is_cyclically_reduced(w: &[Letter]) -> bool {
    is_linear_reduced(w) && (w.len() < 2 || w[0] != w[w.len() - 1])
}

/// All cyclically reduced words of the given length, lexicographic order.
pub fn enumerate_cyclically_reduced(length: usize, alphabet_size: usize) -> Vec<Word> {
    assert!(length >= 2, "length must be at least 2");
    let mut out = Vec::new();
    let mut word: Word = Vec::with_capacity(length);
    fn rec(word: &mut Word, length: usize, k: u8, out: &mut Vec<Word>) {
        if word.len() == length {
            if word[0] != word[length - 1] {
                out.push(word.clone());
            }
            return;
        }
        for l in 0..k {
            if word.last() != Some(&Letter(l)) {
                word.push(Letter(l));
                rec(word, length, k, out);
                word.pop();
            }
        }
    }
    rec(&mut word, length, alphabet_size as u8, &mut out);
    out
}

pub fn rotate(w: &[Letter], by: usize) -> Word {
    let n = w.len();
    (0..n).map(|i| w[(i + by) % n]).collect()
}

pub fn reverse(w: &[Letter]) -> Word {
    w.iter().rev().copied().collect()
}

/// Lexicographically least word in the orbit of w under rotation and
/// reversal (for involution letters, reversal is inversion).
pub fn canonical_class(w: &[Letter]) -> Word {
    let mut best: Option<Word> = None;
    let rev = reverse(w);
    for base in [w, rev.as_slice()] {
        for r in 0..w.len() {
            let cand = rotate(base, r);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// The set of cyclically reduced identity-evaluating words of a fixed
/// length with no trivial strict cyclic subproduct, over a chosen set of
/// involutions in a finite group.
#[derive(Clone, Debug)]
pub struct RingSet {
    alphabet_size: usize,
    word_len: usize,
    /// All member words, sorted; closed under rotation and reversal.
    words: Vec<Word>,
    word_set: BTreeSet<Word>,
    /// Lexicographically minimal orbit representatives, sorted.
    classes: Vec<Word>,
}

/// Filters the cyclically reduced words by identity evaluation and
/// subcycle-freeness in the group.
pub fn compute_ring_set(
    group: &FiniteGroup,
    involutions: &[u16],
    length: usize,
) -> Result<RingSet, Error> {
    for (i, &g) in involutions.iter().enumerate() {
        if !group.is_involution(g) {
            return Err(Error::NotAnInvolution { index: i });
        }
    }
    if involutions.is_empty() || involutions.len() > 8 {
        return Err(Error::BadAlphabet(involutions.len()));
    }

    let eval = |w: &[Letter]| -> u16 {
        w.iter().fold(group.identity(), |acc, l| {
            group.mul(acc, involutions[l.0 as usize])
        })
    };

    // A strict cyclic subproduct is a product of 1..len-1 consecutive
    // letters starting anywhere in the cyclic word.
    let subcycle_free = |w: &[Letter]| -> bool {
        let n = w.len();
        for start in 0..n {
            let mut acc = group.identity();
            for k in 0..n - 1 {
                acc = group.mul(acc, involutions[w[(start + k) % n].0 as usize]);
                if acc == group.identity() {
                    return false;
                }
            }
        }
        true
    };

    let words: Vec<Word> = enumerate_cyclically_reduced(length, involutions.len())
        .into_iter()
        .filter(|w| eval(w) == group.identity() && subcycle_free(w))
        .collect();

    let word_set: BTreeSet<Word> = words.iter().cloned().collect();
    let mut classes: Vec<Word> = words.iter().map(|w| canonical_class(w)).collect();
    classes.sort();
    classes.dedup();

    Ok(RingSet {
        alphabet_size: involutions.len(),
        word_len: length,
        words,
        word_set,
        classes,
    })
}

impl RingSet {
    /// Ring set of the Pauli alphabet {X, Y, Z} at length 6.
    pub fn pauli() -> RingSet {
        let p = FiniteGroup::pauli_group();
        let inv = [
            p.element("X").unwrap(),
            p.element("Y").unwrap(),
            p.element("Z").unwrap(),
        ];
        compute_ring_set(&p, &inv, 6).expect("pauli ring set")
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.word_set.contains(w)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Orbit representatives modulo cyclic rotation and inversion.
    pub fn fundamental_classes(&self) -> &[Word] {
        &self.classes
    }

    /// The distinct cyclic readings of a class: rotations of the
    /// representative and of its inverse, deduplicated.
    fn class_readings(&self, rep: &[Letter]) -> Vec<Word> {
        let mut set = BTreeSet::new();
        let rev = reverse(rep);
        for base in [rep, rev.as_slice()] {
            for r in 0..rep.len() {
                set.insert(rotate(base, r));
            }
        }
        set.into_iter().collect()
    }

    /// Counts, for a fixed subword length, how often each linear-reduced
    /// word occurs as a prefix of a reading of some class.
    fn subword_counts(&self, sub_len: usize) -> Vec<(Word, usize)> {
        let mut counts: BTreeMap<Word, usize> = BTreeMap::new();
        for rep in &self.classes {
            for reading in self.class_readings(rep) {
                let prefix: Word = reading[..sub_len].to_vec();
                *counts.entry(prefix).or_insert(0) += 1;
            }
        }
        let mut all: Vec<(Word, usize)> = Vec::new();
        for w in enumerate_linear_reduced(sub_len, self.alphabet_size) {
            let c = counts.get(&w).copied().unwrap_or(0);
            all.push((w, c));
        }
        all
    }

    /// Checks that every linear-reduced word of length 4 occurs at most once
    /// as a consecutive subword across all cyclic readings of the ring words
    /// and their inverses.
    pub fn npc_check(&self) -> NpcReport {
        let counts = self.subword_counts(4);
        let violations: Vec<(Word, usize)> = counts
            .iter()
            .filter(|(_, c)| *c > 1)
            .map(|(w, c)| (w.clone(), *c))
            .collect();
        NpcReport { pass: violations.is_empty(), counts, violations }
    }

    /// The unique ring word containing `prefix` as a consecutive subword,
    /// rotated so the prefix sits at position 0. None when no ring word
    /// contains the prefix. When the set fails NPC the lexicographically
    /// least completion is returned, which keeps the result deterministic.
    pub fn unique_ring_completion(&self, prefix: &[Letter]) -> Option<Word> {
        assert!(is_linear_reduced(prefix), "prefix must be linear reduced");
        assert!(prefix.len() < self.word_len);
        let mut found: BTreeSet<Word> = BTreeSet::new();
        for w in &self.words {
            // self.words is rotation-closed, so prefix-at-0 is enough.
            if w[..prefix.len()] == *prefix {
                found.insert(w.clone());
            }
        }
        found.into_iter().next()
    }

    /// All pairs (letter permutation, dihedral position action) preserving
    /// the set, from the exhaustive k! x 2L check.
    pub fn symmetries(&self) -> Vec<RingSymmetry> {
        let perms = permutations(self.alphabet_size as u8);
        let mut out = Vec::new();
        for perm in &perms {
            for reflect in [false, true] {
                for rot in 0..self.word_len {
                    let ok = self.words.iter().all(|w| {
                        let mut img: Word =
                            w.iter().map(|l| Letter(perm[l.0 as usize])).collect();
                        if reflect {
                            img = reverse(&img);
                        }
                        let img = rotate(&img, rot);
                        self.word_set.contains(&img)
                    });
                    if ok {
                        out.push(RingSymmetry {
                            letter_perm: perm.clone(),
                            rotate: rot as u8,
                            reflect,
                        });
                    }
                }
            }
        }
        out
    }

    /// The letter permutations that preserve the set (ignoring the dihedral
    /// part, under which the set is always closed).
    pub fn letter_symmetries(&self) -> Vec<Vec<u8>> {
        permutations(self.alphabet_size as u8)
            .into_iter()
            .filter(|perm| {
                self.words.iter().all(|w| {
                    let img: Word = w.iter().map(|l| Letter(perm[l.0 as usize])).collect();
                    self.word_set.contains(&img)
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct NpcReport {
    pub pass: bool,
    /// (word, occurrence count) for every linear-reduced word of length 4.
    pub counts: Vec<(Word, usize)>,
    pub violations: Vec<(Word, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSymmetry {
    pub letter_perm: Vec<u8>,
    pub rotate: u8,
    pub reflect: bool,
}

/// All linear-reduced (adjacent letters distinct) words of a given length.
pub fn enumerate_linear_reduced(length: usize, alphabet_size: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut word: Word = Vec::with_capacity(length);
    fn rec(word: &mut Word, length: usize, k: u8, out: &mut Vec<Word>) {
        if word.len() == length {
            out.push(word.clone());
            return;
        }
        for l in 0..k {
            if word.last() != Some(&Letter(l)) {
                word.push(Letter(l));
                rec(word, length, k, out);
                word.pop();
            }
        }
    }
    rec(&mut word, length, alphabet_size as u8, &mut out);
    out
}

fn permutations(k: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut items: Vec<u8> = (0..k).collect();
    fn heap(n: usize, items: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if n == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..n {
            heap(n - 1, items, out);
            if n.is_multiple_of(2) {
                items.swap(i, n - 1);
            } else {
                items.swap(0, n - 1);
            }
        }
    }
    heap(k as usize, &mut items, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{to_matrix, MAT_IDENTITY};
    use crate::pauli::pauli_eval;
    use proptest::prelude::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_cyclically_reduced(6, 3).len(), 66);
        assert_eq!(enumerate_cyclically_reduced(2, 3).len(), 6);
        assert_eq!(enumerate_cyclically_reduced(3, 2).len(), 0);
        assert_eq!(enumerate_linear_reduced(4, 3).len(), 24);
    }

    proptest! {
        #[test]
        fn enumeration_matches_chromatic_polynomial(len in 2usize..8, k in 2usize..5) {
            let words = enumerate_cyclically_reduced(len, k);
            for w in &words {
                prop_assert!(is_cyclically_reduced(w));
            }
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), words.len());
            // Proper colorings of the n-cycle: (k-1)^n + (-1)^n (k-1).
            let k = k as i64;
            let n = len as u32;
            let expected = (k - 1).pow(n) + if len % 2 == 0 { k - 1 } else { -(k - 1) };
            prop_assert_eq!(words.len() as i64, expected);
        }
    }

    #[test]
    fn pauli_ring_set_contents() {
        let r = RingSet::pauli();
        assert_eq!(r.words().len(), 18);
        assert!(r.contains(&word_from_str("XYXZYZ")));
        assert!(r.contains(&word_from_str("YZYXZX")));
        assert!(r.contains(&word_from_str("ZXZYXY")));
        assert!(!r.contains(&word_from_str("XYXYXY")));
        assert_eq!(r.fundamental_classes().len(), 3);

        // The classes are exactly those of the three displayed words.
        let mut expected: Vec<Word> = ["XYXZYZ", "YZYXZX", "ZXZYXY"]
            .iter()
            .map(|s| canonical_class(&word_from_str(s)))
            .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(r.fundamental_classes(), expected.as_slice());
    }

    #[test]
    fn ring_set_closed_under_rotation_and_inversion() {
        let r = RingSet::pauli();
        for w in r.words() {
            for k in 0..w.len() {
                assert!(r.contains(&rotate(w, k)));
            }
            assert!(r.contains(&reverse(w)));
        }
    }

    #[test]
    fn ring_words_evaluate_to_identity_in_both_representations() {
        let r = RingSet::pauli();
        for w in r.words() {
            let letters: Vec<u8> = w.iter().map(|l| l.0).collect();
            let g = pauli_eval(&letters);
            assert!(g.is_identity());
            let m = w.iter().fold(MAT_IDENTITY, |m, l| {
                m.mul(&to_matrix(
                    [crate::pauli::X, crate::pauli::Y, crate::pauli::Z][l.0 as usize],
                ))
            });
            assert_eq!(m, MAT_IDENTITY);
        }
    }

    #[test]
    fn npc_passes_for_pauli() {
        let r = RingSet::pauli();
        let report = r.npc_check();
        assert!(report.pass, "violations: {:?}", report.violations);
        // 18 of the 24 reduced length-4 words occur exactly once; the six
        // (MN)^2 patterns never occur.
        let once = report.counts.iter().filter(|(_, c)| *c == 1).count();
        let never = report.counts.iter().filter(|(_, c)| *c == 0).count();
        assert_eq!(once, 18);
        assert_eq!(never, 6);
        for (w, c) in &report.counts {
            if *c == 0 {
                assert!(w[0] == w[2] && w[1] == w[3], "unexpected absent word {w:?}");
            }
        }
        let xyxz = word_from_str("XYXZ");
        let count = report.counts.iter().find(|(w, _)| *w == xyxz).unwrap().1;
        assert_eq!(count, 1);
    }

    #[test]
    fn npc_fails_on_duplicated_class() {
        // Doubling a class as two distinct "classes" makes every subword
        // of it occur twice.
        let r = RingSet::pauli();
        let mut forged = r.clone();
        let extra = rotate(&forged.classes[0].clone(), 1);
        forged.classes.push(extra);
        let report = forged.npc_check();
        assert!(!report.pass);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn unique_completion() {
        let r = RingSet::pauli();
        let completion = r.unique_ring_completion(&word_from_str("XYXZ")).unwrap();
        assert_eq!(completion, word_from_str("XYXZYZ"));
        assert_eq!(r.unique_ring_completion(&word_from_str("XYXY")), None);
        // Any length-5 prefix of XYXZYZ completes to it.
        let w = word_from_str("XYXZYZ");
        for k in 0..6 {
            let rot = rotate(&w, k);
            let prefix: Word = rot[..5].to_vec();
            assert_eq!(r.unique_ring_completion(&prefix).unwrap(), rot);
        }
        // Exhaustive uniqueness over all reduced length-4 words: scanning the
        // full word list directly must never find two distinct completions.
        for p in enumerate_linear_reduced(4, 3) {
            let matches: BTreeSet<Word> = r
                .words()
                .iter()
                .filter(|w| w[..4] == p[..])
                .cloned()
                .collect();
            assert!(matches.len() <= 1, "prefix {p:?} has {} completions", matches.len());
        }
    }

    #[test]
    fn no_mnmn_subwords() {
        // No ring word contains a cyclic subword of the form MNMN.
        let r = RingSet::pauli();
        for w in r.words() {
            let n = w.len();
            for s in 0..n {
                let sub: Vec<Letter> = (0..4).map(|k| w[(s + k) % n]).collect();
                assert!(!(sub[0] == sub[2] && sub[1] == sub[3]), "MNMN in {w:?}");
            }
        }
    }

    #[test]
    fn symmetries_of_pauli_ring_set() {
        let r = RingSet::pauli();
        let syms = r.symmetries();
        // Every letter permutation preserves the set, and the set is closed
        // under the full dihedral action, so all 6 * 12 pairs survive.
        assert_eq!(syms.len(), 72);
        assert_eq!(r.letter_symmetries().len(), 6);
        // Cyclic permutation T = (X Y Z) with identity word action.
        assert!(syms
            .iter()
            .any(|s| s.letter_perm == vec![1, 2, 0] && s.rotate == 0 && !s.reflect));
        // Identity pair.
        assert!(syms
            .iter()
            .any(|s| s.letter_perm == vec![0, 1, 2] && s.rotate == 0 && !s.reflect));
    }

    #[test]
    fn s3_ring_set_is_the_checker_set() {
        let v = FiniteGroup::symmetric_3();
        let inv = [v.element("(1,2)").unwrap(), v.element("(2,3)").unwrap()];
        let r = compute_ring_set(&v, &inv, 6).unwrap();
        // Only the two alternating words survive (one class).
        assert_eq!(r.words().len(), 2);
        assert_eq!(r.fundamental_classes().len(), 1);
        assert!(r.contains(&word_from_str("ababab")));
        assert!(r.contains(&word_from_str("bababa")));
    }

    #[test]
    fn rejects_non_involutions() {
        let w = FiniteGroup::cyclic(6);
        // 2 has order 3.
        assert!(matches!(
            compute_ring_set(&w, &[2, 3], 6),
            Err(Error::NotAnInvolution { index: 0 })
        ));
    }

    #[test]
    fn empty_ring_set() {
        // Z/4 with its unique involution: no cyclically reduced word exists
        // over a 1-letter alphabet, so the set is empty.
        let c4 = FiniteGroup::cyclic(4);
        let r = compute_ring_set(&c4, &[2], 6).unwrap();
        assert!(r.is_empty());
        assert!(r.fundamental_classes().is_empty());
    }
}
