//! Puzzle patches, validation, propagation, enumeration, strip analysis,
//! and classification.

pub mod classify;
pub mod solve;
pub mod strips;

pub use classify::{
    classify, construct_t_puzzle, find_m_seeds, is_t_strip_union, transition_alphabet,
    canonical_form, canonical_form_isometries, Classification, MSeed, TransverseDescription,
};
pub use solve::{enumerate_completions, propagate, CompiledRings, Contradiction, EnumerationResult};
pub use strips::{
    decomposition_parameters, line_through, region_lines, scan_parallelogram_and_transverse,
    scan_reflection_lemma, strip_report, Decomposition, ExcludedInterval, RegionLine, StripReport,
};

use std::sync::Arc;

use crate::error::Error;
use crate::lattice::{Face, RegionData, Vertex};
use crate::ring::Letter;

/// A partial assignment of letters to the faces of a region.
#[derive(Clone, Debug)]
pub struct Patch {
    pub region: Arc<RegionData>,
    /// Indexed like `region.faces`.
    pub letters: Vec<Option<Letter>>,
}

impl Patch {
    pub fn empty(region: Arc<RegionData>) -> Patch {
        let n = region.len();
        Patch { region, letters: vec![None; n] }
    }

    pub fn get(&self, f: Face) -> Option<Letter> {
        self.region.index_of(f).and_then(|i| self.letters[i])
    }

    pub fn set(&mut self, f: Face, l: Letter) -> Result<(), Error> {
        match self.region.index_of(f) {
            Some(i) => {
                self.letters[i] = Some(l);
                Ok(())
            }
            None => Err(Error::RegionMismatch(format!("{f:?} is not in the region"))),
        }
    }

    pub fn is_total(&self) -> bool {
        self.letters.iter().all(|l| l.is_some())
    }

    pub fn assigned_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_some()).count()
    }

    /// True when the assignment extends `other` (same region).
    pub fn extends(&self, other: &Patch) -> bool {
        other
            .letters
            .iter()
            .zip(&self.letters)
            .all(|(o, s)| o.is_none() || o == s)
    }
}

/// A broken puzzle condition, with its location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Condition 1: two adjacent tiles carry the same letter.
    AdjacentEqual { a: Face, b: Face },
    /// Condition 2: a fully assigned vertex ring is not a ring word.
    RingInvalid { vertex: Vertex },
    /// Boundary consistency: no ring word matches the assigned slots.
    RingUnmatchable { vertex: Vertex },
}

/// Checks conditions 1 and 2 plus boundary consistency of partial rings.
///
/// A partially assigned (or partially in-region) vertex ring is acceptable
/// when a single ring word matches every assigned slot in place.
pub fn validate(patch: &Patch, rings: &CompiledRings) -> Vec<Violation> {
    let region = &patch.region;
    let mut out = Vec::new();

    for (i, ns) in region.neighbors.iter().enumerate() {
        for &j in ns {
            if j > i {
                if let (Some(a), Some(b)) = (patch.letters[i], patch.letters[j]) {
                    if a == b {
                        out.push(Violation::AdjacentEqual {
                            a: region.faces[i],
                            b: region.faces[j],
                        });
                    }
                }
            }
        }
    }

    for ring in &region.vertex_rings {
        let mut slots = [None; 6];
        let mut full = true;
        for (s, &idx) in ring.slots.iter().enumerate() {
            if idx >= 0 {
                slots[s] = patch.letters[idx as usize];
            }
            if slots[s].is_none() {
                full = false;
            }
        }
        if full {
            let word: Vec<Letter> = slots.iter().map(|l| l.unwrap()).collect();
            if !rings.contains_word(&word) {
                out.push(Violation::RingInvalid { vertex: ring.vertex });
            }
        } else if slots.iter().any(|l| l.is_some()) && !rings.matchable(&slots) {
            out.push(Violation::RingUnmatchable { vertex: ring.vertex });
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{faces_around_vertex, up, BallCenter, RegionData};
    use crate::ring::word_from_str;

    fn vertex_patch(word: &str) -> (Patch, Vertex) {
        let v = Vertex { x: 0, y: 0 };
        let region = RegionData::ball(BallCenter::Vertex(v), 0).unwrap();
        let mut p = Patch::empty(region);
        for (f, l) in faces_around_vertex(v).iter().zip(word_from_str(word)) {
            p.set(*f, l).unwrap();
        }
        (p, v)
    }

    #[test]
    fn ring_word_passes_validate() {
        let rings = CompiledRings::pauli();
        let (p, _) = vertex_patch("XYXZYZ");
        assert!(validate(&p, &rings).is_empty());
    }

    #[test]
    fn alternating_two_letter_ring_violates_condition_2() {
        // (XY)^3 evaluates to -1, and the word is excluded outright.
        let rings = CompiledRings::pauli();
        let (p, v) = vertex_patch("XYXYXY");
        let violations = validate(&p, &rings);
        assert!(violations.contains(&Violation::RingInvalid { vertex: v }));
    }

    #[test]
    fn adjacent_equal_letters_violate_condition_1() {
        let rings = CompiledRings::pauli();
        let region = RegionData::ball(BallCenter::Face(up(0, 0)), 1).unwrap();
        let mut p = Patch::empty(region);
        p.set(up(0, 0), Letter(2)).unwrap();
        p.set(crate::lattice::down(0, 0), Letter(2)).unwrap();
        let violations = validate(&p, &rings);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::AdjacentEqual { .. })));
    }

    #[test]
    fn unmatchable_partial_ring_is_reported() {
        // X . X . X . around one vertex embeds in no ring word: every ring
        // word contains each letter at most twice at distance 2 or 3, never
        // three times at alternating slots.
        let rings = CompiledRings::pauli();
        let v = Vertex { x: 0, y: 0 };
        let region = RegionData::ball(BallCenter::Vertex(v), 0).unwrap();
        let mut p = Patch::empty(region);
        for (i, f) in faces_around_vertex(v).iter().enumerate() {
            if i % 2 == 0 {
                p.set(*f, Letter(0)).unwrap();
            }
        }
        let violations = validate(&p, &rings);
        assert!(violations.contains(&Violation::RingUnmatchable { vertex: v }));
    }

    #[test]
    fn validate_stable_under_propagation() {
        // Propagating a valid patch never introduces violations.
        let rings = CompiledRings::pauli();
        let (p, _) = vertex_patch("XYXZYZ");
        let q = solve::propagate(&p, &rings).unwrap();
        assert!(validate(&q, &rings).is_empty());
    }
}

#[cfg(test)]
mod send_sync {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn shared_values_are_thread_safe() {
        assert_send_sync::<super::Patch>();
        assert_send_sync::<super::CompiledRings>();
        assert_send_sync::<crate::lattice::RegionData>();
        assert_send_sync::<crate::ring::RingSet>();
        assert_send_sync::<crate::finite::FiniteGroup>();
        assert_send_sync::<crate::general::PuzzleSystem>();
    }
}
