//! Ring puzzle systems for an arbitrary finite group with a chosen set of
//! involutions.
//!
//! A labeling of the faces is a cycle when the cyclic product of the tile
//! elements around every vertex is trivial, and subcycle-free when no
//! strict consecutive subproduct around a vertex is trivial. The puzzle set
//! is the cycles minus the subcycles; for the Pauli system this coincides
//! with conditions (1) and (2) of the engine.

use std::sync::Arc;

use crate::engine::{enumerate_completions, CompiledRings, EnumerationResult, Patch};
use crate::error::Error;
use crate::finite::FiniteGroup;
use crate::lattice::{faces_around_vertex, RegionData, Vertex};
use crate::ring::{compute_ring_set, RingSet};

#[derive(Clone, Debug)]
pub struct PuzzleSystem {
    pub group: FiniteGroup,
    pub involutions: Vec<u16>,
    pub ring_set: RingSet,
    pub compiled: CompiledRings,
}

impl PuzzleSystem {
    pub fn new(group: FiniteGroup, involutions: Vec<u16>) -> Result<PuzzleSystem, Error> {
        let ring_set = compute_ring_set(&group, &involutions, 6)?;
        let compiled = CompiledRings::new(&ring_set)?;
        Ok(PuzzleSystem { group, involutions, ring_set, compiled })
    }

    pub fn pauli() -> PuzzleSystem {
        let group = FiniteGroup::pauli_group();
        let inv = vec![
            group.element("X").unwrap(),
            group.element("Y").unwrap(),
            group.element("Z").unwrap(),
        ];
        PuzzleSystem::new(group, inv).unwrap()
    }

    pub fn s3_checker() -> PuzzleSystem {
        let group = FiniteGroup::symmetric_3();
        let inv = vec![
            group.element("(1,2)").unwrap(),
            group.element("(2,3)").unwrap(),
        ];
        PuzzleSystem::new(group, inv).unwrap()
    }
}

/// Conjugacy class (canonical representative) of the cyclic product of the
/// six tiles around a vertex, read counterclockwise starting from the
/// lexicographically least face. All six faces must be assigned.
pub fn boundary_at_vertex(patch: &Patch, v: Vertex, sys: &PuzzleSystem) -> Option<u16> {
    let region = &patch.region;
    let ring = faces_around_vertex(v);
    let mut letters = [0u8; 6];
    for (i, f) in ring.iter().enumerate() {
        letters[i] = patch.get(region.project(*f))?.0;
    }
    let start = ring
        .iter()
        .enumerate()
        .min_by_key(|(_, f)| region.project(**f))
        .unwrap()
        .0;
    let mut acc = sys.group.identity();
    for k in 0..6 {
        acc = sys.group.mul(acc, sys.involutions[letters[(start + k) % 6] as usize]);
    }
    Some(sys.group.conjugacy_class(acc)[0])
}

fn full_rings(patch: &Patch) -> impl Iterator<Item = &crate::lattice::VertexRing> {
    patch.region.vertex_rings.iter().filter(|r| {
        r.slots
            .iter()
            .all(|&s| s >= 0 && patch.letters[s as usize].is_some())
    })
}

/// Every full vertex ring has trivial cyclic product.
pub fn is_cycle(patch: &Patch, sys: &PuzzleSystem) -> bool {
    let e_class = sys.group.conjugacy_class(sys.group.identity())[0];
    full_rings(patch).all(|r| boundary_at_vertex(patch, r.vertex, sys) == Some(e_class))
}

/// No full vertex ring has a trivial strict consecutive cyclic subproduct.
pub fn is_subcycle_free(patch: &Patch, sys: &PuzzleSystem) -> bool {
    for ring in full_rings(patch) {
        let letters: Vec<u8> = ring
            .slots
            .iter()
            .map(|&s| patch.letters[s as usize].unwrap().0)
            .collect();
        for start in 0..6 {
            let mut acc = sys.group.identity();
            for k in 0..5 {
                acc = sys
                    .group
                    .mul(acc, sys.involutions[letters[(start + k) % 6] as usize]);
                if acc == sys.group.identity() {
                    return false;
                }
            }
        }
    }
    true
}

/// Membership in the puzzle set: cycles minus subcycles.
pub fn is_member(patch: &Patch, sys: &PuzzleSystem) -> bool {
    is_cycle(patch, sys) && is_subcycle_free(patch, sys)
}

/// Exhaustive enumeration of the puzzle set on a region, through the same
/// backtracking engine driven by the system's ring set.
pub fn enumerate_general(sys: &PuzzleSystem, region: Arc<RegionData>) -> EnumerationResult {
    enumerate_completions(&Patch::empty(region), &sys.compiled, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::validate;
    use crate::lattice::{down, up, BallCenter};
    use crate::ring::{word_from_str, Letter};

    #[test]
    fn boundary_of_ring_words() {
        let sys = PuzzleSystem::pauli();
        let v = Vertex { x: 0, y: 0 };
        let region = RegionData::ball(BallCenter::Vertex(v), 0).unwrap();
        let mut p = Patch::empty(region);
        for (f, l) in faces_around_vertex(v).iter().zip(word_from_str("XYXZYZ")) {
            p.set(*f, l).unwrap();
        }
        let e_class = sys.group.conjugacy_class(sys.group.identity())[0];
        assert_eq!(boundary_at_vertex(&p, v, &sys), Some(e_class));
        assert!(is_cycle(&p, &sys));
        assert!(is_subcycle_free(&p, &sys));
        assert!(is_member(&p, &sys));
    }

    #[test]
    fn checker_ring_is_a_cycle() {
        let sys = PuzzleSystem::s3_checker();
        let v = Vertex { x: 0, y: 0 };
        let region = RegionData::ball(BallCenter::Vertex(v), 0).unwrap();
        let mut p = Patch::empty(region);
        for (i, f) in faces_around_vertex(v).iter().enumerate() {
            p.set(*f, Letter((i % 2) as u8)).unwrap();
        }
        let e_class = sys.group.conjugacy_class(sys.group.identity())[0];
        assert_eq!(boundary_at_vertex(&p, v, &sys), Some(e_class));
        assert!(is_member(&p, &sys));
    }

    #[test]
    fn adjacent_equal_letters_are_a_subcycle() {
        let sys = PuzzleSystem::pauli();
        let v = Vertex { x: 0, y: 0 };
        let region = RegionData::ball(BallCenter::Vertex(v), 0).unwrap();
        let mut p = Patch::empty(region);
        // The doubled X is a trivial length-2 strict subproduct.
        for (f, l) in faces_around_vertex(v).iter().zip(word_from_str("XXYXYZ")) {
            p.set(*f, l).unwrap();
        }
        assert!(!is_subcycle_free(&p, &sys));
        assert!(!is_member(&p, &sys));
    }

    #[test]
    fn rotation_and_reversal_invariance() {
        // The class is independent of the starting slot, and reading the
        // ring backwards gives the class of the inverse product.
        let sys = PuzzleSystem::pauli();
        let prod = |letters: &[Letter]| -> u16 {
            letters.iter().fold(sys.group.identity(), |acc, l| {
                sys.group.mul(acc, sys.involutions[l.0 as usize])
            })
        };
        let ring = word_from_str("XYXZYZ");
        let base_class = sys.group.conjugacy_class(prod(&ring))[0];
        for start in 0..6 {
            let rotated: Vec<Letter> = (0..6).map(|k| ring[(start + k) % 6]).collect();
            assert_eq!(sys.group.conjugacy_class(prod(&rotated))[0], base_class);
        }
        let reversed: Vec<Letter> = ring.iter().rev().copied().collect();
        let inv_class = sys.group.conjugacy_class(sys.group.inv(prod(&ring)))[0];
        assert_eq!(sys.group.conjugacy_class(prod(&reversed))[0], inv_class);
    }

    #[test]
    fn s3_enumeration_gives_the_two_checker_tilings() {
        let sys = PuzzleSystem::s3_checker();
        for (a, b) in [(2i64, 2i64), (3, 2), (3, 3)] {
            let region = RegionData::torus((a, 0), (0, b)).unwrap();
            let res = enumerate_general(&sys, region.clone());
            assert_eq!(res.patches.len(), 2, "torus {a}x{b}");
            for p in &res.patches {
                // Orientation determines the letter: a proper checkerboard.
                let a_letter = p.get(up(0, 0)).unwrap();
                let b_letter = p.get(down(0, 0)).unwrap();
                assert_ne!(a_letter, b_letter);
                for (i, &f) in region.faces.iter().enumerate() {
                    let expect = if f.is_up() { a_letter } else { b_letter };
                    assert_eq!(p.letters[i], Some(expect));
                }
                assert!(is_member(p, &sys));
            }
        }
    }

    #[test]
    fn pauli_system_matches_engine() {
        let sys = PuzzleSystem::pauli();
        let engine_rings = CompiledRings::pauli();
        for (a, b) in [(3i64, 1i64), (3, 2)] {
            let region = RegionData::torus((a, 0), (0, b)).unwrap();
            let general = enumerate_general(&sys, region.clone());
            let engine = enumerate_completions(&Patch::empty(region), &engine_rings, None);
            let g: Vec<_> = general.patches.iter().map(|p| p.letters.clone()).collect();
            let e: Vec<_> = engine.patches.iter().map(|p| p.letters.clone()).collect();
            assert_eq!(g, e);
            for p in &general.patches {
                assert!(is_member(p, &sys));
                assert!(validate(p, &engine_rings).is_empty());
            }
        }
    }

    #[test]
    fn membership_equals_validate_on_small_torus() {
        // Exhaustive: on the 3x1 torus, membership of a total patch
        // coincides with conditions (1)+(2) as checked by validate.
        let sys = PuzzleSystem::pauli();
        let region = RegionData::torus((3, 0), (0, 1)).unwrap();
        let n = region.len();
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            let mut p = Patch::empty(region.clone());
            for i in 0..n {
                p.letters[i] = Some(Letter((c % 3) as u8));
                c /= 3;
            }
            let member = is_member(&p, &sys);
            let valid = validate(&p, &sys.compiled).is_empty();
            assert_eq!(member, valid, "disagreement on assignment {code}");
        }
    }

    #[test]
    fn empty_ring_set_has_no_members() {
        let c4 = FiniteGroup::cyclic(4);
        let sys = PuzzleSystem::new(c4, vec![2]).unwrap();
        assert!(sys.ring_set.is_empty());
        let region = RegionData::torus((3, 0), (0, 2)).unwrap();
        let res = enumerate_general(&sys, region);
        assert!(res.patches.is_empty());
    }
}
