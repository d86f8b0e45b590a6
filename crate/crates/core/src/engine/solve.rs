//! Constraint propagation and exhaustive enumeration.
//!
//! Every face carries a domain bitmask of still-possible letters. The
//! propagation loop enforces, to a fixpoint:
//!
//! - vertex consistency: a letter survives in a slot only if some ring word
//!   matches the whole ring's current domains (outside-region slots are
//!   unconstrained, repeated slots must agree);
//! - adjacency: a face assigned M removes M from its neighbors.
//!
//! Both rules only remove letters that no valid completion can use, so
//! propagation is conservative. Enumeration is depth-first over the region
//! faces with propagation at every branch; results are returned sorted in
//! row-major scan order with letters X < Y < Z.

use std::collections::VecDeque;

use crate::error::Error;
use crate::lattice::{BallCenter, Face, Region, RegionData, Vertex};
use crate::ring::{Letter, RingSet};

use super::Patch;

/// Ring words flattened for the solver: alphabet of at most 8 letters so a
/// domain fits in a u8 mask.
#[derive(Clone, Debug)]
pub struct CompiledRings {
    pub alphabet: usize,
    pub words: Vec<[u8; 6]>,
}

impl CompiledRings {
    pub fn new(rings: &RingSet) -> Result<CompiledRings, Error> {
        if rings.word_len() != 6 {
            return Err(Error::BadRingLength(rings.word_len()));
        }
        if rings.alphabet_size() > 8 {
            return Err(Error::BadAlphabet(rings.alphabet_size()));
        }
        let words = rings
            .words()
            .iter()
            .map(|w| {
                let mut a = [0u8; 6];
                for (i, l) in w.iter().enumerate() {
                    a[i] = l.0;
                }
                a
            })
            .collect();
        Ok(CompiledRings { alphabet: rings.alphabet_size(), words })
    }

    pub fn pauli() -> CompiledRings {
        CompiledRings::new(&RingSet::pauli()).unwrap()
    }

    pub fn full_mask(&self) -> u8 {
        ((1u16 << self.alphabet) - 1) as u8
    }

    pub fn contains_word(&self, w: &[Letter]) -> bool {
        let mut a = [0u8; 6];
        for (i, l) in w.iter().enumerate() {
            a[i] = l.0;
        }
        self.words.contains(&a)
    }

    /// Whether some ring word matches every assigned slot in place.
    pub fn matchable(&self, slots: &[Option<Letter>; 6]) -> bool {
        self.words.iter().any(|w| {
            slots
                .iter()
                .enumerate()
                .all(|(i, s)| s.is_none_or(|l| l.0 == w[i]))
        })
    }

    /// Per-slot masks of letters supported by some ring word compatible with
    /// the given slot masks; `same` lists slot pairs that read one face.
    fn support(&self, slot_masks: &[u8; 6], same: &[(u8, u8)]) -> [u8; 6] {
        let mut acc = [0u8; 6];
        'words: for w in &self.words {
            for i in 0..6 {
                if slot_masks[i] & (1 << w[i]) == 0 {
                    continue 'words;
                }
            }
            for &(a, b) in same {
                if w[a as usize] != w[b as usize] {
                    continue 'words;
                }
            }
            for i in 0..6 {
                acc[i] |= 1 << w[i];
            }
        }
        acc
    }
}

/// Propagation dead end: the face that lost its last letter, and the vertex
/// whose constraint removed it when one is known.
#[derive(Clone, Debug)]
pub struct Contradiction {
    pub face: Face,
    pub vertex: Option<Vertex>,
}

struct Solver<'a> {
    region: &'a RegionData,
    rings: &'a CompiledRings,
    domains: Vec<u8>,
    /// Undo log of (face index, previous mask).
    trail: Vec<(u32, u8)>,
    face_rings: Vec<Vec<u32>>,
    ring_same: Vec<Vec<(u8, u8)>>,
    /// Branching order: breadth-first from the ball center when there is
    /// one, otherwise scan order.
    search_order: Vec<usize>,
    ring_queue: VecDeque<u32>,
    ring_queued: Vec<bool>,
}

impl<'a> Solver<'a> {
    fn with_region(
        region: &'a RegionData,
        letters: &[Option<Letter>],
        rings: &'a CompiledRings,
    ) -> Result<Solver<'a>, Error> {
        let full = rings.full_mask();
        let mut domains = vec![full; region.len()];
        for (i, l) in letters.iter().enumerate() {
            if let Some(l) = l {
                if l.0 as usize >= rings.alphabet {
                    return Err(Error::BadAlphabet(l.0 as usize));
                }
                domains[i] = 1 << l.0;
            }
        }

        let mut face_rings = vec![Vec::new(); region.len()];
        let mut ring_same = Vec::with_capacity(region.vertex_rings.len());
        for (rid, ring) in region.vertex_rings.iter().enumerate() {
            let mut same = Vec::new();
            for a in 0..6 {
                if ring.slots[a] < 0 {
                    continue;
                }
                if !face_rings[ring.slots[a] as usize].contains(&(rid as u32)) {
                    face_rings[ring.slots[a] as usize].push(rid as u32);
                }
                for b in a + 1..6 {
                    if ring.slots[a] == ring.slots[b] {
                        same.push((a as u8, b as u8));
                    }
                }
            }
            ring_same.push(same);
        }

        let search_order = search_order(region);
        let nrings = region.vertex_rings.len();
        Ok(Solver {
            region,
            rings,
            domains,
            trail: Vec::new(),
            face_rings,
            ring_same,
            search_order,
            ring_queue: (0..nrings as u32).collect(),
            ring_queued: vec![true; nrings],
        })
    }

    fn set_mask(&mut self, face: usize, mask: u8) -> Result<(), usize> {
        let old = self.domains[face];
        if mask == old {
            return Ok(());
        }
        if mask == 0 {
            return Err(face);
        }
        self.trail.push((face as u32, old));
        self.domains[face] = mask;
        for &rid in &self.face_rings[face] {
            if !self.ring_queued[rid as usize] {
                self.ring_queued[rid as usize] = true;
                self.ring_queue.push_back(rid);
            }
        }
        Ok(())
    }

    /// Runs both rules to a fixpoint. On contradiction, reports the failing
    /// face and leaves the trail for the caller to unwind.
    fn propagate(&mut self) -> Result<(), Contradiction> {
        while let Some(rid) = self.ring_queue.pop_front() {
            self.ring_queued[rid as usize] = false;
            let ring = &self.region.vertex_rings[rid as usize];
            let mut slot_masks = [self.rings.full_mask(); 6];
            for (s, &idx) in ring.slots.iter().enumerate() {
                if idx >= 0 {
                    slot_masks[s] = self.domains[idx as usize];
                }
            }
            let support = self.rings.support(&slot_masks, &self.ring_same[rid as usize]);
            for (s, &idx) in ring.slots.iter().enumerate() {
                if idx < 0 {
                    continue;
                }
                let face = idx as usize;
                let new_mask = self.domains[face] & support[s];
                let became_singleton =
                    new_mask.count_ones() == 1 && self.domains[face].count_ones() > 1;
                if let Err(f) = self.set_mask(face, new_mask) {
                    return Err(Contradiction {
                        face: self.region.faces[f],
                        vertex: Some(ring.vertex),
                    });
                }
                if became_singleton {
                    self.strike_neighbors(face)?;
                }
            }
        }
        Ok(())
    }

    /// Adjacency rule: a singleton letter is removed from all neighbors.
    fn strike_neighbors(&mut self, face: usize) -> Result<(), Contradiction> {
        let mask = self.domains[face];
        let mut stack = vec![(face, mask)];
        while let Some((f, m)) = stack.pop() {
            for k in 0..self.region.neighbors[f].len() {
                let n = self.region.neighbors[f][k];
                let new_mask = self.domains[n] & !m;
                if new_mask != self.domains[n] {
                    let was_multi = self.domains[n].count_ones() > 1;
                    if let Err(bad) = self.set_mask(n, new_mask) {
                        return Err(Contradiction {
                            face: self.region.faces[bad],
                            vertex: None,
                        });
                    }
                    if was_multi && new_mask.count_ones() == 1 {
                        stack.push((n, new_mask));
                    }
                }
            }
        }
        Ok(())
    }

    fn seed_adjacency(&mut self) -> Result<(), Contradiction> {
        for f in 0..self.region.len() {
            if self.domains[f].count_ones() == 1 {
                self.strike_neighbors(f)?;
            }
        }
        Ok(())
    }

    fn checkpoint(&self) -> usize {
        self.trail.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (f, m) = self.trail.pop().unwrap();
            self.domains[f as usize] = m;
        }
        // Conservative: requeue everything touched since the rings examined
        // stale domains. Rings are few; this stays cheap.
        for r in &mut self.ring_queued {
            *r = false;
        }
        self.ring_queue.clear();
    }

    fn requeue_face(&mut self, face: usize) {
        for &rid in &self.face_rings[face] {
            if !self.ring_queued[rid as usize] {
                self.ring_queued[rid as usize] = true;
                self.ring_queue.push_back(rid);
            }
        }
    }

    fn first_open(&self) -> Option<usize> {
        self.search_order
            .iter()
            .copied()
            .find(|&f| self.domains[f].count_ones() > 1)
    }

    fn assignment(&self) -> Vec<Option<Letter>> {
        self.domains
            .iter()
            .map(|&m| {
                if m.count_ones() == 1 {
                    Some(Letter(m.trailing_zeros() as u8))
                } else {
                    None
                }
            })
            .collect()
    }
}

fn search_order(region: &RegionData) -> Vec<usize> {
    if let Region::Ball { center, .. } = &region.region {
        let seeds: Vec<usize> = match center {
            BallCenter::Face(f) => region.index_of(*f).into_iter().collect(),
            BallCenter::Vertex(v) => crate::lattice::faces_around_vertex(*v)
                .iter()
                .filter_map(|&f| region.index_of(f))
                .collect(),
        };
        let mut dist = vec![usize::MAX; region.len()];
        let mut queue = VecDeque::new();
        for s in seeds {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(f) = queue.pop_front() {
            for &n in &region.neighbors[f] {
                if dist[n] == usize::MAX {
                    dist[n] = dist[f] + 1;
                    queue.push_back(n);
                }
            }
        }
        let mut order: Vec<usize> = (0..region.len()).collect();
        order.sort_by_key(|&f| (dist[f], f));
        order
    } else {
        (0..region.len()).collect()
    }
}

/// Fixpoint of the propagation rules: returns the patch extended by every
/// forced letter, or the contradiction witness.
pub fn propagate(patch: &Patch, rings: &CompiledRings) -> Result<Patch, Contradiction> {
    let mut solver = Solver::with_region(&patch.region, &patch.letters, rings)
        .expect("patch letters fit ring alphabet");
    solver.seed_adjacency()?;
    solver.propagate()?;
    Ok(Patch { region: patch.region.clone(), letters: solver.assignment() })
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub patches: Vec<Patch>,
    pub truncated: bool,
}

/// All total valid assignments extending `patch`, in row-major lexicographic
/// order. `limit` truncates the result (flagged), `prune` may cut subtrees
/// that cannot contribute wanted results.
pub fn enumerate_completions(
    patch: &Patch,
    rings: &CompiledRings,
    limit: Option<usize>,
) -> EnumerationResult {
    enumerate_with_prune(patch, rings, limit, &mut |_, _| false)
}

pub fn enumerate_with_prune(
    patch: &Patch,
    rings: &CompiledRings,
    limit: Option<usize>,
    prune: &mut dyn FnMut(&[u8], &RegionData) -> bool,
) -> EnumerationResult {
    let mut solver = Solver::with_region(&patch.region, &patch.letters, rings)
        .expect("patch letters fit ring alphabet");
    let mut out: Vec<Vec<Option<Letter>>> = Vec::new();
    let mut truncated = false;

    if solver.seed_adjacency().is_ok() && solver.propagate().is_ok() {
        dfs(&mut solver, limit, prune, &mut out, &mut truncated);
    }

    let mut patches: Vec<Patch> = out
        .into_iter()
        .map(|letters| Patch { region: patch.region.clone(), letters })
        .collect();
    patches.sort_by(|a, b| a.letters.cmp(&b.letters));
    EnumerationResult { patches, truncated }
}

fn dfs(
    solver: &mut Solver,
    limit: Option<usize>,
    prune: &mut dyn FnMut(&[u8], &RegionData) -> bool,
    out: &mut Vec<Vec<Option<Letter>>>,
    truncated: &mut bool,
) {
    if let Some(l) = limit {
        if out.len() >= l {
            *truncated = true;
            return;
        }
    }
    if prune(&solver.domains, solver.region) {
        return;
    }
    let Some(face) = solver.first_open() else {
        out.push(solver.assignment());
        return;
    };
    let mask = solver.domains[face];
    for letter in 0..solver.rings.alphabet as u8 {
        if mask & (1 << letter) == 0 {
            continue;
        }
        let mark = solver.checkpoint();
        let ok = solver.set_mask(face, 1 << letter).is_ok()
            && solver.strike_neighbors(face).is_ok()
            && solver.propagate().is_ok();
        if ok {
            dfs(solver, limit, prune, out, truncated);
        }
        solver.rollback(mark);
        solver.requeue_face(face);
    }
}
