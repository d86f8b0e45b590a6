//! 1-strip extraction and T-strip / excluded-letter analysis.
//!
//! A line of a region is the ordered trace of a planar 1-strip inside it.
//! On a torus the trace closes up into a cycle; on other regions it is a
//! maximal contiguous segment. Letter sequences along lines drive all the
//! strip lemma checks: a T-strip is a run whose letters advance by a fixed
//! cyclic shift, an excluded interval is a maximal run omitting one letter.

use crate::lattice::{face_at, line_coords, Face, Isometry, RegionData};
use crate::ring::Letter;

use super::Patch;

/// An ordered trace of one 1-strip inside a region.
#[derive(Clone, Debug)]
pub struct RegionLine {
    pub dir: u8,
    /// Planar line index of the cell at `cells[0]`.
    pub line: i64,
    /// (planar position, region face index), consecutive positions.
    pub cells: Vec<(i64, usize)>,
    /// True when the line closes up around a torus.
    pub wraps: bool,
}

impl RegionLine {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn letters(&self, patch: &Patch) -> Vec<Option<Letter>> {
        self.cells.iter().map(|&(_, f)| patch.letters[f]).collect()
    }
}

/// All lines of the region in the given direction.
///
/// Torus lines are walked one full period from an arbitrary starting face;
/// planar regions yield every maximal contiguous run of in-region cells.
pub fn region_lines(region: &RegionData, dir: u8) -> Vec<RegionLine> {
    if region.is_torus() {
        let mut seen = vec![false; region.len()];
        let mut out = Vec::new();
        for start in 0..region.len() {
            if seen[start] {
                continue;
            }
            let f = region.faces[start];
            let (line, pos0) = line_coords(f, dir);
            let mut cells = Vec::new();
            let mut p = pos0;
            loop {
                let face = region.project(face_at(dir, line, p));
                let idx = region.index_of(face).expect("torus line stays in region");
                if p > pos0 && idx == start {
                    break;
                }
                seen[idx] = true;
                cells.push((p, idx));
                p += 1;
            }
            out.push(RegionLine { dir, line, cells, wraps: true });
        }
        out.sort_by_key(|l| (l.line, l.cells.first().map(|c| c.0)));
        out
    } else {
        use std::collections::BTreeMap;
        let mut by_line: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
        for (i, &f) in region.faces.iter().enumerate() {
            let (line, pos) = line_coords(f, dir);
            by_line.entry(line).or_default().push((pos, i));
        }
        let mut out = Vec::new();
        for (line, mut cells) in by_line {
            cells.sort_unstable();
            // Split non-contiguous position runs.
            let mut run: Vec<(i64, usize)> = Vec::new();
            for cell in cells {
                if let Some(&(last, _)) = run.last() {
                    if cell.0 != last + 1 {
                        out.push(RegionLine { dir, line, cells: std::mem::take(&mut run), wraps: false });
                    }
                }
                run.push(cell);
            }
            if !run.is_empty() {
                out.push(RegionLine { dir, line, cells: run, wraps: false });
            }
        }
        out
    }
}

/// The line of the given direction through a face, when the face is in the
/// region.
pub fn line_through(region: &RegionData, dir: u8, f: Face) -> Option<RegionLine> {
    let idx = region.index_of(f)?;
    region_lines(region, dir)
        .into_iter()
        .find(|l| l.cells.iter().any(|&(_, i)| i == idx))
}

/// Cyclic shift from letter a to letter b in the three-letter alphabet:
/// 1 or 2; 0 means equal letters.
fn step(a: Letter, b: Letter) -> u8 {
    (3 + b.0 - a.0) % 3
}

/// Maximal intervals (start index, length) of cells whose letters advance by
/// one constant shift in {1, 2}, restricted to length >= 3. For wrapped
/// lines intervals are cyclic; a fully constant cycle is one interval
/// covering the whole line.
pub fn t_strip_cores(letters: &[Letter], wraps: bool) -> Vec<(usize, usize)> {
    let n = letters.len();
    if n < 3 {
        return Vec::new();
    }
    let steps: Vec<u8> = (0..if wraps { n } else { n - 1 })
        .map(|i| step(letters[i], letters[(i + 1) % n]))
        .collect();
    // A core is a maximal run of equal nonzero steps; a run of k steps spans
    // k+1 cells.
    let mut runs: Vec<(usize, usize)> = Vec::new(); // (start step idx, step count)
    if wraps && steps.iter().all(|&s| s == steps[0]) && steps[0] != 0 {
        return vec![(0, n)];
    }
    let mut i = 0;
    let total = steps.len();
    // For wrapped lines start scanning at a step boundary.
    let start_at = if wraps {
        (0..total)
            .find(|&k| steps[k] != steps[(k + total - 1) % total])
            .unwrap_or(0)
    } else {
        0
    };
    while i < total {
        let k = (start_at + i) % total;
        let s = steps[k];
        let mut len = 1;
        while len < total {
            let k2 = (start_at + i + len) % total;
            if !wraps && start_at + i + len >= total {
                break;
            }
            if steps[k2] != s {
                break;
            }
            len += 1;
        }
        if s != 0 && len >= 2 {
            runs.push((k, len));
        }
        i += len;
    }
    runs.into_iter()
        .map(|(start, steps_len)| (start, steps_len + 1))
        .filter(|&(_, l)| l >= 3)
        .collect()
}

/// A maximal interval omitting one letter, length >= 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcludedInterval {
    pub start: usize,
    pub len: usize,
    pub letter: Letter,
}

/// Maximal runs avoiding each letter, length >= 3. Cyclic on wrapped lines;
/// a line avoiding a letter entirely yields one full-length interval.
pub fn excluded_intervals(letters: &[Letter], wraps: bool) -> Vec<ExcludedInterval> {
    let n = letters.len();
    let mut out = Vec::new();
    for m in 0..3u8 {
        let avoid = Letter(m);
        if n >= 3 && letters.iter().all(|&l| l != avoid) {
            out.push(ExcludedInterval { start: 0, len: n, letter: avoid });
            continue;
        }
        // Runs between occurrences of `avoid`.
        let occupied: Vec<usize> = (0..n).filter(|&i| letters[i] == avoid).collect();
        if occupied.is_empty() {
            continue;
        }
        if wraps {
            for w in 0..occupied.len() {
                let a = occupied[w];
                let b = occupied[(w + 1) % occupied.len()];
                let gap = (b + n - a - 1) % n;
                if gap >= 3 {
                    out.push(ExcludedInterval { start: (a + 1) % n, len: gap, letter: avoid });
                }
            }
        } else {
            let mut bounds = vec![-1i64];
            bounds.extend(occupied.iter().map(|&i| i as i64));
            bounds.push(n as i64);
            for w in bounds.windows(2) {
                let len = (w[1] - w[0] - 1) as usize;
                if len >= 3 {
                    out.push(ExcludedInterval {
                        start: (w[0] + 1) as usize,
                        len,
                        letter: avoid,
                    });
                }
            }
        }
    }
    out.sort_by_key(|e| (e.start, e.letter.0));
    out
}

/// The decomposition r = s ∪ b ∪ s' of a line into two maximal T-strips
/// flanking one excluded interval of length n.
///
/// Reported only on non-wrapping windows where both flanks reach the window
/// edge (the finite stand-in for semi-infinite T-strips), overlap the
/// excluded interval by the two shared cells, and the excluding letter is
/// visible on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub b_start: usize,
    pub n: usize,
    pub excluded: Letter,
}

#[derive(Clone, Debug)]
pub struct StripReport {
    pub dir: u8,
    pub line: i64,
    pub wraps: bool,
    pub t_cores: Vec<(usize, usize)>,
    pub excluded: Vec<ExcludedInterval>,
    pub decomposition: Option<Decomposition>,
}

/// Analyzes one (totally assigned) line of a patch.
pub fn strip_report(patch: &Patch, line: &RegionLine) -> StripReport {
    let letters: Vec<Letter> = line
        .letters(patch)
        .into_iter()
        .map(|l| l.expect("strip_report needs a total line"))
        .collect();
    let t_cores = t_strip_cores(&letters, line.wraps);
    let excluded = excluded_intervals(&letters, line.wraps);
    let decomposition = if line.wraps {
        None
    } else {
        detect_decomposition(&letters, &excluded)
    };
    StripReport {
        dir: line.dir,
        line: line.line,
        wraps: line.wraps,
        t_cores,
        excluded,
        decomposition,
    }
}

fn detect_decomposition(
    letters: &[Letter],
    excluded: &[ExcludedInterval],
) -> Option<Decomposition> {
    let n = letters.len();
    if n < 7 {
        return None;
    }
    if excluded.len() != 1 {
        return None;
    }
    let b = &excluded[0];
    let (u, v) = (b.start, b.start + b.len - 1);
    // The excluding letter must be visible on both sides.
    if u < 1 || v + 1 > n - 1 {
        return None;
    }
    if letters[u - 1] != b.letter || letters[v + 1] != b.letter {
        return None;
    }
    // Left flank: constant steps from the window start through cell u+1;
    // right flank: constant from v-1 through the window end. Each flank
    // shares exactly two cells with b.
    let const_steps = |from: usize, to: usize| -> bool {
        if to - from < 2 {
            return false;
        }
        let s0 = step(letters[from], letters[from + 1]);
        s0 != 0 && (from..to).all(|i| step(letters[i], letters[i + 1]) == s0)
    };
    if !const_steps(0, u + 1) || !const_steps(v - 1, n - 1) {
        return None;
    }
    Some(Decomposition { b_start: u, n: b.len, excluded: b.letter })
}

/// Reflection across the boundary between lines k and k-1 of a direction.
pub fn boundary_reflection(dir: u8, k: i64) -> Isometry {
    match dir {
        0 => Isometry { m: [[1, 1], [0, -1]], t: [-k, 2 * k] },
        1 => Isometry { m: [[-1, 0], [1, 1]], t: [2 * k, -k] },
        2 => Isometry { m: [[0, -1], [-1, 0]], t: [k, k] },
        _ => panic!("direction out of range"),
    }
}

fn longest_const_step_run(letters: &[Letter]) -> usize {
    if letters.len() < 2 {
        return letters.len();
    }
    let mut best = 1;
    let mut run = 1;
    let mut prev: Option<u8> = None;
    for w in letters.windows(2) {
        let s = step(w[0], w[1]);
        if s != 0 && prev == Some(s) {
            run += 1;
        } else if s != 0 {
            run = 2;
        } else {
            run = 1;
        }
        prev = Some(s);
        best = best.max(run);
    }
    best
}

/// Scans every T-strip core of length >= 3: its reflection across either
/// long side, minus one end triangle, must again advance by a constant
/// shift wherever it is visible in the region. Returns violation notes.
pub fn scan_reflection_lemma(patch: &Patch) -> Vec<String> {
    let region = &patch.region;
    let mut violations = Vec::new();
    for dir in 0..3u8 {
        for line in region_lines(region, dir) {
            let letters: Vec<Letter> =
                line.letters(patch).into_iter().map(|l| l.unwrap()).collect();
            for (start, len) in t_strip_cores(&letters, line.wraps) {
                // Linear planar positions keep seam-wrapping cores contiguous.
                let pos0 = line.cells[start].0;
                for boundary in [line.line, line.line + 1] {
                    let sigma = boundary_reflection(dir, boundary);
                    // Mirrored letters of the core cells, in core order.
                    let mirrored: Vec<Option<Letter>> = (0..len)
                        .map(|k| {
                            let f = face_at(dir, line.line, pos0 + k as i64);
                            region
                                .index_of(sigma.apply_face(f))
                                .and_then(|i| patch.letters[i])
                        })
                        .collect();
                    // Longest visible contiguous stretch.
                    let mut best: &[Option<Letter>] = &[];
                    let mut i = 0;
                    while i < mirrored.len() {
                        if mirrored[i].is_some() {
                            let j = (i..mirrored.len())
                                .take_while(|&k| mirrored[k].is_some())
                                .last()
                                .unwrap();
                            if j - i + 1 > best.len() {
                                best = &mirrored[i..=j];
                            }
                            i = j + 1;
                        } else {
                            i += 1;
                        }
                    }
                    if best.len() < 3 {
                        continue;
                    }
                    let visible: Vec<Letter> = best.iter().map(|l| l.unwrap()).collect();
                    if longest_const_step_run(&visible) + 1 < visible.len() {
                        violations.push(format!(
                            "reflection of core (dir {dir}, line {}, start {start}, len {len}) \
                             across boundary {boundary} is not a T-strip minus one end",
                            line.line
                        ));
                    }
                }
            }
        }
    }
    violations
}

/// Scans every maximal finite T-strip (a core together with its two
/// breaking end triangles, both visible): the triangle count n must be
/// even, and in one transverse direction the strip must span exactly
/// n/2 + 1 parallel lines, each of which is a T-strip throughout the
/// region. Returns violation notes.
pub fn scan_parallelogram_and_transverse(patch: &Patch) -> Vec<String> {
    let region = &patch.region;
    let mut violations = Vec::new();
    for dir in 0..3u8 {
        for line in region_lines(region, dir) {
            let letters: Vec<Letter> =
                line.letters(patch).into_iter().map(|l| l.unwrap()).collect();
            let cells = &line.cells;
            let ncells = cells.len();
            for (start, len) in t_strip_cores(&letters, line.wraps) {
                // Both breaking ends must exist and be distinct cells.
                if line.wraps {
                    if len + 2 > ncells {
                        continue;
                    }
                } else if start == 0 || start + len >= ncells {
                    continue;
                }
                let n = len + 2;
                if n % 2 != 0 {
                    violations.push(format!(
                        "maximal finite T-strip (dir {dir}, line {}, start {start}) \
                         has odd triangle count {n}",
                        line.line
                    ));
                    continue;
                }
                // Faces of the full strip, breaking ends included. Use
                // linear planar positions so cores wrapping around the
                // torus walk seam still form one contiguous strip.
                let first_pos = cells[start].0 - 1;
                let strip_faces: Vec<_> = (0..n)
                    .map(|k| face_at(dir, line.line, first_pos + k as i64))
                    .collect();
                let mut ok = false;
                for other in (0..3u8).filter(|&d| d != dir) {
                    let mut spans: Vec<i64> =
                        strip_faces.iter().map(|&f| line_coords(f, other).0).collect();
                    spans.sort_unstable();
                    spans.dedup();
                    if spans.len() != n / 2 + 1 {
                        continue;
                    }
                    let all_t = strip_faces.iter().all(|&f| {
                        let l = line_through(region, other, region.project(f))
                            .expect("face line exists");
                        let ls: Vec<Letter> =
                            l.letters(patch).into_iter().map(|x| x.unwrap()).collect();
                        if ls.len() < 3 {
                            return true;
                        }
                        let span = if l.wraps { ls.len() } else { ls.len() - 1 };
                        let s0 = step(ls[0], ls[1]);
                        s0 != 0
                            && (0..span).all(|i| step(ls[i], ls[(i + 1) % ls.len()]) == s0)
                    });
                    if all_t {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    violations.push(format!(
                        "maximal finite T-strip (dir {dir}, line {}, start {start}, n {n}) \
                         has no transverse extension of width n/2+1 into parallel T-strips",
                        line.line
                    ));
                }
            }
        }
    }
    violations
}

/// All decomposition parameters n reported across the lines of a patch.
pub fn decomposition_parameters(patch: &Patch) -> Vec<usize> {
    let region = &patch.region;
    let mut out = Vec::new();
    for dir in 0..3u8 {
        for line in region_lines(region, dir) {
            if let Some(d) = strip_report(patch, &line).decomposition {
                out.push(d.n);
            }
        }
    }
    out
}
