//! Text formats: puzzle files and group specification files.
//!
//! Puzzle file, line oriented:
//!
//! ```text
//! pauli-puzzle v1
//! region ball 2            (or: region torus 3 0 0 1)
//! alphabet XYZ
//! row 1 -2 XZY
//! row 0 -3 .ZYXZ
//! ```
//!
//! Each `row y start letters` line assigns the letters (or `.` for
//! unassigned) to consecutive positions of lattice row y starting at
//! `start`; non-contiguous rows take several lines. Every face of the
//! region must be covered exactly once.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use pauli_puzzles::engine::Patch;
use pauli_puzzles::finite::FiniteGroup;
use pauli_puzzles::lattice::{face_at, line_coords, up, BallCenter, RegionData};
use pauli_puzzles::ring::Letter;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Clone, Debug)]
pub struct PuzzleFile {
    pub patch: Patch,
    pub alphabet: String,
}

impl PuzzleFile {
    pub fn letter_of(&self, c: char) -> Option<Letter> {
        self.alphabet.find(c).map(|i| Letter(i as u8))
    }

    pub fn char_of(&self, l: Letter) -> char {
        self.alphabet.as_bytes()[l.0 as usize] as char
    }
}

pub fn parse_puzzle(text: &str) -> Result<PuzzleFile, ParseError> {
    let mut lines = text.lines().enumerate();

    let (n, header) = lines
        .next()
        .ok_or(ParseError { line: 1, message: "empty file".into() })?;
    if header.trim() != "pauli-puzzle v1" {
        return err(n + 1, "expected header `pauli-puzzle v1`");
    }

    let mut region: Option<Arc<RegionData>> = None;
    let mut alphabet: Option<String> = None;
    let mut rows: Vec<(usize, i64, i64, String)> = Vec::new();

    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("region") => {
                let kind = words.next().unwrap_or("");
                let nums: Vec<i64> = words
                    .map(|w| {
                        w.parse().map_err(|_| ParseError {
                            line: lineno,
                            message: format!("bad integer `{w}`"),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                let r = match (kind, nums.as_slice()) {
                    ("ball", [radius]) if *radius >= 0 => {
                        RegionData::ball(BallCenter::Face(up(0, 0)), *radius as u32)
                    }
                    ("torus", [x1, y1, x2, y2]) => RegionData::torus((*x1, *y1), (*x2, *y2)),
                    _ => {
                        return err(lineno, "expected `region ball R` or `region torus x1 y1 x2 y2`")
                    }
                };
                match r {
                    Ok(r) => region = Some(r),
                    Err(e) => return err(lineno, format!("{e}")),
                }
            }
            Some("alphabet") => {
                let a = words.next().unwrap_or("").to_string();
                if a.is_empty() || a.len() > 8 || a.contains('.') {
                    return err(lineno, "alphabet must be 1..=8 characters, none of them `.`");
                }
                alphabet = Some(a);
            }
            Some("row") => {
                let y: i64 = match words.next().and_then(|w| w.parse().ok()) {
                    Some(v) => v,
                    None => return err(lineno, "expected `row y start letters`"),
                };
                let start: i64 = match words.next().and_then(|w| w.parse().ok()) {
                    Some(v) => v,
                    None => return err(lineno, "expected `row y start letters`"),
                };
                let letters = match words.next() {
                    Some(v) => v.to_string(),
                    None => return err(lineno, "expected `row y start letters`"),
                };
                rows.push((lineno, y, start, letters));
            }
            Some(other) => return err(lineno, format!("unknown directive `{other}`")),
            None => {}
        }
    }

    let region = match region {
        Some(r) => r,
        None => return err(1, "missing `region` line"),
    };
    let alphabet = match alphabet {
        Some(a) => a,
        None => return err(1, "missing `alphabet` line"),
    };

    let mut patch = Patch::empty(region.clone());
    let mut covered = vec![false; region.len()];
    for (lineno, y, start, letters) in rows {
        for (k, c) in letters.chars().enumerate() {
            let pos = start + k as i64;
            let face = face_at(0, y, pos);
            let i = match region.index_of(face) {
                Some(i) => i,
                None => {
                    return err(
                        lineno,
                        format!("row {y} position {pos} (column {}) is outside the region", k + 1),
                    )
                }
            };
            if covered[i] {
                return err(lineno, format!("row {y} position {pos} covered twice"));
            }
            covered[i] = true;
            if c != '.' {
                match alphabet.find(c) {
                    Some(l) => patch.letters[i] = Some(Letter(l as u8)),
                    None => {
                        return err(
                            lineno,
                            format!("character `{c}` (column {}) is not in the alphabet", k + 1),
                        )
                    }
                }
            }
        }
    }
    if let Some(i) = covered.iter().position(|&c| !c) {
        return err(
            1,
            format!("face {:?} of the region is not covered by any row", region.faces[i]),
        );
    }

    Ok(PuzzleFile { patch, alphabet })
}

/// Serializes a patch back to the text format; `parse_puzzle` inverts this.
pub fn write_puzzle(patch: &Patch, alphabet: &str) -> String {
    let region = &patch.region;
    let mut out = String::from("pauli-puzzle v1\n");
    match &region.region {
        pauli_puzzles::lattice::Region::Ball { radius, .. } => {
            out.push_str(&format!("region ball {radius}\n"));
        }
        pauli_puzzles::lattice::Region::Torus { v1, v2 } => {
            out.push_str(&format!("region torus {} {} {} {}\n", v1.0, v1.1, v2.0, v2.1));
        }
        other => panic!("unsupported region kind in puzzle file: {other:?}"),
    }
    out.push_str(&format!("alphabet {alphabet}\n"));

    let mut by_row: BTreeMap<i64, BTreeMap<i64, char>> = BTreeMap::new();
    for (i, &f) in region.faces.iter().enumerate() {
        let (y, pos) = line_coords(f, 0);
        let c = match patch.letters[i] {
            Some(l) => alphabet.as_bytes()[l.0 as usize] as char,
            None => '.',
        };
        by_row.entry(y).or_default().insert(pos, c);
    }
    // Top row first; one line per contiguous run.
    for (y, cells) in by_row.into_iter().rev() {
        let mut run_start: Option<i64> = None;
        let mut run = String::new();
        let mut prev: Option<i64> = None;
        for (pos, c) in cells {
            if prev.is_some_and(|p| pos != p + 1) {
                out.push_str(&format!("row {y} {} {run}\n", run_start.unwrap()));
                run.clear();
                run_start = None;
            }
            if run_start.is_none() {
                run_start = Some(pos);
            }
            run.push(c);
            prev = Some(pos);
        }
        if let Some(s) = run_start {
            out.push_str(&format!("row {y} {s} {run}\n"));
        }
    }
    out
}

/// Group specification: order, multiplication table rows, involutions.
///
/// ```text
/// group v1
/// order 6
/// table 0 1 2 3 4 5
/// ... (order rows)
/// involutions 1 2
/// ```
pub fn parse_group(text: &str) -> Result<(FiniteGroup, Vec<u16>), ParseError> {
    let mut order: Option<usize> = None;
    let mut table_rows: Vec<Vec<u16>> = Vec::new();
    let mut involutions: Vec<u16> = Vec::new();
    let mut lines = text.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or(ParseError { line: 1, message: "empty file".into() })?;
    if header.trim() != "group v1" {
        return err(1, "expected header `group v1`");
    }

    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("order") => {
                order = match words.next().and_then(|w| w.parse().ok()) {
                    Some(n) if n > 0 => Some(n),
                    _ => return err(lineno, "expected `order N`"),
                };
            }
            Some("table") => {
                let row: Vec<u16> = words
                    .map(|w| {
                        w.parse().map_err(|_| ParseError {
                            line: lineno,
                            message: format!("bad table entry `{w}`"),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                table_rows.push(row);
            }
            Some("involutions") => {
                involutions = words
                    .map(|w| {
                        w.parse().map_err(|_| ParseError {
                            line: lineno,
                            message: format!("bad involution index `{w}`"),
                        })
                    })
                    .collect::<Result<_, _>>()?;
            }
            Some(other) => return err(lineno, format!("unknown directive `{other}`")),
            None => {}
        }
    }

    let order = order.ok_or(ParseError { line: 1, message: "missing `order`".into() })?;
    if table_rows.len() != order || table_rows.iter().any(|r| r.len() != order) {
        return err(1, format!("expected {order} table rows of {order} entries"));
    }
    let flat: Vec<u16> = table_rows.into_iter().flatten().collect();
    let group = FiniteGroup::from_table(flat, Default::default())
        .map_err(|e| ParseError { line: 1, message: format!("{e}") })?;
    if involutions.is_empty() {
        return err(1, "missing `involutions`");
    }
    Ok((group, involutions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pauli_puzzles::engine::CompiledRings;

    #[test]
    fn roundtrip_ball() {
        let region = RegionData::ball(BallCenter::Face(up(0, 0)), 2).unwrap();
        let mut patch = Patch::empty(region);
        patch.set(up(0, 0), Letter(0)).unwrap();
        patch.set(pauli_puzzles::lattice::down(0, 0), Letter(2)).unwrap();
        let text = write_puzzle(&patch, "XYZ");
        let parsed = parse_puzzle(&text).unwrap();
        assert_eq!(parsed.patch.letters, patch.letters);
        assert_eq!(write_puzzle(&parsed.patch, "XYZ"), text);
    }

    #[test]
    fn roundtrip_torus() {
        let region = RegionData::torus((3, 0), (0, 2)).unwrap();
        let rings = CompiledRings::pauli();
        let all = pauli_puzzles::engine::enumerate_completions(&Patch::empty(region), &rings, None);
        for p in &all.patches {
            let text = write_puzzle(p, "XYZ");
            let parsed = parse_puzzle(&text).unwrap();
            assert_eq!(parsed.patch.letters, p.letters);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(parse_puzzle("nonsense").is_err());
        let e = parse_puzzle("pauli-puzzle v1\nregion ball 1\nalphabet XYZ\nrow 9 0 X\n")
            .unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_puzzle("pauli-puzzle v1\nregion ball 0\nalphabet XYZ\nrow 0 0 Q\n")
            .unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("column 1"));
    }

    #[test]
    fn missing_faces_rejected() {
        let text = "pauli-puzzle v1\nregion ball 1\nalphabet XYZ\nrow 0 0 XY\n";
        assert!(parse_puzzle(text).is_err());
    }

    #[test]
    fn group_file_roundtrip() {
        let mut text = String::from("group v1\norder 6\n");
        let s3 = FiniteGroup::symmetric_3();
        for a in 0..6u16 {
            text.push_str("table");
            for b in 0..6u16 {
                text.push_str(&format!(" {}", s3.mul(a, b)));
            }
            text.push('\n');
        }
        text.push_str(&format!(
            "involutions {} {}\n",
            s3.element("(1,2)").unwrap(),
            s3.element("(2,3)").unwrap()
        ));
        let (group, inv) = parse_group(&text).unwrap();
        assert_eq!(group.order(), 6);
        assert_eq!(inv.len(), 2);
        assert!(group.is_involution(inv[0]));
    }

    #[test]
    fn bad_group_rejected() {
        let text = "group v1\norder 2\ntable 0 0\ntable 0 0\ninvolutions 1\n";
        assert!(parse_group(text).is_err());
    }
}
