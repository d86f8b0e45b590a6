//! Command implementations; each returns the report text and an exit code
//! (0 success, 1 invalid input, 2 verification failure).

use std::fmt::Write as _;
use std::sync::Arc;

use pauli_puzzles::engine::{
    canonical_form, classify, enumerate_completions, validate, Classification, CompiledRings,
    Patch,
};
use pauli_puzzles::finite::{
    build_u, gersten_stallings_angle, shortest_kernel_word, Angle, FiniteGroup, KernelLength,
};
use pauli_puzzles::general::PuzzleSystem;
use pauli_puzzles::graph::{cayley_link_graph, generalized_petersen, girth, graph_isomorphic};
use pauli_puzzles::lattice::{up, BallCenter, RegionData};
use pauli_puzzles::matrix::verify_defining_relations;
use pauli_puzzles::ring::word_to_string;

use crate::format::{parse_group, parse_puzzle, write_puzzle, ParseError};
use crate::render::{render_ascii, render_svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 1;
pub const EXIT_VERIFICATION_FAILURE: i32 = 2;

pub enum GroupChoice {
    Pauli,
    S3,
    File(String),
}

impl GroupChoice {
    pub fn parse(s: &str) -> GroupChoice {
        match s {
            "pauli" => GroupChoice::Pauli,
            "s3" => GroupChoice::S3,
            path => GroupChoice::File(path.to_string()),
        }
    }

    fn system(&self) -> Result<(PuzzleSystem, String), String> {
        match self {
            GroupChoice::Pauli => Ok((PuzzleSystem::pauli(), "XYZ".into())),
            GroupChoice::S3 => Ok((PuzzleSystem::s3_checker(), "ab".into())),
            GroupChoice::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {path}: {e}"))?;
                let (group, involutions) =
                    parse_group(&text).map_err(|e| format!("{path}: {e}"))?;
                let k = involutions.len();
                let sys = PuzzleSystem::new(group, involutions)
                    .map_err(|e| format!("{path}: {e}"))?;
                let alphabet: String =
                    "abcdefgh".chars().take(k).collect();
                Ok((sys, alphabet))
            }
        }
    }
}

pub fn cmd_relations() -> (String, i32) {
    let report = verify_defining_relations();
    let mut out = String::new();
    for c in &report.checks {
        let _ = writeln!(out, "{}={}", c.name, if c.pass { "pass" } else { "fail" });
    }
    let _ = writeln!(out, "result={}", if report.all_pass() { "pass" } else { "fail" });
    let code = if report.all_pass() { EXIT_OK } else { EXIT_VERIFICATION_FAILURE };
    (out, code)
}

pub fn cmd_ringset(group: &GroupChoice) -> (String, i32) {
    let (sys, alphabet) = match group.system() {
        Ok(v) => v,
        Err(e) => return (format!("error={e}\n"), EXIT_INVALID_INPUT),
    };
    let mut out = String::new();
    let k = sys.ring_set.alphabet_size();
    let _ = writeln!(out, "alphabet={alphabet}");
    let _ = writeln!(out, "ring_word_count={}", sys.ring_set.words().len());
    let _ = writeln!(out, "class_count={}", sys.ring_set.fundamental_classes().len());
    for (i, c) in sys.ring_set.fundamental_classes().iter().enumerate() {
        let _ = writeln!(out, "class_{i}={}", word_to_string(c, k));
    }
    let npc = sys.ring_set.npc_check();
    let _ = writeln!(out, "npc={}", if npc.pass { "pass" } else { "fail" });
    let _ = writeln!(out, "symmetry_order={}", sys.ring_set.symmetries().len());
    for (i, w) in sys.ring_set.words().iter().enumerate() {
        let _ = writeln!(out, "word_{i}={}", word_to_string(w, k));
    }
    let code = if npc.pass { EXIT_OK } else { EXIT_VERIFICATION_FAILURE };
    (out, code)
}

pub fn cmd_angles() -> (String, i32) {
    let u = build_u();
    let v = FiniteGroup::symmetric_3();
    let w = FiniteGroup::cyclic(6);
    let n_u = shortest_kernel_word(&u, u.element("T").unwrap(), u.element("X").unwrap());
    let n_v = shortest_kernel_word(&v, v.element("(1,2)").unwrap(), v.element("(2,3)").unwrap());
    let n_w = shortest_kernel_word(&w, 2, 3);
    let fmt_len = |n: KernelLength| match n {
        KernelLength::Finite(k) => k.to_string(),
        KernelLength::Infinite => "infinity".to_string(),
    };
    let a_u = gersten_stallings_angle(n_u);
    let a_v = gersten_stallings_angle(n_v);
    let a_w = gersten_stallings_angle(n_w);
    let sum: Angle = a_u + a_v + a_w;

    let mut out = String::new();
    let _ = writeln!(out, "kernel_length_u={}", fmt_len(n_u));
    let _ = writeln!(out, "kernel_length_v={}", fmt_len(n_v));
    let _ = writeln!(out, "kernel_length_w={}", fmt_len(n_w));
    let _ = writeln!(out, "angle_u={a_u}");
    let _ = writeln!(out, "angle_v={a_v}");
    let _ = writeln!(out, "angle_w={a_w}");
    let _ = writeln!(out, "angle_sum={sum}");
    let _ = writeln!(out, "nonspherical={}", sum.at_most_pi());

    let link = cayley_link_graph();
    let _ = writeln!(out, "link_graph_vertices={}", link.vertex_count());
    let _ = writeln!(out, "link_graph_edges={}", link.edge_count());
    let _ = writeln!(
        out,
        "link_graph_girth={}",
        girth(&link).map(|g| g.to_string()).unwrap_or_else(|| "infinity".into())
    );
    let mk = generalized_petersen(8, 3);
    let _ = writeln!(out, "moebius_kantor={}", graph_isomorphic(&link, &mk).is_some());
    (out, EXIT_OK)
}

pub struct EnumerateArgs {
    pub region: Option<String>,
    pub group: GroupChoice,
    pub seed: Option<String>,
    pub limit: Option<usize>,
    pub out_dir: Option<String>,
}

fn parse_region_flag(s: &str) -> Result<Arc<RegionData>, String> {
    let (kind, rest) = s.split_once(':').ok_or("expected `ball:R` or `torus:x1,y1,x2,y2`")?;
    let nums: Vec<i64> = rest
        .split(',')
        .map(|w| w.trim().parse().map_err(|_| format!("bad integer `{w}`")))
        .collect::<Result<_, _>>()?;
    match (kind, nums.as_slice()) {
        ("ball", [r]) if *r >= 0 => {
            RegionData::ball(BallCenter::Face(up(0, 0)), *r as u32).map_err(|e| e.to_string())
        }
        ("torus", [x1, y1, x2, y2]) => {
            RegionData::torus((*x1, *y1), (*x2, *y2)).map_err(|e| e.to_string())
        }
        _ => Err("expected `ball:R` or `torus:x1,y1,x2,y2`".into()),
    }
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> (String, i32) {
    let (sys, alphabet) = match args.group.system() {
        Ok(v) => v,
        Err(e) => return (format!("error={e}\n"), EXIT_INVALID_INPUT),
    };

    let seed_patch = match &args.seed {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return (format!("error=cannot read {path}: {e}\n"), EXIT_INVALID_INPUT),
            };
            match parse_puzzle(&text) {
                Ok(f) => Some(f.patch),
                Err(e) => return (format!("error={path}: {e}\n"), EXIT_INVALID_INPUT),
            }
        }
        None => None,
    };

    let patch = match (&seed_patch, &args.region) {
        (Some(p), _) => p.clone(),
        (None, Some(flag)) => match parse_region_flag(flag) {
            Ok(region) => Patch::empty(region),
            Err(e) => return (format!("error={e}\n"), EXIT_INVALID_INPUT),
        },
        (None, None) => {
            return ("error=need --region or --seed\n".into(), EXIT_INVALID_INPUT)
        }
    };

    let result = enumerate_completions(&patch, &sys.compiled, args.limit);
    let mut out = String::new();
    let _ = writeln!(out, "count={}", result.patches.len());
    let _ = writeln!(out, "truncated={}", result.truncated);

    // Orbit representatives under region symmetries and ring symmetries.
    let mut classes: std::collections::BTreeMap<Vec<u8>, Patch> = Default::default();
    for p in &result.patches {
        let canon = canonical_form(p, &sys.compiled, None);
        classes.entry(canon).or_insert_with(|| p.clone());
    }
    let _ = writeln!(out, "count_up_to_symmetry={}", classes.len());

    if let Some(dir) = &args.out_dir {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return (format!("error=cannot create {dir}: {e}\n"), EXIT_INVALID_INPUT);
        }
        for (i, p) in classes.values().enumerate() {
            let path = format!("{dir}/puzzle_{i:03}.txt");
            if let Err(e) = std::fs::write(&path, write_puzzle(p, &alphabet)) {
                return (format!("error=cannot write {path}: {e}\n"), EXIT_INVALID_INPUT);
            }
            let _ = writeln!(out, "wrote={path}");
        }
    }
    (out, EXIT_OK)
}

fn load_puzzle(path: &str) -> Result<crate::format::PuzzleFile, (String, i32)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (format!("error=cannot read {path}: {e}\n"), EXIT_INVALID_INPUT))?;
    parse_puzzle(&text).map_err(|e: ParseError| {
        (format!("error={path}: {e}\n"), EXIT_INVALID_INPUT)
    })
}

pub fn cmd_validate(path: &str, group: &GroupChoice) -> (String, i32) {
    let file = match load_puzzle(path) {
        Ok(f) => f,
        Err(r) => return r,
    };
    let (sys, _) = match group.system() {
        Ok(v) => v,
        Err(e) => return (format!("error={e}\n"), EXIT_INVALID_INPUT),
    };
    if file.alphabet.len() != sys.ring_set.alphabet_size() {
        return (
            format!(
                "error=alphabet size {} does not match the group's {} involutions\n",
                file.alphabet.len(),
                sys.ring_set.alphabet_size()
            ),
            EXIT_INVALID_INPUT,
        );
    }
    let violations = validate(&file.patch, &sys.compiled);
    let mut out = String::new();
    for v in &violations {
        let line = match v {
            pauli_puzzles::engine::Violation::AdjacentEqual { a, b } => {
                format!("violation=adjacent_equal at={a:?} and={b:?}")
            }
            pauli_puzzles::engine::Violation::RingInvalid { vertex } => {
                format!("violation=ring_invalid vertex={vertex:?}")
            }
            pauli_puzzles::engine::Violation::RingUnmatchable { vertex } => {
                format!("violation=ring_unmatchable vertex={vertex:?}")
            }
        };
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "violations={}", violations.len());
    let _ = writeln!(out, "valid={}", violations.is_empty());
    let code = if violations.is_empty() { EXIT_OK } else { EXIT_VERIFICATION_FAILURE };
    (out, code)
}

pub fn cmd_classify(path: &str) -> (String, i32) {
    let file = match load_puzzle(path) {
        Ok(f) => f,
        Err(r) => return r,
    };
    if file.alphabet != "XYZ" {
        return ("error=classification is defined for the XYZ alphabet\n".into(), EXIT_INVALID_INPUT);
    }
    let rings = CompiledRings::pauli();
    let violations = validate(&file.patch, &rings);
    if !violations.is_empty() {
        return (
            format!("error=puzzle is not valid ({} violations)\n", violations.len()),
            EXIT_VERIFICATION_FAILURE,
        );
    }
    let mut out = String::new();
    match classify(&file.patch, &rings) {
        Classification::TStripUnion { direction, transverse } => {
            let _ = writeln!(out, "verdict=t_strip_union");
            let _ = writeln!(out, "direction={direction}");
            let _ = writeln!(out, "tau={}", transverse.tau);
            let rle: Vec<String> =
                transverse.deltas.iter().map(|(d, c)| format!("{d}x{c}")).collect();
            let _ = writeln!(out, "transverse={}", rle.join(","));
        }
        Classification::MPuzzleCore { letter, seed, radius } => {
            let _ = writeln!(out, "verdict=m_puzzle_core");
            let _ = writeln!(out, "letter={}", ['X', 'Y', 'Z'][letter.0 as usize]);
            let _ = writeln!(out, "seed={seed}");
            let _ = writeln!(out, "radius={radius}");
        }
        Classification::Indeterminate { reason } => {
            let _ = writeln!(out, "verdict=indeterminate");
            let _ = writeln!(out, "reason={reason}");
        }
    }
    (out, EXIT_OK)
}

pub fn cmd_render(path: &str, format: &str) -> (String, i32) {
    let file = match load_puzzle(path) {
        Ok(f) => f,
        Err(r) => return r,
    };
    match format {
        "svg" => (render_svg(&file.patch), EXIT_OK),
        "ascii" => (render_ascii(&file.patch, &file.alphabet), EXIT_OK),
        other => (format!("error=unknown format `{other}`\n"), EXIT_INVALID_INPUT),
    }
}
