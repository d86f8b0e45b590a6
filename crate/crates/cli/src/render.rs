//! Rendering: SVG with the standard color encoding, and the text format
//! itself as the ASCII rendering (so ascii output re-parses to the input).

use pauli_puzzles::engine::Patch;
use pauli_puzzles::lattice::Vertex;

use crate::format::write_puzzle;

/// Fill colors per letter index: X red, Y blue-green, Z yellow-orange;
/// further letters fall back to grays.
const COLORS: [&str; 8] = [
    "#ff3300", "#006699", "#ffe400", "#999999", "#666666", "#cccccc", "#333333", "#eeeeee",
];

const SCALE: f64 = 40.0;

fn vertex_xy(v: Vertex) -> (f64, f64) {
    // e1 = (1, 0), e2 = (1/2, sqrt(3)/2), with the y axis flipped for SVG.
    let x = v.x as f64 + v.y as f64 / 2.0;
    let y = -(v.y as f64) * (3.0f64).sqrt() / 2.0;
    (x * SCALE, y * SCALE)
}

/// Deterministic standalone SVG: one triangle polygon per region face,
/// unassigned faces drawn with no fill.
pub fn render_svg(patch: &Patch) -> String {
    let region = &patch.region;
    let mut pts: Vec<[(f64, f64); 3]> = Vec::with_capacity(region.len());
    let (mut xmin, mut ymin, mut xmax, mut ymax) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &f in &region.faces {
        let vs = f.vertices().map(vertex_xy);
        for (x, y) in vs {
            xmin = xmin.min(x);
            ymin = ymin.min(y);
            xmax = xmax.max(x);
            ymax = ymax.max(y);
        }
        pts.push(vs);
    }
    let pad = 4.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\">\n",
        xmin - pad,
        ymin - pad,
        xmax - xmin + 2.0 * pad,
        ymax - ymin + 2.0 * pad
    ));
    for (i, vs) in pts.iter().enumerate() {
        let fill = match patch.letters[i] {
            Some(l) => COLORS[l.0 as usize % COLORS.len()],
            None => "none",
        };
        out.push_str(&format!(
            "  <polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
            vs[0].0, vs[0].1, vs[1].0, vs[1].1, vs[2].0, vs[2].1, fill
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// The ASCII rendering is the puzzle file format itself.
pub fn render_ascii(patch: &Patch, alphabet: &str) -> String {
    write_puzzle(patch, alphabet)
}
