//! Text and SVG pictures of filled boards.
//!
//! The ASCII form prints one board row per line, each cell as `/x\` for
//! the upward triangle and its piece code, followed by the code of the
//! downward cell when present. The SVG form draws one polygon per piece:
//! rhombi are drawn once, anchored at their upward half, and downward
//! triangles are drawn only when they hold a triangle piece of their own.

use std::fmt::Write as _;

use super::{DownKind, Puzzle, UpKind};

/// Compact row-per-line picture using the piece serialization codes.
pub fn render_ascii(p: &Puzzle) -> String {
    let n = p.n();
    let mut out = String::new();
    for r in 1..=n {
        for _ in 0..(n - r) {
            out.push(' ');
        }
        for t in 1..=r {
            out.push('/');
            out.push(p.up(r, t).code());
            out.push('\\');
            if t < r {
                out.push(p.down(r, t).code());
            }
        }
        out.push('\n');
    }
    out
}

const SIDE: f64 = 40.0;
const H: f64 = 34.64; // SIDE * sqrt(3)/2
const MARGIN: f64 = 10.0;

const FILL_ZERO: &str = "#ffffff";
const FILL_ONE: &str = "#9ecbf5";
const FILL_RHOMBUS: &str = "#d9d9d9";
const FILL_EQUIVARIANT: &str = "#f5b971";
const STROKE: &str = "#333333";

fn polygon(out: &mut String, pts: &[(f64, f64)], fill: &str) {
    out.push_str("<polygon points=\"");
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.2},{y:.2}");
    }
    let _ = writeln!(
        out,
        "\" fill=\"{fill}\" stroke=\"{STROKE}\" stroke-width=\"1\"/>"
    );
}

fn text(out: &mut String, x: f64, y: f64, s: &str) {
    let _ = writeln!(
        out,
        "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\" text-anchor=\"middle\" fill=\"{STROKE}\">{s}</text>"
    );
}

/// Standalone SVG document. Deterministic: cells are visited in reading
/// order and coordinates are formatted to two decimals.
pub fn render_svg(p: &Puzzle) -> String {
    let n = p.n();
    let width = 2.0 * MARGIN + n as f64 * SIDE;
    let height = 2.0 * MARGIN + n as f64 * H;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\">"
    );

    // apex x of U(r,t); the row of up cells starts half a side further
    // right for each row above the bottom
    let apex =
        |r: usize, t: usize| MARGIN + (n - r) as f64 * SIDE / 2.0 + (t - 1) as f64 * SIDE + SIDE / 2.0;

    for r in 1..=n {
        let ty = MARGIN + (r - 1) as f64 * H;
        let by = MARGIN + r as f64 * H;
        for t in 1..=r {
            let ax = apex(r, t);
            let tri = [(ax, ty), (ax + SIDE / 2.0, by), (ax - SIDE / 2.0, by)];
            match p.up(r, t) {
                UpKind::Zero => polygon(&mut out, &tri, FILL_ZERO),
                UpKind::One => polygon(&mut out, &tri, FILL_ONE),
                UpKind::NorthSouth => {
                    // rhombus over this cell and the downward cell below it
                    let pts = [
                        (ax, ty),
                        (ax + SIDE / 2.0, by),
                        (ax, by + H),
                        (ax - SIDE / 2.0, by),
                    ];
                    polygon(&mut out, &pts, FILL_RHOMBUS);
                }
                UpKind::NwSe => {
                    // rhombus over this cell and the downward cell to the west
                    let pts = [
                        (ax - SIDE, ty),
                        (ax, ty),
                        (ax + SIDE / 2.0, by),
                        (ax - SIDE / 2.0, by),
                    ];
                    polygon(&mut out, &pts, FILL_RHOMBUS);
                }
                UpKind::SwNe => {
                    // rhombus over this cell and the downward cell to the east
                    let pts = [
                        (ax, ty),
                        (ax + SIDE, ty),
                        (ax + SIDE / 2.0, by),
                        (ax - SIDE / 2.0, by),
                    ];
                    polygon(&mut out, &pts, FILL_RHOMBUS);
                }
                UpKind::Equivariant => {
                    let pts = [
                        (ax, ty),
                        (ax + SIDE / 2.0, by),
                        (ax, by + H),
                        (ax - SIDE / 2.0, by),
                    ];
                    polygon(&mut out, &pts, FILL_EQUIVARIANT);
                }
            }
        }
        // downward triangles not absorbed into a rhombus
        for t in 1..r {
            let d = p.down(r, t);
            let fill = match d {
                DownKind::Zero => FILL_ZERO,
                DownKind::One => FILL_ONE,
                _ => continue,
            };
            let lx = apex(r, t) + SIDE / 2.0;
            let pts = [(lx, ty), (lx + SIDE, ty), (lx + SIDE / 2.0, by)];
            polygon(&mut out, &pts, fill);
        }
    }

    // boundary labels
    for i in 1..=n {
        let r = n + 1 - i; // row whose first cell carries bit i of the northwest side
        let nwx = apex(r, 1) - SIDE / 2.0 - 8.0;
        let nwy = MARGIN + (r as f64 - 0.5) * H;
        text(&mut out, nwx, nwy, if p.nw_string().bit(i) { "1" } else { "0" });
        let nex = apex(i, i) + SIDE / 2.0 + 8.0;
        let ney = MARGIN + (i as f64 - 0.5) * H;
        text(&mut out, nex, ney, if p.ne_string().bit(i) { "1" } else { "0" });
        let sx = apex(n, i);
        let sy = MARGIN + n as f64 * H + 12.0;
        text(&mut out, sx, sy, if p.south_string().bit(i) { "1" } else { "0" });
    }

    out.push_str("</svg>\n");
    out
}
