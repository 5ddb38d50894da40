//! Static grid plots of a table.
//!
//! Two-component links get the `(v1, v2)` plane, anything else gets the diagonal line.
//! Nonzero groups are point markers; the quadrant where `β` has settled at `r - 1` is shaded.

use std::fmt::Write;

use cablefloer::HalfInt;

use crate::report::OutputTable;

const CELL: f64 = 36.0;
const MARGIN: f64 = 48.0;

fn steps(lo: HalfInt, hi: HalfInt) -> i64 {
    (hi - lo).doubled() / 2
}

fn header(out: &mut String, w: f64, h: f64, caption: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, r#"<title>{}</title>"#, escape(caption)).unwrap();
    writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{MARGIN}" y="20" font-size="13" font-family="sans-serif">{}</text>"#,
        escape(caption)
    )
    .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// `stable` is the largest diagonal value at or below which `β = r - 1`.
pub fn render(table: &OutputTable, r: usize, stable: HalfInt) -> String {
    if r == 2 {
        plane(table, stable)
    } else {
        diagonal(table, stable)
    }
}

fn plane(table: &OutputTable, stable: HalfInt) -> String {
    let (lo, hi) = table.window;
    let n = steps(lo, hi) + 1;
    let side = 2.0 * MARGIN + CELL * n as f64;
    let x_of = |v: HalfInt| MARGIN + CELL * (steps(lo, v) as f64 + 0.5);
    let y_of = |v: HalfInt| MARGIN + CELL * (steps(v, hi) as f64 + 0.5);
    let mut out = String::new();
    header(&mut out, side, side, &table.caption);

    if stable >= lo {
        let edge = x_of(stable.min(hi)) + CELL / 2.0;
        let top = y_of(stable.min(hi)) - CELL / 2.0;
        writeln!(
            out,
            r##"<rect class="stable" x="{MARGIN}" y="{top}" width="{}" height="{}" fill="#d0d0d0"/>"##,
            edge - MARGIN,
            side - MARGIN - top
        )
        .unwrap();
    }
    for i in 0..=n {
        let t = MARGIN + CELL * i as f64;
        let end = MARGIN + CELL * n as f64;
        writeln!(
            out,
            r##"<line x1="{t}" y1="{MARGIN}" x2="{t}" y2="{end}" stroke="#bbbbbb"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r##"<line x1="{MARGIN}" y1="{t}" x2="{end}" y2="{t}" stroke="#bbbbbb"/>"##
        )
        .unwrap();
    }
    let mut v = lo;
    while v <= hi {
        let label_y = side - MARGIN + 16.0;
        writeln!(
            out,
            r#"<text x="{}" y="{label_y}" font-size="10" text-anchor="middle">{v}</text>"#,
            x_of(v)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{v}</text>"#,
            MARGIN - 4.0,
            y_of(v) + 3.0
        )
        .unwrap();
        v = v + 1;
    }
    let d0 = (x_of(lo) - CELL / 2.0, y_of(lo) + CELL / 2.0);
    let d1 = (x_of(hi) + CELL / 2.0, y_of(hi) - CELL / 2.0);
    writeln!(
        out,
        r##"<line class="diagonal" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#4060a0" stroke-dasharray="4 3"/>"##,
        d0.0, d0.1, d1.0, d1.1
    )
    .unwrap();

    // Rows are orbit representatives; draw both orderings.
    for row in &table.rows {
        let c = row.grading.coords();
        let mut points = vec![(c[0], c[1])];
        if c[0] != c[1] {
            points.push((c[1], c[0]));
        }
        for (a, b) in points {
            marker(&mut out, x_of(a), y_of(b), &row.dims.to_string(), row.dims.total());
        }
    }
    out.push_str("</svg>\n");
    out
}

fn diagonal(table: &OutputTable, stable: HalfInt) -> String {
    let (lo, hi) = table.window;
    let n = steps(lo, hi) + 1;
    let width = 2.0 * MARGIN + CELL * n as f64;
    let height = 2.0 * MARGIN + CELL;
    let x_of = |v: HalfInt| MARGIN + CELL * (steps(lo, v) as f64 + 0.5);
    let mut out = String::new();
    header(&mut out, width, height, &table.caption);
    if stable >= lo {
        let edge = x_of(stable.min(hi)) + CELL / 2.0;
        writeln!(
            out,
            r##"<rect class="stable" x="{MARGIN}" y="{MARGIN}" width="{}" height="{CELL}" fill="#d0d0d0"/>"##,
            edge - MARGIN
        )
        .unwrap();
    }
    let mid = MARGIN + CELL / 2.0;
    writeln!(
        out,
        r##"<line x1="{MARGIN}" y1="{mid}" x2="{}" y2="{mid}" stroke="#4060a0"/>"##,
        width - MARGIN
    )
    .unwrap();
    let mut v = lo;
    while v <= hi {
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{v}</text>"#,
            x_of(v),
            height - 16.0
        )
        .unwrap();
        v = v + 1;
    }
    for row in &table.rows {
        let c = row.grading.coords();
        if c.iter().all(|&x| x == c[0]) {
            marker(&mut out, x_of(c[0]), mid, &row.dims.to_string(), row.dims.total());
        }
    }
    out.push_str("</svg>\n");
    out
}

fn marker(out: &mut String, x: f64, y: f64, label: &str, total: u64) {
    let radius = 3.0 + (total as f64).sqrt() * 2.0;
    writeln!(
        out,
        r##"<circle cx="{x}" cy="{y}" r="{radius:.2}" fill="#202020"><title>{label}</title></circle>"##
    )
    .unwrap();
}
