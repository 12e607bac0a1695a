use std::fmt::Write as _;

use super::{Point, TLDiagram};

/// Text picture of a diagram.
///
/// ```text
/// T∩ ( ) |
///        \
/// B∪ |
/// (o × 1)
/// ```
///
/// The top and bottom rows give one token per point: `(` and `)` open and
/// close an arc between points of the same row, `|` marks a through strand.
/// The middle row shows each through strand under its top point, leaning
/// `/` or `\` towards its bottom point. Circles are listed only when present.
pub fn render_ascii(d: &TLDiagram) -> String {
    let row = |prefix: &str, n: usize, at: &dyn Fn(usize) -> Point| {
        let mut line = prefix.to_string();
        for i in 1..=n {
            let p = at(i);
            let q = d.partner_of(p);
            let same_row = std::mem::discriminant(&p) == std::mem::discriminant(&q);
            line.push(match (same_row, p < q) {
                (false, _) => '|',
                (true, true) => '(',
                (true, false) => ')',
            });
            line.push(' ');
        }
        line.trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str(&row("T∩ ", d.src(), &Point::Top));
    out.push('\n');
    let mut middle = "   ".to_string();
    for i in 1..=d.src() {
        middle.push(match d.partner_of(Point::Top(i)) {
            Point::Bottom(j) if j == i => '|',
            Point::Bottom(j) if j < i => '/',
            Point::Bottom(_) => '\\',
            Point::Top(_) => ' ',
        });
        middle.push(' ');
    }
    out.push_str(middle.trim_end());
    out.push('\n');
    out.push_str(&row("B∪ ", d.tgt(), &Point::Bottom));
    out.push('\n');
    if d.circles() > 0 {
        writeln!(out, "(o × {})", d.circles()).unwrap();
    }
    out
}

const STEP: i64 = 40;
const TOP: i64 = 30;
const BOTTOM: i64 = 150;

/// Standalone SVG picture: arcs as quadratic curves, through strands as cubic
/// curves, circles drawn in a row below. Integer coordinates only, so the
/// output is byte-identical for equal diagrams.
pub fn render_svg(d: &TLDiagram) -> String {
    let cols = d.src().max(d.tgt()).max(1) as i64;
    let circles = d.circles() as i64;
    let width = STEP * (cols + 1);
    let height = BOTTOM + 30 + if circles > 0 { 40 } else { 0 };
    let x = |i: usize| STEP * i as i64;
    let y = |p: Point| match p {
        Point::Top(_) => TOP,
        Point::Bottom(_) => BOTTOM,
    };
    let col = |p: Point| match p {
        Point::Top(i) | Point::Bottom(i) => i,
    };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    writeln!(
        out,
        "  <rect x=\"{}\" y=\"{TOP}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#bbbbbb\"/>",
        STEP / 2,
        width - STEP,
        BOTTOM - TOP
    )
    .unwrap();
    for (a, b) in d.pairs() {
        let (xa, ya, xb, yb) = (x(col(a)), y(a), x(col(b)), y(b));
        let path = if ya == yb {
            let bulge = STEP / 2 + (xb - xa).abs() / 2;
            let cy = if ya == TOP { ya + bulge } else { ya - bulge };
            format!("M {xa} {ya} Q {} {cy} {xb} {yb}", (xa + xb) / 2)
        } else {
            let mid = (ya + yb) / 2;
            format!("M {xa} {ya} C {xa} {mid} {xb} {mid} {xb} {yb}")
        };
        writeln!(
            out,
            "  <path d=\"{path}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>"
        )
        .unwrap();
    }
    for p in (1..=d.src())
        .map(Point::Top)
        .chain((1..=d.tgt()).map(Point::Bottom))
    {
        writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>",
            x(col(p)),
            y(p)
        )
        .unwrap();
    }
    for k in 0..circles {
        writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"12\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
            STEP / 2 + 10 + 30 * k,
            BOTTOM + 40
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
