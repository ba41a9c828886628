//! SVG pictures of tropical curves. Output depends only on the curve.

use std::fmt::Write;
use tropsev::arith::{gcd, to_f64, IVec};
use tropsev::tropical::Curve;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

fn multiplicity(s: IVec) -> i64 {
    gcd(s[0], s[1])
}

fn is_elevator(s: IVec) -> bool {
    s[0] == 0 && s[1] != 0
}

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (MARGIN + (p[0] - self.x0) * self.scale, MARGIN + (self.y1 - p[1]) * self.scale)
    }
}

fn leg_end(base: [f64; 2], s: IVec, len: f64) -> [f64; 2] {
    let n = ((s[0] * s[0] + s[1] * s[1]) as f64).sqrt();
    [base[0] + len * s[0] as f64 / n, base[1] + len * s[1] as f64 / n]
}

pub fn render_svg(c: &Curve) -> String {
    let pos = |v: usize| {
        let p = &c.vertices[&v].pos;
        [to_f64(&p[0]), to_f64(&p[1])]
    };
    let pts: Vec<[f64; 2]> = c.vertices.keys().map(|&v| pos(v)).collect();
    let lo = |i: usize| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
    let hi = |i: usize| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
    let (mut x0, mut x1, mut y0, mut y1) = if pts.is_empty() { (0.0, 1.0, 0.0, 1.0) } else { (lo(0), hi(0), lo(1), hi(1)) };
    let ray = 0.25 * (x1 - x0).max(y1 - y0).max(1.0);
    for l in c.legs.iter().filter(|l| !l.is_contracted()) {
        let e = leg_end(pos(l.v), l.slope, ray);
        x0 = x0.min(e[0]);
        x1 = x1.max(e[0]);
        y0 = y0.min(e[1]);
        y1 = y1.max(e[1]);
    }
    let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0).max(1e-9);
    let f = Frame { x0, y1, scale };
    let w = (x1 - x0) * scale + 2.0 * MARGIN;
    let h = (y1 - y0) * scale + 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#);
    let _ = writeln!(
        out,
        "<style>line{{stroke:#222;stroke-width:1.5}}.elevator{{stroke:#c0392b;stroke-width:2.5}}.leg{{stroke-dasharray:4 3}}text{{font:11px sans-serif}}</style>"
    );
    let seg = |out: &mut String, a: [f64; 2], b: [f64; 2], class: &str, id: String, m: i64| {
        let (ax, ay) = f.map(a);
        let (bx, by) = f.map(b);
        let _ = writeln!(out, r#"<line id="{id}" class="{class}" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#);
        if m > 1 {
            let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{m}</text>"#, (ax + bx) / 2.0 + 3.0, (ay + by) / 2.0 - 3.0);
        }
    };
    for e in c.edges.values() {
        if e.is_loop() || e.slope == [0, 0] {
            continue;
        }
        let class = if is_elevator(e.slope) { "edge elevator" } else { "edge" };
        seg(&mut out, pos(e.v), pos(e.w), class, format!("e{}", e.id), multiplicity(e.slope));
    }
    for l in c.legs.iter().filter(|l| !l.is_contracted()) {
        let class = if is_elevator(l.slope) { "leg elevator" } else { "leg" };
        seg(&mut out, pos(l.v), leg_end(pos(l.v), l.slope, ray), class, format!("l{}", l.id), multiplicity(l.slope));
    }
    for (&v, vx) in &c.vertices {
        let (x, y) = f.map(pos(v));
        let loops = c.edges.values().filter(|e| e.is_loop() && e.v == v).count();
        if vx.weight > 0 || loops > 0 {
            let _ = writeln!(out, r##"<circle id="v{v}" cx="{x:.3}" cy="{y:.3}" r="6" fill="none" stroke="#2c3e50"/>"##);
        }
    }
    for l in c.marks() {
        let (x, y) = f.map(pos(l.v));
        let _ = writeln!(out, r##"<circle id="m{}" cx="{x:.3}" cy="{y:.3}" r="3.5" fill="#2980b9"/>"##, l.id);
    }
    out.push_str("</svg>\n");
    out
}
