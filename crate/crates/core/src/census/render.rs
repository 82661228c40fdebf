//! Pictures of diagrams on the flat torus: the unit square with opposite
//! sides identified.
//!
//! Crossings are placed by a harmonic layout in the universal cover: each
//! crossing sits at the average of its neighbours' lifts, where the lift of
//! the far end of an edge is shifted by the edge's winding. Edges are straight
//! segments in the cover, clipped into the square piece by piece.

use std::fmt::Write;

use crate::diagram::{crossing_of, TorusDiagram, TorusProjection};

const SIZE: f64 = 400.0;
const GAP: f64 = 0.035;

type P = (f64, f64);

/// Harmonic positions with crossing 0 pinned; `None` when the system is
/// degenerate (two crossings collide).
fn harmonic_layout(d: &TorusDiagram) -> Option<Vec<P>> {
    let TorusProjection::Graph { map, winding } = d.projection() else {
        return Some(Vec::new());
    };
    let n = map.crossings();
    let mut pos: Vec<P> = (0..n).map(|c| grid_point(c, n)).collect();
    for _ in 0..2000 {
        let mut next = pos.clone();
        for (c, slot) in next.iter_mut().enumerate().skip(1) {
            let (mut sx, mut sy) = (0.0, 0.0);
            for h in 4 * c..4 * c + 4 {
                let w = winding.dart(h);
                let far = pos[crossing_of(map.pair(h))];
                sx += far.0 + w.u as f64;
                sy += far.1 + w.v as f64;
            }
            *slot = (sx / 4.0, sy / 4.0);
        }
        pos = next;
    }
    let wrapped: Vec<P> = pos.iter().map(|&(x, y)| (x.rem_euclid(1.0), y.rem_euclid(1.0))).collect();
    for i in 0..n {
        for j in i + 1..n {
            let dx = (wrapped[i].0 - wrapped[j].0).abs();
            let dy = (wrapped[i].1 - wrapped[j].1).abs();
            if dx.min(1.0 - dx) < 1e-3 && dy.min(1.0 - dy) < 1e-3 {
                return None;
            }
        }
    }
    Some(pos)
}

fn grid_point(c: usize, n: usize) -> P {
    let side = (n as f64).sqrt().ceil().max(1.0);
    let (i, j) = (c as f64 % side, (c as f64 / side).floor());
    ((i + 0.5) / side, (j + 0.5) / side)
}

/// Splits the segment `a -> b` (in the cover) into pieces inside the unit
/// square, each translated back into `[0,1)^2`.
fn wrap_segment(a: P, b: P) -> Vec<(P, P)> {
    let mut cuts = vec![0.0, 1.0];
    for (p, q) in [(a.0, b.0), (a.1, b.1)] {
        let (lo, hi) = (p.min(q).floor() as i64, p.max(q).ceil() as i64);
        for k in lo..=hi {
            let t = (k as f64 - p) / (q - p);
            if t > 0.0 && t < 1.0 && t.is_finite() {
                cuts.push(t);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let at = |t: f64| (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t);
    cuts.windows(2)
        .map(|w| {
            let (s, e) = (at(w[0]), at(w[1]));
            let mid = at((w[0] + w[1]) / 2.0);
            let (ox, oy) = (mid.0.floor(), mid.1.floor());
            ((s.0 - ox, s.1 - oy), (e.0 - ox, e.1 - oy))
        })
        .collect()
}

fn px(p: P) -> (f64, f64) {
    (p.0 * SIZE, (1.0 - p.1) * SIZE)
}

/// SVG drawing with one `<g class="edge">` per edge and a gap in the
/// under-strand at every crossing.
pub fn render_svg(d: &TorusDiagram) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="none" stroke="#999" stroke-dasharray="6 4"/>"##
    );
    match d.projection() {
        TorusProjection::Circle(c) => {
            let _ = writeln!(s, r#"<g class="edge">"#);
            if c.is_zero() {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="2"/>"#,
                    SIZE / 2.0,
                    SIZE / 2.0,
                    SIZE / 5.0
                );
            } else {
                let start = (0.5 - c.u as f64 * 1e-3, 0.5 - c.v as f64 * 1e-3);
                let end = (start.0 + c.u as f64, start.1 + c.v as f64);
                for (p, q) in wrap_segment(start, end) {
                    line(&mut s, p, q);
                }
            }
            let _ = writeln!(s, "</g>");
        }
        TorusProjection::Graph { map, winding } => {
            let pos = harmonic_layout(d).unwrap_or_else(|| (0..map.crossings()).map(|c| grid_point(c, map.crossings())).collect());
            for (h, q) in map.edges() {
                let a = pos[crossing_of(h)];
                let w = winding.dart(h);
                let far = pos[crossing_of(q)];
                let mut b = (far.0 + w.u as f64, far.1 + w.v as f64);
                if (b.0 - a.0).abs() + (b.1 - a.1).abs() < 1e-9 {
                    b = (a.0 + 0.05, a.1 + 0.05);
                }
                let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
                let t = (GAP / len).min(0.3);
                let a2 = if d.is_over(h) { a } else { shorten(a, b, t) };
                let b2 = if d.is_over(q) { b } else { shorten(b, a, t) };
                let _ = writeln!(s, r#"<g class="edge" data-from="{h}" data-to="{q}">"#);
                for (p, r) in wrap_segment(a2, b2) {
                    line(&mut s, p, r);
                }
                let _ = writeln!(s, "</g>");
            }
            for (c, &p) in pos.iter().enumerate() {
                let p = (p.0.rem_euclid(1.0), p.1.rem_euclid(1.0));
                let (x, y) = px(p);
                let _ = writeln!(
                    s,
                    r##"<text x="{:.1}" y="{:.1}" font-size="10" fill="#c00">{c}</text>"##,
                    x + 4.0,
                    y - 4.0
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn shorten(from: P, to: P, t: f64) -> P {
    (from.0 + (to.0 - from.0) * t, from.1 + (to.1 - from.1) * t)
}

fn line(s: &mut String, p: P, q: P) {
    let (x1, y1) = px(p);
    let (x2, y2) = px(q);
    let _ = writeln!(
        s,
        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="2"/>"#
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::decode_diagram;

    #[test]
    fn edge_groups_match_edge_count() {
        let d = decode_diagram("tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,1),2:(0,-1);over=0").unwrap();
        let svg = render_svg(&d);
        assert_eq!(svg.matches(r#"<g class="edge""#).count(), 2);
        let circle = render_svg(&TorusDiagram::circle(crate::lattice::Vec2::new(0, 1)).unwrap());
        assert_eq!(circle.matches(r#"<g class="edge""#).count(), 1);
    }

    #[test]
    fn wrapping_splits_at_square_sides() {
        let pieces = wrap_segment((0.5, 0.5), (0.5, 1.5));
        assert_eq!(pieces.len(), 2);
        for (p, q) in pieces {
            for v in [p.0, p.1, q.0, q.1] {
                assert!((-1e-9..=1.0 + 1e-9).contains(&v));
            }
        }
    }
}
