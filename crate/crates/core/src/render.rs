//! SVG drawing of compiled diagrams.

use std::fmt::Write;

use thiserror::Error;

use crate::diagram::Diagram;
use crate::tangle::{straight_through, Crossing, Element, Point};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;
/// Fraction of an under strand left blank on each side of the over strand.
const GAP: f64 = 0.18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("diagram carries no layout; build it with compile_with_layout")]
    NoLayout,
}

/// Renders a diagram built by [`crate::compile_with_layout`].
///
/// Strands are drawn along their routes; each crossing adds its over strand
/// and a `class="under"` path interrupted around the over strand, and every
/// root-level child tangle gets a `class="tangle-box"` outline. Output is a
/// pure function of the diagram.
pub fn render_svg(d: &Diagram) -> Result<String, RenderError> {
    let s = d.strands().ok_or(RenderError::NoLayout)?;
    let layout = s.layout.as_ref().ok_or(RenderError::NoLayout)?;
    let used = |n: usize| s.mate[n] != n;
    let points = (0..layout.pos.len())
        .filter(|&n| used(n))
        .map(|n| layout.pos[n])
        .chain(layout.route.iter().flatten().copied());
    let (mut lo, mut hi) = (Point { x: 0.0, y: 0.0 }, Point { x: layout.width, y: layout.height });
    for p in points {
        lo = Point { x: lo.x.min(p.x), y: lo.y.min(p.y) };
        hi = Point { x: hi.x.max(p.x), y: hi.y.max(p.y) };
    }
    let (w, h) = ((hi.x - lo.x) * SCALE + 2.0 * MARGIN, (hi.y - lo.y) * SCALE + 2.0 * MARGIN);
    let to_svg = |p: Point| (MARGIN + (p.x - lo.x) * SCALE, MARGIN + (hi.y - p.y) * SCALE);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    let _ = writeln!(
        out,
        "<style>.strand,.over,.under{{fill:none;stroke:#222;stroke-width:2}}.tangle-box{{fill:none;stroke:#88a;stroke-dasharray:4 3}}</style>"
    );
    for b in &layout.boxes {
        let (x0, y1) = to_svg(b.min);
        let (x1, y0) = to_svg(b.max);
        let _ = writeln!(
            out,
            r#"<rect class="tangle-box" data-vertex="{}" x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}"/>"#,
            b.vertex,
            x1 - x0,
            y1 - y0
        );
    }
    for (n, route) in layout.route.iter().enumerate() {
        let m = s.mate[n];
        if m <= n || route.len() < 2 {
            continue;
        }
        let mut path = String::new();
        for (i, &p) in route.iter().enumerate() {
            let (x, y) = to_svg(p);
            let _ = write!(path, "{}{x:.2} {y:.2}", if i == 0 { "M" } else { " L" });
        }
        if route.windows(2).any(|q| q[0] != q[1]) {
            let _ = writeln!(out, r#"<path class="strand" d="{path}"/>"#);
        }
    }
    // beads pass strands straight through, possibly across a gap
    for (e, el) in s.elements.iter().enumerate() {
        if !matches!(el, Element::Bead(_)) {
            continue;
        }
        for a in 4 * e..4 * e + 4 {
            let Some(b) = straight_through(&s.elements, a) else { continue };
            if b < a || !used(a) || !used(b) || layout.pos[a] == layout.pos[b] {
                continue;
            }
            let (p, q) = (to_svg(layout.pos[a]), to_svg(layout.pos[b]));
            let _ = writeln!(
                out,
                r#"<path class="strand" d="M{:.2} {:.2} L{:.2} {:.2}"/>"#,
                p.0, p.1, q.0, q.1
            );
        }
    }
    for (i, &e) in s.crossing_element.iter().enumerate() {
        let Element::Crossing { sign, .. } = s.elements[e] else { continue };
        let c = Crossing::at(e, sign);
        let p = |node: usize| layout.pos[node];
        let (a, b) = (to_svg(p(c.over_in)), to_svg(p(c.over_out)));
        let _ = writeln!(
            out,
            r#"<line class="over" data-crossing="{i}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            a.0, a.1, b.0, b.1
        );
        let (u, v) = (to_svg(p(c.under_in)), to_svg(p(c.under_out)));
        let lerp = |t: f64| (u.0 + (v.0 - u.0) * t, u.1 + (v.1 - u.1) * t);
        let (g0, g1) = (lerp(0.5 - GAP), lerp(0.5 + GAP));
        let _ = writeln!(
            out,
            r#"<path class="under" data-crossing="{i}" d="M{:.2} {:.2} L{:.2} {:.2} M{:.2} {:.2} L{:.2} {:.2}"/>"#,
            u.0, u.1, g0.0, g0.1, g1.0, g1.1, v.0, v.1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{compile, compile_with_layout, Tangle};
    use crate::tree::{parse_tree, PlaneTree};

    #[test]
    fn trefoil_has_three_gaps() {
        let svg = render_svg(&Tangle::twist(3).numerator_closure()).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches(r#"class="under""#).count(), 3);
        assert_eq!(svg.matches(r#"class="over""#).count(), 3);
    }

    #[test]
    fn deterministic() {
        let t = parse_tree("(2 (3 (-2)) (2) (4 (2) (2)))").unwrap();
        let a = render_svg(&compile_with_layout(&t)).unwrap();
        let b = render_svg(&compile_with_layout(&t)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn star_boxes_in_a_row() {
        let t = PlaneTree::star(2, &vec![vec![3]; 4]);
        let d = compile_with_layout(&t);
        let boxes = &d.layout().unwrap().boxes;
        assert_eq!(boxes.len(), 4);
        for pair in boxes.windows(2) {
            assert!(pair[0].max.x <= pair[1].min.x);
            assert_eq!(pair[0].min.y, pair[1].min.y);
        }
        let svg = render_svg(&d).unwrap();
        assert_eq!(svg.matches(r#"class="tangle-box""#).count(), 4);
    }

    #[test]
    fn plain_compile_has_no_layout() {
        let t = parse_tree("(3)").unwrap();
        assert_eq!(render_svg(&compile(&t)), Err(RenderError::NoLayout));
    }
}
