//! Four-ended tangles built from twist regions by sums and quarter-turn
//! rotations, and their numerator closures.
//!
//! A tangle is a set of elements (crossings and beads), each owning four
//! node slots, plus four terminal nodes NW, NE, SW, SE. `mate` is a fixed-point
//! free involution pairing the nodes joined by a strand segment. Gluing two
//! terminals inserts a bead, a two-ended pass-through element, so the glue
//! point survives as an addressable place on the final diagram.

use crate::diagram::Diagram;
use crate::fraction::{cf_value, Fraction};
use crate::tree::{PlaneTree, VertexId};

pub const NW: usize = 0;
pub const NE: usize = 1;
pub const SW: usize = 2;
pub const SE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strand {
    Top,
    Bottom,
}

/// Where a bead sits in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeadTag {
    /// Glue between summand `index - 1` and summand `index` of the sum built
    /// at `vertex`; summand 0 is the vertex's own twist region.
    Interface { vertex: Option<VertexId>, index: usize, strand: Strand },
    /// Numerator closure: the top strand joins NW to NE.
    Closure { strand: Strand },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    /// Slots NW, NE, SW, SE. A positive crossing has its overstrand running
    /// from SW to NE.
    Crossing { sign: i8, owner: Option<VertexId> },
    /// Slots 0 and 1 are joined straight through; 2 and 3 are unused.
    Bead(BeadTag),
}

/// Node-level view of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

impl Crossing {
    pub(crate) fn at(element: usize, sign: i8) -> Self {
        let base = 4 * element;
        if sign > 0 {
            Crossing {
                over_in: base + SW,
                over_out: base + NE,
                under_in: base + NW,
                under_out: base + SE,
                sign,
            }
        } else {
            Crossing {
                over_in: base + NW,
                over_out: base + SE,
                under_in: base + SW,
                under_out: base + NE,
                sign,
            }
        }
    }
}

/// Node across an element from `node`, following the strand straight on.
/// `None` for terminals and unused bead slots.
pub(crate) fn straight_through(elements: &[Element], node: usize) -> Option<usize> {
    let (e, slot) = (node / 4, node % 4);
    match elements.get(e)? {
        Element::Crossing { .. } => Some(4 * e + (3 - slot)),
        Element::Bead(_) if slot < 2 => Some(4 * e + (1 - slot)),
        Element::Bead(_) => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn shift(self, dx: f64, dy: f64) -> Self {
        Point::new(self.x + dx, self.y + dy)
    }
}

/// A summand box of the root sum, in layout coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangleBox {
    pub vertex: VertexId,
    pub min: Point,
    pub max: Point,
}

impl TangleBox {
    fn shifted(&self, dx: f64, dy: f64) -> Self {
        TangleBox { vertex: self.vertex, min: self.min.shift(dx, dy), max: self.max.shift(dx, dy) }
    }
}

/// Planar drawing data riding along the algebra. Coordinates have y up; the
/// tangle occupies `[0, width] x [0, height]` with terminals at the corners.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub width: f64,
    pub height: f64,
    /// Position of every node.
    pub pos: Vec<Point>,
    /// Polyline from each node to its mate, both ends included.
    pub route: Vec<Vec<Point>>,
    pub boxes: Vec<TangleBox>,
}

impl Layout {
    fn map_points(&mut self, f: impl Fn(Point) -> Point) {
        for p in self.pos.iter_mut() {
            *p = f(*p);
        }
        for r in self.route.iter_mut() {
            for p in r.iter_mut() {
                *p = f(*p);
            }
        }
        for b in self.boxes.iter_mut() {
            let (a, c) = (f(b.min), f(b.max));
            b.min = Point::new(a.x.min(c.x), a.y.min(c.y));
            b.max = Point::new(a.x.max(c.x), a.y.max(c.y));
        }
    }
}

const GAP: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Tangle {
    elements: Vec<Element>,
    mate: Vec<usize>,
    fraction: Option<Fraction>,
    layout: Option<Layout>,
}

impl Tangle {
    /// Horizontal twist region of `|w|` crossings with sign of `w`.
    pub fn twist(w: i64) -> Self {
        Self::twist_region(w, None, true)
    }

    pub(crate) fn twist_region(w: i64, owner: Option<VertexId>, with_layout: bool) -> Self {
        let n = w.unsigned_abs() as usize;
        let sign = w.signum() as i8;
        let elements = vec![Element::Crossing { sign, owner }; n];
        let t = 4 * n;
        let mut mate = vec![0; t + 4];
        let mut join = |a: usize, b: usize| {
            mate[a] = b;
            mate[b] = a;
        };
        if n == 0 {
            join(t + NW, t + NE);
            join(t + SW, t + SE);
        } else {
            join(t + NW, NW);
            join(t + SW, SW);
            for i in 0..n - 1 {
                join(4 * i + NE, 4 * (i + 1) + NW);
                join(4 * i + SE, 4 * (i + 1) + SW);
            }
            join(t + NE, 4 * (n - 1) + NE);
            join(t + SE, 4 * (n - 1) + SE);
        }
        let layout = with_layout.then(|| {
            let width = n.max(1) as f64;
            let mut pos = vec![Point::new(0.0, 0.0); t + 4];
            for i in 0..n {
                let x = i as f64;
                pos[4 * i + NW] = Point::new(x, 1.0);
                pos[4 * i + NE] = Point::new(x + 1.0, 1.0);
                pos[4 * i + SW] = Point::new(x, 0.0);
                pos[4 * i + SE] = Point::new(x + 1.0, 0.0);
            }
            pos[t + NW] = Point::new(0.0, 1.0);
            pos[t + NE] = Point::new(width, 1.0);
            pos[t + SW] = Point::new(0.0, 0.0);
            pos[t + SE] = Point::new(width, 0.0);
            let route = (0..t + 4).map(|a| vec![pos[a], pos[mate[a]]]).collect();
            Layout { width, height: 1.0, pos, route, boxes: vec![] }
        });
        Tangle { elements, mate, fraction: Some(Fraction::integer(w)), layout }
    }

    pub fn crossing_count(&self) -> usize {
        self.elements.iter().filter(|e| matches!(e, Element::Crossing { .. })).count()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    /// Bookkept fraction when the tangle is rational.
    pub fn fraction(&self) -> Option<Fraction> {
        self.fraction
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_ref()
    }

    pub fn terminal(&self, corner: usize) -> usize {
        4 * self.elements.len() + corner
    }

    /// Crossings in element order.
    pub fn crossings(&self) -> Vec<Crossing> {
        self.elements
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match *e {
                Element::Crossing { sign, .. } => Some(Crossing::at(i, sign)),
                Element::Bead(_) => None,
            })
            .collect()
    }

    /// For each corner, the corner joined to it by a strand.
    pub fn boundary_pairing(&self) -> [usize; 4] {
        let base = 4 * self.elements.len();
        let mut out = [0; 4];
        for (corner, slot) in out.iter_mut().enumerate() {
            let mut node = self.mate[base + corner];
            while node < base {
                node = self.mate[straight_through(&self.elements, node).expect("strand node")];
            }
            *slot = node - base;
        }
        out
    }

    /// Horizontal sum: glues `self.NE` to `right.NW` and `self.SE` to
    /// `right.SW`.
    pub fn sum(&self, right: &Tangle) -> Tangle {
        self.sum_tagged(right, None, 1, None)
    }

    pub(crate) fn sum_tagged(
        &self,
        right: &Tangle,
        vertex: Option<VertexId>,
        index: usize,
        record_box: Option<VertexId>,
    ) -> Tangle {
        let (nl, nr) = (self.elements.len(), right.elements.len());
        let ne = nl + nr + 2;
        let term = 4 * ne;
        let (bead_top, bead_bottom) = (4 * (nl + nr), 4 * (nl + nr + 1));
        let map_l = |x: usize| -> usize {
            if x < 4 * nl {
                return x;
            }
            match x - 4 * nl {
                NW => term + NW,
                NE => bead_top,
                SW => term + SW,
                _ => bead_bottom,
            }
        };
        let map_r = |x: usize| -> usize {
            if x < 4 * nr {
                return x + 4 * nl;
            }
            match x - 4 * nr {
                NW => bead_top + 1,
                NE => term + NE,
                SW => bead_bottom + 1,
                _ => term + SE,
            }
        };
        let mut elements = Vec::with_capacity(ne);
        elements.extend_from_slice(&self.elements);
        elements.extend_from_slice(&right.elements);
        for strand in [Strand::Top, Strand::Bottom] {
            elements.push(Element::Bead(BeadTag::Interface { vertex, index, strand }));
        }
        let mut mate: Vec<usize> = (0..term + 4).collect();
        for (x, &y) in self.mate.iter().enumerate() {
            mate[map_l(x)] = map_l(y);
        }
        for (x, &y) in right.mate.iter().enumerate() {
            mate[map_r(x)] = map_r(y);
        }

        let fraction = match (self.fraction, right.fraction) {
            (Some(a), Some(b)) if a.is_integer() => Some(b.add_integer(a.numerator())),
            (Some(a), Some(b)) if b.is_integer() => Some(a.add_integer(b.numerator())),
            _ => None,
        };

        let layout = match (&self.layout, &right.layout) {
            (Some(l), Some(r)) => {
                let height = l.height.max(r.height);
                let (dyl, dyr) = ((height - l.height) / 2.0, (height - r.height) / 2.0);
                let dxr = l.width + GAP;
                let width = dxr + r.width;
                let mut pos = vec![Point::new(0.0, 0.0); term + 4];
                let mut route = vec![vec![]; term + 4];
                for (x, p) in l.pos.iter().enumerate() {
                    pos[map_l(x)] = p.shift(0.0, dyl);
                    route[map_l(x)] = l.route[x].iter().map(|p| p.shift(0.0, dyl)).collect();
                }
                for (x, p) in r.pos.iter().enumerate() {
                    pos[map_r(x)] = p.shift(dxr, dyr);
                    route[map_r(x)] = r.route[x].iter().map(|p| p.shift(dxr, dyr)).collect();
                }
                let mut boxes: Vec<TangleBox> = l.boxes.iter().map(|b| b.shifted(0.0, dyl)).collect();
                boxes.extend(r.boxes.iter().map(|b| b.shifted(dxr, dyr)));
                if let Some(vertex) = record_box {
                    boxes.push(TangleBox {
                        vertex,
                        min: Point::new(dxr, dyr),
                        max: Point::new(width, dyr + r.height),
                    });
                }
                let mut out = Layout { width, height, pos, route, boxes };
                // beads span the gap; terminals move out to the new corners
                let corners = [
                    (NW, Point::new(0.0, height)),
                    (NE, Point::new(width, height)),
                    (SW, Point::new(0.0, 0.0)),
                    (SE, Point::new(width, 0.0)),
                ];
                for (corner, p) in corners {
                    move_terminal(&mut out, &mate, term + corner, p);
                }
                Some(out)
            }
            _ => None,
        };
        Tangle { elements, mate, fraction, layout }
    }

    /// Quarter turn counterclockwise: NW<-NE, SW<-NW, SE<-SW, NE<-SE.
    pub fn rotate(&self) -> Tangle {
        let term = 4 * self.elements.len();
        // old corner -> new corner
        let corner_map = |c: usize| match c {
            NE => NW,
            NW => SW,
            SW => SE,
            _ => NE,
        };
        let map = |x: usize| if x < term { x } else { term + corner_map(x - term) };
        let mut mate = vec![0; self.mate.len()];
        for (x, &y) in self.mate.iter().enumerate() {
            mate[map(x)] = map(y);
        }
        let layout = self.layout.as_ref().map(|l| {
            let mut pos = vec![Point::new(0.0, 0.0); l.pos.len()];
            let mut route = vec![vec![]; l.route.len()];
            for x in 0..l.pos.len() {
                pos[map(x)] = l.pos[x];
                route[map(x)] = l.route[x].clone();
            }
            let h = l.height;
            let mut out =
                Layout { width: l.height, height: l.width, pos, route, boxes: l.boxes.clone() };
            out.map_points(|p| Point::new(h - p.y, p.x));
            out
        });
        Tangle {
            elements: self.elements.clone(),
            mate,
            fraction: self.fraction.map(|f| f.rotated()),
            layout,
        }
    }

    /// Joins NW to NE and SW to SE.
    pub fn numerator_closure(&self) -> Diagram {
        let (elements, mate, layout) = self.close();
        Diagram::from_strands(elements, mate, layout)
    }

    pub(crate) fn close(&self) -> (Vec<Element>, Vec<usize>, Option<Layout>) {
        let n = self.elements.len();
        let term = 4 * n;
        let (top, bottom) = (4 * n, 4 * (n + 1));
        let map = |x: usize| -> usize {
            if x < term {
                return x;
            }
            match x - term {
                NW => top,
                NE => top + 1,
                SW => bottom,
                _ => bottom + 1,
            }
        };
        let mut elements = self.elements.clone();
        elements.push(Element::Bead(BeadTag::Closure { strand: Strand::Top }));
        elements.push(Element::Bead(BeadTag::Closure { strand: Strand::Bottom }));
        let mut mate: Vec<usize> = (0..4 * (n + 2)).collect();
        for (x, &y) in self.mate.iter().enumerate() {
            mate[map(x)] = map(y);
        }
        let layout = self.layout.as_ref().map(|l| {
            let (w, h) = (l.width, l.height);
            let mut pos = vec![Point::new(0.0, 0.0); 4 * (n + 2)];
            let mut route = vec![vec![]; 4 * (n + 2)];
            for x in 0..l.pos.len() {
                pos[map(x)] = l.pos[x];
                route[map(x)] = l.route[x].clone();
            }
            let mut out = Layout { width: w, height: h, pos, route, boxes: l.boxes.clone() };
            let lift = [
                (top, Point::new(0.0, h + GAP)),
                (top + 1, Point::new(w, h + GAP)),
                (bottom, Point::new(0.0, -GAP)),
                (bottom + 1, Point::new(w, -GAP)),
            ];
            for (node, p) in lift {
                move_terminal(&mut out, &mate, node, p);
            }
            for b in [top, bottom] {
                out.pos[b + 2] = out.pos[b];
                out.pos[b + 3] = out.pos[b];
            }
            out
        });
        (elements, mate, layout)
    }
}

fn move_terminal(layout: &mut Layout, mate: &[usize], node: usize, p: Point) {
    if layout.pos[node] == p {
        return;
    }
    layout.pos[node] = p;
    layout.route[node].insert(0, p);
    let m = mate[node];
    layout.route[m].push(p);
}

/// `twist(a1) + rotate(twist(a2) + rotate(...))`, built from the right.
pub fn rational_tangle(weights: &[i64]) -> Tangle {
    rational_tangle_with(weights, true)
}

pub(crate) fn rational_tangle_with(weights: &[i64], with_layout: bool) -> Tangle {
    assert!(!weights.is_empty(), "rational tangle needs at least one weight");
    let n = weights.len();
    let mut t = Tangle::twist_region(weights[n - 1], Some(n - 1), with_layout);
    for i in (0..n - 1).rev() {
        t = Tangle::twist_region(weights[i], Some(i), with_layout).sum_tagged(
            &t.rotate(),
            Some(i),
            1,
            None,
        );
    }
    debug_assert_eq!(t.fraction, Some(cf_value(weights)));
    t
}

/// Tangle of `v`: its twist region summed with each rotated child tangle in
/// plane order.
pub(crate) fn vertex_tangle(tree: &PlaneTree, v: VertexId, with_layout: bool) -> Tangle {
    let mut t = Tangle::twist_region(tree.weight(v), Some(v), with_layout);
    let at_root = v == tree.root();
    for (j, &c) in tree.children(v).iter().enumerate() {
        let child = vertex_tangle(tree, c, with_layout).rotate();
        t = t.sum_tagged(&child, Some(v), j + 1, at_root.then_some(c));
    }
    t
}

/// Placement of each vertex's twist crossings among the gaps around its
/// children: `slots(v)[i]` crossings sit just before child `i`, the last
/// entry after the final child.
///
/// Crossings may only occupy gaps connected to gap 0 by flypes across
/// path-shaped children (and, at the root, around the closure), so every
/// presentation compiles to a diagram of the same link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    slots: Vec<Vec<i64>>,
}

impl Presentation {
    /// All crossings before the first child, as [`compile`] does.
    pub fn standard(tree: &PlaneTree) -> Self {
        let slots = (0..tree.len())
            .map(|v| {
                let mut s = vec![0; tree.children(v).len() + 1];
                s[0] = tree.weight(v);
                s
            })
            .collect();
        Presentation { slots }
    }

    pub fn slots(&self, v: VertexId) -> &[i64] {
        &self.slots[v]
    }

    /// Gaps of `v` its crossings may occupy.
    pub fn movable_gaps(tree: &PlaneTree, v: VertexId) -> Vec<usize> {
        let kids = tree.children(v);
        let k = kids.len();
        let rational: Vec<bool> = kids.iter().map(|&c| is_chain(tree, c)).collect();
        let mut ok = vec![false; k + 1];
        ok[0] = true;
        for i in 0..k {
            if !rational[i] {
                break;
            }
            ok[i + 1] = true;
        }
        if v == tree.root() {
            ok[k] = true;
            for i in (0..k).rev() {
                if !rational[i] {
                    break;
                }
                ok[i] = true;
            }
        }
        (0..=k).filter(|&i| ok[i]).collect()
    }

    /// Moves all of `v`'s crossings to `gap`. Returns false when the gap is
    /// not reachable.
    pub fn place(&mut self, tree: &PlaneTree, v: VertexId, gap: usize) -> bool {
        self.split(tree, v, &[(gap, tree.weight(v))])
    }

    /// Distributes `v`'s crossings as `(gap, count)` parts, which must have
    /// the sign of the weight and sum to it.
    pub fn split(&mut self, tree: &PlaneTree, v: VertexId, parts: &[(usize, i64)]) -> bool {
        let w = tree.weight(v);
        let gaps = Self::movable_gaps(tree, v);
        let total: i64 = parts.iter().map(|p| p.1).sum();
        let valid = total == w
            && parts.iter().all(|&(g, c)| gaps.contains(&g) && c.signum() * w.signum() >= 0);
        if valid {
            let s = &mut self.slots[v];
            s.iter_mut().for_each(|x| *x = 0);
            for &(g, c) in parts {
                s[g] += c;
            }
        }
        valid
    }
}

fn is_chain(tree: &PlaneTree, mut v: VertexId) -> bool {
    loop {
        match tree.children(v) {
            [] => return true,
            [c] => v = *c,
            _ => return false,
        }
    }
}

fn presented_tangle(tree: &PlaneTree, p: &Presentation, v: VertexId) -> Tangle {
    let slots = p.slots(v);
    let mut t: Option<Tangle> = None;
    let mut index = 0;
    let mut push = |t: &mut Option<Tangle>, next: Tangle| {
        *t = Some(match t.take() {
            None => next,
            Some(acc) => {
                index += 1;
                acc.sum_tagged(&next, Some(v), index, None)
            }
        });
    };
    for (i, &c) in tree.children(v).iter().enumerate() {
        if slots[i] != 0 || (i == 0 && t.is_none() && slots.iter().all(|&x| x == 0)) {
            push(&mut t, Tangle::twist_region(slots[i], Some(v), false));
        }
        push(&mut t, presented_tangle(tree, p, c).rotate());
    }
    let last = *slots.last().unwrap();
    if last != 0 || t.is_none() {
        push(&mut t, Tangle::twist_region(last, Some(v), false));
    }
    t.unwrap()
}

/// Compiles `tree` with its twist crossings placed as in `p`.
pub fn compile_presented(tree: &PlaneTree, p: &Presentation) -> Diagram {
    let (elements, mate, layout) = presented_tangle(tree, p, tree.root()).close();
    Diagram::from_strands(elements, mate, layout)
}

/// Compiles a weighted plane tree to its arborescent link diagram.
pub fn compile(tree: &PlaneTree) -> Diagram {
    compile_with(tree, false)
}

/// As [`compile`], keeping the layout needed by [`crate::render::render_svg`].
pub fn compile_with_layout(tree: &PlaneTree) -> Diagram {
    compile_with(tree, true)
}

fn compile_with(tree: &PlaneTree, with_layout: bool) -> Diagram {
    let t = vertex_tangle(tree, tree.root(), with_layout);
    let (elements, mate, layout) = t.close();
    Diagram::from_strands(elements, mate, layout)
}
