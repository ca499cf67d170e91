//! Closed link diagrams: arcs, crossings, component counts and the JSON
//! interchange schema.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tangle::{straight_through, BeadTag, Crossing, Element, Layout};
use crate::tree::VertexId;
use crate::unionfind::UnionFind;

pub type ArcId = usize;

/// A crossing seen through arcs: the over arc and the two under arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArcCrossing {
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: i8,
}

impl ArcCrossing {
    pub fn is_kink(&self) -> bool {
        self.over == self.under_in || self.over == self.under_out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid diagram JSON: {0}")]
    Json(String),
    #[error("crossing {crossing} references arc {arc}, but only {arcs} arcs exist")]
    UnknownArc { crossing: usize, arc: ArcId, arcs: usize },
    #[error("crossing {0} has two different over arcs")]
    SplitOver(usize),
    #[error("crossing {0} has sign other than +1 or -1")]
    BadSign(usize),
    #[error("arc ids must be 0..{0}")]
    ArcIds(usize),
    #[error("recorded component count {recorded} disagrees with computed {computed}")]
    Components { recorded: usize, computed: usize },
}

/// Strand-level data kept for diagrams produced by closing a tangle.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Strands {
    pub elements: Vec<Element>,
    pub mate: Vec<usize>,
    /// Arc of every used node (`usize::MAX` for unused bead slots).
    pub arc_of: Vec<ArcId>,
    /// Element index of each crossing.
    pub crossing_element: Vec<usize>,
    pub layout: Option<Layout>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagram {
    crossings: Vec<ArcCrossing>,
    arc_count: usize,
    components: usize,
    strands: Option<Box<Strands>>,
}

impl Diagram {
    pub(crate) fn from_strands(
        elements: Vec<Element>,
        mate: Vec<usize>,
        layout: Option<Layout>,
    ) -> Diagram {
        let nodes = 4 * elements.len();
        debug_assert_eq!(mate.len(), nodes);
        let used = |x: usize| straight_through(&elements, x).is_some();

        // arcs: strand segments plus passes over crossings and through beads
        let mut arcs = UnionFind::new(nodes);
        let mut strands = UnionFind::new(nodes);
        let mut crossing_element = vec![];
        let mut node_crossings = vec![];
        for x in (0..nodes).filter(|&x| used(x)) {
            arcs.union(x, mate[x]);
            strands.union(x, mate[x]);
            strands.union(x, straight_through(&elements, x).unwrap());
        }
        for (e, el) in elements.iter().enumerate() {
            match *el {
                Element::Crossing { sign, .. } => {
                    let c = Crossing::at(e, sign);
                    arcs.union(c.over_in, c.over_out);
                    crossing_element.push(e);
                    node_crossings.push(c);
                }
                Element::Bead(_) => {
                    arcs.union(4 * e, 4 * e + 1);
                }
            }
        }
        let mut arc_of = vec![usize::MAX; nodes];
        let mut root_arc = vec![usize::MAX; nodes];
        let mut arc_count = 0;
        for x in (0..nodes).filter(|&x| used(x)) {
            let r = arcs.find(x);
            if root_arc[r] == usize::MAX {
                root_arc[r] = arc_count;
                arc_count += 1;
            }
            arc_of[x] = root_arc[r];
        }
        let crossings: Vec<ArcCrossing> = node_crossings
            .iter()
            .map(|c| ArcCrossing {
                over: arc_of[c.over_in],
                under_in: arc_of[c.under_in],
                under_out: arc_of[c.under_out],
                sign: c.sign,
            })
            .collect();
        let mut seen = vec![false; nodes];
        let mut components = 0;
        for x in (0..nodes).filter(|&x| used(x)) {
            let r = strands.find(x);
            if !seen[r] {
                seen[r] = true;
                components += 1;
            }
        }
        Diagram {
            crossings,
            arc_count,
            components,
            strands: Some(Box::new(Strands {
                elements,
                mate,
                arc_of,
                crossing_element,
                layout,
            })),
        }
    }

    /// Builds an arc-level diagram; the component count is derived.
    pub fn from_arcs(crossings: Vec<ArcCrossing>, arc_count: usize) -> Result<Diagram, DiagramError> {
        for (i, c) in crossings.iter().enumerate() {
            for arc in [c.over, c.under_in, c.under_out] {
                if arc >= arc_count {
                    return Err(DiagramError::UnknownArc { crossing: i, arc, arcs: arc_count });
                }
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::BadSign(i));
            }
        }
        let components = components_from_arcs(&crossings, arc_count);
        Ok(Diagram { crossings, arc_count, components, strands: None })
    }

    pub fn crossings(&self) -> &[ArcCrossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        self.components
    }

    /// Whether the projection is connected (and non-empty).
    pub fn is_connected(&self) -> bool {
        if self.arc_count == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.arc_count);
        for c in &self.crossings {
            uf.union(c.over, c.under_in);
            uf.union(c.over, c.under_out);
        }
        uf.count() == 1
    }

    pub fn is_kink_free(&self) -> bool {
        self.crossings.iter().all(|c| !c.is_kink())
    }

    /// Twist-region owner of crossing `i`, for compiled diagrams.
    pub fn crossing_owner(&self, i: usize) -> Option<VertexId> {
        let s = self.strands.as_ref()?;
        match s.elements[s.crossing_element[i]] {
            Element::Crossing { owner, .. } => owner,
            Element::Bead(_) => None,
        }
    }

    /// Every glue bead of the construction with the arc it lies on.
    pub fn beads(&self) -> Vec<(BeadTag, ArcId)> {
        let Some(s) = self.strands.as_ref() else {
            return vec![];
        };
        s.elements
            .iter()
            .enumerate()
            .filter_map(|(e, el)| match *el {
                Element::Bead(tag) => Some((tag, s.arc_of[4 * e])),
                Element::Crossing { .. } => None,
            })
            .collect()
    }

    pub(crate) fn strands(&self) -> Option<&Strands> {
        self.strands.as_deref()
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.strands.as_ref()?.layout.as_ref()
    }

    /// Components by following arcs through undercrossings; independent of
    /// the strand-level count made at closure.
    pub fn components_from_arcs(&self) -> usize {
        components_from_arcs(&self.crossings, self.arc_count)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            crossings: self
                .crossings
                .iter()
                .enumerate()
                .map(|(id, c)| CrossingJson {
                    id,
                    over: [c.over, c.over],
                    under_in: c.under_in,
                    under_out: c.under_out,
                    sign: c.sign,
                })
                .collect(),
            arcs: (0..self.arc_count).collect(),
            components: self.components,
        }
    }

    /// Serialized [`DiagramJson`].
    pub fn export(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("diagram JSON serializes")
    }

    pub fn import(text: &str) -> Result<Diagram, DiagramError> {
        let json: DiagramJson =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        Diagram::from_json(&json)
    }

    pub fn from_json(json: &DiagramJson) -> Result<Diagram, DiagramError> {
        let n = json.arcs.len();
        if json.arcs.iter().enumerate().any(|(i, &a)| a != i) {
            return Err(DiagramError::ArcIds(n));
        }
        let mut crossings = vec![None; json.crossings.len()];
        for c in &json.crossings {
            if c.over[0] != c.over[1] {
                return Err(DiagramError::SplitOver(c.id));
            }
            let slot = crossings
                .get_mut(c.id)
                .ok_or_else(|| DiagramError::Json(format!("crossing id {} out of range", c.id)))?;
            *slot = Some(ArcCrossing {
                over: c.over[0],
                under_in: c.under_in,
                under_out: c.under_out,
                sign: c.sign,
            });
        }
        let crossings = crossings
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DiagramError::Json("duplicate crossing id".into()))?;
        let d = Diagram::from_arcs(crossings, n)?;
        if d.components != json.components {
            return Err(DiagramError::Components {
                recorded: json.components,
                computed: d.components,
            });
        }
        Ok(d)
    }
}

fn components_from_arcs(crossings: &[ArcCrossing], arc_count: usize) -> usize {
    let mut uf = UnionFind::new(arc_count);
    for c in crossings {
        uf.union(c.under_in, c.under_out);
    }
    uf.count()
}

/// Number of link components of a closed diagram.
pub fn count_components(d: &Diagram) -> usize {
    d.components()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub id: usize,
    pub over: [ArcId; 2],
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub crossings: Vec<CrossingJson>,
    pub arcs: Vec<ArcId>,
    pub components: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{compile, rational_tangle, Tangle};
    use crate::tree::parse_tree;

    #[test]
    fn unlink_from_zero_tangle() {
        let d = Tangle::twist(0).numerator_closure();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.components(), 2);
        assert_eq!(d.arc_count(), 2);
        assert!(!d.is_connected());
        let j = d.to_json();
        assert!(j.crossings.is_empty());
        assert_eq!(j.components, 2);
    }

    #[test]
    fn trefoil_closure() {
        let d = Tangle::twist(3).numerator_closure();
        assert_eq!((d.crossing_count(), d.arc_count(), d.components()), (3, 3, 1));
        assert!(d.is_connected() && d.is_kink_free());
        for c in d.crossings() {
            assert!(c.over != c.under_in && c.under_in != c.under_out);
        }
        assert_eq!(d.to_json().crossings.len(), 3);
    }

    #[test]
    fn torus_link_parity() {
        for w in -7i64..=7 {
            let d = Tangle::twist(w).numerator_closure();
            assert_eq!(d.components(), if w % 2 == 0 { 2 } else { 1 }, "w = {w}");
            assert_eq!(d.components_from_arcs(), d.components());
        }
    }

    #[test]
    fn rational_closure_counts() {
        let d = rational_tangle(&[2, 3]).numerator_closure();
        assert_eq!((d.crossing_count(), d.arc_count()), (5, 5));
        // numerator 5 is odd: a knot
        assert_eq!(d.components(), 1);
        let d = rational_tangle(&[2, 2, 2]).numerator_closure();
        assert_eq!(d.components(), 2);
    }

    #[test]
    fn compile_examples() {
        let trefoil = compile(&parse_tree("(3)").unwrap());
        assert_eq!(trefoil.export(), Tangle::twist(3).numerator_closure().export());

        let path = compile(&parse_tree("(2 (3))").unwrap());
        assert_eq!(path.export(), rational_tangle(&[2, 3]).numerator_closure().export());

        let star = compile(&parse_tree("(0 (2) (2) (2))").unwrap());
        assert_eq!(star.crossing_count(), 6);
        assert_eq!(star.components(), 3);
        assert!(star.crossing_owner(0).is_some());
    }

    #[test]
    fn json_round_trip() {
        for text in ["(3)", "(2 (3))", "(0 (2) (2) (2))", "(2 (-3 (2)) (3))", "(0)"] {
            let d = compile(&parse_tree(text).unwrap());
            let back = Diagram::import(&d.export()).unwrap();
            assert_eq!(back.crossings(), d.crossings());
            assert_eq!(back.arc_count(), d.arc_count());
            assert_eq!(back.components(), d.components());
            assert_eq!(back.export(), d.export());
        }
    }

    #[test]
    fn import_rejects_bad_input() {
        assert!(matches!(Diagram::import("{"), Err(DiagramError::Json(_))));
        let bad = r#"{"crossings":[{"id":0,"over":[0,1],"under_in":0,"under_out":0,"sign":1}],"arcs":[0,1],"components":1}"#;
        assert_eq!(Diagram::import(bad), Err(DiagramError::SplitOver(0)));
        let bad = r#"{"crossings":[{"id":0,"over":[5,5],"under_in":0,"under_out":0,"sign":1}],"arcs":[0],"components":1}"#;
        assert!(matches!(Diagram::import(bad), Err(DiagramError::UnknownArc { .. })));
        let bad = r#"{"crossings":[],"arcs":[0,1],"components":1}"#;
        assert_eq!(
            Diagram::import(bad),
            Err(DiagramError::Components { recorded: 1, computed: 2 })
        );
    }
}
