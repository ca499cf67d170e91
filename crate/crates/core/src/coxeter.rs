//! Coxeter quotients of link groups, verified through the geometric
//! representation.
//!
//! A labeling sends every arc's meridian to a reflection. Seeded arcs get
//! generator matrices, the rest follow by conjugation at crossings, and the
//! labeling is a homomorphism exactly when every crossing is consistent.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use nalgebra::DMatrix;
use twofloat::TwoFloat;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ArcId, Diagram};
use crate::flatten::flattening_number;
use crate::tangle::{compile, rational_tangle, BeadTag};
use crate::tree::{PlaneTree, VertexId};
use crate::unionfind::UnionFind;
use crate::wirtinger::{bridge_upper_bound, BridgeBoundJson};

/// Frobenius defect allowed in every checked relation.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterEdge {
    pub s: usize,
    pub t: usize,
    pub order: u64,
}

/// Generators `0..generators`; pairs without an edge have infinite order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    generators: usize,
    edges: Vec<CoxeterEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {s}-{t} is a loop or names a missing generator")]
    BadEndpoint { s: usize, t: usize },
    #[error("edge {s}-{t} has order {order} < 2")]
    BadOrder { s: usize, t: usize, order: u64 },
    #[error("parallel edges between {s} and {t}")]
    Parallel { s: usize, t: usize },
}

impl CoxeterGraph {
    pub fn new(
        generators: usize,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut out = vec![];
        for (s, t, order) in edges {
            if s == t || s >= generators || t >= generators {
                return Err(GraphError::BadEndpoint { s, t });
            }
            if order < 2 {
                return Err(GraphError::BadOrder { s, t, order });
            }
            let (s, t) = (s.min(t), s.max(t));
            if !seen.insert((s, t)) {
                return Err(GraphError::Parallel { s, t });
            }
            out.push(CoxeterEdge { s, t, order });
        }
        out.sort();
        Ok(CoxeterGraph { generators, edges: out })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn edges(&self) -> &[CoxeterEdge] {
        &self.edges
    }

    pub fn order(&self, s: usize, t: usize) -> Option<u64> {
        let (s, t) = (s.min(t), s.max(t));
        self.edges.iter().find(|e| e.s == s && e.t == t).map(|e| e.order)
    }

    /// `B(e_s, e_t)`: 1 on the diagonal, `-cos(pi/m)` on edges, -1 otherwise.
    pub fn bilinear_form(&self) -> DMatrix<f64> {
        let n = self.generators;
        let mut b = DMatrix::from_element(n, n, -1.0);
        for i in 0..n {
            b[(i, i)] = 1.0;
        }
        for e in &self.edges {
            let c = -(PI / e.order as f64).cos();
            b[(e.s, e.t)] = c;
            b[(e.t, e.s)] = c;
        }
        b
    }
}

/// Reflection matrices `M_s = I - 2 e_s B_s`, where `B_s` is row `s` of the
/// bilinear form. `M_s^2 = I` holds exactly in floating point.
pub fn geometric_representation(graph: &CoxeterGraph) -> Vec<DMatrix<f64>> {
    let b = graph.bilinear_form();
    let n = graph.generators;
    (0..n)
        .map(|s| {
            let mut m = DMatrix::identity(n, n);
            for j in 0..n {
                m[(s, j)] -= 2.0 * b[(s, j)];
            }
            m
        })
        .collect()
}

/// `|| (M_word)^power - I ||_F`.
pub fn relation_defect(reps: &[DMatrix<f64>], word: &[usize], power: u32) -> f64 {
    let n = reps.first().map_or(0, |m| m.nrows());
    let mut w = DMatrix::identity(n, n);
    for &g in word {
        w *= &reps[g];
    }
    let mut p = DMatrix::identity(n, n);
    for _ in 0..power {
        p *= &w;
    }
    (p - DMatrix::identity(n, n)).norm()
}

/// Arc labels fixing a candidate quotient on the diagram of `tree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSeeding {
    /// Tree whose compiled diagram the arc ids refer to. May be a re-rooting
    /// of the input tree.
    pub tree: PlaneTree,
    pub assignment: BTreeMap<ArcId, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("tree has no branching point; use the two-bridge quotient")]
    NoBranchingPoint,
    #[error("twig vertex {vertex} has weight {weight}; weights 0 and ±1 are excluded")]
    ForbiddenWeight { vertex: VertexId, weight: i64 },
    #[error("tree does not have many twigs")]
    NotManyTwigs,
    #[error("arc {arc} is forced to generators {first} and {second}")]
    SeedConflict { arc: ArcId, first: usize, second: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Builds the rank `f(T) + 2` quotient for a tree with many twigs.
///
/// Every branching point `v` labels its twist region and the glue points
/// around its children. An integer tangle between two glue points forces
/// equal labels on both sides; a branching child does too, since its whole
/// boundary carries its own label; a twig child with fraction `p/q` sits
/// rotated, and requires `(u v)^|p| = 1` between the labels `u`, `v` on its
/// sides. The labels around `v` therefore form a cycle with one new
/// generator per twig beyond the first.
pub fn build_coxeter_graph(tree: &PlaneTree) -> Result<(CoxeterGraph, GeneratorSeeding), BuildError> {
    let class = tree.classify();
    let Some(&first_branch) = class.branching_points.first() else {
        return Err(BuildError::NoBranchingPoint);
    };
    // Only twig weights enter the relations; a branching point's twist region
    // forces equal labels whatever its weight.
    let branching = &class.branching_points;
    if let Some(v) =
        (0..tree.len()).find(|&v| !branching.contains(&v) && tree.weight(v).abs() <= 1)
    {
        return Err(BuildError::ForbiddenWeight { vertex: v, weight: tree.weight(v) });
    }
    if !class.has_many_twigs {
        return Err(BuildError::NotManyTwigs);
    }
    let t = if class.branching_points.contains(&tree.root()) {
        tree.clone()
    } else {
        tree.reroot(first_branch).0
    };
    let branching: BTreeSet<VertexId> = t.branching_points().into_iter().collect();

    // glue slots 0..=k of each branching vertex with k children
    let mut offset = vec![usize::MAX; t.len()];
    let mut slots = 0;
    for &v in &branching {
        offset[v] = slots;
        slots += t.children(v).len() + 2;
    }
    let slot = |v: VertexId, i: usize| offset[v] + i;
    let mut uf = UnionFind::new(slots);
    let mut relations = vec![];
    for &v in &branching {
        let k = t.children(v).len();
        uf.union(slot(v, 0), slot(v, 1));
        uf.union(slot(v, 0), slot(v, k + 1));
        for (j, &c) in t.children(v).iter().enumerate() {
            let (left, right) = (slot(v, j + 1), slot(v, j + 2));
            if branching.contains(&c) {
                uf.union(left, right);
                uf.union(slot(c, 0), left);
            } else {
                let twig = twig_weights(&t, c).ok_or(BuildError::NotManyTwigs)?;
                let p = crate::fraction::cf_value(&twig).numerator();
                relations.push((left, right, p.unsigned_abs() as u64));
            }
        }
    }

    // generator ids in order of first appearance, the root's label first
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut gen = vec![0; slots];
    for v in t.preorder().into_iter().filter(|v| branching.contains(v)) {
        for i in 0..t.children(v).len() + 2 {
            let r = uf.find(slot(v, i));
            let next = ids.len();
            gen[slot(v, i)] = *ids.entry(r).or_insert(next);
        }
    }
    let graph = CoxeterGraph::new(
        ids.len(),
        relations.iter().map(|&(a, b, order)| (gen[a], gen[b], order)),
    )?;

    let d = compile(&t);
    let mut assignment: BTreeMap<ArcId, usize> = BTreeMap::new();
    let mut assign = |arc: ArcId, g: usize| match assignment.insert(arc, g) {
        Some(prev) if prev != g => Err(BuildError::SeedConflict { arc, first: prev, second: g }),
        _ => Ok(()),
    };
    for (tag, arc) in d.beads() {
        match tag {
            BeadTag::Interface { vertex: Some(v), index, .. } if branching.contains(&v) => {
                assign(arc, gen[slot(v, index)])?;
            }
            BeadTag::Closure { .. } => assign(arc, gen[slot(t.root(), 0)])?,
            _ => {}
        }
    }
    for (i, c) in d.crossings().iter().enumerate() {
        if let Some(v) = d.crossing_owner(i).filter(|v| branching.contains(v)) {
            for arc in [c.over, c.under_in, c.under_out] {
                assign(arc, gen[slot(v, 0)])?;
            }
        }
    }
    Ok((graph, GeneratorSeeding { tree: t, assignment }))
}

/// Weights from `c` down its chain of single children, or `None` if the
/// chain branches.
fn twig_weights(tree: &PlaneTree, mut c: VertexId) -> Option<Vec<i64>> {
    let mut out = vec![tree.weight(c)];
    loop {
        match tree.children(c) {
            [] => return Some(out),
            [next] => {
                c = *next;
                out.push(tree.weight(c));
            }
            _ => return None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("seeded arc {arc} or generator {generator} out of range")]
    BadSeed { arc: ArcId, generator: usize },
    #[error("generator {0} labels no seeded arc")]
    MissingGenerator(usize),
    #[error("labels reached {labeled} of {arcs} arcs")]
    Incomplete { labeled: usize, arcs: usize },
    #[error("crossing {crossing} inconsistent, defect {defect:e}")]
    Inconsistent { crossing: usize, defect: f64 },
    #[error("label of arc {arc} is not an involution, defect {defect:e}")]
    NotInvolution { arc: ArcId, defect: f64 },
    #[error("two-bridge quotient needs |alpha| >= 2, got {alpha}")]
    TrivialQuotient { alpha: i128 },
    #[error("no consistent two-generator labeling found")]
    NoLabeling,
}

/// A verified surjection of the link group onto a Coxeter group generated by
/// meridian images, giving meridional rank `>= rank`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankCertificate {
    pub tree: PlaneTree,
    pub graph: CoxeterGraph,
    pub seeding: GeneratorSeeding,
    pub residual: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankCertificateJson {
    pub tree: String,
    pub generators: usize,
    pub edges: Vec<CoxeterEdge>,
    pub residual: f64,
    pub mu_lower_bound: usize,
}

impl RankCertificate {
    pub fn to_json(&self) -> RankCertificateJson {
        RankCertificateJson {
            tree: self.tree.serialize(),
            generators: self.graph.generators(),
            edges: self.graph.edges().to_vec(),
            residual: self.residual,
            mu_lower_bound: self.rank,
        }
    }
}

/// Propagates generator matrices from the seeded arcs by conjugation and
/// checks every crossing and every arc label.
pub fn verify_labeling(
    d: &Diagram,
    graph: &CoxeterGraph,
    seeding: &GeneratorSeeding,
) -> Result<RankCertificate, VerifyError> {
    let residual = propagate_and_check(d, graph, &seeding.assignment)?;
    Ok(RankCertificate {
        tree: seeding.tree.clone(),
        graph: graph.clone(),
        seeding: seeding.clone(),
        residual,
        rank: graph.generators(),
    })
}

fn propagate_and_check(
    d: &Diagram,
    graph: &CoxeterGraph,
    assignment: &BTreeMap<ArcId, usize>,
) -> Result<f64, VerifyError> {
    let n = graph.generators();
    for (&arc, &g) in assignment {
        if arc >= d.arc_count() || g >= n {
            return Err(VerifyError::BadSeed { arc, generator: g });
        }
    }
    let used: BTreeSet<usize> = assignment.values().copied().collect();
    if let Some(g) = (0..n).find(|g| !used.contains(g)) {
        return Err(VerifyError::MissingGenerator(g));
    }
    // Labels are carried as roots: the reflection of a root `a` is
    // `R(a) = I - 2 a (B a)^T`, and conjugating it by the over arc's
    // reflection gives the reflection of the over reflection applied to `a`.
    // Long conjugation chains in dihedral subgroups of large order amplify
    // rounding, so roots live in double-double arithmetic.
    let b = DdForm::new(graph);
    let mut root: Vec<Option<Vec<TwoFloat>>> = vec![None; d.arc_count()];
    for (&arc, &g) in assignment {
        root[arc] = Some((0..n).map(|i| TwoFloat::from(f64::from(u8::from(i == g)))).collect());
    }
    // breadth first: each wave only uses labels known before it, so every
    // label is reached by a shortest chain of conjugations
    loop {
        let mut wave = vec![];
        for c in d.crossings() {
            let Some(o) = root[c.over].as_ref() else { continue };
            let (src, dst) = match (&root[c.under_in], &root[c.under_out]) {
                (Some(_), None) => (c.under_in, c.under_out),
                (None, Some(_)) => (c.under_out, c.under_in),
                _ => continue,
            };
            wave.push((dst, b.reflect(o, root[src].as_ref().unwrap())));
        }
        if wave.is_empty() {
            break;
        }
        for (dst, image) in wave {
            root[dst].get_or_insert(image);
        }
    }
    let labeled = root.iter().filter(|l| l.is_some()).count();
    if labeled < d.arc_count() {
        return Err(VerifyError::Incomplete { labeled, arcs: d.arc_count() });
    }
    let root: Vec<Vec<TwoFloat>> = root.into_iter().map(Option::unwrap).collect();
    // With identities exact over the reals,
    //   R_o R(a) R_o - R(a') = 2 (s_o(a) (B s_o(a))^T - a' (B a')^T)
    //   R(a)^2 - I           = 4 (B(a, a) - 1) a (B a)^T
    let mut residual: f64 = 0.0;
    for (i, c) in d.crossings().iter().enumerate() {
        let image = b.reflect(&root[c.over], &root[c.under_in]);
        let out = &root[c.under_out];
        let (bi, bo) = (b.apply(&image), b.apply(out));
        let mut sq = TwoFloat::from(0.0);
        for r in 0..n {
            for col in 0..n {
                let e = image[r] * bi[col] - out[r] * bo[col];
                sq += e * e;
            }
        }
        let defect = 2.0 * sq.hi().sqrt();
        if defect > TOLERANCE {
            return Err(VerifyError::Inconsistent { crossing: i, defect });
        }
        residual = residual.max(defect);
    }
    for (arc, a) in root.iter().enumerate() {
        let ba = b.apply(a);
        let gap = (dot(a, &ba) - 1.0).hi().abs();
        let defect = 4.0 * gap * dot(a, a).hi().sqrt() * dot(&ba, &ba).hi().sqrt();
        if defect > TOLERANCE {
            return Err(VerifyError::NotInvolution { arc, defect });
        }
        residual = residual.max(defect);
    }
    Ok(residual)
}

/// The bilinear form in double-double precision.
struct DdForm {
    b: Vec<Vec<TwoFloat>>,
}

impl DdForm {
    fn new(graph: &CoxeterGraph) -> Self {
        let n = graph.generators();
        let mut b = vec![vec![TwoFloat::from(-1.0); n]; n];
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = TwoFloat::from(1.0);
        }
        for e in graph.edges() {
            let c = -(twofloat::consts::PI / e.order as f64).cos();
            b[e.s][e.t] = c;
            b[e.t][e.s] = c;
        }
        DdForm { b }
    }

    fn apply(&self, x: &[TwoFloat]) -> Vec<TwoFloat> {
        self.b.iter().map(|row| dot(row, x)).collect()
    }

    /// `a - 2 B(o, a) o`
    fn reflect(&self, o: &[TwoFloat], a: &[TwoFloat]) -> Vec<TwoFloat> {
        let k = dot(o, &self.apply(a)) * 2.0;
        a.iter().zip(o).map(|(&x, &y)| x - k * y).collect()
    }
}

fn dot(x: &[TwoFloat], y: &[TwoFloat]) -> TwoFloat {
    x.iter().zip(y).fold(TwoFloat::from(0.0), |acc, (&a, &b)| acc + a * b)
}

/// Rank-two quotient `<s, t | (st)^alpha>` of the two-bridge link closing
/// `rational_tangle(weights)`.
///
/// The arcs through the two closure points carry `s` and `t`; if those do
/// not give a consistent labeling, arc pairs are searched in order.
pub fn verify_two_bridge(weights: &[i64]) -> Result<RankCertificate, VerifyError> {
    let alpha = crate::fraction::cf_value(weights).numerator();
    if alpha.abs() < 2 {
        return Err(VerifyError::TrivialQuotient { alpha });
    }
    let graph = CoxeterGraph::new(2, [(0, 1, alpha.unsigned_abs() as u64)])
        .expect("alpha >= 2 gives a valid edge");
    let d = rational_tangle(weights).numerator_closure();
    let tree = PlaneTree::path(weights);
    let mut closure_arcs = [None, None];
    for (tag, arc) in d.beads() {
        if let BeadTag::Closure { strand } = tag {
            closure_arcs[strand as usize] = Some(arc);
        }
    }
    let mut candidates = vec![];
    if let [Some(a), Some(b)] = closure_arcs {
        candidates.push((a, b));
    }
    let n = d.arc_count();
    candidates.extend((0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))));
    for (a, b) in candidates {
        if a == b {
            continue;
        }
        let assignment: BTreeMap<ArcId, usize> = [(a, 0), (b, 1)].into_iter().collect();
        if let Ok(residual) = propagate_and_check(&d, &graph, &assignment) {
            return Ok(RankCertificate {
                tree,
                graph,
                seeding: GeneratorSeeding { tree: PlaneTree::path(weights), assignment },
                residual,
                rank: 2,
            });
        }
    }
    Err(VerifyError::NoLabeling)
}

/// Both sides of `mu <= beta <= f(T) + 2` for one tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankBoundsReport {
    pub tree: String,
    pub f_plus_2: usize,
    pub upper: Option<BridgeBoundJson>,
    pub lower: Option<RankCertificateJson>,
    pub upper_error: Option<String>,
    pub lower_error: Option<String>,
    /// Both certificates exist and meet at `f(T) + 2`.
    pub equality: bool,
}

pub fn meridional_rank_bounds(tree: &PlaneTree) -> RankBoundsReport {
    let f_plus_2 = flattening_number(tree).value + 2;
    let (upper, upper_error) = match bridge_upper_bound(tree) {
        Ok(c) => (Some(c.to_json()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let lower = if tree.classify().is_path {
        verify_two_bridge(&path_weights(tree))
            .map(|c| RankCertificate { tree: tree.clone(), ..c })
            .map_err(|e| e.to_string())
    } else {
        build_coxeter_graph(tree).map_err(|e| e.to_string()).and_then(|(g, s)| {
            verify_labeling(&compile(&s.tree), &g, &s).map_err(|e| e.to_string())
        })
    };
    let (lower, lower_error) = match lower {
        Ok(c) => (Some(c.to_json()), None),
        Err(e) => (None, Some(e)),
    };
    let equality = matches!((&upper, &lower), (Some(u), Some(l))
        if u.verified && u.bound == f_plus_2 && l.mu_lower_bound == f_plus_2);
    RankBoundsReport { tree: tree.serialize(), f_plus_2, upper, lower, upper_error, lower_error, equality }
}

/// Weights along a path tree, starting from its lowest-numbered end.
pub fn path_weights(tree: &PlaneTree) -> Vec<i64> {
    let start = (0..tree.len()).find(|&v| tree.valency(v) <= 1).unwrap_or(0);
    let dist = tree.distances_from(start);
    let mut order: Vec<VertexId> = (0..tree.len()).collect();
    order.sort_by_key(|&v| dist[v]);
    order.into_iter().map(|v| tree.weight(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn graph(n: usize, edges: &[(usize, usize, u64)]) -> CoxeterGraph {
        CoxeterGraph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert_eq!(
            CoxeterGraph::new(2, [(0, 0, 3)]),
            Err(GraphError::BadEndpoint { s: 0, t: 0 })
        );
        assert_eq!(CoxeterGraph::new(2, [(0, 1, 1)]), Err(GraphError::BadOrder { s: 0, t: 1, order: 1 }));
        assert_eq!(
            CoxeterGraph::new(3, [(0, 1, 2), (1, 0, 3)]),
            Err(GraphError::Parallel { s: 0, t: 1 })
        );
        let g = graph(3, &[(2, 1, 4)]);
        assert_eq!(g.order(1, 2), Some(4));
        assert_eq!(g.order(0, 1), None);
    }

    #[test]
    fn dihedral_relations() {
        for m in [2u64, 3, 5, 7] {
            let reps = geometric_representation(&graph(2, &[(0, 1, m)]));
            assert!(relation_defect(&reps, &[0], 2) < 1e-12);
            assert!(relation_defect(&reps, &[0, 1], m as u32) < 1e-12);
            assert!(relation_defect(&reps, &[0, 1], m as u32 - 1) > 0.1);
        }
        let reps = geometric_representation(&graph(2, &[(0, 1, 2)]));
        assert!((&reps[0] * &reps[1] - &reps[1] * &reps[0]).norm() < 1e-12);
    }

    #[test]
    fn non_adjacent_pair_has_infinite_order() {
        let reps = geometric_representation(&graph(2, &[]));
        for p in 1..10 {
            assert!(relation_defect(&reps, &[0, 1], p) > 0.5);
        }
    }

    #[test]
    fn star_quotient() {
        let star = parse_tree("(2 (2) (2) (2))").unwrap();
        let (g, s) = build_coxeter_graph(&star).unwrap();
        assert_eq!(g.generators(), 3);
        let orders: Vec<u64> = g.edges().iter().map(|e| e.order).collect();
        assert_eq!(orders, vec![2, 2, 2]);
        let cert = verify_labeling(&compile(&s.tree), &g, &s).unwrap();
        assert_eq!(cert.rank, 3);
        assert!(cert.residual <= TOLERANCE);
    }

    #[test]
    fn absorbing_the_center_into_a_branch_is_inconsistent() {
        // order |num cf([2, 2])| = 3 on the first branch instead of 2
        let star = parse_tree("(2 (2) (2) (2))").unwrap();
        let (g, s) = build_coxeter_graph(&star).unwrap();
        let e = g.edges();
        let absorbed = CoxeterGraph::new(
            3,
            [(e[0].s, e[0].t, 3), (e[1].s, e[1].t, 2), (e[2].s, e[2].t, 2)],
        )
        .unwrap();
        assert!(matches!(
            verify_labeling(&compile(&s.tree), &absorbed, &s),
            Err(VerifyError::Inconsistent { .. })
        ));
    }

    #[test]
    fn corrupted_seeding_is_rejected() {
        let t = parse_tree("(3 (2) (-3 (2)) (4) (2 (3) (2) (-5)))").unwrap();
        let (g, mut s) = build_coxeter_graph(&t).unwrap();
        let d = compile(&s.tree);
        assert!(verify_labeling(&d, &g, &s).is_ok());
        // two generators on the root's twist region
        let i = (0..d.crossing_count()).find(|&i| d.crossing_owner(i) == Some(0)).unwrap();
        let arc = d.crossings()[i].under_out;
        let other = (s.assignment[&arc] + 1) % g.generators();
        s.assignment.insert(arc, other);
        assert!(matches!(verify_labeling(&d, &g, &s), Err(VerifyError::Inconsistent { .. })));
    }

    #[test]
    fn rank_grows_by_k_minus_two() {
        let star = parse_tree("(2 (2) (3) (-2))").unwrap();
        let (g0, _) = build_coxeter_graph(&star).unwrap();
        let grown = star.add_ramification(0, 1, 3, &[vec![2], vec![-3], vec![2, 2]]).unwrap();
        let (g1, s1) = build_coxeter_graph(&grown).unwrap();
        assert_eq!(g1.generators(), g0.generators() + 2);
        assert_eq!(g1.generators(), flattening_number(&grown).value + 2);
        verify_labeling(&compile(&s1.tree), &g1, &s1).unwrap();
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            build_coxeter_graph(&parse_tree("(2 (3))").unwrap()),
            Err(BuildError::NoBranchingPoint)
        );
        assert_eq!(
            build_coxeter_graph(&parse_tree("(2 (2) (1) (2))").unwrap()),
            Err(BuildError::ForbiddenWeight { vertex: 2, weight: 1 })
        );
        assert_eq!(
            build_coxeter_graph(&parse_tree("(2 (2) (2 (2 (2) (2) (2))) (2))").unwrap()),
            Err(BuildError::NotManyTwigs)
        );
    }

    #[test]
    fn branching_weights_are_unrestricted() {
        for text in ["(0 (2) (2) (2))", "(1 (2) (-3) (2))", "(-1 (2) (3) (-2) (1 (2) (2) (-2)))"] {
            let t = parse_tree(text).unwrap();
            let (g, s) = build_coxeter_graph(&t).unwrap();
            assert_eq!(g.generators(), flattening_number(&t).value + 2, "{text}");
            verify_labeling(&compile(&s.tree), &g, &s).unwrap();
        }
    }

    #[test]
    fn root_off_the_branching_points() {
        let t = parse_tree("(2 (3 (2) (-2) (2 (2)) (4)))").unwrap();
        let (g, s) = build_coxeter_graph(&t).unwrap();
        assert_ne!(s.tree, t);
        assert_eq!(g.generators(), flattening_number(&t).value + 2);
        verify_labeling(&compile(&s.tree), &g, &s).unwrap();
    }

    #[test]
    fn two_bridge_examples() {
        for (w, alpha) in [(vec![3], 3), (vec![2, 3], 5), (vec![2], 2), (vec![2, -2, 3], 17)] {
            let c = verify_two_bridge(&w).unwrap();
            assert_eq!(c.rank, 2);
            assert_eq!(c.graph.edges()[0].order, alpha, "{w:?}");
            assert!(c.residual <= TOLERANCE);
        }
        assert_eq!(verify_two_bridge(&[1]), Err(VerifyError::TrivialQuotient { alpha: 1 }));
    }

    #[test]
    fn bounds_report() {
        let r = meridional_rank_bounds(&parse_tree("(2 (2) (2) (2))").unwrap());
        assert!(r.equality);
        assert_eq!(r.f_plus_2, 3);
        let r = meridional_rank_bounds(&parse_tree("(2 (3))").unwrap());
        assert!(r.equality);
        assert_eq!(r.lower.unwrap().mu_lower_bound, 2);
        let r = meridional_rank_bounds(&parse_tree("(2 (2) (1) (2))").unwrap());
        assert!(!r.equality && r.upper.is_some() && r.lower.is_none());
        assert!(r.lower_error.unwrap().contains("weight 1"));
    }
}
