//! Weighted plane trees: parsing, serialization, classification, re-rooting,
//! ramification and seeded random generation.
//!
//! Trees are stored rooted. The children of a vertex are kept in plane order,
//! so the cyclic order around a non-root vertex is `parent, children...`.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type VertexId = usize;

/// Index into [`PlaneTree::edges`].
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("weight out of range at byte {pos}")]
    Overflow { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("a ramification point needs at least one twig")]
    NoTwigs,
    #[error("twig {0} has an empty weight list")]
    EmptyTwig(usize),
    #[error("edge position {pos} out of range for vertex with {len} children")]
    EdgePosition { pos: usize, len: usize },
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error("unsatisfiable generator constraints: {0}")]
    Unsatisfiable(String),
}

/// A weighted rooted plane tree.
///
/// Equality and hashing ignore vertex numbering: two trees are equal when
/// they have the same shape, child order and weights.
#[derive(Debug, Clone)]
pub struct PlaneTree {
    weights: Vec<i64>,
    children: Vec<Vec<VertexId>>,
    parent: Vec<Option<VertexId>>,
    root: VertexId,
}

impl PlaneTree {
    /// Builds a tree from per-vertex weights and ordered child lists.
    pub fn new(
        weights: Vec<i64>,
        children: Vec<Vec<VertexId>>,
        root: VertexId,
    ) -> Result<Self, TreeError> {
        let n = weights.len();
        if n == 0 {
            return Err(TreeError::Malformed("no vertices".into()));
        }
        if children.len() != n {
            return Err(TreeError::Malformed("children table has wrong length".into()));
        }
        if root >= n {
            return Err(TreeError::UnknownVertex(root));
        }
        let mut parent = vec![None; n];
        for (v, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n {
                    return Err(TreeError::UnknownVertex(c));
                }
                if c == root || parent[c].is_some() {
                    return Err(TreeError::Malformed(format!("vertex {c} has two parents")));
                }
                parent[c] = Some(v);
            }
        }
        let tree = PlaneTree { weights, children, parent, root };
        if tree.preorder().len() != n {
            return Err(TreeError::Malformed("not connected".into()));
        }
        Ok(tree)
    }

    pub fn single(weight: i64) -> Self {
        PlaneTree { weights: vec![weight], children: vec![vec![]], parent: vec![None], root: 0 }
    }

    /// A path whose vertices carry `weights` in order, rooted at the first one.
    pub fn path(weights: &[i64]) -> Self {
        assert!(!weights.is_empty(), "path needs at least one vertex");
        let n = weights.len();
        let children = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![] }).collect();
        PlaneTree::new(weights.to_vec(), children, 0).expect("path is a tree")
    }

    /// A star-like tree rooted at its center, one branch per weight list.
    pub fn star(center: i64, branches: &[Vec<i64>]) -> Self {
        let mut t = PlaneTree::single(center);
        for b in branches {
            t.push_chain(0, t.children[0].len(), b);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn weight(&self, v: VertexId) -> i64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    /// Same plane structure with different weights.
    pub fn with_weights(&self, weights: &[i64]) -> Self {
        assert_eq!(weights.len(), self.len());
        let mut t = self.clone();
        t.weights.copy_from_slice(weights);
        t
    }

    pub fn set_weight(&mut self, v: VertexId, w: i64) {
        self.weights[v] = w;
    }

    /// Unrooted valency.
    pub fn valency(&self, v: VertexId) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// Neighbours in cyclic plane order, starting with the parent if any.
    pub fn neighbours(&self, v: VertexId) -> Vec<VertexId> {
        self.parent[v].into_iter().chain(self.children[v].iter().copied()).collect()
    }

    pub fn preorder(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// All edges as `(parent, child)`, ordered by child id.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.len()).filter_map(|v| self.parent[v].map(|p| (p, v))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.len() - 1
    }

    pub fn leaves(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.valency(v) == 1).collect()
    }

    pub fn branching_points(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.valency(v) >= 3).collect()
    }

    /// Distances from `src` to every vertex.
    pub fn distances_from(&self, src: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbours(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Re-roots at `new_root`, unfolding plane orders around it. Returns the
    /// re-rooted tree (renumbered in preorder) and the old-to-new id map.
    pub fn reroot(&self, new_root: VertexId) -> (PlaneTree, Vec<VertexId>) {
        assert!(new_root < self.len());
        // children of v when entered from `from`: cyclic order after `from`
        let ordered = |v: VertexId, from: Option<VertexId>| -> Vec<VertexId> {
            let nb = self.neighbours(v);
            match from {
                None => {
                    let mut out: Vec<_> = self.children[v].clone();
                    out.extend(self.parent[v]);
                    out
                }
                Some(f) => {
                    let i = nb.iter().position(|&u| u == f).expect("from is a neighbour");
                    nb[i + 1..].iter().chain(&nb[..i]).copied().collect()
                }
            }
        };
        let mut map = vec![usize::MAX; self.len()];
        let mut weights = Vec::with_capacity(self.len());
        let mut children: Vec<Vec<VertexId>> = Vec::with_capacity(self.len());
        // iterative preorder with explicit child lists
        let mut stack = vec![(new_root, None::<VertexId>, None::<VertexId>)];
        while let Some((v, from, new_parent)) = stack.pop() {
            let id = weights.len();
            map[v] = id;
            weights.push(self.weights[v]);
            children.push(vec![]);
            if let Some(p) = new_parent {
                children[p].push(id);
            }
            let kids = ordered(v, from);
            for &c in kids.iter().rev() {
                stack.push((c, Some(v), Some(id)));
            }
        }
        let t = PlaneTree::new(weights, children, 0).expect("re-rooting preserves tree shape");
        (t, map)
    }

    /// Appends a chain of new vertices hanging from `at`, inserted at child
    /// position `pos`. Returns the first vertex of the chain.
    fn push_chain(&mut self, at: VertexId, pos: usize, weights: &[i64]) -> VertexId {
        let mut prev = at;
        let mut first = usize::MAX;
        for (i, &w) in weights.iter().enumerate() {
            let id = self.weights.len();
            self.weights.push(w);
            self.children.push(vec![]);
            self.parent.push(Some(prev));
            if i == 0 {
                self.children[prev].insert(pos, id);
                first = id;
            } else {
                self.children[prev].push(id);
            }
            prev = id;
        }
        first
    }

    /// Adds a ramification point of valency `twigs.len() + 1` joined to
    /// `target` by a new edge entering `target`'s child list at
    /// `edge_position`. Existing vertex ids are preserved; the new center gets
    /// id `self.len()`.
    pub fn add_ramification(
        &self,
        target: VertexId,
        edge_position: usize,
        center_weight: i64,
        twigs: &[Vec<i64>],
    ) -> Result<PlaneTree, TreeError> {
        if target >= self.len() {
            return Err(TreeError::UnknownVertex(target));
        }
        if twigs.is_empty() {
            return Err(TreeError::NoTwigs);
        }
        if let Some(i) = twigs.iter().position(Vec::is_empty) {
            return Err(TreeError::EmptyTwig(i));
        }
        let len = self.children[target].len();
        if edge_position > len {
            return Err(TreeError::EdgePosition { pos: edge_position, len });
        }
        let mut t = self.clone();
        let c = t.push_chain(target, edge_position, &[center_weight]);
        for twig in twigs {
            let pos = t.children[c].len();
            t.push_chain(c, pos, twig);
        }
        Ok(t)
    }

    pub fn classify(&self) -> TreeClass {
        let branching = self.branching_points();
        let is_path = branching.is_empty();
        let is_star = branching.len() == 1;
        let is_bipartite_ramification = branching.iter().all(|&b| {
            let d = self.distances_from(b);
            branching.iter().all(|&c| d[c].is_multiple_of(2))
        });
        let has_many_twigs = branching.iter().all(|&b| {
            let mut twigs = 0;
            for u in self.neighbours(b) {
                if self.valency(u) >= 3 {
                    continue;
                }
                if self.is_twig_direction(b, u) {
                    twigs += 1;
                } else {
                    return false;
                }
            }
            twigs >= 3
        });
        TreeClass {
            is_path,
            is_star,
            has_many_twigs,
            is_bipartite_ramification,
            branching_points: branching,
        }
    }

    /// Whether walking from `from` into `next` stays on valency-2 vertices
    /// until it reaches a leaf.
    pub fn is_twig_direction(&self, from: VertexId, next: VertexId) -> bool {
        let (mut prev, mut cur) = (from, next);
        loop {
            match self.valency(cur) {
                1 => return true,
                2 => {
                    let nxt = self.neighbours(cur).into_iter().find(|&u| u != prev).unwrap();
                    prev = cur;
                    cur = nxt;
                }
                _ => return false,
            }
        }
    }

    /// Seeded random tree. See [`RandomTreeConfig`].
    pub fn random(cfg: &RandomTreeConfig, rng_seed: u64) -> Result<PlaneTree, TreeError> {
        let allowed: Vec<i64> =
            (cfg.weight_min..=cfg.weight_max).filter(|w| !cfg.exclude.contains(w)).collect();
        if cfg.max_vertices == 0 {
            return Err(TreeError::Unsatisfiable("max_vertices must be at least 1".into()));
        }
        if allowed.is_empty() {
            return Err(TreeError::Unsatisfiable("weight range is empty after exclusion".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let mut pick = |rng: &mut ChaCha8Rng| *allowed.choose(rng).unwrap();
        if cfg.many_twigs_only {
            if cfg.max_vertices < 4 {
                return Err(TreeError::Unsatisfiable(
                    "a tree with many twigs needs at least 4 vertices".into(),
                ));
            }
            return Ok(random_many_twigs(cfg.max_vertices, &mut rng, &mut pick));
        }
        let n = rng.gen_range(1..=cfg.max_vertices);
        let mut t = PlaneTree::single(pick(&mut rng));
        for _ in 1..n {
            let at = rng.gen_range(0..t.len());
            let pos = rng.gen_range(0..=t.children[at].len());
            let w = pick(&mut rng);
            t.push_chain(at, pos, &[w]);
        }
        Ok(t)
    }

    /// Random tree whose branching points are pairwise at even distance.
    pub fn random_bipartite(
        max_vertices: usize,
        weight_range: (i64, i64),
        rng_seed: u64,
    ) -> PlaneTree {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let n = rng.gen_range(2..=max_vertices.max(2));
        loop {
            let mut t = PlaneTree::single(rng.gen_range(weight_range.0..=weight_range.1));
            let mut ok = true;
            for _ in 1..n {
                // attach only where the ramification parity stays even
                let mut candidates: Vec<VertexId> = (0..t.len()).collect();
                candidates.shuffle(&mut rng);
                let mut placed = false;
                for at in candidates {
                    let pos = rng.gen_range(0..=t.children[at].len());
                    let w = rng.gen_range(weight_range.0..=weight_range.1);
                    let mut trial = t.clone();
                    trial.push_chain(at, pos, &[w]);
                    if trial.classify().is_bipartite_ramification {
                        t = trial;
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    ok = false;
                    break;
                }
            }
            if ok {
                return t;
            }
        }
    }
}

fn random_many_twigs(
    max_vertices: usize,
    rng: &mut ChaCha8Rng,
    pick: &mut impl FnMut(&mut ChaCha8Rng) -> i64,
) -> PlaneTree {
    fn random_twigs(
        rng: &mut ChaCha8Rng,
        pick: &mut impl FnMut(&mut ChaCha8Rng) -> i64,
        count: usize,
        budget: usize,
    ) -> Vec<Vec<i64>> {
        // each twig gets one vertex, spare budget lengthens some of them
        let mut lens = vec![1usize; count];
        let mut spare = budget - count;
        for l in lens.iter_mut() {
            let extra = rng.gen_range(0..=spare.min(1));
            *l += extra;
            spare -= extra;
        }
        lens.iter().map(|&l| (0..l).map(|_| pick(rng)).collect()).collect()
    }
    let max_branches = (max_vertices - 1).min(5);
    let branches = rng.gen_range(3..=max_branches);
    let twig_budget = rng.gen_range(branches..=(max_vertices - 1).min(branches * 2));
    let center = pick(rng);
    let twigs = random_twigs(rng, pick, branches, twig_budget);
    let mut t = PlaneTree::star(center, &twigs);
    loop {
        let room = max_vertices - t.len();
        // a new center with at least three twigs
        if room < 4 || rng.gen_bool(0.3) {
            break;
        }
        let branching = t.branching_points();
        let target = *branching.choose(rng).unwrap();
        let count = rng.gen_range(3..=(room - 1).min(4));
        let budget = rng.gen_range(count..=(room - 1).min(count * 2));
        let twigs = random_twigs(rng, pick, count, budget);
        let pos = rng.gen_range(0..=t.children[target].len());
        let w = pick(rng);
        t = t.add_ramification(target, pos, w, &twigs).expect("valid ramification");
    }
    t
}

/// Parameters for [`PlaneTree::random`].
#[derive(Debug, Clone)]
pub struct RandomTreeConfig {
    pub max_vertices: usize,
    pub weight_min: i64,
    pub weight_max: i64,
    pub exclude: Vec<i64>,
    /// Build from a star by repeated ramification with at least three twigs.
    pub many_twigs_only: bool,
}

impl RandomTreeConfig {
    pub fn new(max_vertices: usize, weight_min: i64, weight_max: i64) -> Self {
        RandomTreeConfig {
            max_vertices,
            weight_min,
            weight_max,
            exclude: vec![],
            many_twigs_only: false,
        }
    }

    pub fn excluding(mut self, weights: &[i64]) -> Self {
        self.exclude.extend_from_slice(weights);
        self
    }

    pub fn many_twigs(mut self) -> Self {
        self.many_twigs_only = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeClass {
    pub is_path: bool,
    /// Exactly one vertex of valency at least three.
    pub is_star: bool,
    pub has_many_twigs: bool,
    pub is_bipartite_ramification: bool,
    pub branching_points: Vec<VertexId>,
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl PlaneTree {
    /// Canonical text: `(w child child ...)` with single spaces.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        // (vertex, next child index)
        let mut stack = vec![(self.root, 0usize)];
        out.push('(');
        out.push_str(&self.weights[self.root].to_string());
        while let Some((v, i)) = stack.pop() {
            if let Some(&c) = self.children[v].get(i) {
                stack.push((v, i + 1));
                out.push_str(" (");
                out.push_str(&self.weights[c].to_string());
                stack.push((c, 0));
            } else {
                out.push(')');
            }
        }
        out
    }
}

impl PartialEq for PlaneTree {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.serialize() == other.serialize()
    }
}

impl Eq for PlaneTree {}

impl std::hash::Hash for PlaneTree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.serialize().hash(state);
    }
}

impl std::str::FromStr for PlaneTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

/// Parses `tree := '(' integer tree* ')'`; vertices are numbered in preorder.
pub fn parse_tree(text: &str) -> Result<PlaneTree, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let syntax = |pos: usize, msg: &str| ParseError::Syntax { pos, msg: msg.to_string() };

    let mut weights = Vec::new();
    let mut children: Vec<Vec<VertexId>> = Vec::new();
    let mut open: Vec<VertexId> = Vec::new();

    skip_ws(&mut pos);
    loop {
        if pos >= bytes.len() {
            return Err(syntax(pos, "unexpected end of input"));
        }
        if bytes[pos] != b'(' {
            return Err(syntax(pos, "expected '('"));
        }
        pos += 1;
        skip_ws(&mut pos);
        let start = pos;
        if pos < bytes.len() && bytes[pos] == b'-' {
            pos += 1;
        }
        let digits = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == digits {
            return Err(syntax(start, "expected integer weight"));
        }
        let w: i64 = text[start..pos].parse().map_err(|_| ParseError::Overflow { pos: start })?;
        let id = weights.len();
        weights.push(w);
        children.push(vec![]);
        if let Some(&p) = open.last() {
            children[p].push(id);
        }
        open.push(id);
        // close as many nodes as there are ')' before the next '('
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err(syntax(pos, "unexpected end of input"));
            }
            match bytes[pos] {
                b')' => {
                    pos += 1;
                    open.pop();
                    if open.is_empty() {
                        skip_ws(&mut pos);
                        if pos != bytes.len() {
                            return Err(syntax(pos, "trailing input after tree"));
                        }
                        return Ok(PlaneTree::new(weights, children, 0)
                            .expect("parser builds a valid tree"));
                    }
                }
                b'(' => break,
                _ => return Err(syntax(pos, "expected '(' or ')'")),
            }
        }
    }
}
