//! Coloring propagation over crossings, the Wirtinger number of a diagram,
//! and seed certificates for the bridge-number bound `f(T) + 2`.
//!
//! The rule: at a crossing whose over arc is colored and exactly one under
//! arc is colored, the other under arc becomes colored.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ArcId, Diagram};
use crate::flatten::flattening_number;
use crate::tangle::{compile, compile_presented, BeadTag, Presentation};
use crate::tree::{PlaneTree, VertexId};
use crate::unionfind::UnionFind;

/// Arc count above which [`wirtinger_exact`] refuses to enumerate.
pub const EXACT_ARC_LIMIT: usize = 40;

const GREEDY_RESTARTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WirtingerError {
    #[error("diagram is not connected")]
    Disconnected,
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("seed arc {arc} out of range ({arcs} arcs)")]
    UnknownArc { arc: ArcId, arcs: usize },
    #[error("diagram has {arcs} arcs, exact search is limited to {limit}")]
    TooLarge { arcs: usize, limit: usize },
}

/// Set of colored arcs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    pub colored: BTreeSet<ArcId>,
}

impl Coloring {
    pub fn new(arcs: impl IntoIterator<Item = ArcId>) -> Self {
        Coloring { colored: arcs.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.colored.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colored.is_empty()
    }

    pub fn is_full(&self, d: &Diagram) -> bool {
        self.colored.len() == d.arc_count()
    }
}

/// Precomputed incidence for repeated closures on one diagram.
pub struct Propagator<'a> {
    diagram: &'a Diagram,
    incident: Vec<Vec<usize>>,
}

impl<'a> Propagator<'a> {
    pub fn new(diagram: &'a Diagram) -> Self {
        let mut incident = vec![vec![]; diagram.arc_count()];
        for (i, c) in diagram.crossings().iter().enumerate() {
            for a in [c.over, c.under_in, c.under_out] {
                if incident[a].last() != Some(&i) {
                    incident[a].push(i);
                }
            }
        }
        Propagator { diagram, incident }
    }

    pub fn arc_count(&self) -> usize {
        self.incident.len()
    }

    /// Colors `seeds` in `state` and propagates to the fixed point. Returns
    /// the number of newly colored arcs.
    pub fn extend(&self, state: &mut [bool], seeds: &[ArcId]) -> usize {
        let mut queue: Vec<ArcId> = vec![];
        for &s in seeds {
            if !state[s] {
                state[s] = true;
                queue.push(s);
            }
        }
        let mut added = queue.len();
        let crossings = self.diagram.crossings();
        while let Some(a) = queue.pop() {
            for &i in &self.incident[a] {
                let c = crossings[i];
                if !state[c.over] {
                    continue;
                }
                let target = match (state[c.under_in], state[c.under_out]) {
                    (true, false) => c.under_out,
                    (false, true) => c.under_in,
                    _ => continue,
                };
                state[target] = true;
                added += 1;
                queue.push(target);
            }
        }
        added
    }

    pub fn closure_of(&self, seeds: &[ArcId]) -> Vec<bool> {
        let mut state = vec![false; self.arc_count()];
        self.extend(&mut state, seeds);
        state
    }

    pub fn covers(&self, seeds: &[ArcId]) -> bool {
        self.closure_of(seeds).iter().all(|&b| b)
    }
}

/// Least fixed point of the propagation rule containing `seeds`.
pub fn closure(d: &Diagram, seeds: &Coloring) -> Result<Coloring, WirtingerError> {
    if !d.is_connected() {
        return Err(WirtingerError::Disconnected);
    }
    if let Some(&arc) = seeds.colored.iter().find(|&&a| a >= d.arc_count()) {
        return Err(WirtingerError::UnknownArc { arc, arcs: d.arc_count() });
    }
    let p = Propagator::new(d);
    let seeds: Vec<ArcId> = seeds.colored.iter().copied().collect();
    let state = p.closure_of(&seeds);
    Ok(Coloring::new(state.iter().enumerate().filter(|(_, &b)| b).map(|(a, _)| a)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    /// The Wirtinger number and a lexicographically first witness.
    Found { k: usize, seeds: Vec<ArcId> },
    ExceedsKMax { k_max: usize },
}

/// Smallest number of seeds whose closure colors every arc, searching sizes
/// `1..=k_max` in increasing order.
///
/// Subsets are enumerated depth first in lexicographic order. Each prefix
/// keeps its closure, and an arc already colored by its prefix is never
/// added, since the resulting set would close to the same coloring as a
/// smaller set already rejected.
pub fn wirtinger_exact(d: &Diagram, k_max: usize) -> Result<ExactOutcome, WirtingerError> {
    if !d.is_connected() {
        return Err(WirtingerError::Disconnected);
    }
    if d.crossing_count() == 0 {
        return Err(WirtingerError::NoCrossings);
    }
    let n = d.arc_count();
    if n > EXACT_ARC_LIMIT {
        return Err(WirtingerError::TooLarge { arcs: n, limit: EXACT_ARC_LIMIT });
    }
    let p = Propagator::new(d);
    for k in 1..=k_max.min(n) {
        let mut chosen = Vec::with_capacity(k);
        if search(&p, &vec![false; n], 0, 0, k, &mut chosen) {
            return Ok(ExactOutcome::Found { k, seeds: chosen });
        }
    }
    Ok(ExactOutcome::ExceedsKMax { k_max })
}

fn search(
    p: &Propagator,
    state: &[bool],
    colored: usize,
    start: ArcId,
    remaining: usize,
    chosen: &mut Vec<ArcId>,
) -> bool {
    let n = state.len();
    if remaining == 0 {
        return colored == n;
    }
    for a in start..=n - remaining {
        if state[a] {
            continue;
        }
        let mut next = state.to_vec();
        let added = p.extend(&mut next, &[a]);
        chosen.push(a);
        if search(p, &next, colored + added, a + 1, remaining - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A verified seed set giving `bridge number <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeBoundCertificate {
    pub tree: PlaneTree,
    pub diagram: Diagram,
    pub seeds: BTreeSet<ArcId>,
    pub bound: usize,
    /// How the seeds were found.
    pub method: SeedMethod,
    /// Set when `diagram` is a flyped presentation rather than `compile(tree)`.
    pub presentation: Option<Presentation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedMethod {
    PerTangle,
    Greedy,
    Flyped,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeBoundJson {
    pub tree: String,
    pub seeds: Vec<ArcId>,
    pub bound: usize,
    pub verified: bool,
    /// Per-vertex crossing placement, present for flyped diagrams.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Vec<Vec<i64>>>,
}

impl BridgeBoundCertificate {
    /// Re-checks the closure from scratch.
    pub fn verify(&self) -> bool {
        let seeds: Vec<ArcId> = self.seeds.iter().copied().collect();
        let full = Propagator::new(&self.diagram).covers(&seeds);
        let size_ok = self.seeds.len() == self.bound
            || (self.diagram.arc_count() < self.bound && self.seeds.len() == self.diagram.arc_count());
        full && size_ok
    }

    pub fn to_json(&self) -> BridgeBoundJson {
        BridgeBoundJson {
            tree: self.tree.serialize(),
            seeds: self.seeds.iter().copied().collect(),
            bound: self.bound,
            verified: self.verify(),
            presentation: self
                .presentation
                .as_ref()
                .map(|p| (0..self.tree.len()).map(|v| p.slots(v).to_vec()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedSearchError {
    #[error("diagram is not connected")]
    Disconnected,
    #[error(
        "no {budget}-seed set found after {tried} placements (best coverage {best_coverage}/{arcs})"
    )]
    NotFound { budget: usize, tried: usize, best_coverage: usize, arcs: usize },
}

/// Rational pieces of the tree left after deleting a minimum flattening set;
/// every piece is a path.
pub fn flat_pieces(tree: &PlaneTree) -> Vec<Vec<VertexId>> {
    let cut = flattening_number(tree).witness;
    let mut uf = UnionFind::new(tree.len());
    for (e, (p, c)) in tree.edges().into_iter().enumerate() {
        if !cut.contains(&e) {
            uf.union(p, c);
        }
    }
    let mut pieces: Vec<Vec<VertexId>> = vec![];
    let mut index = vec![usize::MAX; tree.len()];
    for v in tree.preorder() {
        let r = uf.find(v);
        if index[r] == usize::MAX {
            index[r] = pieces.len();
            pieces.push(vec![]);
        }
        pieces[index[r]].push(v);
    }
    pieces
}

/// Arcs meeting the twist regions or glue points of each piece.
fn piece_arcs(d: &Diagram, pieces: &[Vec<VertexId>], n_vertices: usize) -> Vec<Vec<ArcId>> {
    let mut piece_of = vec![usize::MAX; n_vertices];
    for (i, piece) in pieces.iter().enumerate() {
        for &v in piece {
            piece_of[v] = i;
        }
    }
    let mut sets = vec![BTreeSet::new(); pieces.len()];
    for (i, c) in d.crossings().iter().enumerate() {
        if let Some(v) = d.crossing_owner(i) {
            sets[piece_of[v]].extend([c.over, c.under_in, c.under_out]);
        }
    }
    for (tag, arc) in d.beads() {
        if let BeadTag::Interface { vertex: Some(v), .. } = tag {
            sets[piece_of[v]].insert(arc);
        }
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Finds `budget` seeds whose closure colors all of `d = compile(tree)`.
///
/// The tree is cut into paths along a minimum flattening set, giving
/// `budget - 1` rational pieces. One piece receives two seeds and every
/// other piece one, each placed on an arc of that piece; placements are
/// chosen greedily by closure size with every piece tried as the two-seed
/// piece. Failing that, seeded randomized greedy over all arcs.
///
/// Some standard diagrams need more seeds than the budget. The search then
/// moves twist crossings across path-shaped children (flypes, see
/// [`Presentation`]) and retries on the resulting diagrams of the same link;
/// the certificate carries the diagram it was found on. Exact search on
/// `d` is the last resort when it has at most [`EXACT_ARC_LIMIT`] arcs.
pub fn seed_search_budget(
    tree: &PlaneTree,
    d: &Diagram,
    budget: usize,
    rng_seed: u64,
) -> Result<BridgeBoundCertificate, SeedSearchError> {
    if !d.is_connected() {
        return Err(SeedSearchError::Disconnected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let pieces = flat_pieces(tree);
    let mut stats = SearchStats::default();
    let certify = |d: &Diagram, found: Found, presentation| {
        let cert = BridgeBoundCertificate {
            tree: tree.clone(),
            diagram: d.clone(),
            seeds: pad(found.seeds, budget, d.arc_count()),
            bound: budget,
            method: found.method,
            presentation,
        };
        assert!(cert.verify(), "seed search produced an unverified certificate");
        cert
    };

    if let Some(found) = search_diagram(tree, d, &pieces, budget, GREEDY_RESTARTS, &mut rng, &mut stats) {
        return Ok(certify(d, found, None));
    }
    // alternate fresh presentations with mutations of the best one so far
    let mut best: Option<(usize, Presentation)> = None;
    for attempt in 0..PRESENTATION_ATTEMPTS {
        let p = match &best {
            Some((_, b)) if attempt % 2 == 1 => mutate_presentation(tree, b, &mut rng),
            _ => random_presentation(tree, &mut rng),
        };
        let alt = compile_presented(tree, &p);
        let before = stats.best_coverage;
        stats.best_coverage = 0;
        let outcome =
            search_diagram(tree, &alt, &pieces, budget, PRESENTATION_RESTARTS, &mut rng, &mut stats);
        let coverage = stats.best_coverage;
        stats.best_coverage = before.max(coverage);
        if let Some(mut found) = outcome {
            found.method = SeedMethod::Flyped;
            return Ok(certify(&alt, found, Some(p)));
        }
        if best.as_ref().is_none_or(|(c, _)| coverage >= *c) {
            best = Some((coverage, p));
        }
    }
    let n = d.arc_count();
    if n <= EXACT_ARC_LIMIT && d.crossing_count() > 0 {
        if let Ok(ExactOutcome::Found { seeds, .. }) = wirtinger_exact(d, budget) {
            return Ok(certify(d, Found { seeds, method: SeedMethod::Exact }, None));
        }
    }
    Err(SeedSearchError::NotFound {
        budget,
        tried: stats.tried,
        best_coverage: stats.best_coverage,
        arcs: n,
    })
}

const PRESENTATION_ATTEMPTS: usize = 256;
const PRESENTATION_RESTARTS: usize = 4;

#[derive(Default)]
struct SearchStats {
    tried: usize,
    best_coverage: usize,
}

struct Found {
    seeds: Vec<ArcId>,
    method: SeedMethod,
}

fn pad(seeds: Vec<ArcId>, budget: usize, arcs: usize) -> BTreeSet<ArcId> {
    let mut seeds: BTreeSet<ArcId> = seeds.into_iter().collect();
    for a in 0..arcs {
        if seeds.len() >= budget {
            break;
        }
        seeds.insert(a);
    }
    seeds
}

/// Each vertex either keeps its crossings together in one reachable gap or
/// splits them between two.
fn random_presentation(tree: &PlaneTree, rng: &mut ChaCha8Rng) -> Presentation {
    let mut p = Presentation::standard(tree);
    for v in 0..tree.len() {
        let gaps = Presentation::movable_gaps(tree, v);
        let w = tree.weight(v);
        let g1 = *gaps.choose(rng).unwrap();
        if w.abs() >= 2 && rng.gen_bool(0.5) {
            let a = rng.gen_range(1..w.abs()) * w.signum();
            let g2 = *gaps.choose(rng).unwrap();
            p.split(tree, v, &[(g1, a), (g2, w - a)]);
        } else {
            p.place(tree, v, g1);
        }
    }
    p
}

fn mutate_presentation(tree: &PlaneTree, p: &Presentation, rng: &mut ChaCha8Rng) -> Presentation {
    let fresh = random_presentation(tree, rng);
    let mut out = p.clone();
    for _ in 0..rng.gen_range(1..=2) {
        let v = rng.gen_range(0..tree.len());
        let parts: Vec<(usize, i64)> = fresh.slots(v).iter().copied().enumerate().collect();
        out.split(tree, v, &parts);
    }
    out
}

fn search_diagram(
    tree: &PlaneTree,
    d: &Diagram,
    pieces: &[Vec<VertexId>],
    budget: usize,
    restarts: usize,
    rng: &mut ChaCha8Rng,
    stats: &mut SearchStats,
) -> Option<Found> {
    let n = d.arc_count();
    if n <= budget {
        return Some(Found { seeds: (0..n).collect(), method: SeedMethod::PerTangle });
    }
    let p = Propagator::new(d);
    if pieces.len() + 1 == budget {
        let arcs = piece_arcs(d, pieces, tree.len());
        for base in 0..pieces.len() {
            let (found, t, cov) = per_piece_greedy(&p, &arcs, base);
            stats.tried += t;
            stats.best_coverage = stats.best_coverage.max(cov);
            if let Some(seeds) = found {
                return Some(Found { seeds, method: SeedMethod::PerTangle });
            }
        }
    }

    // randomized greedy over all arcs, highest over-degree first
    let mut over_degree = vec![0usize; n];
    for c in d.crossings() {
        over_degree[c.over] += 1;
    }
    let top = *over_degree.iter().max().unwrap();
    let hubs: Vec<ArcId> = (0..n).filter(|&a| over_degree[a] + 1 >= top).collect();
    for restart in 0..restarts {
        let mut state = vec![false; n];
        let first = if restart == 0 {
            (0..n).max_by_key(|&a| (over_degree[a], std::cmp::Reverse(a))).unwrap()
        } else {
            *hubs.choose(rng).unwrap()
        };
        let mut count = p.extend(&mut state, &[first]);
        let mut seeds = vec![first];
        while seeds.len() < budget && count < n {
            let mut best = (0usize, vec![]);
            for a in (0..n).filter(|&a| !state[a]) {
                let mut next = state.clone();
                let gain = p.extend(&mut next, &[a]);
                stats.tried += 1;
                if gain > best.0 {
                    best = (gain, vec![a]);
                } else if gain == best.0 {
                    best.1.push(a);
                }
            }
            let pick = if restart == 0 { best.1[0] } else { *best.1.choose(rng).unwrap() };
            count += p.extend(&mut state, &[pick]);
            seeds.push(pick);
        }
        if count < n && seeds.len() == budget {
            let (improved, c) = improve_by_swaps(&p, seeds, rng, stats);
            seeds = improved;
            count = c;
        }
        stats.best_coverage = stats.best_coverage.max(count);
        if count == n {
            return Some(Found { seeds, method: SeedMethod::Greedy });
        }
    }
    None
}

const SWAP_ROUNDS: usize = 24;

/// Local search replacing one seed at a time. Takes the best strictly
/// improving swap, or a random sideways one, for a bounded number of rounds.
fn improve_by_swaps(
    p: &Propagator,
    mut seeds: Vec<ArcId>,
    rng: &mut ChaCha8Rng,
    stats: &mut SearchStats,
) -> (Vec<ArcId>, usize) {
    let n = p.arc_count();
    let coverage = |s: &[ArcId]| p.closure_of(s).iter().filter(|&&b| b).count();
    let mut current = coverage(&seeds);
    for _ in 0..SWAP_ROUNDS {
        if current == n {
            break;
        }
        let mut best = (current, vec![]);
        for i in 0..seeds.len() {
            let mut rest = seeds.clone();
            rest.remove(i);
            let base = p.closure_of(&rest);
            for a in (0..n).filter(|&a| !base[a]) {
                let mut next = base.clone();
                p.extend(&mut next, &[a]);
                stats.tried += 1;
                let c = next.iter().filter(|&&b| b).count();
                if c > best.0 {
                    best = (c, vec![(i, a)]);
                } else if c == best.0 && a != seeds[i] {
                    best.1.push((i, a));
                }
            }
        }
        let Some(&(i, a)) = best.1.choose(rng) else { break };
        seeds[i] = a;
        current = best.0;
    }
    (seeds, current)
}

/// Two seeds on piece `base`, then one seed per remaining piece, each step
/// taking the placement with the largest closure (lowest arc on ties).
fn per_piece_greedy(
    p: &Propagator,
    arcs: &[Vec<ArcId>],
    base: usize,
) -> (Option<Vec<ArcId>>, usize, usize) {
    let n = p.arc_count();
    let mut tried = 0;
    let cands = &arcs[base];
    let mut best: Option<(usize, Vec<bool>, [ArcId; 2])> = None;
    for (i, &a) in cands.iter().enumerate() {
        let mut one = vec![false; n];
        let c1 = p.extend(&mut one, &[a]);
        for &b in &cands[i + 1..] {
            let mut two = one.clone();
            let c2 = c1 + p.extend(&mut two, &[b]);
            tried += 1;
            if best.as_ref().is_none_or(|(c, _, _)| c2 > *c) {
                best = Some((c2, two, [a, b]));
            }
        }
    }
    let Some((mut count, mut state, pair)) = best else {
        return (None, tried, 0);
    };
    let mut seeds = pair.to_vec();
    let mut open: Vec<usize> = (0..arcs.len()).filter(|&i| i != base).collect();
    while !open.is_empty() {
        let mut step: Option<(usize, usize, ArcId)> = None;
        for (oi, &piece) in open.iter().enumerate() {
            for &a in &arcs[piece] {
                let gain = if state[a] {
                    0
                } else {
                    let mut next = state.clone();
                    tried += 1;
                    p.extend(&mut next, &[a])
                };
                if step.is_none_or(|(g, _, _)| gain > g) {
                    step = Some((gain, oi, a));
                }
            }
        }
        let Some((_, oi, a)) = step else { break };
        count += p.extend(&mut state, &[a]);
        seeds.push(a);
        open.remove(oi);
    }
    let found = (count == n).then_some(seeds);
    (found, tried, count)
}

/// Certifies `bridge number(L(T)) <= f(T) + 2` on the compiled diagram.
pub fn bridge_upper_bound(tree: &PlaneTree) -> Result<BridgeBoundCertificate, SeedSearchError> {
    let d = compile(tree);
    let budget = flattening_number(tree).value + 2;
    seed_search_budget(tree, &d, budget, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{rational_tangle, Tangle};
    use crate::tree::parse_tree;

    fn trefoil() -> Diagram {
        Tangle::twist(3).numerator_closure()
    }

    #[test]
    fn closure_basics() {
        let d = trefoil();
        let all = Coloring::new(0..3);
        assert_eq!(closure(&d, &all).unwrap(), all);
        assert!(closure(&d, &Coloring::default()).unwrap().is_empty());
        for s in 0..3 {
            assert_eq!(closure(&d, &Coloring::new([s])).unwrap().len(), 1);
        }
        assert!(closure(&d, &Coloring::new([0, 1])).unwrap().is_full(&d));
        assert_eq!(
            closure(&d, &Coloring::new([7])),
            Err(WirtingerError::UnknownArc { arc: 7, arcs: 3 })
        );
        let unlink = Tangle::twist(0).numerator_closure();
        assert_eq!(closure(&unlink, &Coloring::new([0])), Err(WirtingerError::Disconnected));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(
            wirtinger_exact(&trefoil(), 5).unwrap(),
            ExactOutcome::Found { k: 2, seeds: vec![0, 1] }
        );
        for w in [vec![2, 3], vec![2, 2, 2]] {
            let d = rational_tangle(&w).numerator_closure();
            assert!(matches!(wirtinger_exact(&d, 4).unwrap(), ExactOutcome::Found { k: 2, .. }));
        }
        assert_eq!(wirtinger_exact(&trefoil(), 1).unwrap(), ExactOutcome::ExceedsKMax { k_max: 1 });
        let big = Tangle::twist(41).numerator_closure();
        assert_eq!(
            wirtinger_exact(&big, 3),
            Err(WirtingerError::TooLarge { arcs: 41, limit: 40 })
        );
    }

    #[test]
    fn kinked_unknot_needs_one_seed() {
        let d = Tangle::twist(1).numerator_closure();
        assert!(!d.is_kink_free());
        assert!(matches!(wirtinger_exact(&d, 3).unwrap(), ExactOutcome::Found { k: 1, .. }));
    }

    #[test]
    fn budget_search_examples() {
        let path = parse_tree("(2 (3))").unwrap();
        let c = seed_search_budget(&path, &compile(&path), 2, 0).unwrap();
        assert_eq!(c.seeds.len(), 2);
        assert!(c.verify());

        let star = parse_tree("(0 (2) (2) (2))").unwrap();
        let c = seed_search_budget(&star, &compile(&star), 3, 0).unwrap();
        assert_eq!(c.seeds.len(), 3);

        let ram = star.add_ramification(0, 1, 2, &[vec![2], vec![3], vec![-2]]).unwrap();
        assert_eq!(flattening_number(&ram).value + 2, 5);
        let c = bridge_upper_bound(&ram).unwrap();
        assert_eq!((c.seeds.len(), c.bound), (5, 5));
        let j = c.to_json();
        assert!(j.verified);
        assert_eq!(j.tree, ram.serialize());
    }

    #[test]
    fn bounds_on_paths_and_stars() {
        for text in ["(3)", "(2 (3 (-4)))", "(-2 (5) (1))"] {
            let t = parse_tree(text).unwrap();
            let c = bridge_upper_bound(&t).unwrap();
            assert_eq!(c.bound, 2, "{text}");
        }
        for n in 3..7 {
            let t = PlaneTree::star(2, &vec![vec![3]; n]);
            assert_eq!(bridge_upper_bound(&t).unwrap().bound, n);
        }
    }

    #[test]
    fn pieces_partition_the_tree() {
        let t = parse_tree("(0 (2) (2 (1)) (2) (3 (2) (2) (2)))").unwrap();
        let pieces = flat_pieces(&t);
        assert_eq!(pieces.len(), flattening_number(&t).value + 1);
        let mut all: Vec<_> = pieces.concat();
        all.sort();
        assert_eq!(all, (0..t.len()).collect::<Vec<_>>());
    }
}
