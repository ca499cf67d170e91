//! The flattening number: the fewest edges whose removal leaves only
//! vertices of valency at most two.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::tree::{EdgeId, PlaneTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlattenError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("tree has {edges} edges, enumeration is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
}

/// Upper edge count for [`flattening_number_bruteforce`].
pub const BRUTEFORCE_EDGE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatteningResult {
    pub value: usize,
    /// Edge ids into [`PlaneTree::edges`].
    pub witness: BTreeSet<EdgeId>,
}

/// Whether deleting `edges` leaves every vertex with valency at most two.
pub fn is_flattening_set(tree: &PlaneTree, edges: &BTreeSet<EdgeId>) -> Result<bool, FlattenError> {
    let all = tree.edges();
    let mut degree: Vec<usize> = (0..tree.len()).map(|v| tree.valency(v)).collect();
    for &e in edges {
        let &(p, c) = all.get(e).ok_or(FlattenError::UnknownEdge(e))?;
        degree[p] -= 1;
        degree[c] -= 1;
    }
    Ok(degree.iter().all(|&d| d <= 2))
}

/// Exact flattening number by a two-state tree DP.
///
/// For each vertex `v` and each state of its parent edge (kept or removed),
/// `cost[v][state]` is the least number of removed edges below `v`. A vertex
/// may keep at most `2 - [parent edge kept]` child edges; it keeps the
/// children with the largest saving `1 + cost[c][removed] - cost[c][kept]`,
/// lowest edge id first among equal savings.
pub fn flattening_number(tree: &PlaneTree) -> FlatteningResult {
    let n = tree.len();
    let edge_of_child = edge_index(tree);
    const KEPT: usize = 0;
    const REMOVED: usize = 1;
    let mut cost = vec![[0usize; 2]; n];
    let order = tree.preorder();
    for &v in order.iter().rev() {
        for state in [KEPT, REMOVED] {
            let has_parent_kept = tree.parent(v).is_some() && state == KEPT;
            let cap = 2 - usize::from(has_parent_kept);
            let (total, _) = choose_kept(tree, v, cap, &cost, &edge_of_child);
            cost[v][state] = total;
        }
    }

    let mut witness = BTreeSet::new();
    // the root has no parent edge; both states agree there
    let mut stack = vec![(tree.root(), REMOVED)];
    while let Some((v, state)) = stack.pop() {
        let has_parent_kept = tree.parent(v).is_some() && state == KEPT;
        let cap = 2 - usize::from(has_parent_kept);
        let (_, kept) = choose_kept(tree, v, cap, &cost, &edge_of_child);
        for &c in tree.children(v) {
            if kept.contains(&c) {
                stack.push((c, KEPT));
            } else {
                witness.insert(edge_of_child[c]);
                stack.push((c, REMOVED));
            }
        }
    }
    let value = cost[tree.root()][REMOVED];
    debug_assert_eq!(value, witness.len());
    FlatteningResult { value, witness }
}

fn edge_index(tree: &PlaneTree) -> Vec<EdgeId> {
    let mut idx = vec![usize::MAX; tree.len()];
    for (e, (_, c)) in tree.edges().into_iter().enumerate() {
        idx[c] = e;
    }
    idx
}

/// Returns the optimal cost below `v` and the children whose edge is kept.
fn choose_kept(
    tree: &PlaneTree,
    v: usize,
    cap: usize,
    cost: &[[usize; 2]],
    edge_of_child: &[EdgeId],
) -> (usize, Vec<usize>) {
    let kids = tree.children(v);
    let mut total: usize = kids.iter().map(|&c| 1 + cost[c][1]).sum();
    let mut savings: Vec<(isize, EdgeId, usize)> = kids
        .iter()
        .map(|&c| (1 + cost[c][1] as isize - cost[c][0] as isize, edge_of_child[c], c))
        .filter(|&(s, _, _)| s > 0)
        .collect();
    savings.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let kept: Vec<usize> = savings.iter().take(cap).map(|&(_, _, c)| c).collect();
    total -= savings.iter().take(cap).map(|&(s, _, _)| s as usize).sum::<usize>();
    (total, kept)
}

/// Minimum over all edge subsets; independent of the DP.
pub fn flattening_number_bruteforce(tree: &PlaneTree) -> Result<usize, FlattenError> {
    let edges = tree.edges();
    let m = edges.len();
    if m > BRUTEFORCE_EDGE_LIMIT {
        return Err(FlattenError::TooLarge { edges: m, limit: BRUTEFORCE_EDGE_LIMIT });
    }
    let base: Vec<usize> = (0..tree.len()).map(|v| tree.valency(v)).collect();
    let mut best = m;
    let mut degree = vec![0usize; tree.len()];
    for mask in 0u32..(1u32 << m) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        degree.copy_from_slice(&base);
        for (e, &(p, c)) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                degree[p] -= 1;
                degree[c] -= 1;
            }
        }
        if degree.iter().all(|&d| d <= 2) {
            best = size;
        }
    }
    Ok(best)
}

/// `f(T) + 2`, the maximal number of link components over all weightings.
pub fn max_component_formula(tree: &PlaneTree) -> usize {
    flattening_number(tree).value + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn t(s: &str) -> PlaneTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn flattening_set_checks() {
        let p = t("(1 (2 (3)))");
        assert!(is_flattening_set(&p, &BTreeSet::new()).unwrap());

        let s4 = t("(0 (1) (1) (1) (1))");
        assert!(!is_flattening_set(&s4, &BTreeSet::from([0])).unwrap());
        assert!(is_flattening_set(&s4, &BTreeSet::from([0, 3])).unwrap());
        assert!(is_flattening_set(&s4, &(0..4).collect()).unwrap());
        assert_eq!(is_flattening_set(&s4, &BTreeSet::from([4])), Err(FlattenError::UnknownEdge(4)));
    }

    #[test]
    fn flattening_examples() {
        assert_eq!(flattening_number(&t("(1 (2 (3 (4))))")).value, 0);
        assert_eq!(flattening_number(&t("(5)")).value, 0);
        let s5 = t("(0 (1) (1 (1)) (1) (1) (1))");
        let r = flattening_number(&s5);
        assert_eq!(r.value, 3);
        // equal savings keep the lowest edge ids
        assert_eq!(r.witness, BTreeSet::from([3, 4, 5]));
        // two branching points of valency three at distance two: 4 leaves
        let b = t("(0 (1) (1) (1 (0 (1) (1))))");
        assert!(b.classify().is_bipartite_ramification);
        assert_eq!(flattening_number(&b).value, b.leaves().len() - 2);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(flattening_number_bruteforce(&t("(1 (2))")).unwrap(), 0);
        // star of valency 3: 8 subsets, singletons already flatten
        assert_eq!(flattening_number_bruteforce(&t("(0 (1) (1) (1))")).unwrap(), 1);
        let big = PlaneTree::star(0, &vec![vec![1]; 21]);
        assert_eq!(
            flattening_number_bruteforce(&big),
            Err(FlattenError::TooLarge { edges: 21, limit: 20 })
        );
    }

    #[test]
    fn formula_examples() {
        assert_eq!(max_component_formula(&t("(2 (3))")), 2);
        for n in 3..8 {
            assert_eq!(max_component_formula(&PlaneTree::star(0, &vec![vec![2]; n])), n);
        }
    }
    #[test]
    fn ramification_raises_by_k_minus_two() {
        let base = t("(2 (3) (-1 (4)) (2))");
        let f = flattening_number(&base).value;
        for target in 0..base.len() {
            for k in 3..=5usize {
                let bar = base.add_ramification(target, 0, 1, &vec![vec![2]; k - 1]).unwrap();
                assert_eq!(flattening_number(&bar).value, f + k - 2, "target {target}, k {k}");
            }
        }
        // valency two: no change at a leaf
        let leaf = base.leaves()[0];
        let bar = base.add_ramification(leaf, 0, 1, &[vec![2]]).unwrap();
        assert_eq!(flattening_number(&bar).value, f);
    }

    #[test]
    fn valency_two_point_on_inner_vertex_adds_one() {
        // the middle of a path becomes a branching point
        let path = t("(0 (0) (0))");
        let bar = path.add_ramification(0, 2, 0, &[vec![0]]).unwrap();
        assert_eq!(bar.serialize(), "(0 (0) (0) (0 (0)))");
        assert_eq!(flattening_number(&path).value, 0);
        assert_eq!(flattening_number(&bar).value, 1);
    }
}
