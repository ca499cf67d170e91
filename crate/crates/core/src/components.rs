//! Maximal component number by exhaustive search over weight parities.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flatten::flattening_number;
use crate::tangle::compile;
use crate::tree::{PlaneTree, VertexId};

/// Largest tree accepted by [`m_bruteforce`].
pub const MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentsError {
    #[error("tree has {vertices} vertices, parity search is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxComponentsResult {
    pub value: usize,
    /// Parity representatives in `{0, 1}`, indexed by vertex.
    pub witness_weights: Vec<i64>,
}

impl MaxComponentsResult {
    /// Witness moved to `{2, 3}`, same parities.
    pub fn lifted(&self) -> Vec<i64> {
        self.witness_weights.iter().map(|w| w + 2).collect()
    }
}

/// Maximizes the component count over all `{0, 1}` weightings of the tree's
/// shape. Among maxima the lexicographically smallest weight vector wins.
pub fn m_bruteforce(tree: &PlaneTree) -> Result<MaxComponentsResult, ComponentsError> {
    let n = tree.len();
    if n > MAX_VERTICES {
        return Err(ComponentsError::TooLarge { vertices: n, limit: MAX_VERTICES });
    }
    let mut shape = tree.clone();
    let mut best: Option<(usize, u32)> = None;
    for mask in 0u32..(1 << n) {
        for v in 0..n {
            shape.set_weight(v, i64::from(mask >> (n - 1 - v) & 1));
        }
        let c = compile(&shape).components();
        if best.is_none_or(|(b, _)| c > b) {
            best = Some((c, mask));
        }
    }
    let (value, mask) = best.expect("at least one weighting");
    let witness_weights = (0..n).map(|v| i64::from(mask >> (n - 1 - v) & 1)).collect();
    Ok(MaxComponentsResult { value, witness_weights })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityViolation {
    pub weights: Vec<i64>,
    pub vertex: VertexId,
    pub before: usize,
    pub after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub trials: usize,
    pub checks: usize,
    pub violations: Vec<ParityViolation>,
}

impl ParityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audits that shifting any single weight by two keeps the component count,
/// over `trials` random weightings in `[-6, 6]`.
pub fn check_parity_reduction(tree: &PlaneTree, trials: usize, rng_seed: u64) -> ParityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut report = ParityReport { trials, checks: 0, violations: vec![] };
    for _ in 0..trials {
        let weights: Vec<i64> = (0..tree.len()).map(|_| rng.gen_range(-6..=6)).collect();
        let base = tree.with_weights(&weights);
        let before = compile(&base).components();
        for v in 0..tree.len() {
            let mut shifted = base.clone();
            shifted.set_weight(v, weights[v] + 2);
            let after = compile(&shifted).components();
            report.checks += 1;
            if after != before {
                report.violations.push(ParityViolation {
                    weights: weights.clone(),
                    vertex: v,
                    before,
                    after,
                });
            }
        }
    }
    report
}

/// Confrontation of the searched maximum with `f(T) + 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxComponentsReport {
    pub tree: String,
    pub m: usize,
    pub f_plus_2: usize,
    pub witness: BTreeMap<VertexId, i64>,
    pub agrees: bool,
}

pub fn max_components_report(tree: &PlaneTree) -> Result<MaxComponentsReport, ComponentsError> {
    let r = m_bruteforce(tree)?;
    let f_plus_2 = flattening_number(tree).value + 2;
    Ok(MaxComponentsReport {
        tree: tree.serialize(),
        m: r.value,
        f_plus_2,
        witness: r.witness_weights.iter().copied().enumerate().collect(),
        agrees: r.value == f_plus_2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    #[test]
    fn single_vertex_maximum_is_even_twist() {
        let r = m_bruteforce(&parse_tree("(5)").unwrap()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness_weights, vec![0]);
        assert_eq!(r.lifted(), vec![2]);
    }

    #[test]
    fn stars_and_paths() {
        let s = m_bruteforce(&PlaneTree::star(3, &vec![vec![3]; 4])).unwrap();
        assert_eq!(s.value, 4);
        let witness = PlaneTree::star(0, &vec![vec![0]; 4]).with_weights(&s.witness_weights);
        assert_eq!(compile(&witness).components(), 4);
        for p in ["(1 (1))", "(1 (1 (1 (1))))", "(2 (2 (-3)))"] {
            assert_eq!(m_bruteforce(&parse_tree(p).unwrap()).unwrap().value, 2);
        }
    }

    #[test]
    fn guard() {
        let big = PlaneTree::star(0, &vec![vec![1]; 16]);
        assert_eq!(m_bruteforce(&big), Err(ComponentsError::TooLarge { vertices: 17, limit: 16 }));
    }

    #[test]
    fn parity_audit_examples() {
        assert!(check_parity_reduction(&parse_tree("(1)").unwrap(), 25, 3).is_clean());
        let r = check_parity_reduction(&parse_tree("(0 (0) (2 (0)) (1))").unwrap(), 20, 9);
        assert!(r.is_clean());
        assert_eq!(r.checks, 20 * 5);
    }

    #[test]
    fn report_agrees_on_star() {
        let r = max_components_report(&parse_tree("(0 (2) (2) (2))").unwrap()).unwrap();
        assert_eq!((r.m, r.f_plus_2, r.agrees), (3, 3, true));
    }
}
