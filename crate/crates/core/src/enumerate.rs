//! Exhaustive enumeration of packings at small order, collecting union
//! graphs up to isomorphism. Serves as the brute-force oracle behind the
//! nonexistence and uniqueness claims.

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{CyclePlacement, SimpleGraph, TriplePacking, TwoFactorShape};
use crate::search::{for_each_placement, identity_placement};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Default order bound: full enumeration stays tractable through n = 10.
pub const DEFAULT_ENUMERATION_MAX_N: usize = 10;

pub const DEFAULT_ENUMERATION_BUDGET: Duration = Duration::from_secs(600);

/// Union-isomorphism classes of all packings of a shape.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EnumerationResult {
    pub shape: TwoFactorShape,
    pub count_union_classes: usize,
    pub representatives: Vec<TriplePacking>,
    /// True when the search tree was fully explored; a timed-out run returns
    /// the classes found so far with this flag cleared.
    pub exhaustive: bool,
}

/// Enumerates every packing of `shape` (first copy fixed canonically, the
/// other two by exhaustive backtracking) and deduplicates the union graphs
/// by canonical form, keeping the first packing found per class.
pub fn enumerate_unions(
    shape: &TwoFactorShape,
    max_n: usize,
    budget: Duration,
) -> Result<EnumerationResult> {
    let n = shape.order();
    if n > max_n {
        return Err(Error::OrderTooLarge { n, bound: max_n });
    }
    let deadline = Instant::now() + budget;
    let first = identity_placement(shape);
    let mut used = SimpleGraph::new(n);
    for (u, v) in first.edges() {
        used.add_edge(u, v);
    }
    let mut classes: BTreeMap<CanonicalForm, TriplePacking> = BTreeMap::new();
    let mut timed_out = false;
    let outcome: Result<Option<()>> =
        for_each_placement(n, shape.lengths(), &used, deadline, &mut |second| {
            let second = CyclePlacement::new(second.to_vec());
            let mut two = used.clone();
            for (u, v) in second.edges() {
                two.add_edge(u, v);
            }
            for_each_placement(n, shape.lengths(), &two, deadline, &mut |third| {
                let third = CyclePlacement::new(third.to_vec());
                let mut union = two.clone();
                for (u, v) in third.edges() {
                    union.add_edge(u, v);
                }
                let form = canonical_form(&union)?;
                classes.entry(form).or_insert_with(|| {
                    TriplePacking::new(
                        n,
                        shape.clone(),
                        [first.clone(), second.clone(), third],
                    )
                    .normalized()
                });
                Ok(None)
            })
        });
    match outcome {
        Ok(None) => {}
        Ok(Some(())) => unreachable!("enumeration never short-circuits"),
        Err(Error::Timeout) => timed_out = true,
        Err(e) => return Err(e),
    }
    let representatives: Vec<TriplePacking> = classes.into_values().collect();
    Ok(EnumerationResult {
        shape: shape.clone(),
        count_union_classes: representatives.len(),
        representatives,
        exhaustive: !timed_out,
    })
}

/// Order bound for factorial-time isomorphism checking.
pub const BRUTE_FORCE_MAX_N: usize = 9;

/// Tries all vertex bijections. Oracle for the canonical-form machinery.
pub fn brute_force_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<bool> {
    let n = g1.n();
    if n > BRUTE_FORCE_MAX_N || g2.n() > BRUTE_FORCE_MAX_N {
        return Err(Error::OrderTooLarge {
            n: n.max(g2.n()),
            bound: BRUTE_FORCE_MAX_N,
        });
    }
    if g1.n() != g2.n() {
        return Ok(false);
    }
    if g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    let edges1 = g1.edges();
    loop {
        if edges1
            .iter()
            .all(|&(u, v)| g2.has_edge(perm[u - 1], perm[v - 1]))
        {
            return Ok(true);
        }
        if !next_permutation(&mut perm) {
            return Ok(false);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::graph::union_graph;

    fn shape(lengths: &[usize]) -> TwoFactorShape {
        TwoFactorShape::new(lengths.to_vec()).unwrap()
    }

    fn run(lengths: &[usize]) -> EnumerationResult {
        enumerate_unions(&shape(lengths), DEFAULT_ENUMERATION_MAX_N, DEFAULT_ENUMERATION_BUDGET)
            .unwrap()
    }

    #[test]
    fn c7_union_class_is_k7_alone() {
        let r = run(&[7]);
        assert!(r.exhaustive);
        assert_eq!(r.count_union_classes, 1);
        let g = union_graph(&r.representatives[0]).unwrap();
        assert_eq!(g.complement().edge_count(), 0);
    }

    #[test]
    fn c5_has_no_packing() {
        let r = run(&[5]);
        assert!(r.exhaustive);
        assert_eq!(r.count_union_classes, 0);
    }

    #[test]
    fn order_bound_is_enforced() {
        let err = enumerate_unions(&shape(&[11]), 10, DEFAULT_ENUMERATION_BUDGET);
        assert!(matches!(err, Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let r = run(&[3, 4]);
        assert_eq!(r.count_union_classes, 1);
        let r = run(&[4, 4]);
        assert_eq!(r.count_union_classes, 1);
    }

    #[test]
    fn brute_force_agrees_on_small_graphs() {
        let g1 = SimpleGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        let g2 = SimpleGraph::from_edges(4, &[(1, 3), (3, 2), (2, 4), (4, 1)]);
        assert!(brute_force_isomorphic(&g1, &g2).unwrap());
        assert!(are_isomorphic(&g1, &g2).unwrap());
        let k4 = SimpleGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(!brute_force_isomorphic(&g1, &k4).unwrap());
        let big = SimpleGraph::new(12);
        assert!(brute_force_isomorphic(&big, &big).is_err());
    }
}
