//! 6-regular circulant graphs, generator-pair selection, and decomposition
//! into three edge-disjoint Hamiltonian cycles.

use crate::error::{Error, Result};
use crate::graph::{CyclePlacement, SimpleGraph, TriplePacking, TwoFactorShape};
use crate::search::for_each_placement;
use std::time::{Duration, Instant};

/// Order `n` plus generator triple `(a, b, c)` describing `C_n(a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CirculantSpec {
    pub n: usize,
    pub generators: (usize, usize, usize),
}

impl CirculantSpec {
    /// Validates that the generators really produce a 6-regular simple graph:
    /// `1 <= a < b < c < n`, none equal to `n/2`, and no two generators in the
    /// same residue class up to negation (`s + t = n` collapses two classes).
    pub fn new(n: usize, generators: (usize, usize, usize)) -> Result<Self> {
        let (a, b, c) = generators;
        let fail = |reason: &str| Err(Error::InvalidGenerators { n, reason: reason.into() });
        if n < 7 {
            return fail("order below 7 cannot carry a 6-regular graph");
        }
        if !(1 <= a && a < b && b < c && c < n) {
            return fail("generators must satisfy 1 <= a < b < c < n");
        }
        if n % 2 == 0 && (a == n / 2 || b == n / 2 || c == n / 2) {
            return fail("a generator equal to n/2 yields degree below 6");
        }
        for (s, t) in [(a, b), (a, c), (b, c)] {
            if s + t == n {
                return fail("generators s and n-s induce the same edge class");
            }
        }
        Ok(CirculantSpec { n, generators })
    }

    pub fn generator_list(&self) -> [usize; 3] {
        [self.generators.0, self.generators.1, self.generators.2]
    }
}

/// Vertex `i` (1-based) is adjacent to `i ± a, i ± b, i ± c` modulo `n`.
pub fn build_circulant(spec: &CirculantSpec) -> SimpleGraph {
    let n = spec.n;
    let mut g = SimpleGraph::new(n);
    for x in 0..n {
        for s in spec.generator_list() {
            g.add_edge(x + 1, (x + s) % n + 1);
        }
    }
    g
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Two non-isomorphic 6-regular circulants of order `n >= 9`, each with
/// generator 1 (hence Hamiltonian-decomposable).
///
/// For `n ≡ 0 (mod 4)` the pair is `C_n(1,3,5)` (bipartite) vs `C_n(1,3,4)`
/// (not). The default pair otherwise is `C_n(1,2,3)` vs `C_n(1,4,5)`, which
/// have different chromatic numbers (5 vs 3 or 4). Six small orders need a
/// different second member:
///
/// * `n = 9`: 4 + 5 = 9, so `C_9(1,4,5)` would collapse to a 4-regular
///   graph. `C_9(1,2,4)` has chromatic number 3.
/// * `n = 10`: generator 5 equals `n/2`, and every 6-regular circulant of
///   order 10 has chromatic number 5 with none bipartite. `C_10(1,2,4)`
///   contains the 5-clique on the even vertices while `C_10(1,2,3)` is
///   K5-free, so that pair is still cheaply certified.
/// * `n = 11, 13, 14`: `C_n(1,4,5)` is isomorphic to `C_n(1,2,3)`
///   (multiply by 2 for n = 11, by 3 for n = 13 and 14). `C_n(1,2,5)` has
///   chromatic number 4.
/// * `n = 17`: `C_17(1,4,5)` is isomorphic to `C_17(1,3,4)` (multiply by 4)
///   and has chromatic number 5, matching `C_17(1,2,3)`. `C_17(1,2,5)` has
///   chromatic number 4.
pub fn select_generator_pair(n: usize) -> Result<(CirculantSpec, CirculantSpec)> {
    if n < 9 {
        return Err(Error::OrderTooSmall(n));
    }
    let (first, second) = if n % 4 == 0 {
        ((1, 3, 5), (1, 3, 4))
    } else if n == 9 || n == 10 {
        ((1, 2, 3), (1, 2, 4))
    } else if n == 11 || n == 13 || n == 14 || n == 17 {
        ((1, 2, 3), (1, 2, 5))
    } else {
        ((1, 2, 3), (1, 4, 5))
    };
    Ok((CirculantSpec::new(n, first)?, CirculantSpec::new(n, second)?))
}

pub const DEFAULT_DECOMPOSITION_BUDGET: Duration = Duration::from_secs(60);

pub fn hamiltonian_decomposition(spec: &CirculantSpec) -> Result<TriplePacking> {
    hamiltonian_decomposition_with_budget(spec, DEFAULT_DECOMPOSITION_BUDGET)
}

/// Decomposes `C_n(a,b,c)` into three edge-disjoint Hamiltonian cycles,
/// returned as a packing of three copies of `C_n`.
///
/// If every generator is coprime to `n` the three rotation cycles
/// `(0, s, 2s, …)` already decompose the graph. Otherwise the generator-1
/// rotation is fixed as the first cycle and a backtracking search looks for a
/// Hamiltonian cycle in the 4-regular remainder whose own remainder is a
/// single Hamiltonian cycle. Deterministic: edges are explored in fixed
/// sorted order and the first find is returned.
pub fn hamiltonian_decomposition_with_budget(
    spec: &CirculantSpec,
    budget: Duration,
) -> Result<TriplePacking> {
    let n = spec.n;
    let gens = spec.generator_list();
    let shape = TwoFactorShape::new(vec![n])?;
    if gens.iter().all(|&s| gcd(s, n) == 1) {
        let copies: Vec<CyclePlacement> = gens
            .iter()
            .map(|&s| {
                let cycle: Vec<usize> = (0..n).map(|i| (i * s) % n + 1).collect();
                CyclePlacement::new(vec![cycle]).normalized()
            })
            .collect();
        let copies: [CyclePlacement; 3] = copies.try_into().expect("three generators");
        return Ok(TriplePacking::new(n, shape, copies));
    }
    let deadline = Instant::now() + budget;
    if let Some(&rot) = gens.iter().find(|&&s| gcd(s, n) == 1) {
        let first: Vec<usize> = (0..n).map(|i| (i * rot) % n + 1).collect();
        let mut remainder = build_circulant(spec);
        for i in 0..n {
            remainder.remove_edge(first[i], first[(i + 1) % n]);
        }
        let mut search = HamSearch { g: &remainder, deadline, n };
        match search.find(|rest| is_single_cycle(rest)) {
            Ok(second) => {
                let mut rest = remainder.clone();
                for i in 0..n {
                    rest.remove_edge(second[i], second[(i + 1) % n]);
                }
                let third = cycle_vertices(&rest);
                let copies = [
                    CyclePlacement::new(vec![first]).normalized(),
                    CyclePlacement::new(vec![second]).normalized(),
                    CyclePlacement::new(vec![third]).normalized(),
                ];
                return Ok(TriplePacking::new(n, shape, copies));
            }
            Err(Error::DecompositionNotFound) => {}
            Err(e) => return Err(e),
        }
    }
    // no generator of order n, or no decomposition extends a rotation cycle:
    // search over all three cycles
    general_decomposition(spec, deadline)
}

/// Decomposition search with no cycle fixed: enumerates Hamiltonian cycles
/// of the circulant for the first two copies and accepts when the leftover
/// edges form a single spanning cycle.
fn general_decomposition(spec: &CirculantSpec, deadline: Instant) -> Result<TriplePacking> {
    let n = spec.n;
    let g = build_circulant(spec);
    let forbidden = g.complement();
    let shape = TwoFactorShape::new(vec![n])?;
    let found = for_each_placement(n, &[n], &forbidden, deadline, &mut |c1| {
        let c1 = CyclePlacement::new(c1.to_vec());
        let mut forbidden2 = forbidden.clone();
        for (u, v) in c1.edges() {
            forbidden2.add_edge(u, v);
        }
        for_each_placement(n, &[n], &forbidden2, deadline, &mut |c2| {
            let c2 = CyclePlacement::new(c2.to_vec());
            let mut rest = g.clone();
            for (u, v) in c1.edges() {
                rest.remove_edge(u, v);
            }
            for (u, v) in c2.edges() {
                rest.remove_edge(u, v);
            }
            if is_single_cycle(&rest) {
                let third = CyclePlacement::new(vec![cycle_vertices(&rest)]);
                Ok(Some(TriplePacking::new(
                    n,
                    shape.clone(),
                    [c1.clone().normalized(), c2.clone().normalized(), third.normalized()],
                )))
            } else {
                Ok(None)
            }
        })
    })?;
    found.ok_or(Error::DecompositionNotFound)
}

/// Is `g` a single spanning cycle?
fn is_single_cycle(g: &SimpleGraph) -> bool {
    (1..=g.n()).all(|v| g.degree(v) == 2) && g.is_connected()
}

fn cycle_vertices(g: &SimpleGraph) -> Vec<usize> {
    let mut cycle = vec![1usize];
    let mut prev = 0usize;
    let mut cur = 1usize;
    loop {
        let next = g
            .neighbors(cur)
            .find(|&v| v != prev)
            .expect("2-regular graph");
        if next == 1 {
            return cycle;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
}

struct HamSearch<'a> {
    g: &'a SimpleGraph,
    deadline: Instant,
    n: usize,
}

impl<'a> HamSearch<'a> {
    /// First Hamiltonian cycle (in fixed order) whose removal leaves a graph
    /// accepted by `accept`.
    fn find(&mut self, accept: impl Fn(&SimpleGraph) -> bool) -> Result<Vec<usize>> {
        let mut path = vec![1usize];
        let mut visited: u64 = 1;
        match self.extend(&mut path, &mut visited, &accept) {
            Ok(Some(cycle)) => Ok(cycle),
            Ok(None) => Err(Error::DecompositionNotFound),
            Err(e) => Err(e),
        }
    }

    fn extend(
        &mut self,
        path: &mut Vec<usize>,
        visited: &mut u64,
        accept: &impl Fn(&SimpleGraph) -> bool,
    ) -> Result<Option<Vec<usize>>> {
        if Instant::now() > self.deadline {
            return Err(Error::Timeout);
        }
        let cur = *path.last().expect("nonempty path");
        if path.len() == self.n {
            if self.g.has_edge(cur, 1) && path[1] < path[self.n - 1] {
                let mut rest = self.g.clone();
                for i in 0..self.n {
                    rest.remove_edge(path[i], path[(i + 1) % self.n]);
                }
                if accept(&rest) {
                    return Ok(Some(path.clone()));
                }
            }
            return Ok(None);
        }
        let mut cands = self.g.row(cur) & !*visited;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize + 1;
            cands &= cands - 1;
            path.push(v);
            *visited |= 1 << (v - 1);
            if self.feasible(*visited, v) {
                if let Some(found) = self.extend(path, visited, accept)? {
                    return Ok(Some(found));
                }
            }
            *visited &= !(1 << (v - 1));
            path.pop();
        }
        Ok(None)
    }

    /// Prune: the unvisited vertices together with the path endpoint and the
    /// start must stay connected, and every unvisited vertex needs two
    /// available neighbors.
    fn feasible(&self, visited: u64, endpoint: usize) -> bool {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let open = (full & !visited) | (1 << (endpoint - 1)) | 1;
        let unvisited = full & !visited;
        if unvisited == 0 {
            return true;
        }
        // degree condition
        let mut bits = unvisited;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            if (self.g.row(v) & open).count_ones() < 2 {
                return false;
            }
        }
        // connectivity over `open`
        let start = open.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut fb = frontier;
            while fb != 0 {
                let v = fb.trailing_zeros() as usize;
                fb &= fb - 1;
                next |= self.g.row(v + 1) & open;
            }
            frontier = next & !comp;
            comp |= next;
        }
        comp == open
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{union_graph, validate_packing};

    #[test]
    fn k7_is_c7_123() {
        let g = build_circulant(&CirculantSpec::new(7, (1, 2, 3)).unwrap());
        assert_eq!(g.edge_count(), 21);
        assert_eq!(g.complement().edge_count(), 0);
    }

    #[test]
    fn six_regular_edge_count() {
        let g = build_circulant(&CirculantSpec::new(9, (1, 2, 4)).unwrap());
        assert_eq!(g.edge_count(), 27);
        for v in 1..=9 {
            assert_eq!(g.degree(v), 6);
        }
    }

    #[test]
    fn invalid_generator_cases() {
        assert!(CirculantSpec::new(8, (1, 2, 4)).is_err()); // 4 = n/2
        assert!(CirculantSpec::new(9, (1, 4, 5)).is_err()); // 4 + 5 = 9
        assert!(CirculantSpec::new(10, (1, 2, 2)).is_err()); // duplicate
        assert!(CirculantSpec::new(10, (0, 2, 3)).is_err());
    }

    #[test]
    fn pair_selection_rules() {
        let (p, q) = select_generator_pair(9).unwrap();
        assert_eq!((p.generators, q.generators), ((1, 2, 3), (1, 2, 4)));
        let (p, q) = select_generator_pair(12).unwrap();
        assert_eq!((p.generators, q.generators), ((1, 3, 5), (1, 3, 4)));
        let (p, q) = select_generator_pair(11).unwrap();
        assert_eq!((p.generators, q.generators), ((1, 2, 3), (1, 2, 5)));
        let (p, q) = select_generator_pair(13).unwrap();
        assert_eq!((p.generators, q.generators), ((1, 2, 3), (1, 2, 5)));
        let (p, q) = select_generator_pair(15).unwrap();
        assert_eq!((p.generators, q.generators), ((1, 2, 3), (1, 4, 5)));
        assert!(select_generator_pair(8).is_err());
    }

    #[test]
    fn rotation_decomposition_of_c7() {
        let spec = CirculantSpec::new(7, (1, 2, 3)).unwrap();
        let p = hamiltonian_decomposition(&spec).unwrap();
        assert!(validate_packing(&p).is_ok());
        assert_eq!(union_graph(&p).unwrap(), build_circulant(&spec));
    }

    #[test]
    fn search_decomposition_of_c9_123() {
        // generator 3 is not coprime to 9, so the pure rotation route fails
        let spec = CirculantSpec::new(9, (1, 2, 3)).unwrap();
        let p = hamiltonian_decomposition(&spec).unwrap();
        assert!(validate_packing(&p).is_ok());
        assert_eq!(union_graph(&p).unwrap(), build_circulant(&spec));
    }

    #[test]
    fn search_decomposition_of_c12_134() {
        let spec = CirculantSpec::new(12, (1, 3, 4)).unwrap();
        let p = hamiltonian_decomposition(&spec).unwrap();
        assert!(validate_packing(&p).is_ok());
        assert_eq!(union_graph(&p).unwrap(), build_circulant(&spec));
    }

    #[test]
    fn decomposition_is_deterministic() {
        let spec = CirculantSpec::new(12, (1, 3, 5)).unwrap();
        let p = hamiltonian_decomposition(&spec).unwrap();
        let q = hamiltonian_decomposition(&spec).unwrap();
        assert_eq!(p, q);
    }
}
