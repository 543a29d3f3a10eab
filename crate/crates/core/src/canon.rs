//! Isomorphism machinery and graph invariants used to certify that two
//! packings are distinct.
//!
//! Canonical labeling is iterative partition refinement plus backtracking over
//! refinement cells; on equal outputs the inputs are isomorphic and vice
//! versa. All searches use fixed exploration orders so reported witnesses are
//! deterministic.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use serde::{Deserialize, Serialize};

/// Configurable size bounds for the expensive invariants.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest order accepted by [`canonical_form`].
    pub canon_max_n: usize,
    /// Largest order accepted by [`chromatic_number`].
    pub chromatic_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { canon_max_n: 64, chromatic_max_n: 48 }
    }
}

/// Canonical representative of a graph's isomorphism class: the
/// lexicographically least edge list over the labelings explored by the
/// refinement search.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn canonical_form(g: &SimpleGraph) -> Result<CanonicalForm> {
    canonical_form_with(g, &Limits::default())
}

pub fn canonical_form_with(g: &SimpleGraph, limits: &Limits) -> Result<CanonicalForm> {
    let n = g.n();
    if n > limits.canon_max_n {
        return Err(Error::SizeExceeded { n, bound: limits.canon_max_n });
    }
    if n == 0 {
        return Ok(CanonicalForm { n: 0, edges: vec![] });
    }
    let mut cells = vec![(1..=n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    let mut best: Option<Vec<(usize, usize)>> = None;
    canon_search(g, cells, &mut best);
    Ok(CanonicalForm { n, edges: best.expect("search yields at least one labeling") })
}

/// Equitable refinement: split cells by neighbor counts into every cell until
/// stable. Subcells are ordered by count ascending; cell contents stay sorted.
fn refine(g: &SimpleGraph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        'outer: for si in 0..cells.len() {
            let splitter: u64 = cells[si].iter().fold(0u64, |m, &v| m | 1 << (v - 1));
            for ci in 0..cells.len() {
                if cells[ci].len() <= 1 {
                    continue;
                }
                let counts: Vec<u32> = cells[ci]
                    .iter()
                    .map(|&v| (g.row(v) & splitter).count_ones())
                    .collect();
                if counts.windows(2).all(|w| w[0] == w[1]) {
                    continue;
                }
                // split this cell by count, ascending
                let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
                let mut keyed: Vec<(u32, usize)> = counts
                    .iter()
                    .copied()
                    .zip(cells[ci].iter().copied())
                    .collect();
                keyed.sort_unstable();
                for (c, v) in keyed {
                    match groups.last_mut() {
                        Some((gc, vs)) if *gc == c => vs.push(v),
                        _ => groups.push((c, vec![v])),
                    }
                }
                let replacement: Vec<Vec<usize>> = groups.into_iter().map(|(_, vs)| vs).collect();
                cells.splice(ci..=ci, replacement);
                changed = true;
                break 'outer;
            }
        }
        if !changed {
            return;
        }
    }
}

fn canon_search(g: &SimpleGraph, cells: Vec<Vec<usize>>, best: &mut Option<Vec<(usize, usize)>>) {
    if let Some(ci) = cells.iter().position(|c| c.len() > 1) {
        for idx in 0..cells[ci].len() {
            let mut next = cells.clone();
            let v = next[ci][idx];
            let rest: Vec<usize> = next[ci]
                .iter()
                .copied()
                .filter(|&u| u != v)
                .collect();
            next.splice(ci..=ci, [vec![v], rest]);
            refine(g, &mut next);
            canon_search(g, next, best);
        }
        return;
    }
    // discrete partition: cells[i][0] receives label i+1
    let mut label = vec![0usize; g.n() + 1];
    for (i, cell) in cells.iter().enumerate() {
        label[cell[0]] = i + 1;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (label[u], label[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    match best {
        Some(b) if *b <= edges => {}
        _ => *best = Some(edges),
    }
}

pub fn are_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<bool> {
    are_isomorphic_with(g1, g2, &Limits::default())
}

pub fn are_isomorphic_with(g1: &SimpleGraph, g2: &SimpleGraph, limits: &Limits) -> Result<bool> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut d1: Vec<usize> = (1..=g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (1..=g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }
    Ok(canonical_form_with(g1, limits)? == canonical_form_with(g2, limits)?)
}

/// Finds some 5-clique if one exists. Exhaustive branch and bound over
/// neighborhoods; the witness is the first clique in the fixed search order.
pub fn find_k5(g: &SimpleGraph) -> Option<[usize; 5]> {
    find_clique(g, 5).map(|v| v.try_into().expect("clique of size 5"))
}

/// First clique of exactly `k` vertices in fixed order, if any.
pub fn find_clique(g: &SimpleGraph, k: usize) -> Option<Vec<usize>> {
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut clique = Vec::with_capacity(k);
    clique_search(g, &mut clique, full, k)
}

fn clique_search(
    g: &SimpleGraph,
    clique: &mut Vec<usize>,
    cands: u64,
    k: usize,
) -> Option<Vec<usize>> {
    if clique.len() == k {
        return Some(clique.clone());
    }
    if clique.len() + (cands.count_ones() as usize) < k {
        return None;
    }
    let mut bits = cands;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize + 1;
        bits &= bits - 1;
        clique.push(v);
        // only candidates above v, to enumerate each clique once
        let next = cands & g.row(v) & !((1u64 << v) - 1);
        if let Some(found) = clique_search(g, clique, next, k) {
            return Some(found);
        }
        clique.pop();
    }
    None
}

/// Exact maximum clique (branch and bound).
pub fn max_clique(g: &SimpleGraph) -> Vec<usize> {
    let mut best = Vec::new();
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut cur = Vec::new();
    max_clique_search(g, &mut cur, full, &mut best);
    best
}

fn max_clique_search(g: &SimpleGraph, cur: &mut Vec<usize>, cands: u64, best: &mut Vec<usize>) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if cur.len() + cands.count_ones() as usize <= best.len() {
        return;
    }
    let mut bits = cands;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize + 1;
        bits &= bits - 1;
        cur.push(v);
        max_clique_search(g, cur, cands & g.row(v) & !((1u64 << v) - 1), best);
        cur.pop();
    }
}

/// Witness for [`is_bipartite`]: either the two color classes, or an odd cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BipartiteWitness {
    TwoColoring { sides: [Vec<usize>; 2] },
    OddCycle { cycle: Vec<usize> },
}

/// BFS 2-coloring with an explicit witness either way.
pub fn bipartite_witness(g: &SimpleGraph) -> BipartiteWitness {
    let n = g.n();
    let mut color = vec![usize::MAX; n + 1];
    let mut parent = vec![0usize; n + 1];
    for root in 1..=n {
        if color[root] != usize::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if color[v] == usize::MAX {
                    color[v] = color[u] ^ 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return BipartiteWitness::OddCycle { cycle: odd_cycle(&parent, u, v) };
                }
            }
        }
    }
    let sides = [
        (1..=n).filter(|&v| color[v] == 0).collect(),
        (1..=n).filter(|&v| color[v] == 1).collect(),
    ];
    BipartiteWitness::TwoColoring { sides }
}

fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let ancestors = |mut x: usize| -> Vec<usize> {
        let mut path = vec![x];
        while parent[x] != 0 {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = ancestors(u);
    let pv = ancestors(v);
    // strip the common tail, keep the meeting vertex
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    cycle
}

pub fn is_bipartite(g: &SimpleGraph) -> bool {
    matches!(bipartite_witness(g), BipartiteWitness::TwoColoring { .. })
}

/// Exact chromatic number via iterated k-colorability with a clique lower
/// bound and greedy upper bound.
pub fn chromatic_number(g: &SimpleGraph) -> Result<usize> {
    chromatic_number_with(g, &Limits::default())
}

pub fn chromatic_number_with(g: &SimpleGraph, limits: &Limits) -> Result<usize> {
    Ok(chromatic_with_coloring(g, limits)?.0)
}

/// Exact chromatic number together with an optimal proper coloring
/// (`coloring[v-1]` in `1..=chi`).
pub fn chromatic_with_coloring(
    g: &SimpleGraph,
    limits: &Limits,
) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > limits.chromatic_max_n {
        return Err(Error::SizeExceeded { n, bound: limits.chromatic_max_n });
    }
    if n == 0 {
        return Ok((0, vec![]));
    }
    if g.edge_count() == 0 {
        return Ok((1, vec![1; n]));
    }
    let clique = max_clique(g);
    let (greedy_k, greedy_coloring) = greedy_coloring(g);
    let mut best = (greedy_k, greedy_coloring);
    for k in clique.len()..greedy_k {
        if let Some(coloring) = k_coloring(g, k, &clique) {
            best = (k, coloring);
            break;
        }
    }
    Ok(best)
}

pub fn is_k_colorable(g: &SimpleGraph, k: usize) -> bool {
    if g.edge_count() == 0 {
        return k >= 1 || g.n() == 0;
    }
    let clique = max_clique(g);
    if clique.len() > k {
        return false;
    }
    k_coloring(g, k, &clique).is_some()
}

fn greedy_coloring(g: &SimpleGraph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut color = vec![0usize; n + 1];
    let mut used = 0;
    for &v in &order {
        let mut taken = 0u64;
        for u in g.neighbors(v) {
            if color[u] != 0 {
                taken |= 1 << (color[u] - 1);
            }
        }
        let c = (!taken).trailing_zeros() as usize + 1;
        color[v] = c;
        used = used.max(c);
    }
    (used, color[1..].to_vec())
}

/// DSATUR-style backtracking k-coloring. A maximum clique is preassigned
/// distinct colors, and a fresh color may only be introduced as
/// `max_used + 1`, which together break the color symmetry.
fn k_coloring(g: &SimpleGraph, k: usize, clique: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    if k > 64 {
        return Some((1..=n).map(|v| v.min(k)).collect()); // k >= n: trivial
    }
    let mut color = vec![0usize; n + 1];
    for (i, &v) in clique.iter().enumerate() {
        color[v] = i + 1;
    }
    let max_used = clique.len();
    if solve_coloring(g, k, &mut color, max_used) {
        Some(color[1..].to_vec())
    } else {
        None
    }
}

fn solve_coloring(g: &SimpleGraph, k: usize, color: &mut Vec<usize>, max_used: usize) -> bool {
    // pick uncolored vertex with the fewest admissible colors (most saturated)
    let n = g.n();
    let mut pick = 0usize;
    let mut pick_free = u64::MAX;
    let mut pick_count = usize::MAX;
    for v in 1..=n {
        if color[v] != 0 {
            continue;
        }
        let mut taken = 0u64;
        for u in g.neighbors(v) {
            if color[u] != 0 {
                taken |= 1 << (color[u] - 1);
            }
        }
        let limit = (max_used + 1).min(k);
        let mask = if limit == 64 { u64::MAX } else { (1u64 << limit) - 1 };
        let free = !taken & mask;
        let cnt = free.count_ones() as usize;
        if cnt == 0 {
            return false;
        }
        if cnt < pick_count || (cnt == pick_count && g.degree(v) > g.degree(pick)) {
            pick = v;
            pick_count = cnt;
            pick_free = free;
        }
    }
    if pick == 0 {
        return true; // all colored
    }
    let mut free = pick_free;
    while free != 0 {
        let c = free.trailing_zeros() as usize + 1;
        free &= free - 1;
        color[pick] = c;
        if solve_coloring(g, k, color, max_used.max(c)) {
            return true;
        }
        color[pick] = 0;
    }
    false
}

/// Machine-checkable witness that two graphs are non-isomorphic.
///
/// Variants are ordered from cheapest to verify to most expensive; witness
/// data always refers to `(g1, g2)` in the order they were certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DistinctnessCertificate {
    ConnectivityDiffers {
        components1: usize,
        components2: usize,
    },
    BipartiteDiffers {
        /// 1 or 2: which graph is bipartite.
        bipartite_graph: u8,
        sides: [Vec<usize>; 2],
        odd_cycle: Vec<usize>,
    },
    K5PresenceDiffers {
        /// 1 or 2: which graph contains the clique.
        clique_in: u8,
        clique: [usize; 5],
    },
    ChromaticDiffers {
        chi1: usize,
        chi2: usize,
        /// Proper coloring witnessing the smaller chromatic number.
        coloring: Vec<usize>,
    },
    CanonicalFormsDiffer {
        form1: CanonicalForm,
        form2: CanonicalForm,
    },
}

/// Tries cheap invariants in fixed order (connectivity, bipartiteness,
/// K5-presence, chromatic number, canonical form) and returns the first
/// discriminating certificate, or `None` when the graphs are isomorphic.
pub fn certify_distinct(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
) -> Result<Option<DistinctnessCertificate>> {
    certify_distinct_with(g1, g2, &Limits::default())
}

pub fn certify_distinct_with(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    limits: &Limits,
) -> Result<Option<DistinctnessCertificate>> {
    let c1 = g1.components().len();
    let c2 = g2.components().len();
    if c1 != c2 {
        return Ok(Some(DistinctnessCertificate::ConnectivityDiffers {
            components1: c1,
            components2: c2,
        }));
    }
    let w1 = bipartite_witness(g1);
    let w2 = bipartite_witness(g2);
    match (&w1, &w2) {
        (BipartiteWitness::TwoColoring { sides }, BipartiteWitness::OddCycle { cycle }) => {
            return Ok(Some(DistinctnessCertificate::BipartiteDiffers {
                bipartite_graph: 1,
                sides: sides.clone(),
                odd_cycle: cycle.clone(),
            }));
        }
        (BipartiteWitness::OddCycle { cycle }, BipartiteWitness::TwoColoring { sides }) => {
            return Ok(Some(DistinctnessCertificate::BipartiteDiffers {
                bipartite_graph: 2,
                sides: sides.clone(),
                odd_cycle: cycle.clone(),
            }));
        }
        _ => {}
    }
    match (find_k5(g1), find_k5(g2)) {
        (Some(clique), None) => {
            return Ok(Some(DistinctnessCertificate::K5PresenceDiffers {
                clique_in: 1,
                clique,
            }));
        }
        (None, Some(clique)) => {
            return Ok(Some(DistinctnessCertificate::K5PresenceDiffers {
                clique_in: 2,
                clique,
            }));
        }
        _ => {}
    }
    if g1.n() <= limits.chromatic_max_n && g2.n() <= limits.chromatic_max_n {
        let (chi1, col1) = chromatic_with_coloring(g1, limits)?;
        let (chi2, col2) = chromatic_with_coloring(g2, limits)?;
        if chi1 != chi2 {
            let coloring = if chi1 < chi2 { col1 } else { col2 };
            return Ok(Some(DistinctnessCertificate::ChromaticDiffers { chi1, chi2, coloring }));
        }
    }
    let form1 = canonical_form_with(g1, limits)?;
    let form2 = canonical_form_with(g2, limits)?;
    if form1 != form2 {
        return Ok(Some(DistinctnessCertificate::CanonicalFormsDiffer { form1, form2 }));
    }
    Ok(None)
}

/// Independently re-checks a certificate against the two union graphs.
pub fn verify_certificate(
    cert: &DistinctnessCertificate,
    g1: &SimpleGraph,
    g2: &SimpleGraph,
) -> bool {
    match cert {
        DistinctnessCertificate::ConnectivityDiffers { components1, components2 } => {
            *components1 != *components2
                && g1.components().len() == *components1
                && g2.components().len() == *components2
        }
        DistinctnessCertificate::BipartiteDiffers { bipartite_graph, sides, odd_cycle } => {
            let (gb, go) = if *bipartite_graph == 1 { (g1, g2) } else { (g2, g1) };
            let side_of = |v: usize| -> Option<usize> {
                if sides[0].contains(&v) {
                    Some(0)
                } else if sides[1].contains(&v) {
                    Some(1)
                } else {
                    None
                }
            };
            let partition_ok = (1..=gb.n()).all(|v| side_of(v).is_some())
                && sides[0].len() + sides[1].len() == gb.n()
                && gb
                    .edges()
                    .iter()
                    .all(|&(u, v)| side_of(u) != side_of(v));
            let k = odd_cycle.len();
            let cycle_ok = k >= 3
                && k % 2 == 1
                && (0..k).all(|i| go.has_edge(odd_cycle[i], odd_cycle[(i + 1) % k]));
            partition_ok && cycle_ok
        }
        DistinctnessCertificate::K5PresenceDiffers { clique_in, clique } => {
            let (gc, gf) = if *clique_in == 1 { (g1, g2) } else { (g2, g1) };
            gc.is_clique(clique) && find_k5(gf).is_none()
        }
        DistinctnessCertificate::ChromaticDiffers { chi1, chi2, coloring } => {
            if chi1 == chi2 {
                return false;
            }
            let (lo, g_lo, g_hi) = if chi1 < chi2 { (*chi1, g1, g2) } else { (*chi2, g2, g1) };
            let coloring_ok = coloring.len() == g_lo.n()
                && coloring.iter().all(|&c| (1..=lo).contains(&c))
                && g_lo
                    .edges()
                    .iter()
                    .all(|&(u, v)| coloring[u - 1] != coloring[v - 1]);
            // exact search confirms the larger value exceeds the smaller one
            coloring_ok && !is_k_colorable(g_hi, lo)
        }
        DistinctnessCertificate::CanonicalFormsDiffer { form1, form2 } => {
            form1 != form2
                && canonical_form(g1).map(|f| f == *form1).unwrap_or(false)
                && canonical_form(g2).map(|f| f == *form2).unwrap_or(false)
        }
    }
}
