//! Packing constructions and the top-level classification of 2-factor
//! shapes.
//!
//! The decision procedure combines five pathways: the embedded catalog for
//! small shapes, circulant decompositions for single cycles, splitting a
//! shape into independently packable parts (distinguishing the packings by
//! component count), growing the five infinite families from searched bases
//! (distinguishing by K5 presence), and a direct two-class search for the
//! handful of shapes none of the structured routes covers.

use crate::canon::{certify_distinct, find_k5, verify_certificate, DistinctnessCertificate};
use crate::catalog::catalog_lookup;
use crate::circulant::{hamiltonian_decomposition_with_budget, select_generator_pair};
use crate::error::{Error, Result};
use crate::graph::{
    union_graph, validate_packing, CyclePlacement, SimpleGraph, TriplePacking, TwoFactorShape,
    MAX_ORDER,
};
use crate::search::{for_each_placement, identity_placement, search_packing, SearchConstraint};
use once_cell::sync::Lazy;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Classification of a shape per the packing trichotomy.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum PackingOutcome {
    NonExistent { reason: String },
    Unique { packing: TriplePacking },
    Pair { p1: TriplePacking, p2: TriplePacking, certificate: DistinctnessCertificate },
}

/// A 2-factor admits a packing of three copies unless its order is below 7
/// or it is 2C3.
pub fn is_packable(lengths: &[usize]) -> bool {
    match lengths.len() {
        0 => false,
        1 => lengths[0] >= 7,
        _ => lengths != [3, 3],
    }
}

/// Places `b` on fresh labels after `a`'s, concatenating copies colorwise.
pub fn disjoint_union(a: &TriplePacking, b: &TriplePacking) -> Result<TriplePacking> {
    let n = a.n + b.n;
    if n > MAX_ORDER {
        return Err(Error::SizeExceeded { n, bound: MAX_ORDER });
    }
    let mut copies = Vec::with_capacity(3);
    for i in 0..3 {
        let mut cycles = a.copies[i].cycles().to_vec();
        cycles.extend(
            b.copies[i]
                .cycles()
                .iter()
                .map(|c| c.iter().map(|&v| v + a.n).collect::<Vec<_>>()),
        );
        copies.push(CyclePlacement::new(cycles));
    }
    let mut lengths = a.shape.lengths().to_vec();
    lengths.extend_from_slice(b.shape.lengths());
    let shape = TwoFactorShape::new(lengths)?;
    let copies: [CyclePlacement; 3] = copies.try_into().expect("three copies");
    Ok(TriplePacking::new(n, shape, copies).normalized())
}

/// Repeatedly joins two components of the union by swapping the positions of
/// one vertex from each on their blue cycles, until the union is connected.
/// Black and red copies are never touched; the blue cycle-length multiset is
/// preserved.
pub fn merge_components(p: &TriplePacking) -> Result<TriplePacking> {
    let report = validate_packing(p);
    if !report.is_ok() {
        return Err(Error::InvalidPacking(report.to_string()));
    }
    let mut cur = p.clone();
    loop {
        let g = union_graph(&cur)?;
        let comps = g.components();
        if comps.len() <= 1 {
            return Ok(cur.normalized());
        }
        let x1 = eligible_swap_vertex(&g, &cur, &comps[0]).ok_or(Error::MergeFailed)?;
        let x2 = eligible_swap_vertex(&g, &cur, &comps[1]).ok_or(Error::MergeFailed)?;
        let mut cycles = cur.copies[2].cycles().to_vec();
        for c in &mut cycles {
            for v in c.iter_mut() {
                if *v == x1 {
                    *v = x2;
                } else if *v == x2 {
                    *v = x1;
                }
            }
        }
        cur.copies[2] = CyclePlacement::new(cycles);
    }
}

/// Blue-cycle neighbors of `x`: the two vertices adjacent to `x` on its blue
/// cycle.
fn blue_neighbors(p: &TriplePacking, x: usize) -> (usize, usize) {
    for cycle in p.copies[2].cycles() {
        if let Some(i) = cycle.iter().position(|&v| v == x) {
            let k = cycle.len();
            return (cycle[(i + k - 1) % k], cycle[(i + 1) % k]);
        }
    }
    unreachable!("vertex {x} missing from blue copy");
}

/// First vertex of `comp` whose two blue incident edges can be removed with
/// the component's union staying connected.
fn eligible_swap_vertex(g: &SimpleGraph, p: &TriplePacking, comp: &[usize]) -> Option<usize> {
    for &x in comp {
        let (a, b) = blue_neighbors(p, x);
        let mut h = g.clone();
        h.remove_edge(x, a);
        h.remove_edge(x, b);
        let mask: u64 = comp.iter().map(|&v| 1u64 << (v - 1)).sum();
        let mut reached = 1u64 << (comp[0] - 1);
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0u64;
            let mut bits = frontier;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                next |= h.row(v);
            }
            frontier = next & mask & !reached;
            reached |= frontier;
        }
        if reached == mask {
            return Some(x);
        }
    }
    None
}

/// Position `i` such that the unordered pair `{cycle[i], cycle[i+1]}` equals
/// `e`, indices cyclic.
fn edge_position(cycle: &[usize], e: (usize, usize)) -> Option<usize> {
    let k = cycle.len();
    (0..k).find(|&i| {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        (u, v) == e || (v, u) == e
    })
}

/// Subdivides one designated cycle of each copy through a single new vertex
/// `n + 1`: the black edge, blue edge, and red edge are replaced by paths of
/// length two. The three edges must be pairwise vertex-disjoint and the
/// designated cycles must share one length `q`; the result packs
/// the shape with that `q` grown to `q + 1`. A K5-free union stays K5-free,
/// as any 5-clique through the new degree-6 vertex would need all six of its
/// neighbors inside a 4-set.
pub fn subdivide_matching(
    p: &TriplePacking,
    target_cycle: [usize; 3],
    black: (usize, usize),
    blue: (usize, usize),
    red: (usize, usize),
) -> Result<TriplePacking> {
    let report = validate_packing(p);
    if !report.is_ok() {
        return Err(Error::InvalidPacking(report.to_string()));
    }
    let n = p.n;
    if n + 1 > MAX_ORDER {
        return Err(Error::SizeExceeded { n: n + 1, bound: MAX_ORDER });
    }
    let ends = [black.0, black.1, red.0, red.1, blue.0, blue.1];
    for i in 0..6 {
        for j in (i + 1)..6 {
            if ends[i] == ends[j] {
                return Err(Error::EdgesNotIndependent);
            }
        }
    }
    let picks = [(0usize, black), (1, red), (2, blue)];
    let mut new_copies = p.copies.clone();
    let mut lens = [0usize; 3];
    for (ci, e) in picks {
        let cycles = p.copies[ci].cycles();
        let idx = target_cycle[ci];
        if idx >= cycles.len() {
            return Err(Error::EdgeNotOnTargetCycle(e.0, e.1));
        }
        let pos = match edge_position(&cycles[idx], e) {
            Some(i) => i,
            None => {
                let in_same_copy = cycles.iter().any(|c| edge_position(c, e).is_some());
                let in_other_copy = (0..3).filter(|&cj| cj != ci).any(|cj| {
                    p.copies[cj].cycles().iter().any(|c| edge_position(c, e).is_some())
                });
                return Err(if in_other_copy && !in_same_copy {
                    Error::WrongColor(e.0, e.1)
                } else {
                    Error::EdgeNotOnTargetCycle(e.0, e.1)
                });
            }
        };
        lens[ci] = cycles[idx].len();
        let mut cycle = cycles[idx].clone();
        cycle.insert(pos + 1, n + 1);
        let mut cs = cycles.to_vec();
        cs[idx] = cycle;
        new_copies[ci] = CyclePlacement::new(cs);
    }
    if lens[0] != lens[1] || lens[1] != lens[2] {
        return Err(Error::InvalidPacking(
            "designated cycles do not share a common length".into(),
        ));
    }
    let q = lens[0];
    let mut lengths = p.shape.lengths().to_vec();
    let slot = lengths.iter().position(|&l| l == q).expect("length present");
    lengths[slot] = q + 1;
    let shape = TwoFactorShape::new(lengths)?;
    Ok(TriplePacking::new(n + 1, shape, new_copies))
}

/// Grows the unique longest cycle of `base` to length `target_x` by repeated
/// subdivision. With `keep_k5_free` the base must be K5-free and every
/// intermediate stays so; otherwise a K5 present in the base is protected by
/// never subdividing its edges.
pub fn grow_family(
    base: &TriplePacking,
    target_x: usize,
    keep_k5_free: bool,
) -> Result<TriplePacking> {
    let lengths = base.shape.lengths();
    let long = *lengths.last().expect("nonempty shape");
    if lengths.iter().filter(|&&l| l == long).count() != 1 {
        return Err(Error::InvalidPacking("longest cycle is not unique".into()));
    }
    if target_x < long {
        return Err(Error::InvalidPacking(format!(
            "target length {target_x} below current long cycle {long}"
        )));
    }
    let mut cur = base.clone().normalized();
    let protected = if keep_k5_free {
        if let Some(clique) = find_k5(&union_graph(&cur)?) {
            return Err(Error::InvalidPacking(format!(
                "base union contains the 5-clique {clique:?}"
            )));
        }
        None
    } else {
        find_k5(&union_graph(&cur)?)
    };
    for _ in long..target_x {
        cur = grow_step(&cur, protected.as_ref())?.normalized();
    }
    Ok(cur)
}

/// One subdivision step on the longest cycle, scanning tri-colored edge
/// triples in fixed order and taking the first independent one that avoids
/// the protected clique.
fn grow_step(p: &TriplePacking, protected: Option<&[usize; 5]>) -> Result<TriplePacking> {
    let avoid = |e: (usize, usize)| -> bool {
        match protected {
            Some(clique) => clique.contains(&e.0) && clique.contains(&e.1),
            None => false,
        }
    };
    let long_edges = |ci: usize| -> (usize, Vec<(usize, usize)>) {
        let cycles = p.copies[ci].cycles();
        let idx = cycles.len() - 1; // normalized: longest cycle last
        let c = &cycles[idx];
        let k = c.len();
        let edges = (0..k).map(|i| (c[i], c[(i + 1) % k])).collect();
        (idx, edges)
    };
    let (bi, black_edges) = long_edges(0);
    let (ri, red_edges) = long_edges(1);
    let (ui, blue_edges) = long_edges(2);
    let target = {
        let mut t = [0usize; 3];
        t[0] = bi;
        t[1] = ri;
        t[2] = ui;
        t
    };
    for &be in &black_edges {
        if avoid(be) {
            continue;
        }
        for &ue in &blue_edges {
            if avoid(ue) || ue.0 == be.0 || ue.0 == be.1 || ue.1 == be.0 || ue.1 == be.1 {
                continue;
            }
            for &re in &red_edges {
                if avoid(re)
                    || [re.0, re.1]
                        .iter()
                        .any(|&v| v == be.0 || v == be.1 || v == ue.0 || v == ue.1)
                {
                    continue;
                }
                return subdivide_matching(p, target, be, ue, re);
            }
        }
    }
    Err(Error::NoMatchingAvailable)
}

/// The five infinite families: B ∪ C_x for B in {C3, C4, C5, C6, 2C3} and
/// x ≥ 11. Returns the lengths of B when `lengths` matches.
fn family_small_part(lengths: &[usize]) -> Option<Vec<usize>> {
    match lengths {
        [s, x] if (3..=6).contains(s) && *x >= 11 => Some(vec![*s]),
        [3, 3, x] if *x >= 11 => Some(vec![3, 3]),
        _ => None,
    }
}

static FAMILY_BASES: Lazy<Mutex<HashMap<(Vec<usize>, bool), TriplePacking>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Searched base packing of B ∪ C11 with or without a K5, memoized.
fn family_base(small: &[usize], with_k5: bool, budget: Duration) -> Result<TriplePacking> {
    let key = (small.to_vec(), with_k5);
    if let Some(p) = FAMILY_BASES.lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let mut lengths = small.to_vec();
    lengths.push(11);
    let shape = TwoFactorShape::new(lengths)?;
    let constraint = if with_k5 { SearchConstraint::RequireK5 } else { SearchConstraint::ForbidK5 };
    let p = search_packing(&shape, constraint, budget)?.ok_or_else(|| {
        Error::Incomplete(shape.to_string(), "no family base packing found".into())
    })?;
    FAMILY_BASES.lock().unwrap().insert(key, p.clone());
    Ok(p)
}

/// Splits the length multiset into two independently packable parts, if
/// possible. Prefers the two largest cycles as one part; ties resolved by
/// the lexicographically smallest first part.
fn split_parts(shape: &TwoFactorShape) -> Option<(Vec<usize>, Vec<usize>)> {
    let lens = shape.lengths();
    let k = lens.len();
    if k < 2 {
        return None;
    }
    let mut cands: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for mask in 1u32..((1 << k) - 1) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, &l) in lens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.push(l);
            } else {
                b.push(l);
            }
        }
        if is_packable(&a) && is_packable(&b) {
            let pair = if a <= b { (a, b) } else { (b, a) };
            cands.insert(pair);
        }
    }
    if k > 2 {
        let two_largest = vec![lens[k - 2], lens[k - 1]];
        if let Some(hit) = cands
            .iter()
            .find(|(a, b)| *a == two_largest || *b == two_largest)
        {
            return Some(hit.clone());
        }
    }
    cands.first().cloned()
}

/// Produces some valid packing of a packable shape via the cheapest route.
pub fn packing_of(shape: &TwoFactorShape, budget: Duration) -> Result<TriplePacking> {
    let lens = shape.lengths();
    if !is_packable(lens) {
        return Err(Error::Incomplete(shape.to_string(), "no packing exists".into()));
    }
    if let Some(entry) = catalog_lookup(shape) {
        return Ok(entry.packings[0].clone());
    }
    if shape.is_single_cycle() {
        let n = lens[0];
        if n > MAX_ORDER {
            return Err(Error::SizeExceeded { n, bound: MAX_ORDER });
        }
        let (first, _) = select_generator_pair(n)?;
        return hamiltonian_decomposition_with_budget(&first, budget);
    }
    if let Some(small) = family_small_part(lens) {
        let x = *lens.last().expect("nonempty");
        let base = family_base(&small, true, budget)?;
        return grow_family(&base, x, false);
    }
    if let Some((a, b)) = split_parts(shape) {
        let pa = packing_of(&TwoFactorShape::new(a)?, budget)?;
        let pb = packing_of(&TwoFactorShape::new(b)?, budget)?;
        return disjoint_union(&pa, &pb);
    }
    search_packing(shape, SearchConstraint::Any, budget)?
        .ok_or_else(|| Error::Incomplete(shape.to_string(), "search found no packing".into()))
}

/// Exhaustive-order search for two packings with non-isomorphic unions,
/// used for the few shapes no structured construction covers.
fn search_two_distinct(
    shape: &TwoFactorShape,
    budget: Duration,
) -> Result<(TriplePacking, TriplePacking)> {
    let n = shape.order();
    if n > MAX_ORDER {
        return Err(Error::SizeExceeded { n, bound: MAX_ORDER });
    }
    let deadline = Instant::now() + budget;
    let first = identity_placement(shape);
    let mut used = SimpleGraph::new(n);
    for (u, v) in first.edges() {
        used.add_edge(u, v);
    }
    let mut baseline: Option<(crate::canon::CanonicalForm, TriplePacking)> = None;
    let found = for_each_placement(n, shape.lengths(), &used, deadline, &mut |second| {
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
            let form = crate::canon::canonical_form(&union)?;
            let p = TriplePacking::new(
                n,
                shape.clone(),
                [first.clone(), second.clone(), third],
            )
            .normalized();
            match &baseline {
                None => {
                    baseline = Some((form, p));
                    Ok(None)
                }
                Some((base_form, _)) if *base_form != form => Ok(Some(p)),
                Some(_) => Ok(None),
            }
        })
    })?;
    match (baseline, found) {
        (Some((_, p1)), Some(p2)) => Ok((p1, p2)),
        _ => Err(Error::Incomplete(
            shape.to_string(),
            "no second union class found".into(),
        )),
    }
}

pub const DEFAULT_CLASSIFY_BUDGET: Duration = Duration::from_secs(300);

pub fn distinct_packings(shape: &TwoFactorShape) -> Result<PackingOutcome> {
    distinct_packings_with_budget(shape, DEFAULT_CLASSIFY_BUDGET)
}

/// Full classification: no packing, unique packing, or an explicit pair of
/// packings with certified non-isomorphic unions.
pub fn distinct_packings_with_budget(
    shape: &TwoFactorShape,
    budget: Duration,
) -> Result<PackingOutcome> {
    let lens = shape.lengths();
    let n = shape.order();
    if !is_packable(lens) {
        let reason = if lens == [3, 3] {
            "three copies of 2C3 exceed the available edges of K6 around a vertex".to_string()
        } else {
            format!("order {n} is below 7, the minimum for three edge-disjoint copies")
        };
        return Ok(PackingOutcome::NonExistent { reason });
    }
    if let Some(entry) = catalog_lookup(shape) {
        if entry.packings.len() == 1 {
            return Ok(PackingOutcome::Unique { packing: entry.packings[0].clone() });
        }
        let p1 = entry.packings[0].clone();
        let p2 = entry.packings[1].clone();
        return certified_pair(shape, p1, p2);
    }
    if shape.is_single_cycle() {
        if n > MAX_ORDER {
            return Err(Error::SizeExceeded { n, bound: MAX_ORDER });
        }
        let (s1, s2) = select_generator_pair(n)?;
        let p1 = hamiltonian_decomposition_with_budget(&s1, budget)?;
        let p2 = hamiltonian_decomposition_with_budget(&s2, budget)?;
        return certified_pair(shape, p1, p2);
    }
    if let Some(small) = family_small_part(lens) {
        let x = *lens.last().expect("nonempty");
        let p1 = match family_base(&small, true, budget).and_then(|b| grow_family(&b, x, false)) {
            Ok(p) => p,
            Err(Error::NoMatchingAvailable) => {
                search_packing(shape, SearchConstraint::RequireK5, budget)?.ok_or_else(|| {
                    Error::Incomplete(shape.to_string(), "no K5 packing found".into())
                })?
            }
            Err(e) => return Err(e),
        };
        let p2 = match family_base(&small, false, budget).and_then(|b| grow_family(&b, x, true)) {
            Ok(p) => p,
            Err(Error::NoMatchingAvailable) => {
                search_packing(shape, SearchConstraint::ForbidK5, budget)?.ok_or_else(|| {
                    Error::Incomplete(shape.to_string(), "no K5-free packing found".into())
                })?
            }
            Err(e) => return Err(e),
        };
        return certified_pair(shape, p1, p2);
    }
    if let Some((a, b)) = split_parts(shape) {
        let pa = packing_of(&TwoFactorShape::new(a)?, budget)?;
        let pb = packing_of(&TwoFactorShape::new(b)?, budget)?;
        let p1 = disjoint_union(&pa, &pb)?;
        let p2 = merge_components(&p1)?;
        return certified_pair(shape, p1, p2);
    }
    let (p1, p2) = search_two_distinct(shape, budget)?;
    certified_pair(shape, p1, p2)
}

/// Validates both packings, certifies their unions distinct, and re-verifies
/// the certificate before packaging the outcome.
fn certified_pair(
    shape: &TwoFactorShape,
    p1: TriplePacking,
    p2: TriplePacking,
) -> Result<PackingOutcome> {
    for p in [&p1, &p2] {
        let report = validate_packing(p);
        if !report.is_ok() {
            return Err(Error::Incomplete(shape.to_string(), report.to_string()));
        }
    }
    let g1 = union_graph(&p1)?;
    let g2 = union_graph(&p2)?;
    let certificate = certify_distinct(&g1, &g2)?.ok_or_else(|| {
        Error::Incomplete(shape.to_string(), "constructed unions are isomorphic".into())
    })?;
    if !verify_certificate(&certificate, &g1, &g2) {
        return Err(Error::Incomplete(
            shape.to_string(),
            "certificate failed re-verification".into(),
        ));
    }
    Ok(PackingOutcome::Pair { p1, p2, certificate })
}
