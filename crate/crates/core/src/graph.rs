//! Foundational graph and packing data types.
//!
//! Vertices are labeled `1..=n` throughout the public API, matching the
//! published packing tables. [`SimpleGraph`] stores adjacency as one bitset
//! row per vertex and supports orders up to 64.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Hard cap on graph order imposed by the bitset representation.
pub const MAX_ORDER: usize = 64;

/// A multiset of cycle lengths describing the abstract 2-factor
/// `C_{n_1} ∪ … ∪ C_{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoFactorShape {
    lengths: Vec<usize>,
}

impl TwoFactorShape {
    /// Builds a shape from cycle lengths. Lengths are sorted; each must be >= 3.
    pub fn new(mut lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyShape);
        }
        if let Some(&bad) = lengths.iter().find(|&&l| l < 3) {
            return Err(Error::CycleTooShort(bad));
        }
        lengths.sort_unstable();
        Ok(TwoFactorShape { lengths })
    }

    /// Parses a comma-separated length list such as `"3,6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let lengths = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad cycle length {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TwoFactorShape::new(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Total vertex count `n = Σ n_i`.
    pub fn order(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Number of cycles `k`.
    pub fn component_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_single_cycle(&self) -> bool {
        self.lengths.len() == 1
    }
}

impl fmt::Display for TwoFactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for TwoFactorShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.lengths.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoFactorShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lengths = Vec::<usize>::deserialize(d)?;
        TwoFactorShape::new(lengths).map_err(serde::de::Error::custom)
    }
}

/// One copy of a 2-factor placed on labeled vertices: a list of cycles, each a
/// cyclic sequence of distinct vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclePlacement {
    cycles: Vec<Vec<usize>>,
}

impl CyclePlacement {
    pub fn new(cycles: Vec<Vec<usize>>) -> Self {
        CyclePlacement { cycles }
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Multiset of cycle lengths, sorted.
    pub fn length_multiset(&self) -> Vec<usize> {
        let mut ls: Vec<usize> = self.cycles.iter().map(|c| c.len()).collect();
        ls.sort_unstable();
        ls
    }

    /// All vertex labels appearing in the placement, with repetitions.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycles.iter().flatten().copied()
    }

    /// Undirected edges induced by the cyclic sequences, as `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for cycle in &self.cycles {
            let k = cycle.len();
            for i in 0..k {
                let u = cycle[i];
                let v = cycle[(i + 1) % k];
                out.push((u.min(v), u.max(v)));
            }
        }
        out
    }

    /// Rewrites every cycle to start at its smallest label with the smaller
    /// neighbor second, and orders cycles by (length, first label).
    pub fn normalize(&mut self) {
        for cycle in &mut self.cycles {
            normalize_cycle(cycle);
        }
        self.cycles.sort_by_key(|c| (c.len(), c.first().copied()));
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }
}

/// Rotates and reflects a cyclic sequence so the smallest label comes first
/// and its smaller neighbor second.
pub fn normalize_cycle(cycle: &mut Vec<usize>) {
    let k = cycle.len();
    if k == 0 {
        return;
    }
    let (min_pos, _) = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .expect("nonempty cycle");
    cycle.rotate_left(min_pos);
    if k > 2 && cycle[1] > cycle[k - 1] {
        cycle[1..].reverse();
    }
}

impl Serialize for CyclePlacement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.cycles.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclePlacement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(CyclePlacement::new(Vec::<Vec<usize>>::deserialize(d)?))
    }
}

/// Conventional names for the three copies in a packing.
pub const COPY_NAMES: [&str; 3] = ["black", "red", "blue"];

/// Three edge-disjoint placements of the same 2-factor on a common vertex
/// set `1..=n`. Copies are ordered black, red, blue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriplePacking {
    pub n: usize,
    pub shape: TwoFactorShape,
    pub copies: [CyclePlacement; 3],
}

impl TriplePacking {
    pub fn new(n: usize, shape: TwoFactorShape, copies: [CyclePlacement; 3]) -> Self {
        TriplePacking { n, shape, copies }
    }

    pub fn normalized(mut self) -> Self {
        for c in &mut self.copies {
            c.normalize();
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("packing serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Plain text edge list: one `u v c` line per edge, copy index c in 1..=3.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (ci, copy) in self.copies.iter().enumerate() {
            for (u, v) in copy.edges() {
                out.push_str(&format!("{u} {v} {}\n", ci + 1));
            }
        }
        out
    }

    /// Parses the `u v c` edge-list format back into a packing.
    ///
    /// Each color class must form a disjoint union of cycles; the shape is
    /// inferred from the first copy.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut color_edges: [Vec<(usize, usize)>; 3] = [vec![], vec![], vec![]];
        let mut max_v = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected 'u v c'",
                    lineno + 1
                )));
            }
            let u: usize = fields[0]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let v: usize = fields[1]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let c: usize = fields[2]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if !(1..=3).contains(&c) {
                return Err(Error::Parse(format!(
                    "line {}: copy index {c} out of range 1..=3",
                    lineno + 1
                )));
            }
            if u == 0 || v == 0 || u == v {
                return Err(Error::Parse(format!("line {}: bad edge {u} {v}", lineno + 1)));
            }
            max_v = max_v.max(u).max(v);
            color_edges[c - 1].push((u, v));
        }
        let n = max_v;
        let mut copies = Vec::with_capacity(3);
        for edges in &color_edges {
            copies.push(cycles_from_edges(n, edges)?);
        }
        let shape = TwoFactorShape::new(copies[0].length_multiset())?;
        let copies: [CyclePlacement; 3] = copies.try_into().expect("exactly three copies");
        Ok(TriplePacking { n, shape, copies })
    }
}

/// Reassembles a 2-regular edge set into its cycles.
fn cycles_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<CyclePlacement> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(u, v) in edges {
        if u > n || v > n {
            return Err(Error::Parse(format!("vertex out of range in edge {u}-{v}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    if adj.iter().skip(1).any(|a| a.len() != 2) {
        return Err(Error::Parse(
            "color class is not 2-regular over 1..=n".into(),
        ));
    }
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut prev = start;
        let mut cur = adj[start][0];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
        }
        if cycle.len() < 3 {
            return Err(Error::Parse("degenerate cycle of length < 3".into()));
        }
        cycles.push(cycle);
    }
    Ok(CyclePlacement::new(cycles).normalized())
}

/// A single violation found while validating a candidate packing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// A copy's cycle-length multiset differs from the declared shape.
    ShapeMismatch { copy: usize, found: Vec<usize> },
    /// A copy's labels are not exactly the set `1..=n`.
    VertexCoverage {
        copy: usize,
        missing: Vec<usize>,
        out_of_range: Vec<usize>,
        repeated: Vec<usize>,
    },
    /// Two copies place the same edge.
    EdgeOverlap { copies: (usize, usize), edge: (usize, usize) },
    /// A vertex repeats within one cycle, or a cycle is shorter than 3.
    DegenerateCycle { copy: usize, cycle: Vec<usize> },
}

/// Outcome of [`validate_packing`]: either ok or a full list of violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "{v:?}")?;
            }
            Ok(())
        }
    }
}

/// Checks every packing invariant on an arbitrary candidate and reports all
/// violations, not just the first.
pub fn validate_packing(p: &TriplePacking) -> ValidationReport {
    let mut violations = Vec::new();
    let n = p.n;
    for (ci, copy) in p.copies.iter().enumerate() {
        // degenerate cycles
        for cycle in copy.cycles() {
            let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
            if cycle.len() < 3 || distinct.len() != cycle.len() {
                violations.push(Violation::DegenerateCycle {
                    copy: ci,
                    cycle: cycle.clone(),
                });
            }
        }
        // shape
        if copy.length_multiset() != p.shape.lengths() {
            violations.push(Violation::ShapeMismatch {
                copy: ci,
                found: copy.length_multiset(),
            });
        }
        // coverage
        let mut count = vec![0usize; n + 1];
        let mut out_of_range = Vec::new();
        for v in copy.vertices() {
            if v == 0 || v > n {
                out_of_range.push(v);
            } else {
                count[v] += 1;
            }
        }
        let missing: Vec<usize> = (1..=n).filter(|&v| count[v] == 0).collect();
        let repeated: Vec<usize> = (1..=n).filter(|&v| count[v] > 1).collect();
        if !missing.is_empty() || !out_of_range.is_empty() || !repeated.is_empty() {
            violations.push(Violation::VertexCoverage {
                copy: ci,
                missing,
                out_of_range,
                repeated,
            });
        }
    }
    // pairwise edge disjointness
    for i in 0..3 {
        for j in (i + 1)..3 {
            let set: BTreeSet<(usize, usize)> = p.copies[i].edges().into_iter().collect();
            for e in p.copies[j].edges() {
                if set.contains(&e) {
                    violations.push(Violation::EdgeOverlap {
                        copies: (i, j),
                        edge: e,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Undirected simple graph on vertices `1..=n`, adjacency stored as bitset
/// rows (0-indexed internally).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    rows: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        SimpleGraph { n, rows: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the edge `{u, v}`, 1-based labels. Loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u >= 1 && v >= 1 && u <= self.n && v <= self.n);
        self.rows[u - 1] |= 1 << (v - 1);
        self.rows[v - 1] |= 1 << (u - 1);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u - 1] &= !(1 << (v - 1));
        self.rows[v - 1] &= !(1 << (u - 1));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && (self.rows[u - 1] >> (v - 1)) & 1 == 1
    }

    /// Neighbor bitset of `v` (bit i set means vertex i+1 is adjacent).
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v - 1].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n {
            let mut bits = self.rows[u - 1] >> u; // neighbors > u
            while bits != 0 {
                let off = bits.trailing_zeros() as usize;
                out.push((u, u + 1 + off));
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.rows[v - 1])
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Complement within the complete graph on the same vertex set.
    pub fn complement(&self) -> SimpleGraph {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (!r & full) & !(1 << i))
            .collect();
        SimpleGraph { n: self.n, rows }
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut comps = Vec::new();
        while seen != full {
            let start = (!seen & full).trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                let mut bits = frontier;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            comps.push(BitIter(comp).collect());
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Relabels vertices: `perm[v-1]` is the new label of old vertex `v`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u - 1], perm[v - 1]);
        }
        g
    }

    /// Induced subgraph check: do `verts` induce a clique?
    pub fn is_clique(&self, verts: &[usize]) -> bool {
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// Iterates set bits of a mask as 1-based vertex labels.
struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize + 1;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Edge sum of the three copies of a valid packing. 6-regular with `3n` edges.
pub fn union_graph(p: &TriplePacking) -> Result<SimpleGraph> {
    let report = validate_packing(p);
    if !report.is_ok() {
        return Err(Error::InvalidPacking(report.to_string()));
    }
    let mut g = SimpleGraph::new(p.n);
    for copy in &p.copies {
        for (u, v) in copy.edges() {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// DOT rendering with copy membership as edge colors (black/red/blue).
pub fn to_dot(p: &TriplePacking) -> String {
    let mut out = String::from("graph packing {\n");
    for v in 1..=p.n {
        out.push_str(&format!("  {v};\n"));
    }
    for (ci, copy) in p.copies.iter().enumerate() {
        for (u, v) in copy.edges() {
            out.push_str(&format!("  {u} -- {v} [color={}];\n", COPY_NAMES[ci]));
        }
    }
    out.push_str("}\n");
    out
}
