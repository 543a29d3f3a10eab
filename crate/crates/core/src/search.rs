//! Backtracking search for packings of three copies of a 2-factor.
//!
//! The first copy is fixed as the identity placement `(1..n_1)(n_1+1..)…` to
//! remove vertex-relabeling symmetry; within a placement every cycle starts
//! at its smallest vertex with the reflection fixed by comparing its two
//! neighbors, and cycles of equal length are generated in increasing order of
//! their smallest vertices, so each 2-factor placement is visited exactly
//! once.

use crate::canon::find_k5;
use crate::error::{Error, Result};
use crate::graph::{CyclePlacement, SimpleGraph, TriplePacking, TwoFactorShape};
use std::time::{Duration, Instant};

/// Structural constraint on the union graph of the searched packing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchConstraint {
    Any,
    RequireK5,
    ForbidK5,
    RequireDisconnected,
}

pub const DEFAULT_SEARCH_BUDGET: Duration = Duration::from_secs(60);

/// The identity placement: cycles `(1..n_1), (n_1+1..n_1+n_2), …`.
pub fn identity_placement(shape: &TwoFactorShape) -> CyclePlacement {
    let mut cycles = Vec::new();
    let mut next = 1;
    for &len in shape.lengths() {
        cycles.push((next..next + len).collect());
        next += len;
    }
    CyclePlacement::new(cycles)
}

/// Finds the first packing (in the fixed search order) satisfying the
/// constraint, or `None` when the search space is exhausted.
pub fn search_packing(
    shape: &TwoFactorShape,
    constraint: SearchConstraint,
    budget: Duration,
) -> Result<Option<TriplePacking>> {
    let n = shape.order();
    if n > crate::graph::MAX_ORDER {
        return Err(Error::SizeExceeded { n, bound: crate::graph::MAX_ORDER });
    }
    let deadline = Instant::now() + budget;
    let first = identity_placement(shape);
    let mut used = SimpleGraph::new(n);
    for (u, v) in first.edges() {
        used.add_edge(u, v);
    }
    let found = for_each_placement(n, shape.lengths(), &used, deadline, &mut |second| {
        let second = CyclePlacement::new(second.to_vec());
        let mut two = used.clone();
        for (u, v) in second.edges() {
            two.add_edge(u, v);
        }
        // a K5 in the partial union can only persist in the full union
        if constraint == SearchConstraint::ForbidK5 && find_k5(&two).is_some() {
            return Ok(None);
        }
        for_each_placement(n, shape.lengths(), &two, deadline, &mut |third| {
            let third = CyclePlacement::new(third.to_vec());
            let mut union = two.clone();
            for (u, v) in third.edges() {
                union.add_edge(u, v);
            }
            let ok = match constraint {
                SearchConstraint::Any => true,
                SearchConstraint::RequireK5 => find_k5(&union).is_some(),
                SearchConstraint::ForbidK5 => find_k5(&union).is_none(),
                SearchConstraint::RequireDisconnected => !union.is_connected(),
            };
            if ok {
                let p = TriplePacking::new(
                    n,
                    shape.clone(),
                    [first.clone(), second.clone(), third],
                )
                .normalized();
                Ok(Some(p))
            } else {
                Ok(None)
            }
        })
    })?;
    Ok(found)
}

/// Enumerates every placement of the cycle-length multiset `lengths` on
/// vertices `1..=n` whose edges avoid `forbidden`, invoking `f` on each.
/// `f` returning `Some` short-circuits the enumeration.
pub fn for_each_placement<R>(
    n: usize,
    lengths: &[usize],
    forbidden: &SimpleGraph,
    deadline: Instant,
    f: &mut dyn FnMut(&[Vec<usize>]) -> Result<Option<R>>,
) -> Result<Option<R>> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut state = PlacementState {
        forbidden,
        deadline,
        unused: full,
        cycles: Vec::with_capacity(lengths.len()),
        ticks: 0,
    };
    let mut remaining = lengths.to_vec();
    remaining.sort_unstable();
    state.place(&mut remaining, f)
}

struct PlacementState<'a> {
    forbidden: &'a SimpleGraph,
    deadline: Instant,
    unused: u64,
    cycles: Vec<Vec<usize>>,
    ticks: u32,
}

impl<'a> PlacementState<'a> {
    fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 8192 == 0 && Instant::now() > self.deadline {
            return Err(Error::Timeout);
        }
        Ok(())
    }

    fn place<R>(
        &mut self,
        remaining: &mut Vec<usize>,
        f: &mut dyn FnMut(&[Vec<usize>]) -> Result<Option<R>>,
    ) -> Result<Option<R>> {
        if self.unused == 0 {
            debug_assert!(remaining.is_empty());
            return f(&self.cycles);
        }
        let start = self.unused.trailing_zeros() as usize + 1;
        let mut last_len = 0;
        for idx in 0..remaining.len() {
            let len = remaining[idx];
            if len == last_len {
                continue; // equal lengths are interchangeable
            }
            last_len = len;
            remaining.remove(idx);
            self.unused &= !(1u64 << (start - 1));
            self.cycles.push(vec![start]);
            let found = self.extend_cycle(len, remaining, f)?;
            self.cycles.pop();
            self.unused |= 1u64 << (start - 1);
            remaining.insert(idx, len);
            if let Some(r) = found {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    fn extend_cycle<R>(
        &mut self,
        len: usize,
        remaining: &mut Vec<usize>,
        f: &mut dyn FnMut(&[Vec<usize>]) -> Result<Option<R>>,
    ) -> Result<Option<R>> {
        self.tick()?;
        let cycle = self.cycles.last().expect("open cycle");
        let depth = cycle.len();
        let cur = *cycle.last().expect("nonempty");
        let start = cycle[0];
        if depth == len {
            // close the cycle; the reflection with the larger second vertex
            // is skipped
            if cycle[1] < cycle[len - 1] && !self.forbidden.has_edge(cur, start) {
                return self.place(remaining, f);
            }
            return Ok(None);
        }
        let mut cands = self.unused & !self.forbidden.row(cur);
        while cands != 0 {
            let v = cands.trailing_zeros() as usize + 1;
            cands &= cands - 1;
            self.cycles.last_mut().expect("open cycle").push(v);
            self.unused &= !(1u64 << (v - 1));
            let found = self.extend_cycle(len, remaining, f)?;
            self.unused |= 1u64 << (v - 1);
            self.cycles.last_mut().expect("open cycle").pop();
            if let Some(r) = found {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}
