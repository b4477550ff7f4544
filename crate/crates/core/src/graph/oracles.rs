//! Exhaustive searches over small intersection graphs. Each routine works
//! on one-word adjacency masks, so vertex counts are limited to 64.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{CycleWitness, IntersectionGraph};
use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};

const WORD: usize = 64;

fn full_mask(n: usize) -> u64 {
    if n >= WORD {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn above(v: usize) -> u64 {
    if v + 1 >= WORD {
        0
    } else {
        !0u64 << (v + 1)
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

fn vertex_cap(g: &IntersectionGraph, cap: usize) -> Result<Vec<u64>> {
    check_cap(
        "vertex count",
        g.vertex_count() as u128,
        cap.min(WORD) as u128,
    )?;
    Ok(g.adjacency().masks())
}

/// Searches for an induced cycle of length `n`: consecutive vertices
/// adjacent, all other pairs non-adjacent.
pub fn find_induced_cycle(
    g: &IntersectionGraph,
    n: usize,
    caps: &Caps,
) -> Result<Option<CycleWitness>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be at least 3, got {n}"
        )));
    }
    check_cap(
        "induced cycle length",
        n as u128,
        caps.induced_cycle_len as u128,
    )?;
    let adj = vertex_cap(g, caps.induced_vertices)?;
    Ok(induced_cycle(&adj, n).map(CycleWitness::new))
}

pub(crate) fn induced_cycle(adj: &[u64], n: usize) -> Option<Vec<usize>> {
    if adj.len() < n {
        return None;
    }
    let all = full_mask(adj.len());
    for s in 0..adj.len() {
        let mut path = vec![s];
        if extend_induced(adj, n, above(s) & all, &mut path, 1 << s, 0) {
            return Some(path);
        }
    }
    None
}

/// `interior` is the union of neighbourhoods of the path vertices strictly
/// between the start and the current end.
fn extend_induced(
    adj: &[u64],
    n: usize,
    allowed: u64,
    path: &mut Vec<usize>,
    on_path: u64,
    interior: u64,
) -> bool {
    let len = path.len();
    let s = path[0];
    let last = path[len - 1];
    let mut cand = adj[last] & allowed & !on_path & !interior;
    if len == n - 1 {
        cand &= adj[s];
    } else if len >= 2 {
        cand &= !adj[s];
    }
    if len == n - 1 {
        if let Some(v) = bits(cand).next() {
            path.push(v);
            return true;
        }
        return false;
    }
    let next_interior = if len >= 2 {
        interior | adj[last]
    } else {
        interior
    };
    for v in bits(cand) {
        path.push(v);
        if extend_induced(adj, n, allowed, path, on_path | 1 << v, next_interior) {
            return true;
        }
        path.pop();
    }
    false
}

/// Center plus pairwise non-adjacent neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedClaw {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// Searches for an induced `K_{1,n}`.
pub fn find_induced_claw(
    g: &IntersectionGraph,
    n: usize,
    caps: &Caps,
) -> Result<Option<InducedClaw>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "claw size must be at least 2, got {n}"
        )));
    }
    let adj = vertex_cap(g, caps.induced_vertices)?;
    Ok(induced_claw(&adj, n))
}

pub(crate) fn induced_claw(adj: &[u64], n: usize) -> Option<InducedClaw> {
    fn independent(adj: &[u64], cand: u64, need: usize, chosen: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if (cand.count_ones() as usize) < need {
            return false;
        }
        for v in bits(cand) {
            chosen.push(v);
            if independent(adj, cand & !adj[v] & above(v), need - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    for center in 0..adj.len() {
        let mut leaves = Vec::new();
        if independent(adj, adj[center], n, &mut leaves) {
            return Some(InducedClaw { center, leaves });
        }
    }
    None
}

/// Exhaustive Hamiltonian cycle search. Graphs with fewer than three
/// vertices have none.
pub fn hamiltonian_oracle(g: &IntersectionGraph, caps: &Caps) -> Result<Option<CycleWitness>> {
    let adj = vertex_cap(g, caps.hamiltonian)?;
    Ok(hamiltonian(&adj).map(CycleWitness::new))
}

pub(crate) fn hamiltonian(adj: &[u64]) -> Option<Vec<usize>> {
    let n = adj.len();
    if n < 3 || adj.iter().any(|m| m.count_ones() < 2) {
        return None;
    }
    let all = full_mask(n);
    let mut path = vec![0];
    if ham_extend(adj, all, &mut path, 1) {
        Some(path)
    } else {
        None
    }
}

fn ham_extend(adj: &[u64], all: u64, path: &mut Vec<usize>, visited: u64) -> bool {
    let start = path[0];
    let last = *path.last().expect("path is never empty");
    if visited == all {
        return adj[last] >> start & 1 == 1;
    }
    let rest = all & !visited;
    let ends = 1u64 << start | 1u64 << last;
    // Every remaining vertex still needs two usable neighbours.
    if bits(rest).any(|u| (adj[u] & (rest | ends)).count_ones() < 2) {
        return false;
    }
    if adj[start] & rest == 0 {
        return false;
    }
    // The remaining vertices must all be reachable from the path end.
    let mut reach = adj[last] & rest;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v] & rest;
        }
        frontier = next & !reach;
        reach |= next;
    }
    if reach != rest {
        return false;
    }
    // Try tight vertices first.
    let mut options: Vec<usize> = bits(adj[last] & rest).collect();
    options.sort_by_key(|&v| ((adj[v] & rest).count_ones(), v));
    for v in options {
        path.push(v);
        if ham_extend(adj, all, path, visited | 1 << v) {
            return true;
        }
        path.pop();
    }
    false
}

/// Largest vertex count the spectrum table can handle in memory.
const SPECTRUM_HARD_LIMIT: usize = 26;

/// Every `L` in `3..=V` for which the graph has a cycle (not necessarily
/// induced) of length `L`.
///
/// For each start vertex `s` a table records, for every set of vertices
/// above `s`, which endpoints a path from `s` through exactly that set can
/// reach; closing back to `s` yields a cycle of the set's size plus one.
pub fn cycle_spectrum_oracle(g: &IntersectionGraph, caps: &Caps) -> Result<BTreeSet<usize>> {
    let cap = caps.spectrum.min(SPECTRUM_HARD_LIMIT);
    let adj = vertex_cap(g, cap)?;
    Ok(cycle_spectrum(&adj))
}

pub(crate) fn cycle_spectrum(adj: &[u64]) -> BTreeSet<usize> {
    let n = adj.len();
    let mut lengths = BTreeSet::new();
    for s in 0..n {
        let k = n - s - 1;
        if k < 2 {
            break;
        }
        let window = (1u64 << k) - 1;
        let rel = |v: usize| (adj[v] >> (s + 1)) & window;
        let back = rel(s);
        let mut reach = vec![0u32; 1 << k];
        for v in bits(back) {
            reach[1 << v] |= 1 << v;
        }
        for mask in 1..(1usize << k) {
            let ends = reach[mask];
            if ends == 0 {
                continue;
            }
            let size = mask.count_ones() as usize;
            if size >= 2 && (ends as u64 & back) != 0 {
                lengths.insert(size + 1);
            }
            for v in bits(ends as u64) {
                for w in bits(rel(v + s + 1) & !(mask as u64)) {
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    lengths
}

/// Backtracking search for a cycle of exactly `len` vertices, within the
/// spectrum cap.
pub fn find_cycle_of_length(
    g: &IntersectionGraph,
    len: usize,
    caps: &Caps,
) -> Result<Option<CycleWitness>> {
    let adj = vertex_cap(g, caps.spectrum)?;
    Ok(cycle_of_length(&adj, len).map(CycleWitness::new))
}

pub(crate) fn cycle_of_length(adj: &[u64], len: usize) -> Option<Vec<usize>> {
    fn go(adj: &[u64], len: usize, allowed: u64, path: &mut Vec<usize>, used: u64) -> bool {
        let s = path[0];
        let last = *path.last().expect("nonempty");
        if path.len() == len {
            return adj[last] >> s & 1 == 1;
        }
        for v in bits(adj[last] & allowed & !used) {
            path.push(v);
            if go(adj, len, allowed, path, used | 1 << v) {
                return true;
            }
            path.pop();
        }
        false
    }
    let n = adj.len();
    if len < 3 || len > n {
        return None;
    }
    for s in 0..=n - len {
        let mut path = vec![s];
        if go(adj, len, above(s) & full_mask(n), &mut path, 1 << s) {
            return Some(path);
        }
    }
    None
}
