//! Enumeration of simple cycles in the symmetric digraph of a weighted
//! graph.
//!
//! Conventions: every undirected edge contributes one back-and-forth
//! 2-cycle, polygons of length >= 3 appear in both orientations as
//! distinct cycles, and a nonzero diagonal entry is a self-loop of
//! length 1. This is the convention under which `det(I - zA)` expands
//! over vertex-disjoint cycle sets for symmetric `A`.

use crate::graph::WeightedGraph;
use crate::linalg::{rat, Rat};
use num::One;

/// A simple cycle: a closed path that repeats no vertex before its
/// return. Stored in canonical rotation (the sequence starts at its
/// minimal vertex); its length is the number of edges, which equals the
/// number of vertices listed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleCycle {
    vertices: Vec<usize>,
    weight: Rat,
}

impl SimpleCycle {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    /// Product of the edge weights along the cycle, exact.
    pub fn weight(&self) -> &Rat {
        &self.weight
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// Rotates a cyclic vertex sequence so it starts at its minimal vertex.
pub(crate) fn canonical_rotation(seq: &[usize]) -> Vec<usize> {
    let min_pos = seq
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(p, _)| p)
        .unwrap();
    let mut out = Vec::with_capacity(seq.len());
    out.extend_from_slice(&seq[min_pos..]);
    out.extend_from_slice(&seq[..min_pos]);
    out
}

/// All distinct simple cycles of `g`, in a deterministic order. The DFS
/// roots each cycle at its minimal vertex, so every cycle is produced
/// exactly once and already canonical.
pub fn enumerate_simple_cycles(g: &WeightedGraph) -> Vec<SimpleCycle> {
    let n = g.n();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        // self-loop
        let loop_w = g.weight(start, start);
        if loop_w != 0.0 {
            out.push(SimpleCycle {
                vertices: vec![start],
                weight: rat(loop_w),
            });
        }
        path.push(start);
        on_path[start] = true;
        extend(g, start, &mut path, &mut on_path, &Rat::one(), &mut out);
        on_path[start] = false;
        path.pop();
    }
    out
}

fn extend(
    g: &WeightedGraph,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    weight_so_far: &Rat,
    out: &mut Vec<SimpleCycle>,
) {
    let here = *path.last().unwrap();
    for next in 0..g.n() {
        let w = g.weight(here, next);
        if w == 0.0 {
            continue;
        }
        if next == start && path.len() >= 2 {
            out.push(SimpleCycle {
                vertices: path.clone(),
                weight: weight_so_far.clone() * rat(w),
            });
        } else if next > start && !on_path[next] {
            path.push(next);
            on_path[next] = true;
            let weight = weight_so_far.clone() * rat(w);
            extend(g, start, path, on_path, &weight, out);
            on_path[next] = false;
            path.pop();
        }
    }
}
