//! Hikes in Cartier–Foata normal form: heaps of vertex-disjoint simple
//! cycles, their enumeration by total length, the projection from closed
//! walks onto heaps, and the piece-level bookkeeping (maximal pieces,
//! von Mangoldt weights, visit counts).

use std::collections::HashMap;

use num::One;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::hikes::cycles::{canonical_rotation, enumerate_simple_cycles, SimpleCycle};
use crate::linalg::{rat, Rat};

/// Default cap on the total length of enumerated hikes.
pub const DEFAULT_HIKE_CAP: usize = 10;

/// Bitmask of a vertex set (the enumeration machinery caps graphs at 64
/// vertices, far beyond anything it is used for).
pub fn vertex_mask(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |m, &v| {
        assert!(v < 64);
        m | (1 << v)
    })
}

/// The simple cycles of a graph, indexed once so hikes can refer to
/// cycles by id.
pub struct CycleSet {
    cycles: Vec<SimpleCycle>,
    masks: Vec<u64>,
    by_sequence: HashMap<Vec<usize>, usize>,
}

impl CycleSet {
    pub fn new(g: &WeightedGraph) -> Self {
        let cycles = enumerate_simple_cycles(g);
        let masks = cycles.iter().map(|c| vertex_mask(c.vertices())).collect();
        let by_sequence = cycles
            .iter()
            .enumerate()
            .map(|(i, c)| (c.vertices().to_vec(), i))
            .collect();
        CycleSet {
            cycles,
            masks,
            by_sequence,
        }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycle(&self, id: usize) -> &SimpleCycle {
        &self.cycles[id]
    }

    pub fn cycles(&self) -> &[SimpleCycle] {
        &self.cycles
    }

    pub fn mask(&self, id: usize) -> u64 {
        self.masks[id]
    }

    pub fn length(&self, id: usize) -> usize {
        self.cycles[id].length()
    }

    /// Id of a cycle given its canonical vertex sequence.
    pub fn id_of(&self, canonical: &[usize]) -> Option<usize> {
        self.by_sequence.get(canonical).copied()
    }
}

/// A hike in Cartier–Foata normal form: levels of pairwise vertex-disjoint
/// cycles, every cycle resting on (sharing a vertex with) the level below.
/// Two hikes are equal iff their normal forms are identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hike {
    levels: Vec<Vec<usize>>,
    length: usize,
    weight: Rat,
}

impl Hike {
    /// The empty hike (the unit of the trace monoid).
    pub fn empty() -> Self {
        Hike {
            levels: Vec::new(),
            length: 0,
            weight: Rat::one(),
        }
    }

    fn from_levels(levels: Vec<Vec<usize>>, cs: &CycleSet) -> Self {
        let mut length = 0;
        let mut weight = Rat::one();
        for level in &levels {
            for &id in level {
                length += cs.length(id);
                weight *= cs.cycle(id).weight().clone();
            }
        }
        Hike {
            levels,
            length,
            weight,
        }
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Total length: the added length of all composing cycles.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Product of the cycle weights (with multiplicity), exact.
    pub fn weight(&self) -> &Rat {
        &self.weight
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    /// Number of pieces, counted with multiplicity.
    pub fn piece_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Maximal pieces of the heap: pieces with no later-level piece
    /// stacked over them. These are exactly the prime right divisors.
    pub fn maximal_pieces(&self, cs: &CycleSet) -> Vec<usize> {
        let mut above = 0u64; // union of masks of the levels strictly above
        let mut maximal = Vec::new();
        for level in self.levels.iter().rev() {
            for &id in level {
                if cs.mask(id) & above == 0 {
                    maximal.push(id);
                }
            }
            for &id in level {
                above |= cs.mask(id);
            }
        }
        maximal.sort_unstable();
        maximal
    }

    /// The unique prime right divisor when the hike is a pyramid.
    pub fn pyramid_top(&self, cs: &CycleSet) -> Option<usize> {
        let m = self.maximal_pieces(cs);
        if m.len() == 1 {
            Some(m[0])
        } else {
            None
        }
    }

    /// Von Mangoldt weight: length of the unique prime right divisor,
    /// zero for non-pyramids (including the empty hike).
    pub fn lambda(&self, cs: &CycleSet) -> usize {
        self.pyramid_top(cs).map_or(0, |id| cs.length(id))
    }

    /// `Lambda_u`: number of `u`-vertices on the unique prime right
    /// divisor, zero for non-pyramids.
    pub fn lambda_u(&self, cs: &CycleSet, u_mask: u64) -> usize {
        self.pyramid_top(cs)
            .map_or(0, |id| (cs.mask(id) & u_mask).count_ones() as usize)
    }

    /// `ell_u`: visits of the hike to `u`, counted with multiplicity over
    /// all pieces.
    pub fn visits(&self, cs: &CycleSet, u_mask: u64) -> usize {
        self.levels
            .iter()
            .flatten()
            .map(|&id| (cs.mask(id) & u_mask).count_ones() as usize)
            .sum()
    }

    /// True iff every prime right divisor (maximal piece) intersects `u`.
    /// Vacuously true for the empty hike.
    pub fn right_divisors_intersect(&self, cs: &CycleSet, u_mask: u64) -> bool {
        self.maximal_pieces(cs)
            .iter()
            .all(|&id| cs.mask(id) & u_mask != 0)
    }
}

/// All hikes of total length at most `l`, each in normal form, under the
/// default cap.
pub fn enumerate_hikes(g: &WeightedGraph, l: usize) -> Result<Vec<Hike>> {
    enumerate_hikes_with_cap(g, l, DEFAULT_HIKE_CAP)
}

pub fn enumerate_hikes_with_cap(g: &WeightedGraph, l: usize, cap: usize) -> Result<Vec<Hike>> {
    if l > cap {
        return Err(Error::HikeLengthCap { requested: l, cap });
    }
    let cs = CycleSet::new(g);
    let mut enumerator = HikeEnumerator {
        cs: &cs,
        levels: Vec::new(),
        out: vec![Hike::empty()],
    };
    enumerator.next_level(u64::MAX, l);
    Ok(enumerator.out)
}

struct HikeEnumerator<'a> {
    cs: &'a CycleSet,
    levels: Vec<Vec<usize>>,
    out: Vec<Hike>,
}

impl HikeEnumerator<'_> {
    /// Extends the current normal form by every admissible next level:
    /// a nonempty set of pairwise disjoint cycles, each touching the
    /// previous level (`support` is `u64::MAX` for the first level).
    fn next_level(&mut self, support: u64, budget: usize) {
        let candidates: Vec<usize> = (0..self.cs.len())
            .filter(|&id| self.cs.length(id) <= budget && self.cs.mask(id) & support != 0)
            .collect();
        let mut level = Vec::new();
        self.grow_level(&candidates, 0, 0, budget, &mut level);
    }

    fn grow_level(
        &mut self,
        candidates: &[usize],
        from: usize,
        level_mask: u64,
        budget: usize,
        level: &mut Vec<usize>,
    ) {
        for (pos, &id) in candidates.iter().enumerate().skip(from) {
            let len = self.cs.length(id);
            if len > budget || self.cs.mask(id) & level_mask != 0 {
                continue;
            }
            level.push(id);
            let mask = level_mask | self.cs.mask(id);
            // the level as grown so far is one admissible complete level
            self.levels.push(level.clone());
            self.out
                .push(Hike::from_levels(self.levels.clone(), self.cs));
            self.next_level(mask, budget - len);
            self.levels.pop();
            // or keep growing the same level with later cycle ids
            self.grow_level(candidates, pos + 1, mask, budget - len, level);
            level.pop();
        }
    }
}

/// Weight of a walk: the exact product of its edge weights.
pub fn walk_weight(g: &WeightedGraph, walk: &[usize]) -> Rat {
    walk.windows(2)
        .map(|e| rat(g.weight(e[0], e[1])))
        .fold(Rat::one(), |acc, w| acc * w)
}

/// All closed walks with `len` edges starting and ending at `start`,
/// as vertex sequences of length `len + 1`.
pub fn closed_walks_from(g: &WeightedGraph, start: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut walk = vec![start];
    fn step(
        g: &WeightedGraph,
        start: usize,
        len: usize,
        walk: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if walk.len() == len + 1 {
            if *walk.last().unwrap() == start {
                out.push(walk.clone());
            }
            return;
        }
        let here = *walk.last().unwrap();
        for next in 0..g.n() {
            if g.weight(here, next) != 0.0 {
                walk.push(next);
                step(g, start, len, walk, out);
                walk.pop();
            }
        }
    }
    if len == 0 {
        return vec![vec![start]];
    }
    step(g, start, len, &mut walk, &mut out);
    out
}

/// Projects a closed walk onto its heap of cycles: steps are pushed onto
/// a path stack and every revisit completes a simple cycle, which is
/// appended to the heap word in completion order. The result is the
/// normal form of that word, always a pyramid.
pub fn walk_to_hike(cs: &CycleSet, walk: &[usize]) -> Hike {
    assert!(walk.len() >= 2, "closed walk needs at least one step");
    assert_eq!(walk[0], *walk.last().unwrap(), "walk must be closed");
    let mut stack = vec![walk[0]];
    let mut word = Vec::new();
    for &v in &walk[1..] {
        if let Some(pos) = stack.iter().position(|&x| x == v) {
            let cycle = canonical_rotation(&stack[pos..]);
            let id = cs
                .id_of(&cycle)
                .expect("completed cycle must be a known simple cycle");
            word.push(id);
            stack.truncate(pos + 1);
        } else {
            stack.push(v);
        }
    }
    debug_assert_eq!(stack, vec![walk[0]]);
    normal_form(cs, &word)
}

/// Cartier–Foata normal form of a word of cycles: each piece drops to
/// one level above the highest earlier piece it shares a vertex with.
pub fn normal_form(cs: &CycleSet, word: &[usize]) -> Hike {
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut level_masks: Vec<u64> = Vec::new();
    for &id in word {
        let mask = cs.mask(id);
        let resting = level_masks
            .iter()
            .rposition(|&m| m & mask != 0)
            .map_or(0, |i| i + 1);
        if resting == levels.len() {
            levels.push(Vec::new());
            level_masks.push(0);
        }
        levels[resting].push(id);
        level_masks[resting] |= mask;
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Hike::from_levels(levels, cs)
}
