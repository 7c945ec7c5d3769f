//! Weighted undirected graphs as symmetric matrices, plus the small
//! built-in family used throughout the test and verification suites.

use rand::Rng;

use crate::error::Result;
use crate::linalg::{Matrix, SymmetricMatrix};

/// Undirected weighted graph, stored as its symmetric adjacency matrix.
/// A nonzero diagonal entry is a self-loop.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedGraph {
    adj: SymmetricMatrix,
}

impl WeightedGraph {
    pub fn from_adjacency(adj: SymmetricMatrix) -> Self {
        WeightedGraph { adj }
    }

    /// Builds from an edge list; duplicate edges have their weights summed.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut m = Matrix::<f64>::zeros(n, n);
        for &(i, j, w) in edges {
            if i == j {
                m[(i, i)] += w;
            } else {
                m[(i, j)] += w;
                m[(j, i)] += w;
            }
        }
        Ok(WeightedGraph {
            adj: SymmetricMatrix::from_matrix(m)?,
        })
    }

    /// Path graph on `n` vertices (P2 is a single edge).
    pub fn path(n: usize) -> Self {
        Self::from_fn_graph(n, |i, j| if j == i + 1 { 1.0 } else { 0.0 })
    }

    /// Cycle graph on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_fn_graph(n, |i, j| {
            if j == i + 1 || (i == 0 && j == n - 1) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        Self::from_fn_graph(n, |i, j| if i != j { 1.0 } else { 0.0 })
    }

    /// Star `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_fn_graph(leaves + 1, |i, j| if i == 0 && j > 0 { 1.0 } else { 0.0 })
    }

    /// Erdos–Renyi `G(n, p)` with 0/1 weights and no self-loops.
    pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Self {
        Self::from_fn_graph(n, |i, j| {
            if i != j && rng.gen::<f64>() < p {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Random symmetric integer weights in `lo..=hi` (diagonal included),
    /// the stock matrix family of the randomized identity suites.
    pub fn random_integer_symmetric(
        n: usize,
        lo: i64,
        hi: i64,
        rng: &mut impl Rng,
    ) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(n, |_, _| rng.gen_range(lo..=hi) as f64).unwrap()
    }

    fn from_fn_graph(n: usize, f: impl FnMut(usize, usize) -> f64) -> Self {
        WeightedGraph {
            adj: SymmetricMatrix::from_fn(n, f).expect("n >= 1"),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.n()
    }

    pub fn adjacency(&self) -> &SymmetricMatrix {
        &self.adj
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adj.get(i, j)
    }

    /// Neighbors of `i`, including `i` itself when it carries a self-loop.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&j| self.weight(i, j) != 0.0)
            .collect()
    }

    /// Weighted degree `sum_j a_ij`.
    pub fn degree(&self, i: usize) -> f64 {
        (0..self.n()).map(|j| self.weight(i, j)).sum()
    }

    pub fn is_loopless(&self) -> bool {
        self.adj.is_zero_diagonal()
    }

    /// Loopless with all off-diagonal weights in {0, 1}.
    pub fn is_simple(&self) -> bool {
        self.is_loopless()
            && (0..self.n()).all(|i| {
                (0..self.n()).all(|j| {
                    let w = self.weight(i, j);
                    w == 0.0 || w == 1.0
                })
            })
    }

    pub fn induced(&self, vertices: &[usize]) -> WeightedGraph {
        WeightedGraph {
            adj: self.adj.induced(vertices),
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> WeightedGraph {
        let n = self.n() + other.n();
        let split = self.n();
        Self::from_fn_graph(n, |i, j| {
            if i < split && j < split {
                self.weight(i, j)
            } else if i >= split && j >= split {
                other.weight(i - split, j - split)
            } else {
                0.0
            }
        })
    }

    /// Dense text form: first line `n`, then `n` rows of weights. The
    /// float formatting round-trips exactly, so dumps can be re-parsed
    /// into an equal graph.
    pub fn to_dense_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.n()));
        for i in 0..self.n() {
            let row: Vec<String> = (0..self.n())
                .map(|j| format!("{}", self.weight(i, j)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families_have_expected_shapes() {
        assert_eq!(WeightedGraph::path(2).degree(0), 1.0);
        assert_eq!(WeightedGraph::complete(4).degree(0), 3.0);
        assert_eq!(WeightedGraph::star(3).degree(0), 3.0);
        assert_eq!(WeightedGraph::star(3).degree(1), 1.0);
        assert_eq!(WeightedGraph::cycle(5).degree(2), 2.0);
    }

    #[test]
    fn union_blocks_are_disconnected() {
        let g = WeightedGraph::path(2).disjoint_union(&WeightedGraph::path(2));
        assert_eq!(g.n(), 4);
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(2, 3), 1.0);
        assert_eq!(g.weight(1, 2), 0.0);
    }

    #[test]
    fn duplicate_edges_sum() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 1.0), (0, 1, 0.5)]).unwrap();
        assert_eq!(g.weight(0, 1), 1.5);
        assert_eq!(g.weight(1, 0), 1.5);
    }

    #[test]
    fn gnp_is_deterministic_per_seed() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let g1 = WeightedGraph::gnp(6, 0.5, &mut r1);
        let g2 = WeightedGraph::gnp(6, 0.5, &mut r2);
        assert_eq!(g1, g2);
    }
}
