//! Simple undirected graphs and the threshold-graph toolkit built on them.
//!
//! Vertices are `0..n` internally. Every text format and report produced by
//! this crate shifts them to `1..=n`.

mod characterize;
pub mod edgelist;
mod threshold;

pub use characterize::{closed_twin_classes, is_forbidden_free, nested_neighborhoods, TwinPartition};
pub use edgelist::{format_edge_list, parse_edge_list};
pub use threshold::{
    block_decomposition, build_threshold, edge_count_from_code, parse_code, recognize_threshold,
    threshold_ordering, weight_representation, windmill, Block, BlockKind, BlockStructure,
    ThresholdCode, WeightRep,
};

use crate::error::{Error, Result};

/// Undirected simple graph with a dense adjacency matrix and sorted
/// neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from 0-indexed edges. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameters(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameters(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.adj[u * self.n + v] {
            return;
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        let pos = self.neighbors[u].binary_search(&v).unwrap_err();
        self.neighbors[u].insert(pos, v);
        let pos = self.neighbors[v].binary_search(&u).unwrap_err();
        self.neighbors[v].insert(pos, u);
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Star with hub `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edge density |E| / C(n, 2); zero for graphs with fewer than two vertices.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let pairs = self.n * (self.n - 1) / 2;
        self.edge_count() as f64 / pairs as f64
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Open neighborhood N(v), sorted.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Closed neighborhood N[v] as a membership row.
    pub fn closed_row(&self, v: usize) -> Vec<bool> {
        let mut row = self.adj[v * self.n..(v + 1) * self.n].to_vec();
        row[v] = true;
        row
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Combinatorial Laplacian D − A, row-major.
    pub fn laplacian(&self) -> Vec<f64> {
        let n = self.n;
        let mut l = vec![0.0; n * n];
        for u in 0..n {
            l[u * n + u] = self.degree(u) as f64;
            for &v in &self.neighbors[u] {
                l[u * n + v] = -1.0;
            }
        }
        l
    }

    /// Subgraph induced on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}
