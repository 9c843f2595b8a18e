//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is stored as one `u64` bitset per vertex. The order is capped
//! at [`MAX_VERTICES`], the largest order graph6 encodes with one size
//! byte. Every graph in this crate is immutable once built.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest order a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 62;

pub type Vertex = usize;

/// An unordered vertex pair, always stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn other(self, x: Vertex) -> Vertex {
        if x == self.0 {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A sorted, duplicate-free set of edges.
pub type EdgeSet = Vec<Edge>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinity"),
        }
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. Rows must be symmetric,
    /// irreflexive and only mention vertices below `adj.len()`.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let in_range = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for (v, &row) in adj.iter().enumerate() {
            if row & !in_range != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: 63 - row.leading_zeros() as usize, n });
            }
            if row >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in bits(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(Graph::from_adjacency(adj.clone()).is_ok());
        Graph { n: adj.len(), adj }
    }

    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitset.
    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Edges in lexicographic order of `(min, max)` endpoints.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push(Edge(u, u + 1 + v));
            }
        }
        out
    }

    /// Position of `e` in [`Graph::edges`], if it is an edge.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if !self.has_edge(e.0, e.1) {
            return None;
        }
        let before: usize = (0..e.0).map(|u| (self.adj[u] >> u >> 1).count_ones() as usize).sum();
        let low_mask = (1u64 << e.1) - 1;
        let within = (self.adj[e.0] >> e.0 >> 1 & (low_mask >> e.0 >> 1)).count_ones() as usize;
        Some(before + within)
    }

    pub fn min_degree(&self) -> Result<usize, GraphError> {
        (0..self.n).map(|v| self.degree(v)).min().ok_or(GraphError::EmptyGraph)
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        (0..self.n).map(|v| self.degree(v)).max().ok_or(GraphError::EmptyGraph)
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Vertex sets of the connected components, each as a bitset, ordered
    /// by smallest member.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Shortest cycle length via a BFS from every vertex.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                // no shorter cycle through this root can appear past here
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if len < best {
                            best = len;
                        }
                        if dist[w] == dist[u] {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Leaves are the degree-one vertices; stems are vertices adjacent to
    /// at least one leaf.
    pub fn leaves_and_stems(&self) -> (Vec<Vertex>, Vec<Vertex>) {
        let leaf_mask = self.leaf_mask();
        let leaves = bits(leaf_mask).collect();
        let stems = (0..self.n).filter(|&v| self.adj[v] & leaf_mask != 0).collect();
        (leaves, stems)
    }

    pub fn leaf_mask(&self) -> u64 {
        (0..self.n).filter(|&v| self.degree(v) == 1).fold(0, |m, v| m | 1 << v)
    }

    pub fn is_stem(&self, v: Vertex) -> bool {
        self.neighbors(v).any(|u| self.degree(u) == 1)
    }

    /// `G - F` on the same vertex set, plus the vertices it leaves isolated.
    pub fn delete_edges(&self, f: &[Edge]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let mut adj = self.adj.clone();
        for &e in f {
            if !self.has_edge(e.0, e.1) {
                return Err(GraphError::NotAnEdge(e.0, e.1));
            }
            adj[e.0] &= !(1 << e.1);
            adj[e.1] &= !(1 << e.0);
        }
        let g = Graph { n: self.n, adj };
        let iso = g.isolated_vertices();
        Ok((g, iso))
    }

    /// Induced subgraph on the vertices of `mask`, relabelled in increasing
    /// order. Returns the graph and the old label of each new vertex.
    pub fn induced(&self, mask: u64) -> (Graph, Vec<Vertex>) {
        let verts: Vec<Vertex> = bits(mask & self.vertex_mask()).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let adj = verts.iter().map(|&v| bits(self.adj[v] & mask).fold(0u64, |row, u| row | 1 << pos[u])).collect();
        (Graph { n: verts.len(), adj }, verts)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u) {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Adds a vertex `n` adjacent to exactly the vertices in `nbrs`.
    pub fn with_vertex(&self, nbrs: u64) -> Result<Graph, GraphError> {
        let n = self.n;
        if n + 1 > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n + 1));
        }
        let nbrs = nbrs & self.vertex_mask();
        let mut adj = self.adj.clone();
        for v in bits(nbrs) {
            adj[v] |= 1 << n;
        }
        adj.push(nbrs);
        Ok(Graph { n: n + 1, adj })
    }

    /// Triangles as sorted vertex triples.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in bits(self.adj[a] >> a >> 1).map(|x| x + a + 1) {
                let common = self.adj[a] & self.adj[b] & !((2u64 << b) - 1);
                for c in bits(common) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        let edges = self.edges();
        for (i, e) in edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Iterates the set bits of `mask` from least significant upwards.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}
