//! Labeled simple undirected graphs on at most [`MAX_ORDER`] vertices.
//!
//! Vertex ids are small integers that stay fixed for the lifetime of a
//! graph and of everything derived from it by contraction or deletion. A
//! contraction `(i => j)` deletes `i` and keeps `j`; no operation renumbers
//! the surviving ids. Dense renumbering only happens at the graph6
//! boundary (see [`Graph::compacted`]).
//!
//! Adjacency is stored as one `u64` bitmask per id slot, so set operations
//! on neighborhoods are single machine instructions.

mod generate;
mod graph6;

pub use generate::{
    all_labeled_connected, complete, complete_minus_edge, cycle, gnp, path, petersen,
    random_connected, star, Generator, LabeledConnected, MAX_ENUMERATION_ORDER,
};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines};

use crate::error::{LabError, Result};

/// Largest order representable by the short-form graph6 encoding.
pub const MAX_ORDER: usize = 62;

pub type VertexId = usize;

/// Iterate the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
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

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    /// `adj[v]` is the neighborhood of `v`; dead slots are zero.
    adj: Vec<u64>,
    live: u64,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices().collect::<Vec<_>>())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Graph on vertices `0..order` with no edges.
    pub fn empty(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(LabError::OrderTooLarge { order, max: MAX_ORDER });
        }
        Ok(Graph { adj: vec![0; order], live: (1u64 << order) - 1 })
    }

    /// Build a graph on `0..order` from an edge list. Repeated edges are
    /// merged; loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::empty(order)?;
        for (u, v) in edges {
            if u == v || u >= order || v >= order {
                return Err(LabError::InvalidEdge(u, v));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: VertexId, v: VertexId) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    /// Number of vertices (p).
    pub fn order(&self) -> usize {
        self.live.count_ones() as usize
    }

    /// Number of edges (q).
    pub fn size(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of id slots; every live id is below this.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn live_mask(&self) -> u64 {
        self.live
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        v < self.adj.len() && self.live & (1 << v) != 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        bits(self.live)
    }

    /// Neighborhood of `v` as a bitmask over vertex ids.
    pub fn neighbors(&self, v: VertexId) -> u64 {
        self.adj.get(v).copied().unwrap_or(0)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && v < self.adj.len() && self.neighbors(u) & (1 << v) != 0
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.size());
        for u in self.vertices() {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Number of triangles through the edge `{u, v}`.
    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> usize {
        (self.neighbors(u) & self.neighbors(v)).count_ones() as usize
    }

    pub fn is_complete(&self) -> bool {
        self.vertices().all(|v| self.adj[v] == self.live & !(1 << v))
    }

    /// Whether the vertices in `mask` induce a connected subgraph.
    /// The empty set counts as connected.
    pub fn is_connected_within(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask & mask.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.live)
    }

    /// Whether no two vertices of `mask` are adjacent.
    pub fn is_independent(&self, mask: u64) -> bool {
        bits(mask).all(|v| self.adj[v] & mask == 0)
    }

    fn check_live(&self, v: VertexId) -> Result<()> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(LabError::UnknownVertex(v))
        }
    }

    /// Contract the edge `{removed, survivor}`: `removed` disappears and
    /// `survivor` inherits the union of both neighborhoods. Parallel edges
    /// merge and the loop is dropped, so the result stays simple.
    pub fn contract_edge(&self, removed: VertexId, survivor: VertexId) -> Result<Graph> {
        self.check_live(removed)?;
        self.check_live(survivor)?;
        if removed == survivor {
            return Err(LabError::SameVertex(removed));
        }
        if !self.has_edge(removed, survivor) {
            return Err(LabError::NotAdjacent(removed, survivor));
        }
        let mut g = self.without_vertex(removed);
        let gained = self.adj[removed] & !(1 << survivor);
        for k in bits(gained) {
            g.insert_edge(survivor, k);
        }
        Ok(g)
    }

    fn without_vertex(&self, v: VertexId) -> Graph {
        let mut g = self.clone();
        for k in bits(g.adj[v]) {
            g.adj[k] &= !(1 << v);
        }
        g.adj[v] = 0;
        g.live &= !(1 << v);
        g
    }

    pub fn remove_vertex(&self, v: VertexId) -> Result<Graph> {
        self.check_live(v)?;
        Ok(self.without_vertex(v))
    }

    pub fn remove_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(LabError::NotAdjacent(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    /// Relabel the live vertices densely as `0..order`, preserving their
    /// relative order. Returns the new graph and, for each new id, the old id.
    pub fn compacted(&self) -> (Graph, Vec<VertexId>) {
        let ids: Vec<VertexId> = self.vertices().collect();
        let mut new_of = vec![usize::MAX; self.capacity()];
        for (new, &old) in ids.iter().enumerate() {
            new_of[old] = new;
        }
        let mut g = Graph::empty(ids.len()).expect("order already within range");
        for (u, v) in self.edges() {
            g.insert_edge(new_of[u], new_of[v]);
        }
        (g, ids)
    }
}
