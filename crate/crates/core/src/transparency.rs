//! The transparency matrix: all-pairs hop distances with an explicit
//! unreachable sentinel, plus the structural queries that read directly
//! off it (adjacency, completeness, clique and independence numbers,
//! degrees).

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::graph::{bits, Graph, VertexId};

/// A hop count, or no path at all. Ordering puts every finite value below
/// `Unreachable`, so `min` prefers any real path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);
    pub const ONE: Distance = Distance::Finite(1);

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_unit(self) -> bool {
        self == Distance::ONE
    }

    /// Strictly more than one hop apart (unreachable included).
    pub fn is_non_unit(self) -> bool {
        self > Distance::ONE
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Unreachable,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => d.fmt(f),
            Distance::Unreachable => "inf".fmt(f),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Unreachable => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Hops(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Hops(h) => Ok(Distance::Finite(h)),
            Raw::Text(t) if t == "inf" => Ok(Distance::Unreachable),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad distance {t:?}"))),
        }
    }
}

/// Distance matrix over the live vertices of a graph, indexed by vertex id.
/// Rows and columns follow increasing id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransparencyMatrix {
    ids: Vec<VertexId>,
    entries: Vec<Distance>,
}

impl TransparencyMatrix {
    /// Breadth-first search from every live vertex.
    pub fn compute(g: &Graph) -> TransparencyMatrix {
        let ids: Vec<VertexId> = g.vertices().collect();
        let p = ids.len();
        let mut entries = vec![Distance::Unreachable; p * p];
        let mut slot = vec![usize::MAX; g.capacity()];
        for (k, &v) in ids.iter().enumerate() {
            slot[v] = k;
        }
        for (row, &src) in ids.iter().enumerate() {
            let mut seen = 1u64 << src;
            let mut frontier = seen;
            let mut depth = 0;
            while frontier != 0 {
                for v in bits(frontier) {
                    entries[row * p + slot[v]] = Distance::Finite(depth);
                }
                let mut next = 0;
                for v in bits(frontier) {
                    next |= g.neighbors(v);
                }
                next &= !seen;
                seen |= next;
                frontier = next;
                depth += 1;
            }
        }
        TransparencyMatrix { ids, entries }
    }

    /// Assemble a matrix from ids and a row-major grid, checking the
    /// structural invariants (square, zero diagonal only, symmetric).
    pub fn from_rows(ids: Vec<VertexId>, rows: Vec<Vec<Distance>>) -> Result<Self> {
        let p = ids.len();
        let bad = |why: String| LabError::InvalidRepresentation(why);
        if rows.len() != p || rows.iter().any(|r| r.len() != p) {
            return Err(bad(format!("matrix is not {p}x{p}")));
        }
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("ids must be strictly increasing".into()));
        }
        for m in 0..p {
            for n in 0..p {
                if (rows[m][n] == Distance::ZERO) != (m == n) {
                    return Err(bad(format!("zero pattern violated at ({m}, {n})")));
                }
                if rows[m][n] != rows[n][m] {
                    return Err(bad(format!("asymmetric at ({m}, {n})")));
                }
            }
        }
        Ok(TransparencyMatrix { ids, entries: rows.into_iter().flatten().collect() })
    }

    pub(crate) fn from_parts(ids: Vec<VertexId>, entries: Vec<Distance>) -> Self {
        debug_assert_eq!(entries.len(), ids.len() * ids.len());
        TransparencyMatrix { ids, entries }
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    /// Row/column index of a vertex id.
    pub fn position(&self, v: VertexId) -> Result<usize> {
        self.ids.binary_search(&v).map_err(|_| LabError::UnknownVertex(v))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    /// Entry by row/column index.
    #[inline]
    pub fn at(&self, row: usize, col: usize) -> Distance {
        self.entries[row * self.ids.len() + col]
    }

    /// Entry by vertex ids.
    pub fn entry(&self, m: VertexId, n: VertexId) -> Result<Distance> {
        Ok(self.at(self.position(m)?, self.position(n)?))
    }

    pub fn row(&self, v: VertexId) -> Result<&[Distance]> {
        let p = self.ids.len();
        let r = self.position(v)?;
        Ok(&self.entries[r * p..(r + 1) * p])
    }

    pub fn rows(&self) -> Vec<Vec<Distance>> {
        let p = self.ids.len();
        self.entries.chunks(p.max(1)).take(p).map(<[Distance]>::to_vec).collect()
    }

    /// Any pair in different components.
    pub fn has_unreachable(&self) -> bool {
        self.entries.contains(&Distance::Unreachable)
    }

    /// Replace every distance other than 1 by 0: the adjacency matrix.
    pub fn threshold_to_adjacency(&self) -> Vec<Vec<u8>> {
        self.rows()
            .into_iter()
            .map(|r| r.into_iter().map(|d| d.is_unit() as u8).collect())
            .collect()
    }

    /// Every off-diagonal entry is 1. Vacuously true below order 2.
    pub fn is_complete(&self) -> bool {
        let p = self.ids.len();
        (0..p).all(|m| (0..p).all(|n| m == n || self.at(m, n).is_unit()))
    }

    /// Number of unit entries in the row of `v`.
    pub fn degree_of(&self, v: VertexId) -> Result<usize> {
        Ok(self.row(v)?.iter().filter(|d| d.is_unit()).count())
    }

    /// Unordered pairs at distance exactly 1, as vertex ids with `m < n`.
    pub fn unit_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let p = self.ids.len();
        let mut out = Vec::new();
        for m in 0..p {
            for n in m + 1..p {
                if self.at(m, n).is_unit() {
                    out.push((self.ids[m], self.ids[n]));
                }
            }
        }
        out
    }

    /// Position-indexed masks of the relation `keep(entry)` off the diagonal.
    fn relation_masks(&self, keep: impl Fn(Distance) -> bool) -> Vec<u64> {
        let p = self.ids.len();
        (0..p)
            .map(|m| {
                (0..p)
                    .filter(|&n| n != m && keep(self.at(m, n)))
                    .fold(0u64, |acc, n| acc | 1 << n)
            })
            .collect()
    }

    fn ids_of(&self, mask: u64) -> Vec<VertexId> {
        bits(mask).map(|k| self.ids[k]).collect()
    }

    /// A largest vertex set whose principal submatrix is all ones off the
    /// diagonal, i.e. a maximum clique.
    pub fn max_clique(&self) -> Vec<VertexId> {
        self.ids_of(max_clique_mask(&self.relation_masks(Distance::is_unit)))
    }

    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    /// A largest vertex set whose principal submatrix has every
    /// off-diagonal entry at least 2. Unreachable counts as at least 2.
    pub fn max_independent_set(&self) -> Vec<VertexId> {
        self.ids_of(max_clique_mask(&self.relation_masks(Distance::is_non_unit)))
    }

    pub fn independence_number(&self) -> usize {
        self.max_independent_set().len()
    }

    /// Whether the given ids are pairwise at distance at least 2.
    pub fn is_independent_set(&self, vs: &[VertexId]) -> Result<bool> {
        let pos = vs.iter().map(|&v| self.position(v)).collect::<Result<Vec<_>>>()?;
        Ok(pos
            .iter()
            .enumerate()
            .all(|(a, &m)| pos[a + 1..].iter().all(|&n| m != n && self.at(m, n).is_non_unit())))
    }

    /// Right-aligned grid, single-space separated, `inf` for the sentinel,
    /// one row per line. Every column shares the widest cell's width.
    pub fn grid_dump(&self) -> String {
        let width = self.entries.iter().map(|d| d.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|d| format!("{:>width$}", d.to_string())).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Exact maximum clique over a position-indexed adjacency mask list.
/// Branch and bound: candidates are ordered, and a branch is cut when the
/// current size plus the remaining candidates cannot beat the best.
pub(crate) fn max_clique_mask(adj: &[u64]) -> u64 {
    fn grow(adj: &[u64], current: u64, mut cand: u64, best: &mut u64) {
        if cand == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        while cand != 0 {
            if current.count_ones() + cand.count_ones() <= best.count_ones() {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            grow(adj, current | 1 << v, cand & adj[v], best);
        }
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
    }
    let all = if adj.is_empty() { 0 } else { u64::MAX >> (64 - adj.len()) };
    let mut best = 0;
    grow(adj, 0, all, &mut best);
    best
}
