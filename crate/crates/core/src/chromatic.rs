//! Exact colouring and the predicates built on colour classes.
//!
//! A *partite representation* is a partition of the vertex set into
//! independent sets; it is minimal when it has exactly χ(G) parts.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::graph::{bits, Graph, VertexId};
use crate::transparency::{max_clique_mask, TransparencyMatrix};

/// Largest order accepted by [`all_minimal_representations`].
pub const MAX_REPRESENTATION_ORDER: usize = 8;

/// Adjacency over dense positions `0..p` plus the id of each position.
struct Dense {
    ids: Vec<VertexId>,
    adj: Vec<u64>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let (c, ids) = g.compacted();
        let adj = c.vertices().map(|v| c.neighbors(v)).collect();
        Dense { ids, adj }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Backtracking k-colouring over a fixed vertex order. `classes[c]` is the
/// mask of positions holding colour `c`; a new colour is only opened as
/// the next unused one, which removes colour-permutation symmetry.
fn try_colour(adj: &[u64], order: &[usize], k: usize, colour: &mut [usize]) -> bool {
    fn go(adj: &[u64], order: &[usize], k: usize, at: usize, used: usize, classes: &mut [u64], colour: &mut [usize]) -> bool {
        if at == order.len() {
            return true;
        }
        let v = order[at];
        for c in 0..(used + 1).min(k) {
            if classes[c] & adj[v] == 0 {
                classes[c] |= 1 << v;
                colour[v] = c;
                if go(adj, order, k, at + 1, used.max(c + 1), classes, colour) {
                    return true;
                }
                classes[c] &= !(1 << v);
            }
        }
        false
    }
    let mut classes = vec![0u64; k];
    go(adj, order, k, 0, 0, &mut classes, colour)
}

/// Greedy colouring in the given order; an upper bound.
fn greedy_colour(adj: &[u64], order: &[usize]) -> Vec<usize> {
    let mut colour = vec![usize::MAX; adj.len()];
    for &v in order {
        let taken: u64 = bits(adj[v]).filter(|&u| colour[u] != usize::MAX).fold(0, |m, u| m | 1 << colour[u]);
        colour[v] = (!taken).trailing_zeros() as usize;
    }
    colour
}

/// An optimal colouring as `(colours used, colour per position)`.
fn optimal_colouring(d: &Dense) -> (usize, Vec<usize>) {
    let p = d.len();
    if p == 0 {
        return (0, Vec::new());
    }
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(d.adj[v].count_ones()), v));
    let lower = max_clique_mask(&d.adj).count_ones() as usize;
    let greedy = greedy_colour(&d.adj, &order);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let mut colour = vec![0; p];
    for k in lower..upper {
        if try_colour(&d.adj, &order, k, &mut colour) {
            return (k, colour);
        }
    }
    (upper, greedy)
}

/// χ(G), by exact search between the clique lower bound and the greedy
/// upper bound. The empty graph has χ = 0.
pub fn chromatic_number(g: &Graph) -> usize {
    optimal_colouring(&Dense::new(g)).0
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartiteRepresentation {
    parts: Vec<Vec<VertexId>>,
}

impl PartiteRepresentation {
    /// Validate `parts` against `g`: non-empty, pairwise disjoint, covering
    /// every live vertex, each part independent. Parts are normalized to
    /// sorted order, and ordered by their smallest element.
    pub fn new(g: &Graph, parts: Vec<Vec<VertexId>>) -> Result<Self> {
        let bad = |why: String| Err(LabError::InvalidRepresentation(why));
        let mut seen = 0u64;
        let mut parts = parts;
        for part in &mut parts {
            part.sort_unstable();
            if part.is_empty() {
                return bad("empty part".into());
            }
            let mut mask = 0u64;
            for &v in part.iter() {
                if !g.is_live(v) {
                    return Err(LabError::UnknownVertex(v));
                }
                if seen & (1 << v) != 0 {
                    return bad(format!("vertex {v} appears in more than one part"));
                }
                seen |= 1 << v;
                mask |= 1 << v;
            }
            if !g.is_independent(mask) {
                return bad(format!("part {part:?} is not independent"));
            }
        }
        if seen != g.live_mask() {
            return bad("parts do not cover every vertex".into());
        }
        parts.sort_unstable();
        Ok(PartiteRepresentation { parts })
    }

    fn from_colouring(ids: &[VertexId], colour: &[usize], k: usize) -> Self {
        let mut parts = vec![Vec::new(); k];
        for (pos, &c) in colour.iter().enumerate() {
            parts[c].push(ids[pos]);
        }
        parts.iter_mut().for_each(|p| p.sort_unstable());
        parts.sort_unstable();
        PartiteRepresentation { parts }
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    fn mask(&self, index: usize) -> u64 {
        self.parts[index].iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Every part has all internal distances at least 2.
    pub fn independent_in(&self, t: &TransparencyMatrix) -> bool {
        self.parts.iter().all(|p| t.is_independent_set(p).unwrap_or(false))
    }
}

/// The colour classes of one optimal colouring.
pub fn minimal_partite_representation(g: &Graph) -> PartiteRepresentation {
    let d = Dense::new(g);
    let (k, colour) = optimal_colouring(&d);
    PartiteRepresentation::from_colouring(&d.ids, &colour, k)
}

/// Every partition of V(G) into exactly χ(G) independent sets.
pub fn all_minimal_representations(g: &Graph) -> Result<Vec<PartiteRepresentation>> {
    let p = g.order();
    if p > MAX_REPRESENTATION_ORDER {
        return Err(LabError::OverBudget { what: "representation enumeration", order: p, limit: MAX_REPRESENTATION_ORDER });
    }
    let d = Dense::new(g);
    let k = optimal_colouring(&d).0;

    // Restricted-growth colourings in position order: each partition
    // appears exactly once.
    fn go(d: &Dense, k: usize, at: usize, used: usize, colour: &mut Vec<usize>, classes: &mut [u64], out: &mut Vec<PartiteRepresentation>) {
        let p = d.len();
        if k - used > p - at {
            return;
        }
        if at == p {
            out.push(PartiteRepresentation::from_colouring(&d.ids, colour, k));
            return;
        }
        for c in 0..(used + 1).min(k) {
            if classes[c] & d.adj[at] == 0 {
                classes[c] |= 1 << at;
                colour.push(c);
                go(d, k, at + 1, used.max(c + 1), colour, classes, out);
                colour.pop();
                classes[c] &= !(1 << at);
            }
        }
    }
    let mut out = Vec::new();
    go(&d, k, 0, 0, &mut Vec::with_capacity(p), &mut vec![0; k], &mut out);
    out.sort_unstable();
    Ok(out)
}

/// A way to empty a part into another: every element except `kept` moves
/// into part `target`, and both parts stay independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingletonMove {
    pub target: usize,
    pub kept: VertexId,
}

/// All moves that show part `index` is essentially singleton.
pub fn essentially_singleton_moves(g: &Graph, rep: &PartiteRepresentation, index: usize) -> Result<Vec<SingletonMove>> {
    let part = rep
        .parts
        .get(index)
        .ok_or_else(|| LabError::InvalidRepresentation(format!("no part {index}")))?;
    if part.len() <= 1 {
        return Err(LabError::PartTooSmall { index, size: part.len() });
    }
    let source = rep.mask(index);
    let mut moves = Vec::new();
    for target in (0..rep.len()).filter(|&t| t != index) {
        let dest = rep.mask(target);
        for &kept in part {
            let moving = source & !(1 << kept);
            // the moving elements are already independent among themselves
            if bits(moving).all(|v| g.neighbors(v) & dest == 0) {
                moves.push(SingletonMove { target, kept });
            }
        }
    }
    Ok(moves)
}

/// Part `index` (more than one element) can give all but one of its
/// elements to some other part with both parts remaining independent.
pub fn is_essentially_singleton(g: &Graph, rep: &PartiteRepresentation, index: usize) -> Result<bool> {
    Ok(!essentially_singleton_moves(g, rep, index)?.is_empty())
}

/// Every multi-element part is essentially singleton. Vacuously true when
/// all parts are singletons.
pub fn every_part_essentially_singleton(g: &Graph, rep: &PartiteRepresentation) -> bool {
    (0..rep.len())
        .filter(|&k| rep.parts[k].len() > 1)
        .all(|k| is_essentially_singleton(g, rep, k).expect("index and size checked"))
}

/// Two vertices of one part with a common neighbour elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorPair {
    pub first: VertexId,
    pub second: VertexId,
    /// Smallest common neighbour.
    pub witness: VertexId,
}

pub fn find_separators(g: &Graph, rep: &PartiteRepresentation) -> Vec<SeparatorPair> {
    let mut out = Vec::new();
    for (k, part) in rep.parts.iter().enumerate() {
        let outside = !rep.mask(k);
        for (a, &first) in part.iter().enumerate() {
            for &second in &part[a + 1..] {
                let common = g.neighbors(first) & g.neighbors(second) & outside;
                if common != 0 {
                    out.push(SeparatorPair { first, second, witness: common.trailing_zeros() as usize });
                }
            }
        }
    }
    out
}

/// χ drops under the contraction of every edge.
pub fn is_contraction_sensitive(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(LabError::Disconnected);
    }
    let edges = g.edges();
    if edges.is_empty() {
        return Err(LabError::Edgeless);
    }
    let chi = chromatic_number(g);
    for (u, v) in edges {
        if chromatic_number(&g.contract_edge(u, v)?) >= chi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edge- and vertex-criticality, reported separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criticality {
    /// Removing any edge lowers χ.
    pub edge_critical: bool,
    /// Removing any vertex lowers χ.
    pub vertex_critical: bool,
}

impl Criticality {
    pub fn is_critical(&self) -> bool {
        self.edge_critical && self.vertex_critical
    }
}

pub fn is_k_critical(g: &Graph) -> Result<Criticality> {
    if !g.is_connected() {
        return Err(LabError::Disconnected);
    }
    let chi = chromatic_number(g);
    let mut edge_critical = true;
    for (u, v) in g.edges() {
        if chromatic_number(&g.remove_edge(u, v)?) >= chi {
            edge_critical = false;
            break;
        }
    }
    let mut vertex_critical = true;
    for v in g.vertices() {
        if chromatic_number(&g.remove_vertex(v)?) >= chi {
            vertex_critical = false;
            break;
        }
    }
    Ok(Criticality { edge_critical, vertex_critical })
}
