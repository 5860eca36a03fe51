//! Greedy contraction toward a complete graph, and the exact Hadwiger
//! number with checkable branch-set certificates.

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::contraction::{replacements_between, update_exact, ContractionStep};
use crate::error::{LabError, Result};
use crate::graph::{bits, Graph, VertexId};
use crate::transparency::TransparencyMatrix;

/// Default order limit for [`hadwiger_number`].
pub const MAX_ORACLE_ORDER: usize = 9;

/// Disjoint connected vertex sets, pairwise joined by an edge. A
/// certificate with `t` sets witnesses a `K_t` minor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub branch_sets: Vec<Vec<VertexId>>,
}

impl MinorCertificate {
    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }
}

pub fn verify_certificate(g: &Graph, c: &MinorCertificate) -> bool {
    let mut used = 0u64;
    let mut masks = Vec::with_capacity(c.branch_sets.len());
    for set in &c.branch_sets {
        let mut mask = 0u64;
        for &v in set {
            if !g.is_live(v) || (used | mask) & (1 << v) != 0 {
                return false;
            }
            mask |= 1 << v;
        }
        if mask == 0 || !g.is_connected_within(mask) {
            return false;
        }
        used |= mask;
        masks.push(mask);
    }
    let reach: Vec<u64> = masks.iter().map(|&m| bits(m).fold(0, |acc, v| acc | g.neighbors(v))).collect();
    (0..masks.len()).all(|a| (a + 1..masks.len()).all(|b| reach[a] & masks[b] != 0))
}

/// The run of the greedy contraction procedure on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub steps: Vec<ContractionStep>,
    pub initial_order: usize,
    pub terminal_order: usize,
    pub step_count: usize,
    /// Original vertices merged into each terminal vertex, by surviving id.
    pub branch_sets: Vec<Vec<VertexId>>,
}

impl ContractionTrace {
    /// The terminal complete graph as a minor of the input.
    pub fn certificate(&self) -> MinorCertificate {
        MinorCertificate { branch_sets: self.branch_sets.clone() }
    }
}

type StepKey = (usize, usize, Reverse<(VertexId, VertexId)>);

/// Contract greedily until the distance matrix is all ones off the
/// diagonal.
///
/// Each round scores every ordered adjacent pair `(i => j)` by
///
/// 1. the number of non-unit entries the contraction turns into units
///    (highest first),
/// 2. the gap between the two rows' unit counts (largest first),
/// 3. the pair `(j, i)` (lexicographically smallest first),
///
/// and performs the best one. Scores are recomputed from scratch every
/// round.
pub fn greedy_contract(g: &Graph) -> Result<ContractionTrace> {
    if g.order() == 0 {
        return Err(LabError::InvalidGenerator("greedy contraction needs at least one vertex".into()));
    }
    if !g.is_connected() {
        return Err(LabError::Disconnected);
    }
    let initial_order = g.order();
    let mut g = g.clone();
    let mut t = TransparencyMatrix::compute(&g);
    let mut merged: Vec<u64> = (0..g.capacity()).map(|v| 1u64 << v).collect();
    let mut steps = Vec::new();

    while !t.is_complete() {
        let mut best: Option<(StepKey, TransparencyMatrix)> = None;
        for (u, v) in g.edges() {
            let gap = g.degree(u).abs_diff(g.degree(v));
            for (i, j) in [(u, v), (v, u)] {
                let after = update_exact(&t, &g, i, j)?;
                let key = (replacements_between(&t, &after), gap, Reverse((j, i)));
                if best.as_ref().is_none_or(|(k, _)| key > *k) {
                    best = Some((key, after));
                }
            }
        }
        let ((replacements, _, Reverse((survivor, removed))), after) =
            best.expect("a connected non-complete graph has an edge");
        g = g.contract_edge(removed, survivor)?;
        t = after;
        merged[survivor] |= merged[removed];
        merged[removed] = 0;
        steps.push(ContractionStep { removed, survivor, replacements });
    }

    let branch_sets = g.vertices().map(|v| bits(merged[v]).collect()).collect();
    Ok(ContractionTrace {
        step_count: steps.len(),
        terminal_order: g.order(),
        initial_order,
        steps,
        branch_sets,
    })
}

/// Largest `t` with a `K_t` minor, for graphs up to [`MAX_ORACLE_ORDER`].
pub fn hadwiger_number(g: &Graph) -> Result<(usize, MinorCertificate)> {
    hadwiger_number_within(g, MAX_ORACLE_ORDER)
}

/// [`hadwiger_number`] with an explicit order limit.
///
/// Exhaustive search over families of branch sets. Every connected
/// vertex subset is precomputed with its neighbourhood; families are built
/// depth first with branch sets in increasing order of their smallest
/// vertex, so each family is generated once. A branch is cut when the
/// vertices still available cannot lift it above the best found, or when
/// some chosen set has no available neighbour left.
pub fn hadwiger_number_within(g: &Graph, limit: usize) -> Result<(usize, MinorCertificate)> {
    let p = g.order();
    if p > limit {
        return Err(LabError::OverBudget { what: "hadwiger oracle", order: p, limit });
    }
    let (c, ids) = g.compacted();
    if p == 0 {
        return Ok((0, MinorCertificate { branch_sets: Vec::new() }));
    }

    // connected sets grouped by smallest vertex
    let mut by_min: Vec<Vec<(u64, u64)>> = vec![Vec::new(); p];
    for mask in 1u64..1 << p {
        if c.is_connected_within(mask) {
            let reach = bits(mask).fold(0, |acc, v| acc | c.neighbors(v)) & !mask;
            by_min[mask.trailing_zeros() as usize].push((mask, reach));
        }
    }
    for sets in &mut by_min {
        // small sets first: singletons find good families early
        sets.sort_by_key(|&(m, _)| (m.count_ones(), m));
    }

    let q = c.size();
    let mut ceiling = 1;
    while ceiling < p && (ceiling + 1) * ceiling / 2 <= q {
        ceiling += 1;
    }

    struct Search<'a> {
        by_min: &'a [Vec<(u64, u64)>],
        full: u64,
        ceiling: usize,
        chosen: Vec<(u64, u64)>,
        best: Vec<u64>,
    }

    impl Search<'_> {
        fn go(&mut self, used: u64, next_min: usize) {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.iter().map(|&(m, _)| m).collect();
            }
            if self.best.len() >= self.ceiling {
                return;
            }
            let avail = self.full & !used & !((1u64 << next_min) - 1);
            if self.chosen.len() + avail.count_ones() as usize <= self.best.len() {
                return;
            }
            if self.chosen.iter().any(|&(_, reach)| reach & avail == 0) {
                return;
            }
            for v in bits(avail) {
                for k in 0..self.by_min[v].len() {
                    let (mask, reach) = self.by_min[v][k];
                    if mask & used != 0 || self.chosen.iter().any(|&(m, _)| reach & m == 0) {
                        continue;
                    }
                    self.chosen.push((mask, reach));
                    self.go(used | mask, v + 1);
                    self.chosen.pop();
                    if self.best.len() >= self.ceiling {
                        return;
                    }
                }
            }
        }
    }

    let mut search = Search {
        by_min: &by_min,
        full: (1u64 << p) - 1,
        ceiling,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.go(0, 0);

    let branch_sets = search.best.iter().map(|&m| bits(m).map(|k| ids[k]).collect()).collect();
    let cert = MinorCertificate { branch_sets };
    debug_assert!(verify_certificate(g, &cert));
    Ok((cert.order(), cert))
}
