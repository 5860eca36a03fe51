//! Maintaining the transparency matrix under a single edge contraction.
//!
//! Two updaters live here. [`update_exact`] is an incremental closed form
//! that always equals recomputing distances on the contracted graph.
//! [`update_paper_literal`] applies the five textbook row/column rules
//! verbatim, deciding the decrement rule with the one-sided arithmetic
//! test `a_mn = a_mi + a_jn + 1` on the pre-contraction matrix; it can
//! disagree with the exact result, and [`divergence_census`] measures
//! where.
//!
//! Notation: `(i => j)` removes `i` and keeps `j`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::graph::{emit_graph6, Graph, VertexId};
use crate::transparency::{Distance, TransparencyMatrix};

/// One performed contraction `(removed => survivor)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub removed: VertexId,
    pub survivor: VertexId,
    /// Surviving unordered pairs whose entry went from at least 2 to 1.
    pub replacements: usize,
}

/// Positions of `i` and `j` after checking the pair can be contracted.
fn contractible(t: &TransparencyMatrix, i: VertexId, j: VertexId) -> Result<(usize, usize)> {
    if i == j {
        return Err(LabError::SameVertex(i));
    }
    let (pi, pj) = (t.position(i)?, t.position(j)?);
    if !t.at(pi, pj).is_unit() {
        return Err(LabError::NotAdjacent(i, j));
    }
    Ok((pi, pj))
}

/// Old positions of the surviving vertices and their ids.
fn survivors(t: &TransparencyMatrix, pi: usize) -> (Vec<usize>, Vec<VertexId>) {
    let old: Vec<usize> = (0..t.order()).filter(|&k| k != pi).collect();
    let ids = old.iter().map(|&k| t.ids()[k]).collect();
    (old, ids)
}

/// Exact transparency matrix of the graph after `(i => j)`, from the
/// matrix before it.
///
/// The merged vertex `w` is reached from `m` in `min(d(m,i), d(m,j))`
/// hops, and any surviving pair either keeps its old shortest path or
/// routes through `w`:
///
/// `d'(m,n) = min(d(m,n), min(d(m,i), d(m,j)) + min(d(i,n), d(j,n)))`.
///
/// For pairs touching `j` this reduces to `min(d(i,k), d(j,k))`.
pub fn update_exact(
    t: &TransparencyMatrix,
    g: &Graph,
    i: VertexId,
    j: VertexId,
) -> Result<TransparencyMatrix> {
    let (pi, pj) = contractible(t, i, j)?;
    if !g.has_edge(i, j) {
        return Err(LabError::NotAdjacent(i, j));
    }
    let (old, ids) = survivors(t, pi);
    let through: Vec<Distance> = (0..t.order()).map(|k| t.at(k, pi).min(t.at(k, pj))).collect();
    let q = old.len();
    let mut entries = vec![Distance::ZERO; q * q];
    for (a, &m) in old.iter().enumerate() {
        for (b, &n) in old.iter().enumerate().skip(a + 1) {
            let d = if m == pj {
                through[n]
            } else if n == pj {
                through[m]
            } else {
                t.at(m, n).min(through[m] + through[n])
            };
            entries[a * q + b] = d;
            entries[b * q + a] = d;
        }
    }
    Ok(TransparencyMatrix::from_parts(ids, entries))
}

/// The decrement test for the surviving pair `(m, n)` under `(i => j)`:
/// `a_mn = a_mi + a_jn + 1`, all entries finite. Only this orientation is
/// tested; the mirrored `a_mj + a_in + 1` is not.
pub fn uses_edge_condition(
    t: &TransparencyMatrix,
    m: VertexId,
    n: VertexId,
    i: VertexId,
    j: VertexId,
) -> Result<bool> {
    let (pm, pn, pi, pj) = (t.position(m)?, t.position(n)?, t.position(i)?, t.position(j)?);
    Ok(condition_at(t, pm, pn, pi, pj))
}

fn condition_at(t: &TransparencyMatrix, pm: usize, pn: usize, pi: usize, pj: usize) -> bool {
    match (t.at(pm, pn), t.at(pm, pi), t.at(pj, pn)) {
        (Distance::Finite(mn), Distance::Finite(mi), Distance::Finite(jn)) => mn == mi + jn + 1,
        _ => false,
    }
}

/// The five contraction rules applied as written:
///
/// 1. `a_jk <- min(a_ik, a_jk)` for `k != j`;
/// 2. `a_kj <- min(a_ki, a_kj)` for `k != j`;
/// 3. delete row and column `i`;
/// 4. decrement `a_mn` and `a_nm` when `a_mn = a_mi + a_jn + 1`;
/// 5. leave everything else.
///
/// Rule 4 is evaluated once per unordered surviving pair, with `m` the
/// smaller id, against the matrix before any rule is applied. On the row
/// and column of `j` rules 1 and 2 decide the value; the decrement test
/// there either fails or agrees with the minimum.
pub fn update_paper_literal(t: &TransparencyMatrix, i: VertexId, j: VertexId) -> Result<TransparencyMatrix> {
    let (pi, pj) = contractible(t, i, j)?;
    let (old, ids) = survivors(t, pi);
    let q = old.len();
    let mut entries = vec![Distance::ZERO; q * q];
    for (a, &m) in old.iter().enumerate() {
        for (b, &n) in old.iter().enumerate().skip(a + 1) {
            let d = if m == pj {
                t.at(pi, n).min(t.at(pj, n))
            } else if n == pj {
                t.at(m, pi).min(t.at(m, pj))
            } else if condition_at(t, m, n, pi, pj) {
                match t.at(m, n) {
                    Distance::Finite(x) => Distance::Finite(x - 1),
                    Distance::Unreachable => Distance::Unreachable,
                }
            } else {
                t.at(m, n)
            };
            entries[a * q + b] = d;
            entries[b * q + a] = d;
        }
    }
    Ok(TransparencyMatrix::from_parts(ids, entries))
}

/// Count surviving unordered pairs that are non-unit in `before` and unit
/// in `after`, where `after` is the matrix after `(removed => survivor)`.
/// The merged vertex carries the survivor's id, so its "before" row is the
/// survivor's.
pub(crate) fn replacements_between(before: &TransparencyMatrix, after: &TransparencyMatrix) -> usize {
    let ids = after.ids();
    let pos: Vec<usize> = ids
        .iter()
        .map(|&v| before.position(v).expect("survivors exist in the old matrix"))
        .collect();
    let mut count = 0;
    for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            if before.at(pos[a], pos[b]).is_non_unit() && after.at(a, b).is_unit() {
                count += 1;
            }
        }
    }
    count
}

/// Number of non-unit entries turned into units by `(i => j)`, without
/// performing it.
pub fn replacement_count(t: &TransparencyMatrix, g: &Graph, i: VertexId, j: VertexId) -> Result<usize> {
    let after = update_exact(t, g, i, j)?;
    Ok(replacements_between(t, &after))
}

/// One entry where the literal rules disagree with the exact update.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub m: VertexId,
    pub n: VertexId,
    pub literal: Distance,
    pub exact: Distance,
}

/// Unordered pairs (`m < n`) where the two matrices differ. Both must be
/// over the same ids.
pub fn mismatches(literal: &TransparencyMatrix, exact: &TransparencyMatrix) -> Vec<Mismatch> {
    debug_assert_eq!(literal.ids(), exact.ids());
    let ids = exact.ids();
    let mut out = Vec::new();
    for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            if literal.at(a, b) != exact.at(a, b) {
                out.push(Mismatch { m: ids[a], n: ids[b], literal: literal.at(a, b), exact: exact.at(a, b) });
            }
        }
    }
    out
}

/// JSON-lines record: one diverging contraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub graph6: String,
    pub removed: VertexId,
    pub survivor: VertexId,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub graphs: usize,
    /// Ordered contractions examined (both directions of every edge).
    pub contractions: usize,
    pub diverging_contractions: usize,
    pub diverging_entries: usize,
    pub records: Vec<CensusRecord>,
}

impl Census {
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Compare the literal rules against the exact update for both directions
/// of every edge of every graph.
pub fn divergence_census<I>(graphs: I) -> Result<Census>
where
    I: IntoIterator<Item = Graph>,
{
    let mut census = Census::default();
    for g in graphs {
        census.graphs += 1;
        let t = TransparencyMatrix::compute(&g);
        let mut g6 = None;
        for (u, v) in g.edges() {
            for (i, j) in [(u, v), (v, u)] {
                census.contractions += 1;
                let exact = update_exact(&t, &g, i, j)?;
                let literal = update_paper_literal(&t, i, j)?;
                let diff = mismatches(&literal, &exact);
                if !diff.is_empty() {
                    census.diverging_contractions += 1;
                    census.diverging_entries += diff.len();
                    if g6.is_none() {
                        g6 = Some(emit_graph6(&g)?);
                    }
                    let graph6 = g6.clone().unwrap_or_default();
                    census.records.push(CensusRecord { graph6, removed: i, survivor: j, mismatches: diff });
                }
            }
        }
    }
    Ok(census)
}
