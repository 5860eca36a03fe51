//! Graph families and the exhaustive labeled corpus.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, MAX_ORDER};
use crate::error::{LabError, Result};

/// Largest order accepted by [`all_labeled_connected`] (2^21 candidate
/// edge sets at order 7).
pub const MAX_ENUMERATION_ORDER: usize = 7;

fn need(n: usize, min: usize, family: &str) -> Result<()> {
    if n < min {
        return Err(LabError::InvalidGenerator(format!("{family} needs n >= {min}, got {n}")));
    }
    if n > MAX_ORDER {
        return Err(LabError::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    Ok(())
}

/// The cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle(n: usize) -> Result<Graph> {
    need(n, 3, "cycle")?;
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    need(n, 1, "path")?;
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Result<Graph> {
    need(leaves + 1, 1, "star")?;
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn complete(n: usize) -> Result<Graph> {
    need(n, 1, "complete")?;
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_n` without the edge between its two highest ids. At `n = 4` this is
/// the kite whose distance matrix has a single 2, between ids 2 and 3.
pub fn complete_minus_edge(n: usize) -> Result<Graph> {
    need(n, 2, "complete_minus_edge")?;
    complete(n)?.remove_edge(n - 2, n - 1)
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes `i ~ i + 5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes)).expect("static edge list")
}

/// Erdős–Rényi `G(n, p)`, reproducible from `seed`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    need(n, 1, "gnp")?;
    if !(0.0..=1.0).contains(&p) {
        return Err(LabError::InvalidGenerator(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Random connected graph: a random recursive spanning tree plus every
/// other pair independently with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    need(n, 1, "random_connected")?;
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.insert_edge(u, v);
    }
    for v in 1..n {
        for u in 0..v {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Every connected labeled graph on `1..=max_n` vertices, each exactly
/// once: orders ascending, then edge subsets in increasing bitmask order
/// (bit `k` is the `k`-th pair in graph6 column order).
pub fn all_labeled_connected(max_n: usize) -> Result<LabeledConnected> {
    if max_n == 0 {
        return Err(LabError::InvalidGenerator("enumeration needs max_n >= 1".into()));
    }
    if max_n > MAX_ENUMERATION_ORDER {
        return Err(LabError::OverBudget {
            what: "enumeration",
            order: max_n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(LabeledConnected::new(max_n))
}

pub struct LabeledConnected {
    max_n: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
}

impl LabeledConnected {
    fn new(max_n: usize) -> Self {
        let mut it = LabeledConnected { max_n, n: 0, pairs: Vec::new(), next_mask: 0 };
        it.start_order(1);
        it
    }

    fn start_order(&mut self, n: usize) {
        self.n = n;
        self.pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        self.next_mask = 0;
    }
}

impl Iterator for LabeledConnected {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if self.n > self.max_n {
                return None;
            }
            if self.next_mask >> self.pairs.len() != 0 {
                self.start_order(self.n + 1);
                continue;
            }
            let mask = self.next_mask;
            self.next_mask += 1;
            let mut g = Graph::empty(self.n).expect("n <= 7");
            for (k, &(i, j)) in self.pairs.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    g.insert_edge(i, j);
                }
            }
            if g.is_connected() {
                return Some(g);
            }
        }
    }
}

/// A graph family named on the command line, e.g. `cycle:5`,
/// `complete_minus_edge:4`, `petersen`, `gnp:10:0.4:42` or `all:6`.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Cycle(usize),
    Path(usize),
    Star(usize),
    Complete(usize),
    CompleteMinusEdge(usize),
    Petersen,
    Gnp { n: usize, p: f64, seed: Option<u64> },
    AllConnected(usize),
}

impl Generator {
    pub fn is_gnp(&self) -> bool {
        matches!(self, Generator::Gnp { .. })
    }

    /// Materialize the family. `seed` supplies the gnp seed when the spec
    /// string did not carry one.
    pub fn generate(&self, seed: Option<u64>) -> Result<Vec<Graph>> {
        Ok(match *self {
            Generator::Cycle(n) => vec![cycle(n)?],
            Generator::Path(n) => vec![path(n)?],
            Generator::Star(n) => vec![star(n)?],
            Generator::Complete(n) => vec![complete(n)?],
            Generator::CompleteMinusEdge(n) => vec![complete_minus_edge(n)?],
            Generator::Petersen => vec![petersen()],
            Generator::Gnp { n, p, seed: inline } => {
                let seed = inline.or(seed).ok_or_else(|| {
                    LabError::InvalidGenerator("gnp needs a seed (gnp:N:P:SEED or --seed)".into())
                })?;
                vec![gnp(n, p, seed)?]
            }
            Generator::AllConnected(max_n) => all_labeled_connected(max_n)?.collect(),
        })
    }
}

impl FromStr for Generator {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| LabError::InvalidGenerator(format!("{s:?}: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        let int = |k: usize| -> Result<usize> {
            parts
                .get(k)
                .ok_or_else(|| bad("missing order"))?
                .parse()
                .map_err(|_| bad("order is not a non-negative integer"))
        };
        let arity = |want: usize| {
            if parts.len() == want {
                Ok(())
            } else {
                Err(bad("wrong number of fields"))
            }
        };
        let g = match parts[0] {
            "cycle" => Generator::Cycle(arity(2).and(int(1))?),
            "path" => Generator::Path(arity(2).and(int(1))?),
            "star" => Generator::Star(arity(2).and(int(1))?),
            "complete" => Generator::Complete(arity(2).and(int(1))?),
            "complete_minus_edge" => Generator::CompleteMinusEdge(arity(2).and(int(1))?),
            "petersen" => arity(1).map(|_| Generator::Petersen)?,
            "all" => Generator::AllConnected(arity(2).and(int(1))?),
            "gnp" => {
                if parts.len() != 3 && parts.len() != 4 {
                    return Err(bad("expected gnp:N:P or gnp:N:P:SEED"));
                }
                let p = parts[2].parse().map_err(|_| bad("probability is not a number"))?;
                let seed = match parts.get(3) {
                    Some(t) => Some(t.parse().map_err(|_| bad("seed is not an integer"))?),
                    None => None,
                };
                Generator::Gnp { n: int(1)?, p, seed }
            }
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        Ok(g)
    }
}
