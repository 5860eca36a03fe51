//! Corpus sweeps comparing χ, the Hadwiger number and the greedy
//! contraction, plus the essentially-singleton audit, and their report
//! files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chromatic::{all_minimal_representations, chromatic_number, every_part_essentially_singleton, is_contraction_sensitive, MAX_REPRESENTATION_ORDER};
use crate::error::Result;
use crate::graph::{emit_graph6, Graph};
use crate::minor::{greedy_contract, hadwiger_number_within, MAX_ORACLE_ORDER};

pub const SCHEMA_VERSION: u32 = 1;
pub const AUDIT_FILE: &str = "audit.jsonl";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const SENSITIVITY_FILE: &str = "sensitivity.json";
pub const CSV_HEADER: &str = "order,graphs,greedy_success,greedy_fail,skipped,max_steps";

/// Per-oracle order limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_chi: usize,
    pub max_oracle: usize,
    pub max_representations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_chi: 16, max_oracle: MAX_ORACLE_ORDER, max_representations: MAX_REPRESENTATION_ORDER }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Flag {
    /// Greedy contraction not run (over the χ budget, or disconnected).
    Skipped,
    Disconnected,
    /// Order above the Hadwiger oracle budget; `hadwiger` absent.
    HadwigerSkipped,
    GreedyBelowChi,
    GreedyBelowHadwiger,
    /// `greedy_steps > order - chi`.
    StepcountExceedsL,
    /// `greedy_steps > chi`.
    StepcountExceedsK,
    ChiExceedsHadwiger,
    /// Every minimal representation is all singletons.
    SingletonVacuous,
    /// Sensitivity and the essentially-singleton condition disagree.
    SensitivityDisagrees,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphAuditRecord {
    pub schema_version: u32,
    pub graph6: String,
    pub order: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hadwiger: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub greedy_terminal: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub greedy_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction_sensitive: Option<bool>,
    /// For each minimal representation (sorted), whether every part is
    /// essentially singleton.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thm31: Option<Vec<bool>>,
    pub flags: Vec<Flag>,
}

impl GraphAuditRecord {
    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    /// Greedy reached at least K_chi. `None` when greedy was skipped.
    pub fn greedy_success(&self) -> Option<bool> {
        Some(self.greedy_terminal? >= self.chi?)
    }

    /// Relations that must hold on every record; a violation is a bug.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if let (Some(chi), Some(h)) = (self.chi, self.hadwiger) {
            if chi > h {
                return Err(format!("{}: chi {chi} > hadwiger {h}", self.graph6));
            }
        }
        if let (Some(t), Some(h)) = (self.greedy_terminal, self.hadwiger) {
            if t > h {
                return Err(format!("{}: greedy terminal {t} > hadwiger {h}", self.graph6));
            }
        }
        if let (Some(t), Some(s)) = (self.greedy_terminal, self.greedy_steps) {
            if s + t != self.order {
                return Err(format!("{}: {s} steps + terminal {t} != order {}", self.graph6, self.order));
            }
        }
        Ok(())
    }
}

/// Audit a single graph.
pub fn audit_graph(g: &Graph, budget: &Budget) -> Result<GraphAuditRecord> {
    let order = g.order();
    let mut rec = GraphAuditRecord {
        schema_version: SCHEMA_VERSION,
        graph6: emit_graph6(g)?,
        order,
        size: g.size(),
        chi: None,
        hadwiger: None,
        greedy_terminal: None,
        greedy_steps: None,
        contraction_sensitive: None,
        thm31: None,
        flags: Vec::new(),
    };
    if order > budget.max_chi {
        rec.flags.push(Flag::Skipped);
        if order > budget.max_oracle {
            rec.flags.push(Flag::HadwigerSkipped);
        }
        return Ok(rec);
    }
    let chi = chromatic_number(g);
    rec.chi = Some(chi);

    if order <= budget.max_oracle {
        rec.hadwiger = Some(hadwiger_number_within(g, budget.max_oracle)?.0);
    } else {
        rec.flags.push(Flag::HadwigerSkipped);
    }

    let connected = g.is_connected();
    if connected && order > 0 {
        let trace = greedy_contract(g)?;
        rec.greedy_terminal = Some(trace.terminal_order);
        rec.greedy_steps = Some(trace.step_count);
    } else {
        rec.flags.push(Flag::Disconnected);
        rec.flags.push(Flag::Skipped);
    }

    if connected && g.size() > 0 {
        let sensitive = is_contraction_sensitive(g)?;
        rec.contraction_sensitive = Some(sensitive);
        if order <= budget.max_representations {
            let verdicts: Vec<bool> = all_minimal_representations(g)?
                .iter()
                .map(|rep| every_part_essentially_singleton(g, rep))
                .collect();
            if chi == order {
                rec.flags.push(Flag::SingletonVacuous);
            }
            if sensitive != verdicts.iter().any(|&b| b) {
                rec.flags.push(Flag::SensitivityDisagrees);
            }
            rec.thm31 = Some(verdicts);
        }
    }

    if let (Some(t), Some(s)) = (rec.greedy_terminal, rec.greedy_steps) {
        if t < chi {
            rec.flags.push(Flag::GreedyBelowChi);
        }
        if let Some(h) = rec.hadwiger {
            if t < h {
                rec.flags.push(Flag::GreedyBelowHadwiger);
            }
        }
        if s > order - chi {
            rec.flags.push(Flag::StepcountExceedsL);
        }
        if s > chi {
            rec.flags.push(Flag::StepcountExceedsK);
        }
    }
    if let Some(h) = rec.hadwiger {
        if chi > h {
            rec.flags.push(Flag::ChiExceedsHadwiger);
        }
    }
    rec.flags.sort_unstable();
    rec.flags.dedup();
    Ok(rec)
}

/// Audit every graph of a corpus in parallel; records come back sorted
/// by graph6 string.
pub fn sweep<I>(corpus: I, budget: &Budget) -> Result<Vec<GraphAuditRecord>>
where
    I: IntoIterator<Item = Graph>,
{
    let graphs: Vec<Graph> = corpus.into_iter().collect();
    let mut records = graphs.par_iter().map(|g| audit_graph(g, budget)).collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(records)
}

/// One CSV row.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderSummary {
    pub order: usize,
    pub graphs: usize,
    pub greedy_success: usize,
    pub greedy_fail: usize,
    pub skipped: usize,
    pub max_steps: usize,
}

impl OrderSummary {
    /// Fraction of non-skipped graphs where greedy reached K_chi.
    pub fn success_rate(&self) -> Option<f64> {
        let run = self.greedy_success + self.greedy_fail;
        (run > 0).then(|| self.greedy_success as f64 / run as f64)
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.order, self.graphs, self.greedy_success, self.greedy_fail, self.skipped, self.max_steps
        )
    }
}

pub fn summarize(records: &[GraphAuditRecord]) -> Vec<OrderSummary> {
    let mut by_order: BTreeMap<usize, OrderSummary> = BTreeMap::new();
    for r in records {
        let s = by_order.entry(r.order).or_insert_with(|| OrderSummary { order: r.order, ..Default::default() });
        s.graphs += 1;
        match r.greedy_success() {
            Some(true) => s.greedy_success += 1,
            Some(false) => s.greedy_fail += 1,
            None => s.skipped += 1,
        }
        s.max_steps = s.max_steps.max(r.greedy_steps.unwrap_or(0));
    }
    by_order.into_values().collect()
}

pub fn summary_csv(records: &[GraphAuditRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in summarize(records) {
        out.push_str(&row.csv_row());
        out.push('\n');
    }
    out
}

/// Write `bytes` to `path` via a `.partial` sibling and a rename, so a
/// failed write never leaves a truncated final file.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut partial = path.as_os_str().to_owned();
    partial.push(".partial");
    let partial = PathBuf::from(partial);
    let mut f = fs::File::create(&partial)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    fs::rename(&partial, path)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportPaths {
    pub jsonl: PathBuf,
    pub csv: PathBuf,
}

/// Write `audit.jsonl` and `summary.csv` into `dir`, records ordered by
/// graph6 string.
pub fn write_reports(records: &[GraphAuditRecord], dir: &Path) -> Result<ReportPaths> {
    fs::create_dir_all(dir)?;
    let mut sorted: Vec<&GraphAuditRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    let mut jsonl = Vec::new();
    for r in &sorted {
        serde_json::to_writer(&mut jsonl, r)?;
        jsonl.push(b'\n');
    }
    let paths = ReportPaths { jsonl: dir.join(AUDIT_FILE), csv: dir.join(SUMMARY_FILE) };
    write_atomically(&paths.jsonl, &jsonl)?;
    let owned: Vec<GraphAuditRecord> = sorted.into_iter().cloned().collect();
    write_atomically(&paths.csv, summary_csv(&owned).as_bytes())?;
    Ok(paths)
}

pub fn read_jsonl(path: &Path) -> Result<Vec<GraphAuditRecord>> {
    let text = fs::read_to_string(path)?;
    text.lines().map(|l| Ok(serde_json::from_str(l)?)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedGraph {
    pub graph6: String,
    pub reason: String,
}

/// Contraction sensitivity against "every part is essentially singleton
/// in some minimal representation", over a corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub schema_version: u32,
    pub graphs: usize,
    pub sensitive_holds: usize,
    pub sensitive_fails: usize,
    pub insensitive_holds: usize,
    pub insensitive_fails: usize,
    /// Graphs whose only minimal representations are all singletons, so
    /// the condition holds vacuously. Already counted in the cells.
    pub vacuous: usize,
    /// Sensitive, yet every minimal representation has a part that is not
    /// essentially singleton.
    pub sensitive_fails_graphs: Vec<String>,
    /// Not sensitive, yet some minimal representation satisfies the condition.
    pub insensitive_holds_graphs: Vec<String>,
    pub skipped: Vec<SkippedGraph>,
}

impl SensitivityReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn table(&self) -> String {
        format!(
            "                    condition holds  condition fails\n\
             sensitive           {:>15}  {:>15}\n\
             not sensitive       {:>15}  {:>15}\n\
             graphs {}, vacuous {}, skipped {}\n",
            self.sensitive_holds,
            self.sensitive_fails,
            self.insensitive_holds,
            self.insensitive_fails,
            self.graphs,
            self.vacuous,
            self.skipped.len()
        )
    }
}

enum SensitivityCell {
    Classified { graph6: String, sensitive: bool, holds: bool, vacuous: bool },
    Skipped(SkippedGraph),
}

fn classify_sensitivity(g: &Graph, max_order: usize) -> Result<SensitivityCell> {
    let graph6 = emit_graph6(g)?;
    let skip = |reason: &str| Ok(SensitivityCell::Skipped(SkippedGraph { graph6: graph6.clone(), reason: reason.into() }));
    if g.order() > max_order.min(MAX_REPRESENTATION_ORDER) {
        return skip("over budget");
    }
    if !g.is_connected() {
        return skip("disconnected");
    }
    if g.size() == 0 {
        return skip("edgeless");
    }
    let sensitive = is_contraction_sensitive(g)?;
    let reps = all_minimal_representations(g)?;
    let holds = reps.iter().any(|rep| every_part_essentially_singleton(g, rep));
    let vacuous = reps.iter().all(|rep| rep.parts().iter().all(|p| p.len() == 1));
    Ok(SensitivityCell::Classified { graph6, sensitive, holds, vacuous })
}

pub fn audit_sensitivity<I>(corpus: I, max_order: usize) -> Result<SensitivityReport>
where
    I: IntoIterator<Item = Graph>,
{
    let graphs: Vec<Graph> = corpus.into_iter().collect();
    let cells = graphs.par_iter().map(|g| classify_sensitivity(g, max_order)).collect::<Result<Vec<_>>>()?;
    let mut report = SensitivityReport { schema_version: SCHEMA_VERSION, graphs: graphs.len(), ..Default::default() };
    for cell in cells {
        match cell {
            SensitivityCell::Skipped(s) => report.skipped.push(s),
            SensitivityCell::Classified { graph6, sensitive, holds, vacuous } => {
                report.vacuous += vacuous as usize;
                match (sensitive, holds) {
                    (true, true) => report.sensitive_holds += 1,
                    (true, false) => {
                        report.sensitive_fails += 1;
                        report.sensitive_fails_graphs.push(graph6);
                    }
                    (false, true) => {
                        report.insensitive_holds += 1;
                        report.insensitive_holds_graphs.push(graph6);
                    }
                    (false, false) => report.insensitive_fails += 1,
                }
            }
        }
    }
    report.sensitive_fails_graphs.sort();
    report.insensitive_holds_graphs.sort();
    report.skipped.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(report)
}

pub fn write_sensitivity_report(report: &SensitivityReport, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(SENSITIVITY_FILE);
    write_atomically(&path, report.to_json()?.as_bytes())?;
    Ok(path)
}
