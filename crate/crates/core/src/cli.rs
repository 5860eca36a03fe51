//! Command-line front end. Argument parsing lives here rather than in
//! `main.rs` so the commands can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::chromatic::{chromatic_number, find_separators, is_contraction_sensitive, is_k_critical, minimal_partite_representation};
use crate::contraction::{divergence_census, mismatches, replacement_count, update_exact, update_paper_literal};
use crate::error::{LabError, Result};
use crate::graph::{emit_graph6, parse_graph6_lines, Generator, Graph, VertexId};
use crate::lab::{audit_sensitivity, summarize, sweep, write_atomically, write_reports, write_sensitivity_report, Budget, Flag};
use crate::minor::{greedy_contract, hadwiger_number_within, verify_certificate};
use crate::transparency::TransparencyMatrix;

#[derive(Debug, Parser)]
#[command(name = "hadlab", version, about = "Edge contraction, distance matrices and minor oracles on small graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// File with one graph6 string per line.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Inline graph6 string.
    #[arg(long, global = true, value_name = "STRING")]
    pub g6: Option<String>,
    /// Generator spec: cycle:N, path:N, star:N, complete:N,
    /// complete_minus_edge:N, petersen, gnp:N:P[:SEED], all:N.
    #[arg(long = "gen", global = true, value_name = "SPEC")]
    pub generator: Option<String>,
    /// Seed for gnp generators.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest order for the Hadwiger oracle.
    #[arg(long, global = true, default_value_t = 9)]
    pub max_oracle: usize,
    /// Largest order for exact chromatic number.
    #[arg(long, global = true, default_value_t = 16)]
    pub max_chi: usize,
    /// Output directory for report-writing commands.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum CommandArg {
    /// Distance matrix, degrees, clique/independence numbers, χ, a minimal
    /// representation and its separators.
    Analyze,
    /// Contract one edge with both updaters and diff them.
    Contract {
        /// Vertex that disappears.
        #[arg(long)]
        remove: VertexId,
        /// Vertex that survives.
        #[arg(long)]
        into: VertexId,
    },
    /// Greedy contraction to a complete graph.
    Greedy,
    /// Exact Hadwiger number with a certificate.
    Hadwiger,
    /// χ, a minimal representation, contraction sensitivity, criticality.
    Chroma,
    /// Audit a corpus; writes audit.jsonl and summary.csv.
    Sweep,
    /// Contraction sensitivity vs essentially-singleton table; writes sensitivity.json.
    Audit31,
    /// Literal-rule vs exact-update divergence; writes census.jsonl.
    Census,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    File(PathBuf),
    Inline(String),
    Generated(Generator),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandArg,
    pub input: InputSource,
    pub seed: Option<u64>,
    pub budget: Budget,
    pub output_dir: PathBuf,
    pub format: Format,
}

fn invalid(msg: impl Into<String>) -> LabError {
    LabError::InvalidGenerator(msg.into())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let c = cli.common;
        let sources = [c.input.is_some(), c.g6.is_some(), c.generator.is_some()];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(invalid("give exactly one of --input, --g6, --gen"));
        }
        let input = if let Some(path) = c.input {
            InputSource::File(path)
        } else if let Some(s) = c.g6 {
            InputSource::Inline(s)
        } else {
            InputSource::Generated(c.generator.unwrap_or_default().parse()?)
        };
        let gnp = matches!(&input, InputSource::Generated(g) if g.is_gnp());
        if c.seed.is_some() && !gnp {
            return Err(invalid("--seed only applies to gnp generators"));
        }
        if let InputSource::Generated(Generator::Gnp { seed: inline, .. }) = &input {
            if inline.is_none() == c.seed.is_none() {
                return Err(invalid("gnp needs exactly one seed: gnp:N:P:SEED or --seed"));
            }
        }
        if c.max_oracle == 0 || c.max_chi == 0 {
            return Err(invalid("budgets must be positive"));
        }
        Ok(RunConfig {
            command: cli.command,
            input,
            seed: c.seed,
            budget: Budget { max_chi: c.max_chi, max_oracle: c.max_oracle, ..Budget::default() },
            output_dir: c.out.unwrap_or_else(|| PathBuf::from("hadlab-out")),
            format: c.format,
        })
    }

    pub fn graphs(&self) -> Result<Vec<Graph>> {
        match &self.input {
            InputSource::File(path) => parse_graph6_lines(&fs::read_to_string(path)?),
            InputSource::Inline(s) => parse_graph6_lines(s),
            InputSource::Generated(generator) => generator.generate(self.seed),
        }
    }

    fn single_graph(&self) -> Result<Graph> {
        let mut graphs = self.graphs()?;
        if graphs.len() != 1 {
            return Err(invalid(format!("this command takes exactly one graph, got {}", graphs.len())));
        }
        Ok(graphs.remove(0))
    }
}

/// Process exit status for a finished run.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::AllSkipped) => 2,
        Err(LabError::OverBudget { .. }) => 2,
        Err(_) => 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    /// Every graph of the corpus was skipped for budget reasons.
    AllSkipped,
}

fn check_budget(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    if g.order() > limit {
        return Err(LabError::OverBudget { what, order: g.order(), limit });
    }
    Ok(())
}

fn ids_line(ids: &[VertexId]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn sets_line(sets: &[Vec<VertexId>]) -> String {
    sets.iter().map(|s| format!("{{{}}}", ids_line(s).replace(' ', ","))).collect::<Vec<_>>().join(" ")
}

pub fn run<W: Write>(config: &RunConfig, out: &mut W) -> Result<Outcome> {
    let json = config.format == Format::Json;
    match &config.command {
        CommandArg::Analyze => {
            let g = config.single_graph()?;
            check_budget(&g, "chromatic", config.budget.max_chi)?;
            let t = TransparencyMatrix::compute(&g);
            let chi = chromatic_number(&g);
            let rep = minimal_partite_representation(&g);
            let seps = find_separators(&g, &rep);
            let degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
            if json {
                let v = json!({
                    "graph6": emit_graph6(&g)?,
                    "order": g.order(),
                    "size": g.size(),
                    "vertices": t.ids(),
                    "matrix": t.rows(),
                    "degrees": degrees,
                    "clique_number": t.clique_number(),
                    "independence_number": t.independence_number(),
                    "chi": chi,
                    "representation": rep.parts(),
                    "separators": seps,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "order {} size {}", g.order(), g.size())?;
                writeln!(out, "vertices: {}", ids_line(t.ids()))?;
                writeln!(out, "matrix:")?;
                write!(out, "{}", t.grid_dump())?;
                writeln!(out, "degrees: {}", ids_line(&degrees))?;
                writeln!(out, "clique number: {}", t.clique_number())?;
                writeln!(out, "independence number: {}", t.independence_number())?;
                writeln!(out, "chi: {chi}")?;
                writeln!(out, "representation: {}", sets_line(rep.parts()))?;
                let sep_text: Vec<String> =
                    seps.iter().map(|s| format!("({},{})via{}", s.first, s.second, s.witness)).collect();
                writeln!(out, "separators: {}", sep_text.join(" "))?;
            }
        }
        CommandArg::Contract { remove, into } => {
            let g = config.single_graph()?;
            let t = TransparencyMatrix::compute(&g);
            let exact = update_exact(&t, &g, *remove, *into)?;
            let literal = update_paper_literal(&t, *remove, *into)?;
            let diff = mismatches(&literal, &exact);
            let replacements = replacement_count(&t, &g, *remove, *into)?;
            if json {
                let v = json!({
                    "removed": remove,
                    "survivor": into,
                    "vertices": exact.ids(),
                    "replacements": replacements,
                    "exact": exact.rows(),
                    "literal": literal.rows(),
                    "mismatches": diff,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "contract {remove} => {into} (replacements {replacements})")?;
                writeln!(out, "vertices: {}", ids_line(exact.ids()))?;
                writeln!(out, "exact:")?;
                write!(out, "{}", exact.grid_dump())?;
                writeln!(out, "literal:")?;
                write!(out, "{}", literal.grid_dump())?;
                if diff.is_empty() {
                    writeln!(out, "diff: none")?;
                } else {
                    for d in &diff {
                        writeln!(out, "diff: ({}, {}) literal {} exact {}", d.m, d.n, d.literal, d.exact)?;
                    }
                }
            }
        }
        CommandArg::Greedy => {
            let g = config.single_graph()?;
            let trace = greedy_contract(&g)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&trace)?)?;
            } else {
                for (k, s) in trace.steps.iter().enumerate() {
                    writeln!(out, "step {}: {} => {} (replacements {})", k + 1, s.removed, s.survivor, s.replacements)?;
                }
                writeln!(out, "terminal order: {}", trace.terminal_order)?;
                writeln!(out, "steps: {}", trace.step_count)?;
                writeln!(out, "branch sets: {}", sets_line(&trace.branch_sets))?;
            }
        }
        CommandArg::Hadwiger => {
            let g = config.single_graph()?;
            let (h, cert) = hadwiger_number_within(&g, config.budget.max_oracle)?;
            let verified = verify_certificate(&g, &cert);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "hadwiger": h, "certificate": cert, "verified": verified }))?)?;
            } else {
                writeln!(out, "hadwiger: {h}")?;
                writeln!(out, "branch sets: {}", sets_line(&cert.branch_sets))?;
                writeln!(out, "verified: {verified}")?;
            }
        }
        CommandArg::Chroma => {
            let g = config.single_graph()?;
            check_budget(&g, "chromatic", config.budget.max_chi)?;
            let chi = chromatic_number(&g);
            let rep = minimal_partite_representation(&g);
            let sensitive = is_contraction_sensitive(&g).ok();
            let critical = is_k_critical(&g).ok();
            if json {
                let v = json!({
                    "chi": chi,
                    "representation": rep.parts(),
                    "contraction_sensitive": sensitive,
                    "criticality": critical,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "chi: {chi}")?;
                writeln!(out, "representation: {}", sets_line(rep.parts()))?;
                let show = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
                writeln!(out, "contraction sensitive: {}", show(sensitive))?;
                writeln!(out, "edge critical: {}", show(critical.map(|c| c.edge_critical)))?;
                writeln!(out, "vertex critical: {}", show(critical.map(|c| c.vertex_critical)))?;
            }
        }
        CommandArg::Sweep => {
            let records = sweep(config.graphs()?, &config.budget)?;
            let paths = write_reports(&records, &config.output_dir)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&json!({ "records": records.len(), "jsonl": paths.jsonl, "csv": paths.csv }))?)?;
            } else {
                writeln!(out, "order graphs greedy_success greedy_fail skipped max_steps success_rate")?;
                for s in summarize(&records) {
                    let rate = s.success_rate().map_or("n/a".to_string(), |r| format!("{r:.6}"));
                    writeln!(out, "{} {} {} {} {} {} {}", s.order, s.graphs, s.greedy_success, s.greedy_fail, s.skipped, s.max_steps, rate)?;
                }
                writeln!(out, "wrote {} and {}", paths.jsonl.display(), paths.csv.display())?;
            }
            if !records.is_empty() && records.iter().all(|r| r.has(Flag::Skipped) && r.chi.is_none()) {
                return Ok(Outcome::AllSkipped);
            }
        }
        CommandArg::Audit31 => {
            let report = audit_sensitivity(config.graphs()?, config.budget.max_representations)?;
            let path = write_sensitivity_report(&report, &config.output_dir)?;
            if json {
                write!(out, "{}", report.to_json()?)?;
            } else {
                write!(out, "{}", report.table())?;
                writeln!(out, "wrote {}", path.display())?;
            }
            if report.graphs > 0 && report.skipped.len() == report.graphs
                && report.skipped.iter().all(|s| s.reason == "over budget")
            {
                return Ok(Outcome::AllSkipped);
            }
        }
        CommandArg::Census => {
            let census = divergence_census(config.graphs()?)?;
            fs::create_dir_all(&config.output_dir)?;
            let path = config.output_dir.join("census.jsonl");
            let mut buf = Vec::new();
            census.write_jsonl(&mut buf)?;
            write_atomically(&path, &buf)?;
            let summary = json!({
                "graphs": census.graphs,
                "contractions": census.contractions,
                "diverging_contractions": census.diverging_contractions,
                "diverging_entries": census.diverging_entries,
            });
            if json {
                writeln!(out, "{}", serde_json::to_string(&summary)?)?;
            } else {
                writeln!(out, "graphs {} contractions {} diverging {} entries {}", census.graphs, census.contractions, census.diverging_contractions, census.diverging_entries)?;
                writeln!(out, "wrote {}", path.display())?;
            }
        }
    }
    Ok(Outcome::Done)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig> {
        let mut argv = vec!["hadlab"];
        argv.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(argv).expect("clap accepts"))
    }

    fn run_text(args: &[&str]) -> (Result<Outcome>, String) {
        let cfg = config(args).unwrap();
        let mut buf = Vec::new();
        let r = run(&cfg, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn analyze_c5_prints_the_grid() {
        let (r, text) = run_text(&["analyze", "--gen", "cycle:5"]);
        assert_eq!(r.unwrap(), Outcome::Done);
        assert!(text.contains("matrix:\n0 1 2 2 1\n1 0 1 2 2\n2 1 0 1 2\n2 2 1 0 1\n1 2 2 1 0\n"));
        assert!(text.contains("chi: 3"));
    }

    #[test]
    fn validation() {
        assert!(config(&["analyze"]).is_err());
        assert!(config(&["analyze", "--g6", "@", "--gen", "cycle:5"]).is_err());
        assert!(config(&["analyze", "--gen", "cycle:5", "--seed", "3"]).is_err());
        assert!(config(&["analyze", "--gen", "gnp:5:0.5"]).is_err());
        assert!(config(&["analyze", "--gen", "gnp:5:0.5:1", "--seed", "3"]).is_err());
        assert!(config(&["analyze", "--gen", "gnp:5:0.5", "--seed", "3"]).is_ok());
        assert!(config(&["analyze", "--g6", "@", "--max-chi", "0"]).is_err());
    }

    #[test]
    fn contract_non_adjacent_is_input_error() {
        let (r, _) = run_text(&["contract", "--gen", "cycle:5", "--remove", "0", "--into", "2"]);
        let e = r.as_ref().unwrap_err();
        assert!(e.to_string().contains("not available for contraction"));
        assert_eq!(exit_code(&r), 1);
    }

    #[test]
    fn over_budget_exits_two() {
        let (r, _) = run_text(&["hadwiger", "--gen", "petersen"]);
        assert_eq!(exit_code(&r), 2);
        let (r, _) = run_text(&["analyze", "--gen", "petersen", "--max-chi", "5"]);
        assert_eq!(exit_code(&r), 2);
    }

    #[test]
    fn multi_graph_input_rejected_for_single_commands() {
        let (r, _) = run_text(&["greedy", "--gen", "all:3"]);
        assert_eq!(exit_code(&r), 1);
    }
}
