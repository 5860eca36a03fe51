//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any fails. Limits and tolerances are the constants below.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hadlab::chromatic::{chromatic_number, minimal_partite_representation};
use hadlab::contraction::{divergence_census, replacement_count, update_exact};
use hadlab::graph::{all_labeled_connected, complete, complete_minus_edge, cycle, petersen, random_connected, Graph};
use hadlab::lab::{audit_sensitivity, read_jsonl, sweep, write_reports, Budget, Flag, GraphAuditRecord, CSV_HEADER};
use hadlab::minor::{greedy_contract, hadwiger_number_within, verify_certificate};
use hadlab::{Distance, TransparencyMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const AC1_LIMIT: Duration = Duration::from_millis(1);
const AC3_LIMIT: Duration = Duration::from_secs(60);
const AC6_LIMIT: Duration = Duration::from_secs(600);
const AC7_PETERSEN_LIMIT: Duration = Duration::from_secs(600);

const EXHAUSTIVE_ORDER: usize = 6;
const AC3_RANDOM_GRAPHS: usize = 500;
const AC3_RANDOM_MAX_ORDER: usize = 12;
const AC5_RANDOM_GRAPHS: usize = 200;
const AC5_RANDOM_MAX_ORDER: usize = 10;
const TABLE_ORDER: usize = 5;
const AC10_SWEEP_SPEC: &str = "all:6";

const AC3_SEED: u64 = 0x5eed_0003;
const AC5_SEED: u64 = 0x5eed_0005;

type Outcome = Result<String, String>;

fn matrix(rows: &[&[u32]]) -> Vec<Vec<Distance>> {
    rows.iter().map(|r| r.iter().map(|&d| Distance::Finite(d)).collect()).collect()
}

fn random_corpus(count: usize, max_order: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_order);
            let p = rng.gen_range(0.0..0.6);
            random_connected(n, p, &mut rng).expect("order in range")
        })
        .collect()
}

fn exhaustive() -> Vec<Graph> {
    all_labeled_connected(EXHAUSTIVE_ORDER).expect("within enumeration budget").collect()
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let g = cycle(5).map_err(|e| e.to_string())?;
    let t = TransparencyMatrix::compute(&g);
    let after = update_exact(&t, &g, 0, 1).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let want5 = matrix(&[&[0, 1, 2, 2, 1], &[1, 0, 1, 2, 2], &[2, 1, 0, 1, 2], &[2, 2, 1, 0, 1], &[1, 2, 2, 1, 0]]);
    let want4 = matrix(&[&[0, 1, 2, 1], &[1, 0, 1, 2], &[2, 1, 0, 1], &[1, 2, 1, 0]]);
    if t.rows() != want5 {
        return Err(format!("5x5 matrix differs:\n{}", t.grid_dump()));
    }
    if after.ids() != [1, 2, 3, 4] || after.rows() != want4 {
        return Err(format!("4x4 matrix differs:\n{}", after.grid_dump()));
    }
    if elapsed >= AC1_LIMIT {
        return Err(format!("took {elapsed:?}, limit {AC1_LIMIT:?}"));
    }
    Ok(format!("C5 and C4 matrices exact in {elapsed:?}"))
}

fn ac2() -> Outcome {
    // ids 0..4 stand for vertices 1..4; 2 and 3 are the non-adjacent pair
    let g = complete_minus_edge(4).map_err(|e| e.to_string())?;
    let t = TransparencyMatrix::compute(&g);
    let forward = replacement_count(&t, &g, 0, 1).map_err(|e| e.to_string())?;
    let backward = replacement_count(&t, &g, 1, 0).map_err(|e| e.to_string())?;
    if forward != 0 || backward != 0 {
        return Err(format!("replacement_count(1=>2) = {forward}, (2=>1) = {backward}"));
    }
    let trace = greedy_contract(&g).map_err(|e| e.to_string())?;
    let step = trace.steps.first().ok_or("greedy made no step")?;
    if (step.removed.min(step.survivor), step.removed.max(step.survivor)) == (0, 1) {
        return Err("greedy selected pair (1,2)".into());
    }
    if trace.step_count != 1 || trace.terminal_order != 3 {
        return Err(format!("greedy ended at K{} after {} steps", trace.terminal_order, trace.step_count));
    }
    Ok(format!(
        "replacement_count(1=>2) = 0; greedy contracts ({} => {}) to K3 in one step",
        step.removed + 1,
        step.survivor + 1
    ))
}

fn oracle_mismatches(g: &Graph) -> Result<(usize, usize), String> {
    let t = TransparencyMatrix::compute(g);
    let (mut checked, mut bad) = (0, 0);
    for (u, v) in g.edges() {
        for (i, j) in [(u, v), (v, u)] {
            let fast = update_exact(&t, g, i, j).map_err(|e| e.to_string())?;
            let h = g.contract_edge(i, j).map_err(|e| e.to_string())?;
            let slow = TransparencyMatrix::compute(&h);
            checked += 1;
            if fast.ids() != slow.ids() || fast.rows() != slow.rows() {
                bad += 1;
            }
        }
    }
    Ok((checked, bad))
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let mut corpus = exhaustive();
    let exhaustive_graphs = corpus.len();
    corpus.extend(random_corpus(AC3_RANDOM_GRAPHS, AC3_RANDOM_MAX_ORDER, AC3_SEED));
    let (mut checked, mut bad) = (0, 0);
    for g in &corpus {
        let (c, b) = oracle_mismatches(g)?;
        checked += c;
        bad += b;
    }
    let elapsed = start.elapsed();
    let summary = format!(
        "{checked} contractions over {exhaustive_graphs} exhaustive + {AC3_RANDOM_GRAPHS} random graphs, {bad} mismatches, {elapsed:.2?}"
    );
    if bad != 0 || elapsed >= AC3_LIMIT {
        return Err(summary);
    }
    Ok(summary)
}

fn ac4() -> Outcome {
    let census = divergence_census(exhaustive()).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("census.jsonl");
    let mut buf = Vec::new();
    census.write_jsonl(&mut buf).map_err(|e| e.to_string())?;
    fs::write(&path, &buf).map_err(|e| e.to_string())?;
    let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let mut lines = 0;
    for line in text.lines() {
        serde_json::from_str::<serde_json::Value>(line).map_err(|e| format!("bad JSONL line: {e}"))?;
        lines += 1;
    }
    if lines != census.records.len() {
        return Err(format!("{lines} lines for {} records", census.records.len()));
    }
    Ok(format!(
        "{} graphs, {} contractions; literal rules diverge on {} contractions ({} entries)",
        census.graphs, census.contractions, census.diverging_contractions, census.diverging_entries
    ))
}

fn brute_clique(g: &Graph, independent: bool) -> usize {
    let ids: Vec<usize> = g.vertices().collect();
    let n = ids.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).map(|k| ids[k]).collect();
        let ok = members.iter().enumerate().all(|(a, &u)| {
            members[a + 1..].iter().all(|&v| g.has_edge(u, v) != independent)
        });
        if ok {
            best = best.max(members.len());
        }
    }
    best
}

fn check_properties(g: &Graph) -> Result<(), String> {
    let t = TransparencyMatrix::compute(g);
    let ids = t.ids().to_vec();
    let n = ids.len();

    let adj = t.threshold_to_adjacency();
    for (a, &u) in ids.iter().enumerate() {
        for (b, &v) in ids.iter().enumerate() {
            if (adj[a][b] == 1) != g.has_edge(u, v) {
                return Err(format!("threshold adjacency wrong at ({u},{v})"));
            }
            let d = t.at(a, b);
            if (a == b) != (d == Distance::ZERO) {
                return Err(format!("zero entry off the diagonal or nonzero diagonal at ({u},{v})"));
            }
        }
        let units = (0..n).filter(|&b| t.at(a, b).is_unit()).count();
        if units != g.degree(u) {
            return Err(format!("row {u} has {units} units, degree {}", g.degree(u)));
        }
    }

    let rep = minimal_partite_representation(g);
    if !rep.independent_in(&t) {
        return Err("a part of the minimal representation is not independent".into());
    }

    for (u, v) in g.edges() {
        for (i, j) in [(u, v), (v, u)] {
            let after = update_exact(&t, g, i, j).map_err(|e| e.to_string())?;
            if after.order() + 1 != t.order() {
                return Err(format!("({i}=>{j}) changed order by {}", t.order() - after.order()));
            }
            let h = g.contract_edge(i, j).map_err(|e| e.to_string())?;
            let common = g.vertices().filter(|&w| g.has_edge(w, i) && g.has_edge(w, j)).count();
            if h.size() != g.size() - 1 - common {
                return Err(format!("({i}=>{j}) left {} edges, expected {}", h.size(), g.size() - 1 - common));
            }
            if after.unit_pairs().len() != h.size() {
                return Err(format!("({i}=>{j}) matrix has {} unit pairs, graph {} edges", after.unit_pairs().len(), h.size()));
            }
        }
    }

    let omega = brute_clique(g, false);
    if t.clique_number() != omega {
        return Err(format!("clique number {} vs brute force {omega}", t.clique_number()));
    }
    let alpha = brute_clique(g, true);
    if t.independence_number() != alpha {
        return Err(format!("independence number {} vs brute force {alpha}", t.independence_number()));
    }
    Ok(())
}

fn ac5() -> Outcome {
    let corpus = random_corpus(AC5_RANDOM_GRAPHS, AC5_RANDOM_MAX_ORDER, AC5_SEED);
    for g in &corpus {
        check_properties(g).map_err(|e| format!("{g:?}: {e}"))?;
    }
    Ok(format!("{} random connected graphs, all seven properties hold", corpus.len()))
}

fn ac6(records: &[GraphAuditRecord], elapsed: Duration) -> Outcome {
    let flagged: Vec<&str> =
        records.iter().filter(|r| r.has(Flag::ChiExceedsHadwiger)).map(|r| r.graph6.as_str()).collect();
    let missing = records.iter().filter(|r| r.hadwiger.is_none() || r.chi.is_none()).count();
    let invariant_errors: Vec<String> = records.iter().filter_map(|r| r.check_invariants().err()).collect();
    let summary = format!("{} graphs, {} CHI_EXCEEDS_HADWIGER, {elapsed:.2?}", records.len(), flagged.len());
    if !flagged.is_empty() || missing > 0 || !invariant_errors.is_empty() || elapsed >= AC6_LIMIT {
        return Err(format!("{summary}; {missing} unaudited; invariant errors {invariant_errors:?}; flagged {flagged:?}"));
    }
    Ok(summary)
}

fn ac7() -> Outcome {
    let mut failures = Vec::new();
    let mut found = Vec::new();
    let spot = [("C5", cycle(5).unwrap(), 3), ("K5", complete(5).unwrap(), 5), ("Petersen", petersen(), 6)];
    for (name, g, want) in spot {
        let start = Instant::now();
        let (h, cert) = hadwiger_number_within(&g, 10).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if !verify_certificate(&g, &cert) || cert.order() != h {
            failures.push(format!("{name}: certificate for K{h} does not verify"));
        }
        if h != want {
            failures.push(format!("hadwiger({name}) = {h}, expected {want}"));
        }
        if name == "Petersen" && elapsed >= AC7_PETERSEN_LIMIT {
            failures.push(format!("Petersen took {elapsed:?}"));
        }
        found.push(format!("h({name})={h}"));
    }
    let chi = chromatic_number(&petersen());
    if chi != 3 {
        failures.push(format!("chi(Petersen) = {chi}, expected 3"));
    }
    found.push(format!("chi(Petersen)={chi}"));
    if failures.is_empty() {
        Ok(found.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn ac8(records: &[GraphAuditRecord]) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let paths = write_reports(records, dir.path()).map_err(|e| e.to_string())?;
    let reread = read_jsonl(&paths.jsonl).map_err(|e| e.to_string())?;
    if reread != records {
        return Err("JSONL does not round-trip the sweep records".into());
    }

    // order -> (graphs, success, fail, skipped, max_steps), recomputed from JSONL fields
    let mut rows: BTreeMap<usize, [usize; 5]> = BTreeMap::new();
    for r in &reread {
        let row = rows.entry(r.order).or_default();
        row[0] += 1;
        match (r.greedy_terminal, r.chi) {
            (Some(t), Some(chi)) if t >= chi => row[1] += 1,
            (Some(_), Some(_)) => row[2] += 1,
            _ => row[3] += 1,
        }
        row[4] = row[4].max(r.greedy_steps.unwrap_or(0));
    }
    let mut expected = format!("{CSV_HEADER}\n");
    let mut fractions = Vec::new();
    for (order, [graphs, ok, fail, skipped, steps]) in &rows {
        expected.push_str(&format!("{order},{graphs},{ok},{fail},{skipped},{steps}\n"));
        fractions.push(format!("n={order}: {ok}/{}", ok + fail));
    }
    let csv = fs::read_to_string(&paths.csv).map_err(|e| e.to_string())?;
    if csv != expected {
        return Err(format!("CSV disagrees with JSONL aggregates:\n{csv}\nvs\n{expected}"));
    }
    Ok(format!("greedy_terminal >= chi: {}", fractions.join(", ")))
}

fn ac9() -> Outcome {
    let corpus = || all_labeled_connected(TABLE_ORDER).expect("within enumeration budget");
    let first = audit_sensitivity(corpus(), TABLE_ORDER).map_err(|e| e.to_string())?;
    let second = audit_sensitivity(corpus(), TABLE_ORDER).map_err(|e| e.to_string())?;
    let (a, b) = (first.to_json().map_err(|e| e.to_string())?, second.to_json().map_err(|e| e.to_string())?);
    if a != b || first.table() != second.table() {
        return Err("two runs produced different reports".into());
    }
    let classified = first.sensitive_holds + first.sensitive_fails + first.insensitive_holds + first.insensitive_fails;
    if classified + first.skipped.len() != first.graphs
        || first.sensitive_fails_graphs.len() != first.sensitive_fails
        || first.insensitive_holds_graphs.len() != first.insensitive_holds
    {
        return Err(format!("table inconsistent:\n{}", first.table()));
    }
    Ok(format!(
        "sensitive: {} hold / {} fail, not sensitive: {} hold / {} fail ({} graphs, {} skipped); reproducible",
        first.sensitive_holds,
        first.sensitive_fails,
        first.insensitive_holds,
        first.insensitive_fails,
        first.graphs,
        first.skipped.len()
    ))
}

fn cli_sweep(out: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_hadlab"))
        .args(["sweep", "--gen", AC10_SWEEP_SPEC, "--out"])
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("sweep exited with {}: {}", status.status, String::from_utf8_lossy(&status.stderr)));
    }
    Ok(())
}

fn ac10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    cli_sweep(&a)?;
    cli_sweep(&b)?;
    for file in ["audit.jsonl", "summary.csv"] {
        let x = fs::read(a.join(file)).map_err(|e| e.to_string())?;
        let y = fs::read(b.join(file)).map_err(|e| e.to_string())?;
        if x != y {
            return Err(format!("{file} differs between runs"));
        }
    }
    Ok(format!("two `sweep --gen {AC10_SWEEP_SPEC}` runs wrote identical audit.jsonl and summary.csv"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |name: &str, outcome: Outcome| match outcome {
        Ok(msg) => println!("[PASS] {name} {msg}"),
        Err(msg) => {
            failed += 1;
            println!("[FAIL] {name} {msg}");
        }
    };

    report("AC1", ac1());
    report("AC2", ac2());
    report("AC3", ac3());
    report("AC4", ac4());
    report("AC5", ac5());

    let start = Instant::now();
    let records = sweep(exhaustive(), &Budget::default());
    let elapsed = start.elapsed();
    match records {
        Ok(records) => {
            report("AC6", ac6(&records, elapsed));
            report("AC8", ac8(&records));
        }
        Err(e) => {
            report("AC6", Err(e.to_string()));
            report("AC8", Err(e.to_string()));
        }
    }

    report("AC7", ac7());
    report("AC9", ac9());
    report("AC10", ac10());

    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
