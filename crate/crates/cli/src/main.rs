//! `kluniform`: command-line access to the matroid library.
//!
//! Exit codes: 0 success or true, 1 definitive false, 2 error, 3 budget exhausted.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kluniform::catalog;
use kluniform::io::{parse_matroid, to_text};
use kluniform::iso::{self, MinorOutcome};
use kluniform::search::{self, SearchConfig, SearchReport};
use kluniform::uniformity::{self, UniformityWitness, Verdict};
use kluniform::verify;
use kluniform::{Error, KlPair, Matroid};
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        let _ = write!(io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "kluniform", version, about = "Matroid (k,l)-uniformity toolkit")]
struct Cli {
    /// Worker threads for searches; 0 picks the number of cores.
    #[arg(long, global = true, env = "MATROID_WORKERS", default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide (k,l)-uniformity.
    Check {
        /// A file, `-` for stdin, or `catalog:NAME`.
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Method::Flats)]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Replay the classification checks.
    Verify {
        /// Check ids, or `all`.
        ids: Vec<String>,
        /// Include slow checks in `all`.
        #[arg(long, conflicts_with = "skip_slow")]
        slow: bool,
        /// Leave slow checks out of `all` (the default).
        #[arg(long)]
        skip_slow: bool,
        #[arg(long)]
        json: bool,
        /// List the checks and exit.
        #[arg(long)]
        list: bool,
    },
    /// Test two matroids for isomorphism.
    Iso {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a minor of M isomorphic to N.
    Minor {
        m: String,
        n: String,
        /// Maximum number of (contract, delete) candidates examined.
        #[arg(long, default_value_t = iso::DEFAULT_MINOR_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the dual in a text format.
    Dual { input: String },
    /// Named matroids.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Enumerate binary (k,l)-uniform matroids of a fixed rank.
    Search(SearchArgs),
    /// Compute f(k,l,2) up to a rank cap.
    F {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 5)]
        r_max: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Flats,
    Minor,
    Circuits,
    All,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the named entries.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Describe a matroid and print its text form.
    Show { name: String },
    /// Write a matroid in a text format.
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    /// Simple matroids only (the default).
    #[arg(long, conflicts_with = "non_simple")]
    simple: bool,
    /// Allow loops and parallel elements; needs --max-size.
    #[arg(long)]
    non_simple: bool,
    #[arg(long)]
    cosimple: bool,
    #[arg(long = "3connected")]
    three_connected: bool,
    #[arg(long)]
    max_size: Option<usize>,
    /// Node budget.
    #[arg(long, default_value_t = search::DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Write a checkpoint after every level.
    #[arg(long, conflicts_with = "resume")]
    checkpoint: Option<PathBuf>,
    /// Resume from (and keep writing) a checkpoint.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

/// A command's result: an exit status for a completed query.
enum Status {
    True,
    False,
    Budget,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::True) => ExitCode::from(0),
        Ok(Status::False) => ExitCode::from(1),
        Ok(Status::Budget) => ExitCode::from(3),
        Err(e) => {
            if let Some(Error::BudgetExhausted(n)) = e.downcast_ref::<Error>() {
                eprintln!("budget exhausted after {n} nodes");
                return ExitCode::from(3);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let workers = cli.workers;
    match cli.command {
        Command::Check { input, k, l, method, json } => check(&input, KlPair::new(k, l)?, method, json),
        Command::Verify { ids, slow, skip_slow: _, json, list } => {
            if list {
                for c in verify::CHECKS {
                    out!("{:<18} {}{}", c.id, c.description, if c.slow { " [slow]" } else { "" });
                }
                return Ok(Status::True);
            }
            verify_cmd(&ids, slow, json, workers)
        }
        Command::Iso { a, b, json } => iso_cmd(&a, &b, json),
        Command::Minor { m, n, budget, json } => minor_cmd(&m, &n, budget, json),
        Command::Dual { input } => {
            out_raw!("{}", to_text(&load(&input)?.dual()?)?);
            Ok(Status::True)
        }
        Command::Catalog { action } => catalog_cmd(action),
        Command::Search(args) => search_cmd(args, workers),
        Command::F { k, l, r_max, json } => f_cmd(KlPair::new(k, l)?, r_max, json, workers),
    }
}

/// Reads a matroid from `catalog:NAME`, `-` (stdin) or a file.
fn load(input: &str) -> anyhow::Result<Matroid> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(catalog::lookup(name)?);
    }
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    parse_matroid(&text).with_context(|| format!("parsing {input}"))
}

fn labels(m: &Matroid, x: kluniform::Mask) -> String {
    format!("{{{}}}", m.labels_of(x).join(","))
}

fn witness_text(m: &Matroid, w: &UniformityWitness) -> String {
    match w {
        UniformityWitness::Flat(f) => format!("flat {} of rank {} and nullity {}", labels(m, *f), m.rank_of(*f), m.nullity(*f)),
        UniformityWitness::Minor(s) => format!("minor contracting {} and deleting {}", labels(m, s.contract), labels(m, s.delete)),
    }
}

fn witness_json(m: &Matroid, w: &UniformityWitness) -> Value {
    match w {
        UniformityWitness::Flat(f) => json!({"flat": m.labels_of(*f)}),
        UniformityWitness::Minor(s) => json!({"contract": m.labels_of(s.contract), "delete": m.labels_of(s.delete)}),
    }
}

fn check(input: &str, kl: KlPair, method: Method, as_json: bool) -> anyhow::Result<Status> {
    let m = load(input)?;
    let circuits_apply = kl == KlPair { k: 2, l: 2 };
    if method == Method::Circuits && !circuits_apply {
        bail!("the circuit-pair method decides (2,2)-uniformity only");
    }
    let mut results: Vec<(&str, Verdict)> = Vec::new();
    if matches!(method, Method::Flats | Method::All) {
        results.push(("flats", uniformity::is_kl_uniform_flats(&m, kl)?));
    }
    if matches!(method, Method::Minor | Method::All) {
        results.push(("minor", uniformity::is_kl_uniform_minor(&m, kl)?));
    }
    if method == Method::Circuits || (method == Method::All && circuits_apply) {
        let uniform = uniformity::is_22_uniform_circuits(&m)?;
        results.push(("circuits", Verdict { uniform, witness: None }));
    }
    let uniform = results[0].1.uniform;
    let agree = results.iter().filter(|(_, v)| v.uniform == uniform).count();
    if agree != results.len() {
        bail!("deciders disagree on {input}");
    }
    if as_json {
        let methods: Vec<Value> = results
            .iter()
            .map(|(name, v)| json!({"method": name, "uniform": v.uniform, "witness": v.witness.as_ref().map(|w| witness_json(&m, w))}))
            .collect();
        let out = json!({"schema": SCHEMA, "k": kl.k, "l": kl.l, "n": m.len(), "rank": m.rank(), "uniform": uniform, "methods": methods, "agree": agree});
        out!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        out!("{} (n = {}, r = {}) is {}{kl}-uniform", input, m.len(), m.rank(), if uniform { "" } else { "not " });
        for (name, v) in &results {
            match &v.witness {
                Some(w) => out!("  {name}: not uniform, witness {}", witness_text(&m, w)),
                None => out!("  {name}: {}", if v.uniform { "uniform" } else { "not uniform" }),
            }
        }
        if results.len() > 1 {
            out!("  {agree}/{} methods agree", results.len());
        }
    }
    Ok(if uniform { Status::True } else { Status::False })
}

fn verify_cmd(ids: &[String], slow: bool, as_json: bool, workers: usize) -> anyhow::Result<Status> {
    let run_all = ids.is_empty() || ids.iter().any(|i| i == "all");
    let selected: Vec<&verify::CheckInfo> = if run_all {
        verify::CHECKS.iter().collect()
    } else {
        ids.iter()
            .map(|id| verify::find_check(id).ok_or_else(|| anyhow::anyhow!("unknown check `{id}`; see `verify --list`")))
            .collect::<anyhow::Result<_>>()?
    };
    let mut rows = Vec::new();
    let mut failed = 0;
    for info in selected {
        if run_all && info.slow && !slow {
            if !as_json {
                out!("SKIP {:<18} {} (slow; pass --slow)", info.id, info.description);
            }
            rows.push(json!({"id": info.id, "description": info.description, "status": "skipped", "details": [], "runtime_ms": 0}));
            continue;
        }
        let t = Instant::now();
        let r = verify::run_check(info.id, workers)?;
        let ms = t.elapsed().as_millis() as u64;
        if !r.passed {
            failed += 1;
        }
        let status = if r.passed { "pass" } else { "fail" };
        if !as_json {
            out!("{} {:<18} {}", status.to_uppercase(), r.id, r.description);
            for d in &r.details {
                out!("       {d}");
            }
            let _ = io::stdout().flush();
        }
        rows.push(json!({"id": r.id, "description": r.description, "status": status, "details": r.details, "runtime_ms": ms}));
    }
    if as_json {
        out!("{}", serde_json::to_string_pretty(&json!({"schema": SCHEMA, "checks": rows, "failed": failed}))?);
    } else {
        out!("{} run, {} failed", rows.iter().filter(|r| r["status"] != "skipped").count(), failed);
    }
    Ok(if failed == 0 { Status::True } else { Status::False })
}

fn iso_cmd(a: &str, b: &str, as_json: bool) -> anyhow::Result<Status> {
    let (ma, mb) = (load(a)?, load(b)?);
    let cert = iso::are_isomorphic(&ma, &mb)?;
    if as_json {
        let map = cert.as_ref().map(|c| {
            c.map.iter().enumerate().map(|(i, &j)| json!([ma.labels()[i], mb.labels()[j]])).collect::<Vec<_>>()
        });
        out!("{}", serde_json::to_string_pretty(&json!({"schema": SCHEMA, "isomorphic": cert.is_some(), "map": map}))?);
    } else if let Some(c) = &cert {
        out!("isomorphic");
        for (i, &j) in c.map.iter().enumerate() {
            out!("  {} -> {}", ma.labels()[i], mb.labels()[j]);
        }
    } else {
        out!("not isomorphic");
    }
    Ok(if cert.is_some() { Status::True } else { Status::False })
}

fn minor_cmd(m: &str, n: &str, budget: u64, as_json: bool) -> anyhow::Result<Status> {
    let (mm, mn) = (load(m)?, load(n)?);
    let outcome = iso::has_minor(&mm, &mn, budget)?;
    if as_json {
        let out = match outcome {
            MinorOutcome::Found(s) => {
                json!({"schema": SCHEMA, "outcome": "found", "contract": mm.labels_of(s.contract), "delete": mm.labels_of(s.delete)})
            }
            MinorOutcome::NotFound => json!({"schema": SCHEMA, "outcome": "not-found"}),
            MinorOutcome::BudgetExhausted => json!({"schema": SCHEMA, "outcome": "budget-exhausted"}),
        };
        out!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        match outcome {
            MinorOutcome::Found(s) => out!("minor found: contract {} delete {}", labels(&mm, s.contract), labels(&mm, s.delete)),
            MinorOutcome::NotFound => out!("no minor"),
            MinorOutcome::BudgetExhausted => out!("budget exhausted"),
        }
    }
    Ok(match outcome {
        MinorOutcome::Found(_) => Status::True,
        MinorOutcome::NotFound => Status::False,
        MinorOutcome::BudgetExhausted => Status::Budget,
    })
}

fn catalog_cmd(action: CatalogAction) -> anyhow::Result<Status> {
    match action {
        CatalogAction::List { json: as_json } => {
            let entries = catalog::entries()?;
            if as_json {
                let rows: Vec<Value> = entries
                    .iter()
                    .map(|e| json!({"name": e.name, "description": e.description, "rank": e.rank, "size": e.size, "simple": e.simple, "cosimple": e.cosimple, "binary": e.binary}))
                    .collect();
                out!("{}", serde_json::to_string_pretty(&json!({"schema": SCHEMA, "entries": rows}))?);
            } else {
                for e in &entries {
                    out!("{:<7} r={:<2} n={:<2} {}", e.name, e.rank, e.size, e.description);
                }
            }
        }
        CatalogAction::Show { name } => {
            let m = catalog::lookup(&name)?;
            let entry = catalog::entries()?.into_iter().find(|e| e.name == name);
            out!("# {name}: rank {}, {} elements", m.rank(), m.len());
            if let Some(e) = entry {
                out!("# {}", e.description);
            }
            out!("# labels: {}", m.labels().join(" "));
            out_raw!("{}", to_text(&m)?);
        }
        CatalogAction::Export { name, output } => {
            let text = to_text(&catalog::lookup(&name)?)?;
            match output {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => out_raw!("{text}"),
            }
        }
    }
    Ok(Status::True)
}

fn search_json(report: &SearchReport) -> anyhow::Result<Value> {
    let reps = report
        .representatives
        .iter()
        .map(|f| Ok(to_text(&f.to_point_set().to_matroid(None)?)?))
        .collect::<anyhow::Result<Vec<String>>>()?;
    Ok(json!({
        "schema": SCHEMA,
        "config": report.config,
        "f_value": report.max_nonempty_rank,
        "representatives": reps,
        "counts": report.counts,
        "stats": report.stats,
        "wall_ms": report.wall_ms,
    }))
}

fn search_cmd(a: SearchArgs, workers: usize) -> anyhow::Result<Status> {
    let mut cfg = SearchConfig::new(a.rank, KlPair::new(a.k, a.l)?).workers(workers);
    cfg.require_simple = !a.non_simple;
    cfg.require_cosimple = a.cosimple;
    cfg.require_3connected = a.three_connected;
    cfg.max_size = a.max_size;
    cfg.node_budget = a.budget;
    let report = match (&a.checkpoint, &a.resume) {
        (Some(p), _) => search::enumerate_with_checkpoint(&cfg, p, false)?,
        (_, Some(p)) => search::enumerate_with_checkpoint(&cfg, p, true)?,
        _ => search::enumerate_kl_uniform(&cfg)?,
    };
    let json_to_stdout = a.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !json_to_stdout {
        summary(&cfg, &report);
    }
    if let Some(path) = &a.json {
        let text = serde_json::to_string_pretty(&search_json(&report)?)?;
        if json_to_stdout {
            out!("{text}");
        } else {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(Status::True)
}

fn summary(cfg: &SearchConfig, report: &SearchReport) {
    out!(
        "rank {} {}-uniform: {} classes ({} nodes, {} pruned, {} duplicates)",
        cfg.rank,
        cfg.kl,
        report.representatives.len(),
        report.stats.nodes,
        report.stats.pruned,
        report.stats.duplicates
    );
    for c in &report.counts {
        out!("  n = {:<3} {}", c.size, c.count);
    }
}

fn f_cmd(kl: KlPair, r_max: usize, as_json: bool, workers: usize) -> anyhow::Result<Status> {
    let r = search::compute_f(kl, r_max, workers)?;
    if as_json {
        let mut v = serde_json::to_value(&r)?;
        v["schema"] = json!(SCHEMA);
        out!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        let value = r.value.map_or("none".to_string(), |v| v.to_string());
        let bound = if r.top_rank_empty { "exact" } else { "lower bound: the rank cap was reached" };
        out!("f{} over GF(2) = {value} ({bound}, {:?} route)", kl, r.route);
        for s in &r.per_rank {
            out!("  rank {}: {} classes, max corank {}", s.rank, s.count, s.max_corank.map_or("-".into(), |c| c.to_string()));
        }
    }
    Ok(Status::True)
}

