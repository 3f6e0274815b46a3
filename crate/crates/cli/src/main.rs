use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use riordan::bounds::{graph_bounds, BoundOptions, BoundReport};
use riordan::decompose::classify;
use riordan::exact::ExactSummary;
use riordan::spectra::graph_spectra;
use riordan::verify::{run_scan, run_suite, summarize, write_jsonl, Conjecture, CorpusSpec, Finding, RunOptions, Status, Suite};
use riordan::{Error, Family, RiordanGraph};
use serde::Deserialize;
use serde_json::json;

const NMAX_CAP: usize = 128;
/// `build` only constructs the matrix, so it accepts larger orders.
const BUILD_CAP: usize = 4096;

#[derive(Parser)]
#[command(name = "riordan", version, about = "Riordan graphs over GF(2)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a graph and export its adjacency (text, dot, csv or json).
    Build(Opts),
    /// Exact summary, spectra, classification and degrees as one JSON document.
    Report(Opts),
    /// Evaluate every applicable bound on one graph.
    Bounds(Opts),
    /// Run a claim suite over the seeded corpus.
    Verify(Opts),
    /// Run a report-only conjecture scanner.
    Scan(Opts),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

/// Every flag is optional so that `--config` can supply it; explicit flags
/// win over the config file.
#[derive(Args, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct Opts {
    /// Expression for g.
    #[arg(long)]
    g: Option<String>,
    /// Expression for f.
    #[arg(long)]
    f: Option<String>,
    /// Named family (pascal, catalan, path, complete, complete-bipartite, null).
    #[arg(long)]
    family: Option<String>,
    /// Graph order.
    #[arg(long)]
    n: Option<usize>,
    /// Largest order in a corpus or scan (default 64).
    #[arg(long)]
    nmax: Option<usize>,
    /// Corpus seed (default 1).
    #[arg(long)]
    seed: Option<u64>,
    /// Random corpus size (default 200).
    #[arg(long)]
    random_count: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write data here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Append-only JSONL checkpoint; an existing one is resumed.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// JSON object whose keys mirror these flags.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// decomposition, bounds, eigenvectors, inertia, nullity, determinant, degrees or all.
    #[arg(long)]
    suite: Option<String>,
    /// det-catalan, inertia-order, nullity-xo, max-degree or diameter.
    #[arg(long)]
    conjecture: Option<String>,
    /// Write the per-claim summary JSON here.
    #[arg(long)]
    summary: Option<PathBuf>,
}

macro_rules! merge {
    ($dst:ident, $src:ident; $($field:ident),*) => {
        $( if $dst.$field.is_none() { $dst.$field = $src.$field; } )*
    };
}

impl Opts {
    fn with_config(mut self) -> Result<Self, Fail> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = fs::read_to_string(&path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
        let cfg: Opts =
            serde_json::from_str(&text).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
        merge!(self, cfg; g, f, family, n, nmax, seed, random_count, format, output, checkpoint, jobs, suite, conjecture, summary);
        Ok(self)
    }

    fn graph(&self, cap: usize) -> Result<RiordanGraph, Fail> {
        let n = self.n.ok_or_else(|| Fail::usage("--n is required"))?;
        if n == 0 || n > cap {
            return Err(Fail::usage(format!("--n must be in 1..={cap}")));
        }
        match (&self.family, &self.g, &self.f) {
            (Some(fam), None, None) => Ok(RiordanGraph::family(fam.parse::<Family>()?, n)?),
            (None, Some(g), Some(f)) => Ok(RiordanGraph::from_exprs(g, f, n)?),
            _ => Err(Fail::usage("give either --family or both --g and --f")),
        }
    }

    fn descriptor(&self, rg: &RiordanGraph) -> serde_json::Value {
        json!({ "g": rg.g_expr(), "f": rg.f_expr(), "n": rg.n(), "family": rg.family_tag() })
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, Fail> {
        let fmt = self.format.unwrap_or(default);
        if allowed.contains(&fmt) {
            Ok(fmt)
        } else {
            Err(Fail::usage(format!("format {fmt:?} is not supported by this command").to_lowercase()))
        }
    }

    fn nmax(&self) -> Result<usize, Fail> {
        let nmax = self.nmax.unwrap_or(64);
        if nmax == 0 || nmax > NMAX_CAP {
            return Err(Fail::usage(format!("--nmax must be in 1..={NMAX_CAP}")));
        }
        Ok(nmax)
    }

    fn run_options(&self) -> RunOptions {
        RunOptions { checkpoint: self.checkpoint.clone(), jobs: self.jobs, stop_after: None }
    }

    fn emit(&self, data: &[u8]) -> Result<(), Fail> {
        match &self.output {
            Some(p) => fs::write(p, data).map_err(|e| Fail::usage(format!("{}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(data).and_then(|_| out.flush()).map_err(|e| Fail::usage(e.to_string()))
            }
        }
    }
}

/// A message and the exit code it maps to.
struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = if e.is_usage() {
            2
        } else if e.is_internal_inconsistency() || matches!(e, Error::NoConvergence { .. }) {
            4
        } else {
            3
        };
        Fail { code, msg: e.to_string() }
    }
}

fn cmd_build(o: &Opts) -> Result<u8, Fail> {
    let rg = o.graph(BUILD_CAP)?;
    let g = rg.graph();
    let text = match o.format(Format::Text, &[Format::Text, Format::Dot, Format::Csv, Format::Json])? {
        Format::Text => g.to_text(),
        Format::Dot => g.to_dot(),
        Format::Csv => g.to_csv(),
        Format::Json => {
            let rows: Vec<Vec<u8>> =
                (0..g.n()).map(|i| (0..g.n()).map(|j| g.adjacency().get(i, j) as u8).collect()).collect();
            let doc = json!({ "graph": o.descriptor(&rg), "adjacency": rows, "edges": g.edge_count() });
            serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n"
        }
    };
    o.emit(text.as_bytes())?;
    Ok(0)
}

fn cmd_report(o: &Opts) -> Result<u8, Fail> {
    o.format(Format::Json, &[Format::Json])?;
    let rg = o.graph(NMAX_CAP)?;
    let g = rg.graph();
    let exact = ExactSummary::of_bits(g.adjacency())?;
    let spectra = graph_spectra(g)?;
    let cls = classify(&rg)?;
    let doc = json!({
        "graph": o.descriptor(&rg),
        "edges": g.edge_count(),
        "exact": exact,
        "spectra": { "adjacency": spectra.adjacency, "laplacian": spectra.laplacian, "signless": spectra.signless },
        "scalars": spectra.scalars,
        "classification": cls.names(),
        "degrees": g.degrees(),
        "universal_vertices": g.universal_vertices(),
    });
    o.emit((serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n").as_bytes())?;
    Ok(0)
}

fn bound_text(r: &BoundReport) -> String {
    let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let rel = serde_json::to_value(r.relation).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    if r.hypothesis_met {
        format!("{:<8} {:<36} {:>14.9} {} {:<14.9} slack {:.3e}", status, r.bound_id, r.lhs, rel, r.rhs, r.slack)
    } else {
        format!("{:<8} {:<36} {}", status, r.bound_id, r.note)
    }
}

fn cmd_bounds(o: &Opts) -> Result<u8, Fail> {
    let fmt = o.format(Format::Json, &[Format::Json, Format::Text])?;
    let rg = o.graph(NMAX_CAP)?;
    let reports = graph_bounds(&rg, BoundOptions::default())?;
    let data = match fmt {
        Format::Json => {
            let doc = json!({ "graph": o.descriptor(&rg), "bounds": reports });
            serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n"
        }
        _ => reports.iter().map(|r| bound_text(r) + "\n").collect(),
    };
    o.emit(data.as_bytes())?;
    let failures: Vec<&BoundReport> = reports.iter().filter(|r| r.is_theorem_failure()).collect();
    for r in &failures {
        eprintln!("theorem bound failed: {}", r.bound_id);
    }
    Ok(if failures.is_empty() { 0 } else { 1 })
}

fn finish_findings(o: &Opts, label: &str, findings: &[Finding]) -> Result<u8, Fail> {
    o.format(Format::Json, &[Format::Json])?;
    let mut buf = Vec::new();
    write_jsonl(&mut buf, findings)?;
    o.emit(&buf)?;
    let summary = summarize(findings);
    if let Some(p) = &o.summary {
        let text = serde_json::to_string_pretty(&summary).map_err(Error::from)? + "\n";
        fs::write(p, text).map_err(|e| Fail::usage(format!("{}: {e}", p.display())))?;
    }
    let t = &summary.totals;
    eprintln!(
        "{label}: {} findings: {} pass, {} fail, {} skipped, {} finding",
        summary.total, t.pass, t.fail, t.skipped, t.finding
    );
    for f in findings.iter().filter(|f| f.status == Status::Fail) {
        eprintln!(
            "fail {} g={} f={} n={}",
            f.claim_id, f.graph.g, f.graph.f, f.graph.n
        );
    }
    Ok(if t.fail == 0 { 0 } else { 1 })
}

fn cmd_verify(o: &Opts) -> Result<u8, Fail> {
    let suite: Suite = o.suite.as_deref().unwrap_or("all").parse().map_err(|e: Error| Fail::usage(e.to_string()))?;
    let spec = CorpusSpec {
        nmax: o.nmax()?,
        seed: o.seed.unwrap_or(1),
        random_count: o.random_count.unwrap_or(200),
        ..CorpusSpec::default()
    };
    eprintln!("verify: suite {} nmax {} seed {}", suite.name(), spec.nmax, spec.seed);
    let findings = run_suite(suite, &spec, &o.run_options())?;
    finish_findings(o, "verify", &findings)
}

fn cmd_scan(o: &Opts) -> Result<u8, Fail> {
    let which: Conjecture = o
        .conjecture
        .as_deref()
        .ok_or_else(|| Fail::usage("--conjecture is required"))?
        .parse()
        .map_err(|e: Error| Fail::usage(e.to_string()))?;
    let nmax = o.nmax()?;
    eprintln!("scan: {} nmax {nmax}", which.name());
    let findings = run_scan(which, nmax, o.random_count.unwrap_or(200), o.seed.unwrap_or(1), &o.run_options())?;
    finish_findings(o, "scan", &findings)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, opts): (fn(&Opts) -> Result<u8, Fail>, Opts) = match cli.cmd {
        Cmd::Build(o) => (cmd_build, o),
        Cmd::Report(o) => (cmd_report, o),
        Cmd::Bounds(o) => (cmd_bounds, o),
        Cmd::Verify(o) => (cmd_verify, o),
        Cmd::Scan(o) => (cmd_scan, o),
    };
    match opts.with_config().and_then(|o| cmd(&o)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
