//! Command-line front-end: parses JSON instances, dispatches to the
//! library operations and verifiers, and emits deterministic JSON reports.
//!
//! Exit codes: 0 when all checks pass, 1 when a violation was found, 2 on
//! input errors. `HYPERCOLOR_THREADS` sizes the worker pool (default 1 for
//! reproducibility; results are identical at any thread count).

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypercolor::coloring::{find_pl_coloring, is_pl_critical, ListAssignment};
use hypercolor::degeneracy::{
    classify_hard_pair, degree_feasible, find_f_partition, is_strictly_h_degenerate,
    validate_certificate, VectorFunction,
};
use hypercolor::enumerate::{canonical_form, enum_hypergraphs, EnumerationBounds};
use hypercolor::exec::{configure_threads, ExecMode};
use hypercolor::property::Property;
use hypercolor::structure::{blocks, classify_brick, components};
use hypercolor::sweep::{
    sweep_brooks, sweep_critical_structure, sweep_gallai, sweep_sigma, sweep_theorem4,
    sweep_theorem6,
};
use hypercolor::theorems::{
    verify_brooks, verify_gallai_bound, verify_sigma_lemmas, verify_theorem3, verify_theorem6,
};
use hypercolor::{coloring::ChiListGuards, Hypergraph};

#[derive(Parser)]
#[command(name = "hypercolor", version, about = "Exact hypergraph coloring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct BoundsArgs {
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long)]
    max_edge_size: Option<usize>,
    #[arg(long)]
    max_mult: Option<usize>,
    /// Include disconnected instances.
    #[arg(long)]
    disconnected: bool,
    /// Restrict to simple instances.
    #[arg(long)]
    simple: bool,
}

impl BoundsArgs {
    fn to_bounds(&self) -> EnumerationBounds {
        let d = EnumerationBounds::default();
        EnumerationBounds {
            max_order: self.max_order.unwrap_or(d.max_order),
            max_edges: self.max_edges.unwrap_or(d.max_edges),
            max_edge_size: self.max_edge_size.unwrap_or(d.max_edge_size),
            max_multiplicity: self.max_mult.unwrap_or(d.max_multiplicity),
            connected_only: !self.disconnected,
            simple_only: self.simple,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Block decomposition and separating vertices.
    Blocks {
        /// Hypergraph JSON file, or standard input when omitted.
        input: Option<PathBuf>,
    },
    /// Brick classification of every connected component.
    Bricks { input: Option<PathBuf> },
    /// Strict h-degeneracy via greedy elimination.
    Degeneracy {
        input: Option<PathBuf>,
        /// Constant h-value at every vertex.
        #[arg(long)]
        h: Option<u32>,
        /// JSON file mapping each vertex to its h-value.
        #[arg(long)]
        h_file: Option<PathBuf>,
    },
    /// Search for a (P, L)-coloring.
    Color {
        input: Option<PathBuf>,
        #[arg(long)]
        property: String,
        /// JSON file mapping each vertex to its color list.
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Constant lists {1..k} at every vertex.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Criticality test with low-vertex diagnostics.
    Critical {
        input: Option<PathBuf>,
        #[arg(long)]
        property: String,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Hard-pair recognition: partition search, certificate, validation.
    Hardpair {
        input: Option<PathBuf>,
        /// JSON file mapping each vertex to its budget tuple.
        #[arg(long)]
        vector: PathBuf,
    },
    /// Emit one canonical JSON form per isomorphism class.
    Enumerate {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Run a theorem verifier on one instance or as an enumerated sweep.
    Verify {
        target: VerifyTarget,
        /// Single-instance mode when given; sweep mode otherwise.
        input: Option<PathBuf>,
        #[arg(long)]
        property: Option<String>,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        vector: Option<PathBuf>,
        /// Coordinate count for the hard-pair sweep.
        #[arg(long)]
        p: Option<usize>,
        /// Largest budget entry for the hard-pair sweep.
        #[arg(long)]
        max_entry: Option<u32>,
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Theorem3,
    Theorem4,
    Brooks,
    Theorem6,
    GallaiBound,
    SigmaLemmas,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads: usize = std::env::var("HYPERCOLOR_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let mode = if threads > 1 {
        configure_threads(threads);
        ExecMode::Parallel
    } else {
        ExecMode::Sequential
    };
    match run(cli, mode) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading standard input")?;
            Ok(buf)
        }
    }
}

fn parse_hypergraph(path: &Option<PathBuf>) -> Result<Hypergraph> {
    let text = read_input(path)?;
    Hypergraph::from_json(&text).map_err(|e| anyhow!("{e}"))
}

fn parse_lists(h: &Hypergraph, path: &Path) -> Result<ListAssignment> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let map: BTreeMap<String, BTreeSet<u32>> =
        serde_json::from_str(&text).context("parsing list assignment")?;
    for v in map.keys() {
        if !h.has_vertex(v) {
            bail!("list assignment mentions unknown vertex {v:?}");
        }
    }
    for v in h.vertices() {
        if !map.contains_key(v) {
            bail!("list assignment misses vertex {v:?}");
        }
    }
    Ok(ListAssignment::new(map))
}

fn assignment(h: &Hypergraph, lists: &Option<PathBuf>, k: Option<u32>) -> Result<ListAssignment> {
    match (lists, k) {
        (Some(path), None) => parse_lists(h, path),
        (None, Some(k)) => Ok(ListAssignment::constant(h, k)),
        _ => bail!("exactly one of --lists or --k is required"),
    }
}

fn parse_vector(h: &Hypergraph, path: &Path) -> Result<VectorFunction> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let map: BTreeMap<String, Vec<u32>> =
        serde_json::from_str(&text).context("parsing vector function")?;
    VectorFunction::new(h, map).map_err(|e| anyhow!("{e}"))
}

fn property(spec: &str) -> Result<Property> {
    Property::builtin(spec).map_err(|e| anyhow!("{e}"))
}

fn emit(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(value)?);
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli, mode: ExecMode) -> Result<u8> {
    match cli.command {
        Command::Blocks { input } => {
            let h = parse_hypergraph(&input)?;
            let report = blocks(&h);
            emit(&cli.out, &serde_json::to_value(&report)?)?;
            Ok(0)
        }
        Command::Bricks { input } => {
            let h = parse_hypergraph(&input)?;
            let mut rows = Vec::new();
            for comp in components(&h) {
                let keep: Vec<&String> = comp.iter().collect();
                let sub = h.induced(&keep).map_err(|e| anyhow!("{e}"))?;
                let class = classify_brick(&sub).map_err(|e| anyhow!("{e}"))?;
                rows.push(json!({
                    "component": comp,
                    "classification": class,
                }));
            }
            emit(&cli.out, &json!({ "components": rows }))?;
            Ok(0)
        }
        Command::Degeneracy { input, h, h_file } => {
            let hg = parse_hypergraph(&input)?;
            let result = match (h, h_file) {
                (Some(k), None) => is_strictly_h_degenerate(&hg, |_| k),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let map: BTreeMap<String, u32> =
                        serde_json::from_str(&text).context("parsing h-function")?;
                    for v in hg.vertices() {
                        if !map.contains_key(v) {
                            bail!("h-function misses vertex {v:?}");
                        }
                    }
                    is_strictly_h_degenerate(&hg, |v| map[v])
                }
                _ => bail!("exactly one of --h or --h-file is required"),
            };
            emit(&cli.out, &json!({ "strictly_h_degenerate": result }))?;
            Ok(0)
        }
        Command::Color {
            input,
            property: spec,
            lists,
            k,
        } => {
            let h = parse_hypergraph(&input)?;
            let p = property(&spec)?;
            let l = assignment(&h, &lists, k)?;
            let coloring = find_pl_coloring(&h, &p, &l).map_err(|e| anyhow!("{e}"))?;
            emit(
                &cli.out,
                &json!({
                    "property": p.name(),
                    "colorable": coloring.is_some(),
                    "coloring": coloring,
                }),
            )?;
            Ok(0)
        }
        Command::Critical {
            input,
            property: spec,
            lists,
            k,
        } => {
            let h = parse_hypergraph(&input)?;
            let p = property(&spec)?;
            let l = assignment(&h, &lists, k)?;
            let report = is_pl_critical(&h, &p, &l).map_err(|e| anyhow!("{e}"))?;
            emit(&cli.out, &serde_json::to_value(&report)?)?;
            Ok(0)
        }
        Command::Hardpair { input, vector } => {
            let h = parse_hypergraph(&input)?;
            let f = parse_vector(&h, &vector)?;
            let feasible = degree_feasible(&h, &f);
            let partition = find_f_partition(&h, &f).map_err(|e| anyhow!("{e}"))?;
            let cert = classify_hard_pair(&h, &f).map_err(|e| anyhow!("{e}"))?;
            let valid = cert.as_ref().map(|c| validate_certificate(&h, &f, c));
            let agreement = partition.is_none() == cert.is_some();
            emit(
                &cli.out,
                &json!({
                    "degree_feasible": feasible,
                    "partition": partition,
                    "certificate": cert,
                    "certificate_valid": valid,
                    "agreement": agreement,
                }),
            )?;
            Ok(if agreement && valid.unwrap_or(true) { 0 } else { 1 })
        }
        Command::Enumerate { bounds } => {
            let all = enum_hypergraphs(&bounds.to_bounds()).map_err(|e| anyhow!("{e}"))?;
            let mut text = String::new();
            for h in &all {
                text.push_str(&canonical_form(h).map_err(|e| anyhow!("{e}"))?);
                text.push('\n');
            }
            match &cli.out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Verify {
            target,
            input,
            property: spec,
            lists,
            k,
            vector,
            p,
            max_entry,
            delta,
            bounds,
        } => {
            let b = bounds.to_bounds();
            let report = match (target, &input) {
                (VerifyTarget::Theorem4, None) => {
                    let rep = sweep_theorem4(&b, p.unwrap_or(2), max_entry.unwrap_or(3), mode)
                        .map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
                (VerifyTarget::Theorem4, Some(_)) => {
                    let h = parse_hypergraph(&input)?;
                    let path = vector.ok_or_else(|| anyhow!("--vector is required"))?;
                    let f = parse_vector(&h, &path)?;
                    let partition = find_f_partition(&h, &f).map_err(|e| anyhow!("{e}"))?;
                    let cert = classify_hard_pair(&h, &f).map_err(|e| anyhow!("{e}"))?;
                    let valid = cert.as_ref().map(|c| validate_certificate(&h, &f, c));
                    let pass = partition.is_none() == cert.is_some() && valid.unwrap_or(true);
                    (
                        pass,
                        json!({
                            "partition_found": partition.is_some(),
                            "certificate": cert,
                            "certificate_valid": valid,
                        }),
                    )
                }
                (VerifyTarget::Theorem3, None) => {
                    let mut reports = Vec::new();
                    let mut pass = true;
                    for ps in combo_properties(&spec)? {
                        for kk in combo_ks(k, &[1, 2]) {
                            let rep = sweep_critical_structure(&ps, kk, &b, mode)
                                .map_err(|e| anyhow!("{e}"))?;
                            pass &= rep.pass;
                            reports.push(serde_json::to_value(&rep)?);
                        }
                    }
                    (pass, json!({ "reports": reports }))
                }
                (VerifyTarget::Theorem3, Some(_)) => {
                    let h = parse_hypergraph(&input)?;
                    let ps = property(spec.as_deref().unwrap_or("O"))?;
                    let l = assignment(&h, &lists, k)?;
                    let rep = verify_theorem3(&h, &ps, &l).map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
                (VerifyTarget::Brooks, None) => {
                    let mut reports = Vec::new();
                    let mut pass = true;
                    for ps in combo_properties(&spec)? {
                        let rep = sweep_brooks(&ps, &b, mode).map_err(|e| anyhow!("{e}"))?;
                        pass &= rep.pass;
                        reports.push(serde_json::to_value(&rep)?);
                    }
                    (pass, json!({ "reports": reports }))
                }
                (VerifyTarget::Brooks, Some(_)) => {
                    let h = parse_hypergraph(&input)?;
                    let ps = property(spec.as_deref().unwrap_or("O"))?;
                    let guards = ChiListGuards {
                        max_order: h.order().max(6),
                        max_k: h.order().max(4),
                    };
                    let rep = verify_brooks(&h, &ps, guards).map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
                (VerifyTarget::Theorem6, None) => {
                    let mut reports = Vec::new();
                    let mut pass = true;
                    for ps in combo_properties(&spec)? {
                        let rep = sweep_theorem6(&ps, &b, mode).map_err(|e| anyhow!("{e}"))?;
                        pass &= rep.pass;
                        reports.push(serde_json::to_value(&rep)?);
                    }
                    (pass, json!({ "reports": reports }))
                }
                (VerifyTarget::Theorem6, Some(_)) => {
                    let h = parse_hypergraph(&input)?;
                    let ps = property(spec.as_deref().unwrap_or("O"))?;
                    let l = assignment(&h, &lists, k)?;
                    let rep = verify_theorem6(&h, &ps, &l).map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
                (VerifyTarget::GallaiBound, None) => {
                    let combos: Vec<(Property, u32)> = match (&spec, k) {
                        (Some(s), Some(kk)) => vec![(property(s)?, kk)],
                        (None, None) => vec![
                            (Property::edgeless(), 3),
                            (Property::degenerate(1), 2),
                        ],
                        _ => bail!("--property and --k must be given together"),
                    };
                    let rep = sweep_gallai(&combos, &b, &[3, 4, 5], mode)
                        .map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
                (VerifyTarget::GallaiBound, Some(_)) => {
                    let h = parse_hypergraph(&input)?;
                    let ps = property(spec.as_deref().unwrap_or("O"))?;
                    let l = assignment(&h, &lists, k)?;
                    let rep = verify_gallai_bound(&h, &ps, &l).map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
                (VerifyTarget::SigmaLemmas, None) => {
                    let rep = sweep_sigma(delta.unwrap_or(4), b.max_order.max(9), mode)
                        .map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
                (VerifyTarget::SigmaLemmas, Some(_)) => {
                    let h = parse_hypergraph(&input)?;
                    let ps = property(spec.as_deref().unwrap_or("O"))?;
                    let rep = verify_sigma_lemmas(&h, &ps, delta.unwrap_or(4))
                        .map_err(|e| anyhow!("{e}"))?;
                    (rep.pass, serde_json::to_value(&rep)?)
                }
            };
            let (pass, value) = report;
            emit(&cli.out, &json!({ "pass": pass, "report": value }))?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

fn combo_properties(spec: &Option<String>) -> Result<Vec<Property>> {
    match spec {
        Some(s) => Ok(vec![property(s)?]),
        None => Ok(vec![Property::edgeless(), Property::degenerate(1)]),
    }
}

fn combo_ks(k: Option<u32>, default: &[u32]) -> Vec<u32> {
    match k {
        Some(k) => vec![k],
        None => default.to_vec(),
    }
}
