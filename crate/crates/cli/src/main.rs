//! Command-line front end.
//!
//! Exit codes: 0 all checks agree, 1 a violated invariant, 2 some check was
//! skipped by a guard or an unmet hypothesis, 64 usage or parse errors,
//! 74 I/O errors.

mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use arborlink::coxeter::BuildError;
use arborlink::wirtinger::{BridgeBoundJson, SeedMethod, EXACT_ARC_LIMIT};
use arborlink::{
    bridge_upper_bound, build_coxeter_graph, compile, compile_with_layout, parse_tree,
    render_svg, verify_labeling, wirtinger_exact, ExactOutcome, PlaneTree, RandomTreeConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{evaluate, human, Options, Record, Status, Summary};

const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "arborlink", version, about = "Invariants of arborescent links given by weighted plane trees")]
struct Cli {
    /// Machine-readable output (JSON, or JSON lines for corpus).
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest tree generated by `corpus`.
    #[arg(long, global = true, default_value_t = 12)]
    max_vertices: usize,
    /// Largest seed count tried by exact Wirtinger search (default f + 2).
    #[arg(long, global = true)]
    kmax: Option<usize>,
    /// Add wall-clock timings to records (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TreeInput {
    /// Tree in parenthesized form, e.g. "(0 (2) (2) (2))".
    #[arg(allow_hyphen_values = true)]
    tree: Option<String>,
    /// Read the tree from a file instead.
    #[arg(long, conflicts_with = "tree")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// f(T), m(T), and both certificates for one tree.
    Invariants(TreeInput),
    /// Full pipeline over random trees, one JSON record per tree.
    Corpus {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Generate trees with many twigs (weights ±2..±5).
        #[arg(long)]
        many_twigs: bool,
        #[arg(long, allow_negative_numbers = true)]
        weight_min: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        weight_max: Option<i64>,
    },
    /// Export the compiled diagram.
    Diagram {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bridge-number certificate with f(T) + 2 seeds.
    Wirtinger(TreeInput),
    /// Coxeter-quotient certificate for the meridional rank.
    Coxeter(TreeInput),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

enum Failure {
    Usage(String),
    Io(anyhow::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn run(cli: &Cli) -> Result<Status, Failure> {
    let opts = Options { seed: cli.seed, kmax: cli.kmax, timings: cli.timings };
    match &cli.command {
        Command::Invariants(input) => {
            let tree = read_tree(input)?;
            let record = evaluate(&tree, opts);
            let text = if cli.json { to_json_line(&record) } else { human(&record) };
            emit(cli.out.as_deref(), &text)?;
            Ok(record.status)
        }
        Command::Corpus { count, many_twigs, weight_min, weight_max } => {
            let (lo, hi, exclude): (i64, i64, &[i64]) =
                if *many_twigs { (-5, 5, &[-1, 0, 1]) } else { (-5, 5, &[0]) };
            let (lo, hi) = (weight_min.unwrap_or(lo), weight_max.unwrap_or(hi));
            let mut cfg = RandomTreeConfig::new(cli.max_vertices, lo, hi).excluding(exclude);
            if *many_twigs {
                cfg = cfg.many_twigs();
            }
            corpus(cli, &cfg, *count, opts)
        }
        Command::Diagram { input, format } => {
            let tree = read_tree(input)?;
            let text = match format {
                Format::Json => compile(&tree).export() + "\n",
                Format::Svg => render_svg(&compile_with_layout(&tree)).expect("layout kept"),
            };
            emit(cli.out.as_deref(), &text)?;
            Ok(Status::Agree)
        }
        Command::Wirtinger(input) => wirtinger(cli, &read_tree(input)?),
        Command::Coxeter(input) => coxeter(cli, &read_tree(input)?),
    }
}

fn corpus(cli: &Cli, cfg: &RandomTreeConfig, count: usize, opts: Options) -> Result<Status, Failure> {
    let mut records: Vec<Record> = Vec::with_capacity(count);
    for i in 0..count {
        let seed = cli.seed.wrapping_add(i as u64);
        let tree = PlaneTree::random(cfg, seed).map_err(|e| Failure::Usage(e.to_string()))?;
        let mut r = evaluate(&tree, Options { seed, ..opts });
        r.index = Some(i);
        records.push(r);
    }
    let summary = Summary::of(&records);
    let mut lines: String = records.iter().map(to_json_line).collect();
    lines.push_str(&to_json_line(&serde_json::json!({ "summary": summary })));
    let tally = format!(
        "records: {}\nagree: {}\nskipped: {}\nviolations: {}\nequalities: {}/{}\n",
        summary.records,
        summary.agree,
        summary.skipped,
        summary.violations,
        summary.equalities,
        summary.records
    );
    match (&cli.out, cli.json) {
        (Some(path), _) => {
            write_file(path, &lines)?;
            print!("{tally}");
        }
        (None, true) => print!("{lines}"),
        (None, false) => {
            for r in records.iter().filter(|r| r.status == Status::Violation) {
                print!("{}", human(r));
            }
            print!("{tally}");
        }
    }
    Ok(summary.status())
}

#[derive(Serialize)]
struct WirtingerOutput {
    certificate: BridgeBoundJson,
    method: SeedMethod,
    arcs: usize,
    omega_exact: Option<usize>,
}

fn wirtinger(cli: &Cli, tree: &PlaneTree) -> Result<Status, Failure> {
    if !compile(tree).is_connected() {
        eprintln!("skipped: diagram is split");
        return Ok(Status::Skipped);
    }
    let cert = match bridge_upper_bound(tree) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("violation: {e}");
            eprintln!("reproduce: arborlink wirtinger --json '{}'", tree.serialize());
            return Ok(Status::Violation);
        }
    };
    let arcs = cert.diagram.arc_count();
    let kmax = cli.kmax.unwrap_or(cert.bound);
    let mut status = Status::Agree;
    let omega_exact = if arcs <= EXACT_ARC_LIMIT && cert.diagram.crossing_count() > 0 {
        match wirtinger_exact(&cert.diagram, kmax) {
            Ok(ExactOutcome::Found { k, .. }) => Some(k),
            _ => {
                status = Status::Skipped;
                None
            }
        }
    } else {
        status = Status::Skipped;
        None
    };
    let out = WirtingerOutput { certificate: cert.to_json(), method: cert.method, arcs, omega_exact };
    if !out.certificate.verified {
        status = Status::Violation;
    }
    let text = if cli.json {
        to_json_line(&out)
    } else {
        format!(
            "bound: {}\nseeds: {:?}\narcs: {}\nmethod: {:?}\nverified: {}\nomega exact: {}\n",
            out.certificate.bound,
            out.certificate.seeds,
            arcs,
            out.method,
            out.certificate.verified,
            omega_exact.map_or("-".into(), |k| k.to_string())
        )
    };
    emit(cli.out.as_deref(), &text)?;
    Ok(status)
}

fn coxeter(cli: &Cli, tree: &PlaneTree) -> Result<Status, Failure> {
    let (graph, seeding) = match build_coxeter_graph(tree) {
        Ok(x) => x,
        Err(e @ (BuildError::SeedConflict { .. } | BuildError::Graph(_))) => {
            eprintln!("violation: {e}");
            return Ok(Status::Violation);
        }
        Err(e) => {
            eprintln!("skipped: {e}");
            return Ok(Status::Skipped);
        }
    };
    match verify_labeling(&compile(&seeding.tree), &graph, &seeding) {
        Ok(cert) => {
            let json = cert.to_json();
            let text = if cli.json {
                to_json_line(&json)
            } else {
                let edges: Vec<String> =
                    json.edges.iter().map(|e| format!("({} {})^{}", e.s, e.t, e.order)).collect();
                format!(
                    "generators: {}\nrelations: {}\nresidual: {:e}\nmu >= {}\n",
                    json.generators,
                    edges.join(" "),
                    json.residual,
                    json.mu_lower_bound
                )
            };
            emit(cli.out.as_deref(), &text)?;
            Ok(Status::Agree)
        }
        Err(e) => {
            eprintln!("violation: {e}");
            eprintln!("reproduce: arborlink coxeter --json '{}'", tree.serialize());
            Ok(Status::Violation)
        }
    }
}

fn read_tree(input: &TreeInput) -> Result<PlaneTree, Failure> {
    let text = match (&input.tree, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::Io)?,
        (None, None) => return Err(Failure::Usage("a tree argument or --file is required".into())),
    };
    parse_tree(text.trim()).map_err(|e| Failure::Usage(format!("cannot parse tree: {e}")))
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize") + "\n"
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Io)
}
