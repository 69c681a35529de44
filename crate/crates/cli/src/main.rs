//! `er`: command-line runner for exact colouring counts, extremal shape
//! search, pattern enumeration and the pattern/weight optimisation.
//!
//! Exit status: 0 on success, 2 when a budget ran out (the partial result is
//! still written and flagged), 1 on usage or input errors.

mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{CliError, Outcome, RamseyMode};
use er_core::ColourSpec;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "er", version, about = "Erdős–Rothschild solver toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Search-node budget.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    budget: u64,
    /// Parallel split width for counting.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    /// Reserved; recorded in the manifest.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write manifest.json and result.json here instead of printing.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Classic,
    List,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count valid colourings of a graph file or a complete multipartite shape.
    Count {
        #[arg(long, conflicts_with = "shape")]
        graph: Option<PathBuf>,
        /// e.g. "6:3,3"
        #[arg(long)]
        shape: Option<String>,
        /// Forbidden clique orders, e.g. "4,3".
        #[arg(long)]
        k: ColourSpec,
    },
    /// Search all complete multipartite shapes on n vertices.
    SearchN {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: ColourSpec,
    },
    /// Symmetrise a graph into a complete multipartite one.
    Symmetrise {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: ColourSpec,
    },
    /// Enumerate pattern classes on r parts at feasibility level t.
    Patterns {
        #[arg(long)]
        k: ColourSpec,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    /// Maximise q over patterns with at most rmax parts.
    SolveQ {
        #[arg(long)]
        k: ColourSpec,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long)]
        rmax: usize,
        /// Keep triples within this much of the best as candidates.
        #[arg(long, default_value_t = 1e-6)]
        window: f64,
    },
    /// Ramsey limit, classic verification or list-Ramsey bracket.
    Ramsey {
        #[arg(long)]
        k: ColourSpec,
        #[arg(long, value_enum, default_value_t = Mode::Classic)]
        mode: Mode,
        /// Classic mode: decide whether K_r has a valid colouring.
        #[arg(long)]
        r: Option<usize>,
        /// List mode: largest part count to try.
        #[arg(long, default_value_t = 6)]
        rmax: usize,
    },
    /// Density-profile LP bound for uniform k.
    Bound {
        #[arg(long)]
        k: ColourSpec,
    },
    /// Distance from a shape to the recorded near-optimal weights of a solve-q report.
    Stability {
        #[arg(long)]
        shape: String,
        /// result.json written by solve-q.
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        window: f64,
    },
    /// Blow up a pattern with weights alpha to n vertices.
    Construct {
        #[arg(long)]
        pattern: PathBuf,
        /// e.g. "0.5,0.5"
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
        /// Also count the constructed graph exactly.
        #[arg(long)]
        count: bool,
    },
}

fn spec_text(k: &ColourSpec) -> String {
    k.k()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run(cli: &Cli) -> Result<(&'static str, serde_json::Value, Outcome), CliError> {
    let g = &cli.global;
    Ok(match &cli.command {
        Command::Count { graph, shape, k } => (
            "count",
            json!({ "graph": graph, "shape": shape, "k": spec_text(k), "parallel": g.parallel }),
            commands::count(
                graph.as_deref(),
                shape.as_deref(),
                k,
                g.budget,
                g.parallel,
            )?,
        ),
        Command::SearchN { n, k } => (
            "search-n",
            json!({ "n": n, "k": spec_text(k), "parallel": g.parallel }),
            commands::search_n(*n, k, g.budget, g.parallel)?,
        ),
        Command::Symmetrise { graph, k } => (
            "symmetrise",
            json!({ "graph": graph, "k": spec_text(k) }),
            commands::symmetrise_graph(graph, k, g.budget)?,
        ),
        Command::Patterns { k, r, t } => (
            "patterns",
            json!({ "k": spec_text(k), "r": r, "t": t }),
            commands::patterns(k, *r, *t, g.budget)?,
        ),
        Command::SolveQ { k, t, rmax, window } => (
            "solve-q",
            json!({ "k": spec_text(k), "t": t, "rmax": rmax, "window": emit::real(*window) }),
            commands::solve(k, *t, *rmax, g.budget, *window)?,
        ),
        Command::Ramsey { k, mode, r, rmax } => {
            let m = match mode {
                Mode::Classic => RamseyMode::Classic { r: *r },
                Mode::List => RamseyMode::List { rmax: *rmax },
            };
            (
                "ramsey",
                json!({ "k": spec_text(k), "mode": format!("{mode:?}").to_lowercase(), "r": r, "rmax": rmax }),
                commands::ramsey(k, m, g.budget)?,
            )
        }
        Command::Bound { k } => (
            "bound",
            json!({ "k": spec_text(k) }),
            commands::bound(k)?,
        ),
        Command::Stability {
            shape,
            report,
            window,
        } => (
            "stability",
            json!({ "shape": shape, "report": report, "window": emit::real(*window) }),
            commands::stability(shape, report, *window)?,
        ),
        Command::Construct {
            pattern,
            alpha,
            n,
            count,
        } => (
            "construct",
            json!({ "pattern": pattern, "alpha": alpha, "n": n, "count": count }),
            commands::construct(pattern, alpha, *n, count.then_some(g.budget), g.parallel)?,
        ),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    let (command, mut params, outcome) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    params["budget"] = json!(cli.global.budget);
    params["seed"] = json!(cli.global.seed);

    if let Some(dir) = &cli.global.out {
        let info = emit::RunInfo {
            command,
            params,
            budget: cli.global.budget,
            nodes: outcome.nodes,
            exhausted: outcome.exhausted,
            wall_seconds: start.elapsed().as_secs_f64(),
        };
        if let Err(e) = emit::write_run(dir, &outcome.result, &info) {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    } else {
        match cli.global.format {
            Format::Json => print!("{}", emit::pretty(&outcome.result)),
            Format::Table => print!("{}", emit::table(&outcome.result)),
        }
    }
    if outcome.exhausted {
        eprintln!("budget exhausted: result is partial");
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
