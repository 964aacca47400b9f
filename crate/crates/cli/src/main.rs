//! `spanlab`: vertex spans of graphs from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 unreadable or malformed input,
//! 3 disconnected input, 4 input too large for the requested check.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "spanlab",
    version,
    about = "Vertex spans of simple connected graphs"
)]
struct Cli {
    /// One `key=value` record per line instead of aligned tables.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Radius and span values of a graph.
    Span {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = RuleChoice::All)]
        rule: RuleChoice,
    },
    /// A witness walk: DOT on stdout, step table on stderr.
    Witness {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        rule: SingleRule,
    },
    /// Computed vs closed-form spans over the graph families.
    Families(commands::FamilySweep),
    /// Check the span relations on every connected graph of one order.
    VerifyEnumerate {
        /// Order of the graphs (at most 7).
        #[arg(long, short)]
        n: usize,
        /// One graph per isomorphism class (order at most 6).
        #[arg(long)]
        dedup: bool,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Check the span relations on seeded random graphs.
    VerifyRandom {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, env = "SPANLAB_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        min_n: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Edge probability, in (0, 1].
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Radius and cut-edge upper bounds against the strong span.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Print one of the named reference graphs.
    Named {
        /// Graph id, e.g. `fig1`, `fig2_g2`, `fig7_c`.
        #[arg(required_unless_present = "list")]
        id: Option<String>,
        /// List the available ids.
        #[arg(long, conflicts_with = "id")]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Graph file: `.g6` is read as graph6, anything else as an edge list.
    file: PathBuf,
    /// Override the format guessed from the extension.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct RunOptions {
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Compare against the brute-force oracle on graphs up to this order.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(0..=6))]
    oracle_max_n: u8,
    /// Also validate witnesses and both track transformations.
    #[arg(long)]
    witnesses: bool,
    /// Write one JSON record per graph to this file.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleChoice {
    Strong,
    Direct,
    Cartesian,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SingleRule {
    Strong,
    Direct,
    Cartesian,
}

/// Quietly stops when the reader of stdout goes away (`spanlab ... | head`).
fn exit_on_broken_pipe() {
    let default = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        let message = info
            .payload()
            .downcast_ref::<String>()
            .map(String::as_str)
            .unwrap_or_default();
        if message.contains("Broken pipe") {
            std::process::exit(0);
        }
        default(info);
    }));
}

fn main() -> ExitCode {
    exit_on_broken_pipe();
    let cli = Cli::parse();
    let out = commands::Output {
        machine: cli.machine,
    };
    let result = match cli.command {
        Command::Span { input, rule } => commands::span(&out, &input, rule),
        Command::Witness { input, rule } => commands::witness(&out, &input, rule),
        Command::Families(sweep) => commands::families(&out, &sweep),
        Command::VerifyEnumerate { n, dedup, run } => {
            commands::verify_enumerate(&out, n, dedup, &run)
        }
        Command::VerifyRandom {
            count,
            seed,
            min_n,
            max_n,
            p,
            run,
        } => commands::verify_random(&out, count, seed, min_n..=max_n, p, &run),
        Command::Bounds { input } => commands::bounds(&out, &input),
        Command::Named { id, list, format } => commands::named(&out, id.as_deref(), list, format),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("spanlab: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
