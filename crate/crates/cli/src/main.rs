mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tightcut::decomp::Strategy;
use tightcut::verify::parse_checks;

use input::Format;
use report::{CliError, Outcome, EXIT_OTHER};

#[derive(Parser)]
#[command(name = "tightcut", version, about = "Tight cut analysis of matching covered graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file, or `-` for stdin.
    #[arg(long, conflicts_with = "graph")]
    input: Option<String>,
    /// Input format; defaults to json for `.json` files and graph6 otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Built-in graph: k4, c6, k33, prism, petersen, cube, h:N, hprime:N.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Matching covered status, bicriticality, tight cuts, barriers, 2-separations, ELP-cuts.
    Analyze {
        #[command(flatten)]
        src: GraphInput,
    },
    /// Classify a non-trivial tight cut as a barrier-cut or an essential GS-cut.
    Classify {
        #[command(flatten)]
        src: GraphInput,
        /// Shore labels, comma separated.
        #[arg(long)]
        shore: String,
    },
    /// Tight cut decomposition; with repeats > 1 checks brick number agreement.
    Decompose {
        #[command(flatten)]
        src: GraphInput,
        #[arg(long, default_value = "elp-first")]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
    },
    /// Sweep the structural theorems over a corpus.
    Verify {
        /// graph6 file with graphs above the built-in range.
        #[arg(long)]
        input: Option<String>,
        /// Skip the built-in enumeration and check only the input file.
        #[arg(long)]
        external_only: bool,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Comma list of 1.1, 1.2, 1.3, 3.3, props, certs, gs-laminar-pair-non-elp, or `all`.
        #[arg(long, default_value = "all")]
        theorems: String,
        #[arg(long, default_value_t = 20)]
        max_counterexamples: usize,
        /// Directory for counterexample candidate files.
        #[arg(long, default_value = "counterexamples")]
        dump_dir: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut warnings = Vec::new();
    match cli.command {
        Command::Analyze { src } => {
            let (g, info) = input::load_graph(src.graph.as_deref(), src.input.as_deref(), src.format, &mut warnings)?;
            commands::analyze(&g, info, warnings)
        }
        Command::Classify { src, shore } => {
            let (g, info) = input::load_graph(src.graph.as_deref(), src.input.as_deref(), src.format, &mut warnings)?;
            commands::classify(&g, &shore, info, warnings)
        }
        Command::Decompose { src, strategy, seed, repeats } => {
            let (g, info) = input::load_graph(src.graph.as_deref(), src.input.as_deref(), src.format, &mut warnings)?;
            commands::decompose_cmd(&g, strategy, seed, repeats, info, warnings)
        }
        Command::Verify { input, external_only, max_n, theorems, max_counterexamples, dump_dir } => {
            let checks = parse_checks(&theorems)?;
            let (graphs, info) = input::load_corpus(max_n, input.as_deref(), external_only)?;
            commands::verify(&graphs, &checks, max_counterexamples, &dump_dir, info, warnings)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| run(cli)),
        Err(e) => Err(CliError::new(EXIT_OTHER, format!("thread pool: {e}"))),
    };
    match result {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.report).expect("report serializes"));
            } else {
                for line in &out.summary {
                    println!("{line}");
                }
                for w in &out.report.warnings {
                    eprintln!("warning: {w}");
                }
            }
            ExitCode::from(out.report.exit_code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
