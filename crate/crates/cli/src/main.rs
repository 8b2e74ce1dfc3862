use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use subshift::complexes::{export_graph, GraphFormat};
use subshift::report::{analyze, export_latex, AnalysisOptions, CohomologySelection, Stage};
use subshift::search::{search_to_dir, Execution, SearchConfig};
use subshift::Substitution;
use subshift_cli::{exit_code_for_error, exit_code_for_report, service, text, EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_REFUSED};

#[derive(Parser)]
#[command(name = "subshift", version, about = "Analysis of substitution subshifts and their tiling spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one substitution given as a share-string such as `01,0`.
    Analyze(AnalyzeArgs),
    /// Search canonical substitutions for strong coincidence failures.
    Search(SearchArgs),
    /// Run the JSON service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Dot,
    Tikz,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Graph {
    Bd,
    Ap,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum CohomologyArg {
    Bd,
    Ap,
    Proper,
    All,
}

impl From<CohomologyArg> for CohomologySelection {
    fn from(c: CohomologyArg) -> Self {
        match c {
            CohomologyArg::Bd => CohomologySelection::Bd,
            CohomologyArg::Ap => CohomologySelection::Ap,
            CohomologyArg::Proper => CohomologySelection::Proper,
            CohomologyArg::All => CohomologySelection::All,
        }
    }
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    #[arg(long)]
    sub: String,
    /// Length of the complexity prefix.
    #[arg(long)]
    complexity: Option<usize>,
    /// Word lengths to list, comma separated.
    #[arg(long, value_delimiter = ',')]
    words: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    cohomology: Option<CohomologyArg>,
    #[arg(long)]
    pisot: bool,
    #[arg(long)]
    coincidence: bool,
    #[arg(long)]
    coincidence_cap: Option<usize>,
    #[arg(long, value_enum)]
    export: Option<Export>,
    /// Complex to draw for dot and tikz exports.
    #[arg(long, value_enum, default_value = "both")]
    graph: Graph,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits of decimal output.
    #[arg(long)]
    precision: Option<usize>,
    /// Record per-stage timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    letters: usize,
    #[arg(long, default_value_t = 0)]
    from: u64,
    #[arg(long)]
    count: u64,
    #[arg(long, default_value_t = 30)]
    cap: usize,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    resume: bool,
    #[arg(long, default_value_t = 1000)]
    chunk_size: u64,
}

fn write_output(out: Option<&PathBuf>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn run_analyze(args: AnalyzeArgs) -> anyhow::Result<u8> {
    let sub = match Substitution::parse(&args.sub) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(exit_code_for_error(&e));
        }
    };
    let options = AnalysisOptions {
        complexity: args.complexity,
        words: args.words,
        cohomology: args.cohomology.map(Into::into),
        pisot: args.pisot,
        coincidence: args.coincidence,
        coincidence_cap: args.coincidence_cap,
        precision: args.precision,
        word_budget: None,
        timings: args.timings,
    };
    let report = match analyze(&sub, &options) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(exit_code_for_error(&e));
        }
    };
    for (stage, _, reason) in report.explicit_refusals(&options) {
        eprintln!("refused {stage}: {reason}");
    }
    let mut code = exit_code_for_report(&report, &options);
    let body = match args.export {
        None => text::render(&report),
        Some(Export::Json) => report.to_json() + "\n",
        Some(Export::Latex) => export_latex(&report),
        Some(format @ (Export::Dot | Export::Tikz)) => {
            let format = if matches!(format, Export::Dot) { GraphFormat::Dot } else { GraphFormat::Tikz };
            match &report.complexes {
                Stage::Ok { value } => {
                    let graphs = match args.graph {
                        Graph::Bd => vec![&value.barge_diamond],
                        Graph::Ap => vec![&value.anderson_putnam],
                        Graph::Both => vec![&value.barge_diamond, &value.anderson_putnam],
                    };
                    graphs.into_iter().map(|g| export_graph(g, format)).collect::<Vec<_>>().join("\n")
                }
                Stage::Refused { reason, .. } => {
                    eprintln!("refused complexes: {reason}");
                    return Ok(EXIT_REFUSED);
                }
                Stage::NotRequested => String::new(),
            }
        }
    };
    if let Err(e) = write_output(args.out.as_ref(), &body) {
        eprintln!("error: {e:#}");
        code = EXIT_FAILURE;
    }
    Ok(code)
}

fn run_search(args: SearchArgs) -> anyhow::Result<u8> {
    let mut config = SearchConfig::new(args.letters, args.from, args.count, args.cap);
    config.chunk_size = args.chunk_size.max(1);
    let exec = match args.workers {
        1 => Execution::Sequential,
        w => Execution::Parallel { workers: w },
    };
    let outcome = match search_to_dir(&config, exec, &args.out, args.resume) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(exit_code_for_error(&e));
        }
    };
    let h = &outcome.histogram;
    println!("examined {}, irreducible Pisot {}", h.examined, h.irreducible_pisot);
    for (n, c) in &h.iterations {
        println!("  n={n}: {c}");
    }
    println!("cap reached {}, budget exhausted {}, undecided {}", h.cap_reached, h.budget_exhausted, h.undecided);
    for r in outcome.counterexample_candidates() {
        println!("counterexample candidate {} {}", r.index, r.share_string);
    }
    Ok(if h.budget_exhausted > 0 { EXIT_BUDGET } else { EXIT_OK })
}

fn run_serve(bind: &str, port: u16) -> anyhow::Result<u8> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(service::serve(bind, port))?;
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Search(s) => run_search(s),
        Command::Serve { port, bind } => run_serve(&bind, port),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
